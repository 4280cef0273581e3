//! Structured reports: one JSON-serializable shape per command, plus the
//! text rendering. Re-runs on identical input produce byte-identical
//! output (struct field order is fixed, no maps with unstable ordering).

use serde::{Deserialize, Serialize};

use crate::document::RationalJson;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct CheckItemJson {
    pub name: String,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

impl From<&wpdeg_core::hodge::CheckItem> for CheckItemJson {
    fn from(item: &wpdeg_core::hodge::CheckItem) -> Self {
        CheckItemJson {
            name: item.name.clone(),
            passed: item.passed,
            detail: item.detail.clone(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct MonodromySection {
    /// Ranks of `Gr_0 .. Gr_2n` of the weight filtration.
    pub graded_ranks: Vec<usize>,
    /// `C_0 .. C_n` rendered exactly.
    pub pairings: Vec<String>,
    /// Ascending coefficients of the orbit polynomial (before orientation
    /// normalization).
    pub polynomial: Vec<RationalJson>,
    pub degree: usize,
    pub sign_flipped: bool,
    /// Level of the class of alpha in the weight filtration.
    pub class_level: usize,
    pub validity: Vec<CheckItemJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub definite_sign: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nilpotency: Option<NilpotencySection>,
    /// Basis rows of `W_0 .. W_2n` (wf command only).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight_levels: Option<Vec<Vec<Vec<RationalJson>>>>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct NilpotencySection {
    pub applicable: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub holds: Option<bool>,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct FibreSection {
    /// `dim F^n Gr_n H^n(X_0) = sum of component h^{n,0}`.
    pub fn_grn: u64,
    /// `dim E1^{p,q}`, indexed `[p][q]`.
    pub e1_dims: Vec<Vec<usize>>,
    /// `dim E2^{p,q}`; `null` where the needed restriction maps are missing.
    pub e2_dims: Vec<Vec<Option<usize>>>,
    /// `dim H^m(X_0)` for `m = 0 .. 2n`; `null` where not determined.
    pub h_total: Vec<Option<usize>>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct NodalSection {
    pub k_i: i64,
    /// Coefficient of each exceptional divisor in `K_X'` (always `n`).
    pub exceptional_coefficient: i64,
    /// Coefficient of `sum L_E_i` in `K_Xbar` (always `n - 2`).
    pub node_trace_coefficient: i64,
    pub section_exists: bool,
    pub canonical_total: String,
    pub proper_transform_canonical: String,
    pub transcript: String,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct PairedSection {
    pub orbit_rank: usize,
    pub fibre_rank: usize,
    pub isomorphism_rank: usize,
    pub vanishing_homology_ok: bool,
    pub vanishing_nearby_ok: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct QuadratureRungJson {
    pub y_max: f64,
    pub integral: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct QuadratureSection {
    pub degree: usize,
    pub slope: f64,
    pub expected_slope: f64,
    pub rungs: Vec<QuadratureRungJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub agrees_with_classification: Option<bool>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct CatalogEntryResult {
    pub name: String,
    pub description: String,
    pub expected: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub got: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub passed: Option<bool>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct CatalogSection {
    pub entries: Vec<CatalogEntryResult>,
}

/// The envelope every command emits.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdict: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    pub exit_code: i32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub monodromy: Option<MonodromySection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub central_fibre: Option<FibreSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nodal: Option<NodalSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub paired: Option<PairedSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quadrature: Option<QuadratureSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub catalog: Option<CatalogSection>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            schema_version: 1,
            command: command.to_string(),
            mode: None,
            n: None,
            verdict: None,
            witness: None,
            exit_code: 0,
            error: None,
            monodromy: None,
            central_fibre: None,
            nodal: None,
            paired: None,
            quadrature: None,
            catalog: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization is infallible")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let push = |out: &mut String, line: &str| {
            out.push_str(line);
            out.push('\n');
        };
        if let (Some(mode), Some(n)) = (&self.mode, self.n) {
            push(
                &mut out,
                &format!("{} (mode {mode}, n = {n})", self.command),
            );
        } else {
            push(&mut out, &self.command.clone());
        }
        if let Some(err) = &self.error {
            push(&mut out, &format!("error: {err}"));
        }
        if let Some(verdict) = &self.verdict {
            push(&mut out, &format!("verdict: {verdict} distance"));
        }
        if let Some(witness) = &self.witness {
            push(&mut out, &format!("witness: {witness}"));
        }
        if let Some(m) = &self.monodromy {
            push(&mut out, &format!("graded ranks: {:?}", m.graded_ranks));
            push(
                &mut out,
                &format!("pairings C_i: [{}]", m.pairings.join(", ")),
            );
            let coeffs: Vec<String> = m.polynomial.iter().map(|c| c.0.to_string()).collect();
            push(
                &mut out,
                &format!(
                    "orbit polynomial: [{}] (degree {}{})",
                    coeffs.join(", "),
                    m.degree,
                    if m.sign_flipped {
                        ", orientation flipped"
                    } else {
                        ""
                    }
                ),
            );
            push(
                &mut out,
                &format!("class level of alpha: {}", m.class_level),
            );
            if let Some(sign) = &m.definite_sign {
                push(&mut out, &format!("orientation pairing sign: {sign}"));
            }
            push(&mut out, "validity checks:");
            for item in &m.validity {
                push(
                    &mut out,
                    &format!(
                        "  [{}] {}{}",
                        if item.passed { "pass" } else { "FAIL" },
                        item.name,
                        if item.detail.is_empty() {
                            String::new()
                        } else {
                            format!(" ({})", item.detail)
                        }
                    ),
                );
            }
            if let Some(c) = &m.nilpotency {
                push(
                    &mut out,
                    &format!(
                        "nilpotency bound: {}",
                        match (c.applicable, c.holds) {
                            (false, _) => c.detail.clone(),
                            (true, Some(true)) => format!("holds ({})", c.detail),
                            (true, Some(false)) => format!("VIOLATED ({})", c.detail),
                            (true, None) => c.detail.clone(),
                        }
                    ),
                );
            }
            if let Some(levels) = &m.weight_levels {
                push(&mut out, "weight filtration bases:");
                for (l, rows) in levels.iter().enumerate() {
                    let rendered: Vec<String> = rows
                        .iter()
                        .map(|row| {
                            let entries: Vec<String> =
                                row.iter().map(|x| x.0.to_string()).collect();
                            format!("({})", entries.join(", "))
                        })
                        .collect();
                    push(&mut out, &format!("  W_{l}: [{}]", rendered.join(", ")));
                }
            }
        }
        if let Some(f) = &self.central_fibre {
            push(&mut out, &format!("dim F^n Gr_n H^n(X_0): {}", f.fn_grn));
            push(&mut out, "E1 dimensions (rows p, columns q):");
            for (p, row) in f.e1_dims.iter().enumerate() {
                push(&mut out, &format!("  p={p}: {row:?}"));
            }
            push(
                &mut out,
                "E2 dimensions (? = restriction maps not supplied):",
            );
            for (p, row) in f.e2_dims.iter().enumerate() {
                let rendered: Vec<String> = row
                    .iter()
                    .map(|d| d.map_or("?".to_string(), |v| v.to_string()))
                    .collect();
                push(&mut out, &format!("  p={p}: [{}]", rendered.join(", ")));
            }
            let h: Vec<String> = f
                .h_total
                .iter()
                .map(|d| d.map_or("?".to_string(), |v| v.to_string()))
                .collect();
            push(&mut out, &format!("dim H^m(X_0): [{}]", h.join(", ")));
        }
        if let Some(nd) = &self.nodal {
            push(&mut out, &nd.transcript);
        }
        if let Some(p) = &self.paired {
            push(
                &mut out,
                &format!(
                    "graded slice: orbit rank {} | fibre rank {} | isomorphism rank {}",
                    p.orbit_rank, p.fibre_rank, p.isomorphism_rank
                ),
            );
            push(
                &mut out,
                &format!(
                    "forced vanishings hold: homology slot {}, nearby drop {}",
                    p.vanishing_homology_ok, p.vanishing_nearby_ok
                ),
            );
        }
        if let Some(q) = &self.quadrature {
            push(
                &mut out,
                &format!(
                    "quadrature: slope {:.6} (expected sqrt({}) = {:.6}){}",
                    q.slope,
                    q.degree,
                    q.expected_slope,
                    match q.agrees_with_classification {
                        Some(true) => ", agrees with classification",
                        Some(false) => ", DISAGREES with classification",
                        None => "",
                    }
                ),
            );
            for r in &q.rungs {
                push(
                    &mut out,
                    &format!("  up to y = {:>12.1}: integral {:.9}", r.y_max, r.integral),
                );
            }
        }
        if let Some(c) = &self.catalog {
            for e in &c.entries {
                let status = match (e.passed, &e.got) {
                    (Some(true), Some(got)) => format!("pass ({got})"),
                    (Some(false), Some(got)) => {
                        format!("MISMATCH (expected {}, got {got})", e.expected)
                    }
                    _ => format!("expected {}", e.expected),
                };
                push(
                    &mut out,
                    &format!("  {:<14} {:<50} {status}", e.name, e.description),
                );
            }
        }
        push(&mut out, &format!("exit code: {}", self.exit_code));
        out
    }
}
