//! Dispatch: problem document in, report with exit code out.

use wpdeg_core::centralfibre::{classify_central, e1_page, e2_page, fn_grn_central};
use wpdeg_core::clemensschmid::graded_slice;
use wpdeg_core::monodromy::weight_filtration;
use wpdeg_core::nodal::{adjunction, classify_nodal, describe_adjunction};
use wpdeg_core::orbit::{
    check_finite_nilpotency, classify, orbit_polynomial, quadrature_crosscheck, validate,
};
use wpdeg_core::{Classification, Error};

use crate::document::{Payload, ProblemDocument, RationalJson};
use crate::report::{
    CatalogEntryResult, CatalogSection, CheckItemJson, FibreSection, MonodromySection,
    NilpotencySection, NodalSection, PairedSection, QuadratureRungJson, QuadratureSection, Report,
};
use crate::{exit, exit_code_for};

#[derive(Debug, Clone, Copy, Default)]
pub struct RunOptions {
    /// Opt-in numeric cross-check (the only float-bearing path).
    pub quadrature: bool,
    /// Treat failed validity checks as input errors.
    pub strict: bool,
}

/// Default quadrature window used by the CLI flag.
const QUADRATURE_WINDOW: (f64, f64, usize) = (1.0, 1e6, 5);

fn fail(mut report: Report, err: &Error) -> Report {
    report.error = Some(err.to_string());
    report.exit_code = exit_code_for(err);
    report
}

fn verdict_exit(cls: &Classification) -> i32 {
    if cls.verdict.is_finite() {
        exit::FINITE
    } else {
        exit::INFINITE
    }
}

fn set_classification(report: &mut Report, cls: &Classification) {
    report.verdict = Some(cls.verdict.to_string());
    report.witness = Some(cls.witness.to_string());
    report.exit_code = verdict_exit(cls);
}

fn monodromy_section(
    prob: &wpdeg_core::orbit::OrbitProblem,
    with_levels: bool,
) -> Result<MonodromySection, Error> {
    let wf = weight_filtration(prob.operator())?;
    let poly = orbit_polynomial(prob)?;
    let validity = validate(prob)?;
    let weight_levels = with_levels.then(|| {
        wf.levels()
            .iter()
            .map(|s| {
                s.basis_rows()
                    .into_iter()
                    .map(|row| row.into_iter().map(RationalJson).collect())
                    .collect()
            })
            .collect()
    });
    Ok(MonodromySection {
        graded_ranks: wf.graded_ranks(),
        pairings: poly.pairings().iter().map(|c| c.to_string()).collect(),
        polynomial: poly
            .raw()
            .coefficients()
            .iter()
            .cloned()
            .map(RationalJson)
            .collect(),
        degree: poly.degree(),
        sign_flipped: poly.sign_flipped(),
        class_level: validity.class_level,
        definite_sign: validity.definite_sign.map(|s| s.to_string()),
        validity: validity.items.iter().map(CheckItemJson::from).collect(),
        nilpotency: None,
        weight_levels,
    })
}

fn quadrature_section(prob: &wpdeg_core::orbit::OrbitProblem) -> Result<QuadratureSection, Error> {
    let (y0, y_max, steps) = QUADRATURE_WINDOW;
    let growth = quadrature_crosscheck(prob, y0, y_max, steps)?;
    Ok(QuadratureSection {
        degree: growth.degree,
        slope: growth.slope,
        expected_slope: growth.expected_slope,
        rungs: growth
            .rungs
            .iter()
            .map(|r| QuadratureRungJson {
                y_max: r.y_max,
                integral: r.integral,
            })
            .collect(),
        agrees_with_classification: growth.classification_agrees,
    })
}

fn fibre_section(
    model: &wpdeg_core::centralfibre::CentralFibreModel,
) -> Result<FibreSection, Error> {
    let n = model.dim();
    let e1 = e1_page(model)?;
    let e2 = e2_page(&e1)?;
    let e1_dims = (0..=n)
        .map(|p| (0..=2 * n).map(|q| e1.term(p, q).unwrap_or(0)).collect())
        .collect();
    let e2_dims = (0..=n)
        .map(|p| (0..=2 * n).map(|q| e2.term(p, q)).collect())
        .collect();
    let h_total = (0..=2 * n).map(|m| e2.h_total(m)).collect();
    Ok(FibreSection {
        fn_grn: fn_grn_central(model),
        e1_dims,
        e2_dims,
        h_total,
    })
}

fn apply_strict(report: &mut Report, opts: &RunOptions) {
    if !opts.strict {
        return;
    }
    let failed: Vec<String> = report
        .monodromy
        .iter()
        .flat_map(|m| m.validity.iter())
        .filter(|i| !i.passed)
        .map(|i| i.name.clone())
        .collect();
    if !failed.is_empty() {
        report.error = Some(format!(
            "strict mode: validity checks failed: {}",
            failed.join("; ")
        ));
        report.exit_code = exit::INPUT_ERROR;
    }
}

/// `wpdeg classify <file>`: dispatch on mode, print verdict + witness plus
/// the per-route detail.
pub fn run_classify(doc: &ProblemDocument, opts: &RunOptions) -> Report {
    let mut report = Report::new("classify");
    report.mode = Some(doc.mode_name().to_string());
    report.n = Some(doc.n);
    match &doc.payload {
        Payload::Monodromy(payload) => {
            let prob = match payload.to_problem(doc.n) {
                Ok(p) => p,
                Err(e) => return fail(report, &e),
            };
            let cls = match classify(&prob) {
                Ok(c) => c,
                Err(e) => return fail(report, &e),
            };
            let mut section = match monodromy_section(&prob, false) {
                Ok(s) => s,
                Err(e) => return fail(report, &e),
            };
            match check_finite_nilpotency(&prob, &cls) {
                Ok(c) => {
                    section.nilpotency = Some(NilpotencySection {
                        applicable: c.applicable,
                        holds: c.holds,
                        detail: c.detail,
                    })
                }
                Err(e) => return fail(report, &e),
            }
            report.monodromy = Some(section);
            if opts.quadrature {
                match quadrature_section(&prob) {
                    Ok(q) => report.quadrature = Some(q),
                    Err(e) => return fail(report, &e),
                }
            }
            set_classification(&mut report, &cls);
            apply_strict(&mut report, opts);
        }
        Payload::CentralFibre(payload) => {
            let model = match payload.to_model(doc.n) {
                Ok(m) => m,
                Err(e) => return fail(report, &e),
            };
            let cls = classify_central(&model);
            match fibre_section(&model) {
                Ok(s) => report.central_fibre = Some(s),
                Err(e) => return fail(report, &e),
            }
            set_classification(&mut report, &cls);
        }
        Payload::Nodal(payload) => {
            let config = match payload.to_config(doc.n) {
                Ok(c) => c,
                Err(e) => return fail(report, &e),
            };
            let result = adjunction(&config);
            report.nodal = Some(NodalSection {
                k_i: result.k_i,
                exceptional_coefficient: result.exceptional_coefficients[0],
                node_trace_coefficient: result.node_trace_coefficient,
                section_exists: result.section_exists,
                canonical_total: result.canonical_total.to_string(),
                proper_transform_canonical: result.proper_transform_canonical.to_string(),
                transcript: describe_adjunction(&config, &result),
            });
            let (cls, model) = match classify_nodal(&config) {
                Ok(pair) => pair,
                Err(e) => return fail(report, &e),
            };
            // The emitted model must confirm the verdict on the
            // cohomological route.
            let central = classify_central(&model);
            if central.verdict != cls.verdict {
                return fail(
                    report,
                    &Error::RoutesDisagree {
                        pairing_finite: cls.verdict.is_finite(),
                        graded_finite: central.verdict.is_finite(),
                    },
                );
            }
            match fibre_section(&model) {
                Ok(s) => report.central_fibre = Some(s),
                Err(e) => return fail(report, &e),
            }
            set_classification(&mut report, &cls);
        }
        Payload::Paired(payload) => {
            let prob = match payload.monodromy.to_problem(doc.n) {
                Ok(p) => p,
                Err(e) => return fail(report, &e),
            };
            let model = match payload.central_fibre.to_model(doc.n) {
                Ok(m) => m,
                Err(e) => return fail(report, &e),
            };
            match monodromy_section(&prob, false) {
                Ok(s) => report.monodromy = Some(s),
                Err(e) => return fail(report, &e),
            }
            match fibre_section(&model) {
                Ok(s) => report.central_fibre = Some(s),
                Err(e) => return fail(report, &e),
            }
            let slice = match graded_slice(&prob, &model) {
                Ok(s) => s,
                Err(e) => return fail(report, &e),
            };
            report.paired = Some(PairedSection {
                orbit_rank: slice.orbit_rank,
                fibre_rank: slice.fibre_rank,
                isomorphism_rank: slice.isomorphism_rank,
                vanishing_homology_ok: slice.vanishing_homology_ok,
                vanishing_nearby_ok: slice.vanishing_nearby_ok,
            });
            let cls = match classify(&prob) {
                Ok(c) => c,
                Err(e) => return fail(report, &e),
            };
            if opts.quadrature {
                match quadrature_section(&prob) {
                    Ok(q) => report.quadrature = Some(q),
                    Err(e) => return fail(report, &e),
                }
            }
            set_classification(&mut report, &cls);
            apply_strict(&mut report, opts);
        }
    }
    report
}

fn require_monodromy<'a>(
    doc: &'a ProblemDocument,
    report: &Report,
) -> Result<&'a crate::document::MonodromyPayload, Box<Report>> {
    match &doc.payload {
        Payload::Monodromy(p) => Ok(p),
        _ => {
            let mut r = report.clone();
            r.error = Some(format!(
                "{} requires a monodromy-mode problem file, got mode {}",
                report.command,
                doc.mode_name()
            ));
            r.exit_code = exit::INPUT_ERROR;
            Err(Box::new(r))
        }
    }
}

/// `wpdeg wf <file>`: the weight filtration with explicit bases.
pub fn run_weight_filtration(doc: &ProblemDocument) -> Report {
    let mut report = Report::new("wf");
    report.mode = Some(doc.mode_name().to_string());
    report.n = Some(doc.n);
    let payload = match require_monodromy(doc, &report) {
        Ok(p) => p,
        Err(r) => return *r,
    };
    let prob = match payload.to_problem(doc.n) {
        Ok(p) => p,
        Err(e) => return fail(report, &e),
    };
    match monodromy_section(&prob, true) {
        Ok(s) => report.monodromy = Some(s),
        Err(e) => return fail(report, &e),
    }
    report
}

/// `wpdeg orbit <file>`: pairings, polynomial, validity (+ optional
/// quadrature).
pub fn run_orbit(doc: &ProblemDocument, opts: &RunOptions) -> Report {
    let mut report = Report::new("orbit");
    report.mode = Some(doc.mode_name().to_string());
    report.n = Some(doc.n);
    let payload = match require_monodromy(doc, &report) {
        Ok(p) => p,
        Err(r) => return *r,
    };
    let prob = match payload.to_problem(doc.n) {
        Ok(p) => p,
        Err(e) => return fail(report, &e),
    };
    match monodromy_section(&prob, false) {
        Ok(s) => report.monodromy = Some(s),
        Err(e) => return fail(report, &e),
    }
    if opts.quadrature {
        match quadrature_section(&prob) {
            Ok(q) => report.quadrature = Some(q),
            Err(e) => return fail(report, &e),
        }
    }
    apply_strict(&mut report, opts);
    report
}

/// `wpdeg spectral <file>`: E1/E2 pages and H* dimensions.
pub fn run_spectral(doc: &ProblemDocument) -> Report {
    let mut report = Report::new("spectral");
    report.mode = Some(doc.mode_name().to_string());
    report.n = Some(doc.n);
    let payload = match &doc.payload {
        Payload::CentralFibre(p) => p,
        _ => {
            report.error = Some(format!(
                "spectral requires a central_fibre-mode problem file, got mode {}",
                doc.mode_name()
            ));
            report.exit_code = exit::INPUT_ERROR;
            return report;
        }
    };
    let model = match payload.to_model(doc.n) {
        Ok(m) => m,
        Err(e) => return fail(report, &e),
    };
    match fibre_section(&model) {
        Ok(s) => report.central_fibre = Some(s),
        Err(e) => return fail(report, &e),
    }
    report
}

/// `wpdeg nodal <file>`: the adjunction transcript plus the classification.
pub fn run_nodal(doc: &ProblemDocument) -> Report {
    let mut report = Report::new("nodal");
    report.mode = Some(doc.mode_name().to_string());
    report.n = Some(doc.n);
    let payload = match &doc.payload {
        Payload::Nodal(p) => p,
        _ => {
            report.error = Some(format!(
                "nodal requires a nodal-mode problem file, got mode {}",
                doc.mode_name()
            ));
            report.exit_code = exit::INPUT_ERROR;
            return report;
        }
    };
    let config = match payload.to_config(doc.n) {
        Ok(c) => c,
        Err(e) => return fail(report, &e),
    };
    let result = adjunction(&config);
    report.nodal = Some(NodalSection {
        k_i: result.k_i,
        exceptional_coefficient: result.exceptional_coefficients[0],
        node_trace_coefficient: result.node_trace_coefficient,
        section_exists: result.section_exists,
        canonical_total: result.canonical_total.to_string(),
        proper_transform_canonical: result.proper_transform_canonical.to_string(),
        transcript: describe_adjunction(&config, &result),
    });
    match classify_nodal(&config) {
        Ok((cls, _model)) => set_classification(&mut report, &cls),
        Err(e) => return fail(report, &e),
    }
    report
}

/// `wpdeg catalog list`.
pub fn run_catalog_list() -> Report {
    let mut report = Report::new("catalog list");
    report.catalog = Some(CatalogSection {
        entries: crate::catalog::entries()
            .iter()
            .map(|e| CatalogEntryResult {
                name: e.name.to_string(),
                description: e.description.to_string(),
                expected: e.expected.to_string(),
                got: None,
                passed: None,
            })
            .collect(),
    });
    report
}

/// `wpdeg catalog run`: execute every entry and compare verdicts.
pub fn run_catalog_run(opts: &RunOptions) -> Report {
    let mut report = Report::new("catalog run");
    let mut entries = Vec::new();
    let mut all_passed = true;
    for entry in crate::catalog::entries() {
        let result = run_classify(&entry.document, opts);
        let got = result
            .verdict
            .clone()
            .unwrap_or_else(|| format!("error: {}", result.error.as_deref().unwrap_or("unknown")));
        let passed = result.verdict.as_deref() == Some(&entry.expected.to_string());
        all_passed &= passed;
        entries.push(CatalogEntryResult {
            name: entry.name.to_string(),
            description: entry.description.to_string(),
            expected: entry.expected.to_string(),
            got: Some(got),
            passed: Some(passed),
        });
    }
    report.catalog = Some(CatalogSection { entries });
    if !all_passed {
        report.error = Some("catalog verdict mismatch".to_string());
        report.exit_code = exit::INCONSISTENT;
    }
    report
}
