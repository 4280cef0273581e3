//! The nilpotent-orbit route: orbit polynomial, finite/infinite
//! classification, the `N^(n-1) = 0` nilpotency bound, and the opt-in numeric
//! quadrature cross-check of the arc-length growth.
//!
//! The classification runs two provably equivalent tests on every call, the
//! vanishing of the pairings `C_i = Q(alpha, N^i conj(alpha))` for `i > 0`
//! and the graded position of `alpha` in the weight filtration, and refuses
//! to answer if they disagree, which can only happen on data that is not a
//! genuine polarized limit.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::hodge::{CheckItem, DefiniteSign, Polarization};
use crate::matrix::Matrix;
use crate::monodromy::{weight_filtration, weight_levels, MonodromyOperator};
use crate::poly::RealPoly;
use crate::scalar::{
    f64_to_ratio, gauss_int, i_pow, ratio_to_f64, sign, ExactScalar, GaussScalar, Scalar,
};
use crate::{Classification, Error, Result, Verdict, Witness};

/// Input to the limiting-mixed-Hodge-structure route: weight, monodromy,
/// polarization, and a generator of the rank-one deepest Hodge piece.
#[derive(Debug, Clone)]
pub struct OrbitProblem {
    op: MonodromyOperator,
    q: Polarization,
    alpha: Vec<GaussScalar>,
}

impl OrbitProblem {
    pub fn new(op: MonodromyOperator, q: Polarization, alpha: Vec<GaussScalar>) -> Result<Self> {
        if q.dim() != op.dim() || alpha.len() != op.dim() {
            return Err(Error::DimensionMismatch {
                context: "orbit problem",
            });
        }
        if q.weight() != op.weight() {
            return Err(Error::DimensionMismatch {
                context: "orbit problem: polarization and monodromy weights differ",
            });
        }
        if alpha.iter().all(Zero::is_zero) {
            return Err(Error::ZeroVector {
                context: "orbit generator alpha",
            });
        }
        Ok(OrbitProblem { op, q, alpha })
    }

    pub fn weight(&self) -> usize {
        self.op.weight()
    }

    pub fn dim(&self) -> usize {
        self.op.dim()
    }

    pub fn operator(&self) -> &MonodromyOperator {
        &self.op
    }

    pub fn polarization(&self) -> &Polarization {
        &self.q
    }

    pub fn alpha(&self) -> &[GaussScalar] {
        &self.alpha
    }

    /// The pairings `C_i = Q(alpha, N^i conj(alpha))` for `i = 0 ..= n`.
    pub fn pairings(&self) -> Result<Vec<GaussScalar>> {
        let n_c = self.op.log().complexify();
        let mut v: Vec<GaussScalar> = self.alpha.iter().map(|x| x.conjugate()).collect();
        let mut out = Vec::with_capacity(self.weight() + 1);
        for _ in 0..=self.weight() {
            out.push(self.q.pairing(&self.alpha, &v)?);
            v = n_c.apply(&v)?;
        }
        Ok(out)
    }

    /// Rescale the generator by a nonzero Gaussian rational; every verdict is
    /// invariant under this.
    pub fn rescale_alpha(&self, factor: &GaussScalar) -> Result<Self> {
        if factor.is_zero() {
            return Err(Error::ZeroVector {
                context: "alpha rescaling factor",
            });
        }
        let alpha = self
            .alpha
            .iter()
            .map(|x| x.clone() * factor.clone())
            .collect();
        OrbitProblem::new(self.op.clone(), self.q.clone(), alpha)
    }

    /// Rescale the polarization by a positive rational.
    pub fn rescale_polarization(&self, factor: &ExactScalar) -> Result<Self> {
        OrbitProblem::new(self.op.clone(), self.q.rescale(factor)?, self.alpha.clone())
    }

    /// Transport the whole problem through the change of basis `v = s v'`
    /// with exact inverse `s_inv`: `N' = s^-1 N s`, `Q' = s^T Q s`,
    /// `alpha' = s^-1 alpha`.
    pub fn change_basis(
        &self,
        s: &Matrix<ExactScalar>,
        s_inv: &Matrix<ExactScalar>,
    ) -> Result<Self> {
        if s.rows() != self.dim() || !s.is_square() || s_inv.rows() != self.dim() {
            return Err(Error::DimensionMismatch {
                context: "orbit basis change",
            });
        }
        if s.mul(s_inv)? != Matrix::identity(self.dim()) {
            return Err(Error::InvalidOrbit {
                reason: String::from("basis change matrices are not mutually inverse"),
            });
        }
        let n_new = s_inv.mul(self.op.log())?.mul(s)?;
        let op = MonodromyOperator::from_nilpotent(n_new, self.weight())?;
        let q = Polarization::new(self.weight(), s.transpose().mul(self.q.form())?.mul(s)?)?;
        let alpha = s_inv.complexify().apply(&self.alpha)?;
        OrbitProblem::new(op, q, alpha)
    }
}

/// `p(y) = i^n Q(alpha, e^{-2iyN} conj(alpha))`, collected per power of `y`.
/// The expansion terminates because `N^(n+1) = 0`; every coefficient must be
/// exactly real, or the input is not a polarized limit datum.
#[derive(Debug, Clone)]
pub struct OrbitPolynomial {
    pairings: Vec<GaussScalar>,
    raw: RealPoly,
    normalized: RealPoly,
    sign_flipped: bool,
}

impl OrbitPolynomial {
    /// Coefficient of `y^k` is `i^n (-2i)^k / k! * C_k`.
    pub fn from_problem(prob: &OrbitProblem) -> Result<Self> {
        let pairings = prob.pairings()?;
        let n = prob.weight();
        let mut factor = i_pow(n as i64);
        let mut coeffs = Vec::with_capacity(n + 1);
        for (k, c) in pairings.iter().enumerate() {
            if k > 0 {
                let minus_two_i = GaussScalar::new(ExactScalar::zero(), crate::scalar::int(-2));
                factor = factor * minus_two_i
                    / GaussScalar::from_rational(ExactScalar::from_integer(k.into()));
            }
            let coeff = factor.clone() * c.clone();
            if !coeff.is_real() {
                return Err(Error::NotRealPolynomial {
                    coefficient_index: k,
                });
            }
            coeffs.push(coeff.real_part());
        }
        Ok(Self::from_real_coefficients(pairings, coeffs))
    }

    fn from_real_coefficients(pairings: Vec<GaussScalar>, coeffs: Vec<ExactScalar>) -> Self {
        let raw = RealPoly::new(coeffs);
        let flip = raw.leading().map_or(false, |l| sign(l) < 0);
        // Orientation: the generator is only defined up to scale, so a
        // negative leading coefficient is flipped before any positivity use.
        let normalized = if flip { raw.negate() } else { raw.clone() };
        OrbitPolynomial {
            pairings,
            raw,
            normalized,
            sign_flipped: flip,
        }
    }

    /// Synthetic entry point: a polynomial given directly by its real
    /// coefficients (ascending), for driving the quadrature machinery.
    pub fn synthetic(coeffs: Vec<ExactScalar>) -> Self {
        Self::from_real_coefficients(Vec::new(), coeffs)
    }

    pub fn pairings(&self) -> &[GaussScalar] {
        &self.pairings
    }

    /// Coefficients as computed (before orientation normalization).
    pub fn raw(&self) -> &RealPoly {
        &self.raw
    }

    /// Orientation-normalized polynomial (positive leading coefficient).
    pub fn normalized(&self) -> &RealPoly {
        &self.normalized
    }

    pub fn sign_flipped(&self) -> bool {
        self.sign_flipped
    }

    pub fn degree(&self) -> usize {
        self.raw.degree()
    }

    pub fn is_identically_zero(&self) -> bool {
        self.raw.is_zero()
    }
}

/// Build the orbit polynomial of a problem.
pub fn orbit_polynomial(prob: &OrbitProblem) -> Result<OrbitPolynomial> {
    OrbitPolynomial::from_problem(prob)
}

/// Decide finite/infinite Weil-Petersson distance.
///
/// Route one: the distance is finite iff `C_i = 0` for every `i > 0`. Route
/// two: the distance is finite iff `alpha` lands in `Gr_n`, i.e. lies in the
/// complexified `W_n` but not in `W_{n-1}`. Both run; disagreement is an
/// internal-consistency error (impossible for valid polarized input).
pub fn classify(prob: &OrbitProblem) -> Result<Classification> {
    let pairings = prob.pairings()?;
    let nonzero = pairings
        .iter()
        .enumerate()
        .skip(1)
        .find(|(_, c)| !c.is_zero());
    let pairing_finite = nonzero.is_none();

    let n = prob.weight() as i64;
    let levels = weight_levels(prob.operator(), &[n, n - 1])?;
    let w_n = levels[0].complexify();
    let w_n1 = levels[1].complexify();
    let graded_finite = w_n.contains_vector(prob.alpha()) && !w_n1.contains_vector(prob.alpha());

    if pairing_finite != graded_finite {
        return Err(Error::RoutesDisagree {
            pairing_finite,
            graded_finite,
        });
    }

    Ok(match nonzero {
        None => Classification {
            verdict: Verdict::FiniteDistance,
            witness: Witness::HigherPairingsVanish,
        },
        Some((i, c)) => Classification {
            verdict: Verdict::InfiniteDistance,
            witness: Witness::NonzeroPairing {
                index: i,
                value: c.clone(),
            },
        },
    })
}

/// Smallest `l` with `alpha ∈ W_l ⊗ C`.
pub fn graded_level(prob: &OrbitProblem) -> Result<usize> {
    let n2 = 2 * prob.weight() as i64;
    let all: Vec<i64> = (0..=n2).collect();
    let levels = weight_levels(prob.operator(), &all)?;
    for (l, level) in levels.iter().enumerate() {
        if level.complexify().contains_vector(prob.alpha()) {
            return Ok(l);
        }
    }
    Err(Error::FiltrationAxiom {
        reason: String::from("alpha escapes W_{2n}, which is the full space"),
    })
}

/// Validity report for an orbit problem: every Schmid-style condition that
/// is checkable from `(n, N, Q, alpha)` alone (the full Hodge filtration is
/// not part of the problem data).
#[derive(Debug, Clone)]
pub struct OrbitValidity {
    pub items: Vec<CheckItem>,
    /// Sign of the orientation pairing `i^(n-k) C_k` on the class of alpha.
    pub definite_sign: Option<DefiniteSign>,
    /// Graded level of alpha in the weight filtration.
    pub class_level: usize,
}

impl OrbitValidity {
    pub fn passed(&self) -> bool {
        self.items.iter().all(|i| i.passed)
    }
}

/// Run the checkable validity conditions.
pub fn validate(prob: &OrbitProblem) -> Result<OrbitValidity> {
    let mut items = Vec::new();
    let push = |items: &mut Vec<CheckItem>, name: &str, passed: bool, detail: String| {
        items.push(CheckItem {
            name: String::from(name),
            passed,
            detail,
        });
    };

    let invariant = prob.q.is_invariant_under(prob.op.log())?;
    push(
        &mut items,
        "N lies in the isometry algebra of Q",
        invariant,
        if invariant {
            String::new()
        } else {
            String::from("N^T Q + Q N != 0")
        },
    );

    // Self-certifying weight filtration; failure here is a bug trap, so
    // propagate instead of reporting.
    let wf = weight_filtration(prob.operator())?;
    push(
        &mut items,
        "weight filtration satisfies both defining properties",
        true,
        String::new(),
    );

    let poly = OrbitPolynomial::from_problem(prob);
    let poly_ok = poly.is_ok();
    push(
        &mut items,
        "orbit polynomial has real coefficients",
        poly_ok,
        match &poly {
            Err(Error::NotRealPolynomial { coefficient_index }) => {
                format!("coefficient of y^{coefficient_index} has nonzero imaginary part")
            }
            _ => String::new(),
        },
    );

    let n = prob.weight() as i64;
    let level = graded_level(prob)? as i64;
    let k = level - n;
    let in_upper_half = k >= 0;
    push(
        &mut items,
        "alpha sits in the upper half of the weight filtration",
        in_upper_half,
        if in_upper_half {
            String::new()
        } else {
            format!("class of alpha has level {level}, below the weight {n}")
        },
    );

    let mut definite_sign = None;
    if in_upper_half {
        // Primitivity of the class: N^{k+1} alpha must drop to W_{n-k-3}.
        let npow = prob.op.log().pow((k + 1) as usize)?.complexify();
        let moved = npow.apply(prob.alpha())?;
        let target = wf.level(n - k - 3).complexify();
        let primitive = moved.iter().all(Zero::is_zero) || target.contains_vector(&moved);
        push(
            &mut items,
            "class of alpha is primitive in its graded piece",
            primitive,
            String::new(),
        );

        // Orientation-normalized positivity of the top pairing: the class of
        // alpha has type (n, k), so the Hodge-metric scalar is i^(n-k) C_k.
        let pairings = prob.pairings()?;
        let c_k = pairings[k as usize].clone();
        let value = i_pow(n - k) * c_k;
        let real_and_nonzero = value.is_real() && !value.is_zero();
        if real_and_nonzero {
            definite_sign = Some(if sign(&value.real_part()) > 0 {
                DefiniteSign::Positive
            } else {
                DefiniteSign::Negative
            });
        }
        push(
            &mut items,
            "orientation pairing i^(n-k) C_k is real, nonzero and definite",
            real_and_nonzero,
            format!("value {value}"),
        );
    }

    Ok(OrbitValidity {
        items,
        definite_sign,
        class_level: level as usize,
    })
}

/// Outcome of the `N^(n-1) = 0` nilpotency check on a finite-distance
/// problem.
#[derive(Debug, Clone)]
pub struct NilpotencyReport {
    /// False when the verdict is infinite: the bound says nothing then.
    pub applicable: bool,
    pub validity: Option<OrbitValidity>,
    /// `Some(true)` when `N^(n-1) = 0` exactly; `None` when not applicable
    /// or the validity hypothesis failed.
    pub holds: Option<bool>,
    /// Standard basis column witnessing `N^(n-1) != 0`, if any.
    pub witness_column: Option<usize>,
    pub detail: String,
}

/// For a finite-distance problem passing the validity checks, `N^(n-1)`
/// must vanish on the whole space: the top graded pieces are forced to be
/// zero, which caps every Jordan block at size `n - 1`.
///
/// At weight 1 the exponent degenerates (`N^0` is the identity); there the
/// content is that a finite-distance limit forces every Jordan block to be
/// trivial, so the check becomes `N = 0`.
pub fn check_finite_nilpotency(
    prob: &OrbitProblem,
    cls: &Classification,
) -> Result<NilpotencyReport> {
    if !cls.verdict.is_finite() {
        return Ok(NilpotencyReport {
            applicable: false,
            validity: None,
            holds: None,
            witness_column: None,
            detail: String::from("not applicable: distance is infinite"),
        });
    }
    let validity = validate(prob)?;
    if !validity.passed() {
        return Ok(NilpotencyReport {
            applicable: true,
            validity: Some(validity),
            holds: None,
            witness_column: None,
            detail: String::from(
                "hypothesis unmet: input fails the polarized-limit validity checks",
            ),
        });
    }
    let n = prob.weight();
    if n == 0 {
        return Ok(NilpotencyReport {
            applicable: true,
            validity: Some(validity),
            holds: Some(true),
            witness_column: None,
            detail: String::from("trivial for weight 0"),
        });
    }
    let exponent = (n - 1).max(1);
    let power = prob.op.log().pow(exponent)?;
    let holds = power.is_zero_matrix();
    let witness_column = if holds {
        None
    } else {
        (0..power.cols()).find(|&c| (0..power.rows()).any(|r| !power.at(r, c).is_zero()))
    };
    Ok(NilpotencyReport {
        applicable: true,
        validity: Some(validity),
        holds: Some(holds),
        witness_column,
        detail: if holds {
            format!("N^{exponent} = 0 exactly")
        } else {
            format!("N^{exponent} != 0")
        },
    })
}

/// One rung of the growth ladder.
#[derive(Debug, Clone, Copy)]
pub struct GrowthRung {
    pub y_max: f64,
    pub integral: f64,
}

/// Arc-length growth of `sqrt(-d²/dy² log p)` against `log y`.
#[derive(Debug, Clone)]
pub struct GrowthReport {
    pub degree: usize,
    pub sign_flipped: bool,
    pub rungs: Vec<GrowthRung>,
    /// Least-squares slope of the cumulative integral against `ln y_max`.
    pub slope: f64,
    /// `sqrt(degree)`: the exact asymptotic slope.
    pub expected_slope: f64,
    /// Whether the quadrature verdict (divergent iff degree >= 1) agrees
    /// with the exact classification; `None` for synthetic polynomials.
    pub classification_agrees: Option<bool>,
}

/// Numerically integrate the arc-length integrand of the orbit polynomial
/// over a geometric ladder of windows and fit the growth slope.
///
/// The integrand `sqrt(max(0, (p'^2 - p p'') / p^2))` is evaluated exactly
/// at rational sample points and converted to floats at the last moment;
/// adaptive Simpson with a per-panel tolerance of 1e-9 does the rest. The
/// window must be free of roots of `p`, which is certified exactly by a
/// Sturm-sequence count before any float is produced.
pub fn arc_length_growth(
    poly: &OrbitPolynomial,
    y0: f64,
    y_max: f64,
    steps: usize,
) -> Result<GrowthReport> {
    if poly.is_identically_zero() {
        return Err(Error::InvalidOrbit {
            reason: String::from("orbit polynomial is identically zero"),
        });
    }
    if steps < 2 {
        return Err(Error::InvalidOrbit {
            reason: String::from("growth ladder needs at least 2 rungs"),
        });
    }
    if !(y0.is_finite() && y_max.is_finite()) || y0 <= 0.0 || y_max <= y0 {
        return Err(Error::InvalidOrbit {
            reason: String::from("require 0 < y0 < y_max, finite"),
        });
    }
    let p = poly.normalized().clone();
    let lo = f64_to_ratio(y0).expect("finite");
    let hi = f64_to_ratio(y_max).expect("finite");

    // Exact positivity certificate on the closed window.
    if p.eval(&lo).is_zero() || p.eval(&hi).is_zero() {
        let at = if p.eval(&lo).is_zero() { &lo } else { &hi };
        return Err(Error::RootInWindow {
            lo: format!("{at}"),
            hi: format!("{at}"),
        });
    }
    if p.count_roots_in(&lo, &hi) > 0 {
        let width = (hi.clone() - lo.clone()) * ExactScalar::new(1.into(), (1u64 << 20).into());
        let (rl, rh) = p.isolate_root_in(&lo, &hi, &width);
        return Err(Error::RootInWindow {
            lo: format!("{rl}"),
            hi: format!("{rh}"),
        });
    }
    // Root-free with a negative endpoint: negative on the whole window.
    if sign(&p.eval(&lo)) < 0 || sign(&p.eval(&hi)) < 0 {
        return Err(Error::InvalidOrbit {
            reason: String::from("orbit polynomial is negative on the window"),
        });
    }

    let pd = p.derivative();
    let pdd = pd.derivative();
    let integrand = move |y: &ExactScalar| -> f64 {
        let py = p.eval(y);
        let pdy = pd.eval(y);
        let pddy = pdd.eval(y);
        let num = pdy.clone() * pdy - py.clone() * pddy;
        let val = ratio_to_f64(&(num / (py.clone() * py)));
        if val <= 0.0 {
            0.0
        } else {
            libm::sqrt(val)
        }
    };

    // Geometric ladder y0 < Y_1 < ... < Y_steps = y_max.
    let ratio = libm::pow(y_max / y0, 1.0 / steps as f64);
    let mut cut_points = Vec::with_capacity(steps + 1);
    cut_points.push(lo.clone());
    for j in 1..steps {
        let y = y0 * libm::pow(ratio, j as f64);
        cut_points.push(f64_to_ratio(y).expect("finite"));
    }
    cut_points.push(hi.clone());

    let mut rungs = Vec::with_capacity(steps);
    let mut cumulative = 0.0f64;
    for w in cut_points.windows(2) {
        cumulative += adaptive_simpson(&integrand, &w[0], &w[1], 1e-9);
        rungs.push(GrowthRung {
            y_max: ratio_to_f64(&w[1]),
            integral: cumulative,
        });
    }

    // Least-squares slope of integral against ln(y_max).
    let xs: Vec<f64> = rungs.iter().map(|r| libm::log(r.y_max)).collect();
    let ys: Vec<f64> = rungs.iter().map(|r| r.integral).collect();
    let xbar = xs.iter().sum::<f64>() / xs.len() as f64;
    let ybar = ys.iter().sum::<f64>() / ys.len() as f64;
    let mut num = 0.0;
    let mut den = 0.0;
    for (x, y) in xs.iter().zip(&ys) {
        num += (x - xbar) * (y - ybar);
        den += (x - xbar) * (x - xbar);
    }
    let slope = if den == 0.0 { 0.0 } else { num / den };
    let degree = poly.degree();

    Ok(GrowthReport {
        degree,
        sign_flipped: poly.sign_flipped(),
        rungs,
        slope,
        expected_slope: libm::sqrt(degree as f64),
        classification_agrees: None,
    })
}

/// Quadrature cross-check of the exact classification: divergent growth iff
/// infinite distance.
pub fn quadrature_crosscheck(
    prob: &OrbitProblem,
    y0: f64,
    y_max: f64,
    steps: usize,
) -> Result<GrowthReport> {
    let poly = orbit_polynomial(prob)?;
    let cls = classify(prob)?;
    let mut report = arc_length_growth(&poly, y0, y_max, steps)?;
    report.classification_agrees = Some((report.degree == 0) == cls.verdict.is_finite());
    Ok(report)
}

/// Adaptive Simpson with exact rational midpoints. The cheap estimate on a
/// panel is refined until the Richardson error indicator drops below the
/// per-panel tolerance or the depth cap is hit.
fn adaptive_simpson(
    f: &impl Fn(&ExactScalar) -> f64,
    a: &ExactScalar,
    b: &ExactScalar,
    tol: f64,
) -> f64 {
    let half = ExactScalar::new(1.into(), 2.into());
    let m = (a.clone() + b.clone()) * half;
    let fa = f(a);
    let fm = f(&m);
    let fb = f(b);
    let width = ratio_to_f64(&(b.clone() - a.clone()));
    let whole = width / 6.0 * (fa + 4.0 * fm + fb);
    simpson_recurse(f, a, b, &m, fa, fm, fb, whole, tol, 36)
}

#[allow(clippy::too_many_arguments)]
fn simpson_recurse(
    f: &impl Fn(&ExactScalar) -> f64,
    a: &ExactScalar,
    b: &ExactScalar,
    m: &ExactScalar,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: usize,
) -> f64 {
    let half = ExactScalar::new(1.into(), 2.into());
    let lm = (a.clone() + m.clone()) * half.clone();
    let rm = (m.clone() + b.clone()) * half;
    let flm = f(&lm);
    let frm = f(&rm);
    let wl = ratio_to_f64(&(m.clone() - a.clone()));
    let wr = ratio_to_f64(&(b.clone() - m.clone()));
    let left = wl / 6.0 * (fa + 4.0 * flm + fm);
    let right = wr / 6.0 * (fm + 4.0 * frm + fb);
    let refined = left + right;
    if depth == 0 || libm::fabs(refined - whole) <= 15.0 * tol {
        return refined + (refined - whole) / 15.0;
    }
    simpson_recurse(f, a, m, &lm, fa, flm, fm, left, tol / 2.0, depth - 1)
        + simpson_recurse(f, m, b, &rm, fm, frm, fb, right, tol / 2.0, depth - 1)
}

/// Standard elliptic test datum: `n = 1`, a single Jordan block, the
/// standard skew form, `alpha = (0, 1)`.
pub fn elliptic_example() -> Result<OrbitProblem> {
    let op = crate::monodromy::unipotent_from_i64(&[&[1, 1], &[0, 1]], 1)?;
    let q = Polarization::new(1, crate::matrix::mat_i64(&[&[0, 1], &[-1, 0]]))?;
    OrbitProblem::new(op, q, alloc::vec![gauss_int(0), gauss_int(1)])
}
