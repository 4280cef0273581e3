//! Polynomials with exact rational coefficients: evaluation, derivatives,
//! and Sturm-sequence root counting for certifying sign conditions on
//! quadrature windows.

use alloc::vec::Vec;

use num_traits::Zero;

use crate::scalar::{sign, ExactScalar};

/// Polynomial with ascending rational coefficients; trailing zeros trimmed,
/// so the zero polynomial has an empty coefficient list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealPoly {
    coeffs: Vec<ExactScalar>,
}

impl RealPoly {
    pub fn new(mut coeffs: Vec<ExactScalar>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RealPoly { coeffs }
    }

    pub fn zero() -> Self {
        RealPoly { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial and constants both reported as 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coefficients(&self) -> &[ExactScalar] {
        &self.coeffs
    }

    pub fn coefficient(&self, k: usize) -> ExactScalar {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(ExactScalar::zero)
    }

    pub fn leading(&self) -> Option<&ExactScalar> {
        self.coeffs.last()
    }

    pub fn negate(&self) -> Self {
        RealPoly {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn eval(&self, x: &ExactScalar) -> ExactScalar {
        let mut acc = ExactScalar::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return RealPoly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.clone() * ExactScalar::from_integer(k.into()))
            .collect();
        RealPoly::new(coeffs)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return RealPoly::zero();
        }
        let mut coeffs =
            alloc::vec![ExactScalar::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
            }
        }
        RealPoly::new(coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|k| self.coefficient(k) - other.coefficient(k))
            .collect();
        RealPoly::new(coeffs)
    }

    /// Remainder of polynomial division by a nonzero divisor.
    fn rem(&self, divisor: &Self) -> Self {
        debug_assert!(!divisor.is_zero());
        let d = divisor.degree();
        if d == 0 {
            // Division by a nonzero constant is exact.
            return RealPoly::zero();
        }
        let mut r = self.clone();
        let lead = divisor.leading().expect("nonzero divisor").clone();
        while !r.is_zero() && r.degree() >= d {
            let shift = r.degree() - d;
            let factor = r.leading().expect("nonzero").clone() / lead.clone();
            // r -= factor * x^shift * divisor
            let mut sub_coeffs = alloc::vec![ExactScalar::zero(); shift];
            sub_coeffs.extend(divisor.coeffs.iter().map(|c| c.clone() * factor.clone()));
            r = r.sub(&RealPoly::new(sub_coeffs));
        }
        r
    }

    /// Sturm chain `p, p', -rem(...), ...`. Counting sign variations at two
    /// points that are not roots gives the number of distinct real roots in
    /// between, multiplicities ignored.
    fn sturm_chain(&self) -> Vec<RealPoly> {
        let mut chain = alloc::vec![self.clone(), self.derivative()];
        loop {
            let k = chain.len();
            if chain[k - 1].is_zero() {
                chain.pop();
                break;
            }
            let r = chain[k - 2].rem(&chain[k - 1]).negate();
            if r.is_zero() {
                break;
            }
            chain.push(r);
        }
        chain
    }

    fn sign_variations(chain: &[RealPoly], x: &ExactScalar) -> usize {
        let mut last = 0i32;
        let mut variations = 0usize;
        for p in chain {
            let s = sign(&p.eval(x));
            if s == 0 {
                continue;
            }
            if last != 0 && s != last {
                variations += 1;
            }
            last = s;
        }
        variations
    }

    /// Number of distinct real roots in the open interval `(lo, hi)`;
    /// endpoints must not be roots.
    pub fn count_roots_in(&self, lo: &ExactScalar, hi: &ExactScalar) -> usize {
        debug_assert!(lo < hi);
        debug_assert!(!self.eval(lo).is_zero() && !self.eval(hi).is_zero());
        let chain = self.sturm_chain();
        Self::sign_variations(&chain, lo) - Self::sign_variations(&chain, hi)
    }

    /// Shrink `(lo, hi)` around one root by bisection until the width drops
    /// below `width`, returning the isolating interval.
    pub fn isolate_root_in(
        &self,
        lo: &ExactScalar,
        hi: &ExactScalar,
        width: &ExactScalar,
    ) -> (ExactScalar, ExactScalar) {
        let chain = self.sturm_chain();
        let mut lo = lo.clone();
        let mut hi = hi.clone();
        let half = ExactScalar::new(1.into(), 2.into());
        while (hi.clone() - lo.clone()) > *width {
            let mid = (lo.clone() + hi.clone()) * half.clone();
            if self.eval(&mid).is_zero() {
                return (mid.clone(), mid);
            }
            let left = Self::sign_variations(&chain, &lo) - Self::sign_variations(&chain, &mid);
            if left > 0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        (lo, hi)
    }
}
