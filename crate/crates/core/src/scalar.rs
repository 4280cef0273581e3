//! The exact base fields: arbitrary-precision rationals and Gaussian
//! rationals.
//!
//! [`ExactScalar`] is a reduced fraction of big integers with positive
//! denominator (both invariants are maintained by `num-rational` on every
//! construction). [`GaussScalar`] adjoins `√-1`; it is the coefficient field
//! wherever a complex number can appear, with pure-rational computations
//! running over [`ExactScalar`] directly.

use core::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision integer.
pub type Int = BigInt;

/// Arbitrary-precision rational number, always stored reduced with a
/// positive denominator.
pub type ExactScalar = Ratio<BigInt>;

/// Gaussian rational `re + im * sqrt(-1)`.
pub type GaussScalar = Complex<ExactScalar>;

/// `n` as an exact rational.
pub fn int(n: i64) -> ExactScalar {
    ExactScalar::from_integer(BigInt::from(n))
}

/// `n / d` as an exact rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> ExactScalar {
    ExactScalar::new(BigInt::from(n), BigInt::from(d))
}

/// `re + im * i` as a Gaussian rational.
pub fn gauss(re: ExactScalar, im: ExactScalar) -> GaussScalar {
    Complex::new(re, im)
}

/// `n` as a Gaussian rational.
pub fn gauss_int(n: i64) -> GaussScalar {
    Complex::new(int(n), int(0))
}

/// The imaginary unit.
pub fn imaginary_unit() -> GaussScalar {
    Complex::new(int(0), int(1))
}

/// `i^k` for any (possibly negative) integer exponent.
pub fn i_pow(k: i64) -> GaussScalar {
    match k.rem_euclid(4) {
        0 => gauss(int(1), int(0)),
        1 => gauss(int(0), int(1)),
        2 => gauss(int(-1), int(0)),
        _ => gauss(int(0), int(-1)),
    }
}

/// Embed a rational into the Gaussian rationals.
pub fn complexify(x: &ExactScalar) -> GaussScalar {
    Complex::new(x.clone(), ExactScalar::zero())
}

/// Field operations shared by the two exact coefficient fields.
///
/// The extra methods beyond arithmetic are what the linear algebra layer
/// needs: conjugation, reality tests, and per-row denominator clearing for
/// fraction-free elimination.
pub trait Scalar:
    Clone
    + PartialEq
    + core::fmt::Debug
    + core::fmt::Display
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// Complex conjugation (identity on rationals).
    fn conjugate(&self) -> Self;

    /// Is the imaginary part exactly zero?
    fn is_real(&self) -> bool;

    /// Real part as a rational.
    fn real_part(&self) -> ExactScalar;

    /// Embed a rational.
    fn from_rational(r: ExactScalar) -> Self;

    /// A positive integer scalar `f` such that `f * row` has integral
    /// entries; `1` when the row already is integral.
    fn denominator_clearing_factor(row: &[Self]) -> Self;
}

fn lcm_of_denominators<'a>(dens: impl Iterator<Item = &'a BigInt>) -> BigInt {
    let mut l = BigInt::one();
    for d in dens {
        l = l.lcm(d);
    }
    l
}

impl Scalar for ExactScalar {
    fn conjugate(&self) -> Self {
        self.clone()
    }

    fn is_real(&self) -> bool {
        true
    }

    fn real_part(&self) -> ExactScalar {
        self.clone()
    }

    fn from_rational(r: ExactScalar) -> Self {
        r
    }

    fn denominator_clearing_factor(row: &[Self]) -> Self {
        ExactScalar::from_integer(lcm_of_denominators(row.iter().map(|x| x.denom())))
    }
}

impl Scalar for GaussScalar {
    fn conjugate(&self) -> Self {
        self.conj()
    }

    fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    fn real_part(&self) -> ExactScalar {
        self.re.clone()
    }

    fn from_rational(r: ExactScalar) -> Self {
        Complex::new(r, ExactScalar::zero())
    }

    fn denominator_clearing_factor(row: &[Self]) -> Self {
        let l = lcm_of_denominators(
            row.iter()
                .flat_map(|x| [x.re.denom(), x.im.denom()].into_iter()),
        );
        Complex::new(ExactScalar::from_integer(l), ExactScalar::zero())
    }
}

/// Exact sign of a rational: -1, 0 or +1.
pub fn sign(x: &ExactScalar) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

/// Convert an exact rational to the nearest `f64`, robust against numerators
/// or denominators that individually overflow the float range.
pub fn ratio_to_f64(x: &ExactScalar) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    let nbits = x.numer().bits() as i64;
    let dbits = x.denom().bits() as i64;
    if nbits < 900 && dbits < 900 {
        let n = x.numer().to_f64().unwrap_or(f64::NAN);
        let d = x.denom().to_f64().unwrap_or(f64::NAN);
        return n / d;
    }
    // Shift both parts into range and restore the exponent afterwards.
    let shift_n = (nbits - 128).max(0);
    let shift_d = (dbits - 128).max(0);
    let n = (x.numer() >> shift_n).to_f64().unwrap_or(f64::NAN);
    let d = (x.denom() >> shift_d).to_f64().unwrap_or(f64::NAN);
    (n / d) * libm::exp2((shift_n - shift_d) as f64)
}

/// Exact rational from a finite `f64`.
pub fn f64_to_ratio(x: f64) -> Option<ExactScalar> {
    ExactScalar::from_float(x)
}
