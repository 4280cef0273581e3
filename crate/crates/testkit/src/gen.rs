//! Deterministic random generators for matrices and nilpotent operators.

use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use wpdeg_core::matrix::Matrix;
use wpdeg_core::scalar::{int, ExactScalar};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// Small random rational with numerator in `-max..=max` and denominator in
/// `1..=max_den`.
pub fn small_rational(rng: &mut StdRng, max: i64, max_den: i64) -> ExactScalar {
    let n = rng.random_range(-max..=max);
    let d = rng.random_range(1..=max_den);
    ExactScalar::new(BigInt::from(n), BigInt::from(d))
}

pub fn nonzero_rational(rng: &mut StdRng, max: i64, max_den: i64) -> ExactScalar {
    loop {
        let x = small_rational(rng, max, max_den);
        if !num_traits::Zero::is_zero(&x) {
            return x;
        }
    }
}

pub fn positive_rational(rng: &mut StdRng, max: i64, max_den: i64) -> ExactScalar {
    let n = rng.random_range(1..=max);
    let d = rng.random_range(1..=max_den);
    ExactScalar::new(BigInt::from(n), BigInt::from(d))
}

/// Random matrix with small rational entries.
pub fn random_matrix(rng: &mut StdRng, rows: usize, cols: usize) -> Matrix<ExactScalar> {
    Matrix::from_fn(rows, cols, |_, _| small_rational(rng, 5, 3))
}

/// Random unimodular integer matrix together with its exact inverse, built
/// as a product of elementary row operations with small coefficients.
pub fn unimodular(
    rng: &mut StdRng,
    dim: usize,
    steps: usize,
) -> (Matrix<ExactScalar>, Matrix<ExactScalar>) {
    let mut s = Matrix::<ExactScalar>::identity(dim);
    let mut s_inv = Matrix::<ExactScalar>::identity(dim);
    if dim < 2 {
        return (s, s_inv);
    }
    for _ in 0..steps {
        let i = rng.random_range(0..dim);
        let mut j = rng.random_range(0..dim);
        while j == i {
            j = rng.random_range(0..dim);
        }
        match rng.random_range(0..3u8) {
            0 => {
                // row_j += c * row_i  (inverse: row_j -= c * row_i applied on
                // the right of s_inv, i.e. column operation)
                let c = int(rng.random_range(-2..=2i64));
                let mut e = Matrix::<ExactScalar>::identity(dim);
                *e.at_mut(j, i) = c.clone();
                let mut e_inv = Matrix::<ExactScalar>::identity(dim);
                *e_inv.at_mut(j, i) = -c;
                s = e.mul(&s).expect("square");
                s_inv = s_inv.mul(&e_inv).expect("square");
            }
            1 => {
                // swap rows i and j
                let mut e = Matrix::<ExactScalar>::identity(dim);
                *e.at_mut(i, i) = int(0);
                *e.at_mut(j, j) = int(0);
                *e.at_mut(i, j) = int(1);
                *e.at_mut(j, i) = int(1);
                s = e.mul(&s).expect("square");
                s_inv = s_inv.mul(&e).expect("square");
            }
            _ => {
                // negate row i
                let mut e = Matrix::<ExactScalar>::identity(dim);
                *e.at_mut(i, i) = int(-1);
                s = e.mul(&s).expect("square");
                s_inv = s_inv.mul(&e).expect("square");
            }
        }
    }
    debug_assert_eq!(s.mul(&s_inv).expect("square"), Matrix::identity(dim));
    (s, s_inv)
}

/// Nilpotent shift with the given Jordan block sizes: within each block the
/// basis vector at offset `o + k` maps to `o + k + 1`.
pub fn shift_nilpotent(partition: &[usize]) -> Matrix<ExactScalar> {
    let dim: usize = partition.iter().sum();
    let mut m = Matrix::zeros(dim, dim);
    let mut offset = 0usize;
    for &s in partition {
        for k in 0..s.saturating_sub(1) {
            *m.at_mut(offset + k + 1, offset + k) = int(1);
        }
        offset += s;
    }
    m
}

/// Unipotent `I + shift` with the given Jordan block sizes.
pub fn unipotent_jordan(partition: &[usize]) -> Matrix<ExactScalar> {
    let dim: usize = partition.iter().sum();
    shift_nilpotent(partition)
        .add(&Matrix::identity(dim))
        .expect("square")
}

/// Random partition of `total` into parts of size at most `max_part`.
pub fn random_partition(rng: &mut StdRng, total: usize, max_part: usize) -> Vec<usize> {
    let mut left = total;
    let mut parts = Vec::new();
    while left > 0 {
        let p = rng.random_range(1..=max_part.min(left));
        parts.push(p);
        left -= p;
    }
    parts.sort_unstable_by(|a, b| b.cmp(a));
    parts
}

/// Random nilpotent integer matrix with known Jordan partition: a shift in
/// Jordan form conjugated by a random unimodular matrix.
pub fn conjugated_nilpotent(rng: &mut StdRng, partition: &[usize]) -> Matrix<ExactScalar> {
    let n0 = shift_nilpotent(partition);
    let dim = n0.rows();
    let (s, s_inv) = unimodular(rng, dim, 2 * dim);
    s_inv.mul(&n0).expect("square").mul(&s).expect("square")
}

/// Random unipotent integer matrix with known Jordan structure of `T - I`.
pub fn conjugated_unipotent(rng: &mut StdRng, partition: &[usize]) -> Matrix<ExactScalar> {
    let t0 = unipotent_jordan(partition);
    let dim = t0.rows();
    let (s, s_inv) = unimodular(rng, dim, 2 * dim);
    s_inv.mul(&t0).expect("square").mul(&s).expect("square")
}
