//! Independent oracles.
//!
//! These deliberately avoid the production linear algebra: plain textbook
//! Gauss-Jordan over `BigRational`, modular ranks, partition combinatorics
//! and cellular chain complexes, all on raw vectors.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Plain Gauss-Jordan reduced row echelon form with rational division (no
/// fraction-free tricks). Returns the reduced rows and the rank.
pub fn naive_rref(rows: &[Vec<BigRational>]) -> (Vec<Vec<BigRational>>, usize) {
    let mut m: Vec<Vec<BigRational>> = rows.to_vec();
    let nrows = m.len();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut rank = 0usize;
    for c in 0..ncols {
        let Some(pr) = (rank..nrows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(rank, pr);
        let p = m[rank][c].clone();
        for j in 0..ncols {
            m[rank][j] = &m[rank][j] / &p;
        }
        for i in 0..nrows {
            if i != rank && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..ncols {
                    let sub = &f * &m[rank][j];
                    m[i][j] = &m[i][j] - &sub;
                }
            }
        }
        rank += 1;
        if rank == nrows {
            break;
        }
    }
    (m, rank)
}

pub fn naive_rank(rows: &[Vec<BigRational>]) -> usize {
    naive_rref(rows).1
}

/// Rank of a rational matrix reduced mod `p`; `None` when a denominator is
/// divisible by `p`.
pub fn rank_mod_p(rows: &[Vec<BigRational>], p: u64) -> Option<usize> {
    let pb = BigInt::from(p);
    let to_fp = |x: &BigRational| -> Option<u64> {
        let n = ((x.numer() % &pb) + &pb) % &pb;
        let d = ((x.denom() % &pb) + &pb) % &pb;
        let n: u64 = n.try_into().ok()?;
        let d: u64 = d.try_into().ok()?;
        if d == 0 {
            return None;
        }
        Some(mulmod(n, inv_mod(d, p)?, p))
    };
    let mut m: Vec<Vec<u64>> = Vec::with_capacity(rows.len());
    for row in rows {
        let mut out = Vec::with_capacity(row.len());
        for x in row {
            out.push(to_fp(x)?);
        }
        m.push(out);
    }
    let nrows = m.len();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut rank = 0usize;
    for c in 0..ncols {
        let Some(pr) = (rank..nrows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(rank, pr);
        let inv = inv_mod(m[rank][c], p)?;
        for j in 0..ncols {
            m[rank][j] = mulmod(m[rank][j], inv, p);
        }
        for i in 0..nrows {
            if i != rank && m[i][c] != 0 {
                let f = m[i][c];
                for j in 0..ncols {
                    let sub = mulmod(f, m[rank][j], p);
                    m[i][j] = (m[i][j] + p - sub) % p;
                }
            }
        }
        rank += 1;
        if rank == nrows {
            break;
        }
    }
    Some(rank)
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn inv_mod(a: u64, p: u64) -> Option<u64> {
    if a == 0 {
        return None;
    }
    // Fermat: p prime.
    let mut base = a % p;
    let mut exp = p - 2;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, p);
        }
        base = mulmod(base, base, p);
        exp >>= 1;
    }
    Some(acc)
}

/// Rank over Q estimated from below via several prime fields. The modular
/// rank can only undercount (bad primes), so the maximum over a few large
/// primes is the true rank with overwhelming probability.
pub fn modular_rank(rows: &[Vec<BigRational>]) -> usize {
    const PRIMES: [u64; 3] = [1_000_000_007, 998_244_353, 4_294_967_291];
    PRIMES
        .iter()
        .filter_map(|&p| rank_mod_p(rows, p))
        .max()
        .unwrap_or_else(|| naive_rank(rows))
}

/// Graded ranks of the weight filtration of a nilpotent with the given
/// Jordan block sizes, centered at weight `n`: a block of size `s`
/// contributes one dimension to each of the levels `n+s-1, n+s-3, ...,
/// n-s+1`.
pub fn jordan_graded_ranks(partition: &[usize], n: usize) -> Vec<usize> {
    let mut ranks = vec![0usize; 2 * n + 1];
    for &s in partition {
        assert!(
            s >= 1 && s <= n + 1,
            "block size {s} out of range for weight {n}"
        );
        for i in 0..s {
            let level = n + s - 1 - 2 * i;
            ranks[level] += 1;
        }
    }
    ranks
}

/// Jordan block sizes of a nilpotent matrix, recovered from the rank
/// sequence of its powers: the number of blocks of size >= k equals
/// `rank(N^(k-1)) - rank(N^k)`.
pub fn jordan_partition(n_matrix: &[Vec<BigRational>]) -> Vec<usize> {
    let dim = n_matrix.len();
    let mut ranks = vec![dim]; // rank of N^0
    let mut power = identity_raw(dim);
    loop {
        power = raw_mul(&power, n_matrix);
        let r = naive_rank(&power);
        ranks.push(r);
        if r == 0 {
            break;
        }
        assert!(ranks.len() <= dim + 1, "matrix is not nilpotent");
    }
    let mut partition = Vec::new();
    for k in 1..ranks.len() {
        let at_least_k = ranks[k - 1] - ranks[k];
        let at_least_k1 = if k + 1 < ranks.len() {
            ranks[k] - ranks[k + 1]
        } else {
            0
        };
        for _ in 0..at_least_k.saturating_sub(at_least_k1) {
            partition.push(k);
        }
    }
    partition.sort_unstable_by(|a, b| b.cmp(a));
    partition
}

fn identity_raw(dim: usize) -> Vec<Vec<BigRational>> {
    (0..dim)
        .map(|r| {
            (0..dim)
                .map(|c| {
                    if r == c {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect()
}

pub fn raw_mul(a: &[Vec<BigRational>], b: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let n = a.len();
    let m = b.first().map_or(0, |r| r.len());
    let k = b.len();
    (0..n)
        .map(|r| {
            (0..m)
                .map(|c| {
                    (0..k)
                        .map(|i| &a[r][i] * &b[i][c])
                        .fold(BigRational::zero(), |acc, x| acc + x)
                })
                .collect()
        })
        .collect()
}

/// Cohomology dimensions `(h^0, h^1, h^2)` of a configuration of 2-spheres
/// glued at points, via an explicit cellular chain complex independent of any
/// spectral sequence.
///
/// `gluings` lists `(i, j, multiplicity)`: components `i` and `j` share
/// `multiplicity` distinct points. Each sphere gets one interior vertex, an
/// edge from it to each of its gluing points, and a single 2-cell whose
/// attaching map runs around that tree (cellular boundary zero).
pub fn sphere_configuration_cohomology(
    num_components: usize,
    gluings: &[(usize, usize, usize)],
) -> (usize, usize, usize) {
    let mut num_points = 0usize;
    let mut edges: Vec<(usize, usize)> = Vec::new(); // (vertex from, vertex to)
                                                     // Vertices: 0..num_components are interior; points follow.
    for &(i, j, mult) in gluings {
        assert!(i < num_components && j < num_components && i != j);
        for _ in 0..mult {
            let point = num_components + num_points;
            num_points += 1;
            edges.push((i, point));
            edges.push((j, point));
        }
    }
    let v = num_components + num_points;
    let e = edges.len();
    // boundary_1: rows indexed by vertices, columns by edges.
    let mut d1 = vec![vec![BigRational::zero(); e]; v];
    for (col, &(a, b)) in edges.iter().enumerate() {
        d1[a][col] = -BigRational::one();
        d1[b][col] = BigRational::one();
    }
    let rank_d1 = naive_rank(&d1);
    // boundary_2 is zero: each edge appears twice with opposite orientation
    // in the attaching word of its sphere's 2-cell.
    let h0 = v - rank_d1;
    let h1 = e - rank_d1;
    let h2 = num_components;
    (h0, h1, h2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn from_i64(rows: &[&[i64]]) -> Vec<Vec<BigRational>> {
        rows.iter()
            .map(|r| {
                r.iter()
                    .map(|&x| BigRational::from_integer(x.into()))
                    .collect()
            })
            .collect()
    }

    #[test]
    fn naive_and_modular_ranks_agree() {
        let m = from_i64(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        assert_eq!(naive_rank(&m), 2);
        assert_eq!(modular_rank(&m), 2);
    }

    #[test]
    fn partition_of_shift_blocks() {
        // Blocks of sizes 3 and 1.
        let n = from_i64(&[&[0, 0, 0, 0], &[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 0, 0]]);
        assert_eq!(jordan_partition(&n), vec![3, 1]);
    }

    #[test]
    fn graded_ranks_of_partition() {
        // Weight 1, one block of size 2: ranks (1, 0, 1).
        assert_eq!(jordan_graded_ranks(&[2], 1), vec![1, 0, 1]);
        // Weight 2, blocks (3, 1): levels 4,2,0 from the 3-block, 2 from the 1-block.
        assert_eq!(jordan_graded_ranks(&[3, 1], 2), vec![1, 0, 2, 0, 1]);
    }

    #[test]
    fn sphere_complexes() {
        // Two spheres glued at one point: wedge of two S^2.
        assert_eq!(sphere_configuration_cohomology(2, &[(0, 1, 1)]), (1, 0, 2));
        // Cycle of three spheres: dual graph is a circle.
        assert_eq!(
            sphere_configuration_cohomology(3, &[(0, 1, 1), (1, 2, 1), (0, 2, 1)]),
            (1, 1, 3)
        );
        // Two spheres glued at two points (I_2 fibre).
        assert_eq!(sphere_configuration_cohomology(2, &[(0, 1, 2)]), (1, 1, 2));
    }
}
