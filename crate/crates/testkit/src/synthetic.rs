//! Generator of genuine polarized limit data.
//!
//! A synthetic limit is a direct sum of standard polarized blocks. Each
//! block is a chain `w, Nw, N^2 w, ...` (or a conjugate pair of chains)
//! whose top class has a prescribed Hodge type; the pairing, filtration and
//! generator are written in the chain basis, where the defining positivity
//! conditions are antidiagonal sign patterns, then transported back to
//! integer monodromy coordinates. The construction keeps `T` integral: the
//! underlying monodromy is a unipotent Jordan form and the chains are built
//! from `N = log T` itself.

use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::Rng;

use wpdeg_core::hodge::{HodgeFiltration, MixedHodge, Polarization, PolarizedMixedHodge};
use wpdeg_core::matrix::Matrix;
use wpdeg_core::monodromy::{log_unipotent, weight_filtration, MonodromyOperator};
use wpdeg_core::orbit::OrbitProblem;
use wpdeg_core::scalar::{complexify, i_pow, ExactScalar, GaussScalar};
use wpdeg_core::subspace::Subspace;

use crate::gen::{positive_rational, unimodular, unipotent_jordan};

/// One polarized block: a chain of length `m + 1` whose top class has type
/// `(p_top, n + m - p_top)`. Real (self-conjugate) when `2 p_top = n + m`,
/// otherwise a conjugate pair of chains.
#[derive(Debug, Clone)]
pub struct BlockSpec {
    /// `m`: the top class lives at weight `n + m`.
    pub depth: usize,
    /// Hodge type of the top class.
    pub p_top: usize,
    /// Positive scale of the block pairing.
    pub scale: ExactScalar,
}

impl BlockSpec {
    pub fn is_real(&self, weight_n: usize) -> bool {
        2 * self.p_top == weight_n + self.depth
    }

    pub fn chain_len(&self) -> usize {
        self.depth + 1
    }

    pub fn real_dim(&self, weight_n: usize) -> usize {
        if self.is_real(weight_n) {
            self.chain_len()
        } else {
            2 * self.chain_len()
        }
    }
}

/// A complete synthetic limit: integral unipotent monodromy, rational
/// polarization, generator of the deepest Hodge piece, and the full Hodge
/// filtration it came with.
#[derive(Debug, Clone)]
pub struct SyntheticLimit {
    pub weight_n: usize,
    pub monodromy: Matrix<ExactScalar>,
    pub polarization: Matrix<ExactScalar>,
    pub alpha: Vec<GaussScalar>,
    /// Basis rows of `F^p` for `p = 0 ..= n`.
    pub filtration_rows: Vec<Vec<Vec<GaussScalar>>>,
    /// Jordan chain lengths of `N` (a conjugate pair contributes two).
    pub chain_partition: Vec<usize>,
    /// `k`: the class of alpha has weight `n + k`; finite distance iff 0.
    pub alpha_drop: usize,
}

impl SyntheticLimit {
    pub fn dim(&self) -> usize {
        self.monodromy.rows()
    }

    pub fn operator(&self) -> MonodromyOperator {
        log_unipotent(self.monodromy.clone(), self.weight_n).expect("unipotent by construction")
    }

    pub fn problem(&self) -> OrbitProblem {
        OrbitProblem::new(
            self.operator(),
            Polarization::new(self.weight_n, self.polarization.clone())
                .expect("valid by construction"),
            self.alpha.clone(),
        )
        .expect("valid by construction")
    }

    pub fn polarized_mhs(&self) -> PolarizedMixedHodge {
        let op = self.operator();
        let wf = weight_filtration(&op).expect("self-certifying");
        let dim = self.dim();
        let levels = self
            .filtration_rows
            .iter()
            .map(|rows| Subspace::from_rows(dim, rows.clone()).expect("rectangular"))
            .collect();
        let hf = HodgeFiltration::new(self.weight_n, levels).expect("descending by construction");
        let base = MixedHodge::new(wf, hf).expect("same ambient");
        let q = Polarization::new(self.weight_n, self.polarization.clone())
            .expect("valid by construction");
        PolarizedMixedHodge::new(base, op, q).expect("consistent by construction")
    }

    pub fn expect_finite(&self) -> bool {
        self.alpha_drop == 0
    }
}

fn zero_gauss(dim: usize) -> Vec<GaussScalar> {
    vec![GaussScalar::zero(); dim]
}

/// Assemble the limit in standard Jordan coordinates. `alpha_block` must
/// have `p_top = n`; `extras` must stay strictly below Hodge depth n.
pub fn assemble_limit(
    weight_n: usize,
    alpha_block: BlockSpec,
    extras: &[BlockSpec],
) -> SyntheticLimit {
    let n = weight_n;
    assert_eq!(alpha_block.p_top, n, "alpha block must reach depth n");
    assert!(alpha_block.depth <= n);
    for b in extras {
        assert!(b.p_top < n, "extra blocks must stay below depth n");
        assert!(b.p_top <= n && b.depth <= n);
        assert!(
            2 * b.p_top >= n + b.depth,
            "top type must sit in the upper half"
        );
    }

    // Chains: (length, paired) per block, alpha block first.
    let mut blocks: Vec<(BlockSpec, bool)> = Vec::new();
    blocks.push((alpha_block.clone(), !alpha_block.is_real(n)));
    for b in extras {
        blocks.push((b.clone(), !b.is_real(n)));
    }

    let mut chain_partition = Vec::new();
    for (b, paired) in &blocks {
        chain_partition.push(b.chain_len());
        if *paired {
            chain_partition.push(b.chain_len());
        }
    }
    let dim: usize = chain_partition.iter().sum();

    let t = unipotent_jordan(&chain_partition);
    let op = log_unipotent(t.clone(), n).expect("unipotent jordan form");
    let n_mat = op.log().clone();

    // Chain vectors w_{c,j} = N^j e_{seed(c)} as ambient columns.
    let mut seeds = Vec::with_capacity(chain_partition.len());
    let mut offset = 0;
    for &len in &chain_partition {
        seeds.push(offset);
        offset += len;
    }
    let mut w_cols: Vec<Vec<ExactScalar>> = Vec::with_capacity(dim);
    for (c, &len) in chain_partition.iter().enumerate() {
        let mut v = vec![ExactScalar::zero(); dim];
        v[seeds[c]] = ExactScalar::one();
        for _ in 0..len {
            w_cols.push(v.clone());
            v = n_mat.apply(&v).expect("square");
        }
    }
    let p_mat = Matrix::from_fn(dim, dim, |r, c| w_cols[c][r].clone());
    let p_inv = p_mat
        .inverse()
        .expect("square")
        .expect("chain vectors form a basis");

    // Pairing in chain coordinates.
    let mut q_w: Matrix<ExactScalar> = Matrix::zeros(dim, dim);
    let half = ExactScalar::new(1.into(), 2.into());
    let mut chain_idx = 0usize;
    for (b, paired) in &blocks {
        let m = b.depth;
        let d = 2 * b.p_top as i64 - (n + m) as i64;
        // i^d * c_0 must be a positive rational.
        let c0 = i_pow(-d) * GaussScalar::new(b.scale.clone(), ExactScalar::zero());
        if !paired {
            // Real chain: Q(w_a, w_b) = (-1)^a c_0 on the antidiagonal.
            let o = seeds[chain_idx];
            for a in 0..=m {
                let bidx = m - a;
                let sign = if a % 2 == 0 {
                    ExactScalar::one()
                } else {
                    -ExactScalar::one()
                };
                *q_w.at_mut(o + a, o + bidx) = sign * c0.re.clone();
            }
            chain_idx += 1;
        } else {
            // Conjugate pair u_a = e_a + i f_a with Q(u_a, conj u_b) =
            // (-1)^a c_0 on the antidiagonal and zero within each isotype.
            let o1 = seeds[chain_idx];
            let o2 = seeds[chain_idx + 1];
            for a in 0..=m {
                let bidx = m - a;
                let c_a = if a % 2 == 0 { c0.clone() } else { -c0.clone() };
                let re_half = half.clone() * c_a.re.clone();
                let im_half = half.clone() * c_a.im.clone();
                *q_w.at_mut(o1 + a, o1 + bidx) = re_half.clone();
                *q_w.at_mut(o2 + a, o2 + bidx) = re_half;
                *q_w.at_mut(o1 + a, o2 + bidx) = -im_half.clone();
                *q_w.at_mut(o2 + a, o1 + bidx) = im_half;
            }
            chain_idx += 2;
        }
    }
    let q_std = p_inv
        .transpose()
        .mul(&q_w)
        .expect("square")
        .mul(&p_inv)
        .expect("square");

    // Hodge filtration rows and the generator, in ambient coordinates.
    let w_row = |chain: usize, j: usize| -> Vec<GaussScalar> {
        w_cols[seeds[chain] + j].iter().map(complexify).collect()
    };
    let mut filtration_rows: Vec<Vec<Vec<GaussScalar>>> = vec![Vec::new(); n + 1];
    let mut alpha = zero_gauss(dim);
    let i_unit = GaussScalar::new(ExactScalar::zero(), ExactScalar::one());
    let mut chain_idx = 0usize;
    for (block_no, (b, paired)) in blocks.iter().enumerate() {
        let m = b.depth;
        let p_top = b.p_top as i64;
        let q_top = (n + m) as i64 - p_top;
        if !paired {
            for a in 0..=m {
                let depth = p_top - a as i64;
                let row = w_row(chain_idx, a);
                for p in 0..=depth.max(0) as usize {
                    if (p as i64) <= depth {
                        filtration_rows[p].push(row.clone());
                    }
                }
                if block_no == 0 && a == 0 {
                    alpha = row.clone();
                }
            }
            chain_idx += 1;
        } else {
            for a in 0..=m {
                let e_row = w_row(chain_idx, a);
                let f_row = w_row(chain_idx + 1, a);
                let u: Vec<GaussScalar> = e_row
                    .iter()
                    .zip(&f_row)
                    .map(|(e, f)| e.clone() + i_unit.clone() * f.clone())
                    .collect();
                let u_bar: Vec<GaussScalar> = e_row
                    .iter()
                    .zip(&f_row)
                    .map(|(e, f)| e.clone() - i_unit.clone() * f.clone())
                    .collect();
                let u_depth = p_top - a as i64;
                let ubar_depth = q_top - a as i64;
                for p in 0..=n {
                    if (p as i64) <= u_depth {
                        filtration_rows[p].push(u.clone());
                    }
                    if (p as i64) <= ubar_depth {
                        filtration_rows[p].push(u_bar.clone());
                    }
                }
                if block_no == 0 && a == 0 {
                    alpha = u.clone();
                }
            }
            chain_idx += 2;
        }
    }

    chain_partition.sort_unstable_by(|a, b| b.cmp(a));
    SyntheticLimit {
        weight_n: n,
        monodromy: t,
        polarization: q_std,
        alpha,
        filtration_rows,
        chain_partition,
        alpha_drop: alpha_block.depth,
    }
}

/// Transport a limit through a random unimodular change of basis; `T` stays
/// integral and every verdict is unchanged.
pub fn conjugate_limit(rng: &mut StdRng, limit: &SyntheticLimit) -> SyntheticLimit {
    let dim = limit.dim();
    let (s, s_inv) = unimodular(rng, dim, 2 * dim);
    let s_inv_c = s_inv.complexify();
    let monodromy = s_inv
        .mul(&limit.monodromy)
        .expect("square")
        .mul(&s)
        .expect("square");
    let polarization = s
        .transpose()
        .mul(&limit.polarization)
        .expect("square")
        .mul(&s)
        .expect("square");
    let alpha = s_inv_c.apply(&limit.alpha).expect("square");
    let s_inv_t = s_inv_c.transpose();
    let filtration_rows = limit
        .filtration_rows
        .iter()
        .map(|rows| {
            rows.iter()
                .map(|row| {
                    // row vectors transform by S_inv^T on the right
                    let m = Matrix::from_rows(vec![row.clone()], dim).expect("rectangular");
                    m.mul(&s_inv_t).expect("square").row(0).to_vec()
                })
                .collect()
        })
        .collect();
    SyntheticLimit {
        weight_n: limit.weight_n,
        monodromy,
        polarization,
        alpha,
        filtration_rows,
        chain_partition: limit.chain_partition.clone(),
        alpha_drop: limit.alpha_drop,
    }
}

/// Extra blocks that can accompany an alpha block of weight `n` without
/// contributing to `F^n`, fitted into `budget` remaining real dimensions.
fn sample_extras(rng: &mut StdRng, n: usize, mut budget: usize) -> Vec<BlockSpec> {
    let mut out = Vec::new();
    let mut candidates: Vec<(usize, usize)> = Vec::new(); // (depth m, p_top)
    for m in 0..=n {
        for p_top in 0..n {
            // depth below n, top type in the upper half, valid type range
            if 2 * p_top >= n + m && p_top <= n && (n + m) >= p_top {
                candidates.push((m, p_top));
            }
        }
    }
    if candidates.is_empty() {
        return out;
    }
    for _ in 0..rng.random_range(0..4usize) {
        let &(m, p_top) = &candidates[rng.random_range(0..candidates.len())];
        let spec = BlockSpec {
            depth: m,
            p_top,
            scale: positive_rational(rng, 4, 3),
        };
        let need = spec.real_dim(n);
        if need <= budget {
            budget -= need;
            out.push(spec);
        }
    }
    out
}

/// Random valid limit with class level `n + alpha_drop`, total real
/// dimension at most `max_dim`, conjugated into general position.
pub fn random_limit(
    rng: &mut StdRng,
    weight_n: usize,
    alpha_drop: usize,
    max_dim: usize,
) -> SyntheticLimit {
    assert!(alpha_drop <= weight_n);
    let alpha_block = BlockSpec {
        depth: alpha_drop,
        p_top: weight_n,
        scale: positive_rational(rng, 4, 3),
    };
    let used = alpha_block.real_dim(weight_n);
    assert!(
        used <= max_dim,
        "alpha block alone exceeds the dimension cap"
    );
    let extras = sample_extras(rng, weight_n, max_dim - used);
    let limit = assemble_limit(weight_n, alpha_block, &extras);
    conjugate_limit(rng, &limit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::rng;
    use wpdeg_core::hodge::{check_polarized_mhs, DefiniteSign};
    use wpdeg_core::orbit::{classify, validate};
    use wpdeg_core::Verdict;

    #[test]
    fn standard_elliptic_block_reproduces_known_data() {
        let limit = assemble_limit(
            1,
            BlockSpec {
                depth: 1,
                p_top: 1,
                scale: ExactScalar::one(),
            },
            &[],
        );
        assert_eq!(limit.dim(), 2);
        assert_eq!(limit.chain_partition, vec![2]);
        let cls = classify(&limit.problem()).unwrap();
        assert_eq!(cls.verdict, Verdict::InfiniteDistance);
    }

    #[test]
    fn synthetic_limits_pass_the_full_checker() {
        let mut r = rng(7);
        for n in 1..=3usize {
            for drop in 0..=n {
                let limit = random_limit(&mut r, n, drop, 10);
                let report = check_polarized_mhs(&limit.polarized_mhs()).unwrap();
                assert!(
                    report.passed(),
                    "n={n} drop={drop}: {:?}",
                    report
                        .items
                        .iter()
                        .filter(|i| !i.passed)
                        .collect::<Vec<_>>()
                );
                assert_eq!(report.definite_sign, Some(DefiniteSign::Positive));
                let validity = validate(&limit.problem()).unwrap();
                assert!(validity.passed());
                let cls = classify(&limit.problem()).unwrap();
                assert_eq!(cls.verdict.is_finite(), limit.expect_finite());
            }
        }
    }
}
