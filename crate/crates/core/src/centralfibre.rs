//! The central-fibre route: a normal-crossing fibre modeled by components,
//! strata and Hodge numbers; the Mayer-Vietoris spectral sequence from the
//! E1 page; and the cohomological finite-distance criterion.
//!
//! The q = 0 row is genuinely combinatorial and carried exactly (cochain
//! spaces on connected pieces of strata, signed incidence differentials).
//! Rows q >= 1 carry dimensions; their differentials are user data (this
//! tool refuses to guess geometric restriction maps) except where a zero
//! map is forced by a zero source or target.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::matrix::Matrix;
use crate::scalar::{int, ExactScalar};
use crate::subspace::Subspace;
use crate::{Classification, Error, Result, Verdict, Witness};

/// Hodge numbers `h^{a,b}` of a (possibly disconnected) smooth projective
/// stratum of complex dimension `dim`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HodgeNumbers {
    dim: usize,
    grid: Vec<Vec<u64>>,
}

impl HodgeNumbers {
    pub fn new(dim: usize, grid: Vec<Vec<u64>>) -> Result<Self> {
        if grid.len() != dim + 1 || grid.iter().any(|row| row.len() != dim + 1) {
            return Err(Error::ModelInvalid {
                reason: format!(
                    "hodge grid must be {} x {} for a dimension-{dim} stratum",
                    dim + 1,
                    dim + 1
                ),
            });
        }
        for a in 0..=dim {
            for b in 0..=dim {
                if grid[a][b] != grid[b][a] {
                    return Err(Error::ModelInvalid {
                        reason: format!("hodge symmetry h^({a},{b}) = h^({b},{a}) violated"),
                    });
                }
            }
        }
        Ok(HodgeNumbers { dim, grid })
    }

    /// Connected projective space of dimension `dim`: `h^{a,a} = 1`.
    pub fn projective_space(dim: usize) -> Self {
        let grid = (0..=dim)
            .map(|a| (0..=dim).map(|b| u64::from(a == b)).collect())
            .collect();
        HodgeNumbers { dim, grid }
    }

    /// Smooth quadric hypersurface of dimension `dim`: `h^{a,a} = 1` plus an
    /// extra middle class in even dimensions.
    pub fn quadric(dim: usize) -> Self {
        let mut h = Self::projective_space(dim);
        if dim % 2 == 0 && dim > 0 {
            h.grid[dim / 2][dim / 2] = 2;
        }
        h
    }

    /// `count` disjoint points.
    pub fn points(count: u64) -> Self {
        HodgeNumbers {
            dim: 0,
            grid: vec![vec![count]],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn h(&self, a: usize, b: usize) -> u64 {
        if a <= self.dim && b <= self.dim {
            self.grid[a][b]
        } else {
            0
        }
    }

    /// `dim H^q = sum of h^{a,b} over a + b = q`.
    pub fn betti(&self, q: usize) -> u64 {
        (0..=q.min(self.dim))
            .map(|a| {
                if q - a <= self.dim {
                    self.grid[a][q - a]
                } else {
                    0
                }
            })
            .sum()
    }

    /// Number of connected pieces, `h^{0,0}`.
    pub fn pieces(&self) -> u64 {
        self.grid[0][0]
    }
}

/// A smooth irreducible component of the central fibre.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub id: String,
    pub hodge: HodgeNumbers,
}

/// A deeper stratum: the intersection of the listed components (indices
/// into the component list, strictly increasing).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stratum {
    pub members: Vec<usize>,
    pub hodge: HodgeNumbers,
}

impl Stratum {
    pub fn level(&self) -> usize {
        self.members.len() - 1
    }
}

/// Stratum description by component ids, for model construction.
#[derive(Debug, Clone)]
pub struct StratumSpec {
    pub members: Vec<String>,
    pub hodge: HodgeNumbers,
}

/// A normal-crossing central fibre of dimension `n`.
#[derive(Debug, Clone)]
pub struct CentralFibreModel {
    dim_n: usize,
    components: Vec<Component>,
    /// `strata[p]` lists the level-p strata; level 0 is the components.
    strata: Vec<Vec<Stratum>>,
    restriction_maps: BTreeMap<(usize, usize), Matrix<ExactScalar>>,
}

impl CentralFibreModel {
    pub fn new(
        dim_n: usize,
        components: Vec<Component>,
        deeper: Vec<StratumSpec>,
        restriction_maps: Vec<(usize, usize, Matrix<ExactScalar>)>,
    ) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::ModelInvalid {
                reason: "central fibre needs at least one component".to_string(),
            });
        }
        let mut index: BTreeMap<&str, usize> = BTreeMap::new();
        for (i, c) in components.iter().enumerate() {
            if c.id.is_empty() {
                return Err(Error::ModelInvalid {
                    reason: "empty component id".to_string(),
                });
            }
            if index.insert(c.id.as_str(), i).is_some() {
                return Err(Error::ModelInvalid {
                    reason: format!("duplicate component id {}", c.id),
                });
            }
            if c.hodge.dim() != dim_n {
                return Err(Error::ModelInvalid {
                    reason: format!("component {} must have dimension {dim_n}", c.id),
                });
            }
            // Components are smooth and irreducible, hence connected.
            if c.hodge.pieces() != 1 {
                return Err(Error::ModelInvalid {
                    reason: format!("component {} must be connected (h^(0,0) = 1)", c.id),
                });
            }
        }

        let mut strata: Vec<Vec<Stratum>> = vec![Vec::new(); dim_n + 1];
        strata[0] = components
            .iter()
            .enumerate()
            .map(|(i, c)| Stratum {
                members: vec![i],
                hodge: c.hodge.clone(),
            })
            .collect();

        let mut seen: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        for spec in &deeper {
            let mut members = Vec::with_capacity(spec.members.len());
            for id in &spec.members {
                let Some(&i) = index.get(id.as_str()) else {
                    return Err(Error::ModelInvalid {
                        reason: format!("stratum refers to unknown component {id}"),
                    });
                };
                members.push(i);
            }
            members.sort_unstable();
            if members.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::ModelInvalid {
                    reason: format!(
                        "stratum {:?} lists a component twice; self-intersections are not semistable",
                        spec.members
                    ),
                });
            }
            if members.len() < 2 {
                return Err(Error::ModelInvalid {
                    reason: "deeper strata need at least two components".to_string(),
                });
            }
            let level = members.len() - 1;
            if level > dim_n {
                return Err(Error::ModelInvalid {
                    reason: format!("a level-{level} stratum cannot exist in dimension {dim_n}"),
                });
            }
            if spec.hodge.dim() != dim_n - level {
                return Err(Error::ModelInvalid {
                    reason: format!(
                        "level-{level} stratum must have dimension {}",
                        dim_n - level
                    ),
                });
            }
            if spec.hodge.pieces() == 0 {
                return Err(Error::ModelInvalid {
                    reason: "listed strata must be nonempty (h^(0,0) >= 1)".to_string(),
                });
            }
            if seen.insert(members.clone(), level).is_some() {
                return Err(Error::ModelInvalid {
                    reason: format!("stratum {:?} listed twice", spec.members),
                });
            }
            strata[level].push(Stratum {
                members,
                hodge: spec.hodge.clone(),
            });
        }
        for level in 1..=dim_n {
            strata[level].sort_by(|a, b| a.members.cmp(&b.members));
        }

        // Downward closure: every (p-1)-face of a listed level-p stratum is
        // a nonempty intersection, so it must be listed too.
        for level in 2..=dim_n {
            for s in &strata[level] {
                for drop in 0..s.members.len() {
                    let mut face: Vec<usize> = s.members.clone();
                    face.remove(drop);
                    if !strata[level - 1].iter().any(|t| t.members == face) {
                        return Err(Error::ModelInvalid {
                            reason: format!(
                                "incidence is not downward closed: face {face:?} of {:?} is missing",
                                s.members
                            ),
                        });
                    }
                }
            }
        }

        // Attachment of connected pieces to faces is only determined when
        // each face is connected; disconnected strata must be maximal.
        for level in 1..dim_n {
            for s in &strata[level] {
                if s.hodge.pieces() > 1 {
                    let has_super = strata[level + 1]
                        .iter()
                        .any(|t| s.members.iter().all(|m| t.members.contains(m)));
                    if has_super {
                        return Err(Error::ModelInvalid {
                            reason: format!(
                                "stratum {:?} is disconnected (h^(0,0) > 1) but contained in a deeper \
                                 stratum; piece attachments would be ambiguous",
                                s.members
                            ),
                        });
                    }
                }
            }
        }

        let model = CentralFibreModel {
            dim_n,
            components,
            strata,
            restriction_maps: BTreeMap::new(),
        };

        // Validate user differentials against the E1 dimensions.
        let mut maps = BTreeMap::new();
        for (p, q, m) in restriction_maps {
            if q == 0 {
                return Err(Error::ModelInvalid {
                    reason: "the q = 0 differentials are combinatorial, not user data".to_string(),
                });
            }
            let src = model.e1_dim(p, q);
            let dst = model.e1_dim(p + 1, q);
            if m.cols() != src || m.rows() != dst {
                return Err(Error::ModelInvalid {
                    reason: format!(
                        "restriction map at (p={p}, q={q}) must be {dst} x {src}, got {} x {}",
                        m.rows(),
                        m.cols()
                    ),
                });
            }
            if maps.insert((p, q), m).is_some() {
                return Err(Error::ModelInvalid {
                    reason: format!("restriction map at (p={p}, q={q}) given twice"),
                });
            }
        }
        // d1 ∘ d1 = 0 for adjacent user maps.
        for (&(p, q), m) in &maps {
            if let Some(next) = maps.get(&(p + 1, q)) {
                if !next.mul(m)?.is_zero_matrix() {
                    return Err(Error::ModelInvalid {
                        reason: format!(
                            "restriction maps at q={q} do not compose to zero at p={p}"
                        ),
                    });
                }
            }
        }

        Ok(CentralFibreModel {
            restriction_maps: maps,
            ..model
        })
    }

    pub fn dim(&self) -> usize {
        self.dim_n
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn strata(&self, level: usize) -> &[Stratum] {
        self.strata.get(level).map_or(&[], Vec::as_slice)
    }

    /// `dim E1^{p,q} = sum over level-p strata of dim H^q`.
    pub fn e1_dim(&self, p: usize, q: usize) -> usize {
        self.strata(p)
            .iter()
            .map(|s| s.hodge.betti(q) as usize)
            .sum()
    }

    /// Connected pieces of the level-p stratum, as (stratum index, piece).
    fn pieces(&self, p: usize) -> Vec<(usize, u64)> {
        let mut out = Vec::new();
        for (i, s) in self.strata(p).iter().enumerate() {
            for piece in 0..s.hodge.pieces() {
                out.push((i, piece));
            }
        }
        out
    }

    /// Combinatorial coboundary on the q = 0 row:
    /// `(δφ)(X_{j_0..j_{p+1}}) = Σ_α (-1)^α φ(X_{j_0..ĵ_α..j_{p+1}})`.
    fn row0_differential(&self, p: usize) -> Matrix<ExactScalar> {
        let src_pieces = self.pieces(p);
        let dst_pieces = if p + 1 <= self.dim_n {
            self.pieces(p + 1)
        } else {
            Vec::new()
        };
        let src_index: BTreeMap<(usize, u64), usize> = src_pieces
            .iter()
            .enumerate()
            .map(|(col, &k)| (k, col))
            .collect();
        let mut m: Matrix<ExactScalar> = Matrix::zeros(dst_pieces.len(), src_pieces.len());
        for (row, &(t_idx, _piece)) in dst_pieces.iter().enumerate() {
            let t = &self.strata[p + 1][t_idx];
            for drop in 0..t.members.len() {
                let mut face: Vec<usize> = t.members.clone();
                face.remove(drop);
                let face_idx = self.strata[p]
                    .iter()
                    .position(|s| s.members == face)
                    .expect("downward closure validated");
                // A face containing a deeper stratum is connected
                // (validated), so its unique piece is 0.
                let col = src_index[&(face_idx, 0)];
                let sign = if drop % 2 == 0 { int(1) } else { int(-1) };
                let cur = m.at(row, col).clone();
                *m.at_mut(row, col) = cur + sign;
            }
        }
        m
    }
}

/// One page of the Mayer-Vietoris spectral sequence. Page 1 carries the
/// dimensions of every term plus all available differentials; page 2
/// carries `ker/im` dimensions where computable (`None` = the needed
/// restriction maps were not supplied) and the explicit cocycle/coboundary
/// subspaces of the combinatorial q = 0 row.
#[derive(Debug, Clone)]
pub struct SpectralPage {
    pub page: u8,
    dim_n: usize,
    /// `dims[p][q]` for `0 <= p <= n`, `0 <= q <= 2n`.
    dims: Vec<Vec<Option<usize>>>,
    /// Page 1: combinatorial differentials `E1^{p,0} -> E1^{p+1,0}`.
    row0_differentials: Vec<Matrix<ExactScalar>>,
    /// Page 1: differentials for q >= 1 (`None` = not supplied, zero maps
    /// filled in where forced).
    upper_differentials: Vec<Vec<Option<Matrix<ExactScalar>>>>,
    /// Page 2: cocycles and coboundaries of the q = 0 row, per p.
    row0_spaces: Vec<(Subspace<ExactScalar>, Subspace<ExactScalar>)>,
}

impl SpectralPage {
    pub fn dim(&self) -> usize {
        self.dim_n
    }

    /// Term dimension at `(p, q)`; `None` when the data to compute it was
    /// not supplied.
    pub fn term(&self, p: usize, q: usize) -> Option<usize> {
        if p > self.dim_n || q > 2 * self.dim_n {
            return Some(0);
        }
        self.dims[p][q]
    }

    pub fn row0_differential(&self, p: usize) -> Option<&Matrix<ExactScalar>> {
        self.row0_differentials.get(p)
    }

    pub fn upper_differential(&self, p: usize, q: usize) -> Option<&Matrix<ExactScalar>> {
        self.upper_differentials
            .get(p)
            .and_then(|row| row.get(q.checked_sub(1)?))
            .and_then(Option::as_ref)
    }

    /// Page 2: `(cocycles, coboundaries)` of the q = 0 row at column p.
    pub fn row0_spaces(&self, p: usize) -> Option<&(Subspace<ExactScalar>, Subspace<ExactScalar>)> {
        self.row0_spaces.get(p)
    }

    /// Weight-graded dimensions of `H^m(X_0)`: `Gr_k(H^m) = E2^{m-k,k}` for
    /// `0 <= k <= m`, zero outside. Entries are `None` where the page-2 term
    /// is unavailable.
    pub fn h_graded(&self, m: usize) -> Vec<Option<usize>> {
        (0..=m)
            .map(|k| {
                let p = m - k;
                if p > self.dim_n || k > 2 * self.dim_n {
                    Some(0)
                } else {
                    self.term(p, k)
                }
            })
            .collect()
    }

    /// Total `dim H^m(X_0)` when every graded piece is known.
    pub fn h_total(&self, m: usize) -> Option<usize> {
        self.h_graded(m).into_iter().sum()
    }
}

/// The E1 page: `E1^{p,q} = H^q(X^[p])`, with the combinatorial q = 0
/// differentials and any user-supplied rows.
pub fn e1_page(model: &CentralFibreModel) -> Result<SpectralPage> {
    let n = model.dim();
    let mut dims = vec![vec![Some(0usize); 2 * n + 1]; n + 1];
    for (p, row) in dims.iter_mut().enumerate() {
        for (q, slot) in row.iter_mut().enumerate() {
            *slot = Some(model.e1_dim(p, q));
        }
    }

    let row0: Vec<Matrix<ExactScalar>> = (0..=n).map(|p| model.row0_differential(p)).collect();
    // δ ∘ δ = 0 is structural for the nerve coboundary; treat a violation as
    // an internal error.
    for p in 0..n {
        if !row0[p + 1].mul(&row0[p])?.is_zero_matrix() {
            return Err(Error::FiltrationAxiom {
                reason: format!("combinatorial coboundary fails d∘d = 0 at p = {p}"),
            });
        }
    }

    let mut upper: Vec<Vec<Option<Matrix<ExactScalar>>>> = Vec::with_capacity(n + 1);
    for p in 0..=n {
        let mut row = Vec::with_capacity(2 * n);
        for q in 1..=2 * n {
            let src = model.e1_dim(p, q);
            let dst = if p + 1 <= n {
                model.e1_dim(p + 1, q)
            } else {
                0
            };
            let slot = if let Some(m) = model.restriction_maps.get(&(p, q)) {
                Some(m.clone())
            } else if src == 0 || dst == 0 {
                // Forced zero map.
                Some(Matrix::zeros(dst, src))
            } else {
                None
            };
            row.push(slot);
        }
        upper.push(row);
    }

    Ok(SpectralPage {
        page: 1,
        dim_n: n,
        dims,
        row0_differentials: row0,
        upper_differentials: upper,
        row0_spaces: Vec::new(),
    })
}

/// The E2 page: `ker d1 / im d1` wherever both adjacent differentials are
/// available, with unavailable slots flagged as `None`. The sequence
/// degenerates at E2, so these are the weight-graded pieces of `H^*(X_0)`.
pub fn e2_page(e1: &SpectralPage) -> Result<SpectralPage> {
    if e1.page != 1 {
        return Err(Error::DimensionMismatch {
            context: "e2_page expects a page-1 input",
        });
    }
    let n = e1.dim_n;
    let mut dims = vec![vec![None; 2 * n + 1]; n + 1];
    let mut row0_spaces = Vec::with_capacity(n + 1);

    // q = 0 row, exact subspace data.
    for p in 0..=n {
        let out_map = &e1.row0_differentials[p];
        let cocycles = Subspace::kernel(out_map);
        let coboundaries = if p == 0 {
            Subspace::zero(out_map.cols())
        } else {
            Subspace::image(&e1.row0_differentials[p - 1])
        };
        if !cocycles.contains(&coboundaries) {
            return Err(Error::FiltrationAxiom {
                reason: format!("coboundaries escape cocycles at p = {p}"),
            });
        }
        dims[p][0] = Some(cocycles.dim() - coboundaries.dim());
        row0_spaces.push((cocycles, coboundaries));
    }

    // q >= 1 rows from available maps.
    for p in 0..=n {
        for q in 1..=2 * n {
            let outgoing = e1.upper_differential(p, q);
            let incoming = if p == 0 {
                // No column to the left: the incoming map is zero.
                Some(Matrix::zeros(e1.term(0, q).unwrap_or(0), 0))
            } else {
                e1.upper_differential(p - 1, q).cloned()
            };
            let incoming = match (outgoing, incoming) {
                (Some(_), Some(m)) => m,
                _ => continue,
            };
            let outgoing = outgoing.expect("checked above");
            let kernel_dim = outgoing.cols() - outgoing.rank();
            let image_dim = incoming.rank();
            if kernel_dim < image_dim {
                return Err(Error::ModelInvalid {
                    reason: format!(
                        "restriction maps at (p={p}, q={q}) have image larger than the kernel"
                    ),
                });
            }
            dims[p][q] = Some(kernel_dim - image_dim);
        }
    }

    Ok(SpectralPage {
        page: 2,
        dim_n: n,
        dims,
        row0_differentials: Vec::new(),
        upper_differentials: Vec::new(),
        row0_spaces,
    })
}

/// `dim F^n Gr_n H^n(X_0) = Σ over components of h^{n,0}`.
///
/// No differential is needed: `F^n E1^{n,1}` vanishes because a first-level
/// stratum has dimension `n - 1`, so `F^n E2^{n,0} = F^n E1^{n,0}`.
pub fn fn_grn_central(model: &CentralFibreModel) -> u64 {
    let n = model.dim();
    model.components().iter().map(|c| c.hodge.h(n, 0)).sum()
}

/// The cohomological criterion: finite distance iff some component carries
/// a nonzero space of holomorphic n-forms.
pub fn classify_central(model: &CentralFibreModel) -> Classification {
    let n = model.dim();
    match model.components().iter().find(|c| c.hodge.h(n, 0) > 0) {
        Some(c) => Classification {
            verdict: Verdict::FiniteDistance,
            witness: Witness::TopFormComponent { id: c.id.clone() },
        },
        None => Classification {
            verdict: Verdict::InfiniteDistance,
            witness: Witness::NoTopFormComponent,
        },
    }
}

/// Components named `X0, X1, ...` all carrying the same Hodge numbers.
pub fn uniform_components(count: usize, hodge: HodgeNumbers) -> Vec<Component> {
    (0..count)
        .map(|i| Component {
            id: format!("X{i}"),
            hodge: hodge.clone(),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p1() -> HodgeNumbers {
        HodgeNumbers::projective_space(1)
    }

    fn point() -> HodgeNumbers {
        HodgeNumbers::points(1)
    }

    fn curve_model(count: usize, gluings: &[(&[&str], u64)]) -> CentralFibreModel {
        let comps = uniform_components(count, p1());
        let strata = gluings
            .iter()
            .map(|(members, mult)| StratumSpec {
                members: members.iter().map(|s| s.to_string()).collect(),
                hodge: HodgeNumbers::points(*mult),
            })
            .collect();
        CentralFibreModel::new(1, comps, strata, Vec::new()).unwrap()
    }

    #[test]
    fn hodge_numbers_validate() {
        assert!(HodgeNumbers::new(1, vec![vec![1, 1], vec![0, 1]]).is_err());
        assert!(HodgeNumbers::new(1, vec![vec![1], vec![0, 1]]).is_err());
        let k3 = HodgeNumbers::new(2, vec![vec![1, 0, 1], vec![0, 20, 0], vec![1, 0, 1]]).unwrap();
        assert_eq!(k3.betti(2), 22);
        assert_eq!(k3.h(2, 0), 1);
    }

    #[test]
    fn single_smooth_component() {
        let comps = uniform_components(
            1,
            HodgeNumbers::new(2, vec![vec![1, 0, 1], vec![0, 20, 0], vec![1, 0, 1]]).unwrap(),
        );
        let model = CentralFibreModel::new(2, comps, Vec::new(), Vec::new()).unwrap();
        let e1 = e1_page(&model).unwrap();
        assert_eq!(e1.term(0, 2), Some(22));
        for p in 1..=2 {
            for q in 0..=4 {
                assert_eq!(e1.term(p, q), Some(0));
            }
        }
        let e2 = e2_page(&e1).unwrap();
        // No differentials: E2 = E1.
        for q in 0..=4 {
            assert_eq!(e2.term(0, q), e1.term(0, q), "q={q}");
        }
        assert_eq!(fn_grn_central(&model), 1);
        assert!(classify_central(&model).verdict.is_finite());
    }

    #[test]
    fn two_lines_meeting_in_a_point() {
        let model = curve_model(2, &[(&["X0", "X1"], 1)]);
        let e1 = e1_page(&model).unwrap();
        assert_eq!(e1.term(0, 0), Some(2));
        assert_eq!(e1.term(1, 0), Some(1));
        assert_eq!(e1.term(0, 2), Some(2));
        assert_eq!(e1.row0_differential(0).unwrap().rank(), 1);
        let e2 = e2_page(&e1).unwrap();
        assert_eq!(e2.h_total(0), Some(1));
        assert_eq!(e2.h_total(1), Some(0));
        assert_eq!(e2.h_total(2), Some(2));
        assert!(!classify_central(&model).verdict.is_finite());
    }

    #[test]
    fn cycle_of_three_lines() {
        let model = curve_model(
            3,
            &[(&["X0", "X1"], 1), (&["X1", "X2"], 1), (&["X0", "X2"], 1)],
        );
        let e1 = e1_page(&model).unwrap();
        assert_eq!(e1.term(0, 0), Some(3));
        assert_eq!(e1.term(1, 0), Some(3));
        assert_eq!(e1.row0_differential(0).unwrap().rank(), 2);
        let e2 = e2_page(&e1).unwrap();
        // H^1 carries the cycle class in weight 0.
        assert_eq!(e2.h_graded(1), vec![Some(1), Some(0)]);
        assert_eq!(e2.h_total(0), Some(1));
        assert_eq!(e2.h_total(2), Some(3));
    }

    #[test]
    fn disconnected_double_locus() {
        // Two lines meeting twice: the I_2 fibre; H^1 = 1.
        let model = curve_model(2, &[(&["X0", "X1"], 2)]);
        let e1 = e1_page(&model).unwrap();
        assert_eq!(e1.term(1, 0), Some(2));
        let e2 = e2_page(&e1).unwrap();
        assert_eq!(e2.h_total(1), Some(1));
    }

    #[test]
    fn model_validation_errors() {
        // Self-incidence.
        let comps = uniform_components(2, p1());
        let err = CentralFibreModel::new(
            1,
            comps.clone(),
            vec![StratumSpec {
                members: vec!["X0".to_string(), "X0".to_string()],
                hodge: point(),
            }],
            Vec::new(),
        )
        .unwrap_err();
        assert!(matches!(err, Error::ModelInvalid { .. }));

        // Downward closure: a triple intersection without its double faces.
        let comps3 = uniform_components(3, HodgeNumbers::projective_space(2));
        let err = CentralFibreModel::new(
            2,
            comps3,
            vec![StratumSpec {
                members: vec!["X0".to_string(), "X1".to_string(), "X2".to_string()],
                hodge: point(),
            }],
            Vec::new(),
        )
        .unwrap_err();
        assert!(matches!(err, Error::ModelInvalid { ref reason } if reason.contains("downward")));
    }

    #[test]
    fn graded_pieces_follow_weight_convention() {
        let model = curve_model(
            3,
            &[(&["X0", "X1"], 1), (&["X1", "X2"], 1), (&["X0", "X2"], 1)],
        );
        let e2 = e2_page(&e1_page(&model).unwrap()).unwrap();
        // Gr_k(H^m) = E2^{m-k,k}: for m = 2, k = 2 picks E2^{0,2}.
        assert_eq!(e2.h_graded(2), vec![Some(0), Some(0), Some(3)]);
    }

    #[test]
    fn deep_strata_leave_criterion_alone() {
        // The criterion only reads component h^{n,0}.
        let comps = vec![
            Component {
                id: "Y".to_string(),
                hodge: HodgeNumbers::new(
                    3,
                    vec![
                        vec![1, 0, 0, 1],
                        vec![0, 0, 0, 0],
                        vec![0, 0, 0, 0],
                        vec![1, 0, 0, 1],
                    ],
                )
                .unwrap(),
            },
            Component {
                id: "E".to_string(),
                hodge: HodgeNumbers::projective_space(3),
            },
        ];
        let strata = vec![StratumSpec {
            members: vec!["Y".to_string(), "E".to_string()],
            hodge: HodgeNumbers::quadric(2),
        }];
        let model = CentralFibreModel::new(3, comps, strata, Vec::new()).unwrap();
        assert_eq!(fn_grn_central(&model), 1);
        let cls = classify_central(&model);
        assert!(cls.verdict.is_finite());
        assert_eq!(
            cls.witness,
            Witness::TopFormComponent {
                id: "Y".to_string()
            }
        );
    }
}
