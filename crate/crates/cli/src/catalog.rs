//! Built-in worked degenerations: the classical low-dimensional cases and
//! the nodal blow-ups, each with its known verdict.

use wpdeg_core::scalar::{int, ExactScalar, GaussScalar};
use wpdeg_core::Verdict;

use crate::document::{
    ComplexJson, ComponentJson, FibrePayload, MonodromyPayload, NodalPayload, PairedPayload,
    Payload, ProblemDocument, RationalJson, StratumJson,
};

pub struct CatalogEntry {
    pub name: &'static str,
    pub description: &'static str,
    pub expected: Verdict,
    pub document: ProblemDocument,
}

fn rj(rows: &[&[i64]]) -> Vec<Vec<RationalJson>> {
    rows.iter()
        .map(|r| r.iter().map(|&x| RationalJson(int(x))).collect())
        .collect()
}

fn real(v: i64) -> ComplexJson {
    ComplexJson(GaussScalar::new(
        int(v),
        ExactScalar::from_integer(0.into()),
    ))
}

fn imaginary(v: i64) -> ComplexJson {
    ComplexJson(GaussScalar::new(
        ExactScalar::from_integer(0.into()),
        int(v),
    ))
}

fn p1_component(id: &str) -> ComponentJson {
    ComponentJson {
        id: id.to_string(),
        hodge: vec![vec![1, 0], vec![0, 1]],
    }
}

fn rational_surface(id: &str) -> ComponentJson {
    ComponentJson {
        id: id.to_string(),
        hodge: vec![vec![1, 0, 0], vec![0, 10, 0], vec![0, 0, 1]],
    }
}

fn elliptic_curve_stratum(a: &str, b: &str) -> StratumJson {
    StratumJson {
        components: vec![a.to_string(), b.to_string()],
        hodge: vec![vec![1, 1], vec![1, 1]],
    }
}

fn point_stratum(members: &[&str]) -> StratumJson {
    StratumJson {
        components: members.iter().map(|s| s.to_string()).collect(),
        hodge: vec![vec![1]],
    }
}

fn p1_stratum(a: &str, b: &str) -> StratumJson {
    StratumJson {
        components: vec![a.to_string(), b.to_string()],
        hodge: vec![vec![1, 0], vec![0, 1]],
    }
}

/// Type I_3 degeneration of elliptic curves: maximal unipotent monodromy
/// paired with a cycle of three rational curves.
fn elliptic_ik() -> ProblemDocument {
    let monodromy = MonodromyPayload {
        t: rj(&[&[1, 1], &[0, 1]]),
        q: rj(&[&[0, 1], &[-1, 0]]),
        alpha: vec![real(0), real(1)],
    };
    let central_fibre = FibrePayload {
        components: vec![p1_component("X0"), p1_component("X1"), p1_component("X2")],
        strata: vec![
            point_stratum(&["X0", "X1"]),
            point_stratum(&["X1", "X2"]),
            point_stratum(&["X0", "X2"]),
        ],
        restriction_maps: None,
    };
    ProblemDocument {
        n: 1,
        payload: Payload::Paired(PairedPayload {
            monodromy,
            central_fibre,
        }),
    }
}

/// Kulikov type I: the fibre stays a smooth K3; trivial monodromy on the
/// transcendental side.
fn kulikov_i() -> ProblemDocument {
    let monodromy = MonodromyPayload {
        t: rj(&[&[1, 0], &[0, 1]]),
        q: rj(&[&[-1, 0], &[0, -1]]),
        alpha: vec![real(1), imaginary(1)],
    };
    let central_fibre = FibrePayload {
        components: vec![ComponentJson {
            id: "K3".to_string(),
            hodge: vec![vec![1, 0, 1], vec![0, 20, 0], vec![1, 0, 1]],
        }],
        strata: Vec::new(),
        restriction_maps: None,
    };
    ProblemDocument {
        n: 2,
        payload: Payload::Paired(PairedPayload {
            monodromy,
            central_fibre,
        }),
    }
}

/// Kulikov type II: a chain with rational ends, an elliptic-ruled middle,
/// and elliptic double curves. All components have h^{2,0} = 0.
fn kulikov_ii() -> ProblemDocument {
    let elliptic_ruled = ComponentJson {
        id: "X1".to_string(),
        hodge: vec![vec![1, 1, 0], vec![1, 2, 1], vec![0, 1, 1]],
    };
    let central_fibre = FibrePayload {
        components: vec![
            rational_surface("X0"),
            elliptic_ruled,
            rational_surface("X2"),
        ],
        strata: vec![
            elliptic_curve_stratum("X0", "X1"),
            elliptic_curve_stratum("X1", "X2"),
        ],
        restriction_maps: None,
    };
    ProblemDocument {
        n: 2,
        payload: Payload::CentralFibre(central_fibre),
    }
}

/// Kulikov type III: rational components whose dual complex triangulates
/// the sphere; the smallest model is the boundary of a tetrahedron.
fn kulikov_iii() -> ProblemDocument {
    let ids = ["X0", "X1", "X2", "X3"];
    let mut strata = Vec::new();
    for i in 0..4 {
        for j in i + 1..4 {
            strata.push(p1_stratum(ids[i], ids[j]));
        }
    }
    for i in 0..4 {
        for j in i + 1..4 {
            for k in j + 1..4 {
                strata.push(point_stratum(&[ids[i], ids[j], ids[k]]));
            }
        }
    }
    let central_fibre = FibrePayload {
        components: ids.iter().map(|id| rational_surface(id)).collect(),
        strata,
        restriction_maps: None,
    };
    ProblemDocument {
        n: 2,
        payload: Payload::CentralFibre(central_fibre),
    }
}

fn nodal(n: usize, nodes: usize, k: i64) -> ProblemDocument {
    ProblemDocument {
        n,
        payload: Payload::Nodal(NodalPayload { nodes, k }),
    }
}

/// Maximally unipotent weight-3 limit: a full Jordan block with the pairing
/// adapted to `N = log T`, so the data is a genuine polarized limit.
fn mum_weight3() -> ProblemDocument {
    let q: Vec<Vec<RationalJson>> = vec![
        vec![
            RationalJson(int(0)),
            RationalJson(int(1)),
            RationalJson(int(6)),
            RationalJson(int(6)),
        ],
        vec![
            RationalJson(int(-1)),
            RationalJson(int(0)),
            RationalJson(int(-6)),
            RationalJson(int(0)),
        ],
        vec![
            RationalJson(int(-6)),
            RationalJson(int(6)),
            RationalJson(int(0)),
            RationalJson(int(0)),
        ],
        vec![
            RationalJson(int(-6)),
            RationalJson(int(0)),
            RationalJson(int(0)),
            RationalJson(int(0)),
        ],
    ];
    let monodromy = MonodromyPayload {
        t: rj(&[&[1, 0, 0, 0], &[1, 1, 0, 0], &[0, 1, 1, 0], &[0, 0, 1, 1]]),
        q,
        alpha: vec![real(1), real(0), real(0), real(0)],
    };
    ProblemDocument {
        n: 3,
        payload: Payload::Monodromy(monodromy),
    }
}

pub fn entries() -> Vec<CatalogEntry> {
    vec![
        CatalogEntry {
            name: "elliptic_Ik",
            description: "elliptic curves degenerating to a cycle of rational curves (I_3)",
            expected: Verdict::InfiniteDistance,
            document: elliptic_ik(),
        },
        CatalogEntry {
            name: "kulikov_I",
            description: "K3 degeneration with smooth central fibre",
            expected: Verdict::FiniteDistance,
            document: kulikov_i(),
        },
        CatalogEntry {
            name: "kulikov_II",
            description: "K3 degeneration: chain with elliptic double curves",
            expected: Verdict::InfiniteDistance,
            document: kulikov_ii(),
        },
        CatalogEntry {
            name: "kulikov_III",
            description: "K3 degeneration: rational components, dual complex a sphere",
            expected: Verdict::InfiniteDistance,
            document: kulikov_iii(),
        },
        CatalogEntry {
            name: "nodal_n3",
            description: "threefold with one node, fully blown up",
            expected: Verdict::FiniteDistance,
            document: nodal(3, 1, 0),
        },
        CatalogEntry {
            name: "nodal_n5",
            description: "fivefold with sixteen nodes, fully blown up",
            expected: Verdict::FiniteDistance,
            document: nodal(5, 16, 1),
        },
        CatalogEntry {
            name: "mum_weight3",
            description: "maximally unipotent weight-3 limit (full Jordan block)",
            expected: Verdict::InfiniteDistance,
            document: mum_weight3(),
        },
    ]
}
