//! Model-level properties of the central-fibre route: criterion locality,
//! monotonicity, and user-supplied restriction maps.

use wpdeg_core::centralfibre::{
    classify_central, e1_page, e2_page, fn_grn_central, uniform_components, CentralFibreModel,
    Component, HodgeNumbers, StratumSpec,
};
use wpdeg_core::matrix::{mat_i64, Matrix};
use wpdeg_core::scalar::ExactScalar;
use wpdeg_core::Error;

fn k3_hodge() -> HodgeNumbers {
    HodgeNumbers::new(2, vec![vec![1, 0, 1], vec![0, 20, 0], vec![1, 0, 1]]).unwrap()
}

fn rational_hodge() -> HodgeNumbers {
    HodgeNumbers::new(2, vec![vec![1, 0, 0], vec![0, 10, 0], vec![0, 0, 1]]).unwrap()
}

#[test]
fn adding_components_without_top_forms_never_flips_the_verdict() {
    // Finite stays finite, infinite stays infinite.
    for (base_hodge, expect_finite) in [(k3_hodge(), true), (rational_hodge(), false)] {
        let mut components = vec![Component {
            id: "X0".to_string(),
            hodge: base_hodge,
        }];
        let mut strata = Vec::new();
        for extra in 1..=4usize {
            components.push(Component {
                id: format!("X{extra}"),
                hodge: rational_hodge(),
            });
            // Glue the new component to the first along an elliptic curve.
            strata.push(StratumSpec {
                members: vec!["X0".to_string(), format!("X{extra}")],
                hodge: HodgeNumbers::new(1, vec![vec![1, 1], vec![1, 1]]).unwrap(),
            });
            let model =
                CentralFibreModel::new(2, components.clone(), strata.clone(), Vec::new()).unwrap();
            assert_eq!(classify_central(&model).verdict.is_finite(), expect_finite);
        }
    }
}

#[test]
fn criterion_reads_only_component_top_forms() {
    // Perturbing a deeper stratum's Hodge numbers leaves fn_grn fixed.
    let components = uniform_components(2, k3_hodge());
    let strata_a = vec![StratumSpec {
        members: vec!["X0".to_string(), "X1".to_string()],
        hodge: HodgeNumbers::new(1, vec![vec![1, 1], vec![1, 1]]).unwrap(),
    }];
    let strata_b = vec![StratumSpec {
        members: vec!["X0".to_string(), "X1".to_string()],
        hodge: HodgeNumbers::new(1, vec![vec![3, 0], vec![0, 3]]).unwrap(),
    }];
    let a = CentralFibreModel::new(2, components.clone(), strata_a, Vec::new()).unwrap();
    let b = CentralFibreModel::new(2, components, strata_b, Vec::new()).unwrap();
    assert_eq!(fn_grn_central(&a), fn_grn_central(&b));
    assert_eq!(fn_grn_central(&a), 2);
}

fn chain_of_elliptic_ruled() -> (Vec<Component>, Vec<StratumSpec>) {
    let ruled = HodgeNumbers::new(2, vec![vec![1, 1, 0], vec![1, 2, 1], vec![0, 1, 1]]).unwrap();
    let components = vec![
        Component {
            id: "A".to_string(),
            hodge: ruled.clone(),
        },
        Component {
            id: "B".to_string(),
            hodge: ruled,
        },
    ];
    let strata = vec![StratumSpec {
        members: vec!["A".to_string(), "B".to_string()],
        hodge: HodgeNumbers::new(1, vec![vec![1, 1], vec![1, 1]]).unwrap(),
    }];
    (components, strata)
}

#[test]
fn user_restriction_maps_unlock_upper_rows() {
    let (components, strata) = chain_of_elliptic_ruled();
    // Without maps, E2 at (p, 1) is unavailable: dims 4 -> 2 in row q = 1.
    let bare = CentralFibreModel::new(2, components.clone(), strata.clone(), Vec::new()).unwrap();
    let e1 = e1_page(&bare).unwrap();
    assert_eq!(e1.term(0, 1), Some(4));
    assert_eq!(e1.term(1, 1), Some(2));
    let e2 = e2_page(&e1).unwrap();
    assert_eq!(e2.term(0, 1), None);
    assert_eq!(e2.h_total(1), None);

    // Supply the restriction H^1(A) ⊕ H^1(B) -> H^1(A ∩ B): differences of
    // the restrictions of the two ruling sections, rank 2.
    let d01 = mat_i64(&[&[1, 0, -1, 0], &[0, 1, 0, -1]]);
    let model =
        CentralFibreModel::new(2, components.clone(), strata.clone(), vec![(0, 1, d01)]).unwrap();
    let e2 = e2_page(&e1_page(&model).unwrap()).unwrap();
    assert_eq!(e2.term(0, 1), Some(2));
    assert_eq!(e2.term(1, 1), Some(0));
    assert_eq!(e2.h_total(1), Some(2));
    // H^2 needs the q=2 row differential out of (0,2) into (1,2).
    assert_eq!(e2.term(1, 2), None);

    // Wrongly shaped maps are rejected with a model error.
    let bad_shape: Matrix<ExactScalar> = Matrix::zeros(3, 4);
    let err = CentralFibreModel::new(2, components, strata, vec![(0, 1, bad_shape)]).unwrap_err();
    assert!(matches!(err, Error::ModelInvalid { .. }));
}

#[test]
fn composing_user_maps_must_square_to_zero() {
    // A threefold triangle whose double surfaces and triple curve all carry
    // first cohomology: row q = 1 has dimensions 6 -> 6 -> 2, so adjacent
    // user maps exist and their composition is checked.
    let threefold = HodgeNumbers::new(
        3,
        vec![
            vec![1, 1, 0, 0],
            vec![1, 0, 0, 0],
            vec![0, 0, 0, 0],
            vec![0, 0, 0, 1],
        ],
    )
    .unwrap();
    let components = (0..3)
        .map(|i| Component {
            id: format!("X{i}"),
            hodge: threefold.clone(),
        })
        .collect::<Vec<_>>();
    let ruled_surface =
        HodgeNumbers::new(2, vec![vec![1, 1, 0], vec![1, 2, 1], vec![0, 1, 1]]).unwrap();
    let elliptic = HodgeNumbers::new(1, vec![vec![1, 1], vec![1, 1]]).unwrap();
    let strata = vec![
        StratumSpec {
            members: vec!["X0".to_string(), "X1".to_string()],
            hodge: ruled_surface.clone(),
        },
        StratumSpec {
            members: vec!["X1".to_string(), "X2".to_string()],
            hodge: ruled_surface.clone(),
        },
        StratumSpec {
            members: vec!["X0".to_string(), "X2".to_string()],
            hodge: ruled_surface,
        },
        StratumSpec {
            members: vec!["X0".to_string(), "X1".to_string(), "X2".to_string()],
            hodge: elliptic,
        },
    ];

    let d01_bad = Matrix::<ExactScalar>::identity(6);
    let d11 = mat_i64(&[&[1, 0, 0, 0, 0, 0], &[0, 1, 0, 0, 0, 0]]);
    let err = CentralFibreModel::new(
        3,
        components.clone(),
        strata.clone(),
        vec![(0, 1, d01_bad), (1, 1, d11.clone())],
    )
    .unwrap_err();
    assert!(
        matches!(err, Error::ModelInvalid { ref reason } if reason.contains("compose to zero"))
    );

    // A pair that does compose to zero is accepted and unlocks E2 terms.
    let d01_ok = Matrix::from_fn(6, 6, |r, c| {
        if r == c && r >= 2 {
            wpdeg_core::scalar::int(1)
        } else {
            wpdeg_core::scalar::int(0)
        }
    });
    let ok =
        CentralFibreModel::new(3, components, strata, vec![(0, 1, d01_ok), (1, 1, d11)]).unwrap();
    let e2 = e2_page(&e1_page(&ok).unwrap()).unwrap();
    assert_eq!(e2.term(0, 1), Some(2));
    assert_eq!(e2.term(1, 1), Some(0));
    assert_eq!(e2.term(2, 1), Some(0));
}
