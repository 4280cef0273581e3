//! Property tests for the exact linear algebra layer.

use proptest::prelude::*;

use wpdeg_core::matrix::Matrix;
use wpdeg_core::scalar::{rat, ExactScalar};
use wpdeg_core::subspace::Subspace;

fn arb_rational() -> impl Strategy<Value = ExactScalar> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

fn arb_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix<ExactScalar>> {
    proptest::collection::vec(arb_rational(), rows * cols).prop_map(move |entries| {
        let mut it = entries.into_iter();
        Matrix::from_fn(rows, cols, |_, _| it.next().expect("sized"))
    })
}

proptest! {
    #[test]
    fn rref_idempotent(m in arb_matrix(4, 5)) {
        let r = m.rref();
        prop_assert_eq!(r.rref(), r);
    }

    #[test]
    fn rref_preserves_row_space(m in arb_matrix(4, 5)) {
        let r = m.rref();
        prop_assert_eq!(m.vstack(&r).unwrap().rank(), m.rank());
    }

    #[test]
    fn rank_nullity(m in arb_matrix(4, 6)) {
        prop_assert_eq!(
            Subspace::kernel(&m).dim() + Subspace::image(&m).dim(),
            m.cols()
        );
    }

    #[test]
    fn kernel_vectors_are_killed(m in arb_matrix(3, 5)) {
        for row in Subspace::kernel(&m).basis_rows() {
            let image = m.apply(&row).unwrap();
            prop_assert!(image.iter().all(num_traits::Zero::is_zero));
        }
    }

    #[test]
    fn grassmann_identity(a in arb_matrix(2, 5), b in arb_matrix(3, 5)) {
        let a = Subspace::row_space(&a);
        let b = Subspace::row_space(&b);
        let sum = Subspace::sum(&a, &b).unwrap();
        let meet = Subspace::intersect(&a, &b).unwrap();
        prop_assert_eq!(a.dim() + b.dim(), sum.dim() + meet.dim());
    }

    #[test]
    fn double_complement_is_identity(a in arb_matrix(3, 6)) {
        let s = Subspace::row_space(&a);
        prop_assert_eq!(s.complement().complement(), s.clone());
        prop_assert_eq!(s.complement().dim(), 6 - s.dim());
    }

    #[test]
    fn intersection_commutes_and_is_bounded(a in arb_matrix(2, 4), b in arb_matrix(2, 4)) {
        let a = Subspace::row_space(&a);
        let b = Subspace::row_space(&b);
        let ab = Subspace::intersect(&a, &b).unwrap();
        let ba = Subspace::intersect(&b, &a).unwrap();
        prop_assert_eq!(&ab, &ba);
        prop_assert!(a.contains(&ab));
        prop_assert!(Subspace::sum(&a, &b).unwrap().contains(&a));
    }

    #[test]
    fn inverse_roundtrip(m in arb_matrix(4, 4)) {
        if let Some(inv) = m.inverse().unwrap() {
            prop_assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(4));
            prop_assert_eq!(inv.mul(&m).unwrap(), Matrix::identity(4));
        } else {
            prop_assert!(m.rank() < 4);
        }
    }
}
