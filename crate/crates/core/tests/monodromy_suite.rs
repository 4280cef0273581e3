//! Randomized monodromy suites: exp/log round trips on conjugated Jordan
//! forms, weight filtrations certified against their defining properties
//! and against the Jordan-partition oracle, and the Lefschetz dimension
//! count.

use rand::Rng;

use wpdeg_core::monodromy::{
    exp_nilpotent, lefschetz_decomposition, log_unipotent, weight_filtration, MonodromyOperator,
};
use wpdeg_core::scalar::ExactScalar;
use wpdeg_testkit::gen::{
    conjugated_nilpotent, conjugated_unipotent, nonzero_rational, random_partition, rng,
};
use wpdeg_testkit::oracle::{jordan_graded_ranks, jordan_partition};

#[test]
fn exp_log_roundtrip_on_conjugated_jordan_forms() {
    let mut r = rng(21);
    for _ in 0..50 {
        let dim = r.random_range(1..=10usize);
        let partition = random_partition(&mut r, dim, dim.min(5));
        let weight_n = partition.iter().max().copied().unwrap_or(1).max(2) - 1;
        let t = conjugated_unipotent(&mut r, &partition);
        let op = log_unipotent(t.clone(), weight_n).unwrap();
        assert_eq!(exp_nilpotent(op.log()).unwrap(), t);
    }
}

#[test]
fn weight_filtration_certifies_and_matches_partition_oracle() {
    let mut r = rng(22);
    for trial in 0..60 {
        let dim = r.random_range(1..=9usize);
        let max_part = r.random_range(1..=dim.min(4));
        let partition = random_partition(&mut r, dim, max_part);
        let n = partition.iter().max().copied().unwrap() - 1;
        let weight_n = n + r.random_range(0..=1usize);
        let mut nilpotent = conjugated_nilpotent(&mut r, &partition);
        // Rational, not just integral.
        let scale = nonzero_rational(&mut r, 3, 2);
        nilpotent = nilpotent.scale(&scale);

        let op = MonodromyOperator::from_nilpotent(nilpotent.clone(), weight_n).unwrap();
        // Construction self-certifies both defining properties.
        let wf = weight_filtration(&op).unwrap();

        // Graded ranks from the independent partition oracle.
        let raw: Vec<Vec<ExactScalar>> = nilpotent.row_vectors();
        let oracle_partition = jordan_partition(&raw);
        assert_eq!(oracle_partition, partition, "trial {trial}");
        assert_eq!(
            wf.graded_ranks(),
            jordan_graded_ranks(&partition, weight_n),
            "trial {trial}"
        );

        // Total graded dimension is the ambient dimension.
        assert_eq!(wf.graded_ranks().iter().sum::<usize>(), dim);
    }
}

#[test]
fn lefschetz_pieces_fill_every_graded_level() {
    let mut r = rng(23);
    for _ in 0..25 {
        let dim = r.random_range(1..=8usize);
        let partition = random_partition(&mut r, dim, dim.min(4));
        let n = partition.iter().max().copied().unwrap() - 1;
        let nilpotent = conjugated_nilpotent(&mut r, &partition);
        let op = MonodromyOperator::from_nilpotent(nilpotent, n).unwrap();
        let wf = weight_filtration(&op).unwrap();
        // lefschetz_decomposition re-verifies the direct sum internally and
        // errors on any dimension mismatch.
        let lef = lefschetz_decomposition(&wf, &op).unwrap();
        // The number of chains of depth j is the rank of P_{n+j}.
        for j in 0..=n {
            let blocks_of_size = partition.iter().filter(|&&s| s == j + 1).count();
            assert_eq!(lef.primitive_rank((n + j) as i64), blocks_of_size);
        }
    }
}

#[test]
fn rejects_wrong_nilpotency_order() {
    let mut r = rng(24);
    // A block of size 4 is not nilpotent of order 3, so weight 2 must fail.
    let partition = vec![4usize];
    let nilpotent = conjugated_nilpotent(&mut r, &partition);
    assert!(MonodromyOperator::from_nilpotent(nilpotent, 2).is_err());
}
