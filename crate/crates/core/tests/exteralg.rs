use hodgela::exteralg::*;
use hodgela::linalg::{qi, Mat};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 0x5eed_0001;

fn involutions(d: usize) -> Vec<SignedPermutation> {
    let mut out = vec![SignedPermutation::identity(d), SignedPermutation::minus_reversal(d)];
    if d >= 2 {
        let mut perm: Vec<usize> = (0..d).collect();
        perm.swap(0, 1);
        out.push(SignedPermutation { perm, signs: vec![1; d] });
    }
    out
}

#[test]
fn derivation_rule_exhaustive() {
    for d in 0..=4 {
        assert!(derivation_check(d).unwrap(), "delta = {d}");
    }
}

#[test]
fn adjointness_euclidean_and_random_grams() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for d in 1..=4 {
        assert!(adjointness_check(&MetricSpaceQ::euclidean(d), 250, SEED + d as u64).unwrap(), "delta = {d}");
        let space = MetricSpaceQ::new(random_gram(&mut rng, d)).unwrap();
        assert!(adjointness_check(&space, 250, SEED + 10 + d as u64).unwrap(), "delta = {d}, random gram");
    }
}

#[test]
fn freeness_holds_and_detects_dependent_generators() {
    for d in 0..=4 {
        for k in 1..=3 {
            let m = TemperedCohomologyModel::new(d, 3, k, SignedPermutation::identity(d)).unwrap();
            assert!(m.freeness_check(), "delta = {d}, k = {k}");
        }
    }
    let m = TemperedCohomologyModel::new(2, 1, 2, SignedPermutation::identity(2)).unwrap();
    let corrupted = m.with_generators(Mat::from_rows(vec![vec![qi(1), qi(2)], vec![qi(2), qi(4)]]));
    assert!(!corrupted.freeness_check());
}

#[test]
fn poincare_adjointness_with_long_weyl_element() {
    for d in 1..=4 {
        for w in involutions(d) {
            let m = TemperedCohomologyModel::new(d, 3, 2, w.clone()).unwrap();
            assert!(m.poincare_adjoint_check(), "delta = {d}, w = {w:?}");
        }
    }
}

#[test]
fn poincare_adjointness_fails_for_the_wrong_involution() {
    for d in 2..=4 {
        let m = TemperedCohomologyModel::new(d, 3, 1, SignedPermutation::minus_reversal(d)).unwrap();
        assert!(!m.poincare_adjoint_check_with(&SignedPermutation::identity(d)), "delta = {d}");
    }
}

#[test]
fn isometry_of_the_action() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 99);
    for d in 1..=4 {
        let m = TemperedCohomologyModel::new(d, 2, 2, SignedPermutation::identity(d)).unwrap();
        assert!(m.isometry_check(&MetricSpaceQ::euclidean(d), 1000, SEED + d as u64), "delta = {d}");
        let scaled = MetricSpaceQ::new(Mat::identity(d).scale(&qi(3))).unwrap();
        assert!(m.isometry_check(&scaled, 200, SEED), "delta = {d}, scaled");
        let space = MetricSpaceQ::new(random_gram(&mut rng, d)).unwrap();
        assert!(m.isometry_check(&space, 200, SEED), "delta = {d}, random gram");
    }
}

#[test]
fn twisted_conjugation_is_compatible_with_the_action() {
    for d in 1..=4 {
        for w in involutions(d) {
            let m = TemperedCohomologyModel::new(d, 1, 2, w).unwrap();
            assert!(m.conjugation_check(1000 / d, SEED));
        }
    }
}

#[test]
fn model_dimensions_have_vanishing_euler_characteristic() {
    for d in 1..=12u64 {
        let chi: i64 = model_dims(d, 0, 1).iter().map(|&(j, n)| if j % 2 == 0 { n as i64 } else { -(n as i64) }).sum();
        assert_eq!(chi, 0);
    }
    // SL_{2m} over R: delta = m - 1 and q = m^2.
    let m = 3;
    assert_eq!(model_dims(m - 1, m * m, 1), vec![(9, 1), (10, 2), (11, 1)]);
}

#[test]
fn rejects_indefinite_gram() {
    let g = Mat::from_rows(vec![vec![qi(1), qi(2)], vec![qi(2), qi(1)]]);
    assert!(MetricSpaceQ::new(g).is_err());
}

proptest! {
    #[test]
    fn wedge_is_graded_commutative(seed in any::<u64>(), d in 1usize..=5, i in 0u32..=5, j in 0u32..=5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_element(&mut rng, d, Some(i.min(d as u32)));
        let b = random_element(&mut rng, d, Some(j.min(d as u32)));
        let ab = a.wedge(&b).unwrap();
        let ba = b.wedge(&a).unwrap();
        if (i.min(d as u32) * j.min(d as u32)) % 2 == 1 {
            prop_assert_eq!(ab, -ba);
        } else {
            prop_assert_eq!(ab, ba);
        }
    }

    #[test]
    fn wedge_is_associative(seed in any::<u64>(), d in 1usize..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b, c) = (random_element(&mut rng, d, None), random_element(&mut rng, d, None), random_element(&mut rng, d, None));
        prop_assert_eq!(a.wedge(&b).unwrap().wedge(&c).unwrap(), a.wedge(&b.wedge(&c).unwrap()).unwrap());
    }
}
