use hodgela::ggpcheck::*;
use hodgela::linalg::{qi, Mat, Q};
use hodgela::{Case, Error};
use num::Signed;
use proptest::prelude::*;

#[test]
fn every_case_passes_up_to_eight() {
    for case in Case::ALL {
        for n in 1..=8 {
            let r = run_case(case, n).unwrap();
            assert!(r.pass(), "{case} n={n}: {:?}", r.first_failure());
            assert_eq!(r.condensate.m, case.m(n));
        }
    }
}

#[test]
fn each_perturbation_is_detected_and_named() {
    for case in Case::ALL {
        for name in perturbable_names(case, 3).unwrap() {
            let r = run_case_with(case, 3, Some(&name)).unwrap();
            assert_eq!(r.first_failure().as_deref(), Some(name.as_str()), "{case}");
        }
    }
    assert!(matches!(run_case_with(Case::PglQ, 2, Some("nonsense")), Err(Error::Invalid(_))));
}

#[test]
fn json_report_has_integer_exponents() {
    let v = run_case(Case::SoOdd, 2).unwrap().to_json();
    assert_eq!(v["case"], "so-odd");
    assert_eq!(v["condensate"]["m"], 12);
    assert!(v["table1"].as_array().unwrap().iter().all(|e| e["pass"] == true));
    assert!(v["table1"][0]["computed_exp"].is_i64());
}

#[test]
fn ledger_derives_all_targets() {
    let ledger = torsion_ledger();
    assert!(ledger.pass(), "{ledger}");
    let oink_a = ledger.derivation("oinkA").unwrap();
    assert_eq!(oink_a.found_d, Some(2));
    for family in ["rt1", "RTalt", "factorization", "Trivial_Volume", "duality"] {
        assert!(oink_a.families.contains(&family), "{family}");
    }
    assert!(!oink_a.uses_conditional);
    assert_eq!(ledger.derivation("oink1").unwrap().found_d, Some(1));
    let bugger = ledger.derivation("buggerme").unwrap();
    assert!(bugger.families.contains(&"rt2") && bugger.families.contains(&"trivvolume"));
    assert!(!bugger.uses_conditional);
    assert!(ledger.derivation("L-value(Pi,4)").unwrap().uses_conditional);
}

#[test]
fn ledger_targets_are_not_axioms() {
    let ledger = torsion_ledger();
    for (name, rel, _) in ledger_targets() {
        assert!(ledger.axioms.iter().all(|a| a.terms != rel), "{name}");
    }
}

#[test]
fn removing_rt2_blocks_buggerme() {
    let ledger = torsion_ledger_without(&["rt2"]);
    assert_eq!(ledger.derivation("buggerme").unwrap().found_d, None);
    assert!(ledger.derivation("oinkA").unwrap().pass());
    let no_triv = torsion_ledger_without(&["Trivial_Volume"]);
    assert_eq!(no_triv.derivation("oinkA").unwrap().found_d, None);
}

#[test]
fn rotation_identity() {
    let id = Mat::<Q>::identity(3);
    let r = rotation_check(&id, &id, &cyclic_sigma()).unwrap();
    assert!(r.holds);
    assert_eq!(r.z, Some(Eisenstein::one()));
    assert_eq!(r.b, 1);
}

#[test]
fn rotation_round_trips_on_constructed_instances() {
    for seed in 0..100 {
        let inst = rotation_instance(seed);
        let r = rotation_check(&inst.v1, &inst.v2, &inst.sigma).unwrap();
        assert!(r.holds, "seed {seed}");
        let rot = r.matrix.unwrap();
        // Independent check: R maps the rows of V2 into V1 with unimodular change of basis.
        let image = inst.v2.mul(&rot.transpose());
        let change = image.mul(&inst.v1.inverse().unwrap());
        assert!(change.data.iter().all(|x| x.is_integer()), "seed {seed}");
        assert_eq!(change.det().abs(), qi(1));
        assert_eq!(rot.transpose().mul(&rot), Mat::identity(3));
        // The recovered z differs from z0 by a sigma-equivariant automorphism of V1.
        let aut = inst.r0.inverse().unwrap().mul(&rot);
        assert_eq!(aut.mul(&inst.sigma), inst.sigma.mul(&aut));
    }
}

#[test]
fn rotation_rejects_unequal_volumes() {
    let rows = |r: [[i64; 3]; 3]| Mat::from_rows(r.iter().map(|x| x.iter().map(|&v| qi(v)).collect()).collect());
    let id = Mat::<Q>::identity(3);
    let root_lattice = rows([[1, 1, 1], [1, -1, 0], [0, 1, -1]]);
    let err = rotation_check(&id, &root_lattice, &cyclic_sigma()).unwrap_err();
    assert_eq!(err, Error::Hypothesis("vol(V1) != vol(V2)".into()));
    // Z(1,1,1) + 2A and Z(4,4,4) + A, with A the trace-zero sublattice of Z^3,
    // share the covolume 12 but not the length of the fixed generator.
    let v1 = rows([[1, 1, 1], [2, -2, 0], [0, 2, -2]]);
    let v2 = rows([[4, 4, 4], [1, -1, 0], [0, 1, -1]]);
    let err = rotation_check(&v1, &v2, &cyclic_sigma()).unwrap_err();
    assert_eq!(err, Error::Hypothesis("the sigma-invariant volumes of V1 and V2 differ".into()));
}

#[test]
fn rotation_rejects_bad_sigma() {
    let id = Mat::<Q>::identity(3);
    assert!(rotation_check(&id, &id, &id).is_err());
    let scaled = cyclic_sigma().scale(&qi(2));
    assert!(rotation_check(&id, &id, &scaled).is_err());
}

#[test]
fn verify_all_small() {
    let r = verify_all(3, None).unwrap();
    assert_eq!(r.cases.len(), 12);
    assert!(r.pass(), "{:?}", r.first_failure());
    let bad = verify_all(3, Some("condensate")).unwrap();
    assert!(bad.first_failure().unwrap().ends_with("condensate"));
}

proptest! {
    #[test]
    fn matrix_format_round_trips(entries in proptest::collection::vec((-50i64..50, 1i64..9), 9)) {
        let m = Mat::from_rows(entries.chunks(3).map(|c| c.iter().map(|&(a, b)| hodgela::linalg::q(a, b)).collect()).collect());
        prop_assert_eq!(parse_matrix(&format_matrix(&m)).unwrap(), m);
    }

    #[test]
    fn eisenstein_norm_is_multiplicative(a in -20i64..20, b in -20i64..20, c in -20i64..20, d in -20i64..20) {
        let x = Eisenstein::new(qi(a), qi(b));
        let y = Eisenstein::new(qi(c), qi(d));
        prop_assert_eq!(x.mul(&y).norm(), x.norm() * y.norm());
    }
}
