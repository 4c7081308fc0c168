use hodgela::hodge::oracle::{self, ExplicitHodge};
use hodgela::hodge::*;
use hodgela::linalg::qi;
use hodgela::Case;
use proptest::prelude::*;

#[test]
fn adjoint_agrees_with_the_enumeration_oracle() {
    for case in Case::ALL {
        for n in 1..=8 {
            for factor in [Factor::M, Factor::N] {
                let h = standard_motive(case, n, factor, false).unwrap();
                let p = pairing(case, factor);
                assert_eq!(h.adjoint(p).unwrap(), oracle::adjoint(&h, p).unwrap(), "{case} n={n} {factor:?}");
            }
        }
    }
}

#[test]
fn tensor_agrees_with_the_enumeration_oracle() {
    for case in Case::ALL {
        for n in 1..=8 {
            let nn = standard_motive(case, n, Factor::N, false).unwrap();
            let twists: &[bool] = if case == Case::PglQ { &[false, true] } else { &[false] };
            for &psi in twists {
                let m = standard_motive(case, n, Factor::M, psi).unwrap();
                assert_eq!(m.tensor(&nn).unwrap(), oracle::tensor(&m, &nn).unwrap(), "{case} n={n} psi={psi}");
            }
        }
    }
}

#[test]
fn adjoint_ranks_are_group_dimensions() {
    for n in 1..=8i64 {
        let rank = |c, f| adjoint_motive(c, n, f).unwrap().rank() as i64;
        assert_eq!(rank(Case::PglQ, Factor::M), n * n - 1);
        assert_eq!(rank(Case::PglE, Factor::N), (n + 1) * (n + 1) - 1);
        // SO(2n) and Sp(2n) for the even case, SO(2n+2) and Sp(2n) for the odd one.
        assert_eq!(rank(Case::SoEven, Factor::M), n * (2 * n - 1));
        assert_eq!(rank(Case::SoEven, Factor::N), n * (2 * n + 1));
        assert_eq!(rank(Case::SoOdd, Factor::M), (n + 1) * (2 * n + 1));
    }
}

#[test]
fn critical_motives_satisfy_deligne_dimension_identity() {
    // dim H / F^{p^-(+) + 1} = d^+(-) whenever F_inf has a sign on the middle piece.
    for n in 1..=8 {
        for psi in [false, true] {
            let m = standard_motive(Case::PglQ, n, Factor::M, psi).unwrap();
            let nn = standard_motive(Case::PglQ, n, Factor::N, false).unwrap();
            for h in [m.clone(), nn.clone(), m.tensor(&nn).unwrap()] {
                let d = h.deligne_data().unwrap();
                assert_eq!(h.dim_below(&(d.pminus.clone() + qi(1))), d.dplus);
                assert_eq!(h.dim_below(&(d.pplus.clone() + qi(1))), d.dminus);
                assert_eq!(d.dplus + d.dminus, h.rank());
            }
        }
    }
}

#[test]
fn adjoints_of_mixed_sign_middle_pieces_violate_deligne() {
    let h = adjoint_motive(Case::PglQ, 3, Factor::M).unwrap();
    assert!(matches!(h.epsilon(), Err(hodgela::Error::DeligneViolated(_))));
}

fn hodge_q() -> impl Strategy<Value = HodgeStructure> {
    (0i64..5, proptest::collection::vec(0u64..3, 3), 0u64..3, 0u64..3).prop_filter_map("empty", |(w, offs, a, b)| {
        let mut mult = Vec::new();
        for (k, &m) in offs.iter().enumerate() {
            let p = w - k as i64;
            if p > w - p {
                mult.push(((p, w - p), m));
                mult.push(((w - p, p), m));
            }
        }
        let (a, b) = if w % 2 == 0 { (a, b) } else { (0, 0) };
        if a + b > 0 {
            mult.push(((w / 2, w / 2), a + b));
        }
        let h = HodgeStructure::new(w, mult, a, b, Coeff::Q).ok()?;
        (h.rank() > 0).then_some(h)
    })
}

proptest! {
    #[test]
    fn tensor_matches_oracle(a in hodge_q(), b in hodge_q()) {
        prop_assert_eq!(a.tensor(&b).unwrap(), oracle::tensor(&a, &b).unwrap());
    }

    #[test]
    fn squares_match_oracle(h in hodge_q(), alternating in any::<bool>()) {
        let e = ExplicitHodge::from_structure(&h).square(alternating).to_structure().unwrap();
        prop_assert_eq!(h.square(alternating).unwrap(), e);
    }

    #[test]
    fn square_ranks_split_the_tensor_square(h in hodge_q()) {
        let r = h.rank();
        prop_assert_eq!(h.square(false).unwrap().rank() + h.square(true).unwrap().rank(), r * r);
        let (s, a) = (h.square(false).unwrap(), h.square(true).unwrap());
        let t = h.tensor(&h).unwrap();
        for (k, v) in t.multiset() {
            prop_assert_eq!(s.get(k.0, k.1) + a.get(k.0, k.1), *v);
        }
        prop_assert_eq!(s.fplus + a.fplus, t.fplus);
    }

    #[test]
    fn tensor_is_commutative_and_dual_involutive(a in hodge_q(), b in hodge_q()) {
        prop_assert_eq!(a.tensor(&b).unwrap(), b.tensor(&a).unwrap());
        prop_assert_eq!(a.dual().dual(), a.clone());
        prop_assert_eq!(a.tate_twist(3).tate_twist(-3), a);
    }

    #[test]
    fn explicit_round_trip(h in hodge_q()) {
        prop_assert_eq!(ExplicitHodge::from_structure(&h).to_structure().unwrap(), h);
    }
}
