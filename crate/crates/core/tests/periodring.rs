use hodgela::periodring::cases::*;
use hodgela::periodring::{parse_expr, Modulus, PeriodScalar, RelationSet};
use hodgela::Case;
use num::BigInt;
use proptest::prelude::*;

fn replay(rels: &RelationSet, cert: &[BigInt]) -> PeriodScalar {
    rels.relations()
        .iter()
        .zip(cert)
        .map(|(r, c)| r.value.pow(&hodgela::linalg::Q::from_integer(c.clone())))
        .product()
}

#[test]
fn condensate_cancels_to_two_pi_i_power() {
    for case in Case::ALL {
        for n in 1..=8 {
            let rels = relations(case, n).unwrap();
            let target = PeriodScalar::two_pi_i().powi(case.m(n));
            for sign in [Sign::Plus, Sign::Minus] {
                let x = condensate(case, n, sign).unwrap();
                assert_eq!(rels.reduce(&x, Modulus::SqrtQ), target, "{case} n={n} {sign:?}");
                let strict = x / condensate_companion(case, n);
                assert_eq!(rels.reduce(&strict, Modulus::Q), target, "{case} n={n} {sign:?}");
            }
        }
    }
}

#[test]
fn cancellation_certificates_replay_exactly() {
    for case in Case::ALL {
        for n in 1..=8 {
            let rels = relations(case, n).unwrap();
            let x = condensate(case, n, Sign::Plus).unwrap()
                / condensate_companion(case, n)
                / PeriodScalar::two_pi_i().powi(case.m(n));
            let cert = rels.certificate(&x).unwrap_or_else(|| panic!("{case} n={n}: no certificate"));
            assert_eq!(replay(&rels, &cert), x, "{case} n={n}");
        }
    }
}

#[test]
fn wrong_m_is_not_trivial() {
    for case in Case::ALL {
        for n in 1..=4 {
            let rels = relations(case, n).unwrap();
            let x = condensate(case, n, Sign::Plus).unwrap() / PeriodScalar::two_pi_i().powi(case.m(n) + 1);
            assert!(!rels.is_trivial(&x, Modulus::SqrtQ), "{case} n={n}");
        }
    }
}

#[test]
fn dropping_a_relation_breaks_cancellation() {
    for case in Case::ALL {
        let n = 2;
        let full = relations(case, n).unwrap();
        let x = condensate(case, n, Sign::Plus).unwrap() / PeriodScalar::two_pi_i().powi(case.m(n));
        let own: Vec<_> = full
            .relations()
            .iter()
            .filter(|r| !r.label.starts_with("conj(") && !RelationSet::builtins().iter().any(|b| b.label == r.label))
            .cloned()
            .collect();
        let mut some_needed = false;
        for skip in 0..own.len() {
            let mut rest = own.clone();
            rest.remove(skip);
            let rels = RelationSet::new(rest).unwrap();
            some_needed |= !rels.is_trivial(&x, Modulus::SqrtQ);
        }
        assert!(some_needed, "{case}");
    }
}

#[test]
fn pi_is_not_rational() {
    for case in Case::ALL {
        let rels = relations(case, 3).unwrap();
        assert!(!rels.is_trivial(&PeriodScalar::pi(), Modulus::SqrtQ));
        assert!(rels.is_trivial(&PeriodScalar::sqrt_d(), Modulus::SqrtQ));
        assert!(!rels.is_trivial(&PeriodScalar::sqrt_d(), Modulus::Q));
    }
}

#[test]
fn parse_examples() {
    let x = parse_expr("(mul (pow pi 2) (inv twopii))").unwrap();
    assert_eq!(x, PeriodScalar::pi().powi(2) / PeriodScalar::two_pi_i());
    assert!(parse_expr("(mul pi").is_err());
}

fn scalar() -> impl Strategy<Value = PeriodScalar> {
    let names = ["Q_0@s", "Q_1@sb", "R_2", "Delta@s", "detA@s", "pi", "twopii", "i", "sqrtD"];
    proptest::collection::vec((0usize..names.len(), -3i64..4, 1i64..3), 0..5).prop_map(move |fs| {
        fs.into_iter()
            .map(|(k, a, b)| parse_expr(&format!("(pow {} {}/{})", names[k], a, b)).unwrap())
            .product()
    })
}

proptest! {
    #[test]
    fn reduction_is_idempotent_and_multiplicative(x in scalar(), y in scalar(), which in 0usize..4) {
        let rels = relations(Case::ALL[which], 2).unwrap();
        for m in [Modulus::Q, Modulus::SqrtQ] {
            let rx = rels.reduce(&x, m);
            prop_assert_eq!(rels.reduce(&rx, m), rx.clone());
            let ry = rels.reduce(&y, m);
            prop_assert_eq!(rels.reduce(&(x.clone() * y.clone()), m), rels.reduce(&(rx * ry), m));
        }
    }

    #[test]
    fn conjugation_is_an_involution(x in scalar()) {
        prop_assert_eq!(x.conj().conj(), x.clone());
        prop_assert_eq!(x.abs_sq(), x.clone() * x.conj());
    }
}
