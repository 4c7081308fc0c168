use hodgela::linalg::{q, qi};
use hodgela::periodring::PeriodScalar;
use hodgela::rootsys::*;
use proptest::prelude::*;

fn simple(s: &str) -> Simple {
    let g: GroupDescriptor = s.parse().unwrap();
    assert_eq!(g.factors.len(), 1);
    g.factors[0]
}

/// Every tabulated simple group whose `Delta(g:b)` has rank at most 4.
fn tabulated_small() -> Vec<String> {
    let mut out = Vec::new();
    for n in [3, 4, 5, 6, 7, 8, 9] {
        out.push(format!("SL({n})/R"));
    }
    for m in 2..=4 {
        out.push(format!("SLH({m})"));
    }
    for k in 0..=4u64 {
        for l in k..=4 {
            if k + l >= 1 && k + l <= 4 {
                out.push(format!("SO({},{})/R", 2 * k + 1, 2 * l + 1));
            }
        }
    }
    out.push("E6split".into());
    out.push("E6IV".into());
    for h in ["PGL(2)", "PGL(3)", "PGL(4)", "PGL(5)", "SO(5)", "SO(6)", "SO(7)", "SO(8)", "SO(9)"] {
        out.push(format!("{h}/C"));
    }
    out
}

#[test]
fn chamber_enumeration_matches_weyl_index_table() {
    for name in tabulated_small() {
        let s = simple(&name);
        let report = chamber_check(&s).unwrap();
        assert!(report.ok(), "{name}: {report:?}");
        assert_eq!(weyl_index_from_orders(&s).unwrap(), report.tabulated_index, "{name}");
    }
}

#[test]
fn tabulated_groups_have_positive_delta() {
    for name in tabulated_small() {
        let g: GroupDescriptor = name.parse().unwrap();
        assert!(invariants(&g).unwrap().delta > 0, "{name}");
    }
}

fn all_types() -> Vec<(RootType, u64)> {
    let mut v = Vec::new();
    for n in 1..=6 {
        v.push((RootType::A, n));
        v.push((RootType::B, n));
        v.push((RootType::C, n));
    }
    for n in 2..=6 {
        v.push((RootType::D, n));
    }
    v.extend([(RootType::G2, 2), (RootType::F4, 4), (RootType::F4Dual, 4), (RootType::E6, 6), (RootType::E7, 7), (RootType::E8, 8)]);
    v
}

#[test]
fn weyl_orders_agree_with_recursion() {
    for (t, n) in all_types() {
        let rs = RootSystem::new(t, n as usize).unwrap();
        assert_eq!(rs.rank, n as usize, "{t:?}{n}");
        assert_eq!(rs.weyl_order_by_recursion(), weyl_order(t, n).unwrap(), "{t:?}{n}");
    }
}

#[test]
fn weyl_orders_agree_with_closure_up_to_e6() {
    for (t, n) in all_types() {
        if matches!(t, RootType::E7 | RootType::E8) || weyl_order(t, n).unwrap() > 60_000 {
            continue;
        }
        let rs = RootSystem::new(t, n as usize).unwrap();
        assert_eq!(rs.weyl_order_by_closure(), weyl_order(t, n).unwrap(), "{t:?}{n}");
    }
}

#[test]
fn exponents_agree_with_height_partition() {
    for (t, n) in all_types() {
        let rs = RootSystem::new(t, n as usize).unwrap();
        let e = exponents(t, n).unwrap();
        assert_eq!(rs.exponents_from_heights(), e, "{t:?}{n}");
        assert_eq!(e.iter().sum::<u64>() as usize, rs.positive_roots().len());
        assert_eq!(e.iter().map(|m| m + 1).product::<u64>(), weyl_order(t, n).unwrap());
    }
}

#[test]
fn bc_has_the_weyl_group_of_b() {
    for n in 1..=4 {
        let bc = RootSystem::new(RootType::BC, n).unwrap();
        assert_eq!(bc.weyl_order_by_recursion(), weyl_order(RootType::B, n as u64).unwrap());
    }
}

#[test]
fn macdonald_volume_matches_compact_dimension() {
    let mut groups = Vec::new();
    for n in 1..=6 {
        groups.push(CompactGroup::U(n));
        if n >= 2 {
            groups.push(CompactGroup::Su(n));
            groups.push(CompactGroup::So(n));
        }
    }
    for g in groups {
        let (d, r) = g.dim_and_rank();
        let expected = PeriodScalar::pi().pow(&q((d + r) as i64, 2));
        assert_eq!(macdonald_volume(&[g]), expected, "{g:?}");
    }
}

#[test]
fn trace_form_constants() {
    for n in 1..=4 {
        for base in ["R", "C"] {
            let r = dual_trace_form(&simple(&format!("GL({n})/{base}"))).unwrap();
            assert_eq!(r.constant, qi(1), "GL({n})/{base}");
        }
    }
    for n in 2..=5 {
        let r = dual_trace_form(&simple(&format!("SO({n})/R"))).unwrap();
        assert_eq!(r.constant, q(1, 4), "SO({n})/R");
        for (p, qq) in [(n, 0), (n - 1, 1)] {
            let r = dual_trace_form(&simple(&format!("SO({p},{qq})/R"))).unwrap();
            assert_eq!(r.constant, q(1, 4), "SO({p},{qq})");
        }
    }
    assert_eq!(dual_trace_form(&simple("SO(2,0)/R")).unwrap().constant, q(1, 4));
}

proptest! {
    #[test]
    fn invariants_add_over_products(a in 2u64..6, b in 2u64..6) {
        let g1: GroupDescriptor = format!("PGL({a})/C").parse().unwrap();
        let g2: GroupDescriptor = format!("SO({b})/R").parse().unwrap();
        let g: GroupDescriptor = format!("PGL({a})/C x SO({b})/R").parse().unwrap();
        let (i1, i2, i) = (invariants(&g1).unwrap(), invariants(&g2).unwrap(), invariants(&g).unwrap());
        prop_assert_eq!(i.d_symm, i1.d_symm + i2.d_symm);
        prop_assert_eq!(i.delta, i1.delta + i2.delta);
        prop_assert_eq!(i.q, i1.q + i2.q);
        prop_assert_eq!(2 * i.q + i.delta, i.d_symm);
    }

    #[test]
    fn descriptor_display_round_trips(n in 2u64..9, which in 0usize..5) {
        let s = ["SL", "PGL", "GL", "SOc", "SU"][which];
        let g: GroupDescriptor = format!("{s}({n})").parse().unwrap();
        let again: GroupDescriptor = g.to_string().parse().unwrap();
        prop_assert_eq!(g, again);
    }
}
