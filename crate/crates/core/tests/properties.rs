use std::collections::BTreeSet;

use num_bigint::BigInt;
use proptest::prelude::*;
use semimagic::reduction::{reduce, shift};
use semimagic::{
    apply, cg_series_oracle, cg_sum, compose, determinant, enumerate, from_topline_rc, hex_region,
    is_trivial_zero, orbit, zero_locus, GroupElement, SemiMagicSquare, TopLine,
};

fn square_up_to(max_j: u32) -> impl Strategy<Value = SemiMagicSquare> {
    (0..=max_j)
        .prop_flat_map(|j| (Just(j), 0..=j))
        .prop_flat_map(|(j, a)| (Just(j), Just(a), 0..=j - a))
        .prop_flat_map(|(j, a, b)| {
            let top = TopLine::new(a, b, j - a - b);
            let n = hex_region(top).len();
            (Just(top), 0..n)
        })
        .prop_map(|(top, i)| {
            let (r, c) = hex_region(top).points[i];
            from_topline_rc(top, r as i64, c as i64).unwrap()
        })
}

fn element() -> impl Strategy<Value = GroupElement> {
    (0..72usize).prop_map(|i| GroupElement::all()[i])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn evaluators_agree_on_random_squares(m in square_up_to(40)) {
        let sum = cg_sum::<BigInt>(&m).unwrap();
        let oracle = cg_series_oracle::<BigInt>(&m).unwrap();
        prop_assert_eq!(sum, oracle);
    }

    #[test]
    fn action_is_a_homomorphism(g in element(), h in element(), m in square_up_to(20)) {
        prop_assert_eq!(apply(&compose(&g, &h), &m), apply(&g, &apply(&h, &m)));
        prop_assert_eq!(apply(&g.inverse(), &apply(&g, &m)), m);
    }

    #[test]
    fn zeros_are_preserved_by_the_group(g in element(), m in square_up_to(30)) {
        let before = cg_sum::<BigInt>(&m).unwrap().is_zero();
        prop_assert_eq!(cg_sum::<BigInt>(&apply(&g, &m)).unwrap().is_zero(), before);
    }

    #[test]
    fn topline_rc_round_trip(m in square_up_to(40)) {
        let back = from_topline_rc(m.top_line(), m.r() as i64, m.c() as i64).unwrap();
        prop_assert_eq!(back, m);
    }

    #[test]
    fn reduction_commutes_with_the_group(g in element(), m in square_up_to(30)) {
        let d = reduce(&m);
        prop_assert_eq!(shift(&d.reduced, d.s), m);
        let dg = reduce(&apply(&g, &m));
        prop_assert_eq!(dg.s, d.s);
        prop_assert_eq!(dg.reduced, apply(&g, &d.reduced));
    }

    #[test]
    fn orbit_stabilizer(m in square_up_to(20)) {
        let o = orbit(&m);
        prop_assert_eq!(o.size * o.stabilizer_order as usize, 72);
    }
}

#[test]
fn evaluators_agree_exhaustively_to_j12() {
    for j in 0..=12 {
        for m in enumerate(j).unwrap() {
            assert_eq!(cg_sum::<i64>(&m).unwrap(), cg_series_oracle::<i64>(&m).unwrap(), "{m}");
        }
    }
}

#[test]
fn zero_locus_is_invariant_to_j12() {
    let all = GroupElement::all();
    for j in 0..=12 {
        let zeros: BTreeSet<SemiMagicSquare> =
            zero_locus(j).unwrap().iter().map(|z| z.square().unwrap()).collect();
        for m in &zeros {
            for g in &all {
                assert!(zeros.contains(&apply(g, m)), "J={j}: {g} moves {m} off the zero locus");
            }
        }
    }
}

#[test]
fn hexagon_side_lengths() {
    for j in 0..=10 {
        for top in semimagic::toplines(j) {
            let region = hex_region(top);
            let (last_r, last_c) = (top.b + top.k, top.a + top.b);
            let rows: BTreeSet<u32> = region.points.iter().map(|p| p.0).collect();
            let cols: BTreeSet<u32> = region.points.iter().map(|p| p.1).collect();
            assert_eq!(rows.len() as u32, last_r + 1);
            assert_eq!(cols.len() as u32, last_c + 1);
            let in_row = |r| region.points.iter().filter(|p| p.0 == r).count() as u32;
            let in_col = |c| region.points.iter().filter(|p| p.1 == c).count() as u32;
            assert_eq!((in_row(0), in_row(last_r)), (top.a + 1, top.a + 1), "{top}");
            assert_eq!((in_col(0), in_col(last_c)), (top.k + 1, top.k + 1), "{top}");
        }
    }
}

#[test]
fn counts_are_symmetric_in_the_top_line() {
    for j in 0..=12 {
        for t in semimagic::toplines(j) {
            let n = hex_region(t).len();
            for p in [(t.a, t.k, t.b), (t.b, t.a, t.k), (t.b, t.k, t.a), (t.k, t.a, t.b), (t.k, t.b, t.a)] {
                assert_eq!(hex_region(TopLine::new(p.0, p.1, p.2)).len(), n);
            }
        }
    }
}

#[test]
fn matching_rows_at_even_j_are_not_zeros() {
    for j in (0..=16).step_by(2) {
        for m in enumerate(j).unwrap() {
            let rows = m.rows();
            let cols = m.columns();
            let matching = (0..3).any(|i| ((i + 1)..3).any(|k| rows[i] == rows[k] || cols[i] == cols[k]));
            if matching {
                assert!(!cg_sum::<i64>(&m).unwrap().is_zero(), "{m}");
            }
        }
    }
}

#[test]
fn trivial_zeros_are_zeros_with_vanishing_determinant() {
    for j in 0..=17 {
        for m in enumerate(j).unwrap() {
            if is_trivial_zero(&m) {
                assert!(cg_sum::<i64>(&m).unwrap().is_zero(), "{m}");
                assert_eq!(determinant(&m), 0, "{m}");
            }
        }
    }
}
