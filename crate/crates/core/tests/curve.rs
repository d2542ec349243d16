mod common;

use proptest::prelude::*;
use wrc_core::grobner::{ideal_equal, is_groebner_basis, toric_kernel};
use wrc_core::invariants::hilbert_function_r;
use wrc_core::{CurveData, MatrixVariant};

use common::semigroup_closure;

#[test]
fn minors_vanish_on_the_parametrization() {
    for d in 1..=5 {
        for e in 1..=4 {
            let c = CurveData::build(d, e).unwrap();
            for m in c.matrix(MatrixVariant::M).minors() {
                assert!(
                    c.phi(&m.poly).unwrap().is_zero(),
                    "({d},{e}) minor {:?}",
                    m.cols
                );
            }
        }
    }
}

#[test]
fn minors_cut_out_the_toric_ideal() {
    for (d, e) in [(1, 2), (2, 2), (3, 2), (2, 3), (4, 1)] {
        let c = CurveData::build(d, e).unwrap();
        let kernel = toric_kernel(&c.phi_images(), &c.order_w()).unwrap();
        assert!(ideal_equal(&c.ideal_basis(), &kernel).unwrap(), "({d},{e})");
    }
}

#[test]
fn degenerate_matrices_are_groebner() {
    for (d, e) in [(2, 2), (3, 2), (3, 3), (4, 2)] {
        let c = CurveData::build(d, e).unwrap();
        for v in [MatrixVariant::M, MatrixVariant::M0, MatrixVariant::Mv] {
            let b = c.minors_basis(v).unwrap();
            assert!(
                is_groebner_basis(&b).unwrap().is_groebner(),
                "({d},{e}) {v:?}"
            );
        }
    }
}

#[test]
fn invalid_types_are_rejected() {
    assert!(CurveData::build(0, 2).is_err());
    assert!(CurveData::build(2, 0).is_err());
}

#[test]
fn lattice_lines_count_the_hilbert_function() {
    for d in 1..=4 {
        for e in 1..=4 {
            let c = CurveData::build(d, e).unwrap();
            let max_a = 6;
            let closure = semigroup_closure(c.series_w(), d * max_a, d * max_a);
            for a in 0..=max_a {
                let members = c
                    .lattice_grid(max_a)
                    .into_iter()
                    .filter(|p| p.i + p.j == d * a && p.member)
                    .count() as u64;
                let brute = closure.iter().filter(|(i, j)| i + j == d * a).count() as u64;
                assert_eq!(members, brute, "({d},{e}) a = {a}");
                assert_eq!(
                    members,
                    hilbert_function_r(d, e, u64::from(a)),
                    "({d},{e}) a = {a}"
                );
            }
        }
    }
}

proptest! {
    #[test]
    fn membership_matches_closure(d in 1u32..=5, e in 1u32..=5, i in 0u32..30, j in 0u32..30) {
        let c = CurveData::build(d, e).unwrap();
        let closure = semigroup_closure(c.series_w(), i, j);
        prop_assert_eq!(c.semigroup().member((i, j)), closure.contains(&(i, j)));
    }
}
