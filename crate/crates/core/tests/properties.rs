mod common;

use common::*;
use proptest::prelude::*;

use singconv::bases::{fermat_class, phi_monomial};
use singconv::convolve::{check_curve_form, thom_sebastiani};
use singconv::fans::{dual_fan, exponent_of, simplicial_refinement, suspend_germ};
use singconv::ghodge::CharMap;
use singconv::newton::{newton_polyhedron, Convenience};
use singconv::{EqHodgeClass, GermPoly, GroupSpec, ScaledLattice};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn ring_axioms_hold((a, b, c) in class_triple()) {
        ring_axioms(&a, &b, &c)?;
    }

    #[test]
    fn invariants_partition((a, sel) in class_with_selector()) {
        partition(&a, &sel)?;
    }

    #[test]
    fn one_minus_l_round_trip(a in any_class()) {
        division_round_trip(&a)?;
    }

    #[test]
    fn symmetry_survives_convolution(b1 in symmetric_bundle(), b2 in symmetric_bundle()) {
        conjugation_preserved(&b1, &b2)?;
    }

    #[test]
    fn output_orders_divide_the_exponent(b1 in bundle(), b2 in bundle(), k in 1u32..4) {
        orders_divide_exponent(&b1, &b2, k)?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn two_forms_agree(b1 in bundle(), b2 in bundle()) {
        prop_assert!(check_curve_form(&b1, &b2).is_ok());
    }

    #[test]
    fn fermat_rank_and_symmetry(d1 in 1u32..8, d2 in 1u32..8, k in 1u32..3) {
        let m = k * num_integer::lcm(d1, d2);
        let c = fermat_class(&[d1, d2], m).unwrap();
        prop_assert_eq!(c.rank(), -((d1 as i64 - 1) * (d2 as i64 - 1)));
        prop_assert!(c.is_polarizable());
    }

    #[test]
    fn monomial_class_is_regular_minus_trivial(d in 1u32..10, k in 1u32..4) {
        let c = phi_monomial(d, d * k).unwrap();
        prop_assert_eq!(c.rank(), d as i64 - 1);
        // forgetting the mu_m factor leaves the regular representation minus the trivial one
        let g = GroupSpec::new(vec![d], None).unwrap();
        let regular = EqHodgeClass::unit(GroupSpec::new(vec![1], None).unwrap()).induce(&g).unwrap();
        let forget = CharMap { target: g.clone(), rows: vec![vec![1, 0]] };
        prop_assert_eq!(c.map_characters(&forget).unwrap(), regular.sub(&EqHodgeClass::unit(g)).unwrap());
        prop_assert!(c.atoms().keys().all(|a| a.chi[1] == k * a.chi[0]));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn thom_sebastiani_associative(a in 1u32..5, b in 1u32..5, c in 1u32..5) {
        use singconv::bases::GermClassBundle;
        let m = |d| GermClassBundle::monomial(d).unwrap();
        let ab = GermClassBundle::from_vanishing(thom_sebastiani(&m(a), &m(b)).unwrap(), Some(2)).unwrap();
        let bc = GermClassBundle::from_vanishing(thom_sebastiani(&m(b), &m(c)).unwrap(), Some(2)).unwrap();
        let left = thom_sebastiani(&ab, &m(c)).unwrap();
        let right = thom_sebastiani(&m(a), &bc).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn dual_fan_is_complete_and_refines(g in convenient_germ(3, 6), probe in prop::collection::vec(0i64..5, 3)) {
        let delta = newton_polyhedron(&g).unwrap();
        let fan = dual_fan(&delta);
        let refined = simplicial_refinement(&fan).unwrap();
        prop_assert!(refined.is_simplicial());
        prop_assert!(fan.covers(&probe));
        prop_assert!(refined.covers(&probe));
        // every ray of the refinement sits in a cone of the original fan
        for i in 0..refined.rays().len() {
            prop_assert!(fan.covers(&refined.ray_vector(i)));
        }
    }

    #[test]
    fn exponent_of_linear_sum_is_lcm(d1 in 1u32..7, d2 in 1u32..7, d3 in 1u32..4) {
        let g = GermPoly::from_exponents(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]).unwrap();
        let lattice = ScaledLattice::new(vec![d1, d2, d3]).unwrap();
        let m = exponent_of(&g, &lattice, Convenience::Require).unwrap().m;
        prop_assert_eq!(m, num_integer::lcm(num_integer::lcm(d1, d2), d3) as u64);
    }

    #[test]
    fn suspension_is_reduced(g in convenient_germ(2, 8), d in prop::collection::vec(1u32..4, 2)) {
        let lattice = ScaledLattice::new(d).unwrap();
        let s = suspend_germ(&g, &lattice, None, Convenience::Require).unwrap();
        prop_assert!(s.report.pass, "{:?}", s.report);
    }
}
