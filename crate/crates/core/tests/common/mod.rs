#![allow(dead_code)]

use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

use singconv::bases::GermClassBundle;
use singconv::convolve::{convolve, thom_sebastiani, ConvolutionJob};
use singconv::{EqHodgeClass, GermPoly, GroupSpec, HodgeAtom};

pub fn atoms_for(orders: Vec<u32>) -> impl Strategy<Value = Vec<(HodgeAtom, i64)>> {
    let chi = orders.iter().map(|&c| 0..c).collect::<Vec<_>>();
    prop::collection::vec((0u32..3, 0u32..3, chi, -3i64..=3), 0..6)
        .prop_map(|v| v.into_iter().map(|(p, q, chi, m)| (HodgeAtom::new(p, q, chi), m)).collect())
}

pub fn group() -> impl Strategy<Value = GroupSpec> {
    prop::collection::vec(1u32..7, 1..3).prop_map(|orders| {
        let mono = orders.len() - 1;
        GroupSpec::new(orders, Some(mono)).unwrap()
    })
}

pub fn class_on(g: GroupSpec) -> impl Strategy<Value = EqHodgeClass> {
    atoms_for(g.orders.clone()).prop_map(move |a| EqHodgeClass::from_atoms(g.clone(), a).unwrap())
}

pub fn class_triple() -> impl Strategy<Value = (EqHodgeClass, EqHodgeClass, EqHodgeClass)> {
    group().prop_flat_map(|g| (class_on(g.clone()), class_on(g.clone()), class_on(g)))
}

pub fn class_with_selector() -> impl Strategy<Value = (EqHodgeClass, Vec<usize>)> {
    group().prop_flat_map(|g| {
        let n = g.len();
        (class_on(g), prop::collection::vec(0..n, 0..=n))
    })
}

pub fn any_class() -> impl Strategy<Value = EqHodgeClass> {
    group().prop_flat_map(class_on)
}

/// Bundle over `mu_d` with a random vanishing class.
pub fn bundle() -> impl Strategy<Value = GermClassBundle> {
    (1u32..7)
        .prop_flat_map(|d| class_on(GroupSpec::cyclic(d)))
        .prop_map(|c| GermClassBundle::from_vanishing(c, Some(2)).unwrap())
}

/// Bundle whose class satisfies `h^{p,q}(chi) = h^{q,p}(chi^-1)`.
pub fn symmetric_bundle() -> impl Strategy<Value = GermClassBundle> {
    (1u32..7)
        .prop_flat_map(|d| class_on(GroupSpec::cyclic(d)))
        .prop_map(|c| {
            let s = c.add(&c.conjugate()).unwrap();
            GermClassBundle::from_vanishing(s, Some(2)).unwrap()
        })
}

pub fn ring_axioms(a: &EqHodgeClass, b: &EqHodgeClass, c: &EqHodgeClass) -> Result<(), TestCaseError> {
    let zero = EqHodgeClass::zero(a.group().clone());
    let one = EqHodgeClass::unit(a.group().clone());
    prop_assert_eq!(a.add(b).unwrap(), b.add(a).unwrap());
    prop_assert_eq!(a.add(b).unwrap().add(c).unwrap(), a.add(&b.add(c).unwrap()).unwrap());
    prop_assert_eq!(a.add(&zero).unwrap(), a.clone());
    prop_assert!(a.add(&a.negate()).unwrap().is_zero());
    prop_assert_eq!(a.tensor(b).unwrap(), b.tensor(a).unwrap());
    prop_assert_eq!(
        a.tensor(b).unwrap().tensor(c).unwrap(),
        a.tensor(&b.tensor(c).unwrap()).unwrap()
    );
    prop_assert_eq!(
        a.tensor(&b.add(c).unwrap()).unwrap(),
        a.tensor(b).unwrap().add(&a.tensor(c).unwrap()).unwrap()
    );
    prop_assert_eq!(one.tensor(a).unwrap(), a.clone());
    prop_assert!(zero.tensor(a).unwrap().is_zero());
    prop_assert_eq!(a.rank() * b.rank(), a.tensor(b).unwrap().rank());
    Ok(())
}

pub fn partition(a: &EqHodgeClass, sel: &[usize]) -> Result<(), TestCaseError> {
    let inv = a.invariants(sel, false).unwrap();
    let rest = a.nontrivial_part(sel).unwrap();
    prop_assert_eq!(inv.add(&rest).unwrap(), a.clone());
    for atom in rest.atoms().keys() {
        prop_assert!(sel.iter().any(|&i| atom.chi[i] != 0));
    }
    // invariants are idempotent and dropping keeps the multiplicities
    prop_assert_eq!(inv.invariants(sel, false).unwrap(), inv.clone());
    prop_assert_eq!(a.invariants(sel, true).unwrap().rank(), inv.rank());
    Ok(())
}

pub fn division_round_trip(a: &EqHodgeClass) -> Result<(), TestCaseError> {
    prop_assert_eq!(a.mul_one_minus_l().div_one_minus_l().unwrap(), a.clone());
    Ok(())
}

pub fn conjugation_preserved(b1: &GermClassBundle, b2: &GermClassBundle) -> Result<(), TestCaseError> {
    prop_assert!(b1.is_symmetric() && b2.is_symmetric());
    let ts = thom_sebastiani(b1, b2).unwrap();
    prop_assert!(ts.is_polarizable(), "Thom-Sebastiani broke symmetry: {}", ts);
    let c = convolve(&ConvolutionJob::for_sum(vec![b1.clone(), b2.clone()], None).unwrap()).unwrap();
    prop_assert!(c.is_polarizable(), "convolution broke symmetry: {}", c);
    Ok(())
}

/// With `m` a multiple `k * lcm(d_1, d_2)`, every output character still has
/// order dividing `lcm(d_1, d_2)`.
pub fn orders_divide_exponent(b1: &GermClassBundle, b2: &GermClassBundle, k: u32) -> Result<(), TestCaseError> {
    let l = num_integer::lcm(b1.d(), b2.d());
    let job = ConvolutionJob::for_sum(vec![b1.clone(), b2.clone()], Some(k * l)).unwrap();
    let c = convolve(&job).unwrap();
    prop_assert_eq!(c.group().orders.clone(), vec![k * l]);
    prop_assert!(c.monodromy_orders_divide(l), "order escapes lcm: {}", c);
    // the engine agrees with Thom-Sebastiani after rebasing
    let ts = thom_sebastiani(b1, b2).unwrap().rebase(k * l).unwrap();
    prop_assert_eq!(c, ts);
    Ok(())
}

/// Random convenient germ in `n` variables with exponents up to `max_exp`.
pub fn convenient_germ(n: usize, max_exp: u32) -> impl Strategy<Value = GermPoly> {
    let pure = prop::collection::vec(1..=max_exp, n);
    let mixed = prop::collection::vec(prop::collection::vec(0..=max_exp, n), 0..4);
    (pure, mixed).prop_map(move |(pure, mixed)| {
        let mut exps: Vec<Vec<u32>> = pure
            .iter()
            .enumerate()
            .map(|(i, &a)| (0..n).map(|j| if i == j { a.max(1) } else { 0 }).collect())
            .collect();
        exps.extend(mixed.into_iter().filter(|e| e.iter().any(|&x| x > 0)));
        let refs: Vec<&[u32]> = exps.iter().map(|e| e.as_slice()).collect();
        GermPoly::from_exponents(n, &refs).unwrap()
    })
}
