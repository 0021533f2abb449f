use std::sync::Arc;

use proptest::prelude::*;
use ranklab_core::linpoly::{
    divides_check, divisor_by_composition, kernel, q_associate_backward, q_associate_forward,
};
use ranklab_core::poly::Poly;
use ranklab_core::subspace::{enumerate_grassmannian, Subspace};
use ranklab_core::{make_field, Elem, Error, Field, LinearizedPoly};

fn gf(q: u32, e: u32) -> Arc<Field> {
    make_field(q, e).unwrap()
}

fn lin(f: &Arc<Field>, serials: &[u64]) -> LinearizedPoly {
    LinearizedPoly::new(f, serials.iter().map(|&s| f.elem(s).unwrap()).collect()).unwrap()
}

/// `x^[i] - x`.
fn frobenius_minus_identity(f: &Arc<Field>, i: usize) -> LinearizedPoly {
    let mut c = vec![Elem::ZERO; i + 1];
    c[i] = Elem::ONE;
    c[0] = f.neg(Elem::ONE);
    LinearizedPoly::new(f, c).unwrap()
}

#[test]
fn evaluation_examples() {
    let f = gf(2, 4);
    let g = f.primitive_element();
    let id = LinearizedPoly::identity(&f);
    for x in f.elements() {
        assert_eq!(id.eval(x), x);
    }
    let p = frobenius_minus_identity(&f, 2);
    for x in f.subfield_elements(2).unwrap() {
        assert_eq!(p.evaluate(x).unwrap(), Elem::ZERO);
    }
    let sq = LinearizedPoly::monomial(&f, 1, Elem::ONE);
    assert_eq!(sq.eval(g), f.mul(g, g));
}

#[test]
fn evaluate_rejects_foreign_elements() {
    let f = gf(2, 4);
    let p = LinearizedPoly::identity(&f);
    let big = gf(2, 8);
    let outside = big.elem(200).unwrap();
    assert_eq!(p.evaluate(outside), Err(Error::FieldMismatch));
}

#[test]
fn arithmetic_examples() {
    let f = gf(2, 4);
    let p = lin(&f, &[3, 0, 7, 1]);
    assert!(p.sub(&p).unwrap().is_zero());
    assert_eq!(p.scale(Elem::ONE), p);
    let a = lin(&f, &[1, 0, 1]);
    let b = lin(&f, &[1]);
    assert_eq!(a.add(&b).unwrap(), LinearizedPoly::monomial(&f, 2, Elem::ONE));
    assert_eq!(a.add(&LinearizedPoly::identity(&gf(2, 8))), Err(Error::FieldMismatch));
}

#[test]
fn canonical_form_drops_trailing_zeros() {
    let f = gf(3, 2);
    let p = lin(&f, &[1, 2, 0, 0]);
    assert_eq!(p.q_degree(), Some(1));
    assert!(!p.is_monic());
    assert_eq!(LinearizedPoly::zero(&f).q_degree(), None);
}

#[test]
fn q_associate_examples() {
    let f = gf(2, 4);
    let x = Poly::monomial(&f, 1, Elem::ONE);
    assert_eq!(q_associate_forward(&x, 1), LinearizedPoly::monomial(&f, 1, Elem::ONE));
    let l = Poly::new(&f, vec![Elem::ONE; 3]).unwrap();
    assert_eq!(q_associate_forward(&l, 2), lin(&f, &[1, 0, 1, 0, 1]));
    assert_eq!(q_associate_backward(&lin(&f, &[1, 0, 1, 1]), 2), Err(Error::StrideViolation { index: 3, stride: 2 }));
}

#[test]
fn divisibility_examples() {
    let f = gf(2, 4);
    let g = f.primitive_element();
    let x = LinearizedPoly::identity(&f);
    for p in [lin(&f, &[5, 1]), lin(&f, &[0, 0, 1]), frobenius_minus_identity(&f, 4)] {
        assert!(divides_check(&x, &p).unwrap());
    }
    let sum = lin(&f, &[1, 0, 1]);
    assert!(divides_check(&sum, &frobenius_minus_identity(&f, 4)).unwrap());
    let p = LinearizedPoly::new(&f, vec![g, Elem::ONE]).unwrap();
    assert!(!divides_check(&p, &LinearizedPoly::monomial(&f, 1, Elem::ONE)).unwrap());
}

#[test]
fn expanded_and_composition_division_agree() {
    let f = gf(2, 4);
    let all: Vec<LinearizedPoly> = (1u64..16)
        .flat_map(|a| (0u64..16).map(move |b| (a, b)))
        .map(|(a, b)| lin(&f, &[b, a]))
        .collect();
    let targets = [frobenius_minus_identity(&f, 4), lin(&f, &[3, 9, 1]), lin(&f, &[0, 0, 0, 1])];
    for d in &all {
        for t in &targets {
            assert_eq!(divides_check(d, t).unwrap(), divisor_by_composition(d, t).unwrap());
        }
    }
}

#[test]
fn kernel_examples() {
    let f = gf(2, 4);
    assert_eq!(kernel(&LinearizedPoly::identity(&f), &f).unwrap().dim(), 0);
    let k = kernel(&frobenius_minus_identity(&f, 2), &f).unwrap();
    assert_eq!(k.dim(), 2);
    let mut elems = k.elements();
    elems.sort();
    let mut sub = f.subfield_elements(2).unwrap();
    sub.sort();
    assert_eq!(elems, sub);
    for v in enumerate_grassmannian(&f, 2).unwrap() {
        assert_eq!(kernel(&v.subspace_polynomial().unwrap(), &f).unwrap(), v);
    }
}

#[test]
fn kernel_over_a_subfield() {
    let big = gf(2, 8);
    let small = gf(2, 4);
    // x^[4] - x vanishes on all of GF(16) inside GF(256).
    let k = kernel(&frobenius_minus_identity(&big, 4), &small).unwrap();
    assert_eq!(k, Subspace::full(&small));
    assert!(matches!(kernel(&LinearizedPoly::identity(&gf(2, 21)), &gf(2, 21)), Err(Error::BudgetExceeded { .. })));
}

#[test]
fn monic_subspace_polynomials_have_q_to_the_r_roots() {
    for (q, n) in [(2u32, 4u32), (2, 6), (3, 3), (3, 4)] {
        let f = gf(q, n);
        for r in 0..=n as usize {
            for v in enumerate_grassmannian(&f, r).unwrap().into_iter().step_by(11) {
                let p = v.subspace_polynomial().unwrap();
                assert!(p.is_monic());
                let roots = f.elements().filter(|&x| p.eval(x).is_zero()).count() as u64;
                assert_eq!(roots, (q as u64).pow(r as u32));
            }
        }
    }
}

fn prime_poly(f: &Arc<Field>, coeffs: &[u32]) -> Poly {
    Poly::new(f, coeffs.iter().map(|&c| f.from_prime(c)).collect()).unwrap()
}

proptest! {
    #[test]
    fn linearity(coeffs in prop::collection::vec(0u64..64, 1..5), u in 0u64..64, v in 0u64..64, a in 0u32..2, b in 0u32..2) {
        let f = gf(2, 6);
        let p = lin(&f, &coeffs);
        let (u, v) = (f.elem(u).unwrap(), f.elem(v).unwrap());
        let lhs = p.eval(f.add(f.scale(u, a), f.scale(v, b)));
        let rhs = f.add(f.scale(p.eval(u), a), f.scale(p.eval(v), b));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn linearity_over_gf3(coeffs in prop::collection::vec(0u64..81, 1..4), u in 0u64..81, v in 0u64..81, a in 0u32..3, b in 0u32..3) {
        let f = gf(3, 4);
        let p = lin(&f, &coeffs);
        let (u, v) = (f.elem(u).unwrap(), f.elem(v).unwrap());
        prop_assert_eq!(
            p.eval(f.add(f.scale(u, a), f.scale(v, b))),
            f.add(f.scale(p.eval(u), a), f.scale(p.eval(v), b))
        );
    }

    #[test]
    fn associate_round_trip(coeffs in prop::collection::vec(0u64..16, 0..6), g in 1usize..4) {
        let f = gf(2, 4);
        let l = Poly::new(&f, coeffs.iter().map(|&s| f.elem(s).unwrap()).collect()).unwrap();
        prop_assert_eq!(q_associate_backward(&q_associate_forward(&l, g), g).unwrap(), l);
    }

    #[test]
    fn associate_divisibility(a in prop::collection::vec(0u32..2, 1..4), b in prop::collection::vec(0u32..2, 1..7), g in 1usize..3) {
        let f = gf(2, 4);
        let mut a = a;
        a.push(1);
        let la = prime_poly(&f, &a);
        let lb = prime_poly(&f, &b);
        prop_assume!(!lb.is_zero());
        let ordinary = lb.is_divisible_by(&la).unwrap();
        let linear = divides_check(&q_associate_forward(&la, g), &q_associate_forward(&lb, g)).unwrap();
        prop_assert_eq!(ordinary, linear);
    }

    #[test]
    fn associate_divisibility_over_gf3(a in prop::collection::vec(0u32..3, 1..3), b in prop::collection::vec(0u32..3, 1..5)) {
        let f = gf(3, 2);
        let mut a = a;
        a.push(1);
        let la = prime_poly(&f, &a);
        let lb = prime_poly(&f, &b);
        prop_assume!(!lb.is_zero());
        prop_assert_eq!(
            lb.is_divisible_by(&la).unwrap(),
            divides_check(&q_associate_forward(&la, 1), &q_associate_forward(&lb, 1)).unwrap()
        );
    }

    #[test]
    fn composition_route_matches_expansion(d in prop::collection::vec(0u64..16, 1..4), t in prop::collection::vec(0u64..16, 1..6)) {
        let f = gf(2, 4);
        let d = lin(&f, &d);
        let t = lin(&f, &t);
        prop_assume!(!d.is_zero());
        prop_assert_eq!(divides_check(&d, &t).unwrap(), divisor_by_composition(&d, &t).unwrap());
    }
}
