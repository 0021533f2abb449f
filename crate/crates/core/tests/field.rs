use std::sync::Arc;

use proptest::prelude::*;
use ranklab_core::arith::prime_factors;
use ranklab_core::field::{embed, Embedding};
use ranklab_core::{make_field, Elem, Error, Field};

fn gf(q: u32, e: u32) -> Arc<Field> {
    make_field(q, e).unwrap()
}

#[test]
fn gf16_modulus_is_irreducible_and_primitive_by_brute_force() {
    let f = gf(2, 4);
    assert_eq!(f.modulus(), [1, 1, 0, 0, 1]);
    // No root and no quadratic factor over GF(2).
    for a in 0..2u32 {
        assert_ne!((a.pow(4) + a + 1) % 2, 0);
    }
    let m = f.modulus();
    let quad = [1u32, 1, 1];
    let prod_with = |c: [u32; 3]| {
        let mut p = [0u32; 5];
        for i in 0..3 {
            for j in 0..3 {
                p[i + j] = (p[i + j] + quad[i] * c[j]) % 2;
            }
        }
        p
    };
    for c0 in 0..2 {
        for c1 in 0..2 {
            assert_ne!(prod_with([c0, c1, 1]).as_slice(), m);
        }
    }
    let x = Elem::serial(f.primitive_element());
    assert_eq!(x, 2);
    let mut cur = Elem::ONE;
    let mut order = 0;
    loop {
        cur = f.mul(cur, f.primitive_element());
        order += 1;
        if cur == Elem::ONE {
            break;
        }
    }
    assert_eq!(order, 15);
}

#[test]
fn make_field_examples() {
    let f = gf(2, 1);
    assert_eq!(f.order(), 2);
    assert_eq!(make_field(4, 2).unwrap_err(), Error::NotPrime(4));
}

#[test]
fn every_table_entry_is_primitive() {
    for q in [2u32, 3, 5] {
        for e in 1..=24 {
            let f = gf(q, e);
            assert!(f.is_primitive(), "GF({q}^{e})");
        }
    }
}

#[test]
fn generator_has_full_order() {
    for (q, e) in [(2u32, 4u32), (2, 10), (2, 20), (3, 6), (3, 12), (5, 4), (5, 8)] {
        let f = gf(q, e);
        let n = f.order() - 1;
        let g = f.primitive_element();
        assert_eq!(f.pow(g, n), Elem::ONE);
        for p in prime_factors(n) {
            assert_ne!(f.pow(g, n / p), Elem::ONE, "GF({q}^{e}) order divides {}", n / p);
        }
    }
}

#[test]
fn table_and_schoolbook_agree() {
    for (q, e) in [(2u32, 4u32), (2, 8), (3, 4), (5, 3)] {
        let f = gf(q, e);
        assert!(f.has_tables());
        for a in f.elements() {
            for b in f.elements().step_by(7) {
                assert_eq!(f.mul(a, b), f.mul_schoolbook(a, b));
            }
        }
    }
}

#[test]
fn frobenius_examples() {
    let f = gf(2, 4);
    let g = f.primitive_element();
    assert_eq!(f.frobenius(g, 0), g);
    assert_eq!(f.frobenius(g, 4), g);
    assert_eq!(f.frobenius(g, 1), f.mul(g, g));
    for a in f.elements() {
        assert_eq!(f.frobenius(a, 4), a);
    }
}

#[test]
fn gf4_into_gf16() {
    let small = gf(2, 2);
    let big = gf(2, 4);
    let emb = Embedding::new(&small, &big).unwrap();
    let g5 = big.pow(big.primitive_element(), 5);
    assert_eq!(emb.image_of_generator(), g5);
    let img = emb.apply(small.primitive_element());
    assert_eq!(big.mul(big.mul(img, img), img), Elem::ONE);
    assert_eq!(embed(Elem::ZERO, &small, &big).unwrap(), Elem::ZERO);
    assert_eq!(embed(Elem::ONE, &small, &big).unwrap(), Elem::ONE);
    assert_eq!(embed(Elem::ONE, &gf(2, 3), &big).unwrap_err(), Error::NotASubfield { sub: 3, ext: 4 });
}

#[test]
fn embeddings_are_injective_homomorphisms() {
    for (q, n, m) in [(2u32, 2u32, 4u32), (2, 4, 8), (2, 3, 6), (2, 2, 8), (3, 2, 4), (2, 4, 4), (5, 1, 3), (2, 6, 12)] {
        let small = gf(q, n);
        let big = gf(q, m);
        let emb = Embedding::new(&small, &big).unwrap();
        if small.order() > 256 {
            continue;
        }
        let images: Vec<Elem> = small.elements().map(|x| emb.apply(x)).collect();
        let mut sorted = images.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), images.len());
        for x in small.elements() {
            for y in small.elements() {
                let (ix, iy) = (images[x.serial() as usize], images[y.serial() as usize]);
                assert_eq!(images[small.mul(x, y).serial() as usize], big.mul(ix, iy));
                assert_eq!(images[small.add(x, y).serial() as usize], big.add(ix, iy));
            }
        }
        for c in 0..q {
            assert_eq!(emb.apply(small.from_prime(c)), big.from_prime(c));
        }
    }
}

#[test]
fn custom_moduli() {
    let f = Field::new(2, &[1, 1, 1, 1, 1]).unwrap();
    assert!(!f.is_primitive());
    let g = f.primitive_element();
    assert_eq!(f.pow(g, 15), Elem::ONE);
    assert_ne!(f.pow(g, 5), Elem::ONE);
    assert_ne!(f.pow(g, 3), Elem::ONE);
    assert_eq!(Field::new(3, &[2, 0, 1]).unwrap_err(), Error::NotIrreducible);
}

#[test]
fn large_field_uses_schoolbook_only() {
    let f = gf(2, 24);
    assert!(!f.has_tables());
    let g = f.primitive_element();
    let a = f.pow(g, 123_456);
    let inv = f.inv(a).unwrap();
    assert_eq!(f.mul(a, inv), Elem::ONE);
}

proptest! {
    #[test]
    fn frobenius_is_prime_field_linear(a in 0u32..3, b in 0u32..3, x in 0u64..729, y in 0u64..729, i in 0usize..12) {
        let f = gf(3, 6);
        let (x, y) = (f.elem(x).unwrap(), f.elem(y).unwrap());
        let lhs = f.frobenius(f.add(f.scale(x, a), f.scale(y, b)), i);
        let rhs = f.add(f.scale(f.frobenius(x, i), a), f.scale(f.frobenius(y, i), b));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn field_axioms_in_gf2_20(x in 0u64..(1 << 20), y in 0u64..(1 << 20), z in 0u64..(1 << 20)) {
        let f = gf(2, 20);
        let (x, y, z) = (f.elem(x).unwrap(), f.elem(y).unwrap(), f.elem(z).unwrap());
        prop_assert_eq!(f.mul(x, f.add(y, z)), f.add(f.mul(x, y), f.mul(x, z)));
        prop_assert_eq!(f.mul(f.mul(x, y), z), f.mul(x, f.mul(y, z)));
        if let Some(inv) = f.inv(x) {
            prop_assert_eq!(f.mul(x, inv), Elem::ONE);
        }
    }

    #[test]
    fn digits_round_trip(x in 0u64..15625) {
        let f = gf(5, 6);
        let a = f.elem(x).unwrap();
        prop_assert_eq!(f.from_digits(&f.digits(a)), a);
    }
}
