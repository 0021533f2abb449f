use std::collections::BTreeSet;
use std::sync::Arc;

use num_bigint::BigUint;
use ranklab_core::constructions::{
    cg_subspaces, construct_cg, construct_z, explicit_base_poly, is_as_family, pigeonhole_family,
    representatives_b, shift_family, subspace_poly_checks, FamilyKind,
};
use ranklab_core::linpoly::{divides_check, kernel};
use ranklab_core::poly::Poly;
use ranklab_core::subspace::{enumerate_grassmannian, gaussian_binomial, Subspace};
use ranklab_core::{make_field, Elem, Error, Field, LinearizedPoly};

fn gf(q: u32, e: u32) -> Arc<Field> {
    make_field(q, e).unwrap()
}

#[test]
fn cg_sizes_match_gaussian_binomial() {
    for (q, n, r, g) in [(2u32, 4u32, 2u32, 2u32), (2, 6, 2, 2), (2, 6, 3, 3), (3, 4, 2, 2), (2, 8, 4, 2), (2, 8, 4, 4)] {
        let f = gf(q, n);
        let fam = construct_cg(&f, r, g).unwrap();
        let expected = gaussian_binomial(n / g, r / g, (q as u64).pow(g));
        assert_eq!(BigUint::from(fam.len()), expected, "({q},{n},{r},{g})");
        let distinct: BTreeSet<Vec<u64>> = fam.members.iter().map(|p| p.serials()).collect();
        assert_eq!(distinct.len(), fam.len());
        for p in &fam.members {
            assert!(p.is_monic());
            assert_eq!(p.q_degree(), Some(r as usize));
            for (i, c) in p.coeffs().iter().enumerate() {
                assert!(i % g as usize == 0 || c.is_zero());
            }
        }
    }
}

#[test]
fn cg_members_are_closed_under_the_subfield() {
    let f = gf(2, 6);
    let sub = f.subfield_elements(3).unwrap();
    for v in cg_subspaces(&f, 3, 3).unwrap() {
        for &x in v.basis() {
            for &c in &sub {
                assert!(v.contains(f.mul(c, x)));
            }
        }
    }
}

#[test]
fn cg_structure_matches_full_scan() {
    let f = gf(2, 4);
    let patterned: BTreeSet<Subspace> = enumerate_grassmannian(&f, 2)
        .unwrap()
        .into_iter()
        .filter(|v| v.subspace_polynomial().unwrap().coeff(1).is_zero())
        .collect();
    assert_eq!(patterned.len(), 5);
    let built: BTreeSet<Subspace> = cg_subspaces(&f, 2, 2).unwrap().into_iter().collect();
    assert_eq!(built, patterned);
    let fam = construct_cg(&f, 2, 2).unwrap();
    let kernels: BTreeSet<Subspace> = fam.members.iter().map(|p| kernel(p, &f).unwrap()).collect();
    assert_eq!(kernels, patterned);
}

#[test]
fn cg_structure_matches_full_scan_gf64() {
    // GF(4)-subspaces of GF(64) of dimension 4 over GF(2) are those whose
    // polynomial only uses x^[0], x^[2], x^[4].
    let f = gf(2, 6);
    let patterned: BTreeSet<Subspace> = enumerate_grassmannian(&f, 4)
        .unwrap()
        .into_iter()
        .filter(|v| {
            let p = v.subspace_polynomial().unwrap();
            p.coeff(1).is_zero() && p.coeff(3).is_zero()
        })
        .collect();
    let built: BTreeSet<Subspace> = cg_subspaces(&f, 4, 2).unwrap().into_iter().collect();
    assert_eq!(built, patterned);
}

#[test]
fn cg_rejects_bad_parameters() {
    let f = gf(2, 6);
    assert!(matches!(construct_cg(&f, 3, 2), Err(Error::DivisibilityViolation(_))));
    assert!(matches!(construct_cg(&f, 2, 1), Err(Error::DivisibilityViolation(_))));
    assert!(matches!(construct_cg(&f, 6, 2), Err(Error::DivisibilityViolation(_))));
    assert!(matches!(construct_cg(&gf(2, 24), 12, 2), Err(Error::BudgetExceeded { .. })));
}

#[test]
fn subspace_checks_agree_on_every_member() {
    for (q, n, r, g) in [(2u32, 4u32, 2u32, 2u32), (2, 6, 2, 2), (2, 6, 4, 2), (3, 4, 2, 2)] {
        let f = gf(q, n);
        for p in &construct_cg(&f, r, g).unwrap().members {
            let c = subspace_poly_checks(p).unwrap();
            assert!(c.all() && c.consistent(), "{c:?}");
        }
    }
    for (n, g, s) in [(6, 2, 1), (6, 3, 1), (8, 2, 2)] {
        for p in &construct_z(&gf(2, n), g, s).unwrap().members {
            assert!(subspace_poly_checks(p).unwrap().all());
        }
    }
    // x^[2] + x^[1] = (x^2 + x)^2 only vanishes on GF(2).
    let not = LinearizedPoly::new(&gf(2, 4), vec![Elem::ZERO, Elem::ONE, Elem::ONE]).unwrap();
    let c = subspace_poly_checks(&not).unwrap();
    assert!(c.consistent());
    assert!(!c.all());
}

#[test]
fn pigeonhole_buckets() {
    let f = gf(2, 4);
    let whole = pigeonhole_family(&construct_cg(&f, 2, 2).unwrap(), 0).unwrap();
    assert_eq!(whole.len(), 5);
    assert_eq!(whole.mutual_top, [Elem::ONE, Elem::ZERO]);
    assert!(whole.agreement_holds());
    assert_eq!(whole.kind, FamilyKind::Pigeonhole);

    let f = gf(2, 8);
    let cg = construct_cg(&f, 4, 2).unwrap();
    assert_eq!(cg.len(), 357);
    let class = pigeonhole_family(&cg, 1).unwrap();
    assert!(class.len() >= 2);
    assert!(class.agreement_holds());
    // Exhaustive bucketing oracle: no class is larger and ties go to the
    // smallest key.
    let mut sizes = std::collections::BTreeMap::<Vec<Elem>, usize>::new();
    for p in &cg.members {
        *sizes.entry(vec![p.coeff(4), p.coeff(3), p.coeff(2), p.coeff(1)]).or_default() += 1;
    }
    let max = *sizes.values().max().unwrap();
    let first = sizes.iter().find(|(_, &v)| v == max).unwrap().0;
    assert_eq!(class.len(), max);
    assert_eq!(&class.mutual_top, first);
}

#[test]
fn pigeonhole_size_bound() {
    for (q, n, r, g) in [(2u32, 4u32, 2u32, 2u32), (2, 6, 4, 2), (2, 6, 2, 2), (2, 8, 4, 2), (2, 8, 6, 2), (3, 4, 2, 2), (2, 6, 3, 3)] {
        let f = gf(q, n);
        let cg = construct_cg(&f, r, g).unwrap();
        let ell = (n - r) / g - 1;
        let class = pigeonhole_family(&cg, ell).unwrap();
        let total = gaussian_binomial(n / g, r / g, (q as u64).pow(g));
        let buckets = BigUint::from(q).pow(n * ell);
        let ceil = (total + &buckets - 1u32) / buckets;
        assert!(BigUint::from(class.len()) >= ceil, "({q},{n},{r},{g})");
        assert!(class.agreement_holds());
    }
}

#[test]
fn pigeonhole_degenerate_and_mismatch() {
    let f = gf(2, 6);
    let cg = construct_cg(&f, 2, 2).unwrap();
    // g(ℓ+1) = 4 >= r = 2: agreement on every coefficient.
    let class = pigeonhole_family(&cg, 1).unwrap();
    assert!(class.degenerate);
    assert_eq!(class.len(), 1);
    assert!(matches!(pigeonhole_family(&cg, 0), Err(Error::ParamMismatch(_))));
    let z = construct_z(&f, 2, 1).unwrap();
    assert!(matches!(pigeonhole_family(&z, 0), Err(Error::ParamMismatch(_))));
}

#[test]
fn explicit_base_examples() {
    let f = gf(2, 4);
    let p = explicit_base_poly(&f, 2, 1).unwrap();
    assert_eq!(p.serials(), [1, 0, 1]);
    let frob = LinearizedPoly::new(&f, vec![Elem::ONE, Elem::ZERO, Elem::ZERO, Elem::ZERO, Elem::ONE]).unwrap();
    assert!(divides_check(&p, &frob).unwrap());

    let f = gf(2, 6);
    let p = explicit_base_poly(&f, 2, 1).unwrap();
    assert_eq!(p.serials(), [1, 0, 1, 0, 1]);
    let k = kernel(&p, &f).unwrap();
    assert_eq!(k.dim(), 4);
    assert_eq!(k.elements().len(), 16);

    assert!(matches!(explicit_base_poly(&gf(2, 5), 2, 1), Err(Error::DivisibilityViolation(_))));
}

#[test]
fn representatives_examples() {
    let f = gf(2, 4);
    let g = f.primitive_element();
    let b = representatives_b(&f, 2).unwrap();
    assert_eq!(b, (0..5).map(|i| f.pow(g, i)).collect::<Vec<_>>());
    assert_eq!(representatives_b(&f, 4).unwrap(), [Elem::ONE]);
    assert!(matches!(representatives_b(&f, 3), Err(Error::DivisibilityViolation(_))));
    for (n, gs) in [(4u32, 2u32), (6, 2), (6, 3), (8, 4), (12, 4)] {
        let f = gf(2, n);
        let b = representatives_b(&f, gs).unwrap();
        let e = (1u64 << gs) - 1;
        for (i, &x) in b.iter().enumerate() {
            for &y in &b[..i] {
                assert_ne!(f.pow(f.div(x, y).unwrap(), e), Elem::ONE);
            }
        }
    }
}

#[test]
fn z_family_examples() {
    let f = gf(2, 4);
    let z = construct_z(&f, 2, 1).unwrap();
    assert_eq!(z.len(), 5);
    assert_eq!(z.members[0], explicit_base_poly(&f, 2, 1).unwrap());
    assert_eq!(z.mutual_top, [Elem::ONE, Elem::ZERO]);
    assert!(z.agreement_holds());
    let kernels: BTreeSet<Subspace> = z.members.iter().map(|p| kernel(p, &f).unwrap()).collect();
    assert_eq!(kernels.len(), 5);
    let orbit: BTreeSet<Subspace> = kernel(&z.members[0], &f).unwrap().orbit().unwrap().into_iter().collect();
    assert_eq!(kernels, orbit);
}

#[test]
fn z_sizes_and_coefficients() {
    for (n, g, s) in [(4u32, 2u32, 1u32), (6, 2, 1), (6, 3, 1), (8, 2, 1), (8, 2, 2), (9, 3, 1), (12, 2, 2)] {
        let f = gf(2, n);
        let z = construct_z(&f, g, s).unwrap();
        let gs = g * s;
        assert_eq!(z.len() as u64, ((1u64 << n) - 1) / ((1u64 << gs) - 1));
        let r = (n - gs) as usize;
        for (p, beta) in z.members.iter().zip(representatives_b(&f, gs).unwrap()) {
            for j in 0..=r {
                let expected = if j % gs as usize == 0 {
                    f.div(f.frobenius(beta, r), f.frobenius(beta, j)).unwrap()
                } else {
                    Elem::ZERO
                };
                assert_eq!(p.coeff(j), expected);
            }
        }
        let distinct: BTreeSet<Vec<u64>> = z.members.iter().map(|p| p.serials()).collect();
        assert_eq!(distinct.len(), z.len());
    }
}

#[test]
fn z_kernels_equal_cg_for_s_one() {
    for (n, r, g) in [(4u32, 2u32, 2u32), (6, 4, 2), (6, 3, 3), (8, 6, 2)] {
        let f = gf(2, n);
        let z = construct_z(&f, g, 1).unwrap();
        assert_eq!(z.params.r, r);
        let zk: BTreeSet<Subspace> = z.members.iter().map(|p| kernel(p, &f).unwrap()).collect();
        let cg: BTreeSet<Subspace> = cg_subspaces(&f, r, g).unwrap().into_iter().collect();
        assert_eq!(zk, cg, "n={n} r={r} g={g}");
    }
}

#[test]
fn shift_family_identity_and_embedding() {
    let f = gf(2, 4);
    let z = construct_z(&f, 2, 1).unwrap();
    let same = shift_family(&z, Elem::ONE, &f).unwrap();
    assert_eq!(same.members, z.members);
    assert_eq!(same.mutual_top, z.mutual_top);

    let big = gf(2, 8);
    for exp in [0u64, 1, 7, 100] {
        let beta = big.pow(big.primitive_element(), exp);
        let shifted = shift_family(&z, beta, &big).unwrap();
        assert_eq!(shifted.len(), z.len());
        assert!(shifted.agreement_holds());
        let emb = ranklab_core::Embedding::new(&f, &big).unwrap();
        for (p, orig) in shifted.members.iter().zip(&z.members) {
            assert_eq!(kernel(p, &big).unwrap().dim(), 2);
            assert!(subspace_poly_checks(p).unwrap().all());
            for j in 0..=2 {
                let factor = big.div(big.frobenius(beta, 2), big.frobenius(beta, j)).unwrap();
                assert_eq!(p.coeff(j), big.mul(factor, emb.apply(orig.coeff(j))));
            }
            // Kernel is β times the embedded kernel.
            let base: Vec<Elem> = kernel(orig, &f).unwrap().basis().iter().map(|&x| big.mul(beta, emb.apply(x))).collect();
            assert_eq!(kernel(p, &big).unwrap(), Subspace::span(&big, &base).unwrap());
        }
    }
    assert_eq!(shift_family(&z, Elem::ZERO, &big).unwrap_err(), Error::ZeroShift);
    assert!(matches!(shift_family(&z, Elem::ONE, &gf(2, 6)), Err(Error::NotASubfield { .. })));
}

#[test]
fn as_family_examples() {
    let f = gf(2, 4);
    let z = construct_z(&f, 2, 1).unwrap();
    let expanded: Vec<Poly> = z.members.iter().map(|p| p.to_ordinary(1 << 10).unwrap()).collect();
    let (ok, pivot) = is_as_family(&expanded, 4, 1).unwrap();
    assert!(ok);
    assert_eq!(pivot.unwrap(), Poly::monomial(&f, 4, Elem::ONE));
    assert!(!is_as_family(&expanded, 5, 1).unwrap().0);

    let single = [expanded[2].clone()];
    let roots = single[0].count_roots(1 << 10).unwrap();
    assert!(is_as_family(&single, roots, 0).unwrap().0);

    let a = Poly::monomial(&f, 3, Elem::ONE);
    let b = Poly::monomial(&f, 3, f.primitive_element());
    assert!(!is_as_family(&[a, b], 0, 2).unwrap().0);
}

#[test]
fn cg_family_is_as_family_with_top_pivot() {
    // Top-coefficient agreement makes the pigeonhole class an (q^r, q^(r-τ))-family.
    let f = gf(2, 6);
    let cg = construct_cg(&f, 4, 2).unwrap();
    let class = pigeonhole_family(&cg, 0).unwrap();
    let expanded: Vec<Poly> = class.members.iter().map(|p| p.to_ordinary(1 << 12).unwrap()).collect();
    let (ok, pivot) = is_as_family(&expanded, 16, 4).unwrap();
    assert!(ok);
    assert_eq!(pivot.unwrap().degree(), Some(16));
}
