mod common;

use common::{convolution_by_tensors, q, with_antipode_entry, with_comul_entry, Q};
use proptest::prelude::*;
use weakhopf::algebra::{
    check_algebra_axioms, check_almost_bialgebra, check_anti_bialgebra_morphism, check_coalgebra_axioms, check_coperfect,
    check_perfect, check_perfect_variant, check_weak_antipode, convolution, convolution3, coopposite, dual, opposite, star_cop,
    tensor_product, WeakHopfAlgebra,
};
use weakhopf::corpus;
use weakhopf::linalg::{LinMap, SparseVec};
use weakhopf::monoid::{monoid_algebra, FiniteMonoid};
use weakhopf::scalar::FieldSpec;

fn small_corpus() -> Vec<(&'static str, WeakHopfAlgebra)> {
    ["k1", "kSprime", "kY", "kZ2", "kZ3", "kS3e", "kS3e-dual"]
        .into_iter()
        .map(|n| (n, corpus::named(n, Q).unwrap()))
        .collect()
}

fn full_suite_passes(h: &WeakHopfAlgebra) -> bool {
    check_algebra_axioms(h).passed()
        && check_coalgebra_axioms(h).passed()
        && check_almost_bialgebra(h).passed()
        && check_weak_antipode(h).passed()
        && check_perfect(h).passed()
        && check_coperfect(h).passed()
}

#[test]
fn corpus_passes_every_axiom() {
    for (name, h) in small_corpus() {
        assert!(full_suite_passes(&h), "{name}");
        assert!(check_perfect_variant(&h).unwrap().passed(), "{name}");
    }
}

#[test]
fn convolution_agrees_with_tensor_contraction() {
    for (name, h) in small_corpus() {
        let id = LinMap::identity(Q, h.dim());
        let t = h.antipode();
        for (f, g) in [(&id, t), (t, &id), (t, t)] {
            assert_eq!(convolution(f, g, &h).unwrap(), convolution_by_tensors(f, g, &h), "{name}");
        }
        let three = convolution3(&id, t, &id, &h).unwrap();
        let nested = convolution(&convolution(&id, t, &h).unwrap(), &id, &h).unwrap();
        assert_eq!(three, nested, "{name}");
        assert_eq!(three, id, "{name}: id*T*id");
    }
}

#[test]
fn weak_antipode_laws_by_hand_on_s_prime() {
    // T = id and every basis element is group-like, so id*T*id(s) = s^3.
    let h = corpus::k_s_prime(Q);
    let id = LinMap::identity(Q, 2);
    let cube = convolution3(&id, &id, &id, &h).unwrap();
    assert_eq!(cube, id);
}

#[test]
fn s_prime_has_no_hopf_antipode() {
    // (S*id)(e) = S(e)e lies in span{e} for every linear S, so it never equals
    // the unit 1 = e_0 times eps(e) = 1.
    let h = corpus::k_s_prime(Q);
    let e = h.basis(1);
    for i in 0..2 {
        let product = h.mul(&h.basis(i), &e);
        assert!(product.get(0).is_none(), "right multiplication by e leaves span{{e}}");
    }
    // Delta(1) = 1⊗1 and eps is multiplicative, so this is a bialgebra that is not Hopf.
    assert!(h.is_bialgebra());
}

#[test]
fn projection_onto_unit_is_not_anti_multiplicative() {
    let h = corpus::k_cyclic(2, Q);
    let t = LinMap::from_columns(Q, 2, vec![SparseVec::basis(0, Q), SparseVec::zero()]).unwrap();
    let bad = h.with_antipode(t).unwrap();
    let report = check_anti_bialgebra_morphism(&bad);
    let anti = report.child("T(xy) = T(y)T(x)").unwrap();
    assert!(!anti.passed());
    // T(g g) = T(1) = 1 while T(g)T(g) = 0.
    assert!(anti.witnesses.iter().any(|w| w.index[..2] == [1, 1]));
}

#[test]
fn identity_is_anti_morphism_on_commutative_cocommutative() {
    for n in [1, 2, 3, 4] {
        let h = corpus::k_cyclic(n, Q);
        let id = h.with_antipode(LinMap::identity(Q, n)).unwrap();
        assert!(check_anti_bialgebra_morphism(&id).passed());
    }
}

#[test]
fn corrupted_antipode_fails_perfect_and_variants() {
    let h = corpus::k_cyclic(2, Q);
    let bad = with_antipode_entry(&h, 1, 1, q(2));
    assert!(!check_weak_antipode(&bad).passed());
    assert!(!check_perfect(&bad).passed());
    assert!(!check_perfect_variant(&bad).unwrap().passed());
}

#[test]
fn corrupted_comultiplication_fails_coperfect() {
    let h = corpus::k_cyclic(3, Q);
    let bad = with_comul_entry(&h, [1, 1, 2], q(1));
    let report = check_coperfect(&bad);
    assert!(!report.passed());
    assert!(report.first_witness().is_some());
}

#[test]
fn perfect_on_clifford_means_central_idempotents() {
    // z_s = s s^{-1}; check each is idempotent and central by direct scan.
    let m = corpus::s3_with_zero();
    let h = monoid_algebra(&m, Q).unwrap();
    for s in 0..m.len() {
        let inv = weakhopf::monoid::element_inverse(&m, s).unwrap();
        let z = m.mul(s, inv);
        assert_eq!(m.mul(z, z), z);
        assert!((0..m.len()).all(|b| m.mul(z, b) == m.mul(b, z)));
    }
    assert!(check_perfect(&h).passed());
}

#[test]
fn dual_is_an_involution() {
    for (name, h) in small_corpus() {
        let dd = dual(&dual(&h));
        assert!(dd.same_structure(&h), "{name}");
        assert_eq!(dd.antipode(), h.antipode(), "{name}");
        assert_eq!(dd.label(0), format!("{}^*^*", h.label(0)));
    }
}

#[test]
fn dual_of_trivial_and_z2() {
    let k1 = corpus::trivial_algebra(Q);
    assert!(dual(&k1).same_structure(&k1));
    let z2 = corpus::k_cyclic(2, Q);
    let d = dual(&z2);
    assert_eq!(d.dim(), 2);
    assert!(full_suite_passes(&d));
    // Delta-dual of group-likes: e^g e^h = delta_{gh} e^g.
    assert_eq!(d.mul(&d.basis(0), &d.basis(1)), SparseVec::zero());
    assert_eq!(d.mul(&d.basis(1), &d.basis(1)), d.basis(1));
    assert_eq!(d.unit(), &SparseVec::from_pairs(vec![(0, q(1)), (1, q(1))]));
}

#[test]
fn opposite_and_coopposite() {
    let z3 = corpus::k_cyclic(3, Q);
    assert!(opposite(&z3).unwrap().same_structure(&z3));
    let ks = corpus::k_s3_with_zero(Q);
    assert!(coopposite(&ks).unwrap().same_structure(&ks));
    let op = opposite(&ks).unwrap();
    assert!(!op.same_structure(&ks));
    assert!(check_weak_antipode(&op).passed());
    assert_eq!(op.label(0), format!("op:{}", ks.label(0)));
}

#[test]
fn star_cop_structure() {
    assert!(star_cop(&corpus::trivial_algebra(Q)).unwrap().same_structure(&corpus::trivial_algebra(Q)));
    let z2 = corpus::k_cyclic(2, Q);
    assert!(star_cop(&z2).unwrap().same_structure(&dual(&z2)));
    let ks = corpus::k_s3_with_zero(Q);
    let (sc, d) = (star_cop(&ks).unwrap(), dual(&ks));
    assert_eq!(sc.labels(), d.labels());
    assert_eq!(sc.mul_tensor(), d.mul_tensor());
    assert_ne!(sc.comul_tensor(), d.comul_tensor());
    assert_eq!(sc.comul_tensor(), d.comul_tensor().permute_axes(&[0, 2, 1]).unwrap());
    assert!(full_suite_passes(&sc));
}

#[test]
fn tensor_products() {
    let ks = corpus::k_s3_with_zero(Q);
    let with_one = tensor_product(&ks, &corpus::trivial_algebra(Q)).unwrap();
    assert_eq!(with_one.mul_tensor(), ks.mul_tensor());
    assert_eq!(with_one.comul_tensor(), ks.comul_tensor());
    assert_eq!(with_one.label(1), format!("({},1)", ks.label(1)));

    let small = corpus::monoid_tensor_dual(&corpus::s_prime(), Q).unwrap();
    assert_eq!(small.dim(), 4);
    assert!(full_suite_passes(&small));

    let big = corpus::k_s3_tensor_dual(Q);
    assert_eq!(big.dim(), 49);
    assert!(!big.is_commutative());
    assert!(!big.is_cocommutative());
    assert!(big.is_biperfect());
    // eps is multiplicative on kS, so both factors are bialgebras; only the
    // antipode is weak since the absorbing element has no inverse.
    assert!(big.is_bialgebra());
    assert_eq!(check_almost_bialgebra(&big).info_value("unit-coproduct"), Some("holds"));
}

#[test]
fn tensor_commutative_iff_both_factors() {
    let algebras = [corpus::k_cyclic(2, Q), corpus::k_s3_with_zero(Q), dual(&corpus::k_s3_with_zero(Q))];
    for a in &algebras {
        for b in &algebras {
            let t = tensor_product(a, b).unwrap();
            assert_eq!(t.is_commutative(), a.is_commutative() && b.is_commutative());
            assert_eq!(t.is_cocommutative(), a.is_cocommutative() && b.is_cocommutative());
        }
    }
}

#[test]
fn mixed_fields_rejected() {
    let a = corpus::k_cyclic(2, Q);
    let b = corpus::k_cyclic(2, FieldSpec::prime(5).unwrap());
    assert!(tensor_product(&a, &b).is_err());
}

#[test]
fn prime_field_corpus() {
    let f = FieldSpec::prime(7).unwrap();
    for n in ["kSprime", "kZ3", "kS3e"] {
        assert!(full_suite_passes(&corpus::named(n, f).unwrap()), "{n}");
    }
}

/// Weak Hopf algebras, perfect or not, on which the duality properties are
/// tested as biconditionals.
fn duality_cases() -> Vec<(String, WeakHopfAlgebra)> {
    let mut cases: Vec<(String, WeakHopfAlgebra)> = small_corpus().into_iter().map(|(n, h)| (n.to_string(), h)).collect();
    let s3 = monoid_algebra(&corpus::symmetric_group_3(), Q).unwrap();
    // T = id on kS_3 is invertible but neither anti-multiplicative nor a weak antipode.
    cases.push(("kS3 with T = id".into(), s3.with_antipode(LinMap::identity(Q, 6)).unwrap()));
    cases.push(("kZ3 with T scaled".into(), with_antipode_entry(&corpus::k_cyclic(3, Q), 2, 1, q(3))));
    cases
}

#[test]
fn duality_properties_as_biconditionals() {
    let cases = duality_cases();
    assert!(cases.iter().any(|(_, h)| !check_perfect(h).passed()), "some case must fail");
    for (name, h) in cases {
        let d = dual(&h);
        assert_eq!(check_perfect(&h).passed(), check_coperfect(&d).passed(), "{name}: perfect vs dual coperfect");
        assert_eq!(check_coperfect(&h).passed(), check_perfect(&d).passed(), "{name}: coperfect vs dual perfect");
        assert_eq!(h.is_biperfect(), d.is_biperfect(), "{name}: biperfect");
        if h.antipode_invertible() {
            assert_eq!(check_perfect(&h).passed(), check_perfect(&opposite(&h).unwrap()).passed(), "{name}: op");
            assert_eq!(check_coperfect(&h).passed(), check_coperfect(&coopposite(&h).unwrap()).passed(), "{name}: cop");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn group_algebras_pass_with_true_antipode(n in 1usize..7) {
        let h = monoid_algebra(&FiniteMonoid::cyclic(n), Q).unwrap();
        prop_assert!(full_suite_passes(&h));
        prop_assert!(h.is_bialgebra());
    }

    #[test]
    fn perturbed_antipode_is_caught(n in 2usize..6, row in 0usize..6, col in 0usize..6, v in 2i64..5) {
        let h = corpus::k_cyclic(n, Q);
        let (row, col) = (row % n, col % n);
        let bad = with_antipode_entry(&h, row, col, q(v));
        prop_assert!(!check_weak_antipode(&bad).passed());
    }
}
