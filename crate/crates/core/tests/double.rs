mod common;

use common::{q, Q};
use proptest::prelude::*;
use weakhopf::algebra::{check_almost_bialgebra, star_cop, WeakHopfAlgebra};
use weakhopf::corpus::{k_cyclic, k_s3_with_zero, k_s3_tensor_dual, k_s_prime, k_semilattice, s3_with_zero, trivial_algebra};
use weakhopf::double::{
    build_quasi_bicrossed, check_action_closures, check_bicrossed_structure, check_closed_form, check_inverse, check_quasi_braided,
    check_quasi_cocommutative, check_quasi_matched, check_qybe, check_regular, derive_actions, quantum_double, r_bar, r_matrix,
    DoubleKernel, DoubleOptions, QuasiBicrossedProduct, QuasiMatchedPair, QuasiRMatrix, DEFAULT_MAX_TERMS,
};
use weakhopf::error::Error;
use weakhopf::linalg::{LinMap, SparseVec};
use weakhopf::monoid::element_inverse;
use weakhopf::pairing::{canonical_eval_pairing, BilinearForm};

fn double(h: &WeakHopfAlgebra) -> QuasiBicrossedProduct {
    quantum_double(h, DoubleOptions::default()).unwrap()
}

fn generic_double(h: &WeakHopfAlgebra) -> QuasiBicrossedProduct {
    let pair = derive_actions(&star_cop(h).unwrap(), h, &canonical_eval_pairing(h)).unwrap();
    build_quasi_bicrossed(&pair).unwrap()
}

fn desk_corpus() -> Vec<(&'static str, WeakHopfAlgebra)> {
    vec![
        ("kSprime", k_s_prime(Q)),
        ("kY", k_semilattice(Q)),
        ("kZ2", k_cyclic(2, Q)),
        ("kZ3", k_cyclic(3, Q)),
    ]
}

#[test]
fn trivial_double_and_actions() {
    let h = trivial_algebra(Q);
    let pair = derive_actions(&star_cop(&h).unwrap(), &h, &canonical_eval_pairing(&h)).unwrap();
    assert_eq!(pair.left_basis(0, 0), &SparseVec::basis(0, Q));
    assert_eq!(pair.right_basis(0, 0), &SparseVec::basis(0, Q));
    let d = double(&h);
    assert_eq!(d.dim(), 1);
    assert_eq!(d.mul_basis(0, 0).into_owned(), vec![(0, q(1))]);
    let r = r_matrix(&d).unwrap();
    assert_eq!(r.coordinates(), vec![((0, 0), q(1))]);
    assert_eq!(r_bar(&d).unwrap(), r);
    assert!(check_quasi_cocommutative(&d, &r).passed());
    assert!(check_quasi_braided(&d, &r).passed());
    assert!(check_qybe(&d, &r, DEFAULT_MAX_TERMS).unwrap().passed());
    assert!(check_regular(&d, &r, &r).passed());
}

#[test]
fn derived_actions_form_quasi_matched_pairs() {
    for (name, h) in desk_corpus().into_iter().chain([("kS3e", k_s3_with_zero(Q))]) {
        let form = canonical_eval_pairing(&h);
        let pair = derive_actions(&star_cop(&h).unwrap(), &h, &form).unwrap();
        let report = check_quasi_matched(&pair);
        assert!(report.passed(), "{name}:\n{}", report.to_text());
        let closures = check_action_closures(&pair, &form).unwrap();
        assert!(closures.passed(), "{name}:\n{}", closures.to_text());
    }
}

#[test]
fn derived_actions_on_noncocommutative_tensor_pass() {
    let h = k_s3_tensor_dual(Q);
    let pair = derive_actions(&star_cop(&h).unwrap(), &h, &canonical_eval_pairing(&h)).unwrap();
    let report = check_quasi_matched(&pair);
    assert!(report.passed(), "{}", report.to_text());
}

/// For group-like `g` in `kS` acting on `H^{*cop}`, the single Sweedler
/// term of `g` gives `g|>e^x = Σ_{v : g⁻¹vg = x} e^v`.
#[test]
fn group_like_left_action_is_conjugation() {
    let m = s3_with_zero();
    let h = k_s3_with_zero(Q);
    let pair = derive_actions(&star_cop(&h).unwrap(), &h, &canonical_eval_pairing(&h)).unwrap();
    for g in 0..m.len() {
        let gi = element_inverse(&m, g).unwrap();
        for x in 0..m.len() {
            let expected = SparseVec::from_pairs((0..m.len()).filter(|&v| m.mul(m.mul(gi, v), g) == x).map(|v| (v as u32, q(1))).collect());
            assert_eq!(pair.left_basis(g as u32, x as u32), &expected, "g={g} x={x}");
        }
    }
}

#[test]
fn corrupted_actions_fail_with_witness() {
    let h = k_cyclic(3, Q);
    let pair = derive_actions(&star_cop(&h).unwrap(), &h, &canonical_eval_pairing(&h)).unwrap();
    let mut left = pair.left_tensor();
    left.add_entry(vec![1, 1, 2], &q(1)).unwrap();
    let bad = QuasiMatchedPair::from_tensors(pair.x().clone(), pair.a().clone(), &left, &pair.right_tensor()).unwrap();
    let report = check_quasi_matched(&bad);
    assert!(!report.passed());
    let compat = report.child("compatibility").unwrap();
    let failing: Vec<&str> = compat.children.iter().filter(|c| !c.passed()).map(|c| c.name.as_str()).collect();
    assert!(
        failing.contains(&"a|>(xy) = (a'|>x')((a''<|x'')|>y)") || failing.contains(&"(a'<|x')⊗(a''|>x'') = (a''<|x'')⊗(a'|>x')"),
        "{failing:?}"
    );
    assert!(report.first_witness().is_some());
    assert!(matches!(build_quasi_bicrossed(&bad), Err(Error::QuasiMatchedFailed(_))));
}

#[test]
fn derive_actions_preconditions() {
    let h = k_cyclic(3, Q);
    let x = star_cop(&h).unwrap();
    let bad_form = BilinearForm::identity(Q, 3).with_entry(0, 1, q(1));
    assert!(matches!(derive_actions(&x, &h, &bad_form), Err(Error::SkewPairNotCertified(_))));
    let singular = h.with_antipode(LinMap::zero(Q, 3, 3)).unwrap();
    assert!(matches!(derive_actions(&x, &singular, &canonical_eval_pairing(&h)), Err(Error::AntipodeNotInvertible)));
}

#[test]
fn direct_and_generic_doubles_agree() {
    for (name, h) in desk_corpus() {
        let direct = double(&h);
        let generic = generic_double(&h);
        assert_eq!(direct.labels(), generic.labels(), "{name}");
        assert_eq!(direct.mul_tensor(), generic.mul_tensor(), "{name}");
        assert_eq!(direct.unit_tensor(), generic.unit_tensor(), "{name}");
        assert_eq!(direct.comul_tensor(), generic.comul_tensor(), "{name}");
        assert_eq!(direct.counit_tensor(), generic.counit_tensor(), "{name}");
    }
}

#[test]
fn doubles_are_almost_bialgebras_with_multiplicative_factors() {
    for (name, h) in desk_corpus() {
        let d = double(&h);
        let report = check_almost_bialgebra(&d);
        assert!(report.passed(), "{name}:\n{}", report.to_text());
        let structure = check_bicrossed_structure(&d);
        assert!(structure.passed(), "{name}:\n{}", structure.to_text());
    }
}

/// `D(kZ_2)` with `g = g^1`: `(φ_g∞g)(φ_g∞g) = φ_g∞1`, `(φ_g∞g)(φ_1∞1) = 0`.
#[test]
fn z2_double_by_hand() {
    let d = double(&k_cyclic(2, Q));
    let idx = |p: u32, a: u32| d.index(p, a);
    let gg = d.mul_basis(idx(1, 1), idx(1, 1)).into_owned();
    assert_eq!(gg, vec![(idx(1, 0), q(1))]);
    assert!(d.mul_basis(idx(1, 1), idx(0, 0)).is_empty());
    assert_eq!(d.label(idx(1, 1) as usize), "g^1^*∞g^1");
}

#[test]
fn r_matrices_on_desk_doubles() {
    for (name, h) in desk_corpus() {
        let d = double(&h);
        let r = r_matrix(&d).unwrap();
        let rb = r_bar(&d).unwrap();
        assert_eq!(r.monomial_count(), h.dim(), "{name}");
        let qcc = check_quasi_cocommutative(&d, &r);
        assert!(qcc.passed(), "{name}:\n{}", qcc.to_text());
        let braided = check_quasi_braided(&d, &r);
        assert!(braided.passed(), "{name}:\n{}", braided.to_text());
        let qybe = check_qybe(&d, &r, DEFAULT_MAX_TERMS).unwrap();
        assert!(qybe.passed(), "{name}:\n{}", qybe.to_text());
        let regular = check_regular(&d, &r, &rb);
        assert!(regular.passed(), "{name}:\n{}", regular.to_text());
    }
}

#[test]
fn r_bar_versus_r() {
    let d = double(&k_s_prime(Q));
    assert_eq!(r_bar(&d).unwrap(), r_matrix(&d).unwrap());
    let d = double(&k_cyclic(3, Q));
    assert_ne!(r_bar(&d).unwrap().to_tensor(), r_matrix(&d).unwrap().to_tensor());
}

#[test]
fn hopf_doubles_have_invertible_r() {
    for n in [2, 3] {
        let d = double(&k_cyclic(n, Q));
        let report = check_inverse(&d, &r_matrix(&d).unwrap(), &r_bar(&d).unwrap());
        assert!(report.passed(), "Z{n}:\n{}", report.to_text());
    }
    let d = double(&k_s_prime(Q));
    assert!(!check_inverse(&d, &r_matrix(&d).unwrap(), &r_bar(&d).unwrap()).passed());
}

#[test]
fn perturbed_r_fails() {
    let d = double(&k_s_prime(Q));
    let r = r_matrix(&d).unwrap();
    assert!(!check_quasi_braided(&d, &r.without_term(0)).passed());
    assert!(!check_quasi_cocommutative(&d, &r.without_term(1)).passed());
    let mut terms = r.terms().to_vec();
    terms.push((terms[0].0.clone(), terms[1].1.clone()));
    let extra = QuasiRMatrix::new(Q, d.dim(), terms);
    assert!(!check_qybe(&d, &extra, DEFAULT_MAX_TERMS).unwrap().passed());
    assert!(!check_quasi_cocommutative(&d, &r.with_scaled_term(0, &q(2))).passed());
}

/// In `D(kS')` the `e` monomial alone satisfies both leg identities:
/// `Δ(L_e) = L_e⊗L_e`, `R_eR_e = R_e`, and `Δ(R_1) = R_1⊗R_1`.
#[test]
fn dropping_e_monomial_keeps_leg_identities() {
    let d = double(&k_s_prime(Q));
    let r = r_matrix(&d).unwrap();
    assert!(check_quasi_braided(&d, &r.without_term(1)).passed());
    assert!(!check_quasi_cocommutative(&d, &r.without_term(1)).passed());
}

#[test]
fn r_matrix_needs_double_provenance() {
    let d = generic_double(&k_s_prime(Q));
    assert_eq!(r_matrix(&d), Err(Error::MissingProvenance));
    assert_eq!(r_bar(&d), Err(Error::MissingProvenance));
}

#[test]
fn qybe_guard() {
    let d = double(&k_cyclic(3, Q));
    let r = r_matrix(&d).unwrap();
    assert!(matches!(check_qybe(&d, &r, 26), Err(Error::TooManyTerms { needed: 27, .. })));
    assert!(check_qybe(&d, &r, 27).unwrap().passed());
}

#[test]
fn double_preconditions() {
    let h = k_cyclic(3, Q);
    let singular = h.with_antipode(LinMap::zero(Q, 3, 3)).unwrap();
    assert!(matches!(quantum_double(&singular, DoubleOptions::default()), Err(Error::AntipodeNotInvertible)));

    // Invertible but not an anti-morphism: T = 2·id.
    let doubled = LinMap::from_columns(Q, 3, (0..3).map(|i| SparseVec::from_pairs(vec![(i, q(2))])).collect()).unwrap();
    let scaled = h.with_antipode(doubled).unwrap();
    assert!(matches!(quantum_double(&scaled, DoubleOptions::default()), Err(Error::NotBiperfect(_))));
    let forced = quantum_double(&scaled, DoubleOptions { force: true, ..Default::default() }).unwrap();
    let r = r_matrix(&forced).unwrap();
    assert!(!check_quasi_cocommutative(&forced, &r).passed());

    let opts = DoubleOptions { max_terms: 26, ..Default::default() };
    assert!(matches!(quantum_double(&h, opts), Err(Error::TooManyTerms { needed: 27, limit: 26, .. })));
}

#[test]
fn closed_form_on_small_clifford_monoid() {
    let m = s3_with_zero();
    let kernel = DoubleKernel::new(&k_s3_with_zero(Q)).unwrap();
    let report = check_closed_form(&kernel, &m, 50, 7).unwrap();
    assert!(report.passed(), "{}", report.to_text());
    let nonzero: usize = report.info_value("nonzero").unwrap().parse().unwrap();
    assert!(nonzero >= 25);
}

#[test]
fn lazy_kernel_matches_materialized_double() {
    let h = k_s3_with_zero(Q);
    let d = double(&h);
    assert!(!d.is_lazy());
    let kernel = DoubleKernel::new(&h).unwrap();
    use weakhopf::algebra::LazyProduct;
    for i in (0..d.dim() as u32).step_by(5) {
        for j in (0..d.dim() as u32).step_by(3) {
            assert_eq!(kernel.product(i, j), d.mul_basis(i, j).into_owned());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn cyclic_doubles_are_quasitriangular(n in 1usize..5) {
        let d = double(&k_cyclic(n, Q));
        let r = r_matrix(&d).unwrap();
        prop_assert!(check_quasi_cocommutative(&d, &r).passed());
        prop_assert!(check_qybe(&d, &r, DEFAULT_MAX_TERMS).unwrap().passed());
        prop_assert!(check_inverse(&d, &r, &r_bar(&d).unwrap()).passed());
    }

    #[test]
    fn scaled_monomial_breaks_braiding(n in 2usize..5, i in 0usize..4, c in 2i64..6) {
        let d = double(&k_cyclic(n, Q));
        let r = r_matrix(&d).unwrap().with_scaled_term(i % n, &q(c));
        prop_assert!(!check_quasi_braided(&d, &r).passed());
    }
}
