mod common;

use common::{q, Q};
use proptest::prelude::*;
use weakhopf::corpus::{k_cyclic, k_s_prime, k_semilattice, named, s3_with_zero, NAMES};
use weakhopf::double::{quantum_double, r_matrix, DoubleOptions};
use weakhopf::error::Error;
use weakhopf::io::{
    AlgebraDoc, Artifact, CliffordSpecDoc, Document, DoubleDoc, FileRef, FormDoc, ModuleDoc, MonoidDoc, MonoidRef, ProvenanceDoc, RMatrixDoc, TensorDoc,
};
use weakhopf::monoid::{matrix_clifford_spec, FiniteMonoid};
use weakhopf::pairing::canonical_eval_pairing;
use weakhopf::repr::regular_module;
use weakhopf::scalar::FieldSpec;
use weakhopf::tensor::SparseTensor;

/// Serializes, parses and serializes again; both texts must agree.
fn reparse(doc: &Document) -> Document {
    let text = doc.to_json();
    let back = Document::from_json(&text).unwrap();
    assert_eq!(back.to_json(), text);
    back
}

#[test]
fn monoids_round_trip() {
    let m = s3_with_zero();
    let Document::Monoid(doc) = reparse(&Document::Monoid(MonoidDoc::from_monoid(&m))) else { panic!() };
    assert_eq!(doc.to_monoid().unwrap(), m);
}

#[test]
fn monoid_document_shape() {
    let v = Document::Monoid(MonoidDoc::from_monoid(&FiniteMonoid::cyclic(2))).to_value();
    assert_eq!(v["kind"], "monoid");
    assert_eq!(v["schema-version"], 1);
    assert_eq!(v["identity"], 0);
    assert_eq!(v["table"], serde_json::json!([[0, 1], [1, 0]]));
}

#[test]
fn clifford_spec_round_trips_and_resolves_files() {
    let spec = matrix_clifford_spec().unwrap();
    let Document::CliffordSpec(doc) = reparse(&Document::CliffordSpec(CliffordSpecDoc::from_spec(&spec))) else { panic!() };
    let no_files = |_: &FileRef| -> weakhopf::error::Result<FiniteMonoid> { unreachable!() };
    assert_eq!(doc.to_spec(&no_files).unwrap(), spec);

    let mut by_ref = doc.clone();
    by_ref.lattice = MonoidRef::File(FileRef {
        file: "lattice.json".into(),
        sha256: None,
    });
    let lattice = spec.lattice.clone();
    let load = |r: &FileRef| {
        assert_eq!(r.file, "lattice.json");
        Ok(lattice.clone())
    };
    assert_eq!(by_ref.to_spec(&load).unwrap(), spec);
    assert!(Document::from_json(&Document::CliffordSpec(by_ref).to_json()).is_ok());
}

#[test]
fn corpus_algebras_round_trip() {
    for name in NAMES {
        let h = named(name, Q).unwrap();
        let Document::Algebra(doc) = reparse(&Document::Algebra(AlgebraDoc::from_weak(&h))) else { panic!() };
        let back = doc.to_weak().unwrap();
        assert!(back.base().same_structure(h.base()), "{name}");
        assert_eq!(back.antipode(), h.antipode(), "{name}");
        assert_eq!(back.labels(), h.labels(), "{name}");
    }
}

#[test]
fn algebras_over_prime_fields_round_trip() {
    let h = k_cyclic(3, FieldSpec::prime(5).unwrap());
    let art = Artifact::new(
        Document::Algebra(AlgebraDoc::from_weak(&h)),
        ProvenanceDoc {
            construction: "monoid-algebra".into(),
            inputs: [("monoid".to_string(), "abc".to_string())].into(),
        },
    );
    let text = art.to_json();
    assert!(text.contains("\"Fp:5\""));
    let back = Artifact::from_json(&text).unwrap();
    assert_eq!(back, art);
    assert_eq!(back.to_json(), text);
    assert_eq!(back.provenance.as_ref().unwrap().inputs["monoid"], "abc");
    let Document::Algebra(doc) = back.document else { panic!() };
    assert!(doc.to_weak().unwrap().base().same_structure(h.base()));
    // Plain documents ignore the block.
    assert!(Document::from_json(&text).is_ok());
    assert_eq!(Artifact::from_json(&Document::Monoid(MonoidDoc::from_monoid(&FiniteMonoid::trivial())).to_json()).unwrap().provenance, None);
}

#[test]
fn doubles_round_trip_with_provenance() {
    for h in [k_s_prime(Q), k_semilattice(Q)] {
        let d = quantum_double(&h, DoubleOptions::default()).unwrap().with_source_hash("feed");
        let Document::Double(doc) = reparse(&Document::Double(DoubleDoc::from_double(&d))) else { panic!() };
        assert!(doc.product.is_some());
        let back = doc.to_double(DoubleOptions::default()).unwrap();
        assert!(back.algebra().same_structure(d.algebra()));
        assert_eq!(back.provenance(), d.provenance());
        assert_eq!(r_matrix(&back).unwrap(), r_matrix(&d).unwrap());
    }
}

#[test]
fn double_without_table_is_rebuilt() {
    let d = quantum_double(&k_cyclic(2, Q), DoubleOptions::default()).unwrap();
    let mut doc = DoubleDoc::from_double(&d);
    doc.product = None;
    let back = doc.to_double(DoubleOptions::default()).unwrap();
    assert!(back.algebra().same_structure(d.algebra()));
    doc.construction = "bicrossed".into();
    assert!(matches!(doc.to_double(DoubleOptions::default()), Err(Error::Format(_))));
}

#[test]
fn r_matrices_forms_modules_and_tensors_round_trip() {
    let h = k_s_prime(Q);
    let d = quantum_double(&h, DoubleOptions::default()).unwrap();

    let r = r_matrix(&d).unwrap();
    let Document::RMatrix(doc) = reparse(&Document::RMatrix(RMatrixDoc::from_r(&r))) else { panic!() };
    assert_eq!(doc.to_r().unwrap(), r);

    let form = canonical_eval_pairing(&h);
    let Document::Form(doc) = reparse(&Document::Form(FormDoc::from_form(&form))) else { panic!() };
    assert_eq!(doc.to_form().unwrap(), form);

    let act = regular_module(&d);
    let algebra = FileRef {
        file: "double.json".into(),
        sha256: Some("00".into()),
    };
    let Document::Module(doc) = reparse(&Document::Module(ModuleDoc::from_module(&act, algebra))) else { panic!() };
    assert_eq!(doc.to_module().unwrap(), act);

    let t = SparseTensor::from_entries(Q, vec![2, 3], vec![(vec![0, 2], q(-3) * q(1)), (vec![1, 0], Q.parse("5/7").unwrap())]).unwrap();
    let Document::Tensor(doc) = reparse(&Document::Tensor(TensorDoc::from_tensor(&t))) else { panic!() };
    assert_eq!(doc.to_tensor().unwrap(), t);
}

#[test]
fn malformed_documents_are_rejected() {
    let good = Document::Tensor(TensorDoc::from_tensor(&SparseTensor::identity(Q, 2))).to_json();
    let cases = [
        "[]".to_string(),
        good.replace("\"kind\": \"tensor\"", "\"kind\": \"widget\""),
        good.replace("\"schema-version\": 1", "\"schema-version\": 9"),
        good.replace("\"kind\": \"tensor\",", ""),
        good.replace("\"1\"", "1"),
        good.replace("[\n      0,\n      0,", "[\n      0,"),
    ];
    for text in &cases {
        assert_ne!(text, &good);
        let parsed = Document::from_json(text).and_then(|d| match d {
            Document::Tensor(t) => t.to_tensor().map(|_| ()),
            _ => Ok(()),
        });
        assert!(parsed.is_err(), "accepted:\n{text}");
    }
    assert!(matches!(Document::from_json("{"), Err(Error::Format(_))));
    let bad_scalar = good.replace("\"1\"", "\"one\"");
    let Document::Tensor(t) = Document::from_json(&bad_scalar).unwrap() else { panic!() };
    assert!(matches!(t.to_tensor(), Err(Error::ScalarParse { .. })));
}

proptest! {
    #[test]
    fn random_tensors_round_trip(
        entries in proptest::collection::vec((0usize..4, 0usize..3, 0usize..5, -50i64..50, 1i64..20), 0..20),
        prime in proptest::bool::ANY,
    ) {
        let field = if prime { FieldSpec::prime(7).unwrap() } else { Q };
        let t = SparseTensor::from_entries(
            field,
            vec![4, 3, 5],
            entries.into_iter().map(|(i, j, k, n, d)| (vec![i, j, k], field.from_i64(n) * field.from_i64(d).inverse().unwrap_or_else(|_| field.one()))),
        ).unwrap();
        let doc = Document::Tensor(TensorDoc::from_tensor(&t));
        let text = doc.to_json();
        let Document::Tensor(back) = Document::from_json(&text).unwrap() else { panic!() };
        prop_assert_eq!(back.to_tensor().unwrap(), t);
        prop_assert_eq!(Document::Tensor(back).to_json(), text);
    }
}
