//! Canonical JSON documents.
//!
//! Every artifact is one JSON object with a `"kind"` discriminator and a
//! `"schema-version"`. Keys are sorted, scalars are strings and sparse data
//! is a list of `[i, j, ..., "scalar"]` entries in lexicographic order, so
//! equal values serialize to identical bytes.

use std::collections::BTreeMap;
use std::fmt;

use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::algebra::{AlmostBialgebra, WeakHopfAlgebra};
use crate::double::{quantum_double, Construction, DoubleOptions, Provenance, QuasiBicrossedProduct, QuasiRMatrix};
use crate::error::{Error, Result};
use crate::linalg::{LinMap, SparseVec};
use crate::monoid::{CliffordSpec, FiniteMonoid};
use crate::pairing::BilinearForm;
use crate::repr::ModuleAction;
use crate::scalar::{FieldSpec, Scalar};
use crate::tensor::SparseTensor;

pub const SCHEMA_VERSION: u64 = 1;

fn format_err(msg: impl fmt::Display) -> Error {
    Error::Format(msg.to_string())
}

/// One sparse coordinate: a multi-index and an exact scalar.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry {
    pub index: Vec<usize>,
    pub value: String,
}

impl Entry {
    fn new(index: Vec<usize>, value: &Scalar) -> Self {
        Entry {
            index,
            value: value.to_string(),
        }
    }
}

impl Serialize for Entry {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.index.len() + 1))?;
        for i in &self.index {
            seq.serialize_element(i)?;
        }
        seq.serialize_element(&self.value)?;
        seq.end()
    }
}

impl<'de> Deserialize<'de> for Entry {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct EntryVisitor;

        impl<'de> Visitor<'de> for EntryVisitor {
            type Value = Entry;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an array of indices ending in a scalar string")
            }

            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> std::result::Result<Entry, A::Error> {
                let mut index = Vec::new();
                while let Some(v) = seq.next_element::<Value>()? {
                    match v {
                        Value::Number(n) => index.push(n.as_u64().ok_or_else(|| de::Error::custom("negative or fractional index"))? as usize),
                        Value::String(value) => {
                            if seq.next_element::<Value>()?.is_some() {
                                return Err(de::Error::custom("scalar must be the last element"));
                            }
                            return Ok(Entry { index, value });
                        }
                        _ => return Err(de::Error::custom("entries hold indices and one scalar string")),
                    }
                }
                Err(de::Error::custom("entry has no scalar"))
            }
        }

        d.deserialize_seq(EntryVisitor)
    }
}

fn tensor_entries(t: &SparseTensor) -> Vec<Entry> {
    t.iter().map(|(i, v)| Entry::new(i.to_vec(), v)).collect()
}

fn vec_entries(v: &SparseVec) -> Vec<Entry> {
    v.iter().map(|(i, c)| Entry::new(vec![i as usize], c)).collect()
}

fn parse_field(text: &str) -> Result<FieldSpec> {
    text.parse()
}

fn parse_tensor(field: FieldSpec, shape: Vec<usize>, entries: &[Entry]) -> Result<SparseTensor> {
    let mut t = SparseTensor::zeros(field, shape);
    for e in entries {
        if e.index.len() != t.rank() {
            return Err(format_err(format!("entry {:?} has {} indices, expected {}", e.index, e.index.len(), t.rank())));
        }
        t.add_entry(e.index.clone(), &field.parse(&e.value)?)?;
    }
    Ok(t)
}

fn parse_vec(field: FieldSpec, dim: usize, entries: &[Entry]) -> Result<SparseVec> {
    let t = parse_tensor(field, vec![dim], entries)?;
    Ok(SparseVec::from_pairs(t.iter().map(|(i, c)| (i[0] as u32, c.clone())).collect()))
}

/// Where a document came from: the construction and the hashes of its inputs.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct ProvenanceDoc {
    pub construction: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub inputs: BTreeMap<String, String>,
}

/// A reference to another artifact file, pinned by its SHA-256.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct FileRef {
    pub file: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sha256: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct MonoidDoc {
    pub elements: Vec<String>,
    pub identity: usize,
    pub table: Vec<Vec<usize>>,
}

impl MonoidDoc {
    pub fn from_monoid(m: &FiniteMonoid) -> Self {
        MonoidDoc {
            elements: m.elements().to_vec(),
            identity: m.identity(),
            table: m.table_rows(),
        }
    }

    pub fn to_monoid(&self) -> Result<FiniteMonoid> {
        FiniteMonoid::new(self.elements.clone(), self.table.clone(), self.identity)
    }
}

/// A monoid given inline or by file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MonoidRef {
    Inline(MonoidDoc),
    File(FileRef),
}

impl MonoidRef {
    fn resolve(&self, load: &dyn Fn(&FileRef) -> Result<FiniteMonoid>) -> Result<FiniteMonoid> {
        match self {
            MonoidRef::Inline(doc) => doc.to_monoid(),
            MonoidRef::File(r) => load(r),
        }
    }
}

/// Homomorphisms are keyed `"u>v"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct CliffordSpecDoc {
    pub lattice: MonoidRef,
    pub groups: BTreeMap<String, MonoidRef>,
    pub homs: BTreeMap<String, Vec<usize>>,
}

impl CliffordSpecDoc {
    pub fn from_spec(spec: &CliffordSpec) -> Self {
        CliffordSpecDoc {
            lattice: MonoidRef::Inline(MonoidDoc::from_monoid(&spec.lattice)),
            groups: spec.groups.iter().map(|(k, g)| (k.clone(), MonoidRef::Inline(MonoidDoc::from_monoid(g)))).collect(),
            homs: spec.homs.iter().map(|((u, v), m)| (format!("{u}>{v}"), m.clone())).collect(),
        }
    }

    /// `load` resolves monoids given by file reference.
    pub fn to_spec(&self, load: &dyn Fn(&FileRef) -> Result<FiniteMonoid>) -> Result<CliffordSpec> {
        let groups = self.groups.iter().map(|(k, g)| Ok((k.clone(), g.resolve(load)?))).collect::<Result<_>>()?;
        let homs = self
            .homs
            .iter()
            .map(|(k, m)| {
                let (u, v) = k.split_once('>').ok_or_else(|| format_err(format!("homomorphism key {k:?} is not of the form u>v")))?;
                Ok(((u.to_string(), v.to_string()), m.clone()))
            })
            .collect::<Result<_>>()?;
        Ok(CliffordSpec {
            lattice: self.lattice.resolve(load)?,
            groups,
            homs,
        })
    }
}

/// Structure constants: `mul` holds `[x, y, out]`, `comul` holds
/// `[in, left, right]` and `antipode` holds `[out, in]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct AlgebraDoc {
    pub field: String,
    pub labels: Vec<String>,
    pub mul: Vec<Entry>,
    pub unit: Vec<Entry>,
    pub comul: Vec<Entry>,
    pub counit: Vec<Entry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub antipode: Option<Vec<Entry>>,
}

impl AlgebraDoc {
    /// Lazy products are tabulated first.
    pub fn from_almost(a: &AlmostBialgebra) -> Self {
        let table;
        let a = if a.is_lazy() {
            table = a.materialize();
            &table
        } else {
            a
        };
        AlgebraDoc {
            field: a.field().to_string(),
            labels: a.labels().to_vec(),
            mul: tensor_entries(&a.mul_tensor()),
            unit: vec_entries(a.unit()),
            comul: tensor_entries(&a.comul_tensor()),
            counit: tensor_entries(&a.counit_tensor()),
            antipode: None,
        }
    }

    pub fn from_weak(h: &WeakHopfAlgebra) -> Self {
        AlgebraDoc {
            antipode: Some(tensor_entries(&h.antipode().to_tensor())),
            ..AlgebraDoc::from_almost(h.base())
        }
    }

    pub fn field(&self) -> Result<FieldSpec> {
        parse_field(&self.field)
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn to_almost(&self) -> Result<AlmostBialgebra> {
        let (f, d) = (self.field()?, self.dim());
        AlmostBialgebra::from_tensors(
            Some(self.labels.clone()),
            &parse_tensor(f, vec![d, d, d], &self.mul)?,
            &parse_tensor(f, vec![d], &self.unit)?,
            &parse_tensor(f, vec![d, d, d], &self.comul)?,
            &parse_tensor(f, vec![d], &self.counit)?,
        )
    }

    pub fn to_weak(&self) -> Result<WeakHopfAlgebra> {
        let entries = self.antipode.as_ref().ok_or_else(|| format_err("algebra has no antipode"))?;
        let (f, d) = (self.field()?, self.dim());
        WeakHopfAlgebra::new(self.to_almost()?, LinMap::from_tensor(&parse_tensor(f, vec![d, d], entries)?)?)
    }
}

/// A quasi-bicrossed product `X∞A`. The product table is omitted for lazy
/// doubles and rebuilt from `A` on load.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct DoubleDoc {
    pub construction: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source_hash: Option<String>,
    pub x: AlgebraDoc,
    pub a: AlgebraDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub product: Option<AlgebraDoc>,
}

fn construction_name(c: Construction) -> &'static str {
    match c {
        Construction::Bicrossed => "bicrossed",
        Construction::Double => "double",
    }
}

impl DoubleDoc {
    pub fn from_double(d: &QuasiBicrossedProduct) -> Self {
        DoubleDoc {
            construction: construction_name(d.provenance().construction).into(),
            source_hash: d.provenance().source_hash.clone(),
            x: AlgebraDoc::from_weak(d.x()),
            a: AlgebraDoc::from_weak(d.a()),
            product: (!d.algebra().is_lazy()).then(|| AlgebraDoc::from_almost(d.algebra())),
        }
    }

    pub fn to_double(&self, opts: DoubleOptions) -> Result<QuasiBicrossedProduct> {
        let construction = match self.construction.as_str() {
            "double" => Construction::Double,
            "bicrossed" => Construction::Bicrossed,
            other => return Err(format_err(format!("unknown construction {other:?}"))),
        };
        let a = self.a.to_weak()?;
        let d = match (&self.product, construction) {
            (Some(p), _) => QuasiBicrossedProduct::from_parts(
                p.to_almost()?,
                self.x.to_weak()?,
                a,
                Provenance {
                    construction,
                    source_hash: None,
                },
            )?,
            (None, Construction::Double) => quantum_double(&a, opts)?,
            (None, Construction::Bicrossed) => return Err(format_err("bicrossed product without a product table")),
        };
        Ok(match &self.source_hash {
            Some(h) => d.with_source_hash(h.clone()),
            None => d,
        })
    }
}

/// `R = Σ left⊗right`, one `[left, right]` pair of coordinate lists per term.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct RMatrixDoc {
    pub field: String,
    pub dim: usize,
    pub terms: Vec<(Vec<Entry>, Vec<Entry>)>,
}

impl RMatrixDoc {
    pub fn from_r(r: &QuasiRMatrix) -> Self {
        RMatrixDoc {
            field: r.field().to_string(),
            dim: r.dim(),
            terms: r.terms().iter().map(|(l, rr)| (vec_entries(l), vec_entries(rr))).collect(),
        }
    }

    pub fn to_r(&self) -> Result<QuasiRMatrix> {
        let f = parse_field(&self.field)?;
        let terms = self.terms.iter().map(|(l, r)| Ok((parse_vec(f, self.dim, l)?, parse_vec(f, self.dim, r)?))).collect::<Result<_>>()?;
        Ok(QuasiRMatrix::new(f, self.dim, terms))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct FormDoc {
    pub field: String,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Entry>,
}

impl FormDoc {
    pub fn from_form(b: &BilinearForm) -> Self {
        FormDoc {
            field: b.field().to_string(),
            rows: b.left_dim(),
            cols: b.right_dim(),
            entries: tensor_entries(&b.to_tensor()),
        }
    }

    pub fn to_form(&self) -> Result<BilinearForm> {
        BilinearForm::from_tensor(&parse_tensor(parse_field(&self.field)?, vec![self.rows, self.cols], &self.entries)?)
    }
}

/// `action` holds `[a, v_in, v_out]`: the coordinate of `e_{v_out}` in `a·e_{v_in}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct ModuleDoc {
    pub field: String,
    pub algebra: FileRef,
    pub algebra_dim: usize,
    pub dim: usize,
    pub action: Vec<Entry>,
}

impl ModuleDoc {
    pub fn from_module(act: &ModuleAction, algebra: FileRef) -> Self {
        ModuleDoc {
            field: act.field().to_string(),
            algebra,
            algebra_dim: act.algebra_dim(),
            dim: act.dim(),
            action: tensor_entries(&act.to_tensor()),
        }
    }

    pub fn to_module(&self) -> Result<ModuleAction> {
        let t = parse_tensor(parse_field(&self.field)?, vec![self.algebra_dim, self.dim, self.dim], &self.action)?;
        ModuleAction::from_tensor(&t)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct TensorDoc {
    pub field: String,
    pub shape: Vec<usize>,
    pub entries: Vec<Entry>,
}

impl TensorDoc {
    pub fn from_tensor(t: &SparseTensor) -> Self {
        TensorDoc {
            field: t.field().to_string(),
            shape: t.shape().to_vec(),
            entries: tensor_entries(t),
        }
    }

    pub fn to_tensor(&self) -> Result<SparseTensor> {
        parse_tensor(parse_field(&self.field)?, self.shape.clone(), &self.entries)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum Document {
    Monoid(MonoidDoc),
    CliffordSpec(CliffordSpecDoc),
    Algebra(AlgebraDoc),
    Double(DoubleDoc),
    RMatrix(RMatrixDoc),
    Form(FormDoc),
    Module(ModuleDoc),
    Tensor(TensorDoc),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Monoid(_) => "monoid",
            Document::CliffordSpec(_) => "clifford-spec",
            Document::Algebra(_) => "algebra",
            Document::Double(_) => "double",
            Document::RMatrix(_) => "r-matrix",
            Document::Form(_) => "form",
            Document::Module(_) => "module",
            Document::Tensor(_) => "tensor",
        }
    }

    pub fn to_value(&self) -> Value {
        let body = match self {
            Document::Monoid(d) => serde_json::to_value(d),
            Document::CliffordSpec(d) => serde_json::to_value(d),
            Document::Algebra(d) => serde_json::to_value(d),
            Document::Double(d) => serde_json::to_value(d),
            Document::RMatrix(d) => serde_json::to_value(d),
            Document::Form(d) => serde_json::to_value(d),
            Document::Module(d) => serde_json::to_value(d),
            Document::Tensor(d) => serde_json::to_value(d),
        }
        .expect("documents are plain data");
        let mut map = match body {
            Value::Object(m) => m,
            _ => unreachable!("documents are objects"),
        };
        map.insert("kind".into(), Value::from(self.kind()));
        map.insert("schema-version".into(), Value::from(SCHEMA_VERSION));
        Value::Object(map)
    }

    /// Canonical text: sorted keys, two-space indent, trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_value()).expect("documents are plain data");
        s.push('\n');
        s
    }

    pub fn from_value(v: Value) -> Result<Self> {
        let mut map: Map<String, Value> = match v {
            Value::Object(m) => m,
            _ => return Err(format_err("document is not a JSON object")),
        };
        let kind = match map.remove("kind") {
            Some(Value::String(k)) => k,
            _ => return Err(format_err("missing \"kind\"")),
        };
        match map.remove("schema-version") {
            Some(Value::Number(n)) if n.as_u64() == Some(SCHEMA_VERSION) => {}
            Some(other) => return Err(format_err(format!("unsupported schema-version {other}"))),
            None => return Err(format_err("missing \"schema-version\"")),
        }
        let body = Value::Object(map);
        fn parse<T: for<'de> Deserialize<'de>>(body: Value) -> Result<T> {
            serde_json::from_value(body).map_err(format_err)
        }
        Ok(match kind.as_str() {
            "monoid" => Document::Monoid(parse(body)?),
            "clifford-spec" => Document::CliffordSpec(parse(body)?),
            "algebra" => Document::Algebra(parse(body)?),
            "double" => Document::Double(parse(body)?),
            "r-matrix" => Document::RMatrix(parse(body)?),
            "form" => Document::Form(parse(body)?),
            "module" => Document::Module(parse(body)?),
            "tensor" => Document::Tensor(parse(body)?),
            other => return Err(format_err(format!("unknown kind {other:?}"))),
        })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Document::from_value(serde_json::from_str(text).map_err(format_err)?)
    }
}

/// A document plus the provenance block written alongside it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Artifact {
    pub document: Document,
    pub provenance: Option<ProvenanceDoc>,
}

impl Artifact {
    pub fn new(document: Document, provenance: ProvenanceDoc) -> Self {
        Artifact {
            document,
            provenance: Some(provenance),
        }
    }

    pub fn to_value(&self) -> Value {
        let mut v = self.document.to_value();
        if let (Some(p), Value::Object(map)) = (&self.provenance, &mut v) {
            map.insert("provenance".into(), serde_json::to_value(p).expect("plain data"));
        }
        v
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_value()).expect("plain data");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let mut v: Value = serde_json::from_str(text).map_err(format_err)?;
        let provenance = match v.as_object_mut().and_then(|m| m.remove("provenance")) {
            Some(p) => Some(serde_json::from_value(p).map_err(format_err)?),
            None => None,
        };
        Ok(Artifact {
            document: Document::from_value(v)?,
            provenance,
        })
    }
}
