//! Almost bialgebras and weak Hopf algebras given by structure constants.
//!
//! Conventions: the multiplication tensor is `[x, y, out]`, so
//! `e_x e_y = Σ mul[x, y, k] e_k`; the comultiplication tensor is
//! `[in, left, right]`; maps are `[codomain, domain]` matrices.

mod checks;
mod constructions;
mod weak;

use std::borrow::Cow;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{Accum, SparseVec};
use crate::scalar::{FieldSpec, Scalar};
use crate::tensor::SparseTensor;

pub use checks::{check_algebra_axioms, check_almost_bialgebra, check_coalgebra_axioms};
pub use constructions::{coopposite, dual, opposite, star_cop, tensor_product};
pub use weak::{
    check_anti_bialgebra_morphism, check_coperfect, check_perfect, check_perfect_variant, check_weak_antipode, convolution,
    convolution3, WeakHopfAlgebra,
};

/// A pair of basis indices, the key of a coproduct term.
pub type Pair = (u32, u32);

/// Row-compressed sparse table: row `r` is a sorted list of `(key, value)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Csr<K> {
    offsets: Vec<usize>,
    entries: Vec<(K, Scalar)>,
}

impl<K: Copy + Ord> Csr<K> {
    pub(crate) fn build(rows: usize, mut row: impl FnMut(usize) -> Vec<(K, Scalar)>) -> Self {
        let mut offsets = Vec::with_capacity(rows + 1);
        let mut entries = Vec::new();
        offsets.push(0);
        for r in 0..rows {
            let mut v = row(r);
            v.sort_by_key(|a| a.0);
            debug_assert!(v.windows(2).all(|w| w[0].0 < w[1].0), "duplicate keys in table row");
            entries.extend(v.into_iter().filter(|(_, s)| !s.is_zero()));
            offsets.push(entries.len());
        }
        Csr { offsets, entries }
    }

    pub(crate) fn row(&self, r: usize) -> &[(K, Scalar)] {
        &self.entries[self.offsets[r]..self.offsets[r + 1]]
    }

    pub(crate) fn rows(&self) -> usize {
        self.offsets.len() - 1
    }

    pub(crate) fn nnz(&self) -> usize {
        self.entries.len()
    }
}

/// Products computed on demand, for algebras too large to tabulate.
pub trait LazyProduct: Send + Sync + fmt::Debug {
    /// Coordinates of `e_i e_j`, sorted by index, without zeros.
    fn product(&self, i: u32, j: u32) -> Vec<(u32, Scalar)>;
}

#[derive(Clone, Debug)]
pub enum Multiplication {
    /// Row `i * dim + j` holds `e_i e_j`.
    Table(Arc<MulTable>),
    Lazy(Arc<dyn LazyProduct>),
}

/// Tabulated multiplication.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MulTable(pub(crate) Csr<u32>);

/// Algebra and coalgebra structure on a common basis with `Δ`
/// multiplicative. Unit and counit compatibility are not assumed.
#[derive(Clone, Debug)]
pub struct AlmostBialgebra {
    field: FieldSpec,
    labels: Vec<String>,
    mul: Multiplication,
    unit: SparseVec,
    comul: Arc<Csr<Pair>>,
    counit: Vec<Scalar>,
}

impl AlmostBialgebra {
    /// Builds from structure tensors of shapes `[d,d,d]`, `[d]`, `[d,d,d]`,
    /// `[d]`. Labels default to `e0, e1, ...`.
    pub fn from_tensors(
        labels: Option<Vec<String>>,
        mul: &SparseTensor,
        unit: &SparseTensor,
        comul: &SparseTensor,
        counit: &SparseTensor,
    ) -> Result<Self> {
        let d = unit.shape().first().copied().unwrap_or(0);
        let field = mul.field();
        let expect = |t: &SparseTensor, shape: &[usize], what: &str| -> Result<()> {
            if t.shape() != shape {
                return Err(Error::DimensionMismatch(format!("{what} has shape {:?}, expected {shape:?}", t.shape())));
            }
            if t.field() != field {
                return Err(Error::MixedFields(field, t.field()));
            }
            Ok(())
        };
        expect(mul, &[d, d, d], "multiplication")?;
        expect(unit, &[d], "unit")?;
        expect(comul, &[d, d, d], "comultiplication")?;
        expect(counit, &[d], "counit")?;
        let labels = labels.unwrap_or_else(|| (0..d).map(|i| format!("e{i}")).collect());
        if labels.len() != d {
            return Err(Error::DimensionMismatch(format!("{} labels for dimension {d}", labels.len())));
        }

        let mut mul_rows: Vec<Vec<(u32, Scalar)>> = vec![Vec::new(); d * d];
        for (idx, v) in mul.iter() {
            mul_rows[idx[0] * d + idx[1]].push((idx[2] as u32, v.clone()));
        }
        let mut comul_rows: Vec<Vec<(Pair, Scalar)>> = vec![Vec::new(); d];
        for (idx, v) in comul.iter() {
            comul_rows[idx[0]].push(((idx[1] as u32, idx[2] as u32), v.clone()));
        }
        let unit = SparseVec::from_pairs(unit.iter().map(|(i, v)| (i[0] as u32, v.clone())).collect());
        let mut counit_vec = vec![field.zero(); d];
        for (i, v) in counit.iter() {
            counit_vec[i[0]] = v.clone();
        }
        Ok(AlmostBialgebra::from_parts(
            field,
            labels,
            Multiplication::Table(Arc::new(MulTable(Csr::build(d * d, |r| std::mem::take(&mut mul_rows[r]))))),
            unit,
            Csr::build(d, |r| std::mem::take(&mut comul_rows[r])),
            counit_vec,
        ))
    }

    pub(crate) fn from_parts(
        field: FieldSpec,
        labels: Vec<String>,
        mul: Multiplication,
        unit: SparseVec,
        comul: Csr<Pair>,
        counit: Vec<Scalar>,
    ) -> Self {
        debug_assert_eq!(labels.len(), counit.len());
        debug_assert_eq!(comul.rows(), counit.len());
        AlmostBialgebra {
            field,
            labels,
            mul,
            unit,
            comul: Arc::new(comul),
            counit,
        }
    }

    /// Builds from closures giving products and coproducts of basis elements.
    pub fn from_fn(
        field: FieldSpec,
        labels: Vec<String>,
        mul: impl Fn(u32, u32) -> SparseVec,
        unit: SparseVec,
        comul: impl Fn(u32) -> Vec<(Pair, Scalar)>,
        counit: Vec<Scalar>,
    ) -> Self {
        let d = labels.len();
        let table = Csr::build(d * d, |r| mul((r / d) as u32, (r % d) as u32).entries().to_vec());
        let comul = Csr::build(d, |r| comul(r as u32));
        AlmostBialgebra::from_parts(field, labels, Multiplication::Table(Arc::new(MulTable(table))), unit, comul, counit)
    }

    /// An algebra whose products are computed on demand.
    pub fn with_lazy_product(
        field: FieldSpec,
        labels: Vec<String>,
        product: Arc<dyn LazyProduct>,
        unit: SparseVec,
        comul: impl Fn(u32) -> Vec<(Pair, Scalar)>,
        counit: Vec<Scalar>,
    ) -> Self {
        let comul = Csr::build(labels.len(), |r| comul(r as u32));
        AlmostBialgebra::from_parts(field, labels, Multiplication::Lazy(product), unit, comul, counit)
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn is_lazy(&self) -> bool {
        matches!(self.mul, Multiplication::Lazy(_))
    }

    pub fn multiplication(&self) -> &Multiplication {
        &self.mul
    }

    /// Tabulates a lazy multiplication. A no-op for tabulated algebras.
    pub fn materialize(&self) -> AlmostBialgebra {
        match &self.mul {
            Multiplication::Table(_) => self.clone(),
            Multiplication::Lazy(p) => {
                let d = self.dim();
                use rayon::prelude::*;
                let rows: Vec<Vec<(u32, Scalar)>> = (0..d * d).into_par_iter().map(|r| p.product((r / d) as u32, (r % d) as u32)).collect();
                let mut rows = rows.into_iter();
                let table = Csr::build(d * d, |_| rows.next().unwrap_or_default());
                AlmostBialgebra {
                    mul: Multiplication::Table(Arc::new(MulTable(table))),
                    ..self.clone()
                }
            }
        }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.dim() {
            return Err(Error::DimensionMismatch(format!("{} labels for dimension {}", labels.len(), self.dim())));
        }
        self.labels = labels;
        Ok(self)
    }

    /// `e_i e_j`.
    pub fn mul_basis(&self, i: u32, j: u32) -> Cow<'_, [(u32, Scalar)]> {
        match &self.mul {
            Multiplication::Table(t) => Cow::Borrowed(t.0.row(i as usize * self.dim() + j as usize)),
            Multiplication::Lazy(p) => Cow::Owned(p.product(i, j)),
        }
    }

    pub fn mul(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut acc = Accum::default();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                let ab = a * b;
                for (k, c) in self.mul_basis(i, j).iter() {
                    acc.add_owned(*k, &ab * c);
                }
            }
        }
        acc.into_vec()
    }

    pub fn unit(&self) -> &SparseVec {
        &self.unit
    }

    pub fn comul_basis(&self, i: u32) -> &[(Pair, Scalar)] {
        self.comul.row(i as usize)
    }

    pub fn coproduct(&self, x: &SparseVec) -> Vec<(Pair, Scalar)> {
        let mut acc = Accum::default();
        for (i, a) in x.iter() {
            for (p, c) in self.comul_basis(i) {
                acc.add_owned(*p, a * c);
            }
        }
        acc.into_sorted()
    }

    /// `(Δ ⊗ id) Δ (e_i)`, i.e. the Sweedler triple `x' ⊗ x'' ⊗ x'''`.
    pub fn coproduct3(&self, i: u32) -> Vec<([u32; 3], Scalar)> {
        let mut acc = Accum::default();
        for ((l, r), c) in self.comul_basis(i) {
            for ((a, b), d) in self.comul_basis(*l) {
                acc.add_owned([*a, *b, *r], c * d);
            }
        }
        acc.into_sorted()
    }

    pub fn counit_basis(&self, i: u32) -> &Scalar {
        &self.counit[i as usize]
    }

    pub fn counit_values(&self) -> &[Scalar] {
        &self.counit
    }

    pub fn counit(&self, x: &SparseVec) -> Scalar {
        let mut s = self.field.zero();
        for (i, a) in x.iter() {
            s += &(a * &self.counit[i as usize]);
        }
        s
    }

    pub fn basis(&self, i: u32) -> SparseVec {
        SparseVec::basis(i, self.field)
    }

    pub fn mul_tensor(&self) -> SparseTensor {
        let d = self.dim();
        let mut entries = Vec::new();
        for i in 0..d as u32 {
            for j in 0..d as u32 {
                for (k, v) in self.mul_basis(i, j).iter() {
                    entries.push((vec![i as usize, j as usize, *k as usize], v.clone()));
                }
            }
        }
        SparseTensor::from_entries(self.field, vec![d, d, d], entries).expect("indices in range")
    }

    pub fn comul_tensor(&self) -> SparseTensor {
        let d = self.dim();
        let entries = (0..d).flat_map(|i| self.comul.row(i).iter().map(move |((l, r), v)| (vec![i, *l as usize, *r as usize], v.clone())));
        SparseTensor::from_entries(self.field, vec![d, d, d], entries).expect("indices in range")
    }

    pub fn unit_tensor(&self) -> SparseTensor {
        SparseTensor::from_entries(self.field, vec![self.dim()], self.unit.iter().map(|(i, v)| (vec![i as usize], v.clone()))).expect("indices in range")
    }

    pub fn counit_tensor(&self) -> SparseTensor {
        SparseTensor::from_entries(self.field, vec![self.dim()], self.counit.iter().enumerate().map(|(i, v)| (vec![i], v.clone())))
            .expect("indices in range")
    }

    /// True when every structure constant agrees (labels ignored).
    pub fn same_structure(&self, other: &AlmostBialgebra) -> bool {
        if self.dim() != other.dim() || self.field != other.field || self.unit != other.unit || self.counit != other.counit {
            return false;
        }
        if self.comul != other.comul {
            return false;
        }
        let d = self.dim() as u32;
        match (&self.mul, &other.mul) {
            (Multiplication::Table(a), Multiplication::Table(b)) => a == b,
            _ => (0..d).all(|i| (0..d).all(|j| self.mul_basis(i, j) == other.mul_basis(i, j))),
        }
    }

    pub fn is_commutative(&self) -> bool {
        let d = self.dim() as u32;
        (0..d).all(|i| (i + 1..d).all(|j| self.mul_basis(i, j) == self.mul_basis(j, i)))
    }

    pub fn is_cocommutative(&self) -> bool {
        (0..self.dim() as u32).all(|i| {
            let row = self.comul_basis(i);
            let mut flipped: Vec<(Pair, Scalar)> = row.iter().map(|((a, b), c)| ((*b, *a), c.clone())).collect();
            flipped.sort_by_key(|x| x.0);
            flipped == row
        })
    }

    /// Stored nonzero structure constants of the multiplication, if tabulated.
    pub fn mul_nnz(&self) -> Option<usize> {
        match &self.mul {
            Multiplication::Table(t) => Some(t.0.nnz()),
            Multiplication::Lazy(_) => None,
        }
    }
}

impl PartialEq for AlmostBialgebra {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.same_structure(other)
    }
}

impl Eq for AlmostBialgebra {}
