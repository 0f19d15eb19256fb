//! Bilinear forms between weak Hopf algebras: pairs and skew-pairs.

use std::fmt;

use crate::algebra::WeakHopfAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{Accum, LinMap, SparseVec};
use crate::report::{par_witnesses, CheckReport, Witness, WitnessSet};
use crate::scalar::{FieldSpec, Scalar};
use crate::tensor::SparseTensor;

/// `⟨x_i, a_j⟩` for bases of `X` (rows) and `A` (columns).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearForm {
    field: FieldSpec,
    cols: usize,
    rows: Vec<SparseVec>,
}

impl BilinearForm {
    pub fn new(field: FieldSpec, rows: usize, cols: usize, entries: Vec<(usize, usize, Scalar)>) -> Result<Self> {
        let mut acc: Vec<Vec<(u32, Scalar)>> = vec![Vec::new(); rows];
        for (i, j, v) in entries {
            if i >= rows || j >= cols {
                return Err(Error::IndexOutOfBounds {
                    index: vec![i, j],
                    shape: vec![rows, cols],
                });
            }
            if v.field() != field {
                return Err(Error::MixedFields(field, v.field()));
            }
            acc[i].push((j as u32, v));
        }
        Ok(BilinearForm {
            field,
            cols,
            rows: acc.into_iter().map(SparseVec::from_pairs).collect(),
        })
    }

    /// `⟨e^i, e_j⟩ = δ_ij`.
    pub fn identity(field: FieldSpec, n: usize) -> Self {
        BilinearForm {
            field,
            cols: n,
            rows: (0..n as u32).map(|i| SparseVec::basis(i, field)).collect(),
        }
    }

    pub fn zero(field: FieldSpec, rows: usize, cols: usize) -> Self {
        BilinearForm {
            field,
            cols,
            rows: vec![SparseVec::zero(); rows],
        }
    }

    pub fn from_tensor(t: &SparseTensor) -> Result<Self> {
        if t.rank() != 2 {
            return Err(Error::DimensionMismatch(format!("form must be a matrix, got shape {:?}", t.shape())));
        }
        let entries = t.iter().map(|(i, v)| (i[0], i[1], v.clone())).collect();
        BilinearForm::new(t.field(), t.shape()[0], t.shape()[1], entries)
    }

    pub fn to_tensor(&self) -> SparseTensor {
        let entries = self.entries().map(|(i, j, v)| (vec![i, j], v.clone()));
        SparseTensor::from_entries(self.field, vec![self.left_dim(), self.right_dim()], entries).expect("entries in range")
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn left_dim(&self) -> usize {
        self.rows.len()
    }

    pub fn right_dim(&self) -> usize {
        self.cols
    }

    /// Nonzero entries `(i, j, ⟨x_i, a_j⟩)` in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> + '_ {
        self.rows.iter().enumerate().flat_map(|(i, r)| r.iter().map(move |(j, v)| (i, j as usize, v)))
    }

    pub fn basis_value(&self, i: u32, j: u32) -> Scalar {
        self.rows[i as usize].get(j).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// `⟨x, e_j⟩`.
    pub fn left_value(&self, x: &SparseVec, j: u32) -> Scalar {
        let mut acc = self.field.zero();
        for (i, c) in x.iter() {
            if let Some(v) = self.rows[i as usize].get(j) {
                acc += &(c * v);
            }
        }
        acc
    }

    /// `⟨e_i, a⟩`.
    pub fn right_value(&self, i: u32, a: &SparseVec) -> Scalar {
        let row = &self.rows[i as usize];
        let mut acc = self.field.zero();
        for (j, c) in a.iter() {
            if let Some(v) = row.get(j) {
                acc += &(c * v);
            }
        }
        acc
    }

    pub fn eval(&self, x: &SparseVec, a: &SparseVec) -> Scalar {
        let mut acc = self.field.zero();
        for (i, c) in x.iter() {
            acc += &(c * &self.right_value(i, a));
        }
        acc
    }

    /// Returns a copy with entry `(i, j)` replaced.
    pub fn with_entry(&self, i: usize, j: usize, value: Scalar) -> Self {
        let mut out = self.clone();
        let mut row: Vec<(u32, Scalar)> = out.rows[i].entries().iter().filter(|(k, _)| *k as usize != j).cloned().collect();
        row.push((j as u32, value));
        out.rows[i] = SparseVec::from_pairs(row);
        out
    }

    pub fn is_square(&self) -> bool {
        self.left_dim() == self.right_dim()
    }

    pub fn rank(&self) -> usize {
        // Row i of the form is column i of its transpose.
        LinMap::from_columns(self.field, self.cols, self.rows.clone()).expect("rows fit").rank()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairKind {
    Pair,
    SkewPair,
}

impl fmt::Display for PairKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PairKind::Pair => "pair",
            PairKind::SkewPair => "skew-pair",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairCertificate {
    pub kind: PairKind,
    pub reports: Vec<CheckReport>,
}

impl PairCertificate {
    pub fn certified(&self) -> bool {
        self.reports.iter().all(CheckReport::passed)
    }

    pub fn report(&self) -> CheckReport {
        CheckReport::group(format!("weak Hopf {}", self.kind), self.reports.clone())
    }
}

fn scalar_witness(index: Vec<usize>, expected: Scalar, actual: Scalar) -> Option<Witness> {
    (expected != actual).then_some(Witness { index, expected, actual })
}

fn nonsingular(form: &BilinearForm) -> CheckReport {
    let name = "non-singular";
    if !form.is_square() {
        return CheckReport::failed(name, format!("form is {}x{}, not square", form.left_dim(), form.right_dim()));
    }
    let rank = form.rank();
    let report = if rank == form.left_dim() {
        CheckReport::pass(name)
    } else {
        CheckReport::failed(name, format!("rank {rank} < {}", form.left_dim()))
    };
    report.with_info("rank", rank)
}

/// `⟨x, ab⟩` against `Σ⟨x',a⟩⟨x'',b⟩` (or `⟨x'',a⟩⟨x',b⟩` when `swap`).
fn product_axiom(x: &WeakHopfAlgebra, a: &WeakHopfAlgebra, form: &BilinearForm, swap: bool, name: &str) -> CheckReport {
    let (dx, da) = (x.dim(), a.dim());
    par_witnesses(dx, |xi, w| {
        let row = (xi as u32, x.comul_basis(xi as u32));
        for ai in 0..da as u32 {
            for bi in 0..da as u32 {
                let ab = SparseVec::from_pairs(a.mul_basis(ai, bi).into_owned());
                let left = form.right_value(row.0, &ab);
                let mut right = form.field().zero();
                for ((p, q), c) in row.1 {
                    let (first, second) = if swap { (*q, *p) } else { (*p, *q) };
                    let u = form.basis_value(first, ai);
                    if u.is_zero() {
                        continue;
                    }
                    right += &(c * &(&u * &form.basis_value(second, bi)));
                }
                w.extend(scalar_witness(vec![xi, ai as usize, bi as usize], right, left));
            }
        }
    })
    .into_report(name)
}

/// `⟨xy, a⟩ = Σ⟨x,a'⟩⟨y,a''⟩`.
fn coproduct_axiom(x: &WeakHopfAlgebra, a: &WeakHopfAlgebra, form: &BilinearForm) -> CheckReport {
    let (dx, da) = (x.dim(), a.dim());
    par_witnesses(dx, |xi, w| {
        for yi in 0..dx as u32 {
            let xy = SparseVec::from_pairs(x.mul_basis(xi as u32, yi).into_owned());
            for ai in 0..da as u32 {
                let left = form.left_value(&xy, ai);
                let mut right = form.field().zero();
                for ((p, q), c) in a.comul_basis(ai) {
                    let u = form.basis_value(xi as u32, *p);
                    if u.is_zero() {
                        continue;
                    }
                    right += &(c * &(&u * &form.basis_value(yi, *q)));
                }
                w.extend(scalar_witness(vec![xi, yi as usize, ai as usize], right, left));
            }
        }
    })
    .into_report("<xy,a> = <x,a'><y,a''>")
}

fn unit_axioms(x: &WeakHopfAlgebra, a: &WeakHopfAlgebra, form: &BilinearForm) -> (CheckReport, CheckReport) {
    let mut left = WitnessSet::default();
    for xi in 0..x.dim() as u32 {
        left.extend(scalar_witness(vec![xi as usize], x.counit_basis(xi).clone(), form.right_value(xi, a.unit())));
    }
    let mut right = WitnessSet::default();
    for ai in 0..a.dim() as u32 {
        right.extend(scalar_witness(vec![ai as usize], a.counit_basis(ai).clone(), form.left_value(x.unit(), ai)));
    }
    (left.into_report("<x,1> = eps(x)"), right.into_report("<1,a> = eps(a)"))
}

/// `⟨S_X(x), a⟩ = ⟨x, M(a)⟩` for a given map `M` on `A`.
fn antipode_axiom(x: &WeakHopfAlgebra, form: &BilinearForm, m: &LinMap, name: &str) -> CheckReport {
    let (dx, da) = (x.dim(), m.domain());
    par_witnesses(dx, |xi, w| {
        let sx = x.antipode().column(xi);
        for ai in 0..da as u32 {
            let left = form.left_value(sx, ai);
            let right = form.right_value(xi as u32, m.column(ai as usize));
            w.extend(scalar_witness(vec![xi, ai as usize], right, left));
        }
    })
    .into_report(name)
}

fn shape_ok(x: &WeakHopfAlgebra, a: &WeakHopfAlgebra, form: &BilinearForm) -> Option<CheckReport> {
    if x.field() != a.field() || form.field() != x.field() {
        return Some(CheckReport::failed("dimensions", "algebras and form are over different fields"));
    }
    if form.left_dim() != x.dim() || form.right_dim() != a.dim() {
        return Some(CheckReport::failed(
            "dimensions",
            format!("form is {}x{} for algebras of dimension {} and {}", form.left_dim(), form.right_dim(), x.dim(), a.dim()),
        ));
    }
    None
}

fn certify(x: &WeakHopfAlgebra, a: &WeakHopfAlgebra, form: &BilinearForm, kind: PairKind, a_map: &LinMap) -> PairCertificate {
    if let Some(bad) = shape_ok(x, a, form) {
        return PairCertificate { kind, reports: vec![bad] };
    }
    let ns = nonsingular(form);
    if !form.is_square() {
        return PairCertificate { kind, reports: vec![ns] };
    }
    let (unit_x, unit_a) = unit_axioms(x, a, form);
    let (product, antipode) = match kind {
        PairKind::Pair => (
            product_axiom(x, a, form, false, "<x,ab> = <x',a><x'',b>"),
            antipode_axiom(x, form, a_map, "<S(x),a> = <x,S(a)>"),
        ),
        PairKind::SkewPair => (
            product_axiom(x, a, form, true, "<x,ab> = <x'',a><x',b>"),
            antipode_axiom(x, form, a_map, "<S(x),a> = <x,S^-1(a)>"),
        ),
    };
    PairCertificate {
        kind,
        reports: vec![ns, product, unit_x, coproduct_axiom(x, a, form), unit_a, antipode],
    }
}

/// Non-singularity and the five pair axioms on all basis tuples, with the
/// coproducts of `X` and `A` as given.
pub fn check_weak_hopf_pair(x: &WeakHopfAlgebra, a: &WeakHopfAlgebra, form: &BilinearForm) -> PairCertificate {
    certify(x, a, form, PairKind::Pair, a.antipode())
}

/// As [`check_weak_hopf_pair`] with the product axiom's coproduct legs swapped
/// and `S_A⁻¹` in the antipode axiom.
pub fn check_skew_pair(x: &WeakHopfAlgebra, a: &WeakHopfAlgebra, form: &BilinearForm) -> Result<PairCertificate> {
    let inv = a.antipode_inverse()?;
    Ok(certify(x, a, form, PairKind::SkewPair, inv))
}

/// The evaluation form between `H^*` (dual basis) and `H`: the identity
/// matrix. Pair it with `star_cop(H)` on the left.
pub fn canonical_eval_pairing(h: &WeakHopfAlgebra) -> BilinearForm {
    BilinearForm::identity(h.field(), h.dim())
}

/// `Σ_k c_k ⟨e_k, a⟩` as a row over the basis of `A`; used by derived actions.
pub(crate) fn pair_row(form: &BilinearForm, x: &SparseVec) -> Vec<(u32, Scalar)> {
    let mut acc = Accum::default();
    for (i, c) in x.iter() {
        for (j, v) in form.rows[i as usize].iter() {
            acc.add_owned(j, c * v);
        }
    }
    acc.into_sorted()
}

/// `Σ_j c_j ⟨e_i, a_j⟩` as a column over the basis of `X`.
pub(crate) fn pair_column(form: &BilinearForm, a: &SparseVec) -> Vec<(u32, Scalar)> {
    (0..form.left_dim() as u32)
        .filter_map(|i| {
            let v = form.right_value(i, a);
            (!v.is_zero()).then_some((i, v))
        })
        .collect()
}
