use rayon::prelude::*;

use crate::algebra::Pair;
use crate::error::{Error, Result};
use crate::linalg::{Accum, SparseVec};
use crate::report::{par_witnesses, CheckReport, WitnessSet};
use crate::scalar::{FieldSpec, Scalar};
use crate::tensor::SparseTensor;

use super::bicrossed::{Construction, QuasiBicrossedProduct};

/// An element `Σ_i L_i⊗R_i` of `D⊗D`, kept as its list of monomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiRMatrix {
    field: FieldSpec,
    dim: usize,
    terms: Vec<(SparseVec, SparseVec)>,
}

impl QuasiRMatrix {
    pub fn new(field: FieldSpec, dim: usize, terms: Vec<(SparseVec, SparseVec)>) -> Self {
        let terms = terms.into_iter().filter(|(l, r)| !l.is_zero() && !r.is_zero()).collect();
        QuasiRMatrix { field, dim, terms }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    /// Dimension of the algebra `D`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &[(SparseVec, SparseVec)] {
        &self.terms
    }

    pub fn monomial_count(&self) -> usize {
        self.terms.len()
    }

    /// The same element with monomial `i` dropped.
    pub fn without_term(&self, i: usize) -> Self {
        let mut terms = self.terms.clone();
        terms.remove(i);
        QuasiRMatrix { terms, ..self.clone() }
    }

    /// The same element with monomial `i` scaled by `c`.
    pub fn with_scaled_term(&self, i: usize, c: &Scalar) -> Self {
        let mut terms = self.terms.clone();
        terms[i].0 = terms[i].0.scale(c);
        QuasiRMatrix::new(self.field, self.dim, terms)
    }

    /// Coordinates in `D⊗D`, sorted.
    pub fn coordinates(&self) -> Vec<(Pair, Scalar)> {
        let mut acc = Accum::default();
        for (l, r) in &self.terms {
            outer(&mut acc, l, r, &self.field.one());
        }
        acc.into_sorted()
    }

    /// `[dim D, dim D]` tensor.
    pub fn to_tensor(&self) -> SparseTensor {
        let entries = self.coordinates().into_iter().map(|((i, j), c)| (vec![i as usize, j as usize], c));
        SparseTensor::from_entries(self.field, vec![self.dim, self.dim], entries).expect("in range")
    }
}

fn outer(acc: &mut Accum<Pair>, u: &SparseVec, v: &SparseVec, c: &Scalar) {
    for (i, s) in u.iter() {
        let cs = c * s;
        for (j, t) in v.iter() {
            acc.add_owned((i, j), &cs * t);
        }
    }
}

fn require_double(d: &QuasiBicrossedProduct) -> Result<()> {
    match d.provenance().construction {
        Construction::Double => Ok(()),
        Construction::Bicrossed => Err(Error::MissingProvenance),
    }
}

/// `R = Σ_i (ε∞e_i)⊗(e^i∞1)`; `ε` is the unit of `H^{*cop}`.
pub fn r_matrix(d: &QuasiBicrossedProduct) -> Result<QuasiRMatrix> {
    require_double(d)?;
    let n = d.a().dim() as u32;
    let terms = (0..n)
        .map(|i| (d.embed_a(&d.a().basis(i)), d.embed_x(&d.x().basis(i))))
        .collect();
    Ok(QuasiRMatrix::new(d.field(), d.dim(), terms))
}

/// `R̄ = Σ_i (ε∞e_i)⊗(e^i∘T∞1)`.
pub fn r_bar(d: &QuasiBicrossedProduct) -> Result<QuasiRMatrix> {
    require_double(d)?;
    let n = d.a().dim();
    let t = d.a().antipode();
    let terms = (0..n)
        .map(|i| {
            let functional = SparseVec::from_pairs((0..n).map(|k| (k as u32, t.entry(i, k))).collect());
            (d.embed_a(&d.a().basis(i as u32)), d.embed_x(&functional))
        })
        .collect();
    Ok(QuasiRMatrix::new(d.field(), d.dim(), terms))
}

/// `Δ^{op}(x)R = RΔ(x)` for every basis element `x` of `D`.
pub fn check_quasi_cocommutative(d: &QuasiBicrossedProduct, r: &QuasiRMatrix) -> CheckReport {
    let f = d.field();
    let w = par_witnesses(d.dim(), |x, w| {
        let mut lhs = Accum::default();
        let mut rhs = Accum::default();
        for ((x1, x2), c) in d.comul_basis(x as u32) {
            let (e1, e2) = (d.basis(*x1), d.basis(*x2));
            for (l, rr) in &r.terms {
                outer(&mut lhs, &d.mul(&e2, l), &d.mul(&e1, rr), c);
                outer(&mut rhs, &d.mul(l, &e1), &d.mul(rr, &e2), c);
            }
        }
        w.record_diff(&[x], &lhs.into_sorted(), &rhs.into_sorted(), f);
    });
    w.into_report("Delta^op(x)R = R Delta(x)").with_info("basis elements", d.dim())
}

/// `(Δ⊗id)R = R13 R23` and `(id⊗Δ)R = R13 R12`, compared slice by slice
/// along the first leg.
pub fn check_quasi_braided(d: &QuasiBicrossedProduct, r: &QuasiRMatrix) -> CheckReport {
    let f = d.field();
    let terms = &r.terms;
    let n = terms.len();
    let dim = d.dim();

    // (Δ⊗id)R = Σ_i Δ(L_i)⊗R_i, R13 R23 = Σ_{i,j} L_i⊗L_j⊗R_iR_j.
    let mut lhs_slices: Vec<Vec<(usize, u32, Scalar)>> = vec![Vec::new(); dim];
    let mut rhs_slices: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); dim];
    for (i, (l, _)) in terms.iter().enumerate() {
        for ((u, v), c) in d.coproduct(l) {
            lhs_slices[u as usize].push((i, v, c));
        }
        for (u, c) in l.iter() {
            rhs_slices[u as usize].push((i, c.clone()));
        }
    }
    let rr: Vec<SparseVec> = (0..n * n).into_par_iter().map(|k| d.mul(&terms[k / n].1, &terms[k % n].1)).collect();
    let left = par_witnesses(dim, |u, w| {
        let mut lhs = Accum::<Pair>::default();
        for (i, v, c) in &lhs_slices[u] {
            for (k, s) in terms[*i].1.iter() {
                lhs.add_owned((*v, k), c * s);
            }
        }
        let mut rhs = Accum::<Pair>::default();
        for (i, c) in &rhs_slices[u] {
            for (j, (lj, _)) in terms.iter().enumerate() {
                outer(&mut rhs, lj, &rr[i * n + j], c);
            }
        }
        w.record_diff(&[u], &lhs.into_sorted(), &rhs.into_sorted(), f);
    });

    // (id⊗Δ)R = Σ_i L_i⊗Δ(R_i), R13 R12 = Σ_{i,j} L_jL_i⊗R_i⊗R_j.
    let coproducts: Vec<Vec<(Pair, Scalar)>> = terms.par_iter().map(|(_, r)| d.coproduct(r)).collect();
    let mut lhs_slices: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); dim];
    let mut rhs_slices: Vec<Vec<(usize, usize, Scalar)>> = vec![Vec::new(); dim];
    for (i, (l, _)) in terms.iter().enumerate() {
        for (u, c) in l.iter() {
            lhs_slices[u as usize].push((i, c.clone()));
        }
    }
    for i in 0..n {
        for j in 0..n {
            for (u, c) in d.mul(&terms[j].0, &terms[i].0).iter() {
                rhs_slices[u as usize].push((i, j, c.clone()));
            }
        }
    }
    let right = par_witnesses(dim, |u, w| {
        let mut lhs = Accum::<Pair>::default();
        for (i, c) in &lhs_slices[u] {
            for (k, s) in &coproducts[*i] {
                lhs.add_owned(*k, c * s);
            }
        }
        let mut rhs = Accum::<Pair>::default();
        for (i, j, c) in &rhs_slices[u] {
            outer(&mut rhs, &terms[*i].1, &terms[*j].1, c);
        }
        w.record_diff(&[u], &lhs.into_sorted(), &rhs.into_sorted(), f);
    });
    CheckReport::group(
        "quasi-braided",
        vec![left.into_report("(Delta⊗id)R = R13 R23"), right.into_report("(id⊗Delta)R = R13 R12")],
    )
}

/// `R12 R13 R23 = R23 R13 R12`, compared slice by slice along the first
/// leg. Fails with `TooManyTerms` when the number of monomial triples
/// exceeds `max_terms`.
pub fn check_qybe(d: &QuasiBicrossedProduct, r: &QuasiRMatrix, max_terms: u128) -> Result<CheckReport> {
    let n = r.terms.len();
    let needed = (n as u128).pow(3);
    if needed > max_terms {
        return Err(Error::TooManyTerms {
            what: "the Yang-Baxter triple product".into(),
            needed,
            limit: max_terms,
        });
    }
    let f = d.field();
    let terms = &r.terms;
    let prod = |u: &SparseVec, v: &SparseVec| d.mul(u, v);
    let table = |g: &(dyn Fn(usize, usize) -> SparseVec + Sync)| -> Vec<SparseVec> { (0..n * n).into_par_iter().map(|k| g(k / n, k % n)).collect() };
    // LHS = Σ L_iL_j ⊗ R_iL_k ⊗ R_jR_k, RHS = Σ L_jL_i ⊗ L_kR_i ⊗ R_kR_j.
    let ll = table(&|i, j| prod(&terms[i].0, &terms[j].0));
    let rl = table(&|i, k| prod(&terms[i].1, &terms[k].0));
    let lr = table(&|k, i| prod(&terms[k].0, &terms[i].1));
    let rr = table(&|j, k| prod(&terms[j].1, &terms[k].1));

    // Slices: first-leg coordinate -> (i, j, coefficient).
    let mut lhs_slices: Vec<Vec<(usize, usize, Scalar)>> = vec![Vec::new(); d.dim()];
    let mut rhs_slices: Vec<Vec<(usize, usize, Scalar)>> = vec![Vec::new(); d.dim()];
    for i in 0..n {
        for j in 0..n {
            for (u, c) in ll[i * n + j].iter() {
                lhs_slices[u as usize].push((i, j, c.clone()));
            }
            for (u, c) in ll[j * n + i].iter() {
                rhs_slices[u as usize].push((i, j, c.clone()));
            }
        }
    }
    let w = par_witnesses(d.dim(), |u, w| {
        if lhs_slices[u].is_empty() && rhs_slices[u].is_empty() {
            return;
        }
        let mut lhs = Accum::<Pair>::default();
        for (i, j, c) in &lhs_slices[u] {
            for k in 0..n {
                outer(&mut lhs, &rl[i * n + k], &rr[j * n + k], c);
            }
        }
        let mut rhs = Accum::<Pair>::default();
        for (i, j, c) in &rhs_slices[u] {
            for k in 0..n {
                outer(&mut rhs, &lr[k * n + i], &rr[k * n + j], c);
            }
        }
        w.record_diff(&[u], &lhs.into_sorted(), &rhs.into_sorted(), f);
    });
    Ok(w.into_report("R12 R13 R23 = R23 R13 R12").with_info("monomial triples", needed))
}

/// `Σ_{i,j,k} a_i b_j c_k ⊗ a'_i b'_j c'_k` for three elements of `D⊗D`.
fn triple_product(d: &QuasiBicrossedProduct, a: &QuasiRMatrix, b: &QuasiRMatrix, c: &QuasiRMatrix) -> Vec<(Pair, Scalar)> {
    let one = d.field().one();
    let n = a.terms.len();
    let partial = (0..n * b.terms.len())
        .into_par_iter()
        .fold(Accum::default, |mut acc, k| {
            let ((l1, r1), (l2, r2)) = (&a.terms[k / b.terms.len()], &b.terms[k % b.terms.len()]);
            let (l, r) = (d.mul(l1, l2), d.mul(r1, r2));
            if l.is_zero() || r.is_zero() {
                return acc;
            }
            for (l3, r3) in &c.terms {
                outer(&mut acc, &d.mul(&l, l3), &d.mul(&r, r3), &one);
            }
            acc
        })
        .reduce(Accum::default, |mut x, y| {
            x.merge(y);
            x
        });
    partial.into_sorted()
}

/// `Σ a_i b_j ⊗ a'_i b'_j`.
fn pair_product(d: &QuasiBicrossedProduct, a: &QuasiRMatrix, b: &QuasiRMatrix) -> Vec<(Pair, Scalar)> {
    let one = d.field().one();
    let mut acc = Accum::default();
    for (l1, r1) in &a.terms {
        for (l2, r2) in &b.terms {
            outer(&mut acc, &d.mul(l1, l2), &d.mul(r1, r2), &one);
        }
    }
    acc.into_sorted()
}

/// `R R̄ R = R` and `R̄ R R̄ = R̄` in the algebra `D⊗D`.
pub fn check_regular(d: &QuasiBicrossedProduct, r: &QuasiRMatrix, r_bar: &QuasiRMatrix) -> CheckReport {
    let f = d.field();
    let mut a = WitnessSet::default();
    a.record_diff(&[], &triple_product(d, r, r_bar, r), &r.coordinates(), f);
    let mut b = WitnessSet::default();
    b.record_diff(&[], &triple_product(d, r_bar, r, r_bar), &r_bar.coordinates(), f);
    CheckReport::group("von Neumann regular", vec![a.into_report("R Rbar R = R"), b.into_report("Rbar R Rbar = Rbar")])
}

/// `R R̄ = 1⊗1` and `R̄ R = 1⊗1`.
pub fn check_inverse(d: &QuasiBicrossedProduct, r: &QuasiRMatrix, r_bar: &QuasiRMatrix) -> CheckReport {
    let f = d.field();
    let mut unit = Accum::default();
    outer(&mut unit, d.unit(), d.unit(), &f.one());
    let unit = unit.into_sorted();
    let mut a = WitnessSet::default();
    a.record_diff(&[], &pair_product(d, r, r_bar), &unit, f);
    let mut b = WitnessSet::default();
    b.record_diff(&[], &pair_product(d, r_bar, r), &unit, f);
    CheckReport::group("invertible", vec![a.into_report("R Rbar = 1⊗1"), b.into_report("Rbar R = 1⊗1")])
}
