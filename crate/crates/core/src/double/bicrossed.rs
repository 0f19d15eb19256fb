use std::ops::Deref;

use crate::algebra::{AlmostBialgebra, WeakHopfAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{Accum, SparseVec};
use crate::report::{par_witnesses, CheckReport};

use super::matched::{check_quasi_matched, QuasiMatchedPair};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Construction {
    /// Assembled from explicit actions.
    Bicrossed,
    /// `D(H) = H^{*cop}∞H` with `A = H` and `X = star_cop(H)`.
    Double,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Provenance {
    pub construction: Construction,
    /// Hash of the serialized source, when built from a file.
    pub source_hash: Option<String>,
}

/// `X∞A` on the basis `x∞a` (index `x * dim A + a`), remembering its factors.
#[derive(Clone, Debug)]
pub struct QuasiBicrossedProduct {
    algebra: AlmostBialgebra,
    x: WeakHopfAlgebra,
    a: WeakHopfAlgebra,
    provenance: Provenance,
}

impl Deref for QuasiBicrossedProduct {
    type Target = AlmostBialgebra;

    fn deref(&self) -> &AlmostBialgebra {
        &self.algebra
    }
}

impl QuasiBicrossedProduct {
    pub fn from_parts(algebra: AlmostBialgebra, x: WeakHopfAlgebra, a: WeakHopfAlgebra, provenance: Provenance) -> Result<Self> {
        if algebra.dim() != x.dim() * a.dim() {
            return Err(Error::DimensionMismatch(format!(
                "product of dimension {} from factors of dimension {} and {}",
                algebra.dim(),
                x.dim(),
                a.dim()
            )));
        }
        Ok(QuasiBicrossedProduct { algebra, x, a, provenance })
    }

    pub fn algebra(&self) -> &AlmostBialgebra {
        &self.algebra
    }

    pub fn x(&self) -> &WeakHopfAlgebra {
        &self.x
    }

    pub fn a(&self) -> &WeakHopfAlgebra {
        &self.a
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn with_source_hash(mut self, hash: impl Into<String>) -> Self {
        self.provenance.source_hash = Some(hash.into());
        self
    }

    /// Replaces the stored multiplication by a tabulated copy.
    pub fn materialized(mut self) -> Self {
        self.algebra = self.algebra.materialize();
        self
    }

    pub fn index(&self, x: u32, a: u32) -> u32 {
        x * self.a.dim() as u32 + a
    }

    /// `Σ u_i v_j (x_i∞a_j)`.
    pub fn pure_tensor(&self, u: &SparseVec, v: &SparseVec) -> SparseVec {
        let mut out = Vec::with_capacity(u.nnz() * v.nnz());
        for (i, c) in u.iter() {
            for (j, d) in v.iter() {
                out.push((self.index(i, j), c * d));
            }
        }
        SparseVec::from_pairs(out)
    }

    /// `x∞1`.
    pub fn embed_x(&self, x: &SparseVec) -> SparseVec {
        self.pure_tensor(x, self.a.unit())
    }

    /// `1∞a`.
    pub fn embed_a(&self, a: &SparseVec) -> SparseVec {
        self.pure_tensor(self.x.unit(), a)
    }
}

/// The quasi-bicrossed product of a pair passing [`check_quasi_matched`]:
/// `(x∞a)(y∞b) = Σ x(a'▷y')∞(a''◁y'')b`, `Δ(x∞a) = Σ(x'∞a')⊗(x''∞a'')`,
/// `ε(x∞a) = ε(x)ε(a)`.
pub fn build_quasi_bicrossed(p: &QuasiMatchedPair) -> Result<QuasiBicrossedProduct> {
    let report = check_quasi_matched(p);
    if !report.passed() {
        let mut failing = Vec::new();
        collect_failing(&report, &mut failing);
        return Err(Error::QuasiMatchedFailed(failing.join(", ")));
    }
    let (x, a) = (p.x(), p.a());
    let (dx, da) = (x.dim() as u32, a.dim() as u32);
    let idx = |i: u32, j: u32| i * da + j;
    let labels = (0..dx).flat_map(|i| (0..da).map(move |j| (i, j))).map(|(i, j)| format!("{}∞{}", x.label(i as usize), a.label(j as usize))).collect();
    let f = x.field();
    let mut unit = Vec::new();
    for (i, c) in x.unit().iter() {
        for (j, d) in a.unit().iter() {
            unit.push((idx(i, j), c * d));
        }
    }
    let algebra = AlmostBialgebra::from_fn(
        f,
        labels,
        |l, r| {
            let (xi, ai, yi, bi) = (l / da, l % da, r / da, r % da);
            let mut acc = Accum::default();
            for ((a1, a2), c) in a.comul_basis(ai) {
                for ((y1, y2), d) in x.comul_basis(yi) {
                    let left = p.left_basis(*a1, *y1);
                    let right = p.right_basis(*a2, *y2);
                    if left.is_zero() || right.is_zero() {
                        continue;
                    }
                    let xs = x.mul(&x.basis(xi), left);
                    let as_ = a.mul(right, &a.basis(bi));
                    let cd = c * d;
                    for (u, s) in xs.iter() {
                        let cds = &cd * s;
                        for (v, t) in as_.iter() {
                            acc.add_owned(idx(u, v), &cds * t);
                        }
                    }
                }
            }
            acc.into_vec()
        },
        SparseVec::from_pairs(unit),
        |r| {
            let mut out = Vec::new();
            for ((x1, x2), c) in x.comul_basis(r / da) {
                for ((a1, a2), d) in a.comul_basis(r % da) {
                    out.push(((idx(*x1, *a1), idx(*x2, *a2)), c * d));
                }
            }
            out
        },
        (0..dx * da).map(|r| x.counit_basis(r / da) * a.counit_basis(r % da)).collect(),
    );
    QuasiBicrossedProduct::from_parts(
        algebra,
        x.clone(),
        a.clone(),
        Provenance {
            construction: Construction::Bicrossed,
            source_hash: None,
        },
    )
}

pub(crate) fn collect_failing(report: &CheckReport, out: &mut Vec<String>) {
    if report.children.is_empty() {
        if !report.passed() {
            out.push(report.name.clone());
        }
        return;
    }
    for c in &report.children {
        collect_failing(c, out);
    }
}

/// The factors embed multiplicatively and every basis element factors:
/// `(x∞1)(y∞1) = xy∞1`, `(1∞a)(1∞b) = 1∞ab`, `x∞a = (x∞1)(1∞a)`.
pub fn check_bicrossed_structure(d: &QuasiBicrossedProduct) -> CheckReport {
    let (x, a) = (d.x(), d.a());
    let (dx, da) = (x.dim(), a.dim());
    let f = d.field();
    let embed_x = par_witnesses(dx, |i, w| {
        let ei = d.embed_x(&x.basis(i as u32));
        for j in 0..dx as u32 {
            let lhs = d.mul(&ei, &d.embed_x(&x.basis(j)));
            let rhs = d.embed_x(&SparseVec::from_pairs(x.mul_basis(i as u32, j).into_owned()));
            w.record_diff(&[i, j as usize], lhs.entries(), rhs.entries(), f);
        }
    });
    let embed_a = par_witnesses(da, |i, w| {
        let ei = d.embed_a(&a.basis(i as u32));
        for j in 0..da as u32 {
            let lhs = d.mul(&ei, &d.embed_a(&a.basis(j)));
            let rhs = d.embed_a(&SparseVec::from_pairs(a.mul_basis(i as u32, j).into_owned()));
            w.record_diff(&[i, j as usize], lhs.entries(), rhs.entries(), f);
        }
    });
    let factor = par_witnesses(dx, |i, w| {
        let ei = d.embed_x(&x.basis(i as u32));
        for j in 0..da as u32 {
            let lhs = d.basis(d.index(i as u32, j));
            let rhs = d.mul(&ei, &d.embed_a(&a.basis(j)));
            w.record_diff(&[i, j as usize], rhs.entries(), lhs.entries(), f);
        }
    });
    CheckReport::group(
        "bicrossed structure",
        vec![
            embed_x.into_report("(x∞1)(y∞1) = xy∞1"),
            embed_a.into_report("(1∞a)(1∞b) = 1∞ab"),
            factor.into_report("x∞a = (x∞1)(1∞a)"),
        ],
    )
}
