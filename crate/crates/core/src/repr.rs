//! Modules over doubles, crossed bimodules and the braid operator `τ∘R`.

use rayon::prelude::*;

use crate::algebra::{AlmostBialgebra, Pair, WeakHopfAlgebra};
use crate::double::{collect_failing, Construction, QuasiBicrossedProduct, QuasiRMatrix};
use crate::error::{Error, Result};
use crate::linalg::{Accum, LinMap, SparseVec};
use crate::report::{par_witnesses, CheckReport};
use crate::scalar::{FieldSpec, Scalar};
use crate::tensor::SparseTensor;

/// A left action of an algebra on `k^dim`, one matrix per basis element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleAction {
    field: FieldSpec,
    dim: usize,
    matrices: Vec<LinMap>,
}

impl ModuleAction {
    pub fn new(field: FieldSpec, dim: usize, matrices: Vec<LinMap>) -> Result<Self> {
        for m in &matrices {
            if m.domain() != dim || m.codomain() != dim {
                return Err(Error::DimensionMismatch(format!("{}x{} action matrix on a {dim}-dimensional module", m.codomain(), m.domain())));
            }
            if m.field() != field {
                return Err(Error::MixedFields(field, m.field()));
            }
        }
        Ok(ModuleAction { field, dim, matrices })
    }

    /// From a `[algebra dim, dim, dim]` tensor, `a⊗v ↦ coordinates of av`.
    pub fn from_tensor(t: &SparseTensor) -> Result<Self> {
        if t.rank() != 3 || t.shape()[1] != t.shape()[2] {
            return Err(Error::DimensionMismatch(format!("action tensor has shape {:?}", t.shape())));
        }
        let (na, n) = (t.shape()[0], t.shape()[1]);
        let mut cols: Vec<Vec<Vec<(u32, Scalar)>>> = vec![vec![Vec::new(); n]; na];
        for (i, v) in t.iter() {
            cols[i[0]][i[1]].push((i[2] as u32, v.clone()));
        }
        let matrices = cols
            .into_iter()
            .map(|c| LinMap::from_columns(t.field(), n, c.into_iter().map(SparseVec::from_pairs).collect()))
            .collect::<Result<_>>()?;
        ModuleAction::new(t.field(), n, matrices)
    }

    pub fn to_tensor(&self) -> SparseTensor {
        let entries = self.matrices.iter().enumerate().flat_map(|(a, m)| {
            m.columns().iter().enumerate().flat_map(move |(v, col)| col.iter().map(move |(w, c)| (vec![a, v, w as usize], c.clone())))
        });
        SparseTensor::from_entries(self.field, vec![self.matrices.len(), self.dim, self.dim], entries).expect("in range")
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn algebra_dim(&self) -> usize {
        self.matrices.len()
    }

    /// The matrix of basis element `a`.
    pub fn matrix(&self, a: u32) -> &LinMap {
        &self.matrices[a as usize]
    }

    /// The matrix of `Σ c_a e_a`.
    pub fn matrix_of(&self, a: &SparseVec) -> LinMap {
        let cols = (0..self.dim)
            .map(|v| {
                let mut acc = Accum::default();
                for (i, c) in a.iter() {
                    for (w, s) in self.matrices[i as usize].column(v).iter() {
                        acc.add_owned(w, c * s);
                    }
                }
                acc.into_vec()
            })
            .collect();
        LinMap::from_columns(self.field, self.dim, cols).expect("in range")
    }

    pub fn act(&self, a: &SparseVec, v: &SparseVec) -> SparseVec {
        let mut acc = Accum::default();
        for (i, c) in a.iter() {
            for (w, s) in self.matrices[i as usize].apply(v).iter() {
                acc.add_owned(w, c * s);
            }
        }
        acc.into_vec()
    }

    /// The same action with one matrix entry replaced.
    pub fn with_entry(&self, a: usize, v: usize, w: usize, value: Scalar) -> Self {
        let mut t = self.to_tensor();
        let old = t.get(&[a, v, w]).cloned().unwrap_or_else(|| self.field.zero());
        t.add_entry(vec![a, v, w], &(value - old)).expect("in range");
        ModuleAction::from_tensor(&t).expect("same shape")
    }
}

/// `A` acting on itself by left multiplication.
pub fn regular_module(a: &AlmostBialgebra) -> ModuleAction {
    let n = a.dim();
    let matrices = (0..n as u32)
        .into_par_iter()
        .map(|i| {
            let cols = (0..n as u32).map(|j| SparseVec::from_pairs(a.mul_basis(i, j).into_owned())).collect();
            LinMap::from_columns(a.field(), n, cols).expect("in range")
        })
        .collect();
    ModuleAction::new(a.field(), n, matrices).expect("square")
}

/// The one-dimensional module `a·v = ε(a)v`.
pub fn trivial_module(a: &AlmostBialgebra) -> ModuleAction {
    let f = a.field();
    let matrices = a.counit_values().iter().map(|c| LinMap::from_columns(f, 1, vec![SparseVec::from_pairs(vec![(0, c.clone())])]).expect("1x1")).collect();
    ModuleAction::new(f, 1, matrices).expect("square")
}

/// `(ab)v = a(bv)` and `1v = v` over all basis pairs.
pub fn check_module(a: &AlmostBialgebra, act: &ModuleAction) -> CheckReport {
    let name = "module";
    if act.algebra_dim() != a.dim() || act.field() != a.field() {
        return CheckReport::failed(name, format!("action of a {}-dimensional algebra, expected {}", act.algebra_dim(), a.dim()));
    }
    let f = a.field();
    let n = act.dim();
    let assoc = par_witnesses(a.dim(), |i, w| {
        let ma = act.matrix(i as u32);
        for j in 0..a.dim() as u32 {
            let ab = act.matrix_of(&SparseVec::from_pairs(a.mul_basis(i as u32, j).into_owned()));
            let mb = act.matrix(j);
            for v in 0..n {
                let rhs = ma.apply(mb.column(v));
                w.record_diff(&[i, j as usize, v], ab.column(v).entries(), rhs.entries(), f);
            }
        }
    });
    let unit_matrix = act.matrix_of(a.unit());
    let unit = par_witnesses(n, |v, w| {
        w.record_diff(&[v], unit_matrix.column(v).entries(), SparseVec::basis(v as u32, f).entries(), f);
    });
    CheckReport::group(name, vec![assoc.into_report("(ab)v = a(bv)"), unit.into_report("1v = v")])
}

/// A left `H`-module with a right `H`-coaction `Δ_V(β) = Σ β_V⊗β_H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossedBimodule {
    h: WeakHopfAlgebra,
    mu: ModuleAction,
    /// `delta[β]` lists `((v, h), c)` for `Σ c e_v⊗e_h`, sorted.
    delta: Vec<Vec<(Pair, Scalar)>>,
}

impl CrossedBimodule {
    pub fn new(h: WeakHopfAlgebra, mu: ModuleAction, delta: Vec<Vec<(Pair, Scalar)>>) -> Result<Self> {
        let n = mu.dim();
        if mu.algebra_dim() != h.dim() || delta.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "module of dimension {n} with {} coaction rows over a {}-dimensional algebra",
                delta.len(),
                h.dim()
            )));
        }
        let delta = delta
            .into_iter()
            .map(|row| {
                let mut acc = Accum::default();
                for (k, c) in row {
                    if k.0 as usize >= n || k.1 as usize >= h.dim() {
                        return Err(Error::DimensionMismatch("coaction term out of range".into()));
                    }
                    acc.add_owned(k, c);
                }
                Ok(acc.into_sorted())
            })
            .collect::<Result<_>>()?;
        Ok(CrossedBimodule { h, mu, delta })
    }

    /// From `mu` `[dim H, dim, dim]` and `delta` `[dim, dim, dim H]`.
    pub fn from_tensors(h: WeakHopfAlgebra, mu: &SparseTensor, delta: &SparseTensor) -> Result<Self> {
        let mu = ModuleAction::from_tensor(mu)?;
        let n = mu.dim();
        if delta.shape() != [n, n, h.dim()] {
            return Err(Error::DimensionMismatch(format!("coaction tensor has shape {:?}", delta.shape())));
        }
        let mut rows: Vec<Vec<(Pair, Scalar)>> = vec![Vec::new(); n];
        for (i, c) in delta.iter() {
            rows[i[0]].push(((i[1] as u32, i[2] as u32), c.clone()));
        }
        CrossedBimodule::new(h, mu, rows)
    }

    pub fn h(&self) -> &WeakHopfAlgebra {
        &self.h
    }

    pub fn mu(&self) -> &ModuleAction {
        &self.mu
    }

    pub fn dim(&self) -> usize {
        self.mu.dim()
    }

    pub fn delta_basis(&self, b: u32) -> &[(Pair, Scalar)] {
        &self.delta[b as usize]
    }

    pub fn delta_tensor(&self) -> SparseTensor {
        let entries = self.delta.iter().enumerate().flat_map(|(b, row)| row.iter().map(move |((v, h), c)| (vec![b, *v as usize, *h as usize], c.clone())));
        SparseTensor::from_entries(self.h.field(), vec![self.dim(), self.dim(), self.h.dim()], entries).expect("in range")
    }

    /// `Δ_V` of an arbitrary vector.
    pub fn coact(&self, v: &SparseVec) -> Vec<(Pair, Scalar)> {
        let mut acc = Accum::default();
        for (b, c) in v.iter() {
            for (k, s) in &self.delta[b as usize] {
                acc.add_owned(*k, c * s);
            }
        }
        acc.into_sorted()
    }

    /// The same structure with one coaction entry replaced.
    pub fn with_delta_entry(&self, b: usize, v: usize, h: usize, value: Scalar) -> Result<Self> {
        let mut t = self.delta_tensor();
        let old = t.get(&[b, v, h]).cloned().unwrap_or_else(|| self.h.field().zero());
        t.add_entry(vec![b, v, h], &(value - old))?;
        CrossedBimodule::from_tensors(self.h.clone(), &self.mu.to_tensor(), &t)
    }
}

fn require_double(d: &QuasiBicrossedProduct) -> Result<()> {
    match d.provenance().construction {
        Construction::Double => Ok(()),
        Construction::Bicrossed => Err(Error::MissingProvenance),
    }
}

/// Restricts a `D(H)`-module to `H` along `a ↦ ε∞a` and to `H^{*cop}` along
/// `x ↦ x∞1`, and sets `Δ_V(β) = Σ_i e^iβ⊗e_i`.
pub fn double_module_to_crossed(d: &QuasiBicrossedProduct, act: &ModuleAction) -> Result<CrossedBimodule> {
    require_double(d)?;
    let report = check_module(d, act);
    if !report.passed() {
        let mut failing = Vec::new();
        collect_failing(&report, &mut failing);
        return Err(Error::ModuleLawFailure(failing.join(", ")));
    }
    let (x, h) = (d.x(), d.a());
    let n = h.dim() as u32;
    let mu = (0..n).map(|a| act.matrix_of(&d.embed_a(&h.basis(a)))).collect();
    let mu = ModuleAction::new(act.field(), act.dim(), mu)?;
    let dual_side: Vec<LinMap> = (0..n).map(|i| act.matrix_of(&d.embed_x(&x.basis(i)))).collect();
    let delta = (0..act.dim())
        .map(|b| dual_side.iter().enumerate().flat_map(|(i, m)| m.column(b).iter().map(move |(v, c)| ((v, i as u32), c.clone())).collect::<Vec<_>>()).collect())
        .collect();
    CrossedBimodule::new(h.clone(), mu, delta)
}

/// The `D(H)`-module with `(x∞a)β = x(aβ)` and `xβ = Σ⟨x, β_H⟩β_V`.
pub fn crossed_to_double_module(d: &QuasiBicrossedProduct, cb: &CrossedBimodule) -> Result<ModuleAction> {
    require_double(d)?;
    if d.a() != cb.h() {
        return Err(Error::DimensionMismatch("crossed bimodule over a different algebra".into()));
    }
    let report = check_crossed_bimodule(cb);
    if !report.passed() {
        let mut failing = Vec::new();
        collect_failing(&report, &mut failing);
        return Err(Error::CrossedLawsFailure(failing.join(", ")));
    }
    let nh = cb.h().dim() as u32;
    let n = cb.dim();
    let f = cb.h().field();
    // Row p of the dual-side action: β ↦ Σ_{β_H = e_p} β_V.
    let dual_side: Vec<LinMap> = (0..nh)
        .map(|p| {
            let cols = (0..n as u32)
                .map(|b| SparseVec::from_pairs(cb.delta_basis(b).iter().filter(|((_, hh), _)| *hh == p).map(|((v, _), c)| (*v, c.clone())).collect()))
                .collect();
            LinMap::from_columns(f, n, cols).expect("in range")
        })
        .collect();
    let matrices = (0..nh)
        .flat_map(|p| (0..nh).map(move |a| (p, a)))
        .map(|(p, a)| dual_side[p as usize].compose(cb.mu().matrix(a)).expect("square"))
        .collect();
    ModuleAction::new(f, n, matrices)
}

/// The axioms of a crossed bimodule plus the compatibility needed for a
/// `D(H)`-module, each a sub-report.
pub fn check_crossed_bimodule(cb: &CrossedBimodule) -> CheckReport {
    let h = cb.h();
    let f = h.field();
    let n = cb.dim();
    let nh = h.dim();
    let mu = cb.mu();

    let module = {
        let r = check_module(h, mu);
        CheckReport { name: "left module".into(), ..r }
    };

    // (Δ_V⊗id)Δ_V = (id⊗Δ)Δ_V and (id⊗ε)Δ_V = id.
    let coassoc = par_witnesses(n, |b, w| {
        let mut lhs = Accum::<[u32; 3]>::default();
        let mut rhs = Accum::<[u32; 3]>::default();
        for ((v, hh), c) in cb.delta_basis(b as u32) {
            for ((v2, h1), s) in cb.delta_basis(*v) {
                lhs.add_owned([*v2, *h1, *hh], c * s);
            }
            for ((h1, h2), s) in h.comul_basis(*hh) {
                rhs.add_owned([*v, *h1, *h2], c * s);
            }
        }
        w.record_diff(&[b], &lhs.into_sorted(), &rhs.into_sorted(), f);
    });
    let counit = par_witnesses(n, |b, w| {
        let mut acc = Accum::default();
        for ((v, hh), c) in cb.delta_basis(b as u32) {
            acc.add_owned(*v, c * h.counit_basis(*hh));
        }
        w.record_diff(&[b], &acc.into_sorted(), SparseVec::basis(b as u32, f).entries(), f);
    });
    let comodule = CheckReport::group(
        "right comodule",
        vec![coassoc.into_report("(Delta_V⊗id)Delta_V = (id⊗Delta)Delta_V"), counit.into_report("(id⊗eps)Delta_V = id")],
    );

    // Σ a'β_V⊗a''β_H = Σ (a''β)_V⊗(a''β)_H a'.
    let crossed = par_witnesses(nh, |a, w| {
        for b in 0..n as u32 {
            let mut lhs = Accum::<Pair>::default();
            let mut rhs = Accum::<Pair>::default();
            for ((a1, a2), c) in h.comul_basis(a as u32) {
                for ((v, hh), s) in cb.delta_basis(b) {
                    let left = mu.matrix(*a1).column(*v as usize);
                    let right = h.mul_basis(*a2, *hh);
                    let cs = c * s;
                    for (i, t) in left.iter() {
                        let cst = &cs * t;
                        for (j, z) in right.iter() {
                            lhs.add_owned((i, *j), &cst * z);
                        }
                    }
                }
                let moved = mu.matrix(*a2).column(b as usize);
                for ((v, hh), s) in cb.coact(moved) {
                    let cs = c * &s;
                    for (j, z) in h.mul_basis(hh, *a1).iter() {
                        rhs.add_owned((v, *j), &cs * z);
                    }
                }
            }
            w.record_diff(&[a, b as usize], &lhs.into_sorted(), &rhs.into_sorted(), f);
        }
    });

    // Σ T⁻¹(a''')a''β_H⊗a'β_V = Σ β_H⊗aβ_V.
    let twisted = match h.antipode_inverse() {
        Err(_) => CheckReport::failed("T^-1(a''')a''b_H⊗a'b_V = b_H⊗ab_V", "weak antipode is not invertible"),
        Ok(tinv) => par_witnesses(nh, |a, w| {
            let triples = h.coproduct3(a as u32);
            for b in 0..n as u32 {
                let mut lhs = Accum::<Pair>::default();
                for ([a1, a2, a3], c) in &triples {
                    let left = h.mul(tinv.column(*a3 as usize), &h.basis(*a2));
                    for ((v, hh), s) in cb.delta_basis(b) {
                        let hv = h.mul(&left, &h.basis(*hh));
                        let av = mu.matrix(*a1).column(*v as usize);
                        let cs = c * s;
                        for (i, t) in hv.iter() {
                            let cst = &cs * t;
                            for (j, z) in av.iter() {
                                lhs.add_owned((i, j), &cst * z);
                            }
                        }
                    }
                }
                let mut rhs = Accum::<Pair>::default();
                for ((v, hh), s) in cb.delta_basis(b) {
                    for (j, z) in mu.matrix(a as u32).column(*v as usize).iter() {
                        rhs.add_owned((*hh, j), s * z);
                    }
                }
                w.record_diff(&[a, b as usize], &lhs.into_sorted(), &rhs.into_sorted(), f);
            }
        })
        .into_report("T^-1(a''')a''b_H⊗a'b_V = b_H⊗ab_V"),
    };

    CheckReport::group(
        "crossed bimodule",
        vec![module, comodule, crossed.into_report("a'b_V⊗a''b_H = (a''b)_V⊗(a''b)_H a'"), twisted],
    )
}

/// `C(v⊗w) = τ(R(v⊗w))` on `V⊗V`, with `v⊗w` at index `v * dim + w`.
pub fn braid_operator(act: &ModuleAction, r: &QuasiRMatrix) -> LinMap {
    let n = act.dim();
    let legs: Vec<(LinMap, LinMap)> = r.terms().iter().map(|(l, rr)| (act.matrix_of(l), act.matrix_of(rr))).collect();
    let cols = (0..n * n)
        .into_par_iter()
        .map(|k| {
            let (v, w) = (k / n, k % n);
            let mut acc = Accum::default();
            for (l, rr) in &legs {
                for (i, c) in l.column(v).iter() {
                    for (j, s) in rr.column(w).iter() {
                        acc.add_owned(j * n as u32 + i, c * s);
                    }
                }
            }
            acc.into_vec()
        })
        .collect();
    LinMap::from_columns(act.field(), n * n, cols).expect("in range")
}

/// `C̄(v⊗w) = R̄(w⊗v)`, the generalized inverse of [`braid_operator`] for
/// `R̄`: flip first, then act.
pub fn braid_inverse_operator(act: &ModuleAction, r_bar: &QuasiRMatrix) -> LinMap {
    let n = act.dim();
    let flipped = braid_operator(act, r_bar);
    // braid_operator gives τ∘R̄; conjugating by τ turns it into R̄∘τ.
    let cols = (0..n * n).map(|k| flip_vec(flipped.column((k % n) * n + k / n), n)).collect();
    LinMap::from_columns(act.field(), n * n, cols).expect("in range")
}

fn flip_vec(v: &SparseVec, n: usize) -> SparseVec {
    let n = n as u32;
    SparseVec::from_pairs(v.iter().map(|(k, c)| ((k % n) * n + k / n, c.clone())).collect())
}

/// `m⊗id` (`left`) or `id⊗m` on `(k^n)^{⊗3}` for `m` on `k^n⊗k^n`.
fn on_three_legs(m: &LinMap, n: usize, left: bool) -> LinMap {
    let cols = (0..n * n * n)
        .map(|k| {
            let (a, rest) = (k / (n * n), k % (n * n));
            let (ab, c) = (k / n, k % n);
            if left {
                SparseVec::from_pairs(m.column(ab).iter().map(|(i, s)| (i * n as u32 + c as u32, s.clone())).collect())
            } else {
                SparseVec::from_pairs(m.column(rest).iter().map(|(i, s)| ((a * n * n) as u32 + i, s.clone())).collect())
            }
        })
        .collect();
    LinMap::from_columns(m.field(), n * n * n, cols).expect("in range")
}

fn compare_maps(name: &str, lhs: &LinMap, rhs: &LinMap) -> CheckReport {
    let f = lhs.field();
    par_witnesses(lhs.domain(), |j, w| {
        w.record_diff(&[j], lhs.column(j).entries(), rhs.column(j).entries(), f);
    })
    .into_report(name)
}

/// The braid relation `(C⊗id)(id⊗C)(C⊗id) = (id⊗C)(C⊗id)(id⊗C)` and
/// regularity `C C̄ C = C`, `C̄ C C̄ = C̄`, for operators on `V⊗V`.
pub fn check_braid_and_regularity(c: &LinMap, c_bar: &LinMap) -> Result<CheckReport> {
    let nn = c.domain();
    let n = (nn as f64).sqrt().round() as usize;
    if n * n != nn || c.codomain() != nn || c_bar.domain() != nn || c_bar.codomain() != nn {
        return Err(Error::DimensionMismatch(format!("operators of size {nn} are not on a square V⊗V")));
    }
    let (c12, c23) = (on_three_legs(c, n, true), on_three_legs(c, n, false));
    let lhs = c12.compose(&c23)?.compose(&c12)?;
    let rhs = c23.compose(&c12)?.compose(&c23)?;
    let braid = compare_maps("braid relation (C⊗id)(id⊗C)(C⊗id) = (id⊗C)(C⊗id)(id⊗C)", &lhs, &rhs)
        .with_note("the braid relation on V⊗V⊗V, not the Lie-algebraic classical Yang-Baxter equation");
    let ccc = compare_maps("C Cbar C = C", &c.compose(c_bar)?.compose(c)?, c);
    let bcb = compare_maps("Cbar C Cbar = Cbar", &c_bar.compose(c)?.compose(c_bar)?, c_bar);
    Ok(CheckReport::group("braid operator", vec![braid, CheckReport::group("regular", vec![ccc, bcb])]))
}

/// `C∘Δ(x) = Δ(x)∘C` for the diagonal action of every basis element `x`.
pub fn check_braid_equivariance(d: &AlmostBialgebra, act: &ModuleAction, c: &LinMap) -> CheckReport {
    let n = act.dim();
    let f = act.field();
    par_witnesses(d.dim(), |x, w| {
        let mut cols: Vec<Accum<u32>> = (0..n * n).map(|_| Accum::default()).collect();
        for ((x1, x2), s) in d.comul_basis(x as u32) {
            let (m1, m2) = (act.matrix(*x1), act.matrix(*x2));
            for (k, col) in cols.iter_mut().enumerate() {
                for (i, a) in m1.column(k / n).iter() {
                    let sa = s * a;
                    for (j, b) in m2.column(k % n).iter() {
                        col.add_owned(i * n as u32 + j, &sa * b);
                    }
                }
            }
        }
        let diag = LinMap::from_columns(f, n * n, cols.into_iter().map(Accum::into_vec).collect()).expect("in range");
        let lhs = c.compose(&diag).expect("square");
        let rhs = diag.compose(c).expect("square");
        for j in 0..n * n {
            w.record_diff(&[x, j], lhs.column(j).entries(), rhs.column(j).entries(), f);
        }
    })
    .into_report("C Delta(x) = Delta(x) C")
}
