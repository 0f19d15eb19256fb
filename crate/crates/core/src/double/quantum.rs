use std::sync::{Arc, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{star_cop, AlmostBialgebra, LazyProduct, WeakHopfAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{Accum, LinMap, SparseVec};
use crate::monoid::{element_inverse, FiniteMonoid};
use crate::report::{CheckReport, Witness};
use crate::scalar::Scalar;

use super::bicrossed::{Construction, Provenance, QuasiBicrossedProduct};

/// Doubles up to this dimension get a tabulated multiplication.
pub const MATERIALIZE_LIMIT: usize = 1024;

/// Default bound on the number of coproduct terms of a double.
pub const DEFAULT_MAX_TERMS: u128 = 1 << 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DoubleOptions {
    /// Build even when `H` is not biperfect.
    pub force: bool,
    pub max_terms: u128,
}

impl Default for DoubleOptions {
    fn default() -> Self {
        DoubleOptions {
            force: false,
            max_terms: DEFAULT_MAX_TERMS,
        }
    }
}

type ProductTerms = Vec<Vec<(u32, u32, Scalar)>>;

/// Products of `D(H) = H^{*cop}∞H` evaluated pointwise:
/// `(e^p∞a)(e^q∞b) = Σ e^p φ ∞ a''b` with `φ(h) = e^q(T⁻¹(a''')ha')`.
#[derive(Debug)]
pub struct DoubleKernel {
    h: WeakHopfAlgebra,
    x: WeakHopfAlgebra,
    tinv: LinMap,
    /// Per `a`, per `q`: the terms `(h, a'', c)` of `Σ c e^h ⊗ a''`.
    cache: Vec<OnceLock<ProductTerms>>,
}

impl DoubleKernel {
    pub fn new(h: &WeakHopfAlgebra) -> Result<Self> {
        let tinv = h.antipode_inverse()?.clone();
        let h = if h.is_lazy() {
            WeakHopfAlgebra::new(h.base().materialize(), h.antipode().clone())?
        } else {
            h.clone()
        };
        let x = star_cop(&h)?;
        let cache = (0..h.dim()).map(|_| OnceLock::new()).collect();
        Ok(DoubleKernel { h, x, tinv, cache })
    }

    pub fn h(&self) -> &WeakHopfAlgebra {
        &self.h
    }

    /// `H^{*cop}`.
    pub fn x(&self) -> &WeakHopfAlgebra {
        &self.x
    }

    pub fn dim(&self) -> usize {
        self.h.dim() * self.h.dim()
    }

    pub fn index(&self, p: u32, a: u32) -> u32 {
        p * self.h.dim() as u32 + a
    }

    fn terms(&self, a: u32) -> &[Vec<(u32, u32, Scalar)>] {
        self.cache[a as usize].get_or_init(|| {
            let h = &self.h;
            let d = h.dim();
            let mut acc: Vec<Accum<(u32, u32)>> = (0..d).map(|_| Accum::default()).collect();
            for ([a1, a2, a3], c) in h.coproduct3(a) {
                let left = self.tinv.column(a3 as usize);
                let right = h.basis(a1);
                for k in 0..d as u32 {
                    let v = h.mul(&h.mul(left, &h.basis(k)), &right);
                    for (q, s) in v.iter() {
                        acc[q as usize].add_owned((k, a2), &c * s);
                    }
                }
            }
            acc.into_iter().map(|m| m.into_sorted().into_iter().map(|((k, a2), c)| (k, a2, c)).collect()).collect()
        })
    }

    /// `(e^p∞e_a)(e^q∞e_b)` in pair coordinates.
    pub fn product_pairs(&self, p: u32, a: u32, q: u32, b: u32) -> Vec<((u32, u32), Scalar)> {
        let mut acc = Accum::default();
        for (k, a2, c) in &self.terms(a)[q as usize] {
            let xs = self.x.mul_basis(p, *k);
            let hs = self.h.mul_basis(*a2, b);
            for (u, s) in xs.iter() {
                let cs = c * s;
                for (v, t) in hs.iter() {
                    acc.add_owned((*u, *v), &cs * t);
                }
            }
        }
        acc.into_sorted()
    }
}

impl LazyProduct for DoubleKernel {
    fn product(&self, i: u32, j: u32) -> Vec<(u32, Scalar)> {
        let d = self.h.dim() as u32;
        self.product_pairs(i / d, i % d, j / d, j % d).into_iter().map(|((u, v), c)| (u * d + v, c)).collect()
    }
}

/// The quantum double `D(H) = H^{*cop}∞H` with basis `e^p∞e_a`.
///
/// Requires `T` invertible and, unless `opts.force`, `H` biperfect.
pub fn quantum_double(h: &WeakHopfAlgebra, opts: DoubleOptions) -> Result<QuasiBicrossedProduct> {
    let kernel = Arc::new(DoubleKernel::new(h)?);
    if !opts.force && !h.is_biperfect() {
        let which = match (h.is_perfect(), h.is_coperfect()) {
            (false, false) => "neither perfect nor coperfect",
            (false, true) => "not perfect",
            _ => "not coperfect",
        };
        return Err(Error::NotBiperfect(which.into()));
    }
    let (x, a) = (kernel.x().clone(), kernel.h().clone());
    let comul_nnz = |m: &AlmostBialgebra| (0..m.dim() as u32).map(|i| m.comul_basis(i).len() as u128).sum::<u128>();
    let needed = comul_nnz(&x) * comul_nnz(&a);
    if needed > opts.max_terms {
        return Err(Error::TooManyTerms {
            what: "the coproduct of the double".into(),
            needed,
            limit: opts.max_terms,
        });
    }
    let d = a.dim() as u32;
    let labels = (0..d).flat_map(|p| (0..d).map(move |i| (p, i))).map(|(p, i)| format!("{}∞{}", x.label(p as usize), a.label(i as usize))).collect();
    let mut unit = Vec::new();
    for (p, c) in x.unit().iter() {
        for (i, s) in a.unit().iter() {
            unit.push((p * d + i, c * s));
        }
    }
    let algebra = AlmostBialgebra::with_lazy_product(
        a.field(),
        labels,
        kernel.clone(),
        SparseVec::from_pairs(unit),
        |r| {
            let mut out = Vec::new();
            for ((p1, p2), c) in x.comul_basis(r / d) {
                for ((a1, a2), s) in a.comul_basis(r % d) {
                    out.push(((p1 * d + a1, p2 * d + a2), c * s));
                }
            }
            out
        },
        (0..d * d).map(|r| x.counit_basis(r / d) * a.counit_basis(r % d)).collect(),
    );
    let double = QuasiBicrossedProduct::from_parts(
        algebra,
        x,
        a,
        Provenance {
            construction: Construction::Double,
            source_hash: None,
        },
    )?;
    Ok(if double.dim() <= MATERIALIZE_LIMIT { double.materialized() } else { double })
}

/// Compares products in `D(kS)` with the group-like closed form
/// `(φ_A∞X)(φ_B∞W) = φ_A∞XW` if `X⁻¹AX = B` and `0` otherwise, on
/// `samples` random triples. Half the samples take `B = X⁻¹AX`.
pub fn check_closed_form(kernel: &DoubleKernel, m: &FiniteMonoid, samples: usize, seed: u64) -> Result<CheckReport> {
    let n = m.len();
    if kernel.h().dim() != n {
        return Err(Error::DimensionMismatch(format!("double of dimension {} for a monoid of order {n}", kernel.dim())));
    }
    let f = kernel.h().field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report_witnesses = Vec::new();
    let mut hits = 0usize;
    for s in 0..samples {
        let (ea, ex, ew) = (rng.random_range(0..n), rng.random_range(0..n), rng.random_range(0..n));
        let conj = m.mul(m.mul(element_inverse(m, ex)?, ea), ex);
        let eb = if s % 2 == 0 { conj } else { rng.random_range(0..n) };
        let actual = kernel.product_pairs(ea as u32, ex as u32, eb as u32, ew as u32);
        let expected = if conj == eb {
            hits += 1;
            vec![((ea as u32, m.mul(ex, ew) as u32), f.one())]
        } else {
            Vec::new()
        };
        for ((u, v), e, a) in crate::linalg::diff_sorted(&actual, &expected, f) {
            report_witnesses.push(Witness {
                index: vec![ea, ex, eb, ew, u as usize, v as usize],
                expected: e,
                actual: a,
            });
        }
    }
    Ok(CheckReport::from_witnesses("(f_A∞X)(f_B∞W) = [X^-1AX = B] f_A∞XW", report_witnesses)
        .with_info("samples", samples)
        .with_info("nonzero", hits))
}
