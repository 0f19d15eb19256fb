use std::ops::Deref;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::linalg::{matrix_inverse, Accum, LinMap, SparseVec};
use crate::report::{par_witnesses, CheckReport};
use crate::scalar::Scalar;
use crate::tensor::SparseTensor;

use super::{check_almost_bialgebra, AlmostBialgebra, Pair};

/// An almost bialgebra with a weak antipode `T`.
///
/// Immutable once built; derived facts (the inverse of `T`, perfectness and
/// so on) are computed on first use and cached.
#[derive(Clone, Debug)]
pub struct WeakHopfAlgebra {
    base: AlmostBialgebra,
    antipode: LinMap,
    cache: Arc<Cache>,
}

#[derive(Debug, Default)]
struct Cache {
    antipode_inverse: OnceLock<Option<LinMap>>,
    bialgebra: OnceLock<bool>,
    anti_morphism: OnceLock<bool>,
    perfect: OnceLock<bool>,
    coperfect: OnceLock<bool>,
}

impl WeakHopfAlgebra {
    pub fn new(base: AlmostBialgebra, antipode: LinMap) -> Result<Self> {
        let d = base.dim();
        if antipode.domain() != d || antipode.codomain() != d {
            return Err(Error::DimensionMismatch(format!(
                "antipode is {}x{} on a {d}-dimensional algebra",
                antipode.codomain(),
                antipode.domain()
            )));
        }
        if antipode.field() != base.field() {
            return Err(Error::MixedFields(base.field(), antipode.field()));
        }
        Ok(WeakHopfAlgebra {
            base,
            antipode,
            cache: Arc::default(),
        })
    }

    /// Builds from structure tensors; `antipode` is a `[d, d]` matrix.
    pub fn from_tensors(
        labels: Option<Vec<String>>,
        mul: &SparseTensor,
        unit: &SparseTensor,
        comul: &SparseTensor,
        counit: &SparseTensor,
        antipode: &SparseTensor,
    ) -> Result<Self> {
        let base = AlmostBialgebra::from_tensors(labels, mul, unit, comul, counit)?;
        WeakHopfAlgebra::new(base, LinMap::from_tensor(antipode)?)
    }

    pub fn base(&self) -> &AlmostBialgebra {
        &self.base
    }

    pub fn into_base(self) -> AlmostBialgebra {
        self.base
    }

    pub fn antipode(&self) -> &LinMap {
        &self.antipode
    }

    /// Same algebra, different weak antipode (cached facts are reset).
    pub fn with_antipode(&self, antipode: LinMap) -> Result<Self> {
        WeakHopfAlgebra::new(self.base.clone(), antipode)
    }

    pub fn with_labels(&self, labels: Vec<String>) -> Result<Self> {
        Ok(WeakHopfAlgebra {
            base: self.base.clone().with_labels(labels)?,
            antipode: self.antipode.clone(),
            cache: self.cache.clone(),
        })
    }

    pub fn apply_antipode(&self, x: &SparseVec) -> SparseVec {
        self.antipode.apply(x)
    }

    pub fn antipode_inverse(&self) -> Result<&LinMap> {
        self.cache
            .antipode_inverse
            .get_or_init(|| matrix_inverse(&self.antipode).ok())
            .as_ref()
            .ok_or(Error::AntipodeNotInvertible)
    }

    pub fn antipode_invertible(&self) -> bool {
        self.antipode_inverse().is_ok()
    }

    /// Whether `Δ(1) = 1⊗1` and `ε` is multiplicative on top of the almost
    /// bialgebra law.
    pub fn is_bialgebra(&self) -> bool {
        *self.cache.bialgebra.get_or_init(|| {
            let r = check_almost_bialgebra(&self.base);
            r.passed() && r.info_value("bialgebra") == Some("yes")
        })
    }

    pub fn is_anti_morphism(&self) -> bool {
        *self.cache.anti_morphism.get_or_init(|| check_anti_bialgebra_morphism(self).passed())
    }

    pub fn is_perfect(&self) -> bool {
        *self.cache.perfect.get_or_init(|| check_perfect(self).passed())
    }

    pub fn is_coperfect(&self) -> bool {
        *self.cache.coperfect.get_or_init(|| check_coperfect(self).passed())
    }

    pub fn is_biperfect(&self) -> bool {
        self.is_perfect() && self.is_coperfect()
    }
}

impl Deref for WeakHopfAlgebra {
    type Target = AlmostBialgebra;

    fn deref(&self) -> &AlmostBialgebra {
        &self.base
    }
}

impl PartialEq for WeakHopfAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base && self.antipode == other.antipode
    }
}

impl Eq for WeakHopfAlgebra {}

fn check_endomorphism(f: &LinMap, d: usize) -> Result<()> {
    if f.domain() != d || f.codomain() != d {
        return Err(Error::DimensionMismatch(format!("{}x{} map on a {d}-dimensional algebra", f.codomain(), f.domain())));
    }
    Ok(())
}

/// `(f∗g)(x) = Σ f(x')g(x'')`.
pub fn convolution(f: &LinMap, g: &LinMap, a: &AlmostBialgebra) -> Result<LinMap> {
    let d = a.dim();
    check_endomorphism(f, d)?;
    check_endomorphism(g, d)?;
    let cols = (0..d as u32)
        .map(|x| {
            let mut acc = Accum::default();
            for ((l, r), c) in a.comul_basis(x) {
                add_scaled(&mut acc, &a.mul(f.column(*l as usize), g.column(*r as usize)), c);
            }
            acc.into_vec()
        })
        .collect();
    LinMap::from_columns(a.field(), d, cols)
}

/// `(f∗g∗h)(x) = Σ f(x')g(x'')h(x''')`.
pub fn convolution3(f: &LinMap, g: &LinMap, h: &LinMap, a: &AlmostBialgebra) -> Result<LinMap> {
    let d = a.dim();
    for m in [f, g, h] {
        check_endomorphism(m, d)?;
    }
    let cols = (0..d as u32).map(|x| conv3_at(f, g, h, a, x)).collect();
    LinMap::from_columns(a.field(), d, cols)
}

fn conv3_at(f: &LinMap, g: &LinMap, h: &LinMap, a: &AlmostBialgebra, x: u32) -> SparseVec {
    let mut acc = Accum::default();
    for ([p, q, r], c) in a.coproduct3(x) {
        let fg = a.mul(f.column(p as usize), g.column(q as usize));
        if fg.is_zero() {
            continue;
        }
        add_scaled(&mut acc, &a.mul(&fg, h.column(r as usize)), &c);
    }
    acc.into_vec()
}

fn add_scaled(acc: &mut Accum<u32>, v: &SparseVec, c: &Scalar) {
    for (k, x) in v.iter() {
        acc.add_owned(k, x * c);
    }
}

/// `id∗T∗id = id` and `T∗id∗T = T`, column by column (witness `[x, k]`).
pub fn check_weak_antipode(h: &WeakHopfAlgebra) -> CheckReport {
    let d = h.dim();
    let id = LinMap::identity(h.field(), d);
    let t = h.antipode();
    let first = par_witnesses(d, |x, w| {
        let got = conv3_at(&id, t, &id, h, x as u32);
        w.record_diff(&[x], got.entries(), h.basis(x as u32).entries(), h.field());
    });
    let second = par_witnesses(d, |x, w| {
        let got = conv3_at(t, &id, t, h, x as u32);
        w.record_diff(&[x], got.entries(), t.column(x).entries(), h.field());
    });
    CheckReport::group("weak antipode", vec![first.into_report("id*T*id = id"), second.into_report("T*id*T = T")])
}

/// `T(xy) = T(y)T(x)`, `T(1) = 1`, `Δ(T(x)) = Σ T(x'')⊗T(x')`, `ε(T(x)) = ε(x)`.
pub fn check_anti_bialgebra_morphism(h: &WeakHopfAlgebra) -> CheckReport {
    let d = h.dim();
    let f = h.field();
    let t = h.antipode();
    let anti_mul = par_witnesses(d, |x, w| {
        let x = x as u32;
        for y in 0..d as u32 {
            let xy = SparseVec::from_sorted(h.mul_basis(x, y).into_owned());
            let left = t.apply(&xy);
            let right = h.mul(t.column(y as usize), t.column(x as usize));
            w.record_diff(&[x as usize, y as usize], left.entries(), right.entries(), f);
        }
    });
    let mut unital = crate::report::WitnessSet::default();
    unital.record_diff(&[], t.apply(h.unit()).entries(), h.unit().entries(), f);
    let anti_comul = par_witnesses(d, |x, w| {
        let left = h.coproduct(t.column(x));
        let mut right = Accum::<Pair>::default();
        for ((l, r), c) in h.comul_basis(x as u32) {
            for (p, u) in t.column(*r as usize).iter() {
                let cu = c * u;
                for (q, v) in t.column(*l as usize).iter() {
                    right.add_owned((p, q), &cu * v);
                }
            }
        }
        w.record_diff(&[x], &left, &right.into_sorted(), f);
    });
    let counital = par_witnesses(d, |x, w| {
        let got = h.counit(t.column(x));
        let want = h.counit_basis(x as u32).clone();
        if got != want {
            w.push(crate::report::Witness {
                index: vec![x],
                expected: want,
                actual: got,
            });
        }
    });
    CheckReport::group(
        "anti-bialgebra morphism",
        vec![
            anti_mul.into_report("T(xy) = T(y)T(x)"),
            unital.into_report("T(1) = 1"),
            anti_comul.into_report("Delta(T(x)) = T(x'')⊗T(x')"),
            counital.into_report("eps(T(x)) = eps(x)"),
        ],
    )
}

/// Every `z_x` commutes with every basis element (witness `[x, b, k]`).
fn check_central(h: &WeakHopfAlgebra, name: &str, z: impl Fn(u32) -> SparseVec + Sync + Send) -> CheckReport {
    let d = h.dim();
    par_witnesses(d, |x, w| {
        let zx = z(x as u32);
        if zx.is_zero() {
            return;
        }
        for b in 0..d as u32 {
            let eb = h.basis(b);
            let left = h.mul(&zx, &eb);
            let right = h.mul(&eb, &zx);
            w.record_diff(&[x, b as usize], left.entries(), right.entries(), h.field());
        }
    })
    .into_report(name)
}

/// `T` is an anti-bialgebra morphism and `Σ x'T(x'')` is central for every
/// basis element `x`.
pub fn check_perfect(h: &WeakHopfAlgebra) -> CheckReport {
    let t = h.antipode();
    let central = check_central(h, "(id*T)(H) central", |x| {
        let mut acc = Accum::default();
        for ((l, r), c) in h.comul_basis(x) {
            add_scaled(&mut acc, &h.mul(&h.basis(*l), t.column(*r as usize)), c);
        }
        acc.into_vec()
    });
    CheckReport::group("perfect", vec![check_anti_bialgebra_morphism(h), central])
}

/// Shared shape of the coperfectness identities: compares
/// `Σ u(x1,x2) ⊗ x3` with `Σ u(x2,x3) ⊗ x1` where `u` is a product.
fn check_shifted(h: &WeakHopfAlgebra, name: &str, u: impl Fn(u32, u32) -> SparseVec + Sync + Send) -> CheckReport {
    let d = h.dim();
    par_witnesses(d, |x, w| {
        let mut left = Accum::<Pair>::default();
        let mut right = Accum::<Pair>::default();
        for ([a, b, c], k) in h.coproduct3(x as u32) {
            for (p, v) in u(a, b).iter() {
                left.add_owned((p, c), &k * v);
            }
            for (p, v) in u(b, c).iter() {
                right.add_owned((p, a), &k * v);
            }
        }
        w.record_diff(&[x], &left.into_sorted(), &right.into_sorted(), h.field());
    })
    .into_report(name)
}

/// `T` is an anti-bialgebra morphism and
/// `Σ x'T(x'')⊗x''' = Σ x''T(x''')⊗x'` (witness `[x, p, c]`).
pub fn check_coperfect(h: &WeakHopfAlgebra) -> CheckReport {
    let t = h.antipode();
    let shifted = check_shifted(h, "x'T(x'')⊗x''' = x''T(x''')⊗x'", |a, b| h.mul(&h.basis(a), t.column(b as usize)));
    CheckReport::group("coperfect", vec![check_anti_bialgebra_morphism(h), shifted])
}

/// The mirrored conditions `(T∗id)(H) ⊆ C(H)` and
/// `Σ T(x')x''⊗x''' = Σ T(x'')x'''⊗x'`, each bundled with the
/// anti-morphism check like their counterparts in [`check_perfect`] and
/// [`check_coperfect`].
pub fn check_perfect_variant(h: &WeakHopfAlgebra) -> Result<CheckReport> {
    h.antipode_inverse()?;
    let t = h.antipode();
    let anti = check_anti_bialgebra_morphism(h);
    let central = check_central(h, "(T*id)(H) central", |x| {
        let mut acc = Accum::default();
        for ((l, r), c) in h.comul_basis(x) {
            add_scaled(&mut acc, &h.mul(t.column(*l as usize), &h.basis(*r)), c);
        }
        acc.into_vec()
    });
    let shifted = check_shifted(h, "T(x')x''⊗x''' = T(x'')x'''⊗x'", |a, b| h.mul(t.column(a as usize), &h.basis(b)));
    Ok(CheckReport::group(
        "perfect variants",
        vec![
            CheckReport::group("perfect via T*id", vec![anti.clone(), central]),
            CheckReport::group("coperfect via T(x')x''", vec![anti, shifted]),
        ],
    )
    .with_note("equivalent to check_perfect / check_coperfect when T is an invertible anti-bialgebra morphism"))
}
