#![allow(dead_code)]

use weakhopf::algebra::{AlmostBialgebra, WeakHopfAlgebra};
use weakhopf::linalg::LinMap;
use weakhopf::scalar::{FieldSpec, Scalar};
use weakhopf::tensor::SparseTensor;

pub const Q: FieldSpec = FieldSpec::Rationals;

/// `m ∘ (f⊗g) ∘ Δ` assembled purely from tensor contractions.
pub fn convolution_by_tensors(f: &LinMap, g: &LinMap, a: &AlmostBialgebra) -> LinMap {
    let delta = a.comul_tensor();
    let step = delta.contract(&f.to_tensor(), &[(1, 1)]).unwrap(); // [x, r, a]
    let step = step.contract(&g.to_tensor(), &[(1, 1)]).unwrap(); // [x, a, b]
    let out = step.contract(&a.mul_tensor(), &[(1, 0), (2, 1)]).unwrap(); // [x, k]
    LinMap::from_tensor(&out.permute_axes(&[1, 0]).unwrap()).unwrap()
}

/// Dense `[codomain][domain]` copy of a map.
pub fn dense(m: &LinMap) -> Vec<Vec<Scalar>> {
    (0..m.codomain()).map(|i| (0..m.domain()).map(|j| m.entry(i, j)).collect()).collect()
}

/// Rebuilds a weak Hopf algebra with one entry of `T` replaced.
pub fn with_antipode_entry(h: &WeakHopfAlgebra, row: usize, col: usize, value: Scalar) -> WeakHopfAlgebra {
    let mut t = h.antipode().to_tensor();
    let old = t.get(&[row, col]).cloned().unwrap_or_else(|| h.field().zero());
    t.add_entry(vec![row, col], &(value - old)).unwrap();
    h.with_antipode(LinMap::from_tensor(&t).unwrap()).unwrap()
}

/// Rebuilds an algebra from tensors after editing one comultiplication entry.
pub fn with_comul_entry(h: &WeakHopfAlgebra, idx: [usize; 3], value: Scalar) -> WeakHopfAlgebra {
    let mut comul = h.comul_tensor();
    let old = comul.get(&idx).cloned().unwrap_or_else(|| h.field().zero());
    comul.add_entry(idx.to_vec(), &(value - old)).unwrap();
    rebuild(h, None, Some(comul))
}

pub fn with_mul_entry(h: &WeakHopfAlgebra, idx: [usize; 3], value: Scalar) -> WeakHopfAlgebra {
    let mut mul = h.mul_tensor();
    let old = mul.get(&idx).cloned().unwrap_or_else(|| h.field().zero());
    mul.add_entry(idx.to_vec(), &(value - old)).unwrap();
    rebuild(h, Some(mul), None)
}

fn rebuild(h: &WeakHopfAlgebra, mul: Option<SparseTensor>, comul: Option<SparseTensor>) -> WeakHopfAlgebra {
    WeakHopfAlgebra::from_tensors(
        Some(h.labels().to_vec()),
        &mul.unwrap_or_else(|| h.mul_tensor()),
        &h.unit_tensor(),
        &comul.unwrap_or_else(|| h.comul_tensor()),
        &h.counit_tensor(),
        &h.antipode().to_tensor(),
    )
    .unwrap()
}

pub fn q(n: i64) -> Scalar {
    Q.from_i64(n)
}
