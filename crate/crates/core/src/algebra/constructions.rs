use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{LinMap, SparseVec};
use crate::scalar::Scalar;

use super::{AlmostBialgebra, Csr, MulTable, Multiplication, Pair, WeakHopfAlgebra};

fn table(d: usize, mut rows: Vec<Vec<(u32, Scalar)>>) -> Multiplication {
    Multiplication::Table(Arc::new(MulTable(Csr::build(d * d, |r| std::mem::take(&mut rows[r])))))
}

/// The dual weak Hopf algebra on the dual basis `e^i`: multiplication is
/// `Δ*`, comultiplication `m*`, unit `ε`, counit `1`, antipode `T*`.
pub fn dual(h: &WeakHopfAlgebra) -> WeakHopfAlgebra {
    let base = h.base().materialize();
    let d = base.dim();
    let f = base.field();

    let mut mul_rows: Vec<Vec<(u32, Scalar)>> = vec![Vec::new(); d * d];
    for k in 0..d {
        for ((i, j), c) in base.comul_basis(k as u32) {
            mul_rows[*i as usize * d + *j as usize].push((k as u32, c.clone()));
        }
    }
    let mut comul_rows: Vec<Vec<(Pair, Scalar)>> = vec![Vec::new(); d];
    for i in 0..d as u32 {
        for j in 0..d as u32 {
            for (k, c) in base.mul_basis(i, j).iter() {
                comul_rows[*k as usize].push(((i, j), c.clone()));
            }
        }
    }
    let unit = SparseVec::from_pairs(base.counit_values().iter().enumerate().map(|(i, c)| (i as u32, c.clone())).collect());
    let mut counit = vec![f.zero(); d];
    for (i, c) in base.unit().iter() {
        counit[i as usize] = c.clone();
    }
    let labels = base.labels().iter().map(|l| format!("{l}^*")).collect();
    let dual_base = AlmostBialgebra::from_parts(
        f,
        labels,
        table(d, mul_rows),
        unit,
        Csr::build(d, |r| std::mem::take(&mut comul_rows[r])),
        counit,
    );
    WeakHopfAlgebra::new(dual_base, h.antipode().transpose()).expect("dimensions preserved")
}

/// Same coalgebra, reversed multiplication, weak antipode `T⁻¹`.
pub fn opposite(h: &WeakHopfAlgebra) -> Result<WeakHopfAlgebra> {
    let tinv = h.antipode_inverse()?.clone();
    let base = h.base().materialize();
    let d = base.dim();
    let rows = (0..d * d).map(|r| base.mul_basis((r % d) as u32, (r / d) as u32).into_owned()).collect();
    let labels = base.labels().iter().map(|l| format!("op:{l}")).collect();
    let op = AlmostBialgebra::from_parts(base.field(), labels, table(d, rows), base.unit().clone(), (*base.comul).clone(), base.counit_values().to_vec());
    WeakHopfAlgebra::new(op, tinv)
}

fn flip_comul(a: &AlmostBialgebra) -> Csr<Pair> {
    Csr::build(a.dim(), |r| a.comul_basis(r as u32).iter().map(|((x, y), c)| ((*y, *x), c.clone())).collect())
}

/// Same algebra, flipped comultiplication, weak antipode `T⁻¹`.
pub fn coopposite(h: &WeakHopfAlgebra) -> Result<WeakHopfAlgebra> {
    let tinv = h.antipode_inverse()?.clone();
    let base = h.base();
    let labels = base.labels().iter().map(|l| format!("cop:{l}")).collect();
    let cop = AlmostBialgebra::from_parts(base.field(), labels, base.mul.clone(), base.unit().clone(), flip_comul(base), base.counit_values().to_vec());
    WeakHopfAlgebra::new(cop, tinv)
}

/// `H^{*cop}`: the dual with unchanged multiplication `Δ*`, flipped
/// comultiplication and antipode `(T*)⁻¹`. Labels stay `e^*` since this is
/// the dual basis that pairs with `H`.
pub fn star_cop(h: &WeakHopfAlgebra) -> Result<WeakHopfAlgebra> {
    h.antipode_inverse()?;
    let d = dual(h);
    let mut cop = coopposite(&d)?;
    let labels = d.labels().to_vec();
    cop = cop.with_labels(labels)?;
    Ok(cop)
}

/// `H⊗K` on the basis `(h_i, k_j)` (index `i * dim K + j`), with
/// `Δ = (id⊗flip⊗id)(Δ_H⊗Δ_K)` and `T = T_H⊗T_K`.
pub fn tensor_product(h: &WeakHopfAlgebra, k: &WeakHopfAlgebra) -> Result<WeakHopfAlgebra> {
    if h.field() != k.field() {
        return Err(Error::MixedFields(h.field(), k.field()));
    }
    let f = h.field();
    let (n, m) = (h.dim() as u32, k.dim() as u32);
    let idx = |a: u32, b: u32| a * m + b;
    let labels = (0..n)
        .flat_map(|a| (0..m).map(move |b| (a, b)))
        .map(|(a, b)| format!("({},{})", h.label(a as usize), k.label(b as usize)))
        .collect();
    let outer = |x: &[(u32, Scalar)], y: &[(u32, Scalar)]| -> SparseVec {
        SparseVec::from_pairs(x.iter().flat_map(|(a, u)| y.iter().map(move |(b, v)| (idx(*a, *b), u * v))).collect())
    };
    let base = AlmostBialgebra::from_fn(
        f,
        labels,
        |x, y| outer(&h.mul_basis(x / m, y / m), &k.mul_basis(x % m, y % m)),
        outer(h.unit().entries(), k.unit().entries()),
        |x| {
            let mut out = Vec::new();
            for ((h1, h2), c) in h.comul_basis(x / m) {
                for ((k1, k2), e) in k.comul_basis(x % m) {
                    out.push(((idx(*h1, *k1), idx(*h2, *k2)), c * e));
                }
            }
            out
        },
        (0..n * m).map(|x| h.counit_basis(x / m) * k.counit_basis(x % m)).collect(),
    );
    let cols = (0..n * m)
        .map(|x| outer(h.antipode().column((x / m) as usize).entries(), k.antipode().column((x % m) as usize).entries()))
        .collect();
    WeakHopfAlgebra::new(base, LinMap::from_columns(f, (n * m) as usize, cols)?)
}
