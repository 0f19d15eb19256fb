use crate::linalg::{Accum, SparseVec};
use crate::report::{par_witnesses, CheckReport};
use crate::scalar::Scalar;

use super::{AlmostBialgebra, Pair};

/// Associativity over all basis triples and both unit laws.
///
/// Witness indices: `[x, y, z, k]` for associativity, `[x, k]` for units.
pub fn check_algebra_axioms(a: &AlmostBialgebra) -> CheckReport {
    let d = a.dim();
    let f = a.field();
    let assoc = par_witnesses(d, |x, w| {
        let x = x as u32;
        for y in 0..d as u32 {
            let xy = SparseVec::from_sorted(a.mul_basis(x, y).into_owned());
            for z in 0..d as u32 {
                let left = a.mul(&xy, &a.basis(z));
                let yz = SparseVec::from_sorted(a.mul_basis(y, z).into_owned());
                let right = a.mul(&a.basis(x), &yz);
                if left != right {
                    w.record_diff(&[x as usize, y as usize, z as usize], left.entries(), right.entries(), f);
                }
            }
        }
    });
    let unit_law = |left_side: bool| {
        par_witnesses(d, |x, w| {
            let ex = a.basis(x as u32);
            let got = if left_side { a.mul(a.unit(), &ex) } else { a.mul(&ex, a.unit()) };
            w.record_diff(&[x], got.entries(), ex.entries(), f);
        })
    };
    CheckReport::group(
        "algebra axioms",
        vec![
            assoc.into_report("associativity"),
            unit_law(true).into_report("left unit"),
            unit_law(false).into_report("right unit"),
        ],
    )
}

/// `(Δ⊗id)Δ = (id⊗Δ)Δ` and both counit laws on every basis element.
///
/// Witness indices: `[x, a, b, c]` for coassociativity, `[x, k]` for counits.
pub fn check_coalgebra_axioms(a: &AlmostBialgebra) -> CheckReport {
    let d = a.dim();
    let f = a.field();
    let coassoc = par_witnesses(d, |x, w| {
        let left = a.coproduct3(x as u32);
        let mut right = Accum::default();
        for ((l, r), c) in a.comul_basis(x as u32) {
            for ((p, q), e) in a.comul_basis(*r) {
                right.add_owned([*l, *p, *q], c * e);
            }
        }
        w.record_diff(&[x], &left, &right.into_sorted(), f);
    });
    let counit_law = |left_side: bool| {
        par_witnesses(d, |x, w| {
            let mut acc = Accum::default();
            for ((l, r), c) in a.comul_basis(x as u32) {
                let (kept, eaten) = if left_side { (*r, *l) } else { (*l, *r) };
                acc.add_owned(kept, c * a.counit_basis(eaten));
            }
            w.record_diff(&[x], &acc.into_sorted(), a.basis(x as u32).entries(), f);
        })
    };
    CheckReport::group(
        "coalgebra axioms",
        vec![
            coassoc.into_report("coassociativity"),
            counit_law(true).into_report("left counit"),
            counit_law(false).into_report("right counit"),
        ],
    )
}

/// `Δ(xy) = Δ(x)Δ(y)` on every basis pair (witness `[x, y, l, r]`).
///
/// Whether `Δ(1) = 1⊗1` and `ε(xy) = ε(x)ε(y)` also hold is recorded as
/// non-gating info; both together make a bialgebra.
pub fn check_almost_bialgebra(a: &AlmostBialgebra) -> CheckReport {
    let d = a.dim();
    let f = a.field();
    let mult = par_witnesses(d, |x, w| {
        let x = x as u32;
        for y in 0..d as u32 {
            let mut left = Accum::default();
            for (k, c) in a.mul_basis(x, y).iter() {
                for (p, e) in a.comul_basis(*k) {
                    left.add_owned(*p, c * e);
                }
            }
            let right = product_of_coproducts(a, a.comul_basis(x), a.comul_basis(y));
            w.record_diff(&[x as usize, y as usize], &left.into_sorted(), &right, f);
        }
    });

    let unit_coproduct = {
        let lhs = a.coproduct(a.unit());
        let mut rhs = Accum::<Pair>::default();
        for (i, u) in a.unit().iter() {
            for (j, v) in a.unit().iter() {
                rhs.add_owned((i, j), u * v);
            }
        }
        lhs == rhs.into_sorted()
    };
    let counit_mult = (0..d as u32).all(|x| {
        (0..d as u32).all(|y| {
            let xy = SparseVec::from_sorted(a.mul_basis(x, y).into_owned());
            a.counit(&xy) == a.counit_basis(x) * a.counit_basis(y)
        })
    });
    let verdict = |b: bool| if b { "holds" } else { "fails" };
    CheckReport::group("almost bialgebra", vec![mult.into_report("comultiplication is multiplicative")])
        .with_info("unit-coproduct", verdict(unit_coproduct))
        .with_info("counit-multiplicative", verdict(counit_mult))
        .with_info("bialgebra", if unit_coproduct && counit_mult { "yes" } else { "no" })
}

/// `Σ x'y' ⊗ x''y''` for two coproducts given as term lists.
pub(crate) fn product_of_coproducts(a: &AlmostBialgebra, dx: &[(Pair, Scalar)], dy: &[(Pair, Scalar)]) -> Vec<(Pair, Scalar)> {
    let mut acc = Accum::default();
    for ((x1, x2), c) in dx {
        for ((y1, y2), e) in dy {
            let ce = c * e;
            let left = a.mul_basis(*x1, *y1);
            if left.is_empty() {
                continue;
            }
            let right = a.mul_basis(*x2, *y2);
            for (p, u) in left.iter() {
                let ceu = &ce * u;
                for (q, v) in right.iter() {
                    acc.add_owned((*p, *q), &ceu * v);
                }
            }
        }
    }
    acc.into_sorted()
}
