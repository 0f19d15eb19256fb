use crate::algebra::{Pair, WeakHopfAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{Accum, SparseVec};
use crate::pairing::{check_skew_pair, pair_column, pair_row, BilinearForm};
use crate::report::{par_witnesses, CheckReport, Witness, WitnessSet};
use crate::scalar::Scalar;
use crate::tensor::SparseTensor;

/// Two algebras acting on each other: `a▷x ∈ X` and `a◁x ∈ A`.
#[derive(Clone, Debug)]
pub struct QuasiMatchedPair {
    x: WeakHopfAlgebra,
    a: WeakHopfAlgebra,
    /// Index `a * dim X + x`.
    left: Vec<SparseVec>,
    right: Vec<SparseVec>,
}

impl PartialEq for QuasiMatchedPair {
    fn eq(&self, other: &Self) -> bool {
        self.x == other.x && self.a == other.a && self.left == other.left && self.right == other.right
    }
}

impl QuasiMatchedPair {
    /// `left[a * dim X + x] = a▷x`, `right[a * dim X + x] = a◁x`.
    pub fn new(x: WeakHopfAlgebra, a: WeakHopfAlgebra, left: Vec<SparseVec>, right: Vec<SparseVec>) -> Result<Self> {
        let (dx, da) = (x.dim(), a.dim());
        if x.field() != a.field() {
            return Err(Error::MixedFields(x.field(), a.field()));
        }
        if left.len() != da * dx || right.len() != da * dx {
            return Err(Error::DimensionMismatch(format!("action tables need {} entries", da * dx)));
        }
        let out_of_range = |v: &SparseVec, d: usize| v.iter().any(|(k, _)| k as usize >= d);
        if left.iter().any(|v| out_of_range(v, dx)) || right.iter().any(|v| out_of_range(v, da)) {
            return Err(Error::DimensionMismatch("action value outside its algebra".into()));
        }
        Ok(QuasiMatchedPair { x, a, left, right })
    }

    /// From tensors of shapes `[dim A, dim X, dim X]` and `[dim A, dim X, dim A]`.
    pub fn from_tensors(x: WeakHopfAlgebra, a: WeakHopfAlgebra, left: &SparseTensor, right: &SparseTensor) -> Result<Self> {
        let (dx, da) = (x.dim(), a.dim());
        let table = |t: &SparseTensor, out: usize, what: &str| -> Result<Vec<SparseVec>> {
            if t.shape() != [da, dx, out] {
                return Err(Error::DimensionMismatch(format!("{what} action has shape {:?}", t.shape())));
            }
            let mut rows: Vec<Vec<(u32, Scalar)>> = vec![Vec::new(); da * dx];
            for (i, v) in t.iter() {
                rows[i[0] * dx + i[1]].push((i[2] as u32, v.clone()));
            }
            Ok(rows.into_iter().map(SparseVec::from_pairs).collect())
        };
        let (l, r) = (table(left, dx, "left")?, table(right, da, "right")?);
        QuasiMatchedPair::new(x, a, l, r)
    }

    fn to_tensor(&self, rows: &[SparseVec], out: usize) -> SparseTensor {
        let dx = self.x.dim();
        let entries = rows.iter().enumerate().flat_map(|(r, v)| v.iter().map(move |(k, c)| (vec![r / dx, r % dx, k as usize], c.clone())));
        SparseTensor::from_entries(self.x.field(), vec![self.a.dim(), dx, out], entries).expect("in range")
    }

    pub fn left_tensor(&self) -> SparseTensor {
        self.to_tensor(&self.left, self.x.dim())
    }

    pub fn right_tensor(&self) -> SparseTensor {
        self.to_tensor(&self.right, self.a.dim())
    }

    pub fn x(&self) -> &WeakHopfAlgebra {
        &self.x
    }

    pub fn a(&self) -> &WeakHopfAlgebra {
        &self.a
    }

    /// `e_a ▷ e_x`.
    pub fn left_basis(&self, a: u32, x: u32) -> &SparseVec {
        &self.left[a as usize * self.x.dim() + x as usize]
    }

    /// `e_a ◁ e_x`.
    pub fn right_basis(&self, a: u32, x: u32) -> &SparseVec {
        &self.right[a as usize * self.x.dim() + x as usize]
    }

    pub fn act_left(&self, a: &SparseVec, x: &SparseVec) -> SparseVec {
        bilinear(a, x, |i, j| self.left_basis(i, j))
    }

    pub fn act_right(&self, a: &SparseVec, x: &SparseVec) -> SparseVec {
        bilinear(a, x, |i, j| self.right_basis(i, j))
    }
}

fn bilinear<'a>(u: &SparseVec, v: &SparseVec, table: impl Fn(u32, u32) -> &'a SparseVec) -> SparseVec {
    let mut acc = Accum::default();
    for (i, c) in u.iter() {
        for (j, d) in v.iter() {
            let cd = c * d;
            for (k, e) in table(i, j).iter() {
                acc.add_owned(k, &cd * e);
            }
        }
    }
    acc.into_vec()
}

fn add_scaled(acc: &mut Accum<u32>, v: &SparseVec, c: &Scalar) {
    for (k, x) in v.iter() {
        acc.add_owned(k, c * x);
    }
}

/// Actions induced by a skew-pair:
/// `a▷x = Σ⟨x'S_X(x'''), a⟩x''` and `a◁x = Σ⟨x, S_A⁻¹(a''')a'⟩a''`.
///
/// Requires a certified skew-pair, invertible `S_A`, and both algebras perfect.
pub fn derive_actions(x: &WeakHopfAlgebra, a: &WeakHopfAlgebra, form: &BilinearForm) -> Result<QuasiMatchedPair> {
    let cert = check_skew_pair(x, a, form)?;
    if !cert.certified() {
        let failing: Vec<&str> = cert.reports.iter().filter(|r| !r.passed()).map(|r| r.name.as_str()).collect();
        return Err(Error::SkewPairNotCertified(failing.join(", ")));
    }
    for (name, h) in [("X", x), ("A", a)] {
        if !h.is_perfect() {
            return Err(Error::NotPerfect(format!("{name} is not perfect")));
        }
    }
    let sa_inv = a.antipode_inverse()?;
    let (dx, da) = (x.dim(), a.dim());

    let mut left: Vec<Accum<u32>> = (0..da * dx).map(|_| Accum::default()).collect();
    for xi in 0..dx as u32 {
        for ([p, q, r], c) in x.coproduct3(xi) {
            let u = x.mul(&x.basis(p), x.antipode().column(r as usize));
            for (ai, v) in pair_row(form, &u) {
                left[ai as usize * dx + xi as usize].add_owned(q, &c * &v);
            }
        }
    }
    let mut right: Vec<Accum<u32>> = (0..da * dx).map(|_| Accum::default()).collect();
    for ai in 0..da as u32 {
        for ([p, q, r], c) in a.coproduct3(ai) {
            let v = a.mul(sa_inv.column(r as usize), &a.basis(p));
            for (xi, w) in pair_column(form, &v) {
                right[ai as usize * dx + xi as usize].add_owned(q, &c * &w);
            }
        }
    }
    QuasiMatchedPair::new(
        x.clone(),
        a.clone(),
        left.into_iter().map(Accum::into_vec).collect(),
        right.into_iter().map(Accum::into_vec).collect(),
    )
}

fn tensor_of(acc: Accum<Pair>) -> Vec<(Pair, Scalar)> {
    acc.into_sorted()
}

/// Every condition on a quasi-matched pair, over all basis tuples:
/// the five compatibility identities, the module laws of both actions and
/// their compatibility with the coproducts.
pub fn check_quasi_matched(p: &QuasiMatchedPair) -> CheckReport {
    let (x, a) = (p.x(), p.a());
    let (dx, da) = (x.dim(), a.dim());
    let f = x.field();

    // a▷(xy) = Σ(a'▷x')((a''◁x'')▷y)
    let eq_left_product = par_witnesses(da, |ai, w| {
        let ai = ai as u32;
        for xi in 0..dx as u32 {
            let mut terms = Vec::new();
            for ((a1, a2), c) in a.comul_basis(ai) {
                for ((x1, x2), d) in x.comul_basis(xi) {
                    let l = p.left_basis(*a1, *x1);
                    let r = p.right_basis(*a2, *x2);
                    if !l.is_zero() && !r.is_zero() {
                        terms.push((c * d, l, r));
                    }
                }
            }
            for yi in 0..dx as u32 {
                let xy = SparseVec::from_sorted(x.mul_basis(xi, yi).into_owned());
                let lhs = p.act_left(&a.basis(ai), &xy);
                let mut rhs = Accum::default();
                let ey = x.basis(yi);
                for (c, l, r) in &terms {
                    add_scaled(&mut rhs, &x.mul(l, &p.act_left(r, &ey)), c);
                }
                w.record_diff(&[ai as usize, xi as usize, yi as usize], lhs.entries(), &rhs.into_sorted(), f);
            }
        }
    });

    // a▷1 = ε(a)1
    let eq_left_unit = par_witnesses(da, |ai, w| {
        let lhs = p.act_left(&a.basis(ai as u32), x.unit());
        let rhs = x.unit().scale(a.counit_basis(ai as u32));
        w.record_diff(&[ai], lhs.entries(), rhs.entries(), f);
    });

    // (ab)◁x = Σ(a◁(b'▷x'))(b''◁x'')
    let eq_right_product = par_witnesses(da, |ai, w| {
        let ea = a.basis(ai as u32);
        for bi in 0..da as u32 {
            let ab = SparseVec::from_sorted(a.mul_basis(ai as u32, bi).into_owned());
            for xi in 0..dx as u32 {
                let lhs = p.act_right(&ab, &x.basis(xi));
                let mut rhs = Accum::default();
                for ((b1, b2), c) in a.comul_basis(bi) {
                    for ((x1, x2), d) in x.comul_basis(xi) {
                        let r = p.right_basis(*b2, *x2);
                        if r.is_zero() {
                            continue;
                        }
                        let inner = p.act_right(&ea, p.left_basis(*b1, *x1));
                        add_scaled(&mut rhs, &a.mul(&inner, r), &(c * d));
                    }
                }
                w.record_diff(&[ai, bi as usize, xi as usize], lhs.entries(), &rhs.into_sorted(), f);
            }
        }
    });

    // 1◁x = ε(x)1
    let eq_right_unit = par_witnesses(dx, |xi, w| {
        let lhs = p.act_right(a.unit(), &x.basis(xi as u32));
        let rhs = a.unit().scale(x.counit_basis(xi as u32));
        w.record_diff(&[xi], lhs.entries(), rhs.entries(), f);
    });

    // Σ(a'◁x')⊗(a''▷x'') = Σ(a''◁x'')⊗(a'▷x')
    let eq_exchange = par_witnesses(da, |ai, w| {
        for xi in 0..dx as u32 {
            let mut lhs = Accum::<Pair>::default();
            let mut rhs = Accum::<Pair>::default();
            for ((a1, a2), c) in a.comul_basis(ai as u32) {
                for ((x1, x2), d) in x.comul_basis(xi) {
                    let cd = c * d;
                    outer_into(&mut lhs, p.right_basis(*a1, *x1), p.left_basis(*a2, *x2), &cd);
                    outer_into(&mut rhs, p.right_basis(*a2, *x2), p.left_basis(*a1, *x1), &cd);
                }
            }
            w.record_diff(&[ai, xi as usize], &tensor_of(lhs), &tensor_of(rhs), f);
        }
    });

    let compat = CheckReport::group(
        "compatibility",
        vec![
            eq_left_product.into_report("a|>(xy) = (a'|>x')((a''<|x'')|>y)"),
            eq_left_unit.into_report("a|>1 = eps(a)1"),
            eq_right_product.into_report("(ab)<|x = (a<|(b'|>x'))(b''<|x'')"),
            eq_right_unit.into_report("1<|x = eps(x)1"),
            eq_exchange.into_report("(a'<|x')⊗(a''|>x'') = (a''<|x'')⊗(a'|>x')"),
        ],
    );

    CheckReport::group("quasi-matched pair", vec![compat, left_module(p), right_module(p), coalgebra_compat(p)])
}

fn outer_into(acc: &mut Accum<Pair>, u: &SparseVec, v: &SparseVec, c: &Scalar) {
    for (i, s) in u.iter() {
        let cs = c * s;
        for (j, t) in v.iter() {
            acc.add_owned((i, j), &cs * t);
        }
    }
}

/// `(ab)▷x = a▷(b▷x)` and `1▷x = x`.
fn left_module(p: &QuasiMatchedPair) -> CheckReport {
    let (x, a) = (p.x(), p.a());
    let (dx, da) = (x.dim(), a.dim());
    let f = x.field();
    let assoc = par_witnesses(da, |ai, w| {
        let ea = a.basis(ai as u32);
        for bi in 0..da as u32 {
            let ab = SparseVec::from_sorted(a.mul_basis(ai as u32, bi).into_owned());
            for xi in 0..dx as u32 {
                let lhs = p.act_left(&ab, &x.basis(xi));
                let rhs = p.act_left(&ea, p.left_basis(bi, xi));
                w.record_diff(&[ai, bi as usize, xi as usize], lhs.entries(), rhs.entries(), f);
            }
        }
    });
    let unit = par_witnesses(dx, |xi, w| {
        let ex = x.basis(xi as u32);
        w.record_diff(&[xi], p.act_left(a.unit(), &ex).entries(), ex.entries(), f);
    });
    CheckReport::group("left module", vec![assoc.into_report("(ab)|>x = a|>(b|>x)"), unit.into_report("1|>x = x")])
}

/// `a◁(xy) = (a◁x)◁y` and `a◁1 = a`.
fn right_module(p: &QuasiMatchedPair) -> CheckReport {
    let (x, a) = (p.x(), p.a());
    let (dx, da) = (x.dim(), a.dim());
    let f = x.field();
    let assoc = par_witnesses(da, |ai, w| {
        let ea = a.basis(ai as u32);
        for xi in 0..dx as u32 {
            for yi in 0..dx as u32 {
                let xy = SparseVec::from_sorted(x.mul_basis(xi, yi).into_owned());
                let lhs = p.act_right(&ea, &xy);
                let rhs = p.act_right(p.right_basis(ai as u32, xi), &x.basis(yi));
                w.record_diff(&[ai, xi as usize, yi as usize], lhs.entries(), rhs.entries(), f);
            }
        }
    });
    let unit = par_witnesses(da, |ai, w| {
        let ea = a.basis(ai as u32);
        w.record_diff(&[ai], p.act_right(&ea, x.unit()).entries(), ea.entries(), f);
    });
    CheckReport::group("right module", vec![assoc.into_report("a<|(xy) = (a<|x)<|y"), unit.into_report("a<|1 = a")])
}

/// `Δ(a▷x) = Σ(a'▷x')⊗(a''▷x'')` and `Δ(a◁x) = Σ(a'◁x')⊗(a''◁x'')`.
fn coalgebra_compat(p: &QuasiMatchedPair) -> CheckReport {
    let (x, a) = (p.x(), p.a());
    let left = action_coproducts(p, x, |i, j| p.left_basis(i, j));
    let right = action_coproducts(p, a, |i, j| p.right_basis(i, j));
    CheckReport::group(
        "coalgebra compatibility",
        vec![left.into_report("Delta(a|>x) = (a'|>x')⊗(a''|>x'')"), right.into_report("Delta(a<|x) = (a'<|x')⊗(a''<|x'')")],
    )
}

fn action_coproducts<'a>(p: &'a QuasiMatchedPair, target: &WeakHopfAlgebra, act: impl Fn(u32, u32) -> &'a SparseVec + Sync) -> WitnessSet {
    let (x, a) = (p.x(), p.a());
    let f = x.field();
    par_witnesses(a.dim(), |ai, w| {
        for xi in 0..x.dim() as u32 {
            let lhs = target.coproduct(act(ai as u32, xi));
            let mut rhs = Accum::<Pair>::default();
            for ((a1, a2), c) in a.comul_basis(ai as u32) {
                for ((x1, x2), d) in x.comul_basis(xi) {
                    outer_into(&mut rhs, act(*a1, *x1), act(*a2, *x2), &(c * d));
                }
            }
            w.record_diff(&[ai, xi as usize], &lhs, &tensor_of(rhs), f);
        }
    })
}

/// The defining identities of the derived actions, checked entrywise:
/// `⟨a▷x, b⟩ = Σ⟨x, S_A⁻¹(a'')ba'⟩` and `⟨y, a◁x⟩ = Σ⟨x'yS_X(x''), a⟩`.
pub fn check_action_closures(p: &QuasiMatchedPair, form: &BilinearForm) -> Result<CheckReport> {
    let (x, a) = (p.x(), p.a());
    let (dx, da) = (x.dim(), a.dim());
    let sa_inv = a.antipode_inverse()?;
    let witness = |index: Vec<usize>, expected: Scalar, actual: Scalar| (expected != actual).then_some(Witness { index, expected, actual });

    let left = par_witnesses(da, |ai, w| {
        for xi in 0..dx as u32 {
            let act = p.left_basis(ai as u32, xi);
            for bi in 0..da as u32 {
                let lhs = form.left_value(act, bi);
                let mut rhs = Accum::default();
                for ((a1, a2), c) in a.comul_basis(ai as u32) {
                    let v = a.mul(&a.mul(sa_inv.column(*a2 as usize), &a.basis(bi)), &a.basis(*a1));
                    add_scaled(&mut rhs, &v, c);
                }
                let rhs = form.right_value(xi, &rhs.into_vec());
                w.extend(witness(vec![ai, xi as usize, bi as usize], rhs, lhs));
            }
        }
    });
    let right = par_witnesses(dx, |yi, w| {
        for ai in 0..da as u32 {
            for xi in 0..dx as u32 {
                let lhs = form.right_value(yi as u32, p.right_basis(ai, xi));
                let mut u = Accum::default();
                for ((x1, x2), c) in x.comul_basis(xi) {
                    let v = x.mul(&x.mul(&x.basis(*x1), &x.basis(yi as u32)), x.antipode().column(*x2 as usize));
                    add_scaled(&mut u, &v, c);
                }
                let rhs = form.left_value(&u.into_vec(), ai);
                w.extend(witness(vec![yi, ai as usize, xi as usize], rhs, lhs));
            }
        }
    });
    Ok(CheckReport::group(
        "action identities",
        vec![left.into_report("<a|>x,b> = <x,S^-1(a'')ba'>"), right.into_report("<y,a<|x> = <x'yS(x''),a>")],
    ))
}
