//! Finite monoids given by multiplication tables, Clifford monoids, and
//! their monoid algebras.

mod clifford;
mod matrix;

use std::sync::{Arc, OnceLock};

use crate::algebra::{AlmostBialgebra, WeakHopfAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{LinMap, SparseVec};
use crate::report::{par_witnesses, CheckReport, Witness, WitnessSet};
use crate::scalar::FieldSpec;

pub use clifford::{assemble_clifford, check_semilattice, CliffordSpec};
pub use matrix::{
    matrix_clifford_monoid, matrix_clifford_spec, matrix_label, matrix_semilattice, reduction_hom, unit_matrix_group, MatrixGroupSpec, ReductionHom,
};

/// A finite monoid: labelled elements and a full multiplication table.
#[derive(Clone, Debug)]
pub struct FiniteMonoid {
    elements: Vec<String>,
    table: Vec<u32>,
    identity: usize,
    clifford: Arc<OnceLock<Result<CliffordData>>>,
}

/// Group inverses and maximal subgroups of a Clifford monoid.
#[derive(Clone, Debug, PartialEq, Eq)]
struct CliffordData {
    inverse: Vec<usize>,
    /// `(idempotent, members)` in order of first appearance.
    components: Vec<(usize, Vec<usize>)>,
}

impl PartialEq for FiniteMonoid {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements && self.table == other.table && self.identity == other.identity
    }
}

impl Eq for FiniteMonoid {}

impl FiniteMonoid {
    /// Validates shape and ranges only; use [`check_monoid`] for the laws.
    pub fn new(elements: Vec<String>, table: Vec<Vec<usize>>, identity: usize) -> Result<Self> {
        let n = elements.len();
        if n == 0 {
            return Err(Error::InvalidMonoid("no elements".into()));
        }
        if table.len() != n || table.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidMonoid(format!("table is not {n}x{n}")));
        }
        if let Some(bad) = table.iter().flatten().find(|&&v| v >= n) {
            return Err(Error::InvalidMonoid(format!("table entry {bad} out of range")));
        }
        if identity >= n {
            return Err(Error::InvalidMonoid(format!("identity {identity} out of range")));
        }
        let mut seen = std::collections::HashSet::new();
        if let Some(dup) = elements.iter().find(|e| !seen.insert(e.as_str())) {
            return Err(Error::InvalidMonoid(format!("duplicate label {dup:?}")));
        }
        Ok(FiniteMonoid::from_flat(elements, table.into_iter().flatten().map(|v| v as u32).collect(), identity))
    }

    pub(crate) fn from_flat(elements: Vec<String>, table: Vec<u32>, identity: usize) -> Self {
        FiniteMonoid {
            elements,
            table,
            identity,
            clifford: Arc::default(),
        }
    }

    /// The cyclic group `Z_n` with elements `g^0, ..., g^{n-1}`.
    pub fn cyclic(n: usize) -> Self {
        let elements = (0..n).map(|k| if k == 0 { "1".to_string() } else { format!("g^{k}") }).collect();
        let table = (0..n).flat_map(|i| (0..n).map(move |j| ((i + j) % n) as u32)).collect();
        FiniteMonoid::from_flat(elements, table, 0)
    }

    /// The one-element group.
    pub fn trivial() -> Self {
        FiniteMonoid::from_flat(vec!["1".into()], vec![0], 0)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn label(&self, x: usize) -> &str {
        &self.elements[x]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.elements.iter().position(|l| l == label)
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x * self.len() + y] as usize
    }

    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.len()).map(|r| r.iter().map(|&v| v as usize).collect()).collect()
    }

    pub fn is_idempotent(&self, x: usize) -> bool {
        self.mul(x, x) == x
    }

    pub fn idempotents(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.is_idempotent(x)).collect()
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.len();
        (0..n).all(|x| (x + 1..n).all(|y| self.mul(x, y) == self.mul(y, x)))
    }

    /// Returns a copy with one table cell overwritten (for perturbation tests
    /// and corrupted fixtures).
    pub fn with_cell(&self, x: usize, y: usize, value: usize) -> Self {
        let mut table = self.table.clone();
        table[x * self.len() + y] = value as u32;
        FiniteMonoid::from_flat(self.elements.clone(), table, self.identity)
    }

    fn clifford_data(&self) -> Result<&CliffordData> {
        self.clifford.get_or_init(|| compute_clifford(self)).as_ref().map_err(Clone::clone)
    }

    /// Maximal subgroups `(idempotent, members)`, members ascending.
    pub fn components(&self) -> Result<Vec<(usize, Vec<usize>)>> {
        Ok(self.clifford_data()?.components.clone())
    }

    /// The idempotent of the maximal subgroup containing `x`.
    pub fn component_idempotent(&self, x: usize) -> Result<usize> {
        let inv = element_inverse(self, x)?;
        Ok(self.mul(x, inv))
    }
}

fn index_witness(index: Vec<usize>, expected: usize, actual: usize) -> Witness {
    let f = FieldSpec::Rationals;
    Witness {
        index,
        expected: f.from_i64(expected as i64),
        actual: f.from_i64(actual as i64),
    }
}

/// Associativity on all triples and the identity law.
///
/// Witnesses carry element indices as scalars: `[x, y, z]` with expected
/// `x(yz)` and actual `(xy)z`; `[x]` for identity failures.
pub fn check_monoid(m: &FiniteMonoid) -> CheckReport {
    let n = m.len();
    let assoc = par_witnesses(n, |x, w| {
        for y in 0..n {
            let xy = m.mul(x, y);
            for z in 0..n {
                let (l, r) = (m.mul(xy, z), m.mul(x, m.mul(y, z)));
                if l != r {
                    w.push(index_witness(vec![x, y, z], r, l));
                }
            }
        }
    });
    let e = m.identity();
    let mut ident = WitnessSet::default();
    for x in 0..n {
        for got in [m.mul(e, x), m.mul(x, e)] {
            if got != x {
                ident.push(index_witness(vec![x], x, got));
            }
        }
    }
    CheckReport::group("monoid", vec![assoc.into_report("associativity"), ident.into_report("identity")])
        .with_info("order", n)
        .with_info("identity", m.label(e))
}

fn compute_clifford(m: &FiniteMonoid) -> Result<CliffordData> {
    let report = check_clifford(m);
    if !report.passed() {
        let first = report.first_witness().map(|w| format!(" at {:?}", w.index)).unwrap_or_default();
        return Err(Error::NotClifford(format!("{} fails{first}", report.children.iter().find(|c| !c.passed()).map_or("check", |c| c.name.as_str()))));
    }
    let n = m.len();
    let mut inverse = vec![0; n];
    let mut components: Vec<(usize, Vec<usize>)> = Vec::new();
    #[allow(clippy::needless_range_loop)]
    for x in 0..n {
        let y = (0..n).find(|&y| m.mul(m.mul(x, y), x) == x).expect("regularity checked");
        // In a Clifford monoid xy = yx for any inner inverse y, and yxy is
        // the group inverse of x in the subgroup at xy.
        let inv = m.mul(m.mul(y, x), y);
        inverse[x] = inv;
        let e = m.mul(x, inv);
        match components.iter_mut().find(|(f, _)| *f == e) {
            Some((_, members)) => members.push(x),
            None => components.push((e, vec![x])),
        }
    }
    Ok(CliffordData { inverse, components })
}

/// Regularity (`∀x ∃y: xyx = x`) and centrality of idempotents.
///
/// On success the report lists the maximal subgroups `G_e`.
pub fn check_clifford(m: &FiniteMonoid) -> CheckReport {
    let n = m.len();
    let regular = par_witnesses(n, |x, w| {
        if !(0..n).any(|y| m.mul(m.mul(x, y), x) == x) {
            w.push(index_witness(vec![x], x, n));
        }
    })
    .into_report("regular")
    .with_note("a failing [x] has no y with xyx = x (actual = order of the monoid)");
    let idem = m.idempotents();
    let central = par_witnesses(idem.len(), |k, w| {
        let e = idem[k];
        for x in 0..n {
            let (l, r) = (m.mul(e, x), m.mul(x, e));
            if l != r {
                w.push(index_witness(vec![e, x], r, l));
            }
        }
    })
    .into_report("idempotents central");
    let mut report = CheckReport::group("clifford", vec![regular, central]).with_info("idempotents", idem.len());
    if report.passed() {
        // Recover the decomposition directly; compute_clifford would recurse.
        let mut sizes: Vec<(usize, usize)> = idem.iter().map(|&e| (e, 0)).collect();
        for x in 0..n {
            let y = (0..n).find(|&y| m.mul(m.mul(x, y), x) == x).expect("regular");
            let e = m.mul(x, m.mul(m.mul(y, x), y));
            if let Some(s) = sizes.iter_mut().find(|(f, _)| *f == e) {
                s.1 += 1;
            }
        }
        for (e, size) in sizes {
            report = report.with_note(format!("G[{}]: {size} elements", m.label(e)));
        }
    }
    report
}

/// The group inverse of `x` inside its maximal subgroup.
pub fn element_inverse(m: &FiniteMonoid, x: usize) -> Result<usize> {
    if x >= m.len() {
        return Err(Error::IndexOutOfBounds {
            index: vec![x],
            shape: vec![m.len()],
        });
    }
    Ok(m.clifford_data()?.inverse[x])
}

/// `kS` with `Δ(s) = s⊗s`, `ε(s) = 1` and `T(s) = s⁻¹`.
pub fn monoid_algebra(m: &FiniteMonoid, field: FieldSpec) -> Result<WeakHopfAlgebra> {
    let inverse = m.clifford_data()?.inverse.clone();
    let n = m.len();
    let one = field.one();
    let base = AlmostBialgebra::from_fn(
        field,
        m.elements().to_vec(),
        |x, y| SparseVec::basis(m.mul(x as usize, y as usize) as u32, field),
        SparseVec::basis(m.identity() as u32, field),
        |x| vec![((x, x), one.clone())],
        vec![field.one(); n],
    );
    let t = LinMap::from_basis_map(field, n, &inverse)?;
    WeakHopfAlgebra::new(base, t)
}
