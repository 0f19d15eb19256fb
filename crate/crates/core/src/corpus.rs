//! Small weak Hopf algebras used as worked examples and test fixtures.

use std::collections::BTreeMap;

use crate::algebra::{dual, tensor_product, WeakHopfAlgebra};
use crate::error::Result;
use crate::monoid::{assemble_clifford, matrix_semilattice, monoid_algebra, CliffordSpec, FiniteMonoid};
use crate::scalar::FieldSpec;

/// `S' = {1, e}` with `e² = e`.
pub fn s_prime() -> FiniteMonoid {
    FiniteMonoid::new(vec!["1".into(), "e".into()], vec![vec![0, 1], vec![1, 1]], 0).expect("valid table")
}

/// The symmetric group on three points, labelled in cycle notation.
pub fn symmetric_group_3() -> FiniteMonoid {
    let perms: [[usize; 3]; 6] = [[0, 1, 2], [1, 0, 2], [2, 1, 0], [0, 2, 1], [1, 2, 0], [2, 0, 1]];
    let labels = ["id", "(01)", "(02)", "(12)", "(012)", "(021)"];
    let index = |p: [usize; 3]| perms.iter().position(|q| *q == p).expect("closed");
    // (pq)(i) = p(q(i))
    let table = perms.iter().map(|p| perms.iter().map(|q| index([p[q[0]], p[q[1]], p[q[2]]])).collect()).collect();
    FiniteMonoid::new(labels.iter().map(|s| s.to_string()).collect(), table, 0).expect("valid table")
}

/// `S_3 ∪ {e}`: the two-node semilattice `delta > alpha` with `G_delta = S_3`,
/// trivial `G_alpha` and the trivial map between them. `e` is absorbing.
pub fn s3_with_zero() -> FiniteMonoid {
    let lattice = FiniteMonoid::new(vec!["alpha".into(), "delta".into()], vec![vec![0, 0], vec![0, 1]], 1).expect("valid table");
    let s3 = symmetric_group_3();
    let mut groups = BTreeMap::new();
    groups.insert("alpha".to_string(), FiniteMonoid::trivial());
    groups.insert("delta".to_string(), s3.clone());
    let mut homs = BTreeMap::new();
    homs.insert(("delta".to_string(), "alpha".to_string()), vec![0; s3.len()]);
    assemble_clifford(&CliffordSpec { lattice, groups, homs }).expect("valid Clifford spec")
}

/// `k{1}`.
pub fn trivial_algebra(field: FieldSpec) -> WeakHopfAlgebra {
    monoid_algebra(&FiniteMonoid::trivial(), field).expect("group")
}

pub fn k_s_prime(field: FieldSpec) -> WeakHopfAlgebra {
    monoid_algebra(&s_prime(), field).expect("Clifford")
}

pub fn k_cyclic(n: usize, field: FieldSpec) -> WeakHopfAlgebra {
    monoid_algebra(&FiniteMonoid::cyclic(n), field).expect("group")
}

/// The algebra of the six-node semilattice.
pub fn k_semilattice(field: FieldSpec) -> WeakHopfAlgebra {
    monoid_algebra(&matrix_semilattice(), field).expect("Clifford")
}

pub fn k_s3_with_zero(field: FieldSpec) -> WeakHopfAlgebra {
    monoid_algebra(&s3_with_zero(), field).expect("Clifford")
}

/// `kS⊗(kS)^*` for a Clifford monoid `S`.
pub fn monoid_tensor_dual(m: &FiniteMonoid, field: FieldSpec) -> Result<WeakHopfAlgebra> {
    let ks = monoid_algebra(m, field)?;
    tensor_product(&ks, &dual(&ks))
}

/// The 49-dimensional `k(S_3∪{e}) ⊗ k(S_3∪{e})^*`, noncommutative and
/// noncocommutative.
pub fn k_s3_tensor_dual(field: FieldSpec) -> WeakHopfAlgebra {
    monoid_tensor_dual(&s3_with_zero(), field).expect("same field")
}

/// Names accepted by [`named`].
pub const NAMES: [&str; 8] = ["k1", "kSprime", "kY", "kZ2", "kZ3", "kS3e", "kS3e-dual", "kS3e-tensor-dual"];

/// Looks up a corpus algebra by name.
pub fn named(name: &str, field: FieldSpec) -> Option<WeakHopfAlgebra> {
    Some(match name {
        "k1" => trivial_algebra(field),
        "kSprime" => k_s_prime(field),
        "kY" => k_semilattice(field),
        "kZ2" => k_cyclic(2, field),
        "kZ3" => k_cyclic(3, field),
        "kS3e" => k_s3_with_zero(field),
        "kS3e-dual" => dual(&k_s3_with_zero(field)),
        "kS3e-tensor-dual" => k_s3_tensor_dual(field),
        _ => return None,
    })
}
