use std::collections::BTreeMap;

use num_integer::Integer;

use crate::error::{Error, Result};

use super::{assemble_clifford, CliffordSpec, FiniteMonoid};

/// `U(Z_n^{2×2})`, the invertible 2×2 matrices over `Z_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MatrixGroupSpec {
    modulus: u64,
}

impl MatrixGroupSpec {
    pub fn new(modulus: u64) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::InvalidMonoid(format!("matrix modulus must be at least 2, got {modulus}")));
        }
        Ok(MatrixGroupSpec { modulus })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }
}

/// Canonical label, row-major with entries in `[0, n)`.
pub fn matrix_label(m: [u64; 4], n: u64) -> String {
    format!("[[{},{}],[{},{}]] mod {n}", m[0], m[1], m[2], m[3])
}

/// All 2×2 matrices with unit determinant, in lexicographic entry order.
fn unit_matrices(n: u64) -> Vec<[u64; 4]> {
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    let det = (a * d + n * n - b * c % n) % n;
                    if det.gcd(&n) == 1 {
                        out.push([a, b, c, d]);
                    }
                }
            }
        }
    }
    out
}

fn mat_mul(x: [u64; 4], y: [u64; 4], n: u64) -> [u64; 4] {
    [
        (x[0] * y[0] + x[1] * y[2]) % n,
        (x[0] * y[1] + x[1] * y[3]) % n,
        (x[2] * y[0] + x[3] * y[2]) % n,
        (x[2] * y[1] + x[3] * y[3]) % n,
    ]
}

fn position(m: [u64; 4], n: u64) -> usize {
    (((m[0] * n + m[1]) * n + m[2]) * n + m[3]) as usize
}

/// The group table of `U(Z_n^{2×2})`: a matrix is invertible exactly when
/// its determinant is a unit of `Z_n`.
pub fn unit_matrix_group(spec: MatrixGroupSpec) -> FiniteMonoid {
    let n = spec.modulus;
    let mats = unit_matrices(n);
    let mut index = vec![u32::MAX; (n * n * n * n) as usize];
    for (i, m) in mats.iter().enumerate() {
        index[position(*m, n)] = i as u32;
    }
    let order = mats.len();
    let mut table = vec![0u32; order * order];
    for (i, x) in mats.iter().enumerate() {
        for (j, y) in mats.iter().enumerate() {
            table[i * order + j] = index[position(mat_mul(*x, *y, n), n)];
        }
    }
    let identity = index[position([1, 0, 0, 1], n)] as usize;
    let labels = mats.iter().map(|m| matrix_label(*m, n)).collect();
    FiniteMonoid::from_flat(labels, table, identity)
}

/// Entrywise reduction `U(Z_m^{2×2}) → U(Z_n^{2×2})` for `n | m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionHom {
    /// Element index in the source group to element index in the target.
    pub map: Vec<usize>,
    pub image_size: usize,
    pub surjective: bool,
}

/// Builds the reduction map between the element orders of
/// [`unit_matrix_group`] and verifies it is a homomorphism.
pub fn reduction_hom(from: u64, to: u64) -> Result<ReductionHom> {
    MatrixGroupSpec::new(from)?;
    MatrixGroupSpec::new(to)?;
    if !from.is_multiple_of(to) {
        return Err(Error::NonDivisorModulus { from, to });
    }
    let (src, dst) = (unit_matrices(from), unit_matrices(to));
    let mut index = vec![usize::MAX; (to * to * to * to) as usize];
    for (i, m) in dst.iter().enumerate() {
        index[position(*m, to)] = i;
    }
    let map: Vec<usize> = src.iter().map(|m| index[position(m.map(|v| v % to), to)]).collect();
    let edge = || format!("Z_{from} -> Z_{to}");
    if map.contains(&usize::MAX) {
        return Err(Error::NotAHomomorphism { edge: edge() });
    }
    for (i, x) in src.iter().enumerate() {
        for (j, y) in src.iter().enumerate() {
            let xy = mat_mul(*x, *y, from);
            let image = index[position(xy.map(|v| v % to), to)];
            if image != index[position(mat_mul(dst[map[i]], dst[map[j]], to), to)] {
                return Err(Error::NotAHomomorphism { edge: edge() });
            }
        }
    }
    let mut hit = vec![false; dst.len()];
    map.iter().for_each(|&t| hit[t] = true);
    let image_size = hit.iter().filter(|&&h| h).count();
    Ok(ReductionHom {
        map,
        image_size,
        surjective: image_size == dst.len(),
    })
}

/// Node labels of the six-element semilattice, in table order.
const NODES: [&str; 6] = ["alpha", "beta", "gamma", "rho", "sigma", "delta"];

/// The six-node semilattice with identity `delta` and Hasse diagram
/// `delta > sigma > rho > alpha`, `delta > gamma > beta > alpha`,
/// `sigma > beta`.
pub fn matrix_semilattice() -> FiniteMonoid {
    const TABLE: [[u32; 6]; 6] = [
        [0, 0, 0, 0, 0, 0],
        [0, 1, 1, 0, 1, 1],
        [0, 1, 2, 0, 1, 2],
        [0, 0, 0, 3, 3, 3],
        [0, 1, 1, 3, 4, 4],
        [0, 1, 2, 3, 4, 5],
    ];
    FiniteMonoid::from_flat(NODES.iter().map(|s| s.to_string()).collect(), TABLE.concat(), 5)
}

/// The strong semilattice of matrix groups over `Z_2, Z_3, Z_4, Z_6`:
/// `G_beta = GL_2(Z_2)`, `G_gamma = U(Z_4^{2×2})`, `G_rho = GL_2(Z_3)`,
/// `G_sigma = U(Z_6^{2×2})`, trivial `G_alpha`, `G_delta`, with reduction
/// maps `sigma > rho`, `sigma > beta`, `gamma > beta` and trivial maps on the
/// remaining covers.
pub fn matrix_clifford_spec() -> Result<CliffordSpec> {
    let lattice = matrix_semilattice();
    let mut groups = BTreeMap::new();
    groups.insert("alpha".to_string(), FiniteMonoid::trivial());
    groups.insert("delta".to_string(), FiniteMonoid::trivial());
    for (node, n) in [("beta", 2), ("gamma", 4), ("rho", 3), ("sigma", 6)] {
        groups.insert(node.to_string(), unit_matrix_group(MatrixGroupSpec::new(n)?));
    }
    let mut homs = BTreeMap::new();
    for (u, v, from, to) in [("sigma", "rho", 6, 3), ("sigma", "beta", 6, 2), ("gamma", "beta", 4, 2)] {
        homs.insert((u.to_string(), v.to_string()), reduction_hom(from, to)?.map);
    }
    for (u, v) in [("beta", "alpha"), ("rho", "alpha"), ("delta", "sigma"), ("delta", "gamma")] {
        let source = groups[u].len();
        let target_identity = groups[v].identity();
        homs.insert((u.to_string(), v.to_string()), vec![target_identity; source]);
    }
    Ok(CliffordSpec { lattice, groups, homs })
}

/// The 440-element Clifford monoid assembled from [`matrix_clifford_spec`].
pub fn matrix_clifford_monoid() -> Result<FiniteMonoid> {
    assemble_clifford(&matrix_clifford_spec()?)
}
