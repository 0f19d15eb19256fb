use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::report::{CheckReport, WitnessSet};

use super::{check_monoid, index_witness, FiniteMonoid};

/// A strong semilattice of groups: a semilattice `Y`, a group `G_u` for each
/// node, and a homomorphism `π_{u,v}: G_u → G_v` for every covering pair
/// `u > v` of the Hasse diagram. Maps along longer chains are composites.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliffordSpec {
    /// Node labels are the element labels of this monoid.
    pub lattice: FiniteMonoid,
    pub groups: BTreeMap<String, FiniteMonoid>,
    /// `(u, v)` with `u` covering `v`, mapping element indices of `G_u` to
    /// element indices of `G_v`.
    pub homs: BTreeMap<(String, String), Vec<usize>>,
}

/// Monoid laws plus commutativity and idempotency.
pub fn check_semilattice(m: &FiniteMonoid) -> CheckReport {
    let n = m.len();
    let mut comm = WitnessSet::default();
    let mut idem = WitnessSet::default();
    for x in 0..n {
        if m.mul(x, x) != x {
            idem.push(index_witness(vec![x], x, m.mul(x, x)));
        }
        for y in 0..n {
            if m.mul(x, y) != m.mul(y, x) {
                comm.push(index_witness(vec![x, y], m.mul(y, x), m.mul(x, y)));
            }
        }
    }
    CheckReport::group(
        "semilattice",
        vec![check_monoid(m), comm.into_report("commutative"), idem.into_report("idempotent")],
    )
}

/// `v ≤ u` in the natural order, i.e. `uv = v`.
fn below(y: &FiniteMonoid, v: usize, u: usize) -> bool {
    y.mul(u, v) == v
}

/// Covering pairs `(u, v)`: `v < u` with nothing strictly between.
pub(crate) fn covers(y: &FiniteMonoid) -> Vec<(usize, usize)> {
    let n = y.len();
    let mut out = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u == v || !below(y, v, u) {
                continue;
            }
            if !(0..n).any(|w| w != u && w != v && below(y, v, w) && below(y, w, u)) {
                out.push((u, v));
            }
        }
    }
    out
}

fn group_inverse_exists(g: &FiniteMonoid) -> bool {
    let e = g.identity();
    (0..g.len()).all(|x| (0..g.len()).any(|y| g.mul(x, y) == e && g.mul(y, x) == e))
}

fn compose(outer: &[usize], inner: &[usize]) -> Vec<usize> {
    inner.iter().map(|&i| outer[i]).collect()
}

/// Assembles `S = ⋃ G_u` with `XW = π_{u,uv}(X) π_{v,uv}(W)` for `X ∈ G_u`,
/// `W ∈ G_v`.
///
/// Components are ordered by node label and elements within a component by
/// group label; element `x` of `G_u` is labelled `u:x`. Every edge map must
/// be a homomorphism, and composites along different descending paths must
/// agree.
pub fn assemble_clifford(spec: &CliffordSpec) -> Result<FiniteMonoid> {
    let y = &spec.lattice;
    let report = check_semilattice(y);
    if !report.passed() {
        return Err(Error::InvalidCliffordSpec(format!("lattice is not a semilattice:\n{}", report.to_text())));
    }
    let n = y.len();
    let mut groups = Vec::with_capacity(n);
    for u in 0..n {
        let label = y.label(u);
        let g = spec.groups.get(label).ok_or_else(|| Error::InvalidCliffordSpec(format!("no group for node {label}")))?;
        if !check_monoid(g).passed() || !group_inverse_exists(g) {
            return Err(Error::InvalidCliffordSpec(format!("G_{label} is not a group")));
        }
        groups.push(g);
    }
    if let Some(extra) = spec.groups.keys().find(|k| y.index_of(k).is_none()) {
        return Err(Error::InvalidCliffordSpec(format!("group given for unknown node {extra}")));
    }

    let cover_list = covers(y);
    let edge = |u: usize, v: usize| format!("{}>{}", y.label(u), y.label(v));
    for (u, v) in spec.homs.keys() {
        let (iu, iv) = (y.index_of(u), y.index_of(v));
        match (iu, iv) {
            (Some(iu), Some(iv)) if cover_list.contains(&(iu, iv)) => {}
            _ => return Err(Error::InvalidCliffordSpec(format!("hom {u}>{v} is not on a covering pair"))),
        }
    }
    let mut direct: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for &(u, v) in &cover_list {
        let key = (y.label(u).to_string(), y.label(v).to_string());
        let map = spec.homs.get(&key).ok_or_else(|| Error::InvalidCliffordSpec(format!("missing hom {}", edge(u, v))))?;
        let (gu, gv) = (groups[u], groups[v]);
        if map.len() != gu.len() || map.iter().any(|&t| t >= gv.len()) {
            return Err(Error::InvalidCliffordSpec(format!("hom {} has the wrong shape", edge(u, v))));
        }
        for a in 0..gu.len() {
            for b in 0..gu.len() {
                if map[gu.mul(a, b)] != gv.mul(map[a], map[b]) {
                    return Err(Error::NotAHomomorphism { edge: edge(u, v) });
                }
            }
        }
        direct.insert((u, v), map.clone());
    }

    // Composite maps, lower nodes first so every cover's table is ready.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&u| (0..n).filter(|&v| below(y, v, u)).count());
    let mut comp: Vec<Vec<Option<Vec<usize>>>> = vec![vec![None; n]; n];
    for &u in &order {
        comp[u][u] = Some((0..groups[u].len()).collect());
        #[allow(clippy::needless_range_loop)]
        for v in 0..n {
            if v == u || !below(y, v, u) {
                continue;
            }
            let mut found: Option<Vec<usize>> = None;
            for &(_, c) in cover_list.iter().filter(|(a, _)| *a == u) {
                if !below(y, v, c) {
                    continue;
                }
                let tail = comp[c][v].as_ref().expect("lower nodes processed first");
                let candidate = compose(tail, &direct[&(u, c)]);
                match &found {
                    None => found = Some(candidate),
                    Some(prev) if *prev != candidate => {
                        return Err(Error::PathDependentHomomorphisms {
                            from: y.label(u).to_string(),
                            to: y.label(v).to_string(),
                        })
                    }
                    Some(_) => {}
                }
            }
            comp[u][v] = found;
        }
    }

    let mut node_order: Vec<usize> = (0..n).collect();
    node_order.sort_by(|&a, &b| y.label(a).cmp(y.label(b)));
    let mut elements = Vec::new();
    let mut offset = vec![0usize; n];
    let mut local_to_global: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut global: Vec<(usize, usize)> = Vec::new();
    for &u in &node_order {
        let g = groups[u];
        let mut members: Vec<usize> = (0..g.len()).collect();
        members.sort_by(|&a, &b| g.label(a).cmp(g.label(b)));
        offset[u] = elements.len();
        local_to_global[u] = vec![0; g.len()];
        for (k, &a) in members.iter().enumerate() {
            local_to_global[u][a] = offset[u] + k;
            elements.push(format!("{}:{}", y.label(u), g.label(a)));
            global.push((u, a));
        }
    }
    let total = elements.len();
    let mut table = vec![0u32; total * total];
    for (i, &(u, a)) in global.iter().enumerate() {
        for (j, &(v, b)) in global.iter().enumerate() {
            let w = y.mul(u, v);
            let to_w_u = comp[u][w].as_ref().expect("uv is below u");
            let to_w_v = comp[v][w].as_ref().expect("uv is below v");
            let prod = groups[w].mul(to_w_u[a], to_w_v[b]);
            table[i * total + j] = local_to_global[w][prod] as u32;
        }
    }
    let top = y.identity();
    let identity = local_to_global[top][groups[top].identity()];
    Ok(FiniteMonoid::from_flat(elements, table, identity))
}
