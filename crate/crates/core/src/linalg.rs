//! Sparse vectors, accumulators and exact linear maps.

use std::hash::Hash;

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::scalar::{FieldSpec, Scalar};
use crate::tensor::SparseTensor;

/// A sparse vector in basis coordinates: sorted by index, no zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SparseVec(Vec<(u32, Scalar)>);

impl SparseVec {
    pub fn zero() -> Self {
        SparseVec(Vec::new())
    }

    pub fn basis(i: u32, field: FieldSpec) -> Self {
        SparseVec(vec![(i, field.one())])
    }

    /// Sorts, merges duplicates and drops zeros.
    pub fn from_pairs(mut pairs: Vec<(u32, Scalar)>) -> Self {
        pairs.sort_by_key(|p| p.0);
        let mut out: Vec<(u32, Scalar)> = Vec::with_capacity(pairs.len());
        for (i, v) in pairs {
            match out.last_mut() {
                Some((j, w)) if *j == i => *w += &v,
                _ => out.push((i, v)),
            }
        }
        out.retain(|(_, v)| !v.is_zero());
        SparseVec(out)
    }

    /// Trusts the caller: entries sorted, distinct, nonzero.
    pub(crate) fn from_sorted(pairs: Vec<(u32, Scalar)>) -> Self {
        debug_assert!(pairs.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(pairs.iter().all(|p| !p.1.is_zero()));
        SparseVec(pairs)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.0.len()
    }

    pub fn get(&self, i: u32) -> Option<&Scalar> {
        self.0.binary_search_by_key(&i, |p| p.0).ok().map(|k| &self.0[k].1)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, &Scalar)> + '_ {
        self.0.iter().map(|(i, v)| (*i, v))
    }

    pub fn entries(&self) -> &[(u32, Scalar)] {
        &self.0
    }

    pub fn scale(&self, c: &Scalar) -> SparseVec {
        if c.is_zero() {
            return SparseVec::zero();
        }
        SparseVec(self.0.iter().map(|(i, v)| (*i, v * c)).collect())
    }

    pub fn add(&self, other: &SparseVec) -> SparseVec {
        let mut acc = Accum::default();
        for (i, v) in self.iter().chain(other.iter()) {
            acc.add(i, v);
        }
        acc.into_vec()
    }

    pub fn neg(&self) -> SparseVec {
        SparseVec(self.0.iter().map(|(i, v)| (*i, -v)).collect())
    }

    pub fn sub(&self, other: &SparseVec) -> SparseVec {
        self.add(&other.neg())
    }
}

impl FromIterator<(u32, Scalar)> for SparseVec {
    fn from_iter<I: IntoIterator<Item = (u32, Scalar)>>(iter: I) -> Self {
        SparseVec::from_pairs(iter.into_iter().collect())
    }
}

/// Hash accumulator for sparse sums keyed by basis indices or multi-indices.
#[derive(Clone, Debug)]
pub struct Accum<K> {
    map: FxHashMap<K, Scalar>,
}

impl<K> Default for Accum<K> {
    fn default() -> Self {
        Accum { map: FxHashMap::default() }
    }
}

impl<K: Copy + Eq + Hash + Ord> Accum<K> {
    pub fn add(&mut self, k: K, v: &Scalar) {
        if v.is_zero() {
            return;
        }
        match self.map.get_mut(&k) {
            Some(w) => *w += v,
            None => {
                self.map.insert(k, v.clone());
            }
        }
    }

    pub fn add_owned(&mut self, k: K, v: Scalar) {
        if v.is_zero() {
            return;
        }
        match self.map.get_mut(&k) {
            Some(w) => *w += &v,
            None => {
                self.map.insert(k, v);
            }
        }
    }

    pub fn merge(&mut self, other: Accum<K>) {
        if self.map.len() < other.map.len() {
            let mine = std::mem::replace(&mut self.map, other.map);
            for (k, v) in mine {
                self.add_owned(k, v);
            }
        } else {
            for (k, v) in other.map {
                self.add_owned(k, v);
            }
        }
    }

    /// Nonzero entries sorted by key.
    pub fn into_sorted(self) -> Vec<(K, Scalar)> {
        let mut out: Vec<(K, Scalar)> = self.map.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        out.sort_unstable_by_key(|a| a.0);
        out
    }
}

impl Accum<u32> {
    pub fn into_vec(self) -> SparseVec {
        SparseVec::from_sorted(self.into_sorted())
    }
}

/// Compares two sorted sparse maps, returning `(key, expected, actual)` for
/// every key where they differ. Absent entries read as zero.
pub fn diff_sorted<K: Ord + Clone>(actual: &[(K, Scalar)], expected: &[(K, Scalar)], field: FieldSpec) -> Vec<(K, Scalar, Scalar)> {
    let mut out = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < actual.len() || j < expected.len() {
        let ord = match (actual.get(i), expected.get(j)) {
            (Some(a), Some(e)) => a.0.cmp(&e.0),
            (Some(_), None) => std::cmp::Ordering::Less,
            _ => std::cmp::Ordering::Greater,
        };
        match ord {
            std::cmp::Ordering::Less => {
                out.push((actual[i].0.clone(), field.zero(), actual[i].1.clone()));
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push((expected[j].0.clone(), expected[j].1.clone(), field.zero()));
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                if actual[i].1 != expected[j].1 {
                    out.push((actual[i].0.clone(), expected[j].1.clone(), actual[i].1.clone()));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// A linear map between coordinate spaces, stored by columns: `column(j)` is
/// the image of the `j`-th domain basis vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinMap {
    field: FieldSpec,
    codomain: usize,
    cols: Vec<SparseVec>,
}

impl LinMap {
    pub fn from_columns(field: FieldSpec, codomain: usize, cols: Vec<SparseVec>) -> Result<Self> {
        for c in &cols {
            if let Some((i, v)) = c.0.last() {
                if *i as usize >= codomain {
                    return Err(Error::DimensionMismatch(format!("row {i} outside codomain of dimension {codomain}")));
                }
                if v.field() != field {
                    return Err(Error::MixedFields(field, v.field()));
                }
            }
        }
        Ok(LinMap { field, codomain, cols })
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        LinMap {
            field,
            codomain: n,
            cols: (0..n as u32).map(|i| SparseVec::basis(i, field)).collect(),
        }
    }

    pub fn zero(field: FieldSpec, codomain: usize, domain: usize) -> Self {
        LinMap {
            field,
            codomain,
            cols: vec![SparseVec::zero(); domain],
        }
    }

    /// Map sending basis vector `j` to basis vector `images[j]`.
    pub fn from_basis_map(field: FieldSpec, codomain: usize, images: &[usize]) -> Result<Self> {
        let cols = images.iter().map(|&i| SparseVec::basis(i as u32, field)).collect();
        LinMap::from_columns(field, codomain, cols)
    }

    /// Reads a `[codomain, domain]` matrix.
    pub fn from_tensor(t: &SparseTensor) -> Result<Self> {
        if t.rank() != 2 {
            return Err(Error::DimensionMismatch(format!("linear map needs a matrix, got shape {:?}", t.shape())));
        }
        let (rows, domain) = (t.shape()[0], t.shape()[1]);
        let mut cols: Vec<Vec<(u32, Scalar)>> = vec![Vec::new(); domain];
        for (idx, v) in t.iter() {
            cols[idx[1]].push((idx[0] as u32, v.clone()));
        }
        LinMap::from_columns(t.field(), rows, cols.into_iter().map(SparseVec::from_pairs).collect())
    }

    pub fn to_tensor(&self) -> SparseTensor {
        let entries = self
            .cols
            .iter()
            .enumerate()
            .flat_map(|(j, c)| c.iter().map(move |(i, v)| (vec![i as usize, j], v.clone())));
        SparseTensor::from_entries(self.field, vec![self.codomain, self.domain()], entries).expect("columns are in range")
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn domain(&self) -> usize {
        self.cols.len()
    }

    pub fn codomain(&self) -> usize {
        self.codomain
    }

    pub fn column(&self, j: usize) -> &SparseVec {
        &self.cols[j]
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> Scalar {
        self.cols[j].get(i as u32).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut acc = Accum::default();
        for (j, c) in v.iter() {
            for (i, m) in self.cols[j as usize].iter() {
                acc.add_owned(i, m * c);
            }
        }
        acc.into_vec()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LinMap) -> Result<LinMap> {
        if other.codomain != self.domain() {
            return Err(Error::DimensionMismatch(format!(
                "cannot compose {}x{} after {}x{}",
                self.codomain,
                self.domain(),
                other.codomain,
                other.domain()
            )));
        }
        Ok(LinMap {
            field: self.field,
            codomain: self.codomain,
            cols: other.cols.iter().map(|c| self.apply(c)).collect(),
        })
    }

    pub fn transpose(&self) -> LinMap {
        let mut cols: Vec<Vec<(u32, Scalar)>> = vec![Vec::new(); self.codomain];
        for (j, c) in self.cols.iter().enumerate() {
            for (i, v) in c.iter() {
                cols[i as usize].push((j as u32, v.clone()));
            }
        }
        LinMap {
            field: self.field,
            codomain: self.domain(),
            cols: cols.into_iter().map(SparseVec::from_sorted).collect(),
        }
    }

    /// The basis permutation this map realizes, if it is a permutation matrix.
    pub fn as_permutation(&self) -> Option<Vec<usize>> {
        if self.codomain != self.domain() {
            return None;
        }
        let mut seen = vec![false; self.codomain];
        let mut perm = Vec::with_capacity(self.codomain);
        for c in &self.cols {
            match c.entries() {
                [(i, v)] if v.is_one() && !std::mem::replace(&mut seen[*i as usize], true) => perm.push(*i as usize),
                _ => return None,
            }
        }
        Some(perm)
    }

    fn dense_rows(&self) -> Vec<Vec<Scalar>> {
        let mut rows = vec![vec![self.field.zero(); self.domain()]; self.codomain];
        for (j, c) in self.cols.iter().enumerate() {
            for (i, v) in c.iter() {
                rows[i as usize][j] = v.clone();
            }
        }
        rows
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.dense_rows();
        clear_denominators(&mut rows);
        let ncols = self.domain();
        bareiss(&mut rows, ncols, false).len()
    }
}

/// Multiplies each row by the lcm of its denominators so the matrix is
/// integral. Returns the multipliers. Prime-field rows are left alone.
fn clear_denominators(rows: &mut [Vec<Scalar>]) -> Vec<Scalar> {
    rows.iter_mut()
        .map(|row| {
            let Some(first) = row.first() else { return FieldSpec::Rationals.one() };
            let field = first.field();
            if field != FieldSpec::Rationals {
                return field.one();
            }
            let mut l = num_bigint::BigInt::from(1);
            for v in row.iter() {
                let (_, d) = v.to_fraction();
                l = num_integer::Integer::lcm(&l, &d);
            }
            let m = Scalar::from_big_integer(l);
            if !m.is_one() {
                for v in row.iter_mut() {
                    *v = &*v * &m;
                }
            }
            m
        })
        .collect()
}

/// Fraction-free Gauss-Jordan elimination in place over the first `ncols`
/// columns, returning the pivot columns. Every intermediate entry is a
/// minor of the input, so integer input stays integral. With `reduce`, rows
/// above each pivot are cleared as well.
fn bareiss(rows: &mut [Vec<Scalar>], ncols: usize, reduce: bool) -> Vec<usize> {
    let Some(field) = rows.first().and_then(|r| r.first()).map(|v| v.field()) else {
        return Vec::new();
    };
    let mut prev = field.one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let prev_inv = prev.inverse().expect("pivots are nonzero");
        let pivot_row = rows[r].clone();
        let pv = pivot_row[c].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || (!reduce && i < r) {
                continue;
            }
            let f = row[c].clone();
            for (j, x) in row.iter_mut().enumerate() {
                if j == c {
                    continue;
                }
                let y = &pivot_row[j];
                if x.is_zero() && (f.is_zero() || y.is_zero()) {
                    continue;
                }
                *x = &(&(&pv * &*x) - &(&f * y)) * &prev_inv;
            }
            row[c] = field.zero();
        }
        prev = pv;
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Exact inverse of a square map.
///
/// Permutation matrices are inverted by transposition; everything else goes
/// through fraction-free Gauss-Jordan elimination on `[M | I]`.
pub fn matrix_inverse(m: &LinMap) -> Result<LinMap> {
    let n = m.domain();
    if m.codomain() != n {
        return Err(Error::DimensionMismatch(format!("cannot invert a {}x{} matrix", m.codomain(), n)));
    }
    if m.as_permutation().is_some() {
        return Ok(m.transpose());
    }
    let field = m.field();
    let mut rows = m.dense_rows();
    let scale = clear_denominators(&mut rows);
    // [DM | D] reduces to [c I | c (DM)^{-1} D], and (DM)^{-1} D = M^{-1}.
    for (i, (row, s)) in rows.iter_mut().zip(&scale).enumerate() {
        row.extend((0..n).map(|j| if i == j { s.clone() } else { field.zero() }));
    }
    let pivots = bareiss(&mut rows, n, true);
    if pivots.len() < n {
        return Err(Error::SingularMatrix);
    }
    let mut cols: Vec<Vec<(u32, Scalar)>> = vec![Vec::new(); n];
    for (i, row) in rows.iter().enumerate() {
        let d = row[i].inverse()?;
        for (j, v) in row[n..].iter().enumerate() {
            if !v.is_zero() {
                cols[j].push((i as u32, v * &d));
            }
        }
    }
    LinMap::from_columns(field, n, cols.into_iter().map(SparseVec::from_sorted).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> Scalar {
        FieldSpec::Rationals.from_i64(v)
    }

    fn from_rows(rows: &[&[i64]]) -> LinMap {
        let n = rows[0].len();
        let cols = (0..n)
            .map(|j| SparseVec::from_pairs(rows.iter().enumerate().map(|(i, r)| (i as u32, q(r[j]))).collect()))
            .collect();
        LinMap::from_columns(FieldSpec::Rationals, rows.len(), cols).unwrap()
    }

    #[test]
    fn inverse_examples() {
        let id = LinMap::identity(FieldSpec::Rationals, 3);
        assert_eq!(matrix_inverse(&id).unwrap(), id);
        let swap = from_rows(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]);
        assert_eq!(matrix_inverse(&swap).unwrap(), swap);
        let u = from_rows(&[&[1, 1], &[0, 1]]);
        assert_eq!(matrix_inverse(&u).unwrap(), from_rows(&[&[1, -1], &[0, 1]]));
    }

    #[test]
    fn singular_is_rejected() {
        let m = from_rows(&[&[1, 2], &[2, 4]]);
        assert_eq!(matrix_inverse(&m), Err(Error::SingularMatrix));
        assert_eq!(m.rank(), 1);
        assert_eq!(LinMap::zero(FieldSpec::Rationals, 2, 2).rank(), 0);
    }

    #[test]
    fn rational_entries_and_prime_field() {
        let half = FieldSpec::Rationals.parse("1/2").unwrap();
        let m = LinMap::from_columns(
            FieldSpec::Rationals,
            2,
            vec![SparseVec::from_pairs(vec![(0, half.clone()), (1, q(3))]), SparseVec::from_pairs(vec![(0, q(5)), (1, half)])],
        )
        .unwrap();
        let inv = matrix_inverse(&m).unwrap();
        assert_eq!(inv.compose(&m).unwrap(), LinMap::identity(FieldSpec::Rationals, 2));

        let f = FieldSpec::prime(7).unwrap();
        let m = LinMap::from_columns(
            f,
            2,
            vec![SparseVec::from_pairs(vec![(0, f.from_i64(2)), (1, f.from_i64(3))]), SparseVec::from_pairs(vec![(0, f.from_i64(1)), (1, f.from_i64(4))])],
        )
        .unwrap();
        let inv = matrix_inverse(&m).unwrap();
        assert_eq!(m.compose(&inv).unwrap(), LinMap::identity(f, 2));
    }

    #[test]
    fn transpose_and_tensor_round_trip() {
        let m = from_rows(&[&[1, 2, 0], &[0, -3, 4]]);
        assert_eq!(LinMap::from_tensor(&m.to_tensor()).unwrap(), m);
        assert_eq!(m.transpose().transpose(), m);
        assert_eq!(m.transpose().entry(2, 1), q(4));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn square() -> impl Strategy<Value = LinMap> {
            (1usize..6).prop_flat_map(|n| {
                proptest::collection::vec(prop_oneof![2 => Just(0i64), 3 => -6i64..7], n * n)
                    .prop_map(move |v| from_rows(&v.chunks(n).collect::<Vec<_>>()))
            })
        }

        proptest! {
            #[test]
            fn inverse_is_two_sided(m in square()) {
                let n = m.domain();
                match matrix_inverse(&m) {
                    Ok(inv) => {
                        prop_assert_eq!(inv.compose(&m).unwrap(), LinMap::identity(FieldSpec::Rationals, n));
                        prop_assert_eq!(m.compose(&inv).unwrap(), LinMap::identity(FieldSpec::Rationals, n));
                        prop_assert_eq!(m.rank(), n);
                    }
                    Err(e) => {
                        prop_assert_eq!(e, Error::SingularMatrix);
                        prop_assert!(m.rank() < n);
                    }
                }
            }
        }
    }
}
