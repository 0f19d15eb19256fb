//! Sparse exact multilinear arrays.
//!
//! Every structure constant in the crate (multiplication, comultiplication,
//! unit, counit, antipode, pairings, actions) can be exported as a
//! [`SparseTensor`]. Entries are kept in a `BTreeMap`, so iteration is
//! lexicographic in the multi-index and output is deterministic.

use std::collections::BTreeMap;

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::scalar::{FieldSpec, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseTensor {
    field: FieldSpec,
    shape: Vec<usize>,
    entries: BTreeMap<Vec<usize>, Scalar>,
}

impl SparseTensor {
    pub fn zeros(field: FieldSpec, shape: Vec<usize>) -> Self {
        SparseTensor {
            field,
            shape,
            entries: BTreeMap::new(),
        }
    }

    /// Builds a tensor, summing repeated indices and dropping zeros.
    pub fn from_entries<I>(field: FieldSpec, shape: Vec<usize>, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<usize>, Scalar)>,
    {
        let mut t = SparseTensor::zeros(field, shape);
        for (idx, v) in entries {
            t.add_entry(idx, &v)?;
        }
        Ok(t)
    }

    /// `n × n` identity matrix.
    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let entries = (0..n).map(|i| (vec![i, i], field.one())).collect();
        SparseTensor {
            field,
            shape: vec![n, n],
            entries,
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn rank(&self) -> usize {
        self.shape.len()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, idx: &[usize]) -> Option<&Scalar> {
        self.entries.get(idx)
    }

    /// Entries in lexicographic index order.
    pub fn iter(&self) -> impl Iterator<Item = (&[usize], &Scalar)> {
        self.entries.iter().map(|(k, v)| (k.as_slice(), v))
    }

    pub fn add_entry(&mut self, idx: Vec<usize>, value: &Scalar) -> Result<()> {
        self.check_index(&idx)?;
        if value.field() != self.field {
            return Err(Error::MixedFields(self.field, value.field()));
        }
        if value.is_zero() {
            return Ok(());
        }
        match self.entries.get_mut(&idx) {
            Some(v) => {
                *v += value;
                if v.is_zero() {
                    self.entries.remove(&idx);
                }
            }
            None => {
                self.entries.insert(idx, value.clone());
            }
        }
        Ok(())
    }

    fn check_index(&self, idx: &[usize]) -> Result<()> {
        if idx.len() != self.shape.len() || idx.iter().zip(&self.shape).any(|(i, d)| i >= d) {
            return Err(Error::IndexOutOfBounds {
                index: idx.to_vec(),
                shape: self.shape.clone(),
            });
        }
        Ok(())
    }

    pub fn scale(&self, c: &Scalar) -> SparseTensor {
        let entries = self
            .entries
            .iter()
            .map(|(k, v)| (k.clone(), v * c))
            .filter(|(_, v)| !v.is_zero())
            .collect();
        SparseTensor {
            field: self.field,
            shape: self.shape.clone(),
            entries,
        }
    }

    /// Reorders axes: axis `k` of the result is axis `perm[k]` of `self`.
    pub fn permute_axes(&self, perm: &[usize]) -> Result<SparseTensor> {
        let mut seen = vec![false; self.rank()];
        if perm.len() != self.rank() || perm.iter().any(|&p| p >= seen.len() || std::mem::replace(&mut seen[p], true)) {
            return Err(Error::DimensionMismatch(format!(
                "{perm:?} is not a permutation of {} axes",
                self.rank()
            )));
        }
        let shape = perm.iter().map(|&p| self.shape[p]).collect();
        let entries = self
            .entries
            .iter()
            .map(|(k, v)| (perm.iter().map(|&p| k[p]).collect(), v.clone()))
            .collect();
        Ok(SparseTensor {
            field: self.field,
            shape,
            entries,
        })
    }

    /// Sums over the paired axes `(axis of self, axis of other)`. The result
    /// carries the uncontracted axes of `self`, then those of `other`, each
    /// in their original order.
    pub fn contract(&self, other: &SparseTensor, axis_pairs: &[(usize, usize)]) -> Result<SparseTensor> {
        if self.field != other.field {
            return Err(Error::MixedFields(self.field, other.field));
        }
        for &(a, b) in axis_pairs {
            if a >= self.rank() || b >= other.rank() {
                return Err(Error::DimensionMismatch(format!("axis pair ({a}, {b}) out of range")));
            }
            if self.shape[a] != other.shape[b] {
                return Err(Error::DimensionMismatch(format!(
                    "contracted axes have dimensions {} and {}",
                    self.shape[a], other.shape[b]
                )));
            }
        }
        let left_axes: Vec<usize> = axis_pairs.iter().map(|p| p.0).collect();
        let right_axes: Vec<usize> = axis_pairs.iter().map(|p| p.1).collect();
        if has_duplicates(&left_axes) || has_duplicates(&right_axes) {
            return Err(Error::DimensionMismatch("axis contracted twice".into()));
        }
        let free_left: Vec<usize> = (0..self.rank()).filter(|a| !left_axes.contains(a)).collect();
        let free_right: Vec<usize> = (0..other.rank()).filter(|a| !right_axes.contains(a)).collect();

        let mut by_key: FxHashMap<Vec<usize>, Vec<(Vec<usize>, &Scalar)>> = FxHashMap::default();
        for (k, v) in &other.entries {
            let key = right_axes.iter().map(|&a| k[a]).collect();
            let free = free_right.iter().map(|&a| k[a]).collect();
            by_key.entry(key).or_default().push((free, v));
        }

        let shape = free_left
            .iter()
            .map(|&a| self.shape[a])
            .chain(free_right.iter().map(|&a| other.shape[a]))
            .collect();
        let mut out = SparseTensor::zeros(self.field, shape);
        for (k, v) in &self.entries {
            let key: Vec<usize> = left_axes.iter().map(|&a| k[a]).collect();
            let Some(partners) = by_key.get(&key) else { continue };
            let head: Vec<usize> = free_left.iter().map(|&a| k[a]).collect();
            for (tail, w) in partners {
                let mut idx = head.clone();
                idx.extend_from_slice(tail);
                out.accumulate(idx, v * w);
            }
        }
        Ok(out)
    }

    /// Outer product with concatenated shape.
    pub fn kron(&self, other: &SparseTensor) -> Result<SparseTensor> {
        if self.field != other.field {
            return Err(Error::MixedFields(self.field, other.field));
        }
        let shape = self.shape.iter().chain(&other.shape).copied().collect();
        let mut entries = BTreeMap::new();
        for (a, x) in &self.entries {
            for (b, y) in &other.entries {
                let mut idx = a.clone();
                idx.extend_from_slice(b);
                entries.insert(idx, x * y);
            }
        }
        Ok(SparseTensor {
            field: self.field,
            shape,
            entries,
        })
    }

    // Index already validated by the caller.
    fn accumulate(&mut self, idx: Vec<usize>, value: Scalar) {
        if value.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.entries.entry(idx) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += &value;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                e.insert(value);
            }
        }
    }
}

fn has_duplicates(v: &[usize]) -> bool {
    v.iter().enumerate().any(|(i, a)| v[..i].contains(a))
}

/// The `n`-fold coproduct of a comultiplication tensor of shape `[d, d, d]`
/// (input, left output, right output).
///
/// `n = 1` is the identity map, `n = 2` is `Δ` itself, and higher orders
/// expand the leftmost output leg: `Δ⁽ⁿ⁾ = (Δ ⊗ id^{n-2}) ∘ Δ⁽ⁿ⁻¹⁾`. The
/// result has shape `[d, d, …, d]` with `n` output axes.
pub fn iterated_coproduct(delta: &SparseTensor, n: usize) -> Result<SparseTensor> {
    let shape = delta.shape();
    if shape.len() != 3 || shape[1] != shape[0] || shape[2] != shape[0] {
        return Err(Error::DimensionMismatch(format!(
            "comultiplication must have shape [d, d, d], got {shape:?}"
        )));
    }
    if n == 0 {
        return Err(Error::DimensionMismatch("coproduct order must be at least 1".into()));
    }
    let d = shape[0];
    if n == 1 {
        return Ok(SparseTensor::identity(delta.field(), d));
    }
    let mut acc = delta.clone();
    for k in 3..=n {
        // acc: [in, o1, ..., o_{k-1}]; split o1 with Δ.
        let split = acc.contract(delta, &[(1, 0)])?;
        // split: [in, o2, ..., o_{k-1}, left, right]
        let mut perm = vec![0, k - 1, k];
        perm.extend(1..k - 1);
        acc = split.permute_axes(&perm)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> Scalar {
        FieldSpec::Rationals.from_i64(v)
    }

    fn matrix(rows: &[&[i64]]) -> SparseTensor {
        let shape = vec![rows.len(), rows[0].len()];
        let entries = rows
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().enumerate().map(move |(j, &v)| (vec![i, j], q(v))));
        SparseTensor::from_entries(FieldSpec::Rationals, shape, entries).unwrap()
    }

    #[test]
    fn identity_contract_vector() {
        let v = SparseTensor::from_entries(FieldSpec::Rationals, vec![3], [(vec![0], q(2)), (vec![2], q(-5))]).unwrap();
        let id = SparseTensor::identity(FieldSpec::Rationals, 3);
        assert_eq!(id.contract(&v, &[(1, 0)]).unwrap(), v);
    }

    #[test]
    fn swap_matrix_squares_to_identity() {
        let s = matrix(&[&[0, 1], &[1, 0]]);
        assert_eq!(s.contract(&s, &[(1, 0)]).unwrap(), SparseTensor::identity(FieldSpec::Rationals, 2));
    }

    #[test]
    fn contraction_rejects_mismatched_axes() {
        let a = SparseTensor::zeros(FieldSpec::Rationals, vec![2, 3]);
        let b = SparseTensor::zeros(FieldSpec::Rationals, vec![2, 3]);
        assert!(matches!(a.contract(&b, &[(1, 0)]), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn kron_examples() {
        let c = SparseTensor::from_entries(FieldSpec::Rationals, vec![1, 1], [(vec![0, 0], q(3))]).unwrap();
        let t = matrix(&[&[1, 2], &[0, 4]]);
        let ct = c.kron(&t).unwrap();
        assert_eq!(ct.shape(), &[1, 1, 2, 2]);
        assert_eq!(ct.get(&[0, 0, 1, 1]), Some(&q(12)));
        assert_eq!(ct.nnz(), t.nnz());

        let e1 = SparseTensor::from_entries(FieldSpec::Rationals, vec![2], [(vec![0], q(1))]).unwrap();
        let e2 = SparseTensor::from_entries(FieldSpec::Rationals, vec![2], [(vec![1], q(1))]).unwrap();
        let k = e1.kron(&e2).unwrap();
        assert_eq!(k.iter().map(|(i, _)| i.to_vec()).collect::<Vec<_>>(), vec![vec![0, 1]]);

        let id = SparseTensor::identity(FieldSpec::Rationals, 2);
        let big = id.kron(&id).unwrap();
        assert_eq!(big.shape(), &[2, 2, 2, 2]);
        // [i, i', j, j'] -> identity on the paired legs (i, j), (i', j')
        let reshaped = big.permute_axes(&[0, 2, 1, 3]).unwrap();
        for (idx, v) in reshaped.iter() {
            assert_eq!((idx[0], idx[1]), (idx[2], idx[3]));
            assert!(v.is_one());
        }
        assert_eq!(reshaped.nnz(), 4);
    }

    /// Comultiplication of k{1, e} with both basis elements group-like.
    fn two_point_grouplike() -> SparseTensor {
        SparseTensor::from_entries(FieldSpec::Rationals, vec![2, 2, 2], [(vec![0, 0, 0], q(1)), (vec![1, 1, 1], q(1))]).unwrap()
    }

    #[test]
    fn iterated_coproduct_orders() {
        let delta = two_point_grouplike();
        assert_eq!(iterated_coproduct(&delta, 1).unwrap(), SparseTensor::identity(FieldSpec::Rationals, 2));
        assert_eq!(iterated_coproduct(&delta, 2).unwrap(), delta);
        let d3 = iterated_coproduct(&delta, 3).unwrap();
        let idx: Vec<Vec<usize>> = d3.iter().map(|(i, _)| i.to_vec()).collect();
        assert_eq!(idx, vec![vec![0, 0, 0, 0], vec![1, 1, 1, 1]]);
    }

    #[test]
    fn counit_contracts_coproduct_to_identity() {
        let delta = two_point_grouplike();
        let counit = SparseTensor::from_entries(FieldSpec::Rationals, vec![2], [(vec![0], q(1)), (vec![1], q(1))]).unwrap();
        let left = delta.contract(&counit, &[(2, 0)]).unwrap();
        assert_eq!(left, SparseTensor::identity(FieldSpec::Rationals, 2));
    }

    /// A non-group-like coalgebra: the dual of the monoid algebra of {1, e}.
    fn dual_two_point() -> SparseTensor {
        // basis φ1, φe with (φ_s)(ab) = [ab = s]:  1·1 = 1, everything else = e.
        let mut entries = vec![(vec![0, 0, 0], q(1))];
        for (a, b) in [(0, 1), (1, 0), (1, 1)] {
            entries.push((vec![1, a, b], q(1)));
        }
        SparseTensor::from_entries(FieldSpec::Rationals, vec![2, 2, 2], entries).unwrap()
    }

    #[test]
    fn coassociativity_both_ways() {
        let delta = dual_two_point();
        // (Δ ⊗ id)Δ
        let left = delta.contract(&delta, &[(1, 0)]).unwrap().permute_axes(&[0, 2, 3, 1]).unwrap();
        // (id ⊗ Δ)Δ
        let right = delta.contract(&delta, &[(2, 0)]).unwrap();
        assert_eq!(left, right);
        assert_eq!(iterated_coproduct(&delta, 3).unwrap(), right);
    }

    /// Oracle: dense loops over every index combination.
    fn dense_contract(a: &SparseTensor, b: &SparseTensor, pairs: &[(usize, usize)]) -> SparseTensor {
        let free_a: Vec<usize> = (0..a.rank()).filter(|x| !pairs.iter().any(|p| p.0 == *x)).collect();
        let free_b: Vec<usize> = (0..b.rank()).filter(|x| !pairs.iter().any(|p| p.1 == *x)).collect();
        let out_shape: Vec<usize> = free_a.iter().map(|&x| a.shape()[x]).chain(free_b.iter().map(|&x| b.shape()[x])).collect();
        let sum_shape: Vec<usize> = pairs.iter().map(|p| a.shape()[p.0]).collect();
        let mut out = SparseTensor::zeros(FieldSpec::Rationals, out_shape.clone());
        for o in all_indices(&out_shape) {
            let mut acc = q(0);
            for s in all_indices(&sum_shape) {
                let mut ia = vec![0; a.rank()];
                let mut ib = vec![0; b.rank()];
                for (k, &x) in free_a.iter().enumerate() {
                    ia[x] = o[k];
                }
                for (k, &x) in free_b.iter().enumerate() {
                    ib[x] = o[free_a.len() + k];
                }
                for (k, p) in pairs.iter().enumerate() {
                    ia[p.0] = s[k];
                    ib[p.1] = s[k];
                }
                if let (Some(x), Some(y)) = (a.get(&ia), b.get(&ib)) {
                    acc = &acc + &(x * y);
                }
            }
            out.add_entry(o, &acc).unwrap();
        }
        out
    }

    fn all_indices(shape: &[usize]) -> Vec<Vec<usize>> {
        let mut out = vec![vec![]];
        for &d in shape {
            out = out
                .into_iter()
                .flat_map(|p| (0..d).map(move |i| {
                    let mut p = p.clone();
                    p.push(i);
                    p
                }))
                .collect();
        }
        out
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn tensor(shape: Vec<usize>) -> impl Strategy<Value = SparseTensor> {
            let size: usize = shape.iter().product();
            proptest::collection::vec(prop_oneof![3 => Just(0i64), 2 => -4i64..5], size).prop_map(move |vals| {
                let idx = all_indices(&shape);
                SparseTensor::from_entries(FieldSpec::Rationals, shape.clone(), idx.into_iter().zip(vals.into_iter().map(q))).unwrap()
            })
        }

        fn case() -> impl Strategy<Value = (SparseTensor, SparseTensor, Vec<(usize, usize)>)> {
            (1usize..4, 1usize..4, 1usize..4, 1usize..4).prop_flat_map(|(a, b, c, d)| {
                // t1: [a, b, c], t2: [c, b, d]; contract over one or two axes
                (tensor(vec![a, b, c]), tensor(vec![c, b, d]), any::<bool>()).prop_map(|(x, y, two)| {
                    let pairs = if two { vec![(2, 0), (1, 1)] } else { vec![(2, 0)] };
                    (x, y, pairs)
                })
            })
        }

        proptest! {
            #[test]
            fn contraction_matches_dense_oracle((a, b, pairs) in case()) {
                prop_assert_eq!(a.contract(&b, &pairs).unwrap(), dense_contract(&a, &b, &pairs));
            }

            #[test]
            fn contraction_is_bilinear((a, b, pairs) in case(), c in -3i64..4) {
                let c = q(c);
                let lhs = a.scale(&c).contract(&b, &pairs).unwrap();
                prop_assert_eq!(&lhs, &a.contract(&b, &pairs).unwrap().scale(&c));
                prop_assert_eq!(lhs, a.contract(&b.scale(&c), &pairs).unwrap());
            }
        }
    }
}
