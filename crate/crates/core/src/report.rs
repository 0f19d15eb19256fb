//! Check results with counterexample witnesses.

use std::fmt;

use rayon::prelude::*;

use crate::linalg::diff_sorted;
use crate::scalar::{FieldSpec, Scalar};

/// Witnesses kept per report. The total number of failing coordinates is
/// still counted exactly.
pub const MAX_WITNESSES: usize = 16;

/// One coordinate where the two sides of an identity differ.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Witness {
    /// Basis multi-index: the free indices of the identity followed by the
    /// output coordinate.
    pub index: Vec<usize>,
    pub expected: Scalar,
    pub actual: Scalar,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
    /// Not attempted; the string says why.
    Skipped(String),
}

/// The result of one named check, possibly with sub-checks.
///
/// A report passes exactly when it has no witnesses and every sub-report
/// passes or was skipped. Witnesses are sorted lexicographically by index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub name: String,
    pub outcome: Outcome,
    pub witnesses: Vec<Witness>,
    /// Total failing coordinates, including those beyond `MAX_WITNESSES`.
    pub witness_count: u64,
    pub children: Vec<CheckReport>,
    /// Non-gating facts, e.g. whether Δ(1) = 1⊗1 for an almost bialgebra.
    pub info: Vec<(String, String)>,
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn pass(name: impl Into<String>) -> Self {
        CheckReport {
            name: name.into(),
            outcome: Outcome::Pass,
            witnesses: Vec::new(),
            witness_count: 0,
            children: Vec::new(),
            info: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn skipped(name: impl Into<String>, reason: impl Into<String>) -> Self {
        CheckReport {
            outcome: Outcome::Skipped(reason.into()),
            ..CheckReport::pass(name)
        }
    }

    /// A failure with no coordinate witness (e.g. a rank deficiency); the
    /// reason goes into the notes.
    pub fn failed(name: impl Into<String>, reason: impl Into<String>) -> Self {
        CheckReport {
            outcome: Outcome::Fail,
            notes: vec![reason.into()],
            ..CheckReport::pass(name)
        }
    }

    pub fn from_witnesses(name: impl Into<String>, witnesses: Vec<Witness>) -> Self {
        let mut w = WitnessSet::default();
        w.extend(witnesses);
        w.into_report(name)
    }

    /// Combines sub-checks under one name.
    pub fn group(name: impl Into<String>, children: Vec<CheckReport>) -> Self {
        let mut r = CheckReport::pass(name);
        if children.iter().any(|c| c.outcome == Outcome::Fail) {
            r.outcome = Outcome::Fail;
        }
        r.children = children;
        r
    }

    pub fn passed(&self) -> bool {
        self.outcome == Outcome::Pass
    }

    pub fn failed_outcome(&self) -> bool {
        self.outcome == Outcome::Fail
    }

    pub fn with_info(mut self, key: impl Into<String>, value: impl fmt::Display) -> Self {
        self.info.push((key.into(), value.to_string()));
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    pub fn child(&self, name: &str) -> Option<&CheckReport> {
        self.children.iter().find(|c| c.name == name)
    }

    /// Depth-first search for a sub-report by name.
    pub fn find(&self, name: &str) -> Option<&CheckReport> {
        if self.name == name {
            return Some(self);
        }
        self.children.iter().find_map(|c| c.find(name))
    }

    pub fn info_value(&self, key: &str) -> Option<&str> {
        self.info.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    /// First witness in this report or its sub-reports.
    pub fn first_witness(&self) -> Option<&Witness> {
        self.witnesses.first().or_else(|| self.children.iter().find_map(|c| c.first_witness()))
    }

    /// Human-readable form, one line per check.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        self.write_text(&mut out, 0);
        out
    }

    fn write_text(&self, out: &mut String, depth: usize) {
        use std::fmt::Write;
        let pad = "  ".repeat(depth);
        let status = match &self.outcome {
            Outcome::Pass => "PASS".to_string(),
            Outcome::Fail => "FAIL".to_string(),
            Outcome::Skipped(why) => format!("SKIPPED ({why})"),
        };
        let _ = write!(out, "{pad}{status} {}", self.name);
        for (k, v) in &self.info {
            let _ = write!(out, " [{k}={v}]");
        }
        if self.witness_count > 0 {
            let _ = write!(out, " ({} failing coordinates)", self.witness_count);
        }
        out.push('\n');
        for w in &self.witnesses {
            let _ = writeln!(out, "{pad}    at {:?}: expected {}, got {}", w.index, w.expected, w.actual);
        }
        for n in &self.notes {
            let _ = writeln!(out, "{pad}    note: {n}");
        }
        for c in &self.children {
            c.write_text(out, depth + 1);
        }
    }
}

/// Collects witnesses, keeping the lexicographically smallest
/// `MAX_WITNESSES` and counting the rest.
#[derive(Clone, Debug, Default)]
pub struct WitnessSet {
    kept: Vec<Witness>,
    count: u64,
}

impl WitnessSet {
    pub fn push(&mut self, w: Witness) {
        self.count += 1;
        self.kept.push(w);
        if self.kept.len() >= 8 * MAX_WITNESSES {
            self.compact();
        }
    }

    pub fn extend(&mut self, ws: impl IntoIterator<Item = Witness>) {
        for w in ws {
            self.push(w);
        }
    }

    pub fn merge(&mut self, other: WitnessSet) {
        self.count += other.count;
        self.kept.extend(other.kept);
        self.compact();
    }

    /// Records every differing coordinate of two sorted sparse maps, with
    /// `prefix` prepended to each key.
    pub fn record_diff<K: IndexKey>(&mut self, prefix: &[usize], actual: &[(K, Scalar)], expected: &[(K, Scalar)], field: FieldSpec) {
        for (k, e, a) in diff_sorted(actual, expected, field) {
            let mut index = prefix.to_vec();
            k.append_to(&mut index);
            self.push(Witness { index, expected: e, actual: a });
        }
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    fn compact(&mut self) {
        self.kept.sort();
        self.kept.dedup();
        self.kept.truncate(MAX_WITNESSES);
    }

    pub fn into_report(mut self, name: impl Into<String>) -> CheckReport {
        self.compact();
        let mut r = CheckReport::pass(name);
        if self.count > 0 {
            r.outcome = Outcome::Fail;
        }
        r.witnesses = self.kept;
        r.witness_count = self.count;
        r
    }
}

/// Keys of sparse maps that flatten into a witness multi-index.
pub trait IndexKey: Ord + Clone {
    fn append_to(&self, out: &mut Vec<usize>);
}

impl IndexKey for u32 {
    fn append_to(&self, out: &mut Vec<usize>) {
        out.push(*self as usize);
    }
}

impl IndexKey for (u32, u32) {
    fn append_to(&self, out: &mut Vec<usize>) {
        out.extend([self.0 as usize, self.1 as usize]);
    }
}

impl<const N: usize> IndexKey for [u32; N] {
    fn append_to(&self, out: &mut Vec<usize>) {
        out.extend(self.iter().map(|&i| i as usize));
    }
}

impl IndexKey for Vec<usize> {
    fn append_to(&self, out: &mut Vec<usize>) {
        out.extend_from_slice(self);
    }
}

/// Runs `f` for every `i < n` in parallel and merges the witnesses. The
/// result does not depend on scheduling.
pub fn par_witnesses(n: usize, f: impl Fn(usize, &mut WitnessSet) + Sync + Send) -> WitnessSet {
    (0..n)
        .into_par_iter()
        .fold(WitnessSet::default, |mut w, i| {
            f(i, &mut w);
            w
        })
        .reduce(WitnessSet::default, |mut a, b| {
            a.merge(b);
            a
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(index: Vec<usize>) -> Witness {
        let f = FieldSpec::Rationals;
        Witness { index, expected: f.one(), actual: f.zero() }
    }

    #[test]
    fn witnesses_sorted_and_capped() {
        let mut set = WitnessSet::default();
        for i in (0..100).rev() {
            set.push(w(vec![i, 0]));
        }
        let r = set.into_report("demo");
        assert!(!r.passed());
        assert_eq!(r.witness_count, 100);
        assert_eq!(r.witnesses.len(), MAX_WITNESSES);
        assert_eq!(r.witnesses[0].index, vec![0, 0]);
        assert!(r.witnesses.windows(2).all(|p| p[0] < p[1]));
    }

    #[test]
    fn groups_propagate_failures_not_skips() {
        let ok = CheckReport::group("g", vec![CheckReport::pass("a"), CheckReport::skipped("b", "too big")]);
        assert!(ok.passed());
        let bad = CheckReport::group("g", vec![CheckReport::pass("a"), CheckReport::from_witnesses("c", vec![w(vec![1])])]);
        assert!(!bad.passed());
        assert_eq!(bad.first_witness().unwrap().index, vec![1]);
        assert!(bad.to_text().contains("FAIL c"));
    }
}
