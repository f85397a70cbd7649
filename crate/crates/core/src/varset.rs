//! Subsets of the variable index set `[n] = {1, ..., n}`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A subset of `[n]`, stored as a bitmask over 1-based variable labels.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VarSet(u32);

impl VarSet {
    pub const EMPTY: VarSet = VarSet(0);

    /// Full set `{1, ..., n}`.
    pub fn full(n: usize) -> VarSet {
        debug_assert!(n <= 31);
        VarSet(((1u64 << n) - 1) as u32)
    }

    /// Singleton `{label}` (labels are 1-based).
    pub fn singleton(label: usize) -> VarSet {
        debug_assert!((1..=31).contains(&label));
        VarSet(1 << (label - 1))
    }

    pub fn from_labels(labels: &[usize]) -> VarSet {
        labels
            .iter()
            .fold(VarSet::EMPTY, |acc, &l| acc.union(VarSet::singleton(l)))
    }

    pub fn labels(self) -> Vec<usize> {
        (1..=31).filter(|&l| self.contains(l)).collect()
    }

    pub fn contains(self, label: usize) -> bool {
        label >= 1 && (self.0 >> (label - 1)) & 1 == 1
    }

    pub fn union(self, other: VarSet) -> VarSet {
        VarSet(self.0 | other.0)
    }

    pub fn intersect(self, other: VarSet) -> VarSet {
        VarSet(self.0 & other.0)
    }

    pub fn minus(self, other: VarSet) -> VarSet {
        VarSet(self.0 & !other.0)
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset_of(self, other: VarSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn cardinality(self) -> usize {
        self.0.count_ones() as usize
    }

    /// All nonempty subsets of `[n]` in canonical order: by cardinality,
    /// then lexicographically by sorted labels. For n = 3 this is the
    /// layout `[h1, h2, h3, h12, h13, h23, h123]`.
    pub fn canonical_all(n: usize) -> Vec<VarSet> {
        let mut sets: Vec<VarSet> = (1..(1u32 << n)).map(VarSet).collect();
        sets.sort_by(|a, b| {
            a.cardinality()
                .cmp(&b.cardinality())
                .then_with(|| a.labels().cmp(&b.labels()))
        });
        sets
    }

    /// Position of this subset in the canonical order for `n` variables.
    pub fn canonical_index(self, n: usize) -> Result<usize> {
        VarSet::canonical_all(n)
            .iter()
            .position(|&s| s == self)
            .ok_or_else(|| {
                Error::InvalidArgument(format!(
                    "subset {self} is empty or out of range for n = {n}"
                ))
            })
    }

    /// All subsets (including the empty set) of a given ground set.
    pub fn subsets_of(ground: VarSet) -> Vec<VarSet> {
        let labels = ground.labels();
        let mut out = Vec::with_capacity(1 << labels.len());
        for mask in 0..(1u32 << labels.len()) {
            let mut s = VarSet::EMPTY;
            for (i, &l) in labels.iter().enumerate() {
                if (mask >> i) & 1 == 1 {
                    s = s.union(VarSet::singleton(l));
                }
            }
            out.push(s);
        }
        out.sort_by_key(|s| (s.cardinality(), s.labels()));
        out
    }
}

impl fmt::Display for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "∅");
        }
        for l in self.labels() {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VarSet({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_order_for_three_variables() {
        let order: Vec<String> = VarSet::canonical_all(3)
            .into_iter()
            .map(|s| s.to_string())
            .collect();
        assert_eq!(order, vec!["1", "2", "3", "12", "13", "23", "123"]);
    }

    #[test]
    fn canonical_index_round_trips() {
        for n in 1..=5 {
            for (i, s) in VarSet::canonical_all(n).into_iter().enumerate() {
                assert_eq!(s.canonical_index(n).unwrap(), i);
            }
        }
    }

    #[test]
    fn empty_set_has_no_canonical_index() {
        assert!(VarSet::EMPTY.canonical_index(3).is_err());
    }

    #[test]
    fn set_algebra() {
        let a = VarSet::from_labels(&[1, 3]);
        let b = VarSet::from_labels(&[2, 3]);
        assert_eq!(a.union(b), VarSet::full(3));
        assert_eq!(a.intersect(b), VarSet::singleton(3));
        assert_eq!(a.minus(b), VarSet::singleton(1));
        assert!(a.is_subset_of(VarSet::full(3)));
        assert!(!VarSet::full(3).is_subset_of(a));
    }
}
