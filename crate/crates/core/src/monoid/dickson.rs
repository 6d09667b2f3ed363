//! Minimal elements of finite subsets of `N^s` under the componentwise order.

use std::collections::BTreeSet;

/// A finite set of tuples of natural numbers, all of the same width.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct NatTupleSet {
    width: usize,
    tuples: BTreeSet<Vec<u64>>,
}

impl NatTupleSet {
    pub fn new(width: usize) -> Self {
        Self { width, tuples: BTreeSet::new() }
    }

    /// Panics if a tuple has the wrong width.
    pub fn from_tuples<I: IntoIterator<Item = Vec<u64>>>(width: usize, tuples: I) -> Self {
        let mut set = Self::new(width);
        for t in tuples {
            set.insert(t);
        }
        set
    }

    pub fn insert(&mut self, tuple: Vec<u64>) -> bool {
        assert_eq!(tuple.len(), self.width, "tuple width must match the set");
        self.tuples.insert(tuple)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn contains(&self, tuple: &[u64]) -> bool {
        self.tuples.contains(tuple)
    }

    /// Tuples in lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = &Vec<u64>> {
        self.tuples.iter()
    }
}

/// `a ⪯ b`: every component of `b` is at least that of `a`.
pub fn dominated_by(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// The minimal elements of `s`.
///
/// Tuples are visited in order of increasing coordinate sum. A tuple strictly
/// below another has a strictly smaller sum, so a tuple is minimal exactly when
/// no previously kept tuple lies below it.
pub fn minimal_elements(s: &NatTupleSet) -> NatTupleSet {
    let mut order: Vec<&Vec<u64>> = s.tuples.iter().collect();
    order.sort_by_key(|t| (t.iter().sum::<u64>(), (*t).clone()));
    let mut kept: Vec<&Vec<u64>> = Vec::new();
    for t in order {
        if !kept.iter().any(|k| dominated_by(k, t)) {
            kept.push(t);
        }
    }
    NatTupleSet::from_tuples(s.width, kept.into_iter().cloned())
}
