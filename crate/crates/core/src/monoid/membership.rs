//! Membership in a finitely generated monoid `⟨S⟩ + U`, where `U` is the
//! unit group and `S` the non-unit generators.
//!
//! A linear form positive on every non-unit generator and zero on `U` bounds
//! the search: `x` is a member iff `x ∈ U` or `x - s` is a member for some
//! generator `s` with `deg(s) <= deg(x)`. Results are memoised per coset of `U`.

use std::collections::HashMap;

use num_traits::Signed;

use crate::cone::RationalCone;
use crate::lattice::vector::{dot, is_zero, sub, Int, IntVector};
use crate::lattice::Sublattice;

pub(crate) struct Membership<'a> {
    sharp: Vec<(Int, IntVector)>,
    units: &'a Sublattice,
    cone: &'a RationalCone,
    group: &'a Sublattice,
    grading: IntVector,
    memo: HashMap<IntVector, bool>,
}

impl<'a> Membership<'a> {
    /// `sharp` must lie in `cone` off its lineality space.
    pub(crate) fn new(
        sharp: &[IntVector],
        units: &'a Sublattice,
        cone: &'a RationalCone,
        group: &'a Sublattice,
    ) -> Self {
        let grading = cone.interior_grading();
        let mut sharp: Vec<(Int, IntVector)> =
            sharp.iter().map(|s| (dot(&grading, s), s.clone())).collect();
        sharp.sort();
        Self { sharp, units, cone, group, grading, memo: HashMap::new() }
    }

    pub(crate) fn contains(&mut self, x: &[Int]) -> bool {
        if !self.cone.contains(x) || !self.group.contains(x) {
            return false;
        }
        self.search(x)
    }

    fn search(&mut self, x: &[Int]) -> bool {
        let key = self.units.reduce(x);
        if is_zero(&key) {
            return true;
        }
        if let Some(&known) = self.memo.get(&key) {
            return known;
        }
        let deg = dot(&self.grading, x);
        let mut found = false;
        if deg.is_positive() {
            let steps: Vec<IntVector> = self
                .sharp
                .iter()
                .take_while(|(d, _)| *d <= deg)
                .map(|(_, s)| s.clone())
                .collect();
            for s in steps {
                let y = sub(&key, &s);
                if self.cone.contains(&y) && self.search(&y) {
                    found = true;
                    break;
                }
            }
        }
        self.memo.insert(key, found);
        found
    }
}
