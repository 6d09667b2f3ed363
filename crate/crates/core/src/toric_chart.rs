//! Affine toric charts `(N, σ)` and the computations attached to them:
//! the monomial ideal of the toric boundary, orbit data for faces,
//! localization at a face and splitting off the torus factor.

use std::collections::{HashMap, HashSet};

use num_traits::{One, Zero};

use crate::cone::{Face, RationalCone};
use crate::error::{Error, Result};
use crate::lattice::vector::{self, dot, graded_lex, sort_dedup, Int, IntVector};
use crate::lattice::{saturate_sublattice, AdaptedBasis, Sublattice};
use crate::monoid::{minimal_elements, AffineMonoid, NatTupleSet};

/// Largest enumeration bound tried by [`ToricChart::boundary_ideal_generators`].
pub const MAX_IDEAL_BOUND: u64 = 1 << 12;

/// The affine toric variety of a strongly convex cone `σ` in `N = Z^d`,
/// recorded through `σ` and its dual monoid `M_σ = σ^∨ ∩ M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToricChart {
    lattice_rank: usize,
    cone: RationalCone,
    dual_monoid: AffineMonoid,
}

/// A monomial ideal of an affine monoid, by its minimal exponents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialIdeal {
    pub monoid: AffineMonoid,
    pub generator_exponents: Vec<IntVector>,
}

impl MonomialIdeal {
    /// `v` lies in the ideal when some generator divides it in the monoid.
    pub fn contains(&self, v: &[Int]) -> bool {
        self.generator_exponents.iter().any(|g| self.monoid.divides(g, v))
    }

    pub fn is_empty(&self) -> bool {
        self.generator_exponents.is_empty()
    }
}

/// The torus orbit `O(τ)` of a face: its dimension and the monoid
/// `σ^∨ ∩ τ^⊥ ∩ M` of its closure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitData {
    pub face: Face,
    pub orbit_dimension: usize,
    pub closure_monoid: AffineMonoid,
}

/// `N = N1 ⊕ N2` with `N1` the saturated span of the cone, so that
/// `τ^∨ ∩ M = (τ^∨ ∩ M1) ⊕ M2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitResult {
    pub n1: Sublattice,
    pub n2: Sublattice,
    /// `τ^∨ ∩ M1` in the coordinates dual to the basis of `n1`.
    pub factor_monoid: AffineMonoid,
    pub torus_rank: usize,
    basis: AdaptedBasis,
}

impl SplitResult {
    /// The unimodular basis of `N` made of the bases of `n1` and `n2`.
    pub fn basis(&self) -> &AdaptedBasis {
        &self.basis
    }

    /// `(τ^∨ ∩ M1) ⊕ M2` carried back to the standard coordinates of `M`
    /// through the dual basis.
    pub fn reassemble(&self) -> AffineMonoid {
        let dual_basis = self.basis.inverse().transpose();
        let d = dual_basis.source_rank();
        let k = self.n1.rank();
        let mut images = Vec::new();
        for g in self.factor_monoid.generators() {
            let mut w = g.clone();
            w.resize(d, Int::zero());
            images.push(dual_basis.apply(&w));
        }
        for i in k..d {
            let e = vector::unit(d, i);
            images.push(dual_basis.apply(&e));
            images.push(dual_basis.apply(&vector::neg(&e)));
        }
        AffineMonoid::generated_by(d, &images).expect("images have the lattice rank")
    }
}

impl ToricChart {
    pub fn new(lattice_rank: usize, cone_generators: &[IntVector]) -> Result<Self> {
        Self::from_cone(RationalCone::strongly_convex(lattice_rank, cone_generators)?)
    }

    pub fn from_cone(cone: RationalCone) -> Result<Self> {
        if !cone.is_pointed() {
            return Err(Error::NotStronglyConvex);
        }
        let dual_monoid = AffineMonoid::of_cone(&cone.dual());
        Ok(Self { lattice_rank: cone.ambient_rank(), cone, dual_monoid })
    }

    pub fn lattice_rank(&self) -> usize {
        self.lattice_rank
    }

    pub fn cone(&self) -> &RationalCone {
        &self.cone
    }

    pub fn dual_monoid(&self) -> &AffineMonoid {
        &self.dual_monoid
    }

    /// Minimal monomial generators of the ideal of the toric boundary.
    ///
    /// Elements of the dual monoid are written as `N`-combinations of its
    /// non-unit generators; combinations pairing to at least one with every
    /// ray are collected up to a total-degree bound, their coefficient tuples
    /// reduced to the Dickson-minimal ones, and the resulting exponents reduced
    /// once more under divisibility in the monoid. The bound is doubled until
    /// the answer is unchanged over two consecutive doublings.
    pub fn boundary_ideal_generators(&self) -> Result<MonomialIdeal> {
        if self.cone.rays().is_empty() {
            return Ok(MonomialIdeal {
                monoid: self.dual_monoid.clone(),
                generator_exponents: Vec::new(),
            });
        }
        let alphas = self.dual_monoid.sharp_generators();
        let max_pairing = alphas
            .iter()
            .flat_map(|a| self.cone.rays().iter().map(move |r| dot(a, r)))
            .max()
            .unwrap_or_else(Int::one);
        let start: u64 = u64::try_from(2 * max_pairing).unwrap_or(1).max(1);
        let overflow = Error::NoStabilization { bound: MAX_IDEAL_BOUND };
        // m modulo units is determined by its ray pairings, which add up
        let pairings: Vec<Vec<i64>> = alphas
            .iter()
            .map(|a| self.cone.rays().iter().map(|r| i64::try_from(dot(a, r)).ok()).collect())
            .collect::<Option<_>>()
            .ok_or_else(|| overflow.clone())?;
        let mut search = IdealSearch::new(pairings);
        let mut bound = start;
        let mut previous: Option<Vec<IntVector>> = None;
        let mut unchanged = 0;
        while bound <= MAX_IDEAL_BOUND {
            search.extend_to(bound).ok_or_else(|| overflow.clone())?;
            let current = self.ideal_exponents(&alphas, &search);
            if previous.as_ref() == Some(&current) {
                unchanged += 1;
                if unchanged == 2 {
                    return Ok(MonomialIdeal {
                        monoid: self.dual_monoid.clone(),
                        generator_exponents: current,
                    });
                }
            } else {
                unchanged = 0;
            }
            previous = Some(current);
            bound *= 2;
        }
        Err(Error::NoStabilization { bound: MAX_IDEAL_BOUND })
    }

    /// Minimal exponents among the ideal elements found so far.
    fn ideal_exponents(&self, alphas: &[IntVector], search: &IdealSearch) -> Vec<IntVector> {
        let tuples = NatTupleSet::from_tuples(alphas.len(), search.hits.iter().map(|(t, _)| t.clone()));
        let minimal = minimal_elements(&tuples);
        let by_tuple: HashMap<&Vec<u64>, &Vec<i64>> = search.hits.iter().map(|(t, p)| (t, p)).collect();
        let mut found: Vec<(&Vec<u64>, &Vec<i64>)> = minimal.iter().map(|t| (t, by_tuple[t])).collect();
        // divisibility in the saturated dual monoid is comparison of pairings
        found.sort_by(|a, b| a.1.iter().sum::<i64>().cmp(&b.1.iter().sum()).then_with(|| a.1.cmp(b.1)));
        let mut kept: Vec<(&Vec<u64>, &Vec<i64>)> = Vec::new();
        for (t, p) in found {
            if !kept.iter().any(|(_, q)| q.iter().zip(p).all(|(x, y)| x <= y)) {
                kept.push((t, p));
            }
        }
        let units = self.dual_monoid.units();
        let mut exponents: Vec<IntVector> = kept
            .into_iter()
            .map(|(t, _)| {
                let m = t.iter().zip(alphas).fold(vector::zero(self.lattice_rank), |acc, (&c, a)| {
                    vector::add(&acc, &vector::scale(&Int::from(c), a))
                });
                units.reduce(&m)
            })
            .collect();
        sort_dedup(&mut exponents);
        exponents.sort_by(|a, b| graded_lex(a, b));
        exponents
    }

    pub fn orbit_data(&self, face: &Face) -> Result<OrbitData> {
        if !face.is_face_of(&self.cone) {
            return Err(Error::NotAFace);
        }
        let closure = self.cone.dual().intersect_orthogonal(face.generators())?;
        Ok(OrbitData {
            face: face.clone(),
            orbit_dimension: self.lattice_rank - face.dim(),
            closure_monoid: AffineMonoid::of_cone(&closure),
        })
    }

    /// Orbit data for every face, in the order of [`RationalCone::faces`].
    pub fn orbits(&self) -> Result<Vec<OrbitData>> {
        self.cone.faces()?.iter().map(|f| self.orbit_data(f)).collect()
    }

    /// The open affine chart `(N, τ)` of a face `τ`.
    pub fn face_localization(&self, face: &Face) -> Result<ToricChart> {
        if !face.is_face_of(&self.cone) {
            return Err(Error::NotAFace);
        }
        ToricChart::from_cone(face.cone())
    }

    pub fn split_torus_factor(&self) -> Result<SplitResult> {
        let d = self.lattice_rank;
        let span = Sublattice::new(d, self.cone.rays())?;
        let (n1, _) = saturate_sublattice(&span);
        let basis = AdaptedBasis::new(&n1)?;
        let k = n1.rank();
        let coords: Vec<IntVector> = self.cone.rays().iter().map(|r| basis.sub_part(r)).collect();
        let factor_cone = RationalCone::strongly_convex(k, &coords)?;
        let factor_monoid = AffineMonoid::of_cone(&factor_cone.dual());
        Ok(SplitResult {
            n2: basis.complement().clone(),
            n1,
            factor_monoid,
            torus_rank: d - k,
            basis,
        })
    }

    /// `P^gp` for `P = M_σ`: the character lattice of the open set where the
    /// log structure is trivial.
    pub fn triviality_locus_group(&self) -> Sublattice {
        self.dual_monoid.group()
    }
}

/// Breadth-first search over the non-ideal part of the dual monoid, level by
/// level in the number of generators used. Elements are kept as their
/// pairings with the rays.
struct IdealSearch {
    pairings: Vec<Vec<i64>>,
    seen: HashSet<Vec<i64>>,
    level: Vec<(Vec<i64>, Vec<u64>)>,
    depth: u64,
    hits: Vec<(Vec<u64>, Vec<i64>)>,
}

impl IdealSearch {
    fn new(pairings: Vec<Vec<i64>>) -> IdealSearch {
        let r = pairings.first().map_or(0, Vec::len);
        let s = pairings.len();
        let origin = vec![0i64; r];
        IdealSearch {
            pairings,
            seen: HashSet::from([origin.clone()]),
            level: vec![(origin, vec![0; s])],
            depth: 0,
            hits: Vec::new(),
        }
    }

    /// Whether `m` exceeds some generator `α` on every ray where `α` pairs
    /// positively. Then every ideal element `x` above `m` has `x - α` in the
    /// ideal, so nothing above `m` is a minimal generator. The points that
    /// survive this test form a finite set, so the search terminates.
    fn dominates_a_generator(&self, m: &[i64]) -> bool {
        self.pairings.iter().any(|a| a.iter().zip(m).all(|(&y, &x)| y == 0 || x > y))
    }

    /// Continues the search up to `bound` levels; `None` on overflow.
    fn extend_to(&mut self, bound: u64) -> Option<()> {
        while self.depth < bound && !self.level.is_empty() {
            let mut next = Vec::new();
            for (m, t) in &self.level {
                for (j, a) in self.pairings.iter().enumerate() {
                    let m2: Vec<i64> = m.iter().zip(a).map(|(x, y)| x.checked_add(*y)).collect::<Option<_>>()?;
                    if !self.seen.insert(m2.clone()) {
                        continue;
                    }
                    let mut t2 = t.clone();
                    t2[j] += 1;
                    if m2.iter().all(|&x| x > 0) {
                        self.hits.push((t2, m2));
                    } else if !self.dominates_a_generator(&m2) {
                        next.push((m2, t2));
                    }
                }
            }
            self.level = next;
            self.depth += 1;
        }
        Some(())
    }
}

pub fn boundary_ideal_generators(c: &ToricChart) -> Result<MonomialIdeal> {
    c.boundary_ideal_generators()
}

pub fn orbit_data(c: &ToricChart, f: &Face) -> Result<OrbitData> {
    c.orbit_data(f)
}

pub fn face_localization(c: &ToricChart, f: &Face) -> Result<ToricChart> {
    c.face_localization(f)
}

pub fn split_torus_factor(c: &ToricChart) -> Result<SplitResult> {
    c.split_torus_factor()
}

pub fn triviality_locus_group(c: &ToricChart) -> Sublattice {
    c.triviality_locus_group()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::vector::vector;

    fn vs(xs: &[&[i64]]) -> Vec<IntVector> {
        xs.iter().map(|x| vector(x)).collect()
    }

    fn chart(d: usize, xs: &[&[i64]]) -> ToricChart {
        ToricChart::new(d, &vs(xs)).unwrap()
    }

    #[test]
    fn boundary_ideal_examples() {
        let plane = chart(2, &[&[1, 0], &[0, 1]]);
        assert_eq!(plane.boundary_ideal_generators().unwrap().generator_exponents, vs(&[&[1, 1]]));
        let quadric = chart(2, &[&[1, 0], &[1, 2]]);
        assert_eq!(
            quadric.boundary_ideal_generators().unwrap().generator_exponents,
            vs(&[&[1, 0]])
        );
        let line = chart(1, &[&[1]]);
        assert_eq!(line.boundary_ideal_generators().unwrap().generator_exponents, vs(&[&[1]]));
        let point = ToricChart::from_cone(RationalCone::zero(2)).unwrap();
        assert!(point.boundary_ideal_generators().unwrap().is_empty());
    }

    #[test]
    fn boundary_ideal_with_torus_factor() {
        // A^1 x G_m: the boundary is {x = 0}
        let c = chart(2, &[&[1, 0]]);
        let ideal = c.boundary_ideal_generators().unwrap();
        assert_eq!(ideal.generator_exponents, vs(&[&[1, 0]]));
        assert!(ideal.contains(&vector(&[2, -5])));
        assert!(!ideal.contains(&vector(&[0, 1])));
    }

    #[test]
    fn orbit_examples() {
        let plane = chart(2, &[&[1, 0], &[0, 1]]);
        let ray = Face::from_generators(plane.cone(), &vs(&[&[1, 0]])).unwrap();
        let o = plane.orbit_data(&ray).unwrap();
        assert_eq!(o.orbit_dimension, 1);
        assert_eq!(o.closure_monoid.generators(), vs(&[&[0, 1]]));

        let origin = Face::from_generators(plane.cone(), &[]).unwrap();
        let o = plane.orbit_data(&origin).unwrap();
        assert_eq!(o.orbit_dimension, 2);
        assert_eq!(o.closure_monoid, *plane.dual_monoid());

        let quadric = chart(2, &[&[1, 0], &[1, 2]]);
        let top = Face::from_generators(quadric.cone(), quadric.cone().rays()).unwrap();
        let o = quadric.orbit_data(&top).unwrap();
        assert_eq!(o.orbit_dimension, 0);
        assert!(o.closure_monoid.is_trivial());
    }

    #[test]
    fn orbit_rejects_foreign_face() {
        let plane = chart(2, &[&[1, 0], &[0, 1]]);
        let quadric = chart(2, &[&[1, 0], &[1, 2]]);
        let f = Face::from_generators(quadric.cone(), &vs(&[&[1, 2]])).unwrap();
        assert_eq!(plane.orbit_data(&f), Err(Error::NotAFace));
    }

    #[test]
    fn localization_examples() {
        let plane = chart(2, &[&[1, 0], &[0, 1]]);
        let ray = Face::from_generators(plane.cone(), &vs(&[&[1, 0]])).unwrap();
        let local = plane.face_localization(&ray).unwrap();
        assert_eq!(local.dual_monoid().generators(), vs(&[&[0, -1], &[0, 1], &[1, 0]]));

        let top = Face::from_generators(plane.cone(), plane.cone().rays()).unwrap();
        assert_eq!(plane.face_localization(&top).unwrap(), plane);

        let quadric = chart(2, &[&[1, 0], &[1, 2]]);
        let ray = Face::from_generators(quadric.cone(), &vs(&[&[1, 0]])).unwrap();
        let local = quadric.face_localization(&ray).unwrap();
        assert_eq!(local.dual_monoid().generators(), vs(&[&[0, -1], &[0, 1], &[1, 0]]));
    }

    #[test]
    fn split_examples() {
        let s = chart(2, &[&[1, 0]]).split_torus_factor().unwrap();
        assert_eq!(s.n1.basis(), vs(&[&[1, 0]]).as_slice());
        assert_eq!(s.n2.basis(), vs(&[&[0, 1]]).as_slice());
        assert_eq!(s.factor_monoid.generators(), vs(&[&[1]]));
        assert_eq!(s.torus_rank, 1);

        let quadric = chart(2, &[&[1, 0], &[1, 2]]);
        let s = quadric.split_torus_factor().unwrap();
        assert_eq!(s.torus_rank, 0);
        assert_eq!(s.factor_monoid, *quadric.dual_monoid());

        let c = chart(3, &[&[1, 0, 0], &[1, 2, 0]]);
        let s = c.split_torus_factor().unwrap();
        assert_eq!(s.n1, Sublattice::new(3, &vs(&[&[1, 0, 0], &[0, 1, 0]])).unwrap());
        assert_eq!(s.torus_rank, 1);
        assert_eq!(s.factor_monoid, *quadric.dual_monoid());
        assert!(s.reassemble().same_monoid(c.dual_monoid()));
    }

    #[test]
    fn triviality_locus() {
        assert_eq!(chart(2, &[&[1, 0], &[0, 1]]).triviality_locus_group(), Sublattice::full(2));
        assert_eq!(chart(2, &[&[1, 0], &[1, 2]]).triviality_locus_group(), Sublattice::full(2));
        let point = ToricChart::from_cone(RationalCone::zero(0)).unwrap();
        assert!(point.triviality_locus_group().is_zero());
    }
}
