//! Affine monoids: finitely generated submonoids of a lattice.
//!
//! An [`AffineMonoid`] keeps a minimal generating set, its rational cone, its
//! unit group and whether it is saturated. Units are always described by
//! `±` a Hermite basis of the unit lattice; minimality of generators refers to
//! the non-unit ones, which are the irreducible elements up to units.
//!
//! Saturated monoids `σ ∩ L` are built from cones ([`AffineMonoid::of_cone`],
//! [`hilbert_basis`]); arbitrary ones from generators
//! ([`AffineMonoid::generated_by`]).

mod dickson;
mod hilbert;
mod membership;

pub use dickson::{dominated_by, minimal_elements, NatTupleSet};

use num_traits::Zero;

use crate::cone::RationalCone;
use crate::error::{Error, Result};
use crate::lattice::vector::{self, dot, graded_lex, is_zero, sort_dedup, Int, IntVector};
use crate::lattice::{saturate_sublattice, AdaptedBasis, LatticeMap, Sublattice};
use membership::Membership;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineMonoid {
    ambient_rank: usize,
    generators: Vec<IntVector>,
    cone: RationalCone,
    saturated: bool,
    units: Sublattice,
}

fn with_units(mut sharp: Vec<IntVector>, units: &Sublattice) -> Vec<IntVector> {
    for b in units.basis() {
        sharp.push(b.clone());
        sharp.push(vector::neg(b));
    }
    sort_dedup(&mut sharp);
    sharp
}

/// Saturated monoid `cone ∩ Z^n`, splitting off the lineality space when the
/// cone is not pointed.
fn saturated_generators(cone: &RationalCone) -> Vec<IntVector> {
    let lineality = cone.lineality();
    if lineality.is_zero() {
        return hilbert::pointed_hilbert_basis(cone);
    }
    let basis = AdaptedBasis::new(lineality).expect("lineality lattices are saturated");
    let projected: Vec<IntVector> = cone.rays().iter().map(|r| basis.quotient_part(r)).collect();
    let quotient_cone = RationalCone::from_generators(basis.quotient_rank(), &projected)
        .expect("projected rays have the quotient rank");
    let sharp: Vec<IntVector> = hilbert::pointed_hilbert_basis(&quotient_cone)
        .iter()
        .map(|b| basis.lift_quotient(b))
        .collect();
    with_units(sharp, lineality)
}

impl AffineMonoid {
    /// The trivial monoid `{0}` in `Z^ambient_rank`.
    pub fn trivial(ambient_rank: usize) -> Self {
        Self {
            ambient_rank,
            generators: Vec::new(),
            cone: RationalCone::zero(ambient_rank),
            saturated: true,
            units: Sublattice::zero(ambient_rank),
        }
    }

    /// The saturated monoid `cone ∩ Z^n`.
    pub fn of_cone(cone: &RationalCone) -> Self {
        Self {
            ambient_rank: cone.ambient_rank(),
            generators: saturated_generators(cone),
            cone: cone.clone(),
            saturated: true,
            units: cone.lineality().clone(),
        }
    }

    /// The submonoid generated by `generators`, reduced to a minimal set.
    pub fn generated_by(ambient_rank: usize, generators: &[IntVector]) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.len() != ambient_rank) {
            return Err(Error::DimensionMismatch { expected: ambient_rank, found: g.len() });
        }
        let gens: Vec<IntVector> = generators.iter().filter(|g| !is_zero(g)).cloned().collect();
        let cone = RationalCone::from_generators(ambient_rank, &gens)?;
        let in_lineality = |g: &IntVector| cone.facets().iter().all(|f| dot(f, g).is_zero());
        let (unit_gens, mut candidates): (Vec<IntVector>, Vec<IntVector>) =
            gens.iter().cloned().partition(in_lineality);
        let units = Sublattice::new(ambient_rank, &unit_gens)?;
        let group = Sublattice::new(ambient_rank, &gens)?;

        let grading = cone.interior_grading();
        candidates.sort_by(|a, b| {
            dot(&grading, a).cmp(&dot(&grading, b)).then_with(|| graded_lex(a, b))
        });
        candidates.dedup();
        let mut kept: Vec<IntVector> = Vec::new();
        for c in candidates {
            let redundant = Membership::new(&kept, &units, &cone, &group).contains(&c);
            if !redundant {
                kept.push(c);
            }
        }
        let mut monoid = Self {
            ambient_rank,
            generators: with_units(kept, &units),
            cone,
            saturated: false,
            units,
        };
        monoid.saturated = {
            let saturation = monoid.saturation_generators();
            let mut member = monoid.membership_with(&group);
            saturation.iter().all(|g| member.contains(g))
        };
        Ok(monoid)
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    /// Minimal generators in graded lexicographic order; unit directions
    /// appear as `±` basis vectors of the unit lattice.
    pub fn generators(&self) -> &[IntVector] {
        &self.generators
    }

    /// Generators that are not units.
    pub fn sharp_generators(&self) -> Vec<IntVector> {
        self.generators.iter().filter(|g| !self.units.contains(g)).cloned().collect()
    }

    /// The rational cone spanned by the monoid.
    pub fn cone(&self) -> &RationalCone {
        &self.cone
    }

    pub fn is_saturated(&self) -> bool {
        self.saturated
    }

    /// The group of units `P*`.
    pub fn units(&self) -> &Sublattice {
        &self.units
    }

    pub fn is_sharp(&self) -> bool {
        self.units.is_zero()
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.is_empty()
    }

    /// `P^gp`, the lattice generated by the generators.
    pub fn group(&self) -> Sublattice {
        Sublattice::from_generators_unchecked(self.ambient_rank, &self.generators)
    }

    /// Rank of `P^gp`.
    pub fn rank(&self) -> usize {
        self.group().rank()
    }

    fn membership_with<'a>(&'a self, group: &'a Sublattice) -> Membership<'a> {
        let sharp = self.sharp_generators();
        Membership::new(&sharp, &self.units, &self.cone, group)
    }

    pub fn contains(&self, v: &[Int]) -> bool {
        if v.len() != self.ambient_rank {
            return false;
        }
        let group = self.group();
        if self.saturated {
            return self.cone.contains(v) && group.contains(v);
        }
        self.membership_with(&group).contains(v)
    }

    /// Whether `divisor` divides `v`, i.e. `v - divisor` lies in the monoid.
    pub fn divides(&self, divisor: &[Int], v: &[Int]) -> bool {
        self.contains(&vector::sub(v, divisor))
    }

    /// Generators of `cone ∩ P^gp`.
    fn saturation_generators(&self) -> Vec<IntVector> {
        let group = self.group();
        if group.is_zero() {
            return Vec::new();
        }
        let coords: Vec<IntVector> = self
            .generators
            .iter()
            .map(|g| group.coordinates(g).expect("generators lie in their group"))
            .collect();
        let cone = RationalCone::from_generators(group.rank(), &coords)
            .expect("coordinates have the group rank");
        let mut gens: Vec<IntVector> =
            saturated_generators(&cone).iter().map(|c| group.from_coordinates(c)).collect();
        sort_dedup(&mut gens);
        gens
    }

    /// Same monoid: equal unit lattices and equal non-unit generators modulo
    /// units.
    pub fn same_monoid(&self, other: &AffineMonoid) -> bool {
        if self.ambient_rank != other.ambient_rank || self.units != other.units {
            return false;
        }
        let reps = |m: &AffineMonoid| {
            let mut r: Vec<IntVector> =
                m.sharp_generators().iter().map(|g| m.units.reduce(g)).collect();
            sort_dedup(&mut r);
            r
        };
        reps(self) == reps(other)
    }

    /// The image of this monoid under a lattice map.
    pub fn image_under(&self, map: &LatticeMap) -> Result<AffineMonoid> {
        if map.source_rank() != self.ambient_rank {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_rank,
                found: map.source_rank(),
            });
        }
        let images: Vec<IntVector> = self.generators.iter().map(|g| map.apply(g)).collect();
        AffineMonoid::generated_by(map.target_rank(), &images)
    }
}

/// The Hilbert basis of a strongly convex cone, as the saturated monoid
/// `cone ∩ Z^n`.
pub fn hilbert_basis(c: &RationalCone) -> Result<AffineMonoid> {
    if !c.is_pointed() {
        return Err(Error::NotStronglyConvex);
    }
    Ok(AffineMonoid::of_cone(c))
}

/// `cone(m) ∩ m^gp`, generated by its Hilbert basis.
pub fn saturate(m: &AffineMonoid) -> AffineMonoid {
    if m.saturated {
        return m.clone();
    }
    let generators = m.saturation_generators();
    let group = m.group();
    let unit_gens: Vec<IntVector> =
        generators.iter().filter(|g| m.cone.lineality().contains(g)).cloned().collect();
    let units = Sublattice::from_generators_unchecked(m.ambient_rank, &unit_gens);
    debug_assert!(group.contains_lattice(&units));
    AffineMonoid {
        ambient_rank: m.ambient_rank,
        generators,
        cone: m.cone.clone(),
        saturated: true,
        units,
    }
}

/// `cone(m) ∩ Z^n`: saturation relative to the ambient lattice rather than
/// to `m^gp`. The two agree when `m^gp` is saturated in `Z^n`.
pub fn saturate_in_ambient(m: &AffineMonoid) -> AffineMonoid {
    AffineMonoid::of_cone(&m.cone)
}

/// `P/P*` together with the projection that produces it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sharpening {
    pub sharp: AffineMonoid,
    pub units: Sublattice,
    /// `Z^n -> Z^n / sat(P*)`, in canonical complement coordinates.
    pub projection: LatticeMap,
}

pub fn sharpen(m: &AffineMonoid) -> Sharpening {
    let (saturated_units, _) = saturate_sublattice(&m.units);
    let basis = AdaptedBasis::new(&saturated_units).expect("saturation is saturated");
    let projection = basis.quotient_projection();
    let images: Vec<IntVector> =
        m.sharp_generators().iter().map(|g| projection.apply(g)).collect();
    let sharp = AffineMonoid::generated_by(basis.quotient_rank(), &images)
        .expect("projected generators have the quotient rank");
    Sharpening { sharp, units: m.units.clone(), projection }
}

pub fn group_completion(m: &AffineMonoid) -> Sublattice {
    m.group()
}
