//! Rational polyhedral cones in `Q^n` with an exact double description.
//!
//! A [`RationalCone`] stores both descriptions in canonical form:
//!
//! * extreme rays and a lineality lattice (the generator side),
//! * facet normals and an equation lattice (the inequality side).
//!
//! Rays are primitive and orthogonal to the lineality space; facet normals are
//! primitive and lie in the linear span of the cone. With those conventions
//! the dual cone is obtained by swapping the two sides, and two cones are equal
//! exactly when their stored data are equal.

mod double_description;
mod face;

pub use double_description::{double_description, DoubleDescription};
pub use face::Face;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::exact::{project_orthogonal, rank_fraction_free};
use crate::lattice::vector::{self, dot, is_zero, primitive, sort_dedup, Int, IntVector};
use crate::lattice::{kernel, LatticeMap, Sublattice};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalCone {
    ambient_rank: usize,
    rays: Vec<IntVector>,
    lineality: Sublattice,
    facets: Vec<IntVector>,
    equations: Sublattice,
}

fn check_lengths(n: usize, vectors: &[IntVector]) -> Result<()> {
    match vectors.iter().find(|v| v.len() != n) {
        Some(v) => Err(Error::DimensionMismatch { expected: n, found: v.len() }),
        None => Ok(()),
    }
}

/// Vectors orthogonal to all rows, as a saturated lattice.
fn orthogonal_lattice(n: usize, rows: &[IntVector]) -> Sublattice {
    if rows.is_empty() {
        return Sublattice::full(n);
    }
    kernel(&LatticeMap::from_rows(n, rows.to_vec()).expect("row width"))
}

impl RationalCone {
    /// The cone generated by `vectors`, which may contain lines.
    pub fn from_generators(ambient_rank: usize, vectors: &[IntVector]) -> Result<Self> {
        check_lengths(ambient_rank, vectors)?;
        let n = ambient_rank;
        let mut generators: Vec<IntVector> =
            vectors.iter().filter(|v| !is_zero(v)).map(|v| primitive(v)).collect();
        sort_dedup(&mut generators);

        let equations = orthogonal_lattice(n, &generators);
        let dd = double_description(n, &generators);
        let mut facets: Vec<IntVector> =
            dd.rays.iter().map(|r| project_orthogonal(r, equations.basis())).collect();
        facets.retain(|f| !is_zero(f));
        sort_dedup(&mut facets);

        let mut lineality_rows = facets.clone();
        lineality_rows.extend(equations.basis().iter().cloned());
        let lineality = orthogonal_lattice(n, &lineality_rows);

        let mut rays = Vec::new();
        for g in &generators {
            let p = project_orthogonal(g, lineality.basis());
            if is_zero(&p) {
                continue;
            }
            let mut tight: Vec<IntVector> =
                facets.iter().filter(|f| dot(f, &p).is_zero()).cloned().collect();
            tight.extend(equations.basis().iter().cloned());
            if rank_fraction_free(&tight) + lineality.rank() + 1 == n {
                rays.push(p);
            }
        }
        sort_dedup(&mut rays);

        Ok(Self { ambient_rank: n, rays, lineality, facets, equations })
    }

    /// The cone generated by `vectors`, rejecting cones that contain a line.
    pub fn strongly_convex(ambient_rank: usize, vectors: &[IntVector]) -> Result<Self> {
        let cone = Self::from_generators(ambient_rank, vectors)?;
        if cone.is_pointed() {
            Ok(cone)
        } else {
            Err(Error::NotStronglyConvex)
        }
    }

    /// `{x : <a, x> >= 0 for a in inequalities, <e, x> = 0 for e in equations}`.
    pub fn from_inequalities(
        ambient_rank: usize,
        inequalities: &[IntVector],
        equations: &[IntVector],
    ) -> Result<Self> {
        check_lengths(ambient_rank, equations)?;
        let mut gens = inequalities.to_vec();
        for e in equations {
            gens.push(e.clone());
            gens.push(vector::neg(e));
        }
        Ok(Self::from_generators(ambient_rank, &gens)?.dual())
    }

    pub fn zero(ambient_rank: usize) -> Self {
        Self {
            ambient_rank,
            rays: Vec::new(),
            lineality: Sublattice::zero(ambient_rank),
            facets: Vec::new(),
            equations: Sublattice::full(ambient_rank),
        }
    }

    pub fn full_space(ambient_rank: usize) -> Self {
        Self::zero(ambient_rank).dual()
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    /// Primitive extreme rays, taken orthogonal to the lineality space.
    pub fn rays(&self) -> &[IntVector] {
        &self.rays
    }

    pub fn lineality(&self) -> &Sublattice {
        &self.lineality
    }

    /// Primitive facet normals lying in the span of the cone.
    pub fn facets(&self) -> &[IntVector] {
        &self.facets
    }

    /// Lattice of linear forms vanishing on the cone.
    pub fn equations(&self) -> &Sublattice {
        &self.equations
    }

    /// A minimal generating set: the rays together with `±` a lattice basis
    /// of the lineality space.
    pub fn generators(&self) -> Vec<IntVector> {
        let mut gens = self.rays.clone();
        for b in self.lineality.basis() {
            gens.push(b.clone());
            gens.push(vector::neg(b));
        }
        sort_dedup(&mut gens);
        gens
    }

    /// All linear forms defining the cone: facet normals and `±` equations.
    pub fn inequalities(&self) -> Vec<IntVector> {
        self.dual().generators()
    }

    pub fn dim(&self) -> usize {
        self.ambient_rank - self.equations.rank()
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.is_zero()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.equations.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn dual(&self) -> Self {
        Self {
            ambient_rank: self.ambient_rank,
            rays: self.facets.clone(),
            lineality: self.equations.clone(),
            facets: self.rays.clone(),
            equations: self.lineality.clone(),
        }
    }

    pub fn contains(&self, v: &[Int]) -> bool {
        assert_eq!(v.len(), self.ambient_rank, "vector length must match the cone");
        self.facets.iter().all(|f| !dot(f, v).is_negative())
            && self.equations.basis().iter().all(|e| dot(e, v).is_zero())
    }

    /// Whether `v` lies in the relative interior.
    pub fn relative_interior_contains(&self, v: &[Int]) -> bool {
        self.contains(v) && self.facets.iter().all(|f| dot(f, v).is_positive())
    }

    /// The intersection with the orthogonal complement of `vectors`.
    pub fn intersect_orthogonal(&self, vectors: &[IntVector]) -> Result<Self> {
        let mut eqs = self.equations.basis().to_vec();
        eqs.extend(vectors.iter().cloned());
        Self::from_inequalities(self.ambient_rank, &self.facets, &eqs)
    }

    /// The image under a linear map, as the cone generated by the images of
    /// the generators.
    pub fn image_under(&self, map: &LatticeMap) -> Result<Self> {
        if map.source_rank() != self.ambient_rank {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_rank,
                found: map.source_rank(),
            });
        }
        let images: Vec<IntVector> = self.generators().iter().map(|g| map.apply(g)).collect();
        Self::from_generators(map.target_rank(), &images)
    }

    /// A linear form that is strictly positive on every nonzero point of a
    /// pointed cone: the sum of its facet normals.
    pub fn interior_grading(&self) -> IntVector {
        self.facets
            .iter()
            .fold(vector::zero(self.ambient_rank), |acc, f| vector::add(&acc, f))
    }

    /// All faces of a strongly convex cone, ordered by dimension and then by
    /// their generators.
    pub fn faces(&self) -> Result<Vec<Face>> {
        face::enumerate_faces(self)
    }

    /// The smallest face containing all `vectors`.
    pub fn face_containing(&self, vectors: &[IntVector]) -> Result<Face> {
        face::smallest_face_containing(self, vectors)
    }

    pub fn is_face(&self, other: &RationalCone) -> bool {
        self.is_pointed()
            && other.ambient_rank == self.ambient_rank
            && self
                .face_containing(other.rays())
                .is_ok_and(|f| f.generators() == other.rays())
    }
}

/// Exact dual cone.
pub fn dual_cone(c: &RationalCone) -> RationalCone {
    c.dual()
}

/// Cone generated by `vectors`; with `strongly_convex` set, cones containing a
/// line are rejected.
pub fn cone_from_generators(
    ambient_rank: usize,
    vectors: &[IntVector],
    strongly_convex: bool,
) -> Result<RationalCone> {
    if strongly_convex {
        RationalCone::strongly_convex(ambient_rank, vectors)
    } else {
        RationalCone::from_generators(ambient_rank, vectors)
    }
}

pub fn faces(c: &RationalCone) -> Result<Vec<Face>> {
    c.faces()
}

pub fn contains(c: &RationalCone, v: &[Int]) -> bool {
    c.contains(v)
}
