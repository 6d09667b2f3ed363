use std::collections::BTreeSet;

use num_traits::Zero;

use super::RationalCone;
use crate::error::{Error, Result};
use crate::lattice::exact::rank_fraction_free;
use crate::lattice::vector::{self, dot, graded_lex, IntVector};

/// A face `τ = σ ∩ m^⊥` of a strongly convex cone `σ`.
///
/// The defining normal is the sum of the facet normals of `σ` that vanish on
/// the face. It lies in the relative interior of `σ^∨ ∩ τ^⊥`, so it cuts out
/// exactly `τ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Face {
    ambient_rank: usize,
    generators: Vec<IntVector>,
    defining_normal: IntVector,
    dim: usize,
}

impl Face {
    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    /// The rays of the parent cone lying on the face.
    pub fn generators(&self) -> &[IntVector] {
        &self.generators
    }

    pub fn defining_normal(&self) -> &IntVector {
        &self.defining_normal
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn cone(&self) -> RationalCone {
        RationalCone::from_generators(self.ambient_rank, &self.generators)
            .expect("face generators have the ambient length")
    }

    /// Checks that this is a face of `parent` with a valid defining normal.
    pub fn is_face_of(&self, parent: &RationalCone) -> bool {
        if parent.ambient_rank() != self.ambient_rank || !parent.is_pointed() {
            return false;
        }
        if !parent.dual().contains(&self.defining_normal) {
            return false;
        }
        let vanishing: Vec<IntVector> = parent
            .rays()
            .iter()
            .filter(|r| dot(r, &self.defining_normal).is_zero())
            .cloned()
            .collect();
        vanishing == self.generators
    }
}

fn build_face(cone: &RationalCone, ray_indices: &BTreeSet<usize>) -> Face {
    let n = cone.ambient_rank();
    let mut generators: Vec<IntVector> =
        ray_indices.iter().map(|&i| cone.rays()[i].clone()).collect();
    generators.sort_by(|a, b| graded_lex(a, b));
    let defining_normal = cone
        .facets()
        .iter()
        .filter(|f| generators.iter().all(|g| dot(f, g).is_zero()))
        .fold(vector::zero(n), |acc, f| vector::add(&acc, f));
    let dim = rank_fraction_free(&generators);
    Face { ambient_rank: n, generators, defining_normal, dim }
}

fn rays_on_facet(cone: &RationalCone, facet: &IntVector) -> BTreeSet<usize> {
    cone.rays()
        .iter()
        .enumerate()
        .filter(|(_, r)| dot(facet, r).is_zero())
        .map(|(i, _)| i)
        .collect()
}

pub(super) fn enumerate_faces(cone: &RationalCone) -> Result<Vec<Face>> {
    if !cone.is_pointed() {
        return Err(Error::NotStronglyConvex);
    }
    let facet_sets: Vec<BTreeSet<usize>> =
        cone.facets().iter().map(|f| rays_on_facet(cone, f)).collect();
    let top: BTreeSet<usize> = (0..cone.rays().len()).collect();
    let mut seen: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    let mut frontier = vec![top];
    while let Some(face) = frontier.pop() {
        if !seen.insert(face.clone()) {
            continue;
        }
        for s in &facet_sets {
            let smaller: BTreeSet<usize> = face.intersection(s).copied().collect();
            if smaller != face && !seen.contains(&smaller) {
                frontier.push(smaller);
            }
        }
    }
    let mut faces: Vec<Face> = seen.iter().map(|s| build_face(cone, s)).collect();
    faces.sort_by(|a, b| {
        a.dim.cmp(&b.dim).then_with(|| {
            let la = a.generators.iter();
            let lb = b.generators.iter();
            la.zip(lb)
                .map(|(x, y)| graded_lex(x, y))
                .find(|o| o.is_ne())
                .unwrap_or_else(|| a.generators.len().cmp(&b.generators.len()))
        })
    });
    Ok(faces)
}

pub(super) fn smallest_face_containing(
    cone: &RationalCone,
    vectors: &[IntVector],
) -> Result<Face> {
    if !cone.is_pointed() {
        return Err(Error::NotStronglyConvex);
    }
    if let Some(v) = vectors.iter().find(|v| v.len() != cone.ambient_rank()) {
        return Err(Error::DimensionMismatch { expected: cone.ambient_rank(), found: v.len() });
    }
    if !vectors.iter().all(|v| cone.contains(v)) {
        return Err(Error::NotAFace);
    }
    let mut rays: BTreeSet<usize> = (0..cone.rays().len()).collect();
    for f in cone.facets() {
        if vectors.iter().all(|v| dot(f, v).is_zero()) {
            rays = rays.intersection(&rays_on_facet(cone, f)).copied().collect();
        }
    }
    Ok(build_face(cone, &rays))
}

impl Face {
    /// The face whose cone is generated by `vectors`; fails if that cone is not
    /// a face of `parent`.
    pub fn from_generators(parent: &RationalCone, vectors: &[IntVector]) -> Result<Face> {
        let face = smallest_face_containing(parent, vectors)?;
        let spanned = RationalCone::from_generators(parent.ambient_rank(), vectors)?;
        if spanned.rays() == face.cone().rays() {
            Ok(face)
        } else {
            Err(Error::NotAFace)
        }
    }
}
