//! Hilbert bases of pointed rational cones.
//!
//! A pulling triangulation splits the cone into simplicial cones spanned by
//! its extreme rays. The lattice points of the half-open parallelepipeds of
//! those simplicial cones, together with the rays, generate `σ ∩ Z^n`; the
//! Hilbert basis is the set of irreducible elements among them.

use std::cmp::Ordering;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::cone::RationalCone;
use crate::lattice::exact::rational_inverse;
use crate::lattice::vector::{dot, graded_lex, is_zero, sort_dedup, sub, Int, IntVector};
use crate::lattice::{saturate_sublattice, smith_normal_form, LatticeMap, Sublattice};

/// Pulling triangulation: cone over the first ray and the triangulations of
/// the facets missing it.
fn triangulate(cone: &RationalCone) -> Vec<Vec<IntVector>> {
    let rays = cone.rays();
    if rays.len() == cone.dim() {
        return vec![rays.to_vec()];
    }
    let apex = &rays[0];
    let mut out = Vec::new();
    for f in cone.facets() {
        if dot(f, apex).is_zero() {
            continue;
        }
        let on_facet: Vec<IntVector> = rays.iter().filter(|r| dot(f, r).is_zero()).cloned().collect();
        let facet = RationalCone::from_generators(cone.ambient_rank(), &on_facet)
            .expect("facet rays have the ambient rank");
        for mut simplex in triangulate(&facet) {
            simplex.push(apex.clone());
            out.push(simplex);
        }
    }
    out
}

/// Lattice points `Σ λ_i v_i` with `0 <= λ_i < 1`, for linearly independent
/// `v_i`, in the lattice `Z^n ∩ span(v)`.
fn parallelepiped_points(n: usize, gens: &[IntVector]) -> Vec<IntVector> {
    let span = Sublattice::new(n, gens).expect("generators have the ambient rank");
    let (lattice, _) = saturate_sublattice(&span);
    let k = gens.len();
    let coords: Vec<IntVector> =
        gens.iter().map(|g| lattice.coordinates(g).expect("generators lie in their span")).collect();
    let v = LatticeMap::from_columns(k, &coords).expect("coordinates have length k");
    let inverse = rational_inverse(v.rows()).expect("simplicial generators are independent");
    let snf = smith_normal_form(&v);

    let mut out = Vec::new();
    let mut y = vec![Int::zero(); k];
    loop {
        let x0 = snf.left_inverse.apply(&y);
        let lambda: Vec<BigRational> = inverse
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&x0)
                    .fold(BigRational::zero(), |acc, (a, b)| acc + a * BigRational::from_integer(b.clone()))
            })
            .map(|l| {
                let floor = l.numer().div_floor(l.denom());
                l - BigRational::from_integer(floor)
            })
            .collect();
        let x: IntVector = v
            .rows()
            .iter()
            .map(|row| {
                let s = row
                    .iter()
                    .zip(&lambda)
                    .fold(BigRational::zero(), |acc, (a, l)| acc + BigRational::from_integer(a.clone()) * l);
                debug_assert!(s.is_integer());
                s.to_integer()
            })
            .collect();
        out.push(lattice.from_coordinates(&x));

        let mut j = k;
        loop {
            if j == 0 {
                return out;
            }
            j -= 1;
            y[j] += 1;
            if y[j] < snf.diagonal[j] {
                break;
            }
            y[j] = Int::zero();
        }
    }
}

/// The Hilbert basis of `cone ∩ Z^n` for a pointed cone, in graded
/// lexicographic order.
pub(crate) fn pointed_hilbert_basis(cone: &RationalCone) -> Vec<IntVector> {
    debug_assert!(cone.is_pointed());
    if cone.rays().is_empty() {
        return Vec::new();
    }
    let n = cone.ambient_rank();
    let mut generating: Vec<IntVector> = cone.rays().to_vec();
    for simplex in triangulate(cone) {
        generating.extend(parallelepiped_points(n, &simplex).into_iter().filter(|x| !is_zero(x)));
    }
    sort_dedup(&mut generating);

    let grading = cone.interior_grading();
    let mut candidates: Vec<(Int, IntVector)> =
        generating.into_iter().map(|x| (dot(&grading, &x), x)).collect();
    candidates.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| graded_lex(&a.1, &b.1)));

    // x = y + z with y, z nonzero forces both degrees below deg(x), and y
    // splits further into irreducibles, so some basis element h has x - h in
    // the cone.
    let mut basis: Vec<(Int, IntVector)> = Vec::new();
    for (deg, x) in candidates {
        debug_assert!(deg.is_positive());
        let reducible = basis
            .iter()
            .take_while(|(d, _)| d.cmp(&deg) == Ordering::Less)
            .any(|(_, h)| cone.contains(&sub(&x, h)));
        if !reducible {
            basis.push((deg, x));
        }
    }
    let mut out: Vec<IntVector> = basis.into_iter().map(|(_, x)| x).collect();
    out.sort_by(|a, b| graded_lex(a, b));
    out
}
