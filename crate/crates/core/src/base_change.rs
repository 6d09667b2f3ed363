//! Saturated base change of a dominant chart `θ: P → Q` along `φ: P → P'`:
//! pushout, pass to the torsion-free quotient, saturate.

use num_traits::One;

use crate::error::{Error, Result};
use crate::lattice::vector::{self, format_vectors, Int, IntVector};
use crate::lattice::{cokernel_invariants, kernel, LatticeMap, Sublattice};
use crate::log_morphism::MonoidChart;
use crate::monoid::{saturate, AffineMonoid};

/// `(Q^gp ⊕ P'^gp) / {(θ(p), -φ(p))}`, with the generators of `Q` and `P'`
/// carried to its torsion-free quotient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PushoutPresentation {
    pub group_pushout_rank: usize,
    pub torsion_divisors: Vec<Int>,
    pub q_images: Vec<IntVector>,
    pub p2_images: Vec<IntVector>,
    pub torsion_order: Int,
    /// `Q^gp ⊕ P'^gp → Z^rank`, in the coordinates of the HNF bases of the
    /// two groups; its kernel is the saturation of the relations.
    pub free_coordinates: LatticeMap,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SatBaseChangeResult {
    pub main_monoid: AffineMonoid,
    /// The chart `P' → main_monoid`.
    pub structural_map: MonoidChart,
    /// `Z^{n_Q} → Z^rank`, the other side of the square; it carries `Q`
    /// into `main_monoid`.
    pub q_map: LatticeMap,
    pub torsion_order: Int,
    pub fibre_dim: usize,
    pub pushout: PushoutPresentation,
}

/// Outcome of [`verify_base_change`], one flag per check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseChangeReport {
    pub saturated: bool,
    pub log_smooth: bool,
    pub dominant: bool,
    pub fibre_dim_identity: bool,
    pub diagnostics: Vec<String>,
}

impl BaseChangeReport {
    pub fn passed(&self) -> bool {
        self.saturated && self.log_smooth && self.dominant && self.fibre_dim_identity
    }

    pub fn into_result(self) -> Result<Self> {
        if self.passed() {
            Ok(self)
        } else {
            Err(Error::Invariant(self.diagnostics.join("; ")))
        }
    }
}

fn check_sources(theta: &MonoidChart, phi: &MonoidChart) -> Result<()> {
    if theta.source().ambient_rank() != phi.source().ambient_rank()
        || !theta.source().same_monoid(phi.source())
    {
        return Err(Error::SourceMismatch);
    }
    Ok(())
}

/// The left kernel of the relation matrix, as a map onto `Z^free_rank`.
fn free_quotient(relations: &LatticeMap) -> LatticeMap {
    let rows = kernel(&relations.transpose()).basis().to_vec();
    LatticeMap::from_rows(relations.target_rank(), rows).expect("kernel rows have the right width")
}

fn concat(a: &[Int], b: &[Int]) -> IntVector {
    a.iter().chain(b).cloned().collect()
}

pub fn monoid_pushout(theta: &MonoidChart, phi: &MonoidChart) -> Result<PushoutPresentation> {
    check_sources(theta, phi)?;
    let q = theta.target().group();
    let p2 = phi.target().group();
    let (a, b) = (q.rank(), p2.rank());
    let coords = |s: &Sublattice, v: &IntVector| {
        s.coordinates(v).expect("charts map generators into the target group")
    };
    let relations: Vec<IntVector> = theta
        .source()
        .group()
        .basis()
        .iter()
        .map(|p| {
            let left = coords(&q, &theta.map().apply(p));
            let right = vector::neg(&coords(&p2, &phi.map().apply(p)));
            concat(&left, &right)
        })
        .collect();
    let relations = LatticeMap::from_columns(a + b, &relations)?;
    let invariants = cokernel_invariants(&relations);
    let free = free_quotient(&relations);
    if free.target_rank() != invariants.free_rank {
        return Err(Error::Invariant("left kernel rank differs from the cokernel free rank".into()));
    }
    let zero_a = vector::zero(a);
    let zero_b = vector::zero(b);
    let q_images = theta
        .target()
        .generators()
        .iter()
        .map(|g| free.apply(&concat(&coords(&q, g), &zero_b)))
        .collect();
    let p2_images = phi
        .target()
        .generators()
        .iter()
        .map(|g| free.apply(&concat(&zero_a, &coords(&p2, g))))
        .collect();
    Ok(PushoutPresentation {
        group_pushout_rank: invariants.free_rank,
        torsion_order: invariants.torsion_order(),
        torsion_divisors: invariants.torsion_divisors,
        q_images,
        p2_images,
        free_coordinates: free,
    })
}

/// Saturated base change; `theta` must be dominant, `phi` is arbitrary.
///
/// The main monoid lives in the torsion-free quotient of
/// `(Z^{n_Q} ⊕ Z^{n_P'}) / {(θ(p), -φ(p))}`, which contains the torsion-free
/// quotient of the group pushout and lets the structural map be written on
/// the ambient lattice of `P'`.
pub fn saturated_base_change(theta: &MonoidChart, phi: &MonoidChart) -> Result<SatBaseChangeResult> {
    check_sources(theta, phi)?;
    let theta_kernel = theta.gp_kernel();
    if !theta_kernel.is_zero() {
        return Err(Error::NotDominant { kernel: format_vectors(theta_kernel.basis()) });
    }
    let pushout = monoid_pushout(theta, phi)?;

    let nq = theta.target().ambient_rank();
    let np = phi.target().ambient_rank();
    let relations: Vec<IntVector> = theta
        .source()
        .group()
        .basis()
        .iter()
        .map(|p| concat(&theta.map().apply(p), &vector::neg(&phi.map().apply(p))))
        .collect();
    let relations = LatticeMap::from_columns(nq + np, &relations)?;
    let free = free_quotient(&relations);
    let f = free.target_rank();

    let mut images: Vec<IntVector> = theta
        .target()
        .generators()
        .iter()
        .map(|g| free.apply(&concat(g, &vector::zero(np))))
        .collect();
    images.extend(phi.target().generators().iter().map(|g| free.apply(&concat(&vector::zero(nq), g))));
    let main_monoid = saturate(&AffineMonoid::generated_by(f, &images)?);

    let columns: Vec<IntVector> = (nq..nq + np).map(|j| free.column(j)).collect();
    let structural = LatticeMap::from_columns(f, &columns)?;
    let structural_map = MonoidChart::new(phi.target().clone(), main_monoid.clone(), structural)?;
    let q_columns: Vec<IntVector> = (0..nq).map(|j| free.column(j)).collect();
    let q_map = LatticeMap::from_columns(f, &q_columns)?;
    let fibre_dim = main_monoid.rank() - structural_map.image_group().rank();
    Ok(SatBaseChangeResult {
        torsion_order: pushout.torsion_order.clone(),
        main_monoid,
        structural_map,
        q_map,
        fibre_dim,
        pushout,
    })
}

/// Checks the result of [`saturated_base_change`] for `theta`: saturated
/// main monoid, log smooth and dominant structural map, and fibre dimension
/// equal both to the rank difference and to that of `theta`.
pub fn verify_base_change(r: &SatBaseChangeResult, theta: &MonoidChart) -> BaseChangeReport {
    let mut diagnostics = Vec::new();
    let saturated = r.main_monoid.is_saturated();
    if !saturated {
        diagnostics.push(format!(
            "main monoid {} is not saturated",
            format_vectors(r.main_monoid.generators())
        ));
    }
    let smooth = r.structural_map.is_log_smooth();
    if !smooth.verdict {
        diagnostics.push(format!(
            "structural map is not log smooth: kernel {}",
            format_vectors(&smooth.kernel)
        ));
    }
    let dominant = r.structural_map.is_dominant();
    if !dominant {
        diagnostics.push("structural map is not dominant".into());
    }
    let rank_difference =
        r.main_monoid.rank() as i64 - r.structural_map.source().rank() as i64;
    let expected = theta.fibre_dimension().ok();
    let fibre_dim_identity =
        r.fibre_dim as i64 == rank_difference && expected == Some(r.fibre_dim);
    if !fibre_dim_identity {
        diagnostics.push(format!(
            "fibre dimension {} differs from rank difference {} or from the fibre dimension {:?} of theta",
            r.fibre_dim, rank_difference, expected
        ));
    }
    BaseChangeReport { saturated, log_smooth: smooth.verdict, dominant, fibre_dim_identity, diagnostics }
}

impl SatBaseChangeResult {
    pub fn is_torsion_free(&self) -> bool {
        self.torsion_order.is_one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::vector::{unit, vector};

    fn vs(xs: &[&[i64]]) -> Vec<IntVector> {
        xs.iter().map(|x| vector(x)).collect()
    }

    fn orthant(n: usize) -> AffineMonoid {
        let gens: Vec<IntVector> = (0..n).map(|i| unit(n, i)).collect();
        AffineMonoid::generated_by(n, &gens).unwrap()
    }

    fn chart(p: AffineMonoid, q: AffineMonoid, rows: &[&[i64]]) -> MonoidChart {
        let map = LatticeMap::from_rows(p.ambient_rank(), vs(rows)).unwrap();
        MonoidChart::new(p, q, map).unwrap()
    }

    fn times(k: i64) -> MonoidChart {
        chart(orthant(1), orthant(1), &[&[k]])
    }

    #[test]
    fn pushout_examples() {
        let cusp = monoid_pushout(&times(2), &times(3)).unwrap();
        assert_eq!(cusp.group_pushout_rank, 1);
        assert!(cusp.torsion_divisors.is_empty());
        assert_eq!(cusp.q_images, vs(&[&[3]]));
        assert_eq!(cusp.p2_images, vs(&[&[2]]));

        let node = monoid_pushout(&times(2), &times(2)).unwrap();
        assert_eq!(node.torsion_divisors, vec![Int::from(2)]);
        assert_eq!(node.torsion_order, Int::from(2));
        assert_eq!(node.q_images, vs(&[&[1]]));
        assert_eq!(node.p2_images, vs(&[&[1]]));

        let trivial = AffineMonoid::trivial(0);
        let a = chart(trivial.clone(), orthant(1), &[&[]]);
        let b = chart(trivial, orthant(2), &[&[], &[]]);
        let coproduct = monoid_pushout(&a, &b).unwrap();
        assert_eq!(coproduct.group_pushout_rank, 3);
        assert_eq!(coproduct.torsion_order, Int::from(1));
    }

    #[test]
    fn source_mismatch() {
        let other = chart(orthant(2), orthant(1), &[&[1, 1]]);
        assert_eq!(monoid_pushout(&times(2), &other), Err(Error::SourceMismatch));
    }

    #[test]
    fn cusp() {
        let r = saturated_base_change(&times(2), &times(3)).unwrap();
        assert_eq!(r.main_monoid.generators(), vs(&[&[1]]));
        assert_eq!(r.structural_map.map().rows(), vs(&[&[2]]).as_slice());
        assert_eq!(r.torsion_order, Int::from(1));
        assert_eq!(r.fibre_dim, 0);
        assert!(verify_base_change(&r, &times(2)).passed());
    }

    #[test]
    fn node() {
        let r = saturated_base_change(&times(2), &times(2)).unwrap();
        assert_eq!(r.main_monoid.generators(), vs(&[&[1]]));
        assert_eq!(r.structural_map.map().rows(), vs(&[&[1]]).as_slice());
        assert_eq!(r.torsion_order, Int::from(2));
        assert_eq!(r.fibre_dim, 0);
        assert!(verify_base_change(&r, &times(2)).passed());
    }

    #[test]
    fn identity_base_change() {
        let theta = chart(orthant(1), orthant(2), &[&[1], &[0]]);
        let r = saturated_base_change(&theta, &MonoidChart::identity(&orthant(1))).unwrap();
        assert_eq!(r.main_monoid, orthant(2));
        assert_eq!(r.structural_map.map(), theta.map());
        assert_eq!(r.torsion_order, Int::from(1));
        assert_eq!(r.fibre_dim, 1);
        assert!(verify_base_change(&r, &theta).passed());
    }

    #[test]
    fn rejects_non_dominant_theta() {
        let sum = chart(orthant(2), orthant(1), &[&[1, 1]]);
        let id = MonoidChart::identity(&orthant(2));
        assert!(matches!(saturated_base_change(&sum, &id), Err(Error::NotDominant { .. })));
    }

    #[test]
    fn non_dominant_phi_is_allowed() {
        let theta = chart(orthant(2), orthant(2), &[&[1, 0], &[0, 1]]);
        let phi = chart(orthant(2), orthant(1), &[&[1, 1]]);
        let r = saturated_base_change(&theta, &phi).unwrap();
        assert_eq!(r.main_monoid.rank(), 1);
        assert!(verify_base_change(&r, &theta).passed());
    }
}
