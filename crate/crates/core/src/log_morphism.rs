//! Monoid charts `θ: P → Q` and their classification.
//!
//! The ground field has characteristic zero throughout, so the
//! log-smoothness criterion reduces to injectivity of `θ^gp` and torsion in
//! the cokernel never obstructs it.

use crate::error::{Error, Result};
use crate::lattice::vector::{format_vector, format_vectors, is_zero, sort_dedup, Int, IntVector};
use crate::lattice::{cokernel_invariants, kernel, LatticeMap, Sublattice};
use crate::monoid::{sharpen, AffineMonoid};
use crate::toric_chart::ToricChart;

/// A homomorphism of affine monoids, given by a lattice map between their
/// ambient lattices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoidChart {
    source: AffineMonoid,
    target: AffineMonoid,
    map: LatticeMap,
}

/// Verdict of [`MonoidChart::is_log_smooth`] with its certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogSmoothness {
    pub verdict: bool,
    /// Basis of `ker θ^gp` in source coordinates; empty when smooth.
    pub kernel: Vec<IntVector>,
    /// Torsion of `Q^gp / θ(P^gp)`. Informational only.
    pub cokernel_torsion: Vec<Int>,
}

impl MonoidChart {
    pub fn new(source: AffineMonoid, target: AffineMonoid, map: LatticeMap) -> Result<Self> {
        if map.source_rank() != source.ambient_rank() {
            return Err(Error::DimensionMismatch {
                expected: source.ambient_rank(),
                found: map.source_rank(),
            });
        }
        if map.target_rank() != target.ambient_rank() {
            return Err(Error::DimensionMismatch {
                expected: target.ambient_rank(),
                found: map.target_rank(),
            });
        }
        for g in source.generators() {
            let image = map.apply(g);
            if !target.contains(&image) {
                return Err(Error::ImageNotInMonoid {
                    generator: format_vector(g),
                    image: format_vector(&image),
                });
            }
        }
        Ok(Self { source, target, map })
    }

    pub fn identity(m: &AffineMonoid) -> Self {
        Self {
            source: m.clone(),
            target: m.clone(),
            map: LatticeMap::identity(m.ambient_rank()),
        }
    }

    /// The chart `τ^∨ ∩ M_V → σ^∨ ∩ M_W` of a toric morphism
    /// `(N_W, σ) → (N_V, τ)` given by `lattice_map: N_W → N_V`.
    pub fn from_toric_morphism(
        src: &ToricChart,
        dst: &ToricChart,
        lattice_map: &LatticeMap,
    ) -> Result<Self> {
        if lattice_map.source_rank() != src.lattice_rank() {
            return Err(Error::DimensionMismatch {
                expected: src.lattice_rank(),
                found: lattice_map.source_rank(),
            });
        }
        if lattice_map.target_rank() != dst.lattice_rank() {
            return Err(Error::DimensionMismatch {
                expected: dst.lattice_rank(),
                found: lattice_map.target_rank(),
            });
        }
        if let Some(r) = src.cone().rays().iter().find(|r| !dst.cone().contains(&lattice_map.apply(r)))
        {
            return Err(Error::ConeContainment { witness: format_vector(r) });
        }
        Self::new(dst.dual_monoid().clone(), src.dual_monoid().clone(), lattice_map.transpose())
    }

    pub fn source(&self) -> &AffineMonoid {
        &self.source
    }

    pub fn target(&self) -> &AffineMonoid {
        &self.target
    }

    pub fn map(&self) -> &LatticeMap {
        &self.map
    }

    /// `θ(P^gp)` as a sublattice of the target's ambient lattice.
    pub fn image_group(&self) -> Sublattice {
        self.source.group().image_under(&self.map)
    }

    /// `ker(θ^gp: P^gp → Q^gp)`, in the source's ambient coordinates.
    pub fn gp_kernel(&self) -> Sublattice {
        let basis = self.source.group().basis_map();
        let restricted = self.map.compose(&basis).expect("basis lies in the source lattice");
        let coords = kernel(&restricted);
        let mut vectors: Vec<IntVector> =
            coords.basis().iter().map(|k| basis.apply(k)).collect();
        sort_dedup(&mut vectors);
        Sublattice::new(self.source.ambient_rank(), &vectors).expect("ranks agree")
    }

    /// Cokernel invariants of `θ(P^gp) ⊆ Q^gp`.
    pub fn gp_cokernel(&self) -> crate::lattice::CokernelInvariants {
        let q = self.target.group();
        let columns: Vec<IntVector> = self
            .source
            .group()
            .basis()
            .iter()
            .map(|b| {
                q.coordinates(&self.map.apply(b))
                    .expect("images of source generators lie in the target group")
            })
            .collect();
        let matrix = LatticeMap::from_columns(q.rank(), &columns).expect("columns have rank q");
        cokernel_invariants(&matrix)
    }

    pub fn is_dominant(&self) -> bool {
        self.gp_kernel().is_zero()
    }

    pub fn is_log_smooth(&self) -> LogSmoothness {
        let kernel = self.gp_kernel();
        LogSmoothness {
            verdict: kernel.is_zero(),
            kernel: kernel.basis().to_vec(),
            cokernel_torsion: self.gp_cokernel().torsion_divisors,
        }
    }

    /// `θ^gp` injective with finite cokernel.
    pub fn is_log_etale(&self) -> bool {
        self.is_dominant() && self.image_group().rank() == self.target.rank()
    }

    /// Whether the induced map `P/P^* → Q/Q^*` is an isomorphism: the
    /// sharpened source generators map bijectively onto the sharpened target
    /// generators and the induced group map is injective.
    pub fn is_strict(&self) -> bool {
        let p = sharpen(&self.source);
        let q = sharpen(&self.target);
        let lift = |v: &IntVector| -> IntVector { q.projection.apply(&self.map.apply(v)) };
        let mut images: Vec<IntVector> =
            self.source.sharp_generators().iter().map(lift).collect();
        let before = images.len();
        images.retain(|v| !is_zero(v));
        sort_dedup(&mut images);
        if images.len() != before || images.len() != p.sharp.generators().len() {
            return false;
        }
        let mut target_gens = q.sharp.generators().to_vec();
        sort_dedup(&mut target_gens);
        if images != target_gens {
            return false;
        }
        Sublattice::new(q.sharp.ambient_rank(), &images).map(|s| s.rank()).ok()
            == Some(p.sharp.rank())
    }

    /// `rank Q^gp - rank θ(P^gp)`; defined for dominant charts only.
    pub fn fibre_dimension(&self) -> Result<usize> {
        let kernel = self.gp_kernel();
        if !kernel.is_zero() {
            return Err(Error::NotDominant { kernel: format_vectors(kernel.basis()) });
        }
        Ok(self.target.rank() - self.image_group().rank())
    }
}

pub fn from_toric_morphism(
    src: &ToricChart,
    dst: &ToricChart,
    lattice_map: &LatticeMap,
) -> Result<MonoidChart> {
    MonoidChart::from_toric_morphism(src, dst, lattice_map)
}

pub fn is_dominant(c: &MonoidChart) -> bool {
    c.is_dominant()
}

pub fn is_log_smooth(c: &MonoidChart) -> LogSmoothness {
    c.is_log_smooth()
}

pub fn is_log_etale(c: &MonoidChart) -> bool {
    c.is_log_etale()
}

pub fn is_strict(c: &MonoidChart) -> bool {
    c.is_strict()
}

pub fn fibre_dimension(c: &MonoidChart) -> Result<usize> {
    c.fibre_dimension()
}
