//! Exact integer linear algebra on ambient lattices `Z^n`.
//!
//! Everything here is built on [`smith_normal_form`]: kernels, images,
//! saturations, cokernel torsion and direct complements of saturated
//! sublattices. Sublattice bases are stored in Hermite normal form, so two
//! [`Sublattice`] values compare equal exactly when they are the same lattice.

pub mod exact;
pub mod hermite;
pub mod smith;
pub mod vector;

use num_traits::{One, Zero};

pub use smith::{smith_normal_form, SmithDecomposition};
pub use vector::{Int, IntVector};

use crate::error::{Error, Result};
use hermite::hermite_rows;

/// An integer matrix `Z^source_rank -> Z^target_rank`, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticeMap {
    pub(crate) source_rank: usize,
    pub(crate) target_rank: usize,
    pub(crate) entries: Vec<IntVector>,
}

impl LatticeMap {
    pub fn new(source_rank: usize, target_rank: usize, entries: Vec<IntVector>) -> Result<Self> {
        if entries.len() != target_rank {
            return Err(Error::DimensionMismatch { expected: target_rank, found: entries.len() });
        }
        if let Some(row) = entries.iter().find(|r| r.len() != source_rank) {
            return Err(Error::DimensionMismatch { expected: source_rank, found: row.len() });
        }
        Ok(Self { source_rank, target_rank, entries })
    }

    /// Rows give the coordinates of the image; the target rank is the number
    /// of rows.
    pub fn from_rows(source_rank: usize, rows: Vec<IntVector>) -> Result<Self> {
        let target_rank = rows.len();
        Self::new(source_rank, target_rank, rows)
    }

    /// Columns are the images of the standard basis vectors.
    pub fn from_columns(target_rank: usize, columns: &[IntVector]) -> Result<Self> {
        if let Some(c) = columns.iter().find(|c| c.len() != target_rank) {
            return Err(Error::DimensionMismatch { expected: target_rank, found: c.len() });
        }
        let entries = (0..target_rank)
            .map(|i| columns.iter().map(|c| c[i].clone()).collect())
            .collect();
        Ok(Self { source_rank: columns.len(), target_rank, entries })
    }

    pub fn identity(n: usize) -> Self {
        let entries = (0..n).map(|i| vector::unit(n, i)).collect();
        Self { source_rank: n, target_rank: n, entries }
    }

    pub fn zero(source_rank: usize, target_rank: usize) -> Self {
        Self { source_rank, target_rank, entries: vec![vector::zero(source_rank); target_rank] }
    }

    pub fn source_rank(&self) -> usize {
        self.source_rank
    }

    pub fn target_rank(&self) -> usize {
        self.target_rank
    }

    pub fn rows(&self) -> &[IntVector] {
        &self.entries
    }

    pub fn column(&self, j: usize) -> IntVector {
        self.entries.iter().map(|r| r[j].clone()).collect()
    }

    pub fn columns(&self) -> Vec<IntVector> {
        (0..self.source_rank).map(|j| self.column(j)).collect()
    }

    pub fn apply(&self, v: &[Int]) -> IntVector {
        assert_eq!(v.len(), self.source_rank, "vector length must match the source rank");
        self.entries.iter().map(|r| vector::dot(r, v)).collect()
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &LatticeMap) -> Result<LatticeMap> {
        if inner.target_rank != self.source_rank {
            return Err(Error::DimensionMismatch {
                expected: self.source_rank,
                found: inner.target_rank,
            });
        }
        let entries = self
            .entries
            .iter()
            .map(|row| {
                (0..inner.source_rank)
                    .map(|j| row.iter().zip(&inner.entries).map(|(a, r)| a * &r[j]).sum())
                    .collect()
            })
            .collect();
        Ok(LatticeMap { source_rank: inner.source_rank, target_rank: self.target_rank, entries })
    }

    pub fn transpose(&self) -> LatticeMap {
        LatticeMap {
            source_rank: self.target_rank,
            target_rank: self.source_rank,
            entries: self.columns(),
        }
    }

    /// Places `self` and `other` side by side: `[self | other]`.
    pub fn hstack(&self, other: &LatticeMap) -> Result<LatticeMap> {
        if self.target_rank != other.target_rank {
            return Err(Error::DimensionMismatch {
                expected: self.target_rank,
                found: other.target_rank,
            });
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.iter().chain(b).cloned().collect())
            .collect();
        Ok(LatticeMap {
            source_rank: self.source_rank + other.source_rank,
            target_rank: self.target_rank,
            entries,
        })
    }

    pub fn rank(&self) -> usize {
        smith_normal_form(self).rank()
    }

    pub fn determinant(&self) -> Option<Int> {
        (self.source_rank == self.target_rank).then(|| exact::determinant(&self.entries))
    }

    pub fn is_unimodular(&self) -> bool {
        self.determinant().is_some_and(|d| d == Int::one() || d == -Int::one())
    }

    /// Inverse of a unimodular map.
    pub fn inverse(&self) -> Option<LatticeMap> {
        if self.source_rank != self.target_rank {
            return None;
        }
        let entries = exact::integer_inverse(&self.entries)?;
        Some(LatticeMap { source_rank: self.source_rank, target_rank: self.target_rank, entries })
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.source_rank
    }

    /// The sublattice generated by the columns.
    pub fn image(&self) -> Sublattice {
        Sublattice::from_generators_unchecked(self.target_rank, &self.columns())
    }
}

/// A sublattice of `Z^ambient_rank`, kept in Hermite normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Sublattice {
    ambient_rank: usize,
    basis: Vec<IntVector>,
    saturated: bool,
}

impl Sublattice {
    /// The sublattice generated by arbitrary (possibly dependent) vectors.
    pub fn new(ambient_rank: usize, generators: &[IntVector]) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.len() != ambient_rank) {
            return Err(Error::DimensionMismatch { expected: ambient_rank, found: g.len() });
        }
        Ok(Self::from_generators_unchecked(ambient_rank, generators))
    }

    pub(crate) fn from_generators_unchecked(ambient_rank: usize, generators: &[IntVector]) -> Self {
        let basis = hermite_rows(generators, ambient_rank);
        let saturated = if basis.is_empty() {
            true
        } else {
            let m = LatticeMap::from_columns(ambient_rank, &basis).expect("basis width");
            smith_normal_form(&m).diagonal.iter().all(One::is_one)
        };
        Self { ambient_rank, basis, saturated }
    }

    pub fn zero(ambient_rank: usize) -> Self {
        Self { ambient_rank, basis: Vec::new(), saturated: true }
    }

    pub fn full(ambient_rank: usize) -> Self {
        let basis = (0..ambient_rank).map(|i| vector::unit(ambient_rank, i)).collect();
        Self { ambient_rank, basis, saturated: true }
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[IntVector] {
        &self.basis
    }

    /// Basis vectors as the columns of an injective map into the ambient lattice.
    pub fn basis_map(&self) -> LatticeMap {
        LatticeMap::from_columns(self.ambient_rank, &self.basis).expect("basis width")
    }

    pub fn is_saturated(&self) -> bool {
        self.saturated
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    /// Coordinates of `v` in the stored basis, if `v` lies in the lattice.
    pub fn coordinates(&self, v: &[Int]) -> Option<IntVector> {
        if v.len() != self.ambient_rank {
            return None;
        }
        let mut residual = v.to_vec();
        let mut coords = Vec::with_capacity(self.basis.len());
        for row in &self.basis {
            let col = row.iter().position(|x| !x.is_zero()).expect("hermite rows are nonzero");
            let (q, r) = num_integer::Integer::div_rem(&residual[col], &row[col]);
            if !r.is_zero() {
                return None;
            }
            for (x, y) in residual.iter_mut().zip(row) {
                *x -= &q * y;
            }
            coords.push(q);
        }
        vector::is_zero(&residual).then_some(coords)
    }

    pub fn contains(&self, v: &[Int]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn from_coordinates(&self, coords: &[Int]) -> IntVector {
        let mut v = vector::zero(self.ambient_rank);
        for (c, row) in coords.iter().zip(&self.basis) {
            for (x, y) in v.iter_mut().zip(row) {
                *x += c * y;
            }
        }
        v
    }

    /// Canonical representative of the coset `v + self`: each pivot
    /// coordinate of the Hermite basis is reduced into `[0, pivot)`.
    pub fn reduce(&self, v: &[Int]) -> IntVector {
        let mut r = v.to_vec();
        for row in &self.basis {
            let col = row.iter().position(|x| !x.is_zero()).expect("hermite rows are nonzero");
            let q = num_integer::Integer::div_floor(&r[col], &row[col]);
            if q.is_zero() {
                continue;
            }
            for (x, y) in r.iter_mut().zip(row) {
                *x -= &q * y;
            }
        }
        r
    }

    pub fn contains_lattice(&self, other: &Sublattice) -> bool {
        other.basis.iter().all(|b| self.contains(b))
    }

    /// The image of this sublattice under `map`.
    pub fn image_under(&self, map: &LatticeMap) -> Sublattice {
        let images: Vec<IntVector> = self.basis.iter().map(|b| map.apply(b)).collect();
        Sublattice::from_generators_unchecked(map.target_rank(), &images)
    }
}

/// Elementary divisor data of the cokernel of a map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CokernelInvariants {
    pub free_rank: usize,
    pub torsion_divisors: Vec<Int>,
}

impl CokernelInvariants {
    pub fn torsion_order(&self) -> Int {
        self.torsion_divisors.iter().product()
    }
}

pub fn cokernel_invariants(m: &LatticeMap) -> CokernelInvariants {
    let snf = smith_normal_form(m);
    CokernelInvariants {
        free_rank: m.target_rank() - snf.rank(),
        torsion_divisors: snf.diagonal.into_iter().filter(|d| !d.is_one()).collect(),
    }
}

/// The saturated sublattice of vectors on which `m` vanishes.
pub fn kernel(m: &LatticeMap) -> Sublattice {
    let snf = smith_normal_form(m);
    let vectors: Vec<IntVector> =
        (snf.rank()..m.source_rank()).map(|j| snf.right.column(j)).collect();
    Sublattice::from_generators_unchecked(m.source_rank(), &vectors)
}

/// The smallest saturated sublattice containing `s`, with the index of `s` in it.
pub fn saturate_sublattice(s: &Sublattice) -> (Sublattice, Int) {
    if s.is_zero() {
        return (s.clone(), Int::one());
    }
    let snf = smith_normal_form(&s.basis_map());
    let vectors: Vec<IntVector> = (0..s.rank()).map(|j| snf.left_inverse.column(j)).collect();
    let index = snf.diagonal.iter().product();
    (Sublattice::from_generators_unchecked(s.ambient_rank(), &vectors), index)
}

/// The canonical direct complement of a saturated sublattice.
///
/// With `U B V = D` the Smith form of the basis matrix `B`, the first
/// `rank` columns of `U^-1` span the same lattice as `B`; the remaining
/// columns span the complement.
pub fn complement(s: &Sublattice) -> Result<Sublattice> {
    if !s.is_saturated() {
        return Err(Error::NotSaturated);
    }
    let n = s.ambient_rank();
    if s.is_zero() {
        return Ok(Sublattice::full(n));
    }
    let snf = smith_normal_form(&s.basis_map());
    let vectors: Vec<IntVector> = (s.rank()..n).map(|j| snf.left_inverse.column(j)).collect();
    Ok(Sublattice::from_generators_unchecked(n, &vectors))
}

/// A unimodular basis of `Z^n` whose first vectors span a saturated
/// sublattice `S` and whose remaining vectors span its canonical complement.
///
/// Coordinates with respect to it split a vector into its `S` part and its
/// image in the torsion-free quotient `Z^n / S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdaptedBasis {
    sub: Sublattice,
    complement: Sublattice,
    matrix: LatticeMap,
    inverse: LatticeMap,
}

impl AdaptedBasis {
    pub fn new(sub: &Sublattice) -> Result<Self> {
        let complement = complement(sub)?;
        let columns: Vec<IntVector> =
            sub.basis().iter().chain(complement.basis()).cloned().collect();
        let matrix = LatticeMap::from_columns(sub.ambient_rank(), &columns)?;
        let inverse = matrix
            .inverse()
            .ok_or_else(|| Error::Invariant("sublattice and complement are not unimodular".into()))?;
        Ok(Self { sub: sub.clone(), complement, matrix, inverse })
    }

    pub fn sub(&self) -> &Sublattice {
        &self.sub
    }

    pub fn complement(&self) -> &Sublattice {
        &self.complement
    }

    /// Columns: basis of the sublattice followed by the complement.
    pub fn matrix(&self) -> &LatticeMap {
        &self.matrix
    }

    pub fn inverse(&self) -> &LatticeMap {
        &self.inverse
    }

    pub fn sub_rank(&self) -> usize {
        self.sub.rank()
    }

    pub fn quotient_rank(&self) -> usize {
        self.complement.rank()
    }

    pub fn coordinates(&self, v: &[Int]) -> IntVector {
        self.inverse.apply(v)
    }

    pub fn sub_part(&self, v: &[Int]) -> IntVector {
        let mut c = self.coordinates(v);
        c.truncate(self.sub_rank());
        c
    }

    pub fn quotient_part(&self, v: &[Int]) -> IntVector {
        self.coordinates(v).split_off(self.sub_rank())
    }

    /// The projection `Z^n -> Z^n / S` in complement coordinates.
    pub fn quotient_projection(&self) -> LatticeMap {
        let rows = self.inverse.rows()[self.sub_rank()..].to_vec();
        LatticeMap::from_rows(self.matrix.source_rank(), rows).expect("projection shape")
    }

    /// The vector with the given complement coordinates and zero `S` part.
    pub fn lift_quotient(&self, b: &[Int]) -> IntVector {
        self.complement.from_coordinates(b)
    }

    pub fn from_parts(&self, a: &[Int], b: &[Int]) -> IntVector {
        let coords: IntVector = a.iter().chain(b).cloned().collect();
        self.matrix.apply(&coords)
    }
}

#[cfg(test)]
mod tests {
    use super::vector::vector;
    use super::*;

    fn sub(n: usize, vs: &[&[i64]]) -> Sublattice {
        let gens: Vec<IntVector> = vs.iter().map(|v| vector(v)).collect();
        Sublattice::new(n, &gens).unwrap()
    }

    #[test]
    fn cokernel_examples() {
        let zero = LatticeMap::zero(2, 2);
        assert_eq!(
            cokernel_invariants(&zero),
            CokernelInvariants { free_rank: 2, torsion_divisors: vec![] }
        );
        let m = LatticeMap::from_columns(2, &[vector(&[2, -3])]).unwrap();
        assert_eq!(
            cokernel_invariants(&m),
            CokernelInvariants { free_rank: 1, torsion_divisors: vec![] }
        );
        let m = LatticeMap::from_columns(2, &[vector(&[2, -2])]).unwrap();
        assert_eq!(
            cokernel_invariants(&m),
            CokernelInvariants { free_rank: 1, torsion_divisors: vec![Int::from(2)] }
        );
    }

    #[test]
    fn saturation_examples() {
        let (s, i) = saturate_sublattice(&sub(2, &[&[2, 0]]));
        assert_eq!((s, i), (sub(2, &[&[1, 0]]), Int::from(2)));
        let (s, i) = saturate_sublattice(&sub(2, &[&[1, 0]]));
        assert_eq!((s, i), (sub(2, &[&[1, 0]]), Int::from(1)));
        let (s, i) = saturate_sublattice(&sub(2, &[&[2, 4]]));
        assert_eq!((s, i), (sub(2, &[&[1, 2]]), Int::from(2)));
    }

    #[test]
    fn complement_examples() {
        assert_eq!(complement(&sub(2, &[&[1, 0]])).unwrap(), sub(2, &[&[0, 1]]));
        let s = sub(2, &[&[1, 2]]);
        let c = complement(&s).unwrap();
        let m = LatticeMap::from_columns(2, &[s.basis()[0].clone(), c.basis()[0].clone()]).unwrap();
        assert!(m.is_unimodular());
        assert_eq!(complement(&Sublattice::full(2)).unwrap(), Sublattice::zero(2));
        assert_eq!(complement(&sub(2, &[&[2, 0]])), Err(Error::NotSaturated));
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel(&LatticeMap::identity(2)), Sublattice::zero(2));
        let m = LatticeMap::from_rows(2, vec![vector(&[1, 1])]).unwrap();
        assert_eq!(kernel(&m), sub(2, &[&[1, -1]]));
        assert_eq!(kernel(&m).basis(), &[vector(&[1, -1])]);
        assert_eq!(kernel(&LatticeMap::zero(2, 1)), Sublattice::full(2));
    }

    #[test]
    fn coordinates_round_trip() {
        let s = sub(3, &[&[1, 2, 0], &[0, 3, 3]]);
        let v = vector(&[2, 1, -3]);
        let c = s.coordinates(&v).unwrap();
        assert_eq!(s.from_coordinates(&c), v);
        assert!(s.coordinates(&vector(&[0, 1, 0])).is_none());
    }

    #[test]
    fn adapted_basis_splits() {
        let s = sub(2, &[&[0, 1]]);
        let b = AdaptedBasis::new(&s).unwrap();
        assert_eq!(b.complement(), &sub(2, &[&[1, 0]]));
        let v = vector(&[3, -5]);
        assert_eq!(b.from_parts(&b.sub_part(&v), &b.quotient_part(&v)), v);
        assert_eq!(b.quotient_part(&vector(&[0, 7])), vector(&[0]));
    }
}
