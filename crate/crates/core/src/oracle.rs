//! Brute-force reference computations for tests.
//!
//! Everything here works over `i128` with its own determinant and
//! linear-solve routines, and decides membership by scanning boxes. It is
//! exponential in the box volume and meant for small inputs only.

use std::collections::HashSet;

use num_traits::ToPrimitive;

use crate::cone::RationalCone;
use crate::lattice::vector::{Int, IntVector};
use crate::lattice::Sublattice;
use crate::toric_chart::MonomialIdeal;

type Small = Vec<i128>;

fn small(v: &[Int]) -> Small {
    v.iter().map(|x| x.to_i128().expect("oracle inputs fit in i128")).collect()
}

fn big(v: &[i128]) -> IntVector {
    v.iter().map(|&x| Int::from(x)).collect()
}

fn dot(a: &[i128], b: &[i128]) -> i128 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// An integer box `[lower, upper]`, possibly empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Box {
    pub lower: Vec<i64>,
    pub upper: Vec<i64>,
}

impl Box {
    pub fn new(lower: Vec<i64>, upper: Vec<i64>) -> Self {
        assert_eq!(lower.len(), upper.len(), "box bounds must have equal length");
        Self { lower, upper }
    }

    /// `[-r, r]^n`.
    pub fn cube(n: usize, r: i64) -> Self {
        Self::new(vec![-r; n], vec![r; n])
    }

    /// Bounding box of the zonotope `{Σ λ_i v_i : 0 <= λ_i <= 1}`.
    pub fn zonotope(n: usize, vectors: &[IntVector]) -> Self {
        let mut lower = vec![0i64; n];
        let mut upper = vec![0i64; n];
        for v in vectors {
            for (j, x) in v.iter().enumerate() {
                let x = x.to_i64().expect("oracle inputs fit in i64");
                if x < 0 {
                    lower[j] += x;
                } else {
                    upper[j] += x;
                }
            }
        }
        Self::new(lower, upper)
    }

    /// The box enlarged by `r` in every direction.
    pub fn widened(&self, r: i64) -> Self {
        Self::new(self.lower.iter().map(|x| x - r).collect(), self.upper.iter().map(|x| x + r).collect())
    }

    pub fn rank(&self) -> usize {
        self.lower.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lower.iter().zip(&self.upper).any(|(l, u)| l > u)
    }

    /// All lattice points, in lexicographic order.
    pub fn points(&self) -> Vec<Small> {
        let n = self.rank();
        if self.is_empty() {
            return Vec::new();
        }
        let mut out = Vec::new();
        let mut x: Small = self.lower.iter().map(|&l| l as i128).collect();
        loop {
            out.push(x.clone());
            let mut j = n;
            loop {
                if j == 0 {
                    return out;
                }
                j -= 1;
                if x[j] < self.upper[j] as i128 {
                    x[j] += 1;
                    break;
                }
                x[j] = self.lower[j] as i128;
            }
        }
    }
}

/// Determinant by cofactor expansion.
pub fn determinant(m: &[Small]) -> i128 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        2 => m[0][0] * m[1][1] - m[0][1] * m[1][0],
        n => (0..n)
            .filter(|&j| m[0][j] != 0)
            .map(|j| {
                let minor: Vec<Small> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect())
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] * determinant(&minor)
            })
            .sum(),
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Rank of a matrix given by rows: the largest size of a nonzero minor.
pub fn minor_rank(rows: &[Small]) -> usize {
    let m = rows.len();
    let n = rows.first().map_or(0, |r| r.len());
    for k in (1..=m.min(n)).rev() {
        for rs in subsets(m, k) {
            for cs in subsets(n, k) {
                let minor: Vec<Small> =
                    rs.iter().map(|&r| cs.iter().map(|&c| rows[r][c]).collect()).collect();
                if determinant(&minor) != 0 {
                    return k;
                }
            }
        }
    }
    0
}

/// Solves `Σ c_i columns[i] = x` for linearly independent columns, returning
/// `(numerators, denominator)` with a positive denominator, or `None` when
/// `x` is not in their span.
fn solve(columns: &[Small], x: &[i128]) -> Option<(Small, i128)> {
    let n = x.len();
    let k = columns.len();
    if k == 0 {
        return x.iter().all(|&v| v == 0).then(|| (Vec::new(), 1));
    }
    for rs in subsets(n, k) {
        let square: Vec<Small> =
            rs.iter().map(|&r| columns.iter().map(|c| c[r]).collect()).collect();
        let d = determinant(&square);
        if d == 0 {
            continue;
        }
        let mut nums = Vec::with_capacity(k);
        for i in 0..k {
            let replaced: Vec<Small> = rs
                .iter()
                .enumerate()
                .map(|(a, &r)| {
                    let mut row = square[a].clone();
                    row[i] = x[r];
                    row
                })
                .collect();
            nums.push(determinant(&replaced));
        }
        let (nums, d) = if d < 0 { (nums.iter().map(|v| -v).collect(), -d) } else { (nums, d) };
        let consistent =
            (0..n).all(|r| (0..k).map(|i| nums[i] * columns[i][r]).sum::<i128>() == d * x[r]);
        return consistent.then_some((nums, d));
    }
    None
}

/// `x` is a nonnegative rational combination of `generators`, decided over
/// every linearly independent subset (Carathéodory).
pub fn brute_cone_contains(generators: &[IntVector], x: &[Int]) -> bool {
    let gens: Vec<Small> = generators.iter().map(|g| small(g)).collect();
    let x = small(x);
    if x.iter().all(|&v| v == 0) {
        return true;
    }
    let n = x.len();
    for k in 1..=n.min(gens.len()) {
        for s in subsets(gens.len(), k) {
            let cols: Vec<Small> = s.iter().map(|&i| gens[i].clone()).collect();
            if minor_rank(&cols) < k {
                continue;
            }
            if let Some((nums, _)) = solve(&cols, &x) {
                if nums.iter().all(|&v| v >= 0) {
                    return true;
                }
            }
        }
    }
    false
}

/// `x` is an integer combination of the basis of `group`.
pub fn brute_group_contains(group: &Sublattice, x: &[Int]) -> bool {
    let cols: Vec<Small> = group.basis().iter().map(|b| small(b)).collect();
    match solve(&cols, &small(x)) {
        Some((nums, d)) => nums.iter().all(|v| v % d == 0),
        None => false,
    }
}

/// `v` lies in the dual of the cone spanned by `generators`.
pub fn brute_dual_contains(generators: &[IntVector], v: &[Int]) -> bool {
    let v = small(v);
    generators.iter().all(|g| dot(&small(g), &v) >= 0)
}

/// Nonzero integer vectors `c` in `[-radius, radius]^k` with `M c = 0`,
/// where `M` has the given rows of width `k`.
pub fn kernel_in_box(rows: &[IntVector], width: usize, radius: i64) -> Vec<IntVector> {
    let rows: Vec<Small> = rows.iter().map(|r| small(r)).collect();
    Box::cube(width, radius)
        .points()
        .into_iter()
        .filter(|c| c.iter().any(|&v| v != 0) && rows.iter().all(|r| dot(r, c) == 0))
        .map(|c| big(&c))
        .collect()
}

/// Rank of a list of integer vectors, by nonzero minors.
pub fn brute_rank(vectors: &[IntVector]) -> usize {
    let rows: Vec<Small> = vectors.iter().map(|v| small(v)).collect();
    minor_rank(&rows)
}

/// Tuples of `tuples` with no other tuple of the list componentwise below
/// them, in lexicographic order.
pub fn brute_minimal_elements(tuples: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let mut out: Vec<Vec<u64>> = tuples
        .iter()
        .filter(|t| {
            !tuples.iter().any(|u| u != *t && u.iter().zip(t.iter()).all(|(a, b)| a <= b))
        })
        .cloned()
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Lattice points of `b` satisfying the facet inequalities and equations of
/// `c`, in lexicographic order.
pub fn enumerate_cone_points(c: &RationalCone, b: &Box) -> Vec<IntVector> {
    assert_eq!(c.ambient_rank(), b.rank(), "dimension mismatch");
    let facets: Vec<Small> = c.facets().iter().map(|f| small(f)).collect();
    let equations: Vec<Small> = c.equations().basis().iter().map(|e| small(e)).collect();
    b.points()
        .into_iter()
        .filter(|x| {
            facets.iter().all(|f| dot(f, x) >= 0) && equations.iter().all(|e| dot(e, x) == 0)
        })
        .map(|x| big(&x))
        .collect()
}

/// Nonzero points of `points` that are not the sum of two nonzero points of
/// `points`, in lexicographic order.
fn irreducible(points: Vec<Small>) -> Vec<IntVector> {
    let nonzero: Vec<Small> = points.into_iter().filter(|x| x.iter().any(|&v| v != 0)).collect();
    let set: HashSet<&Small> = nonzero.iter().collect();
    let mut out: Vec<Small> = nonzero
        .iter()
        .filter(|x| {
            !nonzero.iter().any(|y| {
                let z: Small = x.iter().zip(y.iter()).map(|(a, b)| a - b).collect();
                set.contains(&z)
            })
        })
        .cloned()
        .collect();
    out.sort();
    out.into_iter().map(|x| big(&x)).collect()
}

/// Irreducible elements of the box-restricted monoid `c ∩ b ∩ Z^n`.
pub fn brute_hilbert_basis(c: &RationalCone, b: &Box) -> Vec<IntVector> {
    let points: Vec<Small> = enumerate_cone_points(c, b).iter().map(|x| small(x)).collect();
    irreducible(points)
}

/// A finite set of lattice points with constant-time lookup.
#[derive(Clone, Debug, Default)]
pub struct PointSet(HashSet<Small>);

impl PointSet {
    pub fn new(points: &[IntVector]) -> PointSet {
        PointSet(points.iter().map(|p| small(p)).collect())
    }

    pub fn contains(&self, v: &[Int]) -> bool {
        self.0.contains(&small(v))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// `v - g` lies in `monoid_points` for some generator `g` of the ideal.
/// The differences leave a box `b` by at most the largest generator entry,
/// so `monoid_points` should cover `b.widened(..)` by that amount.
pub fn brute_ideal_membership(ideal: &MonomialIdeal, v: &[Int], monoid_points: &PointSet) -> bool {
    let v = small(v);
    ideal.generator_exponents.iter().any(|g| {
        let d: Small = v.iter().zip(small(g)).map(|(a, b)| a - b).collect();
        monoid_points.0.contains(&d)
    })
}

/// The largest absolute entry among the ideal generators.
pub fn ideal_reach(ideal: &MonomialIdeal) -> i64 {
    ideal
        .generator_exponents
        .iter()
        .flatten()
        .map(|x| x.to_i64().expect("oracle inputs fit in i64").abs())
        .max()
        .unwrap_or(0)
}

/// Irreducible elements, within `b`, of the monoid `cone(generators) ∩ group`.
/// Intended for pointed cones.
pub fn brute_saturation(generators: &[IntVector], group_basis: &Sublattice, b: &Box) -> Vec<IntVector> {
    let points: Vec<Small> = b
        .points()
        .into_iter()
        .filter(|x| {
            let x = big(x);
            brute_cone_contains(generators, &x) && brute_group_contains(group_basis, &x)
        })
        .collect();
    irreducible(points)
}
