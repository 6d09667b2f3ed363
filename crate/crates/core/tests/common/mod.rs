//! Seeded random corpora shared by the property and acceptance suites.
#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use toroidal::cone::RationalCone;
use toroidal::lattice::vector::unit;
use toroidal::lattice::{Int, IntVector, LatticeMap};
use toroidal::log_morphism::MonoidChart;
use toroidal::monoid::{AffineMonoid, NatTupleSet};
use toroidal::toric_chart::ToricChart;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn int_vector(xs: &[i64]) -> IntVector {
    xs.iter().map(|&x| Int::from(x)).collect()
}

fn random_vector(rng: &mut ChaCha8Rng, n: usize, lo: i64, hi: i64) -> IntVector {
    loop {
        let v: Vec<i64> = (0..n).map(|_| rng.gen_range(lo..=hi)).collect();
        if v.iter().any(|&x| x != 0) {
            return int_vector(&v);
        }
    }
}

/// A random nonzero strongly convex cone of rank `1..=max_rank` with
/// generator entries in `[-bound, bound]`.
pub fn random_cone(rng: &mut ChaCha8Rng, max_rank: usize, bound: i64) -> RationalCone {
    loop {
        let n = rng.gen_range(1..=max_rank);
        let k = rng.gen_range(1..=n + 2);
        let gens: Vec<IntVector> = (0..k).map(|_| random_vector(rng, n, -bound, bound)).collect();
        if let Ok(c) = RationalCone::strongly_convex(n, &gens) {
            return c;
        }
    }
}

/// A random cone of exactly rank `n`, optionally required to be
/// full-dimensional or not. A cone in rank 1 is always full-dimensional.
pub fn random_cone_of_rank(
    rng: &mut ChaCha8Rng,
    n: usize,
    bound: i64,
    full_dimensional: Option<bool>,
) -> RationalCone {
    assert!(n >= 2 || full_dimensional != Some(false));
    loop {
        let k = match full_dimensional {
            Some(false) => rng.gen_range(1..n.max(2)),
            _ => rng.gen_range(1..=n + 2),
        };
        let gens: Vec<IntVector> = (0..k).map(|_| random_vector(rng, n, -bound, bound)).collect();
        if let Ok(c) = RationalCone::strongly_convex(n, &gens) {
            if full_dimensional.is_none_or(|f| c.is_full_dimensional() == f) {
                return c;
            }
        }
    }
}

pub fn random_tuple_set(rng: &mut ChaCha8Rng) -> NatTupleSet {
    let s = rng.gen_range(1..=6);
    let count = rng.gen_range(1..=200);
    NatTupleSet::from_tuples(s, (0..count).map(|_| (0..s).map(|_| rng.gen_range(0..=20)).collect()))
}

pub fn orthant(n: usize) -> AffineMonoid {
    let gens: Vec<IntVector> = (0..n).map(|i| unit(n, i)).collect();
    AffineMonoid::generated_by(n, &gens).unwrap()
}

/// A random monoid inside `N^p`: the orthant, the saturation of a cone in
/// the orthant, or a submonoid generated by nonnegative vectors.
pub fn random_source(rng: &mut ChaCha8Rng, p: usize) -> AffineMonoid {
    match rng.gen_range(0..3) {
        0 => orthant(p),
        1 => {
            let k = rng.gen_range(1..=p + 1);
            let gens: Vec<IntVector> = (0..k).map(|_| random_vector(rng, p, 0, 3)).collect();
            AffineMonoid::of_cone(&RationalCone::from_generators(p, &gens).unwrap())
        }
        _ => {
            let k = rng.gen_range(1..=p + 1);
            let gens: Vec<IntVector> = (0..k).map(|_| random_vector(rng, p, 0, 3)).collect();
            AffineMonoid::generated_by(p, &gens).unwrap()
        }
    }
}

/// A random saturated target: the orthant or the dual monoid of a random
/// chart (which has units when the cone is not full-dimensional).
pub fn random_target(rng: &mut ChaCha8Rng, q: usize) -> AffineMonoid {
    if rng.gen_bool(0.3) {
        return orthant(q);
    }
    let cone = random_cone_of_rank(rng, q, 3, None);
    ToricChart::from_cone(cone).unwrap().dual_monoid().clone()
}

/// A random element of `m`: a small nonnegative combination of generators.
pub fn random_element(rng: &mut ChaCha8Rng, m: &AffineMonoid) -> IntVector {
    let n = m.ambient_rank();
    let mut v = vec![Int::from(0); n];
    for g in m.generators() {
        let c = rng.gen_range(0..=2);
        for j in 0..n {
            v[j] += Int::from(c) * &g[j];
        }
    }
    v
}

/// A random element of `m` with small entries: a sum of one or two
/// generators.
pub fn random_sparse_element(rng: &mut ChaCha8Rng, m: &AffineMonoid) -> IntVector {
    let gens = m.generators();
    let n = m.ambient_rank();
    if gens.is_empty() {
        return vec![Int::from(0); n];
    }
    let mut v = gens[rng.gen_range(0..gens.len())].clone();
    if rng.gen_bool(0.5) {
        let g = &gens[rng.gen_range(0..gens.len())];
        for j in 0..n {
            v[j] += &g[j];
        }
    }
    v
}

/// A random chart from `source` (contained in `N^p`) to a random target: the
/// standard basis vectors go to random target elements.
pub fn random_chart_from(rng: &mut ChaCha8Rng, source: &AffineMonoid, q: usize) -> MonoidChart {
    chart_with(rng, source, q, random_element)
}

/// Like [`random_chart_from`], with images from [`random_sparse_element`].
pub fn random_sparse_chart_from(rng: &mut ChaCha8Rng, source: &AffineMonoid, q: usize) -> MonoidChart {
    chart_with(rng, source, q, random_sparse_element)
}

fn chart_with(
    rng: &mut ChaCha8Rng,
    source: &AffineMonoid,
    q: usize,
    element: fn(&mut ChaCha8Rng, &AffineMonoid) -> IntVector,
) -> MonoidChart {
    let target = random_target(rng, q);
    let p = source.ambient_rank();
    let columns: Vec<IntVector> = (0..p).map(|_| element(rng, &target)).collect();
    let map = LatticeMap::from_columns(q, &columns).unwrap();
    MonoidChart::new(source.clone(), target, map).unwrap()
}

pub fn random_chart(rng: &mut ChaCha8Rng, max_rank: usize) -> MonoidChart {
    let p = rng.gen_range(1..=max_rank);
    let q = rng.gen_range(1..=max_rank);
    let source = random_source(rng, p);
    random_chart_from(rng, &source, q)
}

/// A random pair `(θ, φ)` over the same source with `θ` dominant.
pub fn random_base_change_pair(rng: &mut ChaCha8Rng, max_rank: usize) -> (MonoidChart, MonoidChart) {
    pair_with(rng, max_rank, random_chart_from)
}

/// Like [`random_base_change_pair`], with images from [`random_sparse_element`].
pub fn random_sparse_pair(rng: &mut ChaCha8Rng, max_rank: usize) -> (MonoidChart, MonoidChart) {
    pair_with(rng, max_rank, random_sparse_chart_from)
}

fn pair_with(
    rng: &mut ChaCha8Rng,
    max_rank: usize,
    chart: fn(&mut ChaCha8Rng, &AffineMonoid, usize) -> MonoidChart,
) -> (MonoidChart, MonoidChart) {
    loop {
        let p = rng.gen_range(1..=max_rank);
        let source = random_source(rng, p);
        let q = rng.gen_range(source.rank().max(1)..=max_rank);
        let theta = chart(rng, &source, q);
        if !theta.is_dominant() {
            continue;
        }
        let p2 = rng.gen_range(1..=max_rank);
        let phi = chart(rng, &source, p2);
        return (theta, phi);
    }
}

pub fn shuffled<T: Clone>(rng: &mut ChaCha8Rng, xs: &[T]) -> Vec<T> {
    let mut v = xs.to_vec();
    v.shuffle(rng);
    v
}
