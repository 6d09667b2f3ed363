//! Incremental double description.
//!
//! Computes the extreme rays and the lineality space of `{y : <a, y> >= 0}`
//! for a list of constraint vectors `a`, adding one constraint at a time in
//! input order. Adjacency of two rays is decided algebraically: they span a
//! two-dimensional face exactly when the constraints tight at both have rank
//! `n - dim(lineality) - 2`.

use num_traits::{Signed, Zero};

use crate::lattice::exact::rank_fraction_free;
use crate::lattice::vector::{self, dot, is_zero, primitive, Int, IntVector};

pub struct DoubleDescription {
    pub rays: Vec<IntVector>,
    pub lineality: Vec<IntVector>,
}

pub fn double_description(n: usize, constraints: &[IntVector]) -> DoubleDescription {
    let mut lineality: Vec<IntVector> = (0..n).map(|i| vector::unit(n, i)).collect();
    let mut rays: Vec<IntVector> = Vec::new();
    let mut processed: Vec<&IntVector> = Vec::new();

    for a in constraints {
        if let Some(idx) = lineality.iter().position(|l| !dot(a, l).is_zero()) {
            let mut pivot = lineality.remove(idx);
            if dot(a, &pivot).is_negative() {
                pivot = vector::neg(&pivot);
            }
            let s = dot(a, &pivot);
            for l in lineality.iter_mut() {
                let t = dot(a, l);
                if !t.is_zero() {
                    *l = primitive(&vector::combine(&s, l, &t, &pivot));
                }
            }
            for r in rays.iter_mut() {
                let t = dot(a, r);
                if !t.is_zero() {
                    *r = primitive(&vector::combine(&s, r, &t, &pivot));
                }
            }
            rays.push(pivot);
        } else {
            let values: Vec<Int> = rays.iter().map(|r| dot(a, r)).collect();
            let target_rank = n.saturating_sub(lineality.len() + 2);
            let mut next: Vec<IntVector> = Vec::new();
            for (r, v) in rays.iter().zip(&values) {
                if !v.is_negative() {
                    next.push(r.clone());
                }
            }
            for (p, vp) in rays.iter().zip(&values) {
                if !vp.is_positive() {
                    continue;
                }
                for (q, vq) in rays.iter().zip(&values) {
                    if !vq.is_negative() {
                        continue;
                    }
                    let common: Vec<IntVector> = processed
                        .iter()
                        .filter(|c| dot(c, p).is_zero() && dot(c, q).is_zero())
                        .map(|c| (*c).clone())
                        .collect();
                    if rank_fraction_free(&common) != target_rank {
                        continue;
                    }
                    // vp > 0 > vq, so vp*q - vq*p is a positive combination
                    let combined = primitive(&vector::combine(vp, q, vq, p));
                    if !is_zero(&combined) {
                        next.push(combined);
                    }
                }
            }
            next.sort();
            next.dedup();
            rays = next;
        }
        processed.push(a);
    }
    DoubleDescription { rays, lineality }
}
