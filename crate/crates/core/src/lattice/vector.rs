//! Integer vectors and the small amount of arithmetic the rest of the crate
//! needs on them.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Arbitrary precision integer used throughout the crate.
pub type Int = BigInt;

/// A lattice vector in `Z^n`.
pub type IntVector = Vec<Int>;

/// Builds a vector from machine integers.
pub fn vector(entries: &[i64]) -> IntVector {
    entries.iter().map(|&x| Int::from(x)).collect()
}

pub fn zero(n: usize) -> IntVector {
    vec![Int::zero(); n]
}

pub fn unit(n: usize, i: usize) -> IntVector {
    let mut v = zero(n);
    v[i] = Int::from(1);
    v
}

pub fn is_zero(v: &[Int]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn dot(a: &[Int], b: &[Int]) -> Int {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn add(a: &[Int], b: &[Int]) -> IntVector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Int], b: &[Int]) -> IntVector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn neg(a: &[Int]) -> IntVector {
    a.iter().map(|x| -x).collect()
}

pub fn scale(k: &Int, a: &[Int]) -> IntVector {
    a.iter().map(|x| k * x).collect()
}

/// `p * a - q * b`, the combination used by elimination steps.
pub fn combine(p: &Int, a: &[Int], q: &Int, b: &[Int]) -> IntVector {
    a.iter().zip(b).map(|(x, y)| p * x - q * y).collect()
}

/// Nonnegative gcd of the entries; zero for the zero vector.
pub fn content(v: &[Int]) -> Int {
    v.iter().fold(Int::zero(), |g, x| g.gcd(x))
}

/// Divides by the content. The zero vector is returned unchanged.
pub fn primitive(v: &[Int]) -> IntVector {
    let g = content(v);
    if g.is_zero() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

fn abs_sum(v: &[Int]) -> Int {
    v.iter().map(Signed::abs).sum()
}

/// Graded lexicographic order: first by the sum of absolute values of the
/// entries, then lexicographically.
pub fn graded_lex(a: &[Int], b: &[Int]) -> Ordering {
    abs_sum(a).cmp(&abs_sum(b)).then_with(|| a.cmp(b))
}

/// Sorts in graded lexicographic order and removes duplicates.
pub fn sort_dedup(vs: &mut Vec<IntVector>) {
    vs.sort_by(|a, b| graded_lex(a, b));
    vs.dedup();
}

pub fn format_vector(v: &[Int]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

pub fn format_vectors(vs: &[IntVector]) -> String {
    let parts: Vec<String> = vs.iter().map(|v| format_vector(v)).collect();
    format!("{{{}}}", parts.join(", "))
}
