//! Exact rank, determinants and rational solves.
//!
//! These are deliberately independent of the Smith normal form code so that
//! rank computations can be cross-checked between the two routes.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::vector::{primitive, Int, IntVector};

/// Rank by fraction-free (Bareiss) elimination.
pub fn rank_fraction_free(rows: &[IntVector]) -> usize {
    let mut a: Vec<IntVector> = rows.to_vec();
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = Int::one();
    for col in 0..n {
        if rank == m {
            break;
        }
        let Some(p) = (rank..m).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for i in rank + 1..m {
            for j in col + 1..n {
                let v = (&a[rank][col] * &a[i][j] - &a[i][col] * &a[rank][j]) / &prev;
                a[i][j] = v;
            }
            a[i][col] = Int::zero();
        }
        prev = a[rank][col].clone();
        rank += 1;
    }
    rank
}

/// Determinant of a square matrix by Bareiss elimination.
pub fn determinant(rows: &[IntVector]) -> Int {
    let n = rows.len();
    if n == 0 {
        return Int::one();
    }
    let mut a: Vec<IntVector> = rows.to_vec();
    let mut sign = Int::one();
    let mut prev = Int::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(p) => {
                    a.swap(k, p);
                    sign = -sign;
                }
                None => return Int::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[k][k] * &a[i][j] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

fn to_rational(rows: &[IntVector]) -> Vec<Vec<BigRational>> {
    rows.iter()
        .map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect())
        .collect()
}

/// Inverse of a square integer matrix over the rationals, or `None` if it is
/// singular.
pub fn rational_inverse(rows: &[IntVector]) -> Option<Vec<Vec<BigRational>>> {
    let n = rows.len();
    let mut a = to_rational(rows);
    let mut inv: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigRational::one() } else { BigRational::zero() })
                .collect()
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&i| !a[i][col].is_zero())?;
        a.swap(col, p);
        inv.swap(col, p);
        let pivot = a[col][col].clone();
        for j in 0..n {
            a[col][j] = &a[col][j] / &pivot;
            inv[col][j] = &inv[col][j] / &pivot;
        }
        for i in 0..n {
            if i == col || a[i][col].is_zero() {
                continue;
            }
            let f = a[i][col].clone();
            for j in 0..n {
                let t = &f * &a[col][j];
                a[i][j] = &a[i][j] - t;
                let t = &f * &inv[col][j];
                inv[i][j] = &inv[i][j] - t;
            }
        }
    }
    Some(inv)
}

/// Inverse of a unimodular integer matrix; `None` if the matrix is singular
/// or its inverse is not integral.
pub fn integer_inverse(rows: &[IntVector]) -> Option<Vec<IntVector>> {
    let inv = rational_inverse(rows)?;
    inv.into_iter()
        .map(|r| {
            r.into_iter()
                .map(|x| x.is_integer().then(|| x.to_integer()))
                .collect::<Option<IntVector>>()
        })
        .collect()
}

/// Orthogonal projection of `v` onto the complement of the span of
/// `directions` (assumed linearly independent), scaled to a primitive integer
/// vector with the same orientation.
pub fn project_orthogonal(v: &[Int], directions: &[IntVector]) -> IntVector {
    if directions.is_empty() {
        return primitive(v);
    }
    let k = directions.len();
    let gram: Vec<IntVector> = (0..k)
        .map(|i| (0..k).map(|j| super::vector::dot(&directions[i], &directions[j])).collect())
        .collect();
    let inv = rational_inverse(&gram).expect("projection directions must be independent");
    let rhs: Vec<BigRational> = directions
        .iter()
        .map(|d| BigRational::from_integer(super::vector::dot(d, v)))
        .collect();
    let coeffs: Vec<BigRational> = (0..k)
        .map(|i| (0..k).map(|j| &inv[i][j] * &rhs[j]).sum())
        .collect();
    let projected: Vec<BigRational> = (0..v.len())
        .map(|c| {
            let correction: BigRational = (0..k)
                .map(|i| &coeffs[i] * BigRational::from_integer(directions[i][c].clone()))
                .sum();
            BigRational::from_integer(v[c].clone()) - correction
        })
        .collect();
    let denom = projected
        .iter()
        .fold(BigInt::one(), |acc, x| num_integer::lcm(acc, x.denom().clone()));
    let scaled: IntVector = projected
        .iter()
        .map(|x| (x * BigRational::from_integer(denom.clone())).to_integer())
        .collect();
    debug_assert!(denom.is_positive());
    primitive(&scaled)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::vector::vector;

    #[test]
    fn bareiss_rank_and_determinant() {
        let rows = vec![vector(&[1, 2, 3]), vector(&[2, 4, 6]), vector(&[0, 1, 1])];
        assert_eq!(rank_fraction_free(&rows), 2);
        assert_eq!(determinant(&rows), Int::zero());
        let rows = vec![vector(&[0, 1]), vector(&[1, 0])];
        assert_eq!(determinant(&rows), Int::from(-1));
        let rows = vec![vector(&[2, 1, 0]), vector(&[1, 3, 1]), vector(&[0, 1, 4])];
        assert_eq!(determinant(&rows), Int::from(18));
    }

    #[test]
    fn integer_inverse_of_unimodular() {
        let rows = vec![vector(&[1, 0]), vector(&[2, 1])];
        assert_eq!(integer_inverse(&rows), Some(vec![vector(&[1, 0]), vector(&[-2, 1])]));
        assert_eq!(integer_inverse(&[vector(&[2])]), None);
    }

    #[test]
    fn projection_removes_direction() {
        let p = project_orthogonal(&vector(&[1, 1]), &[vector(&[0, 1])]);
        assert_eq!(p, vector(&[1, 0]));
        let p = project_orthogonal(&vector(&[1, 0]), &[vector(&[1, 1])]);
        assert_eq!(p, vector(&[1, -1]));
    }
}
