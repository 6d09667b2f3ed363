//! Smith normal form by deterministic fraction-free row and column reduction.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::vector::{Int, IntVector};
use super::LatticeMap;

/// `left * original * right = diag(diagonal) padded with zeros`.
///
/// `diagonal` holds the nonzero elementary divisors, each dividing the next;
/// its length is the rank of the original map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub left: LatticeMap,
    pub diagonal: Vec<Int>,
    pub right: LatticeMap,
    /// Inverse of `left`, tracked alongside the row operations.
    pub left_inverse: LatticeMap,
}

impl SmithDecomposition {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }

    /// The diagonal matrix with the shape of the original map.
    pub fn padded_diagonal(&self) -> LatticeMap {
        let rows = self.left.target_rank();
        let cols = self.right.source_rank();
        let mut m = LatticeMap::zero(cols, rows);
        for (i, d) in self.diagonal.iter().enumerate() {
            m.entries[i][i] = d.clone();
        }
        m
    }
}

struct Reducer {
    a: Vec<IntVector>,
    u: Vec<IntVector>,
    u_inv: Vec<IntVector>,
    v: Vec<IntVector>,
}

impl Reducer {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap(i, j);
        self.u.swap(i, j);
        for row in &mut self.u_inv {
            row.swap(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for row in self.a.iter_mut().chain(self.v.iter_mut()) {
            row.swap(i, j);
        }
    }

    /// row_i -= q * row_t
    fn sub_row(&mut self, i: usize, t: usize, q: &Int) {
        for m in [&mut self.a, &mut self.u] {
            let src = m[t].clone();
            for (x, s) in m[i].iter_mut().zip(&src) {
                *x -= q * s;
            }
        }
        // column t of the inverse gains q * column i
        for row in &mut self.u_inv {
            let add = q * &row[i];
            row[t] += add;
        }
    }

    /// row_t += row_i
    fn add_row(&mut self, t: usize, i: usize) {
        for m in [&mut self.a, &mut self.u] {
            let src = m[i].clone();
            for (x, s) in m[t].iter_mut().zip(&src) {
                *x += s;
            }
        }
        for row in &mut self.u_inv {
            let sub = row[t].clone();
            row[i] -= sub;
        }
    }

    fn negate_row(&mut self, t: usize) {
        for m in [&mut self.a, &mut self.u] {
            for x in m[t].iter_mut() {
                *x = -&*x;
            }
        }
        for row in &mut self.u_inv {
            row[t] = -&row[t];
        }
    }

    /// col_j -= q * col_t
    fn sub_col(&mut self, j: usize, t: usize, q: &Int) {
        for row in self.a.iter_mut().chain(self.v.iter_mut()) {
            let s = q * &row[t];
            row[j] -= s;
        }
    }

    /// Smallest nonzero absolute value in the lower right block starting at
    /// `(t, t)`; ties go to the lexicographically first position.
    fn pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for (i, row) in self.a.iter().enumerate().skip(t) {
            for (j, x) in row.iter().enumerate().skip(t) {
                if x.is_zero() {
                    continue;
                }
                let better = match best {
                    None => true,
                    Some((bi, bj)) => x.abs() < self.a[bi][bj].abs(),
                };
                if better {
                    best = Some((i, j));
                }
            }
        }
        best
    }
}

fn identity(n: usize) -> Vec<IntVector> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Int::one() } else { Int::zero() }).collect())
        .collect()
}

/// Smith normal form of an integer matrix.
pub fn smith_normal_form(m: &LatticeMap) -> SmithDecomposition {
    let rows = m.target_rank();
    let cols = m.source_rank();
    let mut r = Reducer {
        a: m.entries.clone(),
        u: identity(rows),
        u_inv: identity(rows),
        v: identity(cols),
    };
    let mut diagonal = Vec::new();
    for t in 0..rows.min(cols) {
        while let Some((pi, pj)) = r.pivot(t) {
            r.swap_rows(t, pi);
            r.swap_cols(t, pj);
            let mut clean = true;
            for i in t + 1..rows {
                if r.a[i][t].is_zero() {
                    continue;
                }
                let q = r.a[i][t].div_floor(&r.a[t][t]);
                r.sub_row(i, t, &q);
                clean &= r.a[i][t].is_zero();
            }
            for j in t + 1..cols {
                if r.a[t][j].is_zero() {
                    continue;
                }
                let q = r.a[t][j].div_floor(&r.a[t][t]);
                r.sub_col(j, t, &q);
                clean &= r.a[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            let pivot = r.a[t][t].clone();
            let offender = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !r.a[i][j].is_multiple_of(&pivot)));
            match offender {
                Some(i) => r.add_row(t, i),
                None => break,
            }
        }
        if r.a[t][t].is_zero() {
            break;
        }
        if r.a[t][t].is_negative() {
            r.negate_row(t);
        }
        diagonal.push(r.a[t][t].clone());
    }
    SmithDecomposition {
        left: LatticeMap { source_rank: rows, target_rank: rows, entries: r.u },
        diagonal,
        right: LatticeMap { source_rank: cols, target_rank: cols, entries: r.v },
        left_inverse: LatticeMap { source_rank: rows, target_rank: rows, entries: r.u_inv },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::vector::vector;

    fn check(m: &LatticeMap) -> SmithDecomposition {
        let snf = smith_normal_form(m);
        let product = snf.left.compose(m).unwrap().compose(&snf.right).unwrap();
        assert_eq!(product, snf.padded_diagonal());
        assert_eq!(snf.left.compose(&snf.left_inverse).unwrap(), LatticeMap::identity(m.target_rank()));
        for w in snf.diagonal.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        snf
    }

    #[test]
    fn already_diagonal() {
        let m = LatticeMap::from_rows(1, vec![vector(&[6])]).unwrap();
        let snf = check(&m);
        assert_eq!(snf.diagonal, vec![Int::from(6)]);
        assert_eq!(snf.left, LatticeMap::identity(1));
        assert_eq!(snf.right, LatticeMap::identity(1));
    }

    #[test]
    fn gcd_row() {
        let m = LatticeMap::from_rows(2, vec![vector(&[2, -3])]).unwrap();
        assert_eq!(check(&m).diagonal, vec![Int::from(1)]);
        let m = LatticeMap::from_rows(2, vec![vector(&[2, -2])]).unwrap();
        assert_eq!(check(&m).diagonal, vec![Int::from(2)]);
    }

    #[test]
    fn divisibility_chain_is_restored() {
        // diag(2, 3) must become diag(1, 6)
        let m = LatticeMap::from_rows(2, vec![vector(&[2, 0]), vector(&[0, 3])]).unwrap();
        assert_eq!(check(&m).diagonal, vec![Int::from(1), Int::from(6)]);
        let m = LatticeMap::from_rows(
            3,
            vec![vector(&[4, 6, 2]), vector(&[6, 9, 3]), vector(&[2, 8, 10])],
        )
        .unwrap();
        check(&m);
    }

    #[test]
    fn zero_matrix() {
        let snf = check(&LatticeMap::zero(2, 2));
        assert!(snf.diagonal.is_empty());
    }
}
