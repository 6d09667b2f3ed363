//! Row-style Hermite normal form, used as the canonical basis of a lattice.

use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::vector::{is_zero, IntVector};

/// Canonical echelon basis of the lattice generated by `rows`.
///
/// Pivots are positive, entries above a pivot lie in `[0, pivot)`, and zero
/// rows are dropped. Two generating sets give the same output exactly when
/// they generate the same lattice.
pub fn hermite_rows(rows: &[IntVector], width: usize) -> Vec<IntVector> {
    let mut a: Vec<IntVector> = rows.iter().filter(|r| !is_zero(r)).cloned().collect();
    let mut r = 0;
    for col in 0..width {
        if r == a.len() {
            break;
        }
        loop {
            let best = (r..a.len())
                .filter(|&i| !a[i][col].is_zero())
                .min_by(|&i, &j| a[i][col].abs().cmp(&a[j][col].abs()).then(i.cmp(&j)));
            let Some(p) = best else { break };
            a.swap(r, p);
            let mut done = true;
            for i in r + 1..a.len() {
                if a[i][col].is_zero() {
                    continue;
                }
                let q = a[i][col].div_floor(&a[r][col]);
                let pivot_row = a[r].clone();
                for (x, y) in a[i].iter_mut().zip(&pivot_row) {
                    *x -= &q * y;
                }
                done &= a[i][col].is_zero();
            }
            if done {
                break;
            }
        }
        if a[r][col].is_zero() {
            continue;
        }
        if a[r][col].is_negative() {
            for x in a[r].iter_mut() {
                *x = -&*x;
            }
        }
        for i in 0..r {
            let q = a[i][col].div_floor(&a[r][col]);
            if q.is_zero() {
                continue;
            }
            let pivot_row = a[r].clone();
            for (x, y) in a[i].iter_mut().zip(&pivot_row) {
                *x -= &q * y;
            }
        }
        r += 1;
    }
    a.truncate(r);
    a
}
