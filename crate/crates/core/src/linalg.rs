//! Exact Gaussian elimination over the rationals.

use num_traits::{Signed, Zero};

use crate::poly::Rat;

/// Solves `a · x = b` exactly. Returns one solution (free variables set to zero),
/// or `None` when the system is inconsistent.
///
/// Pivots are chosen by largest absolute value in the column; ties go to the
/// lowest row index.
pub fn solve(mut a: Vec<Vec<Rat>>, mut b: Vec<Rat>) -> Option<Vec<Rat>> {
    let rows = a.len();
    assert_eq!(rows, b.len(), "right-hand side length must match row count");
    let cols = a.first().map_or(0, Vec::len);
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let mut best: Option<usize> = None;
        for i in r..rows {
            if a[i][c].is_zero() {
                continue;
            }
            match best {
                Some(j) if a[j][c].abs() >= a[i][c].abs() => {}
                _ => best = Some(i),
            }
        }
        let Some(p) = best else { continue };
        a.swap(r, p);
        b.swap(r, p);
        let inv = a[r][c].recip();
        for v in a[r][c..].iter_mut() {
            *v *= &inv;
        }
        b[r] *= &inv;
        let pivot_row = a[r][c..].to_vec();
        for i in 0..rows {
            if i == r || a[i][c].is_zero() {
                continue;
            }
            let factor = a[i][c].clone();
            for (v, p) in a[i][c..].iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &factor * p;
                }
            }
            let delta = &factor * &b[r];
            b[i] -= delta;
        }
        pivot_cols.push(c);
        r += 1;
    }
    if b[r..].iter().any(|v| !v.is_zero()) {
        return None;
    }
    let mut x = vec![Rat::zero(); cols];
    for (row, &c) in pivot_cols.iter().enumerate() {
        x[c] = b[row].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{int, rat};

    #[test]
    fn unique_solution() {
        let a = vec![vec![int(2), int(1)], vec![int(1), int(3)]];
        let x = solve(a, vec![int(3), int(5)]).unwrap();
        assert_eq!(x, vec![rat(4, 5), rat(7, 5)]);
    }

    #[test]
    fn inconsistent_system() {
        let a = vec![vec![int(1), int(1)], vec![int(2), int(2)]];
        assert!(solve(a, vec![int(1), int(3)]).is_none());
    }

    #[test]
    fn underdetermined_system() {
        let a = vec![vec![int(1), int(1), int(0)]];
        let x = solve(a.clone(), vec![int(4)]).unwrap();
        let lhs: Rat = a[0].iter().zip(&x).map(|(p, q)| p * q).sum();
        assert_eq!(lhs, int(4));
    }

    #[test]
    fn empty_columns() {
        let a = vec![vec![], vec![]];
        assert!(solve(a.clone(), vec![int(0), int(0)]).is_some());
        assert!(solve(a, vec![int(0), int(1)]).is_none());
    }
}
