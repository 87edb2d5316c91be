//! Dense exact linear algebra over the rationals.

use num_traits::{One, Zero};

use crate::arith::{QVector, Rational};

/// Reduced row echelon form. Returns the reduced matrix and its pivot columns.
pub fn rref(rows: &[QVector], ncols: usize) -> (Vec<QVector>, Vec<usize>) {
    let mut m: Vec<QVector> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank(rows: &[QVector], ncols: usize) -> usize {
    rref(rows, ncols).1.len()
}

/// A basis of `{x : rows · x = 0}`, one vector per free column.
pub fn nullspace(rows: &[QVector], ncols: usize) -> Vec<QVector> {
    let (m, pivots) = rref(rows, ncols);
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rational::zero(); ncols];
        v[free] = Rational::one();
        for (row, &p) in m.iter().zip(&pivots) {
            v[p] = -row[free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Solves `a · x = b`. Returns `None` for an inconsistent system; free variables are set to zero.
pub fn solve(a: &[QVector], b: &[Rational], ncols: usize) -> Option<QVector> {
    let augmented: Vec<QVector> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let (m, pivots) = rref(&augmented, ncols + 1);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![Rational::zero(); ncols];
    for (row, &p) in m.iter().zip(&pivots) {
        x[p] = row[ncols].clone();
    }
    Some(x)
}

/// Inverse of a square matrix, `None` if singular.
pub fn inverse(a: &[QVector]) -> Option<Vec<QVector>> {
    let n = a.len();
    let augmented: Vec<QVector> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| {
                if i == j {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            }));
            r
        })
        .collect();
    let (m, pivots) = rref(&augmented, 2 * n);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(m.into_iter().map(|row| row[n..].to_vec()).collect())
}

pub fn mat_vec(a: &[QVector], x: &[Rational]) -> QVector {
    a.iter().map(|row| crate::arith::dot_q(row, x)).collect()
}

pub fn transpose(a: &[QVector], ncols: usize) -> Vec<QVector> {
    (0..ncols)
        .map(|c| a.iter().map(|row| row[c].clone()).collect())
        .collect()
}

/// Dimension of the affine hull of a nonempty point set.
pub fn affine_dimension(points: &[QVector]) -> usize {
    let Some(first) = points.first() else {
        return 0;
    };
    let diffs: Vec<QVector> = points[1..]
        .iter()
        .map(|p| crate::arith::sub_q(p, first))
        .collect();
    rank(&diffs, first.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{frac, qvec, rat};

    #[test]
    fn solve_and_inverse_agree() {
        let a = vec![qvec(&[2, 1]), qvec(&[1, 3])];
        let x = solve(&a, &[rat(1), rat(2)], 2).unwrap();
        assert_eq!(x, vec![frac(1, 5), frac(3, 5)]);
        let inv = inverse(&a).unwrap();
        assert_eq!(mat_vec(&inv, &[rat(1), rat(2)]), x);
    }

    #[test]
    fn nullspace_of_rank_deficient_matrix() {
        let a = vec![qvec(&[1, 1, 0]), qvec(&[2, 2, 0])];
        let ns = nullspace(&a, 3);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(mat_vec(&a, v).iter().all(|x| x.is_zero()));
        }
        assert!(solve(&a, &[rat(1), rat(3)], 3).is_none());
        assert!(inverse(&[qvec(&[1, 2]), qvec(&[2, 4])]).is_none());
    }

    #[test]
    fn affine_dimension_of_segment_in_plane() {
        let pts = vec![qvec(&[0, 0]), qvec(&[1, 1]), qvec(&[2, 2])];
        assert_eq!(affine_dimension(&pts), 1);
    }
}
