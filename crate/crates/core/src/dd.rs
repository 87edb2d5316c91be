//! Double description method: generators of `{y : <row, y> >= 0 for every row}`.
//!
//! All arithmetic is on primitive integer vectors. The lineality space is split off first and the
//! pointed part is built inside its orthogonal complement, so the extreme rays returned are
//! canonical (unique up to the positive scaling removed by primitivization).

use fixedbitset::FixedBitSet;
use num_traits::{Signed, Zero};

use crate::arith::{dot_z, primitive, primitive_direction, to_rational, Integer, QVector, ZVector};
use crate::linalg;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub(crate) struct ConeGenerators {
    /// Basis of the lineality space, in reduced echelon form scaled to primitive integers.
    pub lineality: Vec<ZVector>,
    /// Extreme rays of the pointed part, lexicographically sorted.
    pub rays: Vec<ZVector>,
}

struct Ray {
    v: ZVector,
    zeros: FixedBitSet,
}

pub(crate) fn cone_generators(rows: &[ZVector], dim: usize) -> ConeGenerators {
    let rows: Vec<ZVector> = rows
        .iter()
        .filter(|r| !r.iter().all(|x| x.is_zero()))
        .cloned()
        .collect();
    let rows_q: Vec<QVector> = rows.iter().map(|r| to_rational(r)).collect();

    let kernel = linalg::nullspace(&rows_q, dim);
    let lineality: Vec<ZVector> = if kernel.is_empty() {
        Vec::new()
    } else {
        linalg::rref(&kernel, dim)
            .0
            .iter()
            .map(|v| primitive_direction(v))
            .collect()
    };

    // Greedy maximal independent subset of the rows.
    let mut basis_rows: Vec<usize> = Vec::new();
    let mut echelon: Vec<QVector> = Vec::new();
    for (i, r) in rows_q.iter().enumerate() {
        let mut trial = echelon.clone();
        trial.push(r.clone());
        let (reduced, _) = linalg::rref(&trial, dim);
        if reduced.len() > echelon.len() {
            echelon = reduced;
            basis_rows.push(i);
        }
        if echelon.len() + lineality.len() == dim {
            break;
        }
    }
    let k = basis_rows.len();
    if k == 0 {
        return ConeGenerators {
            lineality,
            rays: Vec::new(),
        };
    }

    // Initial simplicial cone inside the row space: B r_i = e_i with r_i = B^T z_i.
    let b: Vec<QVector> = basis_rows.iter().map(|&i| rows_q[i].clone()).collect();
    let gram: Vec<QVector> = b
        .iter()
        .map(|x| b.iter().map(|y| crate::arith::dot_q(x, y)).collect())
        .collect();
    let gram_inv = linalg::inverse(&gram).expect("independent rows have an invertible Gram matrix");
    let m = rows.len();
    let mut rays: Vec<Ray> = (0..k)
        .map(|i| {
            let mut v = vec![crate::arith::Rational::zero(); dim];
            for (j, row) in b.iter().enumerate() {
                let c = &gram_inv[j][i];
                if !c.is_zero() {
                    for (x, y) in v.iter_mut().zip(row) {
                        *x += c * y;
                    }
                }
            }
            let mut zeros = FixedBitSet::with_capacity(m);
            for (j, &row_idx) in basis_rows.iter().enumerate() {
                if j != i {
                    zeros.insert(row_idx);
                }
            }
            Ray {
                v: primitive_direction(&v),
                zeros,
            }
        })
        .collect();

    let mut processed = FixedBitSet::with_capacity(m);
    for &i in &basis_rows {
        processed.insert(i);
    }

    for (t, a) in rows.iter().enumerate() {
        if processed.contains(t) {
            continue;
        }
        let values: Vec<Integer> = rays.iter().map(|r| dot_z(a, &r.v)).collect();
        if values.iter().all(|v| !v.is_negative()) {
            for (r, v) in rays.iter_mut().zip(&values) {
                if v.is_zero() {
                    r.zeros.insert(t);
                }
            }
            processed.insert(t);
            continue;
        }
        let pos: Vec<usize> = (0..rays.len())
            .filter(|&i| values[i].is_positive())
            .collect();
        let neg: Vec<usize> = (0..rays.len())
            .filter(|&i| values[i].is_negative())
            .collect();

        let mut created: Vec<Ray> = Vec::new();
        for &p in &pos {
            for &n in &neg {
                let mut common = rays[p].zeros.clone();
                common.intersect_with(&rays[n].zeros);
                if k >= 2 && common.count_ones(..) < k - 2 {
                    continue;
                }
                let blocked = rays
                    .iter()
                    .enumerate()
                    .any(|(q, ray)| q != p && q != n && common.is_subset(&ray.zeros));
                if blocked {
                    continue;
                }
                let vp = &values[p];
                let vn = -&values[n];
                let v: ZVector = rays[n]
                    .v
                    .iter()
                    .zip(&rays[p].v)
                    .map(|(x, y)| vp * x + &vn * y)
                    .collect();
                let mut zeros = common;
                zeros.insert(t);
                created.push(Ray {
                    v: primitive(v),
                    zeros,
                });
            }
        }

        let mut next: Vec<Ray> = Vec::with_capacity(rays.len() + created.len());
        for (r, v) in rays.into_iter().zip(values) {
            if v.is_negative() {
                continue;
            }
            let mut r = r;
            if v.is_zero() {
                r.zeros.insert(t);
            }
            next.push(r);
        }
        next.extend(created);
        rays = next;
        processed.insert(t);
    }

    let mut out: Vec<ZVector> = rays.into_iter().map(|r| r.v).collect();
    out.sort();
    out.dedup();
    ConeGenerators {
        lineality,
        rays: out,
    }
}
