//! Unimodular-equivalence normal forms and exhaustive enumeration of reflexive polygons.

use std::collections::BTreeMap;

use num_integer::Integer as _;
use num_traits::{Signed, Zero};

use crate::arith::{int, to_integer, to_rational, Integer, QVector, ZVector};
use crate::error::{Error, Result};
use crate::linalg;
use crate::polytope::{Lattice, RationalPolytope};
use crate::reflexivity::is_reflexive;

/// Row-style Hermite normal form of a nonsingular square integer matrix: `H = U A` with `U`
/// unimodular, `H` upper triangular, positive diagonal and `0 <= H[i][j] < H[j][j]` above it.
pub fn hermite_normal_form(a: &[ZVector]) -> Vec<ZVector> {
    let n = a.len();
    let mut h: Vec<ZVector> = a.to_vec();
    for col in 0..n {
        for row in col + 1..n {
            if h[row][col].is_zero() {
                continue;
            }
            let e = h[col][col].extended_gcd(&h[row][col]);
            let (g, s, t) = (e.gcd, e.x, e.y);
            let p = &h[col][col] / &g;
            let q = &h[row][col] / &g;
            let top: ZVector = (0..n).map(|k| &s * &h[col][k] + &t * &h[row][k]).collect();
            let bottom: ZVector = (0..n).map(|k| -&q * &h[col][k] + &p * &h[row][k]).collect();
            h[col] = top;
            h[row] = bottom;
        }
        if h[col][col].is_negative() {
            h[col] = h[col].iter().map(|x| -x).collect();
        }
        let pivot = h[col][col].clone();
        if pivot.is_zero() {
            continue;
        }
        for row in 0..col {
            let f = h[row][col].div_floor(&pivot);
            if !f.is_zero() {
                let sub: ZVector = h[col].iter().map(|x| &f * x).collect();
                for (x, y) in h[row].iter_mut().zip(sub) {
                    *x -= y;
                }
            }
        }
    }
    h
}

/// A normal form of a full-dimensional lattice polytope under `GL(d, Z)`: two polytopes are
/// unimodularly equivalent iff their normal forms are equal.
///
/// For every ordered basis `T` of vertices the unimodular map `U = HNF(T) T^{-1}` is applied to
/// all vertices; the lexicographically smallest sorted image is the normal form.
pub fn normal_form(p: &RationalPolytope) -> Result<Vec<ZVector>> {
    let d = p.rank();
    if !p.is_full_dimensional() {
        return Err(Error::Degenerate {
            dim: p.signed_dim(),
            rank: d,
        });
    }
    let vertices: Vec<ZVector> = p
        .vertices()
        .iter()
        .map(|v| to_integer(v).ok_or_else(|| Error::NotLattice(p.to_string())))
        .collect::<Result<_>>()?;
    let signatures = vertex_signatures(p);
    let best_signature = signatures.iter().min().cloned();
    let mut best: Option<Vec<ZVector>> = None;
    let mut tuple = Vec::with_capacity(d);
    search_bases(
        &vertices,
        &signatures,
        best_signature.as_ref(),
        d,
        &mut tuple,
        &mut best,
    );
    best.ok_or_else(|| Error::Degenerate {
        dim: p.signed_dim(),
        rank: d,
    })
}

/// A GL(d, Z)-invariant label per vertex: the sorted lattice distances from it to all facets.
fn vertex_signatures(p: &RationalPolytope) -> Vec<Vec<Integer>> {
    p.vertices()
        .iter()
        .map(|v| {
            let mut s: Vec<Integer> = p.facets().iter().map(|f| f.slack(v).to_integer()).collect();
            s.sort();
            s
        })
        .collect()
}

fn search_bases(
    vertices: &[ZVector],
    signatures: &[Vec<Integer>],
    first_signature: Option<&Vec<Integer>>,
    d: usize,
    tuple: &mut Vec<usize>,
    best: &mut Option<Vec<ZVector>>,
) {
    if tuple.len() == d {
        let a: Vec<ZVector> = tuple.iter().map(|&i| vertices[i].clone()).collect();
        if let Some(image) = image_under_basis(&a, vertices) {
            if best.as_ref().is_none_or(|b| image < *b) {
                *best = Some(image);
            }
        }
        return;
    }
    for i in 0..vertices.len() {
        if tuple.contains(&i) {
            continue;
        }
        if tuple.is_empty() && Some(&signatures[i]) != first_signature {
            continue;
        }
        tuple.push(i);
        let rows: Vec<QVector> = tuple.iter().map(|&j| to_rational(&vertices[j])).collect();
        if linalg::rank(&rows, d) == tuple.len() {
            search_bases(vertices, signatures, first_signature, d, tuple, best);
        }
        tuple.pop();
    }
}

/// Sorted images of `vertices` under `U = H A^{-T}`, where the rows of `a` are the basis
/// vectors and `H` is the Hermite form of the matrix with those vectors as columns.
fn image_under_basis(a: &[ZVector], vertices: &[ZVector]) -> Option<Vec<ZVector>> {
    let d = a.len();
    let columns: Vec<ZVector> = (0..d)
        .map(|i| a.iter().map(|r| r[i].clone()).collect())
        .collect();
    let h = hermite_normal_form(&columns);
    let cols_q: Vec<QVector> = columns.iter().map(|r| to_rational(r)).collect();
    let inv = linalg::inverse(&cols_q)?;
    let h_q: Vec<QVector> = h.iter().map(|r| to_rational(r)).collect();
    let u: Vec<QVector> = h_q
        .iter()
        .map(|row| {
            (0..d)
                .map(|j| (0..d).map(|k| &row[k] * &inv[k][j]).sum())
                .collect()
        })
        .collect();
    let mut image: Vec<ZVector> = vertices
        .iter()
        .map(|v| to_integer(&linalg::mat_vec(&u, &to_rational(v))))
        .collect::<Option<_>>()?;
    image.sort();
    Some(image)
}

/// Groups polytopes by unimodular equivalence. Returns one representative per class (the
/// normal form itself) together with the input indices of each class, ordered by normal form.
pub fn dedup_gl(polytopes: &[RationalPolytope]) -> Result<Vec<(RationalPolytope, Vec<usize>)>> {
    let Some(first) = polytopes.first() else {
        return Ok(Vec::new());
    };
    let mut classes: BTreeMap<Vec<ZVector>, Vec<usize>> = BTreeMap::new();
    for (i, p) in polytopes.iter().enumerate() {
        if p.rank() != first.rank() {
            return Err(Error::DimensionMismatch {
                expected: first.rank(),
                got: p.rank(),
            });
        }
        if !p.is_lattice_polytope() {
            return Err(Error::NotLattice(p.to_string()));
        }
        classes.entry(normal_form(p)?).or_default().push(i);
    }
    classes
        .into_iter()
        .map(|(form, members)| {
            let rep = RationalPolytope::from_lattice_points(
                &form,
                first.rank(),
                polytopes[members[0]].lattice(),
            )?;
            Ok((rep, members))
        })
        .collect()
}

/// Every reflexive polygon with vertices in `[-bound, bound]^2`, listed once each.
///
/// Vertices are walked counterclockwise from the lexicographically smallest one. Every edge
/// must lie on a line `<x, u> = -1` with integral `u`, which for consecutive vertices `a, b` is
/// `det(a, b) = gcd(b - a)`.
pub fn enumerate_reflexive_polygons(bound: i64) -> Vec<RationalPolytope> {
    let candidates: Vec<[i64; 2]> = (-bound..=bound)
        .flat_map(|x| (-bound..=bound).map(move |y| [x, y]))
        .filter(|&[x, y]| x.gcd(&y) == 1)
        .collect();
    let mut out = Vec::new();
    for &start in &candidates {
        let mut path = vec![start];
        let mut normals: Vec<[i64; 2]> = Vec::new();
        walk(&candidates, &mut path, &mut normals, &mut out);
    }
    out.sort_by(|a: &RationalPolytope, b| a.vertices().cmp(b.vertices()));
    out
}

fn det(a: [i64; 2], b: [i64; 2]) -> i64 {
    a[0] * b[1] - a[1] * b[0]
}

/// The integral `u` with `<a, u> = <b, u> = -1`, if the edge is at lattice distance 1.
fn edge_normal(a: [i64; 2], b: [i64; 2]) -> Option<[i64; 2]> {
    let dt = det(a, b);
    let g = (b[0] - a[0]).gcd(&(b[1] - a[1]));
    (dt > 0 && dt == g).then(|| [(a[1] - b[1]) / dt, (b[0] - a[0]) / dt])
}

fn pair(x: [i64; 2], u: [i64; 2]) -> i64 {
    x[0] * u[0] + x[1] * u[1]
}

fn walk(
    candidates: &[[i64; 2]],
    path: &mut Vec<[i64; 2]>,
    normals: &mut Vec<[i64; 2]>,
    out: &mut Vec<RationalPolytope>,
) {
    let start = path[0];
    let last = *path.last().expect("path is nonempty");
    for &next in candidates {
        let closing = next == start;
        if !closing && (next <= start || path.contains(&next)) {
            continue;
        }
        let Some(u) = edge_normal(last, next) else {
            continue;
        };
        if path.len() >= 2 {
            let prev = path[path.len() - 2];
            let turn = det(
                [last[0] - prev[0], last[1] - prev[1]],
                [next[0] - last[0], next[1] - last[1]],
            );
            if turn <= 0 {
                continue;
            }
        }
        // Earlier vertices lie strictly inside the new edge's halfplane and the new vertex
        // strictly inside every earlier edge's halfplane.
        let others_inside = path[..path.len() - 1]
            .iter()
            .filter(|&&x| !(closing && x == start))
            .all(|&x| pair(x, u) > -1);
        let next_inside = normals
            .iter()
            .enumerate()
            .all(|(k, &w)| (closing && k == 0) || pair(next, w) > -1);
        let interior_ok = others_inside && next_inside;
        if !interior_ok {
            continue;
        }
        if closing {
            if path.len() < 3 {
                continue;
            }
            let first_turn = det(
                [start[0] - last[0], start[1] - last[1]],
                [path[1][0] - start[0], path[1][1] - start[1]],
            );
            if first_turn <= 0 {
                continue;
            }
            let pts: Vec<ZVector> = path.iter().map(|p| vec![int(p[0]), int(p[1])]).collect();
            let polygon = RationalPolytope::from_lattice_points(&pts, 2, Lattice::M)
                .expect("polygon points have rank 2");
            if polygon.vertices().len() == path.len() && is_reflexive(&polygon) {
                out.push(polygon);
            }
            continue;
        }
        path.push(next);
        normals.push(u);
        walk(candidates, path, normals, out);
        normals.pop();
        path.pop();
    }
}

/// Number of distinct unimodular classes among the reflexive polygons in the box.
pub fn reflexive_polygon_classes(bound: i64) -> Result<Vec<RationalPolytope>> {
    let all = enumerate_reflexive_polygons(bound);
    Ok(dedup_gl(&all)?.into_iter().map(|(rep, _)| rep).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{qvec, zvec};
    use crate::polytope::convex_hull;

    fn poly(pts: &[&[i64]]) -> RationalPolytope {
        let v: Vec<QVector> = pts.iter().map(|p| qvec(p)).collect();
        convex_hull(&v, pts[0].len()).unwrap()
    }

    #[test]
    fn hnf_is_canonical() {
        let a = vec![zvec(&[2, 1]), zvec(&[4, 5])];
        let h = hermite_normal_form(&a);
        assert_eq!(h, vec![zvec(&[2, 1]), zvec(&[0, 3])]);
        let b = vec![zvec(&[6, 6]), zvec(&[4, 5])];
        assert_eq!(hermite_normal_form(&b), h);
    }

    #[test]
    fn sheared_square_is_equivalent() {
        let square = poly(&[&[1, 1], &[1, -1], &[-1, 1], &[-1, -1]]);
        let sheared = poly(&[&[1, 2], &[1, 0], &[-1, 0], &[-1, -2]]);
        let classes = dedup_gl(&[square.clone(), sheared]).unwrap();
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[0].1, vec![0, 1]);
        let diamond = poly(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]]);
        assert_eq!(dedup_gl(&[square, diamond]).unwrap().len(), 2);
    }

    #[test]
    fn non_lattice_input_is_rejected() {
        let p = convex_hull(&[qvec(&[1, 0]), qvec(&[0, 1]), qvec(&[-1, -1])], 2)
            .unwrap()
            .scale(&crate::arith::frac(1, 2));
        assert!(matches!(dedup_gl(&[p]), Err(Error::NotLattice(_))));
    }

    #[test]
    fn sixteen_reflexive_polygons() {
        assert_eq!(reflexive_polygon_classes(2).unwrap().len(), 16);
    }
}
