//! Brute-force oracles that share no code with the library's hull, dual and lattice-point
//! routines. They work directly on the raw point sets.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Row reduction returning a basis of the nullspace of `rows` (each of length `n`).
pub fn nullspace(rows: &[Vec<Q>], n: usize) -> Vec<Vec<Q>> {
    let mut m: Vec<Vec<Q>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let pivot_row = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    (0..n)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![Q::zero(); n];
            v[free] = Q::one();
            for (k, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[k][free].clone();
            }
            v
        })
        .collect()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn dedup_points(points: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    pts
}

/// Integer inequalities `a·x >= b` of the facets of `conv(points)`, which must be
/// full-dimensional: every hyperplane through `d` affinely independent points with all
/// points on one side.
pub fn facets(points: &[Vec<Q>], d: usize) -> Vec<(Vec<i128>, i128)> {
    let pts = dedup_points(points);
    let mut out: Vec<(Vec<i128>, i128)> = Vec::new();
    for s in subsets(pts.len(), d) {
        let rows: Vec<Vec<Q>> = s
            .iter()
            .map(|&i| {
                let mut r = pts[i].clone();
                r.push(-Q::one());
                r
            })
            .collect();
        let ns = nullspace(&rows, d + 1);
        if ns.len() != 1 {
            continue;
        }
        let v = &ns[0];
        if v[..d].iter().all(|x| x.is_zero()) {
            continue;
        }
        let (a, b) = (&v[..d], &v[d]);
        let sides: Vec<Q> = pts.iter().map(|p| dot(a, p) - b).collect();
        let sign = if sides.iter().all(|x| !x.is_negative()) {
            1
        } else if sides.iter().all(|x| !x.is_positive()) {
            -1
        } else {
            continue;
        };
        let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let ints: Vec<BigInt> = v
            .iter()
            .map(|x| (x * Q::from_integer(lcm.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        let ints: Vec<i128> = ints
            .iter()
            .map(|x| {
                (x / &g * BigInt::from(sign))
                    .to_i128()
                    .expect("small coefficients")
            })
            .collect();
        let facet = (ints[..d].to_vec(), ints[d]);
        if !out.contains(&facet) {
            out.push(facet);
        }
    }
    out.sort();
    out
}

/// Lattice points of `conv(points)` by scanning the bounding box.
pub fn lattice_points(points: &[Vec<Q>], d: usize) -> Vec<Vec<BigInt>> {
    let fs = facets(points, d);
    let lo: Vec<i64> = (0..d)
        .map(|j| {
            points
                .iter()
                .map(|p| p[j].floor().to_integer())
                .min()
                .unwrap()
                .to_i64()
                .unwrap()
        })
        .collect();
    let hi: Vec<i64> = (0..d)
        .map(|j| {
            points
                .iter()
                .map(|p| p[j].ceil().to_integer())
                .max()
                .unwrap()
                .to_i64()
                .unwrap()
        })
        .collect();
    let mut out = Vec::new();
    let mut x: Vec<i64> = lo.clone();
    loop {
        let inside = fs.iter().all(|(a, b)| {
            a.iter()
                .zip(&x)
                .map(|(ai, xi)| ai * i128::from(*xi))
                .sum::<i128>()
                >= *b
        });
        if inside {
            out.push(x.iter().map(|&v| BigInt::from(v)).collect());
        }
        let mut k = d;
        loop {
            if k == 0 {
                out.sort();
                return out;
            }
            k -= 1;
            if x[k] < hi[k] {
                x[k] += 1;
                x[k + 1..d].copy_from_slice(&lo[k + 1..d]);
                break;
            }
        }
    }
}

/// Vertices of `{n : <p, n> >= -1 for all p}`: the solutions of `<p, n> = -1` over `d`
/// linearly independent input points that satisfy every other constraint.
pub fn polar_dual_vertices(points: &[Vec<Q>], d: usize) -> Vec<Vec<Q>> {
    let pts = dedup_points(points);
    let mut out: Vec<Vec<Q>> = Vec::new();
    for s in subsets(pts.len(), d) {
        let rows: Vec<Vec<Q>> = s
            .iter()
            .map(|&i| {
                let mut r = pts[i].clone();
                r.push(Q::one());
                r
            })
            .collect();
        let ns = nullspace(&rows, d + 1);
        if ns.len() != 1 || ns[0][d].is_zero() {
            continue;
        }
        let t = ns[0][d].clone();
        let n: Vec<Q> = ns[0][..d].iter().map(|x| x / &t).collect();
        if pts.iter().all(|p| dot(p, &n) >= -Q::one()) && !out.contains(&n) {
            out.push(n);
        }
    }
    out.sort();
    out
}

/// Whether the origin is strictly inside every facet of `conv(points)`.
pub fn origin_interior(points: &[Vec<Q>], d: usize) -> bool {
    let fs = facets(points, d);
    !fs.is_empty() && fs.iter().all(|(_, b)| *b < 0)
}
