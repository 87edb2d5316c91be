//! Seeded generators for test corpora: reflexive and almost reflexive polytopes, rational
//! dilates, random rational polytopes and Q-nef-partitions.

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{frac, rat, QVector, Rational};
use crate::classify::reflexive_polygon_classes;
use crate::nef::{is_q_nef_partition, MinkowskiPartition};
use crate::polytope::{Lattice, RationalPolytope};
use crate::reflexivity::{bullet_dual, is_reflexive};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Representatives of the 16 unimodular classes of reflexive polygons.
pub fn reflexive_polygons() -> Vec<RationalPolytope> {
    reflexive_polygon_classes(2).expect("enumerated polygons are lattice polygons")
}

fn random_integer_points(rng: &mut ChaCha8Rng, d: usize, count: usize, bound: i64) -> Vec<QVector> {
    (0..count)
        .map(|_| {
            (0..d)
                .map(|_| rat(rng.random_range(-bound..=bound)))
                .collect()
        })
        .collect()
}

/// Iterates `P ↦ P••` from a random lattice polytope until it stabilizes. The limit is
/// almost reflexive; `None` when the origin leaves the interior on the way.
pub fn random_almost_reflexive(rng: &mut ChaCha8Rng, d: usize) -> Option<RationalPolytope> {
    let count = rng.random_range(d + 1..=2 * d + 2);
    let pts = random_integer_points(rng, d, count, 1);
    let mut p = RationalPolytope::convex_hull(&pts, d, Lattice::M).ok()?;
    for _ in 0..16 {
        if !p.origin_in_interior() {
            return None;
        }
        let once = bullet_dual(&p).ok()?;
        if !once.origin_in_interior() {
            return None;
        }
        let twice = bullet_dual(&once).ok()?;
        if twice == p {
            return Some(p);
        }
        p = twice;
    }
    None
}

/// A random reflexive polytope of dimension `d`, by rejection.
pub fn random_reflexive(rng: &mut ChaCha8Rng, d: usize) -> RationalPolytope {
    loop {
        if let Some(p) = random_almost_reflexive(rng, d) {
            if is_reflexive(&p) {
                return p;
            }
        }
    }
}

/// Dilates used to produce rational, generally non-reflexive inputs.
pub fn dilation_factors() -> Vec<Rational> {
    vec![
        frac(1, 2),
        frac(2, 3),
        frac(3, 4),
        frac(5, 4),
        frac(3, 2),
        rat(2),
    ]
}

/// A random full-dimensional polytope with rational coordinates in `[-bound, bound]` and the
/// origin in its interior.
pub fn random_rational_polytope(rng: &mut ChaCha8Rng, d: usize, bound: i64) -> RationalPolytope {
    loop {
        let count = rng.random_range(d + 1..=d + 5);
        let pts: Vec<QVector> = (0..count)
            .map(|_| {
                (0..d)
                    .map(|_| {
                        let q = rng.random_range(1..=3i64);
                        frac(rng.random_range(-bound * q..=bound * q), q)
                    })
                    .collect()
            })
            .collect();
        let p = RationalPolytope::convex_hull(&pts, d, Lattice::M).expect("points have rank d");
        if p.origin_in_interior() {
            return p;
        }
    }
}

/// Splits the vertices of `Δ*` into `r` nonempty groups `E_i` and sets
/// `Δ_i = {x : <x, v> >= -[v in E_i] for every vertex v of Δ*}`. Returns the partition when it
/// sums to `Δ` and is a Q-nef-partition.
pub fn vertex_split_partition(
    rng: &mut ChaCha8Rng,
    total: &RationalPolytope,
    r: usize,
) -> Option<MinkowskiPartition> {
    let dual = total.polar_dual().ok()?;
    let vertices = dual.vertices();
    if vertices.len() < r {
        return None;
    }
    let mut labels: Vec<usize> = (0..vertices.len()).map(|i| i % r).collect();
    labels.shuffle(rng);
    let parts: Vec<RationalPolytope> = (0..r)
        .map(|i| {
            let halfspaces: Vec<(QVector, Rational)> = vertices
                .iter()
                .zip(&labels)
                .map(|(v, &l)| {
                    let offset = if l == i {
                        -Rational::one()
                    } else {
                        Rational::zero()
                    };
                    (v.clone(), offset)
                })
                .collect();
            RationalPolytope::from_halfspaces(&halfspaces, total.rank(), total.lattice())
        })
        .collect::<crate::Result<_>>()
        .ok()?;
    let partition = MinkowskiPartition::new(parts).ok()?;
    (partition.total() == total && is_q_nef_partition(&partition)).then_some(partition)
}

/// `(Δ × 0) + (0 × Δ')`, concatenating the parts of two partitions.
pub fn product_partition(a: &MinkowskiPartition, b: &MinkowskiPartition) -> MinkowskiPartition {
    let za = zero(a.rank(), a.lattice());
    let zb = zero(b.rank(), b.lattice());
    let mut parts: Vec<RationalPolytope> = a
        .parts()
        .iter()
        .map(|p| p.product(&zb).expect("same lattice"))
        .collect();
    parts.extend(
        b.parts()
            .iter()
            .map(|p| za.product(p).expect("same lattice")),
    );
    MinkowskiPartition::new(parts).expect("parts share the rank")
}

pub fn zero(rank: usize, lattice: Lattice) -> RationalPolytope {
    RationalPolytope::convex_hull(&[vec![Rational::zero(); rank]], rank, lattice)
        .expect("one point of the right rank")
}

fn segment(rank: usize, axis: usize) -> RationalPolytope {
    let mut a = vec![Rational::zero(); rank];
    let mut b = a.clone();
    a[axis] = -Rational::one();
    b[axis] = Rational::one();
    RationalPolytope::convex_hull(&[a, b], rank, Lattice::M).expect("two points of rank")
}

/// `[-1,1] × {0} + {0} × [-1,1]`.
pub fn square_partition() -> MinkowskiPartition {
    MinkowskiPartition::new(vec![segment(2, 0), segment(2, 1)]).expect("segments")
}

/// `diamond × {0} + {0} × diamond` in rank 4.
pub fn diamond_product_partition() -> MinkowskiPartition {
    let diamond = RationalPolytope::convex_hull(
        &[
            crate::arith::qvec(&[1, 0]),
            crate::arith::qvec(&[-1, 0]),
            crate::arith::qvec(&[0, 1]),
            crate::arith::qvec(&[0, -1]),
        ],
        2,
        Lattice::M,
    )
    .expect("diamond");
    let single = MinkowskiPartition::new(vec![diamond]).expect("one part");
    product_partition(&single, &single)
}

/// At least `count` Q-nef-partitions of dimension at most 4 with at most 3 parts: the square
/// partition, the rank-4 diamond product, 2-part polygon splits, products of `[-1, 1]` with
/// polygon partitions, then random splits of 3- and 4-dimensional reflexive polytopes.
pub fn partition_corpus(seed: u64, count: usize) -> Vec<MinkowskiPartition> {
    let mut rng = rng(seed);
    let mut out = vec![square_partition(), diamond_product_partition()];
    let polygons = reflexive_polygons();
    let mut two_d: Vec<MinkowskiPartition> = Vec::new();
    for p in &polygons {
        two_d.push(MinkowskiPartition::new(vec![p.clone()]).expect("one part"));
        for _ in 0..6 {
            if let Some(part) = vertex_split_partition(&mut rng, p, 2) {
                if !two_d.contains(&part) {
                    two_d.push(part);
                }
            }
        }
    }
    out.extend(two_d.iter().filter(|p| p.len() == 2).cloned());
    let interval = MinkowskiPartition::new(vec![segment(1, 0)]).expect("one part");
    let mut three_d = two_d.clone();
    three_d.shuffle(&mut rng);
    out.extend(
        three_d
            .iter()
            .take(12)
            .map(|p| product_partition(&interval, p)),
    );
    let mut attempts = 0;
    while out.len() < count && attempts < 40 * count {
        attempts += 1;
        let d = rng.random_range(3..=4);
        let total = random_reflexive(&mut rng, d);
        let r = rng.random_range(2..=3);
        if let Some(part) = vertex_split_partition(&mut rng, &total, r) {
            if !out.contains(&part) {
                out.push(part);
            }
        }
        if out.len() < count && rng.random_bool(0.3) {
            let a = &two_d[rng.random_range(0..two_d.len())];
            let b = &two_d[rng.random_range(0..two_d.len())];
            if a.len() + b.len() <= 3 {
                let part = product_partition(a, b);
                if !out.contains(&part) {
                    out.push(part);
                }
            }
        }
    }
    out
}
