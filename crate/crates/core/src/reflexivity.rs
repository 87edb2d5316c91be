//! Reflexive, Q-reflexive and almost reflexive polytopes and the two duality operators
//! `P° = [P]*` and `P• = [P*]`.
//!
//! The predicates are total: degenerate input yields `false` and `classify` records a witness
//! for every flag that fails.

use std::fmt;

use serde::Serialize;

use crate::arith::{format_qvector, is_integral};
use crate::error::{Error, Result};
use crate::polytope::RationalPolytope;

/// Why a reflexivity flag is false.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "detail", rename_all = "snake_case")]
pub enum Witness {
    NotFullDimensional {
        dim: isize,
        rank: usize,
    },
    NonIntegralVertex(String),
    OriginNotInterior(String),
    InteriorLatticePoint(String),
    NonIntegralDualVertex(String),
    FacetWithoutLatticePoint(String),
    /// An equality of polytopes failed; both sides are recorded.
    EqualityFails {
        left: String,
        right: String,
    },
    DegenerateHull(String),
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::NotFullDimensional { dim, rank } => {
                write!(f, "dimension {dim} in rank {rank}")
            }
            Witness::NonIntegralVertex(v) => write!(f, "non-integral vertex {v}"),
            Witness::OriginNotInterior(h) => write!(f, "origin violates {h}"),
            Witness::InteriorLatticePoint(p) => write!(f, "interior lattice point {p}"),
            Witness::NonIntegralDualVertex(v) => write!(f, "dual vertex {v} is not integral"),
            Witness::FacetWithoutLatticePoint(h) => write!(f, "facet {h} has no lattice point"),
            Witness::EqualityFails { left, right } => write!(f, "{left} != {right}"),
            Witness::DegenerateHull(p) => {
                write!(f, "lattice hull {p} is not a full polytope around 0")
            }
        }
    }
}

/// Outcome of a single predicate.
pub type Verdict = std::result::Result<(), Witness>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReflexivityReport {
    pub is_lattice: bool,
    pub zero_interior: bool,
    pub is_canonical_fano: bool,
    pub is_reflexive: bool,
    pub is_q_reflexive: bool,
    pub is_almost_reflexive: bool,
    /// One entry per false flag, keyed by flag name.
    pub witnesses: Vec<(String, Witness)>,
}

impl ReflexivityReport {
    pub fn all_true(&self) -> bool {
        self.witnesses.is_empty()
    }
}

fn full_dimensional(p: &RationalPolytope) -> Verdict {
    if p.is_full_dimensional() {
        Ok(())
    } else {
        Err(Witness::NotFullDimensional {
            dim: p.signed_dim(),
            rank: p.rank(),
        })
    }
}

pub fn check_lattice(p: &RationalPolytope) -> Verdict {
    if p.is_empty() {
        return Err(Witness::NotFullDimensional {
            dim: -1,
            rank: p.rank(),
        });
    }
    match p.vertices().iter().find(|v| !is_integral(v)) {
        Some(v) => Err(Witness::NonIntegralVertex(format_qvector(v))),
        None => Ok(()),
    }
}

pub fn check_zero_interior(p: &RationalPolytope) -> Verdict {
    full_dimensional(p)?;
    p.check_origin_interior().map_err(|e| match e {
        Error::OriginNotInterior(h) => Witness::OriginNotInterior(h),
        other => Witness::DegenerateHull(other.to_string()),
    })
}

pub fn check_canonical_fano(p: &RationalPolytope) -> Verdict {
    check_lattice(p)?;
    full_dimensional(p)?;
    check_zero_interior(p)?;
    match p
        .interior_lattice_points()
        .into_iter()
        .find(|x| !x.is_origin())
    {
        Some(x) => Err(Witness::InteriorLatticePoint(x.to_string())),
        None => Ok(()),
    }
}

pub fn check_reflexive(p: &RationalPolytope) -> Verdict {
    check_lattice(p)?;
    check_zero_interior(p)?;
    let dual = p.polar_dual().expect("origin is interior");
    match dual.vertices().iter().find(|v| !is_integral(v)) {
        Some(v) => Err(Witness::NonIntegralDualVertex(format_qvector(v))),
        None => Ok(()),
    }
}

/// `[P]` must be full-dimensional with 0 in its interior for `P°` to exist.
fn hull_around_origin(hull: &RationalPolytope) -> Verdict {
    if hull.origin_in_interior() {
        Ok(())
    } else {
        Err(Witness::DegenerateHull(hull.to_string()))
    }
}

pub fn check_q_reflexive(p: &RationalPolytope) -> Verdict {
    check_zero_interior(p)?;
    let hull = p.lattice_hull();
    hull_around_origin(&hull)?;
    let circ = hull.polar_dual().expect("hull has interior origin");
    let left = circ.lattice_hull();
    let right = p.polar_dual().expect("origin is interior");
    equal(&left, &right)
}

pub fn check_almost_reflexive(p: &RationalPolytope) -> Verdict {
    check_lattice(p)?;
    check_zero_interior(p)?;
    let once = bullet_dual(p).expect("origin is interior");
    hull_around_origin(&once)?;
    let twice = bullet_dual(&once).expect("origin is interior");
    equal(&twice, p)
}

fn equal(left: &RationalPolytope, right: &RationalPolytope) -> Verdict {
    if left == right {
        Ok(())
    } else {
        Err(Witness::EqualityFails {
            left: left.to_string(),
            right: right.to_string(),
        })
    }
}

/// Full-dimensional lattice polytope whose only interior lattice point is the origin.
pub fn is_canonical_fano(p: &RationalPolytope) -> bool {
    check_canonical_fano(p).is_ok()
}

pub fn is_reflexive(p: &RationalPolytope) -> bool {
    check_reflexive(p).is_ok()
}

/// `0` is interior and `[[P]*] = P*`.
pub fn is_q_reflexive(p: &RationalPolytope) -> bool {
    check_q_reflexive(p).is_ok()
}

/// Lattice polytope with `0` interior and `[[P*]*] = P`.
pub fn is_almost_reflexive(p: &RationalPolytope) -> bool {
    check_almost_reflexive(p).is_ok()
}

/// `P° = [P]*`, defined when the lattice hull has the origin in its interior.
pub fn circ_dual(p: &RationalPolytope) -> Result<RationalPolytope> {
    let hull = p.lattice_hull();
    if !hull.is_full_dimensional() {
        return Err(Error::Degenerate {
            dim: hull.signed_dim(),
            rank: p.rank(),
        });
    }
    hull.polar_dual()
}

/// `P• = [P*]`. The result can be lower-dimensional; callers check.
pub fn bullet_dual(p: &RationalPolytope) -> Result<RationalPolytope> {
    Ok(p.polar_dual()?.lattice_hull())
}

pub fn classify(p: &RationalPolytope) -> ReflexivityReport {
    let checks: [(&str, Verdict); 6] = [
        ("is_lattice", check_lattice(p)),
        ("zero_interior", check_zero_interior(p)),
        ("is_canonical_fano", check_canonical_fano(p)),
        ("is_reflexive", check_reflexive(p)),
        ("is_q_reflexive", check_q_reflexive(p)),
        ("is_almost_reflexive", check_almost_reflexive(p)),
    ];
    let flag = |i: usize| checks[i].1.is_ok();
    let report = ReflexivityReport {
        is_lattice: flag(0),
        zero_interior: flag(1),
        is_canonical_fano: flag(2),
        is_reflexive: flag(3),
        is_q_reflexive: flag(4),
        is_almost_reflexive: flag(5),
        witnesses: checks
            .iter()
            .filter_map(|(name, v)| v.clone().err().map(|w| (name.to_string(), w)))
            .collect(),
    };
    debug_assert!(!report.is_reflexive || report.is_q_reflexive);
    debug_assert!(!report.is_reflexive || report.is_almost_reflexive);
    report
}

/// Facets of `P` that contain no lattice point.
pub fn facets_without_lattice_points(p: &RationalPolytope) -> Vec<String> {
    let points = p.lattice_points();
    p.facets()
        .iter()
        .filter(|f| !points.iter().any(|x| f.is_tight(&x.to_rational())))
        .map(|f| f.to_string())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{frac, qvec, rat, QVector};
    use crate::polytope::{convex_hull, Lattice};

    fn poly(pts: &[&[i64]]) -> RationalPolytope {
        let v: Vec<QVector> = pts.iter().map(|p| qvec(p)).collect();
        convex_hull(&v, pts[0].len()).unwrap()
    }

    fn square() -> RationalPolytope {
        poly(&[&[1, 1], &[1, -1], &[-1, 1], &[-1, -1]])
    }

    fn diamond() -> RationalPolytope {
        poly(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]])
    }

    fn p2() -> RationalPolytope {
        poly(&[&[1, 0], &[0, 1], &[-1, -1]])
    }

    fn p2_dual() -> RationalPolytope {
        poly(&[&[2, -1], &[-1, 2], &[-1, -1]])
    }

    #[test]
    fn canonical_fano_examples() {
        assert!(is_canonical_fano(&square()));
        assert_eq!(
            check_canonical_fano(&square().scale(&rat(2))),
            Err(Witness::InteriorLatticePoint("(-1,-1)".into()))
        );
        assert!(is_canonical_fano(&p2_dual()));
    }

    #[test]
    fn reflexive_examples() {
        assert!(is_reflexive(&square()));
        assert!(matches!(
            check_reflexive(&diamond().scale(&rat(2))),
            Err(Witness::NonIntegralDualVertex(_))
        ));
        assert!(is_reflexive(&p2()));
    }

    #[test]
    fn circ_dual_examples() {
        assert_eq!(
            circ_dual(&square()).unwrap(),
            diamond().with_lattice(Lattice::N)
        );
        assert_eq!(
            circ_dual(&p2().scale(&frac(3, 2))).unwrap(),
            p2_dual().with_lattice(Lattice::N)
        );
        assert!(circ_dual(&square().scale(&frac(3, 4))).is_err());
    }

    #[test]
    fn bullet_dual_of_reflexive_is_polar_dual() {
        assert_eq!(
            bullet_dual(&square()).unwrap(),
            diamond().with_lattice(Lattice::N)
        );
        assert_eq!(bullet_dual(&p2()).unwrap(), p2().polar_dual().unwrap());
    }

    #[test]
    fn q_reflexive_examples() {
        assert!(is_q_reflexive(&square()));
        assert!(is_q_reflexive(&p2_dual()));
        assert!(matches!(
            check_q_reflexive(&square().scale(&rat(3))),
            Err(Witness::EqualityFails { .. })
        ));
    }

    #[test]
    fn almost_reflexive_examples() {
        assert!(is_almost_reflexive(&square()));
        assert!(!is_almost_reflexive(&square().scale(&rat(2))));
        assert!(!is_almost_reflexive(&square().scale(&frac(1, 2))));
    }

    #[test]
    fn classify_square_and_shrunk_square() {
        let r = classify(&square());
        assert!(r.all_true());
        let r = classify(&square().scale(&frac(3, 4)));
        assert!(r.zero_interior);
        assert!(!r.is_lattice && !r.is_reflexive && !r.is_q_reflexive && !r.is_almost_reflexive);
        assert!(!r.is_canonical_fano);
        assert_eq!(r.witnesses.len(), 5);
    }

    #[test]
    fn predicates_are_total_on_degenerate_input() {
        let seg = poly(&[&[-1, 0], &[1, 0]]);
        let r = classify(&seg);
        assert!(!r.zero_interior && !r.is_q_reflexive && !r.is_almost_reflexive);
        let empty = RationalPolytope::empty(2, Lattice::M);
        assert!(!classify(&empty).is_lattice);
    }
}
