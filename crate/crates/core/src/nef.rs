//! Nef-partitions and Q-nef-partitions: Minkowski decompositions `Δ = Δ_1 + ... + Δ_r`, the
//! dual partition `∇_1, ..., ∇_r` and the identities relating the two.

use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::{QVector, Rational};
use crate::cones::{cayley_cone, common_rank};
use crate::error::{Error, Result};
use crate::polytope::{Lattice, RationalPolytope};
use crate::reflexivity::{check_q_reflexive, check_reflexive, circ_dual, Witness};

/// An ordered Minkowski decomposition with its cached sum.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MinkowskiPartition {
    parts: Vec<RationalPolytope>,
    total: RationalPolytope,
}

impl fmt::Display for MinkowskiPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ps: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", ps.join(" + "))
    }
}

impl MinkowskiPartition {
    pub fn new(parts: Vec<RationalPolytope>) -> Result<Self> {
        common_rank(&parts)?;
        if let Some(i) = parts.iter().position(|p| p.is_empty()) {
            return Err(Error::InvalidPartition(format!("part {} is empty", i + 1)));
        }
        let total = minkowski_sum_all(&parts)?;
        Ok(Self { parts, total })
    }

    pub fn parts(&self) -> &[RationalPolytope] {
        &self.parts
    }

    pub fn total(&self) -> &RationalPolytope {
        &self.total
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.total.rank()
    }

    pub fn lattice(&self) -> Lattice {
        self.total.lattice()
    }

    pub fn lattice_hulls(&self) -> Vec<RationalPolytope> {
        self.parts.iter().map(|p| p.lattice_hull()).collect()
    }
}

pub(crate) fn minkowski_sum_all(parts: &[RationalPolytope]) -> Result<RationalPolytope> {
    let (first, rest) = parts.split_first().ok_or(Error::EmptyInput)?;
    rest.iter()
        .try_fold(first.clone(), |acc, p| acc.minkowski_sum(p))
}

pub(crate) fn join_all(parts: &[RationalPolytope]) -> Result<RationalPolytope> {
    let (first, rest) = parts.split_first().ok_or(Error::EmptyInput)?;
    rest.iter().try_fold(first.clone(), |acc, p| acc.join(p))
}

/// Convex hull of the lattice points of all the given polytopes.
fn hull_of_lattice_points(parts: &[RationalPolytope]) -> RationalPolytope {
    let points: Vec<QVector> = parts
        .iter()
        .flat_map(|p| p.lattice_points())
        .map(|x| x.to_rational())
        .collect();
    let (rank, lattice) = (parts[0].rank(), parts[0].lattice());
    if points.is_empty() {
        return RationalPolytope::empty(rank, lattice);
    }
    RationalPolytope::convex_hull(&points, rank, lattice).expect("points share the rank")
}

/// Why a partition fails to be a (Q-)nef-partition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NefWitness {
    TotalNotReflexive {
        witness: Witness,
    },
    TotalNotQReflexive {
        witness: Witness,
    },
    PartNotLattice {
        part: usize,
        vertex: String,
    },
    PartMissesOrigin {
        part: usize,
    },
    /// `[Δ]` differs from `[Δ_1] + ... + [Δ_r]`.
    HullSumMismatch {
        hull_of_total: String,
        sum_of_hulls: String,
    },
}

impl fmt::Display for NefWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NefWitness::TotalNotReflexive { witness } => {
                write!(f, "total is not reflexive: {witness}")
            }
            NefWitness::TotalNotQReflexive { witness } => {
                write!(f, "total is not Q-reflexive: {witness}")
            }
            NefWitness::PartNotLattice { part, vertex } => {
                write!(f, "part {part} has non-integral vertex {vertex}")
            }
            NefWitness::PartMissesOrigin { part } => write!(f, "part {part} does not contain 0"),
            NefWitness::HullSumMismatch {
                hull_of_total,
                sum_of_hulls,
            } => write!(
                f,
                "lattice hull of total {hull_of_total} != sum of hulls {sum_of_hulls}"
            ),
        }
    }
}

fn parts_contain_origin(part: &MinkowskiPartition) -> Result<(), NefWitness> {
    match part.parts.iter().position(|p| !p.contains_origin()) {
        Some(i) => Err(NefWitness::PartMissesOrigin { part: i + 1 }),
        None => Ok(()),
    }
}

pub fn check_nef_partition(part: &MinkowskiPartition) -> Result<(), NefWitness> {
    check_reflexive(&part.total).map_err(|witness| NefWitness::TotalNotReflexive { witness })?;
    for (i, p) in part.parts.iter().enumerate() {
        if let Some(v) = p.vertices().iter().find(|v| !crate::arith::is_integral(v)) {
            return Err(NefWitness::PartNotLattice {
                part: i + 1,
                vertex: crate::arith::format_qvector(v),
            });
        }
    }
    parts_contain_origin(part)
}

pub fn check_q_nef_partition(part: &MinkowskiPartition) -> Result<(), NefWitness> {
    check_q_reflexive(&part.total).map_err(|witness| NefWitness::TotalNotQReflexive { witness })?;
    parts_contain_origin(part)?;
    let hull = part.total.lattice_hull();
    let sum = minkowski_sum_all(&part.lattice_hulls()).expect("hulls share the rank");
    if hull != sum {
        return Err(NefWitness::HullSumMismatch {
            hull_of_total: hull.to_string(),
            sum_of_hulls: sum.to_string(),
        });
    }
    Ok(())
}

/// Reflexive total, lattice parts, every part containing 0.
pub fn is_nef_partition(part: &MinkowskiPartition) -> bool {
    check_nef_partition(part).is_ok()
}

/// Q-reflexive total, parts containing 0 and `[Δ] = [Δ_1] + ... + [Δ_r]`.
pub fn is_q_nef_partition(part: &MinkowskiPartition) -> bool {
    check_q_nef_partition(part).is_ok()
}

/// No part is the single point `{0}`.
pub fn is_proper(part: &MinkowskiPartition) -> bool {
    !part.parts.iter().any(|p| p.is_origin())
}

/// `∇_j = {y : <x, y> >= -δ_ij for every vertex x of every [Δ_i]}`.
pub fn dual_partition(part: &MinkowskiPartition) -> Result<MinkowskiPartition> {
    check_q_nef_partition(part).map_err(|w| Error::InvalidPartition(w.to_string()))?;
    dual_parts_of_hulls(&part.lattice_hulls(), part.lattice())
}

fn dual_parts_of_hulls(hulls: &[RationalPolytope], lattice: Lattice) -> Result<MinkowskiPartition> {
    let rank = hulls[0].rank();
    let mut duals = Vec::with_capacity(hulls.len());
    for j in 0..hulls.len() {
        let halfspaces: Vec<(QVector, Rational)> = hulls
            .iter()
            .enumerate()
            .flat_map(|(i, h)| {
                let offset = if i == j {
                    -Rational::one()
                } else {
                    Rational::zero()
                };
                h.vertices()
                    .iter()
                    .filter(|x| x.iter().any(|c| !c.is_zero()))
                    .map(move |x| (x.clone(), offset.clone()))
            })
            .collect();
        let nabla = RationalPolytope::from_halfspaces(&halfspaces, rank, lattice.dual())
            .map_err(|e| Error::InvalidPartition(format!("dual part {} : {e}", j + 1)))?;
        duals.push(nabla);
    }
    MinkowskiPartition::new(duals)
}

/// The eight identities checked by [`verify_duality`], in order.
pub const IDENTITY_NAMES: [&str; 8] = [
    "P-first",
    "P-second",
    "P-third-a",
    "P-third-b",
    "Cayley-dual",
    "circ-identity-a",
    "circ-identity-b",
    "roundtrip",
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityResult {
    pub name: &'static str,
    pub passed: bool,
    /// Both sides of the failed equality.
    pub witness: Option<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionDualityCertificate {
    pub dual_parts: Vec<RationalPolytope>,
    pub identities: Vec<IdentityResult>,
}

impl PartitionDualityCertificate {
    pub fn all_passed(&self) -> bool {
        self.identities.iter().all(|r| r.passed)
    }

    pub fn get(&self, name: &str) -> Option<&IdentityResult> {
        self.identities.iter().find(|r| r.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &IdentityResult> {
        self.identities.iter().filter(|r| !r.passed)
    }
}

fn compare<T: PartialEq + fmt::Display>(
    name: &'static str,
    left: Result<T>,
    right: Result<T>,
) -> IdentityResult {
    let witness = match (left, right) {
        (Ok(l), Ok(r)) if l == r => None,
        (Ok(l), Ok(r)) => Some((l.to_string(), r.to_string())),
        (l, r) => Some((describe(l), describe(r))),
    };
    IdentityResult {
        name,
        passed: witness.is_none(),
        witness,
    }
}

fn describe<T: fmt::Display>(x: Result<T>) -> String {
    match x {
        Ok(v) => v.to_string(),
        Err(e) => format!("error: {e}"),
    }
}

/// Computes the dual partition and checks every duality identity as exact polytope equality.
pub fn verify_duality(part: &MinkowskiPartition) -> Result<PartitionDualityCertificate> {
    let dual = dual_partition(part)?;
    let deltas = &part.parts;
    let nablas = &dual.parts;
    let delta_hulls = part.lattice_hulls();
    let nabla_hulls = dual.lattice_hulls();

    let mut identities = Vec::with_capacity(IDENTITY_NAMES.len());
    identities.push(compare(
        "P-first",
        part.total.polar_dual(),
        Ok(hull_of_lattice_points(nablas)),
    ));
    identities.push(compare(
        "P-second",
        dual.total.polar_dual(),
        Ok(hull_of_lattice_points(deltas)),
    ));
    identities.push(compare(
        "P-third-a",
        join_all(deltas).and_then(|j| j.polar_dual()),
        minkowski_sum_all(&nabla_hulls),
    ));
    identities.push(compare(
        "P-third-b",
        join_all(nablas).and_then(|j| j.polar_dual()),
        minkowski_sum_all(&delta_hulls),
    ));

    let cayley_a = compare(
        "Cayley-dual",
        cayley_cone(deltas).map(|c| c.cone.dual_cone()),
        cayley_cone(&nabla_hulls).map(|c| c.cone),
    );
    let cayley_b = compare(
        "Cayley-dual",
        cayley_cone(nablas).map(|c| c.cone.dual_cone()),
        cayley_cone(&delta_hulls).map(|c| c.cone),
    );
    identities.push(if cayley_a.passed { cayley_b } else { cayley_a });

    identities.push(compare(
        "circ-identity-a",
        circ_dual(&part.total),
        join_all(nablas),
    ));
    identities.push(compare(
        "circ-identity-b",
        circ_dual(&dual.total),
        join_all(deltas),
    ));

    let roundtrip = dual_partition(&dual).map(|p| p.parts);
    identities.push(IdentityResult {
        name: "roundtrip",
        passed: roundtrip.as_ref() == Ok(deltas),
        witness: match &roundtrip {
            Ok(p) if p == deltas => None,
            Ok(p) => Some((fmt_parts(p), fmt_parts(deltas))),
            Err(e) => Some((format!("error: {e}"), fmt_parts(deltas))),
        },
    });

    Ok(PartitionDualityCertificate {
        dual_parts: dual.parts,
        identities,
    })
}

fn fmt_parts(parts: &[RationalPolytope]) -> String {
    parts
        .iter()
        .map(|p| p.to_string())
        .collect::<Vec<_>>()
        .join(" + ")
}

/// For vertex `v` of `Δ*`, the parts on which `min<[Δ_i], v>` is `-1` (exactly one on a valid
/// Q-nef-partition) together with whether all other minima are `0`.
pub fn vertex_dichotomy(part: &MinkowskiPartition, v: &[Rational]) -> (Vec<usize>, bool) {
    let minima: Vec<Rational> = part
        .lattice_hulls()
        .iter()
        .map(|h| h.min_pairing(v))
        .collect();
    let minus_one: Vec<usize> = (0..minima.len())
        .filter(|&i| minima[i] == -Rational::one())
        .collect();
    let rest_zero = minima
        .iter()
        .enumerate()
        .all(|(i, m)| minus_one.contains(&i) || m.is_zero());
    (minus_one, rest_zero)
}

/// The faces `F_i` of the parts on which the inner normal of facet `facet_index` of the total
/// is minimal. Asserts `[F] = [F_1] + ... + [F_r]`.
pub fn facet_decomposition(
    part: &MinkowskiPartition,
    facet_index: usize,
) -> Result<Vec<RationalPolytope>> {
    check_q_nef_partition(part).map_err(|w| Error::InvalidPartition(w.to_string()))?;
    let facets = part.total.facets();
    let facet = facets.get(facet_index).ok_or(Error::IndexOutOfRange {
        index: facet_index,
        count: facets.len(),
    })?;
    let y = crate::arith::to_rational(&facet.normal);
    let faces: Vec<RationalPolytope> = part.parts.iter().map(|p| p.face_minimizing(&y)).collect();
    let whole = part.total.face_minimizing(&y).lattice_hull();
    let hulls: Vec<RationalPolytope> = faces.iter().map(|f| f.lattice_hull()).collect();
    let sum = if hulls.iter().any(|h| h.is_empty()) {
        RationalPolytope::empty(part.rank(), part.lattice())
    } else {
        minkowski_sum_all(&hulls)?
    };
    if whole != sum {
        return Err(Error::IdentityViolated(format!(
            "lattice hull of facet {whole} != sum of face hulls {sum}"
        )));
    }
    Ok(faces)
}
