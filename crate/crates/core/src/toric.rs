//! Normal fans, torus-invariant divisors, the wall test for Q-nef divisors and the equations
//! of Calabi-Yau complete intersections and generalized Calabi-Yau hypersurfaces.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde::Serialize;

use crate::arith::{
    dot_z, dot_zq, format_rational, format_zvector, frac, is_integral, ser, to_integer,
    to_rational, Integer, QVector, Rational, ZVector,
};
use crate::cones::{bullet_cone, grade_slice, is_almost_reflexive_gorenstein, GradedCone};
use crate::corpus;
use crate::error::{Error, Result};
use crate::linalg;
use crate::nef::{check_q_nef_partition, dual_partition, is_proper, MinkowskiPartition};
use crate::polytope::{Lattice, LatticePoint, RationalPolytope};
use crate::reflexivity::{is_canonical_fano, is_q_reflexive};

/// Two maximal cones sharing a codimension-one face.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Wall {
    pub cones: (usize, usize),
    /// Rays of the shared face.
    pub shared: Vec<usize>,
}

/// A complete rational fan given by its rays and maximal cones.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Fan {
    rank: usize,
    #[serde(serialize_with = "ser::zvectors")]
    rays: Vec<ZVector>,
    max_cones: Vec<Vec<usize>>,
    walls: Vec<Wall>,
}

impl Fan {
    /// Builds a fan from rays and maximal cones, computing the walls.
    ///
    /// Every maximal cone must be full-dimensional and every ray must be used.
    pub fn new(rank: usize, rays: Vec<ZVector>, max_cones: Vec<Vec<usize>>) -> Result<Self> {
        for r in &rays {
            if r.len() != rank {
                return Err(Error::DimensionMismatch {
                    expected: rank,
                    got: r.len(),
                });
            }
        }
        let mut used = vec![false; rays.len()];
        for cone in &max_cones {
            for &i in cone {
                let slot = used.get_mut(i).ok_or(Error::IndexOutOfRange {
                    index: i,
                    count: rays.len(),
                })?;
                *slot = true;
            }
            if ray_rank(&rays, cone, rank) != rank {
                return Err(Error::DegenerateCone);
            }
        }
        if used.iter().any(|u| !u) {
            return Err(Error::InvalidPartition(
                "a ray lies in no maximal cone".into(),
            ));
        }
        let mut walls = Vec::new();
        for a in 0..max_cones.len() {
            for b in a + 1..max_cones.len() {
                let shared: Vec<usize> = max_cones[a]
                    .iter()
                    .filter(|i| max_cones[b].contains(*i))
                    .copied()
                    .collect();
                if rank > 0 && ray_rank(&rays, &shared, rank) == rank - 1 {
                    walls.push(Wall {
                        cones: (a, b),
                        shared,
                    });
                }
            }
        }
        Ok(Self {
            rank,
            rays,
            max_cones,
            walls,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn rays(&self) -> &[ZVector] {
        &self.rays
    }

    pub fn max_cones(&self) -> &[Vec<usize>] {
        &self.max_cones
    }

    pub fn walls(&self) -> &[Wall] {
        &self.walls
    }

    pub fn ray_index(&self, v: &[Integer]) -> Option<usize> {
        self.rays.iter().position(|r| r.as_slice() == v)
    }
}

impl fmt::Display for Fan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rays: Vec<String> = self.rays.iter().map(|r| format_zvector(r)).collect();
        write!(
            f,
            "fan(rays {}; {} cones, {} walls)",
            rays.join(","),
            self.max_cones.len(),
            self.walls.len()
        )
    }
}

fn ray_rank(rays: &[ZVector], cone: &[usize], rank: usize) -> usize {
    let rows: Vec<QVector> = cone.iter().map(|&i| to_rational(&rays[i])).collect();
    linalg::rank(&rows, rank)
}

/// Rays are ordered by the position of their first nonzero entry, positive sign first, then
/// lexicographically; `+e1, -e1, +e2, -e2, ...` for the coordinate rays.
fn ray_key(v: &ZVector) -> (usize, bool, ZVector) {
    let pivot = v.iter().position(|x| !x.is_zero()).unwrap_or(v.len());
    let negative = v.get(pivot).is_some_and(|x| x.is_negative());
    (pivot, negative, v.clone())
}

/// The normal fan `Σ_P`: one ray per facet (its primitive inner normal) and one maximal cone
/// per vertex, spanned by the normals of the facets through it.
pub fn normal_fan(p: &RationalPolytope) -> Result<Fan> {
    if !p.is_full_dimensional() {
        return Err(Error::Degenerate {
            dim: p.signed_dim(),
            rank: p.rank(),
        });
    }
    let mut rays: Vec<ZVector> = p.facets().iter().map(|f| f.normal.clone()).collect();
    rays.sort_by_key(ray_key);
    let facet_ray: Vec<usize> = p
        .facets()
        .iter()
        .map(|f| {
            rays.iter()
                .position(|r| *r == f.normal)
                .expect("ray of facet")
        })
        .collect();
    let max_cones: Vec<Vec<usize>> = p
        .vertices()
        .iter()
        .map(|v| {
            let mut cone: Vec<usize> = p
                .facets()
                .iter()
                .zip(&facet_ray)
                .filter(|(f, _)| f.is_tight(v))
                .map(|(_, &i)| i)
                .collect();
            cone.sort_unstable();
            cone
        })
        .collect();
    Fan::new(p.rank(), rays, max_cones)
}

/// `D = Σ b_ρ D_ρ` on a fan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToricDivisor<'f> {
    fan: &'f Fan,
    coefficients: Vec<Rational>,
}

impl<'f> ToricDivisor<'f> {
    pub fn new(fan: &'f Fan, coefficients: Vec<Rational>) -> Result<Self> {
        if coefficients.len() != fan.rays.len() {
            return Err(Error::DimensionMismatch {
                expected: fan.rays.len(),
                got: coefficients.len(),
            });
        }
        Ok(Self { fan, coefficients })
    }

    pub fn zero(fan: &'f Fan) -> Self {
        Self {
            fan,
            coefficients: vec![Rational::zero(); fan.rays.len()],
        }
    }

    pub fn fan(&self) -> &'f Fan {
        self.fan
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coefficients
    }

    pub fn scale(&self, t: &Rational) -> Self {
        Self {
            fan: self.fan,
            coefficients: self.coefficients.iter().map(|b| b * t).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.fan != other.fan {
            return Err(Error::InvalidPartition(
                "divisors live on different fans".into(),
            ));
        }
        let coefficients = self
            .coefficients
            .iter()
            .zip(&other.coefficients)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self {
            fan: self.fan,
            coefficients,
        })
    }
}

impl fmt::Display for ToricDivisor<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cs: Vec<String> = self.coefficients.iter().map(format_rational).collect();
        write!(f, "D({})", cs.join(","))
    }
}

/// `D_P = Σ (-min<P, v_ρ>) D_ρ`.
pub fn divisor_of_polytope<'f>(p: &RationalPolytope, fan: &'f Fan) -> Result<ToricDivisor<'f>> {
    if p.rank() != fan.rank {
        return Err(Error::DimensionMismatch {
            expected: fan.rank,
            got: p.rank(),
        });
    }
    if p.is_empty() {
        return Err(Error::EmptyInput);
    }
    let coefficients = fan.rays.iter().map(|v| -p.min_pairing_int(v)).collect();
    Ok(ToricDivisor { fan, coefficients })
}

/// `Δ_D = {m : <m, v_ρ> >= -b_ρ}` in the lattice `M`.
pub fn divisor_polytope(d: &ToricDivisor) -> Result<RationalPolytope> {
    let halfspaces: Vec<(QVector, Rational)> = d
        .fan
        .rays
        .iter()
        .zip(&d.coefficients)
        .map(|(v, b)| (to_rational(v), -b.clone()))
        .collect();
    RationalPolytope::from_halfspaces(&halfspaces, d.fan.rank, Lattice::M)
}

/// Outcome of the wall test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum NefStatus {
    /// Strictly convex across every wall.
    Ample,
    Nef,
    NotNef {
        cones: (usize, usize),
        ray: usize,
    },
    /// No linear functional matches the coefficients on this cone.
    NotQCartier {
        cone: usize,
    },
}

impl NefStatus {
    pub fn is_nef(&self) -> bool {
        matches!(self, NefStatus::Ample | NefStatus::Nef)
    }

    pub fn is_ample(&self) -> bool {
        matches!(self, NefStatus::Ample)
    }
}

/// The functionals `m_σ` with `<m_σ, v_ρ> = -b_ρ` on the rays of each maximal cone.
pub fn cartier_data(d: &ToricDivisor) -> std::result::Result<Vec<QVector>, usize> {
    let fan = d.fan;
    fan.max_cones
        .iter()
        .enumerate()
        .map(|(k, cone)| {
            let rows: Vec<QVector> = cone.iter().map(|&i| to_rational(&fan.rays[i])).collect();
            let rhs: QVector = cone.iter().map(|&i| -d.coefficients[i].clone()).collect();
            linalg::solve(&rows, &rhs, fan.rank).ok_or(k)
        })
        .collect()
}

/// Convexity of the support function checked wall by wall: across every wall `(σ, τ)` each ray
/// `ρ` of `τ` outside `σ` satisfies `<m_σ, v_ρ> >= -b_ρ`, strictly for ampleness.
pub fn nef_status(d: &ToricDivisor) -> NefStatus {
    let m = match cartier_data(d) {
        Ok(m) => m,
        Err(cone) => return NefStatus::NotQCartier { cone },
    };
    let fan = d.fan;
    let mut strict = true;
    for wall in &fan.walls {
        let (a, b) = wall.cones;
        for (here, there) in [(a, b), (b, a)] {
            for &ray in &fan.max_cones[there] {
                if fan.max_cones[here].contains(&ray) {
                    continue;
                }
                let slack = dot_zq(&fan.rays[ray], &m[here]) + &d.coefficients[ray];
                if slack.is_negative() {
                    return NefStatus::NotNef {
                        cones: (here, there),
                        ray,
                    };
                }
                if slack.is_zero() {
                    strict = false;
                }
            }
        }
    }
    if strict {
        NefStatus::Ample
    } else {
        NefStatus::Nef
    }
}

pub fn is_qnef(d: &ToricDivisor) -> bool {
    nef_status(d).is_nef()
}

/// A Laurent monomial in the Cox ring with the lattice point it comes from.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Monomial {
    #[serde(serialize_with = "ser::zvector")]
    pub point: ZVector,
    #[serde(serialize_with = "ser::zvector")]
    pub exponents: ZVector,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Monomials {
    pub monomials: Vec<Monomial>,
    pub warnings: Vec<String>,
}

/// `Π x_ρ^{b_ρ + <m, v_ρ>}` for every lattice point `m` of `Δ_D`; points with a fractional
/// exponent are skipped with a warning.
pub fn monomials_of_divisor(d: &ToricDivisor) -> Result<Monomials> {
    let polytope = divisor_polytope(d)?;
    let mut out = Monomials::default();
    for m in polytope.lattice_points() {
        let exps: QVector = d
            .fan
            .rays
            .iter()
            .zip(&d.coefficients)
            .map(|(v, b)| b + Rational::from_integer(dot_z(&m.0, v)))
            .collect();
        match to_integer(&exps) {
            Some(exponents) => out.monomials.push(Monomial {
                point: m.0,
                exponents,
            }),
            None => out.warnings.push(format!(
                "lattice point {m} has a fractional exponent; skipped"
            )),
        }
    }
    Ok(out)
}

/// `χ^(m, i) ↦ Π x_ρ^{i b_ρ + <m, v_ρ>}`.
pub fn chi_to_cox(d: &ToricDivisor, m: &[Integer], i: &Integer) -> Option<ZVector> {
    let exps: QVector = d
        .fan
        .rays
        .iter()
        .zip(&d.coefficients)
        .map(|(v, b)| b * Rational::from_integer(i.clone()) + Rational::from_integer(dot_z(m, v)))
        .collect();
    to_integer(&exps)
}

/// Inverse of [`chi_to_cox`]: the `(m, i)` with `i b_ρ + <m, v_ρ> = e_ρ` for all rays.
pub fn cox_to_chi(d: &ToricDivisor, exponents: &[Integer]) -> Option<(ZVector, Integer)> {
    let fan = d.fan;
    let rows: Vec<QVector> = fan
        .rays
        .iter()
        .zip(&d.coefficients)
        .map(|(v, b)| {
            let mut row = to_rational(v);
            row.push(b.clone());
            row
        })
        .collect();
    let sol = linalg::solve(&rows, &to_rational(exponents), fan.rank + 1)?;
    let mut z = to_integer(&sol)?;
    let i = z.pop()?;
    Some((z, i))
}

/// How the terms of a [`LaurentSystem`] record their exponents.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TermEncoding {
    /// Exponents over the fan rays `x_ρ`.
    Cox,
    /// A lattice point `n` of the semigroup ring.
    Semigroup,
}

/// One term `a_{i,m} x^e`. The coefficient tag is `(equation, point)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Term {
    pub equation: usize,
    #[serde(serialize_with = "ser::zvector")]
    pub point: ZVector,
    #[serde(serialize_with = "ser::zvector")]
    pub exponents: ZVector,
    #[serde(serialize_with = "ser::rational_option")]
    pub coefficient: Option<Rational>,
}

impl Term {
    pub fn coefficient_symbol(&self) -> String {
        format!("a_{{{},{}}}", self.equation, format_zvector(&self.point))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Equation {
    pub index: usize,
    pub terms: Vec<Term>,
    /// Whether all exponent vectors lie in the recorded divisor class.
    pub degree_consistent: bool,
}

/// Equations in Cox or semigroup coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LaurentSystem {
    pub encoding: TermEncoding,
    /// The rays `v_ρ` naming the variables `x_ρ` (Cox encoding only).
    #[serde(serialize_with = "ser::zvectors")]
    pub variables: Vec<ZVector>,
    pub equations: Vec<Equation>,
    pub provenance: String,
    pub warnings: Vec<String>,
}

impl LaurentSystem {
    pub fn term_count(&self) -> usize {
        self.equations.iter().map(|e| e.terms.len()).sum()
    }

    pub fn terms(&self) -> impl Iterator<Item = &Term> {
        self.equations.iter().flat_map(|e| e.terms.iter())
    }

    pub fn all_exponents_nonnegative(&self) -> bool {
        self.encoding == TermEncoding::Semigroup
            || self
                .terms()
                .all(|t| t.exponents.iter().all(|x| !x.is_negative()))
    }

    /// Replaces every coefficient by a seeded random nonzero rational.
    pub fn with_random_coefficients(mut self, seed: u64) -> Self {
        let mut rng = corpus::rng(seed);
        for eq in &mut self.equations {
            for t in &mut eq.terms {
                let mut num = 0;
                while num == 0 {
                    num = rng.random_range(-99i64..=99);
                }
                t.coefficient = Some(frac(num, rng.random_range(1i64..=9)));
            }
        }
        self
    }

    /// The symbolic form, one equation per line.
    pub fn pretty(&self) -> String {
        let mut out = String::new();
        for eq in &self.equations {
            let terms: Vec<String> = eq.terms.iter().map(|t| self.pretty_term(t)).collect();
            out.push_str(&format!("f_{} = {} = 0\n", eq.index, terms.join(" + ")));
        }
        out
    }

    fn pretty_term(&self, t: &Term) -> String {
        let coefficient = match &t.coefficient {
            Some(c) => format!("({})", format_rational(c)),
            None => t.coefficient_symbol(),
        };
        let factors: Vec<String> = match self.encoding {
            TermEncoding::Cox => t
                .exponents
                .iter()
                .enumerate()
                .filter(|(_, e)| !e.is_zero())
                .map(|(k, e)| {
                    if e.is_one() {
                        format!("x_{k}")
                    } else {
                        format!("x_{k}^{e}")
                    }
                })
                .collect(),
            TermEncoding::Semigroup => vec![format!("chi^{}", format_zvector(&t.point))],
        };
        if factors.is_empty() {
            coefficient
        } else {
            format!("{coefficient}*{}", factors.join("*"))
        }
    }
}

/// Whether `e - b` is the divisor of a character `χ^u` with `u` integral.
pub fn same_divisor_class(fan: &Fan, e: &[Integer], b: &[Rational]) -> bool {
    let rows: Vec<QVector> = fan.rays.iter().map(|v| to_rational(v)).collect();
    let rhs: QVector = e
        .iter()
        .zip(b)
        .map(|(x, y)| Rational::from_integer(x.clone()) - y)
        .collect();
    linalg::solve(&rows, &rhs, fan.rank).is_some_and(|u| is_integral(&u))
}

/// The equations `(Σ_{m ∈ Δ_i ∩ M} a_{i,m} Π x_ρ^{<m, v_ρ>}) Π_{v_ρ ∈ ∇_i} x_ρ = 0` over the
/// rays of the normal fan of the total polytope.
pub fn emit_ci_equations(part: &MinkowskiPartition) -> Result<LaurentSystem> {
    check_q_nef_partition(part).map_err(|w| Error::InvalidPartition(w.to_string()))?;
    let total = part.total();
    let fan = normal_fan(total)?;
    let duals = dual_partition(part)?;
    let r = part.len();
    let d = part.rank();
    let mut warnings = Vec::new();
    if r >= d {
        warnings.push(format!("r = {r} is not below d = {d}"));
    }
    if !is_proper(part) {
        warnings.push("partition is not proper".into());
    }
    let membership: Vec<Vec<bool>> = fan
        .rays
        .iter()
        .map(|v| {
            let q = to_rational(v);
            duals.parts().iter().map(|n| n.contains(&q)).collect()
        })
        .collect();
    for (v, member) in fan.rays.iter().zip(&membership) {
        let count = member.iter().filter(|&&x| x).count();
        if count > 1 {
            warnings.push(format!(
                "ray {} lies in {count} dual parts",
                format_zvector(v)
            ));
        }
    }
    let mut equations = Vec::with_capacity(r);
    for (i, delta) in part.parts().iter().enumerate() {
        let hull = delta.lattice_hull();
        let class = divisor_of_polytope(&hull, &fan)?;
        let mut terms = Vec::new();
        for m in delta.lattice_points() {
            let exponents: ZVector = fan
                .rays
                .iter()
                .zip(&membership)
                .map(|(v, member)| {
                    let bump = if member[i] {
                        Integer::one()
                    } else {
                        Integer::zero()
                    };
                    dot_z(&m.0, v) + bump
                })
                .collect();
            terms.push(Term {
                equation: i + 1,
                point: m.0,
                exponents,
                coefficient: None,
            });
        }
        let degree_consistent = terms
            .iter()
            .all(|t| same_divisor_class(&fan, &t.exponents, class.coefficients()));
        if !degree_consistent {
            warnings.push(format!("equation {} mixes divisor classes", i + 1));
        }
        equations.push(Equation {
            index: i + 1,
            terms,
            degree_consistent,
        });
    }
    let system = LaurentSystem {
        encoding: TermEncoding::Cox,
        variables: fan.rays,
        equations,
        provenance: format!("complete intersection of {part}"),
        warnings,
    };
    if !system.all_exponents_nonnegative() {
        return Err(Error::IdentityViolated("negative exponent emitted".into()));
    }
    Ok(system)
}

/// The hypersurface `Σ_{n ∈ σ•_(1) ∩ N} a_n χ^n = 0` of an almost reflexive Gorenstein cone.
pub fn emit_generalized_cy(c: &GradedCone) -> Result<LaurentSystem> {
    let (r, h) = is_almost_reflexive_gorenstein(c).ok_or(Error::NotAlmostReflexive)?;
    let mut graded = c.clone();
    graded.index = Some(r);
    graded.interior_height_point = Some(h.clone());
    let bullet = bullet_cone(&graded)?;
    let slice = grade_slice(&bullet, 1, &h)?;
    let terms: Vec<Term> = slice
        .lattice_points()
        .into_iter()
        .map(|n| Term {
            equation: 1,
            exponents: n.0.clone(),
            point: n.0,
            coefficient: None,
        })
        .collect();
    Ok(LaurentSystem {
        encoding: TermEncoding::Semigroup,
        variables: Vec::new(),
        equations: vec![Equation {
            index: 1,
            terms,
            degree_consistent: true,
        }],
        provenance: format!("generalized Calabi-Yau of {c} (index {r})"),
        warnings: Vec::new(),
    })
}

/// Rewrites semigroup terms `χ^(m, i)` (last coordinate `i`) as Cox monomials of `i·D`.
pub fn semigroup_to_cox(system: &LaurentSystem, d: &ToricDivisor) -> Result<LaurentSystem> {
    if system.encoding != TermEncoding::Semigroup {
        return Err(Error::InvalidPartition(
            "system is not in semigroup encoding".into(),
        ));
    }
    let mut out = system.clone();
    out.encoding = TermEncoding::Cox;
    out.variables = d.fan.rays.clone();
    for t in out.equations.iter_mut().flat_map(|e| e.terms.iter_mut()) {
        let (i, m) = t.point.split_last().ok_or(Error::EmptyInput)?;
        if m.len() != d.fan.rank {
            return Err(Error::DimensionMismatch {
                expected: d.fan.rank + 1,
                got: t.point.len(),
            });
        }
        t.exponents =
            chi_to_cox(d, m, i).ok_or_else(|| Error::NotLattice(format_zvector(&t.point)))?;
    }
    Ok(out)
}

/// Rewrites Cox terms as semigroup points `(m, i)`.
pub fn cox_to_semigroup(system: &LaurentSystem, d: &ToricDivisor) -> Result<LaurentSystem> {
    if system.encoding != TermEncoding::Cox {
        return Err(Error::InvalidPartition(
            "system is not in Cox encoding".into(),
        ));
    }
    let mut out = system.clone();
    out.encoding = TermEncoding::Semigroup;
    out.variables = Vec::new();
    for t in out.equations.iter_mut().flat_map(|e| e.terms.iter_mut()) {
        let (mut m, i) = cox_to_chi(d, &t.exponents)
            .ok_or_else(|| Error::NotLattice(format_zvector(&t.exponents)))?;
        m.push(i);
        t.point = m.clone();
        t.exponents = m;
    }
    Ok(out)
}

/// Whether `X_P` is Fano with canonical singularities: `P` is Q-reflexive, or `P*` is a
/// canonical Fano lattice polytope.
pub fn is_fano_from_polytope(p: &RationalPolytope) -> bool {
    if is_q_reflexive(p) {
        return true;
    }
    if !p.origin_in_interior() {
        return false;
    }
    match p.polar_dual() {
        Ok(dual) => dual.is_lattice_polytope() && is_canonical_fano(&dual),
        Err(_) => false,
    }
}

/// Lattice points of the cone `{(tP, t)}` at level `i`.
pub fn proj_cone_level_points(p: &RationalPolytope, i: u32) -> Vec<LatticePoint> {
    let dilate = p.scale(&Rational::from_integer(Integer::from(i)));
    let level = Integer::from(i);
    dilate
        .lattice_points()
        .into_iter()
        .map(|m| {
            let mut z = m.0;
            z.push(level.clone());
            LatticePoint(z)
        })
        .collect()
}

/// Ray indices of the fan whose rays lie in the given polytope.
pub fn rays_in(fan: &Fan, p: &RationalPolytope) -> BTreeSet<usize> {
    fan.rays
        .iter()
        .enumerate()
        .filter(|(_, v)| p.contains(&to_rational(v)))
        .map(|(i, _)| i)
        .collect()
}
