//! Full-dimensional pointed rational cones, Gorenstein gradings, Cayley cones and the
//! almost reflexive Gorenstein involution `σ ↦ σ• = [σ∨]`.

use std::fmt;

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use crate::arith::{
    dot_z, dot_zq, format_zvector, primitive_direction, to_integer, to_rational, Integer, QVector,
    Rational, ZVector,
};
use crate::dd::cone_generators;
use crate::error::{Error, Result};
use crate::linalg;
use crate::polytope::{Lattice, RationalPolytope};
use crate::reflexivity::is_almost_reflexive;

/// A full-dimensional pointed cone `{x : <x, f> >= 0 for every facet normal f}`.
///
/// Generators and facet normals are primitive, irredundant and sorted, so derived equality is
/// equality of cones.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyhedralCone {
    rank: usize,
    lattice: Lattice,
    generators: Vec<ZVector>,
    facets: Vec<ZVector>,
}

impl fmt::Display for PolyhedralCone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gs: Vec<String> = self.generators.iter().map(|g| format_zvector(g)).collect();
        write!(f, "cone{{{}}}[{}]", gs.join(","), self.lattice)
    }
}

impl PolyhedralCone {
    /// The cone spanned by the given vectors; zero vectors are ignored.
    pub fn from_generators(gens: &[QVector], rank: usize, lattice: Lattice) -> Result<Self> {
        let rows = primitive_rows(gens, rank)?;
        let dual = cone_generators(&rows, rank);
        if !dual.lineality.is_empty() || dual.rays.is_empty() {
            return Err(Error::DegenerateCone);
        }
        Self::from_facet_rows(&dual.rays, rank, lattice)
    }

    /// The cone `{x : <x, f> >= 0}` cut out by the given normals.
    pub fn from_facets(normals: &[QVector], rank: usize, lattice: Lattice) -> Result<Self> {
        let rows = primitive_rows(normals, rank)?;
        Self::from_facet_rows(&rows, rank, lattice)
    }

    fn from_facet_rows(rows: &[ZVector], rank: usize, lattice: Lattice) -> Result<Self> {
        let primal = cone_generators(rows, rank);
        if !primal.lineality.is_empty() || primal.rays.is_empty() {
            return Err(Error::DegenerateCone);
        }
        let dual = cone_generators(&primal.rays, rank);
        if !dual.lineality.is_empty() {
            return Err(Error::DegenerateCone);
        }
        Ok(Self {
            rank,
            lattice,
            generators: primal.rays,
            facets: dual.rays,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn lattice(&self) -> Lattice {
        self.lattice
    }

    pub fn generators(&self) -> &[ZVector] {
        &self.generators
    }

    pub fn facets(&self) -> &[ZVector] {
        &self.facets
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.facets.iter().all(|f| !dot_zq(f, x).is_negative())
    }

    pub fn interior_contains(&self, x: &[Rational]) -> bool {
        self.facets.iter().all(|f| dot_zq(f, x).is_positive())
    }

    /// `{y : <x, y> >= 0 for all x in C}` in the dual lattice.
    pub fn dual_cone(&self) -> Self {
        Self {
            rank: self.rank,
            lattice: self.lattice.dual(),
            generators: self.facets.clone(),
            facets: self.generators.clone(),
        }
    }
}

fn primitive_rows(vs: &[QVector], rank: usize) -> Result<Vec<ZVector>> {
    let mut rows = Vec::with_capacity(vs.len());
    for v in vs {
        if v.len() != rank {
            return Err(Error::DimensionMismatch {
                expected: rank,
                got: v.len(),
            });
        }
        if v.iter().any(|x| !x.is_zero()) {
            rows.push(primitive_direction(v));
        }
    }
    Ok(rows)
}

/// The unique integral `h` with `<g, h> = 1` on every primitive generator, if it exists.
pub fn gorenstein_height(cone: &PolyhedralCone) -> Option<ZVector> {
    let rows: Vec<QVector> = cone.generators.iter().map(|g| to_rational(g)).collect();
    let ones = vec![Rational::one(); rows.len()];
    let h = linalg::solve(&rows, &ones, cone.rank)?;
    to_integer(&h)
}

/// A cone with its Gorenstein grading and, once found, its almost reflexive index data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedCone {
    pub cone: PolyhedralCone,
    pub height: Option<ZVector>,
    pub index: Option<usize>,
    /// The unique relative-interior lattice point of the slice at level `index`.
    pub interior_height_point: Option<ZVector>,
}

impl fmt::Display for GradedCone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.cone)?;
        if let Some(h) = &self.height {
            write!(f, " height {}", format_zvector(h))?;
        }
        if let Some(r) = self.index {
            write!(f, " index {r}")?;
        }
        Ok(())
    }
}

impl GradedCone {
    pub fn new(cone: PolyhedralCone) -> Self {
        let height = gorenstein_height(&cone);
        Self {
            cone,
            height,
            index: None,
            interior_height_point: None,
        }
    }

    /// Runs the almost reflexive index search and records the result.
    pub fn with_index(mut self) -> Self {
        if let Some((r, h)) = is_almost_reflexive_gorenstein(&self) {
            self.index = Some(r);
            self.interior_height_point = Some(h);
        }
        self
    }

    pub fn rank(&self) -> usize {
        self.cone.rank
    }

    fn require_height(&self) -> Result<&ZVector> {
        self.height.as_ref().ok_or(Error::NotGorenstein)
    }
}

/// `R≥0 (P, 1)` in rank `d + 1`.
pub fn cone_over_polytope(p: &RationalPolytope) -> Result<GradedCone> {
    p.check_origin_interior()?;
    let gens: Vec<QVector> = p
        .vertices()
        .iter()
        .map(|v| {
            let mut g = v.clone();
            g.push(Rational::one());
            g
        })
        .collect();
    let cone = PolyhedralCone::from_generators(&gens, p.rank() + 1, p.lattice())?;
    Ok(GradedCone::new(cone))
}

/// `R≥0 conv(P_1 + e_1, ..., P_r + e_r)` in rank `d + r`.
pub fn cayley_cone(parts: &[RationalPolytope]) -> Result<GradedCone> {
    let (d, lattice) = common_rank(parts)?;
    let r = parts.len();
    let mut gens = Vec::new();
    for (i, p) in parts.iter().enumerate() {
        if p.is_empty() {
            return Err(Error::InvalidPartition(format!("part {} is empty", i + 1)));
        }
        for v in p.vertices() {
            let mut g = v.clone();
            g.extend((0..r).map(|j| {
                if i == j {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            }));
            gens.push(g);
        }
    }
    let cone = PolyhedralCone::from_generators(&gens, d + r, lattice)?;
    Ok(GradedCone::new(cone))
}

pub(crate) fn common_rank(parts: &[RationalPolytope]) -> Result<(usize, Lattice)> {
    let first = parts.first().ok_or(Error::EmptyInput)?;
    for p in parts {
        if p.rank() != first.rank() {
            return Err(Error::DimensionMismatch {
                expected: first.rank(),
                got: p.rank(),
            });
        }
        if p.lattice() != first.lattice() {
            return Err(Error::LatticeMismatch(first.lattice(), p.lattice()));
        }
    }
    Ok((first.rank(), first.lattice()))
}

/// Generators of the dual Cayley cone given by the explicit vertex formula:
/// `(x, -min<P_1, x>, ..., -min<P_r, x>)` for vertices `x` of `(ΣP_i)*`, and the `e_i*`.
pub fn cayley_dual_generators(parts: &[RationalPolytope]) -> Result<Vec<QVector>> {
    let (d, _) = common_rank(parts)?;
    let r = parts.len();
    let mut total = parts[0].clone();
    for p in &parts[1..] {
        total = total.minkowski_sum(p)?;
    }
    let dual = total.polar_dual()?;
    let mut gens: Vec<QVector> = dual
        .vertices()
        .iter()
        .map(|x| {
            let mut g = x.clone();
            g.extend(parts.iter().map(|p| -p.min_pairing(x)));
            g
        })
        .collect();
    for i in 0..r {
        let mut e = vec![Rational::zero(); d + r];
        e[d + i] = Rational::one();
        gens.push(e);
    }
    Ok(gens)
}

/// The dual Cayley cone built from [`cayley_dual_generators`].
pub fn cayley_dual_by_formula(parts: &[RationalPolytope]) -> Result<PolyhedralCone> {
    let (d, lattice) = common_rank(parts)?;
    let gens = cayley_dual_generators(parts)?;
    PolyhedralCone::from_generators(&gens, d + parts.len(), lattice.dual())
}

/// `{x in C : <x, functional> = i}`; the functional must be positive on every generator.
pub fn grade_slice(c: &GradedCone, i: u32, functional: &[Integer]) -> Result<RationalPolytope> {
    slice(&c.cone, i, functional)
}

fn slice(cone: &PolyhedralCone, i: u32, functional: &[Integer]) -> Result<RationalPolytope> {
    if functional.len() != cone.rank {
        return Err(Error::DimensionMismatch {
            expected: cone.rank,
            got: functional.len(),
        });
    }
    let level = Rational::from_integer(Integer::from(i));
    let mut points = Vec::with_capacity(cone.generators.len());
    for g in &cone.generators {
        let value = dot_z(g, functional);
        if !value.is_positive() {
            return Err(Error::SliceUnbounded(format_zvector(g)));
        }
        let t = &level / Rational::from_integer(value);
        points.push(
            g.iter()
                .map(|x| Rational::from_integer(x.clone()) * &t)
                .collect(),
        );
    }
    RationalPolytope::convex_hull(&points, cone.rank, cone.lattice)
}

/// The index `r = <h_{σ∨}, h_σ>` when both the cone and its dual are Gorenstein.
pub fn is_reflexive_gorenstein(c: &GradedCone) -> Option<usize> {
    let h = c.height.as_ref()?;
    let h_dual = gorenstein_height(&c.cone.dual_cone())?;
    let r = dot_z(&h_dual, h);
    usize::try_from(r).ok()
}

/// The dual cone's height vector, when it is Gorenstein.
pub fn dual_height(c: &GradedCone) -> Option<ZVector> {
    gorenstein_height(&c.cone.dual_cone())
}

/// A unimodular matrix `U` with `h U = e_1` and its inverse, for primitive `h`.
///
/// The columns `2..n` of `U` form a basis of the sublattice `h^⊥`, and the coordinates of a
/// point `x` of `h^⊥` in that basis are the entries `2..n` of `U^{-1} x`.
pub fn sublattice_transport(h: &[Integer]) -> Option<(Vec<ZVector>, Vec<ZVector>)> {
    let n = h.len();
    let mut a: ZVector = h.to_vec();
    let mut u: Vec<ZVector> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        Integer::one()
                    } else {
                        Integer::zero()
                    }
                })
                .collect()
        })
        .collect();
    let first = a.iter().position(|x| !x.is_zero())?;
    swap_columns(&mut u, 0, first);
    a.swap(0, first);
    for j in 1..n {
        if a[j].is_zero() {
            continue;
        }
        let e = a[0].extended_gcd(&a[j]);
        let (g, s, t) = (e.gcd, e.x, e.y);
        let p = &a[0] / &g;
        let q = &a[j] / &g;
        for row in u.iter_mut() {
            let c0 = row[0].clone();
            let cj = row[j].clone();
            row[0] = &s * &c0 + &t * &cj;
            row[j] = -&q * &c0 + &p * &cj;
        }
        a[0] = g;
        a[j] = Integer::zero();
    }
    if !a[0].abs().is_one() {
        return None;
    }
    if a[0].is_negative() {
        for row in u.iter_mut() {
            row[0] = -row[0].clone();
        }
    }
    let uq: Vec<QVector> = u.iter().map(|r| to_rational(r)).collect();
    let inv = linalg::inverse(&uq)?;
    let inv: Vec<ZVector> = inv.iter().map(|r| to_integer(r)).collect::<Option<_>>()?;
    Some((u, inv))
}

fn swap_columns(m: &mut [ZVector], a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

/// Expresses a polytope lying in `h^⊥` in coordinates of the sublattice `h^⊥`.
pub fn to_sublattice(p: &RationalPolytope, h: &[Integer]) -> Option<RationalPolytope> {
    let (_, inv) = sublattice_transport(h)?;
    let n = h.len();
    let mut points = Vec::with_capacity(p.vertices().len());
    for v in p.vertices() {
        let z: QVector = inv.iter().map(|row| dot_zq(row, v)).collect();
        if !z[0].is_zero() {
            return None;
        }
        points.push(z[1..].to_vec());
    }
    RationalPolytope::convex_hull(&points, n - 1, p.lattice()).ok()
}

/// Every `r <= rank` at which the slice test succeeds, with the interior point found.
pub fn almost_reflexive_indices(c: &GradedCone) -> Vec<(usize, ZVector)> {
    let Some(height) = c.height.as_ref() else {
        return Vec::new();
    };
    (1..=c.rank())
        .filter_map(|r| slice_test(&c.cone, height, r).map(|h| (r, h)))
        .collect()
}

/// The smallest `r` for which `σ_(r)` has a unique relative-interior lattice point `h` and
/// `σ_(r) - h` is almost reflexive in the sublattice orthogonal to the height.
pub fn is_almost_reflexive_gorenstein(c: &GradedCone) -> Option<(usize, ZVector)> {
    let height = c.height.as_ref()?;
    (1..=c.rank()).find_map(|r| slice_test(&c.cone, height, r).map(|h| (r, h)))
}

fn slice_test(cone: &PolyhedralCone, height: &[Integer], r: usize) -> Option<ZVector> {
    let level = u32::try_from(r).ok()?;
    let s = slice(cone, level, height).ok()?;
    let interior = s.relative_interior_lattice_points();
    let [h] = interior.as_slice() else {
        return None;
    };
    let centred = s.translate(&h.to_rational().iter().map(|x| -x).collect::<QVector>());
    let local = to_sublattice(&centred, height)?;
    is_almost_reflexive(&local).then(|| h.0.clone())
}

/// `σ• = R≥0 [σ∨_(1)]`, where the dual is graded by the interior height point of `σ`.
pub fn bullet_cone(c: &GradedCone) -> Result<GradedCone> {
    c.require_height()?;
    let h = match &c.interior_height_point {
        Some(h) => h.clone(),
        None => {
            is_almost_reflexive_gorenstein(c)
                .ok_or(Error::NotAlmostReflexive)?
                .1
        }
    };
    let dual = c.cone.dual_cone();
    let level_one = slice(&dual, 1, &h)?;
    let points: Vec<QVector> = level_one
        .lattice_points()
        .iter()
        .map(|x| x.to_rational())
        .collect();
    if points.is_empty() {
        return Err(Error::NotAlmostReflexive);
    }
    let cone = PolyhedralCone::from_generators(&points, c.rank(), dual.lattice())
        .map_err(|_| Error::NotAlmostReflexive)?;
    Ok(GradedCone::new(cone).with_index())
}

/// The mirror generalized Calabi-Yau cone `C•` for the Cayley cone of the lattice hulls of
/// the given parts; `None` when that Cayley cone is not almost reflexive Gorenstein.
pub fn cayley_mirror(parts: &[RationalPolytope]) -> Result<Option<GradedCone>> {
    common_rank(parts)?;
    let hulls: Vec<RationalPolytope> = parts.iter().map(|p| p.lattice_hull()).collect();
    if hulls.iter().any(|p| p.is_empty()) {
        return Ok(None);
    }
    let c = match cayley_cone(&hulls) {
        Ok(c) => c.with_index(),
        Err(Error::DegenerateCone) => return Ok(None),
        Err(e) => return Err(e),
    };
    if c.index.is_none() {
        return Ok(None);
    }
    bullet_cone(&c).map(Some)
}

/// Whether every primitive generator lies at level 1 of the recorded height.
pub fn heights_consistent(c: &GradedCone) -> bool {
    match &c.height {
        Some(h) => c.cone.generators.iter().all(|g| dot_z(g, h).is_one()),
        None => true,
    }
}
