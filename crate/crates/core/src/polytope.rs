//! Rational polytopes with exact vertex and facet descriptions.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{
    self, ceil, clear_denominators, dot_q, dot_zq, floor, format_qvector, format_rational,
    format_zvector, gcd_all, is_integral, primitive_direction, Integer, QVector, Rational, ZVector,
};
use crate::dd::cone_generators;
use crate::error::{Error, Result};
use crate::linalg;

/// Which of the two dual lattices a polytope lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Lattice {
    M,
    N,
}

impl Lattice {
    pub fn dual(self) -> Self {
        match self {
            Lattice::M => Lattice::N,
            Lattice::N => Lattice::M,
        }
    }
}

impl fmt::Display for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Lattice::M => write!(f, "M"),
            Lattice::N => write!(f, "N"),
        }
    }
}

/// An integer point of the ambient lattice.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticePoint(pub ZVector);

impl LatticePoint {
    pub fn coords(&self) -> &[Integer] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_origin(&self) -> bool {
        self.0.iter().all(|x| x.is_zero())
    }

    pub fn to_rational(&self) -> QVector {
        arith::to_rational(&self.0)
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_zvector(&self.0))
    }
}

/// The closed halfspace `<x, normal> >= offset`, with a primitive integer normal.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Halfspace {
    pub normal: ZVector,
    pub offset: Rational,
}

impl Halfspace {
    /// `<x, normal> - offset`.
    pub fn slack(&self, x: &[Rational]) -> Rational {
        dot_zq(&self.normal, x) - &self.offset
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        !self.slack(x).is_negative()
    }

    pub fn is_tight(&self, x: &[Rational]) -> bool {
        self.slack(x).is_zero()
    }

    /// For a halfspace with negative offset, the point `n` with `<x, n> >= -1` describing it.
    pub fn dual_point(&self) -> Option<QVector> {
        if !self.offset.is_negative() {
            return None;
        }
        let s = -self.offset.recip();
        Some(
            self.normal
                .iter()
                .map(|a| Rational::from_integer(a.clone()) * &s)
                .collect(),
        )
    }
}

impl fmt::Display for Halfspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "<x,{}> >= {}",
            format_zvector(&self.normal),
            format_rational(&self.offset)
        )
    }
}

/// The affine hyperplane `<x, normal> = offset`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Hyperplane {
    pub normal: ZVector,
    pub offset: Rational,
}

impl Hyperplane {
    pub fn contains(&self, x: &[Rational]) -> bool {
        dot_zq(&self.normal, x) == self.offset
    }
}

/// A bounded rational polytope, possibly empty or lower-dimensional.
///
/// Vertices are exactly the extreme points in lexicographic order. Facets are the irredundant
/// inequalities relative to the affine hull, sorted; `equations` describe the affine hull.
/// Equality compares rank, lattice tag and the vertex list.
#[derive(Clone, Debug)]
pub struct RationalPolytope {
    rank: usize,
    lattice: Lattice,
    vertices: Vec<QVector>,
    facets: Vec<Halfspace>,
    equations: Vec<Hyperplane>,
}

impl PartialEq for RationalPolytope {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank && self.lattice == other.lattice && self.vertices == other.vertices
    }
}

impl Eq for RationalPolytope {}

impl std::hash::Hash for RationalPolytope {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.rank.hash(state);
        self.lattice.hash(state);
        self.vertices.hash(state);
    }
}

impl fmt::Display for RationalPolytope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "empty[{}]", self.lattice);
        }
        let vs: Vec<String> = self.vertices.iter().map(|v| format_qvector(v)).collect();
        write!(f, "conv{{{}}}[{}]", vs.join(","), self.lattice)
    }
}

/// Convex hull of a nonempty point list in the `M` lattice.
pub fn convex_hull(points: &[QVector], rank: usize) -> Result<RationalPolytope> {
    RationalPolytope::convex_hull(points, rank, Lattice::M)
}

impl RationalPolytope {
    pub fn empty(rank: usize, lattice: Lattice) -> Self {
        Self {
            rank,
            lattice,
            vertices: Vec::new(),
            facets: Vec::new(),
            equations: Vec::new(),
        }
    }

    pub fn convex_hull(points: &[QVector], rank: usize, lattice: Lattice) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyInput);
        }
        for p in points {
            if p.len() != rank {
                return Err(Error::DimensionMismatch {
                    expected: rank,
                    got: p.len(),
                });
            }
        }
        let mut pts: Vec<QVector> = points.to_vec();
        pts.sort();
        pts.dedup();
        Ok(Self::hull_of_distinct(pts, rank, lattice))
    }

    /// Convex hull of integer points.
    pub fn from_lattice_points(points: &[ZVector], rank: usize, lattice: Lattice) -> Result<Self> {
        let pts: Vec<QVector> = points.iter().map(|p| arith::to_rational(p)).collect();
        Self::convex_hull(&pts, rank, lattice)
    }

    fn hull_of_distinct(pts: Vec<QVector>, rank: usize, lattice: Lattice) -> Self {
        if pts.len() == 1 {
            let p = &pts[0];
            let equations = (0..rank)
                .map(|i| {
                    let mut normal = vec![Integer::zero(); rank];
                    normal[i] = Integer::one();
                    Hyperplane {
                        normal,
                        offset: p[i].clone(),
                    }
                })
                .collect();
            return Self {
                rank,
                lattice,
                vertices: pts,
                facets: Vec::new(),
                equations,
            };
        }

        let rows: Vec<ZVector> = pts
            .iter()
            .map(|p| {
                let mut h = p.clone();
                h.push(Rational::one());
                clear_denominators(&h)
            })
            .collect();
        let gens = cone_generators(&rows, rank + 1);

        let mut equations: Vec<Hyperplane> = gens
            .lineality
            .iter()
            .map(|y| split_affine(y, rank))
            .map(|(normal, offset)| Hyperplane { normal, offset })
            .collect();
        equations.sort();

        let mut facets: Vec<Halfspace> = Vec::new();
        for y in &gens.rays {
            let (normal, offset) = split_affine(y, rank);
            if normal.iter().all(|x| x.is_zero()) {
                continue;
            }
            let h = Halfspace { normal, offset };
            if pts.iter().any(|p| h.is_tight(p)) {
                facets.push(h);
            }
        }
        facets.sort();

        let eq_rows: Vec<QVector> = equations
            .iter()
            .map(|e| arith::to_rational(&e.normal))
            .collect();
        let vertices: Vec<QVector> = pts
            .into_iter()
            .filter(|p| {
                let mut tight = eq_rows.clone();
                tight.extend(
                    facets
                        .iter()
                        .filter(|f| f.is_tight(p))
                        .map(|f| arith::to_rational(&f.normal)),
                );
                linalg::rank(&tight, rank) == rank
            })
            .collect();

        Self {
            rank,
            lattice,
            vertices,
            facets,
            equations,
        }
    }

    /// The polytope `{x : <x, a> >= b for every halfspace}`; `Ok(empty)` when infeasible.
    pub fn from_halfspaces(
        halfspaces: &[(QVector, Rational)],
        rank: usize,
        lattice: Lattice,
    ) -> Result<Self> {
        let mut rows: Vec<ZVector> = Vec::with_capacity(halfspaces.len() + 1);
        for (a, b) in halfspaces {
            if a.len() != rank {
                return Err(Error::DimensionMismatch {
                    expected: rank,
                    got: a.len(),
                });
            }
            let mut h = a.clone();
            h.push(-b.clone());
            rows.push(clear_denominators(&h));
        }
        let mut t = vec![Integer::zero(); rank + 1];
        t[rank] = Integer::one();
        rows.push(t);
        let gens = cone_generators(&rows, rank + 1);
        if let Some(line) = gens.lineality.first() {
            return Err(Error::Unbounded(format_zvector(&line[..rank])));
        }
        let mut vertices = Vec::new();
        let mut recession = None;
        for y in &gens.rays {
            let t = &y[rank];
            if t.is_zero() {
                recession.get_or_insert_with(|| y[..rank].to_vec());
            } else {
                let tq = Rational::from_integer(t.clone());
                vertices.push(
                    y[..rank]
                        .iter()
                        .map(|x| Rational::from_integer(x.clone()) / &tq)
                        .collect::<QVector>(),
                );
            }
        }
        if vertices.is_empty() {
            return Ok(Self::empty(rank, lattice));
        }
        if let Some(dir) = recession {
            return Err(Error::Unbounded(format_zvector(&dir)));
        }
        Self::convex_hull(&vertices, rank, lattice)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn lattice(&self) -> Lattice {
        self.lattice
    }

    pub fn with_lattice(mut self, lattice: Lattice) -> Self {
        self.lattice = lattice;
        self
    }

    pub fn vertices(&self) -> &[QVector] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Halfspace] {
        &self.facets
    }

    pub fn equations(&self) -> &[Hyperplane] {
        &self.equations
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Dimension of the affine hull; `None` for the empty polytope.
    pub fn dim(&self) -> Option<usize> {
        (!self.is_empty()).then(|| self.rank - self.equations.len())
    }

    /// Dimension with `-1` for the empty polytope.
    pub fn signed_dim(&self) -> isize {
        self.dim().map_or(-1, |d| d as isize)
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dim() == Some(self.rank)
    }

    pub fn is_lattice_polytope(&self) -> bool {
        !self.is_empty() && self.vertices.iter().all(|v| is_integral(v))
    }

    /// True iff the polytope is the single point `{0}`.
    pub fn is_origin(&self) -> bool {
        self.vertices.len() == 1 && self.vertices[0].iter().all(|x| x.is_zero())
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        !self.is_empty()
            && self.equations.iter().all(|e| e.contains(x))
            && self.facets.iter().all(|f| f.contains(x))
    }

    /// Strictly inside every facet, on every equation.
    pub fn relative_interior_contains(&self, x: &[Rational]) -> bool {
        !self.is_empty()
            && self.equations.iter().all(|e| e.contains(x))
            && self.facets.iter().all(|f| f.slack(x).is_positive())
    }

    pub fn interior_contains(&self, x: &[Rational]) -> bool {
        self.is_full_dimensional() && self.relative_interior_contains(x)
    }

    pub fn contains_origin(&self) -> bool {
        self.contains(&vec![Rational::zero(); self.rank])
    }

    pub fn origin_in_interior(&self) -> bool {
        self.interior_contains(&vec![Rational::zero(); self.rank])
    }

    /// Checks that 0 is an interior point, naming the first violated facet otherwise.
    pub fn check_origin_interior(&self) -> Result<()> {
        if !self.is_full_dimensional() {
            return Err(Error::Degenerate {
                dim: self.signed_dim(),
                rank: self.rank,
            });
        }
        match self.facets.iter().find(|f| !f.offset.is_negative()) {
            Some(f) => Err(Error::OriginNotInterior(f.to_string())),
            None => Ok(()),
        }
    }

    /// `min <v, y>` over the polytope.
    pub fn min_pairing(&self, y: &[Rational]) -> Rational {
        assert_eq!(y.len(), self.rank, "pairing vector has the wrong length");
        self.vertices
            .iter()
            .map(|v| dot_q(v, y))
            .min()
            .unwrap_or_else(Rational::zero)
    }

    pub fn min_pairing_int(&self, y: &[Integer]) -> Rational {
        self.min_pairing(&arith::to_rational(y))
    }

    /// The dual polytope `{n : <m, n> >= -1 for all m}` in the dual lattice.
    pub fn polar_dual(&self) -> Result<Self> {
        self.check_origin_interior()?;
        let mut vertices: Vec<QVector> = self
            .facets
            .iter()
            .map(|f| f.dual_point().expect("negative offset"))
            .collect();
        vertices.sort();
        let mut facets: Vec<Halfspace> = self
            .vertices
            .iter()
            .map(|v| {
                let normal = primitive_direction(v);
                let (i, a) = normal
                    .iter()
                    .enumerate()
                    .find(|(_, a)| !a.is_zero())
                    .expect("vertex of a polytope with interior origin is nonzero");
                // v = s * normal, and <y, v> >= -1 becomes <y, normal> >= -1/s.
                let s = &v[i] / Rational::from_integer(a.clone());
                Halfspace {
                    normal,
                    offset: -s.recip(),
                }
            })
            .collect();
        facets.sort();
        Ok(Self {
            rank: self.rank,
            lattice: self.lattice.dual(),
            vertices,
            facets,
            equations: Vec::new(),
        })
    }

    /// Dilation by a nonnegative rational.
    pub fn scale(&self, t: &Rational) -> Self {
        assert!(!t.is_negative(), "dilation factor must be nonnegative");
        if self.is_empty() {
            return self.clone();
        }
        if t.is_zero() {
            return Self::hull_of_distinct(
                vec![vec![Rational::zero(); self.rank]],
                self.rank,
                self.lattice,
            );
        }
        Self {
            rank: self.rank,
            lattice: self.lattice,
            vertices: self.vertices.iter().map(|v| arith::scale_q(v, t)).collect(),
            facets: self
                .facets
                .iter()
                .map(|f| Halfspace {
                    normal: f.normal.clone(),
                    offset: &f.offset * t,
                })
                .collect(),
            equations: self
                .equations
                .iter()
                .map(|e| Hyperplane {
                    normal: e.normal.clone(),
                    offset: &e.offset * t,
                })
                .collect(),
        }
    }

    pub fn translate(&self, v: &[Rational]) -> Self {
        if self.is_empty() {
            return self.clone();
        }
        let pts: Vec<QVector> = self.vertices.iter().map(|p| arith::add_q(p, v)).collect();
        Self::hull_of_distinct(sorted(pts), self.rank, self.lattice)
    }

    pub fn negate(&self) -> Self {
        self.scale_signed(&-Rational::one())
    }

    fn scale_signed(&self, t: &Rational) -> Self {
        if self.is_empty() {
            return self.clone();
        }
        let pts: Vec<QVector> = self.vertices.iter().map(|p| arith::scale_q(p, t)).collect();
        Self::hull_of_distinct(sorted(pts), self.rank, self.lattice)
    }

    /// Image under `x -> A x` for a `target_rank x rank` matrix.
    pub fn linear_image(&self, matrix: &[QVector], target_rank: usize) -> Result<Self> {
        if self.is_empty() {
            return Ok(Self::empty(target_rank, self.lattice));
        }
        let pts: Vec<QVector> = self
            .vertices
            .iter()
            .map(|v| linalg::mat_vec(matrix, v))
            .collect();
        Self::convex_hull(&pts, target_rank, self.lattice)
    }

    /// Projection onto the trailing coordinates `start..rank`.
    pub fn project_tail(&self, start: usize) -> Self {
        let r = self.rank - start;
        if self.is_empty() {
            return Self::empty(r, self.lattice);
        }
        let pts: Vec<QVector> = self.vertices.iter().map(|v| v[start..].to_vec()).collect();
        let mut pts = pts;
        pts.sort();
        pts.dedup();
        Self::hull_of_distinct(pts, r, self.lattice)
    }

    /// Cartesian product, living in the direct sum of the two lattices.
    pub fn product(&self, other: &Self) -> Result<Self> {
        if self.lattice != other.lattice {
            return Err(Error::LatticeMismatch(self.lattice, other.lattice));
        }
        let rank = self.rank + other.rank;
        if self.is_empty() || other.is_empty() {
            return Ok(Self::empty(rank, self.lattice));
        }
        let mut pts = Vec::new();
        for a in &self.vertices {
            for b in &other.vertices {
                let mut v = a.clone();
                v.extend(b.iter().cloned());
                pts.push(v);
            }
        }
        Self::convex_hull(&pts, rank, self.lattice)
    }

    /// Embeds into a larger ambient space, placing coordinates at `offset..offset+rank`.
    pub fn embed(&self, total_rank: usize, offset: usize) -> Self {
        if self.is_empty() {
            return Self::empty(total_rank, self.lattice);
        }
        let pts: Vec<QVector> = self
            .vertices
            .iter()
            .map(|v| {
                let mut w = vec![Rational::zero(); total_rank];
                w[offset..offset + self.rank].clone_from_slice(v);
                w
            })
            .collect();
        Self::hull_of_distinct(sorted(pts), total_rank, self.lattice)
    }

    /// Inequalities (facets plus both sides of each equation) as `(normal, offset)`.
    fn inequality_system(&self) -> Vec<(ZVector, Rational)> {
        let mut out: Vec<(ZVector, Rational)> = self
            .facets
            .iter()
            .map(|f| (f.normal.clone(), f.offset.clone()))
            .collect();
        for e in &self.equations {
            out.push((e.normal.clone(), e.offset.clone()));
            out.push((e.normal.iter().map(|x| -x).collect(), -e.offset.clone()));
        }
        out
    }

    /// All integer points, in lexicographic order.
    ///
    /// Coordinates are fixed from the last one backwards; at each step the admissible range of
    /// the next coordinate is read off the facets of the projection onto the trailing
    /// coordinates, which are exact bounds.
    pub fn lattice_points(&self) -> Vec<LatticePoint> {
        if self.is_empty() {
            return Vec::new();
        }
        let d = self.rank;
        let systems: Vec<Vec<(ZVector, Rational)>> = (0..d)
            .map(|j| {
                if j == 0 {
                    self.inequality_system()
                } else {
                    self.project_tail(j).inequality_system()
                }
            })
            .collect();
        let mut x = vec![Integer::zero(); d];
        let mut out = Vec::new();
        enumerate_level(&systems, d - 1, &mut x, &mut out);
        out.sort();
        out
    }

    /// Lattice points strictly inside every facet.
    pub fn relative_interior_lattice_points(&self) -> Vec<LatticePoint> {
        self.lattice_points()
            .into_iter()
            .filter(|p| {
                self.facets
                    .iter()
                    .all(|f| f.slack(&p.to_rational()).is_positive())
            })
            .collect()
    }

    pub fn interior_lattice_points(&self) -> Vec<LatticePoint> {
        if !self.is_full_dimensional() {
            return Vec::new();
        }
        self.relative_interior_lattice_points()
    }

    /// The lattice hull `conv(P ∩ lattice)`; the empty polytope if there are no lattice points.
    pub fn lattice_hull(&self) -> Self {
        let pts = self.lattice_points();
        if pts.is_empty() {
            return Self::empty(self.rank, self.lattice);
        }
        let pts: Vec<QVector> = pts.iter().map(|p| p.to_rational()).collect();
        Self::hull_of_distinct(pts, self.rank, self.lattice)
    }

    pub fn minkowski_sum(&self, other: &Self) -> Result<Self> {
        if self.rank != other.rank {
            return Err(Error::DimensionMismatch {
                expected: self.rank,
                got: other.rank,
            });
        }
        if self.lattice != other.lattice {
            return Err(Error::LatticeMismatch(self.lattice, other.lattice));
        }
        if self.is_empty() || other.is_empty() {
            return Ok(Self::empty(self.rank, self.lattice));
        }
        let mut pts = Vec::with_capacity(self.vertices.len() * other.vertices.len());
        for a in &self.vertices {
            for b in &other.vertices {
                pts.push(arith::add_q(a, b));
            }
        }
        Self::convex_hull(&pts, self.rank, self.lattice)
    }

    /// Convex hull of the union.
    pub fn join(&self, other: &Self) -> Result<Self> {
        if self.rank != other.rank {
            return Err(Error::DimensionMismatch {
                expected: self.rank,
                got: other.rank,
            });
        }
        if self.lattice != other.lattice {
            return Err(Error::LatticeMismatch(self.lattice, other.lattice));
        }
        let pts: Vec<QVector> = self
            .vertices
            .iter()
            .chain(other.vertices.iter())
            .cloned()
            .collect();
        if pts.is_empty() {
            return Ok(Self::empty(self.rank, self.lattice));
        }
        Self::convex_hull(&pts, self.rank, self.lattice)
    }

    /// Vertex index sets of every nonempty face, including the polytope itself.
    fn face_vertex_sets(&self) -> Vec<Vec<usize>> {
        let all: Vec<usize> = (0..self.vertices.len()).collect();
        let facet_sets: Vec<Vec<usize>> = self
            .facets
            .iter()
            .map(|f| {
                all.iter()
                    .copied()
                    .filter(|&i| f.is_tight(&self.vertices[i]))
                    .collect()
            })
            .collect();
        let mut faces: std::collections::BTreeSet<Vec<usize>> = std::collections::BTreeSet::new();
        faces.insert(all);
        let mut frontier: Vec<Vec<usize>> = facet_sets.clone();
        while let Some(f) = frontier.pop() {
            if f.is_empty() || !faces.insert(f.clone()) {
                continue;
            }
            for g in &facet_sets {
                let meet: Vec<usize> = f.iter().copied().filter(|i| g.contains(i)).collect();
                if !meet.is_empty() && meet.len() < f.len() && !faces.contains(&meet) {
                    frontier.push(meet);
                }
            }
        }
        faces.into_iter().collect()
    }

    /// All `k`-dimensional faces, each as a polytope.
    pub fn faces(&self, k: usize) -> Result<Vec<Self>> {
        let dim = self.dim().ok_or(Error::EmptyInput)?;
        if k > dim {
            return Err(Error::FaceDimension { k, dim });
        }
        let mut out: Vec<Self> = self
            .face_vertex_sets()
            .into_iter()
            .filter_map(|set| {
                let pts: Vec<QVector> = set.iter().map(|&i| self.vertices[i].clone()).collect();
                (linalg::affine_dimension(&pts) == k)
                    .then(|| Self::hull_of_distinct(pts, self.rank, self.lattice))
            })
            .collect();
        out.sort_by(|a, b| a.vertices.cmp(&b.vertices));
        Ok(out)
    }

    /// The face on which `<x, y>` attains its minimum.
    pub fn face_minimizing(&self, y: &[Rational]) -> Self {
        if self.is_empty() {
            return self.clone();
        }
        let m = self.min_pairing(y);
        let pts: Vec<QVector> = self
            .vertices
            .iter()
            .filter(|v| dot_q(v, y) == m)
            .cloned()
            .collect();
        Self::hull_of_distinct(pts, self.rank, self.lattice)
    }

    /// Vertex pairs joined by an edge.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for set in self.face_vertex_sets() {
            if set.len() == 2 {
                out.push((set[0], set[1]));
            }
        }
        out.sort();
        out
    }
}

fn sorted(mut pts: Vec<QVector>) -> Vec<QVector> {
    pts.sort();
    pts.dedup();
    pts
}

/// Splits a homogenized covector `(a, c)` into `(a / g, -c / g)` with `a / g` primitive.
fn split_affine(y: &[Integer], rank: usize) -> (ZVector, Rational) {
    let a = &y[..rank];
    let c = &y[rank];
    let g = gcd_all(a);
    if g.is_zero() {
        return (a.to_vec(), -Rational::from_integer(c.clone()));
    }
    let normal: ZVector = a.iter().map(|x| x / &g).collect();
    (normal, Rational::new(-c.clone(), g))
}

fn enumerate_level(
    systems: &[Vec<(ZVector, Rational)>],
    j: usize,
    x: &mut ZVector,
    out: &mut Vec<LatticePoint>,
) {
    let mut lo: Option<Rational> = None;
    let mut hi: Option<Rational> = None;
    for (a, b) in &systems[j] {
        // a[0] x_j + sum_{k>0} a[k] x_{j+k} >= b
        let mut rhs = b.clone();
        for (ak, xk) in a[1..].iter().zip(&x[j + 1..]) {
            if !ak.is_zero() {
                rhs -= Rational::from_integer(ak * xk);
            }
        }
        let aj = &a[0];
        if aj.is_zero() {
            if rhs.is_positive() {
                return;
            }
            continue;
        }
        let bound = rhs / Rational::from_integer(aj.clone());
        if aj.is_positive() {
            if lo.as_ref().is_none_or(|l| bound > *l) {
                lo = Some(bound);
            }
        } else if hi.as_ref().is_none_or(|h| bound < *h) {
            hi = Some(bound);
        }
    }
    let (Some(lo), Some(hi)) = (lo, hi) else {
        unreachable!("projection of a bounded polytope bounds every coordinate");
    };
    let mut v = ceil(&lo);
    let top = floor(&hi);
    while v <= top {
        x[j] = v.clone();
        if j == 0 {
            out.push(LatticePoint(x.clone()));
        } else {
            enumerate_level(systems, j - 1, x, out);
        }
        v += 1;
    }
}
