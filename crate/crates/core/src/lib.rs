//! Exact polyhedral machinery for mirror constructions of Calabi-Yau complete intersections in
//! Fano toric varieties: polar, lattice-hull and bullet duality of rational polytopes,
//! Q-nef-partitions and their duals, Cayley and almost reflexive Gorenstein cones, normal fans,
//! torus-invariant divisors and the defining equations of the associated varieties.
//!
//! Everything is computed in exact rational arithmetic.

pub mod arith;
pub mod classify;
pub mod cones;
pub mod corpus;
mod dd;
pub mod error;
pub mod linalg;
pub mod nef;
pub mod polytope;
pub mod reflexivity;
pub mod toric;

pub use arith::{Integer, QVector, Rational, ZVector};
pub use error::{Error, Result};
pub use polytope::{convex_hull, Halfspace, Hyperplane, Lattice, LatticePoint, RationalPolytope};
