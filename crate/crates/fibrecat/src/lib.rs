//! Exact computational toolkit for topological-complexity lower bounds on
//! finite simplicial complexes.
//!
//! The crate computes field-coefficient (co)homology, cup products, cup
//! lengths and zero-divisor cup lengths (both in the Künneth tensor ring
//! and honestly in a staircase triangulation of `B x B`), realizes the
//! explicit fibrewise Strøm structure on `(B x B, Δ(B))`, translates
//! motion-planner sections into fibrewise compressions and back, performs
//! the cover-enlargement and pointed-upgrade procedures, and evaluates the
//! explicit path-fibration lifting and track-cofibration extension
//! formulas. All arithmetic is exact rational or prime-field; every
//! verification is a seeded, deterministic sample check.

pub mod chain;
pub mod complex;
pub mod fibrewise;
pub mod fixtures;
pub mod geometry;
pub mod linalg;
pub mod planner;
pub mod report;
pub mod ring;
pub mod sampling;
pub mod strom;

pub use complex::{
    build_complex, product_complex, ComplexError, ProductComplex, SimplicialComplex,
};
pub use geometry::{random_point, star_neighborhood, BaryPoint, ProductPoint, Region};
pub use linalg::{Field, Rat, Scalar};
