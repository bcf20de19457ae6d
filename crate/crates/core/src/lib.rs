//! Minkowski asymmetry and Minkowski chirality of convex polygons.
//!
//! The crate computes `α₀(K) = R(K, -K)` and `α₁(K) = min_U R(K, Φ_U(K))`,
//! where `R` is the optimal-containment circumradius and `Φ_U` the reflection
//! across a line `U` through the origin, both numerically and through closed
//! forms for triangles and parallelograms.

pub mod bounds_lab;
pub mod chirality;
pub mod closed_form;
pub mod containment;
pub mod error;
pub mod geometry;
pub mod io;
pub mod lp;
pub mod phase_atlas;
pub mod sampling;

pub use chirality::{
    alpha1_numeric, alpha2, asymmetry_alpha0, chirality_profile, AxisKind, ChiralityResult,
    SweepOptions,
};
pub use closed_form::{
    parallelogram_alpha1, shape_from_vertices, triangle_alpha1, CanonicalParallelogram,
    ParallelogramShape, Shape, TriangleShape,
};
pub use containment::{certify_optimality, circumradius, distance_dd, inradius, ContainmentResult};
pub use error::{Error, Result};
pub use phase_atlas::{Family, PhaseConstants, PhaseRegion, RegionTag};
pub use geometry::{convex_hull, hausdorff, Axis, ConvexPolygon, EllipseSpec, Halfplane, Point2};
