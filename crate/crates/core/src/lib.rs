//! Homogeneous geodesics on nilpotent Lie groups with left-invariant
//! pseudo-Riemannian metrics.
//!
//! The exact side ([`linalg`], [`algebra`], [`derivations`], [`geodesic`])
//! works over arbitrary-precision rationals and decides which tangent vectors
//! are projections of geodesic vectors for the presentation
//! `N = (N x Aut(n)) / Aut(n)` and for left translations alone. The numeric
//! side ([`flow`]) integrates geodesics and isometry orbits to cross-check
//! those verdicts.

pub mod algebra;
pub mod derivations;
pub mod example6;
pub mod file;
pub mod fixtures;
pub mod flow;
pub mod geodesic;
pub mod linalg;
pub mod report;
pub mod scalar;

pub use algebra::{AlgebraError, CenterSplit, MetricNilAlgebra, StructureConstant, Subspace};
pub use derivations::{Derivation, DerivationAlgebra};
pub use geodesic::{GeodesicSolution, GeodesicStatus, SpaceVerdict, Verdict};
pub use linalg::{Matrix, SolutionSet};
pub use scalar::{Field, Rational};

pub type RatMatrix = Matrix<Rational>;
pub type RatAlgebra = MetricNilAlgebra<Rational>;
pub type RatSplit = CenterSplit<Rational>;
pub type FloatMatrix = Matrix<f64>;
