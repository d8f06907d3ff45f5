//! Rational-triangle Schwarz-Christoffel maps and the star-polygon billiards
//! attached to them.
//!
//! Starting from an integer triple `(n0, n1, n_inf)` with `n = n0 + n1 + n_inf`,
//! this crate computes
//!
//! * the branch degrees, ramification and genus of the affine curve
//!   `eta^n = xi^(n-n0) (1-xi)^(n-n1)` viewed as an n-fold cover of the plane
//!   ([`signature`]),
//! * the specific complex n-th root that makes the cover concrete, its n
//!   sheets, the tangent field and the flat metric on the curve ([`branch`]),
//! * numerical values of the Schwarz-Christoffel maps onto the rational
//!   triangle and its double, plus the per-sheet developing maps ([`scmap`]),
//! * the dihedral group `D_2n`, its distinguished reflections, the edge
//!   translation vectors and the affine group they generate ([`dihedral`]),
//! * the regular stellated n-gon with its edge identifications, orbit
//!   combinatorics and triangulation counts ([`star`]),
//! * billiard trajectories in the closed star and their straight-line
//!   unfoldings ([`billiard`]),
//! * and a property-check suite aggregating the identities the above are
//!   supposed to satisfy ([`verify`]).
//!
//! All group and index computations are exact integer arithmetic; floating
//! point appears only in quadrature, geometry and the numerical cross-checks.

pub mod billiard;
pub mod branch;
pub mod dihedral;
pub mod error;
pub mod parse;
pub mod scmap;
pub mod signature;
pub mod star;
pub mod verify;

pub use error::{Error, Result};
pub use signature::{genus_table, BranchIndex, CoverProfile, SingularSet, TriangleSignature};
