//! Computations with representations of punctured-sphere groups into PSL(2,R).
//!
//! The crate is organised bottom-up:
//!
//! - [`psl2`]: matrices modulo sign, classification, the angle function `theta`,
//!   rotations and reflections of the upper half-plane.
//! - [`circle`]: lifts to the universal cover of the projective line, translation
//!   numbers, special lifts and the deck power of a relation.
//! - [`rep`]: representations `c_1 ... c_n = 1`, relative Euler class, volume,
//!   mirror, restrictions and the refined Milnor-Wood bounds.
//! - [`construct`]: triangle-group pants and the necklace gluing that builds
//!   super-maximal representations from action-angle data.
//! - [`curves`]: words, the braid action and the non-hyperbolicity audit.
//! - [`symplectic`]: moment map, twist flows, the Delzant polytope and volumes.
//! - [`cli`]: the `supermax` command-line front end.

// `!(x > 0.0)` style checks are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod circle;
pub mod cli;
pub mod construct;
pub mod curves;
pub mod error;
pub mod psl2;
pub mod rep;
pub mod symplectic;

pub use circle::{lifted_eval, product_power, special_lift, CirclePoint, LiftedElement};
pub use construct::{
    necklace, sample_component, triangle_pants, ActionAngleCoords, AngleTriple, Orientation,
};
pub use curves::{audit_non_hyperbolic, base_curve, braid_act, evaluate, AuditReport, Word};
pub use error::{Error, Result};
pub use psl2::{
    classify, fixed_point_elliptic, reflection, rotation, theta, translation_length, AntiElement,
    GroupElement, IsometryClass, PlanePoint, Tolerances,
};
pub use rep::{check_milnor_wood, relative_euler_class, EulerReport, SphereRep};
pub use symplectic::{
    delzant_polytope, moment_map, polytope_volume, symplectic_volume, twist_flow, DelzantPolytope,
    MomentVector,
};
