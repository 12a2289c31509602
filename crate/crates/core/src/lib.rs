//! Curvature and elasticity invariants of separable ("homothetical") functions
//! `f = f1(x1) * ... * fn(xn)`, their outer compositions `F(f)` and the ACMS
//! (CES) production family.
//!
//! * [`funcspec`] describes functions and reads/writes the JSON spec format.
//! * [`jets`] computes exact gradients and Hessians, plus a finite-difference
//!   oracle.
//! * [`geometry`] gives Hessian determinants and the Gauss-Kronecker curvature
//!   of the graph.
//! * [`elasticity`] gives Hicks and Allen elasticities of substitution.
//! * [`classify`] decides membership in the developable, Allen-singular and
//!   constant-elasticity families and builds representatives of each.

pub mod classify;
pub mod elasticity;
pub mod error;
pub mod funcspec;
pub mod geometry;
pub mod jets;
pub mod linalg;
pub mod sampling;

pub use error::{Error, Result};
pub use funcspec::{eval, ComponentFn, FunctionSpec, OuterFn};
