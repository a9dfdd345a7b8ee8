//! Pseudospectral solvers and a benchmark harness for the cubic nonlinear
//! Schrödinger equation `i∂_t u = -Δu + μ|u|²u` on the d-dimensional torus.
//!
//! The crate provides
//!
//! - [`grid`]/[`field`]/[`ops`]/[`norm`]: the discrete torus, complex fields
//!   stored as Fourier coefficients, the Fourier multiplier operators
//!   (free flow, regularized inverse derivative, `φ₁`, zero-mode slices)
//!   and the discrete L²/H¹ and Sobolev norms;
//! - [`lowreg`]: second-order low-regularity Fourier integrators — the 1D
//!   scheme built from the closed-form oscillatory integrals `J₁`, `J₂`,
//!   and the d-dimensional scheme built from `φ₁` and the per-axis
//!   integrals `K_j`;
//! - [`baseline`]: Strang splitting, the analytic plane-wave solution and
//!   fine-step reference solves;
//! - [`oracle`]: brute-force `O(N^{3d})` direct-sum evaluations of the same
//!   integrals, used as ground truth for the fast pipelines;
//! - [`experiments`]/[`report`]: seeded rough initial data, energy/mass
//!   functionals, convergence ladders with log-log order fits, long-time
//!   conservation series and CSV output.
//!
//! All fields are immutable values and all operations are pure functions,
//! so everything can be driven concurrently on distinct inputs.

pub mod baseline;
pub mod error;
pub mod experiments;
pub mod field;
pub mod grid;
pub mod lowreg;
pub mod norm;
pub mod ops;
pub mod oracle;
pub mod report;
pub mod rng;

pub use error::{Error, Result};
pub use field::{max_coeff_error, Field};
pub use grid::TorusGrid;
pub use lowreg::{Method, SchemeParams};
pub use norm::NormKind;
