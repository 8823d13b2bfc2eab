//! Pseudo-spectral evaluation and time integration of weakly nonlinear
//! interface models for Darcy (Muskat) and Forchheimer flow in porous media.
//!
//! The crate is organised bottom-up:
//!
//! - [`spectral`]: periodic grids, transforms, Hilbert/Calderon/derivative
//!   multipliers, the finite-depth Dirichlet–Neumann symbol and dealiased products;
//! - [`strip`]: elliptic solves on the semi-infinite strip `S¹ × (-∞, 0]`
//!   (explicit Poisson solver, harmonic extension, Forchheimer source and flux);
//! - [`model`]: right-hand sides of the linear, quadratic Darcy, expansion,
//!   Forchheimer and three-dimensional models;
//! - [`time_march`]: integrating-factor Runge–Kutta stepping and trajectories;
//! - [`run`]: configuration parsing, initial data and CSV/JSON output used by
//!   the `simulate` binary.

pub mod error;
pub mod model;
pub mod run;
pub mod spectral;
pub mod strip;
pub mod time_march;

pub use error::{Error, Result};
