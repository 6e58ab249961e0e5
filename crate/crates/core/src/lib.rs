//! Spectral toolkit for the non-Hermitian quasiperiodic chain
//! `E ψ_n = ψ_{n+1} + ψ_{n-1} + V·i·cot(π(αn + φ)) ψ_n`.
//!
//! Modules follow the pipeline: [`model`] builds the Hamiltonian, [`eigen`]
//! diagonalizes it, [`lyapunov`] and [`observables`] characterize the states,
//! [`duality`] checks them in Fourier space and [`sweep`] drives parameter
//! scans and writes tables. [`cli`] is the command-line front end.

pub mod cli;
pub mod duality;
pub mod eigen;
pub mod error;
pub mod lyapunov;
pub mod matrix;
pub mod model;
pub mod observables;
pub mod sweep;

pub use error::{Error, Result};
pub use matrix::CMatrix;
pub use num_complex::Complex64;
