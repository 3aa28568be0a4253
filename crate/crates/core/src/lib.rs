//! Bound states of the two-term diatomic molecular potential
//!
//! ```text
//! V(r) = -V0 e^{-βr} / (1 - q e^{-βr}) + V1 e^{-2βr} / (1 - q e^{-βr})^2
//! ```
//!
//! and its special cases (Manning-Rosen, Hulthén, Coulomb, generalized Morse).
//!
//! The crate is organised bottom-up:
//!
//! * [`units`]: physical constants, molecule parameters and the reduction of a
//!   dimensioned potential to dimensionless couplings.
//! * [`potentials`]: the potential family, the molecule mapping and the
//!   exact / Greene-Aldrich centrifugal terms.
//! * [`specfun`]: Pochhammer symbols, hypergeometric functions, Laguerre
//!   polynomials and the incomplete gamma function.
//! * [`quadrature`]: adaptive Gauss-Kronrod integration.
//! * [`spectra`]: closed-form energy eigenvalues.
//! * [`wavefunctions`]: analytic radial wave functions and their normalization.
//! * [`oracle`]: an independent Numerov shooting eigensolver.
//! * [`config`]: JSON run configuration.
//! * [`report`]: embedded reference tables, comparison records and the
//!   table/validation drivers used by the command-line tool.

// `!(x > 0.0)` deliberately rejects NaN alongside non-positive values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod error;
pub mod oracle;
pub mod potentials;
pub mod quadrature;
pub mod report;
pub mod specfun;
pub mod spectra;
pub mod units;
pub mod wavefunctions;

pub use error::{Error, Result};
pub use oracle::{Centrifugal, EigenResult, RadialProblem};
pub use potentials::{PotentialKind, TwoTermPotential};
pub use spectra::{MorseParams, WaveParams};
pub use units::{KineticScale, MoleculeParams, PhysicalConstants, ReducedHamiltonian};
pub use wavefunctions::{BoundState, NormConvention};
