//! Scattering of a plane-wave particle by harmonically trapped quantum
//! scatterers interacting through a regularized contact potential: single
//! oscillators in definite eigenstates, Bose/Fermi/Boltzmann ensembles in
//! thermal equilibrium, and condensates in single traps, double wells and
//! 1-D optical lattices.
//!
//! Everything is dimensionless: lengths in units of the s-wave scattering
//! length a_s, wavenumbers as k·a_s, temperatures as t = k_B T/ħω, and
//! differential cross-sections in a_s². [`si`] converts laboratory numbers
//! at the boundary.
//!
//! The closed forms all scale one complex constant, the unitarized
//! fixed-scatterer amplitude a_k of [`context`], by a real form factor:
//! a Gaussian in the momentum transfer times Laguerre polynomials (one per
//! trap axis), summed over scatterer states with the appropriate weights.
//! [`validate`] holds the independent brute-force routes (quadrature over
//! eigenfunction densities, literal occupation sums) the closed forms are
//! tested against.

pub mod condensate;
pub mod context;
pub mod error;
pub mod geometry;
pub mod kinematics;
pub mod profile;
pub mod si;
pub mod single;
pub mod solve;
pub mod specfun;
pub mod thermal;
pub mod validate;

pub use num_complex::Complex64;

pub use condensate::{ArrayGeometry, CondensateParams, CrossSection};
pub use context::ScatteringContext;
pub use error::{Error, Result};
pub use geometry::TrapGeometry;
pub use kinematics::MomentumTransfer;
pub use profile::{AngularProfile, ProfilePoint};
pub use single::OscillatorState;
pub use thermal::{CutoffPolicy, EnsembleSpec, FermiGroundMode, Statistics, ThermalEnsemble};
