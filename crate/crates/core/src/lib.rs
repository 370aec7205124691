//! Numerical toolkit for harmonic quasiconformal automorphisms of the unit
//! disk.
//!
//! A circle homeomorphism is described by its angular lift `φ` with
//! `φ(t + 2π) = φ(t) + 2π`. The Poisson integral of `e^{iφ}` is a harmonic
//! self-map of the disk; whether it is quasiconformal is decided by
//! bi-Lipschitz bounds on `φ` and boundedness of the periodic Hilbert
//! transform of `φ'`. The crate evaluates all of these ingredients, builds
//! the Cantor-function approximants used to show that the space of such maps
//! is not complete, and measures complex dilatation on polar grids.
//!
//! Every routine is generic over [`Real`] (`f32` / `f64`); the `f64` aliases
//! at the crate root cover the common case.

// `!(x > 0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod boundary_maps;
pub mod cantor;
pub mod error;
pub mod hilbert;
pub mod poisson;
pub mod qc_analysis;
mod scalar;

pub use error::{Error, Result};
pub use num_complex::Complex;
pub use scalar::Real;

pub type C64 = Complex<f64>;

pub type Lift = boundary_maps::LiftFunction<f64>;
pub type Boundary = boundary_maps::BoundaryMap<f64>;
pub type Membership = boundary_maps::MembershipReport<f64>;
pub type PvConfig = hilbert::PVConfig<f64>;
pub type Quadrature = poisson::QuadratureConfig<f64>;
pub type Extension = poisson::HarmonicExtension<f64>;
pub type Approximant = cantor::CantorApproximant<f64>;
pub type Dilatation = qc_analysis::DilatationField<f64>;
pub type Verdict = qc_analysis::PavlovicVerdict<f64>;
