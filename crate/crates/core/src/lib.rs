//! Bloch-Siegert shift of the Rabi model.
//!
//! The Rabi model is a two-level system with splitting `omega0` driven by a
//! monochromatic field of amplitude `A`. The counterrotating part of the
//! drive displaces the principal resonance from `omega0` to `omega_res`; the
//! difference is the Bloch-Siegert shift.
//!
//! This crate provides three routes to that shift:
//!
//! * [`series`] — exact rational truncated-power-series arithmetic that
//!   derives the coefficients of the closed-form extrapolation formulas from
//!   the resonance-frequency perturbation series.
//! * [`approx`] — floating-point evaluators for the extrapolation formulas,
//!   the raw perturbation series, the rotating-wave baseline and the
//!   strong-driving asymptote (including the first zero of Bessel J0,
//!   computed from scratch in [`bessel`]).
//! * [`floquet`] — a numerically exact resonance solver: quasienergies of the
//!   extended-space Floquet matrix, the time-averaged transition probability,
//!   and a golden-section search for its peak, cross-validated against direct
//!   time propagation ([`propagate`]).
//!
//! Floating-point routines are generic over the scalar type through the
//! [`Scalar`] trait (`f64`, `f32`); the series module works in exact
//! arbitrary-precision rationals throughout.

pub mod approx;
pub mod bessel;
mod error;
pub mod floquet;
pub mod linalg;
mod params;
pub mod propagate;
pub mod search;
pub mod series;

pub use error::{Error, Result};
pub use params::{Method, RabiParams, ShiftReport};

use core::fmt;
use core::iter::Sum;
use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating-point scalar the numerical routines are generic over.
///
/// Implemented automatically for `f32` and `f64`.
pub trait Scalar:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + Sum
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
{
}

impl<T> Scalar for T where
    T: Float
        + FloatConst
        + FromPrimitive
        + ToPrimitive
        + Sum
        + fmt::Debug
        + fmt::Display
        + Send
        + Sync
        + 'static
{
}

/// `f64` drive parameters.
pub type RabiParams64 = RabiParams<f64>;
/// `f32` drive parameters.
pub type RabiParams32 = RabiParams<f32>;
/// `f64` shift report.
pub type ShiftReport64 = ShiftReport<f64>;
/// `f32` shift report.
pub type ShiftReport32 = ShiftReport<f32>;
/// `f64` Floquet solver configuration.
pub type FloquetConfig64 = floquet::FloquetConfig<f64>;
