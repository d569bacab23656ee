//! Empirical Assouad and lower spectra of finite point sets in the line and the plane.
//!
//! A [`FiniteApprox`] is a finite sample of a set together with its resolution. The
//! [`estimator`] turns covering counts from [`counting`] into box dimensions, spectra at
//! fixed θ and two-scale Assouad/lower dimension estimates. [`generators`] builds the
//! standard example families and [`oracle`] holds their closed-form spectra.

pub mod checks;
pub mod counting;
pub mod error;
pub mod estimator;
pub mod generators;
pub mod geometry;
pub mod io;
pub mod oracle;

pub use error::{Error, Result};
pub use estimator::{DimensionEstimate, DimensionKind, Estimator, Sweep, ThetaGrid};
pub use geometry::{
    FiniteApprox, HolderParams, Metric, MoranParams, Point, ScaleSchedule, SpectrumEstimate, SpectrumKind,
    SpiralParams, Winding,
};
pub use oracle::OracleCurve;
