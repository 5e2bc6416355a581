//! Spectral density estimation for stationary time series, with dedicated
//! treatment of the boundary frequencies 0 and pi.
//!
//! The frequencies 0 and +/-pi act as boundary points when smoothing the
//! periodogram: even symmetry folds the effective sample in half there, and
//! curvature of the spectral density peaks at those points. This crate
//! implements local even-polynomial regression of the periodogram (and
//! log-periodogram) at the boundaries, classical lag-window estimators for
//! the interior, data-driven bandwidth selection, a blended whole-axis
//! estimator normalized to the sample variance, a Monte Carlo harness, and
//! long-run-variance-based inference on the mean.

pub mod error;
pub mod ts;

pub use error::{Error, Result};
pub use ts::{
    detrend, fourier_grid, periodogram, sample_autocovariance, sample_mean, AutocovarianceSeq,
    FourierGrid, Periodogram, TimeSeries, TrendModel, TrendModelKind,
};
