//! Quadratic spectral estimation with finite-sample bias correction.
//!
//! Any of the classical non-parametric power-spectral-density estimators --
//! periodogram, lag-window, multitaper, Welch -- can be written as a
//! quadratic form `Z^H Q Z` in the demodulated data, where `Q` is a real
//! symmetric unit-trace matrix. This crate represents that family through
//! [`kernel::QuadKernel`], evaluates estimates on the Fourier grid, computes
//! the kernel-level diagnostics (spectral window, expectation, bandwidth,
//! effective sample size, frequency correlation), and removes the
//! finite-sample convolution bias by fitting intentionally *biased* basis
//! functions to the raw estimate with circulant weighted least squares
//! ([`debias`]).
//!
//! Module layout:
//!
//! * [`signal`] -- AR(p) / white-noise test processes, their exact spectra
//!   and autocovariances, series file I/O.
//! * [`windows`] -- tapers (rectangular, Hamming, sinusoidal, DPSS, Welch
//!   segments) and lag sequences (Bartlett, modified Daniell, flat-top).
//! * [`kernel`] -- the quadratic kernel, estimation fast paths, and all
//!   statistical diagnostics.
//! * [`debias`] -- circular B-spline basis families, biased bases, the
//!   circulant correlation matrix, and the weighted least-squares fit.
//! * [`ensemble`] -- Monte-Carlo experiment runner producing per-frequency
//!   bias/RMSE reports.
//!
//! All numerics are generic over the scalar type via [`Scalar`]; `f64` is
//! the intended precision for production use and the one the test tolerances
//! are calibrated to.

use std::iter::Sum;

use num_traits::{Float, FloatConst, NumAssign};
use rustfft::FftNum;

pub mod debias;
pub mod ensemble;
pub mod error;
pub mod fft;
pub mod kernel;
pub mod linalg;
pub mod signal;
pub mod windows;

pub use error::{Error, Result};

/// Floating-point scalar used throughout the crate.
///
/// Satisfied by `f32` and `f64`; the extra bounds are what the FFT backend
/// and the iterator-heavy numerics require.
pub trait Scalar: Float + FloatConst + NumAssign + Sum + FftNum {}

impl<T: Float + FloatConst + NumAssign + Sum + FftNum> Scalar for T {}

/// Shorthand for converting an `f64` literal into the working scalar type.
pub(crate) fn lit<T: Scalar>(x: f64) -> T {
    T::from_f64(x).expect("literal representable in scalar type")
}

/// Constructor-check tolerance: the stated `f64` tolerance, widened when the
/// scalar type cannot represent it (e.g. `f32`).
pub(crate) fn check_tol<T: Scalar>(f64_tol: f64) -> T {
    lit::<T>(f64_tol).max(T::epsilon() * lit::<T>(64.0))
}

/// `usize` to scalar conversion that tolerates the sizes used here.
pub(crate) fn from_usize<T: Scalar>(n: usize) -> T {
    T::from_usize(n).expect("usize representable in scalar type")
}

/// Double-precision time series.
pub type TimeSeries64 = signal::TimeSeries<f64>;
/// Double-precision AR model.
pub type ArModel64 = signal::ArModel<f64>;
/// Double-precision quadratic kernel.
pub type QuadKernel64 = kernel::QuadKernel<f64>;
/// Double-precision spectral estimate.
pub type SpectralEstimate64 = kernel::SpectralEstimate<f64>;
/// Double-precision kernel diagnostics.
pub type KernelDiagnostics64 = kernel::KernelDiagnostics<f64>;
/// Double-precision basis family.
pub type BasisFamily64 = debias::BasisFamily<f64>;
/// Double-precision debias result.
pub type DebiasResult64 = debias::DebiasResult<f64>;
