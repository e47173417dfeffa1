//! Finite-sample bias correction by fitting biased bases.
//!
//! The raw estimate has expectation `(f * H)(omega)`: the truth smeared by
//! the kernel's spectral window. Representing `f` in a basis
//! `f = sum_s a_s b_s` and convolving each basis with the *same* window
//! gives biased bases whose fit to the raw estimate recovers unbiased
//! coefficients; re-assembling with the unbiased bases yields the corrected
//! spectrum. The fit is weighted least squares with covariance
//! `V = Gamma W Gamma`, where `Gamma` carries the per-frequency scale of the
//! estimate (see [`debias_fit`] for how it is set) and `W` is the circulant
//! correlation matrix built from the kernel's `R(eta)`.
//!
//! Bases are circular B-splines: order `p = 0` tiles the circle with
//! rectangles, order `p` is the `(p+1)`-fold normalized self-convolution,
//! so every order keeps the partition of unity `sum_s b_s = 1`.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::fft::{fft_in_place, fourier_frequencies, ifft_in_place, symmetric_transform};
use crate::kernel::{KernelDiagnostics, SpectralEstimate};
use crate::linalg::cholesky_solve;
use crate::{from_usize, lit, Scalar};

/// Default basis order `p`.
pub const DEFAULT_BASIS_ORDER: usize = 1;

/// Center layout of a basis family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BasisLayout {
    /// `S` equally spaced centers starting at `-pi`, width `2 pi / S`.
    #[default]
    Uniform,
}

/// Family of `S` circular B-spline bases of order `p` on `[-pi, pi)`.
#[derive(Debug, Clone)]
pub struct BasisFamily<T> {
    n: usize,
    count: usize,
    order: usize,
    centers: Vec<T>,
    width: T,
}

/// Build a basis family for an `n`-point Fourier grid.
///
/// The family is symmetric under `omega -> -omega`, covers the circle with
/// `sum_s b_s = 1` for every order, and its basis count should scale at most
/// with the kernel's effective sample size (see [`default_basis_count`]).
pub fn make_basis<T: Scalar>(
    n: usize,
    count: usize,
    order: usize,
    layout: BasisLayout,
) -> Result<BasisFamily<T>> {
    if count == 0 || count > n {
        return Err(Error::arg(format!("need 1 <= S <= n, got S = {count}, n = {n}")));
    }
    let BasisLayout::Uniform = layout;
    let width = T::TAU() / from_usize(count);
    let centers: Vec<T> = (0..count)
        .map(|s| -T::PI() + width * from_usize::<T>(s))
        .collect();
    Ok(BasisFamily {
        n,
        count,
        order,
        centers,
        width,
    })
}

/// Default basis count: `round(zeta)` clamped to `[8, n/4]` (and to `n`).
pub fn default_basis_count<T: Scalar>(diag: &KernelDiagnostics<T>) -> usize {
    let n = diag.n();
    let zeta = diag.ess().to_f64().unwrap_or(8.0).round() as usize;
    let lo = 8usize.min(n);
    let hi = (n / 4).max(lo).min(n);
    zeta.clamp(lo, hi)
}

impl<T: Scalar> BasisFamily<T> {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn centers(&self) -> &[T] {
        &self.centers
    }

    pub fn width(&self) -> T {
        self.width
    }

    /// Evaluate basis `s` at angular frequency `omega`.
    pub fn evaluate(&self, s: usize, omega: T) -> T {
        let delta = self.width;
        let support = from_usize::<T>(self.order + 1) * delta / lit(2.0);
        // principal difference in [-pi, pi)
        let raw = omega - self.centers[s] + T::PI();
        let wrapped = raw - (raw / T::TAU()).floor() * T::TAU() - T::PI();
        // sum the periodic images whose support reaches the point
        let k_max = ((support + T::PI()) / T::TAU())
            .ceil()
            .to_isize()
            .unwrap_or(1);
        let mut acc = T::zero();
        for k in -k_max..=k_max {
            let x = (wrapped + T::TAU() * T::from_isize(k).unwrap()) / delta;
            acc += bspline(self.order, x);
        }
        acc
    }

    /// Lag-domain (autocorrelation) coefficient of basis `s`:
    /// `c_s(tau) = (delta / 2 pi) sinc(delta tau / 2 pi)^{p+1} e^{i omega_c tau}`,
    /// the `tau`-th Fourier coefficient of `b_s` so that
    /// `b_s(omega) = sum_tau c_s(tau) e^{-i omega tau}`.
    pub fn fourier_coefficient(&self, s: usize, tau: isize) -> Complex<T> {
        let delta = self.width;
        let t = T::from_isize(tau).unwrap();
        let x = delta * t / T::TAU();
        let amp = delta / T::TAU() * normalized_sinc(x).powi(self.order as i32 + 1);
        Complex::from_polar(amp, self.centers[s] * t)
    }

    /// Evaluations of every basis on the `n`-point Fourier grid, row-major
    /// `S x n`.
    pub fn evaluation_matrix(&self) -> Vec<T> {
        let grid = fourier_frequencies::<T>(self.n);
        let mut out = vec![T::zero(); self.count * self.n];
        for s in 0..self.count {
            for (j, &w) in grid.iter().enumerate() {
                out[s * self.n + j] = self.evaluate(s, w);
            }
        }
        out
    }
}

/// Normalized sinc `sin(pi x) / (pi x)`.
fn normalized_sinc<T: Scalar>(x: T) -> T {
    if x == T::zero() {
        return T::one();
    }
    let px = T::PI() * x;
    px.sin() / px
}

/// Centered cardinal B-spline of degree `p` (unit knot spacing): the
/// `(p+1)`-fold self-convolution of the unit rectangle, support
/// `[-(p+1)/2, (p+1)/2]`.
fn bspline<T: Scalar>(p: usize, x: T) -> T {
    let half_support = from_usize::<T>(p + 1) / lit(2.0);
    if p == 0 {
        // half-open so adjacent rectangles tile exactly
        return if x >= -half_support && x < half_support {
            T::one()
        } else {
            T::zero()
        };
    }
    if x.abs() > half_support {
        return T::zero();
    }
    // (1/p!) sum_j (-1)^j C(p+1, j) (x + (p+1)/2 - j)_+^p
    let mut acc = T::zero();
    let mut binom = T::one(); // C(p+1, 0)
    let mut sign = T::one();
    for j in 0..=(p + 1) {
        let u = x + half_support - from_usize::<T>(j);
        if u > T::zero() {
            acc += sign * binom * u.powi(p as i32);
        }
        sign = -sign;
        binom = binom * from_usize::<T>(p + 1 - j) / from_usize::<T>(j + 1);
    }
    let mut factorial = T::one();
    for i in 2..=p {
        factorial *= from_usize::<T>(i);
    }
    acc / factorial
}

/// `S x n` matrices of biased and unbiased basis evaluations on the Fourier
/// grid.
#[derive(Debug, Clone)]
pub struct BiasedBasisMatrix<T> {
    n: usize,
    count: usize,
    biased: Vec<T>,
    unbiased: Vec<T>,
}

impl<T: Scalar> BiasedBasisMatrix<T> {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn count(&self) -> usize {
        self.count
    }

    /// Row `s` of the biased matrix: `(b_s * H)(omega_j)`.
    pub fn biased_row(&self, s: usize) -> &[T] {
        &self.biased[s * self.n..(s + 1) * self.n]
    }

    /// Row `s` of the unbiased matrix: `b_s(omega_j)`.
    pub fn unbiased_row(&self, s: usize) -> &[T] {
        &self.unbiased[s * self.n..(s + 1) * self.n]
    }
}

/// Convolve every basis with the kernel's spectral window:
/// `bcheck_s(omega_j) = sum_{|tau| < n} c_s(tau) q(tau) e^{-i omega_j tau}`.
///
/// One length-`n` transform per basis; never requires the kernel's
/// eigendecomposition.
pub fn biased_basis<T: Scalar>(
    diag: &KernelDiagnostics<T>,
    family: &BasisFamily<T>,
) -> Result<BiasedBasisMatrix<T>> {
    let n = diag.n();
    if family.n() != n {
        return Err(Error::arg(format!(
            "basis grid size {} does not match kernel size {n}",
            family.n()
        )));
    }
    let q = diag.kernel_acf();
    let count = family.count();
    let mut biased = vec![T::zero(); count * n];
    for s in 0..count {
        let coeffs: Vec<Complex<T>> = (0..n)
            .map(|tau| family.fourier_coefficient(s, tau as isize).scale(q[tau]))
            .collect();
        let row = symmetric_transform(&coeffs);
        biased[s * n..(s + 1) * n].copy_from_slice(&row);
    }
    let unbiased = family.evaluation_matrix();
    Ok(BiasedBasisMatrix {
        n,
        count,
        biased,
        unbiased,
    })
}

/// Circulant correlation matrix `W` with first row `R(2 pi j / n)`,
/// diagonalized by the DFT.
///
/// Heavy smoothing makes `W` numerically (for Welch, exactly) rank
/// deficient: its correlation row is a short trig polynomial, so part of the
/// eigenvalue spectrum sits at or near zero. Before inversion every
/// eigenvalue is floored at a fixed fraction of the largest one. The floor
/// caps the weight any transform direction can receive; directions below it
/// carry no usable correlation information, and weighting them by a nearly
/// unbounded inverse lets weight noise swamp the fit.
#[derive(Debug, Clone)]
pub struct CirculantCorrelation<T> {
    first_row: Vec<T>,
    eigenvalues: Vec<T>,
    inverse_eigenvalues: Vec<T>,
    clipped: usize,
}

/// Relative eigenvalue floor for the circulant inverse.
pub const CIRCULANT_EIGENVALUE_FLOOR: f64 = 1e-1;

/// Build `W` from kernel diagnostics.
pub fn correlation_matrix<T: Scalar>(diag: &KernelDiagnostics<T>) -> CirculantCorrelation<T> {
    let first_row = diag.correlation_row();
    let mut buf: Vec<Complex<T>> = first_row
        .iter()
        .map(|&v| Complex::new(v, T::zero()))
        .collect();
    fft_in_place(&mut buf);
    let raw: Vec<T> = buf.iter().map(|c| c.re).collect();
    let max = raw.iter().fold(T::zero(), |acc, &v| acc.max(v));
    let floor = max * lit(CIRCULANT_EIGENVALUE_FLOOR);
    let mut clipped = 0usize;
    let mut eigenvalues = Vec::with_capacity(raw.len());
    let mut inverse_eigenvalues = Vec::with_capacity(raw.len());
    for v in raw {
        let clamped = if v < floor {
            clipped += 1;
            floor
        } else {
            v
        };
        eigenvalues.push(clamped);
        inverse_eigenvalues.push(clamped.recip());
    }
    CirculantCorrelation {
        first_row,
        eigenvalues,
        inverse_eigenvalues,
        clipped,
    }
}

impl<T: Scalar> CirculantCorrelation<T> {
    pub fn n(&self) -> usize {
        self.first_row.len()
    }

    /// First row `R(2 pi j / n)`, `j = 0..n-1`.
    pub fn first_row(&self) -> &[T] {
        &self.first_row
    }

    /// Eigenvalues (DFT of the first row) after flooring; all positive.
    pub fn eigenvalues(&self) -> &[T] {
        &self.eigenvalues
    }

    /// Transform directions raised to the eigenvalue floor.
    pub fn clipped_count(&self) -> usize {
        self.clipped
    }

    /// Solve `W y = x` (with the floored spectrum) by transform-domain
    /// division.
    pub fn solve(&self, x: &[T]) -> Vec<T> {
        let n = self.n();
        assert_eq!(x.len(), n);
        let mut buf: Vec<Complex<T>> =
            x.iter().map(|&v| Complex::new(v, T::zero())).collect();
        fft_in_place(&mut buf);
        for (b, &lambda_inv) in buf.iter_mut().zip(&self.inverse_eigenvalues) {
            *b = b.scale(lambda_inv);
        }
        ifft_in_place(&mut buf);
        buf.into_iter().map(|c| c.re).collect()
    }

    /// Multiply `W x` (used in tests).
    pub fn multiply(&self, x: &[T]) -> Vec<T> {
        let n = self.n();
        assert_eq!(x.len(), n);
        let mut fx: Vec<Complex<T>> =
            x.iter().map(|&v| Complex::new(v, T::zero())).collect();
        fft_in_place(&mut fx);
        for (b, &lambda) in fx.iter_mut().zip(&self.eigenvalues) {
            *b = b.scale(lambda);
        }
        ifft_in_place(&mut fx);
        fx.into_iter().map(|c| c.re).collect()
    }
}

/// Outcome of the weighted least-squares debias fit.
#[derive(Debug, Clone)]
pub struct DebiasResult<T> {
    coefficients: Vec<T>,
    frequencies: Vec<T>,
    raw: Vec<T>,
    fitted: Vec<T>,
    gamma: Vec<T>,
    residual_norm: T,
    condition_estimate: T,
    clipped_eigenvalues: usize,
}

impl<T: Scalar> DebiasResult<T> {
    /// Fitted basis coefficients `theta_hat`.
    pub fn coefficients(&self) -> &[T] {
        &self.coefficients
    }

    pub fn frequencies(&self) -> &[T] {
        &self.frequencies
    }

    /// The raw estimate the fit consumed.
    pub fn raw(&self) -> &[T] {
        &self.raw
    }

    /// Debiased spectrum `sum_s theta_s b_s(omega_j)` from the unbiased bases.
    pub fn fitted(&self) -> &[T] {
        &self.fitted
    }

    /// Per-frequency scale `Gamma` used in the final weighted pass.
    pub fn gamma(&self) -> &[T] {
        &self.gamma
    }

    /// Euclidean norm of `I - Bcheck^T theta_hat`.
    pub fn residual_norm(&self) -> T {
        self.residual_norm
    }

    /// Rough two-norm condition estimate of the normal matrix (from the
    /// Cholesky pivot ratio).
    pub fn condition_estimate(&self) -> T {
        self.condition_estimate
    }

    /// Eigenvalues of `W` raised to the floor before inversion.
    pub fn clipped_eigenvalues(&self) -> usize {
        self.clipped_eigenvalues
    }

    /// Text serialization: coefficient block, then `(freq, raw, debiased)`
    /// rows.
    pub fn to_text(&self) -> String
    where
        T: std::fmt::Display,
    {
        let mut out = String::new();
        out.push_str(&format!("# coefficients: {}\n", self.coefficients.len()));
        for c in &self.coefficients {
            out.push_str(&format!("{c}\n"));
        }
        out.push_str("# freq raw debiased\n");
        for ((w, r), f) in self
            .frequencies
            .iter()
            .zip(&self.raw)
            .zip(&self.fitted)
        {
            out.push_str(&format!("{w} {r} {f}\n"));
        }
        out
    }
}

/// Relative floor applied to the raw estimate in the pilot `Gamma`.
pub const GAMMA_FLOOR: f64 = 1e-12;
/// Fraction of the local scale used to floor the refit `Gamma`.
pub const GAMMA_LOCAL_FLOOR: f64 = 0.1;

/// Circular moving average with a centered window.
fn circular_box_mean<T: Scalar>(x: &[T], window: usize) -> Vec<T> {
    let n = x.len();
    let w = window.clamp(1, n);
    let half = w / 2;
    let inv = from_usize::<T>(w).recip();
    let mut acc = T::zero();
    for i in 0..w {
        acc += x[(n - half + i) % n];
    }
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        out.push(acc * inv);
        acc += x[(i + w - half) % n];
        acc -= x[(n + i - half) % n];
    }
    out
}

/// One pass of the weighted normal equations for a fixed `Gamma`.
fn weighted_fit_pass<T: Scalar>(
    raw: &[T],
    gamma: &[T],
    bases: &BiasedBasisMatrix<T>,
    correlation: &CirculantCorrelation<T>,
) -> Result<(Vec<T>, T)> {
    let n = raw.len();
    let s_count = bases.count();
    let mut scaled = vec![T::zero(); s_count * n];
    let mut whitened = vec![T::zero(); s_count * n];
    for s in 0..s_count {
        let row = bases.biased_row(s);
        let dst = &mut scaled[s * n..(s + 1) * n];
        for ((d, &b), &g) in dst.iter_mut().zip(row).zip(gamma) {
            *d = b / g;
        }
        let solved = correlation.solve(&scaled[s * n..(s + 1) * n]);
        whitened[s * n..(s + 1) * n].copy_from_slice(&solved);
    }
    let u: Vec<T> = raw.iter().zip(gamma).map(|(&v, &g)| v / g).collect();
    let wu = correlation.solve(&u);

    let mut a = vec![T::zero(); s_count * s_count];
    let mut rhs = vec![T::zero(); s_count];
    for s in 0..s_count {
        let xs = &scaled[s * n..(s + 1) * n];
        for t in s..s_count {
            let yt = &whitened[t * n..(t + 1) * n];
            let dot: T = xs.iter().zip(yt).map(|(&x, &y)| x * y).sum();
            a[s * s_count + t] = dot;
            a[t * s_count + s] = dot;
        }
        rhs[s] = xs.iter().zip(&wu).map(|(&x, &y)| x * y).sum();
    }
    let solve = cholesky_solve(&a, s_count, &rhs).map_err(|e| {
        Error::Numerical(format!(
            "normal equations for S = {s_count} bases are singular: {e}"
        ))
    })?;
    let cond = (solve.pivot_max / solve.pivot_min) * (solve.pivot_max / solve.pivot_min);
    Ok((solve.solution, cond))
}

/// Weighted least-squares fit of the biased bases to a raw estimate.
///
/// Solves `min_theta (I - Bcheck^T theta)^T V^{-1} (I - Bcheck^T theta)` with
/// `V = Gamma W Gamma` via the normal equations and a Cholesky solve, where
/// `Gamma` approximates the per-frequency scale `sd[I(omega_j)]`.
///
/// The fit runs in two passes. The pilot pass weights with the raw estimate
/// itself (floored at `GAMMA_FLOOR` of its maximum); the refit pass weights
/// with the pilot's fitted expectation `Bcheck^T theta`, which carries the
/// same per-frequency scale but none of the single-ordinate noise. Weighting
/// directly with the raw ordinates couples the weights to the noise being
/// fit and attenuates the coefficients measurably, so the pilot serves only
/// to set scales. Uniform scale factors in `Gamma` cancel in the solution.
///
/// The debiased spectrum is assembled from the unbiased bases;
/// `clip_negative` clamps it at zero.
pub fn debias_fit<T: Scalar>(
    estimate: &SpectralEstimate<T>,
    bases: &BiasedBasisMatrix<T>,
    correlation: &CirculantCorrelation<T>,
    clip_negative: bool,
) -> Result<DebiasResult<T>> {
    let n = estimate.n();
    if bases.n() != n || correlation.n() != n {
        return Err(Error::arg(format!(
            "size mismatch: estimate n = {n}, bases n = {}, W n = {}",
            bases.n(),
            correlation.n()
        )));
    }
    let s_count = bases.count();
    if s_count > n {
        return Err(Error::arg("more bases than frequencies"));
    }
    let raw = estimate.values();
    let max_raw = raw.iter().fold(T::neg_infinity(), |a, &b| a.max(b));
    let has_positive = max_raw.is_finite() && max_raw > T::zero();
    if !has_positive {
        return Err(Error::arg(
            "estimate has no positive values; nothing to weight the fit with",
        ));
    }
    let pilot_floor = max_raw * lit(GAMMA_FLOOR);
    let pilot_gamma: Vec<T> = raw.iter().map(|&v| v.max(pilot_floor)).collect();
    let (pilot_theta, _) = weighted_fit_pass(raw, &pilot_gamma, bases, correlation)?;

    // Refit with the pilot's fitted expectation as the scale.
    let mut predicted = vec![T::zero(); n];
    for (s, &th) in pilot_theta.iter().enumerate() {
        let br = bases.biased_row(s);
        for (p, &b) in predicted.iter_mut().zip(br) {
            *p += th * b;
        }
    }
    let max_pred = predicted.iter().fold(T::neg_infinity(), |a, &b| a.max(b));
    let (theta, cond, gamma) = if max_pred > T::zero() {
        // The pilot prediction is a signed curve; where it crosses zero it
        // cannot serve as a scale. Floor it by a fraction of the local
        // magnitude (one basis spacing wide) so isolated crossings inherit
        // their neighbourhood's scale while genuinely small spectral
        // regions keep theirs.
        let abs_pred: Vec<T> = predicted.iter().map(|v| v.abs()).collect();
        let window = (2 * n / s_count).clamp(4, n);
        let local = circular_box_mean(&abs_pred, window);
        let guard = max_pred * lit(GAMMA_FLOOR);
        let gamma: Vec<T> = predicted
            .iter()
            .zip(&local)
            .map(|(&p, &l)| p.max(l * lit(GAMMA_LOCAL_FLOOR)).max(guard))
            .collect();
        let (theta, cond) = weighted_fit_pass(raw, &gamma, bases, correlation)?;
        (theta, cond, gamma)
    } else {
        // degenerate pilot; keep its coefficients
        (pilot_theta, T::one(), pilot_gamma)
    };

    // Residual against the biased bases; fitted curve from the unbiased ones.
    let mut residual_sq = T::zero();
    let mut refit_predicted = vec![T::zero(); n];
    let mut fitted = vec![T::zero(); n];
    for (s, &th) in theta.iter().enumerate() {
        let br = bases.biased_row(s);
        let ur = bases.unbiased_row(s);
        for j in 0..n {
            refit_predicted[j] += th * br[j];
            fitted[j] += th * ur[j];
        }
    }
    for (p, &r) in refit_predicted.iter().zip(raw) {
        let d = r - *p;
        residual_sq += d * d;
    }
    if clip_negative {
        for f in fitted.iter_mut() {
            *f = f.max(T::zero());
        }
    }

    Ok(DebiasResult {
        coefficients: theta,
        frequencies: estimate.frequencies().to_vec(),
        raw: raw.to_vec(),
        fitted,
        gamma,
        residual_norm: residual_sq.sqrt(),
        condition_estimate: cond,
        clipped_eigenvalues: correlation.clipped_count(),
    })
}
