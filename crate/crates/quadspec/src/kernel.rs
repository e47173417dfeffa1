//! Quadratic spectral kernels and their statistics.
//!
//! A kernel is the real symmetric unit-trace matrix `Q` of the quadratic form
//! `I(omega) = Z^H Q Z`, `Z_t = X_t e^{i omega t}`. Four representations are
//! supported; estimation and diagnostics use structured fast paths and never
//! need an eigendecomposition:
//!
//! * multitaper / Welch: `K` tapered transforms, one FFT each;
//! * lag-window: an FFT autocorrelation followed by one more FFT;
//! * explicit matrices: quadratic-form evaluation for validation.
//!
//! Diagnostics come from two lag-domain signatures of `Q`: the kernel ACF
//! `q(tau) = sum_t Q_{t,t+tau}` (transforms to the spectral window) and the
//! squared diagonal sums `s2(tau) = sum_t Q_{t,t+tau}^2`, which give the
//! variance-reduction factor `M^{-1} = sum_tau s2`, the bandwidth
//! `B = M s2(0)`, the effective sample size `zeta = 1/B`, and the
//! white-noise frequency correlation `R(eta) = M sum_tau s2(tau) e^{-i eta tau}`.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::fft::{
    autocorrelation, cosine_series_at, fft_in_place, fourier_frequencies, symmetric_transform_real,
    unshifted_index,
};
use crate::linalg::symmetric_eigen;
use crate::signal::{Spectrum, TimeSeries};
use crate::windows::{LagSequence, Taper};
use crate::{check_tol, from_usize, lit, Scalar};

/// Default size cap for paths that materialize `Q`.
pub const EIGEN_CAP: usize = 4096;
/// Size cap for the exact Gaussian covariance oracle.
pub const COV_BRUTE_CAP: usize = 256;

/// A quadratic spectral kernel in one of four structured representations.
#[derive(Debug, Clone)]
pub enum QuadKernel<T> {
    /// `Q = sum_k d_k h_k h_k^T` with orthonormal tapers and `sum d_k = 1`.
    Multitaper {
        weights: Vec<T>,
        tapers: Vec<Taper<T>>,
    },
    /// `Q_{s,t} = w_{|s-t|} h_s h_t`.
    LagWindow {
        lags: LagSequence<T>,
        taper: Taper<T>,
    },
    /// Equal-weight average of shifted segment periodograms.
    Welch { tapers: Vec<Taper<T>> },
    /// Explicit symmetric unit-trace matrix, row-major.
    Explicit { matrix: Vec<T>, n: usize },
}

impl<T: Scalar> QuadKernel<T> {
    /// Single-taper periodogram kernel.
    pub fn periodogram(taper: Taper<T>) -> Self {
        QuadKernel::Multitaper {
            weights: vec![T::one()],
            tapers: vec![taper],
        }
    }

    /// Multitaper kernel with explicit weights; tapers must be pairwise
    /// orthogonal and the weights must sum to one.
    pub fn multitaper(weights: Vec<T>, tapers: Vec<Taper<T>>) -> Result<Self> {
        if weights.is_empty() || weights.len() != tapers.len() {
            return Err(Error::arg("need one weight per taper"));
        }
        let n = tapers[0].len();
        if tapers.iter().any(|t| t.len() != n) {
            return Err(Error::arg("all tapers must share one length"));
        }
        let total: T = weights.iter().copied().sum();
        if (total - T::one()).abs() > check_tol(1e-10) {
            return Err(Error::arg(format!(
                "taper weights sum to {:?}, need 1 within 1e-10",
                total.to_f64()
            )));
        }
        for i in 0..tapers.len() {
            for j in 0..i {
                let dot: T = tapers[i]
                    .values()
                    .iter()
                    .zip(tapers[j].values())
                    .map(|(&a, &b)| a * b)
                    .sum();
                if dot.abs() > check_tol(1e-8) {
                    return Err(Error::arg(format!(
                        "tapers {i} and {j} are not orthogonal (dot = {:?})",
                        dot.to_f64()
                    )));
                }
            }
        }
        Ok(QuadKernel::Multitaper { weights, tapers })
    }

    /// Multitaper kernel with uniform weights `1/K`.
    pub fn multitaper_uniform(tapers: Vec<Taper<T>>) -> Result<Self> {
        let k = tapers.len();
        if k == 0 {
            return Err(Error::arg("need at least one taper"));
        }
        let w = from_usize::<T>(k).recip();
        Self::multitaper(vec![w; k], tapers)
    }

    /// Lag-window kernel; the lag sequence and taper must share the length.
    pub fn lag_window(lags: LagSequence<T>, taper: Taper<T>) -> Result<Self> {
        if lags.len() != taper.len() {
            return Err(Error::arg(format!(
                "lag sequence length {} does not match taper length {}",
                lags.len(),
                taper.len()
            )));
        }
        Ok(QuadKernel::LagWindow { lags, taper })
    }

    /// Welch kernel from full-length segment tapers (equal weights `1/M`).
    pub fn welch(tapers: Vec<Taper<T>>) -> Result<Self> {
        if tapers.is_empty() {
            return Err(Error::arg("need at least one segment taper"));
        }
        let n = tapers[0].len();
        if tapers.iter().any(|t| t.len() != n) {
            return Err(Error::arg("all segment tapers must share one length"));
        }
        Ok(QuadKernel::Welch { tapers })
    }

    /// Explicit kernel; checks symmetry and unit trace to 1e-10.
    pub fn explicit(matrix: Vec<T>, n: usize) -> Result<Self> {
        if matrix.len() != n * n || n == 0 {
            return Err(Error::arg("matrix must be n x n with n >= 1"));
        }
        let scale = matrix
            .iter()
            .fold(T::zero(), |acc, v| acc.max(v.abs()))
            .max(T::one());
        let mut trace = T::zero();
        for i in 0..n {
            trace += matrix[i * n + i];
            for j in 0..i {
                if (matrix[i * n + j] - matrix[j * n + i]).abs() > check_tol::<T>(1e-10) * scale {
                    return Err(Error::arg(format!("matrix not symmetric at ({i}, {j})")));
                }
            }
        }
        if (trace - T::one()).abs() > check_tol(1e-10) {
            return Err(Error::arg(format!(
                "matrix trace {:?} differs from 1 by more than 1e-10",
                trace.to_f64()
            )));
        }
        Ok(QuadKernel::Explicit { matrix, n })
    }

    /// Kernel dimension.
    pub fn n(&self) -> usize {
        match self {
            QuadKernel::Multitaper { tapers, .. } => tapers[0].len(),
            QuadKernel::LagWindow { taper, .. } => taper.len(),
            QuadKernel::Welch { tapers } => tapers[0].len(),
            QuadKernel::Explicit { n, .. } => *n,
        }
    }

    /// Lightweight descriptor for estimate metadata.
    pub fn kind(&self) -> KernelKind {
        match self {
            QuadKernel::Multitaper { tapers, .. } => KernelKind::Multitaper {
                tapers: tapers.len(),
            },
            QuadKernel::LagWindow { .. } => KernelKind::LagWindow,
            QuadKernel::Welch { tapers } => KernelKind::Welch {
                segments: tapers.len(),
            },
            QuadKernel::Explicit { .. } => KernelKind::Explicit,
        }
    }

    /// Materialize `Q` row-major. Guarded by [`EIGEN_CAP`] since this is a
    /// validation path, not an estimation path.
    pub fn to_explicit(&self) -> Result<Vec<T>> {
        let n = self.n();
        if n > EIGEN_CAP {
            return Err(Error::CapacityExceeded {
                op: "to_explicit",
                n,
                cap: EIGEN_CAP,
            });
        }
        let mut q = vec![T::zero(); n * n];
        match self {
            QuadKernel::Multitaper { weights, tapers } => {
                for (d, taper) in weights.iter().zip(tapers) {
                    let h = taper.values();
                    for s in 0..n {
                        let hs = *d * h[s];
                        for t in 0..n {
                            q[s * n + t] += hs * h[t];
                        }
                    }
                }
            }
            QuadKernel::Welch { tapers } => {
                let d = from_usize::<T>(tapers.len()).recip();
                for taper in tapers {
                    let h = taper.values();
                    for s in 0..n {
                        let hs = d * h[s];
                        for t in 0..n {
                            q[s * n + t] += hs * h[t];
                        }
                    }
                }
            }
            QuadKernel::LagWindow { lags, taper } => {
                let h = taper.values();
                let w = lags.values();
                for s in 0..n {
                    for t in 0..n {
                        q[s * n + t] = w[s.abs_diff(t)] * h[s] * h[t];
                    }
                }
            }
            QuadKernel::Explicit { matrix, .. } => q.copy_from_slice(matrix),
        }
        Ok(q)
    }

    /// Evaluate the estimator at the `n` Fourier frequencies.
    pub fn estimate(&self, x: &TimeSeries<T>) -> Result<SpectralEstimate<T>> {
        let n = self.n();
        if x.len() != n {
            return Err(Error::arg(format!(
                "kernel size {n} does not match series length {}",
                x.len()
            )));
        }
        let values = match self {
            QuadKernel::Multitaper { weights, tapers } => {
                tapered_power_sum(weights, tapers, x.values())
            }
            QuadKernel::Welch { tapers } => {
                let d = from_usize::<T>(tapers.len()).recip();
                let weights = vec![d; tapers.len()];
                tapered_power_sum(&weights, tapers, x.values())
            }
            QuadKernel::LagWindow { lags, taper } => {
                let hx: Vec<T> = taper
                    .values()
                    .iter()
                    .zip(x.values())
                    .map(|(&h, &v)| h * v)
                    .collect();
                let acf = autocorrelation(&hx);
                let weighted: Vec<T> = lags
                    .values()
                    .iter()
                    .zip(acf.iter())
                    .map(|(&w, &g)| w * g)
                    .collect();
                symmetric_transform_real(&weighted)
            }
            QuadKernel::Explicit { matrix, n } => {
                let x = x.values();
                let mut diag_sums = vec![T::zero(); *n];
                for (tau, item) in diag_sums.iter_mut().enumerate() {
                    let mut acc = T::zero();
                    for t in 0..(*n - tau) {
                        acc += x[t] * x[t + tau] * matrix[t * *n + t + tau];
                    }
                    *item = acc;
                }
                symmetric_transform_real(&diag_sums)
            }
        };
        Ok(SpectralEstimate {
            frequencies: fourier_frequencies(n),
            values,
            kind: self.kind(),
        })
    }

    /// Kernel ACF `q(tau) = sum_t Q_{t,t+tau}` for `tau = 0..n-1`.
    pub fn kernel_acf(&self) -> Vec<T> {
        let n = self.n();
        match self {
            QuadKernel::Multitaper { weights, tapers } => {
                let mut q = vec![T::zero(); n];
                for (d, taper) in weights.iter().zip(tapers) {
                    for (acc, v) in q.iter_mut().zip(autocorrelation(taper.values())) {
                        *acc += *d * v;
                    }
                }
                q
            }
            QuadKernel::Welch { tapers } => {
                let d = from_usize::<T>(tapers.len()).recip();
                let mut q = vec![T::zero(); n];
                for taper in tapers {
                    for (acc, v) in q.iter_mut().zip(autocorrelation(taper.values())) {
                        *acc += d * v;
                    }
                }
                q
            }
            QuadKernel::LagWindow { lags, taper } => {
                let acf = autocorrelation(taper.values());
                lags.values()
                    .iter()
                    .zip(acf)
                    .map(|(&w, g)| w * g)
                    .collect()
            }
            QuadKernel::Explicit { matrix, n } => (0..*n)
                .map(|tau| {
                    let mut acc = T::zero();
                    for t in 0..(*n - tau) {
                        acc += matrix[t * *n + t + tau];
                    }
                    acc
                })
                .collect(),
        }
    }

    /// Spectral window `H(omega) = sum_{|tau| < n} q(tau) e^{-i omega tau}`
    /// on an arbitrary grid.
    pub fn spectral_window(&self, grid: &[T]) -> Vec<T> {
        let q = self.kernel_acf();
        grid.iter().map(|&w| cosine_series_at(&q, w)).collect()
    }

    /// Expected value of the estimator under spectrum `f`, on the Fourier
    /// grid: `E[I](omega) = sum_{|tau| < n} q(tau) gamma(tau) e^{-i omega tau}`.
    pub fn expectation(&self, f: &Spectrum<T>) -> Result<Vec<T>> {
        let n = self.n();
        let gamma = f.acvs(n - 1)?;
        let q = self.kernel_acf();
        let prod: Vec<T> = q.iter().zip(gamma).map(|(&a, g)| a * g).collect();
        Ok(symmetric_transform_real(&prod))
    }

    /// `E[I](omega) - f(omega)` on the Fourier grid.
    pub fn bias(&self, f: &Spectrum<T>) -> Result<Vec<T>> {
        let expect = self.expectation(f)?;
        let grid = fourier_frequencies::<T>(self.n());
        Ok(expect
            .into_iter()
            .zip(grid)
            .map(|(e, w)| e - f.density(w))
            .collect())
    }

    /// All kernel diagnostics in one pass.
    pub fn diagnostics(&self) -> KernelDiagnostics<T> {
        let n = self.n();
        let kernel_acf = self.kernel_acf();
        let sq_diag_sums = self.squared_diag_sums();
        let mut frob = sq_diag_sums[0];
        for &v in &sq_diag_sums[1..] {
            frob += lit::<T>(2.0) * v;
        }
        let variance_factor = frob.recip();
        let bandwidth = variance_factor * sq_diag_sums[0];
        let ess = bandwidth.recip();
        let n0 = self
            .diagonal()
            .into_iter()
            .filter(|v| *v != T::zero())
            .count();
        KernelDiagnostics {
            n,
            kernel_acf,
            sq_diag_sums,
            variance_factor,
            bandwidth,
            ess,
            n0,
        }
    }

    /// Diagonal of `Q`.
    fn diagonal(&self) -> Vec<T> {
        let n = self.n();
        match self {
            QuadKernel::Multitaper { weights, tapers } => {
                let mut d = vec![T::zero(); n];
                for (w, taper) in weights.iter().zip(tapers) {
                    for (acc, &h) in d.iter_mut().zip(taper.values()) {
                        *acc += *w * h * h;
                    }
                }
                d
            }
            QuadKernel::Welch { tapers } => {
                let w = from_usize::<T>(tapers.len()).recip();
                let mut d = vec![T::zero(); n];
                for taper in tapers {
                    for (acc, &h) in d.iter_mut().zip(taper.values()) {
                        *acc += w * h * h;
                    }
                }
                d
            }
            QuadKernel::LagWindow { taper, .. } => {
                taper.values().iter().map(|&h| h * h).collect()
            }
            QuadKernel::Explicit { matrix, n } => (0..*n).map(|i| matrix[i * *n + i]).collect(),
        }
    }

    /// `s2(tau) = sum_t Q_{t,t+tau}^2` for `tau = 0..n-1`.
    fn squared_diag_sums(&self) -> Vec<T> {
        let n = self.n();
        match self {
            QuadKernel::Multitaper { weights, tapers } => {
                cross_taper_squared_sums(weights, tapers, n)
            }
            QuadKernel::Welch { tapers } => {
                let d = from_usize::<T>(tapers.len()).recip();
                let weights = vec![d; tapers.len()];
                cross_taper_squared_sums(&weights, tapers, n)
            }
            QuadKernel::LagWindow { lags, taper } => {
                let h2: Vec<T> = taper.values().iter().map(|&h| h * h).collect();
                let acf2 = autocorrelation(&h2);
                lags.values()
                    .iter()
                    .zip(acf2)
                    .map(|(&w, a)| w * w * a)
                    .collect()
            }
            QuadKernel::Explicit { matrix, n } => (0..*n)
                .map(|tau| {
                    let mut acc = T::zero();
                    for t in 0..(*n - tau) {
                        let v = matrix[t * *n + t + tau];
                        acc += v * v;
                    }
                    acc
                })
                .collect(),
        }
    }

    /// Spectral decomposition into multitaper form `(d_k, h_k)`, weights in
    /// decreasing order, trimmed of numerically zero components.
    pub fn eigendecompose(&self) -> Result<(Vec<T>, Vec<Taper<T>>)> {
        self.eigendecompose_with_cap(EIGEN_CAP)
    }

    /// As [`eigendecompose`](Self::eigendecompose) with an explicit size cap
    /// for the dense path.
    pub fn eigendecompose_with_cap(&self, cap: usize) -> Result<(Vec<T>, Vec<Taper<T>>)> {
        match self {
            QuadKernel::Multitaper { weights, tapers } => {
                Ok((weights.clone(), tapers.clone()))
            }
            QuadKernel::Welch { tapers } => {
                // Zero-overlap segment tapers are orthonormal, hence already
                // a spectral decomposition.
                let orthogonal = {
                    let mut ok = true;
                    'outer: for i in 0..tapers.len() {
                        for j in 0..i {
                            let dot: T = tapers[i]
                                .values()
                                .iter()
                                .zip(tapers[j].values())
                                .map(|(&a, &b)| a * b)
                                .sum();
                            if dot.abs() > lit(1e-12) {
                                ok = false;
                                break 'outer;
                            }
                        }
                    }
                    ok
                };
                if orthogonal {
                    let d = from_usize::<T>(tapers.len()).recip();
                    Ok((vec![d; tapers.len()], tapers.clone()))
                } else {
                    self.dense_eigendecompose(cap)
                }
            }
            _ => self.dense_eigendecompose(cap),
        }
    }

    fn dense_eigendecompose(&self, cap: usize) -> Result<(Vec<T>, Vec<Taper<T>>)> {
        let n = self.n();
        if n > cap {
            return Err(Error::CapacityExceeded {
                op: "eigendecompose",
                n,
                cap,
            });
        }
        let q = self.to_explicit()?;
        let eig = symmetric_eigen(&q, n)?;
        let max_abs = eig
            .values
            .iter()
            .fold(T::zero(), |acc, v| acc.max(v.abs()));
        let floor = max_abs * lit::<T>(1e-12);
        let mut pairs: Vec<(T, Vec<T>)> = (0..n)
            .filter(|&k| eig.values[k].abs() > floor)
            .map(|k| (eig.values[k], eig.vector(k)))
            .collect();
        pairs.sort_by(|a, b| b.0.partial_cmp(&a.0).expect("finite eigenvalues"));
        let mut weights = Vec::with_capacity(pairs.len());
        let mut tapers = Vec::with_capacity(pairs.len());
        for (d, mut v) in pairs {
            // normalize exactly to pass the taper energy check
            let norm: T = v.iter().map(|&x| x * x).sum::<T>().sqrt();
            for x in v.iter_mut() {
                *x /= norm;
            }
            weights.push(d * norm * norm);
            tapers.push(Taper::new(v)?);
        }
        Ok((weights, tapers))
    }

    /// Exact Gaussian covariance of `I(omega1)` and `I(omega2)` for a real
    /// zero-mean Gaussian process with autocovariance `acvs` (needs lags
    /// `0..n-1`). Fourth-moment (Isserlis) expansion of the quadratic form;
    /// `O(n^3)`, capped at [`COV_BRUTE_CAP`].
    pub fn cov_brute(&self, acvs: &[T], omega1: T, omega2: T) -> Result<Complex<T>> {
        let n = self.n();
        if n > COV_BRUTE_CAP {
            return Err(Error::CapacityExceeded {
                op: "cov_brute",
                n,
                cap: COV_BRUTE_CAP,
            });
        }
        if acvs.len() < n {
            return Err(Error::arg(format!(
                "need autocovariances up to lag {}, got {}",
                n - 1,
                acvs.len()
            )));
        }
        let q = self.to_explicit()?;
        let zero = Complex::new(T::zero(), T::zero());
        let demod = |omega: T| -> Vec<Complex<T>> {
            let mut m = vec![zero; n * n];
            for s in 0..n {
                for t in 0..n {
                    let phase = -omega * (from_usize::<T>(s) - from_usize::<T>(t));
                    m[s * n + t] = Complex::from_polar(q[s * n + t], phase);
                }
            }
            m
        };
        let m1 = demod(omega1);
        let m2 = demod(omega2);
        let gamma = |i: usize, j: usize| acvs[i.abs_diff(j)];

        // P1 = M1 * Gamma, P2 = M2 * Gamma, P3 = Gamma * M2
        let mut p1 = vec![zero; n * n];
        let mut p2 = vec![zero; n * n];
        let mut p3 = vec![zero; n * n];
        for i in 0..n {
            for j in 0..n {
                let mut a1 = zero;
                let mut a2 = zero;
                let mut a3 = zero;
                for k in 0..n {
                    let gkj = gamma(k, j);
                    a1 += m1[i * n + k].scale(gkj);
                    a2 += m2[i * n + k].scale(gkj);
                    a3 += m2[k * n + j].scale(gamma(i, k));
                }
                p1[i * n + j] = a1;
                p2[i * n + j] = a2;
                p3[i * n + j] = a3;
            }
        }
        let mut term1 = zero;
        let mut term2 = zero;
        for i in 0..n {
            for j in 0..n {
                term1 += p1[i * n + j] * p2[j * n + i];
                term2 += p1[i * n + j] * p3[i * n + j];
            }
        }
        Ok(term1 + term2)
    }
}

/// `sum_k d_k |FFT(h_k . x)|^2` on the shifted Fourier grid.
fn tapered_power_sum<T: Scalar>(weights: &[T], tapers: &[Taper<T>], x: &[T]) -> Vec<T> {
    let n = x.len();
    let mut out = vec![T::zero(); n];
    let mut buf = vec![Complex::new(T::zero(), T::zero()); n];
    for (d, taper) in weights.iter().zip(tapers) {
        for ((b, &h), &v) in buf.iter_mut().zip(taper.values()).zip(x) {
            *b = Complex::new(h * v, T::zero());
        }
        fft_in_place(&mut buf);
        for (j, acc) in out.iter_mut().enumerate() {
            *acc += *d * buf[unshifted_index(j, n)].norm_sqr();
        }
    }
    out
}

/// `s2` for taper-sum kernels: autocorrelations of the elementwise products
/// `h_j . h_k`, weighted by `d_j d_k`. Pairs whose supports do not meet are
/// skipped, which makes zero-overlap Welch linear in the segment count.
fn cross_taper_squared_sums<T: Scalar>(weights: &[T], tapers: &[Taper<T>], n: usize) -> Vec<T> {
    let mut s2 = vec![T::zero(); n];
    let k = tapers.len();
    let mut prod = vec![T::zero(); n];
    for j in 0..k {
        for l in j..k {
            let mut nonzero = false;
            for (p, (&a, &b)) in prod
                .iter_mut()
                .zip(tapers[j].values().iter().zip(tapers[l].values()))
            {
                *p = a * b;
                nonzero |= *p != T::zero();
            }
            if !nonzero {
                continue;
            }
            let factor = if j == l {
                weights[j] * weights[l]
            } else {
                lit::<T>(2.0) * weights[j] * weights[l]
            };
            for (acc, v) in s2.iter_mut().zip(autocorrelation(&prod)) {
                *acc += factor * v;
            }
        }
    }
    s2
}

/// Descriptor of the kernel that produced an estimate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelKind {
    Multitaper { tapers: usize },
    LagWindow,
    Welch { segments: usize },
    Explicit,
}

impl std::fmt::Display for KernelKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            KernelKind::Multitaper { tapers } => write!(f, "multitaper(K={tapers})"),
            KernelKind::LagWindow => write!(f, "lag-window"),
            KernelKind::Welch { segments } => write!(f, "welch(M={segments})"),
            KernelKind::Explicit => write!(f, "explicit"),
        }
    }
}

/// `I(omega_j)` on the `n` Fourier frequencies.
#[derive(Debug, Clone)]
pub struct SpectralEstimate<T> {
    frequencies: Vec<T>,
    values: Vec<T>,
    kind: KernelKind,
}

impl<T: Scalar> SpectralEstimate<T> {
    /// Wrap raw per-frequency values as an estimate on the Fourier grid;
    /// used for synthetic fits and for replaying stored estimates.
    pub fn from_values(values: Vec<T>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::arg("estimate needs at least two frequencies"));
        }
        Ok(SpectralEstimate {
            frequencies: fourier_frequencies(values.len()),
            values,
            kind: KernelKind::Explicit,
        })
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn frequencies(&self) -> &[T] {
        &self.frequencies
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn kind(&self) -> KernelKind {
        self.kind
    }

    /// Whether bin `j` sits at `omega = 0` or `omega = +-pi`, where the
    /// asymptotic theory of these estimators does not apply.
    pub fn is_boundary_bin(&self, j: usize) -> bool {
        let n = self.n();
        let half = n / 2;
        j == half || (n.is_multiple_of(2) && j == 0)
    }

    /// Indices away from `omega = 0, +-pi`.
    pub fn interior_indices(&self) -> Vec<usize> {
        (0..self.n()).filter(|&j| !self.is_boundary_bin(j)).collect()
    }

    /// Two-column text serialization with boundary bins flagged in the
    /// header metadata.
    pub fn to_text(&self) -> String
    where
        T: std::fmt::Display,
    {
        let mut out = String::new();
        out.push_str(&format!("# kernel: {}\n", self.kind));
        let boundary: Vec<String> = (0..self.n())
            .filter(|&j| self.is_boundary_bin(j))
            .map(|j| format!("{j}"))
            .collect();
        out.push_str(&format!(
            "# boundary bins (omega = 0 or -pi): {}\n",
            boundary.join(", ")
        ));
        for (w, v) in self.frequencies.iter().zip(&self.values) {
            out.push_str(&format!("{w} {v}\n"));
        }
        out
    }
}

/// Kernel-level statistics: ACF, variance factor, bandwidth, effective
/// sample size, and the white-noise frequency correlation.
#[derive(Debug, Clone)]
pub struct KernelDiagnostics<T> {
    n: usize,
    kernel_acf: Vec<T>,
    sq_diag_sums: Vec<T>,
    variance_factor: T,
    bandwidth: T,
    ess: T,
    n0: usize,
}

impl<T: Scalar> KernelDiagnostics<T> {
    pub fn n(&self) -> usize {
        self.n
    }

    /// `q(tau)`, `tau = 0..n-1`.
    pub fn kernel_acf(&self) -> &[T] {
        &self.kernel_acf
    }

    /// Variance-reduction factor `M = 1 / sum_{s,t} Q_{s,t}^2`.
    pub fn variance_factor(&self) -> T {
        self.variance_factor
    }

    /// Spectral bandwidth `B = M sum_t Q_{t,t}^2`.
    pub fn bandwidth(&self) -> T {
        self.bandwidth
    }

    /// Effective sample size `zeta = 1 / B`.
    pub fn ess(&self) -> T {
        self.ess
    }

    /// Count of non-zero diagonal entries of `Q`.
    pub fn n0(&self) -> usize {
        self.n0
    }

    /// White-noise correlation `R(eta)` between estimator ordinates at
    /// frequency offset `eta`.
    pub fn correlation(&self, eta: T) -> T {
        self.variance_factor * cosine_series_at(&self.sq_diag_sums, eta)
    }

    /// `R` at the unshifted Fourier offsets `2 pi j / n`, `j = 0..n-1`;
    /// this is the first row of the circulant correlation matrix.
    pub fn correlation_row(&self) -> Vec<T> {
        let n = self.n;
        let mut buf: Vec<Complex<T>> = self
            .sq_diag_sums
            .iter()
            .map(|&v| Complex::new(v, T::zero()))
            .collect();
        fft_in_place(&mut buf);
        let s0 = self.sq_diag_sums[0];
        (0..n)
            .map(|j| self.variance_factor * (lit::<T>(2.0) * buf[j].re - s0))
            .collect()
    }
}
