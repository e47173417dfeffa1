//! FFT helpers: Fourier grid conventions, autocorrelation, and evaluation of
//! symmetric lag sequences on the Fourier frequencies.
//!
//! The estimation grid everywhere in this crate is the `n` Fourier
//! frequencies `omega_j = 2*pi*(j - floor(n/2))/n` for `j = 0..n-1`, i.e.
//! running from `-pi` (inclusive, for even `n`) up to just below `+pi`.

use num_complex::Complex;
use rustfft::FftPlanner;

use crate::{from_usize, lit, Scalar};

/// The `n` Fourier frequencies in increasing order, `-pi..pi`.
pub fn fourier_frequencies<T: Scalar>(n: usize) -> Vec<T> {
    let half = n / 2;
    let step = T::TAU() / from_usize(n);
    (0..n)
        .map(|j| step * (from_usize::<T>(j) - from_usize::<T>(half)))
        .collect()
}

/// Index into an unshifted DFT output for grid position `j` of the shifted
/// (frequency-increasing) grid.
#[inline]
pub fn unshifted_index(j: usize, n: usize) -> usize {
    let half = n / 2;
    (j + n - half) % n
}

/// Grid index holding `-omega_j` (mod 2*pi), used for symmetry checks.
#[inline]
pub fn negated_index(j: usize, n: usize) -> usize {
    let half = n / 2;
    let m = (j + n - half) % n; // unshifted bin
    let neg = (n - m) % n;
    (neg + half) % n
}

/// Forward DFT of a complex buffer, in place.
pub fn fft_in_place<T: Scalar>(buf: &mut [Complex<T>]) {
    let mut planner = FftPlanner::new();
    let fft = planner.plan_fft_forward(buf.len());
    fft.process(buf);
}

/// Inverse DFT of a complex buffer, in place, including the 1/n scaling.
pub fn ifft_in_place<T: Scalar>(buf: &mut [Complex<T>]) {
    let n = buf.len();
    let mut planner = FftPlanner::new();
    let fft = planner.plan_fft_inverse(n);
    fft.process(buf);
    let scale = T::one() / from_usize(n);
    for v in buf.iter_mut() {
        *v = v.scale(scale);
    }
}

/// Linear autocorrelation `a(tau) = sum_t x_t x_{t+tau}` for `tau = 0..n-1`,
/// computed through a length-`2n` FFT.
pub fn autocorrelation<T: Scalar>(x: &[T]) -> Vec<T> {
    let n = x.len();
    if n == 0 {
        return Vec::new();
    }
    let m = 2 * n;
    let mut buf: Vec<Complex<T>> = Vec::with_capacity(m);
    buf.extend(x.iter().map(|&v| Complex::new(v, T::zero())));
    buf.resize(m, Complex::new(T::zero(), T::zero()));
    fft_in_place(&mut buf);
    for v in buf.iter_mut() {
        let p = v.norm_sqr();
        *v = Complex::new(p, T::zero());
    }
    ifft_in_place(&mut buf);
    buf[..n].iter().map(|v| v.re).collect()
}

/// Cross-correlation `sum_t x_t y_{t+tau}` for `tau = 0..n-1` of equal-length
/// real sequences.
pub fn cross_correlation<T: Scalar>(x: &[T], y: &[T]) -> Vec<T> {
    let n = x.len();
    assert_eq!(n, y.len());
    if n == 0 {
        return Vec::new();
    }
    let m = 2 * n;
    let zero = Complex::new(T::zero(), T::zero());
    let mut bx: Vec<Complex<T>> = Vec::with_capacity(m);
    bx.extend(x.iter().map(|&v| Complex::new(v, T::zero())));
    bx.resize(m, zero);
    let mut by: Vec<Complex<T>> = Vec::with_capacity(m);
    by.extend(y.iter().map(|&v| Complex::new(v, T::zero())));
    by.resize(m, zero);
    fft_in_place(&mut bx);
    fft_in_place(&mut by);
    for (a, b) in bx.iter_mut().zip(by.iter()) {
        *a = a.conj() * *b;
    }
    ifft_in_place(&mut bx);
    bx[..n].iter().map(|v| v.re).collect()
}

/// Evaluate the two-sided transform of a conjugate-symmetric lag sequence on
/// the shifted Fourier grid.
///
/// Given one-sided coefficients `a(0..n-1)` standing for the sequence with
/// `a(-tau) = conj(a(tau))`, returns
/// `sum_{|tau| < n} a(tau) e^{-i omega_j tau} = 2 Re[A(omega_j)] - Re[a(0)]`
/// at each grid frequency, which is real by construction.
pub fn symmetric_transform<T: Scalar>(coeffs: &[Complex<T>]) -> Vec<T> {
    let n = coeffs.len();
    let mut buf = coeffs.to_vec();
    fft_in_place(&mut buf);
    let a0 = coeffs[0].re;
    (0..n)
        .map(|j| {
            let m = unshifted_index(j, n);
            lit::<T>(2.0) * buf[m].re - a0
        })
        .collect()
}

/// Real version of [`symmetric_transform`] for an even lag sequence.
pub fn symmetric_transform_real<T: Scalar>(coeffs: &[T]) -> Vec<T> {
    let complex: Vec<Complex<T>> = coeffs
        .iter()
        .map(|&v| Complex::new(v, T::zero()))
        .collect();
    symmetric_transform(&complex)
}

/// Evaluate `a(0) + 2 sum_{tau>=1} a(tau) cos(omega tau)` at one frequency.
///
/// Chebyshev-style recurrence on `cos(tau omega)`; used for lag-domain
/// quantities off the Fourier grid.
pub fn cosine_series_at<T: Scalar>(coeffs: &[T], omega: T) -> T {
    let n = coeffs.len();
    if n == 0 {
        return T::zero();
    }
    let two = lit::<T>(2.0);
    let c = omega.cos();
    let mut acc = coeffs[0];
    // cos(tau*omega) via cos((tau+1)w) = 2cos(w)cos(tau w) - cos((tau-1)w)
    let mut prev = T::one(); // cos(0)
    let mut cur = c; // cos(w)
    for &a in &coeffs[1..] {
        acc += two * a * cur;
        let next = two * c * cur - prev;
        prev = cur;
        cur = next;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_is_increasing_and_centered() {
        let f: Vec<f64> = fourier_frequencies(8);
        assert_eq!(f.len(), 8);
        assert!((f[0] + std::f64::consts::PI).abs() < 1e-15);
        assert!((f[4]).abs() < 1e-15);
        for w in f.windows(2) {
            assert!(w[1] > w[0]);
        }
        let g: Vec<f64> = fourier_frequencies(5);
        assert!((g[2]).abs() < 1e-15);
    }

    #[test]
    fn negated_index_roundtrip() {
        for n in [4usize, 5, 8, 9, 16] {
            let f: Vec<f64> = fourier_frequencies(n);
            for j in 0..n {
                let k = negated_index(j, n);
                let wj = f[j];
                let wk = f[k];
                let s = (wj + wk).rem_euclid(2.0 * std::f64::consts::PI);
                let d = s.min(2.0 * std::f64::consts::PI - s);
                assert!(d < 1e-12, "n={n} j={j} k={k}");
            }
        }
    }

    #[test]
    fn autocorrelation_matches_direct() {
        let x = [0.7, -1.2, 0.4, 2.0, -0.3, 0.9];
        let a = autocorrelation(&x);
        for tau in 0..x.len() {
            let direct: f64 = (0..x.len() - tau).map(|t| x[t] * x[t + tau]).sum();
            assert!((a[tau] - direct).abs() < 1e-12, "tau={tau}");
        }
    }

    #[test]
    fn symmetric_transform_matches_direct() {
        let n = 12;
        let coeffs: Vec<Complex<f64>> = (0..n)
            .map(|t| Complex::new(0.3 * (t as f64 * 0.7).sin(), 0.2 * (t as f64 * 1.3).cos()))
            .collect();
        // force real a(0) as the contract requires
        let mut coeffs = coeffs;
        coeffs[0].im = 0.0;
        let vals = symmetric_transform(&coeffs);
        let freqs: Vec<f64> = fourier_frequencies(n);
        for (j, &w) in freqs.iter().enumerate() {
            let mut direct = Complex::new(0.0, 0.0);
            for (tau, &a) in coeffs.iter().enumerate() {
                let ph = Complex::from_polar(1.0, -w * tau as f64);
                direct += a * ph;
                if tau > 0 {
                    direct += a.conj() * ph.conj();
                }
            }
            assert!(direct.im.abs() < 1e-10);
            assert!((vals[j] - direct.re).abs() < 1e-10, "j={j}");
        }
    }

    #[test]
    fn cosine_series_matches_direct() {
        let coeffs = [1.0, 0.5, -0.25, 0.125, 0.3];
        for &w in &[0.0, 0.3, 1.7, std::f64::consts::PI] {
            let direct: f64 = coeffs[0]
                + 2.0
                    * coeffs[1..]
                        .iter()
                        .enumerate()
                        .map(|(i, &a)| a * ((i + 1) as f64 * w).cos())
                        .sum::<f64>();
            let got = cosine_series_at(&coeffs, w);
            assert!((got - direct).abs() < 1e-12);
        }
    }
}
