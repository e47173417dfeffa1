//! Tapers and lag sequences.
//!
//! A [`Taper`] is a unit-energy weight sequence applied to the data before
//! transforming; a [`LagSequence`] weights the empirical autocovariance. Both
//! feed [`crate::kernel::QuadKernel`] constructors.

use crate::error::{Error, Result};
use crate::linalg::Tridiagonal;
use crate::{check_tol, from_usize, lit, Scalar};

/// Unit-energy data taper `h_0..h_{n-1}` with `sum h_t^2 = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Taper<T> {
    values: Vec<T>,
}

impl<T: Scalar> Taper<T> {
    /// Wrap a raw sequence, checking unit energy to 1e-12.
    pub fn new(values: Vec<T>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::arg("taper must be non-empty"));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::arg("taper values must be finite"));
        }
        let energy: T = values.iter().map(|&v| v * v).sum();
        if (energy - T::one()).abs() > check_tol(1e-12) {
            return Err(Error::arg(format!(
                "taper energy {:?} differs from 1 by more than 1e-12",
                energy.to_f64()
            )));
        }
        Ok(Self { values })
    }

    /// Normalize a raw sequence to unit energy.
    pub fn from_unnormalized(mut values: Vec<T>) -> Result<Self> {
        let energy: T = values.iter().map(|&v| v * v).sum();
        if !energy.is_finite() || energy <= T::zero() {
            return Err(Error::arg("cannot normalize a zero or non-finite taper"));
        }
        let scale = energy.sqrt().recip();
        for v in values.iter_mut() {
            *v *= scale;
        }
        Self::new(values)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    /// Count of non-zero entries (the effective taper length `n0`).
    pub fn nonzero_len(&self) -> usize {
        self.values.iter().filter(|v| **v != T::zero()).count()
    }
}

/// Symmetric lag sequence `w_0..w_{n-1}` with `w_0 = 1`; the negative-lag
/// half is implied by `w_{-tau} = w_tau`.
#[derive(Debug, Clone, PartialEq)]
pub struct LagSequence<T> {
    values: Vec<T>,
}

impl<T: Scalar> LagSequence<T> {
    pub fn new(values: Vec<T>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::arg("lag sequence must be non-empty"));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::arg("lag sequence values must be finite"));
        }
        if (values[0] - T::one()).abs() > check_tol(1e-12) {
            return Err(Error::arg("lag sequence must have w_0 = 1"));
        }
        Ok(Self { values })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }
}

/// Flat taper `h_t = n^{-1/2}`: the raw periodogram's "no taper".
pub fn rectangular_taper<T: Scalar>(n: usize) -> Result<Taper<T>> {
    if n == 0 {
        return Err(Error::arg("taper length must be >= 1"));
    }
    let v = from_usize::<T>(n).sqrt().recip();
    Taper::new(vec![v; n])
}

/// Hamming taper `0.54 - 0.46 cos(2 pi t / (L-1))`, rescaled to unit energy.
pub fn hamming_taper<T: Scalar>(len: usize) -> Result<Taper<T>> {
    if len < 2 {
        return Err(Error::arg("hamming taper needs length >= 2"));
    }
    let denom = from_usize::<T>(len - 1);
    let raw: Vec<T> = (0..len)
        .map(|t| lit::<T>(0.54) - lit::<T>(0.46) * (T::TAU() * from_usize::<T>(t) / denom).cos())
        .collect();
    Taper::from_unnormalized(raw)
}

/// The first `k_count` sinusoidal (sine) multitapers:
/// `h_{k,t} = sqrt(2/(n+1)) sin((k+1) pi (t+1) / (n+1))`.
///
/// These are exactly orthonormal for any `n`.
pub fn sinusoidal_tapers<T: Scalar>(n: usize, k_count: usize) -> Result<Vec<Taper<T>>> {
    if k_count == 0 || k_count > n {
        return Err(Error::arg(format!(
            "need 1 <= K <= n, got K = {k_count}, n = {n}"
        )));
    }
    let np1 = from_usize::<T>(n + 1);
    let amp = (lit::<T>(2.0) / np1).sqrt();
    (0..k_count)
        .map(|k| {
            let freq = T::PI() * from_usize::<T>(k + 1) / np1;
            let vals: Vec<T> = (0..n)
                .map(|t| amp * (freq * from_usize::<T>(t + 1)).sin())
                .collect();
            Taper::new(vals)
        })
        .collect()
}

/// Discrete prolate spheroidal (Slepian) tapers.
///
/// `time_bandwidth` is the usual `NW` product; the concentration half-band is
/// `W = 2 pi NW / n` in radians. Tapers are computed as the top `k_count`
/// eigenvectors of the commuting symmetric tridiagonal matrix with diagonal
/// `((n-1-2t)/2)^2 cos(2 pi W')` and off-diagonal `t(n-t)/2`, `W' = NW/n`,
/// ordered by decreasing spectral concentration.
///
/// Sign convention: even-order tapers have positive mean; odd-order tapers
/// have positive inner product with a centered ramp.
pub fn dpss_tapers<T: Scalar>(n: usize, time_bandwidth: T, k_count: usize) -> Result<Vec<Taper<T>>> {
    if n < 2 {
        return Err(Error::arg("dpss needs n >= 2"));
    }
    let half_n = from_usize::<T>(n) / lit::<T>(2.0);
    if !time_bandwidth.is_finite() || time_bandwidth <= T::zero() || time_bandwidth >= half_n {
        return Err(Error::arg(format!(
            "time-bandwidth must satisfy 0 < NW < n/2, got {:?}",
            time_bandwidth.to_f64()
        )));
    }
    if k_count == 0 || k_count > n {
        return Err(Error::arg(format!("need 1 <= K <= n, got K = {k_count}")));
    }

    let w = time_bandwidth / from_usize::<T>(n);
    let cos_w = (T::TAU() * w).cos();
    let diag: Vec<T> = (0..n)
        .map(|t| {
            let c = (from_usize::<T>(n - 1) - lit::<T>(2.0) * from_usize::<T>(t)) / lit::<T>(2.0);
            c * c * cos_w
        })
        .collect();
    let offdiag: Vec<T> = (1..n)
        .map(|t| from_usize::<T>(t) * from_usize::<T>(n - t) / lit::<T>(2.0))
        .collect();
    let tri = Tridiagonal { diag, offdiag };

    let mut tapers = Vec::with_capacity(k_count);
    let mut found: Vec<Vec<T>> = Vec::with_capacity(k_count);
    for k in 0..k_count {
        let lambda = tri.eigenvalue(n - 1 - k);
        let mut v = tri.eigenvector(lambda, &found)?;
        fix_dpss_sign(&mut v, k);
        found.push(v.clone());
        tapers.push(Taper::from_unnormalized(v)?);
    }
    Ok(tapers)
}

fn fix_dpss_sign<T: Scalar>(v: &mut [T], k: usize) {
    let n = v.len();
    let flip = if k.is_multiple_of(2) {
        let mean: T = v.iter().copied().sum();
        mean < T::zero()
    } else {
        let center = from_usize::<T>(n - 1) / lit::<T>(2.0);
        let ramp: T = v
            .iter()
            .enumerate()
            .map(|(t, &x)| (from_usize::<T>(t) - center) * x)
            .sum();
        ramp < T::zero()
    };
    if flip {
        for x in v.iter_mut() {
            *x = -*x;
        }
    }
}

/// Embed a length-`seg_len` base taper into `seg_count` shifted copies of
/// length `n`, one per Welch segment.
///
/// Segment `m` starts at offset `m * seg_len * (1 - overlap)`; offsets must
/// be integral and the last segment must end at or before `n`.
pub fn welch_segment_tapers<T: Scalar>(
    n: usize,
    seg_len: usize,
    seg_count: usize,
    overlap: f64,
    base: &Taper<T>,
) -> Result<Vec<Taper<T>>> {
    if base.len() != seg_len {
        return Err(Error::arg(format!(
            "base taper length {} does not match segment length {seg_len}",
            base.len()
        )));
    }
    if seg_count == 0 {
        return Err(Error::arg("need at least one segment"));
    }
    if !(0.0..1.0).contains(&overlap) {
        return Err(Error::arg("overlap fraction must lie in [0, 1)"));
    }
    let step = seg_len as f64 * (1.0 - overlap);
    let mut tapers = Vec::with_capacity(seg_count);
    for m in 0..seg_count {
        let offset_real = m as f64 * step;
        let offset = offset_real.round() as usize;
        if (offset_real - offset as f64).abs() > 1e-9 {
            return Err(Error::arg(format!(
                "segment {m} offset {offset_real} is not an integer"
            )));
        }
        if offset + seg_len > n {
            return Err(Error::arg(format!(
                "segment {m} ends at {} past n = {n}",
                offset + seg_len
            )));
        }
        let mut vals = vec![T::zero(); n];
        vals[offset..offset + seg_len].copy_from_slice(base.values());
        tapers.push(Taper::new(vals)?);
    }
    Ok(tapers)
}

/// Triangular (Bartlett) lag sequence `w_tau = max(0, 1 - tau/width)`.
pub fn bartlett_lag<T: Scalar>(n: usize, width: usize) -> Result<LagSequence<T>> {
    if n == 0 || width == 0 {
        return Err(Error::arg("bartlett lag needs n >= 1 and width >= 1"));
    }
    let w = from_usize::<T>(width);
    let vals: Vec<T> = (0..n)
        .map(|tau| (T::one() - from_usize::<T>(tau) / w).max(T::zero()))
        .collect();
    LagSequence::new(vals)
}

/// Modified Daniell lag sequence for smoothing over `2m + 1` Fourier bins.
///
/// Frequency-domain weights are uniform with halved endpoints, normalized to
/// sum 1; the equivalent lag sequence on an `n`-point circle is
/// `w_tau = g_0 + 2 sum_j g_j cos(2 pi j tau / n)`.
pub fn modified_daniell_lag<T: Scalar>(n: usize, m: usize) -> Result<LagSequence<T>> {
    if n == 0 || m == 0 {
        return Err(Error::arg("modified daniell needs n >= 1 and m >= 1"));
    }
    if 2 * m + 1 > n {
        return Err(Error::arg(format!(
            "smoothing span 2m+1 = {} exceeds n = {n}",
            2 * m + 1
        )));
    }
    let interior = (lit::<T>(2.0) * from_usize::<T>(m)).recip();
    let endpoint = interior / lit::<T>(2.0);
    let step = T::TAU() / from_usize::<T>(n);
    let vals: Vec<T> = (0..n)
        .map(|tau| {
            let t = from_usize::<T>(tau);
            let mut w = interior; // j = 0
            for j in 1..m {
                w += lit::<T>(2.0) * interior * (step * from_usize::<T>(j) * t).cos();
            }
            w += lit::<T>(2.0) * endpoint * (step * from_usize::<T>(m) * t).cos();
            w
        })
        .collect();
    LagSequence::new(vals)
}

/// Shape of the taper section of a flat-top lag sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FlatTopShape {
    /// Linear descent from 1 at `|tau| = 1/a` to 0 at `|tau| = c/a`.
    #[default]
    Trapezoid,
}

/// Infinite-order flat-top lag sequence: 1 on `|tau| <= 1/a`, a continuous
/// taper `g` down to 0 at `|tau| = c/a`, and 0 beyond.
///
/// The resulting kernel is generally not positive semi-definite; estimates
/// may go negative, which the rest of the machinery accepts.
pub fn flat_top_lag<T: Scalar>(n: usize, a: T, c: T, shape: FlatTopShape) -> Result<LagSequence<T>> {
    if n == 0 {
        return Err(Error::arg("flat-top lag needs n >= 1"));
    }
    if !a.is_finite() || a <= T::zero() {
        return Err(Error::arg("flat-top parameter a must be positive"));
    }
    if !c.is_finite() || c < T::one() {
        return Err(Error::arg("flat-top parameter c must be >= 1"));
    }
    let flat_edge = a.recip();
    let zero_edge = c / a;
    let vals: Vec<T> = (0..n)
        .map(|tau| {
            let t = from_usize::<T>(tau);
            if t <= flat_edge {
                T::one()
            } else if t <= zero_edge {
                match shape {
                    FlatTopShape::Trapezoid => {
                        if c == T::one() {
                            T::zero()
                        } else {
                            (c - a * t) / (c - T::one())
                        }
                    }
                }
            } else {
                T::zero()
            }
        })
        .collect();
    LagSequence::new(vals)
}
