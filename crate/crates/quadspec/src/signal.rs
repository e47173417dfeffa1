//! Test processes: AR(p) and white-noise generators, their exact spectra and
//! autocovariance sequences, and plain-text series I/O.
//!
//! Simulation is reproducible: innovations come from `ChaCha12Rng` seeded
//! with a caller-supplied `u64`, with Gaussian draws via `rand_distr`'s
//! ziggurat `StandardNormal`. Equal seeds give equal samples on every
//! platform.

use std::fmt::Display;
use std::fs;
use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::linalg::lu_solve;
use crate::{from_usize, lit, Scalar};

/// Finite real-valued sample with unit sampling interval.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries<T> {
    values: Vec<T>,
}

impl<T: Scalar> TimeSeries<T> {
    pub fn new(values: Vec<T>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::arg(format!(
                "time series needs n >= 2, got {}",
                values.len()
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::arg("time series values must be finite"));
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

    pub fn into_values(self) -> Vec<T> {
        self.values
    }
}

/// Autoregressive model `x_t = sum_j phi_j x_{t-j} + eps_t`,
/// `eps_t ~ N(0, sigma^2)`.
///
/// Construction checks stationarity by the step-down (reverse
/// Levinson-Durbin) recursion: the model is stationary exactly when every
/// reflection coefficient has magnitude below one.
#[derive(Debug, Clone, PartialEq)]
pub struct ArModel<T> {
    phi: Vec<T>,
    sigma: T,
}

impl<T: Scalar> ArModel<T> {
    pub fn new(phi: Vec<T>, sigma: T) -> Result<Self> {
        if !sigma.is_finite() || sigma <= T::zero() {
            return Err(Error::arg("innovation standard deviation must be positive"));
        }
        if phi.iter().any(|v| !v.is_finite()) {
            return Err(Error::arg("AR coefficients must be finite"));
        }
        check_stationary(&phi)?;
        Ok(Self { phi, sigma })
    }

    /// White noise with standard deviation `sigma`.
    pub fn white(sigma: T) -> Result<Self> {
        Self::new(Vec::new(), sigma)
    }

    /// The canonical sharp-peaked AR(4) test model.
    pub fn ar4_canonical() -> Self {
        Self::new(
            vec![lit(2.7607), lit(-3.8106), lit(2.6535), lit(-0.9238)],
            T::one(),
        )
        .expect("canonical AR(4) model is stationary")
    }

    pub fn order(&self) -> usize {
        self.phi.len()
    }

    pub fn phi(&self) -> &[T] {
        &self.phi
    }

    pub fn sigma(&self) -> T {
        self.sigma
    }

    /// Default burn-in: `1024 + 10 p` zero-started warm-up samples, enough to
    /// wash out transients at the test tolerances used here.
    pub fn default_burn_in(&self) -> usize {
        1024 + 10 * self.order()
    }

    /// Draw a length-`n` sample with the default burn-in.
    pub fn simulate(&self, n: usize, seed: u64) -> Result<TimeSeries<T>>
    where
        StandardNormal: Distribution<T>,
    {
        self.simulate_with_burn_in(n, seed, self.default_burn_in())
    }

    /// Draw a length-`n` sample, discarding `burn_in` initial samples from a
    /// zero start. Deterministic in `seed`.
    pub fn simulate_with_burn_in(&self, n: usize, seed: u64, burn_in: usize) -> Result<TimeSeries<T>>
    where
        StandardNormal: Distribution<T>,
    {
        if n < 2 {
            return Err(Error::arg(format!("sample length must be >= 2, got {n}")));
        }
        let total = burn_in + n;
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        let mut x = vec![T::zero(); total];
        for t in 0..total {
            let mut v: T = StandardNormal.sample(&mut rng);
            v *= self.sigma;
            for (j, &phi) in self.phi.iter().enumerate() {
                if t > j {
                    v += phi * x[t - j - 1];
                }
            }
            x[t] = v;
        }
        let tail = x.split_off(burn_in);
        TimeSeries::new(tail)
    }

    /// Spectral density `f(omega) = sigma^2 / |1 - sum_j phi_j e^{-i omega j}|^2`.
    pub fn density(&self, omega: T) -> T {
        let mut re = T::one();
        let mut im = T::zero();
        for (j, &phi) in self.phi.iter().enumerate() {
            let arg = omega * from_usize::<T>(j + 1);
            re -= phi * arg.cos();
            im += phi * arg.sin();
        }
        self.sigma * self.sigma / (re * re + im * im)
    }

    /// Density evaluated on a frequency grid.
    pub fn density_on(&self, grid: &[T]) -> Vec<T> {
        grid.iter().map(|&w| self.density(w)).collect()
    }

    /// Exact autocovariance sequence `gamma(0..max_lag)`.
    ///
    /// Solves the `(p+1)`-dimensional Yule-Walker system for
    /// `gamma(0..p)`, then extends by the recursion
    /// `gamma(tau) = sum_j phi_j gamma(tau - j)`.
    pub fn acvs(&self, max_lag: usize) -> Result<Vec<T>> {
        let p = self.order();
        let s2 = self.sigma * self.sigma;
        if p == 0 {
            let mut g = vec![T::zero(); max_lag + 1];
            g[0] = s2;
            return Ok(g);
        }
        // Equations for tau = 0..p:
        //   gamma(tau) - sum_j phi_j gamma(|tau - j|) = sigma^2 [tau = 0]
        let dim = p + 1;
        let mut a = vec![T::zero(); dim * dim];
        let mut b = vec![T::zero(); dim];
        for tau in 0..=p {
            a[tau * dim + tau] += T::one();
            for (j, &phi) in self.phi.iter().enumerate() {
                let k = tau.abs_diff(j + 1);
                a[tau * dim + k] -= phi;
            }
        }
        b[0] = s2;
        let head = lu_solve(&a, dim, &b)?;
        let mut g = head;
        g.reserve(max_lag.saturating_sub(p));
        for tau in (p + 1)..=max_lag {
            let mut v = T::zero();
            for (j, &phi) in self.phi.iter().enumerate() {
                v += phi * g[tau - j - 1];
            }
            g.push(v);
        }
        g.truncate(max_lag + 1);
        Ok(g)
    }
}

fn check_stationary<T: Scalar>(phi: &[T]) -> Result<()> {
    let mut a = phi.to_vec();
    for m in (1..=a.len()).rev() {
        let k = a[m - 1];
        if k.abs() >= T::one() - lit(1e-12) {
            return Err(Error::NonStationary(format!(
                "reflection coefficient {:?} at order {m} has magnitude >= 1",
                k.to_f64()
            )));
        }
        let denom = T::one() - k * k;
        let prev: Vec<T> = (0..m - 1)
            .map(|j| (a[j] + k * a[m - 2 - j]) / denom)
            .collect();
        a[..m - 1].copy_from_slice(&prev);
        a.truncate(m - 1);
    }
    Ok(())
}

/// A spectral density paired with (or able to produce) its autocovariances.
#[derive(Debug, Clone)]
pub enum Spectrum<T> {
    /// Flat spectrum `f = variance`.
    White { variance: T },
    /// AR model spectrum with exact Yule-Walker autocovariances.
    Ar(ArModel<T>),
    /// Values tabulated on a uniform grid over `[-pi, pi)`, optionally with a
    /// precomputed autocovariance table.
    Tabulated {
        values: Vec<T>,
        acvs: Option<Vec<T>>,
    },
}

impl<T: Scalar> Spectrum<T> {
    pub fn density(&self, omega: T) -> T {
        match self {
            Spectrum::White { variance } => *variance,
            Spectrum::Ar(model) => model.density(omega),
            Spectrum::Tabulated { values, .. } => {
                // periodic linear interpolation on the uniform grid
                let n = values.len();
                let nt = from_usize::<T>(n);
                let pos = (omega + T::PI()) / T::TAU() * nt;
                let base = pos.floor();
                let frac = pos - base;
                let i = (base.to_isize().unwrap_or(0).rem_euclid(n as isize)) as usize;
                let j = (i + 1) % n;
                values[i] * (T::one() - frac) + values[j] * frac
            }
        }
    }

    pub fn density_on(&self, grid: &[T]) -> Vec<T> {
        grid.iter().map(|&w| self.density(w)).collect()
    }

    /// Autocovariances `gamma(0..max_lag)`.
    ///
    /// Exact for white noise and AR models. For tabulated spectra a stored
    /// table is used when present; otherwise the table must be fine enough
    /// (at least eight points per requested lag) to integrate by the
    /// trapezoid rule.
    pub fn acvs(&self, max_lag: usize) -> Result<Vec<T>> {
        match self {
            Spectrum::White { variance } => {
                let mut g = vec![T::zero(); max_lag + 1];
                g[0] = *variance;
                Ok(g)
            }
            Spectrum::Ar(model) => model.acvs(max_lag),
            Spectrum::Tabulated { values, acvs } => {
                if let Some(table) = acvs {
                    if table.len() <= max_lag {
                        return Err(Error::arg(format!(
                            "stored acvs covers lags < {}, need {max_lag}",
                            table.len()
                        )));
                    }
                    return Ok(table[..=max_lag].to_vec());
                }
                let n = values.len();
                if n < 8 * (max_lag + 1) {
                    return Err(Error::arg(format!(
                        "tabulated grid of {n} points is too coarse to integrate \
                         autocovariances up to lag {max_lag}"
                    )));
                }
                let dw = T::TAU() / from_usize::<T>(n);
                let mut g = Vec::with_capacity(max_lag + 1);
                for tau in 0..=max_lag {
                    let mut acc = T::zero();
                    for (i, &f) in values.iter().enumerate() {
                        let w = -T::PI() + dw * from_usize::<T>(i);
                        acc += f * (w * from_usize::<T>(tau)).cos();
                    }
                    g.push(acc * dw / T::TAU());
                }
                Ok(g)
            }
        }
    }
}

/// Write a series as one plain decimal value per line.
pub fn save_series<T: Scalar + Display>(series: &TimeSeries<T>, path: impl AsRef<Path>) -> Result<()> {
    let mut out = String::with_capacity(series.len() * 20);
    for v in series.values() {
        out.push_str(&format!("{v}\n"));
    }
    fs::write(path, out)?;
    Ok(())
}

/// Read a one-value-per-line series file.
pub fn load_series<T: Scalar>(path: impl AsRef<Path>) -> Result<TimeSeries<T>> {
    let path = path.as_ref();
    let text = fs::read_to_string(path)?;
    let mut values = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let tok = line.trim();
        if tok.is_empty() {
            continue;
        }
        let parsed: f64 = tok.parse().map_err(|_| Error::Parse {
            path: path.display().to_string(),
            line: idx + 1,
            message: format!("expected a number, found {tok:?}"),
        })?;
        values.push(T::from_f64(parsed).ok_or_else(|| Error::Parse {
            path: path.display().to_string(),
            line: idx + 1,
            message: format!("{parsed} is not representable"),
        })?);
    }
    TimeSeries::new(values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fft::fourier_frequencies;

    fn ar4() -> ArModel<f64> {
        ArModel::ar4_canonical()
    }

    #[test]
    fn stationarity_checks() {
        assert!(ArModel::new(vec![2.7607, -3.8106, 2.6535, -0.9238], 1.0).is_ok());
        // unit root
        assert!(matches!(
            ArModel::new(vec![1.0], 1.0),
            Err(Error::NonStationary(_))
        ));
        assert!(ArModel::new(vec![0.5, 0.6], 1.0).is_err()); // root inside unit circle
        assert!(ArModel::<f64>::new(vec![], 0.0).is_err());
    }

    #[test]
    fn simulate_is_deterministic_and_sized() {
        let m = ar4();
        let a = m.simulate(256, 42).unwrap();
        let b = m.simulate(256, 42).unwrap();
        assert_eq!(a, b);
        let c = m.simulate(256, 43).unwrap();
        assert_ne!(a, c);
        assert_eq!(a.len(), 256);
        assert!(m.simulate(1, 0).is_err());
    }

    #[test]
    fn white_noise_unit_variance_over_ensemble() {
        let m = ArModel::white(1.0).unwrap();
        let mut acc = 0.0;
        let mut count = 0usize;
        for seed in 0..200 {
            let x = m.simulate(64, seed).unwrap();
            acc += x.values().iter().map(|v| v * v).sum::<f64>();
            count += x.len();
        }
        let var = acc / count as f64;
        // SE of the variance estimate is sqrt(2/count)
        let se = (2.0 / count as f64).sqrt();
        assert!((var - 1.0).abs() < 4.0 * se, "var = {var}");
    }

    #[test]
    fn white_density_is_flat() {
        let m = ArModel::white(2.0).unwrap();
        let grid: Vec<f64> = fourier_frequencies(16);
        for v in m.density_on(&grid) {
            assert!((v - 4.0).abs() < 1e-14);
        }
    }

    #[test]
    fn ar4_density_at_zero_matches_closed_form() {
        let m = ar4();
        let phi_sum = 2.7607 - 3.8106 + 2.6535 - 0.9238;
        let expect = 1.0 / ((1.0 - phi_sum) * (1.0 - phi_sum));
        assert!((m.density(0.0) - expect).abs() / expect < 1e-14);
    }

    #[test]
    fn density_is_even() {
        let m = ar4();
        for &w in &[0.13, 0.9, 1.7, 2.9, 3.1] {
            let a = m.density(w);
            let b = m.density(-w);
            assert!((a - b).abs() / a < 1e-13);
        }
    }

    #[test]
    fn acvs_white_noise() {
        let m = ArModel::<f64>::white(1.0).unwrap();
        let g = m.acvs(5).unwrap();
        assert_eq!(g.len(), 6);
        assert!((g[0] - 1.0).abs() < 1e-15);
        for &v in &g[1..] {
            assert_eq!(v, 0.0);
        }
        assert_eq!(m.acvs(0).unwrap().len(), 1);
    }

    #[test]
    fn acvs_satisfies_yule_walker_recursion() {
        let m = ar4();
        let g = m.acvs(32).unwrap();
        for tau in 5..=32 {
            let mut v = 0.0;
            for (j, &phi) in m.phi().iter().enumerate() {
                v += phi * g[tau - j - 1];
            }
            assert!(
                (g[tau] - v).abs() / g[0].abs() < 1e-10,
                "tau={tau}: {} vs {v}",
                g[tau]
            );
        }
    }

    #[test]
    fn acvs_gamma0_matches_spectrum_quadrature() {
        let m = ar4();
        let g0 = m.acvs(0).unwrap()[0];
        let grid = 1usize << 16;
        let dw = 2.0 * std::f64::consts::PI / grid as f64;
        let mut acc = 0.0;
        for i in 0..grid {
            let w = -std::f64::consts::PI + dw * (i as f64 + 0.5);
            acc += m.density(w);
        }
        let quad = acc * dw / (2.0 * std::f64::consts::PI);
        assert!((g0 - quad).abs() / g0 < 1e-6, "g0={g0} quad={quad}");
    }

    #[test]
    fn spectrum_enum_acvs_paths() {
        let s = Spectrum::White { variance: 3.0 };
        let g = s.acvs(4).unwrap();
        assert_eq!(g[0], 3.0);
        assert_eq!(g[2], 0.0);

        // tabulated flat spectrum integrates to the same table
        let values = vec![2.0f64; 4096];
        let s = Spectrum::Tabulated {
            values,
            acvs: None,
        };
        let g = s.acvs(3).unwrap();
        assert!((g[0] - 2.0).abs() < 1e-10);
        assert!(g[1].abs() < 1e-10);

        // too-coarse table without acvs errors out
        let s = Spectrum::Tabulated {
            values: vec![1.0f64; 16],
            acvs: None,
        };
        assert!(s.acvs(12).is_err());
    }

    #[test]
    fn series_round_trip() {
        let dir = std::env::temp_dir().join("quadspec_signal_test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("series.txt");
        let m = ar4();
        let x = m.simulate(64, 7).unwrap();
        save_series(&x, &path).unwrap();
        let y: TimeSeries<f64> = load_series(&path).unwrap();
        assert_eq!(x, y);
    }

    #[test]
    fn load_reports_offending_line() {
        let dir = std::env::temp_dir().join("quadspec_signal_test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("bad.txt");
        std::fs::write(&path, "1.0\n2.0\nnot_a_number\n4.0\n").unwrap();
        match load_series::<f64>(&path) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn four_value_file_loads() {
        let dir = std::env::temp_dir().join("quadspec_signal_test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("four.txt");
        std::fs::write(&path, "0.5\n-1.25\n3\n0.0\n").unwrap();
        let x: TimeSeries<f64> = load_series(&path).unwrap();
        assert_eq!(x.len(), 4);
        assert_eq!(x.values()[2], 3.0);
    }
}
