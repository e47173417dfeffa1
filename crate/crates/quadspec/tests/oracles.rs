//! Cross-checks of the structured computation paths against independent
//! oracles: dense eigensolves, brute-force quadratic forms, quadrature, and
//! Monte-Carlo ensembles.

mod common;

use common::{jacobi_eigen, mean_and_se};
use quadspec::debias::{
    biased_basis, correlation_matrix, debias_fit, make_basis, BasisLayout,
};
use quadspec::fft::fourier_frequencies;
use quadspec::kernel::QuadKernel;
use quadspec::signal::{ArModel, Spectrum};
use quadspec::windows::{
    dpss_tapers, flat_top_lag, hamming_taper, modified_daniell_lag, rectangular_taper,
    sinusoidal_tapers, welch_segment_tapers, FlatTopShape,
};

fn four_test_kernels(n: usize) -> Vec<(&'static str, QuadKernel<f64>)> {
    let multitaper =
        QuadKernel::multitaper_uniform(sinusoidal_tapers(n, 4).unwrap()).unwrap();
    let lag_window = QuadKernel::lag_window(
        modified_daniell_lag(n, 4).unwrap(),
        rectangular_taper(n).unwrap(),
    )
    .unwrap();
    let welch = {
        let seg = n / 4;
        let base = hamming_taper(seg).unwrap();
        QuadKernel::welch(welch_segment_tapers(n, seg, 4, 0.0, &base).unwrap()).unwrap()
    };
    let explicit = {
        let k = QuadKernel::lag_window(
            flat_top_lag(n, 4.0 / n as f64, 2.0, FlatTopShape::Trapezoid).unwrap(),
            rectangular_taper(n).unwrap(),
        )
        .unwrap();
        QuadKernel::explicit(k.to_explicit().unwrap(), n).unwrap()
    };
    vec![
        ("multitaper", multitaper),
        ("lag_window", lag_window),
        ("welch", welch),
        ("explicit", explicit),
    ]
}

#[test]
fn ar4_acvs_matches_frozen_yule_walker_solution() {
    // frozen from an exact-fraction solve of the order-4 Yule-Walker system
    let model = ArModel::<f64>::ar4_canonical();
    let g = model.acvs(5).unwrap();
    assert!((g[0] - 7.617172900313e2).abs() / 7.617172900313e2 < 1e-9, "g0 = {}", g[0]);
    assert!(
        (g[5] - (-5.208142016231e2)).abs() / 5.208142016231e2 < 1e-9,
        "g5 = {}",
        g[5]
    );
}

#[test]
fn ar4_density_matches_frozen_value_at_zero() {
    let model = ArModel::<f64>::ar4_canonical();
    let f0 = model.density(0.0);
    assert!((f0 - 9.75342940331251).abs() < 1e-10, "f(0) = {f0}");
}

#[test]
fn dpss_matches_dense_jacobi_eigensolve() {
    let n = 64;
    let nw = 4.0;
    let k_count = 4;
    let tapers = dpss_tapers::<f64>(n, nw, k_count).unwrap();

    // independent dense tridiagonal assembled and solved by Jacobi rotations
    let w = nw / n as f64;
    let cos_w = (2.0 * std::f64::consts::PI * w).cos();
    let mut dense = vec![0.0; n * n];
    for t in 0..n {
        let c = (n as f64 - 1.0 - 2.0 * t as f64) / 2.0;
        dense[t * n + t] = c * c * cos_w;
        if t > 0 {
            let e = t as f64 * (n - t) as f64 / 2.0;
            dense[t * n + t - 1] = e;
            dense[(t - 1) * n + t] = e;
        }
    }
    let (_values, vectors) = jacobi_eigen(&dense, n);
    for (k, taper) in tapers.iter().enumerate() {
        let dot: f64 = taper
            .values()
            .iter()
            .zip(&vectors[k])
            .map(|(a, b)| a * b)
            .sum();
        assert!(dot.abs() > 1.0 - 1e-8, "taper {k}: |dot| = {}", dot.abs());
    }
}

#[test]
fn eigendecompose_bartlett_matches_jacobi() {
    // n = 8, L = 4, two disjoint segments: eigenvalues {1/2, 1/2, 0, ...}
    let base = rectangular_taper::<f64>(4).unwrap();
    let kernel =
        QuadKernel::welch(welch_segment_tapers(8, 4, 2, 0.0, &base).unwrap()).unwrap();
    let (d, _h) = kernel.eigendecompose().unwrap();
    assert_eq!(d.len(), 2);
    assert!((d[0] - 0.5).abs() < 1e-12);
    assert!((d[1] - 0.5).abs() < 1e-12);

    let (jd, _jv) = jacobi_eigen(&kernel.to_explicit().unwrap(), 8);
    assert!((jd[0] - 0.5).abs() < 1e-12);
    assert!((jd[1] - 0.5).abs() < 1e-12);
    for &v in &jd[2..] {
        assert!(v.abs() < 1e-12);
    }
}

#[test]
fn eigendecompose_welch_rank_is_segment_count() {
    let n = 64;
    let base = hamming_taper::<f64>(16).unwrap();
    let kernel =
        QuadKernel::welch(welch_segment_tapers(n, 16, 4, 0.0, &base).unwrap()).unwrap();
    let (d, h) = kernel.eigendecompose().unwrap();
    let significant = d.iter().filter(|v| v.abs() > 1e-8).count();
    assert_eq!(significant, 4);
    for v in &d[..4] {
        assert!((v - 0.25).abs() < 1e-10);
    }
    // reconstruction against the explicit matrix
    let q = kernel.to_explicit().unwrap();
    let mut recon = vec![0.0; n * n];
    for (dk, taper) in d.iter().zip(&h) {
        let hv = taper.values();
        for s in 0..n {
            for t in 0..n {
                recon[s * n + t] += dk * hv[s] * hv[t];
            }
        }
    }
    for (a, b) in recon.iter().zip(&q) {
        assert!((a - b).abs() < 1e-8);
    }
}

#[test]
fn eigendecompose_lag_window_reconstructs() {
    let n = 32;
    let kernel = QuadKernel::lag_window(
        modified_daniell_lag(n, 3).unwrap(),
        hamming_taper(n).unwrap(),
    )
    .unwrap();
    let (d, h) = kernel.eigendecompose().unwrap();
    let sum: f64 = d.iter().sum();
    assert!((sum - 1.0).abs() < 1e-8, "sum of weights {sum}");
    let q = kernel.to_explicit().unwrap();
    let mut recon = vec![0.0; n * n];
    for (dk, taper) in d.iter().zip(&h) {
        let hv = taper.values();
        for s in 0..n {
            for t in 0..n {
                recon[s * n + t] += dk * hv[s] * hv[t];
            }
        }
    }
    for (a, b) in recon.iter().zip(&q) {
        assert!((a - b).abs() < 1e-8);
    }
}

#[test]
fn structured_paths_match_explicit_matrix() {
    let n = 64;
    let model = ArModel::<f64>::ar4_canonical();
    let x = model.simulate(n, 97).unwrap();
    for (label, kernel) in four_test_kernels(n) {
        let q = kernel.to_explicit().unwrap();
        let explicit = QuadKernel::explicit(q, n).unwrap();

        // kernel ACF: structured equals diagonal sums to near machine
        let qa = kernel.kernel_acf();
        let qe = explicit.kernel_acf();
        for tau in 0..n {
            assert!(
                (qa[tau] - qe[tau]).abs() < 1e-12,
                "{label} acf tau={tau}: {} vs {}",
                qa[tau],
                qe[tau]
            );
        }

        // estimates
        let ea = kernel.estimate(&x).unwrap();
        let ee = explicit.estimate(&x).unwrap();
        let scale = ee.values().iter().cloned().fold(0.0f64, |a, b| a.max(b.abs()));
        for j in 0..n {
            assert!(
                (ea.values()[j] - ee.values()[j]).abs() <= 1e-8 * scale,
                "{label} estimate j={j}"
            );
        }

        // diagnostics
        let da = kernel.diagnostics();
        let de = explicit.diagnostics();
        assert!(
            (da.variance_factor() - de.variance_factor()).abs()
                <= 1e-8 * de.variance_factor().abs(),
            "{label} M"
        );
        assert!(
            (da.bandwidth() - de.bandwidth()).abs() <= 1e-8 * de.bandwidth(),
            "{label} B"
        );
        for &eta in &[0.0, 0.3, 1.2, 2.9] {
            let ra = da.correlation(eta);
            let re = de.correlation(eta);
            assert!((ra - re).abs() < 1e-8, "{label} R({eta})");
        }
    }
}

#[test]
fn overlapping_welch_matches_explicit_and_reconstructs() {
    // 50% overlap: segment tapers are no longer orthogonal, so the kernel
    // exercises the general paths end to end
    let n = 64;
    let base = hamming_taper::<f64>(16).unwrap();
    let kernel =
        QuadKernel::welch(welch_segment_tapers(n, 16, 7, 0.5, &base).unwrap()).unwrap();
    let model = ArModel::<f64>::ar4_canonical();
    let x = model.simulate(n, 71).unwrap();

    let explicit = QuadKernel::explicit(kernel.to_explicit().unwrap(), n).unwrap();
    let ea = kernel.estimate(&x).unwrap();
    let ee = explicit.estimate(&x).unwrap();
    let scale = ee.values().iter().cloned().fold(0.0f64, |a, b| a.max(b.abs()));
    for j in 0..n {
        assert!((ea.values()[j] - ee.values()[j]).abs() <= 1e-8 * scale, "j={j}");
    }
    let da = kernel.diagnostics();
    let de = explicit.diagnostics();
    assert!((da.bandwidth() - de.bandwidth()).abs() < 1e-10);

    // decomposition falls back to the dense path and still reconstructs;
    // the kernel stays rank <= M but the eigenvalues are no longer uniform
    let (d, h) = kernel.eigendecompose().unwrap();
    assert!(d.len() <= 7);
    assert!(d.iter().any(|&v| (v - 1.0 / 7.0).abs() > 1e-6));
    let q = kernel.to_explicit().unwrap();
    let mut recon = vec![0.0; n * n];
    for (dk, taper) in d.iter().zip(&h) {
        let hv = taper.values();
        for s in 0..n {
            for t in 0..n {
                recon[s * n + t] += dk * hv[s] * hv[t];
            }
        }
    }
    for (a, b) in recon.iter().zip(&q) {
        assert!((a - b).abs() < 1e-8);
    }
}

#[test]
fn correlation_identity_eigen_vs_element_form() {
    // R from the eigen form M sum_{j,k} d_j d_k |sum_t h_j h_k e^{-i eta t}|^2
    // equals the element form used by diagnostics.
    let n = 48;
    let kernel = QuadKernel::lag_window(
        modified_daniell_lag(n, 4).unwrap(),
        hamming_taper(n).unwrap(),
    )
    .unwrap();
    let diag = kernel.diagnostics();
    let (d, h) = kernel.eigendecompose().unwrap();
    let mut rng_state = 0x9e3779b97f4a7c15u64;
    let mut next = || {
        rng_state ^= rng_state << 13;
        rng_state ^= rng_state >> 7;
        rng_state ^= rng_state << 17;
        (rng_state as f64 / u64::MAX as f64) * 2.0 * std::f64::consts::PI
            - std::f64::consts::PI
    };
    for _ in 0..100 {
        let eta: f64 = next();
        let mut eigen_form = 0.0;
        for (dj, hj) in d.iter().zip(&h) {
            for (dk, hk) in d.iter().zip(&h) {
                let mut re = 0.0;
                let mut im = 0.0;
                for t in 0..n {
                    let g = hj.values()[t] * hk.values()[t];
                    re += g * (eta * t as f64).cos();
                    im -= g * (eta * t as f64).sin();
                }
                eigen_form += dj * dk * (re * re + im * im);
            }
        }
        eigen_form *= diag.variance_factor();
        let element_form = diag.correlation(eta);
        assert!(
            (eigen_form - element_form).abs() < 1e-10,
            "eta={eta}: {eigen_form} vs {element_form}"
        );
    }
}

#[test]
fn expectation_matches_quadrature_convolution() {
    // E[I](omega) = (1/2pi) Int f(w') H(omega - w') dw' by periodic Riemann
    // sum on a fine grid (spectrally accurate for these smooth factors).
    let n = 256;
    let model = ArModel::<f64>::ar4_canonical();
    let kernel = QuadKernel::multitaper_uniform(sinusoidal_tapers(n, 6).unwrap()).unwrap();
    let expect = kernel.expectation(&Spectrum::Ar(model.clone())).unwrap();

    let grid = 1 << 14;
    let dw = 2.0 * std::f64::consts::PI / grid as f64;
    let f_vals: Vec<f64> = (0..grid)
        .map(|g| model.density(-std::f64::consts::PI + dw * g as f64))
        .collect();
    let window_grid: Vec<f64> = {
        let pts: Vec<f64> = (0..grid)
            .map(|g| -std::f64::consts::PI + dw * g as f64)
            .collect();
        kernel.spectral_window(&pts)
    };
    let freqs: Vec<f64> = fourier_frequencies(n);
    for (j, &w) in freqs.iter().enumerate() {
        let mut acc = 0.0;
        for g in 0..grid {
            let wp = -std::f64::consts::PI + dw * g as f64;
            // H(w - wp) via index arithmetic on the same grid
            let diff = w - wp;
            let idx = ((diff + std::f64::consts::PI).rem_euclid(2.0 * std::f64::consts::PI)
                / dw)
                .round() as usize
                % grid;
            acc += f_vals[g] * window_grid[idx];
        }
        let oracle = acc * dw / (2.0 * std::f64::consts::PI);
        let rel = (expect[j] - oracle).abs() / oracle.abs();
        assert!(rel < 1e-6, "j={j}: {} vs {oracle}", expect[j]);
    }
}

#[test]
fn welch_bias_is_positive_in_the_high_frequency_trough() {
    let n = 512;
    let model = ArModel::<f64>::ar4_canonical();
    let base = hamming_taper::<f64>(64).unwrap();
    let kernel =
        QuadKernel::welch(welch_segment_tapers(n, 64, 8, 0.0, &base).unwrap()).unwrap();
    let bias = kernel.bias(&Spectrum::Ar(model)).unwrap();
    let freqs: Vec<f64> = fourier_frequencies(n);
    let trough: Vec<f64> = freqs
        .iter()
        .zip(&bias)
        .filter(|(&w, _)| (2.0..3.0).contains(&w))
        .map(|(_, &b)| b)
        .collect();
    assert!(!trough.is_empty());
    // leakage dominates the trough, pushing the expectation above the truth
    assert!(trough.iter().all(|&b| b > 0.0));
}

#[test]
fn coarser_kernels_have_larger_bias() {
    // mean |bias| decreases as the effective sample size grows
    let n = 512;
    let model = ArModel::<f64>::ar4_canonical();
    let spectrum = Spectrum::Ar(model);
    let mut means = Vec::new();
    for l in [32usize, 128, 512] {
        let m = n / l;
        let base = rectangular_taper::<f64>(l).unwrap();
        let kernel =
            QuadKernel::welch(welch_segment_tapers(n, l, m, 0.0, &base).unwrap()).unwrap();
        let zeta = kernel.diagnostics().ess();
        assert!((zeta - l as f64).abs() < 1e-6);
        let bias = kernel.bias(&spectrum).unwrap();
        let mean_abs =
            bias.iter().map(|b| b.abs()).sum::<f64>() / bias.len() as f64;
        means.push(mean_abs);
    }
    assert!(means[0] > means[1], "{means:?}");
    assert!(means[1] > means[2], "{means:?}");
}

#[test]
fn modified_daniell_lag_window_equals_bin_smoothing() {
    // On the Fourier grid the modified-Daniell lag window is exactly the
    // circular bin smoother applied to the same tapered periodogram.
    let n = 128;
    let m = 5;
    let model = ArModel::<f64>::ar4_canonical();
    let x = model.simulate(n, 31).unwrap();
    let taper = hamming_taper::<f64>(n).unwrap();
    let kernel =
        QuadKernel::lag_window(modified_daniell_lag(n, m).unwrap(), taper.clone()).unwrap();
    let smoothed = kernel.estimate(&x).unwrap();

    let periodogram = QuadKernel::periodogram(taper).estimate(&x).unwrap();
    let half = n / 2;
    let unshift = |j: usize| (j + n - half) % n; // grid index -> DFT bin
    let mut direct = vec![0.0; n];
    let g_interior = 1.0 / (2.0 * m as f64);
    let g_end = g_interior / 2.0;
    for j in 0..n {
        let bin = unshift(j) as isize;
        let mut acc = 0.0;
        for off in -(m as isize)..=(m as isize) {
            let weight = if off.unsigned_abs() == m { g_end } else { g_interior };
            let b = (bin + off).rem_euclid(n as isize) as usize;
            // periodogram value at DFT bin b lives at grid index
            let grid_idx = (b + half) % n;
            acc += weight * periodogram.values()[grid_idx];
        }
        direct[j] = acc;
    }
    let scale = direct.iter().cloned().fold(0.0f64, f64::max);
    for j in 0..n {
        assert!(
            (smoothed.values()[j] - direct[j]).abs() < 1e-10 * scale,
            "j={j}: {} vs {}",
            smoothed.values()[j],
            direct[j]
        );
    }
}

#[test]
fn cov_brute_separated_frequencies_decorrelate() {
    let n = 64;
    let kernel = QuadKernel::periodogram(rectangular_taper::<f64>(n).unwrap());
    let mut acvs = vec![0.0; n];
    acvs[0] = 1.0;
    let w1 = 2.0 * std::f64::consts::PI * 12.0 / n as f64;
    let var1 = kernel.cov_brute(&acvs, w1, w1).unwrap().re;
    for k in [16usize, 20, 24, 28] {
        let w2 = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
        let var2 = kernel.cov_brute(&acvs, w2, w2).unwrap().re;
        let cov = kernel.cov_brute(&acvs, w1, w2).unwrap().re;
        let cor = cov / (var1 * var2).sqrt();
        assert!(cor.abs() < 5.0 / n as f64, "k={k}: cor = {cor}");
    }
}

#[test]
fn cov_brute_matches_first_term_quadrature_for_smooth_spectrum() {
    // Single-taper kernel on an AR(1): the exact Gaussian covariance equals
    // the first modulus term plus a reflection remainder that stays O(1/n)
    // away from 0 and +-pi.
    let n = 128;
    let model = ArModel::new(vec![0.5], 1.0).unwrap();
    let acvs = model.acvs(n - 1).unwrap();
    let taper = hamming_taper::<f64>(n).unwrap();
    let kernel = QuadKernel::periodogram(taper.clone());
    let w = std::f64::consts::FRAC_PI_2;

    let grid = 1 << 14;
    let dw = 2.0 * std::f64::consts::PI / grid as f64;
    let h = taper.values();
    let transfer = |omega: f64| -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (t, &ht) in h.iter().enumerate() {
            let ph = -omega * t as f64;
            re += ht * ph.cos();
            im += ht * ph.sin();
        }
        (re, im)
    };
    for dj in [0usize, 1, 2, 4] {
        let eta = 2.0 * std::f64::consts::PI * dj as f64 / n as f64;
        // first term: |(1/2pi) Int H*(w+eta-w') H(w-w') f(w') dw'|^2
        let mut acc_re = 0.0;
        let mut acc_im = 0.0;
        for g in 0..grid {
            let wp = -std::f64::consts::PI + dw * g as f64;
            let f = model.density(wp);
            let (ar, ai) = transfer(w + eta - wp);
            let (br, bi) = transfer(w - wp);
            // conj(A) * B
            acc_re += (ar * br + ai * bi) * f;
            acc_im += (ar * bi - ai * br) * f;
        }
        acc_re *= dw / (2.0 * std::f64::consts::PI);
        acc_im *= dw / (2.0 * std::f64::consts::PI);
        let first_term = acc_re * acc_re + acc_im * acc_im;
        let exact = kernel.cov_brute(&acvs, w, w + eta).unwrap().re;
        let scale = model.density(w) * model.density(w);
        assert!(
            (exact - first_term).abs() < 5.0 * scale / n as f64,
            "dj={dj}: exact {exact} vs first term {first_term}"
        );
    }
}

#[test]
fn estimates_are_symmetric_across_frequency_sign() {
    let n = 64;
    let model = ArModel::<f64>::ar4_canonical();
    let x = model.simulate(n, 5).unwrap();
    for (label, kernel) in four_test_kernels(n) {
        let est = kernel.estimate(&x).unwrap();
        let scale = est.values().iter().cloned().fold(0.0f64, |a, b| a.max(b.abs()));
        for j in 0..n {
            let k = quadspec::fft::negated_index(j, n);
            assert!(
                (est.values()[j] - est.values()[k]).abs() <= 1e-10 * scale,
                "{label} j={j}"
            );
        }
        // the positive semi-definite families never go negative
        if matches!(label, "multitaper" | "welch") {
            assert!(
                est.values().iter().all(|&v| v >= -1e-12 * scale),
                "{label} produced a negative estimate"
            );
        }
    }
}

#[test]
fn flat_top_negative_values_flow_through_the_pipeline() {
    let n = 256;
    let model = ArModel::<f64>::ar4_canonical();
    let x = model.simulate(n, 11).unwrap();
    let kernel = QuadKernel::lag_window(
        flat_top_lag(n, 0.05, 2.0, FlatTopShape::Trapezoid).unwrap(),
        rectangular_taper(n).unwrap(),
    )
    .unwrap();

    // the spectral window takes negative values somewhere
    let grid: Vec<f64> = (0..4096)
        .map(|i| -std::f64::consts::PI + 2.0 * std::f64::consts::PI * i as f64 / 4096.0)
        .collect();
    let window = kernel.spectral_window(&grid);
    assert!(window.iter().any(|&v| v < 0.0));

    // the sharp-peaked process leaks through the negative sidelobes, driving
    // trough estimates negative, and the debias machinery accepts them
    let mut any_negative = false;
    for seed in 0..20 {
        let xp = model.simulate(n, seed).unwrap();
        let est = kernel.estimate(&xp).unwrap();
        any_negative |= est.values().iter().any(|&v| v < 0.0);
    }
    assert!(any_negative, "flat-top estimates never went negative");

    let est = kernel.estimate(&x).unwrap();
    let diag = kernel.diagnostics();
    let fam = make_basis(n, 16, 1, BasisLayout::Uniform).unwrap();
    let bb = biased_basis(&diag, &fam).unwrap();
    let w = correlation_matrix(&diag);
    let fit = debias_fit(&est, &bb, &w, false).unwrap();
    assert!(fit.fitted().iter().all(|v| v.is_finite()));
}

#[test]
fn ensemble_mean_and_acvs_match_theory_within_four_se() {
    let n = 128;
    let members = 500;
    let model = ArModel::<f64>::ar4_canonical();
    let gamma = model.acvs(10).unwrap();

    let mut samples: Vec<Vec<f64>> = Vec::with_capacity(members);
    for seed in 0..members {
        samples.push(model.simulate(n, seed as u64).unwrap().into_values());
    }

    // ensemble mean at each t within 4 SE of zero
    let mut worst = 0.0f64;
    for t in 0..n {
        let col: Vec<f64> = samples.iter().map(|s| s[t]).collect();
        let (mean, se) = mean_and_se(&col);
        worst = worst.max((mean / se).abs());
    }
    assert!(worst < 4.0, "worst mean z-score {worst}");

    // empirical lag-tau autocovariance within 4 SE of the exact value
    for tau in 0..=10usize {
        let per_member: Vec<f64> = samples
            .iter()
            .map(|s| {
                (0..n - tau).map(|t| s[t] * s[t + tau]).sum::<f64>() / (n - tau) as f64
            })
            .collect();
        let (mean, se) = mean_and_se(&per_member);
        assert!(
            (mean - gamma[tau]).abs() < 4.0 * se,
            "tau={tau}: {mean} vs {} (se {se})",
            gamma[tau]
        );
    }
}

#[test]
fn white_noise_single_constant_basis_recovers_variance() {
    let n = 256;
    let members = 300;
    let model = ArModel::<f64>::white(1.0).unwrap();
    let kernel = QuadKernel::multitaper_uniform(sinusoidal_tapers(n, 8).unwrap()).unwrap();
    let diag = kernel.diagnostics();
    let fam = make_basis(n, 1, 0, BasisLayout::Uniform).unwrap();
    let bb = biased_basis(&diag, &fam).unwrap();
    let w = correlation_matrix(&diag);
    let mut coeffs = Vec::with_capacity(members);
    for seed in 0..members {
        let x = model.simulate(n, 400_000 + seed as u64).unwrap();
        let est = kernel.estimate(&x).unwrap();
        let fit = debias_fit(&est, &bb, &w, false).unwrap();
        coeffs.push(fit.coefficients()[0]);
    }
    let (mean, se) = mean_and_se(&coeffs);
    assert!(
        (mean - 1.0).abs() < 3.0 * se,
        "a0 mean {mean} (se {se})"
    );
}
