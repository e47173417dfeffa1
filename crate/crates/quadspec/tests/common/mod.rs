//! Shared oracles for the integration suites: a dense Jacobi eigensolver, the
//! brute-force quadratic form, and a panel-Gauss convolution quadrature.
//! These deliberately avoid the library's computational paths.

#![allow(dead_code)]

use quadspec::debias::BasisFamily;

/// Cyclic Jacobi eigendecomposition of a symmetric matrix (row-major).
/// Returns eigenvalues in descending order with matching eigenvectors
/// (each a row of the returned matrix).
pub fn jacobi_eigen(a_in: &[f64], n: usize) -> (Vec<f64>, Vec<Vec<f64>>) {
    let mut a = a_in.to_vec();
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    let fro: f64 = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    for _sweep in 0..100 {
        let mut off = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                off += a[p * n + q] * a[p * n + q];
            }
        }
        if off.sqrt() <= 1e-14 * fro.max(1e-300) {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq.abs() <= 1e-300 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[j * n + j].partial_cmp(&a[i * n + i]).unwrap());
    let values: Vec<f64> = order.iter().map(|&k| a[k * n + k]).collect();
    let vectors: Vec<Vec<f64>> = order
        .iter()
        .map(|&k| (0..n).map(|r| v[r * n + k]).collect())
        .collect();
    (values, vectors)
}

/// The literal quadratic form `Z^H Q Z` with `Z_t = x_t e^{i omega t}`,
/// evaluated by the triple loop.
pub fn brute_quadratic_form(q: &[f64], n: usize, x: &[f64], omega: f64) -> f64 {
    let mut acc_re = 0.0;
    let mut acc_im = 0.0;
    for s in 0..n {
        for t in 0..n {
            let phase = -omega * (s as f64 - t as f64);
            let w = q[s * n + t] * x[s] * x[t];
            acc_re += w * phase.cos();
            acc_im += w * phase.sin();
        }
    }
    assert!(
        acc_im.abs() <= 1e-9 * acc_re.abs().max(1.0),
        "quadratic form not real: {acc_im}"
    );
    acc_re
}

/// Dense tabulation of the spectral window
/// `H(x) = q(0) + 2 sum_{tau>=1} q(tau) cos(tau x)` on a uniform grid over
/// `[-pi, pi)`, by direct cosine recurrence per grid point.
pub struct WindowTable {
    pub values: Vec<f64>,
}

impl WindowTable {
    pub fn build(kernel_acf: &[f64], grid: usize) -> Self {
        let mut values = Vec::with_capacity(grid);
        for g in 0..grid {
            let x = -std::f64::consts::PI + 2.0 * std::f64::consts::PI * g as f64 / grid as f64;
            let c = x.cos();
            let mut acc = kernel_acf[0];
            let mut prev = 1.0;
            let mut cur = c;
            for &q in &kernel_acf[1..] {
                acc += 2.0 * q * cur;
                let next = 2.0 * c * cur - prev;
                prev = cur;
                cur = next;
            }
            values.push(acc);
        }
        WindowTable { values }
    }

    /// Catmull-Rom cubic interpolation with periodic wrap.
    pub fn eval(&self, x: f64) -> f64 {
        let g = self.values.len() as f64;
        let two_pi = 2.0 * std::f64::consts::PI;
        let pos = (x + std::f64::consts::PI).rem_euclid(two_pi) / two_pi * g;
        let i1 = pos.floor() as usize % self.values.len();
        let t = pos - pos.floor();
        let n = self.values.len();
        let p0 = self.values[(i1 + n - 1) % n];
        let p1 = self.values[i1];
        let p2 = self.values[(i1 + 1) % n];
        let p3 = self.values[(i1 + 2) % n];
        let a = -0.5 * p0 + 1.5 * p1 - 1.5 * p2 + 0.5 * p3;
        let b = p0 - 2.5 * p1 + 2.0 * p2 - 0.5 * p3;
        let c = -0.5 * p0 + 0.5 * p2;
        ((a * t + b) * t + c) * t + p1
    }
}

// 10-point Gauss-Legendre nodes/weights on [-1, 1].
const GL_NODES: [f64; 10] = [
    -0.9739065285171717,
    -0.8650633666889845,
    -0.6794095682990244,
    -0.4333953941292472,
    -0.1488743389816312,
    0.1488743389816312,
    0.4333953941292472,
    0.6794095682990244,
    0.8650633666889845,
    0.9739065285171717,
];
const GL_WEIGHTS: [f64; 10] = [
    0.0666713443086881,
    0.1494513491505806,
    0.219_086_362_515_982,
    0.2692667193099963,
    0.2955242247147529,
    0.2955242247147529,
    0.2692667193099963,
    0.219_086_362_515_982,
    0.1494513491505806,
    0.0666713443086881,
];

/// Quadrature oracle for the window-convolved basis:
/// `(b_s * H)(omega) = (1/2pi) Int b_s(w') H(omega - w') dw'`,
/// integrating over the basis support with composite Gauss panels between the
/// B-spline knots, one panel per fastest window oscillation.
pub fn convolved_basis_oracle(
    family: &BasisFamily<f64>,
    s: usize,
    window: &WindowTable,
    kernel_n: usize,
    omega: f64,
) -> f64 {
    let delta = family.width();
    let center = family.centers()[s];
    let order = family.order();
    let half_support = (order as f64 + 1.0) * delta / 2.0;
    let period = 2.0 * std::f64::consts::PI / kernel_n as f64;
    let mut total = 0.0;
    let knots = order + 2; // knots at center - half_support + k * delta
    for k in 0..(knots - 1) {
        let lo = center - half_support + k as f64 * delta;
        let hi = lo + delta;
        let panels = ((hi - lo) / period).ceil() as usize;
        let step = (hi - lo) / panels as f64;
        for p in 0..panels {
            let a = lo + p as f64 * step;
            let mid = a + 0.5 * step;
            let half = 0.5 * step;
            for (node, weight) in GL_NODES.iter().zip(GL_WEIGHTS.iter()) {
                let wp = mid + half * node;
                total += weight * half * family.evaluate(s, wp) * window.eval(omega - wp);
            }
        }
    }
    total / (2.0 * std::f64::consts::PI)
}

/// Sample mean and standard error of a column of ensemble values.
pub fn mean_and_se(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}
