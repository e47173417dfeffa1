//! Dense and tridiagonal linear algebra used by the kernel and debias paths.
//!
//! Everything here is plain textbook numerics: Householder tridiagonalization
//! with implicit-shift QL for full symmetric eigendecompositions, Sturm-count
//! bisection plus inverse iteration for the top eigenpairs of a symmetric
//! tridiagonal matrix, Cholesky for the weighted least-squares normal
//! equations, and a partially pivoted LU for small systems.

use crate::error::{Error, Result};
use crate::{from_usize, lit, Scalar};

/// Column-major storage is never needed here; matrices are flat row-major.
#[derive(Debug, Clone)]
pub struct DenseEigen<T> {
    /// Eigenvalues in ascending order.
    pub values: Vec<T>,
    /// Eigenvectors, row-major `n x n`; column `k` pairs with `values[k]`.
    pub vectors: Vec<T>,
    pub n: usize,
}

impl<T: Scalar> DenseEigen<T> {
    /// Eigenvector for eigenvalue index `k`, copied out.
    pub fn vector(&self, k: usize) -> Vec<T> {
        (0..self.n).map(|i| self.vectors[i * self.n + k]).collect()
    }
}

/// Full eigendecomposition of a symmetric matrix (row-major `n x n`).
pub fn symmetric_eigen<T: Scalar>(a: &[T], n: usize) -> Result<DenseEigen<T>> {
    assert_eq!(a.len(), n * n);
    let mut z = a.to_vec();
    let mut d = vec![T::zero(); n];
    let mut e = vec![T::zero(); n];
    tred2(&mut z, n, &mut d, &mut e);
    tql2(&mut z, n, &mut d, &mut e)?;
    // Sort ascending; tql2 leaves values nearly sorted but not guaranteed.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| d[i].partial_cmp(&d[j]).expect("finite eigenvalues"));
    let values: Vec<T> = order.iter().map(|&i| d[i]).collect();
    let mut vectors = vec![T::zero(); n * n];
    for (new_col, &old_col) in order.iter().enumerate() {
        for row in 0..n {
            vectors[row * n + new_col] = z[row * n + old_col];
        }
    }
    Ok(DenseEigen { values, vectors, n })
}

/// Householder reduction to tridiagonal form; `z` is replaced by the
/// accumulated orthogonal transform. Classic tred2.
fn tred2<T: Scalar>(z: &mut [T], n: usize, d: &mut [T], e: &mut [T]) {
    for j in 0..n {
        d[j] = z[(n - 1) * n + j];
    }

    for i in (1..n).rev() {
        let mut scale = T::zero();
        let mut h = T::zero();
        for item in d.iter().take(i) {
            scale += item.abs();
        }
        if scale == T::zero() {
            e[i] = d[i - 1];
            for j in 0..i {
                d[j] = z[(i - 1) * n + j];
                z[i * n + j] = T::zero();
                z[j * n + i] = T::zero();
            }
        } else {
            for item in d.iter_mut().take(i) {
                *item /= scale;
                h += *item * *item;
            }
            let mut f = d[i - 1];
            let mut g = h.sqrt();
            if f > T::zero() {
                g = -g;
            }
            e[i] = scale * g;
            h -= f * g;
            d[i - 1] = f - g;
            for item in e.iter_mut().take(i) {
                *item = T::zero();
            }

            for j in 0..i {
                f = d[j];
                z[j * n + i] = f;
                g = e[j] + z[j * n + j] * f;
                for k in (j + 1)..i {
                    g += z[k * n + j] * d[k];
                    e[k] += z[k * n + j] * f;
                }
                e[j] = g;
            }
            f = T::zero();
            for j in 0..i {
                e[j] /= h;
                f += e[j] * d[j];
            }
            let hh = f / (h + h);
            for j in 0..i {
                e[j] -= hh * d[j];
            }
            for j in 0..i {
                f = d[j];
                g = e[j];
                for k in j..i {
                    z[k * n + j] -= f * e[k] + g * d[k];
                }
                d[j] = z[(i - 1) * n + j];
                z[i * n + j] = T::zero();
            }
        }
        d[i] = h;
    }

    // Accumulate transformations.
    for i in 0..n - 1 {
        z[(n - 1) * n + i] = z[i * n + i];
        z[i * n + i] = T::one();
        let h = d[i + 1];
        if h != T::zero() {
            for k in 0..=i {
                d[k] = z[k * n + i + 1] / h;
            }
            for j in 0..=i {
                let mut g = T::zero();
                for k in 0..=i {
                    g += z[k * n + i + 1] * z[k * n + j];
                }
                for k in 0..=i {
                    z[k * n + j] -= g * d[k];
                }
            }
        }
        for k in 0..=i {
            z[k * n + i + 1] = T::zero();
        }
    }
    for j in 0..n {
        d[j] = z[(n - 1) * n + j];
        z[(n - 1) * n + j] = T::zero();
    }
    z[(n - 1) * n + (n - 1)] = T::one();
    e[0] = T::zero();
}

/// Implicit-shift QL on a tridiagonal matrix, accumulating the transforms
/// into `z`. Classic tql2.
fn tql2<T: Scalar>(z: &mut [T], n: usize, d: &mut [T], e: &mut [T]) -> Result<()> {
    if n == 0 {
        return Ok(());
    }
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = T::zero();

    let mut f = T::zero();
    let mut tst1 = T::zero();
    let eps = T::epsilon();
    let two = lit::<T>(2.0);
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n {
            if e[m].abs() <= eps * tst1 {
                break;
            }
            m += 1;
        }
        if m == n {
            m = n - 1;
        }

        if m > l {
            let mut iter = 0usize;
            loop {
                iter += 1;
                if iter > 60 {
                    return Err(Error::Numerical(
                        "tridiagonal QL failed to converge".into(),
                    ));
                }

                // Implicit shift.
                let g = d[l];
                let mut p = (d[l + 1] - g) / (two * e[l]);
                let mut r = p.hypot(T::one());
                if p < T::zero() {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for item in d.iter_mut().take(n).skip(l + 2) {
                    *item -= h;
                }
                f += h;

                // Implicit QL sweep.
                p = d[m];
                let mut c = T::one();
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = T::zero();
                let mut s2 = T::zero();
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    let g2 = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g2;
                    d[i + 1] = h + s * (c * g2 + s * d[i]);

                    for k in 0..n {
                        h = z[k * n + i + 1];
                        z[k * n + i + 1] = s * z[k * n + i] + c * h;
                        z[k * n + i] = c * z[k * n + i] - s * h;
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;

                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = T::zero();
    }
    Ok(())
}

/// Symmetric tridiagonal matrix given by its diagonal and subdiagonal.
#[derive(Debug, Clone)]
pub struct Tridiagonal<T> {
    pub diag: Vec<T>,
    pub offdiag: Vec<T>, // length n-1
}

impl<T: Scalar> Tridiagonal<T> {
    pub fn order(&self) -> usize {
        self.diag.len()
    }

    /// Number of eigenvalues strictly below `x` (Sturm count via LDL^T).
    fn count_below(&self, x: T) -> usize {
        let n = self.order();
        let tiny = T::min_positive_value() / T::epsilon();
        let mut count = 0usize;
        let mut q = self.diag[0] - x;
        if q < T::zero() {
            count += 1;
        }
        for i in 1..n {
            let denom = if q.abs() < tiny {
                if q < T::zero() {
                    -tiny
                } else {
                    tiny
                }
            } else {
                q
            };
            q = self.diag[i] - x - self.offdiag[i - 1] * self.offdiag[i - 1] / denom;
            if q < T::zero() {
                count += 1;
            }
        }
        count
    }

    fn gershgorin(&self) -> (T, T) {
        let n = self.order();
        let mut lo = T::infinity();
        let mut hi = T::neg_infinity();
        for i in 0..n {
            let mut r = T::zero();
            if i > 0 {
                r += self.offdiag[i - 1].abs();
            }
            if i + 1 < n {
                r += self.offdiag[i].abs();
            }
            lo = lo.min(self.diag[i] - r);
            hi = hi.max(self.diag[i] + r);
        }
        (lo, hi)
    }

    /// Eigenvalue of ascending index `idx` (0 = smallest) by bisection.
    pub fn eigenvalue(&self, idx: usize) -> T {
        let (mut lo, mut hi) = self.gershgorin();
        let span = (hi - lo).abs().max(T::one());
        let tol = span * T::epsilon() * lit::<T>(4.0);
        while hi - lo > tol {
            let mid = lo + (hi - lo) / lit::<T>(2.0);
            if self.count_below(mid) > idx {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        lo + (hi - lo) / lit::<T>(2.0)
    }

    /// Eigenvector for an isolated eigenvalue estimate, by inverse iteration
    /// with Gram-Schmidt against `prior` vectors.
    pub fn eigenvector(&self, lambda: T, prior: &[Vec<T>]) -> Result<Vec<T>> {
        let n = self.order();
        // Deterministic, non-degenerate start.
        let mut v: Vec<T> = (0..n)
            .map(|t| {
                let x = lit::<T>(0.5) + from_usize::<T>((t * 2654435761) % 1024) / lit::<T>(1024.0)
                    - lit::<T>(0.5);
                x + lit::<T>(0.25)
            })
            .collect();
        normalize(&mut v);
        for _ in 0..4 {
            let mut w = self.solve_shifted(lambda, &v)?;
            for p in prior {
                let dot = dot(&w, p);
                for (wi, pi) in w.iter_mut().zip(p.iter()) {
                    *wi -= dot * *pi;
                }
            }
            normalize(&mut w);
            v = w;
        }
        Ok(v)
    }

    /// Solve `(T - lambda I) x = b` by LU with partial pivoting (two
    /// superdiagonals of fill-in).
    fn solve_shifted(&self, lambda: T, b: &[T]) -> Result<Vec<T>> {
        let n = self.order();
        let mut dl: Vec<T> = self.offdiag.clone();
        let mut d: Vec<T> = self.diag.iter().map(|&x| x - lambda).collect();
        let mut du: Vec<T> = self.offdiag.clone();
        let mut du2 = vec![T::zero(); n.saturating_sub(2)];
        let mut swapped = vec![false; n.saturating_sub(1)];
        let tiny = T::epsilon() * T::epsilon();

        for i in 0..n.saturating_sub(1) {
            if d[i].abs() >= dl[i].abs() {
                if d[i].abs() < tiny {
                    d[i] = if d[i] >= T::zero() { tiny } else { -tiny };
                }
                let fact = dl[i] / d[i];
                dl[i] = fact;
                d[i + 1] -= fact * du[i];
                if i + 2 < n {
                    du2[i] = T::zero();
                }
            } else {
                let fact = d[i] / dl[i];
                d[i] = dl[i];
                dl[i] = fact;
                let temp = d[i + 1];
                d[i + 1] = du[i] - fact * temp;
                du[i] = temp;
                if i + 2 < n {
                    du2[i] = du[i + 1];
                    du[i + 1] = -fact * du[i + 1];
                }
                swapped[i] = true;
            }
        }
        if d[n - 1].abs() < tiny {
            d[n - 1] = if d[n - 1] >= T::zero() { tiny } else { -tiny };
        }

        let mut x = b.to_vec();
        for i in 0..n.saturating_sub(1) {
            if swapped[i] {
                x.swap(i, i + 1);
            }
            let xi = x[i];
            x[i + 1] -= dl[i] * xi;
        }
        x[n - 1] /= d[n - 1];
        if n >= 2 {
            x[n - 2] = (x[n - 2] - du[n - 2] * x[n - 1]) / d[n - 2];
        }
        for i in (0..n.saturating_sub(2)).rev() {
            x[i] = (x[i] - du[i] * x[i + 1] - du2[i] * x[i + 2]) / d[i];
        }
        for v in &x {
            if !v.is_finite() {
                return Err(Error::Numerical(
                    "inverse iteration produced a non-finite vector".into(),
                ));
            }
        }
        Ok(x)
    }
}

fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b.iter()).map(|(&x, &y)| x * y).sum()
}

fn normalize<T: Scalar>(v: &mut [T]) {
    let norm = dot(v, v).sqrt();
    if norm > T::zero() {
        for x in v.iter_mut() {
            *x /= norm;
        }
    }
}

/// Cholesky factorization and solve for a symmetric positive-definite
/// system; returns the solution together with the (min, max) factor pivots
/// for a cheap condition estimate.
pub struct CholeskySolve<T> {
    pub solution: Vec<T>,
    pub pivot_min: T,
    pub pivot_max: T,
}

pub fn cholesky_solve<T: Scalar>(a: &[T], n: usize, b: &[T]) -> Result<CholeskySolve<T>> {
    assert_eq!(a.len(), n * n);
    assert_eq!(b.len(), n);
    let mut l = vec![T::zero(); n * n];
    let mut pivot_min = T::infinity();
    let mut pivot_max = T::zero();
    for i in 0..n {
        for j in 0..=i {
            let mut sum = a[i * n + j];
            for k in 0..j {
                sum -= l[i * n + k] * l[j * n + k];
            }
            if i == j {
                if sum <= T::zero() || !sum.is_finite() {
                    return Err(Error::Numerical(format!(
                        "normal matrix not positive definite at pivot {i} (value {:?})",
                        sum.to_f64()
                    )));
                }
                let p = sum.sqrt();
                l[i * n + j] = p;
                pivot_min = pivot_min.min(p);
                pivot_max = pivot_max.max(p);
            } else {
                l[i * n + j] = sum / l[j * n + j];
            }
        }
    }
    // forward: L y = b
    let mut y = b.to_vec();
    for i in 0..n {
        let mut sum = y[i];
        for k in 0..i {
            sum -= l[i * n + k] * y[k];
        }
        y[i] = sum / l[i * n + i];
    }
    // backward: L^T x = y
    let mut x = y;
    for i in (0..n).rev() {
        let mut sum = x[i];
        for k in (i + 1)..n {
            sum -= l[k * n + i] * x[k];
        }
        x[i] = sum / l[i * n + i];
    }
    Ok(CholeskySolve {
        solution: x,
        pivot_min,
        pivot_max,
    })
}

/// Solve a small dense system by LU with partial pivoting.
pub fn lu_solve<T: Scalar>(a: &[T], n: usize, b: &[T]) -> Result<Vec<T>> {
    assert_eq!(a.len(), n * n);
    assert_eq!(b.len(), n);
    let mut m = a.to_vec();
    let mut x = b.to_vec();
    for col in 0..n {
        let mut piv = col;
        for row in (col + 1)..n {
            if m[row * n + col].abs() > m[piv * n + col].abs() {
                piv = row;
            }
        }
        if m[piv * n + col].abs() < T::epsilon() * T::epsilon() {
            return Err(Error::Numerical(format!("singular system at column {col}")));
        }
        if piv != col {
            for k in 0..n {
                m.swap(col * n + k, piv * n + k);
            }
            x.swap(col, piv);
        }
        let pivot = m[col * n + col];
        for row in (col + 1)..n {
            let f = m[row * n + col] / pivot;
            if f == T::zero() {
                continue;
            }
            m[row * n + col] = T::zero();
            for k in (col + 1)..n {
                let v = m[col * n + k];
                m[row * n + k] -= f * v;
            }
            x[row] = x[row] - f * x[col];
        }
    }
    for row in (0..n).rev() {
        let mut sum = x[row];
        for k in (row + 1)..n {
            sum -= m[row * n + k] * x[k];
        }
        x[row] = sum / m[row * n + row];
    }
    Ok(x)
}
