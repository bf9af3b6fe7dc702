//! Quadrature plumbing: double-exponential rules for singular/half-line
//! integrals and Gauss rules (Legendre, Jacobi) built by Golub–Welsch.

use crate::error::CknError;
use nalgebra::{DMatrix, SymmetricEigen};

/// Result of an adaptive quadrature: value plus an error estimate from the
/// last level refinement.
#[derive(Debug, Clone, Copy)]
pub struct QuadResult {
    pub value: f64,
    pub error: f64,
}

const DE_MAX_LEVEL: u32 = 12;
const DE_TMAX: f64 = 6.5;

/// Tanh-sinh quadrature on a finite interval `(a, b)`.
///
/// Handles integrable endpoint singularities; `f` is never evaluated at the
/// endpoints. `rel_tol` is relative to the accumulated integral (with an
/// absolute floor to cope with zero integrals).
pub fn tanh_sinh<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    b: f64,
    rel_tol: f64,
) -> Result<QuadResult, CknError> {
    let len = b - a;
    let g = |t: f64| {
        // x = a + (b-a) s with s = logistic(pi sinh t); the logistic form keeps
        // full precision in the distance to either endpoint.
        let u = std::f64::consts::PI * t.sinh();
        let e = (-u.abs()).exp();
        let s_small = e / (1.0 + e); // distance fraction to the nearer endpoint
        let ds = e / (1.0 + e).powi(2); // s (1 - s)
        let x = if u >= 0.0 { b - len * s_small } else { a + len * s_small };
        let w = len * std::f64::consts::PI * t.cosh() * ds;
        (x, w)
    };
    let mut h = 1.0;
    let (x0, w0) = g(0.0);
    let mut total = w0 * f(x0);
    // level-0 trapezoid: integer abscissae
    let mut k = 1u64;
    while (k as f64) <= DE_TMAX {
        for s in [h * k as f64, -h * k as f64] {
            let (x, w) = g(s);
            if w > 0.0 && x > a && x < b {
                let fx = f(x);
                if fx.is_finite() {
                    total += w * fx;
                }
            }
        }
        k += 1;
    }
    let mut err = f64::INFINITY;
    for level in 1..=DE_MAX_LEVEL {
        h *= 0.5;
        let old_estimate = total * 2.0 * h;
        let mut add = 0.0;
        // At each level add the odd multiples of the new h.
        let mut k = 1u64;
        loop {
            let t = h * k as f64;
            if t > DE_TMAX {
                break;
            }
            for s in [t, -t] {
                let (x, w) = g(s);
                if w > 0.0 && x > a && x < b {
                    let fx = f(x);
                    if fx.is_finite() {
                        add += w * fx;
                    }
                }
            }
            k += 2;
        }
        total += add;
        // Trapezoid at step h equals h * (sum of all nodes up to spacing h).
        let new_estimate = total * h;
        err = (new_estimate - old_estimate).abs();
        let scale = new_estimate.abs().max(1e-300);
        if level >= 3 && err <= rel_tol * scale {
            return Ok(QuadResult { value: new_estimate, error: err });
        }
    }
    let value = total * h_at_level(DE_MAX_LEVEL);
    if err <= rel_tol.max(1e-8) * value.abs().max(1e-300) {
        Ok(QuadResult { value, error: err })
    } else {
        Err(CknError::QuadratureBudget {
            what: "tanh_sinh",
            estimate: value,
            error: err,
        })
    }
}

fn h_at_level(level: u32) -> f64 {
    1.0 / (1u64 << level) as f64
}

/// Exp-sinh quadrature on `(0, inf)` for integrands with an integrable
/// singularity at zero and (at least) exponential or algebraic decay at
/// infinity.
pub fn exp_sinh<F: FnMut(f64) -> f64>(mut f: F, rel_tol: f64) -> Result<QuadResult, CknError> {
    let g = |t: f64| {
        let u = std::f64::consts::FRAC_PI_2 * t.sinh();
        let x = u.exp();
        (x, x * std::f64::consts::FRAC_PI_2 * t.cosh())
    };
    let mut h = 1.0;
    let (x0, w0) = g(0.0);
    let mut total = w0 * f(x0);
    let mut k = 1u64;
    while (k as f64) <= DE_TMAX {
        for s in [h * k as f64, -h * k as f64] {
            let (x, w) = g(s);
            if w.is_finite() && x.is_finite() && x > 0.0 {
                let fx = f(x);
                if fx.is_finite() {
                    total += w * fx;
                }
            }
        }
        k += 1;
    }
    let mut err = f64::INFINITY;
    for level in 1..=DE_MAX_LEVEL {
        h *= 0.5;
        let old_estimate = total * 2.0 * h;
        let mut add = 0.0;
        let mut k = 1u64;
        loop {
            let t = h * k as f64;
            if t > DE_TMAX {
                break;
            }
            for s in [t, -t] {
                let (x, w) = g(s);
                if w.is_finite() && x.is_finite() && x > 0.0 {
                    let fx = f(x);
                    if fx.is_finite() {
                        add += w * fx;
                    }
                }
            }
            k += 2;
        }
        total += add;
        let new_estimate = total * h;
        err = (new_estimate - old_estimate).abs();
        let scale = new_estimate.abs().max(1e-300);
        if level >= 3 && err <= rel_tol * scale {
            return Ok(QuadResult { value: new_estimate, error: err });
        }
    }
    let value = total * h_at_level(DE_MAX_LEVEL);
    if err <= rel_tol.max(1e-8) * value.abs().max(1e-300) {
        Ok(QuadResult { value, error: err })
    } else {
        Err(CknError::QuadratureBudget {
            what: "exp_sinh",
            estimate: value,
            error: err,
        })
    }
}

/// Nodes and weights of an `n`-point Gauss rule from a symmetric tridiagonal
/// Jacobi matrix (Golub–Welsch). `mu0` is the total mass of the weight.
fn golub_welsch(diag: &[f64], offdiag: &[f64], mu0: f64) -> Result<(Vec<f64>, Vec<f64>), CknError> {
    let n = diag.len();
    let mut m = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        m[(i, i)] = diag[i];
        if i + 1 < n {
            m[(i, i + 1)] = offdiag[i];
            m[(i + 1, i)] = offdiag[i];
        }
    }
    let eig = SymmetricEigen::new(m);
    let mut pairs: Vec<(f64, f64)> = (0..n)
        .map(|j| {
            let node = eig.eigenvalues[j];
            let first = eig.eigenvectors[(0, j)];
            (node, mu0 * first * first)
        })
        .collect();
    pairs.sort_by(|p, q| p.0.total_cmp(&q.0));
    Ok(pairs.into_iter().unzip())
}

/// `n`-point Gauss–Legendre rule on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> Result<(Vec<f64>, Vec<f64>), CknError> {
    if n == 0 {
        return Err(CknError::Grid("gauss_legendre: n >= 1 required".into()));
    }
    let diag = vec![0.0; n];
    let off: Vec<f64> = (1..n)
        .map(|k| {
            let k = k as f64;
            k / ((2.0 * k - 1.0) * (2.0 * k + 1.0)).sqrt()
        })
        .collect();
    golub_welsch(&diag, &off, 2.0)
}

/// `n`-point Gauss–Jacobi rule on `[-1, 1]` for the weight
/// `(1-x)^alpha (1+x)^beta`, `alpha, beta > -1`.
pub fn gauss_jacobi(n: usize, alpha: f64, beta: f64) -> Result<(Vec<f64>, Vec<f64>), CknError> {
    if n == 0 || alpha <= -1.0 || beta <= -1.0 {
        return Err(CknError::Grid(format!(
            "gauss_jacobi: need n >= 1 and alpha, beta > -1 (n={n}, alpha={alpha}, beta={beta})"
        )));
    }
    let ab = alpha + beta;
    let mut diag = Vec::with_capacity(n);
    let mut off = Vec::with_capacity(n.saturating_sub(1));
    for k in 0..n {
        let k = k as f64;
        let denom = (2.0 * k + ab) * (2.0 * k + ab + 2.0);
        let a_k = if denom == 0.0 {
            // k = 0 with alpha + beta = 0
            (beta - alpha) / (ab + 2.0)
        } else {
            (beta * beta - alpha * alpha) / denom
        };
        diag.push(a_k);
    }
    for k in 1..n {
        if k == 1 {
            // general formula is 0/0 at k = 1 when alpha + beta = -1
            let num = 4.0 * (alpha + 1.0) * (beta + 1.0);
            let den = (ab + 2.0).powi(2) * (ab + 3.0);
            off.push((num / den).sqrt());
            continue;
        }
        let k = k as f64;
        let num = 4.0 * k * (k + alpha) * (k + beta) * (k + ab);
        let den = (2.0 * k + ab).powi(2) * (2.0 * k + ab + 1.0) * (2.0 * k + ab - 1.0);
        off.push((num / den).sqrt());
    }
    // mu0 = 2^{alpha+beta+1} B(alpha+1, beta+1)
    let lnmu0 = (ab + 1.0) * std::f64::consts::LN_2
        + crate::specfun::ln_abs_gamma_sign(alpha + 1.0).0
        + crate::specfun::ln_abs_gamma_sign(beta + 1.0).0
        - crate::specfun::ln_abs_gamma_sign(ab + 2.0).0;
    golub_welsch(&diag, &off, lnmu0.exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tanh_sinh_smooth_and_singular() {
        // smooth: int_0^1 exp(x) = e - 1
        let r = tanh_sinh(|x| x.exp(), 0.0, 1.0, 1e-13).unwrap();
        assert!((r.value - (1f64.exp() - 1.0)).abs() < 1e-12);
        // endpoint singularity: int_0^1 x^{-1/2} = 2
        let r = tanh_sinh(|x| 1.0 / x.sqrt(), 0.0, 1.0, 1e-13).unwrap();
        assert!((r.value - 2.0).abs() < 1e-11, "got {}", r.value);
        // log singularity: int_0^1 ln(x) = -1
        let r = tanh_sinh(|x| x.ln(), 0.0, 1.0, 1e-13).unwrap();
        assert!((r.value + 1.0).abs() < 1e-11);
    }

    #[test]
    fn exp_sinh_halfline() {
        // int_0^inf e^{-x} = 1
        let r = exp_sinh(|x| (-x).exp(), 1e-13).unwrap();
        assert!((r.value - 1.0).abs() < 1e-12, "got {}", r.value);
        // int_0^inf x^{-1/2} e^{-x} = sqrt(pi)
        let r = exp_sinh(|x| (-x).exp() / x.sqrt(), 1e-13).unwrap();
        assert!((r.value - std::f64::consts::PI.sqrt()).abs() < 1e-11, "got {}", r.value);
        // algebraic decay with singular origin: int_0^inf x^{-1/2}/(1+x^2) = pi/sqrt(2)
        let r = exp_sinh(|x| 1.0 / (x.sqrt() * (1.0 + x * x)), 1e-12).unwrap();
        let want = std::f64::consts::PI / 2f64.sqrt();
        assert!((r.value - want).abs() < 1e-10 * want, "got {}", r.value);
    }

    #[test]
    fn gauss_legendre_exactness() {
        let (x, w) = gauss_legendre(8).unwrap();
        // exact for polynomials up to degree 15
        let int: f64 = x.iter().zip(&w).map(|(xi, wi)| wi * xi.powi(14)).sum();
        assert!((int - 2.0 / 15.0).abs() < 1e-13, "got {int}");
        let total: f64 = w.iter().sum();
        assert!((total - 2.0).abs() < 1e-13);
    }

    #[test]
    fn gauss_jacobi_moments() {
        // weight (1-x^2)^{1/2} (n = 4 angular weight): mass = pi/2
        let (x, w) = gauss_jacobi(32, 0.5, 0.5).unwrap();
        let total: f64 = w.iter().sum();
        assert!((total - std::f64::consts::FRAC_PI_2).abs() < 1e-12, "mass {total}");
        // second moment: int (1-x^2)^{1/2} x^2 = pi/8
        let m2: f64 = x.iter().zip(&w).map(|(xi, wi)| wi * xi * xi).sum();
        assert!((m2 - std::f64::consts::PI / 8.0).abs() < 1e-12, "m2 {m2}");
        // Chebyshev weight (n = 2): mass = pi
        let (_, w) = gauss_jacobi(16, -0.5, -0.5).unwrap();
        let total: f64 = w.iter().sum();
        assert!((total - std::f64::consts::PI).abs() < 1e-12);
    }

    #[test]
    fn gauss_jacobi_kernel_style_integral() {
        // int_{-1}^{1} (1 - 2 rho s + rho^2)^{-c} (1-s^2)^{1/2} ds against
        // tanh_sinh of the full integrand (n = 4, c arbitrary).
        let (xs, ws) = gauss_jacobi(64, 0.5, 0.5).unwrap();
        let (rho, c) = (1.7, 2.4);
        let f = |s: f64| (1.0 + rho * rho - 2.0 * rho * s).powf(-c);
        let gj: f64 = xs.iter().zip(&ws).map(|(s, w)| w * f(*s)).sum();
        let ts = tanh_sinh(|s| f(s) * (1.0 - s * s).sqrt(), -1.0, 1.0, 1e-12)
            .unwrap()
            .value;
        assert!((gj - ts).abs() < 1e-10 * ts.abs(), "gj {gj} vs ts {ts}");
    }
}
