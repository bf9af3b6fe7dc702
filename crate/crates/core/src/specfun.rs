//! Scalar special functions: complex log-Gamma, digamma, squared Gamma-ratio
//! moduli, and the Gauss hypergeometric function on `[0, 1)`.
//!
//! Everything downstream (Fourier symbols, kernels, structural constants)
//! reduces to these few scalars, so the accuracy targets here are strict:
//! `log_gamma` is good to ~1e-14 absolute, `hyp2f1` to ~1e-12 relative away
//! from the unit argument.

use crate::error::CknError;
use num_complex::Complex64;

const LN_2PI_HALF: f64 = 0.918_938_533_204_672_742; // ln(2*pi)/2
const PI: f64 = std::f64::consts::PI;

// Lanczos coefficients, g = 7, 9 terms (GSL set).
const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// True when `z` lies within `tol` of a pole of Gamma (a non-positive integer).
fn near_gamma_pole(z: Complex64, tol: f64) -> Option<i64> {
    if z.im.abs() > tol {
        return None;
    }
    let k = z.re.round();
    if k <= 0.0 && (z.re - k).abs() <= tol {
        Some(k as i64)
    } else {
        None
    }
}

/// Lanczos evaluation, valid for `Re z >= 0.5`.
fn log_gamma_lanczos(z: Complex64) -> Complex64 {
    let x = z - 1.0;
    let mut sum = Complex64::new(LANCZOS[0], 0.0);
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        sum += c / (x + i as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    LN_2PI_HALF + (x + 0.5) * t.ln() - t + sum.ln()
}

/// Principal-branch complex log-Gamma.
///
/// The branch is the analytic continuation satisfying
/// `log_gamma(z+1) = log_gamma(z) + ln z` with the principal logarithm,
/// which agrees with the usual `lgamma` convention. Inputs within `1e-12`
/// of a non-positive integer are rejected.
pub fn log_gamma(z: Complex64) -> Result<Complex64, CknError> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(CknError::domain("log_gamma", z, "finite argument required"));
    }
    if let Some(k) = near_gamma_pole(z, 1e-12) {
        return Err(CknError::Pole {
            function: "log_gamma",
            location: format!("z = {k}"),
        });
    }
    if z.re >= 0.5 {
        return Ok(log_gamma_lanczos(z));
    }
    // Push the argument right of Re = 0.5 by the recurrence; subtracting the
    // principal logs keeps the continuation branch.
    let shift = (0.5 - z.re).ceil() as usize;
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..shift {
        acc += (z + j as f64).ln();
    }
    Ok(log_gamma_lanczos(z + shift as f64) - acc)
}

/// `ln |Gamma(x)|` together with the sign of `Gamma(x)`, for real `x`.
///
/// Returns sign `0.0` when `x` is within `1e-12` of a pole, in which case the
/// log is `+inf`; callers use this to drop terms with a reciprocal Gamma.
pub fn ln_abs_gamma_sign(x: f64) -> (f64, f64) {
    if near_gamma_pole(Complex64::new(x, 0.0), 1e-12).is_some() {
        return (f64::INFINITY, 0.0);
    }
    if x >= 0.5 {
        let v = log_gamma_lanczos(Complex64::new(x, 0.0));
        return (v.re, 1.0);
    }
    // Reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x).
    let (lg, _) = ln_abs_gamma_sign(1.0 - x);
    let s = sin_pi(x);
    (PI.ln() - s.abs().ln() - lg, s.signum())
}

/// Real Gamma for moderate arguments (overflow-checked).
pub fn gamma_real(x: f64) -> Result<f64, CknError> {
    let (lg, sign) = ln_abs_gamma_sign(x);
    if sign == 0.0 {
        return Err(CknError::Pole {
            function: "gamma_real",
            location: format!("x = {x}"),
        });
    }
    if lg > 709.0 {
        return Err(CknError::domain("gamma_real", x, "overflow in Gamma"));
    }
    Ok(sign * lg.exp())
}

/// `sin(pi x)` with argument reduction so large `x` keep full precision.
fn sin_pi(x: f64) -> f64 {
    let r = x - 2.0 * (0.5 * x).round();
    (PI * r).sin()
}

/// `cos(pi x)` with argument reduction.
fn cos_pi(x: f64) -> f64 {
    let r = x - 2.0 * (0.5 * x).round();
    (PI * r).cos()
}

// Bernoulli numbers B_2 .. B_14 over 2n, as used in the digamma asymptotics:
// psi(x) ~ ln x - 1/(2x) - sum B_{2n} / (2n x^{2n}).
const DIGAMMA_ASYMP: [f64; 7] = [
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
];

/// Real digamma function.
pub fn digamma(x: f64) -> Result<f64, CknError> {
    if near_gamma_pole(Complex64::new(x, 0.0), 1e-12).is_some() {
        return Err(CknError::Pole {
            function: "digamma",
            location: format!("x = {x}"),
        });
    }
    if x < 0.5 {
        // psi(x) = psi(1-x) - pi cot(pi x)
        let c = PI * cos_pi(x) / sin_pi(x);
        return Ok(digamma(1.0 - x)? - c);
    }
    let mut acc = 0.0;
    let mut y = x;
    while y < 12.0 {
        acc -= 1.0 / y;
        y += 1.0;
    }
    let inv2 = 1.0 / (y * y);
    let mut series = 0.0;
    let mut p = inv2;
    for &b in &DIGAMMA_ASYMP {
        series += b * p;
        p *= inv2;
    }
    Ok(acc + y.ln() - 0.5 / y - series)
}

/// Complex digamma function, same branch conventions as [`log_gamma`].
pub fn digamma_complex(z: Complex64) -> Result<Complex64, CknError> {
    if near_gamma_pole(z, 1e-12).is_some() {
        return Err(CknError::Pole {
            function: "digamma",
            location: format!("z = {z}"),
        });
    }
    if z.re < 0.5 {
        // psi(z) = psi(1-z) - pi cot(pi z); cot computed from sin/cos directly
        // since the recurrence keeps |Im z| moderate in our call sites.
        let pz = PI * z;
        let cot = pz.cos() / pz.sin();
        return Ok(digamma_complex(Complex64::new(1.0, 0.0) - z)? - PI * cot);
    }
    let mut acc = Complex64::new(0.0, 0.0);
    let mut y = z;
    while y.norm() < 12.0 {
        acc -= 1.0 / y;
        y += 1.0;
    }
    let inv2 = 1.0 / (y * y);
    let mut series = Complex64::new(0.0, 0.0);
    let mut p = inv2;
    for &b in &DIGAMMA_ASYMP {
        series += b * p;
        p *= inv2;
    }
    Ok(acc + y.ln() - 0.5 / y - series)
}

/// `|Gamma(a + i xi/2)|^2 / |Gamma(b + i xi/2)|^2`, evaluated in log space so
/// arbitrarily large `|xi|` cannot overflow intermediates.
pub fn gamma_ratio_sq(a: f64, b: f64, xi: f64) -> Result<f64, CknError> {
    if a <= 0.0 || b <= 0.0 {
        return Err(CknError::domain(
            "gamma_ratio_sq",
            format!("a = {a}, b = {b}"),
            "a > 0 and b > 0 required",
        ));
    }
    let h = Complex64::new(0.0, 0.5 * xi);
    let num = log_gamma(Complex64::new(a, 0.0) + h)?;
    let den = log_gamma(Complex64::new(b, 0.0) + h)?;
    Ok((2.0 * (num.re - den.re)).exp())
}

const HYP_MAX_TERMS: usize = 10_000;
const HYP_TOL: f64 = 1e-16;

/// Raw Gauss series for `2F1(a, b; c; x)`; converges for `|x| < 1`, fast for
/// `x <= 1/2`. Terminating (polynomial) cases are summed exactly.
fn hyp2f1_series(a: f64, b: f64, c: f64, x: f64) -> Result<f64, CknError> {
    let mut sum = 1.0f64;
    let mut comp = 0.0f64; // Kahan compensation
    let mut term = 1.0f64;
    for k in 0..HYP_MAX_TERMS {
        let kf = k as f64;
        term *= (a + kf) * (b + kf) / ((c + kf) * (kf + 1.0)) * x;
        if term == 0.0 {
            return Ok(sum);
        }
        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        if term.abs() <= HYP_TOL * sum.abs().max(1e-300) && k > 2 {
            return Ok(sum);
        }
    }
    Err(CknError::NonConvergence {
        what: "hyp2f1 series",
        detail: format!("a={a}, b={b}, c={c}, x={x}: {HYP_MAX_TERMS} terms"),
    })
}

fn is_nonpositive_int(x: f64, tol: f64) -> bool {
    let r = x.round();
    r <= 0.0 && (x - r).abs() <= tol
}

/// Ratio of Gamma products `prod Gamma(num) / prod Gamma(den)` in log space.
/// Returns 0 when a denominator argument sits on a pole.
fn gamma_quotient(num: &[f64], den: &[f64]) -> Result<f64, CknError> {
    let mut lg = 0.0f64;
    let mut sign = 1.0f64;
    for &x in den {
        let (l, s) = ln_abs_gamma_sign(x);
        if s == 0.0 {
            return Ok(0.0);
        }
        lg -= l;
        sign *= s;
    }
    for &x in num {
        let (l, s) = ln_abs_gamma_sign(x);
        if s == 0.0 {
            return Err(CknError::Pole {
                function: "hyp2f1 coefficient",
                location: format!("Gamma({x})"),
            });
        }
        lg += l;
        sign *= s;
    }
    if lg > 709.0 {
        return Err(CknError::domain(
            "hyp2f1 coefficient",
            lg,
            "overflow in Gamma quotient",
        ));
    }
    Ok(sign * lg.exp())
}

/// Linear transformation of the argument to `y = 1 - x`, valid when
/// `d = c - a - b` is not an integer.
fn hyp2f1_linear_transform(a: f64, b: f64, c: f64, y: f64) -> Result<f64, CknError> {
    let d = c - a - b;
    let c1 = gamma_quotient(&[c, d], &[c - a, c - b])?;
    let c2 = gamma_quotient(&[c, -d], &[a, b])?;
    let t1 = if c1 == 0.0 {
        0.0
    } else {
        c1 * hyp2f1_series(a, b, 1.0 - d, y)?
    };
    let t2 = if c2 == 0.0 {
        0.0
    } else {
        c2 * y.powf(d) * hyp2f1_series(c - a, c - b, 1.0 + d, y)?
    };
    Ok(t1 + t2)
}

/// Degenerate transformation for `c = a + b - m`, `m >= 1` (log case).
fn hyp2f1_degenerate_neg(a: f64, b: f64, c: f64, m: i64, y: f64) -> Result<f64, CknError> {
    let m = m as usize;
    let mf = m as f64;
    // Finite part: y^{-m} sum_{k=0}^{m-1} (a-m)_k (b-m)_k / (k! (1-m)_k) y^k
    let cf = gamma_quotient(&[mf, c], &[a, b])?;
    let mut finite = 0.0;
    if cf != 0.0 {
        let mut term = 1.0;
        for k in 0..m {
            let kf = k as f64;
            if k > 0 {
                term *= (a - mf + kf - 1.0) * (b - mf + kf - 1.0) / ((1.0 - mf + kf - 1.0) * kf) * y;
            }
            finite += term;
        }
        finite *= cf * y.powi(-(m as i32));
    }
    // Log part: -(-1)^m Gamma(c)/(Gamma(a-m) Gamma(b-m))
    //   sum_k (a)_k (b)_k / (k! (k+m)!) y^k [ln y - psi(k+1) - psi(k+m+1) + psi(a+k) + psi(b+k)]
    let cl = gamma_quotient(&[c], &[a - mf, b - mf])?;
    let mut logpart = 0.0;
    if cl != 0.0 {
        let lny = y.ln();
        let mut poch = 1.0; // (a)_k (b)_k / (k! (k+m)!), seeded with 1/m!
        for k in 2..=m {
            poch /= k as f64;
        }
        let mut psi_k1 = digamma(1.0)?;
        let mut psi_km1 = digamma(mf + 1.0)?;
        let mut psi_ak = digamma(a)?;
        let mut psi_bk = digamma(b)?;
        let mut sum = 0.0;
        for k in 0..HYP_MAX_TERMS {
            let kf = k as f64;
            if k > 0 {
                poch *= (a + kf - 1.0) * (b + kf - 1.0) / (kf * (kf + mf)) * y;
                psi_k1 += 1.0 / kf;
                psi_km1 += 1.0 / (kf + mf);
                psi_ak += 1.0 / (a + kf - 1.0);
                psi_bk += 1.0 / (b + kf - 1.0);
            }
            let term = poch * (lny - psi_k1 - psi_km1 + psi_ak + psi_bk);
            sum += term;
            if term.abs() <= HYP_TOL * sum.abs().max(1e-300) && k > 3 {
                break;
            }
            if k + 1 == HYP_MAX_TERMS {
                return Err(CknError::NonConvergence {
                    what: "hyp2f1 log series",
                    detail: format!("a={a}, b={b}, c={c}, 1-x={y}"),
                });
            }
        }
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        logpart = -sign * cl * sum;
    }
    Ok(finite + logpart)
}

/// Degenerate transformation for `c = a + b + m`, `m >= 0` (log case).
fn hyp2f1_degenerate_nonneg(a: f64, b: f64, c: f64, m: i64, y: f64) -> Result<f64, CknError> {
    let m = m as usize;
    let mf = m as f64;
    let mut finite = 0.0;
    if m > 0 {
        let cf = gamma_quotient(&[mf, c], &[a + mf, b + mf])?;
        if cf != 0.0 {
            let mut term = 1.0;
            for k in 0..m {
                let kf = k as f64;
                if k > 0 {
                    term *= (a + kf - 1.0) * (b + kf - 1.0) / ((1.0 - mf + kf - 1.0) * kf) * y;
                }
                finite += term;
            }
            finite *= cf;
        }
    }
    let cl = gamma_quotient(&[c], &[a, b])?;
    let mut logpart = 0.0;
    if cl != 0.0 {
        let lny = y.ln();
        let mut poch = y.powi(m as i32); // y^m (a+m)_k (b+m)_k / (k! (k+m)!) y^k
        for k in 2..=m {
            poch /= k as f64;
        }
        let mut psi_k1 = digamma(1.0)?;
        let mut psi_km1 = digamma(mf + 1.0)?;
        let mut psi_ak = digamma(a + mf)?;
        let mut psi_bk = digamma(b + mf)?;
        let mut sum = 0.0;
        for k in 0..HYP_MAX_TERMS {
            let kf = k as f64;
            if k > 0 {
                poch *= (a + mf + kf - 1.0) * (b + mf + kf - 1.0) / (kf * (kf + mf)) * y;
                psi_k1 += 1.0 / kf;
                psi_km1 += 1.0 / (kf + mf);
                psi_ak += 1.0 / (a + mf + kf - 1.0);
                psi_bk += 1.0 / (b + mf + kf - 1.0);
            }
            let term = poch * (lny - psi_k1 - psi_km1 + psi_ak + psi_bk);
            sum += term;
            if term.abs() <= HYP_TOL * sum.abs().max(1e-300) && k > 3 {
                break;
            }
            if k + 1 == HYP_MAX_TERMS {
                return Err(CknError::NonConvergence {
                    what: "hyp2f1 log series",
                    detail: format!("a={a}, b={b}, c={c}, 1-x={y}"),
                });
            }
        }
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        logpart = -sign * cl * sum;
    }
    Ok(finite + logpart)
}

/// Gauss hypergeometric function `2F1(a, b; c; x)` for real parameters and
/// `x` in `[0, 1)`.
///
/// Uses the Gauss series for `x <= 1/2` and argument transformations to
/// `1 - x` otherwise, including the logarithmic cases where `c - a - b` is an
/// integer. The `(1-x)^{c-a-b}` divergence as `x -> 1` is reproduced when
/// `c - a - b < 0`.
pub fn hyp2f1(a: f64, b: f64, c: f64, x: f64) -> Result<f64, CknError> {
    if !(0.0..1.0).contains(&x) {
        return Err(CknError::domain("hyp2f1", x, "0 <= x < 1 required"));
    }
    hyp2f1_from_unit(a, b, c, 1.0 - x)
}

/// Same as [`hyp2f1`] but parameterized by `y = 1 - x` in `(0, 1]`.
///
/// Callers near the unit argument should use this entry point: `y` can be
/// represented exactly down to `1e-300` while `1 - y` rounds to `1.0`.
pub fn hyp2f1_from_unit(a: f64, b: f64, c: f64, y: f64) -> Result<f64, CknError> {
    if !(y > 0.0 && y <= 1.0) {
        return Err(CknError::domain("hyp2f1", 1.0 - y, "0 <= x < 1 required"));
    }
    if is_nonpositive_int(c, 1e-12) {
        return Err(CknError::Pole {
            function: "hyp2f1",
            location: format!("c = {c}"),
        });
    }
    let x = 1.0 - y;
    // Polynomial cases terminate; sum directly regardless of x.
    if is_nonpositive_int(a, 1e-12) || is_nonpositive_int(b, 1e-12) {
        return hyp2f1_series(a, b, c, x);
    }
    if x <= 0.5 {
        return hyp2f1_series(a, b, c, x);
    }
    // Elementary reductions keep the degenerate machinery out of the common
    // kernel case b = c (then 2F1 = (1-x)^{-a}).
    if (c - b).abs() <= 1e-12 {
        return Ok(y.powf(-a));
    }
    if (c - a).abs() <= 1e-12 {
        return Ok(y.powf(-b));
    }
    let d = c - a - b;
    let dr = d.round();
    if (d - dr).abs() <= 1e-8 {
        if dr >= 0.0 {
            hyp2f1_degenerate_nonneg(a, b, c, dr as i64, y)
        } else {
            hyp2f1_degenerate_neg(a, b, c, -dr as i64, y)
        }
    } else {
        hyp2f1_linear_transform(a, b, c, y)
    }
}
