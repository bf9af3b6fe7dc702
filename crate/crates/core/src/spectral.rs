//! Fourier-side machinery for the cylinder operators: mode symbols, spectral
//! application, the direct kernel-quadrature oracle, indicial roots, and
//! exponential decay fits.

use crate::constants::{sphere_area, StructuralConstants};
use crate::error::CknError;
use crate::grid::{Grid, RadialField};
use crate::quad;
use crate::specfun;
use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use serde::Serialize;
use std::sync::Arc;

/// Fourier symbol of the conformal fractional Laplacian on spherical-harmonic
/// mode `m`:
///
/// `Theta^(m)(xi) = 2^{2 gamma} |Gamma(n/4 + gamma/2 + m/2 + i xi/2)|^2
///                             / |Gamma(n/4 - gamma/2 + m/2 + i xi/2)|^2`.
///
/// `gamma = 1` is admitted as the local-operator limit, where the symbol
/// collapses to `xi^2 + (n/2 - 1 + m)^2`.
pub fn theta_symbol(n: u32, gamma: f64, m: u32, xi: f64) -> Result<f64, CknError> {
    if !(gamma > 0.0 && gamma <= 1.0) {
        return Err(CknError::invalid("0 < gamma <= 1", gamma));
    }
    let nf = f64::from(n);
    let a = 0.25 * nf + 0.5 * gamma + 0.5 * f64::from(m);
    let b = 0.25 * nf - 0.5 * gamma + 0.5 * f64::from(m);
    if b <= 0.0 {
        return Err(CknError::invalid("n/4 - gamma/2 + m/2 > 0", b));
    }
    Ok((2.0f64).powf(2.0 * gamma) * specfun::gamma_ratio_sq(a, b, xi)?)
}

/// A diagonal-in-Fourier operator on a fixed grid: forward FFT, multiply by a
/// real even multiplier, inverse FFT.
pub struct SymbolOp {
    grid: Grid,
    multiplier: Vec<f64>,
    fft: Arc<dyn Fft<f64>>,
    ifft: Arc<dyn Fft<f64>>,
}

impl SymbolOp {
    /// Operator with multiplier `f(xi_k)` over the grid frequencies.
    pub fn from_fn(grid: Grid, f: impl Fn(f64) -> Result<f64, CknError>) -> Result<Self, CknError> {
        let mut multiplier = Vec::with_capacity(grid.len());
        for k in 0..grid.len() {
            multiplier.push(f(grid.xi(k))?);
        }
        let mut planner = FftPlanner::new();
        Ok(SymbolOp {
            grid,
            multiplier,
            fft: planner.plan_fft_forward(grid.len()),
            ifft: planner.plan_fft_inverse(grid.len()),
        })
    }

    /// The mode-`m` operator `P^(m)` with symbol `Theta^(m)`.
    pub fn mode(grid: Grid, n: u32, gamma: f64, m: u32) -> Result<Self, CknError> {
        SymbolOp::from_fn(grid, |xi| theta_symbol(n, gamma, m, xi))
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn multiplier(&self) -> &[f64] {
        &self.multiplier
    }

    /// Apply without validity checks (used inside iterative solvers where the
    /// iterates are known to be periodization-safe).
    pub fn apply_slice(&self, v: &[f64]) -> Vec<f64> {
        let (out, _) = self.apply_with_imag(v);
        out
    }

    fn apply_with_imag(&self, v: &[f64]) -> (Vec<f64>, f64) {
        let n = self.grid.len();
        assert_eq!(v.len(), n, "field/grid size mismatch");
        let mut buf: Vec<Complex64> = v.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        self.fft.process(&mut buf);
        for (b, &m) in buf.iter_mut().zip(&self.multiplier) {
            *b *= m;
        }
        self.ifft.process(&mut buf);
        let scale = 1.0 / n as f64;
        let mut imag = 0.0f64;
        let out = buf
            .iter()
            .map(|c| {
                imag = imag.max((c.im * scale).abs());
                c.re * scale
            })
            .collect();
        (out, imag)
    }

    /// Checked application: the input must be boundary-small, and the residual
    /// imaginary part of the round trip must be at roundoff level.
    pub fn apply(&self, field: &RadialField) -> Result<RadialField, CknError> {
        if field.grid() != self.grid {
            return Err(CknError::Grid("operator and field grids differ".into()));
        }
        field.check_boundary()?;
        let (out, imag) = self.apply_with_imag(field.values());
        let scale = field.max_abs().max(1e-300);
        if imag > 1e-12 * scale {
            return Err(CknError::NonConvergence {
                what: "spectral application",
                detail: format!("imaginary residue {imag:.3e} exceeds 1e-12 * sup|v|"),
            });
        }
        RadialField::new(self.grid, out)
    }

    /// Spectral translation `v(t) -> v(t - shift)` via phase multiplication.
    pub fn translate(grid: Grid, v: &[f64], shift: f64) -> Vec<f64> {
        let n = grid.len();
        let mut planner = FftPlanner::new();
        let fft = planner.plan_fft_forward(n);
        let ifft = planner.plan_fft_inverse(n);
        let mut buf: Vec<Complex64> = v.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        fft.process(&mut buf);
        for (k, b) in buf.iter_mut().enumerate() {
            let xi = grid.xi(k);
            *b *= Complex64::from_polar(1.0, -xi * shift);
        }
        ifft.process(&mut buf);
        let scale = 1.0 / n as f64;
        buf.iter().map(|c| c.re * scale).collect()
    }
}

/// Apply `P^(m)` to a field with full validity checks.
pub fn apply_pm(field: &RadialField, n: u32, gamma: f64, m: u32) -> Result<RadialField, CknError> {
    SymbolOp::mode(field.grid(), n, gamma, m)?.apply(field)
}

/// Mode-0 kernel of the cylinder operator, angular mass folded in:
///
/// `K_0(s) = |S^{n-1}| e^{-(n+2 gamma) s / 2} 2F1((n+2 gamma)/2, 1+gamma; n/2; e^{-2s})`,
///
/// normalized so that `sigma_{n,gamma} int K_0(s) (1 - cos(xi s)) ds + c_{n,gamma}`
/// reproduces `Theta^(0)(xi)`. Diverges like `s^{-1-2 gamma}` at the origin.
pub fn kernel_k0(n: u32, gamma: f64, s: f64) -> Result<f64, CknError> {
    if s <= 0.0 {
        return Err(CknError::domain("kernel_k0", s, "s > 0 required"));
    }
    let nf = f64::from(n);
    let y = -(-2.0 * s).exp_m1();
    let f = specfun::hyp2f1_from_unit(0.5 * (nf + 2.0 * gamma), 1.0 + gamma, 0.5 * nf, y)?;
    Ok(sphere_area(n) * (-0.5 * (nf + 2.0 * gamma) * s).exp() * f)
}

/// Direct quadrature evaluation of `P^(0) v` from the kernel:
///
/// `P^(0) v(t) = sigma int K_0(t - t') (v(t) - v(t')) dt' + c v(t)`.
///
/// The singular cell `|t - t'| < dt/2` is handled by pairing `t' = t ± h` and
/// a local second-difference (Taylor) model; the three neighbouring cells are
/// sub-sampled with Gauss–Legendre against a quadratic interpolant. Slow
/// (`O(N^2)`) — this is the cross-validation oracle for [`apply_pm`].
pub fn apply_p0_kernel_oracle(
    field: &RadialField,
    n: u32,
    gamma: f64,
    sc: &StructuralConstants,
) -> Result<RadialField, CknError> {
    field.check_boundary()?;
    let grid = field.grid();
    let v = field.values();
    let nn = grid.len();
    let dt = grid.delta_t();
    let decay = 0.5 * (f64::from(n) + 2.0 * gamma);
    // pairwise kernel table: K_0(k dt) until it underflows
    let k_cut = ((45.0 / decay / dt).ceil() as usize).min(nn - 1);
    let mut table = vec![0.0f64; k_cut + 1];
    for (k, slot) in table.iter_mut().enumerate().skip(1) {
        *slot = kernel_k0(n, gamma, k as f64 * dt)?;
    }
    // Gauss-Legendre sub-rule on the near cells, scaled to offset u in [-1/2, 1/2]
    const NEAR_CELLS: usize = 3;
    let (gl_x, gl_w) = quad::gauss_legendre(8)?;
    let mut near_nodes = Vec::new(); // (k, u, weight, K_0((k+u) dt))
    for k in 1..=NEAR_CELLS {
        for (x, w) in gl_x.iter().zip(&gl_w) {
            let u = 0.5 * x;
            let h = (k as f64 + u) * dt;
            near_nodes.push((k, u, 0.5 * w * dt, kernel_k0(n, gamma, h)?));
        }
    }
    // second-moment of the kernel over the innermost half cell
    let inner2 = quad::tanh_sinh(
        |h| match kernel_k0(n, gamma, h) {
            Ok(k) => k * h * h,
            Err(_) => 0.0,
        },
        0.0,
        0.5 * dt,
        1e-11,
    )?
    .value;

    let at = |j: i64| -> f64 {
        if j < 0 || j >= nn as i64 {
            0.0
        } else {
            v[j as usize]
        }
    };
    // quadratic interpolant around sample j0 at fractional offset s
    let interp = |j0: i64, s: f64| -> f64 {
        let vm = at(j0 - 1);
        let v0 = at(j0);
        let vp = at(j0 + 1);
        v0 * (1.0 - s * s) + 0.5 * vp * s * (s + 1.0) + 0.5 * vm * s * (s - 1.0)
    };

    let mut out = vec![0.0f64; nn];
    for j in 0..nn {
        let ji = j as i64;
        let vj = v[j];
        let mut acc = 0.0f64;
        // far cells: midpoint rule on the paired difference
        for (k, &kk) in table.iter().enumerate().skip(NEAR_CELLS + 1) {
            let s = 2.0 * vj - at(ji + k as i64) - at(ji - k as i64);
            acc += kk * s * dt;
        }
        // near cells: sub-sampled quadrature against the interpolant
        for &(k, u, w, kval) in &near_nodes {
            let k = k as i64;
            let pair = 2.0 * vj - interp(ji + k, u) - interp(ji - k, -u);
            acc += w * kval * pair;
        }
        // singular cell: second-difference Taylor model; the pairing already
        // covers both signs of t - t'
        let d2 = (at(ji + 1) - 2.0 * vj + at(ji - 1)) / (dt * dt);
        acc -= d2 * inner2;
        out[j] = sc.sigma * acc + sc.c * vj;
    }
    RadialField::new(grid, out)
}

/// A root `z = tau + i sigma` of `Theta^(0)(z) + C(alpha)`, governing the
/// admissible decay behaviours `e^{-sigma |t|}` of radial solutions.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct IndicialRoot {
    pub tau: f64,
    pub sigma: f64,
    pub index: usize,
    /// `|Theta^(0)(z) + C(alpha)|` at the reported root.
    pub residual: f64,
}

fn theta0_complex(n: u32, gamma: f64, z: Complex64) -> Result<Complex64, CknError> {
    let nf = f64::from(n);
    let a = 0.25 * nf + 0.5 * gamma;
    let b = 0.25 * nf - 0.5 * gamma;
    let iz = Complex64::new(0.0, 0.5) * z;
    let lg = specfun::log_gamma(a + iz)? + specfun::log_gamma(a - iz)?
        - specfun::log_gamma(b + iz)?
        - specfun::log_gamma(b - iz)?;
    Ok((2.0f64).powf(2.0 * gamma) * lg.exp())
}

fn theta0_complex_deriv(n: u32, gamma: f64, z: Complex64) -> Result<Complex64, CknError> {
    let nf = f64::from(n);
    let a = 0.25 * nf + 0.5 * gamma;
    let b = 0.25 * nf - 0.5 * gamma;
    let iz = Complex64::new(0.0, 0.5) * z;
    let half_i = Complex64::new(0.0, 0.5);
    let dlog = half_i
        * (specfun::digamma_complex(a + iz)? - specfun::digamma_complex(a - iz)?
            - specfun::digamma_complex(b + iz)?
            + specfun::digamma_complex(b - iz)?);
    Ok(theta0_complex(n, gamma, z)? * dlog)
}

/// `Theta^(0)(i sigma)` on the imaginary axis through real Gamma quotients
/// (cheap and sign-aware for bracketing).
fn theta0_axis(n: u32, gamma: f64, sigma: f64) -> f64 {
    let nf = f64::from(n);
    let a = 0.25 * nf + 0.5 * gamma;
    let b = 0.25 * nf - 0.5 * gamma;
    let mut lg = 2.0 * gamma * std::f64::consts::LN_2;
    let mut sign = 1.0f64;
    for (arg, pos) in [
        (a + 0.5 * sigma, true),
        (a - 0.5 * sigma, true),
        (b + 0.5 * sigma, false),
        (b - 0.5 * sigma, false),
    ] {
        let (l, s) = specfun::ln_abs_gamma_sign(arg);
        if s == 0.0 {
            // numerator pole -> infinite symbol; denominator pole -> zero
            return if pos { f64::INFINITY * sign } else { 0.0 };
        }
        if pos {
            lg += l;
        } else {
            lg -= l;
        }
        sign *= s;
    }
    sign * lg.exp()
}

/// First `count` indicial roots of `Theta^(0)(z) + C(alpha) = 0`, ordered by
/// increasing `sigma >= 0`.
///
/// The principal root is purely imaginary (`tau = 0`) and is located by
/// bisection between the symbol's zero/pole ladder; higher roots are polished
/// by a complex Newton iteration with digamma derivatives and may leave the
/// axis.
pub fn indicial_roots(
    n: u32,
    gamma: f64,
    c_alpha: f64,
    count: usize,
) -> Result<Vec<IndicialRoot>, CknError> {
    let nf = f64::from(n);
    let two_a = 0.5 * nf + gamma; // first numerator pole on the sigma axis
    let g = |s: f64| theta0_axis(n, gamma, s) + c_alpha;
    let mut roots = Vec::new();
    let eps = 1e-9;

    let bisect = |mut lo: f64, mut hi: f64| -> Option<f64> {
        let (flo, fhi) = (g(lo), g(hi));
        if !(flo.is_finite() && fhi.is_finite()) || flo.signum() == fhi.signum() {
            return None;
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            let fm = g(mid);
            if fm == 0.0 {
                return Some(mid);
            }
            if fm.signum() == flo.signum() {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Some(0.5 * (lo + hi))
    };

    for index in 0..count {
        let (lo, hi) = if index == 0 {
            (eps, two_a - eps)
        } else {
            (two_a + 2.0 * (index as f64 - 1.0) + eps, two_a + 2.0 * index as f64 - eps)
        };
        // scan for a sign change on the axis segment
        let mut found: Option<f64> = None;
        let steps = 400;
        let mut prev_s = lo;
        let mut prev_f = g(lo);
        for i in 1..=steps {
            let s = lo + (hi - lo) * i as f64 / steps as f64;
            let f = g(s);
            if prev_f.is_finite() && f.is_finite() && prev_f.signum() != f.signum() {
                found = bisect(prev_s, s);
                if found.is_some() {
                    break;
                }
            }
            prev_s = s;
            prev_f = f;
        }
        let scale = c_alpha.abs().max(1.0);
        let root = match found {
            Some(s) if g(s).abs() <= 1e-11 * scale => Complex64::new(0.0, s),
            Some(s) => {
                // polish on the axis; the Gamma quotient can sit on a pole of a
                // denominator factor (the alpha = 0 case), where bisection is
                // already exact and Newton must be skipped
                match newton_polish(n, gamma, c_alpha, Complex64::new(0.0, s)) {
                    Ok(z) => z,
                    Err(CknError::Pole { .. }) => Complex64::new(0.0, s),
                    Err(e) => return Err(e),
                }
            }
            // no axis crossing: the pair has moved off the axis; seed sideways
            None => newton_polish(n, gamma, c_alpha, Complex64::new(0.5, 0.5 * (lo + hi)))?,
        };
        let tau = if root.re.abs() < 1e-9 { 0.0 } else { root.re };
        let res = if tau == 0.0 {
            g(root.im).abs()
        } else {
            (theta0_complex(n, gamma, root)? + c_alpha).norm()
        };
        if res > 1e-10 * scale {
            return Err(CknError::RootSearch {
                what: "indicial root",
                detail: format!("index {index}: residual {res:.3e}"),
            });
        }
        roots.push(IndicialRoot {
            tau,
            sigma: root.im.abs(),
            index,
            residual: res,
        });
    }
    Ok(roots)
}

fn newton_polish(
    n: u32,
    gamma: f64,
    c_alpha: f64,
    seed: Complex64,
) -> Result<Complex64, CknError> {
    let mut z = seed;
    for _ in 0..100 {
        let f = theta0_complex(n, gamma, z)? + c_alpha;
        if f.norm() <= 1e-13 * c_alpha.abs().max(1.0) {
            return Ok(z);
        }
        let df = theta0_complex_deriv(n, gamma, z)?;
        if df.norm() == 0.0 {
            break;
        }
        let step = f / df;
        z -= step;
        if step.norm() <= 1e-14 * z.norm().max(1.0) {
            return Ok(z);
        }
    }
    Ok(z)
}

/// Principal decay exponent `sigma_0` (convenience wrapper).
pub fn principal_indicial_root(n: u32, gamma: f64, c_alpha: f64) -> Result<f64, CknError> {
    Ok(indicial_roots(n, gamma, c_alpha, 1)?[0].sigma)
}

/// Log-linear least-squares fit of `v ~ A e^{-rate t}` on `t1 <= t <= t2`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct DecayFit {
    pub rate: f64,
    pub amplitude_log: f64,
    /// RMS residual of the fit in log space.
    pub residual: f64,
}

/// Spectral derivative `d/dt` via the multiplier `i xi` (Nyquist bin zeroed).
pub fn spectral_derivative(grid: Grid, v: &[f64]) -> Vec<f64> {
    let n = grid.len();
    let mut planner = FftPlanner::new();
    let fft = planner.plan_fft_forward(n);
    let ifft = planner.plan_fft_inverse(n);
    let mut buf: Vec<Complex64> = v.iter().map(|&x| Complex64::new(x, 0.0)).collect();
    fft.process(&mut buf);
    for (k, b) in buf.iter_mut().enumerate() {
        if k == n / 2 {
            *b = Complex64::new(0.0, 0.0);
        } else {
            *b *= Complex64::new(0.0, grid.xi(k));
        }
    }
    ifft.process(&mut buf);
    let scale = 1.0 / n as f64;
    buf.iter().map(|c| c.re * scale).collect()
}

pub fn decay_rate_fit(field: &RadialField, t1: f64, t2: f64) -> Result<DecayFit, CknError> {
    if !(t1 < t2) {
        return Err(CknError::invalid("t1 < t2", format!("({t1}, {t2})")));
    }
    let grid = field.grid();
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for j in 0..grid.len() {
        let t = grid.point(j);
        if t >= t1 && t <= t2 {
            let v = field.values()[j];
            if v <= 0.0 {
                return Err(CknError::NonPositiveField(format!(
                    "v({t}) = {v} inside fit window ({t1}, {t2})"
                )));
            }
            xs.push(t);
            ys.push(v.ln());
        }
    }
    if xs.len() < 4 {
        return Err(CknError::Grid(format!(
            "fit window ({t1}, {t2}) contains {} samples; need >= 4",
            xs.len()
        )));
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let mut ss = 0.0;
    for (x, y) in xs.iter().zip(&ys) {
        ss += (y - (intercept + slope * x)).powi(2);
    }
    Ok(DecayFit {
        rate: -slope,
        amplitude_log: intercept,
        residual: (ss / n).sqrt(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::structural_constants;

    #[test]
    fn symbol_zero_frequency_is_c() {
        for (n, gamma) in [(2u32, 0.25), (3, 0.5), (4, 0.75), (5, 0.3)] {
            let sc = structural_constants(n, gamma).unwrap();
            let th = theta_symbol(n, gamma, 0, 0.0).unwrap();
            assert!((th - sc.c).abs() <= 1e-13 * sc.c, "n={n} gamma={gamma}");
        }
    }

    #[test]
    fn symbol_local_limit() {
        // gamma = 1: Theta^(m)(xi) = xi^2 + (n/2 - 1 + m)^2
        for (n, m, xi) in [(3u32, 0u32, 0.7), (3, 1, 2.0), (4, 2, 5.5), (2, 1, 0.0)] {
            let th = theta_symbol(n, 1.0, m, xi).unwrap();
            let want = xi * xi + (0.5 * f64::from(n) - 1.0 + f64::from(m)).powi(2);
            assert!((th - want).abs() <= 1e-11 * want.max(1.0), "{th} vs {want}");
        }
    }

    #[test]
    fn symbol_is_even_and_mode_ordered() {
        for xi in [0.0, 0.3, 2.0, 17.0] {
            let a = theta_symbol(3, 0.6, 0, xi).unwrap();
            let b = theta_symbol(3, 0.6, 0, -xi).unwrap();
            assert!((a - b).abs() <= 1e-13 * a);
            let c = theta_symbol(3, 0.6, 1, xi).unwrap();
            let d = theta_symbol(3, 0.6, 2, xi).unwrap();
            assert!(a < c && c < d, "mode ordering at xi={xi}");
        }
    }

    #[test]
    fn symbol_high_frequency_power_law() {
        for m in [0u32, 1, 2] {
            let xi = 1e3;
            let th = theta_symbol(3, 0.7, m, xi).unwrap();
            let z = (f64::from(m) * f64::from(m) + xi * xi).sqrt();
            let ratio = th / z.powf(1.4);
            assert!((0.99..=1.01).contains(&ratio), "m={m}: ratio {ratio}");
        }
    }

    #[test]
    fn operator_is_self_adjoint_and_annihilates_constants_symbolically() {
        let grid = Grid::new(14.0, 256).unwrap();
        let op = SymbolOp::mode(grid, 3, 0.45, 0).unwrap();
        let f = RadialField::from_fn(grid, |t| (-0.7 * t * t).exp()).unwrap();
        let g = RadialField::from_fn(grid, |t| t * (-0.5 * t * t).exp()).unwrap();
        let pf = op.apply(&f).unwrap();
        let pg = op.apply(&g).unwrap();
        let a = pf.inner(&g);
        let b = f.inner(&pg);
        let scale = f.max_abs() * g.max_abs();
        assert!((a - b).abs() <= 1e-10 * scale, "self-adjointness: {a} vs {b}");
        // parity preservation: even input -> even output
        assert!(pf.asymmetry() <= 1e-12 * pf.max_abs());
    }

    #[test]
    fn kernel_oracle_matches_symbol_route() {
        let grid = Grid::new(14.0, 512).unwrap();
        let (n, gamma) = (3u32, 0.5);
        let sc = structural_constants(n, gamma).unwrap();
        let f = RadialField::from_fn(grid, |t| (-0.6 * t * t).exp()).unwrap();
        let spectral_route = apply_pm(&f, n, gamma, 0).unwrap();
        let kernel_route = apply_p0_kernel_oracle(&f, n, gamma, &sc).unwrap();
        let mut num = 0.0;
        let mut den = 0.0;
        for (a, b) in spectral_route.values().iter().zip(kernel_route.values()) {
            num += (a - b).powi(2);
            den += a.powi(2);
        }
        let rel = (num / den).sqrt();
        assert!(rel <= 1e-4, "relative L2 defect {rel}");
    }

    #[test]
    fn principal_root_unweighted() {
        // alpha = 0: sigma_0 = (n - 2 gamma)/2 exactly
        for (n, gamma) in [(3u32, 0.5), (4, 0.25), (2, 0.75)] {
            let s = principal_indicial_root(n, gamma, 0.0).unwrap();
            let want = 0.5 * (f64::from(n) - 2.0 * gamma);
            assert!((s - want).abs() <= 1e-8, "n={n} gamma={gamma}: {s} vs {want}");
        }
    }

    #[test]
    fn root_ladder_residuals() {
        let (n, gamma, c) = (3u32, 0.5, 0.35);
        let roots = indicial_roots(n, gamma, c, 4).unwrap();
        assert_eq!(roots.len(), 4);
        for w in roots.windows(2) {
            assert!(w[0].sigma < w[1].sigma, "sigma ordering");
        }
        for r in &roots {
            let z = Complex64::new(r.tau, r.sigma);
            let res = (theta0_complex(n, gamma, z).unwrap() + c).norm();
            assert!(res <= 1e-10, "index {}: residual {res}", r.index);
        }
    }

    #[test]
    fn decay_fit_recovers_exponential() {
        let grid = Grid::new(20.0, 512).unwrap();
        let f = RadialField::from_fn(grid, |t| 3.0 * (-1.3 * t.abs()).exp()).unwrap();
        let fit = decay_rate_fit(&f, 5.0, 15.0).unwrap();
        assert!((fit.rate - 1.3).abs() < 1e-10, "rate {}", fit.rate);
        assert!(fit.residual < 1e-10);
        // negative samples inside the window are rejected
        let g = RadialField::from_fn(grid, |t| -1.0 * (-t * t).exp()).unwrap();
        assert!(decay_rate_fit(&g, 0.0, 5.0).is_err());
    }
}
