//! Structural constants of the cylinder problem: the fractional-Laplacian
//! normalization `sigma_{n,gamma}`, the conformal constant `c_{n,gamma}`, the
//! singular integral `kappa`, and the zero-mode shift `C(alpha)`.

use crate::error::CknError;
use crate::params::Parameters;
use crate::quad;
use crate::specfun;

const PI: f64 = std::f64::consts::PI;

/// Surface measure of the unit sphere `S^{n-1}`.
pub fn sphere_area(n: u32) -> f64 {
    let nf = f64::from(n);
    2.0 * PI.powf(0.5 * nf) / specfun::ln_abs_gamma_sign(0.5 * nf).0.exp()
}

/// The two Gamma-product constants of the problem.
#[derive(Debug, Clone, Copy)]
pub struct StructuralConstants {
    /// `sigma_{n,gamma} = pi^{-n/2} 2^{2 gamma} Gamma(n/2 + gamma) / Gamma(1 - gamma) * gamma`,
    /// the normalization of the singular-integral fractional Laplacian.
    pub sigma: f64,
    /// `c_{n,gamma} = 2^{2 gamma} (Gamma((n/2 + gamma)/2) / Gamma((n/2 - gamma)/2))^2`,
    /// the zero-frequency value of the cylinder symbol.
    pub c: f64,
}

/// Compute `sigma_{n,gamma}` and `c_{n,gamma}`.
pub fn structural_constants(n: u32, gamma: f64) -> Result<StructuralConstants, CknError> {
    if !(gamma > 0.0 && gamma < 1.0) {
        return Err(CknError::invalid("0 < gamma < 1", gamma));
    }
    let nf = f64::from(n);
    let sigma = PI.powf(-0.5 * nf) * (2.0f64).powf(2.0 * gamma)
        * (specfun::ln_abs_gamma_sign(0.5 * nf + gamma).0
            - specfun::ln_abs_gamma_sign(1.0 - gamma).0)
            .exp()
        * gamma;
    let half = 0.5 * (0.5 * nf + gamma);
    let halfm = 0.5 * (0.5 * nf - gamma);
    let c = (2.0f64).powf(2.0 * gamma)
        * (2.0 * (specfun::ln_abs_gamma_sign(half).0 - specfun::ln_abs_gamma_sign(halfm).0)).exp();
    Ok(StructuralConstants { sigma, c })
}

/// Euler-Lagrange constant of the Sobolev bubble in cylinder coordinates:
/// `Lambda_{n,gamma} = 2^{2 gamma} Gamma(n/2 + gamma) / Gamma(n/2 - gamma)`,
/// so that `v(t) = (2 cosh t)^{-(n - 2 gamma)/2}` solves
/// `P^(0) v = Lambda v^((n + 2 gamma)/(n - 2 gamma))` exactly.
pub fn bubble_constant(n: u32, gamma: f64) -> Result<f64, CknError> {
    let nf = f64::from(n);
    Ok((2.0f64).powf(2.0 * gamma) * specfun::gamma_real(0.5 * nf + gamma)?
        / specfun::gamma_real(0.5 * nf - gamma)?)
}

/// Closed-form multiplier of the fractional Laplacian on the power `|x|^{-s}`:
/// `lambda(s) = 2^{2 gamma} Gamma((s + 2 gamma)/2) Gamma((n - s)/2)
///            / (Gamma(s/2) Gamma((n - s - 2 gamma)/2))`.
///
/// Equals `sigma_{n,gamma} * kappa_general(n, gamma, 0, s)`; the quadrature
/// route is cross-checked against this in the acceptance suite.
pub fn lambda_power(n: u32, gamma: f64, s: f64) -> Result<f64, CknError> {
    let nf = f64::from(n);
    let num = specfun::gamma_real(0.5 * (s + 2.0 * gamma))? * specfun::gamma_real(0.5 * (nf - s))?;
    let den = specfun::gamma_real(0.5 * s)? * specfun::gamma_real(0.5 * (nf - s - 2.0 * gamma))?;
    Ok((2.0f64).powf(2.0 * gamma) * num / den)
}

/// Angular factor of the cylinder kernel:
/// `A(rho) = int_{-1}^{1} (1 + rho^2 - 2 rho s)^{-(n+2 gamma)/2} (1-s^2)^{(n-3)/2} ds`
/// for `rho > 1`, reduced to a Gauss hypergeometric evaluation.
///
/// `one_minus_x` is `1 - rho^{-2}`, passed separately so callers close to
/// `rho = 1` keep full precision.
#[cfg_attr(not(test), allow(dead_code))]
pub(crate) fn angular_factor(
    n: u32,
    gamma: f64,
    rho: f64,
    one_minus_inv_rho_sq: f64,
) -> Result<f64, CknError> {
    let nf = f64::from(n);
    // mass of the angular weight: sqrt(pi) Gamma((n-1)/2) / Gamma(n/2)
    let w = PI.sqrt()
        * (specfun::ln_abs_gamma_sign(0.5 * (nf - 1.0)).0 - specfun::ln_abs_gamma_sign(0.5 * nf).0)
            .exp();
    let f = specfun::hyp2f1_from_unit(
        0.5 * (nf + 2.0 * gamma),
        1.0 + gamma,
        0.5 * nf,
        one_minus_inv_rho_sq,
    )?;
    Ok(w * rho.powf(-(nf + 2.0 * gamma)) * f)
}

/// The structural integral `kappa` for general homogeneity `abar`:
///
/// `kappa = omega_{n-2} int_1^inf (1 - rho^{-abar}) rho^{-1}
///          (rho^{n - alpha} - rho^{2 gamma + alpha + abar}) A(rho) drho`,
///
/// the absolutely convergent form of the principal-value pairing of the
/// cylinder kernel against the power weights. Finite iff
/// `-2 gamma < alpha` and `alpha + abar < n`.
pub fn kappa_general(n: u32, gamma: f64, alpha: f64, abar: f64, rel_tol: f64) -> Result<f64, CknError> {
    let nf = f64::from(n);
    if alpha <= -2.0 * gamma {
        return Err(CknError::invalid("alpha > -2*gamma", alpha));
    }
    if alpha + abar >= nf {
        return Err(CknError::invalid("alpha + abar < n", alpha + abar));
    }
    if abar <= 0.0 {
        return Err(CknError::invalid("abar > 0", abar));
    }
    let omega = if n == 2 {
        2.0
    } else {
        sphere_area(n - 1)
    };
    // Combined with the kernel decay rho^{-(n+2gamma)}, the two weight
    // branches give exponents that both decay:
    //   rho^{-1} (rho^{n-alpha} - rho^{2gamma+alpha+abar}) rho^{-(n+2gamma)} drho
    //     = (e^{-(2gamma+alpha) tau} - e^{-(n-alpha-abar) tau}) dtau
    // under rho = e^tau. Admissibility makes both rates positive.
    let rate_a = 2.0 * gamma + alpha;
    let rate_b = nf - alpha - abar;
    let diff = rate_b - rate_a;
    // mass of the angular weight: sqrt(pi) Gamma((n-1)/2) / Gamma(n/2)
    let w_ang = PI.sqrt()
        * (specfun::ln_abs_gamma_sign(0.5 * (nf - 1.0)).0 - specfun::ln_abs_gamma_sign(0.5 * nf).0)
            .exp();
    let (fa, fb, fc) = (0.5 * (nf + 2.0 * gamma), 1.0 + gamma, 0.5 * nf);
    let mut inner_err: Option<CknError> = None;
    let result = quad::exp_sinh(
        |tau| {
            let cut = -(-abar * tau).exp_m1(); // 1 - rho^{-abar}
            let branch = if tau < 0.1 {
                // expm1 form avoids the cancellation of the two near-unit exponentials
                -(-rate_a * tau).exp() * (-diff * tau).exp_m1()
            } else {
                (-rate_a * tau).exp() - (-rate_b * tau).exp()
            };
            let y = -(-2.0 * tau).exp_m1(); // 1 - rho^{-2}
            match specfun::hyp2f1_from_unit(fa, fb, fc, y) {
                Ok(f) => cut * branch * w_ang * f,
                Err(e) => {
                    if inner_err.is_none() {
                        inner_err = Some(e);
                    }
                    0.0
                }
            }
        },
        rel_tol,
    )?;
    if let Some(e) = inner_err {
        return Err(e);
    }
    Ok(omega * result.value)
}

/// `kappa = kappa^{n, nu}` at the problem's own homogeneity.
pub fn kappa(params: &Parameters, rel_tol: f64) -> Result<f64, CknError> {
    kappa_general(params.n(), params.gamma(), params.alpha(), params.nu(), rel_tol)
}

/// Zero-mode shift `C(alpha) = sigma_{n,gamma} kappa - c_{n,gamma}`.
///
/// Vanishes at `alpha = 0`, is positive for `alpha < 0` and negative for
/// `alpha > 0`.
pub fn c_alpha(params: &Parameters, rel_tol: f64) -> Result<f64, CknError> {
    let sc = structural_constants(params.n(), params.gamma())?;
    let k = kappa(params, rel_tol)?;
    Ok(sc.sigma * k - sc.c)
}

/// The symmetry-breaking curve estimate
/// `h(alpha) = (4 gamma C(alpha) - M (n - 2 gamma)) / (4 C(alpha) + 2 M) + alpha`,
/// with the modulus `M` supplied by the caller.
pub fn h_alpha(params: &Parameters, m: f64, rel_tol: f64) -> Result<f64, CknError> {
    let c = c_alpha(params, rel_tol)?;
    let denom = 4.0 * c + 2.0 * m;
    if denom.abs() < 1e-14 {
        return Err(CknError::invalid("4 C(alpha) + 2 M != 0", denom));
    }
    let nf = params.nf();
    Ok((4.0 * params.gamma() * c - m * (nf - 2.0 * params.gamma())) / denom + params.alpha())
}

/// Everything the operator layer needs, computed once per parameter set.
#[derive(Debug, Clone, Copy)]
pub struct ProblemConstants {
    pub sigma: f64,
    pub c: f64,
    pub kappa: f64,
    pub c_alpha: f64,
}

impl ProblemConstants {
    pub fn compute(params: &Parameters, rel_tol: f64) -> Result<Self, CknError> {
        let sc = structural_constants(params.n(), params.gamma())?;
        let k = kappa(params, rel_tol)?;
        Ok(ProblemConstants {
            sigma: sc.sigma,
            c: sc.c,
            kappa: k,
            c_alpha: sc.sigma * k - sc.c,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sphere_areas() {
        assert!((sphere_area(2) - 2.0 * PI).abs() < 1e-14);
        assert!((sphere_area(3) - 4.0 * PI).abs() < 1e-13);
    }

    #[test]
    fn c_constant_closed_forms() {
        // c_{3, 1/2} = 2 (Gamma(1)/Gamma(1/2))^2 = 2/pi
        let sc = structural_constants(3, 0.5).unwrap();
        assert!((sc.c - 2.0 / PI).abs() < 1e-14, "c = {}", sc.c);
        // sigma_{3, 1/2} = pi^{-3/2} 2 Gamma(2)/Gamma(1/2) * 1/2 = pi^-2
        assert!((sc.sigma - PI.powi(-2)).abs() < 1e-15, "sigma = {}", sc.sigma);
    }

    #[test]
    fn lambda_power_matches_c_at_native_homogeneity() {
        // lambda(nu) with nu = (n-2 gamma)/2 collapses to c_{n,gamma}
        for (n, gamma) in [(3u32, 0.5), (4, 0.25), (5, 0.75), (2, 0.6)] {
            let nu = 0.5 * (f64::from(n) - 2.0 * gamma);
            let lam = lambda_power(n, gamma, nu).unwrap();
            let sc = structural_constants(n, gamma).unwrap();
            assert!(
                (lam - sc.c).abs() <= 1e-13 * sc.c,
                "n={n}, gamma={gamma}: lambda={lam} c={}",
                sc.c
            );
        }
    }

    #[test]
    fn kappa_reproduces_lambda_at_alpha_zero() {
        for (n, gamma, s) in [(3u32, 0.5, 1.2), (3, 0.3, 0.9), (4, 0.7, 1.5)] {
            let sc = structural_constants(n, gamma).unwrap();
            let k = kappa_general(n, gamma, 0.0, s, 1e-11).unwrap();
            let lam = lambda_power(n, gamma, s).unwrap();
            assert!(
                (sc.sigma * k - lam).abs() <= 1e-7 * lam.abs(),
                "n={n} gamma={gamma} s={s}: sigma*kappa = {}, lambda = {lam}",
                sc.sigma * k
            );
        }
    }

    #[test]
    fn c_alpha_sign_matches_alpha() {
        let tol = 1e-10;
        let neg = Parameters::new(3, 0.5, -0.4, -0.4).unwrap();
        let pos = Parameters::new(3, 0.5, 0.3, 0.3).unwrap();
        let zero = Parameters::new(3, 0.5, 0.0, 0.0).unwrap();
        assert!(c_alpha(&neg, tol).unwrap() > 0.0);
        assert!(c_alpha(&pos, tol).unwrap() < 0.0);
        assert!(c_alpha(&zero, tol).unwrap().abs() < 1e-8);
    }

    #[test]
    fn angular_factor_matches_jacobi_quadrature() {
        // The hypergeometric closed form against direct Gauss-Jacobi of the
        // defining integral, away from the rho -> 1 concentration.
        for (n, gamma, rho) in [(3u32, 0.5, 1.7), (2, 0.3, 2.4), (5, 0.8, 1.2)] {
            let nf = f64::from(n);
            let (xs, ws) = crate::quad::gauss_jacobi(256, 0.5 * (nf - 3.0), 0.5 * (nf - 3.0)).unwrap();
            let c = 0.5 * (nf + 2.0 * gamma);
            let direct: f64 = xs
                .iter()
                .zip(&ws)
                .map(|(s, w)| w * (1.0 + rho * rho - 2.0 * rho * s).powf(-c))
                .sum();
            let closed = angular_factor(n, gamma, rho, 1.0 - rho.powi(-2)).unwrap();
            assert!(
                (direct - closed).abs() <= 1e-9 * closed,
                "n={n} gamma={gamma} rho={rho}: GJ {direct} vs 2F1 {closed}"
            );
        }
    }

    #[test]
    fn kappa_error_scales_with_tolerance() {
        let p = Parameters::new(3, 0.5, -0.2, 0.1).unwrap();
        let loose = kappa(&p, 1e-7).unwrap();
        let tight = kappa(&p, 1e-12).unwrap();
        assert!((loose - tight).abs() <= 5e-7 * tight.abs());
    }
}

