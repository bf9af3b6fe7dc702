//! The bundled validation suite: twelve oracle- and property-based criteria
//! covering the constants, the symbol, the operator routes, the solvers, and
//! the stability classification. Each criterion is independently callable and
//! reports a one-line pass/fail summary.

use crate::constants::{
    bubble_constant, kappa_general, lambda_power, sphere_area, structural_constants,
    ProblemConstants,
};
use crate::grid::{Grid, RadialField};
use crate::params::Parameters;
use crate::quad;
use crate::solver::{
    continuation_gamma, hardy_limit_check, solve_ground_state, soliton_gamma_one, Init,
};
use crate::specfun;
use crate::spectral::{
    apply_p0_kernel_oracle, apply_pm, principal_indicial_root, spectral_derivative, theta_symbol,
};
use crate::stability::{assemble_linearized, lambda1_sign, lowest_eigs, Parity, Verdict};

/// Outcome of one validation criterion.
#[derive(Debug, Clone)]
pub struct CriterionOutcome {
    pub index: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

const NAMES: [&str; 12] = [
    "constant-identity",
    "quadrature-vs-closed-form",
    "symbol-endpoints",
    "operator-cross-validation",
    "bubble-regression",
    "indicial-decay",
    "non-degeneracy",
    "perron-frobenius-morse",
    "symmetry-breaking-signs",
    "hardy-endpoint",
    "gamma-continuation",
    "evenness-monotonicity",
];

type Check = Result<String, String>;

fn fail<E: std::fmt::Display>(e: E) -> String {
    format!("{e}")
}

/// 1. `sigma kappa(alpha = 0) = c_{n,gamma}` over an (n, gamma) grid.
fn constant_identity() -> Check {
    let mut worst = 0.0f64;
    for n in [2u32, 3, 4, 5] {
        for gamma in [0.25, 0.5, 0.75] {
            let sc = structural_constants(n, gamma).map_err(fail)?;
            let nu = 0.5 * (f64::from(n) - 2.0 * gamma);
            let k = kappa_general(n, gamma, 0.0, nu, 1e-9).map_err(fail)?;
            let rel = (sc.sigma * k - sc.c).abs() / sc.c;
            worst = worst.max(rel);
        }
    }
    if worst <= 1e-6 {
        Ok(format!("worst relative defect {worst:.2e} over 12 (n, gamma) pairs"))
    } else {
        Err(format!("relative defect {worst:.2e} exceeds 1e-6"))
    }
}

/// 2. `sigma kappa_general(alpha = 0, s)` against the closed-form multiplier
/// `lambda(s)`, after `lambda(s)` is confirmed by a brute-force evaluation of
/// the defining integral along an independent quadrature route.
fn quadrature_vs_closed_form() -> Check {
    let (n, gamma) = (3u32, 0.5);
    let nf = f64::from(n);
    let sc = structural_constants(n, gamma).map_err(fail)?;
    let omega = sphere_area(n - 1);
    let w_ang = std::f64::consts::PI.sqrt()
        * (specfun::ln_abs_gamma_sign(0.5 * (nf - 1.0)).0 - specfun::ln_abs_gamma_sign(0.5 * nf).0)
            .exp();
    let mut worst = 0.0f64;
    for s in [0.6, 1.0, 1.5] {
        let oracle = lambda_power(n, gamma, s).map_err(fail)?;
        // brute force: fixed-interval tanh-sinh in tau = ln rho over the
        // defining integral, independent of the exp-sinh production route
        let brute = quad::tanh_sinh(
            |tau| {
                let cut = -(-s * tau).exp_m1();
                let branch = (-2.0 * gamma * tau).exp() - (-(nf - s) * tau).exp();
                let y = -(-2.0 * tau).exp_m1();
                let f = specfun::hyp2f1_from_unit(
                    0.5 * (nf + 2.0 * gamma),
                    1.0 + gamma,
                    0.5 * nf,
                    y,
                )
                .unwrap_or(f64::NAN);
                cut * branch * w_ang * f
            },
            0.0,
            60.0,
            1e-10,
        )
        .map_err(fail)?;
        let brute_lambda = sc.sigma * omega * brute.value;
        let rel_brute = (brute_lambda - oracle).abs() / oracle.abs();
        if rel_brute > 1e-6 {
            return Err(format!(
                "brute-force integral disagrees with lambda({s}): rel {rel_brute:.2e}"
            ));
        }
        let k = kappa_general(n, gamma, 0.0, s, 1e-9).map_err(fail)?;
        worst = worst.max((sc.sigma * k - oracle).abs() / oracle.abs());
    }
    if worst <= 1e-6 {
        Ok(format!("worst relative defect {worst:.2e} at three homogeneities"))
    } else {
        Err(format!("relative defect {worst:.2e} exceeds 1e-6"))
    }
}

/// 3. `Theta^(0)(0) = c_{n,gamma}` and the high-frequency power law.
fn symbol_endpoints() -> Check {
    let mut worst_zero = 0.0f64;
    for n in [2u32, 3, 4, 5] {
        for gamma in [0.25, 0.5, 0.75] {
            let sc = structural_constants(n, gamma).map_err(fail)?;
            let th = theta_symbol(n, gamma, 0, 0.0).map_err(fail)?;
            worst_zero = worst_zero.max((th - sc.c).abs() / sc.c);
        }
    }
    if worst_zero > 1e-12 {
        return Err(format!("Theta^(0)(0) defect {worst_zero:.2e} exceeds 1e-12"));
    }
    let xi = 1e3;
    for n in [2u32, 3, 4, 5] {
        for gamma in [0.25, 0.5, 0.75] {
            for m in [0u32, 1, 2] {
                let th = theta_symbol(n, gamma, m, xi).map_err(fail)?;
                let law = (f64::from(m).powi(2) + xi * xi).powf(gamma);
                let ratio = th / law;
                if !(0.99..=1.01).contains(&ratio) {
                    return Err(format!(
                        "power-law ratio {ratio} at n={n}, gamma={gamma}, m={m}"
                    ));
                }
            }
        }
    }
    Ok(format!(
        "zero-frequency defect {worst_zero:.2e}; power-law ratios within 1% at |xi| = 1e3"
    ))
}

/// 4. FFT symbol route against the kernel-quadrature oracle on a Gaussian.
fn operator_cross_validation() -> Check {
    // the kernel oracle's near-field model converges like dt^{3 - 2 gamma};
    // gamma = 0.7 needs the fine grid to sit safely under the gate
    let grid = Grid::new(14.0, 2048).map_err(fail)?;
    let n = 3u32;
    let mut worst = 0.0f64;
    for gamma in [0.3, 0.5, 0.7] {
        let sc = structural_constants(n, gamma).map_err(fail)?;
        let f = RadialField::from_fn(grid, |t| (-0.6 * t * t).exp()).map_err(fail)?;
        let spectral_route = apply_pm(&f, n, gamma, 0).map_err(fail)?;
        let kernel_route = apply_p0_kernel_oracle(&f, n, gamma, &sc).map_err(fail)?;
        let mut num = 0.0;
        let mut den = 0.0;
        for (a, b) in spectral_route.values().iter().zip(kernel_route.values()) {
            num += (a - b).powi(2);
            den += a.powi(2);
        }
        worst = worst.max((num / den).sqrt());
    }
    if worst <= 1e-4 {
        Ok(format!("worst relative L2 route difference {worst:.2e}"))
    } else {
        Err(format!("route difference {worst:.2e} exceeds 1e-4"))
    }
}

/// 5. The bubble is an exact unweighted solution and the solver recovers it.
fn bubble_regression() -> Check {
    let (n, gamma) = (3u32, 0.5);
    let grid = Grid::new(20.0, 2048).map_err(fail)?;
    let e = 0.5 * (f64::from(n) - 2.0 * gamma);
    let bubble = |t: f64| (2.0 * t.cosh()).powf(-e);
    let v = RadialField::from_fn(grid, bubble).map_err(fail)?;
    let pv = apply_pm(&v, n, gamma, 0).map_err(fail)?;
    let lam = bubble_constant(n, gamma).map_err(fail)?;
    let pexp = (f64::from(n) + 2.0 * gamma) / (f64::from(n) - 2.0 * gamma);
    let defect = pv
        .values()
        .iter()
        .zip(v.values())
        .fold(0.0f64, |m, (&a, &x)| m.max((a - lam * x.powf(pexp)).abs()));
    if defect > 1e-6 * v.max_abs() {
        return Err(format!("Euler-Lagrange defect {defect:.2e}"));
    }
    let params = Parameters::new(n, gamma, 0.0, 0.0).map_err(fail)?;
    let res = solve_ground_state(&params, grid, Init::Preset, 1e-11).map_err(fail)?;
    // the solver normalization g = sigma kappa rescales the bubble by
    // (Lambda / c)^(1/(p-2))
    let sc = structural_constants(n, gamma).map_err(fail)?;
    let p = params.exponent_p();
    let scale = (lam / sc.c).powf(1.0 / (p - 2.0));
    let worst = res
        .field
        .values()
        .iter()
        .enumerate()
        .fold(0.0f64, |m, (j, &x)| {
            m.max((x - scale * bubble(grid.point(j))).abs())
        });
    let rel = worst / res.field.max_abs();
    if rel <= 1e-5 {
        Ok(format!(
            "exact-solution defect {defect:.2e}; solver recovery {rel:.2e} sup-relative"
        ))
    } else {
        Err(format!("solver recovery defect {rel:.2e} exceeds 1e-5"))
    }
}

/// Log-linear tail fit restricted to samples above a noise floor.
fn tail_rate(field: &RadialField, t1: f64, t2: f64, floor_rel: f64) -> Result<f64, String> {
    let grid = field.grid();
    let floor = floor_rel * field.max_abs();
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for (j, &v) in field.values().iter().enumerate() {
        let t = grid.point(j);
        if t >= t1 && t <= t2 && v > floor {
            xs.push(t);
            ys.push(v.ln());
        }
    }
    if xs.len() < 8 {
        return Err(format!("only {} usable tail samples in ({t1}, {t2})", xs.len()));
    }
    let n = xs.len() as f64;
    let sx: f64 = xs.iter().sum();
    let sy: f64 = ys.iter().sum();
    let sxx: f64 = xs.iter().map(|x| x * x).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| x * y).sum();
    Ok(-(n * sxy - sx * sy) / (n * sxx - sx * sx))
}

/// 6. Indicial roots: the unweighted closed value and the weighted tail rate.
fn indicial_decay() -> Check {
    for (n, gamma) in [(3u32, 0.5), (4, 0.25), (2, 0.75), (5, 0.75)] {
        let s0 = principal_indicial_root(n, gamma, 0.0).map_err(fail)?;
        let exact = 0.5 * (f64::from(n) - 2.0 * gamma);
        if (s0 - exact).abs() > 1e-8 {
            return Err(format!(
                "sigma_0({n}, {gamma}) = {s0} vs closed value {exact}"
            ));
        }
    }
    let params = Parameters::new(3, 0.5, -0.9, -0.6).map_err(fail)?;
    let grid = Grid::new(16.0, 4096).map_err(fail)?;
    let res = solve_ground_state(&params, grid, Init::Preset, 1e-11).map_err(fail)?;
    let pc = ProblemConstants::compute(&params, 1e-10).map_err(fail)?;
    let s0 = principal_indicial_root(3, 0.5, pc.c_alpha).map_err(fail)?;
    // below the periodization-ringing floor the samples carry no decay
    // information; the fit uses the clean part of the window
    let rate = tail_rate(&res.field, 8.0, 14.0, 1e-10)?;
    let rel = (rate - s0).abs() / s0;
    if rel <= 0.02 {
        Ok(format!(
            "closed values to 1e-8; weighted tail rate {rate:.4} vs sigma_0 {s0:.4} ({rel:.2e})"
        ))
    } else {
        Err(format!("tail rate {rate} deviates from sigma_0 {s0} by {rel:.2e}"))
    }
}

fn symmetric_range_points() -> [(f64, f64); 3] {
    [(0.3, 0.5), (0.15, 0.4), (0.45, 0.65)]
}

/// 7. Non-degeneracy: odd-sector near-kernel aligned with `v_t`.
fn non_degeneracy() -> Check {
    let grid = Grid::new(44.0, 1024).map_err(fail)?;
    let mut detail = String::new();
    for (alpha, beta) in symmetric_range_points() {
        let params = Parameters::new(3, 0.5, alpha, beta).map_err(fail)?;
        let solve = solve_ground_state(&params, grid, Init::Preset, 1e-11).map_err(fail)?;
        let op0 = assemble_linearized(0, &solve, &params).map_err(fail)?;
        let rep = lowest_eigs(&op0, 4).map_err(fail)?;
        let scale = rep.eigenvalues.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        let odd_idx = rep
            .parity_tags
            .iter()
            .position(|&t| t == Parity::Odd)
            .ok_or_else(|| format!("no odd eigenfunction at alpha = {alpha}"))?;
        let l_odd = rep.eigenvalues[odd_idx];
        if l_odd.abs() > 1e-4 * scale.max(1.0) {
            return Err(format!("odd eigenvalue {l_odd:.2e} at alpha = {alpha}"));
        }
        let vt = spectral_derivative(grid, solve.field.values());
        let w = &rep.eigenfunctions[odd_idx];
        let dot: f64 = vt.iter().zip(w).map(|(a, b)| a * b).sum();
        let nv: f64 = vt.iter().map(|x| x * x).sum::<f64>().sqrt();
        let nw: f64 = w.iter().map(|x| x * x).sum::<f64>().sqrt();
        let cosine = dot.abs() / (nv * nw);
        if cosine < 0.999 {
            return Err(format!("cosine similarity {cosine} at alpha = {alpha}"));
        }
        detail.push_str(&format!("alpha={alpha}: |l_odd|={:.1e} cos={cosine:.5}; ", l_odd.abs()));
    }
    Ok(detail)
}

/// 8. Perron-Frobenius ground mode and total Morse index one.
fn perron_frobenius_morse() -> Check {
    let grid = Grid::new(44.0, 1024).map_err(fail)?;
    for (alpha, beta) in symmetric_range_points() {
        let params = Parameters::new(3, 0.5, alpha, beta).map_err(fail)?;
        let solve = solve_ground_state(&params, grid, Init::Preset, 1e-11).map_err(fail)?;
        let op0 = assemble_linearized(0, &solve, &params).map_err(fail)?;
        let rep0 = lowest_eigs(&op0, 2).map_err(fail)?;
        let gap = (rep0.eigenvalues[1] - rep0.eigenvalues[0]) / rep0.eigenvalues[0].abs();
        if gap < 1e-4 {
            return Err(format!("lambda_0 not simple at alpha = {alpha}: gap {gap:.2e}"));
        }
        if !rep0.ground_eigenfunction_sign_definite {
            return Err(format!("ground eigenfunction changes sign at alpha = {alpha}"));
        }
        let op1 = assemble_linearized(1, &solve, &params).map_err(fail)?;
        let rep1 = lowest_eigs(&op1, 2).map_err(fail)?;
        let certificate =
            crate::stability::higher_mode_certificate(&solve, &params).map_err(fail)?;
        let total = rep0.morse_index + rep1.morse_index;
        if total != 1 || certificate <= 0.0 {
            return Err(format!(
                "Morse count {total} (certificate {certificate:.3}) at alpha = {alpha}"
            ));
        }
    }
    Ok("lambda_0 simple, sign-definite ground mode, Morse index 1 at three points".into())
}

/// 9. Signs of `lambda_1` on both sides and the Rayleigh bound.
fn symmetry_breaking_signs() -> Check {
    let broken = {
        let params = Parameters::new(3, 0.5, -0.9, -0.89).map_err(fail)?;
        let grid = Grid::new(14.0, 1024).map_err(fail)?;
        let solve = solve_ground_state(&params, grid, Init::Preset, 1e-10).map_err(fail)?;
        lambda1_sign(&solve, &params).map_err(fail)?
    };
    if broken.verdict != Verdict::SymmetryBroken {
        return Err(format!(
            "expected SymmetryBroken at alpha = -0.9, got lambda_1 = {}",
            broken.lambda1
        ));
    }
    let stable = {
        let params = Parameters::new(3, 0.5, 0.3, 0.5).map_err(fail)?;
        let grid = Grid::new(44.0, 1024).map_err(fail)?;
        let solve = solve_ground_state(&params, grid, Init::Preset, 1e-10).map_err(fail)?;
        lambda1_sign(&solve, &params).map_err(fail)?
    };
    if stable.verdict != Verdict::RadialStable {
        return Err(format!(
            "expected RadialStable at alpha = 0.3, got lambda_1 = {}",
            stable.lambda1
        ));
    }
    for (label, rep) in [("broken", &broken), ("stable", &stable)] {
        if rep.lambda1 > rep.rayleigh_bound + 1e-8 {
            return Err(format!(
                "{label}: lambda_1 {} exceeds Rayleigh bound {}",
                rep.lambda1, rep.rayleigh_bound
            ));
        }
    }
    Ok(format!(
        "lambda_1 = {:.4} (broken) / {:.4} (stable), both under the Rayleigh bound",
        broken.lambda1, stable.lambda1
    ))
}

/// 10. Hardy endpoint: cutoff energies bracket and approach `2 kappa`.
fn hardy_endpoint() -> Check {
    let params = Parameters::new(3, 0.5, -0.3, 0.2).map_err(fail)?;
    let grid = Grid::new(48.0, 4096).map_err(fail)?;
    let pc = ProblemConstants::compute(&params, 1e-10).map_err(fail)?;
    let two_kappa = 2.0 * pc.kappa;
    let vals = hardy_limit_check(&params, grid, &[5.0, 10.0, 20.0, 40.0]).map_err(fail)?;
    for w in vals.windows(2) {
        if w[1].1 >= w[0].1 {
            return Err(format!("values not decreasing: {vals:?}"));
        }
    }
    for &(r, f) in &vals {
        if f < two_kappa * (1.0 - 1e-10) {
            return Err(format!("F(v_{r}) = {f} below 2 kappa = {two_kappa}"));
        }
    }
    let extrap = 2.0 * vals[3].1 - vals[2].1;
    let rel = (extrap - two_kappa).abs() / two_kappa;
    if rel <= 0.01 {
        Ok(format!(
            "monotone toward 2 kappa = {two_kappa:.6}; extrapolated defect {rel:.2e}"
        ))
    } else {
        Err(format!("extrapolated limit off by {rel:.2e}"))
    }
}

/// 11. Continuation branch to `gamma = 1` hits the verified soliton.
fn gamma_continuation() -> Check {
    let grid = Grid::new(20.0, 512).map_err(fail)?;
    let branch = continuation_gamma(3, 1.0, 4.0, 0.9, 1.0, 5, grid).map_err(fail)?;
    let last = branch.last().ok_or("empty branch")?;
    let sup = last.field.max_abs();
    let worst = last
        .field
        .values()
        .iter()
        .enumerate()
        .fold(0.0f64, |m, (j, &x)| {
            m.max((x - soliton_gamma_one(3, 1.0, 4.0, grid.point(j))).abs())
        });
    if worst > 1e-3 * sup {
        return Err(format!("endpoint defect {:.2e} sup-relative", worst / sup));
    }
    let mut mass2 = Vec::new();
    let mut mass_p = Vec::new();
    for bp in &branch {
        mass2.push(bp.field.integrate(|x| x * x));
        mass_p.push(bp.field.integrate(|x| x.max(0.0).powi(4)));
    }
    for masses in [&mass2, &mass_p] {
        let max = masses.iter().cloned().fold(f64::MIN, f64::max);
        let min = masses.iter().cloned().fold(f64::MAX, f64::min);
        if max / min > 10.0 {
            return Err(format!("branch quantity ratio {} exceeds 10", max / min));
        }
    }
    Ok(format!(
        "endpoint within {:.2e} of the soliton; branch masses bounded",
        worst / sup
    ))
}

/// 12. Evenness and monotonicity of recentered minimizers.
fn evenness_monotonicity() -> Check {
    let cases = [
        (Parameters::new(3, 0.5, 0.0, 0.0), Grid::new(20.0, 2048)),
        (Parameters::new(3, 0.5, -0.9, -0.6), Grid::new(16.0, 2048)),
    ];
    for (params, grid) in cases {
        let params = params.map_err(fail)?;
        let grid = grid.map_err(fail)?;
        let res = solve_ground_state(&params, grid, Init::Preset, 1e-11).map_err(fail)?;
        let asym = res.field.asymmetry();
        if asym > 1e-6 * res.field.max_abs() {
            return Err(format!("asymmetry {asym:.2e} at alpha = {}", params.alpha()));
        }
        let v = res.field.values();
        let mid = grid.len() / 2;
        for j in mid..grid.len() - 1 {
            if v[j + 1] > v[j] + 1e-10 * res.field.max_abs() {
                return Err(format!(
                    "profile not monotone at t = {} (alpha = {})",
                    grid.point(j),
                    params.alpha()
                ));
            }
        }
    }
    Ok("recentered profiles even to 1e-6 and non-increasing on (0, T)".into())
}

/// Run one criterion by its 1-based index.
pub fn run_criterion(index: usize) -> CriterionOutcome {
    let result = match index {
        1 => constant_identity(),
        2 => quadrature_vs_closed_form(),
        3 => symbol_endpoints(),
        4 => operator_cross_validation(),
        5 => bubble_regression(),
        6 => indicial_decay(),
        7 => non_degeneracy(),
        8 => perron_frobenius_morse(),
        9 => symmetry_breaking_signs(),
        10 => hardy_endpoint(),
        11 => gamma_continuation(),
        12 => evenness_monotonicity(),
        _ => Err(format!("no criterion {index}")),
    };
    let name = NAMES.get(index - 1).copied().unwrap_or("unknown");
    match result {
        Ok(detail) => CriterionOutcome {
            index,
            name,
            passed: true,
            detail,
        },
        Err(detail) => CriterionOutcome {
            index,
            name,
            passed: false,
            detail,
        },
    }
}

/// Run the full suite in order.
pub fn run_all() -> Vec<CriterionOutcome> {
    (1..=12).map(run_criterion).collect()
}
