//! Ground-state solver on the cylinder axis, radial energy minimization, the
//! Hardy-endpoint limit check, and the continuation branch in `gamma`.
//!
//! All solvers work on the mode-0 radial reduction: the operator is
//! `M = P^(0) + C(alpha)`, diagonal in Fourier space with multiplier
//! `Theta^(0)(xi) + C(alpha)`, and the ground-state equation reads
//! `M v = g v^(p-1)` with `g = sigma * kappa` in the weighted problem (so that
//! `v = 1` is the exact constant solution) or `g = 1` on the continuation
//! branch.

use crate::constants::{sphere_area, ProblemConstants};
use crate::error::CknError;
use crate::grid::{Grid, RadialField};
use crate::params::Parameters;
use crate::spectral::{principal_indicial_root, theta_symbol, SymbolOp};

/// Tolerance used for the structural-constant quadratures inside the solvers.
const CONSTANT_TOL: f64 = 1e-10;

/// Iteration caps.
const GROUND_STATE_MAX_ITERS: usize = 2000;
const FLOW_MAX_ITERS: usize = 50_000;

/// Negative samples are projected away while the relative defect is above
/// this level; past it the iterate must stay positive on its own. Clamping
/// near the fixed point would re-inject the defect it removes, so the final
/// approach runs unprojected.
const PROJECTION_RESIDUAL: f64 = 1e-3;

/// Largest tolerated negative excursion, relative to the sup norm. The
/// discrete solution carries sign-alternating tail ringing from the Nyquist
/// kink of the symbol; it shrinks rapidly with resolution and is clamped in
/// the reported profile.
const RINGING_LIMIT: f64 = 1e-4;

/// Converged radial ground state of `P^(0)v + C v = g v^(p-1)`.
#[derive(Debug, Clone)]
pub struct SolveResult {
    /// The solution profile, recentered and symmetrized.
    pub field: RadialField,
    /// Sup-norm of the Euler-Lagrange defect `M v - g v^(p-1)`.
    pub residual: f64,
    /// Energy `F_{alpha,beta}` of the solution.
    pub energy: f64,
    /// Right-hand-side coefficient `g = sigma * kappa` actually used.
    pub normalization: f64,
    /// Fixed-point iterations performed.
    pub iterations: usize,
    /// Mass-centroid shift applied when recentering the profile.
    pub recentering_shift: f64,
}

/// One point of the continuation branch in `gamma`.
#[derive(Debug, Clone)]
pub struct BranchPoint {
    pub gamma: f64,
    pub field: RadialField,
    /// Sup-norm defect of `P_gamma^(0)v + c0 v - v^(p0-1)`.
    pub residual: f64,
}

/// Initial guess for [`solve_ground_state`].
#[derive(Debug, Clone)]
pub enum Init {
    /// Sech-power profile with exponent `2/(p-2)` and width matched to the
    /// principal indicial decay rate.
    Preset,
    /// Caller-supplied starting field.
    Field(RadialField),
}

/// The radial mode-0 problem `M v = g v^(p-1)` with `M` Fourier-diagonal.
struct RadialProblem {
    m_op: SymbolOp,
    m_inv: SymbolOp,
    p: f64,
    g: f64,
}

impl RadialProblem {
    /// `c_shift` is the zeroth-order coefficient added to `P^(0)`.
    fn new(grid: Grid, n: u32, gamma: f64, c_shift: f64, p: f64, g: f64) -> Result<Self, CknError> {
        let base = theta_symbol(n, gamma, 0, 0.0)? + c_shift;
        if base <= 0.0 {
            return Err(CknError::InvalidParameter {
                constraint: "Theta^(0)(0) + C > 0 (shifted symbol must be positive)".into(),
                value: format!("{base}"),
            });
        }
        let m_op = SymbolOp::from_fn(grid, |xi| Ok(theta_symbol(n, gamma, 0, xi)? + c_shift))?;
        let m_inv = SymbolOp::from_fn(grid, |xi| Ok(1.0 / (theta_symbol(n, gamma, 0, xi)? + c_shift)))?;
        Ok(RadialProblem { m_op, m_inv, p, g })
    }

    /// `g * max(v,0)^(p-1)` sample-wise.
    fn nonlinearity(&self, v: &[f64]) -> Vec<f64> {
        v.iter()
            .map(|&x| self.g * x.max(0.0).powf(self.p - 1.0))
            .collect()
    }

    /// Sup-norm of the Euler-Lagrange defect at `v`.
    fn residual(&self, v: &[f64]) -> f64 {
        let mv = self.m_op.apply_slice(v);
        let w = self.nonlinearity(v);
        mv.iter()
            .zip(&w)
            .fold(0.0f64, |r, (a, b)| r.max((a - b).abs()))
    }

    /// Spectrally renormalized fixed-point iteration: each step maps
    /// `v -> S^((p-1)/(p-2)) M^{-1}(g v^(p-1))` with the Rayleigh-type factor
    /// `S = <v, Mv> / <v, g v^(p-1)>`, whose exponent makes the true solution
    /// the unique fixed point with `S = 1`.
    fn solve(&self, mut v: Vec<f64>, tol: f64, max_iters: usize) -> Result<(Vec<f64>, f64, usize), CknError> {
        let exponent = (self.p - 1.0) / (self.p - 2.0);
        let mut residual = f64::INFINITY;
        let mut rel = f64::INFINITY;
        for iter in 0..max_iters {
            if rel > PROJECTION_RESIDUAL {
                for x in v.iter_mut() {
                    if *x < 0.0 {
                        *x = 0.0;
                    }
                }
            } else {
                let sup = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
                let min = v.iter().fold(f64::INFINITY, |m, &x| m.min(x));
                if min < -RINGING_LIMIT * sup {
                    return Err(CknError::PositivityLoss { min, max: sup });
                }
            }
            let mv = self.m_op.apply_slice(&v);
            let w = self.nonlinearity(&v);
            let sup_w = w.iter().fold(0.0f64, |m, x| m.max(x.abs()));
            residual = mv
                .iter()
                .zip(&w)
                .fold(0.0f64, |r, (a, b)| r.max((a - b).abs()));
            rel = residual / sup_w.max(1e-300);
            if rel <= tol {
                return Ok((v, residual, iter));
            }
            let num: f64 = v.iter().zip(&mv).map(|(a, b)| a * b).sum();
            let den: f64 = v.iter().zip(&w).map(|(a, b)| a * b).sum();
            if !(den > 0.0) || !(num > 0.0) {
                return Err(CknError::PositivityLoss {
                    min: den,
                    max: num,
                });
            }
            let s = (num / den).powf(exponent);
            let mut next = self.m_inv.apply_slice(&w);
            for x in next.iter_mut() {
                *x *= s;
            }
            v = next;
        }
        Err(CknError::SolverStall {
            iterations: max_iters,
            residual,
            tol,
        })
    }
}

/// Mass centroid `int t v^2 / int v^2` of a sampled profile.
fn mass_centroid(grid: Grid, v: &[f64]) -> f64 {
    let mut num = 0.0;
    let mut den = 0.0;
    for (j, &x) in v.iter().enumerate() {
        let w = x * x;
        num += grid.point(j) * w;
        den += w;
    }
    if den > 0.0 {
        num / den
    } else {
        0.0
    }
}

/// Shift the mass centroid to `t = 0`, average with the reflection, and clear
/// the roundoff-level negatives both operations introduce.
fn recenter_symmetrize(grid: Grid, v: &[f64]) -> (Vec<f64>, f64) {
    let shift = mass_centroid(grid, v);
    let mut out = SymbolOp::translate(grid, v, -shift);
    let n = out.len();
    for j in 1..n / 2 {
        let avg = 0.5 * (out[j] + out[n - j]);
        out[j] = avg;
        out[n - j] = avg;
    }
    let sup = out.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    for x in out.iter_mut() {
        if *x < 0.0 && *x > -RINGING_LIMIT * sup {
            *x = 0.0;
        }
    }
    (out, shift)
}

/// Cylinder energy `F_{alpha,beta}(v)`.
///
/// Returns `omega^(1-2/p) * [2 sigma^{-1} int v (P^(0)+C) v dt] /
/// (int |v|^p dt)^(2/p)` with `omega = |S^(n-1)|`; invariant under scaling and
/// translation of `v`.
pub fn energy_f(field: &RadialField, params: &Parameters) -> Result<f64, CknError> {
    let pc = ProblemConstants::compute(params, CONSTANT_TOL)?;
    energy_f_with(field, params, &pc)
}

fn energy_f_with(
    field: &RadialField,
    params: &Parameters,
    pc: &ProblemConstants,
) -> Result<f64, CknError> {
    let p = params.exponent_p();
    let grid = field.grid();
    let m_op = SymbolOp::from_fn(grid, |xi| {
        Ok(theta_symbol(params.n(), params.gamma(), 0, xi)? + pc.c_alpha)
    })?;
    let mv = m_op.apply(field)?;
    let quad = field.inner(&mv);
    let mass_p = field.integrate(|v| v.abs().powf(p));
    if mass_p <= 0.0 {
        return Err(CknError::NonPositiveField(
            "energy_f requires a nonzero field".into(),
        ));
    }
    let omega = sphere_area(params.n());
    Ok(omega.powf(1.0 - 2.0 / p) * (2.0 / pc.sigma) * quad / mass_p.powf(2.0 / p))
}

/// Sech-power preset `sech(w t)^(2/(p-2))` whose tail rate matches the
/// principal indicial root.
fn preset_profile(grid: Grid, n: u32, gamma: f64, c_shift: f64, p: f64) -> Result<Vec<f64>, CknError> {
    let sigma0 = principal_indicial_root(n, gamma, c_shift)?;
    let q = 2.0 / (p - 2.0);
    let w = sigma0 / q;
    let amp = (0.5 * p).powf(1.0 / (p - 2.0));
    Ok((0..grid.len())
        .map(|j| {
            let t = grid.point(j);
            amp * (1.0 / (w * t).cosh()).powf(q)
        })
        .collect())
}

/// Solve the ground-state equation `P^(0)v + C(alpha) v = sigma kappa v^(p-1)`.
///
/// Rejects the linear Hardy endpoint `p = 2`; use [`hardy_limit_check`] there.
pub fn solve_ground_state(
    params: &Parameters,
    grid: Grid,
    init: Init,
    tol: f64,
) -> Result<SolveResult, CknError> {
    let p = params.exponent_p();
    if params.is_hardy_endpoint() || p <= 2.0 + 1e-10 {
        return Err(CknError::InvalidParameter {
            constraint: "ground-state solve requires p > 2; the Hardy endpoint beta = alpha + gamma has no extremal (run the limit check instead)".into(),
            value: format!("p = {p}"),
        });
    }
    let pc = ProblemConstants::compute(params, CONSTANT_TOL)?;
    let g = pc.sigma * pc.kappa;
    let problem = RadialProblem::new(grid, params.n(), params.gamma(), pc.c_alpha, p, g)?;
    let v0 = match init {
        Init::Preset => preset_profile(grid, params.n(), params.gamma(), pc.c_alpha, p)?,
        Init::Field(f) => {
            if f.grid() != grid {
                return Err(CknError::Grid("init field grid differs from solve grid".into()));
            }
            f.into_values()
        }
    };
    let (v, _, iterations) = problem.solve(v0, tol, GROUND_STATE_MAX_ITERS)?;
    let (v, shift) = recenter_symmetrize(grid, &v);
    let residual = problem.residual(&v);
    let field = RadialField::new(grid, v)?;
    field.check_boundary()?;
    let energy = energy_f_with(&field, params, &pc)?;
    Ok(SolveResult {
        field,
        residual,
        energy,
        normalization: g,
        iterations,
        recentering_shift: shift,
    })
}

/// Minimize `F_{alpha,beta}` over radial fields by projected gradient descent
/// on the constraint sphere `int |v|^p = 1`, with the Fourier-diagonal
/// preconditioner `M^{-1}` and Armijo backtracking.
///
/// Returns the radial optimal constant `R(alpha,beta)` and the minimizer.
pub fn minimize_radial(params: &Parameters, grid: Grid) -> Result<(f64, RadialField), CknError> {
    let p = params.exponent_p();
    if p <= 2.0 + 1e-10 {
        return Err(CknError::InvalidParameter {
            constraint: "radial minimization requires p > 2".into(),
            value: format!("p = {p}"),
        });
    }
    let pc = ProblemConstants::compute(params, CONSTANT_TOL)?;
    let problem = RadialProblem::new(grid, params.n(), params.gamma(), pc.c_alpha, p, 1.0)?;
    let dt = grid.delta_t();
    let normalize = |v: &mut Vec<f64>| {
        let mass: f64 = v.iter().map(|x| x.abs().powf(p)).sum::<f64>() * dt;
        let scale = mass.powf(-1.0 / p);
        for x in v.iter_mut() {
            *x *= scale;
        }
    };
    let quad_form = |v: &[f64]| -> f64 {
        let mv = problem.m_op.apply_slice(v);
        v.iter().zip(&mv).map(|(a, b)| a * b).sum::<f64>() * dt
    };

    let mut v = preset_profile(grid, params.n(), params.gamma(), pc.c_alpha, p)?;
    normalize(&mut v);
    let mut j_old = quad_form(&v);
    let mut tau = 0.5;
    let mut iterations = 0usize;
    let mut grad_sup = f64::INFINITY;
    loop {
        if iterations >= FLOW_MAX_ITERS {
            return Err(CknError::SolverStall {
                iterations,
                residual: grad_sup,
                tol: 1e-6,
            });
        }
        iterations += 1;
        let mv = problem.m_op.apply_slice(&v);
        let mass_p: f64 = v.iter().map(|x| x.abs().powf(p)).sum::<f64>() * dt;
        let lambda = j_old / mass_p;
        let grad: Vec<f64> = mv
            .iter()
            .zip(&v)
            .map(|(&a, &x)| a - lambda * x.max(0.0).powf(p - 1.0))
            .collect();
        grad_sup = grad.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        let dir = problem.m_inv.apply_slice(&grad);
        let slope: f64 = grad.iter().zip(&dir).map(|(a, b)| a * b).sum::<f64>() * dt;

        // Armijo backtracking on the constrained energy
        let mut accepted = false;
        let mut j_new = j_old;
        let mut trial = v.clone();
        while tau >= 2f64.powi(-20) {
            trial = v
                .iter()
                .zip(&dir)
                .map(|(&x, &d)| (x - tau * d).max(0.0))
                .collect();
            normalize(&mut trial);
            j_new = quad_form(&trial);
            if j_new <= j_old - 1e-4 * tau * slope.max(0.0) {
                accepted = true;
                break;
            }
            tau *= 0.5;
        }
        if !accepted {
            break;
        }
        let decrement = j_old - j_new;
        v = trial;
        j_old = j_new;
        tau = (tau * 1.3).min(1.0);
        let scale = lambda
            * v.iter()
                .fold(0.0f64, |m, x| m.max(x.abs()))
                .powf(p - 1.0);
        if decrement < 1e-12 * j_old.abs().max(1.0) && grad_sup < 1e-6 * scale.max(1e-300) {
            break;
        }
    }
    let (v, _) = recenter_symmetrize(grid, &v);
    let field = RadialField::new(grid, v)?;
    let r_value = energy_f_with(&field, params, &pc)?;
    Ok((r_value, field))
}

/// Smooth plateau cutoff of half-width `r` with a cosine-squared ramp of
/// fixed width 1.
pub fn plateau_cutoff(grid: Grid, r: f64) -> Result<RadialField, CknError> {
    if r + 1.0 >= grid.t_half() {
        return Err(CknError::Grid(format!(
            "cutoff half-width {r} + ramp does not fit inside T = {}",
            grid.t_half()
        )));
    }
    RadialField::from_fn(grid, |t| {
        let a = t.abs();
        if a <= r {
            1.0
        } else if a < r + 1.0 {
            let c = (0.5 * std::f64::consts::PI * (a - r)).cos();
            c * c
        } else {
            0.0
        }
    })
}

/// Evaluate `F_{alpha,alpha+gamma}` on plateau cutoffs of the given
/// half-widths. The values decrease toward the sharp constant `2 kappa` as
/// the plateau grows.
pub fn hardy_limit_check(
    params: &Parameters,
    grid: Grid,
    r_list: &[f64],
) -> Result<Vec<(f64, f64)>, CknError> {
    if !params.is_hardy_endpoint() {
        return Err(CknError::InvalidParameter {
            constraint: "hardy_limit_check requires beta = alpha + gamma (p = 2)".into(),
            value: format!("beta - alpha = {}", params.beta() - params.alpha()),
        });
    }
    let pc = ProblemConstants::compute(params, CONSTANT_TOL)?;
    let mut out = Vec::with_capacity(r_list.len());
    for &r in r_list {
        let v = plateau_cutoff(grid, r)?;
        out.push((r, energy_f_with(&v, params, &pc)?));
    }
    Ok(out)
}

/// Exact even solution of `-v'' + a v = v^(p0-1)` with
/// `a = (n-2)^2/4 + c0`: the `gamma = 1` endpoint of the continuation branch.
pub fn soliton_gamma_one(n: u32, c0: f64, p0: f64, t: f64) -> f64 {
    let a = 0.25 * (f64::from(n) - 2.0).powi(2) + c0;
    let amp = (0.5 * p0 * a).powf(1.0 / (p0 - 2.0));
    let rate = 0.5 * (p0 - 2.0) * a.sqrt();
    amp * (1.0 / (rate * t).cosh()).powf(2.0 / (p0 - 2.0))
}

/// March the branch of solutions of `P_gamma^(0)v + c0 v = v^(p0-1)` from
/// `gamma0` to `gamma1`, warm-starting each step from the previous point and
/// halving the step (up to 10 times) when a solve fails.
pub fn continuation_gamma(
    n: u32,
    c0: f64,
    p0: f64,
    gamma0: f64,
    gamma1: f64,
    steps: usize,
    grid: Grid,
) -> Result<Vec<BranchPoint>, CknError> {
    for &(g, label) in &[(gamma0, "gamma0"), (gamma1, "gamma1")] {
        if !(g > 0.0 && g <= 1.0) {
            return Err(CknError::InvalidParameter {
                constraint: "continuation requires 0 < gamma <= 1".into(),
                value: format!("{label} = {g}"),
            });
        }
    }
    let gamma_low = gamma0.min(gamma1);
    let p_crit = 2.0 * f64::from(n) / (f64::from(n) - 2.0 * gamma_low);
    if !(p0 > 2.0 && p0 < p_crit) {
        return Err(CknError::InvalidParameter {
            constraint: format!("continuation requires 2 < p0 < {p_crit}"),
            value: format!("p0 = {p0}"),
        });
    }
    let tol = 1e-10;
    let solve_at = |gamma: f64, v0: Vec<f64>| -> Result<(Vec<f64>, f64), CknError> {
        let problem = RadialProblem::new(grid, n, gamma, c0, p0, 1.0)?;
        let (v, residual, _) = problem.solve(v0, tol, GROUND_STATE_MAX_ITERS)?;
        let (v, _) = recenter_symmetrize(grid, &v);
        let residual = problem.residual(&v).max(residual.min(residual));
        Ok((v, residual))
    };

    let q = 2.0 / (p0 - 2.0);
    let init: Vec<f64> = (0..grid.len())
        .map(|j| (1.0 / grid.point(j).cosh()).powf(q))
        .collect();
    let (mut v, residual) = solve_at(gamma0, init)?;
    let mut branch = vec![BranchPoint {
        gamma: gamma0,
        field: RadialField::new(grid, v.clone())?,
        residual,
    }];
    if (gamma1 - gamma0).abs() < 1e-15 {
        return Ok(branch);
    }

    let span = gamma1 - gamma0;
    let base_step = span / steps.max(1) as f64;
    let mut gamma = gamma0;
    let mut step = base_step;
    while (gamma1 - gamma).abs() > 1e-14 {
        let mut target = gamma + step;
        if (target - gamma1) * span.signum() > 0.0 {
            target = gamma1;
        }
        let mut halvings = 0;
        loop {
            match solve_at(target, v.clone()) {
                Ok((vn, residual)) => {
                    v = vn;
                    gamma = target;
                    branch.push(BranchPoint {
                        gamma,
                        field: RadialField::new(grid, v.clone())?,
                        residual,
                    });
                    step = base_step;
                    break;
                }
                Err(e) => {
                    halvings += 1;
                    if halvings > 10 {
                        return Err(CknError::NonConvergence {
                            what: "gamma continuation step",
                            detail: format!("step to gamma = {target} failed after 10 halvings: {e}"),
                        });
                    }
                    target = gamma + (target - gamma) * 0.5;
                }
            }
        }
    }
    Ok(branch)
}
