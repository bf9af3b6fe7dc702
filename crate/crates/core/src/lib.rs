//! Pseudospectral toolkit for the fractional Caffarelli–Kohn–Nirenberg (CKN)
//! inequality in its cylinder formulation.
//!
//! The weighted inequality on `R^n` is transformed via Emden–Fowler coordinates
//! `t = ln|x|` into a problem on the cylinder `R × S^{n-1}`, where the conformal
//! fractional Laplacian acts mode-by-mode through explicit Fourier multipliers
//! built from Gamma-function ratios. This crate provides:
//!
//! * [`specfun`] — complex log-Gamma, digamma and the Gauss hypergeometric
//!   function `2F1`, the scalar building blocks for every multiplier and kernel;
//! * [`quad`] — double-exponential and Gauss-type quadrature used for the
//!   singular structural integrals;
//! * [`params`] / [`constants`] — admissible parameter bookkeeping and the
//!   structural constants (`sigma_{n,gamma}`, `c_{n,gamma}`, `kappa`, `C(alpha)`);
//! * [`spectral`] — grids, Fourier-multiplier operator application, the direct
//!   kernel-quadrature oracle, and indicial (decay) exponents;
//! * [`solver`] — ground-state solves, the radial minimizer, the Hardy-limit
//!   diagnostic, and continuation in `gamma`;
//! * [`stability`] — linearized operators, low-lying spectra, and the
//!   symmetry-breaking classification;
//! * [`validate`] — the end-to-end acceptance checks shared by the test suite
//!   and the `validate` CLI subcommand.

pub mod constants;
pub mod error;
pub mod grid;
pub mod params;
pub mod quad;
pub mod solver;
pub mod specfun;
pub mod spectral;
pub mod stability;
pub mod validate;

pub use error::CknError;
pub use grid::{Grid, RadialField};
pub use params::Parameters;
pub use solver::{Init, SolveResult};
pub use spectral::IndicialRoot;
pub use stability::Verdict;
