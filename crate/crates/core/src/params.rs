//! Admissible parameter tuples `(n, gamma, alpha, beta)` and the exponents
//! derived from them.

use crate::error::CknError;
use serde::{Deserialize, Serialize};

/// Margin kept between `alpha` and the lower endpoint `-2 gamma`, where the
/// structural integral diverges.
pub const ALPHA_MARGIN: f64 = 1e-6;

/// Parameters of the weighted inequality.
///
/// Constraints enforced at construction:
/// * `n >= 2` (integer dimension), `0 < gamma < 1`, `n > 2 gamma`;
/// * `-2 gamma + 1e-6 <= alpha < (n - 2 gamma)/2`;
/// * `alpha <= beta <= alpha + gamma`.
///
/// `beta = alpha + gamma` corresponds to the Hardy endpoint `p = 2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Parameters {
    n: u32,
    gamma: f64,
    alpha: f64,
    beta: f64,
}

impl Parameters {
    pub fn new(n: u32, gamma: f64, alpha: f64, beta: f64) -> Result<Self, CknError> {
        if n < 2 {
            return Err(CknError::invalid("n >= 2", n));
        }
        if !(gamma > 0.0 && gamma < 1.0) {
            return Err(CknError::invalid("0 < gamma < 1", gamma));
        }
        if f64::from(n) <= 2.0 * gamma {
            return Err(CknError::invalid("n > 2*gamma", format!("n={n}, gamma={gamma}")));
        }
        if alpha < -2.0 * gamma + ALPHA_MARGIN {
            return Err(CknError::invalid(
                format!("alpha >= -2*gamma + {ALPHA_MARGIN}"),
                alpha,
            ));
        }
        let nu = 0.5 * (f64::from(n) - 2.0 * gamma) - alpha;
        if nu <= 0.0 {
            return Err(CknError::invalid("alpha < (n - 2*gamma)/2", alpha));
        }
        if beta < alpha || beta > alpha + gamma + 1e-14 {
            return Err(CknError::invalid(
                "alpha <= beta <= alpha + gamma",
                format!("alpha={alpha}, beta={beta}"),
            ));
        }
        Ok(Parameters { n, gamma, alpha, beta })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn nf(&self) -> f64 {
        f64::from(self.n)
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// Cylinder decay homogeneity `nu = (n - 2 gamma)/2 - alpha`.
    pub fn nu(&self) -> f64 {
        0.5 * (self.nf() - 2.0 * self.gamma) - self.alpha
    }

    /// Lebesgue exponent `p = 2n / (n - 2 gamma + 2 (beta - alpha))`.
    ///
    /// Ranges over `(2, 2n/(n-2 gamma)]`; equals `2` exactly at the Hardy
    /// endpoint `beta = alpha + gamma`.
    pub fn exponent_p(&self) -> f64 {
        2.0 * self.nf() / (self.nf() - 2.0 * self.gamma + 2.0 * (self.beta - self.alpha))
    }

    /// True when this is the Hardy endpoint `beta = alpha + gamma` (`p = 2`).
    pub fn is_hardy_endpoint(&self) -> bool {
        (self.beta - self.alpha - self.gamma).abs() <= 1e-12
    }

    /// True when the weights vanish, `alpha = beta = 0` (the Sobolev bubble).
    pub fn is_unweighted(&self) -> bool {
        self.alpha == 0.0 && self.beta == 0.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_admissible_tuples() {
        let p = Parameters::new(3, 0.5, -0.9, -0.85).unwrap();
        assert!((p.nu() - (1.0 + 0.9)).abs() < 1e-14);
        let q = Parameters::new(3, 0.5, 0.0, 0.0).unwrap();
        assert!((q.exponent_p() - 3.0).abs() < 1e-14); // 2n/(n-2g) = 6/2
        assert!(q.is_unweighted());
    }

    #[test]
    fn hardy_endpoint_is_p_two() {
        let p = Parameters::new(4, 0.75, -0.3, 0.45).unwrap();
        assert!(p.is_hardy_endpoint());
        assert!((p.exponent_p() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_inadmissible_tuples() {
        assert!(Parameters::new(1, 0.5, 0.0, 0.0).is_err());
        assert!(Parameters::new(3, 1.0, 0.0, 0.0).is_err());
        assert!(Parameters::new(3, 0.5, -1.0, -0.9).is_err()); // alpha <= -2 gamma
        assert!(Parameters::new(3, 0.5, 1.0, 1.0).is_err()); // alpha >= (n-2g)/2
        assert!(Parameters::new(3, 0.5, 0.0, 0.6).is_err()); // beta > alpha + gamma
        assert!(Parameters::new(3, 0.5, 0.0, -0.1).is_err()); // beta < alpha
        assert!(Parameters::new(2, 0.9, 0.05, 0.05).is_ok());
        assert!(Parameters::new(2, 0.99, 0.0, 0.0).is_ok());
    }
}
