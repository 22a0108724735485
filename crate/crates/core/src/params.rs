//! Validated parameter tuples shared by every other module.

use serde::Serialize;

use crate::error::{Error, Result};

/// Tolerance for the exponent balance `alpha + beta = p`. Callers build the
/// exponents from closed-form expressions, so exact equality cannot be asked for.
pub const EXPONENT_BALANCE_TOL: f64 = 1e-12;

/// The full parameter tuple of the two-function inequality, with the derived
/// critical exponent `p = 2(N - s)/(N - 2)`.
///
/// Instances are only obtainable through [`make_params`], so every value in
/// circulation satisfies the domain restrictions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HSParams {
    pub n: u32,
    pub s: f64,
    pub alpha: f64,
    pub beta: f64,
    pub lambda: f64,
    pub mu: f64,
    pub kappa: f64,
    /// Derived exponent `2(N - s)/(N - 2)`; always in (2, 2N/(N-2)].
    pub p: f64,
}

impl HSParams {
    /// Parameters with `alpha <-> beta` and `lambda <-> mu` swapped.
    ///
    /// Evaluating the coupling function of the swapped parameters at `t`
    /// equals evaluating the original one at `1/t`.
    pub fn swapped(&self) -> HSParams {
        HSParams {
            alpha: self.beta,
            beta: self.alpha,
            lambda: self.mu,
            mu: self.lambda,
            ..*self
        }
    }

    pub fn dimension(&self) -> f64 {
        f64::from(self.n)
    }
}

/// Critical exponent `2(N - s)/(N - 2)` without constructing params.
pub fn critical_exponent(n: u32, s: f64) -> f64 {
    2.0 * (f64::from(n) - s) / (f64::from(n) - 2.0)
}

/// Validate and assemble an [`HSParams`].
///
/// Requires `N >= 3`, `0 < s < 2`, `alpha, beta > 1`, `lambda, mu > 0`, and
/// `alpha + beta = 2(N - s)/(N - 2)` within [`EXPONENT_BALANCE_TOL`]. The sign
/// of `kappa` is unrestricted.
pub fn make_params(
    n: u32,
    s: f64,
    alpha: f64,
    beta: f64,
    lambda: f64,
    mu: f64,
    kappa: f64,
) -> Result<HSParams> {
    if n < 3 {
        return Err(Error::domain("N", format!("dimension must be >= 3, got {n}")));
    }
    if !(s > 0.0 && s < 2.0) {
        return Err(Error::domain("s", format!("must lie in (0, 2), got {s}")));
    }
    if !(alpha > 1.0) {
        return Err(Error::domain("alpha", format!("must be > 1, got {alpha}")));
    }
    if !(beta > 1.0) {
        return Err(Error::domain("beta", format!("must be > 1, got {beta}")));
    }
    if !(lambda > 0.0) {
        return Err(Error::domain("lambda", format!("must be > 0, got {lambda}")));
    }
    if !(mu > 0.0) {
        return Err(Error::domain("mu", format!("must be > 0, got {mu}")));
    }
    if !kappa.is_finite() {
        return Err(Error::domain("kappa", format!("must be finite, got {kappa}")));
    }
    let p = critical_exponent(n, s);
    if (alpha + beta - p).abs() > EXPONENT_BALANCE_TOL {
        return Err(Error::domain(
            "alpha",
            format!(
                "alpha+beta must equal 2*(s) = {p}, got {} (off by {:.3e})",
                alpha + beta,
                (alpha + beta - p).abs()
            ),
        ));
    }
    Ok(HSParams {
        n,
        s,
        alpha,
        beta,
        lambda,
        mu,
        kappa,
        p,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_the_reference_tuples() {
        let p = make_params(3, 1.0, 2.0, 2.0, 1.0, 1.0, 1.0).unwrap();
        assert_eq!(p.p, 4.0);
        let p = make_params(4, 0.5, 1.5, 2.0, 1.0, 1.0, 1.0).unwrap();
        assert_eq!(p.p, 3.5);
    }

    #[test]
    fn rejects_unbalanced_exponents() {
        let err = make_params(3, 1.0, 2.0, 1.5, 1.0, 1.0, 1.0).unwrap_err();
        match err {
            Error::Domain { field, reason } => {
                assert_eq!(field, "alpha");
                assert!(reason.contains("alpha+beta"));
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn rejects_each_out_of_range_field() {
        assert!(make_params(2, 1.0, 2.0, 2.0, 1.0, 1.0, 0.0).is_err());
        assert!(make_params(3, 0.0, 2.0, 2.0, 1.0, 1.0, 0.0).is_err());
        assert!(make_params(3, 2.0, 2.0, 2.0, 1.0, 1.0, 0.0).is_err());
        assert!(make_params(3, 1.0, 1.0, 3.0, 1.0, 1.0, 0.0).is_err());
        assert!(make_params(3, 1.0, 3.0, 1.0, 1.0, 1.0, 0.0).is_err());
        assert!(make_params(3, 1.0, 2.0, 2.0, 0.0, 1.0, 0.0).is_err());
        assert!(make_params(3, 1.0, 2.0, 2.0, 1.0, -1.0, 0.0).is_err());
        assert!(make_params(3, 1.0, 2.0, 2.0, 1.0, 1.0, f64::NAN).is_err());
    }

    #[test]
    fn swap_is_an_involution() {
        let p = make_params(3, 1.0, 2.5, 1.5, 2.0, 3.0, 0.5).unwrap();
        let q = p.swapped();
        assert_eq!(q.alpha, 1.5);
        assert_eq!(q.lambda, 3.0);
        assert_eq!(q.swapped(), p);
    }

    #[test]
    fn exponent_stays_in_range() {
        // p in (2, 2N/(N-2)] for every admissible (N, s)
        for n in 3..=8 {
            for k in 1..40 {
                let s = 0.05 * f64::from(k);
                if s >= 2.0 {
                    break;
                }
                let p = critical_exponent(n, s);
                let nf = f64::from(n);
                assert!(p > 2.0 && p <= 2.0 * nf / (nf - 2.0) + 1e-15, "p={p} n={n} s={s}");
            }
        }
    }
}
