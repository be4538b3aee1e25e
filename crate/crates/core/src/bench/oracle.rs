//! Tanh-sinh reference quadrature.

use std::f64::consts::FRAC_PI_2;

use crate::{Error, Result};

/// Tolerance used when `SINGQUAD_ORACLE_TOL` is unset.
pub const DEFAULT_TOL: f64 = 1e-12;
/// Smallest tolerance accepted.
pub const MIN_TOL: f64 = 1e-14;
const MAX_LEVELS: usize = 12;
pub const TOL_ENV: &str = "SINGQUAD_ORACLE_TOL";

/// Oracle tolerance from the environment, or [`DEFAULT_TOL`].
pub fn tolerance_from_env() -> Result<f64> {
    match std::env::var(TOL_ENV) {
        Ok(s) => {
            let tol: f64 = s
                .trim()
                .parse()
                .map_err(|_| Error::Config(format!("{TOL_ENV}={s:?} is not a number")))?;
            check_tol(tol)?;
            Ok(tol)
        }
        Err(_) => Ok(DEFAULT_TOL),
    }
}

fn check_tol(tol: f64) -> Result<()> {
    if !(tol >= MIN_TOL && tol.is_finite()) {
        return Err(Error::Config(format!(
            "oracle tolerance {tol} must be finite and at least {MIN_TOL:e}"
        )));
    }
    Ok(())
}

/// Sum of `w(t) f(x(t))` over `t = +-k h` for `k` in `ks`, where
/// `x = tanh(pi/2 sinh t)` and `w = pi/2 cosh t / cosh^2(pi/2 sinh t)`.
///
/// Nodes where `x` rounds to `+-1` end the sweep, so `f` never sees an
/// endpoint.
fn sweep(f: &impl Fn(f64) -> f64, h: f64, ks: impl Iterator<Item = u64>) -> Result<f64> {
    let mut acc = 0.0;
    for k in ks {
        let t = k as f64 * h;
        let u = FRAC_PI_2 * t.sinh();
        let x = u.tanh();
        if x.abs() >= 1.0 {
            break;
        }
        let c = u.cosh();
        let w = FRAC_PI_2 * t.cosh() / (c * c);
        if w == 0.0 {
            break;
        }
        let pair = if k == 0 { f(x) } else { f(x) + f(-x) };
        if !pair.is_finite() {
            return Err(Error::Oracle(format!(
                "integrand is not finite near x = {x}"
            )));
        }
        acc += w * pair;
    }
    Ok(acc)
}

/// `int_{-1}^{1} f(x) dx` by the tanh-sinh rule with level doubling from
/// `h = 1`, stopping once successive levels differ by less than
/// `tol (1 + |I|)`.
pub fn tanh_sinh(f: impl Fn(f64) -> f64, tol: f64) -> Result<f64> {
    check_tol(tol)?;
    let mut h = 1.0;
    let mut total = sweep(&f, h, 0..)?;
    let mut prev = h * total;
    for _ in 1..=MAX_LEVELS {
        h /= 2.0;
        // New nodes sit at odd multiples of the halved step.
        total += sweep(&f, h, (0..).map(|i| 2 * i + 1))?;
        let cur = h * total;
        if (cur - prev).abs() < tol * (1.0 + cur.abs()) {
            return Ok(cur);
        }
        prev = cur;
    }
    Err(Error::Oracle(format!(
        "tanh-sinh did not reach tolerance {tol:e} in {MAX_LEVELS} levels"
    )))
}

/// `B(a, b)` through log-gamma.
pub fn beta_fn(a: f64, b: f64) -> f64 {
    (libm::lgamma(a) + libm::lgamma(b) - libm::lgamma(a + b)).exp()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_root_closed_form() {
        let v = tanh_sinh(|x| (1.0 - x).sqrt(), 1e-12).unwrap();
        assert!((v - 4.0 * 2f64.sqrt() / 3.0).abs() < 1e-12);
    }

    #[test]
    fn log_closed_form() {
        let v = tanh_sinh(|x| (1.0 - x).ln(), 1e-12).unwrap();
        assert!((v - (2.0 * 2f64.ln() - 2.0)).abs() < 1e-12);
    }

    #[test]
    fn beta_closed_form() {
        let v = tanh_sinh(|x| (1.0 - x).powf(0.75) * (1.0 + x).powf(0.25), 1e-12).unwrap();
        assert!((v - 4.0 * beta_fn(1.75, 1.25)).abs() < 1e-12);
    }

    #[test]
    fn never_touches_the_endpoints() {
        let v = tanh_sinh(
            |x: f64| {
                assert!(x.abs() < 1.0);
                (1.0 - x * x).ln()
            },
            1e-12,
        )
        .unwrap();
        assert!((v - (4.0 * 2f64.ln() - 4.0)).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_tolerance_and_nan() {
        assert!(matches!(tanh_sinh(|x| x, 1e-16), Err(Error::Config(_))));
        assert!(matches!(
            tanh_sinh(|_| f64::NAN, 1e-12),
            Err(Error::Oracle(_))
        ));
    }

    #[test]
    fn beta_fn_values() {
        assert!((beta_fn(1.0, 1.0) - 1.0).abs() < 1e-15);
        assert!((beta_fn(0.5, 0.5) - std::f64::consts::PI).abs() < 1e-14);
    }
}
