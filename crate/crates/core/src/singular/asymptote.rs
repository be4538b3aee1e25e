//! Large-`n` behaviour of the Chebyshev coefficients of singular integrands.
//!
//! With `x = cos t` the coefficient integral becomes a Fourier integral whose
//! endpoint behaviour at `t = 0` and `t = pi` is captured by the even
//! auxiliary functions
//!
//! ```text
//! psi(t) = (sin(t/2)/t)^{2 alpha} cos(t/2)^{2 beta} g(cos t)          near t = 0
//! phi(t) = sin(t/2)^{2 alpha} (cos(t/2)/(pi - t))^{2 beta} g(cos t)   near t = pi
//! ```
//!
//! Only their values and second derivatives at the endpoints enter the leading
//! term and first correction implemented here.

use std::f64::consts::{LN_2, PI};

use super::profile::{is_integer, SingularityProfile};
use crate::{Error, Result};

fn gamma(x: f64) -> f64 {
    libm::tgamma(x)
}

/// `psi(0) = g(1) / 2^{2 alpha}`.
pub fn hatpsi0(p: &SingularityProfile) -> f64 {
    p.endpoint_values().g_at_1 / 2f64.powf(2.0 * p.alpha())
}

/// `phi(pi) = g(-1) / 2^{2 beta}`.
pub fn hatphi_pi(p: &SingularityProfile) -> f64 {
    p.endpoint_values().g_at_minus1 / 2f64.powf(2.0 * p.beta())
}

/// `psi''(0) = -g(1)/2^{2 alpha + 1} (alpha/3 + beta) - g'(1)/2^{2 alpha}`.
pub fn hatpsi2_0(p: &SingularityProfile) -> f64 {
    let g = p.endpoint_values();
    let (a, b) = (p.alpha(), p.beta());
    -g.g_at_1 / 2f64.powf(2.0 * a + 1.0) * (a / 3.0 + b) - g.g_prime_at_1 / 2f64.powf(2.0 * a)
}

/// `phi''(pi) = -g(-1)/2^{2 beta + 1} (alpha + beta/3) + g'(-1)/2^{2 beta}`.
pub fn hatphi2_pi(p: &SingularityProfile) -> f64 {
    let g = p.endpoint_values();
    let (a, b) = (p.alpha(), p.beta());
    -g.g_at_minus1 / 2f64.powf(2.0 * b + 1.0) * (a + b / 3.0)
        + g.g_prime_at_minus1 / 2f64.powf(2.0 * b)
}

/// Sign pattern of an asymptotic term in `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    /// Same sign for every `n`; comes from the singularity at `x = 1`.
    ConstantSign,
    /// Carries a factor `(-1)^n`; comes from the singularity at `x = -1`.
    Alternating,
}

/// `amplitude * [(-1)^n] * [log n] * n^{-exponent}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoteTerm {
    pub amplitude: f64,
    pub exponent: f64,
    pub parity: Parity,
    pub log_n_factor: bool,
}

impl AsymptoteTerm {
    pub fn eval(&self, n: u64) -> f64 {
        let nf = n as f64;
        let mut v = self.amplitude * nf.powf(-self.exponent);
        if self.parity == Parity::Alternating && n % 2 == 1 {
            v = -v;
        }
        if self.log_n_factor {
            v *= nf.ln();
        }
        v
    }
}

/// How many terms per endpoint to keep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AsymptoteOrder {
    Leading,
    /// Leading term plus the next power (`n^{-2}` smaller).
    FirstCorrection,
}

/// Truncated asymptotic expansion of `a_n`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct CoeffAsymptote {
    terms: Vec<AsymptoteTerm>,
}

impl CoeffAsymptote {
    pub fn terms(&self) -> &[AsymptoteTerm] {
        &self.terms
    }

    pub fn eval(&self, n: u64) -> f64 {
        self.terms.iter().map(|t| t.eval(n)).sum()
    }

    /// Terms of one parity class.
    pub fn of_parity(&self, parity: Parity) -> impl Iterator<Item = &AsymptoteTerm> {
        self.terms.iter().filter(move |t| t.parity == parity)
    }

    fn push(&mut self, amplitude: f64, exponent: f64, parity: Parity) {
        self.terms.push(AsymptoteTerm {
            amplitude,
            exponent,
            parity,
            log_n_factor: false,
        });
    }
}

/// Builds the truncated expansion of `a_n` for `p`.
///
/// Algebraic profiles get one progression per non-integer exponent: powers
/// `n^{-2 alpha - 1 - 2k}` with constant sign and `n^{-2 beta - 1 - 2k}`
/// alternating. For `log(1-x)` profiles (`alpha` a positive integer) the
/// constant-sign progression carries `cos(alpha pi)` in place of
/// `sin(alpha pi)/pi`, and the alternating one picks up the factor
/// `log(2 sin^2(t/2))` evaluated at `t = pi`.
pub fn coeff_asymptote(p: &SingularityProfile, order: AsymptoteOrder) -> Result<CoeffAsymptote> {
    p.validate_asymptotic()?;
    let (a, b) = (p.alpha(), p.beta());
    let scale = 2f64.powf(a + b + 1.0);
    let correction = order == AsymptoteOrder::FirstCorrection;
    let mut out = CoeffAsymptote::default();

    if p.log_left() {
        // Left endpoint: -2^{a+b+1} cos(a pi) sum_k (-1)^k psi^{(2k)}(0) G(2k+2a+1) / ((2k)! n^{2k+2a+1})
        let c = -scale * (a * PI).cos();
        out.push(
            c * hatpsi0(p) * gamma(2.0 * a + 1.0),
            2.0 * a + 1.0,
            Parity::ConstantSign,
        );
        if correction {
            out.push(
                -c * hatpsi2_0(p) * gamma(2.0 * a + 3.0) / 2.0,
                2.0 * a + 3.0,
                Parity::ConstantSign,
            );
        }
        if !is_integer(b) {
            // phi_1 = phi * log(2 sin^2(t/2)); at pi: phi_1 = phi log 2, phi_1'' = phi'' log 2 - phi / 2.
            let c = -scale / PI * (b * PI).sin();
            let phi1 = hatphi_pi(p) * LN_2;
            out.push(
                c * phi1 * gamma(2.0 * b + 1.0),
                2.0 * b + 1.0,
                Parity::Alternating,
            );
            if correction {
                let phi1_2 = hatphi2_pi(p) * LN_2 - 0.5 * hatphi_pi(p);
                out.push(
                    -c * phi1_2 * gamma(2.0 * b + 3.0) / 2.0,
                    2.0 * b + 3.0,
                    Parity::Alternating,
                );
            }
        }
    } else {
        if !is_integer(a) {
            let c = -scale / PI * (a * PI).sin();
            out.push(
                c * hatpsi0(p) * gamma(2.0 * a + 1.0),
                2.0 * a + 1.0,
                Parity::ConstantSign,
            );
            if correction {
                out.push(
                    -c * hatpsi2_0(p) * gamma(2.0 * a + 3.0) / 2.0,
                    2.0 * a + 3.0,
                    Parity::ConstantSign,
                );
            }
        }
        if !is_integer(b) {
            let c = -scale / PI * (b * PI).sin();
            out.push(
                c * hatphi_pi(p) * gamma(2.0 * b + 1.0),
                2.0 * b + 1.0,
                Parity::Alternating,
            );
            if correction {
                out.push(
                    -c * hatphi2_pi(p) * gamma(2.0 * b + 3.0) / 2.0,
                    2.0 * b + 3.0,
                    Parity::Alternating,
                );
            }
        }
    }
    out.terms.sort_by(|x, y| x.exponent.total_cmp(&y.exponent));
    Ok(out)
}

/// Leading-order prediction of the Chebyshev coefficient `a_n`.
///
/// When both endpoints are singular, the leading term of each endpoint is
/// kept, so the dominant and the subdominant contribution are both present.
pub fn predict_coeff(p: &SingularityProfile, n: u64) -> Result<f64> {
    if n < 2 {
        return Err(Error::Range(format!(
            "coefficient index {n} must be at least 2"
        )));
    }
    Ok(coeff_asymptote(p, AsymptoteOrder::Leading)?.eval(n))
}
