//! Endpoint-singularity profiles, the smoothness index `s` and the exponent
//! ladders that drive Richardson extrapolation.

use crate::{Error, Result};

const INTEGER_TOL: f64 = 1e-12;

pub(crate) fn is_integer(x: f64) -> bool {
    (x - x.round()).abs() <= INTEGER_TOL
}

/// `g(1)`, `g(-1)`, `g'(1)`, `g'(-1)` of the smooth factor.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct EndpointValues {
    pub g_at_1: f64,
    pub g_at_minus1: f64,
    pub g_prime_at_1: f64,
    pub g_prime_at_minus1: f64,
}

impl EndpointValues {
    pub fn new(g_at_1: f64, g_at_minus1: f64, g_prime_at_1: f64, g_prime_at_minus1: f64) -> Self {
        Self {
            g_at_1,
            g_at_minus1,
            g_prime_at_1,
            g_prime_at_minus1,
        }
    }

    /// `g = 1`.
    pub fn unit() -> Self {
        Self::new(1.0, 1.0, 0.0, 0.0)
    }
}

/// Describes `f(x) = (1-x)^alpha (1+x)^beta [log(1-x)] g(x)` with smooth `g`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SingularityProfile {
    alpha: f64,
    beta: f64,
    log_left: bool,
    g: EndpointValues,
}

impl SingularityProfile {
    /// Validated constructor for integrands usable with Clenshaw-Curtis
    /// (`alpha, beta >= 0`).
    ///
    /// Without the log factor `alpha` and `beta` must not both be integers.
    /// With it, `alpha` must be a positive integer.
    pub fn new(alpha: f64, beta: f64, log_left: bool, g: EndpointValues) -> Result<Self> {
        let p = Self::new_unchecked(alpha, beta, log_left, g);
        p.validate()?;
        Ok(p)
    }

    pub fn algebraic(alpha: f64, beta: f64, g: EndpointValues) -> Result<Self> {
        Self::new(alpha, beta, false, g)
    }

    pub fn algebraic_log(alpha: f64, beta: f64, g: EndpointValues) -> Result<Self> {
        Self::new(alpha, beta, true, g)
    }

    /// Builds a profile without validation.
    ///
    /// Coefficient asymptotics remain meaningful for `alpha, beta > -1/2`,
    /// which is wider than what quadrature accepts. Profiles built here are
    /// rejected by [`classify_s`] and [`exponent_ladder`] unless they happen
    /// to satisfy [`validate`](Self::validate); the asymptotic functions check
    /// only the wider range.
    pub fn new_unchecked(alpha: f64, beta: f64, log_left: bool, g: EndpointValues) -> Self {
        Self {
            alpha,
            beta,
            log_left,
            g,
        }
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn log_left(&self) -> bool {
        self.log_left
    }

    pub fn endpoint_values(&self) -> &EndpointValues {
        &self.g
    }

    /// Checks the quadrature-side invariants.
    pub fn validate(&self) -> Result<()> {
        let (a, b) = (self.alpha, self.beta);
        if !(a.is_finite() && b.is_finite()) || a < 0.0 || b < 0.0 {
            return Err(Error::Profile(format!(
                "exponents must be finite and non-negative, got alpha={a}, beta={b}"
            )));
        }
        self.validate_shape()
    }

    /// Checks the wider asymptotic-side invariants (`alpha, beta > -1/2`).
    pub(crate) fn validate_asymptotic(&self) -> Result<()> {
        let (a, b) = (self.alpha, self.beta);
        if !(a.is_finite() && b.is_finite()) || a <= -0.5 || b <= -0.5 {
            return Err(Error::Profile(format!(
                "coefficient asymptotics need alpha, beta > -1/2, got alpha={a}, beta={b}"
            )));
        }
        self.validate_shape()
    }

    fn validate_shape(&self) -> Result<()> {
        let (a, b) = (self.alpha, self.beta);
        if self.log_left {
            if !(is_integer(a) && a.round() >= 1.0) {
                return Err(Error::Profile(format!(
                    "log(1-x) profiles need a positive integer alpha, got {a}"
                )));
            }
        } else if is_integer(a) && is_integer(b) {
            return Err(Error::Profile(format!(
                "alpha={a} and beta={b} are both integers: the integrand has no endpoint singularity"
            )));
        }
        Ok(())
    }
}

/// Decay class `s`: Chebyshev coefficients are `O(k^{-s-1})` and the
/// Clenshaw-Curtis error is `O(n^{-s-2})`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct SmoothnessIndex(f64);

impl SmoothnessIndex {
    pub fn value(self) -> f64 {
        self.0
    }

    /// Predicted Clenshaw-Curtis convergence exponent `s + 2`.
    pub fn cc_rate(self) -> f64 {
        self.0 + 2.0
    }
}

pub fn classify_s(p: &SingularityProfile) -> Result<SmoothnessIndex> {
    p.validate()?;
    let (a, b) = (p.alpha, p.beta);
    let s = if p.log_left {
        if is_integer(b) {
            2.0 * a
        } else {
            2.0 * a.min(b)
        }
    } else if is_integer(b) {
        2.0 * a
    } else if is_integer(a) {
        2.0 * b
    } else {
        2.0 * a.min(b)
    };
    Ok(SmoothnessIndex(s))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LadderOrigin {
    Algebraic,
    AlgebraicLog,
    Custom,
}

/// Strictly increasing exponents `d_0 < d_1 < ...`; level `j` of the
/// Richardson tableau eliminates the `n^{-d_j - 1}` error term.
///
/// Profile-derived ladders are unions of arithmetic progressions with step 2
/// and can be extended on demand. Custom ladders are fixed.
#[derive(Debug, Clone, PartialEq)]
pub struct ExponentLadder {
    d: Vec<f64>,
    origin: LadderOrigin,
    /// Starting points of the step-2 progressions; empty for custom ladders.
    branches: Vec<f64>,
}

const MERGE_TOL: f64 = 1e-12;

fn merged_progressions(branches: &[f64], count: usize) -> Vec<f64> {
    let mut all: Vec<f64> = branches
        .iter()
        .flat_map(|&start| (0..count).map(move |j| start + 2.0 * j as f64))
        .collect();
    all.sort_by(f64::total_cmp);
    all.dedup_by(|a, b| (*a - *b).abs() <= MERGE_TOL);
    all.truncate(count);
    all
}

impl ExponentLadder {
    /// A fixed ladder, e.g. for ablation with a deliberately wrong `d_0`.
    pub fn custom(d: Vec<f64>) -> Result<Self> {
        if d.iter().any(|x| !x.is_finite() || *x <= 0.0) {
            return Err(Error::Config(
                "ladder exponents must be finite and positive".into(),
            ));
        }
        if d.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Config(
                "ladder exponents must be strictly increasing".into(),
            ));
        }
        Ok(Self {
            d,
            origin: LadderOrigin::Custom,
            branches: Vec::new(),
        })
    }

    pub fn origin(&self) -> LadderOrigin {
        self.origin
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.d
    }

    pub fn len(&self) -> usize {
        self.d.len()
    }

    pub fn is_empty(&self) -> bool {
        self.d.is_empty()
    }

    pub fn get(&self, k: usize) -> Option<f64> {
        self.d.get(k).copied()
    }

    /// Grows a profile-derived ladder to at least `count` entries.
    pub fn extend_to(&mut self, count: usize) -> Result<()> {
        if count <= self.d.len() {
            return Ok(());
        }
        if self.branches.is_empty() {
            return Err(Error::Config(format!(
                "custom ladder has {} exponents, {count} requested",
                self.d.len()
            )));
        }
        self.d = merged_progressions(&self.branches, count);
        Ok(())
    }
}

/// First `count` exponents of the ladder for `p`:
/// the sorted union of `{2 alpha + 2j + 1}` and/or `{2 beta + 2j + 1}`,
/// keeping only the branches whose endpoint is genuinely singular.
pub fn exponent_ladder(p: &SingularityProfile, count: usize) -> Result<ExponentLadder> {
    p.validate()?;
    if count == 0 {
        return Err(Error::Config("ladder length must be at least 1".into()));
    }
    let left = 2.0 * p.alpha + 1.0;
    let right = 2.0 * p.beta + 1.0;
    let (origin, branches) = if p.log_left {
        if is_integer(p.beta) {
            (LadderOrigin::AlgebraicLog, vec![left])
        } else {
            (LadderOrigin::AlgebraicLog, vec![left, right])
        }
    } else if is_integer(p.beta) {
        (LadderOrigin::Algebraic, vec![left])
    } else if is_integer(p.alpha) {
        (LadderOrigin::Algebraic, vec![right])
    } else {
        (LadderOrigin::Algebraic, vec![left, right])
    };
    Ok(ExponentLadder {
        d: merged_progressions(&branches, count),
        origin,
        branches,
    })
}
