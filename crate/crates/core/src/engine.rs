//! Applying rules to integrands: nested sample reuse, the coefficient-space
//! cross-check, the aliasing error of `T_m` and interval splitting.

use std::fmt;
use std::sync::Arc;

use crate::accel;
use crate::exec::Execution;
use crate::rules::{self, QuadratureRule, RuleKind};
use crate::singular::{ExponentLadder, SingularityProfile};
use crate::sum::{pairwise_dot, pairwise_sum};
use crate::transform::{self, lobatto_node};
use crate::{Error, Result};

type EvalFn = dyn Fn(f64) -> f64 + Send + Sync;

/// A real function on `[-1, 1]` with an optional singularity profile.
///
/// Closures must return the finite limit at an endpoint where the formula is
/// indeterminate (e.g. `(1-x) log(1-x)` at `x = 1`); non-finite samples are
/// reported, never replaced.
#[derive(Clone)]
pub struct Integrand {
    label: String,
    eval: Arc<EvalFn>,
    profile: Option<SingularityProfile>,
}

impl Integrand {
    pub fn new(label: impl Into<String>, f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Self {
            label: label.into(),
            eval: Arc::new(f),
            profile: None,
        }
    }

    pub fn with_profile(mut self, profile: SingularityProfile) -> Self {
        self.profile = Some(profile);
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn profile(&self) -> Option<&SingularityProfile> {
        self.profile.as_ref()
    }

    #[inline]
    pub fn eval(&self, x: f64) -> f64 {
        (self.eval)(x)
    }

    fn checked_eval(&self, x: f64) -> Result<f64> {
        let v = self.eval(x);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::Integrand {
                label: self.label.clone(),
                x,
                value: v,
            })
        }
    }
}

impl fmt::Debug for Integrand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Integrand")
            .field("label", &self.label)
            .field("profile", &self.profile)
            .finish_non_exhaustive()
    }
}

/// Samples `f(cos(j pi / N))` on the finest Chebyshev-Lobatto grid seen so far.
///
/// Coarser grids of size `n | N` read index `j * N / n`, so each distinct
/// node is evaluated once. Growing the grid by doubling evaluates only the new
/// odd-index nodes. A cache is bound to the first integrand it sees.
#[derive(Debug, Clone)]
pub struct SampleCache {
    base_n: usize,
    levels: u32,
    values: Vec<f64>,
    evals: usize,
    label: Option<String>,
    exec: Execution,
}

impl Default for SampleCache {
    fn default() -> Self {
        Self::new()
    }
}

impl SampleCache {
    pub fn new() -> Self {
        Self::with_execution(Execution::default())
    }

    pub fn with_execution(exec: Execution) -> Self {
        Self {
            base_n: 0,
            levels: 0,
            values: Vec::new(),
            evals: 0,
            label: None,
            exec,
        }
    }

    /// Size of the first grid filled; 0 while empty.
    pub fn base_n(&self) -> usize {
        self.base_n
    }

    pub fn levels(&self) -> u32 {
        self.levels
    }

    /// Finest grid size `N`; 0 while empty.
    pub fn finest_n(&self) -> usize {
        self.values.len().saturating_sub(1)
    }

    /// Total integrand evaluations performed.
    pub fn evals(&self) -> usize {
        self.evals
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Value at node `j` of the size-`n` grid. `n` must divide the finest size.
    pub fn value_at(&self, j: usize, n: usize) -> f64 {
        self.values[j * (self.finest_n() / n)]
    }

    /// The `n + 1` samples of the size-`n` grid.
    pub fn samples(&self, n: usize) -> Result<Vec<f64>> {
        let big = self.finest_n();
        if n == 0 || big == 0 || !big.is_multiple_of(n) {
            return Err(Error::Size {
                n,
                reason: format!("not a divisor of the cached grid size {big}"),
            });
        }
        let stride = big / n;
        Ok(self.values.iter().step_by(stride).copied().collect())
    }

    fn bind(&mut self, f: &Integrand) -> Result<()> {
        match &self.label {
            Some(l) if l != f.label() => Err(Error::Input(format!(
                "sample cache holds `{l}`, cannot reuse it for `{}`",
                f.label()
            ))),
            Some(_) => Ok(()),
            None => {
                self.label = Some(f.label().to_owned());
                Ok(())
            }
        }
    }

    /// True if [`ensure`](Self::ensure) can serve size `n` from this cache.
    pub fn accepts(&self, n: usize) -> bool {
        let big = self.finest_n();
        n > 0
            && (big == 0
                || big.is_multiple_of(n)
                || (n.is_multiple_of(big) && (n / big).is_power_of_two()))
    }

    /// Makes the size-`n` grid available, evaluating only missing nodes.
    ///
    /// `n` must divide the current finest size or be a power-of-two multiple
    /// of it.
    pub fn ensure(&mut self, f: &Integrand, n: usize) -> Result<()> {
        if n == 0 {
            return Err(Error::Size {
                n,
                reason: "rule size must be at least 1".into(),
            });
        }
        self.bind(f)?;
        let big = self.finest_n();
        if big == 0 {
            let vals = self
                .exec
                .map_range(n + 1, |j| f.checked_eval(lobatto_node(j, n)));
            self.values = vals.into_iter().collect::<Result<_>>()?;
            self.evals += n + 1;
            self.base_n = n;
            return Ok(());
        }
        if big.is_multiple_of(n) {
            return Ok(());
        }
        if !self.accepts(n) {
            return Err(Error::Size {
                n,
                reason: format!("not nested with the cached grid size {big}"),
            });
        }
        while self.finest_n() < n {
            self.double(f)?;
        }
        Ok(())
    }

    fn double(&mut self, f: &Integrand) -> Result<()> {
        let old = self.finest_n();
        let new_n = 2 * old;
        let fresh = self
            .exec
            .map_range(old, |i| f.checked_eval(lobatto_node(2 * i + 1, new_n)));
        let fresh: Vec<f64> = fresh.into_iter().collect::<Result<_>>()?;
        let mut values = Vec::with_capacity(new_n + 1);
        for (i, v) in fresh.iter().enumerate() {
            values.push(self.values[i]);
            values.push(*v);
        }
        values.push(self.values[old]);
        self.values = values;
        self.evals += old;
        self.levels += 1;
        Ok(())
    }
}

/// Outcome of applying one rule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub approx: f64,
    pub n: usize,
    /// New integrand evaluations performed by this call.
    pub evals_used: usize,
    pub kind: RuleKind,
}

/// `sum_j w_j f(x_j)`, pairwise summed.
///
/// Clenshaw-Curtis rules read their samples through `cache`, which may
/// already hold some or all of them; Gauss-Legendre rules cannot share one.
pub fn integrate(
    rule: &QuadratureRule,
    f: &Integrand,
    cache: Option<&mut SampleCache>,
) -> Result<QuadratureResult> {
    let n = rule.n();
    let (values, evals_used) = match (rule.kind(), cache) {
        (RuleKind::GaussLegendre, Some(_)) => {
            return Err(Error::Input(
                "Gauss-Legendre nodes are not nested; no sample cache can be used".into(),
            ))
        }
        (RuleKind::GaussLegendre, None) => {
            let vals = Execution::default().map_slice(rule.nodes(), |&x| f.checked_eval(x));
            (vals.into_iter().collect::<Result<Vec<_>>>()?, n)
        }
        (RuleKind::ClenshawCurtis, Some(cache)) => {
            let before = cache.evals();
            cache.ensure(f, n)?;
            (cache.samples(n)?, cache.evals() - before)
        }
        (RuleKind::ClenshawCurtis, None) => {
            let mut cache = SampleCache::new();
            cache.ensure(f, n)?;
            (cache.samples(n)?, cache.evals())
        }
    };
    Ok(QuadratureResult {
        approx: pairwise_dot(rule.weights(), &values),
        n,
        evals_used,
        kind: rule.kind(),
    })
}

/// Clenshaw-Curtis value computed in coefficient space:
/// `sum_{k even} a_k 2/(1 - k^2)` with `a_0` and `a_n` halved.
pub fn cc_integrate_by_coeffs(
    f: &Integrand,
    n: usize,
    cache: &mut SampleCache,
) -> Result<QuadratureResult> {
    if n == 0 || !n.is_multiple_of(2) {
        return Err(Error::Size {
            n,
            reason: "coefficient-space integration needs even n".into(),
        });
    }
    if transform::supported_size(n).is_none() {
        return Err(Error::Size {
            n,
            reason: "transform sizes must be m * 2^k with m in {1, 3, 5}".into(),
        });
    }
    let before = cache.evals();
    cache.ensure(f, n)?;
    let coeffs = transform::cheb_coeffs(&cache.samples(n)?)?;
    let a = coeffs.as_slice();
    let terms: Vec<f64> = (0..=n)
        .step_by(2)
        .map(|k| {
            let kk = k as f64;
            rules::delta(k, n) * a[k] * 2.0 / (1.0 - kk * kk)
        })
        .collect();
    Ok(QuadratureResult {
        approx: pairwise_sum(&terms),
        n,
        evals_used: cache.evals() - before,
        kind: RuleKind::ClenshawCurtis,
    })
}

/// `E_n(T_m) = I[T_m] - I_n[T_m]` for the `(n+1)`-point Clenshaw-Curtis rule.
///
/// For even `m > n`, write `m = 2jn + 2r` with `1 - n <= 2r <= n`; the rule
/// sees `T_m` as `T_{|2r|}`, so the error is `2/(1-m^2) - 2/(1-4r^2)`.
pub fn aliasing_error(n: usize, m: u64) -> Result<f64> {
    if n == 0 || !n.is_multiple_of(2) {
        return Err(Error::Size {
            n,
            reason: "the aliasing identity is stated for even n".into(),
        });
    }
    if m % 2 == 1 || m <= n as u64 {
        return Ok(0.0);
    }
    let period = 2 * n as u64;
    let rho = (m % period) as i64;
    let two_r = if rho <= n as i64 {
        rho
    } else {
        rho - period as i64
    };
    let mf = m as f64;
    let tr = two_r as f64;
    Ok(2.0 / (1.0 - mf * mf) - 2.0 / (1.0 - tr * tr))
}

/// How each half of a split interval is integrated.
#[derive(Debug, Clone, PartialEq)]
pub enum SplitMethod {
    Cc,
    /// Richardson extrapolation with `q` levels; the same ladder is used on
    /// both halves.
    Extrapolated {
        q: usize,
        ladder: ExponentLadder,
    },
}

/// Integrates over `[-1, x0]` and `[x0, 1]` separately, each mapped affinely
/// onto `[-1, 1]`, so an interior singularity at `x0` becomes an endpoint one.
pub fn integrate_split(f: &Integrand, x0: f64, n: usize, method: &SplitMethod) -> Result<f64> {
    if !(x0 > -1.0 && x0 < 1.0) {
        return Err(Error::Domain(format!("split point {x0} outside (-1, 1)")));
    }
    // Written so that t = -1 and t = 1 land exactly on the interval ends.
    let left = {
        let g = f.clone();
        Integrand::new(format!("{}[-1,{x0}]", f.label()), move |t| {
            g.eval(((1.0 + t) * x0 - (1.0 - t)) / 2.0)
        })
    };
    let right = {
        let g = f.clone();
        Integrand::new(format!("{}[{x0},1]", f.label()), move |t| {
            g.eval(((1.0 + t) + (1.0 - t) * x0) / 2.0)
        })
    };
    let halves = [(left, (x0 + 1.0) / 2.0), (right, (1.0 - x0) / 2.0)];
    let mut total = 0.0;
    for (h, jac) in &halves {
        let v = match method {
            SplitMethod::Cc => integrate(&rules::cc_rule(n)?, h, None)?.approx,
            SplitMethod::Extrapolated { q, ladder } => {
                let mut cache = SampleCache::new();
                accel::richardson(h, n, *q, ladder, &mut cache)?.accelerated()
            }
        };
        total += jac * v;
    }
    Ok(total)
}
