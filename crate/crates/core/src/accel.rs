//! Richardson extrapolation on nested Clenshaw-Curtis grids and empirical
//! convergence-rate fits.

use crate::engine::{self, Integrand, SampleCache};
use crate::rules;
use crate::singular::ExponentLadder;
use crate::transform;
use crate::{Error, Result};

/// Triangular array `R(j, 2^k n)`, `0 <= j <= q`, `0 <= k <= q - j`.
///
/// Row 0 holds plain Clenshaw-Curtis values; row `j + 1` removes the
/// `n^{-d_j - 1}` term from row `j`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtrapolationTableau {
    base_n: usize,
    d: Vec<f64>,
    rows: Vec<Vec<f64>>,
}

/// `(2^{d+1} fine - coarse) / (2^{d+1} - 1)`.
#[inline]
fn step(d: f64, coarse: f64, fine: f64) -> f64 {
    let p = 2f64.powf(d + 1.0);
    (p * fine - coarse) / (p - 1.0)
}

impl ExtrapolationTableau {
    /// Builds the tableau from `R(0, 2^k base_n)`, `k = 0..=q`, consuming the
    /// first `q` ladder exponents.
    pub fn from_base_row(base_n: usize, row: Vec<f64>, ladder: &ExponentLadder) -> Result<Self> {
        if row.is_empty() {
            return Err(Error::Input("the base row needs at least one value".into()));
        }
        let q = row.len() - 1;
        if ladder.len() < q {
            return Err(Error::Config(format!(
                "{q} extrapolation levels need {q} ladder exponents, got {}",
                ladder.len()
            )));
        }
        let d = ladder.as_slice()[..q].to_vec();
        let mut rows = vec![row];
        for (j, &dj) in d.iter().enumerate() {
            let prev = &rows[j];
            let next = prev.windows(2).map(|w| step(dj, w[0], w[1])).collect();
            rows.push(next);
        }
        Ok(Self { base_n, d, rows })
    }

    pub fn base_n(&self) -> usize {
        self.base_n
    }

    pub fn q(&self) -> usize {
        self.rows.len() - 1
    }

    /// The exponents `d_0..d_{q-1}` that were used.
    pub fn exponents(&self) -> &[f64] {
        &self.d
    }

    /// Row `j`: `R(j, 2^k base_n)` for `k = 0..=q-j`.
    pub fn row(&self, j: usize) -> &[f64] {
        &self.rows[j]
    }

    /// `R(j, 2^k base_n)`.
    pub fn entry(&self, j: usize, k: usize) -> Option<f64> {
        self.rows.get(j)?.get(k).copied()
    }

    /// `R(q, base_n)`.
    pub fn accelerated(&self) -> f64 {
        self.rows[self.q()][0]
    }

    /// True if every stored entry of rows `1..=q` is reproduced bit-for-bit
    /// from the row above it.
    pub fn is_consistent(&self) -> bool {
        self.d.iter().enumerate().all(|(j, &dj)| {
            self.rows[j]
                .windows(2)
                .zip(&self.rows[j + 1])
                .all(|(w, &r)| step(dj, w[0], w[1]).to_bits() == r.to_bits())
        })
    }
}

/// Runs `q` levels of extrapolation from `base_n`, sharing one cache so the
/// whole tableau costs `2^q base_n + 1` evaluations.
pub fn richardson(
    f: &Integrand,
    base_n: usize,
    q: usize,
    ladder: &ExponentLadder,
    cache: &mut SampleCache,
) -> Result<ExtrapolationTableau> {
    if base_n == 0 || !base_n.is_multiple_of(2) {
        return Err(Error::Size {
            n: base_n,
            reason: "extrapolation needs an even base size".into(),
        });
    }
    if transform::supported_size(base_n).is_none() {
        return Err(Error::Size {
            n: base_n,
            reason: "transform sizes must be m * 2^k with m in {1, 3, 5}".into(),
        });
    }
    if ladder.len() < q {
        return Err(Error::Config(format!(
            "{q} extrapolation levels need {q} ladder exponents, got {}",
            ladder.len()
        )));
    }
    let finest = base_n
        .checked_shl(q as u32)
        .filter(|n| n >> q == base_n)
        .ok_or_else(|| Error::Size {
            n: base_n,
            reason: format!("2^{q} times the base size overflows"),
        })?;
    cache.ensure(f, finest)?;
    let row = (0..=q)
        .map(|k| {
            let rule = rules::cc_rule(base_n << k)?;
            Ok(engine::integrate(&rule, f, Some(cache))?.approx)
        })
        .collect::<Result<Vec<_>>>()?;
    ExtrapolationTableau::from_base_row(base_n, row, ladder)
}

/// Fitted decay `err ~ C n^{-slope}`.
#[derive(Debug, Clone, PartialEq)]
pub struct RateEstimate {
    /// The decay exponent `p`, i.e. minus the log-log regression slope.
    pub slope: f64,
    pub window: Vec<(u64, f64)>,
    /// Points at or below the noise floor, or non-finite.
    pub discarded: Vec<(u64, f64)>,
}

/// `100 eps (1 + |i_ref|)`: errors below this are dominated by round-off.
pub fn default_noise_floor(i_ref: f64) -> f64 {
    100.0 * f64::EPSILON * (1.0 + i_ref.abs())
}

/// Unweighted least squares of `log|err|` on `log n` over the points above
/// `noise_floor`.
pub fn fit_rate(errors: &[(u64, f64)], noise_floor: f64) -> Result<RateEstimate> {
    let mut ns: Vec<u64> = errors.iter().map(|e| e.0).collect();
    ns.sort_unstable();
    if ns.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::Input("fit_rate needs distinct n values".into()));
    }
    if ns.first() == Some(&0) {
        return Err(Error::Input("fit_rate needs positive n values".into()));
    }
    let (window, discarded): (Vec<_>, Vec<_>) = errors
        .iter()
        .map(|&(n, e)| (n, e.abs()))
        .partition(|&(_, e)| e.is_finite() && e > noise_floor);
    if window.len() < 3 {
        return Err(Error::InsufficientData {
            usable: window.len(),
            required: 3,
        });
    }
    let pts: Vec<(f64, f64)> = window
        .iter()
        .map(|&(n, e)| ((n as f64).ln(), e.ln()))
        .collect();
    let m = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / m;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / m;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    Ok(RateEstimate {
        slope: -sxy / sxx,
        window,
        discarded,
    })
}
