//! Clenshaw-Curtis and Gauss-Legendre rules on `[-1, 1]`.
//!
//! Clenshaw-Curtis nodes are stored in decreasing order (`x_0 = 1`),
//! Gauss-Legendre nodes in increasing order. Do not assume a shared ordering.

use std::f64::consts::PI;

use crate::exec::Execution;
use crate::transform::{self, lobatto_node};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RuleKind {
    ClenshawCurtis,
    GaussLegendre,
}

impl RuleKind {
    pub fn name(self) -> &'static str {
        match self {
            RuleKind::ClenshawCurtis => "cc",
            RuleKind::GaussLegendre => "gl",
        }
    }
}

/// Nodes and weights of an interpolatory rule.
///
/// For Clenshaw-Curtis `n` is the number of intervals (`n + 1` points); for
/// Gauss-Legendre it is the number of points.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    kind: RuleKind,
    n: usize,
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn kind(&self) -> RuleKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Highest polynomial degree integrated exactly.
    pub fn exactness_degree(&self) -> usize {
        match self.kind {
            RuleKind::ClenshawCurtis => self.n,
            RuleKind::GaussLegendre => 2 * self.n - 1,
        }
    }
}

/// End-halving coefficient: `1/2` for `j == 0` or `j == n`, else `1`.
#[inline]
pub fn delta(j: usize, n: usize) -> f64 {
    if j == 0 || j == n {
        0.5
    } else {
        1.0
    }
}

fn check_positive(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Size {
            n,
            reason: "rule size must be at least 1".into(),
        });
    }
    Ok(())
}

fn cc_nodes(n: usize) -> Vec<f64> {
    (0..=n).map(|j| lobatto_node(j, n)).collect()
}

/// Clenshaw-Curtis rule from the explicit cosine-sum weight formula, `O(n^2)`.
pub fn cc_rule_direct(n: usize) -> Result<QuadratureRule> {
    cc_rule_direct_with(n, Execution::default())
}

pub fn cc_rule_direct_with(n: usize, exec: Execution) -> Result<QuadratureRule> {
    check_positive(n)?;
    let half = n / 2;
    let weights = exec.map_range(n + 1, |j| {
        let mut acc = 0.0;
        for k in 0..=half {
            // 2k == n only happens for even n; that term is halved too.
            let d = delta(2 * k, n);
            let kk = k as f64;
            let r = (2 * j * k) % (2 * n);
            acc += d / (1.0 - 4.0 * kk * kk) * (PI * (r as f64 / n as f64)).cos();
        }
        4.0 * delta(j, n) / n as f64 * acc
    });
    Ok(QuadratureRule {
        kind: RuleKind::ClenshawCurtis,
        n,
        nodes: cc_nodes(n),
        weights,
    })
}

/// Clenshaw-Curtis rule with weights from one DCT-I, `O(n log n)`.
pub fn cc_rule_fast(n: usize) -> Result<QuadratureRule> {
    check_positive(n)?;
    // Moments of T_m: 2/(1 - m^2) for even m, 0 for odd m.
    let moments: Vec<f64> = (0..=n)
        .map(|m| {
            if m % 2 == 0 {
                let mm = m as f64;
                2.0 / (1.0 - mm * mm)
            } else {
                0.0
            }
        })
        .collect();
    let c = transform::dct1(&moments)?;
    let scale = 2.0 / n as f64;
    let weights = c
        .iter()
        .enumerate()
        .map(|(j, cj)| scale * delta(j, n) * cj)
        .collect();
    Ok(QuadratureRule {
        kind: RuleKind::ClenshawCurtis,
        n,
        nodes: cc_nodes(n),
        weights,
    })
}

/// Clenshaw-Curtis rule using the fast path when the size allows it.
pub fn cc_rule(n: usize) -> Result<QuadratureRule> {
    if transform::supported_size(n).is_some() {
        cc_rule_fast(n)
    } else {
        cc_rule_direct(n)
    }
}

const NEWTON_MAX_ITER: usize = 100;

/// `(P_n(x), P_n'(x))` by the three-term recurrence. Requires `|x| < 1`.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let (mut p_prev, mut p) = (1.0, x);
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0) * x * p - kf * p_prev) / (kf + 1.0);
        p_prev = p;
        p = next;
    }
    let dp = n as f64 * (x * p - p_prev) / (x * x - 1.0);
    (p, dp)
}

/// Newton iteration for the `i`-th largest root of `P_n`.
fn legendre_root(n: usize, i: usize) -> Result<(f64, f64)> {
    let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
    for _ in 0..NEWTON_MAX_ITER {
        let (p, dp) = legendre_with_derivative(n, x);
        let dx = p / dp;
        x -= dx;
        if dx.abs() <= 4.0 * f64::EPSILON {
            let (_, dp) = legendre_with_derivative(n, x);
            return Ok((x, dp));
        }
    }
    Err(Error::Numeric(format!(
        "Newton iteration for Gauss-Legendre root {i} of {n} did not converge"
    )))
}

/// `n`-point Gauss-Legendre rule; nodes increasing.
pub fn gl_rule(n: usize) -> Result<QuadratureRule> {
    gl_rule_with(n, Execution::default())
}

pub fn gl_rule_with(n: usize, exec: Execution) -> Result<QuadratureRule> {
    check_positive(n)?;
    let half = n / 2;
    let roots = exec.map_range(half, |i| legendre_root(n, i));

    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for (i, r) in roots.into_iter().enumerate() {
        let (x, dp) = r?;
        let w = 2.0 / ((1.0 - x) * (1.0 + x) * dp * dp);
        nodes[n - 1 - i] = x;
        weights[n - 1 - i] = w;
        nodes[i] = -x;
        weights[i] = w;
    }
    if n % 2 == 1 {
        // P_n'(0) = n P_{n-1}(0) for odd n.
        let (p_nm1, _) = if n > 1 {
            legendre_with_derivative(n - 1, 0.0)
        } else {
            (1.0, 0.0)
        };
        let dp = n as f64 * p_nm1;
        nodes[half] = 0.0;
        weights[half] = 2.0 / (dp * dp);
    }
    Ok(QuadratureRule {
        kind: RuleKind::GaussLegendre,
        n,
        nodes,
        weights,
    })
}
