//! Fast cosine transforms on Chebyshev-Lobatto grids.
//!
//! The DCT-I of length `n + 1` is computed from a complex FFT of the even
//! extension of length `2n`. The FFT splits radix-2 recursively down to an odd
//! base of 1, 3 or 5 points, which is summed directly, so supported sizes are
//! `n = m * 2^k` with `m` in `{1, 3, 5}`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::{Error, Result};

/// The `j`-th Chebyshev-Lobatto point `cos(j*pi/n)`.
///
/// Evaluated as `sin(pi * (n - 2j) / (2n))`, which is exactly antisymmetric in
/// `j -> n - j` and gives an exact zero at the midpoint. The argument is a
/// ratio of integers, so node `j` of size `n` and node `2j` of size `2n` are
/// bit-identical.
#[inline]
pub fn lobatto_node(j: usize, n: usize) -> f64 {
    debug_assert!(j <= n && n > 0);
    let num = n as f64 - 2.0 * j as f64;
    (PI * (num / (2.0 * n as f64))).sin()
}

/// Returns the odd base `m` if `n = m * 2^k` with `m` in `{1, 3, 5}`.
pub fn supported_size(n: usize) -> Option<usize> {
    if n == 0 {
        return None;
    }
    let m = n >> n.trailing_zeros();
    matches!(m, 1 | 3 | 5).then_some(m)
}

fn check_size(n: usize) -> Result<()> {
    if supported_size(n).is_none() {
        return Err(Error::Size {
            n,
            reason: "transform sizes must be m * 2^k with m in {1, 3, 5}".into(),
        });
    }
    Ok(())
}

/// Angles `theta_j = j*pi/n`, `j = 0..=n`, of a Chebyshev-Lobatto grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ChebGrid {
    n: usize,
    angles: Vec<f64>,
}

impl ChebGrid {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Size {
                n,
                reason: "a Lobatto grid needs at least one interval".into(),
            });
        }
        let angles = (0..=n).map(|j| PI * (j as f64 / n as f64)).collect();
        Ok(Self { n, angles })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn angles(&self) -> &[f64] {
        &self.angles
    }

    /// Nodes `x_j = cos(theta_j)`, decreasing from `+1` to `-1`.
    pub fn nodes(&self) -> Vec<f64> {
        (0..=self.n).map(|j| lobatto_node(j, self.n)).collect()
    }

    /// Samples `f` at the grid nodes.
    pub fn sample<F: Fn(f64) -> f64>(&self, f: F) -> Vec<f64> {
        (0..=self.n).map(|j| f(lobatto_node(j, self.n))).collect()
    }
}

/// Normalisation of a Chebyshev coefficient vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoeffConvention {
    /// `f = a_0/2 + sum_{k=1}^{n-1} a_k T_k + a_n T_n / 2`.
    HalvedEnds,
}

/// Chebyshev coefficients `a_0..=a_n` of an interpolant on `n + 1` Lobatto
/// points.
#[derive(Debug, Clone, PartialEq)]
pub struct ChebCoeffs {
    coeffs: Vec<f64>,
    convention: CoeffConvention,
}

impl ChebCoeffs {
    /// Wraps raw coefficients in the halved-ends convention.
    pub fn from_halved_ends(coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(Error::Input("need at least two coefficients".into()));
        }
        Ok(Self {
            coeffs,
            convention: CoeffConvention::HalvedEnds,
        })
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.coeffs
    }

    pub fn convention(&self) -> CoeffConvention {
        self.convention
    }

    /// Degree `n`; there are `n + 1` coefficients.
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }
}

/// DCT-I with halved end terms:
/// `c_k = sum''_{j=0..n} v_j cos(j k pi / n)`.
pub fn dct1(values: &[f64]) -> Result<Vec<f64>> {
    let n = values.len().saturating_sub(1);
    check_size(n)?;
    if let Some(j) = values.iter().position(|v| !v.is_finite()) {
        return Err(Error::Input(format!(
            "non-finite value {} at index {j}",
            values[j]
        )));
    }

    // Even extension y_j = v_j, y_{2n-j} = v_j. Its DFT is
    // v_0 + (-1)^k v_n + 2 sum_{j=1}^{n-1} v_j cos(pi j k / n) = 2 c_k.
    let len = 2 * n;
    let mut ext = Vec::with_capacity(len);
    ext.extend(values.iter().map(|&v| Complex64::new(v, 0.0)));
    ext.extend(values[1..n].iter().rev().map(|&v| Complex64::new(v, 0.0)));

    let spectrum = fft(&ext);
    Ok(spectrum[..=n].iter().map(|z| 0.5 * z.re).collect())
}

/// Chebyshev interpolation coefficients from samples `f(cos(j pi / n))`.
pub fn cheb_coeffs(samples: &[f64]) -> Result<ChebCoeffs> {
    let n = samples.len().saturating_sub(1);
    let scale = 2.0 / n as f64;
    let mut c = dct1(samples)?;
    c.iter_mut().for_each(|a| *a *= scale);
    ChebCoeffs::from_halved_ends(c)
}

/// Evaluates a halved-ends Chebyshev series at `x` by Clenshaw's recurrence.
pub fn cheb_eval(coeffs: &ChebCoeffs, x: f64) -> Result<f64> {
    if !(-1.0..=1.0).contains(&x) {
        return Err(Error::Domain(format!("x = {x} outside [-1, 1]")));
    }
    let a = coeffs.as_slice();
    let n = a.len() - 1;
    let coeff = |k: usize| if k == 0 || k == n { 0.5 * a[k] } else { a[k] };

    let (mut b1, mut b2) = (0.0, 0.0);
    for k in (1..=n).rev() {
        let b0 = coeff(k) + 2.0 * x * b1 - b2;
        b2 = b1;
        b1 = b0;
    }
    Ok(coeff(0) + x * b1 - b2)
}

/// Forward DFT `Y_k = sum_j y_j exp(-2 pi i j k / L)` for `L = m * 2^p`.
fn fft(input: &[Complex64]) -> Vec<Complex64> {
    let len = input.len();
    let twiddles: Vec<Complex64> = (0..len)
        .map(|k| Complex64::from_polar(1.0, -2.0 * PI * (k as f64 / len as f64)))
        .collect();
    let mut out = vec![Complex64::new(0.0, 0.0); len];
    fft_rec(input, 1, &mut out, &twiddles);
    out
}

/// Decimation in time. `input[j * stride]` for `j < out.len()` is the
/// subsequence being transformed; `twiddles` is the table for the full length.
fn fft_rec(input: &[Complex64], stride: usize, out: &mut [Complex64], twiddles: &[Complex64]) {
    let len = out.len();
    let tw_step = twiddles.len() / len;

    if len % 2 == 1 {
        for (k, slot) in out.iter_mut().enumerate() {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 0..len {
                acc += input[j * stride] * twiddles[((j * k) % len) * tw_step];
            }
            *slot = acc;
        }
        return;
    }

    let half = len / 2;
    {
        let (even, odd) = out.split_at_mut(half);
        fft_rec(input, 2 * stride, even, twiddles);
        fft_rec(&input[stride..], 2 * stride, odd, twiddles);
    }
    for k in 0..half {
        let t = twiddles[k * tw_step] * out[half + k];
        let e = out[k];
        out[k] = e + t;
        out[half + k] = e - t;
    }
}
