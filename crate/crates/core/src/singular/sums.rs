//! Exact power sums behind the aliasing-error analysis:
//! Bernoulli numbers, Faulhaber sums `S(n, k) = sum_{r=1}^n r^{2k}` and
//! `H(n, k) = sum_{r=1}^n r^{2k} / (4r^2 - 1)`.
//!
//! Everything is computed in exact `i128` rationals. Floating-point evaluation
//! of the closed forms cancels catastrophically between Bernoulli terms.

use super::rational::Rational;
use crate::{Error, Result};

/// Largest Bernoulli index served.
pub const MAX_BERNOULLI: usize = 16;
/// Largest power index `k` accepted by the sums.
pub const MAX_POWER_INDEX: u32 = 8;
/// Largest `n` accepted by the sums. Overflow can still occur below this for
/// large `k`; it is reported as [`Error::Overflow`].
pub const MAX_TERMS: u64 = 1_000_000;

fn binomial(n: u32, k: u32) -> i128 {
    let k = k.min(n - k);
    (0..k).fold(1i128, |acc, i| acc * (n - i) as i128 / (i + 1) as i128)
}

fn factorial(n: u32) -> i128 {
    (1..=n as i128).product()
}

/// All Bernoulli numbers `B_0..=B_max` (with `B_1 = -1/2`) from
/// `sum_{j=0}^{m} C(m+1, j) B_j = 0`.
fn bernoulli_table(max: usize) -> Result<Vec<Rational>> {
    let mut b = vec![Rational::ONE];
    for m in 1..=max {
        let mut acc = Rational::ZERO;
        for (j, bj) in b.iter().enumerate() {
            let c = Rational::integer(binomial(m as u32 + 1, j as u32));
            acc = acc.checked_add(c.checked_mul(*bj)?)?;
        }
        let bm = acc
            .checked_neg()?
            .checked_div(Rational::integer(m as i128 + 1))?;
        b.push(bm);
    }
    Ok(b)
}

/// Bernoulli number `B_k` for `0 <= k <= 16`; odd `k > 1` gives zero.
pub fn bernoulli(k: usize) -> Result<Rational> {
    if k > MAX_BERNOULLI {
        return Err(Error::Range(format!(
            "Bernoulli index {k} exceeds {MAX_BERNOULLI}"
        )));
    }
    Ok(bernoulli_table(k)?[k])
}

fn check_args(n: u64, k: u32) -> Result<()> {
    if n == 0 || n > MAX_TERMS {
        return Err(Error::Range(format!("n = {n} outside 1..={MAX_TERMS}")));
    }
    if k == 0 || k > MAX_POWER_INDEX {
        return Err(Error::Range(format!(
            "k = {k} outside 1..={MAX_POWER_INDEX}"
        )));
    }
    Ok(())
}

fn power(n: u64, e: u32) -> Result<Rational> {
    (n as i128)
        .checked_pow(e)
        .map(Rational::integer)
        .ok_or(Error::Overflow("power of n"))
}

/// `S(n, k) = sum_{r=1}^n r^{2k}` by Faulhaber's formula.
pub fn faulhaber_sum(n: u64, k: u32) -> Result<Rational> {
    check_args(n, k)?;
    let b = bernoulli_table(2 * k as usize)?;
    let p = 2 * k;
    let mut s = power(n, p + 1)?.checked_div(Rational::integer(p as i128 + 1))?;
    s = s.checked_add(power(n, p)?.checked_div(Rational::integer(2))?)?;
    for j in 1..=k {
        // (2k)! / ((2j)! (2k-2j+1)!) = C(2k+1, 2j) / (2k+1)
        let c = Rational::new(binomial(p + 1, 2 * j), p as i128 + 1)?;
        let term = c
            .checked_mul(b[2 * j as usize])?
            .checked_mul(power(n, p - 2 * j + 1)?)?;
        s = s.checked_add(term)?;
    }
    Ok(s)
}

/// `H(n, 1) = n(n+1) / (2(2n+1))`.
fn lemma_h_base(n: u64) -> Result<Rational> {
    let n = n as i128;
    Rational::new(n * (n + 1), 2 * (2 * n + 1))
}

/// `H(n, k)` by the recurrence `4 H(n, j+1) = H(n, j) + S(n, j)`.
pub fn lemma_h(n: u64, k: u32) -> Result<Rational> {
    check_args(n, k)?;
    let mut h = lemma_h_base(n)?;
    let quarter = Rational::new(1, 4)?;
    for j in 1..k {
        h = h.checked_add(faulhaber_sum(n, j)?)?.checked_mul(quarter)?;
    }
    Ok(h)
}

/// Coefficients `nu_j^k`, `j = 1..=2k-1`, of the polynomial part of the
/// closed form for `H(n, k)`. Index 0 of the result is `nu_1^k`.
pub fn lemma_h_coefficients(k: u32) -> Result<Vec<Rational>> {
    if k == 0 || k > MAX_POWER_INDEX {
        return Err(Error::Range(format!(
            "k = {k} outside 1..={MAX_POWER_INDEX}"
        )));
    }
    let b = bernoulli_table(2 * k as usize)?;
    let four_pow = |p: u32| Rational::integer(4i128.pow(p));
    let mut nu = Vec::with_capacity(2 * k as usize - 1);
    for idx in 1..=(2 * k - 1) {
        let value = if idx % 2 == 0 {
            // nu_{2j}^k = 1 / 2^{2j+1}
            Rational::new(1, 1i128 << (idx + 1))?
        } else if idx == 2 * k - 1 {
            // nu_{2k-1}^k = sum_{p=1}^{k-1} B_{2k-2p} / 4^p
            let mut acc = Rational::ZERO;
            for p in 1..k {
                acc = acc.checked_add(b[(2 * k - 2 * p) as usize].checked_div(four_pow(p))?)?;
            }
            acc
        } else {
            // nu_{2j+1}^k = 1/(2k-2j-1)! sum_{p=1}^{j+1}
            //   (2k-2p)! / (2j-2p+2)! * B_{2j-2p+2} / 4^p
            let j = (idx - 1) / 2;
            let mut acc = Rational::ZERO;
            for p in 1..=j + 1 {
                let ratio = Rational::new(factorial(2 * k - 2 * p), factorial(2 * j + 2 - 2 * p))?;
                let term = ratio
                    .checked_mul(b[(2 * j + 2 - 2 * p) as usize])?
                    .checked_div(four_pow(p))?;
                acc = acc.checked_add(term)?;
            }
            acc.checked_div(Rational::integer(factorial(2 * k - 2 * j - 1)))?
        };
        nu.push(value);
    }
    Ok(nu)
}

/// `H(n, k)` by the closed form
/// `H(n,1) / 4^{k-1} + sum_{j=1}^{2k-1} nu_j^k n^{2k-j}`.
pub fn lemma_h_closed_form(n: u64, k: u32) -> Result<Rational> {
    check_args(n, k)?;
    let nu = lemma_h_coefficients(k)?;
    let mut h = lemma_h_base(n)?.checked_div(Rational::integer(4i128.pow(k - 1)))?;
    for (i, c) in nu.iter().enumerate() {
        let j = i as u32 + 1;
        h = h.checked_add(c.checked_mul(power(n, 2 * k - j)?)?)?;
    }
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i128, d: i128) -> Rational {
        Rational::new(n, d).unwrap()
    }

    #[test]
    fn bernoulli_values() {
        assert_eq!(bernoulli(0).unwrap(), Rational::ONE);
        assert_eq!(bernoulli(1).unwrap(), r(-1, 2));
        assert_eq!(bernoulli(2).unwrap(), r(1, 6));
        assert_eq!(bernoulli(3).unwrap(), Rational::ZERO);
        assert_eq!(bernoulli(4).unwrap(), r(-1, 30));
        assert_eq!(bernoulli(12).unwrap(), r(-691, 2730));
        assert_eq!(bernoulli(16).unwrap(), r(-3617, 510));
        assert!(matches!(bernoulli(17), Err(Error::Range(_))));
    }

    #[test]
    fn faulhaber_examples() {
        assert_eq!(faulhaber_sum(3, 1).unwrap(), Rational::integer(14));
        assert_eq!(faulhaber_sum(10, 2).unwrap(), Rational::integer(25333));
        for k in 1..=8 {
            assert_eq!(faulhaber_sum(1, k).unwrap(), Rational::ONE);
        }
        assert!(matches!(faulhaber_sum(3, 9), Err(Error::Range(_))));
        assert!(matches!(faulhaber_sum(0, 1), Err(Error::Range(_))));
    }

    #[test]
    fn faulhaber_overflow_is_reported() {
        assert!(matches!(
            faulhaber_sum(1_000_000, 8),
            Err(Error::Overflow(_))
        ));
    }

    #[test]
    fn lemma_h_examples() {
        assert_eq!(lemma_h(1, 1).unwrap(), r(1, 3));
        assert_eq!(lemma_h(2, 1).unwrap(), r(3, 5));
        assert_eq!(lemma_h(3, 2).unwrap(), r(26, 7));
        assert_eq!(lemma_h_closed_form(3, 2).unwrap(), r(26, 7));
    }

    #[test]
    fn low_order_coefficients() {
        // k = 1 has only nu_1 = 0; k = 2: nu_1 = 1/12, nu_2 = 1/8, nu_3 = 1/24.
        assert_eq!(lemma_h_coefficients(1).unwrap(), vec![Rational::ZERO]);
        assert_eq!(
            lemma_h_coefficients(2).unwrap(),
            vec![r(1, 12), r(1, 8), r(1, 24)]
        );
    }
}
