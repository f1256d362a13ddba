//! Exact q-analog arithmetic: Gaussian binomials and factorials, rank counts
//! of matrices over a finite field and point counts of determinantal varieties.
//!
//! Every function takes `q` as a plain integer. Prime-powerness is checked once,
//! when a [`Params`] value is built; the counts themselves only depend on `q`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{inconsistent, invalid, Result};

/// Arbitrary-precision signed integer holding every count and weight.
pub type ExactInt = BigInt;

/// `q^e` for `e >= 0`.
pub fn qpow(q: u64, e: i64) -> ExactInt {
    assert!(e >= 0, "negative exponent {e}");
    num_traits::pow(BigInt::from(q), e as usize)
}

/// `x(x-1)/2`, extended polynomially to negative `x`.
pub fn binom2(x: i64) -> i64 {
    x * (x - 1) / 2
}

/// `(-1)^e` as an integer.
pub(crate) fn sign(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Divides `num` by `den`, failing with an internal-consistency error when
/// the remainder is nonzero.
pub fn exact_div(num: &ExactInt, den: &ExactInt, what: &str) -> Result<ExactInt> {
    if den.is_zero() {
        return inconsistent(format!("{what}: division by zero"));
    }
    let (quot, rem) = num.div_rem(den);
    if !rem.is_zero() {
        return inconsistent(format!("{what}: {num} is not divisible by {den}"));
    }
    Ok(quot)
}

fn check_q(q: u64) -> Result<()> {
    if q < 2 {
        return invalid(format!("q must be at least 2, got {q}"));
    }
    Ok(())
}

/// The Gaussian binomial coefficient `[n choose k]_q`, zero outside `0 <= k <= n`.
pub fn gaussian_binomial(n: i64, k: i64, q: u64) -> Result<ExactInt> {
    check_q(q)?;
    if n < 0 || k < 0 || k > n {
        return Ok(ExactInt::zero());
    }
    let k = k.min(n - k);
    let mut num = ExactInt::one();
    let mut den = ExactInt::one();
    for i in 0..k {
        num *= qpow(q, n - i) - 1;
        den *= qpow(q, i + 1) - 1;
    }
    exact_div(&num, &den, "gaussian binomial")
}

/// The Gaussian factorial `[n]_q! = (q-1)(q^2-1)...(q^n-1)`.
pub fn gaussian_factorial(n: i64, q: u64) -> Result<ExactInt> {
    check_q(q)?;
    if n < 0 {
        return invalid(format!("gaussian factorial of negative n = {n}"));
    }
    Ok((1..=n).map(|i| qpow(q, i) - 1).product())
}

/// The ratio `[m-s]_q! / [m-t]_q!` for `s <= t`, computed as the product
/// `prod_{i=m-t+1}^{m-s} (q^i - 1)`.
///
/// When `t > m` the range runs through `i = 0` and the product is zero, which
/// is the right value for every count it feeds.
pub fn factorial_ratio(m: i64, s: i64, t: i64, q: u64) -> ExactInt {
    debug_assert!(s <= t);
    (m - t + 1..=m - s).map(|i| {
        if i < 0 {
            // only reached when s > m, where the count it multiplies is empty
            ExactInt::zero()
        } else {
            qpow(q, i) - 1
        }
    })
    .product()
}

fn check_dims(ell: i64, m: i64) -> Result<()> {
    if ell < 0 || m < 0 {
        return invalid(format!("matrix dimensions must be nonnegative, got {ell}x{m}"));
    }
    Ok(())
}

/// Number of `ell x m` matrices over GF(q) of rank exactly `t`.
///
/// Uses `[m choose t]_q * prod_{i<t} (q^ell - q^i)`: the row space is a
/// `t`-dimensional subspace of GF(q)^m and the coefficients form a rank-`t`
/// `ell x t` matrix. Out-of-range `t` gives zero.
pub fn mu(t: i64, ell: i64, m: i64, q: u64) -> Result<ExactInt> {
    check_q(q)?;
    check_dims(ell, m)?;
    if t < 0 || t > ell.min(m) {
        return Ok(ExactInt::zero());
    }
    let mut count = gaussian_binomial(m, t, q)?;
    let q_ell = qpow(q, ell);
    for i in 0..t {
        count *= &q_ell - qpow(q, i);
    }
    Ok(count)
}

/// The alternative closed forms of `mu`, in this order:
/// the product form `q^C(t,2) prod (q^(ell-i)-1)(q^(m-i)-1)/(q^(i+1)-1)`,
/// `q^C(t,2) [m t]_q [ell]!/[ell-t]!`,
/// `q^C(t,2) [m]! [ell]! / ([m-t]! [t]! [ell-t]!)` and
/// `q^C(t,2) [ell t]_q [m]!/[m-t]!`.
///
/// Requires `0 <= t <= min(ell, m)`.
pub fn mu_alternative_forms(t: i64, ell: i64, m: i64, q: u64) -> Result<[ExactInt; 4]> {
    check_q(q)?;
    check_dims(ell, m)?;
    if t < 0 || t > ell.min(m) {
        return invalid(format!("rank {t} out of range for {ell}x{m} matrices"));
    }
    let lead = qpow(q, binom2(t));

    let mut num = ExactInt::one();
    let mut den = ExactInt::one();
    for i in 0..t {
        num *= (qpow(q, ell - i) - 1) * (qpow(q, m - i) - 1);
        den *= qpow(q, i + 1) - 1;
    }
    let product_form = &lead * exact_div(&num, &den, "mu product form")?;

    let fact = |n: i64| gaussian_factorial(n, q);
    let ell_ratio = exact_div(&fact(ell)?, &fact(ell - t)?, "[ell]!/[ell-t]!")?;
    let m_ratio = exact_div(&fact(m)?, &fact(m - t)?, "[m]!/[m-t]!")?;
    let second = &lead * gaussian_binomial(m, t, q)? * ell_ratio;
    let third = &lead
        * exact_div(
            &(fact(m)? * fact(ell)?),
            &(fact(m - t)? * fact(t)? * fact(ell - t)?),
            "mu factorial form",
        )?;
    let fourth = &lead * gaussian_binomial(ell, t, q)? * m_ratio;
    Ok([product_form, second, third, fourth])
}

/// Number of `ell x m` matrices of rank at most `t`.
pub fn nu(t: i64, ell: i64, m: i64, q: u64) -> Result<ExactInt> {
    let mut total = ExactInt::zero();
    for s in 0..=t {
        total += mu(s, ell, m, q)?;
    }
    Ok(total)
}

/// Number of points of the projective determinantal variety, `(nu_t - 1)/(q - 1)`.
pub fn projective_count(t: i64, ell: i64, m: i64, q: u64) -> Result<ExactInt> {
    if !(1 <= t && t <= ell && ell <= m) {
        return invalid(format!("need 1 <= t <= ell <= m, got t={t}, ell={ell}, m={m}"));
    }
    let affine = nu(t, ell, m, q)?;
    exact_div(&(affine - 1), &BigInt::from(q - 1), "projective point count")
}

/// Returns `(p, e)` with `q = p^e` and `p` prime, or `None`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q {
        if q.is_multiple_of(p) {
            break;
        }
        p += 1;
    }
    if p * p > q {
        return Some((q, 1));
    }
    let mut rest = q;
    let mut e = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

/// Validated code parameters: a prime power `q` and `1 <= t <= ell <= m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Params {
    pub q: u64,
    pub ell: usize,
    pub m: usize,
    pub t: usize,
}

impl Params {
    pub fn new(q: u64, ell: usize, m: usize, t: usize) -> Result<Self> {
        if prime_power(q).is_none() {
            return invalid(format!("q = {q} is not a prime power"));
        }
        if !(1 <= t && t <= ell && ell <= m) {
            return invalid(format!("need 1 <= t <= ell <= m, got t={t}, ell={ell}, m={m}"));
        }
        Ok(Params { q, ell, m, t })
    }

    /// Same shape and field, different `t`.
    pub fn with_t(&self, t: usize) -> Result<Self> {
        Params::new(self.q, self.ell, self.m, t)
    }

    pub fn dims(&self) -> Dims {
        Dims::new(self.q, self.ell as i64, self.m as i64)
    }

    /// Dimension `ell * m` of the code.
    pub fn dimension(&self) -> usize {
        self.ell * self.m
    }
}

/// Field size and matrix shape without a rank bound.
///
/// Unlike [`Params`] this allows `ell > m` and zero sizes, since the
/// recursions evaluate counts at shrunken shapes such as `(ell, m-1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Dims {
    pub q: u64,
    pub ell: i64,
    pub m: i64,
}

impl Dims {
    pub const fn new(q: u64, ell: i64, m: i64) -> Self {
        Dims { q, ell, m }
    }

    pub fn shrink(&self, rows: i64, cols: i64) -> Self {
        Dims::new(self.q, self.ell - rows, self.m - cols)
    }

    pub fn mu(&self, t: i64) -> Result<ExactInt> {
        mu(t, self.ell, self.m, self.q)
    }

    pub fn nu(&self, t: i64) -> Result<ExactInt> {
        nu(t, self.ell, self.m, self.q)
    }

    pub fn pow(&self, e: i64) -> ExactInt {
        qpow(self.q, e)
    }

    pub fn binomial(&self, n: i64, k: i64) -> Result<ExactInt> {
        gaussian_binomial(n, k, self.q)
    }
}
