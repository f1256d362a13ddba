//! Closed forms for the weights of determinantal codes.
//!
//! The central quantity is `wfrak_hat(r, t)`: the number of rank-`t` matrices
//! with nonzero `r`-th partial trace, divided by `q - 1`. It is computed from
//! the bilinear-forms eigenvalue `P_t(r)` ([`p_delsarte`]). Two independent
//! routes exist for cross-checking: the alternative eigenvalue expression
//! ([`p_alternative`]) and the rank-slice decomposition ([`slice_weight`]).
//!
//! Intermediate values may be negative; only final counts are checked.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{inconsistent, invalid, Result};
use crate::qcomb::{binom2, exact_div, factorial_ratio, sign, Dims, ExactInt, Params};

/// A rank slice: matrices whose first `r` rows have rank `s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SliceKey {
    pub r: i64,
    pub s: i64,
}

impl SliceKey {
    pub const fn new(r: i64, s: i64) -> Self {
        SliceKey { r, s }
    }
}

fn check_index(name: &str, v: i64, lo: i64, hi: i64) -> Result<()> {
    if v < lo || v > hi {
        return invalid(format!("{name} = {v} outside {lo}..={hi}"));
    }
    Ok(())
}

/// `P_t(r) = sum_i (-1)^(t-i) q^(i m + C(t-i,2)) [ell-i, ell-t]_q [ell-r, i]_q`.
pub fn p_delsarte(t: i64, r: i64, d: &Dims) -> Result<ExactInt> {
    check_index("t", t, 0, d.ell)?;
    check_index("r", r, 0, d.ell)?;
    let mut total = ExactInt::zero();
    for i in 0..=d.ell {
        let g1 = d.binomial(d.ell - i, d.ell - t)?;
        if g1.is_zero() {
            continue;
        }
        let g2 = d.binomial(d.ell - r, i)?;
        if g2.is_zero() {
            continue;
        }
        let term = d.pow(i * d.m + binom2(t - i)) * g1 * g2;
        total += term * sign(t - i);
    }
    Ok(total)
}

/// The slice-sum expression for `P_t(r)`:
/// `sum_s q^C(s,2) (-1)^s [m-s]!/[m-t]! q^(s(ell-r)) q^C(t-s,2) [r,s]_q [ell-r,t-s]_q`.
pub fn p_alternative(t: i64, r: i64, d: &Dims) -> Result<ExactInt> {
    check_index("t", t, 0, d.ell)?;
    check_index("r", r, 0, d.ell)?;
    let mut total = ExactInt::zero();
    for s in 0..=r {
        // [ell-r, t-s] vanishes for s > t, so the factorial ratio is never
        // needed outside s <= t.
        let g2 = d.binomial(d.ell - r, t - s)?;
        if g2.is_zero() {
            continue;
        }
        let term = d.pow(binom2(s) + s * (d.ell - r) + binom2(t - s))
            * factorial_ratio(d.m, s, t, d.q)
            * d.binomial(r, s)?
            * g2;
        total += term * sign(s);
    }
    Ok(total)
}

/// Rank-`t` matrices with nonzero `r`-th partial trace, divided by `q - 1`:
/// `(mu_t - P_t(r)) / q`.
pub fn wfrak_hat(r: i64, t: i64, d: &Dims) -> Result<ExactInt> {
    check_index("r", r, 0, d.ell)?;
    check_index("t", t, 0, d.ell)?;
    if r == 0 || t == 0 {
        return Ok(ExactInt::zero());
    }
    let diff = d.mu(t)? - p_delsarte(t, r, d)?;
    let value = exact_div(&diff, &ExactInt::from(d.q), "wfrak_hat")?;
    if value.is_negative() {
        return inconsistent(format!("negative count wfrak_hat({r},{t}) = {value}"));
    }
    Ok(value)
}

fn check_slice(key: SliceKey, t: i64, d: &Dims) -> Result<()> {
    check_index("r", key.r, 1, d.ell)?;
    check_index("t", t, 0, d.ell)?;
    if key.s < 0 {
        return invalid(format!("slice rank s = {} is negative", key.s));
    }
    Ok(())
}

// Closed forms without bounds checks. They vanish on their own wherever the
// count is empty (t > ell, t > m, s > t, s > r), which the recursion checks
// rely on when they step down to smaller shapes.
fn slice_cardinality_raw(key: SliceKey, t: i64, d: &Dims) -> Result<ExactInt> {
    let SliceKey { r, s } = key;
    if s > t || t < 0 {
        return Ok(ExactInt::zero());
    }
    let g2 = d.binomial(d.ell - r, t - s)?;
    if g2.is_zero() {
        return Ok(ExactInt::zero());
    }
    Ok(factorial_ratio(d.m, 0, t, d.q)
        * d.pow(s * (d.ell - r) + binom2(s) + binom2(t - s))
        * d.binomial(r, s)?
        * g2)
}

fn slice_weight_raw(key: SliceKey, t: i64, d: &Dims) -> Result<ExactInt> {
    let SliceKey { r, s } = key;
    if s > t || t < 0 {
        return Ok(ExactInt::zero());
    }
    let g2 = d.binomial(d.ell - r, t - s)?;
    if g2.is_zero() {
        return Ok(ExactInt::zero());
    }
    let bracket = factorial_ratio(d.m, 0, t, d.q) - factorial_ratio(d.m, s, t, d.q) * sign(s);
    let numerator = (d.q - 1)
        * d.pow(binom2(s) + s * (d.ell - r) + binom2(t - s))
        * bracket
        * d.binomial(r, s)?
        * g2;
    exact_div(&numerator, &ExactInt::from(d.q), "slice weight")
}

/// Number of rank-`t` matrices whose first `r` rows have rank `s`.
pub fn slice_cardinality(key: SliceKey, t: i64, d: &Dims) -> Result<ExactInt> {
    check_slice(key, t, d)?;
    slice_cardinality_raw(key, t, d)
}

/// Number of matrices in the slice with nonzero `r`-th partial trace.
pub fn slice_weight(key: SliceKey, t: i64, d: &Dims) -> Result<ExactInt> {
    check_slice(key, t, d)?;
    slice_weight_raw(key, t, d)
}

/// `sum_s slice_weight(r, s, t)`, the rank-`t` matrices with nonzero
/// `tau_r`, computed through the slice decomposition only.
pub fn wfrak_by_slices(r: i64, t: i64, d: &Dims) -> Result<ExactInt> {
    let mut total = ExactInt::zero();
    for s in 1..=r.min(t) {
        total += slice_weight_raw(SliceKey::new(r, s), t, d)?;
    }
    Ok(total)
}

/// `A(r,t) = q^t wfrak_hat_{r-1}(t; ell-1, m-1) + q^(t-1) (mu_t(ell-1,m) - mu_t(ell-1,m-1))`.
pub fn a_quantity(r: i64, t: i64, d: &Dims) -> Result<ExactInt> {
    check_index("r", r, 1, d.ell)?;
    if t < 0 || t >= d.ell {
        return invalid(format!("A(r,t) needs 0 <= t < ell, got t = {t}"));
    }
    if t == 0 {
        return Ok(ExactInt::zero());
    }
    let minor = d.shrink(1, 1);
    let fewer_rows = d.shrink(1, 0);
    Ok(d.pow(t) * wfrak_hat(r - 1, t, &minor)?
        + d.pow(t - 1) * (fewer_rows.mu(t)? - minor.mu(t)?))
}

/// `q^(ell+m-2) nu_{t-1}(ell-1, m-1)`: the smallest nonzero weight.
pub fn compact_min_weight(t: i64, d: &Dims) -> Result<ExactInt> {
    Ok(d.pow(d.ell + d.m - 2) * d.shrink(1, 1).nu(t - 1)?)
}

/// Weight of a codeword whose linear form has a rank-`r` coefficient matrix.
///
/// Summed from [`wfrak_hat`]; for `t < ell` and `r >= 1` it is also checked
/// against `A(r,t) + q^(m-1) nu_{t-1}(ell-1, m)`, the telescoped sum of the
/// key recursion.
pub fn w_hat(r: i64, t: i64, d: &Dims) -> Result<ExactInt> {
    check_index("r", r, 0, d.ell)?;
    check_index("t", t, 1, d.ell)?;
    let mut total = ExactInt::zero();
    for s in 1..=t {
        total += wfrak_hat(r, s, d)?;
    }
    if r >= 1 && t < d.ell {
        let other = a_quantity(r, t, d)? + d.pow(d.m - 1) * d.shrink(1, 0).nu(t - 1)?;
        if other != total {
            return inconsistent(format!(
                "w_hat({r},{t}) = {total} but A(r,t) + q^(m-1) nu = {other}"
            ));
        }
    }
    Ok(total)
}

/// The `ell + 1` weights `w_hat_0 .. w_hat_ell` of the code.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightTable {
    pub params: Params,
    pub w: Vec<ExactInt>,
}

impl WeightTable {
    /// Nonzero weights `w_hat_1 .. w_hat_ell`.
    pub fn nonzero(&self) -> &[ExactInt] {
        &self.w[1..]
    }
}

pub fn weight_table(params: &Params) -> Result<WeightTable> {
    let d = params.dims();
    let t = params.t as i64;
    let w = (0..=d.ell).map(|r| w_hat(r, t, &d)).collect::<Result<Vec<_>>>()?;

    if !w[0].is_zero() {
        return inconsistent("w_hat_0 must vanish");
    }
    let compact = compact_min_weight(t, &d)?;
    if w[1] != compact {
        return inconsistent(format!("w_hat_1 = {} but q^(ell+m-2) nu = {compact}", w[1]));
    }
    if t == d.ell {
        let rm = d.pow(d.ell * d.m - 1);
        if w[1..].iter().any(|x| *x != rm) {
            return inconsistent("t = ell must give the constant weight q^(ell m - 1)");
        }
    }
    if w[1..].iter().any(|x| *x < w[1]) {
        return inconsistent("w_hat_1 is not the minimum nonzero weight");
    }
    Ok(WeightTable { params: *params, w })
}

/// `sum_{s=1}^{ell} P_s(r)`, which is `-1` for `r >= 1`.
pub fn eigenvalue_sum(r: i64, d: &Dims) -> Result<ExactInt> {
    (1..=d.ell).map(|s| p_delsarte(s, r, d)).sum()
}

/// Whether `sum_{s=1}^{ell} P_s(r) = -1`.
pub fn check_identity_sum(r: i64, d: &Dims) -> bool {
    matches!(eigenvalue_sum(r, d), Ok(v) if v == ExactInt::from(-1))
}

/// Both sides of `wfrak_hat_r(t) = A(r,t) - A(r,t-1) + q^(m-1) mu_{t-1}(ell-1, m)`.
pub fn keyrec_sides(r: i64, t: i64, d: &Dims) -> Result<(ExactInt, ExactInt)> {
    let lhs = wfrak_hat(r, t, d)?;
    let rhs = a_quantity(r, t, d)? - a_quantity(r, t - 1, d)?
        + d.pow(d.m - 1) * d.shrink(1, 0).mu(t - 1)?;
    Ok((lhs, rhs))
}

pub fn check_keyrec(r: i64, t: i64, d: &Dims) -> bool {
    matches!(keyrec_sides(r, t, d), Ok((a, b)) if a == b)
}

/// Both sides of the row-deletion recursion for a slice (when `ell > r`)
/// and of the column-deletion recursion for the aggregate
/// `sum_s slice_weight` (when `m > r`), all evaluated through the slice
/// closed form.
///
/// The column-deletion identity does not hold slice by slice: deleting a
/// column can drop the rank of the leading rows.
pub fn slice_recursion_sides(key: SliceKey, t: i64, d: &Dims) -> Result<Vec<(ExactInt, ExactInt)>> {
    check_slice(key, t, d)?;
    let mut out = Vec::new();
    if d.ell > key.r && t >= 1 {
        let up = d.shrink(1, 0);
        let lhs = slice_weight_raw(key, t, d)?;
        let rhs = d.pow(t) * slice_weight_raw(key, t, &up)?
            + (d.pow(d.m) - d.pow(t - 1)) * slice_weight_raw(key, t - 1, &up)?;
        out.push((lhs, rhs));
    }
    if d.m > key.r && t >= 1 {
        let left = d.shrink(0, 1);
        let lhs = wfrak_by_slices(key.r, t, d)?;
        let rhs = d.pow(t) * wfrak_by_slices(key.r, t, &left)?
            + (d.pow(d.ell) - d.pow(t - 1)) * wfrak_by_slices(key.r, t - 1, &left)?;
        out.push((lhs, rhs));
    }
    Ok(out)
}

pub fn check_slice_recursions(key: SliceKey, t: i64, d: &Dims) -> bool {
    matches!(slice_recursion_sides(key, t, d), Ok(v) if v.iter().all(|(a, b)| a == b))
}

/// Column-deletion recursion applied to a single slice. It fails in general;
/// kept so the failure can be demonstrated.
pub fn slice_column_recursion_holds(key: SliceKey, t: i64, d: &Dims) -> Result<bool> {
    check_slice(key, t, d)?;
    let left = d.shrink(0, 1);
    let lhs = slice_weight_raw(key, t, d)?;
    let rhs = d.pow(t) * slice_weight_raw(key, t, &left)?
        + (d.pow(d.ell) - d.pow(t - 1)) * slice_weight_raw(key, t - 1, &left)?;
    Ok(lhs == rhs)
}

/// Evidence about the ordering of the nonzero weights for one `t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureVerdict {
    pub params: Params,
    /// `1 < t < ell`.
    pub in_range: bool,
    /// All nonzero weights coincide.
    pub degenerate: bool,
    /// (1) the weights are pairwise distinct.
    pub distinct: bool,
    /// (2) `w_1 < w_2 < ... < w_{ell-t+1}`.
    pub increasing_prefix: bool,
    /// (3) for `ell-t+2 <= r <= ell`, `w_r` lies strictly between `w_{r-2}` and `w_{r-1}`.
    pub interleaving: bool,
    /// Indices `r` sorted by weight, ties broken by `r`.
    pub ordering: Vec<usize>,
    /// `w_0 .. w_ell`.
    pub weights: Vec<ExactInt>,
}

impl ConjectureVerdict {
    /// Which of the three clauses fail, by number.
    pub fn violated_clauses(&self) -> Vec<u8> {
        let mut out = Vec::new();
        if !self.distinct {
            out.push(1);
        }
        if !self.increasing_prefix {
            out.push(2);
        }
        if !self.interleaving {
            out.push(3);
        }
        out
    }

    pub fn holds(&self) -> bool {
        self.violated_clauses().is_empty()
    }
}

/// Evaluates the three ordering clauses on `weights[0..=ell]` for rank bound `t`.
pub fn ordering_verdict(params: &Params, weights: Vec<ExactInt>) -> ConjectureVerdict {
    let ell = params.ell;
    let t = params.t;
    let nz = &weights[1..];
    let mut sorted = nz.to_vec();
    sorted.sort();
    sorted.dedup();
    let distinct = sorted.len() == nz.len();
    let degenerate = sorted.len() == 1;
    let increasing_prefix = (1..ell - t + 1).all(|r| weights[r] < weights[r + 1]);
    let interleaving = (ell - t + 2..=ell).filter(|&r| r >= 2).all(|r| {
        let (a, b) = (&weights[r - 2], &weights[r - 1]);
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        lo < &weights[r] && &weights[r] < hi
    });
    let mut ordering: Vec<usize> = (1..=ell).collect();
    ordering.sort_by(|&a, &b| weights[a].cmp(&weights[b]).then(a.cmp(&b)));
    ConjectureVerdict {
        params: *params,
        in_range: 1 < t && t < ell,
        degenerate,
        distinct,
        increasing_prefix,
        interleaving,
        ordering,
        weights,
    }
}

/// The ordering clauses on the code weights `w_hat_r(t)`.
pub fn conjecture_report(params: &Params) -> Result<ConjectureVerdict> {
    Ok(ordering_verdict(params, weight_table(params)?.w))
}

/// The same clauses on the rank-`t` counts `wfrak_hat_r(t)`.
pub fn wfrak_ordering_report(params: &Params) -> Result<ConjectureVerdict> {
    let d = params.dims();
    let w = (0..=d.ell)
        .map(|r| wfrak_hat(r, params.t as i64, &d))
        .collect::<Result<Vec<_>>>()?;
    Ok(ordering_verdict(params, w))
}
