//! Brute-force ground truth.
//!
//! Everything here is computed by enumerating matrices, codewords or
//! subcodes and looking at them one by one. Nothing in this module uses the
//! closed forms it is meant to check; the only shared pieces are field
//! arithmetic and Gaussian elimination.
//!
//! Enumerations are split by leading-entry prefix and the partial counts are
//! added, so serial and parallel runs give identical results.

use std::collections::BTreeMap;

use num_traits::Zero;
use rayon::prelude::*;

use crate::code::{Code, WeightDistribution};
use crate::error::{inconsistent, invalid, Result};
use crate::field::{Elem, FieldTables};
use crate::matrix::{
    check_guard, is_canonical, matrix_count, packed, prefix_ranks, prefixes, EchelonBasis,
    GfMatrix, LinearForm, MatrixIter, DEFAULT_ENUMERATION_GUARD,
};
use crate::qcomb::{gaussian_binomial, ExactInt, Params};

/// Default ceiling on the number of subcodes [`ghw_exhaustive`] may visit.
pub const DEFAULT_SUBSPACE_GUARD: u64 = 1_000_000;

/// How an enumeration is run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumConfig {
    /// Maximum number of objects one enumeration may visit.
    pub guard: u64,
    /// Split the work across the current rayon pool.
    pub parallel: bool,
    /// Use the bit-packed path when q = 2.
    pub packed: bool,
}

impl Default for EnumConfig {
    fn default() -> Self {
        EnumConfig { guard: DEFAULT_ENUMERATION_GUARD, parallel: true, packed: true }
    }
}

impl EnumConfig {
    pub fn serial() -> Self {
        EnumConfig { parallel: false, ..Self::default() }
    }

    pub fn with_guard(guard: u64) -> Self {
        EnumConfig { guard, ..Self::default() }
    }
}

/// Number of matrices of each rank `0..=ell`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankHistogram {
    pub q: u64,
    pub ell: usize,
    pub m: usize,
    pub counts: Vec<ExactInt>,
}

/// One pass over all `ell x m` matrices, recording for each rank `t`, each
/// `r` in `1..=ell` and the rank `s` of the first `r` rows how many matrices
/// there are and how many have nonzero `r`-th partial trace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Census {
    pub q: u64,
    pub ell: usize,
    pub m: usize,
    rank: Vec<u64>,
    slice_card: Vec<u64>,
    slice_nonzero: Vec<u64>,
}

impl Census {
    fn empty(q: u64, ell: usize, m: usize) -> Self {
        let n = ell + 1;
        Census {
            q,
            ell,
            m,
            rank: vec![0; n],
            slice_card: vec![0; n * n * n],
            slice_nonzero: vec![0; n * n * n],
        }
    }

    #[inline]
    fn idx(&self, t: usize, r: usize, s: usize) -> usize {
        let n = self.ell + 1;
        (t * n + r) * n + s
    }

    fn merge(mut self, other: Census) -> Census {
        for (a, b) in self.rank.iter_mut().zip(other.rank) {
            *a += b;
        }
        for (a, b) in self.slice_card.iter_mut().zip(other.slice_card) {
            *a += b;
        }
        for (a, b) in self.slice_nonzero.iter_mut().zip(other.slice_nonzero) {
            *a += b;
        }
        self
    }

    #[inline]
    fn record(&mut self, ranks: &[usize], nonzero_trace: impl Fn(usize) -> bool) {
        let t = ranks[self.ell];
        self.rank[t] += 1;
        for (r, &s) in ranks.iter().enumerate().take(self.ell + 1).skip(1) {
            let i = self.idx(t, r, s);
            self.slice_card[i] += 1;
            if nonzero_trace(r) {
                self.slice_nonzero[i] += 1;
            }
        }
    }

    /// Enumerates every `ell x m` matrix over `field`.
    pub fn compute(ell: usize, m: usize, field: &FieldTables, cfg: &EnumConfig) -> Result<Census> {
        let q = field.order();
        if ell == 0 || m == 0 {
            return invalid("census needs at least one row and one column");
        }
        check_guard(
            "enumeration",
            format!("{ell}x{m} matrices over GF({q})"),
            matrix_count(ell, m, q),
            cfg.guard,
        )?;
        if q == 2 && cfg.packed && ell * m <= 62 {
            Ok(Self::compute_packed(ell, m, cfg))
        } else {
            Self::compute_generic(ell, m, field, cfg)
        }
    }

    fn compute_generic(ell: usize, m: usize, field: &FieldTables, cfg: &EnumConfig) -> Result<Census> {
        let q = field.order() as u64;
        let split = split_len(ell * m, q as usize);
        let parts = prefixes(split, field);
        let run = |prefix: &Vec<Elem>| -> Result<Census> {
            let mut c = Census::empty(q, ell, m);
            let iter = MatrixIter::with_prefix(ell, m, field, prefix, cfg.guard)?;
            for mat in iter {
                let ranks = prefix_ranks(&mat, field);
                let mut traces = vec![0 as Elem; ell + 1];
                for r in 1..=ell {
                    traces[r] = if r <= m { field.add(traces[r - 1], mat.get(r - 1, r - 1)) } else { traces[r - 1] };
                }
                c.record(&ranks, |r| traces[r] != 0);
            }
            Ok(c)
        };
        let partials: Vec<Census> = if cfg.parallel {
            parts.par_iter().map(run).collect::<Result<_>>()?
        } else {
            parts.iter().map(run).collect::<Result<_>>()?
        };
        Ok(partials.into_iter().fold(Census::empty(q, ell, m), Census::merge))
    }

    fn compute_packed(ell: usize, m: usize, cfg: &EnumConfig) -> Census {
        let bits = ell * m;
        let split = bits.min(6);
        let chunk = 1u64 << (bits - split);
        let run = |part: u64| -> Census {
            let mut c = Census::empty(2, ell, m);
            let mut ranks = vec![0usize; ell + 1];
            let mut traces = vec![false; ell + 1];
            for x in part * chunk..(part + 1) * chunk {
                packed::prefix_ranks(x, ell, m, &mut ranks);
                packed::partial_traces(x, ell, m, &mut traces);
                c.record(&ranks, |r| traces[r]);
            }
            c
        };
        let parts = 0..(1u64 << split);
        let partials: Vec<Census> = if cfg.parallel {
            parts.into_par_iter().map(run).collect()
        } else {
            parts.map(run).collect()
        };
        partials.into_iter().fold(Census::empty(2, ell, m), Census::merge)
    }

    fn check_rt(&self, r: usize, t: usize) -> Result<()> {
        if !(1..=self.ell).contains(&r) || t > self.ell {
            return invalid(format!(
                "need 1 <= r <= {} and t <= {}, got r={r}, t={t}",
                self.ell, self.ell
            ));
        }
        Ok(())
    }

    pub fn count_by_rank(&self) -> RankHistogram {
        RankHistogram {
            q: self.q,
            ell: self.ell,
            m: self.m,
            counts: self.rank.iter().map(|&c| ExactInt::from(c)).collect(),
        }
    }

    /// Rank-`t` matrices with nonzero `r`-th partial trace.
    pub fn count_nonzero_trace(&self, r: usize, t: usize) -> Result<ExactInt> {
        self.check_rt(r, t)?;
        let total: u64 = (0..=r).map(|s| self.slice_nonzero[self.idx(t, r, s)]).sum();
        Ok(ExactInt::from(total))
    }

    /// `(size, nonzero-trace count)` of the slice of rank-`t` matrices whose
    /// first `r` rows have rank `s`.
    pub fn count_slice(&self, r: usize, s: usize, t: usize) -> Result<(ExactInt, ExactInt)> {
        self.check_rt(r, t)?;
        if s > r {
            return Ok((ExactInt::zero(), ExactInt::zero()));
        }
        let i = self.idx(t, r, s);
        Ok((ExactInt::from(self.slice_card[i]), ExactInt::from(self.slice_nonzero[i])))
    }
}

/// Number of leading entries to split on so there are at least 64 parts.
fn split_len(entries: usize, q: usize) -> usize {
    let mut len = 0;
    let mut parts = 1usize;
    while len < entries && parts < 64 {
        len += 1;
        parts *= q;
    }
    len
}

pub fn count_by_rank(q: u64, ell: usize, m: usize, cfg: &EnumConfig) -> Result<RankHistogram> {
    let field = FieldTables::new(q)?;
    Ok(Census::compute(ell, m, &field, cfg)?.count_by_rank())
}

pub fn count_nonzero_trace(r: usize, t: usize, q: u64, ell: usize, m: usize, cfg: &EnumConfig) -> Result<ExactInt> {
    let field = FieldTables::new(q)?;
    Census::compute(ell, m, &field, cfg)?.count_nonzero_trace(r, t)
}

pub fn count_slice(
    r: usize,
    s: usize,
    t: usize,
    q: u64,
    ell: usize,
    m: usize,
    cfg: &EnumConfig,
) -> Result<(ExactInt, ExactInt)> {
    let field = FieldTables::new(q)?;
    Census::compute(ell, m, &field, cfg)?.count_slice(r, s, t)
}

/// Canonical representatives of the nonzero matrices of rank at most `t`,
/// in lexicographic order.
pub fn projective_points(
    t: usize,
    ell: usize,
    m: usize,
    field: &FieldTables,
    cfg: &EnumConfig,
) -> Result<Vec<GfMatrix>> {
    let q = field.order();
    check_guard(
        "enumeration",
        format!("{ell}x{m} matrices over GF({q})"),
        matrix_count(ell, m, q),
        cfg.guard,
    )?;
    let chunks: Vec<Vec<GfMatrix>> = if q == 2 && cfg.packed && ell * m <= 62 {
        let bits = ell * m;
        let split = bits.min(6);
        let chunk = 1u64 << (bits - split);
        let run = |part: u64| -> Vec<GfMatrix> {
            let mut ranks = vec![0usize; ell + 1];
            (part * chunk..(part + 1) * chunk)
                .filter(|&x| {
                    x != 0 && {
                        packed::prefix_ranks(x, ell, m, &mut ranks);
                        ranks[ell] <= t
                    }
                })
                .map(|x| packed::to_matrix(x, ell, m))
                .collect()
        };
        if cfg.parallel {
            (0..1u64 << split).into_par_iter().map(run).collect()
        } else {
            (0..1u64 << split).map(run).collect()
        }
    } else {
        let parts = prefixes(split_len(ell * m, q), field);
        let run = |prefix: &Vec<Elem>| -> Result<Vec<GfMatrix>> {
            let mut out = Vec::new();
            for mat in MatrixIter::with_prefix(ell, m, field, prefix, cfg.guard)? {
                if is_canonical(&mat) && prefix_ranks(&mat, field)[ell] <= t {
                    out.push(mat);
                }
            }
            Ok(out)
        };
        if cfg.parallel {
            parts.par_iter().map(run).collect::<Result<_>>()?
        } else {
            parts.iter().map(run).collect::<Result<_>>()?
        }
    };
    Ok(chunks.concat())
}

/// Evaluates `f` at every point of the projective variety and counts the
/// nonzero values.
pub fn codeword_weight_direct(
    f: &LinearForm,
    params: &Params,
    field: &FieldTables,
    cfg: &EnumConfig,
) -> Result<ExactInt> {
    if (f.coeffs.rows(), f.coeffs.cols()) != (params.ell, params.m) {
        return invalid("linear form shape does not match the parameters");
    }
    f.coeffs.check_field(field)?;
    let points = projective_points(params.t, params.ell, params.m, field, cfg)?;
    let weight = points
        .iter()
        .filter(|p| f.eval_entries(p.entries(), field) != 0)
        .count();
    Ok(ExactInt::from(weight))
}

fn hamming_weight(c: &[Elem]) -> usize {
    c.iter().filter(|&&x| x != 0).count()
}

fn check_basis(basis: &[Vec<Elem>], field: &FieldTables) -> Result<usize> {
    let n = basis.first().map_or(0, Vec::len);
    if basis.iter().any(|c| c.len() != n) {
        return invalid("codewords of different lengths");
    }
    let mut echelon = EchelonBasis::new(n, field);
    for c in basis {
        if c.iter().any(|&x| x as usize >= field.order()) {
            return invalid("codeword entry outside the field");
        }
        if !echelon.insert(c) {
            return invalid("basis codewords are linearly dependent");
        }
    }
    Ok(n)
}

/// Positions where some basis vector is nonzero.
pub fn support_union(basis: &[Vec<Elem>]) -> usize {
    let n = basis.first().map_or(0, Vec::len);
    (0..n).filter(|&j| basis.iter().any(|c| c[j] != 0)).count()
}

/// `(1 / (q^s - q^(s-1))) * sum of the weights of all codewords in the span`.
pub fn support_by_average(basis: &[Vec<Elem>], field: &FieldTables) -> Result<ExactInt> {
    let s = basis.len();
    if s == 0 {
        return Ok(ExactInt::zero());
    }
    let n = basis[0].len();
    let q = field.order();
    let mut coeffs = vec![0 as Elem; s];
    let mut word = vec![0 as Elem; n];
    let mut total: u64 = 0;
    loop {
        total += hamming_weight(&word) as u64;
        // odometer step, updating the codeword by (new - old) * basis row
        let mut k = s;
        loop {
            if k == 0 {
                let q = ExactInt::from(q as u64);
                let den = num_traits::pow(q.clone(), s) - num_traits::pow(q, s - 1);
                return crate::qcomb::exact_div(&ExactInt::from(total), &den, "support average");
            }
            k -= 1;
            let old = coeffs[k];
            let new = if (old as usize) + 1 == q { 0 } else { old + 1 };
            coeffs[k] = new;
            let delta = field.sub(new, old);
            for (w, &b) in word.iter_mut().zip(&basis[k]) {
                *w = field.add(*w, field.mul(delta, b));
            }
            if new != 0 {
                break;
            }
        }
    }
}

/// Support weight of the subcode spanned by `basis`, computed as a union of
/// supports and as an average of weights; the two must agree.
pub fn support_weight(basis: &[Vec<Elem>], field: &FieldTables) -> Result<ExactInt> {
    check_basis(basis, field)?;
    let union = ExactInt::from(support_union(basis));
    let average = support_by_average(basis, field)?;
    if union != average {
        return inconsistent(format!("support weight by union {union} != by average {average}"));
    }
    Ok(union)
}

/// Calls `visit` with the reduced row-echelon basis of every `s`-dimensional
/// subspace of GF(q)^k, each subspace exactly once.
pub fn for_each_subspace(k: usize, s: usize, field: &FieldTables, mut visit: impl FnMut(&[Vec<Elem>])) {
    if s > k {
        return;
    }
    let q = field.order() as Elem;
    let mut pivots: Vec<usize> = (0..s).collect();
    loop {
        // free positions: (row i, column j) with j after pivot i, j not a pivot
        let free: Vec<(usize, usize)> = (0..s)
            .flat_map(|i| {
                let pv = &pivots;
                (pv[i] + 1..k).filter(move |j| !pv.contains(j)).map(move |j| (i, j))
            })
            .collect();
        let mut rows = vec![vec![0 as Elem; k]; s];
        for (i, &p) in pivots.iter().enumerate() {
            rows[i][p] = 1;
        }
        let mut vals = vec![0 as Elem; free.len()];
        loop {
            for (&(i, j), &v) in free.iter().zip(&vals) {
                rows[i][j] = v;
            }
            visit(&rows);
            let mut idx = vals.len();
            let mut advanced = false;
            while idx > 0 {
                idx -= 1;
                vals[idx] += 1;
                if vals[idx] < q {
                    advanced = true;
                    break;
                }
                vals[idx] = 0;
            }
            if !advanced {
                break;
            }
        }
        // next pivot combination
        let mut i = s;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if pivots[i] < k - s + i {
                pivots[i] += 1;
                for j in i + 1..s {
                    pivots[j] = pivots[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Codewords `coeffs * G` for each coefficient row.
fn encode_rows(code: &Code, rows: &[Vec<Elem>]) -> Vec<Vec<Elem>> {
    rows.iter().map(|r| code.encode(r)).collect()
}

/// The `s`-th generalized Hamming weight by visiting every `s`-dimensional
/// subcode.
pub fn ghw_exhaustive(code: &Code, s: usize, subspace_guard: u64) -> Result<ExactInt> {
    let k = code.dimension();
    if s == 0 || s > k {
        return invalid(format!("subcode dimension {s} outside 1..={k}"));
    }
    let field = code.field();
    let count = gaussian_binomial(k as i64, s as i64, field.order() as u64)?;
    let required = u64::try_from(&count).ok();
    check_guard(
        "subspace",
        format!("{s}-dimensional subcodes of a {k}-dimensional code"),
        required,
        subspace_guard,
    )?;
    let mut best = usize::MAX;
    for_each_subspace(k, s, field, |rows| {
        let words = encode_rows(code, rows);
        best = best.min(support_union(&words));
    });
    Ok(ExactInt::from(best))
}

/// Weight multiset of every codeword, by encoding all `q^k` messages.
pub fn exhaustive_weight_distribution(code: &Code, guard: u64) -> Result<WeightDistribution> {
    let field = code.field();
    let q = field.order();
    let k = code.dimension();
    check_guard(
        "enumeration",
        format!("codewords of a {k}-dimensional code over GF({q})"),
        (q as u64).checked_pow(k as u32),
        guard,
    )?;
    let gen = code.generator();
    let n = gen.cols();
    let mut hist: BTreeMap<usize, u64> = BTreeMap::new();
    let mut coeffs = vec![0 as Elem; k];
    let mut word = vec![0 as Elem; n];
    'outer: loop {
        *hist.entry(hamming_weight(&word)).or_default() += 1;
        let mut i = k;
        loop {
            if i == 0 {
                break 'outer;
            }
            i -= 1;
            let old = coeffs[i];
            let new = if (old as usize) + 1 == q { 0 } else { old + 1 };
            coeffs[i] = new;
            let delta = field.sub(new, old);
            for (w, &g) in word.iter_mut().zip(gen.row(i)) {
                if g != 0 {
                    *w = field.add(*w, field.mul(delta, g));
                }
            }
            if new != 0 {
                break;
            }
        }
    }
    Ok(WeightDistribution::from_counts(
        hist.into_iter().map(|(w, c)| (ExactInt::from(w), ExactInt::from(c))),
    ))
}

/// Minimum distance of the dual code, by enumerating all of it.
pub fn dual_min_distance_exhaustive(code: &Code, guard: u64) -> Result<ExactInt> {
    let field = code.field();
    let q = field.order();
    let h = crate::matrix::nullspace(code.generator(), field);
    let k = h.rows();
    check_guard(
        "enumeration",
        format!("codewords of the {k}-dimensional dual code over GF({q})"),
        (q as u64).checked_pow(k as u32),
        guard,
    )?;
    let basis: Vec<Vec<Elem>> = (0..k).map(|i| h.row(i).to_vec()).collect();
    let n = h.cols();
    let mut coeffs = vec![0 as Elem; k];
    let mut word = vec![0 as Elem; n];
    let mut best: Option<usize> = None;
    loop {
        let w = hamming_weight(&word);
        if w > 0 {
            best = Some(best.map_or(w, |b| b.min(w)));
        }
        let mut i = k;
        loop {
            if i == 0 {
                return best
                    .map(ExactInt::from)
                    .ok_or_else(|| crate::Error::InvalidParameter("dual code is zero".into()));
            }
            i -= 1;
            let old = coeffs[i];
            let new = if (old as usize) + 1 == q { 0 } else { old + 1 };
            coeffs[i] = new;
            let delta = field.sub(new, old);
            for (x, &b) in word.iter_mut().zip(&basis[i]) {
                *x = field.add(*x, field.mul(delta, b));
            }
            if new != 0 {
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::matrices_iter;

    fn big(v: i64) -> ExactInt {
        ExactInt::from(v)
    }

    fn gf(q: u64) -> FieldTables {
        FieldTables::new(q).unwrap()
    }

    #[test]
    fn rank_histograms() {
        let h = count_by_rank(2, 2, 2, &EnumConfig::default()).unwrap();
        assert_eq!(h.counts, vec![big(1), big(9), big(6)]);
        let h = count_by_rank(3, 1, 1, &EnumConfig::default()).unwrap();
        assert_eq!(h.counts, vec![big(1), big(2)]);
        let h = count_by_rank(2, 3, 4, &EnumConfig::default()).unwrap();
        let total: ExactInt = h.counts.iter().sum();
        assert_eq!(total, big(4096));
    }

    #[test]
    fn trace_and_slice_counts() {
        let cfg = EnumConfig::default();
        assert_eq!(count_nonzero_trace(1, 1, 2, 2, 2, &cfg).unwrap(), big(4));
        assert_eq!(count_nonzero_trace(2, 1, 2, 2, 2, &cfg).unwrap(), big(6));
        assert_eq!(count_nonzero_trace(2, 0, 2, 2, 2, &cfg).unwrap(), big(0));
        assert_eq!(count_slice(1, 1, 1, 2, 2, 2, &cfg).unwrap(), (big(6), big(4)));
        assert_eq!(count_slice(1, 0, 1, 2, 2, 2, &cfg).unwrap(), (big(3), big(0)));
        assert_eq!(count_slice(1, 2, 1, 2, 2, 2, &cfg).unwrap(), (big(0), big(0)));
        assert!(count_slice(0, 0, 1, 2, 2, 2, &cfg).is_err());
        assert!(count_slice(1, 0, 3, 2, 2, 2, &cfg).is_err());
    }

    #[test]
    fn guard_is_enforced() {
        let err = count_by_rank(2, 4, 5, &EnumConfig::with_guard(1000)).unwrap_err();
        assert!(matches!(err, crate::Error::ResourceLimit { .. }));
    }

    #[test]
    fn packed_generic_serial_parallel_agree() {
        let f = gf(2);
        for (ell, m) in [(1, 1), (2, 2), (2, 3), (3, 3), (3, 4)] {
            let base = Census::compute(ell, m, &f, &EnumConfig { packed: false, parallel: false, ..Default::default() }).unwrap();
            for packed in [false, true] {
                for parallel in [false, true] {
                    let cfg = EnumConfig { packed, parallel, ..Default::default() };
                    assert_eq!(Census::compute(ell, m, &f, &cfg).unwrap(), base);
                }
            }
        }
        let f3 = gf(3);
        let a = Census::compute(2, 3, &f3, &EnumConfig::serial()).unwrap();
        let b = Census::compute(2, 3, &f3, &EnumConfig::default()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn projective_points_are_canonical_and_sorted() {
        let f3 = gf(3);
        let pts = projective_points(1, 2, 2, &f3, &EnumConfig::default()).unwrap();
        // rank-1 2x2 over GF(3): mu_1 = 32, divided by q-1
        assert_eq!(pts.len(), 16);
        assert!(pts.windows(2).all(|w| w[0] < w[1]));
        assert!(pts.iter().all(is_canonical));

        let f2 = gf(2);
        let packed = projective_points(2, 2, 3, &f2, &EnumConfig::default()).unwrap();
        let generic = projective_points(2, 2, 3, &f2, &EnumConfig { packed: false, ..Default::default() }).unwrap();
        assert_eq!(packed, generic);
        assert_eq!(packed.len(), 63);
    }

    #[test]
    fn direct_codeword_weights() {
        let f = gf(2);
        let p = Params::new(2, 2, 2, 1).unwrap();
        let cfg = EnumConfig::default();
        let zero = LinearForm::new(GfMatrix::zeros(2, 2));
        assert_eq!(codeword_weight_direct(&zero, &p, &f, &cfg).unwrap(), big(0));
        let x11 = LinearForm::partial_trace(1, 2, 2);
        assert_eq!(codeword_weight_direct(&x11, &p, &f, &cfg).unwrap(), big(4));
        let tr = LinearForm::partial_trace(2, 2, 2);
        assert_eq!(codeword_weight_direct(&tr, &p, &f, &cfg).unwrap(), big(6));
    }

    #[test]
    fn weight_depends_only_on_coefficient_rank() {
        let f = gf(2);
        let p = Params::new(2, 2, 2, 1).unwrap();
        let cfg = EnumConfig::default();
        let mut by_rank: BTreeMap<usize, ExactInt> = BTreeMap::new();
        for coeffs in matrices_iter(2, 2, &f, 1 << 10).unwrap() {
            let r = crate::matrix::rank(&coeffs, &f).unwrap();
            let w = codeword_weight_direct(&LinearForm::new(coeffs), &p, &f, &cfg).unwrap();
            let seen = by_rank.entry(r).or_insert_with(|| w.clone());
            assert_eq!(*seen, w);
        }
        assert_eq!(by_rank.len(), 3);
    }

    #[test]
    fn support_weights() {
        let f = gf(2);
        assert_eq!(support_weight(&[vec![1, 0, 1, 1]], &f).unwrap(), big(3));
        assert_eq!(support_weight(&[vec![1, 1, 0, 0, 0], vec![0, 0, 1, 1, 1]], &f).unwrap(), big(5));
        assert!(support_weight(&[vec![1, 1], vec![1, 1]], &f).is_err());
        assert!(support_weight(&[vec![1, 1], vec![1]], &f).is_err());

        let f3 = gf(3);
        assert_eq!(support_weight(&[vec![1, 2, 0], vec![0, 1, 1]], &f3).unwrap(), big(3));
    }

    #[test]
    fn subspace_counts_match_gaussian_binomials() {
        for q in [2u64, 3, 4] {
            let f = gf(q);
            for k in 0..5 {
                for s in 0..=k {
                    let mut n = 0u64;
                    let mut seen = std::collections::HashSet::new();
                    for_each_subspace(k, s, &f, |rows| {
                        n += 1;
                        seen.insert(rows.to_vec());
                    });
                    assert_eq!(big(n as i64), gaussian_binomial(k as i64, s as i64, q).unwrap());
                    assert_eq!(seen.len() as u64, n);
                }
            }
        }
    }

    #[test]
    fn column_recursion_counterexample_by_brute_force() {
        // slice (r=2, s=1), t=2: 2x3 count vs q^t * (2x2, t) + (q^ell - q^(t-1)) * (2x2, t-1)
        let cfg = EnumConfig::default();
        let big23 = count_slice(2, 1, 2, 2, 2, 3, &cfg).unwrap().1;
        let c22 = Census::compute(2, 2, &gf(2), &cfg).unwrap();
        let rhs = 4 * c22.count_slice(2, 1, 2).unwrap().1 + (4 - 2) * c22.count_slice(2, 1, 1).unwrap().1;
        assert_eq!(big23, big(0));
        assert_eq!(rhs, big(12));
    }
}
