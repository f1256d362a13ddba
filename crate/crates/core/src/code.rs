//! Explicit determinantal codes and their parameters.
//!
//! [`Code`] holds a generator matrix over a fixed point ordering. The free
//! functions compute the same parameters from closed forms without building
//! anything; the tests and the `verify` suites compare the two.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{inconsistent, invalid, Result};
use crate::field::{Elem, FieldTables};
use crate::matrix::{canonical_rep, GfMatrix, LinearForm};
use crate::oracle::{self, EnumConfig, DEFAULT_SUBSPACE_GUARD};
use crate::qcomb::{exact_div, gaussian_binomial, projective_count, ExactInt, Params};
use crate::spectrum::weight_table;

/// The code of `params` with an explicit generator matrix.
///
/// Row `i * m + j` of the generator holds the values of the coordinate
/// function `X_ij` at the points, so column `c` is just the entries of
/// `points[c]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Code {
    params: Params,
    field: FieldTables,
    points: Vec<GfMatrix>,
    generator: GfMatrix,
}

impl Code {
    /// Builds the code over the default field tables for `params.q`.
    pub fn build(params: &Params, cfg: &EnumConfig) -> Result<Code> {
        Self::build_with_field(params, FieldTables::new(params.q)?, cfg)
    }

    pub fn build_with_field(params: &Params, field: FieldTables, cfg: &EnumConfig) -> Result<Code> {
        if field.order() as u64 != params.q {
            return invalid(format!("field of order {} for q = {}", field.order(), params.q));
        }
        let points = oracle::projective_points(params.t, params.ell, params.m, &field, cfg)?;
        let expected = projective_count(params.t as i64, params.ell as i64, params.m as i64, params.q)?;
        if ExactInt::from(points.len()) != expected {
            return inconsistent(format!("enumerated {} points, expected {expected}", points.len()));
        }
        let k = params.dimension();
        let n = points.len();
        let mut entries = vec![0 as Elem; k * n];
        for (c, p) in points.iter().enumerate() {
            for (row, &v) in p.entries().iter().enumerate() {
                entries[row * n + c] = v;
            }
        }
        let generator = GfMatrix::new(k, n, entries)?;
        Ok(Code { params: *params, field, points, generator })
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn field(&self) -> &FieldTables {
        &self.field
    }

    pub fn points(&self) -> &[GfMatrix] {
        &self.points
    }

    pub fn length(&self) -> usize {
        self.points.len()
    }

    pub fn dimension(&self) -> usize {
        self.generator.rows()
    }

    pub fn generator(&self) -> &GfMatrix {
        &self.generator
    }

    /// `coeffs * G`.
    pub fn encode(&self, coeffs: &[Elem]) -> Vec<Elem> {
        let f = &self.field;
        let mut word = vec![0 as Elem; self.length()];
        for (i, &c) in coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (w, &g) in word.iter_mut().zip(self.generator.row(i)) {
                *w = f.add(*w, f.mul(c, g));
            }
        }
        word
    }

    /// The codeword of `f`, by evaluating `f` at each point.
    pub fn codeword(&self, form: &LinearForm) -> Result<Vec<Elem>> {
        if (form.coeffs.rows(), form.coeffs.cols()) != (self.params.ell, self.params.m) {
            return invalid("linear form shape does not match the code");
        }
        form.coeffs.check_field(&self.field)?;
        Ok(self.points.iter().map(|p| form.eval_entries(p.entries(), &self.field)).collect())
    }

    fn column(&self, c: usize) -> GfMatrix {
        self.points[c].clone()
    }

    /// Checks that no column is zero and no two columns are proportional.
    pub fn check_projective(&self) -> Result<()> {
        let mut seen = HashMap::new();
        for c in 0..self.length() {
            let col = self.column(c);
            if col.is_zero() {
                return inconsistent(format!("generator column {c} is zero"));
            }
            let rep = canonical_rep(&col, &self.field)?;
            if let Some(prev) = seen.insert(rep, c) {
                return inconsistent(format!("generator columns {prev} and {c} are proportional"));
            }
        }
        Ok(())
    }

    /// Three columns that are linearly dependent: points `a`, `b` and the
    /// point on the line through them at index `c`.
    pub fn dependent_triple(&self) -> Option<(usize, usize, usize)> {
        let f = &self.field;
        let n = self.length();
        for a in 0..n {
            for b in a + 1..n {
                let sum = self.points[a].add(&self.points[b], f).ok()?;
                if sum.is_zero() {
                    continue;
                }
                let rep = canonical_rep(&sum, f).ok()?;
                if let Ok(c) = self.points.binary_search(&rep) {
                    return Some((a, b, c));
                }
            }
        }
        None
    }

    /// Verifies dual distance 3 on the generator: columns pairwise
    /// independent and some three dependent. Returns the dependent triple.
    pub fn verify_dual_distance(&self) -> Result<(usize, usize, usize)> {
        self.check_projective()?;
        self.dependent_triple()
            .ok_or_else(|| crate::Error::InternalConsistency("no three dependent generator columns".into()))
    }

    /// The generator-export document. Counts are decimal strings; field
    /// entries are plain integers in `0..q`.
    pub fn export(&self) -> Value {
        let f = &self.field;
        let points: Vec<Value> = self
            .points
            .iter()
            .map(|p| Value::from((0..p.rows()).map(|i| Value::from(p.row(i).to_vec())).collect::<Vec<_>>()))
            .collect();
        let rows: Vec<Value> = (0..self.dimension())
            .map(|i| Value::from(self.generator.row(i).to_vec()))
            .collect();
        json!({
            "field": {
                "p": f.characteristic().to_string(),
                "e": f.degree().to_string(),
                "irreducible": f.irreducible().to_vec(),
            },
            "n": self.length().to_string(),
            "k": self.dimension().to_string(),
            "points": points,
            "generator": rows,
        })
    }
}

/// Codeword count for each weight.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightDistribution {
    pub entries: BTreeMap<ExactInt, ExactInt>,
}

impl WeightDistribution {
    /// Collects `(weight, count)` pairs, adding counts of equal weights.
    pub fn from_counts(pairs: impl IntoIterator<Item = (ExactInt, ExactInt)>) -> Self {
        let mut entries: BTreeMap<ExactInt, ExactInt> = BTreeMap::new();
        for (w, c) in pairs {
            *entries.entry(w).or_insert_with(ExactInt::zero) += c;
        }
        WeightDistribution { entries }
    }

    pub fn total(&self) -> ExactInt {
        self.entries.values().sum()
    }

    pub fn min_nonzero_weight(&self) -> Option<&ExactInt> {
        self.entries.keys().find(|w| !w.is_zero())
    }

    pub fn count(&self, weight: &ExactInt) -> ExactInt {
        self.entries.get(weight).cloned().unwrap_or_else(ExactInt::zero)
    }
}

impl fmt::Display for WeightDistribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|(w, c)| format!("{w}:{c}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Weight distribution from the weight table: `mu_r(ell, m)` codewords of
/// weight `w_hat_r`, with equal weights merged.
pub fn weight_distribution(params: &Params) -> Result<WeightDistribution> {
    let table = weight_table(params)?;
    let d = params.dims();
    let mut pairs = vec![(ExactInt::zero(), ExactInt::one())];
    for r in 1..=params.ell {
        pairs.push((table.w[r].clone(), d.mu(r as i64)?));
    }
    let dist = WeightDistribution::from_counts(pairs);
    let total = d.pow(d.ell * d.m);
    if dist.total() != total || dist.count(&ExactInt::zero()) != ExactInt::one() {
        return inconsistent(format!("weight distribution sums to {}, expected {total}", dist.total()));
    }
    Ok(dist)
}

/// `q^(ell+m-2) nu_{t-1}(ell-1, m-1)`.
pub fn min_distance(params: &Params) -> Result<ExactInt> {
    Ok(weight_table(params)?.w[1].clone())
}

/// Number of minimum-weight codewords: `mu_1(ell, m)` for `t < ell`, and
/// `q^(ell m) - 1` for `t = ell` where every nonzero codeword has the same
/// weight.
pub fn min_weight_count(params: &Params) -> Result<ExactInt> {
    let dist = weight_distribution(params)?;
    let d = params.dims();
    let expected = if params.t < params.ell { d.mu(1)? } else { d.pow(d.ell * d.m) - 1 };
    let min = dist.min_nonzero_weight().cloned().unwrap_or_default();
    let found = dist.count(&min);
    if found != expected {
        return inconsistent(format!("{found} codewords of minimum weight, expected {expected}"));
    }
    Ok(expected)
}

/// Minimum distance of the dual code, which is 3. With `verify`, builds the
/// code and checks the column structure that forces it.
///
/// For `ell = m = 1` the code is the full space of length 1 and its dual is
/// zero, so there is no distance to report.
pub fn dual_min_distance(params: &Params, verify: bool, cfg: &EnumConfig) -> Result<ExactInt> {
    if params.dimension() < 2 {
        return invalid("the dual of a code with l = m = 1 is the zero code");
    }
    if verify {
        Code::build(params, cfg)?.verify_dual_distance()?;
    }
    Ok(ExactInt::from(3))
}

/// Where a generalized Hamming weight came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GhwMethod {
    ReedMuller,
    FormulaLow,
    FormulaMPlus1,
    FormulaHigh,
    Exhaustive,
    Unavailable,
}

impl GhwMethod {
    pub fn name(self) -> &'static str {
        match self {
            GhwMethod::ReedMuller => "reed-muller",
            GhwMethod::FormulaLow => "formula-low",
            GhwMethod::FormulaMPlus1 => "formula-m-plus-1",
            GhwMethod::FormulaHigh => "formula-high",
            GhwMethod::Exhaustive => "exhaustive",
            GhwMethod::Unavailable => "unavailable",
        }
    }
}

impl fmt::Display for GhwMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One row of a GHW table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GhwEntry {
    pub s: usize,
    pub value: Option<ExactInt>,
    /// The method the value is reported under.
    pub method: GhwMethod,
    /// Every method that produced this same value.
    pub confirmations: Vec<GhwMethod>,
}

/// Controls how far [`ghw`] may fall back on, or cross-check with,
/// exhaustive subcode search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GhwOptions {
    /// Also run the exhaustive search where formulas apply, and compare.
    pub exhaustive: bool,
    pub enumeration: EnumConfig,
    pub subspace_guard: u64,
}

impl Default for GhwOptions {
    fn default() -> Self {
        GhwOptions { exhaustive: false, enumeration: EnumConfig::default(), subspace_guard: DEFAULT_SUBSPACE_GUARD }
    }
}

/// `n_hat - sum_{i < ell m - s} q^i`.
fn ghw_top(s: usize, params: &Params) -> Result<ExactInt> {
    let d = params.dims();
    let n = projective_count(params.t as i64, d.ell, d.m, d.q)?;
    let k = params.dimension() as i64;
    let tail: ExactInt = (0..k - s as i64).map(|i| d.pow(i)).sum();
    Ok(n - tail)
}

/// Every closed form that applies to `d_s`, in reporting priority order.
pub fn ghw_formulas(s: usize, params: &Params) -> Result<Vec<(GhwMethod, ExactInt)>> {
    let (ell, m, t) = (params.ell, params.m, params.t);
    let k = params.dimension();
    if s == 0 || s > k {
        return invalid(format!("s = {s} outside 1..={k}"));
    }
    let d = params.dims();
    let q = d.q;
    let mut out = Vec::new();
    if t == ell {
        out.push((GhwMethod::ReedMuller, ghw_top(s, params)?));
        return Ok(out);
    }
    let nu = d.shrink(1, 1).nu(t as i64 - 1)?;
    if s <= m {
        let s = s as i64;
        let factor = exact_div(&(d.pow(s) - 1), &ExactInt::from(q - 1), "(q^s - 1)/(q - 1)")?;
        out.push((GhwMethod::FormulaLow, factor * d.pow(d.ell + d.m - s - 1) * &nu));
    }
    if s == m + 1 && ell >= 2 {
        let table = weight_table(params)?;
        let qm = d.pow(d.m);
        let qb = ExactInt::from(q);
        let num = (&qm + &qb * &qb - &qb - 1) * &table.w[1] + (&qb - 1) * (&qm - &qb) * &table.w[2];
        let den = d.pow(d.m + 1) - &qm;
        out.push((GhwMethod::FormulaMPlus1, exact_div(&num, &den, "(m+1)-th generalized weight")?));
    }
    if (ell - t) * m <= s {
        out.push((GhwMethod::FormulaHigh, ghw_top(s, params)?));
    }
    Ok(out)
}

/// Number of `s`-dimensional subcodes, or `None` past `u64`.
fn subcode_count(s: usize, params: &Params) -> Option<u64> {
    let count = gaussian_binomial(params.dimension() as i64, s as i64, params.q).ok()?;
    u64::try_from(&count).ok()
}

fn ghw_with(s: usize, params: &Params, opts: &GhwOptions, code: &mut Option<Code>) -> Result<GhwEntry> {
    let formulas = ghw_formulas(s, params)?;
    if let Some((_, first)) = formulas.first() {
        if let Some((method, other)) = formulas.iter().find(|(_, v)| v != first) {
            return inconsistent(format!(
                "d_{s}: {} gives {first} but {method} gives {other}",
                formulas[0].0
            ));
        }
    }
    let within_guard = subcode_count(s, params).is_some_and(|n| n <= opts.subspace_guard);
    let want_exhaustive = formulas.is_empty() || opts.exhaustive;
    let mut exhaustive = None;
    if want_exhaustive && within_guard {
        if code.is_none() {
            match Code::build(params, &opts.enumeration) {
                Ok(c) => *code = Some(c),
                Err(crate::Error::ResourceLimit { .. }) => {}
                Err(e) => return Err(e),
            }
        }
        if let Some(c) = code.as_ref() {
            exhaustive = Some(oracle::ghw_exhaustive(c, s, opts.subspace_guard)?);
        }
    }
    let mut confirmations: Vec<GhwMethod> = formulas.iter().map(|(m, _)| *m).collect();
    let entry = match (formulas.first(), exhaustive) {
        (Some((method, value)), Some(ex)) => {
            if *value != ex {
                return inconsistent(format!("d_{s}: {method} gives {value} but exhaustive search gives {ex}"));
            }
            confirmations.push(GhwMethod::Exhaustive);
            GhwEntry { s, value: Some(value.clone()), method: *method, confirmations }
        }
        (Some((method, value)), None) => GhwEntry { s, value: Some(value.clone()), method: *method, confirmations },
        (None, Some(ex)) => GhwEntry { s, value: Some(ex), method: GhwMethod::Exhaustive, confirmations: vec![GhwMethod::Exhaustive] },
        (None, None) => GhwEntry { s, value: None, method: GhwMethod::Unavailable, confirmations: vec![] },
    };
    Ok(entry)
}

/// The `s`-th generalized Hamming weight, from whichever closed forms apply
/// (all of which must agree), else from exhaustive search if the number of
/// subcodes is within the guard.
pub fn ghw(s: usize, params: &Params, opts: &GhwOptions) -> Result<GhwEntry> {
    ghw_with(s, params, opts, &mut None)
}

/// `d_1 .. d_{ell m}`. Available neighbours must increase strictly.
pub fn ghw_table(params: &Params, opts: &GhwOptions) -> Result<Vec<GhwEntry>> {
    let mut code = None;
    let entries = (1..=params.dimension())
        .map(|s| ghw_with(s, params, opts, &mut code))
        .collect::<Result<Vec<_>>>()?;
    for pair in entries.windows(2) {
        if let (Some(a), Some(b)) = (&pair[0].value, &pair[1].value) {
            if a >= b {
                return inconsistent(format!("d_{} = {a} is not below d_{} = {b}", pair[0].s, pair[1].s));
            }
        }
    }
    Ok(entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::matrices_iter;

    fn big(v: i64) -> ExactInt {
        ExactInt::from(v)
    }

    fn p(q: u64, ell: usize, m: usize, t: usize) -> Params {
        Params::new(q, ell, m, t).unwrap()
    }

    #[test]
    fn code_sizes() {
        let cfg = EnumConfig::default();
        let c = Code::build(&p(2, 2, 2, 1), &cfg).unwrap();
        assert_eq!((c.length(), c.dimension()), (9, 4));
        let c = Code::build(&p(3, 2, 2, 2), &cfg).unwrap();
        assert_eq!(c.length(), 40);
        let c = Code::build(&p(2, 4, 5, 1), &cfg).unwrap();
        assert_eq!((c.length(), c.dimension()), (465, 20));
        c.check_projective().unwrap();
    }

    #[test]
    fn weight_distributions() {
        let d = weight_distribution(&p(2, 2, 2, 1)).unwrap();
        assert_eq!(d, WeightDistribution::from_counts([(big(0), big(1)), (big(4), big(9)), (big(6), big(6))]));
        let d = weight_distribution(&p(2, 2, 3, 2)).unwrap();
        assert_eq!(d, WeightDistribution::from_counts([(big(0), big(1)), (big(32), big(63))]));
    }

    #[test]
    fn distances_and_counts() {
        assert_eq!(min_distance(&p(2, 4, 5, 1)).unwrap(), big(128));
        assert_eq!(min_distance(&p(2, 4, 5, 2)).unwrap(), big(13568));
        assert_eq!(min_distance(&p(2, 2, 2, 1)).unwrap(), big(4));
        assert_eq!(min_distance(&p(3, 2, 3, 2)).unwrap(), big(3i64.pow(5)));
        assert_eq!(min_weight_count(&p(2, 2, 2, 1)).unwrap(), big(9));
        assert_eq!(min_weight_count(&p(2, 2, 3, 2)).unwrap(), big(63));
        assert_eq!(min_weight_count(&p(2, 4, 5, 1)).unwrap(), big(465));
    }

    #[test]
    fn encoding_matches_evaluation() {
        let c = Code::build(&p(2, 2, 2, 1), &EnumConfig::default()).unwrap();
        for coeffs in matrices_iter(2, 2, c.field(), 1 << 10).unwrap() {
            let direct = c.codeword(&LinearForm::new(coeffs.clone())).unwrap();
            assert_eq!(direct, c.encode(coeffs.entries()));
        }
    }

    #[test]
    fn ghw_small_table() {
        let opts = GhwOptions { exhaustive: true, ..Default::default() };
        let table = ghw_table(&p(2, 2, 2, 1), &opts).unwrap();
        let values: Vec<_> = table.iter().map(|e| e.value.clone().unwrap()).collect();
        assert_eq!(values, vec![big(4), big(6), big(8), big(9)]);
        assert!(table.iter().all(|e| e.confirmations.len() >= 2));
        assert_eq!(table[2].confirmations, vec![GhwMethod::FormulaMPlus1, GhwMethod::FormulaHigh, GhwMethod::Exhaustive]);
    }

    #[test]
    fn ghw_coverage() {
        let opts = GhwOptions::default();
        let table = ghw_table(&p(2, 2, 3, 1), &opts).unwrap();
        assert!(table.iter().all(|e| e.method != GhwMethod::Unavailable && e.method != GhwMethod::Exhaustive));
        assert_eq!(table[2].value, Some(big(14)));
        let table = ghw_table(&p(2, 3, 3, 3), &opts).unwrap();
        assert!(table.iter().all(|e| e.method == GhwMethod::ReedMuller));
        let table = ghw_table(&p(2, 3, 4, 1), &opts).unwrap();
        let gaps: Vec<usize> = table.iter().filter(|e| e.method == GhwMethod::Unavailable).map(|e| e.s).collect();
        assert_eq!(gaps, vec![6, 7]);
        assert!(ghw(0, &p(2, 2, 2, 1), &opts).is_err());
        assert!(ghw(5, &p(2, 2, 2, 1), &opts).is_err());
    }

    #[test]
    fn dual_distance_structure() {
        let cfg = EnumConfig::default();
        assert_eq!(dual_min_distance(&p(2, 2, 2, 1), true, &cfg).unwrap(), big(3));
        assert_eq!(dual_min_distance(&p(3, 2, 3, 1), true, &cfg).unwrap(), big(3));
        assert_eq!(dual_min_distance(&p(5, 9, 9, 4), false, &cfg).unwrap(), big(3));
    }

    #[test]
    fn export_is_stable() {
        let cfg = EnumConfig::default();
        let a = Code::build(&p(2, 2, 2, 1), &cfg).unwrap().export();
        let b = Code::build(&p(2, 2, 2, 1), &EnumConfig::serial()).unwrap().export();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
        assert_eq!(a["n"], "9");
    }
}
