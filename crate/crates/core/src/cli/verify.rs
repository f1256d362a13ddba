//! The `verify` suites. Each suite walks the grid `q in q_list`,
//! `1 <= l <= m <= max_m` and records one check per compared value.

use std::collections::BTreeMap;

use clap::ValueEnum;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use super::cache::{Cache, CacheKey};
use super::commands::{open_cache, validate_q_list};
use super::report::CheckReport;
use super::{render_csv, render_json, Format, Outcome, VerifyArgs, EXIT_CHECK_FAILED, VERSION};
use crate::code::{self, Code, WeightDistribution};
use crate::error::Result;
use crate::field::{FieldTables, MAX_ORDER};
use crate::matrix::check_guard;
use crate::oracle::{self, Census, EnumConfig};
use crate::qcomb::{gaussian_binomial, mu_alternative_forms, projective_count, qpow, Dims, ExactInt, Params};
use crate::spectrum::{self, SliceKey};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    /// Gaussian binomials, rank counts and point counts.
    Qanalog,
    /// Eigenvalue equality and the eigenvalue sum.
    Identities,
    /// Weight tables, slice sums and recursions.
    Spectra,
    /// Closed forms against exhaustive matrix enumeration.
    Oracle,
    /// Explicit codes against the closed-form parameters.
    Codes,
    /// Every suite above.
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Qanalog => "qanalog",
            Suite::Identities => "identities",
            Suite::Spectra => "spectra",
            Suite::Oracle => "oracle",
            Suite::Codes => "codes",
            Suite::All => "all",
        }
    }

    fn expand(self) -> Vec<Suite> {
        match self {
            Suite::All => vec![Suite::Qanalog, Suite::Identities, Suite::Spectra, Suite::Oracle, Suite::Codes],
            s => vec![s],
        }
    }
}

/// Budget for exhaustive GHW cross-checks inside the codes suite, in
/// subcodes times code length.
const GHW_CROSSCHECK_BUDGET: u64 = 20_000_000;

/// Largest dual code enumerated by the codes suite.
const DUAL_ENUMERATION_LIMIT: u64 = 1 << 20;

fn grid(q_list: &[u64], max_m: usize) -> Vec<(u64, usize, usize)> {
    let mut out = Vec::new();
    for &q in q_list {
        for m in 1..=max_m {
            for ell in 1..=m {
                out.push((q, ell, m));
            }
        }
    }
    out
}

fn tag(q: u64, ell: usize, m: usize) -> String {
    format!("q={q} l={ell} m={m}")
}

type Records = Vec<(CacheKey, String)>;

/// Fails before any work if an exhaustive suite would exceed the guard
/// somewhere on the grid.
fn precheck(suite: Suite, cells: &[(u64, usize, usize)], guard: u64) -> Result<()> {
    for &(q, ell, m) in cells {
        if q > MAX_ORDER {
            return crate::error::invalid(format!("q = {q} exceeds the largest supported field {MAX_ORDER}"));
        }
        let what = match suite {
            Suite::Oracle => format!("{ell}x{m} matrices over GF({q})"),
            _ => format!("codewords of the q={q}, l={ell}, m={m} codes"),
        };
        check_guard("enumeration", what, (q).checked_pow((ell * m) as u32), guard)?;
    }
    Ok(())
}

fn qanalog(q: u64, ell: usize, m: usize) -> Result<CheckReport> {
    let mut rep = CheckReport::new("qanalog");
    let d = Dims::new(q, ell as i64, m as i64);
    let cell = tag(q, ell, m);
    let mut total = ExactInt::zero();
    for t in 0..=d.ell {
        let value = d.mu(t)?;
        for (i, alt) in mu_alternative_forms(t, d.ell, d.m, q)?.iter().enumerate() {
            rep.check("mu-forms", format!("{cell} t={t} form={i}"), &value, alt);
        }
        let transposed = Dims::new(q, d.m, d.ell).mu(t)?;
        rep.check("mu-transpose", format!("{cell} t={t}"), &value, transposed);
        total += value;
    }
    rep.check("mu-total", &cell, d.pow(d.ell * d.m), total);
    rep.check("nu-full", &cell, d.pow(d.ell * d.m), d.nu(d.ell)?);
    let full = (d.pow(d.ell * d.m) - 1) / ExactInt::from(q - 1);
    rep.check("projective-full", &cell, full, projective_count(d.ell, d.ell, d.m, q)?);
    for k in 0..=d.m {
        let n = d.m;
        let pascal = if k == 0 {
            ExactInt::one()
        } else {
            gaussian_binomial(n - 1, k - 1, q)? + qpow(q, k) * gaussian_binomial(n - 1, k, q)?
        };
        if ell == 1 {
            rep.check("pascal", format!("q={q} n={n} k={k}"), pascal, gaussian_binomial(n, k, q)?);
        }
        if k <= n {
            rep.check("symmetry", format!("q={q} n={n} k={k}"), gaussian_binomial(n, k, q)?, gaussian_binomial(n, n - k, q)?);
        }
    }
    Ok(rep)
}

fn identities(q: u64, ell: usize, m: usize) -> Result<CheckReport> {
    let mut rep = CheckReport::new("identities");
    let d = Dims::new(q, ell as i64, m as i64);
    let cell = tag(q, ell, m);
    for r in 0..=d.ell {
        for t in 0..=d.ell {
            let a = spectrum::p_delsarte(t, r, &d)?;
            let b = spectrum::p_alternative(t, r, &d)?;
            rep.check("p-forms", format!("{cell} t={t} r={r}"), a, b);
        }
        if r >= 1 {
            rep.check("eigenvalue-sum", format!("{cell} r={r}"), -1, spectrum::eigenvalue_sum(r, &d)?);
        }
    }
    for t in 0..=d.ell {
        rep.check("p-at-zero", format!("{cell} t={t}"), d.mu(t)?, spectrum::p_delsarte(t, 0, &d)?);
    }
    Ok(rep)
}

fn spectra(q: u64, ell: usize, m: usize) -> Result<CheckReport> {
    let mut rep = CheckReport::new("spectra");
    let d = Dims::new(q, ell as i64, m as i64);
    let cell = tag(q, ell, m);
    for t in 1..=ell {
        let p = Params::new(q, ell, m, t)?;
        let table = spectrum::weight_table(&p)?;
        let n = projective_count(t as i64, d.ell, d.m, q)?;
        // each coordinate is nonzero on a (q-1)/q share of all codewords
        let total: ExactInt = (1..=d.ell).map(|r| Ok(d.mu(r)? * &table.w[r as usize])).sum::<Result<_>>()?;
        let expected = (d.pow(d.ell * d.m) - d.pow(d.ell * d.m - 1)) * n;
        rep.check("total-weight", format!("{cell} t={t}"), expected, total);
        rep.check("min-weight", format!("{cell} t={t}"), spectrum::compact_min_weight(t as i64, &d)?, &table.w[1]);
    }
    for r in 1..=d.ell {
        rep.check(
            "w-hat-t1",
            format!("{cell} r={r}"),
            d.pow(d.ell + d.m - r - 1) * (d.pow(r) - 1) / ExactInt::from(q - 1),
            spectrum::w_hat(r, 1, &d)?,
        );
        for t in 0..=d.ell {
            let at = format!("{cell} r={r} t={t}");
            let expected = ExactInt::from(q - 1) * spectrum::wfrak_hat(r, t, &d)?;
            rep.check("wfrak-slices", &at, expected, spectrum::wfrak_by_slices(r, t, &d)?);
            let card: ExactInt = (0..=r)
                .map(|s| spectrum::slice_cardinality(SliceKey::new(r, s), t, &d))
                .sum::<Result<_>>()?;
            rep.check("slice-card-total", &at, d.mu(t)?, card);
            if t >= 1 && t < d.ell {
                let (lhs, rhs) = spectrum::keyrec_sides(r, t, &d)?;
                rep.check("key-recursion", &at, rhs, lhs);
            }
            for s in 0..=r {
                for (i, (lhs, rhs)) in spectrum::slice_recursion_sides(SliceKey::new(r, s), t, &d)?.into_iter().enumerate() {
                    let id = if i == 0 && d.ell > r { "slice-row-recursion" } else { "slice-column-recursion" };
                    rep.check(id, format!("{at} s={s}"), rhs, lhs);
                }
            }
        }
    }
    Ok(rep)
}

struct OracleCounts {
    rank: Vec<ExactInt>,
    slices: BTreeMap<(usize, usize, usize), (ExactInt, ExactInt)>,
}

fn oracle_counts(q: u64, ell: usize, m: usize, cfg: &EnumConfig, cache: Option<&Cache>) -> Result<(OracleCounts, Records)> {
    let from_cache = || -> Option<OracleCounts> {
        let cache = cache?;
        let rank = (0..=ell)
            .map(|t| cache.get(&CacheKey::new("count_by_rank", q, ell, m, t, 0, 0))?.parse().ok())
            .collect::<Option<Vec<ExactInt>>>()?;
        let mut slices = BTreeMap::new();
        for t in 0..=ell {
            for r in 1..=ell {
                for s in 0..=r {
                    let v = cache.get(&CacheKey::new("count_slice", q, ell, m, t, r, s))?;
                    let (a, b) = v.split_once('/')?;
                    slices.insert((t, r, s), (a.parse().ok()?, b.parse().ok()?));
                }
            }
        }
        Some(OracleCounts { rank, slices })
    };
    if let Some(found) = from_cache() {
        return Ok((found, Vec::new()));
    }
    let field = FieldTables::new(q)?;
    let census = Census::compute(ell, m, &field, cfg)?;
    let rank = census.count_by_rank().counts;
    let mut slices = BTreeMap::new();
    let mut records = Vec::new();
    for (t, c) in rank.iter().enumerate() {
        records.push((CacheKey::new("count_by_rank", q, ell, m, t, 0, 0), c.to_string()));
    }
    for t in 0..=ell {
        for r in 1..=ell {
            for s in 0..=r {
                let (a, b) = census.count_slice(r, s, t)?;
                records.push((CacheKey::new("count_slice", q, ell, m, t, r, s), format!("{a}/{b}")));
                slices.insert((t, r, s), (a, b));
            }
        }
    }
    Ok((OracleCounts { rank, slices }, records))
}

fn oracle_suite(q: u64, ell: usize, m: usize, cfg: &EnumConfig, cache: Option<&Cache>) -> Result<(CheckReport, Records)> {
    let mut rep = CheckReport::new("oracle");
    let d = Dims::new(q, ell as i64, m as i64);
    let cell = tag(q, ell, m);
    let (counts, records) = oracle_counts(q, ell, m, cfg, cache)?;
    for t in 0..=ell {
        rep.check("count-by-rank", format!("{cell} t={t}"), d.mu(t as i64)?, &counts.rank[t]);
        for r in 1..=ell {
            let at = format!("{cell} r={r} t={t}");
            let nonzero: ExactInt = (0..=r).map(|s| &counts.slices[&(t, r, s)].1).sum();
            let expected = ExactInt::from(q - 1) * spectrum::wfrak_hat(r as i64, t as i64, &d)?;
            rep.check("count-nonzero-trace", &at, expected, nonzero);
            for s in 0..=r {
                let key = SliceKey::new(r as i64, s as i64);
                let (card, nz) = &counts.slices[&(t, r, s)];
                rep.check("slice-cardinality", format!("{at} s={s}"), spectrum::slice_cardinality(key, t as i64, &d)?, card);
                rep.check("slice-weight", format!("{at} s={s}"), spectrum::slice_weight(key, t as i64, &d)?, nz);
            }
        }
    }
    Ok((rep, records))
}

fn dist_text(d: &WeightDistribution) -> String {
    d.entries.iter().map(|(w, c)| format!("{w}:{c}")).collect::<Vec<_>>().join(" ")
}

fn codes_suite(q: u64, ell: usize, m: usize, cfg: &EnumConfig, cache: Option<&Cache>) -> Result<(CheckReport, Records)> {
    let mut rep = CheckReport::new("codes");
    let mut records = Vec::new();
    for t in 1..=ell {
        let p = Params::new(q, ell, m, t)?;
        let at = format!("{} t={t}", tag(q, ell, m));
        let built = Code::build(&p, cfg)?;
        let n = built.length();
        let k = built.dimension();
        rep.check("code-length", &at, projective_count(t as i64, ell as i64, m as i64, q)?, n);
        rep.check("code-dimension", &at, ell * m, k);

        let formula = code::weight_distribution(&p)?;
        let key = CacheKey::new("weight_distribution", q, ell, m, t, 0, 0);
        let exhaustive_text = match cache.and_then(|c| c.get(&key)) {
            Some(v) => v.to_string(),
            None => {
                let v = dist_text(&oracle::exhaustive_weight_distribution(&built, cfg.guard)?);
                records.push((key, v.clone()));
                v
            }
        };
        rep.check("weight-distribution", &at, dist_text(&formula), &exhaustive_text);
        let exhaustive_min = exhaustive_text
            .split(' ')
            .filter_map(|e| e.split_once(':'))
            .find(|(w, _)| *w != "0")
            .map(|(w, c)| (w.to_string(), c.to_string()))
            .unwrap_or_default();
        rep.check("min-distance", &at, code::min_distance(&p)?, &exhaustive_min.0);
        rep.check("min-weight-count", &at, code::min_weight_count(&p)?, &exhaustive_min.1);

        if k >= 2 {
            rep.check("dual-distance", &at, 3, code::dual_min_distance(&p, true, cfg)?);
        }
        let dual_size = q.checked_pow((n - k) as u32);
        if k >= 2 && dual_size.is_some_and(|s| s <= DUAL_ENUMERATION_LIMIT.min(cfg.guard)) {
            rep.check("dual-distance-exhaustive", &at, 3, oracle::dual_min_distance_exhaustive(&built, cfg.guard)?);
        }

        let table = code::ghw_table(&p, &code::GhwOptions { enumeration: *cfg, ..Default::default() })?;
        let value = |s: usize| table[s - 1].value.as_ref().map_or("unavailable".to_string(), ToString::to_string);
        rep.check("ghw-top", &at, n, value(k));
        if k >= 2 {
            rep.check("ghw-top-1", &at, n - 1, value(k - 1));
        }
        if k >= 3 {
            rep.check("ghw-top-2", &at, n - q as usize - 1, value(k - 2));
        }
        rep.check("ghw-first", &at, code::min_distance(&p)?, value(1));
        for s in 1..=k {
            let subcodes = gaussian_binomial(k as i64, s as i64, q)?;
            let cheap = u64::try_from(&subcodes).is_ok_and(|c| c.saturating_mul(n as u64) <= GHW_CROSSCHECK_BUDGET);
            if !cheap || table[s - 1].value.is_none() {
                continue;
            }
            let key = CacheKey::new("ghw_exhaustive", q, ell, m, t, 0, s);
            let found = match cache.and_then(|c| c.get(&key)) {
                Some(v) => v.to_string(),
                None => {
                    let v = oracle::ghw_exhaustive(&built, s, u64::MAX)?.to_string();
                    records.push((key, v.clone()));
                    v
                }
            };
            rep.check("ghw-exhaustive", format!("{at} s={s}"), value(s), found);
        }
    }
    Ok((rep, records))
}

fn run_suite(suite: Suite, cells: &[(u64, usize, usize)], cfg: &EnumConfig, cache: Option<&Cache>) -> Result<(CheckReport, Records)> {
    let parts: Vec<(CheckReport, Records)> = cells
        .par_iter()
        .map(|&(q, ell, m)| match suite {
            Suite::Qanalog => Ok((qanalog(q, ell, m)?, Vec::new())),
            Suite::Identities => Ok((identities(q, ell, m)?, Vec::new())),
            Suite::Spectra => Ok((spectra(q, ell, m)?, Vec::new())),
            Suite::Oracle => oracle_suite(q, ell, m, cfg, cache),
            Suite::Codes => codes_suite(q, ell, m, cfg, cache),
            Suite::All => unreachable!("expanded before running"),
        })
        .collect::<Result<_>>()?;
    let mut report = CheckReport::new(suite.name());
    let mut records = Vec::new();
    for (r, rec) in parts {
        report.extend(r);
        records.extend(rec);
    }
    Ok((report, records))
}

/// Runs the requested suites and returns the reports, in suite order.
pub fn run_suites(suite: Suite, q_list: &[u64], max_m: usize, guard: u64, mut cache: Option<&mut Cache>) -> Result<Vec<CheckReport>> {
    validate_q_list(q_list, max_m)?;
    let cells = grid(q_list, max_m);
    let suites = suite.expand();
    for &s in &suites {
        if matches!(s, Suite::Oracle | Suite::Codes) {
            precheck(s, &cells, guard)?;
        }
    }
    let cfg = EnumConfig::with_guard(guard);
    let mut reports = Vec::new();
    for s in suites {
        let (report, records) = run_suite(s, &cells, &cfg, cache.as_deref())?;
        if let Some(c) = cache.as_deref_mut() {
            // a cache that cannot be written only costs time
            let _ = c.put_all(records);
        }
        reports.push(report);
    }
    Ok(reports)
}

pub(super) fn run(a: &VerifyArgs) -> Result<Outcome> {
    validate_q_list(&a.q_list, a.max_m)?;
    let mut notes = Vec::new();
    let mut cache = open_cache(&mut notes);
    let reports = run_suites(a.suite, &a.q_list, a.max_m, a.common.guard, cache.as_mut())?;
    let passed: usize = reports.iter().map(CheckReport::passed).sum();
    let failed: usize = reports.iter().map(CheckReport::failed).sum();
    let text = match a.common.format {
        Format::Human => {
            let mut s = String::new();
            for r in &reports {
                s.push_str(&format!("suite {}: {} passed, {} failed\n", r.suite, r.passed(), r.failed()));
                for f in r.failures() {
                    s.push_str(&format!("  FAIL {} [{}]: expected {}, actual {}\n", f.id, f.params, f.expected, f.actual));
                }
            }
            s.push_str(&format!("total: {passed} passed, {failed} failed\n"));
            s
        }
        Format::Json => render_json(&json!({
            "version": VERSION,
            "params": {
                "suite": a.suite.name(),
                "q_list": a.q_list.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "max_m": a.max_m.to_string(),
            },
            "passed": passed.to_string(),
            "failed": failed.to_string(),
            "reports": reports.iter().map(CheckReport::to_json).collect::<Vec<Value>>(),
        })),
        Format::Csv => {
            let rows: Vec<Vec<String>> = reports
                .iter()
                .flat_map(|r| {
                    r.items.iter().map(move |c| {
                        vec![
                            r.suite.clone(),
                            c.id.clone(),
                            c.params.clone(),
                            if c.pass { "pass" } else { "fail" }.to_string(),
                            c.expected.clone(),
                            c.actual.clone(),
                        ]
                    })
                })
                .collect();
            render_csv(&["suite", "check", "params", "status", "expected", "actual"], &rows)
        }
    };
    let code = if failed == 0 { 0 } else { EXIT_CHECK_FAILED };
    Ok(Outcome { text, code, notes })
}
