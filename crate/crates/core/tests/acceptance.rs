//! Acceptance criteria, one line each. Runs without the libtest harness so
//! the PASS/FAIL lines always reach the output; exits non-zero on any FAIL.

use std::time::{Duration, Instant};

use detcode::code::{self, Code, GhwMethod, GhwOptions};
use detcode::field::FieldTables;
use detcode::oracle::{self, Census, EnumConfig};
use detcode::qcomb::{Dims, ExactInt, Params};
use detcode::spectrum::{self, SliceKey};

type Check = Result<String, String>;
type Criterion = (&'static str, Duration, fn() -> Check);

fn big(v: i64) -> ExactInt {
    ExactInt::from(v)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn params(q: u64, ell: usize, m: usize, t: usize) -> Params {
    Params::new(q, ell, m, t).unwrap()
}

fn cli(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["detcode"];
    argv.extend_from_slice(args);
    let code = detcode::cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn golden_table() -> Check {
    let expected: [[i64; 4]; 4] = [
        [128, 192, 224, 240],
        [13568, 16256, 16576, 16480],
        [201728, 212480, 211712, 211840],
        [524288, 524288, 524288, 524288],
    ];
    let (code, out, err) = cli(&["table", "--q", "2", "--l", "4", "--m", "5", "--format", "csv"]);
    ensure(code == 0, || format!("exit {code}: {err}"))?;
    let mut reader = csv::Reader::from_reader(out.as_bytes());
    let mut seen = 0;
    for rec in reader.records() {
        let rec = rec.map_err(|e| e.to_string())?;
        let t: usize = rec[0].parse().unwrap();
        let r: usize = rec[1].parse().unwrap();
        let w: i64 = rec[2].parse().unwrap();
        ensure(w == expected[t - 1][r - 1], || format!("t={t} r={r}: {w} != {}", expected[t - 1][r - 1]))?;
        seen += 1;
    }
    ensure(seen == 16, || format!("{seen} rows"))?;
    Ok("16 values match".into())
}

fn oracle_grid() -> Check {
    let mut cells: Vec<(u64, usize, usize)> = Vec::new();
    for q in [2u64, 3] {
        for m in 1..=3 {
            for ell in 1..=m {
                cells.push((q, ell, m));
            }
        }
    }
    cells.push((2, 4, 4));
    cells.push((2, 4, 5));
    let mut compared = 0usize;
    for (q, ell, m) in cells {
        let field = FieldTables::new(q).unwrap();
        let census = Census::compute(ell, m, &field, &EnumConfig::serial()).map_err(|e| e.to_string())?;
        let d = Dims::new(q, ell as i64, m as i64);
        let hist = census.count_by_rank();
        for t in 0..=ell {
            ensure(hist.counts[t] == d.mu(t as i64).unwrap(), || format!("mu q={q} l={ell} m={m} t={t}"))?;
            for r in 1..=ell {
                let nz = census.count_nonzero_trace(r, t).unwrap();
                let expected = ExactInt::from(q - 1) * spectrum::wfrak_hat(r as i64, t as i64, &d).unwrap();
                ensure(nz == expected, || format!("trace q={q} l={ell} m={m} r={r} t={t}: {nz} != {expected}"))?;
                for s in 0..=r {
                    let key = SliceKey::new(r as i64, s as i64);
                    let got = census.count_slice(r, s, t).unwrap();
                    let want = (
                        spectrum::slice_cardinality(key, t as i64, &d).unwrap(),
                        spectrum::slice_weight(key, t as i64, &d).unwrap(),
                    );
                    ensure(got == want, || format!("slice q={q} l={ell} m={m} r={r} s={s} t={t}: {got:?} != {want:?}"))?;
                    compared += 2;
                }
                compared += 1;
            }
            compared += 1;
        }
    }
    Ok(format!("{compared} values equal, single-threaded"))
}

fn spectral_identities() -> Check {
    let mut n = 0;
    for q in [2u64, 3, 4] {
        for m in 1..=5i64 {
            for ell in 1..=m {
                let d = Dims::new(q, ell, m);
                for r in 0..=ell {
                    for t in 0..=ell {
                        let a = spectrum::p_delsarte(t, r, &d).unwrap();
                        let b = spectrum::p_alternative(t, r, &d).unwrap();
                        ensure(a == b, || format!("P q={q} l={ell} m={m} t={t} r={r}: {a} != {b}"))?;
                        n += 1;
                    }
                    if r >= 1 {
                        let sum = spectrum::eigenvalue_sum(r, &d).unwrap();
                        ensure(sum == big(-1), || format!("sum q={q} l={ell} m={m} r={r}: {sum}"))?;
                        n += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{n} identities hold"))
}

fn recursions() -> Check {
    let mut n = 0;
    for q in [2u64, 3] {
        for m in 1..=5i64 {
            for ell in 1..=m {
                let d = Dims::new(q, ell, m);
                for r in 1..=ell {
                    for t in 0..=ell {
                        if (1..ell).contains(&t) {
                            ensure(spectrum::check_keyrec(r, t, &d), || format!("key recursion q={q} l={ell} m={m} r={r} t={t}"))?;
                            n += 1;
                        }
                        for s in 0..=r {
                            ensure(spectrum::check_slice_recursions(SliceKey::new(r, s), t, &d), || {
                                format!("slice recursion q={q} l={ell} m={m} r={r} s={s} t={t}")
                            })?;
                            n += 1;
                        }
                    }
                }
            }
        }
    }
    Ok(format!("{n} recursion instances hold"))
}

fn min_distance() -> Check {
    for (ell, m) in [(2, 2), (2, 3)] {
        for t in [1, 2] {
            let p = params(2, ell, m, t);
            let c = Code::build(&p, &EnumConfig::default()).unwrap();
            let dist = oracle::exhaustive_weight_distribution(&c, 1 << 20).unwrap();
            let exhaustive = dist.min_nonzero_weight().unwrap().clone();
            let formula = code::min_distance(&p).unwrap();
            ensure(exhaustive == formula, || format!("l={ell} m={m} t={t}: {exhaustive} != {formula}"))?;
        }
    }
    ensure(code::min_distance(&params(2, 4, 5, 1)).unwrap() == big(128), || "d(2;4,5,t=1)".into())?;
    ensure(code::min_distance(&params(2, 4, 5, 2)).unwrap() == big(13568), || "d(2;4,5,t=2)".into())?;
    Ok("4 exhaustive minima and 128/13568 match".into())
}

fn weight_distribution() -> Check {
    let mut n = 0;
    for (ell, m) in [(2, 2), (2, 3)] {
        for t in 1..=ell {
            let p = params(2, ell, m, t);
            let c = Code::build(&p, &EnumConfig::default()).unwrap();
            let exhaustive = oracle::exhaustive_weight_distribution(&c, 1 << 20).unwrap();
            let formula = code::weight_distribution(&p).unwrap();
            ensure(exhaustive == formula, || format!("l={ell} m={m} t={t}: {exhaustive} != {formula}"))?;
            ensure(formula.total() == big(1 << (ell * m)), || format!("l={ell} m={m} t={t}: total {}", formula.total()))?;
            n += 1;
        }
    }
    Ok(format!("{n} distributions equal, totals q^(lm)"))
}

fn ghw_arbitration() -> Check {
    let p = params(2, 2, 2, 1);
    let c = Code::build(&p, &EnumConfig::default()).unwrap();
    let exhaustive: Vec<ExactInt> = (1..=4).map(|s| oracle::ghw_exhaustive(&c, s, 1_000_000).unwrap()).collect();
    ensure(exhaustive == vec![big(4), big(6), big(8), big(9)], || format!("exhaustive {exhaustive:?}"))?;
    let by_method = |s: usize, m: GhwMethod| -> Option<ExactInt> {
        code::ghw_formulas(s, &p).unwrap().into_iter().find(|(k, _)| *k == m).map(|(_, v)| v)
    };
    ensure(by_method(1, GhwMethod::FormulaLow) == Some(big(4)), || "low s=1".into())?;
    ensure(by_method(2, GhwMethod::FormulaLow) == Some(big(6)), || "low s=2".into())?;
    ensure(by_method(3, GhwMethod::FormulaMPlus1) == Some(big(8)), || "m+1 s=3".into())?;
    ensure(by_method(2, GhwMethod::FormulaHigh) == Some(big(6)), || "high s=2".into())?;
    ensure(by_method(3, GhwMethod::FormulaHigh) == Some(big(8)), || "high s=3".into())?;
    ensure(by_method(4, GhwMethod::FormulaHigh) == Some(big(9)), || "high s=4".into())?;
    ensure(c.length() == 9, || "n".into())?;
    // the statement without the (q^s-1)/(q-1) factor: q^(l+m-s-1) nu_{t-1}(l-1,m-1)
    let d = p.dims();
    let uncorrected = d.pow(d.ell + d.m - 2 - 1) * d.shrink(1, 1).nu(0).unwrap();
    ensure(uncorrected == big(2) && uncorrected != exhaustive[1], || format!("uncorrected {uncorrected}"))?;
    let table = code::ghw_table(&p, &GhwOptions { exhaustive: true, ..Default::default() }).unwrap();
    ensure(table.iter().all(|e| e.confirmations.contains(&GhwMethod::Exhaustive)), || "table not confirmed".into())?;
    Ok("exhaustive (4, 6, 8, 9) = formulas; uncorrected d_2 = 2 refuted".into())
}

fn overlap() -> Check {
    let mut n = 0;
    for q in [2u64, 3] {
        for m in 2..=4 {
            for ell in 2..=m {
                let p = params(q, ell, m, ell - 1);
                let f = code::ghw_formulas(m, &p).unwrap();
                let low = f.iter().find(|(k, _)| *k == GhwMethod::FormulaLow).map(|x| x.1.clone());
                let high = f.iter().find(|(k, _)| *k == GhwMethod::FormulaHigh).map(|x| x.1.clone());
                ensure(low.is_some() && low == high, || format!("q={q} l={ell} m={m}: {low:?} vs {high:?}"))?;
                n += 1;
            }
        }
    }
    let p = params(2, 2, 3, 1);
    ensure(code::ghw(3, &p, &GhwOptions::default()).unwrap().value == Some(big(14)), || "value 14".into())?;
    Ok(format!("{n} cells agree at s = m"))
}

fn dual_distance() -> Check {
    for (ell, m) in [(2, 2), (2, 3)] {
        let c = Code::build(&params(2, ell, m, 1), &EnumConfig::default()).unwrap();
        let d = oracle::dual_min_distance_exhaustive(&c, 1 << 20).unwrap();
        ensure(d == big(3), || format!("l={ell} m={m}: {d}"))?;
        c.verify_dual_distance().map_err(|e| e.to_string())?;
    }
    Ok("exhaustive dual distance 3 twice".into())
}

fn conjecture_scan() -> Check {
    let (code, out, err) = cli(&["conjecture", "--q-list", "2,3", "--max-m", "5", "--format", "json"]);
    ensure(code == 0 || code == 4, || format!("exit {code}: {err}"))?;
    let doc: serde_json::Value = serde_json::from_str(&out).map_err(|e| e.to_string())?;
    let verdicts = doc["verdicts"].as_array().ok_or("no verdicts")?;
    let ordering = |t: &str| -> Option<Vec<String>> {
        verdicts
            .iter()
            .find(|v| v["quantity"] == "w_hat" && v["q"] == "2" && v["l"] == "4" && v["m"] == "5" && v["t"] == t)
            .map(|v| v["ordering"].as_array().unwrap().iter().map(|x| x.as_str().unwrap().to_string()).collect())
    };
    ensure(ordering("2") == Some(vec!["1".into(), "2".into(), "4".into(), "3".into()]), || "t=2 ordering".into())?;
    ensure(ordering("3") == Some(vec!["1".into(), "3".into(), "4".into(), "2".into()]), || "t=3 ordering".into())?;
    let found = doc["counterexamples"].as_str().unwrap_or("?").to_string();
    if code == 4 {
        ensure(err.contains("clause"), || "counterexample without clause".into())?;
    }
    Ok(format!("exit {code}, {} verdicts, {found} counterexamples, (2,4,5) orderings match", verdicts.len()))
}

fn determinism() -> Check {
    let base = ["code", "--q", "2", "--l", "2", "--m", "2", "--t", "1", "--format", "json"];
    let mut outputs = Vec::new();
    for jobs in ["1", "1", "2", "4"] {
        let mut args = base.to_vec();
        args.extend(["--jobs", jobs]);
        let (code, out, err) = cli(&args);
        ensure(code == 0, || format!("exit {code}: {err}"))?;
        outputs.push(out);
    }
    ensure(outputs.windows(2).all(|w| w[0] == w[1]), || "outputs differ".into())?;
    Ok(format!("{} runs byte-identical", outputs.len()))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("golden weight table", Duration::from_secs(1), golden_table),
        ("formula/oracle equivalence", Duration::from_secs(300), oracle_grid),
        ("spectral identities", Duration::from_secs(10), spectral_identities),
        ("recursions", Duration::from_secs(10), recursions),
        ("minimum distance", Duration::from_secs(30), min_distance),
        ("weight distribution", Duration::from_secs(30), weight_distribution),
        ("GHW arbitration", Duration::from_secs(10), ghw_arbitration),
        ("overlap consistency", Duration::from_secs(5), overlap),
        ("dual distance", Duration::from_secs(30), dual_distance),
        ("conjecture scan", Duration::from_secs(60), conjecture_scan),
        ("determinism", Duration::from_secs(30), determinism),
    ];
    let mut failures = 0;
    for (i, (name, limit, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let (status, detail) = match result {
            Ok(detail) if elapsed <= *limit => ("PASS", detail),
            Ok(detail) => ("FAIL", format!("{detail}; took {elapsed:.2?}, limit {limit:?}")),
            Err(e) => ("FAIL", e),
        };
        if status == "FAIL" {
            failures += 1;
        }
        println!("AC{:<2} {status} {name} ({elapsed:.2?} of {limit:?}): {detail}", i + 1);
    }
    println!("acceptance: {} passed, {failures} failed", criteria.len() - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
