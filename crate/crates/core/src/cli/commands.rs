use rayon::prelude::*;
use serde_json::{json, Value};

use super::cache::{Cache, CacheKey};
use super::{
    render_csv, render_json, CodeArgs, Command, ConjectureArgs, Format, GhwArgs, Outcome, ShapeArgs, TableArgs,
    EXIT_COUNTEREXAMPLE, VERSION,
};
use crate::code::{self, Code, GhwEntry, GhwOptions};
use crate::error::{invalid, Result};
use crate::oracle::EnumConfig;
use crate::qcomb::{prime_power, ExactInt, Params};
use crate::spectrum::{self, ConjectureVerdict};

pub(super) fn dispatch(cmd: &Command) -> Result<Outcome> {
    match cmd {
        Command::Table(a) => table(a),
        Command::Verify(a) => super::verify::run(a),
        Command::Code(a) => code_cmd(a),
        Command::Ghw(a) => ghw_cmd(a),
        Command::Conjecture(a) => conjecture(a),
    }
}

fn shape_params(shape: &ShapeArgs, t: usize) -> Result<Params> {
    Params::new(shape.q, shape.l, shape.m, t)
}

fn params_json(p: &Params) -> Value {
    json!({ "q": p.q.to_string(), "l": p.ell.to_string(), "m": p.m.to_string(), "t": p.t.to_string() })
}

fn strings<T: ToString>(xs: &[T]) -> Vec<String> {
    xs.iter().map(ToString::to_string).collect()
}

/// Opens the cache named in the environment; on failure, carries on without
/// it and leaves a note.
pub(super) fn open_cache(notes: &mut Vec<String>) -> Option<Cache> {
    match Cache::from_env() {
        Ok(c) => c,
        Err(e) => {
            notes.push(format!("warning: cache disabled: {e}"));
            None
        }
    }
}

pub(super) fn validate_q_list(q_list: &[u64], max_m: usize) -> Result<()> {
    if q_list.is_empty() {
        return invalid("--q-list is empty");
    }
    if let Some(q) = q_list.iter().find(|&&q| prime_power(q).is_none()) {
        return invalid(format!("q = {q} is not a prime power"));
    }
    if max_m == 0 {
        return invalid("--max-m must be at least 1");
    }
    Ok(())
}

fn table(a: &TableArgs) -> Result<Outcome> {
    let base = shape_params(&a.shape, 1)?;
    let ts: Vec<usize> = match a.t {
        Some(t) => vec![base.with_t(t)?.t],
        None => (1..=base.ell).collect(),
    };
    let rs: Vec<usize> = match a.r {
        Some(r) if (1..=base.ell).contains(&r) => vec![r],
        Some(r) => return invalid(format!("r = {r} outside 1..={}", base.ell)),
        None => (1..=base.ell).collect(),
    };
    let mut notes = Vec::new();
    let mut cache = open_cache(&mut notes);
    let mut rows: Vec<(usize, usize, ExactInt)> = Vec::new();
    let mut fresh = Vec::new();
    for &t in &ts {
        let p = base.with_t(t)?;
        let mut table = None;
        for &r in &rs {
            let key = CacheKey::new("w_hat", p.q, p.ell, p.m, t, r, 0);
            let cached = cache.as_ref().and_then(|c| c.get(&key)).and_then(|v| v.parse().ok());
            let value = match cached {
                Some(v) => v,
                None => {
                    if table.is_none() {
                        table = Some(spectrum::weight_table(&p)?);
                    }
                    let v = table.as_ref().unwrap().w[r].clone();
                    fresh.push((key, v.to_string()));
                    v
                }
            };
            rows.push((t, r, value));
        }
    }
    if let Some(c) = cache.as_mut() {
        if let Err(e) = c.put_all(fresh) {
            notes.push(format!("warning: cache not updated: {e}"));
        }
    }
    let text = match a.common.format {
        Format::Human => {
            let mut s = format!("w_hat_r(t) for q={}, l={}, m={}; columns r = {}\n", base.q, base.ell, base.m, strings(&rs).join(" "));
            for &t in &ts {
                let vals: Vec<String> = rows.iter().filter(|x| x.0 == t).map(|x| x.2.to_string()).collect();
                s.push_str(&format!("t={t}: {}\n", vals.join(" ")));
            }
            s
        }
        Format::Json => {
            let rows: Vec<Value> = rows
                .iter()
                .map(|(t, r, w)| json!({ "t": t.to_string(), "r": r.to_string(), "w_hat": w.to_string() }))
                .collect();
            render_json(&json!({
                "version": VERSION,
                "params": { "q": base.q.to_string(), "l": base.ell.to_string(), "m": base.m.to_string() },
                "rows": rows,
            }))
        }
        Format::Csv => {
            let rows: Vec<Vec<String>> = rows.iter().map(|(t, r, w)| vec![t.to_string(), r.to_string(), w.to_string()]).collect();
            render_csv(&["t", "r", "w_hat"], &rows)
        }
    };
    Ok(Outcome { text, code: 0, notes })
}

fn code_cmd(a: &CodeArgs) -> Result<Outcome> {
    let p = shape_params(&a.shape, a.t)?;
    let cfg = EnumConfig::with_guard(a.common.guard);
    let built = Code::build(&p, &cfg)?;
    let dist = code::weight_distribution(&p)?;
    let d = code::min_distance(&p)?;
    let count = code::min_weight_count(&p)?;
    let dual = code::dual_min_distance(&p, false, &cfg).ok();
    let dual_text = dual.as_ref().map_or_else(|| "none".to_string(), ToString::to_string);
    let text = match a.common.format {
        Format::Json => {
            let mut doc = built.export();
            let obj = doc.as_object_mut().expect("export is an object");
            obj.insert("version".into(), VERSION.into());
            obj.insert("params".into(), params_json(&p));
            obj.insert("d".into(), d.to_string().into());
            obj.insert("min_weight_count".into(), count.to_string().into());
            obj.insert("dual_distance".into(), dual.as_ref().map_or(Value::Null, |d| d.to_string().into()));
            let wd: Vec<Value> = dist
                .entries
                .iter()
                .map(|(w, c)| json!({ "weight": w.to_string(), "count": c.to_string() }))
                .collect();
            obj.insert("weight_distribution".into(), wd.into());
            render_json(&doc)
        }
        Format::Csv => {
            let mut header = vec!["row".to_string()];
            header.extend((0..built.length()).map(|c| format!("p{c}")));
            let header: Vec<&str> = header.iter().map(String::as_str).collect();
            let rows: Vec<Vec<String>> = (0..built.dimension())
                .map(|i| {
                    let mut row = vec![i.to_string()];
                    row.extend(built.generator().row(i).iter().map(ToString::to_string));
                    row
                })
                .collect();
            render_csv(&header, &rows)
        }
        Format::Human => {
            let f = built.field();
            let mut s = format!("code q={} l={} m={} t={}\n", p.q, p.ell, p.m, p.t);
            s.push_str(&format!("n = {}\nk = {}\nd = {d}\n", built.length(), built.dimension()));
            s.push_str(&format!("minimum-weight codewords = {count}\ndual distance = {dual_text}\n"));
            s.push_str(&format!("weight distribution = {dist}\n"));
            s.push_str(&format!(
                "field = GF({}^{}), modulus coefficients (low degree first) {:?}\n",
                f.characteristic(),
                f.degree(),
                f.irreducible()
            ));
            s.push_str("generator (row i*m+j evaluates X_ij):\n");
            for i in 0..built.dimension() {
                s.push_str(&strings(built.generator().row(i)).join(" "));
                s.push('\n');
            }
            s
        }
    };
    Ok(Outcome::ok(text))
}

fn ghw_entry_json(e: &GhwEntry) -> Value {
    json!({
        "s": e.s.to_string(),
        "value": e.value.as_ref().map(|v| Value::from(v.to_string())).unwrap_or(Value::Null),
        "method": e.method.name(),
        "confirmations": e.confirmations.iter().map(|m| m.name()).collect::<Vec<_>>(),
    })
}

fn ghw_cmd(a: &GhwArgs) -> Result<Outcome> {
    let p = shape_params(&a.shape, a.t)?;
    let opts = GhwOptions {
        exhaustive: a.exhaustive,
        enumeration: EnumConfig::with_guard(a.common.guard),
        subspace_guard: a.subspace_guard,
    };
    let entries = match a.s {
        Some(s) => vec![code::ghw(s, &p, &opts)?],
        None => code::ghw_table(&p, &opts)?,
    };
    let value_text = |e: &GhwEntry| e.value.as_ref().map_or_else(|| "-".to_string(), ToString::to_string);
    let confirmations = |e: &GhwEntry| e.confirmations.iter().map(|m| m.name()).collect::<Vec<_>>();
    let text = match a.common.format {
        Format::Human => {
            let mut s = format!("generalized Hamming weights for q={} l={} m={} t={}\n", p.q, p.ell, p.m, p.t);
            s.push_str("s\td_s\tmethod\tconfirmed by\n");
            for e in &entries {
                s.push_str(&format!("{}\t{}\t{}\t{}\n", e.s, value_text(e), e.method, confirmations(e).join(", ")));
            }
            s
        }
        Format::Json => render_json(&json!({
            "version": VERSION,
            "params": params_json(&p),
            "entries": entries.iter().map(ghw_entry_json).collect::<Vec<_>>(),
        })),
        Format::Csv => {
            let rows: Vec<Vec<String>> = entries
                .iter()
                .map(|e| vec![e.s.to_string(), value_text(e), e.method.to_string(), confirmations(e).join(";")])
                .collect();
            render_csv(&["s", "value", "method", "confirmations"], &rows)
        }
    };
    Ok(Outcome::ok(text))
}

/// Which weights a verdict is about.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Quantity {
    CodeWeights,
    RankCounts,
}

impl Quantity {
    fn name(self) -> &'static str {
        match self {
            Quantity::CodeWeights => "w_hat",
            Quantity::RankCounts => "wfrak_hat",
        }
    }
}

fn verdict_json(kind: Quantity, v: &ConjectureVerdict) -> Value {
    json!({
        "quantity": kind.name(),
        "q": v.params.q.to_string(),
        "l": v.params.ell.to_string(),
        "m": v.params.m.to_string(),
        "t": v.params.t.to_string(),
        "weights": strings(&v.weights[1..]),
        "ordering": strings(&v.ordering),
        "distinct": v.distinct,
        "increasing_prefix": v.increasing_prefix,
        "interleaving": v.interleaving,
        "degenerate": v.degenerate,
        "violated": strings(&v.violated_clauses()),
    })
}

fn describe(kind: Quantity, v: &ConjectureVerdict) -> String {
    let p = &v.params;
    let order: Vec<String> = v.ordering.iter().map(|r| format!("{}_{r}", kind.name())).collect();
    let status = if v.holds() {
        "ok".to_string()
    } else {
        let clauses = strings(&v.violated_clauses()).join(", ");
        format!("COUNTEREXAMPLE: clause {clauses} fails")
    };
    format!(
        "{} q={} l={} m={} t={}: weights r=1..{} = {}; order {}; {status}",
        kind.name(),
        p.q,
        p.ell,
        p.m,
        p.t,
        p.ell,
        strings(&v.weights[1..]).join(" "),
        order.join(" < "),
    )
}

fn conjecture(a: &ConjectureArgs) -> Result<Outcome> {
    validate_q_list(&a.q_list, a.max_m)?;
    let mut grid = Vec::new();
    for &q in &a.q_list {
        for m in 1..=a.max_m {
            for ell in 2..=m {
                for t in 1..=ell {
                    let p = Params::new(q, ell, m, t)?;
                    if 1 < t && t < ell {
                        grid.push((Quantity::CodeWeights, p));
                    }
                    grid.push((Quantity::RankCounts, p));
                }
            }
        }
    }
    // code-weight verdicts first, then the rank counts, each in grid order
    grid.sort_by_key(|(k, _)| *k == Quantity::RankCounts);
    let verdicts: Vec<(Quantity, ConjectureVerdict)> = grid
        .par_iter()
        .map(|&(kind, p)| {
            let v = match kind {
                Quantity::CodeWeights => spectrum::conjecture_report(&p)?,
                Quantity::RankCounts => spectrum::wfrak_ordering_report(&p)?,
            };
            Ok((kind, v))
        })
        .collect::<Result<_>>()?;
    let counterexamples: Vec<&(Quantity, ConjectureVerdict)> = verdicts.iter().filter(|(_, v)| !v.holds()).collect();
    let text = match a.common.format {
        Format::Human => {
            let mut s = String::new();
            for (k, v) in &verdicts {
                s.push_str(&describe(*k, v));
                s.push('\n');
            }
            s.push_str(&format!("{} verdicts, {} counterexamples\n", verdicts.len(), counterexamples.len()));
            s
        }
        Format::Json => render_json(&json!({
            "version": VERSION,
            "params": {
                "q_list": strings(&a.q_list),
                "max_m": a.max_m.to_string(),
            },
            "verdicts": verdicts.iter().map(|(k, v)| verdict_json(*k, v)).collect::<Vec<_>>(),
            "counterexamples": counterexamples.len().to_string(),
        })),
        Format::Csv => {
            let rows: Vec<Vec<String>> = verdicts
                .iter()
                .map(|(k, v)| {
                    vec![
                        k.name().to_string(),
                        v.params.q.to_string(),
                        v.params.ell.to_string(),
                        v.params.m.to_string(),
                        v.params.t.to_string(),
                        strings(&v.weights[1..]).join(" "),
                        strings(&v.ordering).join(" "),
                        strings(&v.violated_clauses()).join(" "),
                    ]
                })
                .collect();
            render_csv(&["quantity", "q", "l", "m", "t", "weights", "ordering", "violated"], &rows)
        }
    };
    let notes = counterexamples.iter().map(|(k, v)| describe(*k, v)).collect();
    let code = if counterexamples.is_empty() { 0 } else { EXIT_COUNTEREXAMPLE };
    Ok(Outcome { text, code, notes })
}
