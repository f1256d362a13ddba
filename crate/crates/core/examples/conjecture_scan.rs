//! Checks the ordering pattern of the nonzero weights over a small grid and
//! prints the cases where it fails.

use detcode::spectrum::conjecture_report;
use detcode::Params;

fn main() -> detcode::Result<()> {
    let mut failures = 0;
    for q in [2u64, 3] {
        for m in 3..=5 {
            for ell in 3..=m {
                for t in 2..ell {
                    let v = conjecture_report(&Params::new(q, ell, m, t)?)?;
                    if !v.holds() {
                        failures += 1;
                        let w: Vec<String> = v.weights[1..].iter().map(|x| x.to_string()).collect();
                        println!(
                            "q={q} ell={ell} m={m} t={t}: order {:?}, clauses {:?} fail, weights {}",
                            v.ordering,
                            v.violated_clauses(),
                            w.join(" ")
                        );
                    }
                }
            }
        }
    }
    println!("{failures} counterexamples");
    Ok(())
}
