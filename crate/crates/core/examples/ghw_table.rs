//! Generalized Hamming weights, with every applicable formula and an
//! exhaustive subspace search where it is small enough.

use detcode::code::{ghw_table, GhwOptions};
use detcode::Params;

fn main() -> detcode::Result<()> {
    for (q, ell, m, t) in [(2, 2, 2, 1), (2, 2, 3, 1), (2, 3, 4, 1)] {
        let params = Params::new(q, ell, m, t)?;
        println!("q={q} ell={ell} m={m} t={t}");
        let opts = GhwOptions { exhaustive: true, ..Default::default() };
        for entry in ghw_table(&params, &opts)? {
            let value = entry.value.map_or("unavailable".to_string(), |v| v.to_string());
            let confirmed: Vec<&str> = entry.confirmations.iter().map(|m| m.name()).collect();
            println!("  d_{} = {value} via {} [{}]", entry.s, entry.method.name(), confirmed.join(", "));
        }
    }
    Ok(())
}
