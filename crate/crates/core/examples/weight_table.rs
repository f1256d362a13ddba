//! Prints the nonzero weights of the determinantal code for every `t`.
//!
//! cargo run --example weight_table -- 2 4 5

use detcode::spectrum::weight_table;
use detcode::Params;

fn main() -> detcode::Result<()> {
    let args: Vec<u64> = std::env::args().skip(1).map(|a| a.parse().expect("integer argument")).collect();
    let (q, ell, m) = match args[..] {
        [q, ell, m] => (q, ell as usize, m as usize),
        _ => (2, 4, 5),
    };
    println!("q={q} ell={ell} m={m}");
    for t in 1..=ell {
        let table = weight_table(&Params::new(q, ell, m, t)?)?;
        let row: Vec<String> = table.nonzero().iter().map(|w| w.to_string()).collect();
        println!("t={t}: {}", row.join(" "));
    }
    Ok(())
}
