//! Builds an explicit generator matrix and checks its weight distribution
//! against the closed form by encoding every message.

use detcode::code::{self, Code};
use detcode::oracle::{self, EnumConfig};
use detcode::Params;

fn main() -> detcode::Result<()> {
    let params = Params::new(2, 2, 3, 1)?;
    let c = Code::build(&params, &EnumConfig::default())?;
    println!("n={} k={} d={}", c.length(), c.dimension(), code::min_distance(&params)?);

    let formula = code::weight_distribution(&params)?;
    let enumerated = oracle::exhaustive_weight_distribution(&c, 1 << 20)?;
    println!("formula:    {formula}");
    println!("enumerated: {enumerated}");
    assert_eq!(formula, enumerated);

    let (a, b, e) = c.verify_dual_distance()?;
    println!("dual distance 3, witnessed by columns {a}, {b}, {e}");
    println!("{}", serde_json::to_string(&c.export()["field"]).unwrap());
    Ok(())
}
