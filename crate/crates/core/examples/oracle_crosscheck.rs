//! Enumerates every 3 x 4 binary matrix once and compares the counts with
//! the closed forms.

use detcode::field::FieldTables;
use detcode::oracle::{Census, EnumConfig};
use detcode::spectrum::{slice_cardinality, slice_weight, wfrak_hat, SliceKey};
use detcode::{Dims, ExactInt};

fn main() -> detcode::Result<()> {
    let (q, ell, m) = (2u64, 3usize, 4usize);
    let field = FieldTables::new(q)?;
    let census = Census::compute(ell, m, &field, &EnumConfig::default())?;
    let d = Dims::new(q, ell as i64, m as i64);

    let hist = census.count_by_rank();
    for t in 0..=ell {
        println!("rank {t}: enumerated {} formula {}", hist.counts[t], d.mu(t as i64)?);
    }
    for t in 1..=ell {
        for r in 1..=ell {
            let counted = census.count_nonzero_trace(r, t)?;
            let formula = ExactInt::from(q - 1) * wfrak_hat(r as i64, t as i64, &d)?;
            println!("t={t} r={r}: nonzero trace {counted} formula {formula}");
            for s in 0..=r {
                let key = SliceKey::new(r as i64, s as i64);
                let (card, weight) = census.count_slice(r, s, t)?;
                assert_eq!(card, slice_cardinality(key, t as i64, &d)?);
                assert_eq!(weight, slice_weight(key, t as i64, &d)?);
            }
        }
    }
    println!("all slices agree");
    Ok(())
}
