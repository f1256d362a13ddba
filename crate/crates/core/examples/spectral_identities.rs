//! Evaluates the eigenvalue identities and weight recursions on a grid.

use detcode::spectrum::{check_keyrec, check_slice_recursions, eigenvalue_sum, p_alternative, p_delsarte, SliceKey};
use detcode::Dims;

fn main() -> detcode::Result<()> {
    let mut checked = 0;
    for q in [2u64, 3, 4] {
        for m in 1..=5 {
            for ell in 1..=m {
                let d = Dims::new(q, ell, m);
                for r in 0..=ell {
                    for t in 0..=ell {
                        assert_eq!(p_delsarte(t, r, &d)?, p_alternative(t, r, &d)?);
                        if r >= 1 {
                            assert!(check_slice_recursions(SliceKey::new(r, 0), t, &d));
                            if t >= 1 && t < ell {
                                assert!(check_keyrec(r, t, &d));
                            }
                        }
                        checked += 1;
                    }
                    if r >= 1 {
                        assert_eq!(eigenvalue_sum(r, &d)?, (-1).into());
                    }
                }
            }
        }
    }
    println!("{checked} (q, ell, m, t, r) cells checked");
    Ok(())
}
