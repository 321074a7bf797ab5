//! Hilbert functions of quotients `R / I` for the model ideals and for
//! arbitrary user ideals.
//!
//! Run with `cargo run --example hilbert_functions`.

use artin::quotient::socle_filtration;
use artin::{couple_params, enumerate_models, hilbert, parse_ideal, span_ideal, type_check, IdealPres, Rat, Result};

fn main() -> Result<()> {
    for (h, s, t) in [(2, 6, 3), (3, 8, 4), (2, 10, 5), (2, 5, 3)] {
        let p = couple_params(h, s, t)?;
        println!(
            "(h,s,t) = ({},{},{}): expected shape {:?}, dim {}, regular {}, r* {:?}",
            h, s, t, p.shape(), p.length(), p.regular, p.r_star
        );
        for d in enumerate_models(&p)? {
            let ideal = d.instantiate(Rat::from_integer(1.into())).ideal(&p)?;
            let u = span_ideal(&ideal);
            println!("  {:<16} H = {:?}  socle filtration {:?}", d.to_string(), hilbert(&u).values, socle_filtration(&u));
        }
    }

    // An ideal of the wrong type is detected by type_check.
    let p = couple_params(2, 6, 3)?;
    let ideal = IdealPres::new(p, parse_ideal("x2^2; x1^4", 2, 6)?)?;
    let u = span_ideal(&ideal);
    println!("(x2^2, x1^4): H = {:?}, right type: {}", hilbert(&u).values, type_check(&u, &p));
    Ok(())
}
