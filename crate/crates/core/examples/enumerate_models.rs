//! Lists the isomorphism classes of almost stretched Gorenstein algebras
//! with Hilbert function `(1, h, 2, ..., 2, 1, ..., 1)` for several couples.
//!
//! Run with `cargo run --example enumerate_models [h s t]`.

use artin::{couple_params, enumerate_models, format_expr, Rat, Result};

fn main() -> Result<()> {
    let args: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let couples = if args.len() == 3 {
        vec![(args[0] as usize, args[1], args[2])]
    } else {
        vec![(2, 6, 3), (3, 8, 4), (2, 10, 5), (3, 9, 4)]
    };
    for (h, s, t) in couples {
        let p = couple_params(h, s, t)?;
        let models = enumerate_models(&p)?;
        println!("(h,s,t) = ({},{},{}): {} model line(s)", h, s, t, models.len());
        for d in models {
            let concrete = d.instantiate(Rat::from_integer(1.into())).ideal(&p)?;
            let n = concrete.gens.len();
            let shown: Vec<String> = concrete.gens[n - 2..].iter().map(format_expr).collect();
            println!("  {:<16} middle: {:<28} (c = 1: {})", d.to_string(), d.middle_generator(&p), shown.join(", "));
        }
    }
    match couple_params(2, 4, 3).and_then(|p| enumerate_models(&p)) {
        Ok(_) => println!("(2,4,3): unexpectedly enumerated"),
        Err(e) => println!("(2,4,3): {} ({})", e.code(), e),
    }
    Ok(())
}
