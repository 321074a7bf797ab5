//! The expression language: parsing series, ideals and substitutions, the
//! canonical printed form, and positioned parse errors.
//!
//! Run with `cargo run --example parse_and_format`.

use artin::{format_expr, parse_expr, parse_ideal, parse_subst, Result};

fn main() -> Result<()> {
    for text in ["x1+x2", "(x1 - x2)^3", "-1/2*x1^2*x2 + 3", "x2*x1*2 - x1*x2", "(1 + x1)^9"] {
        let f = parse_expr(text, 2, 4)?;
        let shown = format_expr(&f);
        println!("{:<22} -> {:<40} round-trip ok: {}", text, shown, parse_expr(&shown, 2, 4)? == f);
    }
    let gens = parse_ideal("(x2^2 - x1^4; x1^3*x2)", 2, 6)?;
    println!("ideal: {}", gens.iter().map(format_expr).collect::<Vec<_>>().join(" ; "));
    let targets = parse_subst("x1 + x2^2, 3*x2", 2, 6)?;
    println!("subst: {}", targets.iter().map(format_expr).collect::<Vec<_>>().join(" , "));
    for bad in ["x1 +", "x3", "x1^", "2*(x1"] {
        match parse_expr(bad, 2, 4) {
            Ok(f) => println!("{:?} parsed as {}", bad, f),
            Err(e) => println!("{:?}: {} {}", bad, e.code(), e),
        }
    }
    Ok(())
}
