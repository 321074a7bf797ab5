//! Truncated power series: units, inverses, rational roots, substitutions.
//!
//! Run with `cargo run --example series_roots`.

use artin::{parse_expr, parse_subst, Result, Substitution};

fn main() -> Result<()> {
    let (h, prec) = (2, 6);
    let u = parse_expr("4 + 4*x1 + x1^2*x2", h, prec)?;
    println!("u          = {}", u);
    println!("1/u        = {}", u.invert()?);
    let root = u.rational_nth_root(2)?;
    println!("sqrt(u)    = {}", root);
    println!("sqrt(u)^2  = {}", root.pow(2));

    let cube = parse_expr("-8 + x1", h, prec)?.rational_nth_root(3)?;
    println!("cbrt(-8+x1) = {}", cube);

    // No rational square root of 2 + x1: the constant term is not a square.
    match parse_expr("2 + x1", h, prec)?.rational_nth_root(2) {
        Ok(r) => println!("unexpected root {}", r),
        Err(e) => println!("sqrt(2 + x1): {} ({})", e.code(), e),
    }

    let phi = Substitution::new(parse_subst("x1 + x2^2, x2 - x1^2", h, prec)?)?;
    let psi = phi.inverse();
    println!("phi        = ({})", fmt_targets(&phi));
    println!("phi^-1     = ({})", fmt_targets(&psi));
    println!("phi o phi^-1 is identity: {}", phi.compose(&psi)?.is_identity());
    let f = parse_expr("x1*x2 + x2^3", h, prec)?;
    println!("f(phi)     = {}", phi.apply(&f)?);
    Ok(())
}

fn fmt_targets(phi: &Substitution) -> String {
    phi.targets().iter().map(|t| t.to_string()).collect::<Vec<_>>().join(", ")
}
