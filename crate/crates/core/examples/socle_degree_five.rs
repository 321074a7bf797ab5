//! Socle degree five, `t = 3`: the couple is regular but `s = 2t - 1`, and
//! two different models are isomorphic. Shows the explicit substitution
//! `x1 -> 9*x1 + x2, x2 -> -27*x2 + x1*x2 + 9*x1^2` mapping `I_{2,1}` onto
//! `I_{1,1}`, and the exact factorization giving
//! `(x2^2 - x1*x2 - x1^3, x1^3*x2) ~ (x1*x2, x2^4 - x1^5)`.
//!
//! Run with `cargo run --example socle_degree_five`.

use artin::cli::{socle_degree_five_certificate, splitting_certificate};
use artin::{couple_params, equal_spans, format_expr, parse_expr, parse_ideal, span_ideal, verify_certificate, IdealPres, Result};

fn main() -> Result<()> {
    let cert = socle_degree_five_certificate()?;
    println!("I_(1,1) = ({})", cert.source.gens.iter().map(format_expr).collect::<Vec<_>>().join(", "));
    println!("model   = {}", cert.label);
    println!("phi     = ({})", cert.phi.targets().iter().map(format_expr).collect::<Vec<_>>().join(", "));
    println!("phi(model) = I_(1,1): {}", verify_certificate(&cert)?);

    let p = couple_params(2, 5, 3)?;
    let i01 = span_ideal(&IdealPres::new(p, parse_ideal("x2^2 - x1*x2 - x1^3; x1^3*x2", 2, 5)?)?);
    let f = parse_expr("(x1 - x2 + x1*x2)*(x2 + x1^2 + x1^3)", 2, 5)?;
    println!("(x1 - x2 + x1*x2)(x2 + x1^2 + x1^3) mod I_(0,1) = {}", i01.normal_form(&f)?);

    let (phi, source, target) = splitting_certificate()?;
    println!("psi     = ({})", phi.targets().iter().map(format_expr).collect::<Vec<_>>().join(", "));
    let image = IdealPres::new(p, source.gens.iter().map(|g| phi.apply(g)).collect::<Result<_>>()?)?;
    println!(
        "psi(x1*x2, x2^4 - x1^5) = ({}): {}",
        target.gens.iter().map(format_expr).collect::<Vec<_>>().join(", "),
        equal_spans(&span_ideal(&image), &span_ideal(&target))?
    );
    Ok(())
}
