//! Classifies ideals `I_a` and prints the certificate: the named reduction
//! steps with their units, and the composed substitution mapping the model
//! onto the input ideal. Every certificate is re-verified by span equality.
//!
//! Run with `cargo run --example classify_with_certificate`.

use artin::{classify, classify_ideal, couple_params, parse_expr, parse_ideal, verify_certificate, IdealPres, Result};

fn main() -> Result<()> {
    let p = couple_params(2, 6, 3)?;
    for a in ["0", "3", "x1 + x2", "2*x1 + x1^2", "x1^2 - x2^2"] {
        let cert = classify(&p, &parse_expr(a, p.h, p.s)?)?;
        println!("a = {:<14} -> {}", a, cert.label);
        for step in &cert.steps {
            let units: Vec<String> = step.units.iter().map(|(n, u)| format!("{} = {}", n, u)).collect();
            println!("    {:<20} {}", step.name, units.join("; "));
        }
        let phi: Vec<String> = cert.phi.targets().iter().map(|t| t.to_string()).collect();
        println!("    phi = ({})", phi.join(", "));
        println!("    verified: {}", verify_certificate(&cert)?);
    }

    // A general ideal in model shape is recognized, then classified.
    let p = couple_params(2, 10, 5)?;
    let ideal = IdealPres::new(p, parse_ideal("2*x2^2 - 2*x1^3*x2 - 6*x1^6 - 4*x1^7; x1^5*x2", p.h, p.s)?)?;
    let cert = classify_ideal(&ideal)?;
    println!("(2,10,5) ideal -> {} (verified: {})", cert.label, verify_certificate(&cert)?);
    Ok(())
}
