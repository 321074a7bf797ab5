//! The invariants that separate the models: the order of the best square
//! (sigma, with a verified witness), the rational points of the locus of
//! linear forms whose square vanishes in degree 2, and the socle filtration.
//! The values do not change under a change of coordinates.
//!
//! Run with `cargo run --example separation_invariants`.

use artin::quotient::socle_filtration;
use artin::{
    couple_params, enumerate_models, parse_subst, sigma_invariant, span_ideal, square_zero_locus, IdealPres, Rat,
    Result, Substitution,
};

fn main() -> Result<()> {
    let phi = |p: &artin::CoupleParams| -> Result<Substitution> {
        Substitution::new(parse_subst("2*x1 + x2 - x1*x2, x2 + 3*x1^2", p.h, p.s)?)
    };
    for (h, s, t) in [(2, 6, 3), (2, 10, 5)] {
        let p = couple_params(h, s, t)?;
        println!("(h,s,t) = ({},{},{})", h, s, t);
        for d in enumerate_models(&p)? {
            for c in [1, 5] {
                let ideal = d.instantiate(Rat::from_integer(c.into())).ideal(&p)?;
                let u = span_ideal(&ideal);
                let sigma = sigma_invariant(&u, &p)?;
                let locus = square_zero_locus(&u)?;
                let moved = IdealPres::new(p, ideal.gens.iter().map(|g| phi(&p)?.apply(g)).collect::<Result<_>>()?)?;
                let v = span_ideal(&moved);
                let same = sigma_invariant(&v, &p)?.sigma == sigma.sigma
                    && square_zero_locus(&v)?.points.len() == locus.points.len();
                println!(
                    "  {:<16} c={} sigma={} witness={} locus={} filtration={:?} invariant-under-phi={}",
                    d.to_string(),
                    c,
                    sigma.sigma,
                    sigma.witness,
                    locus.points.len(),
                    socle_filtration(&u),
                    same
                );
                if matches!(d, artin::models::ModelDescriptor::Sporadic { .. }) {
                    break;
                }
            }
        }
    }
    Ok(())
}
