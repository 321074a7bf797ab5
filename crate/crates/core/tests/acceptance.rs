//! Acceptance criteria 1-10. Each criterion prints one `PASS`/`FAIL` line;
//! the test fails if any criterion fails.
//! Two criteria carry documented deviations where the stated expectation is
//! not literally true; the line says so and the corrected statement is checked.

mod common;

use artin::cli::{demo_checks, socle_degree_five_certificate, splitting_certificate};
use artin::invariants::{
    check_basis_property, check_degree_r_plus_two, check_degree_t_plus_one, dichotomy_member, dichotomy_predicted,
};
use artin::models::ModelDescriptor;
use artin::{
    classify, classify_ideal, couple_params, enumerate_models, equal_spans, format_expr, hilbert, parse_expr,
    sigma_invariant, span_ideal, square_zero_locus, verify_certificate, CoupleParams, Error, IdealPres, ModelLabel,
    Rat, Result, Series,
};
use common::{q, random_series, random_substitution, small_rat};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use std::io::Write;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn labels(p: &CoupleParams, cs: &[Rat]) -> Result<Vec<ModelLabel>> {
    let mut out = Vec::new();
    for d in enumerate_models(p)? {
        match d {
            ModelDescriptor::Sporadic { .. } => out.push(d.instantiate(q(1, 1))),
            ModelDescriptor::Family { .. } => out.extend(cs.iter().map(|c| d.instantiate(c.clone()))),
        }
    }
    Ok(out)
}

fn criterion_1() -> Result<Outcome> {
    let cases: [(usize, u32, u32, &[usize]); 4] = [
        (2, 6, 3, &[1, 2, 2, 2, 1, 1, 1]),
        (3, 8, 4, &[1, 3, 2, 2, 2, 1, 1, 1, 1]),
        (2, 10, 5, &[1, 2, 2, 2, 2, 2, 1, 1, 1, 1, 1]),
        (2, 5, 3, &[1, 2, 2, 2, 1, 1]),
    ];
    let mut ok = true;
    let mut n = 0;
    let mut dims = Vec::new();
    for (h, s, t, expect) in cases {
        let p = couple_params(h, s, t)?;
        for label in labels(&p, &[q(1, 1), q(-3, 1)])? {
            let hf = hilbert(&span_ideal(&label.ideal(&p)?));
            ok &= hf.values == expect && hf.length() == h + s as usize + t as usize - 1;
            n += 1;
        }
        dims.push(format!("({},{},{})->{}", h, s, t, p.length()));
    }
    Ok(outcome(
        ok,
        format!(
            "{} models exact; dim A = h+s+t-1 [{}] (deviation: the stated h+s+t overcounts by one)",
            n,
            dims.join(" ")
        ),
    ))
}

fn criterion_2() -> Result<Outcome> {
    let a = couple_params(2, 8, 4)?;
    let b = couple_params(2, 6, 3)?;
    let c = couple_params(2, 10, 5)?;
    let d = couple_params(2, 5, 3)?;
    let ok = a.regular && !b.regular && b.r_star == Some(1) && !c.regular && c.r_star == Some(2) && d.regular;
    Ok(outcome(ok, "(8,4) regular; (6,3) r*=1; (10,5) r*=2; (5,3) regular"))
}

fn criterion_3() -> Result<Outcome> {
    let names = |h, s, t| -> Result<Vec<String>> {
        Ok(enumerate_models(&couple_params(h, s, t)?)?.iter().map(|d| d.to_string()).collect())
    };
    let a = names(3, 8, 4)?;
    let b = names(2, 6, 3)?;
    let c = names(2, 10, 5)?;
    let ok = a == ["Sporadic(0)", "Sporadic(1)", "Sporadic(2)", "Sporadic(3)"]
        && b == ["Sporadic(0)", "Sporadic(2)", "Family(1, c, 0)"]
        && c == ["Sporadic(0)", "Sporadic(1)", "Sporadic(3)", "Sporadic(4)", "Family(2, c, 0)", "Family(2, c, 1)"];
    Ok(outcome(ok, format!("(3,8,4): {}; (2,6,3): {}; (2,10,5): {}", a.join(", "), b.join(", "), c.join(", "))))
}

/// Random `a`: either a constant from a list of squares, fourth powers and
/// zero plus sparse higher terms, or `c*x1^r` plus terms of higher degree. Inputs whose reduction needs an irrational
/// root are resampled; the count of resampled inputs is reported.
fn random_a(rng: &mut StdRng, h: usize, s: u32) -> Series {
    const LEAD: [(i64, i64); 8] = [(0, 1), (1, 1), (-1, 1), (1, 16), (16, 1), (1, 4), (4, 1), (81, 1)];
    let (n, d) = LEAD[rng.gen_range(1..LEAD.len())];
    if rng.gen_bool(0.5) {
        let (n0, d0) = LEAD[rng.gen_range(0..LEAD.len())];
        return Series::constant(h, s, q(n0, d0)).add(&random_series(rng, h, s, 1, 4, 4)).unwrap();
    }
    // leading term c*x1^r with r spread over the whole model range
    let r = rng.gen_range(1..s / 2 + 1);
    let lead = Series::term(h, s, artin::ExpVec::var_pow(h, 0, r), q(n, d));
    lead.add(&random_series(rng, h, s, r + 1, r + 3, 3)).unwrap()
}

fn criterion_4() -> Result<Outcome> {
    let mut rng = StdRng::seed_from_u64(0x5eed_0004);
    let mut details = Vec::new();
    let mut ok = true;
    for (h, s, t) in [(2, 6, 3), (3, 8, 4), (2, 10, 5)] {
        let p = couple_params(h, s, t)?;
        let mut inputs: Vec<Series> = ["0", "1", "-3", "1/2", "x2", "x2^2 - 3*x2", "5*x2 + x1*x2"]
            .iter()
            .map(|e| parse_expr(e, h, s))
            .collect::<Result<_>>()?;
        if h == 3 {
            inputs.push(parse_expr("x3 - x2*x3", h, s)?);
        }
        let (mut verified, mut resampled, mut attempts) = (0, 0, 0);
        let mut edge_failures = 0;
        for a in &inputs {
            match classify(&p, a) {
                Ok(cert) if verify_certificate(&cert)? => verified += 1,
                Err(Error::RootMismatch(_)) => resampled += 1,
                _ => edge_failures += 1,
            }
        }
        let mut random_ok = 0;
        let mut kinds = std::collections::BTreeSet::new();
        while random_ok < 30 && attempts < 500 {
            attempts += 1;
            let a = random_a(&mut rng, h, s);
            match classify(&p, &a) {
                Ok(cert) => {
                    if verify_certificate(&cert)? {
                        kinds.insert(cert.label.to_string().split(':').take(2).collect::<Vec<_>>().join(":"));
                        random_ok += 1;
                        verified += 1;
                    } else {
                        ok = false;
                    }
                }
                Err(Error::RootMismatch(_)) => resampled += 1,
                Err(e) => {
                    ok = false;
                    details.push(format!("error on {}: {}", format_expr(&a), e));
                }
            }
        }
        ok &= random_ok >= 25 && edge_failures == 0;
        details.push(format!(
            "({},{},{}): {} verified, {} resampled, random inputs reach {:?}",
            h, s, t, verified, resampled, kinds
        ));
    }
    Ok(outcome(ok, details.join("; ")))
}

fn criterion_5() -> Result<Outcome> {
    let cs = [q(1, 1), q(2, 1), q(-3, 1), q(1, 2)];
    let mut n = 0;
    let mut bad = Vec::new();
    for (h, s, t) in [(2, 6, 3), (2, 10, 5)] {
        let p = couple_params(h, s, t)?;
        for label in labels(&p, &cs)? {
            let cert = classify_ideal(&label.ideal(&p)?)?;
            if cert.label != label || !verify_certificate(&cert)? {
                bad.push(format!("{} -> {}", label, cert.label));
            }
            n += 1;
        }
    }
    Ok(outcome(bad.is_empty(), format!("{} model ideals map to their own label {}", n, bad.join(", "))))
}

fn criterion_6() -> Result<Outcome> {
    let cert = socle_degree_five_certificate()?;
    let certified = verify_certificate(&cert)?;
    let p = couple_params(2, 5, 3)?;
    let i01 = span_ideal(&IdealPres::new(p, artin::parse_ideal("x2^2 - x1*x2 - x1^3; x1^3*x2", 2, 5)?)?);
    let product = parse_expr("(x1 - x2 + x1*x2)*(x2 + x1^2 + x1^3)", 2, 5)?;
    let residue = i01.normal_form(&product)?;
    let (phi, source, target) = splitting_certificate()?;
    let image = IdealPres::new(p, source.gens.iter().map(|g| phi.apply(g)).collect::<Result<_>>()?)?;
    let split = equal_spans(&span_ideal(&image), &span_ideal(&target))?;
    Ok(outcome(
        certified && split,
        format!(
            "z=9x+y, w=-27y+xy+9x^2 maps I_{{2,1}} onto I_{{1,1}}: {}; deviation: the displayed product is NOT in the ideal \
             (normal form {}), the intended isomorphism (y^2-xy-x^3, x^3y) ~ (xy, y^4-x^5) is certified by the exact \
             factorization instead: {}",
            certified,
            format_expr(&residue),
            split
        ),
    ))
}

fn criterion_7() -> Result<Outcome> {
    let mut rng = StdRng::seed_from_u64(0x5eed_0007);
    let mut ok = true;
    let mut seen = Vec::new();
    let mut expectations: Vec<(CoupleParams, ModelLabel, u32, Option<usize>)> = Vec::new();
    let p = couple_params(2, 6, 3)?;
    expectations.push((p, ModelLabel::Sporadic { r: 0 }, 2, Some(0)));
    for c in [1, 2, 5] {
        expectations.push((p, ModelLabel::Family { r: 1, c: q(c, 1), d: 0 }, 3, Some(1)));
    }
    expectations.push((p, ModelLabel::Sporadic { r: 2 }, 4, Some(1)));
    let p = couple_params(2, 10, 5)?;
    for (label, sigma) in [
        (ModelLabel::Sporadic { r: 0 }, 2),
        (ModelLabel::Sporadic { r: 1 }, 3),
        (ModelLabel::Family { r: 2, c: q(1, 1), d: 0 }, 4),
        (ModelLabel::Family { r: 2, c: q(-3, 1), d: 1 }, 4),
        (ModelLabel::Sporadic { r: 3 }, 5),
        (ModelLabel::Sporadic { r: 4 }, 6),
    ] {
        expectations.push((p, label, sigma, None));
    }
    let mut moved = 0;
    for (p, label, sigma, locus) in expectations {
        let ideal = label.ideal(&p)?;
        let u = span_ideal(&ideal);
        let got_sigma = sigma_invariant(&u, &p)?.sigma;
        let got_locus = square_zero_locus(&u)?.points.len();
        ok &= got_sigma == sigma && locus.is_none_or(|l| l == got_locus);
        seen.push(format!("{}:({},{})", label, got_sigma, got_locus));
        for _ in 0..5 {
            let phi = random_substitution(&mut rng, p.h, p.s);
            let image = IdealPres::new(p, ideal.gens.iter().map(|g| phi.apply(g)).collect::<Result<_>>()?)?;
            let v = span_ideal(&image);
            ok &= sigma_invariant(&v, &p)?.sigma == got_sigma && square_zero_locus(&v)?.points.len() == got_locus;
            moved += 1;
        }
    }
    Ok(outcome(ok, format!("(sigma, |locus|): {}; invariant under {} random substitutions", seen.join(" "), moved)))
}

fn criterion_8() -> Result<Outcome> {
    let mut rng = StdRng::seed_from_u64(0x5eed_0008);
    let (mut checks, mut agree, mut inside) = (0, 0, 0);
    for (h, s, t) in [(2, 6, 3), (2, 10, 5)] {
        let p = couple_params(h, s, t)?;
        for label in labels(&p, &[q(1, 1), q(2, 1), q(-3, 1)])? {
            let u = span_ideal(&label.ideal(&p)?);
            for good in [check_basis_property(&u, &p)?, check_degree_t_plus_one(&u, &p)?] {
                checks += 1;
                agree += good as usize;
            }
            if let ModelLabel::Family { .. } = label {
                checks += 1;
                agree += check_degree_r_plus_two(&u, &p)? as usize;
                for _ in 0..20 {
                    let pick = |rng: &mut StdRng| {
                        let lead = if rng.gen_bool(0.3) { small_rat(rng) } else { q(0, 1) };
                        Series::constant(h, s, lead).add(&random_series(rng, h, s, 1, 4, 3)).unwrap()
                    };
                    let (a, b) = (pick(&mut rng), pick(&mut rng));
                    let predicted = dichotomy_predicted(&p, &a, &b)?;
                    checks += 1;
                    inside += predicted as usize;
                    agree += (dichotomy_member(&u, &p, &a, &b)? == predicted) as usize;
                }
            }
        }
    }
    Ok(outcome(agree == checks, format!("{}/{} structural checks agree ({} dichotomy pairs predicted inside)", agree, checks, inside)))
}

fn criterion_9() -> Result<Outcome> {
    let mut rng = StdRng::seed_from_u64(0x5eed_0009);
    let mut ok = true;
    let mut n = 0;
    for j in [2u32, 3, 5] {
        for _ in 0..50 {
            let c = small_rat(&mut rng);
            let lead = (0..j).fold(q(1, 1), |acc, _| acc * &c);
            let unit = Series::constant(2, 6, lead).add(&random_series(&mut rng, 2, 6, 1, 6, 5))?;
            ok &= unit.rational_nth_root(j)?.pow(j) == unit;
            n += 1;
        }
    }
    for _ in 0..30 {
        let (a, b, c) = (
            random_substitution(&mut rng, 2, 5),
            random_substitution(&mut rng, 2, 5),
            random_substitution(&mut rng, 2, 5),
        );
        let f = random_series(&mut rng, 2, 5, 0, 5, 6);
        let g = random_series(&mut rng, 2, 5, 0, 5, 6);
        ok &= a.apply(&f.mul(&g)?)? == a.apply(&f)?.mul(&a.apply(&g)?)?;
        ok &= a.compose(&b)?.compose(&c)?.targets() == a.compose(&b.compose(&c)?)?.targets();
        ok &= parse_expr(&format_expr(&f), 2, 5)? == f;
    }
    Ok(outcome(ok, format!("{} roots (j = 2, 3, 5), 30 homomorphism/associativity/round-trip cases", n)))
}

fn criterion_10() -> Result<Outcome> {
    let mut ok = true;
    let a = parse_expr("x1 + 1", 2, 4)?;
    ok &= matches!(classify(&couple_params(2, 4, 3)?, &a), Err(Error::OutOfRange(_)));
    for (h, s, t) in [(2, 6, 4), (3, 8, 5)] {
        let p = couple_params(h, s, t)?;
        ok &= matches!(classify(&p, &Series::one(h, s)), Err(Error::OutOfRange(_)));
    }
    for (h, s, t) in [(2, 5, 3), (2, 7, 4)] {
        let p = couple_params(h, s, t)?;
        for e in ["0", "1", "x1", "x1^2 + x2"] {
            ok &= verify_certificate(&classify(&p, &parse_expr(e, h, s)?)?)?;
        }
    }
    let witness = verify_certificate(&socle_degree_five_certificate()?)?;
    let demo = demo_checks().iter().all(|c| c.pass);
    Ok(outcome(
        ok && witness && demo,
        "s < 2t-1 rejected with E_OUT_OF_THEOREM; s = 2t-1 classifies; I_{2,1} ~ I_{1,1} witness recorded and verified",
    ))
}

#[test]
fn acceptance_criteria() {
    let criteria: [(u32, fn() -> Result<Outcome>); 10] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
        (10, criterion_10),
    ];
    let mut failed = Vec::new();
    for (n, f) in criteria {
        let start = std::time::Instant::now();
        let result = f().unwrap_or_else(|e| outcome(false, format!("{}: {}", e.code(), e)));
        // written to the process stdout directly so the lines show without --nocapture
        let _ = writeln!(
            std::io::stdout().lock(),
            "criterion {:>2}: {} ({:.2}s) {}",
            n,
            if result.pass { "PASS" } else { "FAIL" },
            start.elapsed().as_secs_f64(),
            result.detail
        );
        if !result.pass {
            failed.push(n);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {:?}", failed);
}
