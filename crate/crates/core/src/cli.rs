//! Command-line surface: argument parsing, JSON output, exit codes.
//!
//! Results go to standard output as JSON; failures go to standard error as
//! `{"error": {"code": ..., "message": ...}}`. Exit codes: 0 success,
//! 2 parse/parameter errors, 3 no rational root or outside the classified
//! range, 4 verification failure or wrong Hilbert function, 1 otherwise.

use std::io::Write;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::classify::{classify, verify_certificate, Certificate};
use crate::error::{Error, Result};
use crate::expr::{format_expr, parse_expr, parse_ideal, parse_subst};
use crate::invariants::{sigma_invariant, square_zero_locus};
use crate::models::{couple_params, enumerate_models, model_ideal, type_check, ModelDescriptor, ModelLabel};
use crate::quotient::{equal_spans, hilbert, socle_filtration, span_ideal, CoupleParams, IdealPres};
use crate::rat::{format_rat, Rat};
use crate::series::Series;
use crate::subst::Substitution;

#[derive(Parser, Debug)]
#[command(name = "artin", version, about = "Almost stretched Gorenstein algebras: models, certificates, invariants")]
struct Cli {
    /// Indent the JSON output.
    #[arg(long, global = true)]
    json_pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
struct Couple {
    /// Embedding dimension h (number of variables).
    #[arg(long)]
    h: usize,
    /// Socle degree s.
    #[arg(long)]
    s: u32,
    /// Last degree t with H(t) = 2.
    #[arg(long)]
    t: u32,
}

impl Couple {
    fn params(&self) -> Result<CoupleParams> {
        couple_params(self.h, self.s, self.t)
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the model classes and their generators.
    Models {
        #[command(flatten)]
        couple: Couple,
    },
    /// Classify I_a and print a verified certificate.
    Classify {
        #[command(flatten)]
        couple: Couple,
        /// The series a, e.g. "x1 + x2^2".
        #[arg(long, allow_hyphen_values = true)]
        a: String,
    },
    /// Check that SUBST maps the model LABEL onto the ideal.
    Verify {
        #[command(flatten)]
        couple: Couple,
        /// "sporadic:R" or "family:R:C:D".
        #[arg(long)]
        model: String,
        /// Comma-separated substitution targets.
        #[arg(long, allow_hyphen_values = true)]
        subst: String,
        /// Semicolon-separated generators.
        #[arg(long, allow_hyphen_values = true)]
        ideal: String,
    },
    /// Hilbert function of R / I.
    Hilbert {
        #[command(flatten)]
        couple: Couple,
        #[arg(long, allow_hyphen_values = true)]
        ideal: String,
    },
    /// Isomorphism invariants of R / I.
    Invariants {
        #[command(flatten)]
        couple: Couple,
        #[arg(long, allow_hyphen_values = true)]
        ideal: String,
    },
    /// Re-check the worked examples and print a pass/fail table.
    DemoPaper,
}

/// Exit code for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } | Error::Params(_) => 2,
        Error::RootMismatch(_) | Error::OutOfRange(_) => 3,
        Error::NotType(_) => 4,
        _ => 1,
    }
}

fn rat_json(q: &Rat) -> Value {
    Value::String(format_rat(q))
}

pub fn params_json(p: &CoupleParams) -> Value {
    json!({"h": p.h, "s": p.s, "t": p.t, "regular": p.regular, "r_star": p.r_star})
}

pub fn label_json(label: &ModelLabel) -> Value {
    match label {
        ModelLabel::Sporadic { r } => json!({"kind": "sporadic", "r": r, "c": null, "d": null, "text": label.to_string()}),
        ModelLabel::Family { r, c, d } => {
            json!({"kind": "family", "r": r, "c": rat_json(c), "d": d, "text": label.to_string()})
        }
    }
}

pub fn certificate_json(cert: &Certificate) -> Value {
    let steps: Vec<Value> = cert
        .steps
        .iter()
        .map(|st| {
            let units: serde_json::Map<String, Value> = st
                .units
                .iter()
                .map(|(n, s)| (n.clone(), Value::String(format_expr(s))))
                .collect();
            json!({"name": st.name, "units": units})
        })
        .collect();
    json!({
        "substitution": cert.phi.targets().iter().map(format_expr).collect::<Vec<_>>(),
        "steps": steps,
    })
}

fn models_json(p: &CoupleParams) -> Result<Value> {
    let descs = enumerate_models(p)?;
    let mut list = Vec::new();
    for d in &descs {
        let concrete = d.instantiate(Rat::from_integer(1.into())).ideal(p)?;
        let mut gens: Vec<String> = concrete.gens.iter().map(format_expr).collect();
        let mid = gens.len() - 2;
        gens[mid] = d.middle_generator(p);
        let (kind, r, dd) = match *d {
            ModelDescriptor::Sporadic { r } => ("sporadic", r, None),
            ModelDescriptor::Family { r, d } => ("family", r, Some(d)),
        };
        list.push(json!({
            "kind": kind,
            "r": r,
            "c": if dd.is_some() { Value::String("c".into()) } else { Value::Null },
            "d": dd,
            "label": d.to_string(),
            "generators": gens,
        }));
    }
    Ok(json!({"params": params_json(p), "count": list.len(), "models": list}))
}

fn ideal_of(p: &CoupleParams, text: &str) -> Result<IdealPres> {
    IdealPres::new(*p, parse_ideal(text, p.h, p.s)?)
}

fn invariants_json(p: &CoupleParams, ideal: &IdealPres) -> Result<Value> {
    let u = span_ideal(ideal);
    let filtration = socle_filtration(&u);
    if p.h != 2 {
        return Ok(json!({"sigma": null, "witness": null, "locus": null, "socle_filtration": filtration}));
    }
    let sigma = sigma_invariant(&u, p)?;
    let locus = square_zero_locus(&u)?;
    let points: Vec<Value> = locus
        .points
        .iter()
        .map(|(a, b)| json!([format_rat(a), format_rat(b)]))
        .collect();
    Ok(json!({
        "sigma": sigma.sigma,
        "witness": format_expr(&sigma.witness),
        "locus": {"points": points, "residual_degree": locus.residual_degree, "whole_line": locus.whole_line},
        "socle_filtration": filtration,
    }))
}

/// Outcome of one worked-example check.
#[derive(Clone, Debug)]
pub struct DemoCheck {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

fn check(name: &str, f: impl FnOnce() -> Result<(bool, String)>) -> DemoCheck {
    match f() {
        Ok((pass, detail)) => DemoCheck { name: name.into(), pass, detail },
        Err(e) => DemoCheck { name: name.into(), pass: false, detail: format!("{}: {}", e.code(), e) },
    }
}

fn hilbert_of_all_models(p: &CoupleParams, expect: &[usize]) -> Result<(bool, String)> {
    let mut ok = p.shape() == expect;
    let mut n = 0;
    for d in enumerate_models(p)? {
        for c in [1, 2, -3] {
            let u = span_ideal(&d.instantiate(Rat::from_integer(c.into())).ideal(p)?);
            ok &= hilbert(&u).values == expect;
            n += 1;
        }
    }
    Ok((ok, format!("{} model instances, expected {:?}", n, expect)))
}

fn model_list(p: &CoupleParams) -> Result<Vec<String>> {
    Ok(enumerate_models(p)?.iter().map(|d| d.to_string()).collect())
}

/// The worked examples: Hilbert functions, regularity, model lists, the
/// socle-degree-five isomorphism and the `s = t + 1` constructors.
pub fn demo_checks() -> Vec<DemoCheck> {
    let mut out = Vec::new();
    out.push(check("ex1 (3,8,4): regular, 4 sporadic classes", || {
        let p = couple_params(3, 8, 4)?;
        let list = model_list(&p)?;
        Ok((p.regular && list == ["Sporadic(0)", "Sporadic(1)", "Sporadic(2)", "Sporadic(3)"], list.join(", ")))
    }));
    out.push(check("ex1 (3,8,4): Hilbert function 1,3,2,2,2,1,1,1,1", || {
        hilbert_of_all_models(&couple_params(3, 8, 4)?, &[1, 3, 2, 2, 2, 1, 1, 1, 1])
    }));
    out.push(check("ex2 (2,6,3): non-regular with r* = 1, two sporadic models and a family", || {
        let p = couple_params(2, 6, 3)?;
        let list = model_list(&p)?;
        Ok((
            !p.regular && p.r_star == Some(1) && list == ["Sporadic(0)", "Sporadic(2)", "Family(1, c, 0)"],
            list.join(", "),
        ))
    }));
    out.push(check("ex2 (2,6,3): Hilbert function 1,2,2,2,1,1,1 and length 10", || {
        let p = couple_params(2, 6, 3)?;
        let (ok, detail) = hilbert_of_all_models(&p, &[1, 2, 2, 2, 1, 1, 1])?;
        Ok((ok && p.length() == 10, detail))
    }));
    out.push(check("ex3 (2,10,5): non-regular with r* = 2, six-line model list", || {
        let p = couple_params(2, 10, 5)?;
        let list = model_list(&p)?;
        let expect = ["Sporadic(0)", "Sporadic(1)", "Sporadic(3)", "Sporadic(4)", "Family(2, c, 0)", "Family(2, c, 1)"];
        Ok((p.r_star == Some(2) && list == expect, list.join(", ")))
    }));
    out.push(check("ex3 (2,10,5): Hilbert function 1,2,2,2,2,2,1,1,1,1,1", || {
        hilbert_of_all_models(&couple_params(2, 10, 5)?, &[1, 2, 2, 2, 2, 2, 1, 1, 1, 1, 1])
    }));
    out.push(check("ex4 (2,5,3): regular, Hilbert function 1,2,2,2,1,1", || {
        let p = couple_params(2, 5, 3)?;
        let (ok, detail) = hilbert_of_all_models(&p, &[1, 2, 2, 2, 1, 1])?;
        Ok((ok && p.regular, detail))
    }));
    out.push(check("ex4 (2,5,3): z = 9x+y, w = -27y+xy+9x^2 maps I_{2,1} onto I_{1,1}", || {
        let cert = socle_degree_five_certificate()?;
        let ok = verify_certificate(&cert)?;
        Ok((ok, format!("I_{{1,1}} = ({})", cert.source.gens.iter().map(format_expr).collect::<Vec<_>>().join(", "))))
    }));
    out.push(check("ex4 (2,5,3): the displayed product (x-y+xy)(y+x^2+x^3) is NOT in (y^2-xy-x^3, x^3y)", || {
        let p = couple_params(2, 5, 3)?;
        let u = span_ideal(&ideal_of(&p, "x2^2 - x1*x2 - x1^3; x1^3*x2")?);
        let f = parse_expr("(x1 - x2 + x1*x2)*(x2 + x1^2 + x1^3)", 2, 5)?;
        let residue = u.normal_form(&f)?;
        Ok((!residue.is_zero(), format!("normal form {}", format_expr(&residue))))
    }));
    out.push(check("ex4 (2,5,3): (y^2-xy-x^3, x^3y) ~ (xy, y^4-x^5) via the exact factorization", || {
        let (phi, source, target) = splitting_certificate()?;
        let image = IdealPres::new(source.params, source.gens.iter().map(|g| phi.apply(g)).collect::<Result<_>>()?)?;
        let ok = equal_spans(&span_ideal(&image), &span_ideal(&target))?;
        Ok((ok, format!("phi = ({})", phi.targets().iter().map(format_expr).collect::<Vec<_>>().join(", "))))
    }));
    out.push(check("ex4 (2,5,3): the two displayed readings of I_{1,1} are different ideals", || {
        let p = couple_params(2, 5, 3)?;
        let a = span_ideal(&ideal_of(&p, "x2^2 - x1^2*x2 - x1^3; x1^3*x2")?);
        let b = span_ideal(&ideal_of(&p, "x2^2 - x1*x2 - x1^3; x1^3*x2")?);
        Ok((a != b && type_check(&a, &p) && type_check(&b, &p), "exponent 2 is I_{1,1}, exponent 1 is I_{0,1}".into()))
    }));
    out.push(check("ex4 (2,5,3): classifier runs at s = 2t - 1 (labels not unique there)", || {
        let p = couple_params(2, 5, 3)?;
        let c1 = classify(&p, &parse_expr("x1", 2, 5)?)?;
        let c2 = classify(&p, &parse_expr("x1^2", 2, 5)?)?;
        Ok((
            verify_certificate(&c1)? && verify_certificate(&c2)?,
            format!("{} and {} are isomorphic", c1.label, c2.label),
        ))
    }));
    out.push(check("ex5 (s = t+1): listed ideals have the expected Hilbert function", || {
        let mut n = 0;
        let mut ok = true;
        for (h, t) in [(2, 3), (2, 4), (3, 4), (2, 5)] {
            let p = couple_params(h, t + 1, t)?;
            for (_, ideal) in crate::models::small_socle_models(&p)? {
                ok &= type_check(&span_ideal(&ideal), &p);
                n += 1;
            }
        }
        Ok((ok, format!("{} ideals", n)))
    }));
    out
}

/// The hand-written certificate `I_{1,1} = phi(I_{2,1})` at `(2, 5, 3)`.
pub fn socle_degree_five_certificate() -> Result<Certificate> {
    let p = couple_params(2, 5, 3)?;
    let source = model_ideal(&p, 1, &Series::one(2, 5))?;
    let phi = Substitution::new(parse_subst("9*x1 + x2, -27*x2 + x1*x2 + 9*x1^2", 2, 5)?)?;
    Ok(Certificate { source, label: ModelLabel::Sporadic { r: 2 }, phi, steps: vec![] })
}

/// The isomorphism `(x1*x2, x2^4 - x1^5) ~ (x2^2 - x1*x2 - x1^3, x1^3*x2)` at `(2, 5, 3)`.
///
/// Over `Q[[x1]]`, `x2^2 - x1*x2 - x1^3 = (x2 - x1*alpha)(x2 - x1*beta)` with
/// `alpha, beta = (1 +- sqrt(1 + 4*x1)) / 2`. Sending `x1 -> x1*alpha - x2` and
/// `x2 -> x2 - x1*beta` maps `x1*x2` to the quadric, and the fourth and fifth
/// powers agree modulo the target. Returns `(phi, source, target)` with
/// `phi(source) = target`.
pub fn splitting_certificate() -> Result<(Substitution, IdealPres, IdealPres)> {
    let p = couple_params(2, 5, 3)?;
    let (x, y) = (p.var(1), p.var(2));
    let root = parse_expr("1 + 4*x1", 2, 5)?.rational_nth_root(2)?;
    let half = Rat::new(1.into(), 2.into());
    let one = Series::one(2, 5);
    let alpha = one.add(&root)?.scale(&half);
    let beta = one.sub(&root)?.scale(&half);
    let phi = Substitution::new(vec![x.mul(&alpha)?.sub(&y)?, y.sub(&x.mul(&beta)?)?])?;
    let source = ideal_of(&p, "x1*x2; x2^4 - x1^5")?;
    let target = ideal_of(&p, "x2^2 - x1*x2 - x1^3; x1^3*x2")?;
    Ok((phi, source, target))
}

enum Outcome {
    Ok(Value),
    /// Printed on standard output, but the exit code signals failure.
    Failed(Value),
}

fn dispatch(cmd: Command) -> Result<Outcome> {
    match cmd {
        Command::Models { couple } => Ok(Outcome::Ok(models_json(&couple.params()?)?)),
        Command::Classify { couple, a } => {
            let p = couple.params()?;
            let a = parse_expr(&a, p.h, p.s)?;
            let cert = classify(&p, &a)?;
            Ok(Outcome::Ok(json!({
                "label": label_json(&cert.label),
                "certificate": certificate_json(&cert),
                "verified": true,
            })))
        }
        Command::Verify { couple, model, subst, ideal } => {
            let p = couple.params()?;
            let label: ModelLabel = model.parse()?;
            label.validate(&p)?;
            let phi = Substitution::new(parse_subst(&subst, p.h, p.s)?)?;
            let source = ideal_of(&p, &ideal)?;
            let cert = Certificate { source, label, phi, steps: vec![] };
            let ok = verify_certificate(&cert)?;
            let v = json!({"verified": ok});
            Ok(if ok { Outcome::Ok(v) } else { Outcome::Failed(v) })
        }
        Command::Hilbert { couple, ideal } => {
            let p = couple.params()?;
            let u = span_ideal(&ideal_of(&p, &ideal)?);
            let hf = hilbert(&u);
            Ok(Outcome::Ok(json!({"hilbert": hf.values, "dim": hf.length(), "type_ok": type_check(&u, &p)})))
        }
        Command::Invariants { couple, ideal } => {
            let p = couple.params()?;
            Ok(Outcome::Ok(invariants_json(&p, &ideal_of(&p, &ideal)?)?))
        }
        Command::DemoPaper => {
            let checks = demo_checks();
            let all = checks.iter().all(|c| c.pass);
            let rows: Vec<Value> = checks
                .iter()
                .map(|c| json!({"check": c.name, "pass": c.pass, "detail": c.detail}))
                .collect();
            let v = json!({"checks": rows, "all_passed": all});
            Ok(if all { Outcome::Ok(v) } else { Outcome::Failed(v) })
        }
    }
}

fn render(v: &Value, pretty: bool) -> String {
    if pretty {
        serde_json::to_string_pretty(v).expect("JSON values serialize")
    } else {
        v.to_string()
    }
}

fn error_json(code: &str, message: &str) -> Value {
    json!({"error": {"code": code, "message": message}})
}

/// Runs the command line with `args` (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{}", e);
                return 0;
            }
            let msg = e.to_string();
            let _ = writeln!(err, "{}", error_json("E_PARAMS", msg.trim()));
            return 2;
        }
    };
    let pretty = cli.json_pretty;
    match dispatch(cli.command) {
        Ok(Outcome::Ok(v)) => {
            let _ = writeln!(out, "{}", render(&v, pretty));
            0
        }
        Ok(Outcome::Failed(v)) => {
            let _ = writeln!(out, "{}", render(&v, pretty));
            let _ = writeln!(err, "{}", error_json("E_VERIFY", "verification failed"));
            4
        }
        Err(e) => {
            let _ = writeln!(err, "{}", error_json(e.code(), &e.to_string()));
            exit_code(&e)
        }
    }
}
