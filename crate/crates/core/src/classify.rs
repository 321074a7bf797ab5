//! The constructive normal-form pipeline with certificates.
//!
//! Every step rewrites the current ideal `I` as `phi(J)` for a simpler ideal
//! `J` and an explicit change of variables `phi`; the steps are chained into
//! one substitution mapping the final model onto the input ideal. The
//! pipeline works with the slightly more general middle generator
//! `x2^2 - a*x1*x2 - mu*x1^(s-t+1)` so that model-shaped presentations with
//! an arbitrary unit `mu` can be classified too (`mu = 1` gives `I_a`).

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::models::{checked_span, generalized_ideal, ModelLabel};
use crate::monomial::ExpVec;
use crate::quotient::{equal_spans, span_ideal, CoupleParams, IdealPres};
use crate::rat::Rat;
use crate::series::Series;
use crate::subst::Substitution;

/// One rewrite step and the auxiliary units it used.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub name: String,
    pub units: Vec<(String, Series)>,
}

impl Step {
    fn new(name: &str, units: Vec<(&str, Series)>) -> Self {
        Step {
            name: name.to_string(),
            units: units.into_iter().map(|(n, s)| (n.to_string(), s)).collect(),
        }
    }
}

/// A claim `span(source) = span(phi(model(label)))`, checkable exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub source: IdealPres,
    pub label: ModelLabel,
    pub phi: Substitution,
    pub steps: Vec<Step>,
}

/// The outcome of one rewrite step: `current = phi(next)`.
#[derive(Clone, Debug)]
pub struct Rewrite {
    pub phi: Substitution,
    pub step: Step,
}

fn guard(ok: bool, msg: impl Into<String>) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Guard(msg.into()))
    }
}

fn check_series(params: &CoupleParams, f: &Series, what: &str) -> Result<()> {
    if f.nvars() != params.h || f.precision() != params.s {
        return Err(Error::Ambient(format!(
            "{} lives in (h={}, N={}), expected (h={}, N={})",
            what,
            f.nvars(),
            f.precision(),
            params.h,
            params.s
        )));
    }
    Ok(())
}

/// `a = x1^r * eta + sum_{j>=2} b_j * x_j` with `eta = a(x1,0,..,0) / x1^r`
/// and `b_j` collecting the terms whose first non-`x1` variable is `x_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    /// Order of `a(x1, 0, ..., 0)`; `N + 1` when it vanishes.
    pub r: u32,
    pub eta: Series,
    /// `b[0]` is `b_2`, `b[1]` is `b_3`, ...
    pub b: Vec<Series>,
}

pub fn decompose(a: &Series) -> Decomposition {
    let h = a.nvars();
    let prec = a.precision();
    let axis = a.restrict_axis();
    let r = axis.order();
    let eta = if axis.is_zero() {
        Series::zero(h, prec)
    } else {
        axis.div_monomial(&ExpVec::var_pow(h, 0, r)).expect("x1^r divides the axis part")
    };
    let mut b = vec![Series::zero(h, prec); h - 1];
    for (m, c) in a.terms() {
        let Some(j) = m.exps()[1..].iter().position(|&e| e > 0).map(|j| j + 1) else {
            continue;
        };
        let q = ExpVec::var_pow(h, j, 1).quotient_of(m);
        b[j - 1] = &b[j - 1] + &Series::term(h, prec, q, c.clone());
    }
    Decomposition { r, eta, b }
}

/// `u = 1 - b_2 * x1`.
fn unit_u(params: &CoupleParams, dec: &Decomposition) -> Series {
    &Series::one(params.h, params.s) - &(&dec.b[0] * &params.var(1))
}

/// `y2 = v * x2` with `v^2 = u / mu`: turns `u*x2^2 - mu*x1^e` (plus the
/// absorbed `x1^t*x2` multiples) into the `I_{t-1,1}` shape.
fn rescale_second(params: &CoupleParams, u: &Series, mu: &Series) -> Result<(Substitution, Series)> {
    let v = (u * &mu.invert()?).rational_nth_root(2)?;
    let phi = Substitution::with_target(params.h, params.s, 2, &v * &params.var(2))?;
    Ok((phi, v))
}

fn zero_case(params: &CoupleParams, a: &Series, mu: &Series) -> Result<Rewrite> {
    let dec = decompose(a);
    let u = unit_u(params, &dec);
    let (phi, v) = rescale_second(params, &u, mu)?;
    Ok(Rewrite { phi, step: Step::new("reduce_zero_case", vec![("u", u), ("v", v)]) })
}

/// `I_a ~ I_{t-1,1}` when `a(x1, 0, ..., 0) = 0`.
pub fn reduce_zero_case(params: &CoupleParams, a: &Series) -> Result<(Substitution, ModelLabel)> {
    check_series(params, a, "a")?;
    guard(a.restrict_axis().is_zero(), "reduce_zero_case needs a(x1,0,...,0) = 0")?;
    let rw = zero_case(params, a, &Series::one(params.h, params.s))?;
    Ok((rw.phi, ModelLabel::Sporadic { r: params.t - 1 }))
}

fn to_rw(params: &CoupleParams, a: &Series, mu: &Series) -> Result<(Rewrite, u32, Series)> {
    let dec = decompose(a);
    guard(!dec.eta.is_zero(), "reduce_to_rw needs a(x1,0,...,0) != 0")?;
    let u = unit_u(params, &dec);
    // y2 = (u / eta) * x2 turns u*x2^2 - eta*x1^(r+1)*x2 - mu*x1^e into a
    // unit multiple of y2^2 - x1^(r+1)*y2 - W*x1^e with W = mu*u/eta^2
    let eta_inv = dec.eta.invert()?;
    let kappa = &u * &eta_inv;
    let phi = Substitution::with_target(params.h, params.s, 2, &kappa * &params.var(2))?;
    let big_w = &(mu * &u) * &(&eta_inv * &eta_inv);
    let mut w = phi.inverse().apply(&big_w)?;
    if params.s + 1 >= 2 * params.t {
        // (w - w(x1,0,...,0)) * x1^e lies in (x1*x_j, x1^t*x2) once e >= t
        w = w.restrict_axis();
    }
    let step = Step::new(
        "reduce_to_rw",
        vec![("eta", dec.eta.clone()), ("u", u), ("kappa", kappa), ("w", w.clone())],
    );
    Ok((Rewrite { phi, step }, dec.r, w))
}

/// `I_a ~ I_{r,w}` with `r` the order of `a(x1, 0, ..., 0)`.
///
/// Returns `phi` with `I_a = phi(I_{r,w})`.
pub fn reduce_to_rw(params: &CoupleParams, a: &Series) -> Result<(Substitution, u32, Series)> {
    check_series(params, a, "a")?;
    let (rw, r, w) = to_rw(params, a, &Series::one(params.h, params.s))?;
    Ok((rw.phi, r, w))
}

fn r_large(params: &CoupleParams, r: u32, w: &Series) -> Result<Rewrite> {
    guard(r + 1 >= params.t, format!("collapse_r_large needs r >= t - 1 (r = {})", r))?;
    let (phi, v) = rescale_second(params, &Series::one(params.h, params.s), w)?;
    Ok(Rewrite { phi, step: Step::new("collapse_r_large", vec![("v", v)]) })
}

/// `I_{r,w} ~ I_{t-1,1}` for `r >= t - 1`; `I_{r,w} = phi(I_{t-1,1})`.
pub fn collapse_r_large(params: &CoupleParams, r: u32, w: &Series) -> Result<(Substitution, ModelLabel)> {
    check_series(params, w, "w")?;
    let rw = r_large(params, r, w)?;
    Ok((rw.phi, ModelLabel::Sporadic { r: params.t - 1 }))
}

/// `y1 = e*x1, y2 = e^(r+1)*x2, y_j = tau*x_j` with `tau^2 = e^s`.
fn weighted_scaling(params: &CoupleParams, r: u32, e: &Series) -> Result<(Substitution, Option<Series>)> {
    let mut units = vec![e.clone(), e.pow(r + 1)];
    let tau = if params.h >= 3 {
        let tau = e.pow(params.s).rational_nth_root(2)?;
        units.extend(std::iter::repeat_n(tau.clone(), params.h - 2));
        Some(tau)
    } else {
        None
    };
    Ok((Substitution::diagonal(&units)?, tau))
}

fn regular(params: &CoupleParams, r: u32, w: &Series) -> Result<Rewrite> {
    guard(r + 2 <= params.t, format!("normalize_regular needs r <= t - 2 (r = {})", r))?;
    guard(
        params.r_star != Some(r),
        format!("normalize_regular needs 2(r+1) != s-t+1 (r = {})", r),
    )?;
    let n = 2 * (r as i64 + 1) - params.tail_exponent() as i64;
    // e^n * w = 1
    let base = if n > 0 { w.invert()? } else { w.clone() };
    let e = base.rational_nth_root(n.unsigned_abs() as u32)?;
    let (phi, tau) = weighted_scaling(params, r, &e)?;
    let mut units = vec![("e", e)];
    units.extend(tau.map(|t| ("tau", t)));
    Ok(Rewrite { phi, step: Step::new("normalize_regular", units) })
}

/// `I_{r,w} ~ I_{r,1}` when `2(r+1) != s-t+1`; `I_{r,w} = phi(I_{r,1})`.
pub fn normalize_regular(params: &CoupleParams, r: u32, w: &Series) -> Result<(Substitution, ModelLabel)> {
    check_series(params, w, "w")?;
    let rw = regular(params, r, w)?;
    Ok((rw.phi, ModelLabel::Sporadic { r }))
}

fn family_guards(params: &CoupleParams, r: u32, w: &Series) -> Result<()> {
    guard(params.r_star == Some(r), format!("needs a non-regular couple with r = r* (r = {})", r))?;
    guard(*w == w.restrict_axis(), "needs w in k[[x1]]")?;
    guard(!w.constant_term().is_zero(), "w must be a unit")
}

fn tail_order(params: &CoupleParams, w: &Series) -> u32 {
    (w - &params.constant(w.constant_term())).order()
}

fn to_d(params: &CoupleParams, r: u32, w: &Series) -> Result<(Rewrite, Series)> {
    family_guards(params, r, w)?;
    let w0 = w.constant_term();
    let d = tail_order(params, w);
    guard(d <= params.s, "normalize_d needs w != w(0)")?;
    let tail = (w - &params.constant(w0.clone())).div_monomial(&ExpVec::var_pow(params.h, 0, d))?;
    let alpha = tail.rational_nth_root(d)?;
    let (phi, beta) = weighted_scaling(params, r, &alpha)?;
    let new_w = &params.constant(w0) + &params.x1_pow(d);
    let mut units = vec![("alpha", alpha)];
    units.extend(beta.map(|b| ("beta", b)));
    units.push(("w", new_w.clone()));
    Ok((Rewrite { phi, step: Step::new("normalize_d", units) }, new_w))
}

/// `I_{r,w} ~ I_{r,w0 + x1^d}` with `d` the order of `w - w0`;
/// returns `phi` with `I_{r,w} = phi(I_{r,w0+x1^d})` and the new unit.
pub fn normalize_d(params: &CoupleParams, r: u32, w: &Series) -> Result<(Substitution, u32, Series)> {
    check_series(params, w, "w")?;
    let (rw, new_w) = to_d(params, r, w)?;
    Ok((rw.phi, r, new_w))
}

fn tail_collapse(params: &CoupleParams, r: u32, w: &Series) -> Result<Rewrite> {
    family_guards(params, r, w)?;
    let w0 = w.constant_term();
    guard(
        tail_order(params, w) + r + 1 >= params.t,
        "the tail of w must have order >= t - r - 1",
    )?;
    // alpha^2 = w0 / w with alpha(0) = 1; the leftover (1/alpha - 1)*x1^(r+1)*x2
    // lies in (x1^t*x2)
    let alpha = (&params.constant(w0) * &w.invert()?).nth_root(2, &Rat::one())?;
    let phi = Substitution::with_target(params.h, params.s, 2, &alpha * &params.var(2))?;
    Ok(Rewrite { phi, step: Step::new("collapse_d_large", vec![("alpha", alpha)]) })
}

/// `I_{r,c+x1^d} ~ I_{r,c}` for `d >= t - r - 1`; `I_{r,c+x1^d} = phi(I_{r,c})`.
pub fn collapse_d_large(params: &CoupleParams, r: u32, c: &Rat, d: u32) -> Result<(Substitution, ModelLabel)> {
    guard(d + r + 1 >= params.t, format!("collapse_d_large needs d >= t - r - 1 (d = {})", d))?;
    guard(!c.is_zero(), "c must be nonzero")?;
    let w = &params.constant(c.clone()) + &params.x1_pow(d);
    let rw = tail_collapse(params, r, &w)?;
    Ok((rw.phi, ModelLabel::Family { r, c: c.clone(), d: 0 }))
}

/// Runs the pipeline on `x2^2 - a*x1*x2 - mu*x1^e` and certifies against `source`.
fn classify_general(params: &CoupleParams, a: &Series, mu: &Series, source: IdealPres) -> Result<Certificate> {
    if params.s + 1 < 2 * params.t {
        return Err(Error::OutOfRange(format!(
            "classification needs s >= 2t - 1 (s = {}, t = {})",
            params.s, params.t
        )));
    }
    check_series(params, a, "a")?;
    check_series(params, mu, "mu")?;
    let t = params.t;
    let mut rewrites = Vec::new();
    let dec = decompose(a);
    let label = if dec.eta.is_zero() {
        rewrites.push(zero_case(params, a, mu)?);
        ModelLabel::Sporadic { r: t - 1 }
    } else {
        let (rw, r, w) = to_rw(params, a, mu)?;
        rewrites.push(rw);
        if r + 1 >= t {
            rewrites.push(r_large(params, r, &w)?);
            ModelLabel::Sporadic { r: t - 1 }
        } else if params.r_star != Some(r) {
            rewrites.push(regular(params, r, &w)?);
            ModelLabel::Sporadic { r }
        } else {
            let w0 = w.constant_term();
            let d = tail_order(params, &w);
            if d > params.s {
                ModelLabel::Family { r, c: w0, d: 0 }
            } else if d + r + 1 >= t {
                rewrites.push(tail_collapse(params, r, &w)?);
                ModelLabel::Family { r, c: w0, d: 0 }
            } else {
                let (rw, _) = to_d(params, r, &w)?;
                rewrites.push(rw);
                ModelLabel::Family { r, c: w0, d }
            }
        }
    };
    let mut phi = Substitution::identity(params.h, params.s);
    let mut steps = Vec::new();
    for rw in rewrites {
        phi = rw.phi.compose(&phi)?;
        steps.push(rw.step);
    }
    let cert = Certificate { source, label, phi, steps };
    if !verify_certificate(&cert)? {
        return Err(Error::Internal(format!("certificate for {} failed to verify", cert.label)));
    }
    Ok(cert)
}

/// Classifies `I_a` for `s >= 2t - 1`, returning a verified certificate.
pub fn classify(params: &CoupleParams, a: &Series) -> Result<Certificate> {
    check_series(params, a, "a")?;
    let one = Series::one(params.h, params.s);
    let source = generalized_ideal(params, a, &one)?;
    classify_general(params, a, &one, source)
}

/// Reads `(a, mu)` off a presentation in model shape: the generator with a
/// nonzero `x2^2` coefficient, normalized, must be `x2^2 - a*x1*x2 - mu*x1^e`
/// with `mu` a unit, and the whole presentation must span the same subspace
/// as the one rebuilt from `(a, mu)`.
pub fn recover_model_shape(ideal: &IdealPres) -> Result<(Series, Series)> {
    let params = &ideal.params;
    let (h, s) = (params.h, params.s);
    let sq = ExpVec::var_pow(h, 1, 2);
    let x1x2 = ExpVec::new((0..h).map(|i| u32::from(i < 2)).collect());
    let e = params.tail_exponent();
    let x1e = ExpVec::var_pow(h, 0, e);
    let shape_err = |msg: &str| Error::Shape(format!("presentation is not in model shape: {}", msg));
    let middle = ideal
        .gens
        .iter()
        .find(|g| !g.coeff(&sq).is_zero())
        .ok_or_else(|| shape_err("no generator involves x2^2"))?;
    let middle = middle.scale(&middle.coeff(&sq).recip());
    let rest = &Series::term(h, s, sq, Rat::one()) - &middle;
    let mut a = Series::zero(h, s);
    let mut mu = Series::zero(h, s);
    for (m, c) in rest.terms() {
        if x1x2.divides(m) {
            a = &a + &Series::term(h, s, x1x2.quotient_of(m), c.clone());
        } else if x1e.divides(m) {
            mu = &mu + &Series::term(h, s, x1e.quotient_of(m), c.clone());
        } else {
            return Err(shape_err(&format!("unexpected term {} in the middle generator", m)));
        }
    }
    if mu.constant_term().is_zero() {
        return Err(shape_err("the coefficient of x1^(s-t+1) is not a unit"));
    }
    let rebuilt = generalized_ideal(params, &a, &mu)?;
    if !equal_spans(&span_ideal(&rebuilt), &span_ideal(ideal))? {
        return Err(shape_err("the presentation differs from the model rebuilt from its middle generator"));
    }
    Ok((a, mu))
}

/// Classifies a presentation in model shape, e.g. `I_{p,z}`.
pub fn classify_ideal(ideal: &IdealPres) -> Result<Certificate> {
    if ideal.params.s + 1 < 2 * ideal.params.t {
        return Err(Error::OutOfRange(format!(
            "classification needs s >= 2t - 1 (s = {}, t = {})",
            ideal.params.s, ideal.params.t
        )));
    }
    let (a, mu) = recover_model_shape(ideal)?;
    classify_general(&ideal.params, &a, &mu, ideal.clone())
}

/// Checks `span(source) = span(phi(model(label)))` exactly.
pub fn verify_certificate(cert: &Certificate) -> Result<bool> {
    let params = &cert.source.params;
    if cert.phi.nvars() != params.h || cert.phi.precision() != params.s {
        return Err(Error::Ambient("certificate substitution lives in a different ambient".into()));
    }
    let model = cert.label.ideal(params)?;
    checked_span(&model)?;
    let images = model
        .gens
        .iter()
        .map(|g| cert.phi.apply(g))
        .collect::<Result<Vec<_>>>()?;
    let mapped = span_ideal(&IdealPres { params: *params, gens: images });
    equal_spans(&mapped, &span_ideal(&cert.source))
}
