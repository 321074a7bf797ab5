//! The canonical ideals and the lists of classification targets.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::quotient::{hilbert, span_ideal, CoupleParams, EchelonSubspace, IdealPres};
use crate::rat::{format_rat, Rat};
use crate::series::Series;

/// Validated couple parameters (see [`CoupleParams::new`]).
pub fn couple_params(h: usize, s: u32, t: u32) -> Result<CoupleParams> {
    CoupleParams::new(h, s, t)
}

/// A canonical isomorphism class: the sporadic `I_{r,1}` or the family
/// member `I_{r,c + x1^d}` (`d = 0` meaning the constant unit `c`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ModelLabel {
    Sporadic { r: u32 },
    Family { r: u32, c: Rat, d: u32 },
}

impl ModelLabel {
    pub fn r(&self) -> u32 {
        match self {
            ModelLabel::Sporadic { r } | ModelLabel::Family { r, .. } => *r,
        }
    }

    /// Checks the label against the couple.
    pub fn validate(&self, params: &CoupleParams) -> Result<()> {
        match self {
            ModelLabel::Sporadic { r } => {
                if *r + 1 > params.t {
                    return Err(Error::Params(format!("sporadic r = {} exceeds t - 1 = {}", r, params.t - 1)));
                }
            }
            ModelLabel::Family { r, c, d } => {
                if params.r_star != Some(*r) {
                    return Err(Error::Params(format!(
                        "family labels need a non-regular couple with r = r*; got r = {}",
                        r
                    )));
                }
                if c.is_zero() {
                    return Err(Error::Params("family parameter c must be nonzero".into()));
                }
                if *d + r + 2 > params.t {
                    return Err(Error::Params(format!("family exponent d = {} exceeds t - r - 2", d)));
                }
            }
        }
        Ok(())
    }

    /// The unit `z` of `I_{r,z}`: `1`, `c`, or `c + x1^d`.
    pub fn unit(&self, params: &CoupleParams) -> Series {
        match self {
            ModelLabel::Sporadic { .. } => Series::one(params.h, params.s),
            ModelLabel::Family { c, d: 0, .. } => params.constant(c.clone()),
            ModelLabel::Family { c, d, .. } => &params.constant(c.clone()) + &params.x1_pow(*d),
        }
    }

    /// `I_{r,z}` for this label.
    pub fn ideal(&self, params: &CoupleParams) -> Result<IdealPres> {
        self.validate(params)?;
        model_ideal(params, self.r(), &self.unit(params))
    }
}

impl fmt::Display for ModelLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelLabel::Sporadic { r } => write!(f, "sporadic:{}", r),
            ModelLabel::Family { r, c, d } => write!(f, "family:{}:{}:{}", r, format_rat(c), d),
        }
    }
}

impl FromStr for ModelLabel {
    type Err = Error;

    /// `sporadic:R` or `family:R:C:D`, e.g. `family:1:-3/2:0`.
    fn from_str(text: &str) -> Result<Self> {
        let parts: Vec<&str> = text.trim().split(':').map(str::trim).collect();
        let nat = |s: &str, what: &str| -> Result<u32> {
            s.parse().map_err(|_| Error::Params(format!("bad {} '{}' in label '{}'", what, s, text)))
        };
        match parts.as_slice() {
            [kind, r] if kind.eq_ignore_ascii_case("sporadic") => Ok(ModelLabel::Sporadic { r: nat(r, "r")? }),
            [kind, r, c, d] if kind.eq_ignore_ascii_case("family") => {
                let c: Rat = c
                    .parse()
                    .map_err(|_| Error::Params(format!("bad rational '{}' in label '{}'", c, text)))?;
                Ok(ModelLabel::Family { r: nat(r, "r")?, c, d: nat(d, "d")? })
            }
            _ => Err(Error::Params(format!(
                "label '{}' is neither 'sporadic:R' nor 'family:R:C:D'",
                text
            ))),
        }
    }
}

/// A class of the model list; families carry a symbolic parameter `c`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ModelDescriptor {
    Sporadic { r: u32 },
    Family { r: u32, d: u32 },
}

impl ModelDescriptor {
    /// The concrete label, with `c` substituted for the family parameter.
    pub fn instantiate(&self, c: Rat) -> ModelLabel {
        match *self {
            ModelDescriptor::Sporadic { r } => ModelLabel::Sporadic { r },
            ModelDescriptor::Family { r, d } => ModelLabel::Family { r, c, d },
        }
    }

    /// Middle generator with `c` kept symbolic, e.g. `x2^2 - x1^2*x2 - c*x1^4`.
    pub fn middle_generator(&self, params: &CoupleParams) -> String {
        let e = params.tail_exponent();
        match *self {
            ModelDescriptor::Sporadic { r } => {
                let a = model_ideal(params, r, &Series::one(params.h, params.s)).expect("valid model");
                crate::expr::format_expr(&a.gens[a.gens.len() - 2])
            }
            ModelDescriptor::Family { r, d } => {
                let lead = monomial_text(r + 1, 1);
                let mut s = format!("x2^2 - {} - c*{}", lead, monomial_text(e, 0));
                if d > 0 {
                    s.push_str(&format!(" - {}", monomial_text(e + d, 0)));
                }
                s
            }
        }
    }
}

fn monomial_text(e1: u32, e2: u32) -> String {
    let x1 = match e1 {
        0 => String::new(),
        1 => "x1".to_string(),
        e => format!("x1^{}", e),
    };
    match (x1.is_empty(), e2) {
        (true, 0) => "1".into(),
        (false, 0) => x1,
        (true, 1) => "x2".into(),
        (false, 1) => format!("{}*x2", x1),
        (true, e) => format!("x2^{}", e),
        (false, e) => format!("{}*x2^{}", x1, e),
    }
}

impl fmt::Display for ModelDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelDescriptor::Sporadic { r } => write!(f, "Sporadic({})", r),
            ModelDescriptor::Family { r, d } => write!(f, "Family({}, c, {})", r, d),
        }
    }
}

/// Generators common to every model: `x_i x_j` for `i < j`, `(i, j) != (1, 2)`,
/// and `x_j^2 - x1^s` for `j >= 3`.
fn frame_generators(params: &CoupleParams) -> Vec<Series> {
    let (h, s) = (params.h, params.s);
    let mut gens = Vec::new();
    for i in 1..=h {
        for j in i + 1..=h {
            if (i, j) != (1, 2) {
                gens.push(&params.var(i) * &params.var(j));
            }
        }
    }
    for j in 3..=h {
        gens.push(&params.var(j).pow(2) - &params.x1_pow(s));
    }
    gens
}

/// The ideal with middle generator `x2^2 - a*x1*x2 - mu*x1^(s-t+1)`.
///
/// With `mu = 1` this is `I_a`; with `a = x1^p` and `mu = z` it is `I_{p,z}`.
pub fn generalized_ideal(params: &CoupleParams, a: &Series, mu: &Series) -> Result<IdealPres> {
    a.check_ambient(&params.constant(Rat::zero()))?;
    mu.check_ambient(a)?;
    let x1 = params.var(1);
    let x2 = params.var(2);
    let mut gens = frame_generators(params);
    let middle = &(&x2.pow(2) - &(&(a * &x1) * &x2)) - &(mu * &params.x1_pow(params.tail_exponent()));
    gens.push(middle);
    gens.push(&params.x1_pow(params.t) * &x2);
    IdealPres::new(*params, gens)
}

/// `I_{p,z}`.
pub fn model_ideal(params: &CoupleParams, p: u32, z: &Series) -> Result<IdealPres> {
    if z.constant_term().is_zero() {
        return Err(Error::NotUnit("the model unit z must have a nonzero constant term".into()));
    }
    generalized_ideal(params, &params.x1_pow(p), z)
}

/// `I_a`.
pub fn ideal_from_a(params: &CoupleParams, a: &Series) -> Result<IdealPres> {
    generalized_ideal(params, a, &Series::one(params.h, params.s))
}

/// The model classes for `s >= 2t - 1`.
pub fn enumerate_models(params: &CoupleParams) -> Result<Vec<ModelDescriptor>> {
    if params.s + 1 < 2 * params.t {
        return Err(Error::OutOfRange(format!(
            "model list needs s >= 2t - 1 (s = {}, t = {})",
            params.s, params.t
        )));
    }
    let mut out: Vec<ModelDescriptor> = (0..params.t)
        .filter(|&r| params.r_star != Some(r))
        .map(|r| ModelDescriptor::Sporadic { r })
        .collect();
    if let Some(r) = params.r_star {
        out.extend((0..=params.t - r - 2).map(|d| ModelDescriptor::Family { r, d }));
    }
    Ok(out)
}

/// True iff the Hilbert function of `R / U` is exactly the type-`(s, t)` shape.
pub fn type_check(u: &EchelonSubspace, params: &CoupleParams) -> bool {
    u.nvars() == params.h && u.max_degree() == params.s && hilbert(u).values == params.shape()
}

/// Span of a model, checked to have the type-`(s, t)` Hilbert function.
pub fn checked_span(ideal: &IdealPres) -> Result<EchelonSubspace> {
    let u = span_ideal(ideal);
    if !type_check(&u, &ideal.params) {
        return Err(Error::NotType(format!(
            "Hilbert function {:?} differs from the type ({}, {}) shape {:?}",
            hilbert(&u).values,
            ideal.params.s,
            ideal.params.t,
            ideal.params.shape()
        )));
    }
    Ok(u)
}

/// The ideals listed for `s = t + 1`: `I_{t-1,1}`, then `I_n` for
/// `n = 3..=t`, then `(..., x2^2, x1^(t+1) - x1^t*x2)`. Constructed only;
/// no classification is attempted for this shape.
pub fn small_socle_models(params: &CoupleParams) -> Result<Vec<(String, IdealPres)>> {
    if params.s != params.t + 1 {
        return Err(Error::Params(format!("needs s = t + 1 (s = {}, t = {})", params.s, params.t)));
    }
    let t = params.t;
    let x2 = params.var(2);
    let tail = &params.x1_pow(t + 1) - &(&params.x1_pow(t) * &x2);
    let mut out = vec![(
        format!("I_{{{},1}}", t - 1),
        model_ideal(params, t - 1, &Series::one(params.h, params.s))?,
    )];
    for n in 3..=t {
        let mut gens = frame_generators(params);
        gens.push(&x2.pow(2) - &params.x1_pow(n));
        gens.push(tail.clone());
        out.push((format!("I_{}", n), IdealPres::new(*params, gens)?));
    }
    let mut gens = frame_generators(params);
    gens.push(x2.pow(2));
    gens.push(tail);
    out.push(("I_inf".to_string(), IdealPres::new(*params, gens)?));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_expr;
    use crate::quotient::{equal_spans, member, socle_filtration};
    use crate::rat::{int, rat};

    fn gens_text(i: &IdealPres) -> Vec<String> {
        i.gens.iter().map(|g| g.to_string()).collect()
    }

    #[test]
    fn worked_couples() {
        assert!(couple_params(3, 8, 4).unwrap().regular);
        let p = couple_params(2, 6, 3).unwrap();
        assert_eq!((p.regular, p.r_star), (false, Some(1)));
        let p = couple_params(2, 10, 5).unwrap();
        assert_eq!((p.regular, p.r_star), (false, Some(2)));
        assert!(couple_params(2, 5, 3).unwrap().regular);
        assert!(matches!(couple_params(2, 3, 3), Err(Error::Params(_))));
    }

    #[test]
    fn model_generators() {
        let p = couple_params(2, 6, 3).unwrap();
        let i = model_ideal(&p, 1, &Series::one(2, 6)).unwrap();
        assert_eq!(gens_text(&i), ["x2^2 - x1^2*x2 - x1^4", "x1^3*x2"]);
        let p = couple_params(3, 8, 4).unwrap();
        let i = model_ideal(&p, 2, &Series::one(3, 8)).unwrap();
        assert_eq!(
            gens_text(&i),
            ["x1*x3", "x2*x3", "x3^2 - x1^8", "x2^2 - x1^3*x2 - x1^5", "x1^4*x2"]
        );
        assert!(matches!(model_ideal(&p, 0, &Series::var(3, 8, 1)), Err(Error::NotUnit(_))));
    }

    #[test]
    fn absorbed_middle_term() {
        let p = couple_params(2, 5, 3).unwrap();
        let a = span_ideal(&model_ideal(&p, 2, &Series::one(2, 5)).unwrap());
        let gens = vec![parse_expr("x2^2 - x1^3", 2, 5).unwrap(), parse_expr("x1^3*x2", 2, 5).unwrap()];
        let b = span_ideal(&IdealPres::new(p, gens).unwrap());
        assert!(equal_spans(&a, &b).unwrap());
    }

    #[test]
    fn ideals_from_a() {
        let p = couple_params(2, 6, 3).unwrap();
        let i = ideal_from_a(&p, &Series::zero(2, 6)).unwrap();
        assert_eq!(gens_text(&i), ["x2^2 - x1^4", "x1^3*x2"]);
        let i = ideal_from_a(&p, &Series::var(2, 6, 1)).unwrap();
        assert_eq!(i, model_ideal(&p, 1, &Series::one(2, 6)).unwrap());
    }

    #[test]
    fn enumeration() {
        let show = |h, s, t| -> Vec<String> {
            enumerate_models(&couple_params(h, s, t).unwrap())
                .unwrap()
                .iter()
                .map(|d| d.to_string())
                .collect()
        };
        assert_eq!(show(3, 8, 4), ["Sporadic(0)", "Sporadic(1)", "Sporadic(2)", "Sporadic(3)"]);
        assert_eq!(show(2, 6, 3), ["Sporadic(0)", "Sporadic(2)", "Family(1, c, 0)"]);
        assert_eq!(
            show(2, 10, 5),
            ["Sporadic(0)", "Sporadic(1)", "Sporadic(3)", "Sporadic(4)", "Family(2, c, 0)", "Family(2, c, 1)"]
        );
        assert!(matches!(
            enumerate_models(&couple_params(2, 4, 3).unwrap()),
            Err(Error::OutOfRange(_))
        ));
    }

    #[test]
    fn every_model_has_the_type_and_a_simple_socle() {
        for (h, s, t) in [(2, 6, 3), (3, 8, 4), (2, 10, 5), (2, 5, 3), (3, 7, 4)] {
            let p = couple_params(h, s, t).unwrap();
            for desc in enumerate_models(&p).unwrap() {
                for c in [int(1), int(2), int(-3), rat(1, 2)] {
                    let label = desc.instantiate(c);
                    let u = checked_span(&label.ideal(&p).unwrap()).unwrap();
                    assert_eq!(socle_filtration(&u)[0], 1, "{} at {:?}", label, (h, s, t));
                    assert!(!member(&p.x1_pow(s), &u).unwrap());
                }
            }
        }
    }

    #[test]
    fn type_check_rejects_wrong_shapes() {
        let p = couple_params(2, 6, 3).unwrap();
        let gens = ["x1^2", "x1*x2", "x2^2"].iter().map(|g| parse_expr(g, 2, 6).unwrap()).collect();
        assert!(!type_check(&span_ideal(&IdealPres::new(p, gens).unwrap()), &p));
    }

    #[test]
    fn large_p_drops_the_middle_term() {
        let p = couple_params(2, 10, 5).unwrap();
        let base = span_ideal(&model_ideal(&p, 4, &Series::one(2, 10)).unwrap());
        for q in 4..9 {
            let u = span_ideal(&model_ideal(&p, q, &Series::one(2, 10)).unwrap());
            assert!(equal_spans(&base, &u).unwrap());
        }
        let dropped = span_ideal(&ideal_from_a(&p, &Series::zero(2, 10)).unwrap());
        assert!(equal_spans(&base, &dropped).unwrap());
    }

    #[test]
    fn labels_round_trip_through_text() {
        for l in [
            ModelLabel::Sporadic { r: 3 },
            ModelLabel::Family { r: 1, c: rat(-3, 2), d: 0 },
            ModelLabel::Family { r: 2, c: int(5), d: 1 },
        ] {
            assert_eq!(l.to_string().parse::<ModelLabel>().unwrap(), l);
        }
        assert!("family:1:x:0".parse::<ModelLabel>().is_err());
        assert!("weird".parse::<ModelLabel>().is_err());
        let p = couple_params(2, 6, 3).unwrap();
        assert!(ModelLabel::Sporadic { r: 3 }.validate(&p).is_err());
        assert!(ModelLabel::Family { r: 0, c: int(1), d: 0 }.validate(&p).is_err());
        assert!(ModelLabel::Family { r: 1, c: int(0), d: 0 }.validate(&p).is_err());
        assert!(ModelLabel::Family { r: 1, c: int(1), d: 1 }.validate(&p).is_err());
    }

    #[test]
    fn small_socle_constructors() {
        for (h, t) in [(2, 3), (2, 4), (3, 4), (2, 5)] {
            let p = couple_params(h, t + 1, t).unwrap();
            let models = small_socle_models(&p).unwrap();
            assert_eq!(models.len() as u32, t);
            for (name, ideal) in models {
                let u = span_ideal(&ideal);
                assert!(type_check(&u, &p), "{} at {:?}: {:?}", name, (h, t), hilbert(&u).values);
            }
        }
    }
}
