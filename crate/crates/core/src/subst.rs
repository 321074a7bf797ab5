//! Changes of variables `x_i -> phi_i` that fix the maximal ideal.

use std::collections::HashMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg;
use crate::monomial::ExpVec;
use crate::rat::Rat;
use crate::series::Series;

/// An `h`-tuple of series with zero constant terms and an invertible linear
/// part, acting on series by `f(x1, ..., xh) -> f(phi_1, ..., phi_h)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Substitution {
    targets: Vec<Series>,
    linear: Vec<Vec<Rat>>,
}

impl Substitution {
    pub fn new(targets: Vec<Series>) -> Result<Self> {
        let h = targets.len();
        let Some(first) = targets.first() else {
            return Err(Error::BadSubst("empty substitution".into()));
        };
        let prec = first.precision();
        for (i, t) in targets.iter().enumerate() {
            if t.nvars() != h || t.precision() != prec {
                return Err(Error::Ambient(format!(
                    "target {} lives in (h={}, N={}), expected (h={}, N={})",
                    i + 1,
                    t.nvars(),
                    t.precision(),
                    h,
                    prec
                )));
            }
            if !t.constant_term().is_zero() {
                return Err(Error::BadSubst(format!("target {} has a nonzero constant term", i + 1)));
            }
        }
        let linear: Vec<Vec<Rat>> = targets
            .iter()
            .map(|t| (0..h).map(|j| t.coeff(&ExpVec::var_pow(h, j, 1))).collect())
            .collect();
        if linalg::determinant(&linear).is_zero() {
            return Err(Error::BadSubst("linear part is singular".into()));
        }
        Ok(Substitution { targets, linear })
    }

    pub fn identity(h: usize, prec: u32) -> Self {
        Substitution::new((1..=h).map(|i| Series::var(h, prec, i)).collect())
            .expect("identity is a valid substitution")
    }

    pub fn nvars(&self) -> usize {
        self.targets.len()
    }

    pub fn precision(&self) -> u32 {
        self.targets[0].precision()
    }

    pub fn targets(&self) -> &[Series] {
        &self.targets
    }

    /// Row `i` holds the coefficients of `x1, ..., xh` in `phi_{i+1}`.
    pub fn linear_part(&self) -> &[Vec<Rat>] {
        &self.linear
    }

    pub fn is_identity(&self) -> bool {
        self.targets
            .iter()
            .enumerate()
            .all(|(i, t)| *t == Series::var(self.nvars(), self.precision(), i + 1))
    }

    fn check_ambient(&self, f: &Series) -> Result<()> {
        if f.nvars() != self.nvars() || f.precision() != self.precision() {
            return Err(Error::Ambient(format!(
                "series in (h={}, N={}) vs substitution in (h={}, N={})",
                f.nvars(),
                f.precision(),
                self.nvars(),
                self.precision()
            )));
        }
        Ok(())
    }

    /// `f(phi_1, ..., phi_h)`, truncated at the common precision.
    pub fn apply(&self, f: &Series) -> Result<Series> {
        self.check_ambient(f)?;
        let h = self.nvars();
        let prec = self.precision();
        let mut cache: HashMap<ExpVec, Series> = HashMap::new();
        cache.insert(ExpVec::one(h), Series::one(h, prec));
        let mut out = Series::zero(h, prec);
        for (m, c) in f.terms() {
            let p = self.monomial_image(m, &mut cache);
            out = &out + &p.scale(c);
        }
        Ok(out)
    }

    fn monomial_image(&self, m: &ExpVec, cache: &mut HashMap<ExpVec, Series>) -> Series {
        if let Some(s) = cache.get(m) {
            return s.clone();
        }
        let i = m
            .exps()
            .iter()
            .rposition(|&e| e > 0)
            .expect("constant monomial is cached");
        let mut lower = m.exps().to_vec();
        lower[i] -= 1;
        let prev = self.monomial_image(&ExpVec::new(lower), cache);
        let img = &prev * &self.targets[i];
        cache.insert(m.clone(), img.clone());
        img
    }

    /// `self ∘ other`: component `i` is `self_i(other_1, ..., other_h)`, so
    /// applying the result equals applying `self` and then `other`.
    pub fn compose(&self, other: &Substitution) -> Result<Substitution> {
        if self.nvars() != other.nvars() || self.precision() != other.precision() {
            return Err(Error::Ambient("substitutions over different ambients".into()));
        }
        let targets = self
            .targets
            .iter()
            .map(|t| other.apply(t))
            .collect::<Result<Vec<_>>>()?;
        Substitution::new(targets)
    }

    /// The substitution `psi` with `self.compose(psi)` and `psi.compose(self)`
    /// both the identity through degree `N`.
    pub fn inverse(&self) -> Substitution {
        let h = self.nvars();
        let prec = self.precision();
        let lin_inv = linalg::inverse(&self.linear).expect("linear part is invertible");
        let vars: Vec<Series> = (1..=h).map(|i| Series::var(h, prec, i)).collect();
        // phi = L x + H(x); solve psi = L^{-1} (x - H(psi)) by fixed point,
        // each round fixing one more degree
        let nonlinear: Vec<Series> = self.targets.iter().map(|t| t.tail_from(2)).collect();
        let mix = |v: &[Series]| -> Vec<Series> {
            (0..h)
                .map(|i| {
                    let mut acc = Series::zero(h, prec);
                    for (j, vj) in v.iter().enumerate() {
                        if !lin_inv[i][j].is_zero() {
                            acc = &acc + &vj.scale(&lin_inv[i][j]);
                        }
                    }
                    acc
                })
                .collect()
        };
        let mut psi = mix(&vars);
        for _ in 1..prec {
            let current = Substitution { targets: psi.clone(), linear: lin_inv.clone() };
            let rhs: Vec<Series> = vars
                .iter()
                .zip(&nonlinear)
                .map(|(x, hpart)| x - &current.apply(hpart).expect("same ambient"))
                .collect();
            psi = mix(&rhs);
        }
        Substitution::new(psi).expect("inverse of a valid substitution is valid")
    }

    /// Diagonal scaling helper: `x_i -> units[i] * x_i`.
    pub fn diagonal(units: &[Series]) -> Result<Substitution> {
        let h = units.len();
        let targets = units
            .iter()
            .enumerate()
            .map(|(i, u)| {
                if u.constant_term().is_zero() {
                    return Err(Error::NotUnit(format!("scaling factor {} is not a unit", i + 1)));
                }
                Ok(u.mul_monomial(&ExpVec::var_pow(h, i, 1)))
            })
            .collect::<Result<Vec<_>>>()?;
        Substitution::new(targets)
    }

    /// Replaces one target, keeping the others.
    pub fn with_target(h: usize, prec: u32, index: usize, target: Series) -> Result<Substitution> {
        let targets = (1..=h)
            .map(|i| if i == index { target.clone() } else { Series::var(h, prec, i) })
            .collect();
        Substitution::new(targets)
    }
}

/// `f(phi)`.
pub fn substitute(f: &Series, phi: &Substitution) -> Result<Series> {
    phi.apply(f)
}

pub fn compose(phi: &Substitution, psi: &Substitution) -> Result<Substitution> {
    phi.compose(psi)
}

impl Substitution {
    /// True when the linear part has nonzero determinant (always, by
    /// construction); exposed for certificate checks.
    pub fn is_invertible(&self) -> bool {
        !linalg::determinant(&self.linear).is_zero()
    }

    pub fn determinant(&self) -> Rat {
        linalg::determinant(&self.linear)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::int;

    fn x(i: usize) -> Series {
        Series::var(2, 3, i)
    }

    #[test]
    fn identity_and_swap() {
        let f = &(&x(1) * &x(2)) + &x(2).pow(3);
        assert_eq!(substitute(&f, &Substitution::identity(2, 3)).unwrap(), f);
        let swap = Substitution::new(vec![x(2), x(1)]).unwrap();
        let g = &x(1) * &x(2);
        assert_eq!(substitute(&g, &swap).unwrap(), g);
    }

    #[test]
    fn unit_rescaling_of_second_variable() {
        let v = &Series::one(2, 3) - &x(1);
        let phi = Substitution::with_target(2, 3, 2, &v * &x(2)).unwrap();
        let got = substitute(&x(2).pow(2), &phi).unwrap();
        let expect = &x(2).pow(2) - &(&x(1) * &x(2).pow(2)).scale(&int(2));
        assert_eq!(got, expect);
    }

    #[test]
    fn compose_scalings() {
        let s2 = Substitution::new(vec![Series::var(1, 4, 1).scale(&int(2))]).unwrap();
        let s3 = Substitution::new(vec![Series::var(1, 4, 1).scale(&int(3))]).unwrap();
        let s6 = Substitution::new(vec![Series::var(1, 4, 1).scale(&int(6))]).unwrap();
        assert_eq!(compose(&s2, &s3).unwrap(), s6);
        let id = Substitution::identity(1, 4);
        assert_eq!(compose(&s2, &id).unwrap(), s2);
        assert_eq!(compose(&id, &s2).unwrap(), s2);
    }

    #[test]
    fn invalid_substitutions() {
        let c = &x(1) + &Series::one(2, 3);
        assert!(matches!(Substitution::new(vec![c, x(2)]), Err(Error::BadSubst(_))));
        assert!(matches!(
            Substitution::new(vec![x(1), x(1).pow(2)]),
            Err(Error::BadSubst(_))
        ));
        let phi = Substitution::identity(2, 3);
        assert!(matches!(phi.apply(&Series::var(2, 4, 1)), Err(Error::Ambient(_))));
    }

    #[test]
    fn inverse_round_trip() {
        let h = 2;
        let n = 5;
        let y1 = &Series::var(h, n, 1).scale(&int(2)) + &(&Series::var(h, n, 2) * &Series::var(h, n, 1));
        let y2 = &Series::var(h, n, 2) + &Series::var(h, n, 1).pow(2);
        let phi = Substitution::new(vec![y1, y2]).unwrap();
        let psi = phi.inverse();
        assert!(phi.compose(&psi).unwrap().is_identity());
        assert!(psi.compose(&phi).unwrap().is_identity());
    }
}
