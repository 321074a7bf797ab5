//! Truncated multivariate power series over the rationals.
//!
//! A [`Series`] lives in `Q[[x1, ..., xh]] / n^(N+1)`: every stored monomial
//! has total degree at most the precision `N`, and ring operations are exact
//! on all retained degrees. Mixing series of different ambients is an error
//! in the checked methods and a panic in the operator impls.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::monomial::ExpVec;
use crate::rat::{rational_root, Rat};

#[derive(Clone, PartialEq, Eq)]
pub struct Series {
    h: usize,
    prec: u32,
    terms: BTreeMap<ExpVec, Rat>,
}

impl Series {
    pub fn zero(h: usize, prec: u32) -> Self {
        assert!(h >= 1, "a series needs at least one variable");
        Series { h, prec, terms: BTreeMap::new() }
    }

    pub fn constant(h: usize, prec: u32, c: Rat) -> Self {
        Self::term(h, prec, ExpVec::one(h), c)
    }

    pub fn one(h: usize, prec: u32) -> Self {
        Self::constant(h, prec, Rat::one())
    }

    /// The variable `x_i`, one-based.
    pub fn var(h: usize, prec: u32, i: usize) -> Self {
        assert!((1..=h).contains(&i), "variable index out of range");
        Self::term(h, prec, ExpVec::var_pow(h, i - 1, 1), Rat::one())
    }

    /// `c * m`, dropped if `m` lies beyond the precision.
    pub fn term(h: usize, prec: u32, m: ExpVec, c: Rat) -> Self {
        assert_eq!(m.nvars(), h);
        let mut s = Self::zero(h, prec);
        s.add_term(m, c);
        s
    }

    pub fn from_terms<I: IntoIterator<Item = (ExpVec, Rat)>>(h: usize, prec: u32, terms: I) -> Self {
        let mut s = Self::zero(h, prec);
        for (m, c) in terms {
            assert_eq!(m.nvars(), h);
            s.add_term(m, c);
        }
        s
    }

    /// A series in `x1` alone from its coefficient list `c0 + c1*x1 + ...`.
    pub fn univariate(h: usize, prec: u32, coeffs: &[Rat]) -> Self {
        Self::from_terms(
            h,
            prec,
            coeffs
                .iter()
                .enumerate()
                .map(|(e, c)| (ExpVec::var_pow(h, 0, e as u32), c.clone())),
        )
    }

    pub fn nvars(&self) -> usize {
        self.h
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&ExpVec, &Rat)> + '_ {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &ExpVec) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn constant_term(&self) -> Rat {
        self.coeff(&ExpVec::one(self.h))
    }

    pub(crate) fn add_term(&mut self, m: ExpVec, c: Rat) {
        if m.degree() > self.prec || c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn same_ambient(&self, other: &Series) -> bool {
        self.h == other.h && self.prec == other.prec
    }

    pub(crate) fn check_ambient(&self, other: &Series) -> Result<()> {
        if self.same_ambient(other) {
            Ok(())
        } else {
            Err(Error::Ambient(format!(
                "(h={}, N={}) vs (h={}, N={})",
                self.h, self.prec, other.h, other.prec
            )))
        }
    }

    pub fn add(&self, other: &Series) -> Result<Series> {
        self.check_ambient(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Series) -> Result<Series> {
        self.add(&other.neg_ref())
    }

    pub fn scale(&self, c: &Rat) -> Series {
        if c.is_zero() {
            return Series::zero(self.h, self.prec);
        }
        Series {
            h: self.h,
            prec: self.prec,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    fn neg_ref(&self) -> Series {
        Series {
            h: self.h,
            prec: self.prec,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), -a)).collect(),
        }
    }

    pub fn mul(&self, other: &Series) -> Result<Series> {
        self.check_ambient(other)?;
        let mut out = Series::zero(self.h, self.prec);
        for (ma, ca) in &self.terms {
            let room = self.prec - ma.degree();
            for (mb, cb) in &other.terms {
                // terms are sorted by degree, so the rest overflow as well
                if mb.degree() > room {
                    break;
                }
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    /// Multiply by the monomial `m`.
    pub fn mul_monomial(&self, m: &ExpVec) -> Series {
        let mut out = Series::zero(self.h, self.prec);
        for (a, c) in &self.terms {
            out.add_term(a.mul(m), c.clone());
        }
        out
    }

    pub fn pow(&self, k: u32) -> Series {
        let mut result = Series::one(self.h, self.prec);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Least total degree with a nonzero coefficient; `N + 1` for zero.
    pub fn order(&self) -> u32 {
        self.terms
            .keys()
            .next()
            .map(|m| m.degree())
            .unwrap_or(self.prec + 1)
    }

    /// The degree-`d` homogeneous component.
    pub fn homogeneous_part(&self, d: u32) -> Series {
        Series {
            h: self.h,
            prec: self.prec,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Keep only monomials of degree `>= d`.
    pub fn tail_from(&self, d: u32) -> Series {
        Series {
            h: self.h,
            prec: self.prec,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() >= d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// `f(x1, 0, ..., 0)`: drops every monomial involving `x2, ..., xh`.
    pub fn restrict_axis(&self) -> Series {
        Series {
            h: self.h,
            prec: self.prec,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.is_axis())
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Exact quotient by the monomial `m`; fails if some term is not divisible.
    pub fn div_monomial(&self, m: &ExpVec) -> Result<Series> {
        let mut out = Series::zero(self.h, self.prec);
        for (a, c) in &self.terms {
            if !m.divides(a) {
                return Err(Error::Guard(format!("{} does not divide {}", m, a)));
            }
            out.add_term(m.quotient_of(a), c.clone());
        }
        Ok(out)
    }

    /// Multiplicative inverse through degree `N`.
    pub fn invert(&self) -> Result<Series> {
        let c0 = self.constant_term();
        if c0.is_zero() {
            return Err(Error::NotUnit("series has zero constant term".into()));
        }
        let two = Series::constant(self.h, self.prec, Rat::from_integer(2.into()));
        let mut g = Series::constant(self.h, self.prec, c0.recip());
        // Newton doubles the number of correct degrees per round
        let mut correct = 1u32;
        while correct <= self.prec {
            let fg = self * &g;
            g = &g * &(&two - &fg);
            correct *= 2;
        }
        Ok(g)
    }

    /// A series `g` with `g^j = self` through degree `N` and `g(0) = alpha`.
    ///
    /// Each homogeneous component of `g` is found from the linear relation
    /// `j * alpha^(j-1) * g_d = (self - g_{<d}^j)_d`.
    pub fn nth_root(&self, j: u32, alpha: &Rat) -> Result<Series> {
        assert!(j >= 1, "root index must be positive");
        let a0 = self.constant_term();
        if a0.is_zero() {
            return Err(Error::NotUnit("cannot take a root of a non-unit".into()));
        }
        if num_traits::pow(alpha.clone(), j as usize) != a0 {
            return Err(Error::RootMismatch(format!(
                "{}^{} != {}",
                crate::rat::format_rat(alpha),
                j,
                crate::rat::format_rat(&a0)
            )));
        }
        let lead = Rat::from_integer(j.into()) * num_traits::pow(alpha.clone(), j as usize - 1);
        let lead_inv = lead.recip();
        let mut g = Series::constant(self.h, self.prec, alpha.clone());
        for d in 1..=self.prec {
            let residual = (self - &g.pow(j)).homogeneous_part(d);
            if !residual.is_zero() {
                g = &g + &residual.scale(&lead_inv);
            }
        }
        Ok(g)
    }

    /// [`Series::nth_root`] with the constant term taken as the rational
    /// `j`-th root of `self(0)` (the positive one when the sign is free).
    pub fn rational_nth_root(&self, j: u32) -> Result<Series> {
        let a0 = self.constant_term();
        if a0.is_zero() {
            return Err(Error::NotUnit("cannot take a root of a non-unit".into()));
        }
        let alpha = rational_root(&a0, j).ok_or_else(|| {
            Error::RootMismatch(format!(
                "{} has no rational {}-th root",
                crate::rat::format_rat(&a0),
                j
            ))
        })?;
        self.nth_root(j, &alpha)
    }

    /// The same coefficients viewed at a different precision (dropping
    /// anything beyond the new one).
    pub fn with_precision(&self, prec: u32) -> Series {
        Series::from_terms(
            self.h,
            prec,
            self.terms.iter().map(|(m, c)| (m.clone(), c.clone())),
        )
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::expr::format_expr(self))
    }
}

impl fmt::Debug for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Series(h={}, N={}; {})", self.h, self.prec, self)
    }
}

// Operator impls panic on ambient mismatch; the checked methods return errors.

impl Add for &Series {
    type Output = Series;
    fn add(self, rhs: &Series) -> Series {
        Series::add(self, rhs).expect("ambient mismatch in +")
    }
}

impl Sub for &Series {
    type Output = Series;
    fn sub(self, rhs: &Series) -> Series {
        Series::sub(self, rhs).expect("ambient mismatch in -")
    }
}

impl Mul for &Series {
    type Output = Series;
    fn mul(self, rhs: &Series) -> Series {
        Series::mul(self, rhs).expect("ambient mismatch in *")
    }
}

impl Neg for &Series {
    type Output = Series;
    fn neg(self) -> Series {
        self.neg_ref()
    }
}
