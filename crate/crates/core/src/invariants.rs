//! Computable isomorphism invariants of `A = R / I`.
//!
//! * the square-zero locus: linear forms `l` (for `h = 2`) with `l^2` in
//!   `I + n^3`;
//! * sigma: the largest order in `A` of `y^2` for `y` of order one inside the
//!   intrinsic ideal `Y = (m^s : m^t)`, found by a greedy degree-by-degree
//!   search with a re-verified witness;
//! * membership checks for the structural facts the separation arguments
//!   rely on (basis of the powers of `m`, the degree-`t+1` and degree-`r+2`
//!   monomial collapses, and the membership dichotomy for non-regular
//!   couples).
//!
//! The order of an element `f` in `A` is the largest `k` with
//! `f in I + n^k`; with reduced echelon rows in degree-ascending column
//! order it equals the order of the normal form of `f`.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg;
use crate::models::type_check;
use crate::monomial::ExpVec;
use crate::quotient::{quadric_initial_part, CoupleParams, EchelonSubspace};
use crate::rat::Rat;
use crate::series::Series;

/// True iff `l^2` lies in `U + n^3`.
pub fn square_in_cube(l: &Series, u: &EchelonSubspace) -> Result<bool> {
    if l.nvars() != u.nvars() || l.precision() != u.max_degree() {
        return Err(Error::Ambient("linear form and subspace live in different ambients".into()));
    }
    u.plus_tail(3).contains(&l.pow(2))
}

/// Order of `f` in `A = R / U`: the largest `k` with `f in U + n^k`
/// (`s + 1` when `f` vanishes in `A`).
pub fn order_in_quotient(f: &Series, u: &EchelonSubspace) -> Result<u32> {
    Ok(u.normal_form(f)?.order())
}

/// Rational points of `{(a1 : a2) : (a1*x1 + a2*x2)^2 in I + n^3}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocusReport {
    /// Distinct projective points, normalized to `(t : 1)` or `(1 : 0)`.
    pub points: Vec<(Rat, Rat)>,
    /// Degree of the irreducible factor without rational roots (0 if none).
    pub residual_degree: usize,
    /// Every linear form qualifies (all defining equations vanish).
    pub whole_line: bool,
}

fn require_plane(u: &EchelonSubspace) -> Result<()> {
    if u.nvars() != 2 {
        return Err(Error::Params(format!("needs h = 2, got h = {}", u.nvars())));
    }
    Ok(())
}

/// Univariate polynomials over `Rat`, lowest coefficient first.
type Poly = Vec<Rat>;

fn trim(mut p: Poly) -> Poly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn poly_rem(a: &Poly, b: &Poly) -> Poly {
    let mut r = a.clone();
    let lead_inv = b.last().expect("nonzero divisor").recip();
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let f = r.last().expect("non-empty") * &lead_inv;
        for (i, c) in b.iter().enumerate() {
            r[shift + i] -= &f * c;
        }
        r = trim(r);
        if r.is_empty() {
            break;
        }
    }
    r
}

fn poly_gcd(a: Poly, b: Poly) -> Poly {
    let (mut a, mut b) = (trim(a), trim(b));
    while !b.is_empty() {
        let r = poly_rem(&a, &b);
        a = b;
        b = r;
    }
    a
}

fn is_square(q: &Rat) -> Option<Rat> {
    crate::rat::rational_root(q, 2)
}

/// Rational roots of a polynomial of degree at most 2, and the degree of
/// what is left without rational roots.
fn rational_roots(p: &Poly) -> (Vec<Rat>, usize) {
    match p.len() {
        0 | 1 => (vec![], 0),
        2 => (vec![-&p[0] / &p[1]], 0),
        3 => {
            let (c, b, a) = (&p[0], &p[1], &p[2]);
            let disc = b * b - Rat::from_integer(4.into()) * a * c;
            match is_square(&disc) {
                Some(root) => {
                    let two_a = a * Rat::from_integer(2.into());
                    let mut roots = vec![(-b + &root) / &two_a, (-b - &root) / &two_a];
                    roots.sort();
                    roots.dedup();
                    (roots, 0)
                }
                None => (vec![], 2),
            }
        }
        _ => unreachable!("binary quadratic forms have degree <= 2"),
    }
}

/// The locus of linear forms whose square lies in `I + n^3` (`h = 2`).
pub fn square_zero_locus(u: &EchelonSubspace) -> Result<LocusReport> {
    require_plane(u)?;
    let s = u.max_degree();
    if s < 2 {
        return Err(Error::Params("needs s >= 2".into()));
    }
    let quad = quadric_initial_part(u);
    let mono = |e1, e2| Series::term(2, s, ExpVec::new(vec![e1, e2]), Rat::one());
    // nf((a1 x1 + a2 x2)^2) = a1^2 N(x1^2) + a1 a2 N(2 x1 x2) + a2^2 N(x2^2)
    let images = [
        quad.normal_form(&mono(2, 0))?,
        quad.normal_form(&mono(1, 1).scale(&Rat::from_integer(2.into())))?,
        quad.normal_form(&mono(0, 2))?,
    ];
    let index = u.index().clone();
    let mut forms: Vec<[Rat; 3]> = Vec::new();
    for col in index.degree_range(2) {
        if quad.is_pivot(col) {
            continue;
        }
        let m = index.monomial(col);
        let form = [images[0].coeff(m), images[1].coeff(m), images[2].coeff(m)];
        if form.iter().any(|c| !c.is_zero()) {
            forms.push(form);
        }
    }
    if forms.is_empty() {
        return Ok(LocusReport { points: vec![], residual_degree: 0, whole_line: true });
    }
    let mut points = Vec::new();
    // (1 : 0) is a point iff every form has a zero a1^2 coefficient
    if forms.iter().all(|f| f[0].is_zero()) {
        points.push((Rat::one(), Rat::zero()));
    }
    // affine chart a2 = 1, T = a1: A T^2 + B T + C
    let g = forms
        .iter()
        .map(|f| vec![f[2].clone(), f[1].clone(), f[0].clone()])
        .fold(Vec::new(), poly_gcd);
    let (roots, residual_degree) = rational_roots(&g);
    points.extend(roots.into_iter().map(|r| (r, Rat::one())));
    let report = LocusReport { points, residual_degree, whole_line: false };
    for (a1, a2) in &report.points {
        let l = &Series::var(2, s, 1).scale(a1) + &Series::var(2, s, 2).scale(a2);
        if !square_in_cube(&l, u)? {
            return Err(Error::Internal("locus point fails the membership re-check".into()));
        }
    }
    Ok(report)
}

/// The value of sigma with a witness and the search log.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaReport {
    pub sigma: u32,
    pub witness: Series,
    pub trace: Vec<String>,
}

/// Elements of `A` as coordinate vectors over the standard monomials.
struct QuotientCoords {
    std_cols: Vec<usize>,
    h: usize,
    s: u32,
}

impl QuotientCoords {
    fn new(u: &EchelonSubspace) -> Self {
        QuotientCoords { std_cols: u.standard_columns(), h: u.nvars(), s: u.max_degree() }
    }

    fn to_series(&self, u: &EchelonSubspace, v: &[Rat]) -> Series {
        Series::from_terms(
            self.h,
            self.s,
            self.std_cols
                .iter()
                .zip(v)
                .filter(|(_, c)| !c.is_zero())
                .map(|(&col, c)| (u.index().monomial(col).clone(), c.clone())),
        )
    }
}

/// Basis (as series in normal form) of `Y = (m^s : m^t) = { v in A : v * m^t in m^s }`.
pub fn colon_socle_ideal(u: &EchelonSubspace, params: &CoupleParams) -> Result<Vec<Series>> {
    let q = QuotientCoords::new(u);
    let n = q.std_cols.len();
    let top = u.plus_tail(params.s);
    let index = u.index();
    let deg_t: Vec<&ExpVec> = index.degree_range(params.t).map(|c| index.monomial(c)).collect();
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    let top_std = top.standard_columns();
    let mut columns: Vec<Vec<Rat>> = Vec::with_capacity(n);
    for &col in &q.std_cols {
        let b = index.monomial(col);
        let mut column = Vec::new();
        for m in &deg_t {
            let prod = Series::term(q.h, q.s, b.mul(m), Rat::one());
            let nf = top.normal_form(&prod)?;
            column.extend(top_std.iter().map(|&c| nf.coeff(index.monomial(c))));
        }
        columns.push(column);
    }
    let nrows = columns.first().map_or(0, |c| c.len());
    for i in 0..nrows {
        rows.push(columns.iter().map(|c| c[i].clone()).collect());
    }
    let kernel = linalg::kernel(&rows, n);
    Ok(kernel.iter().map(|v| q.to_series(u, v)).collect())
}

/// Coefficients of the degree-`d` standard monomials of a normal form.
fn degree_coords(u: &EchelonSubspace, nf: &Series, d: u32) -> Vec<Rat> {
    let index = u.index();
    index
        .degree_range(d)
        .filter(|&c| !u.is_pivot(c))
        .map(|c| nf.coeff(index.monomial(c)))
        .collect()
}

fn degree_one_coords(f: &Series) -> Vec<Rat> {
    (0..f.nvars()).map(|i| f.coeff(&ExpVec::var_pow(f.nvars(), i, 1))).collect()
}

/// An element of `span(basis)` with prescribed degree-one part, if any.
fn with_linear_part(basis: &[Series], linear: &[Rat]) -> Option<Series> {
    let h = linear.len();
    let cols: Vec<Vec<Rat>> = basis.iter().map(degree_one_coords).collect();
    let m: Vec<Vec<Rat>> = (0..h).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect();
    let x = linalg::solve(&m, linear, basis.len())?;
    let first = basis.first()?;
    let mut out = Series::zero(first.nvars(), first.precision());
    for (b, c) in basis.iter().zip(&x) {
        if !c.is_zero() {
            out = &out + &b.scale(c);
        }
    }
    Some(out)
}

/// Greedy lift of `y`: at each stage cancel the lowest-degree part of
/// `y^2` in `A` by adding `delta in Y` of order `>= k - 1`.
fn lift(u: &EchelonSubspace, y_basis: &[Series], mut y: Series, trace: &mut Vec<String>) -> Result<(u32, Series)> {
    let s = u.max_degree();
    loop {
        let sq = u.normal_form(&y.pow(2))?;
        let k = sq.order();
        if k > s {
            trace.push(format!("y = {}: y^2 vanishes in A", y));
            return Ok((k, y));
        }
        // corrections: elements of Y of order >= k - 1 in A
        let deep: Vec<Series> = {
            let mut rows: Vec<Vec<Rat>> = Vec::new();
            // Y ∩ m^(k-1): kernel of the map c -> low-degree part of sum c_i y_i
            let q = QuotientCoords::new(u);
            let low_cols: Vec<usize> = q
                .std_cols
                .iter()
                .copied()
                .filter(|&c| u.index().degree_of(c) < k - 1)
                .collect();
            for &col in &low_cols {
                let m = u.index().monomial(col);
                rows.push(y_basis.iter().map(|b| b.coeff(m)).collect());
            }
            let ker = linalg::kernel(&rows, y_basis.len());
            ker.iter()
                .map(|c| {
                    let mut acc = Series::zero(u.nvars(), s);
                    for (b, ci) in y_basis.iter().zip(c) {
                        if !ci.is_zero() {
                            acc = &acc + &b.scale(ci);
                        }
                    }
                    acc
                })
                .filter(|d| !d.is_zero())
                .collect()
        };
        let target: Vec<Rat> = degree_coords(u, &sq, k).iter().map(|c| -c).collect();
        let images: Vec<Vec<Rat>> = deep
            .iter()
            .map(|d| Ok(degree_coords(u, &u.normal_form(&(&y * d).scale(&Rat::from_integer(2.into())))?, k)))
            .collect::<Result<_>>()?;
        let m: Vec<Vec<Rat>> = (0..target.len())
            .map(|i| images.iter().map(|col| col[i].clone()).collect())
            .collect();
        match linalg::solve(&m, &target, deep.len()) {
            Some(x) if !deep.is_empty() => {
                let mut delta = Series::zero(u.nvars(), s);
                for (d, c) in deep.iter().zip(&x) {
                    if !c.is_zero() {
                        delta = &delta + &d.scale(c);
                    }
                }
                trace.push(format!("degree {}: cancelled with delta = {}", k, delta));
                y = u.normal_form(&(&y + &delta))?;
            }
            _ => {
                trace.push(format!("degree {}: y^2 has order {}, no correction in Y", k, k));
                return Ok((k, y));
            }
        }
    }
}

/// sigma for `h = 2`: the largest order in `A` of `y^2` over `y` of order one
/// in `Y = (m^s : m^t)`.
pub fn sigma_invariant(u: &EchelonSubspace, params: &CoupleParams) -> Result<SigmaReport> {
    require_plane(u)?;
    if !type_check(u, params) {
        return Err(Error::NotType("sigma needs an algebra of the given type".into()));
    }
    let y_basis = colon_socle_ideal(u, params)?;
    let mut trace = vec![format!("dim Y = {}", y_basis.len())];
    let locus = square_zero_locus(u)?;
    let mut seeds: Vec<Series> = Vec::new();
    for (a1, a2) in &locus.points {
        if let Some(y) = with_linear_part(&y_basis, &[a1.clone(), a2.clone()]) {
            trace.push(format!("seed ({} : {}) -> {}", a1, a2, y));
            seeds.push(y);
        } else {
            trace.push(format!("locus point ({} : {}) is not the linear part of an element of Y", a1, a2));
        }
    }
    let mut best: Option<(u32, Series)> = None;
    for seed in seeds {
        let (k, y) = lift(u, &y_basis, seed, &mut trace)?;
        if best.as_ref().is_none_or(|(bk, _)| k > *bk) {
            best = Some((k, y));
        }
    }
    let (sigma, witness) = match best {
        Some(b) => b,
        None => {
            let y = y_basis
                .iter()
                .find(|b| b.order() == 1)
                .cloned()
                .ok_or_else(|| Error::NotType("Y has no element of order one".into()))?;
            let k = order_in_quotient(&y.pow(2), u)?;
            trace.push(format!("no seed in the locus; witness {} with y^2 of order {}", y, k));
            (k, y)
        }
    };
    // re-verify the witness from scratch
    if order_in_quotient(&witness, u)? != 1 || order_in_quotient(&witness.pow(2), u)? != sigma {
        return Err(Error::Internal("sigma witness failed re-verification".into()));
    }
    Ok(SigmaReport { sigma, witness, trace })
}

/// Images of `x1^j`, `x1^(j-1)*x2` are independent in `m^j / m^(j+1)` for
/// `2 <= j <= t`, and `x1^j` spans it for `t < j <= s`.
pub fn check_basis_property(u: &EchelonSubspace, params: &CoupleParams) -> Result<bool> {
    let (h, s) = (params.h, params.s);
    let mono = |e1: u32, e2: u32| {
        let mut e = vec![0; h];
        e[0] = e1;
        e[1] = e2;
        Series::term(h, s, ExpVec::new(e), Rat::one())
    };
    for j in 2..=s {
        let next = u.plus_tail(j + 1);
        let mut gens = vec![mono(j, 0)];
        if j <= params.t {
            gens.push(mono(j - 1, 1));
        }
        // independence: no nontrivial combination lies in U + n^(j+1)
        let nfs: Vec<Series> = gens.iter().map(|g| next.normal_form(g)).collect::<Result<_>>()?;
        let coords: Vec<Vec<Rat>> = nfs.iter().map(|f| degree_coords(&next, f, j)).collect();
        let m: Vec<Vec<Rat>> = (0..coords[0].len())
            .map(|i| coords.iter().map(|c| c[i].clone()).collect())
            .collect();
        if linalg::rank(&m) != gens.len() {
            return Ok(false);
        }
        // spanning: every degree-j monomial reduces into their span
        let dim = next.index().degree_range(j).filter(|&c| !next.is_pivot(c)).count();
        if dim != gens.len() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Every monomial of degree `t + 1` other than `x1^(t+1)` lies in `U + n^s`.
pub fn check_degree_t_plus_one(u: &EchelonSubspace, params: &CoupleParams) -> Result<bool> {
    monomials_collapse(u, params, params.t + 1, params.s, &[vec![params.t + 1]])
}

/// For non-regular couples: every monomial of degree `r + 2` other than
/// `x1^(r+2)` and `x1^(r+1)*x2` lies in `U + n^(3r+2)`.
pub fn check_degree_r_plus_two(u: &EchelonSubspace, params: &CoupleParams) -> Result<bool> {
    let r = params
        .r_star
        .ok_or_else(|| Error::Params("needs a non-regular couple".into()))?;
    monomials_collapse(u, params, r + 2, 3 * r + 2, &[vec![r + 2], vec![r + 1, 1]])
}

fn monomials_collapse(
    u: &EchelonSubspace,
    params: &CoupleParams,
    degree: u32,
    into: u32,
    except: &[Vec<u32>],
) -> Result<bool> {
    let h = params.h;
    let target = u.plus_tail(into);
    let index = u.index();
    for col in index.degree_range(degree) {
        let m = index.monomial(col);
        let skip = except.iter().any(|e| {
            let mut full = e.clone();
            full.resize(h, 0);
            *m.exps() == full[..]
        });
        if skip {
            continue;
        }
        if !target.contains(&Series::term(h, params.s, m.clone(), Rat::one()))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `a*x1^(r+1)*x2 + b*x1^(s-t+1)` in `U + n^(3r+2)`, for a non-regular couple.
pub fn dichotomy_member(u: &EchelonSubspace, params: &CoupleParams, a: &Series, b: &Series) -> Result<bool> {
    let r = params
        .r_star
        .ok_or_else(|| Error::Params("needs a non-regular couple".into()))?;
    let f = &(&(a * &params.x1_pow(r + 1)) * &params.var(2)) + &(b * &params.x1_pow(params.tail_exponent()));
    u.plus_tail(3 * r + 2).contains(&f)
}

/// The predicted side of the dichotomy: `a in (x1^(t-r-1)) + (x2, ..., xh)`
/// and `b in (x1^r) + (x2, ..., xh)`.
pub fn dichotomy_predicted(params: &CoupleParams, a: &Series, b: &Series) -> Result<bool> {
    let r = params
        .r_star
        .ok_or_else(|| Error::Params("needs a non-regular couple".into()))?;
    Ok(a.restrict_axis().order() + r + 1 >= params.t && b.restrict_axis().order() >= r)
}
