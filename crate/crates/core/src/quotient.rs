//! Linear algebra in the truncated ring `R / n^(s+1)`.
//!
//! Every ideal in scope contains `n^(s+1)`, so an ideal is faithfully
//! represented by the subspace it spans inside the space of polynomials of
//! degree `<= s`. Subspaces are kept in reduced row echelon form with
//! columns in the canonical monomial order (degree ascending), which makes
//! the pivot of a row its lowest-degree monomial. Several invariants read
//! straight off that: the Hilbert function counts non-pivot monomials per
//! degree, and `U + n^k` keeps only the rows pivoting below degree `k`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, EchelonBuilder, SparseRow};
use crate::monomial::{ExpVec, MonomialIndex};
use crate::rat::Rat;
use crate::series::Series;

/// Embedding dimension `h` and type `(s, t)`, with the regularity data.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CoupleParams {
    pub h: usize,
    pub s: u32,
    pub t: u32,
    pub regular: bool,
    pub r_star: Option<u32>,
}

impl CoupleParams {
    pub fn new(h: usize, s: u32, t: u32) -> Result<Self> {
        if h < 2 {
            return Err(Error::Params(format!("h = {} must be at least 2", h)));
        }
        if t < 2 {
            return Err(Error::Params(format!("t = {} must be at least 2", t)));
        }
        if s < t + 1 {
            return Err(Error::Params(format!("s = {} must be at least t + 1 = {}", s, t + 1)));
        }
        let tail = s - t + 1;
        let r_star = (tail.is_multiple_of(2) && tail >= 2)
            .then(|| tail / 2 - 1)
            .filter(|&r| r + 2 <= t);
        Ok(CoupleParams { h, s, t, regular: r_star.is_none(), r_star })
    }

    /// Exponent `s - t + 1` of the pure power in the middle generator.
    pub fn tail_exponent(&self) -> u32 {
        self.s - self.t + 1
    }

    /// The Hilbert function `(1, h, 2, ..., 2, 1, ..., 1)` of type `(s, t)`.
    pub fn shape(&self) -> Vec<usize> {
        (0..=self.s)
            .map(|j| match j {
                0 => 1,
                1 => self.h,
                j if j <= self.t => 2,
                _ => 1,
            })
            .collect()
    }

    /// Length of an algebra of this type: `h + s + t - 1`.
    pub fn length(&self) -> usize {
        self.shape().iter().sum()
    }

    pub fn index(&self) -> Arc<MonomialIndex> {
        MonomialIndex::shared(self.h, self.s)
    }

    pub fn var(&self, i: usize) -> Series {
        Series::var(self.h, self.s, i)
    }

    pub fn x1_pow(&self, e: u32) -> Series {
        Series::term(self.h, self.s, ExpVec::var_pow(self.h, 0, e), Rat::from_integer(1.into()))
    }

    pub fn constant(&self, c: Rat) -> Series {
        Series::constant(self.h, self.s, c)
    }
}

/// A finite generating set of an ideal of `R`, viewed modulo `n^(s+1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealPres {
    pub params: CoupleParams,
    pub gens: Vec<Series>,
}

impl IdealPres {
    pub fn new(params: CoupleParams, gens: Vec<Series>) -> Result<Self> {
        for (i, g) in gens.iter().enumerate() {
            if g.nvars() != params.h || g.precision() != params.s {
                return Err(Error::Ambient(format!(
                    "generator {} lives in (h={}, N={}), expected (h={}, N={})",
                    i + 1,
                    g.nvars(),
                    g.precision(),
                    params.h,
                    params.s
                )));
            }
            if g.order() < 2 {
                return Err(Error::Params(format!("generator {} is not in n^2", i + 1)));
            }
        }
        Ok(IdealPres { params, gens })
    }
}

/// A subspace of the polynomials of degree `<= s`, in reduced echelon form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EchelonSubspace {
    index: Arc<MonomialIndex>,
    rows: Vec<SparseRow>,
    pivot_row: Vec<Option<usize>>,
}

fn series_to_row(index: &MonomialIndex, f: &Series) -> SparseRow {
    f.terms()
        .map(|(m, c)| (index.position(m).expect("monomial within precision"), c.clone()))
        .collect()
}

impl EchelonSubspace {
    pub fn zero(index: Arc<MonomialIndex>) -> Self {
        let n = index.len();
        EchelonSubspace { index, rows: Vec::new(), pivot_row: vec![None; n] }
    }

    fn from_reduced(index: Arc<MonomialIndex>, rows: Vec<SparseRow>) -> Self {
        let mut pivot_row = vec![None; index.len()];
        for (i, r) in rows.iter().enumerate() {
            pivot_row[r[0].0] = Some(i);
        }
        EchelonSubspace { index, rows, pivot_row }
    }

    /// Span of arbitrary series (all in the ambient of `index`).
    pub fn span_of(index: Arc<MonomialIndex>, vectors: &[Series]) -> Result<Self> {
        let mut builder = EchelonBuilder::new();
        for v in vectors {
            Self::check_series(&index, v)?;
            builder.insert(&series_to_row(&index, v));
        }
        Ok(Self::from_reduced(index, builder.into_reduced()))
    }

    fn check_series(index: &MonomialIndex, f: &Series) -> Result<()> {
        if f.nvars() != index.nvars() || f.precision() != index.max_degree() {
            return Err(Error::Ambient(format!(
                "series in (h={}, N={}) vs subspace in (h={}, s={})",
                f.nvars(),
                f.precision(),
                index.nvars(),
                index.max_degree()
            )));
        }
        Ok(())
    }

    pub fn index(&self) -> &Arc<MonomialIndex> {
        &self.index
    }

    pub fn nvars(&self) -> usize {
        self.index.nvars()
    }

    pub fn max_degree(&self) -> u32 {
        self.index.max_degree()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Dimension of the quotient by this subspace.
    pub fn codim(&self) -> usize {
        self.index.len() - self.rows.len()
    }

    pub fn rows(&self) -> &[SparseRow] {
        &self.rows
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_row[col].is_some()
    }

    /// Rows as series.
    pub fn basis(&self) -> Vec<Series> {
        self.rows.iter().map(|r| self.row_series(r)).collect()
    }

    fn row_series(&self, row: &SparseRow) -> Series {
        Series::from_terms(
            self.nvars(),
            self.max_degree(),
            row.iter().map(|(c, v)| (self.index.monomial(*c).clone(), v.clone())),
        )
    }

    /// Non-pivot columns: their monomials form a basis of the quotient.
    pub fn standard_columns(&self) -> Vec<usize> {
        (0..self.index.len()).filter(|&c| !self.is_pivot(c)).collect()
    }

    /// The unique representative of `f` modulo the subspace supported on
    /// non-pivot monomials.
    pub fn normal_form(&self, f: &Series) -> Result<Series> {
        Self::check_series(&self.index, f)?;
        let mut acc: BTreeMap<usize, Rat> = BTreeMap::new();
        for (m, c) in f.terms() {
            let col = self.index.position(m).expect("monomial within precision");
            match self.pivot_row[col] {
                None => add_entry(&mut acc, col, c.clone()),
                Some(r) => {
                    // reduced rows have no other pivot entries, so one pass suffices
                    for (rc, rv) in &self.rows[r][1..] {
                        add_entry(&mut acc, *rc, -(c * rv));
                    }
                }
            }
        }
        Ok(Series::from_terms(
            self.nvars(),
            self.max_degree(),
            acc.into_iter().map(|(c, v)| (self.index.monomial(c).clone(), v)),
        ))
    }

    pub fn contains(&self, f: &Series) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    /// `U + W_k`, where `W_k` is spanned by all monomials of degree `>= k`.
    pub fn plus_tail(&self, k: u32) -> EchelonSubspace {
        let cut = self.index.degree_start(k);
        let mut rows: Vec<SparseRow> = self
            .rows
            .iter()
            .filter(|r| r[0].0 < cut)
            .map(|r| r.iter().filter(|(c, _)| *c < cut).cloned().collect())
            .collect();
        rows.extend((cut..self.index.len()).map(|c| vec![(c, Rat::from_integer(1.into()))]));
        Self::from_reduced(self.index.clone(), rows)
    }

    /// Number of pivots among the degree-`d` monomials.
    pub fn pivots_in_degree(&self, d: u32) -> usize {
        self.index.degree_range(d).filter(|&c| self.is_pivot(c)).count()
    }

    /// Rows whose pivot has degree `d`.
    pub fn rows_pivoting_in_degree(&self, d: u32) -> Vec<Series> {
        let range = self.index.degree_range(d);
        self.rows
            .iter()
            .filter(|r| range.contains(&r[0].0))
            .map(|r| self.row_series(r))
            .collect()
    }

    /// Sum of two subspaces over the same ambient.
    pub fn sum(&self, other: &EchelonSubspace) -> Result<EchelonSubspace> {
        if !Arc::ptr_eq(&self.index, &other.index) && self.index.len() != other.index.len() {
            return Err(Error::Ambient("subspaces over different ambients".into()));
        }
        let mut builder = EchelonBuilder::new();
        for r in self.rows.iter().chain(&other.rows) {
            builder.insert(r);
        }
        Ok(Self::from_reduced(self.index.clone(), builder.into_reduced()))
    }
}

fn add_entry(acc: &mut BTreeMap<usize, Rat>, col: usize, v: Rat) {
    let e = acc.entry(col).or_insert_with(Rat::zero);
    *e += v;
    if e.is_zero() {
        acc.remove(&col);
    }
}

/// Values `H(0), ..., H(s)` of a Hilbert function.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertFn {
    pub values: Vec<usize>,
}

impl HilbertFn {
    pub fn length(&self) -> usize {
        self.values.iter().sum()
    }
}

/// The image of `I + n^(s+1)` in `R / n^(s+1)`: the span of every
/// `m * g` with `m` a monomial and `deg(m * g) <= s`.
pub fn span_ideal(ideal: &IdealPres) -> EchelonSubspace {
    let index = ideal.params.index();
    let s = ideal.params.s;
    let mut gens: Vec<&Series> = ideal.gens.iter().filter(|g| !g.is_zero()).collect();
    gens.sort_by_key(|g| (g.order(), g.num_terms()));
    let mut builder = EchelonBuilder::new();
    let full = index.len();
    for g in gens {
        let room = s - g.order().min(s);
        for col in 0..index.degree_start(room + 1) {
            if builder.rank() == full {
                break;
            }
            let prod = g.mul_monomial(index.monomial(col));
            if !prod.is_zero() {
                builder.insert(&series_to_row(&index, &prod));
            }
        }
    }
    EchelonSubspace::from_reduced(index, builder.into_reduced())
}

pub fn member(f: &Series, u: &EchelonSubspace) -> Result<bool> {
    u.contains(f)
}

pub fn equal_spans(u: &EchelonSubspace, v: &EchelonSubspace) -> Result<bool> {
    if u.nvars() != v.nvars() || u.max_degree() != v.max_degree() {
        return Err(Error::Ambient("subspaces over different ambients".into()));
    }
    Ok(u.rows == v.rows)
}

/// `H(j) = dim (U + W_j) - dim (U + W_{j+1})` for `j = 0..=s`.
pub fn hilbert(u: &EchelonSubspace) -> HilbertFn {
    let values = (0..=u.max_degree())
        .map(|d| u.index.degree_range(d).len() - u.pivots_in_degree(d))
        .collect();
    HilbertFn { values }
}

/// Multiplication by `x_var` on the quotient, in the standard monomial basis.
fn multiplication_matrix(u: &EchelonSubspace, std_cols: &[usize], var: usize) -> Vec<Vec<Rat>> {
    let n = std_cols.len();
    let col_pos: BTreeMap<usize, usize> = std_cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let h = u.nvars();
    let step = ExpVec::var_pow(h, var, 1);
    let mut m = vec![vec![Rat::zero(); n]; n];
    for (j, &c) in std_cols.iter().enumerate() {
        let prod = Series::term(h, u.max_degree(), u.index.monomial(c).mul(&step), Rat::from_integer(1.into()));
        let nf = u.normal_form(&prod).expect("same ambient");
        for (mono, v) in nf.terms() {
            let pos = col_pos[&u.index.position(mono).expect("in index")];
            m[pos][j] = v.clone();
        }
    }
    m
}

fn matmul(a: &[Vec<Rat>], b: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    (0..inner)
                        .filter(|&k| !row[k].is_zero() && !b[k][j].is_zero())
                        .map(|k| &row[k] * &b[k][j])
                        .sum()
                })
                .collect()
        })
        .collect()
}

/// Dimensions of `(0 : m^i)` in `A = R / U` for `i = 1..=s+1`.
pub fn socle_filtration(u: &EchelonSubspace) -> Vec<usize> {
    let std_cols = u.standard_columns();
    let n = std_cols.len();
    let mults: Vec<Vec<Vec<Rat>>> = (0..u.nvars())
        .map(|v| multiplication_matrix(u, &std_cols, v))
        .collect();
    let mut out = Vec::new();
    // functionals vanishing on the previous annihilator; (0 : m^0) = 0
    let mut dual: Vec<Vec<Rat>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Rat::from_integer(1.into()) } else { Rat::zero() }).collect())
        .collect();
    for _ in 0..=u.max_degree() {
        let mut stacked = Vec::new();
        for m in &mults {
            stacked.extend(matmul(&dual, m));
        }
        let ker = linalg::kernel(&stacked, n);
        out.push(ker.len());
        dual = if ker.is_empty() {
            (0..n)
                .map(|i| (0..n).map(|j| if i == j { Rat::from_integer(1.into()) } else { Rat::zero() }).collect())
                .collect()
        } else {
            linalg::kernel(&ker, n)
        };
    }
    out
}

/// Degree-2 initial forms of `U`: the image of `U` in `n^2 / n^3`.
pub fn quadric_initial_part(u: &EchelonSubspace) -> EchelonSubspace {
    let with_cube = u.plus_tail(3);
    let range = u.index.degree_range(2);
    let rows = with_cube
        .rows
        .iter()
        .filter(|r| range.contains(&r[0].0))
        .cloned()
        .collect();
    EchelonSubspace::from_reduced(u.index.clone(), rows)
}
