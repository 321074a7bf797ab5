//! Exact linear algebra kernels.
//!
//! Two flavours: small dense matrices over `Rat` (kernels, solves,
//! determinants), and an incremental sparse echelon builder that eliminates
//! over the integers without fractions and normalizes to the reduced row
//! echelon form only at the end.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rat::Rat;

pub type SparseRow = Vec<(usize, Rat)>;

/// In-place reduced row echelon form; returns the pivot columns.
pub fn rref(m: &mut [Vec<Rat>]) -> Vec<usize> {
    let nrows = m.len();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..nrows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..ncols {
                    let delta = &f * &m[r][j];
                    m[i][j] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &[Vec<Rat>]) -> usize {
    let mut m = m.to_vec();
    rref(&mut m).len()
}

pub fn determinant(m: &[Vec<Rat>]) -> Rat {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = Rat::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Rat::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= &a[c][c];
        let inv = a[c][c].recip();
        for i in c + 1..n {
            if !a[i][c].is_zero() {
                let f = &a[i][c] * &inv;
                for j in c..n {
                    let delta = &f * &a[c][j];
                    a[i][j] -= delta;
                }
            }
        }
    }
    det
}

/// Inverse of a square matrix, `None` when singular.
pub fn inverse(m: &[Vec<Rat>]) -> Option<Vec<Vec<Rat>>> {
    let n = m.len();
    let mut aug: Vec<Vec<Rat>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Basis of `{ v : m v = 0 }` for an `r x ncols` matrix.
pub fn kernel(m: &[Vec<Rat>], ncols: usize) -> Vec<Vec<Rat>> {
    let mut a = m.to_vec();
    let pivots = rref(&mut a);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rat::zero(); ncols];
            v[f] = Rat::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[row][f].clone();
            }
            v
        })
        .collect()
}

/// A solution of `m x = b` with every free coordinate set to zero.
pub fn solve(m: &[Vec<Rat>], b: &[Rat], ncols: usize) -> Option<Vec<Rat>> {
    let mut aug: Vec<Vec<Rat>> = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![Rat::zero(); ncols];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[row][ncols].clone();
    }
    Some(x)
}

type IntRow = Vec<(usize, BigInt)>;

fn primitive(row: &mut IntRow) {
    let mut g = BigInt::zero();
    for (_, c) in row.iter() {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    if row.first().is_some_and(|(_, c)| c.is_negative()) {
        g = -g;
    }
    if !g.is_one() && !g.is_zero() {
        for (_, c) in row.iter_mut() {
            *c /= &g;
        }
    }
}

fn clear_denominators(row: &SparseRow) -> IntRow {
    let lcm = row
        .iter()
        .fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
    let mut out: IntRow = row
        .iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(col, c)| (*col, c.numer() * (&lcm / c.denom())))
        .collect();
    primitive(&mut out);
    out
}

/// `a * x - b * y` on sorted sparse integer rows.
fn combine(a: &BigInt, x: &IntRow, b: &BigInt, y: &IntRow) -> IntRow {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take_x = j == y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i == x.len() || (j < y.len() && y[j].0 < x[i].0);
        if take_x {
            out.push((x[i].0, a * &x[i].1));
            i += 1;
        } else if take_y {
            out.push((y[j].0, -(b * &y[j].1)));
            j += 1;
        } else {
            let v = a * &x[i].1 - b * &y[j].1;
            if !v.is_zero() {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Incremental fraction-free echelon form of a row space.
///
/// Pivots are the first nonzero column of each row.
#[derive(Default)]
pub struct EchelonBuilder {
    pivots: BTreeMap<usize, IntRow>,
}

impl EchelonBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Adds a row; returns whether it enlarged the span.
    pub fn insert(&mut self, row: &SparseRow) -> bool {
        let mut row = clear_denominators(row);
        let mut steps = 0u32;
        while let Some((lead_col, lead)) = row.first().cloned() {
            let Some(p) = self.pivots.get(&lead_col) else {
                primitive(&mut row);
                self.pivots.insert(lead_col, row);
                return true;
            };
            let g = lead.gcd(&p[0].1);
            let a = &p[0].1 / &g;
            let b = &lead / &g;
            row = combine(&a, &row, &b, p);
            steps += 1;
            if steps.is_multiple_of(4) {
                primitive(&mut row);
            }
        }
        false
    }

    /// Reduced row echelon rows (leading coefficient 1), sorted by pivot.
    pub fn into_reduced(self) -> Vec<SparseRow> {
        let mut rows: BTreeMap<usize, BTreeMap<usize, Rat>> = self
            .pivots
            .into_iter()
            .map(|(pc, r)| {
                let lead = Rat::from_integer(r[0].1.clone());
                let inv = lead.recip();
                let m = r
                    .into_iter()
                    .map(|(c, v)| (c, Rat::from_integer(v) * &inv))
                    .collect();
                (pc, m)
            })
            .collect();
        let pivot_cols: Vec<usize> = rows.keys().copied().collect();
        for &pc in pivot_cols.iter().rev() {
            let pivot_row = rows[&pc].clone();
            for &other in pivot_cols.iter().filter(|&&o| o < pc) {
                let row = rows.get_mut(&other).expect("pivot row present");
                let Some(f) = row.get(&pc).cloned() else { continue };
                for (c, v) in &pivot_row {
                    let e = row.entry(*c).or_insert_with(Rat::zero);
                    *e -= &f * v;
                    if e.is_zero() {
                        row.remove(c);
                    }
                }
            }
        }
        rows.into_values().map(|r| r.into_iter().collect()).collect()
    }
}
