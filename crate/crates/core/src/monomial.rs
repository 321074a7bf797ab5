use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

/// Exponent vector of a monomial `x1^e1 * ... * xh^eh`.
///
/// Ordered canonically: total degree ascending, then lexicographically with
/// `x1 > x2 > ... > xh` (so `x1^2` precedes `x1*x2`, which precedes `x2^2`).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExpVec(Vec<u32>);

impl ExpVec {
    pub fn new(exps: Vec<u32>) -> Self {
        ExpVec(exps)
    }

    pub fn one(h: usize) -> Self {
        ExpVec(vec![0; h])
    }

    /// The monomial `x_{i+1}^e` (zero-based variable index `i`).
    pub fn var_pow(h: usize, i: usize, e: u32) -> Self {
        let mut v = vec![0; h];
        v[i] = e;
        ExpVec(v)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &ExpVec) -> ExpVec {
        ExpVec(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &ExpVec) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &ExpVec) -> ExpVec {
        ExpVec(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect())
    }

    /// True when only `x1` occurs.
    pub fn is_axis(&self) -> bool {
        self.0[1..].iter().all(|&e| e == 0)
    }
}

impl Ord for ExpVec {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for ExpVec {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ExpVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for ExpVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{}", i + 1)?;
            } else {
                write!(f, "x{}^{}", i + 1, e)?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// All monomials in `h` variables of degree `0..=max_degree`, in canonical order.
#[derive(Debug)]
pub struct MonomialIndex {
    h: usize,
    max_degree: u32,
    monomials: Vec<ExpVec>,
    positions: HashMap<ExpVec, usize>,
    degree_start: Vec<usize>,
}

impl PartialEq for MonomialIndex {
    fn eq(&self, other: &Self) -> bool {
        self.h == other.h && self.max_degree == other.max_degree
    }
}

impl Eq for MonomialIndex {}

fn push_of_degree(h: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<ExpVec>) {
    if prefix.len() + 1 == h {
        prefix.push(d);
        out.push(ExpVec(prefix.clone()));
        prefix.pop();
        return;
    }
    for e in (0..=d).rev() {
        prefix.push(e);
        push_of_degree(h, d - e, prefix, out);
        prefix.pop();
    }
}

impl MonomialIndex {
    fn build(h: usize, max_degree: u32) -> Self {
        let mut monomials = Vec::new();
        let mut degree_start = Vec::with_capacity(max_degree as usize + 2);
        for d in 0..=max_degree {
            degree_start.push(monomials.len());
            push_of_degree(h, d, &mut Vec::with_capacity(h), &mut monomials);
        }
        degree_start.push(monomials.len());
        let positions = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        MonomialIndex { h, max_degree, monomials, positions, degree_start }
    }

    /// Shared index for the ambient `(h, max_degree)`.
    pub fn shared(h: usize, max_degree: u32) -> Arc<MonomialIndex> {
        static CACHE: OnceLock<Mutex<HashMap<(usize, u32), Arc<MonomialIndex>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        let mut guard = cache.lock().expect("monomial index cache poisoned");
        guard
            .entry((h, max_degree))
            .or_insert_with(|| Arc::new(MonomialIndex::build(h, max_degree)))
            .clone()
    }

    pub fn nvars(&self) -> usize {
        self.h
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomial(&self, col: usize) -> &ExpVec {
        &self.monomials[col]
    }

    pub fn monomials(&self) -> &[ExpVec] {
        &self.monomials
    }

    pub fn position(&self, m: &ExpVec) -> Option<usize> {
        self.positions.get(m).copied()
    }

    /// Column range holding the monomials of degree `d`.
    pub fn degree_range(&self, d: u32) -> std::ops::Range<usize> {
        if d > self.max_degree {
            return self.len()..self.len();
        }
        self.degree_start[d as usize]..self.degree_start[d as usize + 1]
    }

    /// First column of degree `>= d`.
    pub fn degree_start(&self, d: u32) -> usize {
        if d > self.max_degree {
            self.len()
        } else {
            self.degree_start[d as usize]
        }
    }

    pub fn degree_of(&self, col: usize) -> u32 {
        self.monomials[col].degree()
    }
}
