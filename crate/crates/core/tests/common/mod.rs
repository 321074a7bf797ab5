//! Seeded random generators shared by the integration tests.
#![allow(dead_code)]

use artin::{ExpVec, Rat, Series, Substitution};
use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::Rng;

pub fn q(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn small_rat(rng: &mut StdRng) -> Rat {
    const CHOICES: [(i64, i64); 10] = [(1, 1), (-1, 1), (2, 1), (-2, 1), (3, 1), (-3, 1), (1, 2), (-1, 3), (5, 1), (2, 3)];
    let (n, d) = CHOICES[rng.gen_range(0..CHOICES.len())];
    q(n, d)
}

pub fn random_monomial(rng: &mut StdRng, h: usize, min_deg: u32, max_deg: u32) -> ExpVec {
    let deg = rng.gen_range(min_deg..=max_deg);
    let mut e = vec![0u32; h];
    for _ in 0..deg {
        e[rng.gen_range(0..h)] += 1;
    }
    ExpVec::new(e)
}

/// A sparse series with up to `terms` terms of degree in `min_deg..=max_deg`.
pub fn random_series(rng: &mut StdRng, h: usize, prec: u32, min_deg: u32, max_deg: u32, terms: usize) -> Series {
    let n = rng.gen_range(0..=terms);
    let mut f = Series::zero(h, prec);
    for _ in 0..n {
        let t = Series::term(h, prec, random_monomial(rng, h, min_deg, max_deg.min(prec)), small_rat(rng));
        f = f.add(&t).unwrap();
    }
    f
}

/// An invertible substitution: random integer linear part with nonzero
/// determinant plus random terms of degree 2 and 3.
pub fn random_substitution(rng: &mut StdRng, h: usize, prec: u32) -> Substitution {
    loop {
        let targets: Vec<Series> = (0..h)
            .map(|i| {
                let mut f = random_series(rng, h, prec, 2, 3, 3);
                for j in 0..h {
                    let c: i64 = if i == j { rng.gen_range(1..=3) } else { rng.gen_range(-2..=2) };
                    f = f.add(&Series::var(h, prec, j + 1).scale(&q(c, 1))).unwrap();
                }
                f
            })
            .collect();
        if let Ok(phi) = Substitution::new(targets) {
            return phi;
        }
    }
}
