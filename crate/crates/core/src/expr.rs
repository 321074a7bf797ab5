//! Text syntax for polynomials.
//!
//! Grammar (whitespace ignored, multiplication always explicit):
//!
//! ```text
//! expr     := ('+' | '-')? term (('+' | '-') term)*
//! term     := factor ('*' factor)*
//! factor   := base ('^' nat)?
//! base     := 'x' nat | rational | '(' expr ')'
//! rational := nat ('/' nat)?
//! ```
//!
//! Expressions evaluate directly into a [`Series`] at a given precision.
//! Generator lists use `;` as separator and substitution lists use `,`;
//! either may be wrapped in one pair of parentheses.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::monomial::ExpVec;
use crate::rat::{format_rat, Rat};
use crate::series::Series;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Var(usize),
    Num(BigInt),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let digits_end = |mut j: usize| {
        while j < bytes.len() && bytes[j].is_ascii_digit() {
            j += 1;
        }
        j
    };
    while i < bytes.len() {
        let c = bytes[i];
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => Token::Plus,
            b'-' => Token::Minus,
            b'*' => Token::Star,
            b'/' => Token::Slash,
            b'^' => Token::Caret,
            b'(' => Token::LParen,
            b')' => Token::RParen,
            b'x' => {
                let end = digits_end(i + 1);
                if end == i + 1 {
                    return Err(Error::parse(i, "expected a variable index after 'x'"));
                }
                let idx: usize = text[i + 1..end]
                    .parse()
                    .map_err(|_| Error::parse(i, "variable index too large"))?;
                out.push((i, Token::Var(idx)));
                i = end;
                continue;
            }
            b'0'..=b'9' => {
                let end = digits_end(i);
                let n: BigInt = text[i..end].parse().expect("digits parse as an integer");
                out.push((i, Token::Num(n)));
                i = end;
                continue;
            }
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(Error::parse(i, format!("unexpected character '{}'", ch)));
            }
        };
        out.push((i, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: &'a [(usize, Token)],
    pos: usize,
    end: usize,
    h: usize,
    prec: u32,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<Series> {
        let mut negate = false;
        match self.peek() {
            Some(Token::Plus) => {
                self.bump();
            }
            Some(Token::Minus) => {
                self.bump();
                negate = true;
            }
            _ => {}
        }
        let first = self.term()?;
        let mut acc = if negate { -&first } else { first };
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Some(Token::Minus) => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Series> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Token::Star) {
            self.bump();
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Series> {
        let base = self.base()?;
        if self.peek() != Some(&Token::Caret) {
            return Ok(base);
        }
        self.bump();
        let at = self.offset();
        match self.bump() {
            Some(Token::Num(n)) => {
                let e: u32 = n
                    .try_into()
                    .map_err(|_| Error::parse(at, "exponent too large"))?;
                Ok(pow_truncated(&base, e))
            }
            _ => Err(Error::parse(at, "expected a non-negative integer exponent")),
        }
    }

    fn base(&mut self) -> Result<Series> {
        let at = self.offset();
        match self.bump() {
            Some(Token::Var(i)) => {
                if i == 0 || i > self.h {
                    return Err(Error::parse(at, format!("variable x{} outside x1..x{}", i, self.h)));
                }
                Ok(Series::var(self.h, self.prec, i))
            }
            Some(Token::Num(n)) => {
                let mut q = Rat::from_integer(n);
                if self.peek() == Some(&Token::Slash) {
                    self.bump();
                    let dat = self.offset();
                    match self.bump() {
                        Some(Token::Num(d)) if !d.is_zero() => q /= Rat::from_integer(d),
                        Some(Token::Num(_)) => return Err(Error::parse(dat, "zero denominator")),
                        _ => return Err(Error::parse(dat, "expected a denominator")),
                    }
                }
                Ok(Series::constant(self.h, self.prec, q))
            }
            Some(Token::LParen) => {
                let inner = self.expr()?;
                let close = self.offset();
                match self.bump() {
                    Some(Token::RParen) => Ok(inner),
                    _ => Err(Error::parse(close, "expected ')'")),
                }
            }
            Some(_) => Err(Error::parse(at, "expected a variable, number or '('")),
            None => Err(Error::parse(at, "unexpected end of input")),
        }
    }
}

/// Powers of series with zero constant term vanish quickly; skip the work
/// once the order passes the precision.
fn pow_truncated(base: &Series, e: u32) -> Series {
    let ord = base.order();
    if e > 0 && ord > 0 && (ord as u64) * (e as u64) > base.precision() as u64 {
        return Series::zero(base.nvars(), base.precision());
    }
    base.pow(e)
}

/// Parses `text` into a series in `h` variables at precision `prec`.
pub fn parse_expr(text: &str, h: usize, prec: u32) -> Result<Series> {
    if h == 0 {
        return Err(Error::Params("need at least one variable".into()));
    }
    let tokens = tokenize(text)?;
    if tokens.is_empty() {
        return Err(Error::parse(0, "empty expression"));
    }
    let mut p = Parser { tokens: &tokens, pos: 0, end: text.len(), h, prec };
    let f = p.expr()?;
    if p.pos < tokens.len() {
        return Err(Error::parse(p.offset(), "unexpected trailing input"));
    }
    Ok(f)
}

/// Splits at top-level occurrences of `sep`, dropping one optional pair of
/// enclosing parentheses around the whole list. Returns `(offset, piece)`.
fn split_list(text: &str, sep: char) -> Result<Vec<(usize, &str)>> {
    let trimmed_start = text.len() - text.trim_start().len();
    let body = text.trim();
    let split_at_depth = |s: &str, depth_wanted: i32| -> Vec<usize> {
        let mut depth = 0;
        let mut cuts = Vec::new();
        for (i, ch) in s.char_indices() {
            match ch {
                '(' => depth += 1,
                ')' => depth -= 1,
                c if c == sep && depth == depth_wanted => cuts.push(i),
                _ => {}
            }
        }
        cuts
    };
    let mut base = trimmed_start;
    let mut inner = body;
    if body.starts_with('(') && body.ends_with(')') && matching_paren(body) == Some(body.len() - 1) && !split_at_depth(body, 1).is_empty() {
        inner = &body[1..body.len() - 1];
        base += 1;
    }
    let cuts = split_at_depth(inner, 0);
    let mut pieces = Vec::new();
    let mut start = 0;
    for c in cuts.into_iter().chain(std::iter::once(inner.len())) {
        pieces.push((base + start, &inner[start..c]));
        start = c + sep.len_utf8();
    }
    Ok(pieces)
}

fn matching_paren(s: &str) -> Option<usize> {
    let mut depth = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 {
                    return Some(i);
                }
            }
            _ => {}
        }
    }
    None
}

fn parse_list(text: &str, sep: char, h: usize, prec: u32) -> Result<Vec<Series>> {
    split_list(text, sep)?
        .into_iter()
        .filter(|(_, piece)| !(sep == ';' && piece.trim().is_empty()))
        .map(|(off, piece)| {
            parse_expr(piece, h, prec).map_err(|e| match e {
                Error::Parse { pos, msg } => Error::Parse { pos: pos + off, msg },
                other => other,
            })
        })
        .collect()
}

/// Parses a `;`-separated generator list such as `"(x2^2 - x1^4; x1^3*x2)"`.
pub fn parse_ideal(text: &str, h: usize, prec: u32) -> Result<Vec<Series>> {
    parse_list(text, ';', h, prec)
}

/// Parses a `,`-separated list of substitution targets.
pub fn parse_subst(text: &str, h: usize, prec: u32) -> Result<Vec<Series>> {
    parse_list(text, ',', h, prec)
}

/// Canonical text of a series: terms in canonical monomial order,
/// coefficients as reduced fractions, e.g. `x1 - 1/2*x1^2*x2`.
pub fn format_expr(f: &Series) -> String {
    let mut out = String::new();
    for (i, (m, c)) in f.terms().enumerate() {
        let neg = c.is_negative();
        let abs = c.abs();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let constant = m.degree() == 0;
        if constant {
            out.push_str(&format_rat(&abs));
        } else {
            if !abs.is_one() {
                out.push_str(&format_rat(&abs));
                out.push('*');
            }
            out.push_str(&m.to_string());
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Canonical text of a monomial, `1` for the constant monomial.
pub fn format_monomial(m: &ExpVec) -> String {
    m.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{int, rat};

    fn x(i: usize) -> Series {
        Series::var(2, 6, i)
    }

    #[test]
    fn parses_model_generator() {
        let f = parse_expr("x2^2 - x1^2*x2 - x1^4", 2, 6).unwrap();
        let expect = &(&x(2).pow(2) - &(&x(1).pow(2) * &x(2))) - &x(1).pow(4);
        assert_eq!(f, expect);
        assert_eq!(format_expr(&f), "x2^2 - x1^2*x2 - x1^4");
    }

    #[test]
    fn arithmetic() {
        assert!(parse_expr("0", 2, 6).unwrap().is_zero());
        let f = parse_expr("1/2*x1 + (x2 - x1)^2", 2, 6).unwrap();
        let expect = Series::from_terms(
            2,
            6,
            [
                (ExpVec::new(vec![1, 0]), rat(1, 2)),
                (ExpVec::new(vec![2, 0]), int(1)),
                (ExpVec::new(vec![1, 1]), int(-2)),
                (ExpVec::new(vec![0, 2]), int(1)),
            ],
        );
        assert_eq!(f, expect);
        assert_eq!(format_expr(&parse_expr("x1+x2", 2, 6).unwrap()), "x1 + x2");
        assert_eq!(format_expr(&parse_expr("-x1", 2, 6).unwrap()), "-x1");
        assert_eq!(format_expr(&parse_expr("3 - 6/4*x1", 2, 6).unwrap()), "3 - 3/2*x1");
        assert!(parse_expr("x1^9", 2, 6).unwrap().is_zero());
        assert_eq!(parse_expr("(1+x1)^0", 2, 6).unwrap(), Series::one(2, 6));
    }

    #[test]
    fn errors_carry_positions() {
        let pos = |s: &str| match parse_expr(s, 2, 6) {
            Err(Error::Parse { pos, .. }) => pos,
            other => panic!("expected parse error, got {:?}", other),
        };
        assert_eq!(pos("x3"), 0);
        assert_eq!(pos("x1 + x3"), 5);
        assert_eq!(pos("2x1"), 1);
        assert_eq!(pos("x1 + "), 5);
        assert_eq!(pos("(x1"), 3);
        assert_eq!(pos("1/0"), 2);
        assert_eq!(pos("x1 # 2"), 3);
        assert_eq!(pos(""), 0);
        assert_eq!(pos("x1^x2"), 3);
    }

    #[test]
    fn lists() {
        let gens = parse_ideal("(x2^2 - x1^4; x1^3*x2)", 2, 6).unwrap();
        assert_eq!(gens.len(), 2);
        assert_eq!(gens[1], parse_expr("x1^3*x2", 2, 6).unwrap());
        let single = parse_ideal("(x1 + x2)^2", 2, 6).unwrap();
        assert_eq!(single, vec![parse_expr("x1^2 + 2*x1*x2 + x2^2", 2, 6).unwrap()]);
        let sub = parse_subst("9*x1 + x2, -27*x2 + x1*x2 + 9*x1^2", 2, 5).unwrap();
        assert_eq!(sub.len(), 2);
        match parse_ideal("x1^2; x1 +", 2, 6) {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 10),
            other => panic!("{:?}", other),
        }
    }
}
