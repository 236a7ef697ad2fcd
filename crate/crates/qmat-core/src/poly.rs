//! Integer polynomials in x and y with arbitrary-precision coefficients.
//!
//! Text output lists x-degrees from high to low and, inside each x-block,
//! y-degrees from high to low, e.g. `x^3 + (2y + 63)x^2 + 4xy + 7`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Var {
    X,
    Y,
}

impl Var {
    pub fn name(&self) -> &'static str {
        match self {
            Var::X => "x",
            Var::Y => "y",
        }
    }
}

fn trim(v: &mut Vec<BigInt>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UnivariatePoly {
    var: Var,
    coeffs: Vec<BigInt>,
}

impl UnivariatePoly {
    pub fn new(var: Var, mut coeffs: Vec<BigInt>) -> Self {
        trim(&mut coeffs);
        UnivariatePoly { var, coeffs }
    }

    pub fn from_i64(var: Var, coeffs: &[i64]) -> Self {
        UnivariatePoly::new(var, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero(var: Var) -> Self {
        UnivariatePoly { var, coeffs: Vec::new() }
    }

    pub fn one(var: Var) -> Self {
        UnivariatePoly { var, coeffs: vec![BigInt::one()] }
    }

    pub fn monomial(var: Var, e: usize, c: BigInt) -> Self {
        let mut coeffs = vec![BigInt::zero(); e + 1];
        coeffs[e] = c;
        UnivariatePoly::new(var, coeffs)
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of var^i (zero past the degree).
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn with_var(mut self, var: Var) -> Self {
        self.var = var;
        self
    }

    pub fn add(&self, other: &UnivariatePoly) -> UnivariatePoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        UnivariatePoly::new(self.var, (0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &UnivariatePoly) -> UnivariatePoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        UnivariatePoly::new(self.var, (0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn scale(&self, c: &BigInt) -> UnivariatePoly {
        UnivariatePoly::new(self.var, self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn eval(&self, t: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * t + c)
    }

    pub fn parse(var: Var, s: &str) -> Result<Self, Error> {
        let b = BivariatePoly::from_str(s)?;
        let other = match var {
            Var::X => b.deg_y(),
            Var::Y => b.deg_x(),
        };
        if other.unwrap_or(0) > 0 {
            return Err(Error::Parse(format!("{:?} is not a polynomial in {}", s, var.name())));
        }
        let coeffs = match var {
            Var::X => b.coeffs.iter().map(|row| row[0].clone()).collect(),
            Var::Y => b.coeffs.first().cloned().unwrap_or_default(),
        };
        Ok(UnivariatePoly::new(var, coeffs))
    }
}

/// Writes `c·var^e` with the coefficient magnitude only.
fn mono(c: &BigInt, parts: &[(&str, usize)]) -> String {
    let mut s = String::new();
    let vars: Vec<&(&str, usize)> = parts.iter().filter(|(_, e)| *e > 0).collect();
    let a = c.abs();
    if !a.is_one() || vars.is_empty() {
        s.push_str(&format!("{}", a));
    }
    for (v, e) in vars {
        s.push_str(v);
        if *e > 1 {
            s.push_str(&format!("^{}", e));
        }
    }
    s
}

fn join_terms(terms: &[(bool, String)]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut s = String::new();
    for (k, (neg, body)) in terms.iter().enumerate() {
        match (k, neg) {
            (0, true) => s.push('-'),
            (0, false) => {}
            (_, true) => s.push_str(" - "),
            (_, false) => s.push_str(" + "),
        }
        s.push_str(body);
    }
    s
}

fn univariate_terms(p: &UnivariatePoly) -> Vec<(bool, String)> {
    (0..p.coeffs.len())
        .rev()
        .filter(|&i| !p.coeffs[i].is_zero())
        .map(|i| (p.coeffs[i].is_negative(), mono(&p.coeffs[i], &[(p.var.name(), i)])))
        .collect()
}

impl fmt::Display for UnivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&join_terms(&univariate_terms(self)))
    }
}

/// Dense coefficients ν[i][j] of x^i y^j.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct BivariatePoly {
    coeffs: Vec<Vec<BigInt>>,
}

impl BivariatePoly {
    /// Builds from a (possibly ragged) matrix indexed by (x-exponent, y-exponent).
    pub fn from_matrix(rows: Vec<Vec<BigInt>>) -> Self {
        let mut p = BivariatePoly { coeffs: rows };
        p.normalize();
        p
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        BivariatePoly::from_matrix(rows.iter().map(|r| r.iter().map(|&c| BigInt::from(c)).collect()).collect())
    }

    pub fn zero() -> Self {
        BivariatePoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        BivariatePoly { coeffs: vec![vec![BigInt::one()]] }
    }

    pub fn term(i: usize, j: usize, c: BigInt) -> Self {
        let mut p = BivariatePoly::zero();
        p.add_term(i, j, c);
        p
    }

    fn normalize(&mut self) {
        let width = self
            .coeffs
            .iter()
            .map(|r| r.iter().rposition(|c| !c.is_zero()).map_or(0, |p| p + 1))
            .max()
            .unwrap_or(0);
        for r in self.coeffs.iter_mut() {
            r.resize(width, BigInt::zero());
        }
        while self.coeffs.last().is_some_and(|r| r.iter().all(|c| c.is_zero())) {
            self.coeffs.pop();
        }
        if self.coeffs.is_empty() || width == 0 {
            self.coeffs.clear();
        }
    }

    pub fn add_term(&mut self, i: usize, j: usize, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let width = self.coeffs.first().map_or(0, |r| r.len()).max(j + 1);
        if self.coeffs.len() <= i {
            self.coeffs.resize(i + 1, Vec::new());
        }
        for r in self.coeffs.iter_mut() {
            r.resize(width, BigInt::zero());
        }
        self.coeffs[i][j] += c;
        self.normalize();
    }

    pub fn deg_x(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn deg_y(&self) -> Option<usize> {
        self.coeffs.first().and_then(|r| r.len().checked_sub(1))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, i: usize, j: usize) -> BigInt {
        self.coeffs.get(i).and_then(|r| r.get(j)).cloned().unwrap_or_default()
    }

    /// Coefficient matrix, rows by x-exponent.
    pub fn matrix(&self) -> &[Vec<BigInt>] {
        &self.coeffs
    }

    /// Nonzero terms as (i, j, coefficient).
    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> {
        self.coeffs
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(move |(j, c)| (i, j, c)))
    }

    pub fn add(&self, other: &BivariatePoly) -> BivariatePoly {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn add_assign(&mut self, other: &BivariatePoly) {
        let rows = self.coeffs.len().max(other.coeffs.len());
        let width = self.deg_y().map_or(0, |d| d + 1).max(other.deg_y().map_or(0, |d| d + 1));
        self.coeffs.resize(rows, Vec::new());
        for (i, r) in self.coeffs.iter_mut().enumerate() {
            r.resize(width, BigInt::zero());
            if let Some(o) = other.coeffs.get(i) {
                for (a, b) in r.iter_mut().zip(o) {
                    *a += b;
                }
            }
        }
        self.normalize();
    }

    pub fn neg(&self) -> BivariatePoly {
        BivariatePoly { coeffs: self.coeffs.iter().map(|r| r.iter().map(|c| -c).collect()).collect() }
    }

    pub fn sub(&self, other: &BivariatePoly) -> BivariatePoly {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &BigInt) -> BivariatePoly {
        BivariatePoly::from_matrix(self.coeffs.iter().map(|r| r.iter().map(|x| x * c).collect()).collect())
    }

    pub fn mul(&self, other: &BivariatePoly) -> BivariatePoly {
        let mut out = BivariatePoly::zero();
        if self.is_zero() || other.is_zero() {
            return out;
        }
        let dx = self.coeffs.len() + other.coeffs.len() - 1;
        let dy = self.coeffs[0].len() + other.coeffs[0].len() - 1;
        out.coeffs = vec![vec![BigInt::zero(); dy]; dx];
        for (i, j, a) in self.terms() {
            for (k, l, b) in other.terms() {
                out.coeffs[i + k][j + l] += a * b;
            }
        }
        out.normalize();
        out
    }

    /// R(y, x).
    pub fn swap_xy(&self) -> BivariatePoly {
        let mut out = BivariatePoly::zero();
        for (i, j, c) in self.terms() {
            out.add_term(j, i, c.clone());
        }
        out
    }

    pub fn eval(&self, x: &BigInt, y: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, r| acc * x + r.iter().rev().fold(BigInt::zero(), |a, c| a * y + c))
    }

    pub fn from_univariate(p: &UnivariatePoly) -> BivariatePoly {
        let mut out = BivariatePoly::zero();
        for (e, c) in p.coeffs().iter().enumerate() {
            match p.var() {
                Var::X => out.add_term(e, 0, c.clone()),
                Var::Y => out.add_term(0, e, c.clone()),
            }
        }
        out
    }
}

impl fmt::Display for BivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<(bool, String)> = Vec::new();
        for i in (0..self.coeffs.len()).rev() {
            let g = UnivariatePoly::new(Var::Y, self.coeffs[i].clone());
            if g.is_zero() {
                continue;
            }
            let nonzero: Vec<usize> = (0..g.coeffs.len()).filter(|&j| !g.coeffs[j].is_zero()).collect();
            if i == 0 {
                terms.extend(univariate_terms(&g));
            } else if nonzero.len() == 1 {
                let j = nonzero[0];
                let c = &g.coeffs[j];
                terms.push((c.is_negative(), mono(c, &[("x", i), ("y", j)])));
            } else {
                let xs = mono(&BigInt::one(), &[("x", i)]);
                terms.push((false, format!("({}){}", g, xs)));
            }
        }
        f.write_str(&join_terms(&terms))
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{} at offset {}", msg, self.pos))
    }

    fn peek(&mut self) -> Option<u8> {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        self.s.get(self.pos).copied()
    }

    fn number(&mut self) -> Result<BigInt, Error> {
        self.peek();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let text = core::str::from_utf8(&self.s[start..self.pos]).map_err(|_| self.err("bad utf8"))?;
        BigInt::from_str(text).map_err(|_| self.err("expected a number"))
    }

    fn exponent(&mut self) -> Result<usize, Error> {
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.number()?;
            return usize::try_from(e).map_err(|_| self.err("exponent too large"));
        }
        Ok(1)
    }

    fn expr(&mut self) -> Result<BivariatePoly, Error> {
        let mut acc = BivariatePoly::zero();
        let mut sign = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -1
            }
            Some(b'+') => {
                self.pos += 1;
                1
            }
            _ => 1,
        };
        loop {
            let t = self.term()?;
            acc = if sign < 0 { acc.sub(&t) } else { acc.add(&t) };
            match self.peek() {
                Some(b'+') => sign = 1,
                Some(b'-') => sign = -1,
                _ => return Ok(acc),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<BivariatePoly, Error> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.factor()?);
                }
                Some(c) if c.is_ascii_digit() || c == b'x' || c == b'y' || c == b'(' => {
                    acc = acc.mul(&self.factor()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<BivariatePoly, Error> {
        let base = match self.peek() {
            Some(b'x') | Some(b'y') => {
                let v = self.s[self.pos];
                self.pos += 1;
                let e = self.exponent()?;
                return Ok(if v == b'x' {
                    BivariatePoly::term(e, 0, BigInt::one())
                } else {
                    BivariatePoly::term(0, e, BigInt::one())
                });
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                inner
            }
            Some(c) if c.is_ascii_digit() => return Ok(BivariatePoly::term(0, 0, self.number()?)),
            _ => return Err(self.err("expected a factor")),
        };
        let e = self.exponent()?;
        let mut out = BivariatePoly::one();
        for _ in 0..e {
            out = out.mul(&base);
        }
        Ok(out)
    }
}

impl FromStr for BivariatePoly {
    type Err = Error;

    /// Accepts sums of products of integers, `x^k`, `y^k` and parenthesized
    /// subexpressions, in any order.
    fn from_str(s: &str) -> Result<Self, Error> {
        let mut p = Parser { s: s.as_bytes(), pos: 0 };
        let out = p.expr()?;
        if p.peek().is_some() {
            return Err(p.err("trailing input"));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use alloc::string::ToString;
    use super::*;

    #[test]
    fn univariate_display() {
        assert_eq!(UnivariatePoly::from_i64(Var::X, &[0, 451, 57, 1]).to_string(), "x^3 + 57x^2 + 451x");
        assert_eq!(UnivariatePoly::from_i64(Var::Y, &[3, 1]).to_string(), "y + 3");
        assert_eq!(UnivariatePoly::from_i64(Var::Y, &[1]).to_string(), "1");
        assert_eq!(UnivariatePoly::zero(Var::X).to_string(), "0");
        assert_eq!(UnivariatePoly::from_i64(Var::X, &[-8, 14, -7, 1]).to_string(), "x^3 - 7x^2 + 14x - 8");
        assert_eq!(UnivariatePoly::from_i64(Var::X, &[0, -1]).to_string(), "-x");
    }

    #[test]
    fn bivariate_display_matches_nested_form() {
        let s = "x^3 + (2y + 63)x^2 + (y^2 + 42y + 649)x + y^3 + 63y^2 + 650y + 1353";
        let p = BivariatePoly::from_str(s).unwrap();
        assert_eq!(p.to_string(), s);
        assert_eq!(
            p.matrix().to_vec(),
            BivariatePoly::from_i64(&[&[1353, 650, 63, 1], &[649, 42, 1, 0], &[63, 2, 0, 0], &[1, 0, 0, 0]]).matrix().to_vec()
        );
        let q = BivariatePoly::from_str("x^3+y^3+63x^2+2xy+63y^2+651x+651y+1393").unwrap();
        assert_eq!(q.to_string(), "x^3 + 63x^2 + (2y + 651)x + y^3 + 63y^2 + 651y + 1393");
    }

    #[test]
    fn parse_products_and_powers() {
        let p = BivariatePoly::from_str("(y+3)x^2 + (12y+72)x").unwrap();
        assert_eq!(p.coeff(2, 1), BigInt::from(1));
        assert_eq!(p.coeff(1, 0), BigInt::from(72));
        let q = BivariatePoly::from_str("(x+1)^2 - 2*x").unwrap();
        assert_eq!(q, BivariatePoly::from_str("x^2 + 1").unwrap());
        assert!(BivariatePoly::from_str("x +").is_err());
        assert!(BivariatePoly::from_str("z").is_err());
        assert_eq!(BivariatePoly::from_str("0").unwrap(), BivariatePoly::zero());
        assert_eq!(BivariatePoly::zero().to_string(), "0");
    }

    #[test]
    fn univariate_parse() {
        let p = UnivariatePoly::parse(Var::Y, "y^2 + 15y + 33").unwrap();
        assert_eq!(p, UnivariatePoly::from_i64(Var::Y, &[33, 15, 1]));
        assert!(UnivariatePoly::parse(Var::X, "y").is_err());
    }

    #[test]
    fn swap_and_eval() {
        let p = BivariatePoly::from_str("x^2 + 3xy + 5").unwrap();
        assert_eq!(p.swap_xy(), BivariatePoly::from_str("y^2 + 3xy + 5").unwrap());
        assert_eq!(p.eval(&BigInt::from(1), &BigInt::from(1)), BigInt::from(9));
    }
}
