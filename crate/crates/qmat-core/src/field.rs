//! Prime fields F_q and extensions F_{q^m} = F_q[w]/(p(w)) with w primitive.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;

/// Extensions up to this many elements get log/antilog tables.
pub const TABLE_LIMIT: u64 = 1 << 20;

pub fn is_prime(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= q {
        if q.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeField {
    q: u32,
}

impl PrimeField {
    pub fn new(q: u32) -> Result<Self, Error> {
        if !is_prime(q as u64) {
            return Err(Error::NotPrime(q as u64));
        }
        Ok(PrimeField { q })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        (a + b) % self.q
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        (a + self.q - b) % self.q
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        (self.q - a) % self.q
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.q as u64) as u32
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a % self.q;
        let mut acc = 1 % self.q;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u32) -> Result<u32, Error> {
        if a.is_multiple_of(self.q) {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, self.q as u64 - 2))
    }
}

/// Polynomials over F_q, lowest coefficient first, no trailing zeros.
mod fpoly {
    use super::PrimeField;
    use alloc::vec;
    use alloc::vec::Vec;

    pub fn trim(mut a: Vec<u32>) -> Vec<u32> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn sub(f: &PrimeField, a: &[u32], b: &[u32]) -> Vec<u32> {
        let n = a.len().max(b.len());
        let r = (0..n)
            .map(|i| f.sub(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
            .collect();
        trim(r)
    }

    pub fn mul(f: &PrimeField, a: &[u32], b: &[u32]) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut r = vec![0; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                r[i + j] = f.add(r[i + j], f.mul(x, y));
            }
        }
        trim(r)
    }

    pub fn rem(f: &PrimeField, a: &[u32], m: &[u32]) -> Vec<u32> {
        let mut r = trim(a.to_vec());
        let dm = m.len() - 1;
        let lead_inv = f.inv(m[dm]).expect("nonzero modulus");
        while r.len() > dm {
            let dr = r.len() - 1;
            let c = f.mul(r[dr], lead_inv);
            let shift = dr - dm;
            for (i, &mi) in m.iter().enumerate() {
                r[shift + i] = f.sub(r[shift + i], f.mul(c, mi));
            }
            r = trim(r);
        }
        r
    }

    pub fn mulmod(f: &PrimeField, a: &[u32], b: &[u32], m: &[u32]) -> Vec<u32> {
        rem(f, &mul(f, a, b), m)
    }

    pub fn powmod(f: &PrimeField, a: &[u32], mut e: u64, m: &[u32]) -> Vec<u32> {
        let mut base = rem(f, a, m);
        let mut acc = rem(f, &[1], m);
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(f, &acc, &base, m);
            }
            base = mulmod(f, &base, &base, m);
            e >>= 1;
        }
        acc
    }

    pub fn gcd(f: &PrimeField, a: &[u32], b: &[u32]) -> Vec<u32> {
        let mut a = trim(a.to_vec());
        let mut b = trim(b.to_vec());
        while !b.is_empty() {
            let r = rem(f, &a, &b);
            a = b;
            b = r;
        }
        a
    }
}

/// An element of F_{q^m}, stored as the base-q integer Σ c_i q^i of its
/// coefficient vector in the basis 1, w, ..., w^{m-1}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ExtElement(pub(crate) u32);

impl ExtElement {
    pub const ZERO: ExtElement = ExtElement(0);

    pub fn is_zero(&self) -> bool {
        self.0 == 0
    }

    pub fn packed(&self) -> u32 {
        self.0
    }
}

#[derive(Debug, Clone)]
pub struct ExtensionField {
    base: PrimeField,
    m: u32,
    min_poly: Vec<u32>,
    size: u32,
    // exp[k] = w^k for k < size - 1; log[a] = k
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl PartialEq for ExtensionField {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base && self.min_poly == other.min_poly
    }
}

impl Eq for ExtensionField {}

impl ExtensionField {
    /// `min_poly` lists coefficients from the constant term upward and must be monic of degree `m`.
    pub fn new(q: u32, m: u32, min_poly: &[u32]) -> Result<Self, Error> {
        let base = PrimeField::new(q)?;
        if m == 0 {
            return Err(Error::Range("extension degree must be at least 1".into()));
        }
        if min_poly.len() != m as usize + 1 {
            return Err(Error::Shape(format!(
                "minimal polynomial of degree {} needs {} coefficients, got {}",
                m,
                m + 1,
                min_poly.len()
            )));
        }
        if min_poly.iter().any(|&c| c >= q) {
            return Err(Error::Range("coefficient not reduced mod q".into()));
        }
        if min_poly[m as usize] != 1 {
            return Err(Error::Shape("minimal polynomial is not monic".into()));
        }
        let size64 = (q as u64).checked_pow(m).filter(|&s| s <= 1 << 31).ok_or_else(|| {
            Error::Range(format!("field of size {}^{} is too large", q, m))
        })?;
        if !irreducible(&base, min_poly) {
            return Err(Error::Irreducibility(q));
        }
        let order = size64 - 1;
        let x = [0, 1];
        for p in prime_factors(order) {
            if fpoly::powmod(&base, &x, order / p, min_poly) == [1] {
                let real = multiplicative_order(&base, min_poly, order);
                return Err(Error::Primitivity { order: real, expected: order });
            }
        }
        let mut field = ExtensionField {
            base,
            m,
            min_poly: min_poly.to_vec(),
            size: size64 as u32,
            exp: Vec::new(),
            log: Vec::new(),
        };
        if size64 <= TABLE_LIMIT {
            field.build_tables();
        }
        Ok(field)
    }

    fn build_tables(&mut self) {
        let n = self.size as usize;
        let mut exp = vec![0u32; n - 1];
        let mut log = vec![0u32; n];
        let w = self.from_poly(&fpoly::rem(&self.base, &[0, 1], &self.min_poly));
        let mut cur = ExtElement(1);
        for (k, slot) in exp.iter_mut().enumerate() {
            *slot = cur.0;
            log[cur.0 as usize] = k as u32;
            cur = self.mul_slow(cur, w);
        }
        self.exp = exp;
        self.log = log;
    }

    pub fn q(&self) -> u32 {
        self.base.q()
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn base(&self) -> PrimeField {
        self.base
    }

    pub fn min_poly(&self) -> &[u32] {
        &self.min_poly
    }

    /// Number of elements q^m.
    pub fn size(&self) -> u32 {
        self.size
    }

    pub fn has_tables(&self) -> bool {
        !self.exp.is_empty()
    }

    pub fn zero(&self) -> ExtElement {
        ExtElement(0)
    }

    pub fn one(&self) -> ExtElement {
        ExtElement(1)
    }

    pub fn coeffs(&self, a: ExtElement) -> Vec<u32> {
        let q = self.q();
        let mut v = a.0;
        (0..self.m)
            .map(|_| {
                let d = v % q;
                v /= q;
                d
            })
            .collect()
    }

    pub fn from_coeffs(&self, c: &[u32]) -> Result<ExtElement, Error> {
        if c.len() != self.m as usize {
            return Err(Error::Shape(format!("expected {} coefficients, got {}", self.m, c.len())));
        }
        if c.iter().any(|&x| x >= self.q()) {
            return Err(Error::Range("coefficient not reduced mod q".into()));
        }
        Ok(self.from_poly(c))
    }

    /// Embeds a base-field scalar.
    pub fn from_base(&self, c: u32) -> ExtElement {
        ExtElement(c % self.q())
    }

    fn from_poly(&self, c: &[u32]) -> ExtElement {
        let q = self.q();
        let mut v = 0u32;
        for &x in c.iter().rev() {
            v = v * q + x;
        }
        ExtElement(v)
    }

    pub fn add(&self, a: ExtElement, b: ExtElement) -> ExtElement {
        let q = self.q();
        if q == 2 {
            return ExtElement(a.0 ^ b.0);
        }
        let (mut x, mut y) = (a.0, b.0);
        let mut r = 0u32;
        let mut place = 1u32;
        for _ in 0..self.m {
            r += ((x % q + y % q) % q) * place;
            x /= q;
            y /= q;
            place = place.wrapping_mul(q);
        }
        ExtElement(r)
    }

    pub fn neg(&self, a: ExtElement) -> ExtElement {
        let q = self.q();
        if q == 2 {
            return a;
        }
        let c: Vec<u32> = self.coeffs(a).into_iter().map(|x| self.base.neg(x)).collect();
        self.from_poly(&c)
    }

    pub fn sub(&self, a: ExtElement, b: ExtElement) -> ExtElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: ExtElement, b: ExtElement) -> ExtElement {
        if a.0 == 0 || b.0 == 0 {
            return ExtElement(0);
        }
        if self.has_tables() {
            let n = self.size as u64 - 1;
            let k = (self.log[a.0 as usize] as u64 + self.log[b.0 as usize] as u64) % n;
            return ExtElement(self.exp[k as usize]);
        }
        self.mul_slow(a, b)
    }

    fn mul_slow(&self, a: ExtElement, b: ExtElement) -> ExtElement {
        let r = fpoly::mulmod(&self.base, &self.coeffs(a), &self.coeffs(b), &self.min_poly);
        self.from_poly(&r)
    }

    pub fn inv(&self, a: ExtElement) -> Result<ExtElement, Error> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        let n = self.size as u64 - 1;
        if self.has_tables() {
            let k = (n - self.log[a.0 as usize] as u64) % n;
            return Ok(ExtElement(self.exp[k as usize]));
        }
        Ok(self.pow(a, n - 1))
    }

    pub fn pow(&self, a: ExtElement, mut e: u64) -> ExtElement {
        let mut base = a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// w^k reduced modulo the minimal polynomial.
    pub fn pow_of_omega(&self, k: u64) -> ExtElement {
        let n = self.size as u64 - 1;
        if self.has_tables() {
            return ExtElement(self.exp[(k % n) as usize]);
        }
        let r = fpoly::powmod(&self.base, &[0, 1], k % n, &self.min_poly);
        self.from_poly(&r)
    }

    /// Discrete logarithm to base w; `None` for zero.
    pub fn log_omega(&self, a: ExtElement) -> Option<u64> {
        if a.0 == 0 {
            return None;
        }
        if self.has_tables() {
            return Some(self.log[a.0 as usize] as u64);
        }
        let w = self.pow_of_omega(1);
        let mut cur = self.one();
        for k in 0..self.size as u64 - 1 {
            if cur == a {
                return Some(k);
            }
            cur = self.mul(cur, w);
        }
        None
    }

    /// Parses `0` or `w^k`; `1` and `w` are accepted as shorthands.
    pub fn parse_element(&self, s: &str) -> Result<ExtElement, Error> {
        let t = s.trim();
        match t {
            "0" => return Ok(self.zero()),
            "1" => return Ok(self.one()),
            "w" => return Ok(self.pow_of_omega(1)),
            _ => {}
        }
        let k = t
            .strip_prefix("w^")
            .and_then(|e| e.trim().parse::<u64>().ok())
            .ok_or_else(|| Error::Parse(format!("bad field element {:?}", s)))?;
        if k >= self.size as u64 - 1 {
            return Err(Error::Range(format!("exponent {} not below {}", k, self.size - 1)));
        }
        Ok(self.pow_of_omega(k))
    }

    pub fn format_element(&self, a: ExtElement) -> alloc::string::String {
        match self.log_omega(a) {
            None => "0".into(),
            Some(k) => format!("w^{}", k),
        }
    }
}

/// Ben-Or test: no factor of degree at most m/2.
fn irreducible(f: &PrimeField, p: &[u32]) -> bool {
    let m = p.len() - 1;
    if m == 1 {
        return true;
    }
    let q = f.q() as u64;
    let x = [0u32, 1];
    let mut h = x.to_vec();
    for _ in 1..=m / 2 {
        h = fpoly::powmod(f, &h, q, p);
        let g = fpoly::gcd(f, &fpoly::sub(f, &h, &x), p);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn multiplicative_order(f: &PrimeField, p: &[u32], group: u64) -> u64 {
    let mut best = group;
    for d in prime_factors(group) {
        while best.is_multiple_of(d) && fpoly::powmod(f, &[0, 1], best / d, p) == [1] {
            best /= d;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f128() -> ExtensionField {
        ExtensionField::new(2, 7, &[1, 1, 0, 0, 0, 0, 0, 1]).unwrap()
    }

    #[test]
    fn primitive_fields_construct() {
        let f = f128();
        assert_eq!(f.size(), 128);
        let g = ExtensionField::new(2, 6, &[1, 1, 0, 1, 1, 0, 1]).unwrap();
        assert_eq!(g.size(), 64);
    }

    #[test]
    fn degree_one_is_base_field() {
        let f = ExtensionField::new(2, 1, &[1, 1]).unwrap();
        assert_eq!(f.size(), 2);
        assert_eq!(f.pow_of_omega(0), f.one());
        assert_eq!(f.pow_of_omega(1), f.one());
    }

    #[test]
    fn order_of_omega() {
        let f = f128();
        let a = f.pow_of_omega(90);
        let b = f.pow_of_omega(37);
        assert_eq!(f.mul(a, b), f.one());
        for k in 1..127 {
            assert_ne!(f.pow_of_omega(k), f.one());
        }
    }

    #[test]
    fn min_poly_vanishes_at_omega() {
        for (q, p) in [(2u32, alloc::vec![1u32, 1, 0, 0, 0, 0, 0, 1]), (3, alloc::vec![2, 1, 1]), (5, alloc::vec![2, 1, 1])] {
            let f = ExtensionField::new(q, p.len() as u32 - 1, &p).unwrap();
            let mut acc = f.zero();
            for (i, &c) in p.iter().enumerate() {
                acc = f.add(acc, f.mul(f.from_base(c), f.pow_of_omega(i as u64)));
            }
            assert!(acc.is_zero());
        }
    }

    #[test]
    fn rejects_reducible_and_imprimitive() {
        // x^2 + 1 = (x + 1)^2 over F_2
        assert_eq!(ExtensionField::new(2, 2, &[1, 0, 1]), Err(Error::Irreducibility(2)));
        // x^4 + x^3 + x^2 + x + 1 is irreducible but w has order 5
        assert!(matches!(
            ExtensionField::new(2, 4, &[1, 1, 1, 1, 1]),
            Err(Error::Primitivity { order: 5, expected: 15 })
        ));
        assert!(matches!(ExtensionField::new(4, 1, &[1, 1]), Err(Error::NotPrime(4))));
    }

    #[test]
    fn inverse_exhaustive_small_fields() {
        for (q, p) in [(2u32, alloc::vec![1u32, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1]), (3, alloc::vec![1, 2, 0, 0, 0, 1])] {
            let f = ExtensionField::new(q, p.len() as u32 - 1, &p).unwrap();
            assert!(f.size() <= 1 << 10);
            for k in 0..f.size() as u64 - 1 {
                let a = f.pow_of_omega(k);
                assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
            }
            assert_eq!(f.inv(f.zero()), Err(Error::DivisionByZero));
        }
    }

    #[test]
    fn tables_agree_with_polynomial_arithmetic() {
        let f = ExtensionField::new(3, 3, &[1, 2, 0, 1]).unwrap();
        for a in 0..f.size() {
            for b in 0..f.size() {
                let (x, y) = (ExtElement(a), ExtElement(b));
                assert_eq!(f.mul(x, y), f.mul_slow(x, y));
            }
        }
    }

    #[test]
    fn characteristic_two_self_inverse_addition() {
        let f = f128();
        for a in 0..128 {
            assert!(f.add(ExtElement(a), ExtElement(a)).is_zero());
        }
    }

    #[test]
    fn parse_and_format() {
        let f = f128();
        let a = f.parse_element("w^90").unwrap();
        assert_eq!(f.format_element(a), "w^90");
        assert_eq!(f.parse_element("0").unwrap(), f.zero());
        assert!(f.parse_element("w^127").is_err());
        assert!(f.parse_element("x").is_err());
    }
}
