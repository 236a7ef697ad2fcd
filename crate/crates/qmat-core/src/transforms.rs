//! How clouds, flocks and Whitney functions change when a free summand
//! U_{n2,n2} or a trivial summand U_{0,n2} is attached.

use alloc::format;
use alloc::vec;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::Error;
use crate::gauss::{gaussian, qpow};
use crate::poly::{BivariatePoly, UnivariatePoly, Var};

fn check_whitney_shape(r: &BivariatePoly, n1: u32, rho_hat: u32) -> Result<(), Error> {
    if rho_hat > n1 {
        return Err(Error::Shape(format!("rank {} exceeds dimension {}", rho_hat, n1)));
    }
    let dx = r.deg_x().ok_or_else(|| Error::Shape("zero Whitney function".into()))? as u32;
    let dy = r.deg_y().unwrap_or(0) as u32;
    if dx != rho_hat || dx + dy != n1 {
        return Err(Error::Shape(format!("Whitney function of bidegree ({}, {}) does not fit rank {} in dimension {}", dx, dy, rho_hat, n1)));
    }
    Ok(())
}

fn check_flat_shape(p: &UnivariatePoly, n1: u32, r: u32, d: u32, expected: u32) -> Result<(), Error> {
    if r > d || d > n1 {
        return Err(Error::Shape(format!("rank {} and dimension {} do not fit ground dimension {}", r, d, n1)));
    }
    match p.degree() {
        Some(e) if e as u32 == expected => Ok(()),
        _ => Err(Error::Shape(format!("expected a polynomial of degree {}, got {}", expected, p))),
    }
}

/// Cloud of Z1 ⊕ 0 in M1 ⊕ U_{n2,n2}, from the cloud of Z1 in M1
/// (ρ(Z1) = r, dim Z1 = d, ρ̂ the rank of M1).
pub fn free_cloud(c: &UnivariatePoly, n1: u32, rho_hat: u32, n2: u32, r: u32, d: u32, q: u32) -> Result<UnivariatePoly, Error> {
    if rho_hat > n1 || r > rho_hat {
        return Err(Error::Shape(format!("rank {} of the flat exceeds rank {}", r, rho_hat)));
    }
    check_flat_shape(c, n1, r, d, rho_hat - r)?;
    if d - r > n1 - rho_hat {
        return Err(Error::Shape(format!("nullity {} exceeds {}", d - r, n1 - rho_hat)));
    }
    let top = rho_hat + n2;
    let mut out = vec![BigInt::zero(); (top - r) as usize + 1];
    for t in r..=top {
        let mut acc = BigInt::zero();
        for j in r.max(t.saturating_sub(n2))..=t.min(rho_hat) {
            let b = c.coeff((rho_hat - j) as usize);
            if b.is_zero() {
                continue;
            }
            acc += b * gaussian(n2, t - j, q) * qpow(q, (t - j) * (n1 - j - (d - r)));
        }
        out[(top - t) as usize] = acc;
    }
    Ok(UnivariatePoly::new(Var::X, out))
}

/// Flock of Z1 ⊕ E2 in M1 ⊕ U_{0,n2}, from the flock of Z1 in M1.
pub fn trivial_flock(f: &UnivariatePoly, n1: u32, n2: u32, r: u32, d: u32, q: u32) -> Result<UnivariatePoly, Error> {
    check_flat_shape(f, n1, r, d, d - r.min(d))?;
    let mut out = vec![BigInt::zero(); (d + n2 - r) as usize + 1];
    for j in r..=d + n2 {
        let mut acc = BigInt::zero();
        for t in r.max(j.saturating_sub(n2))..=j.min(d) {
            let b = f.coeff((t - r) as usize);
            if b.is_zero() {
                continue;
            }
            acc += b * gaussian(n2, j - t, q) * qpow(q, t * (n2 + t - j));
        }
        out[(j - r) as usize] = acc;
    }
    Ok(UnivariatePoly::new(Var::Y, out))
}

/// Whitney function of M1 ⊕ U_{n2,n2}.
pub fn free_whitney(r1: &BivariatePoly, n1: u32, rho_hat: u32, n2: u32, q: u32) -> Result<BivariatePoly, Error> {
    check_whitney_shape(r1, n1, rho_hat)?;
    let top = rho_hat + n2;
    let mut m = vec![vec![BigInt::zero(); (n1 - rho_hat) as usize + 1]; top as usize + 1];
    for (l, b, v) in r1.terms() {
        let (l, b) = (l as u32, b as u32);
        for a in l..=l + n2 {
            let w = gaussian(n2, a - l, q) * qpow(q, (l + n2 - a) * (n1 - rho_hat - b + l));
            m[a as usize][b as usize] += v * w;
        }
    }
    Ok(BivariatePoly::from_matrix(m))
}

/// Whitney function of M1 ⊕ U_{0,n2}.
pub fn trivial_whitney(r1: &BivariatePoly, n1: u32, rho_hat: u32, n2: u32, q: u32) -> Result<BivariatePoly, Error> {
    check_whitney_shape(r1, n1, rho_hat)?;
    let width = n1 + n2 - rho_hat;
    let mut m = vec![vec![BigInt::zero(); width as usize + 1]; rho_hat as usize + 1];
    for (a, j, v) in r1.terms() {
        let (a, j) = (a as u32, j as u32);
        let k1 = rho_hat - a + j;
        for b in j..=j + n2 {
            let w = gaussian(n2, b - j, q) * qpow(q, k1 * (n2 + j - b));
            m[a as usize][b as usize] += v * w;
        }
    }
    Ok(BivariatePoly::from_matrix(m))
}

/// Σ [n1 a][n2 b] q^{(n1−a)(n2−b)} x^a y^b, the Whitney function of U_{n1,n1} ⊕ U_{0,n2}.
pub fn prime_free_whitney(n1: u32, n2: u32, q: u32) -> BivariatePoly {
    let m = (0..=n1)
        .map(|a| (0..=n2).map(|b| gaussian(n1, a, q) * gaussian(n2, b, q) * qpow(q, (n1 - a) * (n2 - b))).collect())
        .collect();
    BivariatePoly::from_matrix(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::{uniform_cloud, uniform_flock, uniform_whitney};

    #[test]
    fn zero_summand_is_identity() {
        let c = uniform_cloud(2, 4, 2);
        assert_eq!(free_cloud(&c, 4, 2, 0, 0, 0, 2).unwrap(), c);
        let f = uniform_flock(2, 4, 2);
        assert_eq!(trivial_flock(&f, 4, 0, 2, 4, 2).unwrap(), f);
        let r = uniform_whitney(2, 4, 2);
        assert_eq!(free_whitney(&r, 4, 2, 0, 2).unwrap(), r);
        assert_eq!(trivial_whitney(&r, 4, 2, 0, 2).unwrap(), r);
    }

    #[test]
    fn empty_matroid_gives_uniform() {
        let one = BivariatePoly::one();
        for n2 in 0..5 {
            assert_eq!(free_whitney(&one, 0, 0, n2, 3).unwrap(), uniform_whitney(n2, n2, 3));
            assert_eq!(trivial_whitney(&one, 0, 0, n2, 3).unwrap(), uniform_whitney(0, n2, 3));
        }
    }

    #[test]
    fn prime_free_matches_transforms() {
        for (n1, n2) in [(0, 3), (2, 2), (3, 1)] {
            let free = uniform_whitney(n1, n1, 2);
            assert_eq!(trivial_whitney(&free, n1, n1, n2, 2).unwrap(), prime_free_whitney(n1, n2, 2));
        }
    }

    #[test]
    fn shape_errors() {
        let r = uniform_whitney(2, 4, 2);
        assert!(matches!(free_whitney(&r, 5, 2, 1, 2), Err(Error::Shape(_))));
        assert!(matches!(trivial_whitney(&r, 4, 3, 1, 2), Err(Error::Shape(_))));
        let c = uniform_cloud(2, 4, 2);
        assert!(matches!(free_cloud(&c, 4, 2, 1, 1, 1, 2), Err(Error::Shape(_))));
    }
}
