//! Whitney function, characteristic polynomial, cloud and flock polynomials,
//! the star product, truncations and extremal terms.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::analysis::Analysis;
use crate::error::Error;
use crate::gauss::{gaussian, qpow};
use crate::poly::{BivariatePoly, UnivariatePoly, Var};
use crate::universe::RankTable;

/// Cloud polynomial in x and flock polynomial in y of one cyclic flat.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CloudFlockPair {
    pub cloud: UnivariatePoly,
    pub flock: UnivariatePoly,
}

impl CloudFlockPair {
    /// (deg cloud, deg flock), the corank-nullity pair it certifies.
    pub fn degrees(&self) -> (u32, u32) {
        (self.cloud.degree().unwrap_or(0) as u32, self.flock.degree().unwrap_or(0) as u32)
    }
}

/// Σ_V x^{ρ̂−ρ(V)} y^{dim V−ρ(V)}.
pub fn whitney(t: &RankTable) -> BivariatePoly {
    let u = t.universe();
    let rho = t.rank_full() as usize;
    let n = u.ambient().n() as usize;
    let mut counts = vec![vec![0u64; n - rho + 1]; rho + 1];
    for id in 0..u.len() as u32 {
        counts[t.corank_id(id) as usize][t.nullity_id(id) as usize] += 1;
    }
    BivariatePoly::from_matrix(counts.into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WhitneyCounts {
    pub rho_hat: u32,
    pub n: u32,
    pub bases: BigInt,
    pub independents: BigInt,
    pub spanning: BigInt,
    /// Σ_i ν_{ρ̂−i,k−i} for k = 0..=n.
    pub layer_sums: Vec<BigInt>,
    pub layers_match_gaussian: bool,
    /// f_ρ̂ = 1, i.e. 0 is a flat.
    pub zero_is_flat: bool,
    /// g_{n−ρ̂} = 1, i.e. E is open.
    pub full_is_open: bool,
}

pub fn whitney_counts(r: &BivariatePoly, q: u32) -> WhitneyCounts {
    let rho_hat = r.deg_x().unwrap_or(0) as u32;
    let n = rho_hat + r.deg_y().unwrap_or(0) as u32;
    let zero = BigInt::zero();
    let one = BigInt::one();
    let row_sum = |i: usize| r.matrix().get(i).map_or(BigInt::zero(), |row| row.iter().sum());
    let independents = r.matrix().iter().map(|row| row[0].clone()).sum::<BigInt>();
    let spanning = row_sum(0);
    let layer_sums: Vec<BigInt> = (0..=n as usize)
        .map(|k| {
            (0..=k.min(rho_hat as usize)).map(|i| r.coeff(rho_hat as usize - i, k - i)).sum::<BigInt>()
        })
        .collect();
    let layers_match_gaussian = layer_sums.iter().enumerate().all(|(k, s)| *s == gaussian(n, k as u32, q));
    let top_row = r.matrix().get(rho_hat as usize);
    let zero_is_flat = top_row.is_some_and(|row| row[0] == one && row[1..].iter().all(|c| *c == zero));
    let last = (n - rho_hat) as usize;
    let full_is_open = r.coeff(0, last) == one && (1..=rho_hat as usize).all(|i| r.coeff(i, last).is_zero());
    WhitneyCounts {
        rho_hat,
        n,
        bases: r.coeff(0, 0),
        independents,
        spanning,
        layer_sums,
        layers_match_gaussian,
        zero_is_flat,
        full_is_open,
    }
}

fn binom2(m: usize) -> u32 {
    (m * m.saturating_sub(1) / 2) as u32
}

/// χ = Σ ν_{i,j} (−1)^{ρ̂+j−i} q^{C(ρ̂+j−i,2)} x^i.
pub fn char_poly(r: &BivariatePoly, q: u32) -> UnivariatePoly {
    let rho = r.deg_x().unwrap_or(0);
    let mut coeffs = vec![BigInt::zero(); rho + 1];
    for (i, j, c) in r.terms() {
        let d = rho + j - i;
        let mut t = c * qpow(q, binom2(d));
        if d % 2 == 1 {
            t = -t;
        }
        coeffs[i] += t;
    }
    UnivariatePoly::new(Var::X, coeffs)
}

fn check_cyclic_flat(a: &Analysis, z: u32) -> Result<(), Error> {
    if (z as usize) < a.universe().len() && a.is_cyclic_flat(z) {
        Ok(())
    } else {
        Err(Error::NotCyclicFlat)
    }
}

fn tally(var: Var, exps: impl Iterator<Item = usize>) -> UnivariatePoly {
    let mut c: Vec<BigInt> = Vec::new();
    for e in exps {
        if c.len() <= e {
            c.resize(e + 1, BigInt::zero());
        }
        c[e] += 1;
    }
    UnivariatePoly::new(var, c)
}

/// Σ over flats F ≥ Z with nullity(F) = nullity(Z) of x^{ρ̂−ρ(F)}.
pub fn cloud(a: &Analysis, z: u32) -> Result<UnivariatePoly, Error> {
    check_cyclic_flat(a, z)?;
    let t = a.table();
    let u = a.universe();
    let zs = u.get(z);
    let nz = t.nullity_id(z);
    let dz = u.dim_of(z);
    let members = (dz..=u.ambient().n()).flat_map(|d| u.dim_range(d)).filter(|&f| {
        a.is_flat(f) && t.nullity_id(f) == nz && u.get(f).contains_unchecked(zs)
    });
    Ok(tally(Var::X, members.map(|f| t.corank_id(f) as usize)))
}

/// Σ over V ≤ Z with ρ(V) = ρ(Z) of y^{dim V−ρ(Z)}.
pub fn flock(a: &Analysis, z: u32) -> Result<UnivariatePoly, Error> {
    check_cyclic_flat(a, z)?;
    let t = a.table();
    let u = a.universe();
    let zs = u.get(z);
    let rz = t.rank_id(z);
    let members = (rz..=u.dim_of(z))
        .flat_map(|d| u.dim_range(d))
        .filter(|&v| t.rank_id(v) == rz && zs.contains_unchecked(u.get(v)));
    Ok(tally(Var::Y, members.map(|v| (u.dim_of(v) - rz) as usize)))
}

/// Cloud from its definition: flats F with cyc(F) = Z.
pub fn cloud_by_preimage(a: &Analysis, z: u32) -> Result<UnivariatePoly, Error> {
    check_cyclic_flat(a, z)?;
    let t = a.table();
    let ids = (0..a.universe().len() as u32).filter(|&f| a.is_flat(f) && a.cyclic_core_id(f) == z);
    Ok(tally(Var::X, ids.map(|f| t.corank_id(f) as usize)))
}

/// Flock from its definition: V with cl(V) = Z.
pub fn flock_by_preimage(a: &Analysis, z: u32) -> Result<UnivariatePoly, Error> {
    check_cyclic_flat(a, z)?;
    let t = a.table();
    let ids = (0..a.universe().len() as u32).filter(|&v| a.closure_id(v) == z);
    Ok(tally(Var::Y, ids.map(|v| t.nullity_id(v) as usize)))
}

/// Σ over all V with cyc(V) = Z of x^{ρ̂−ρ(V)}.
pub fn supercloud(a: &Analysis, z: u32) -> Result<UnivariatePoly, Error> {
    check_cyclic_flat(a, z)?;
    let t = a.table();
    let ids = (0..a.universe().len() as u32).filter(|&v| a.cyclic_core_id(v) == z);
    Ok(tally(Var::X, ids.map(|v| t.corank_id(v) as usize)))
}

/// Σ over open V with cl(V) = Z of y^{dim V−ρ(V)}.
pub fn subflock(a: &Analysis, z: u32) -> Result<UnivariatePoly, Error> {
    check_cyclic_flat(a, z)?;
    let t = a.table();
    let ids = (0..a.universe().len() as u32).filter(|&v| a.is_open(v) && a.closure_id(v) == z);
    Ok(tally(Var::Y, ids.map(|v| t.nullity_id(v) as usize)))
}

/// f * g = Σ q^{(deg f−i)(deg g−j)} f_i g_j x^i y^j for f in x and g in y.
pub fn star_product(f: &UnivariatePoly, g: &UnivariatePoly, q: u32) -> BivariatePoly {
    let (Some(df), Some(dg)) = (f.degree(), g.degree()) else {
        return BivariatePoly::zero();
    };
    let rows = (0..=df)
        .map(|i| {
            (0..=dg)
                .map(|j| f.coeff(i) * g.coeff(j) * qpow(q, ((df - i) * (dg - j)) as u32))
                .collect()
        })
        .collect();
    BivariatePoly::from_matrix(rows)
}

/// Σ_Z c_Z * f_Z.
pub fn whitney_from_cf(pairs: &[CloudFlockPair], q: u32) -> BivariatePoly {
    let mut r = BivariatePoly::zero();
    for p in pairs {
        r.add_assign(&star_product(&p.cloud, &p.flock, q));
    }
    r
}

/// Terms with j < i, sent to x^{i−j}.
pub fn trunc_x(r: &BivariatePoly) -> UnivariatePoly {
    let mut c = Vec::new();
    for (i, j, v) in r.terms().filter(|(i, j, _)| j < i) {
        let e = i - j;
        if c.len() <= e {
            c.resize(e + 1, BigInt::zero());
        }
        c[e] += v;
    }
    UnivariatePoly::new(Var::X, c)
}

/// Terms with j ≥ i, sent to y^{j−i}.
pub fn trunc_y(r: &BivariatePoly) -> UnivariatePoly {
    let mut c = Vec::new();
    for (i, j, v) in r.terms().filter(|(i, j, _)| j >= i) {
        let e = j - i;
        if c.len() <= e {
            c.resize(e + 1, BigInt::zero());
        }
        c[e] += v;
    }
    UnivariatePoly::new(Var::Y, c)
}

/// c_{k,n} = δ_{k,n} + Σ_{j<k} [n j] x^{k−j}, the cloud of 0 in U_{k,n}.
pub fn uniform_cloud(k: u32, n: u32, q: u32) -> UnivariatePoly {
    let mut c = vec![BigInt::zero(); k as usize + 1];
    if k == n {
        c[0] += 1;
    }
    for j in 0..k {
        c[(k - j) as usize] += gaussian(n, j, q);
    }
    UnivariatePoly::new(Var::X, c)
}

/// f_{k,n} = Σ_{j≥k} [n j] y^{j−k}, the flock of E in U_{k,n}.
pub fn uniform_flock(k: u32, n: u32, q: u32) -> UnivariatePoly {
    UnivariatePoly::new(Var::Y, (k..=n).map(|j| gaussian(n, j, q)).collect())
}

/// Whitney function of U_{k,n}.
pub fn uniform_whitney(k: u32, n: u32, q: u32) -> BivariatePoly {
    let mut r = BivariatePoly::zero();
    for j in 0..=n {
        if j <= k {
            r.add_term((k - j) as usize, 0, gaussian(n, j, q));
        } else {
            r.add_term(0, (j - k) as usize, gaussian(n, j, q));
        }
    }
    r
}

/// Positions that are rightmost in their row and lowest in their column,
/// after checking that the nonzero entries are top-left aligned.
pub fn extremal_terms(r: &BivariatePoly) -> Result<Vec<(usize, usize, BigInt)>, Error> {
    let nz = |i: usize, j: usize| !r.coeff(i, j).is_zero();
    for (i, j, _) in r.terms() {
        if (0..j).any(|jj| !nz(i, jj)) || (0..i).any(|ii| !nz(ii, j)) {
            return Err(Error::NotWhitney(format!("entry ({}, {}) is not top-left aligned", i, j)));
        }
    }
    Ok(r.terms()
        .filter(|&(i, j, _)| !nz(i, j + 1) && !nz(i + 1, j))
        .map(|(i, j, c)| (i, j, c.clone()))
        .collect())
}

/// Σ_Z Σ_{F flat, cyc F = Z} Σ_{cl V = Z} q^{(dim F−dim Z)(dim Z−dim V)} x^{ρ̂−ρ(F)} y^{dim V−ρ(Z)},
/// evaluated by explicit enumeration of both preimages.
pub fn whitney_by_preimages(a: &Analysis, q: u32) -> BivariatePoly {
    let t = a.table();
    let u = a.universe();
    let len = u.len() as u32;
    let rho = t.rank_full() as usize;
    let n = u.ambient().n() as usize;
    let mut m = vec![vec![BigInt::zero(); n - rho + 1]; rho + 1];
    for &z in a.cyclic_flat_ids() {
        let dz = u.dim_of(z);
        let rz = t.rank_id(z);
        // flats grouped by (dim, corank), flock members by dim
        let mut flats = BTreeMap::<(u32, u32), u64>::new();
        let mut flock = BTreeMap::<u32, u64>::new();
        for id in 0..len {
            if a.is_flat(id) && a.cyclic_core_id(id) == z {
                *flats.entry((u.dim_of(id), t.corank_id(id))).or_default() += 1;
            }
            if a.closure_id(id) == z {
                *flock.entry(u.dim_of(id)).or_default() += 1;
            }
        }
        for (&(df, cf), &nf) in &flats {
            for (&dv, &nv) in &flock {
                let w = qpow(q, (df - dz) * (dz - dv)) * nf * nv;
                m[cf as usize][(dv - rz) as usize] += w;
            }
        }
    }
    BivariatePoly::from_matrix(m)
}

#[cfg(test)]
mod tests {
    use alloc::string::ToString;
    use super::*;
    use crate::matroid::QMatroid;
    use core::str::FromStr;

    #[test]
    fn star_examples() {
        let one_x = UnivariatePoly::one(Var::X);
        let one_y = UnivariatePoly::one(Var::Y);
        assert_eq!(star_product(&one_x, &one_y, 2), BivariatePoly::one());
        let c = UnivariatePoly::parse(Var::X, "x^2 + 12x").unwrap();
        let f = UnivariatePoly::parse(Var::Y, "y + 3").unwrap();
        assert_eq!(star_product(&c, &f, 2).to_string(), "(y + 3)x^2 + (12y + 72)x");
        let c = UnivariatePoly::parse(Var::X, "x").unwrap();
        let f = UnivariatePoly::parse(Var::Y, "y + 7").unwrap();
        assert_eq!(star_product(&c, &f, 2).to_string(), "(y + 7)x");
    }

    #[test]
    fn truncations() {
        let p = BivariatePoly::from_str("x^2y^3").unwrap();
        assert!(trunc_x(&p).is_zero());
        let p = BivariatePoly::from_str("x^3y").unwrap();
        assert_eq!(trunc_x(&p), UnivariatePoly::parse(Var::X, "x^2").unwrap());
    }

    #[test]
    fn uniform_whitney_and_pairs() {
        for n in 0..=5 {
            for k in 0..=n {
                let m = QMatroid::uniform(k, n, 2).unwrap();
                let r = whitney(&m.materialize().unwrap());
                assert_eq!(r, uniform_whitney(k, n, 2));
                if 0 < k && k < n {
                    let pairs = [
                        CloudFlockPair { cloud: uniform_cloud(k, n, 2), flock: UnivariatePoly::one(Var::Y) },
                        CloudFlockPair { cloud: UnivariatePoly::one(Var::X), flock: uniform_flock(k, n, 2) },
                    ];
                    assert_eq!(whitney_from_cf(&pairs, 2), r);
                    assert_eq!(trunc_x(&r), uniform_cloud(k, n, 2));
                    assert_eq!(trunc_y(&r), uniform_flock(k, n, 2));
                    assert_eq!(extremal_terms(&r).unwrap().len(), 2);
                }
                let counts = whitney_counts(&r, 2);
                assert_eq!(counts.bases, gaussian(n, k, 2));
                assert!(counts.layers_match_gaussian);
            }
        }
    }

    #[test]
    fn misaligned_matrix_rejected() {
        let p = BivariatePoly::from_str("x + y^2").unwrap();
        assert!(matches!(extremal_terms(&p), Err(Error::NotWhitney(_))));
    }

    #[test]
    fn not_cyclic_flat() {
        let a = Analysis::of(&QMatroid::uniform(1, 3, 2).unwrap()).unwrap();
        assert_eq!(cloud(&a, 1), Err(Error::NotCyclicFlat));
        assert_eq!(flock(&a, 1), Err(Error::NotCyclicFlat));
    }
}
