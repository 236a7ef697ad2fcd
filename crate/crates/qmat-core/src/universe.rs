//! The whole subspace lattice L(F_q^n) with dense ids, and rank tables over it.
//!
//! Ids follow the enumeration order: by dimension, then pivot profile in
//! lexicographic order, then the free entries read as a base-q number.
//! An id is computed arithmetically from the RREF rows, so lookups need
//! no hashing.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::subspace::{self, Ambient, Subspace};

#[derive(Debug)]
pub struct Universe {
    amb: Ambient,
    spaces: Vec<Subspace>,
    dim_start: Vec<u32>,
    // id of the first subspace with a given pivot mask (bit i = coordinate i)
    base: Vec<u32>,
}

impl Universe {
    /// Enumerates L(F_q^n); fails with a scale error above `max_n`.
    pub fn new(amb: Ambient, max_n: u32) -> Result<Arc<Universe>, Error> {
        if amb.n() > max_n {
            return Err(Error::Scale { n: amb.n(), limit: max_n });
        }
        let n = amb.n() as usize;
        let q = amb.q() as u64;
        let mut spaces = Vec::new();
        let mut dim_start = Vec::with_capacity(n + 2);
        let mut base = vec![0u32; 1 << n];
        for k in 0..=n {
            dim_start.push(spaces.len() as u32);
            for piv in subspace::profiles(n, k) {
                let mask = piv.iter().fold(0usize, |m, &p| m | (1 << p));
                base[mask] = spaces.len() as u32;
                let slots = subspace::free_slots(n, &piv);
                let count = q.pow(slots.len() as u32);
                if spaces.len() as u64 + count > u32::MAX as u64 {
                    return Err(Error::Scale { n: amb.n(), limit: max_n });
                }
                for val in 0..count {
                    let rows = subspace::profile_rows(amb, &piv, &slots, val);
                    spaces.push(Subspace::from_rref(amb, rows));
                }
            }
        }
        dim_start.push(spaces.len() as u32);
        Ok(Arc::new(Universe { amb, spaces, dim_start, base }))
    }

    pub fn ambient(&self) -> Ambient {
        self.amb
    }

    pub fn len(&self) -> usize {
        self.spaces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.spaces.is_empty()
    }

    pub fn get(&self, id: u32) -> &Subspace {
        &self.spaces[id as usize]
    }

    pub fn spaces(&self) -> &[Subspace] {
        &self.spaces
    }

    /// Ids of all subspaces of dimension k.
    pub fn dim_range(&self, k: u32) -> core::ops::Range<u32> {
        self.dim_start[k as usize]..self.dim_start[k as usize + 1]
    }

    pub fn dim_of(&self, id: u32) -> u32 {
        self.spaces[id as usize].dim()
    }

    pub fn zero_id(&self) -> u32 {
        0
    }

    pub fn full_id(&self) -> u32 {
        self.spaces.len() as u32 - 1
    }

    pub(crate) fn id_of_rows(&self, rows: &[u64]) -> u32 {
        let amb = self.amb;
        let n = amb.n() as usize;
        let q = amb.q() as u64;
        let mut mask = 0usize;
        for &r in rows {
            mask |= 1 << amb.lead(r).expect("nonzero row");
        }
        let mut val = 0u64;
        for &r in rows {
            let p = amb.lead(r).expect("nonzero row");
            for c in p + 1..n {
                if mask & (1 << c) == 0 {
                    val = val * q + amb.get(r, c) as u64;
                }
            }
        }
        self.base[mask] + val as u32
    }

    pub fn id(&self, v: &Subspace) -> Result<u32, Error> {
        if v.ambient() != self.amb {
            return Err(Error::Shape(format!(
                "subspace of F_{}^{} looked up in F_{}^{}",
                v.ambient().q(),
                v.n(),
                self.amb.q(),
                self.amb.n()
            )));
        }
        Ok(self.id_of_rows(v.rows()))
    }

    /// Calls `f(cover_id, x)` for every W ⋗ V, where W = V + <x>.
    pub fn for_each_cover(&self, id: u32, mut f: impl FnMut(u32, u64)) {
        let v = &self.spaces[id as usize];
        let mut buf = Vec::with_capacity(v.dim() as usize + 1);
        subspace::for_each_cover_vector(v, |x| {
            subspace::cover_rows(v, x, &mut buf);
            f(self.id_of_rows(&buf), x);
        });
    }

    /// Calls `f(hyperplane_id, a)` for every hyperplane of V, `a` being the
    /// functional in coordinates of V's basis that cuts it out.
    pub fn for_each_hyperplane(&self, id: u32, mut f: impl FnMut(u32, u64)) {
        let v = &self.spaces[id as usize];
        subspace::for_each_hyperplane_rows(v, |rows, a| f(self.id_of_rows(rows), a));
    }
}

/// Ranks of every subspace of a universe.
#[derive(Debug, Clone)]
pub struct RankTable {
    universe: Arc<Universe>,
    ranks: Vec<u8>,
}

impl PartialEq for RankTable {
    fn eq(&self, other: &Self) -> bool {
        self.universe.ambient() == other.universe.ambient() && self.ranks == other.ranks
    }
}

impl Eq for RankTable {}

impl RankTable {
    pub fn new(universe: Arc<Universe>, ranks: Vec<u8>) -> Result<Self, Error> {
        if ranks.len() != universe.len() {
            return Err(Error::Shape(format!("{} ranks for {} subspaces", ranks.len(), universe.len())));
        }
        Ok(RankTable { universe, ranks })
    }

    pub fn from_fn(universe: Arc<Universe>, mut f: impl FnMut(&Subspace) -> u32) -> Self {
        let ranks = universe.spaces().iter().map(|v| f(v) as u8).collect();
        RankTable { universe, ranks }
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn ambient(&self) -> Ambient {
        self.universe.ambient()
    }

    pub fn ranks(&self) -> &[u8] {
        &self.ranks
    }

    #[inline]
    pub fn rank_id(&self, id: u32) -> u32 {
        self.ranks[id as usize] as u32
    }

    pub fn rank(&self, v: &Subspace) -> Result<u32, Error> {
        Ok(self.rank_id(self.universe.id(v)?))
    }

    /// ρ(E).
    pub fn rank_full(&self) -> u32 {
        self.rank_id(self.universe.full_id())
    }

    pub fn nullity_id(&self, id: u32) -> u32 {
        self.universe.dim_of(id) - self.rank_id(id)
    }

    pub fn corank_id(&self, id: u32) -> u32 {
        self.rank_full() - self.rank_id(id)
    }

    /// A copy with some ranks replaced.
    pub fn with_overrides(&self, changes: &[(Subspace, u32)]) -> Result<Self, Error> {
        let mut ranks = self.ranks.clone();
        for (v, r) in changes {
            ranks[self.universe.id(v)? as usize] = *r as u8;
        }
        Ok(RankTable { universe: self.universe.clone(), ranks })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauss::gaussian_u128;

    #[test]
    fn ids_are_dense_and_consistent() {
        for (q, n) in [(2u32, 5u32), (3, 3), (5, 2), (2, 0)] {
            let amb = Ambient::new(q, n).unwrap();
            let u = Universe::new(amb, 8).unwrap();
            for (i, v) in u.spaces().iter().enumerate() {
                assert_eq!(u.id(v).unwrap(), i as u32);
            }
            let total: u128 = (0..=n).map(|k| gaussian_u128(n, k, q)).sum();
            assert_eq!(u.len() as u128, total);
            for k in 0..=n {
                assert_eq!(u.dim_range(k).len() as u128, gaussian_u128(n, k, q));
            }
        }
    }

    #[test]
    fn covers_and_hyperplanes_are_inverse() {
        let amb = Ambient::new(3, 3).unwrap();
        let u = Universe::new(amb, 8).unwrap();
        let mut up = 0usize;
        let mut down = 0usize;
        for id in 0..u.len() as u32 {
            u.for_each_cover(id, |c, _| {
                up += 1;
                assert!(u.get(c).contains(u.get(id)).unwrap());
                assert_eq!(u.dim_of(c), u.dim_of(id) + 1);
            });
            u.for_each_hyperplane(id, |h, _| {
                down += 1;
                assert!(u.get(id).contains(u.get(h)).unwrap());
            });
        }
        assert_eq!(up, down);
    }

    #[test]
    fn scale_limit() {
        let amb = Ambient::new(2, 9).unwrap();
        assert_eq!(Universe::new(amb, 8).err(), Some(Error::Scale { n: 9, limit: 8 }));
    }
}
