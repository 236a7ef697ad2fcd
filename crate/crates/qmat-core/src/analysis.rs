//! Closure, cyclic core and the derived collections over a full rank table.

use alloc::vec::Vec;

use crate::error::Error;
use crate::matroid::QMatroid;
use crate::subspace::{Echelon, Subspace};
use crate::universe::{RankTable, Universe};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Collection {
    Flats,
    Opens,
    CyclicFlats,
    Independents,
    Circuits,
    Bases,
    Spanning,
}

/// A rank table with cl and cyc precomputed for every subspace.
#[derive(Debug, Clone)]
pub struct Analysis {
    table: RankTable,
    cl: Vec<u32>,
    cyc: Vec<u32>,
    cyclic: Vec<u32>,
}

impl Analysis {
    pub fn new(table: &RankTable) -> Self {
        let u = table.universe().clone();
        let amb = u.ambient();
        let len = u.len();
        let mut cl = Vec::with_capacity(len);
        let mut cyc = Vec::with_capacity(len);
        let mut same = Vec::new();
        let mut deficient = Vec::new();
        for id in 0..len as u32 {
            let r = table.rank_id(id);
            same.clear();
            u.for_each_cover(id, |c, x| {
                if table.rank_id(c) == r {
                    same.push(x);
                }
            });
            cl.push(if same.is_empty() {
                id
            } else {
                let mut e = Echelon::from_subspace(u.get(id));
                for &x in &same {
                    e.insert(x);
                }
                u.id(&e.into_subspace()).expect("same ambient")
            });
            deficient.clear();
            u.for_each_hyperplane(id, |h, a| {
                if table.rank_id(h) < r {
                    deficient.push(a);
                }
            });
            cyc.push(if deficient.is_empty() {
                id
            } else {
                let v = u.get(id);
                let local = amb.with_dim(v.dim());
                let kernel = Subspace::span(local, deficient.iter().copied()).perp();
                let core = Subspace::span(amb, kernel.rows().iter().map(|&c| v.combine(c)));
                u.id(&core).expect("same ambient")
            });
        }
        let cyclic = (0..len as u32).filter(|&i| cl[i as usize] == i && cyc[i as usize] == i).collect();
        Analysis { table: table.clone(), cl, cyc, cyclic }
    }

    /// Materializes `m` (n ≤ 8) and analyzes it.
    pub fn of(m: &QMatroid) -> Result<Self, Error> {
        Ok(Analysis::new(&m.materialize()?))
    }

    pub fn table(&self) -> &RankTable {
        &self.table
    }

    pub fn universe(&self) -> &Universe {
        self.table.universe()
    }

    pub fn space(&self, id: u32) -> &Subspace {
        self.universe().get(id)
    }

    pub fn id(&self, v: &Subspace) -> Result<u32, Error> {
        self.universe().id(v)
    }

    pub fn rank_full(&self) -> u32 {
        self.table.rank_full()
    }

    pub fn closure_id(&self, id: u32) -> u32 {
        self.cl[id as usize]
    }

    pub fn cyclic_core_id(&self, id: u32) -> u32 {
        self.cyc[id as usize]
    }

    pub fn closure(&self, v: &Subspace) -> Result<&Subspace, Error> {
        Ok(self.space(self.closure_id(self.id(v)?)))
    }

    pub fn cyclic_core(&self, v: &Subspace) -> Result<&Subspace, Error> {
        Ok(self.space(self.cyclic_core_id(self.id(v)?)))
    }

    pub fn is_flat(&self, id: u32) -> bool {
        self.cl[id as usize] == id
    }

    pub fn is_open(&self, id: u32) -> bool {
        self.cyc[id as usize] == id
    }

    /// Ids of Z(M) in universe order.
    pub fn cyclic_flat_ids(&self) -> &[u32] {
        &self.cyclic
    }

    pub fn is_cyclic_flat(&self, id: u32) -> bool {
        self.is_flat(id) && self.is_open(id)
    }

    pub fn is_full(&self) -> bool {
        let u = self.universe();
        self.is_cyclic_flat(u.zero_id()) && self.is_cyclic_flat(u.full_id())
    }

    /// Ids in the requested collection, in universe order.
    pub fn collection_ids(&self, which: Collection) -> Vec<u32> {
        let u = self.universe();
        let t = &self.table;
        let all = 0..u.len() as u32;
        let rho = t.rank_full();
        match which {
            Collection::Flats => all.filter(|&i| self.is_flat(i)).collect(),
            Collection::Opens => all.filter(|&i| self.is_open(i)).collect(),
            Collection::CyclicFlats => self.cyclic.clone(),
            Collection::Independents => all.filter(|&i| t.rank_id(i) == u.dim_of(i)).collect(),
            Collection::Bases => all.filter(|&i| t.rank_id(i) == u.dim_of(i) && u.dim_of(i) == rho).collect(),
            Collection::Spanning => all.filter(|&i| t.rank_id(i) == rho).collect(),
            Collection::Circuits => all
                .filter(|&i| {
                    if t.rank_id(i) == u.dim_of(i) {
                        return false;
                    }
                    let mut minimal = true;
                    u.for_each_hyperplane(i, |h, _| minimal &= t.rank_id(h) == u.dim_of(h));
                    minimal
                })
                .collect(),
        }
    }

    pub fn collection(&self, which: Collection) -> Vec<Subspace> {
        self.collection_ids(which).into_iter().map(|i| self.space(i).clone()).collect()
    }

    pub fn cyclic_flats(&self) -> Vec<Subspace> {
        self.collection(Collection::CyclicFlats)
    }

    /// cyc(V ∩ W) for cyclic flats, the meet in Z(M).
    pub fn meet_id(&self, a: u32, b: u32) -> u32 {
        let m = self.space(a).sum_and_intersection(self.space(b)).1;
        self.cyclic_core_id(self.universe().id_of_rows(m.rows()))
    }

    /// cl(V + W), the join in Z(M).
    pub fn join_id(&self, a: u32, b: u32) -> u32 {
        let s = self.space(a).sum_unchecked(self.space(b));
        self.closure_id(self.universe().id_of_rows(s.rows()))
    }
}
