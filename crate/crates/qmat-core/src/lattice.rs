//! Finite labeled lattices: the cyclic-flat lattice, configurations and
//! cloud-flock lattices.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::analysis::Analysis;
use crate::condense;
use crate::error::Error;
use crate::invariants::{cloud, flock, CloudFlockPair};
use crate::poly::{UnivariatePoly, Var};
use crate::subspace::Subspace;
use crate::transforms::{free_cloud, trivial_flock};

/// A finite lattice on nodes 0..len with a label on each node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledLattice<L> {
    labels: Vec<L>,
    leq: Vec<bool>,
    meet: Vec<u32>,
    join: Vec<u32>,
    bottom: usize,
    top: usize,
}

/// Corank and nullity of a cyclic flat.
pub type ConfigLabel = (u32, u32);

pub type Configuration = LabeledLattice<ConfigLabel>;
pub type CloudFlockLattice = LabeledLattice<CloudFlockPair>;

fn greatest(n: usize, leq: &[bool], cands: &[usize]) -> Option<usize> {
    cands.iter().copied().find(|&c| cands.iter().all(|&d| leq[d * n + c]))
}

impl<L> LabeledLattice<L> {
    /// Builds from an order relation, checking that it is a partial order
    /// with all binary meets and joins.
    pub fn from_order(labels: Vec<L>, leq: impl Fn(usize, usize) -> bool) -> Result<Self, Error> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::Lattice("no nodes".into()));
        }
        let mut rel = vec![false; n * n];
        for a in 0..n {
            for b in 0..n {
                rel[a * n + b] = leq(a, b);
            }
        }
        Self::from_relation(labels, rel)
    }

    /// Builds from cover pairs (lower, upper) by reflexive-transitive closure.
    pub fn from_covers(labels: Vec<L>, covers: &[(usize, usize)]) -> Result<Self, Error> {
        let n = labels.len();
        let mut rel = vec![false; n * n];
        for a in 0..n {
            rel[a * n + a] = true;
        }
        for &(a, b) in covers {
            if a >= n || b >= n {
                return Err(Error::Lattice(format!("cover ({}, {}) out of range", a, b)));
            }
            rel[a * n + b] = true;
        }
        for k in 0..n {
            for a in 0..n {
                if rel[a * n + k] {
                    for b in 0..n {
                        if rel[k * n + b] {
                            rel[a * n + b] = true;
                        }
                    }
                }
            }
        }
        Self::from_relation(labels, rel)
    }

    fn from_relation(labels: Vec<L>, rel: Vec<bool>) -> Result<Self, Error> {
        let n = labels.len();
        for a in 0..n {
            if !rel[a * n + a] {
                return Err(Error::Lattice(format!("node {} is not below itself", a)));
            }
            for b in 0..n {
                if a != b && rel[a * n + b] && rel[b * n + a] {
                    return Err(Error::Lattice(format!("nodes {} and {} are mutually below", a, b)));
                }
                if rel[a * n + b] && (0..n).any(|c| rel[b * n + c] && !rel[a * n + c]) {
                    return Err(Error::Lattice("relation is not transitive".into()));
                }
            }
        }
        let mut meet = vec![0u32; n * n];
        let mut join = vec![0u32; n * n];
        let mut below = Vec::new();
        let mut above = Vec::new();
        let mut rev = vec![false; n * n];
        for a in 0..n {
            for b in 0..n {
                rev[a * n + b] = rel[b * n + a];
            }
        }
        for a in 0..n {
            for b in a..n {
                below.clear();
                above.clear();
                for c in 0..n {
                    if rel[c * n + a] && rel[c * n + b] {
                        below.push(c);
                    }
                    if rel[a * n + c] && rel[b * n + c] {
                        above.push(c);
                    }
                }
                let m = greatest(n, &rel, &below).ok_or_else(|| Error::Lattice(format!("nodes {} and {} have no meet", a, b)))?;
                let j = greatest(n, &rev, &above).ok_or_else(|| Error::Lattice(format!("nodes {} and {} have no join", a, b)))?;
                meet[a * n + b] = m as u32;
                meet[b * n + a] = m as u32;
                join[a * n + b] = j as u32;
                join[b * n + a] = j as u32;
            }
        }
        let bottom = (0..n).find(|&b| (0..n).all(|c| rel[b * n + c])).ok_or_else(|| Error::Lattice("no bottom".into()))?;
        let top = (0..n).find(|&t| (0..n).all(|c| rel[c * n + t])).ok_or_else(|| Error::Lattice("no top".into()))?;
        Ok(LabeledLattice { labels, leq: rel, meet, join, bottom, top })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.len() + b]
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.len() + b] as usize
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.len() + b] as usize
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn label(&self, a: usize) -> &L {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[L] {
        &self.labels
    }

    /// Cover pairs (a, b) with a ⋖ b.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if self.lt(a, b) && !(0..n).any(|c| self.lt(a, c) && self.lt(c, b)) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Nodes c with lo ≤ c ≤ hi.
    pub fn interval(&self, lo: usize, hi: usize) -> Vec<usize> {
        (0..self.len()).filter(|&c| self.leq(lo, c) && self.leq(c, hi)).collect()
    }

    pub fn map_labels<M>(&self, f: impl FnMut(&L) -> M) -> LabeledLattice<M> {
        LabeledLattice {
            labels: self.labels.iter().map(f).collect(),
            leq: self.leq.clone(),
            meet: self.meet.clone(),
            join: self.join.clone(),
            bottom: self.bottom,
            top: self.top,
        }
    }

    /// Same nodes with the order reversed.
    pub fn reversed(&self) -> Self
    where
        L: Clone,
    {
        let n = self.len();
        let mut leq = vec![false; n * n];
        for a in 0..n {
            for b in 0..n {
                leq[a * n + b] = self.leq(b, a);
            }
        }
        LabeledLattice {
            labels: self.labels.clone(),
            leq,
            meet: self.join.clone(),
            join: self.meet.clone(),
            bottom: self.top,
            top: self.bottom,
        }
    }

    /// Checks commutativity, associativity and absorption of the tables.
    pub fn check_laws(&self) -> Result<(), Error> {
        let n = self.len();
        for a in 0..n {
            for b in 0..n {
                if self.meet(a, b) != self.meet(b, a) || self.join(a, b) != self.join(b, a) {
                    return Err(Error::Lattice("operations are not commutative".into()));
                }
                if self.meet(a, self.join(a, b)) != a || self.join(a, self.meet(a, b)) != a {
                    return Err(Error::Lattice("absorption fails".into()));
                }
                for c in 0..n {
                    if self.meet(a, self.meet(b, c)) != self.meet(self.meet(a, b), c)
                        || self.join(a, self.join(b, c)) != self.join(self.join(a, b), c)
                    {
                        return Err(Error::Lattice("operations are not associative".into()));
                    }
                }
            }
        }
        Ok(())
    }

    /// A label- and order-preserving bijection onto `other`, if one exists.
    pub fn isomorphism<M>(&self, other: &LabeledLattice<M>) -> Option<Vec<usize>>
    where
        L: PartialEq<M>,
    {
        let n = self.len();
        if n != other.len() {
            return None;
        }
        let sig = |below: usize, above: usize| (below, above);
        let s1: Vec<_> = (0..n)
            .map(|a| sig((0..n).filter(|&c| self.leq(c, a)).count(), (0..n).filter(|&c| self.leq(a, c)).count()))
            .collect();
        let s2: Vec<_> = (0..n)
            .map(|a| sig((0..n).filter(|&c| other.leq(c, a)).count(), (0..n).filter(|&c| other.leq(a, c)).count()))
            .collect();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&a| s1[a]);
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        fn go<L: PartialEq<M>, M>(
            k: usize,
            order: &[usize],
            a: &LabeledLattice<L>,
            b: &LabeledLattice<M>,
            s1: &[(usize, usize)],
            s2: &[(usize, usize)],
            map: &mut [usize],
            used: &mut [bool],
        ) -> bool {
            if k == order.len() {
                return true;
            }
            let x = order[k];
            for y in 0..b.len() {
                if used[y] || s1[x] != s2[y] || a.label(x) != b.label(y) {
                    continue;
                }
                let ok = order[..k].iter().all(|&p| a.leq(p, x) == b.leq(map[p], y) && a.leq(x, p) == b.leq(y, map[p]));
                if !ok {
                    continue;
                }
                map[x] = y;
                used[y] = true;
                if go(k + 1, order, a, b, s1, s2, map, used) {
                    return true;
                }
                used[y] = false;
                map[x] = usize::MAX;
            }
            false
        }
        go(0, &order, self, other, &s1, &s2, &mut map, &mut used).then_some(map)
    }

    pub fn is_isomorphic<M>(&self, other: &LabeledLattice<M>) -> bool
    where
        L: PartialEq<M>,
    {
        self.isomorphism(other).is_some()
    }
}

/// Z(M) ordered by inclusion, with meet cyc(A ∩ B) and join cl(A + B).
/// Node i is the i-th cyclic flat in universe order.
pub fn cyclic_flat_lattice(a: &Analysis) -> Result<LabeledLattice<Subspace>, Error> {
    let ids = a.cyclic_flat_ids();
    let spaces: Vec<Subspace> = ids.iter().map(|&i| a.space(i).clone()).collect();
    let l = LabeledLattice::from_order(spaces.clone(), |x, y| spaces[y].contains_unchecked(&spaces[x]))?;
    for x in 0..ids.len() {
        for y in 0..ids.len() {
            if ids[l.meet(x, y)] != a.meet_id(ids[x], ids[y]) || ids[l.join(x, y)] != a.join_id(ids[x], ids[y]) {
                return Err(Error::Lattice(format!("lattice operations disagree on {} and {}", spaces[x], spaces[y])));
            }
        }
    }
    Ok(l)
}

pub fn config(a: &Analysis) -> Result<Configuration, Error> {
    let t = a.table();
    let ids = a.cyclic_flat_ids().to_vec();
    Ok(cyclic_flat_lattice(a)?.map_labels(|_| ()).relabel(|i| (t.corank_id(ids[i]), t.nullity_id(ids[i]))))
}

pub fn cf_lattice(a: &Analysis) -> Result<CloudFlockLattice, Error> {
    let ids = a.cyclic_flat_ids().to_vec();
    let l = cyclic_flat_lattice(a)?;
    let pairs = ids
        .iter()
        .map(|&z| Ok(CloudFlockPair { cloud: cloud(a, z)?, flock: flock(a, z)? }))
        .collect::<Result<Vec<_>, Error>>()?;
    Ok(l.map_labels(|_| ()).relabel(|i| pairs[i].clone()))
}

impl LabeledLattice<()> {
    fn relabel<M>(&self, mut f: impl FnMut(usize) -> M) -> LabeledLattice<M> {
        let mut i = 0;
        self.map_labels(|_| {
            let m = f(i);
            i += 1;
            m
        })
    }
}

/// Checks the label shape of a configuration and returns
/// (ρ̂, n, n_free, n_trivial).
pub fn config_parameters(c: &Configuration) -> Result<(u32, u32, u32, u32), Error> {
    let (rho_hat, n_trivial) = *c.label(c.bottom());
    let (n_free, top_nullity) = *c.label(c.top());
    let n = rho_hat + top_nullity;
    for x in 0..c.len() {
        let (a, b) = *c.label(x);
        if a < n_free || b < n_trivial || a > rho_hat || b > top_nullity {
            return Err(Error::Label(format!("label ({}, {}) lies outside the bottom and top labels", a, b)));
        }
        for y in 0..c.len() {
            if c.lt(x, y) {
                let (a2, b2) = *c.label(y);
                if !(a2 < a && b2 > b) {
                    return Err(Error::Label(format!("labels ({}, {}) < ({}, {}) are not strictly monotone", a, b, a2, b2)));
                }
            }
        }
    }
    if c.len() > 1 && (rho_hat == n_free || top_nullity == n_trivial) {
        return Err(Error::Label("reduced matroid would be free or trivial".into()));
    }
    Ok((rho_hat, n, n_free, n_trivial))
}

/// Recovers the cloud-flock lattice from the configuration.
pub fn cf_from_config(c: &Configuration, q: u32) -> Result<CloudFlockLattice, Error> {
    let (rho_hat, n, n_free, n_trivial) = config_parameters(c)?;
    let rho1 = rho_hat - n_free;
    let n1 = n - n_free - n_trivial;
    let blocks: Vec<Vec<usize>> = (0..c.len()).map(|i| vec![i]).collect();
    let cc = condense::condensed_config(c, &blocks)?;
    let state = condense::cf_recursion(&cc, q)?;
    let (bot, top) = (cc.bottom(), cc.top());
    let pairs = (0..c.len())
        .map(|i| {
            let (a, b) = *c.label(i);
            let r = rho1 - (a - n_free);
            let d = r + (b - n_trivial);
            let cl = state.cloud(i, top).clone();
            let fl = state.flock(bot, i).clone();
            let fl = trivial_flock(&fl, n1, n_trivial, r, d, q)?;
            let cl = free_cloud(&cl, n1 + n_trivial, rho1, n_free, r, d + n_trivial, q)?;
            Ok(CloudFlockPair { cloud: cl, flock: fl })
        })
        .collect::<Result<Vec<_>, Error>>()?;
    Ok(c.map_labels(|_| ()).relabel(|i| pairs[i].clone()))
}

/// Configuration of M*: reversed order, labels swapped.
pub fn config_dual(c: &Configuration) -> Configuration {
    c.reversed().map_labels(|&(a, b)| (b, a))
}

pub fn cf_dual(cf: &CloudFlockLattice, q: u32) -> Result<CloudFlockLattice, Error> {
    cf_from_config(&config_dual(&cf.map_labels(CloudFlockPair::degrees)), q)
}

/// Product order with summed labels. Node (i, j) has index i·|C2| + j.
pub fn config_direct_sum(c1: &Configuration, c2: &Configuration) -> Result<Configuration, Error> {
    let m = c2.len();
    let labels = (0..c1.len() * m)
        .map(|k| {
            let (a1, b1) = *c1.label(k / m);
            let (a2, b2) = *c2.label(k % m);
            (a1 + a2, b1 + b2)
        })
        .collect();
    LabeledLattice::from_order(labels, |x, y| c1.leq(x / m, y / m) && c2.leq(x % m, y % m))
}

/// One line per node followed by the cover relations.
pub fn describe<L>(l: &LabeledLattice<L>, mut label: impl FnMut(&L) -> String) -> String {
    let mut s = String::new();
    for i in 0..l.len() {
        s.push_str(&format!("{}: {}\n", i, label(l.label(i))));
    }
    for (a, b) in l.covers() {
        s.push_str(&format!("{} < {}\n", a, b));
    }
    s
}

/// Cloud and flock labels in the constant-polynomial case.
pub fn trivial_pair() -> CloudFlockPair {
    CloudFlockPair { cloud: UnivariatePoly::one(Var::X), flock: UnivariatePoly::one(Var::Y) }
}
