//! Condensations of a configuration, the condensed recursion for clouds and
//! flocks, and the Whitney function of a condensed configuration.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::analysis::Analysis;
use crate::error::Error;
use crate::invariants::{star_product, trunc_x, trunc_y, uniform_cloud, uniform_flock};
use crate::lattice::{ConfigLabel, Configuration};
use crate::poly::{BivariatePoly, UnivariatePoly, Var};
use crate::transforms::{free_whitney, trivial_whitney};

/// Why a partition is not a condensation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CondensationViolation {
    /// Some node is missing, repeated or out of range, or a block is empty.
    NotPartition,
    /// Two nodes of one block carry different labels.
    MixedLabels { block: usize, z1: usize, z2: usize },
    /// |{Z ∈ B : Z ≤ Z'}| differs for z1 and z2 in block `upper`.
    UnevenCount { lower: usize, upper: usize, z1: usize, z2: usize },
    /// Γ > 0 does not define a partial order on the blocks.
    NotPoset,
}

impl core::fmt::Display for CondensationViolation {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            CondensationViolation::NotPartition => write!(f, "blocks do not partition the nodes"),
            CondensationViolation::MixedLabels { block, z1, z2 } => {
                write!(f, "block {} mixes the labels of nodes {} and {}", block, z1, z2)
            }
            CondensationViolation::UnevenCount { lower, upper, z1, z2 } => write!(
                f,
                "nodes {} and {} of block {} lie above different numbers of nodes of block {}",
                z1, z2, upper, lower
            ),
            CondensationViolation::NotPoset => write!(f, "block relation is not a partial order"),
        }
    }
}

/// A condensed configuration (Γ, Λ), with the blocks it came from if known.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Condensation {
    blocks: Vec<Vec<usize>>,
    gamma: Vec<Vec<u64>>,
    lambda: Vec<ConfigLabel>,
    bottom: usize,
    top: usize,
}

impl Condensation {
    /// Builds from Γ and Λ alone, checking that Γ > 0 is a partial order
    /// with a least and a greatest block.
    pub fn new(gamma: Vec<Vec<u64>>, lambda: Vec<ConfigLabel>) -> Result<Self, Error> {
        Self::with_blocks(Vec::new(), gamma, lambda)
    }

    fn with_blocks(blocks: Vec<Vec<usize>>, gamma: Vec<Vec<u64>>, lambda: Vec<ConfigLabel>) -> Result<Self, Error> {
        let t = lambda.len();
        if t == 0 || gamma.len() != t || gamma.iter().any(|r| r.len() != t) {
            return Err(Error::Shape(format!("Γ must be {0}×{0} for {0} labels", t)));
        }
        let le = |a: usize, b: usize| gamma[a][b] > 0;
        for a in 0..t {
            if !le(a, a) {
                return Err(Error::Order(format!("block {} is not below itself", a)));
            }
            for b in 0..t {
                if a != b && le(a, b) && le(b, a) {
                    return Err(Error::Order(format!("blocks {} and {} are mutually below", a, b)));
                }
                for c in 0..t {
                    if le(a, b) && le(b, c) && !le(a, c) {
                        return Err(Error::Order(format!("blocks {} ≤ {} ≤ {} but not {} ≤ {}", a, b, c, a, c)));
                    }
                }
            }
        }
        let bottom = (0..t).find(|&b| (0..t).all(|c| le(b, c))).ok_or_else(|| Error::Order("no least block".into()))?;
        let top = (0..t).find(|&b| (0..t).all(|c| le(c, b))).ok_or_else(|| Error::Order("no greatest block".into()))?;
        Ok(Condensation { blocks, gamma, lambda, bottom, top })
    }

    pub fn len(&self) -> usize {
        self.lambda.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lambda.is_empty()
    }

    /// Node lists of the blocks; empty when built from Γ and Λ alone.
    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn gamma(&self) -> &[Vec<u64>] {
        &self.gamma
    }

    pub fn lambda(&self) -> &[ConfigLabel] {
        &self.lambda
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.gamma[a][b] > 0
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }
}

/// Checks the two defining conditions and the block order.
pub fn is_condensation(l: &Configuration, blocks: &[Vec<usize>]) -> Result<(), CondensationViolation> {
    let n = l.len();
    let mut seen = vec![false; n];
    for b in blocks {
        if b.is_empty() {
            return Err(CondensationViolation::NotPartition);
        }
        for &z in b {
            if z >= n || seen[z] {
                return Err(CondensationViolation::NotPartition);
            }
            seen[z] = true;
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(CondensationViolation::NotPartition);
    }
    for (i, b) in blocks.iter().enumerate() {
        if let Some(&z2) = b.iter().find(|&&z| l.label(z) != l.label(b[0])) {
            return Err(CondensationViolation::MixedLabels { block: i, z1: b[0], z2 });
        }
    }
    for (i, lower) in blocks.iter().enumerate() {
        for (j, upper) in blocks.iter().enumerate() {
            let count = |zp: usize| lower.iter().filter(|&&z| l.leq(z, zp)).count();
            let first = count(upper[0]);
            if let Some(&z2) = upper.iter().find(|&&zp| count(zp) != first) {
                return Err(CondensationViolation::UnevenCount { lower: i, upper: j, z1: upper[0], z2 });
            }
        }
    }
    let gamma = gamma_of(l, blocks);
    let lambda = blocks.iter().map(|b| *l.label(b[0])).collect();
    Condensation::with_blocks(Vec::new(), gamma, lambda).map_err(|_| CondensationViolation::NotPoset)?;
    Ok(())
}

fn gamma_of(l: &Configuration, blocks: &[Vec<usize>]) -> Vec<Vec<u64>> {
    blocks
        .iter()
        .map(|lower| blocks.iter().map(|upper| lower.iter().filter(|&&z| l.leq(z, upper[0])).count() as u64).collect())
        .collect()
}

/// Γ and Λ of a valid partition.
pub fn condensed_config(l: &Configuration, blocks: &[Vec<usize>]) -> Result<Condensation, Error> {
    is_condensation(l, blocks).map_err(|v| Error::Condensation(format!("{}", v)))?;
    let gamma = gamma_of(l, blocks);
    let lambda = blocks.iter().map(|b| *l.label(b[0])).collect();
    Condensation::with_blocks(blocks.to_vec(), gamma, lambda)
}

/// Refines the label classes until every count |{Z ∈ B : Z ≤ Z'}| is
/// constant on each block. Blocks are ordered by their least node.
pub fn coarsest_condensation(l: &Configuration) -> Condensation {
    let n = l.len();
    let mut class: Vec<usize> = {
        let mut ids = BTreeMap::new();
        (0..n).map(|z| {
            let k = ids.len();
            *ids.entry(*l.label(z)).or_insert(k)
        })
        .collect()
    };
    loop {
        let k = class.iter().max().map_or(0, |m| m + 1);
        let mut ids = BTreeMap::new();
        let next: Vec<usize> = (0..n)
            .map(|zp| {
                let mut counts = vec![0usize; k];
                for z in 0..n {
                    if l.leq(z, zp) {
                        counts[class[z]] += 1;
                    }
                }
                let m = ids.len();
                *ids.entry((class[zp], counts)).or_insert(m)
            })
            .collect();
        let stable = ids.len() == k;
        class = next;
        if stable {
            break;
        }
    }
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut index = BTreeMap::new();
    for z in 0..n {
        let b = *index.entry(class[z]).or_insert_with(|| {
            blocks.push(Vec::new());
            blocks.len() - 1
        });
        blocks[b].push(z);
    }
    condensed_config(l, &blocks).expect("refinement fixed point is a condensation")
}

/// c_P, f_P and S for every comparable pair of blocks.
#[derive(Debug, Clone)]
pub struct RecursionState {
    t: usize,
    c: Vec<Option<UnivariatePoly>>,
    f: Vec<Option<UnivariatePoly>>,
    s: Vec<Option<BivariatePoly>>,
}

impl RecursionState {
    /// c_P(B, B'); panics unless B ≤ B'.
    pub fn cloud(&self, b: usize, b2: usize) -> &UnivariatePoly {
        self.c[b * self.t + b2].as_ref().expect("comparable blocks")
    }

    pub fn flock(&self, b: usize, b2: usize) -> &UnivariatePoly {
        self.f[b * self.t + b2].as_ref().expect("comparable blocks")
    }

    pub fn sum(&self, b: usize, b2: usize) -> &BivariatePoly {
        self.s[b * self.t + b2].as_ref().expect("comparable blocks")
    }

    pub fn get_cloud(&self, b: usize, b2: usize) -> Option<&UnivariatePoly> {
        self.c.get(b * self.t + b2)?.as_ref()
    }

    pub fn get_flock(&self, b: usize, b2: usize) -> Option<&UnivariatePoly> {
        self.f.get(b * self.t + b2)?.as_ref()
    }
}

/// Runs the recursion bottom-up by interval size.
pub fn cf_recursion(cc: &Condensation, q: u32) -> Result<RecursionState, Error> {
    let t = cc.len();
    let mut pairs: Vec<(usize, usize, usize)> = Vec::new();
    for b in 0..t {
        for b2 in 0..t {
            if cc.leq(b, b2) {
                let size = (0..t).filter(|&d| cc.leq(b, d) && cc.leq(d, b2)).count();
                pairs.push((size, b, b2));
            }
        }
    }
    pairs.sort_unstable();
    let mut st = RecursionState { t, c: vec![None; t * t], f: vec![None; t * t], s: vec![None; t * t] };
    for (_, b, b2) in pairs {
        let k = b * t + b2;
        if b == b2 {
            st.c[k] = Some(UnivariatePoly::one(Var::X));
            st.f[k] = Some(UnivariatePoly::one(Var::Y));
            st.s[k] = Some(BivariatePoly::zero());
            continue;
        }
        let mut s = BivariatePoly::zero();
        for d in (0..t).filter(|&d| d != b && d != b2 && cc.leq(b, d) && cc.leq(d, b2)) {
            let (c, f) = match (&st.c[d * t + b2], &st.f[b * t + d]) {
                (Some(c), Some(f)) => (c, f),
                _ => return Err(Error::Order(format!("interval between blocks {} and {} is ill-formed", b, b2))),
            };
            s.add_assign(&star_product(c, f, q));
        }
        let (a1, n1) = cc.lambda[b];
        let (a2, n2) = cc.lambda[b2];
        if a2 >= a1 || n2 <= n1 {
            return Err(Error::Label(format!("labels ({}, {}) < ({}, {}) are not strictly monotone", a1, n1, a2, n2)));
        }
        let r = a1 - a2;
        let sdim = r + n2 - n1;
        let g = BigInt::from(cc.gamma[b][b2]);
        st.c[k] = Some(uniform_cloud(r, sdim, q).scale(&g).sub(&trunc_x(&s)));
        st.f[k] = Some(uniform_flock(r, sdim, q).scale(&g).sub(&trunc_y(&s)));
        st.s[k] = Some(s);
    }
    Ok(st)
}

/// Whitney function from (Γ, Λ), including free and trivial parts.
pub fn whitney_from_condensed(cc: &Condensation, q: u32) -> Result<BivariatePoly, Error> {
    let (bot, top) = (cc.bottom(), cc.top());
    let (rho_hat, n_trivial) = cc.lambda[bot];
    let (n_free, top_nullity) = cc.lambda[top];
    if rho_hat < n_free || top_nullity < n_trivial {
        return Err(Error::Condensation("bottom and top labels are inconsistent".into()));
    }
    let rho1 = rho_hat - n_free;
    let n1 = rho1 + top_nullity - n_trivial;
    let st = cf_recursion(cc, q).map_err(|e| Error::Condensation(format!("{}", e)))?;
    let mut r1 = BivariatePoly::zero();
    for b in (0..cc.len()).filter(|&b| cc.leq(b, top) && cc.leq(bot, b)) {
        r1.add_assign(&star_product(st.cloud(b, top), st.flock(bot, b), q));
    }
    let r = trivial_whitney(&r1, n1, rho1, n_trivial, q)?;
    free_whitney(&r, n1 + n_trivial, rho1, n_free, q)
}

/// Checks c_P(B,B') = Σ_{Z∈B, Z≤Z'} c_{M|Z',Z} and
/// f_P(B,B') = Σ_{Z∈B, Z≤Z'} f_{M/Z,Z'/Z} for every Z' ∈ B', computing the
/// right-hand sides by enumeration. `nodes` maps lattice nodes to universe ids.
pub fn verify_recursion(a: &Analysis, nodes: &[u32], cc: &Condensation, st: &RecursionState) -> Result<(), Error> {
    let t = a.table();
    let u = a.universe();
    let len = u.len() as u32;
    if cc.blocks().is_empty() {
        return Err(Error::Condensation("blocks are needed to compare against the matroid".into()));
    }
    for (bi, lower) in cc.blocks().iter().enumerate() {
        for (bj, upper) in cc.blocks().iter().enumerate() {
            if !cc.leq(bi, bj) {
                continue;
            }
            for &zp in upper {
                let zp_id = nodes[zp];
                let zps = u.get(zp_id);
                let rzp = t.rank_id(zp_id);
                let mut cloud_exps = Vec::new();
                let mut flock_exps = Vec::new();
                for &z in lower.iter().filter(|&&z| zps.contains_unchecked(u.get(nodes[z]))) {
                    let z_id = nodes[z];
                    let zs = u.get(z_id);
                    let (dz, rz) = (u.dim_of(z_id), t.rank_id(z_id));
                    for v in 0..len {
                        let vs = u.get(v);
                        if !zps.contains_unchecked(vs) || !vs.contains_unchecked(zs) {
                            continue;
                        }
                        if a.is_flat(v) && t.nullity_id(v) == t.nullity_id(z_id) {
                            cloud_exps.push((rzp - t.rank_id(v)) as usize);
                        }
                        if t.rank_id(v) == rzp {
                            flock_exps.push(((u.dim_of(v) - dz) - (t.rank_id(v) - rz)) as usize);
                        }
                    }
                }
                let c = tally(Var::X, &cloud_exps);
                let f = tally(Var::Y, &flock_exps);
                if st.get_cloud(bi, bj) != Some(&c) || st.get_flock(bi, bj) != Some(&f) {
                    return Err(Error::Consistency(format!(
                        "recursion disagrees with the matroid for blocks {} ≤ {} at node {}",
                        bi, bj, zp
                    )));
                }
            }
        }
    }
    Ok(())
}

fn tally(var: Var, exps: &[usize]) -> UnivariatePoly {
    let mut c = vec![BigInt::from(0); exps.iter().max().map_or(0, |m| m + 1)];
    for &e in exps {
        c[e] += 1;
    }
    UnivariatePoly::new(var, c)
}
