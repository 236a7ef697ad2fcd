//! Checking (R1)–(R3) on a rank table.

use alloc::format;

use rand_core::RngCore;

use crate::error::{Axiom, Error};
use crate::subspace::Subspace;
use crate::universe::RankTable;

/// Largest ground dimension for the all-pairs check.
pub const EXHAUSTIVE_MAX_N: u32 = 6;

/// Default number of random pairs for the sampled check.
pub const DEFAULT_SAMPLES: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub axiom: Axiom,
    pub v: Subspace,
    pub w: Subspace,
}

impl core::fmt::Display for Violation {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{} fails for V = {} and W = {}", self.axiom, self.v, self.w)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub pairs_checked: u64,
    pub violation: Option<Violation>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Exhaustive,
    Sampled,
}

/// Runs the exhaustive check (n ≤ 6). For the sampled mode use
/// [`validate_sampled`].
pub fn validate_rank_axioms(t: &RankTable, mode: Mode) -> Result<AxiomReport, Error> {
    match mode {
        Mode::Exhaustive => validate_exhaustive(t),
        Mode::Sampled => Err(Error::Range("sampled mode needs a random source".into())),
    }
}

/// R1 on every subspace and R2 on every cover; monotonicity along covers
/// implies it for all comparable pairs.
fn check_local(t: &RankTable) -> Option<Violation> {
    let u = t.universe();
    for id in 0..u.len() as u32 {
        if t.rank_id(id) > u.dim_of(id) {
            let v = u.get(id).clone();
            return Some(Violation { axiom: Axiom::R1, w: v.clone(), v });
        }
    }
    for id in 0..u.len() as u32 {
        let mut bad = None;
        u.for_each_cover(id, |c, _| {
            if bad.is_none() && t.rank_id(c) < t.rank_id(id) {
                bad = Some(c);
            }
        });
        if let Some(c) = bad {
            return Some(Violation { axiom: Axiom::R2, v: u.get(id).clone(), w: u.get(c).clone() });
        }
    }
    None
}

fn check_pair(t: &RankTable, i: u32, j: u32) -> Option<Violation> {
    let u = t.universe();
    let (v, w) = (u.get(i), u.get(j));
    let (s, m) = v.sum_and_intersection(w);
    let lhs = t.rank_id(u.id_of_rows(s.rows())) + t.rank_id(u.id_of_rows(m.rows()));
    if lhs > t.rank_id(i) + t.rank_id(j) {
        return Some(Violation { axiom: Axiom::R3, v: v.clone(), w: w.clone() });
    }
    None
}

fn validate_exhaustive(t: &RankTable) -> Result<AxiomReport, Error> {
    let n = t.ambient().n();
    if n > EXHAUSTIVE_MAX_N {
        return Err(Error::Scale { n, limit: EXHAUSTIVE_MAX_N });
    }
    if let Some(v) = check_local(t) {
        return Ok(AxiomReport { pairs_checked: 0, violation: Some(v) });
    }
    let u = t.universe();
    let len = u.len() as u32;
    let mut pairs = 0u64;
    for i in 0..len {
        for j in i + 1..len {
            // comparable pairs satisfy R3 with equality
            if u.dim_of(i) == u.dim_of(j) || !u.get(j).contains_unchecked(u.get(i)) {
                pairs += 1;
                if let Some(v) = check_pair(t, i, j) {
                    return Ok(AxiomReport { pairs_checked: pairs, violation: Some(v) });
                }
            }
        }
    }
    Ok(AxiomReport { pairs_checked: pairs, violation: None })
}

/// R1 and R2 in full, R3 on `samples` uniformly random pairs.
pub fn validate_sampled<R: RngCore>(t: &RankTable, samples: u64, rng: &mut R) -> AxiomReport {
    if let Some(v) = check_local(t) {
        return AxiomReport { pairs_checked: 0, violation: Some(v) };
    }
    let len = t.universe().len() as u64;
    for k in 0..samples {
        let i = (rng.next_u64() % len) as u32;
        let j = (rng.next_u64() % len) as u32;
        if let Some(v) = check_pair(t, i, j) {
            return AxiomReport { pairs_checked: k + 1, violation: Some(v) };
        }
    }
    AxiomReport { pairs_checked: samples, violation: None }
}

/// Describes a violation as an error value.
pub fn into_error(v: &Violation) -> Error {
    Error::Axiom { axiom: v.axiom, detail: format!("V = {}, W = {}", v.v, v.w) }
}
