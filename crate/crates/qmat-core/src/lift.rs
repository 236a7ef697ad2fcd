//! Building q-matroids from their cyclic flats, and lifting matroid
//! cyclic-flat data to coordinate subspaces.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::analysis::Analysis;
use crate::error::{Axiom, Error};
use crate::lattice::{Configuration, LabeledLattice};
use crate::matroid::QMatroid;
use crate::subspace::{Ambient, Subspace};
use crate::DEFAULT_MAX_N;

/// Candidate cyclic flats with their ranks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicFlatsData {
    pub ambient: Ambient,
    pub flats: Vec<(Subspace, u32)>,
}

/// Cyclic sets of a matroid on [n]: bit i of a mask is element i + 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatroidCyclicData {
    pub n: u32,
    pub sets: Vec<(u32, u32)>,
}

fn axiom(axiom: Axiom, detail: String) -> Error {
    Error::Axiom { axiom, detail }
}

/// Checks (Z0)–(Z3) for ranks `r` on a lattice whose nodes have sizes
/// `dim` and intersections of size `dim_meet_set(a, b)`.
fn check_cyclic_axioms(
    l: &LabeledLattice<usize>,
    dim: impl Fn(usize) -> u32,
    rank: impl Fn(usize) -> u32,
    dim_cap: impl Fn(usize, usize) -> u32,
    contains_cap: impl Fn(usize, usize, usize) -> bool,
    sum_below: impl Fn(usize, usize, usize) -> bool,
    name: impl Fn(usize) -> String,
) -> Result<(), Error> {
    let n = l.len();
    for a in 0..n {
        for b in 0..n {
            let (m, j) = (l.meet(a, b), l.join(a, b));
            if !contains_cap(a, b, m) || !sum_below(a, b, j) {
                return Err(axiom(Axiom::Z0, format!("meet or join of {} and {}", name(a), name(b))));
            }
        }
    }
    if rank(l.bottom()) != 0 {
        return Err(axiom(Axiom::Z1, format!("bottom {} has rank {}", name(l.bottom()), rank(l.bottom()))));
    }
    for a in 0..n {
        for b in 0..n {
            if l.lt(b, a) {
                let dr = rank(a) as i64 - rank(b) as i64;
                let dd = dim(a) as i64 - dim(b) as i64;
                if !(0 < dr && dr < dd) {
                    return Err(axiom(Axiom::Z2, format!("{} < {}", name(b), name(a))));
                }
            }
        }
    }
    for a in 0..n {
        for b in a + 1..n {
            let (m, j) = (l.meet(a, b), l.join(a, b));
            let lhs = rank(a) + rank(b);
            let rhs = rank(j) + rank(m) + dim_cap(a, b) - dim(m);
            if lhs < rhs {
                return Err(axiom(Axiom::Z3, format!("{} and {}", name(a), name(b))));
            }
        }
    }
    Ok(())
}

/// Validates the axioms, builds the rank function
/// ρ(V) = min_Z ρ(Z) + dim(Z + V) − dim Z, and confirms that its cyclic
/// flats are exactly the input.
pub fn from_cyclic_flats(data: &CyclicFlatsData) -> Result<QMatroid, Error> {
    from_cyclic_flats_with(data, DEFAULT_MAX_N)
}

pub fn from_cyclic_flats_with(data: &CyclicFlatsData, max_n: u32) -> Result<QMatroid, Error> {
    let flats = &data.flats;
    if flats.is_empty() {
        return Err(Error::Empty);
    }
    for (i, (z, r)) in flats.iter().enumerate() {
        if z.ambient() != data.ambient {
            return Err(Error::Shape(format!("{} lies in a different ambient space", z)));
        }
        if *r > z.dim() {
            return Err(axiom(Axiom::Z2, format!("{} has rank {} above its dimension", z, r)));
        }
        if flats[..i].iter().any(|(w, _)| w == z) {
            return Err(axiom(Axiom::Z0, format!("{} is listed twice", z)));
        }
    }
    let l = LabeledLattice::from_order((0..flats.len()).collect(), |a, b| flats[b].0.contains_unchecked(&flats[a].0))
        .map_err(|e| axiom(Axiom::Z0, format!("{}", e)))?;
    let sp = |i: usize| &flats[i].0;
    check_cyclic_axioms(
        &l,
        |i| sp(i).dim(),
        |i| flats[i].1,
        |a, b| sp(a).sum_and_intersection(sp(b)).1.dim(),
        |a, b, m| sp(a).sum_and_intersection(sp(b)).1.contains_unchecked(sp(m)),
        |a, b, j| sp(j).contains_unchecked(&sp(a).sum_unchecked(sp(b))),
        |i| format!("{}", sp(i)),
    )?;
    let m = QMatroid::from_cyclic_flats_unchecked(data.ambient, flats.clone())?;
    let a = Analysis::new(&m.materialize_with(max_n)?);
    let mut got: Vec<(Subspace, u32)> = a.cyclic_flat_ids().iter().map(|&i| (a.space(i).clone(), a.table().rank_id(i))).collect();
    let mut want = flats.clone();
    got.sort();
    want.sort();
    if got != want {
        return Err(Error::Consistency(format!(
            "the rank function has {} cyclic flats where {} were given",
            got.len(),
            want.len()
        )));
    }
    Ok(m)
}

fn mask_name(m: u32) -> String {
    let items: Vec<String> = (0..32).filter(|i| m >> i & 1 == 1).map(|i| format!("{}", i + 1)).collect();
    format!("{{{}}}", items.join(","))
}

/// Lattice of the matroid cyclic sets under inclusion, after checking the
/// matroid-side axioms.
pub fn matroid_lattice(data: &MatroidCyclicData) -> Result<LabeledLattice<usize>, Error> {
    let sets = &data.sets;
    if sets.is_empty() {
        return Err(Error::Empty);
    }
    let full = if data.n >= 32 { return Err(Error::Range("ground set too large".into())) } else { (1u32 << data.n) - 1 };
    for (i, &(s, r)) in sets.iter().enumerate() {
        if s & !full != 0 {
            return Err(Error::Range(format!("{} is not a subset of [{}]", mask_name(s), data.n)));
        }
        if r > s.count_ones() {
            return Err(axiom(Axiom::Z2, format!("{} has rank {} above its size", mask_name(s), r)));
        }
        if sets[..i].iter().any(|&(t, _)| t == s) {
            return Err(axiom(Axiom::Z0, format!("{} is listed twice", mask_name(s))));
        }
    }
    let l = LabeledLattice::from_order((0..sets.len()).collect(), |a, b| sets[a].0 & !sets[b].0 == 0)
        .map_err(|e| axiom(Axiom::Z0, format!("{}", e)))?;
    let s = |i: usize| sets[i].0;
    check_cyclic_axioms(
        &l,
        |i| s(i).count_ones(),
        |i| sets[i].1,
        |a, b| (s(a) & s(b)).count_ones(),
        |a, b, m| s(m) & !(s(a) & s(b)) == 0,
        |a, b, j| (s(a) | s(b)) & !s(j) == 0,
        |i| mask_name(s(i)),
    )?;
    Ok(l)
}

/// Corank-nullity configuration of the matroid data.
pub fn matroid_config(data: &MatroidCyclicData) -> Result<Configuration, Error> {
    let l = matroid_lattice(data)?;
    let r_full = data.sets[l.top()].1;
    Ok(l.map_labels(|&i| {
        let (s, r) = data.sets[i];
        (r_full - r, s.count_ones() - r)
    }))
}

/// Sends each set {i1, …, it} to ⟨e_i1, …, e_it⟩ over F_q with the same rank.
pub fn lift_matroid(data: &MatroidCyclicData, q: u32) -> Result<CyclicFlatsData, Error> {
    matroid_lattice(data)?;
    let amb = Ambient::new(q, data.n)?;
    let flats = data
        .sets
        .iter()
        .map(|&(s, r)| {
            let coords: Vec<usize> = (0..data.n as usize).filter(|i| s >> i & 1 == 1).collect();
            Ok((Subspace::coordinate(amb, &coords)?, r))
        })
        .collect::<Result<Vec<_>, Error>>()?;
    Ok(CyclicFlatsData { ambient: amb, flats })
}
