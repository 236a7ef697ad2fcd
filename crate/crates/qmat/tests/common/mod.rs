//! Shared helpers: fixture loading and the exhaustive counting checks.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};
use std::path::PathBuf;
use std::sync::Arc;

use num_bigint::BigInt;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qmat::desc::MatroidDesc;
use qmat_core::analysis::Collection;
use qmat_core::gauss::{gaussian, qpow};
use qmat_core::subspace::{complements, enumerate, DirectSumFrame};
use qmat_core::{Ambient, Analysis, ExtensionField, QMatroid, Subspace, Universe};

pub type Check = Result<(), String>;

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

pub fn fixture_names() -> Vec<String> {
    let mut v: Vec<String> = std::fs::read_dir(fixture_path(""))
        .expect("fixtures directory")
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .filter(|n| n.ends_with(".json"))
        .collect();
    v.sort();
    v
}

pub fn desc(name: &str) -> MatroidDesc {
    let text = std::fs::read_to_string(fixture_path(name)).unwrap();
    serde_json::from_str(&text).unwrap()
}

pub fn load(name: &str) -> QMatroid {
    desc(name).build(qmat_core::DEFAULT_MAX_N).unwrap()
}

pub fn analysis(m: &QMatroid) -> Analysis {
    Analysis::of(m).unwrap()
}

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn big(v: usize) -> BigInt {
    BigInt::from(v)
}

fn all_spaces(amb: Ambient) -> Vec<Subspace> {
    enumerate(amb, None).unwrap().collect()
}

/// Subspaces of each dimension are counted by the Gaussian binomial.
pub fn gaussian_counts(q: u32, n: u32) -> Check {
    let amb = Ambient::new(q, n).unwrap();
    let mut total = BigInt::from(0);
    for k in 0..=n {
        let c = enumerate(amb, Some(k)).unwrap().count();
        ensure!(big(c) == gaussian(n, k, q), "q={} n={} k={}: {} subspaces", q, n, k, c);
        total += c;
    }
    ensure!(total == big(all_spaces(amb).len()), "q={} n={}: total count", q, n);
    Ok(())
}

/// Complements of Z in F: there are q^{(f−z)z}, and V ⊕ W over them hits
/// q^{(f−z)(z−v)} spaces q^{(f−z)v} times each.
pub fn direct_complements(q: u32, f: u32) -> Check {
    let amb = Ambient::new(q, f).unwrap();
    let full = Subspace::full(amb);
    for z in all_spaces(amb) {
        let zd = z.dim();
        let ws = complements(&z, &full).unwrap();
        ensure!(big(ws.len()) == qpow(q, (f - zd) * zd), "|W| for Z = {}", z);
        let distinct: BTreeSet<&Subspace> = ws.iter().collect();
        ensure!(distinct.len() == ws.len(), "repeated complement of {}", z);
        for w in &ws {
            let (s, i) = (z.sum(w).unwrap(), z.intersect(w).unwrap());
            ensure!(s == full && i.is_zero(), "{} is not a complement of {}", w, z);
        }
        for v in enumerate(amb, None).unwrap().filter(|v| z.contains(v).unwrap()) {
            let vd = v.dim();
            let mut hits: HashMap<Subspace, usize> = HashMap::new();
            for w in &ws {
                *hits.entry(v.sum(w).unwrap()).or_default() += 1;
            }
            ensure!(big(hits.len()) == qpow(q, (f - zd) * (zd - vd)), "|V ⊕ W| for V = {}, Z = {}", v, z);
            let each = qpow(q, (f - zd) * vd);
            ensure!(hits.values().all(|&c| big(c) == each), "multiplicity for V = {}, Z = {}", v, z);
        }
    }
    Ok(())
}

/// Spaces of E_1 ⊕ E_2 with a given projection to E_1, and with a given
/// intersection with E_2.
pub fn extend_spaces(q: u32, n1: u32, n2: u32) -> Check {
    let frame = DirectSumFrame::new(Ambient::new(q, n1).unwrap(), Ambient::new(q, n2).unwrap()).unwrap();
    let mut by_proj: HashMap<(Subspace, u32), usize> = HashMap::new();
    let mut by_meet: HashMap<(Subspace, u32), usize> = HashMap::new();
    for v in all_spaces(frame.whole) {
        *by_proj.entry((frame.project_left(&v), v.dim())).or_default() += 1;
        *by_meet.entry((frame.meet_right(&v), frame.project_left(&v).dim())).or_default() += 1;
    }
    for v1 in all_spaces(frame.left) {
        let k1 = v1.dim();
        for j in 0..=n1 + n2 {
            let got = by_proj.get(&(v1.clone(), j)).copied().unwrap_or(0);
            let want = if j >= k1 && j <= k1 + n2 {
                gaussian(n2, j - k1, q) * qpow(q, k1 * (n2 + k1 - j))
            } else {
                BigInt::from(0)
            };
            ensure!(big(got) == want, "(a) V1 = {}, j = {}: {} vs {}", v1, j, got, want);
        }
    }
    for v2 in all_spaces(frame.right) {
        let k2 = v2.dim();
        for j in 0..=n1 + n2 {
            let got = by_meet.get(&(v2.clone(), j)).copied().unwrap_or(0);
            let want = if j <= n1 { gaussian(n1, j, q) * qpow(q, j * (n2 - k2)) } else { BigInt::from(0) };
            ensure!(big(got) == want, "(b) V2 = {}, j = {}: {} vs {}", v2, j, got, want);
        }
    }
    Ok(())
}

/// |{T ∈ cl⁻¹(F) : dim T = v + f − z}| = q^{(f−z)(z−v)} |{V ∈ cl⁻¹(Z) : dim V = v}|.
pub fn flock_sizes(m: &QMatroid) -> Check {
    let a = analysis(m);
    let u = a.universe();
    let q = m.q();
    let mut count: HashMap<(u32, u32), usize> = HashMap::new();
    for id in 0..u.len() as u32 {
        *count.entry((a.closure_id(id), u.dim_of(id))).or_default() += 1;
    }
    for f in (0..u.len() as u32).filter(|&i| a.is_flat(i)) {
        let z = a.cyclic_core_id(f);
        let (fd, zd) = (u.dim_of(f), u.dim_of(z));
        for v in 0..=zd {
            let lhs = count.get(&(f, v + fd - zd)).copied().unwrap_or(0);
            let rhs = qpow(q, (fd - zd) * (zd - v)) * count.get(&(z, v)).copied().unwrap_or(0);
            ensure!(big(lhs) == rhs, "{}: flat {} over {} at v = {}", m, a.space(f), a.space(z), v);
        }
    }
    Ok(())
}

fn collection(m: &QMatroid, which: Collection) -> BTreeSet<Subspace> {
    analysis(m).collection(which).into_iter().collect()
}

/// Flats and open spaces of restrictions and contractions, and the
/// cyclic-core fiber of 0 after contracting a cyclic flat.
pub fn restrict_contract(m: &QMatroid) -> Check {
    let a = analysis(m);
    let flats = a.collection(Collection::Flats);
    let opens = a.collection(Collection::Opens);
    for (which, family) in [(Collection::Flats, &flats), (Collection::Opens, &opens)] {
        for x in family {
            let below: BTreeSet<Subspace> =
                family.iter().filter(|s| x.contains(s).unwrap()).map(|s| s.coordinates_in(x).unwrap()).collect();
            ensure!(collection(&m.restrict(x).unwrap(), which) == below, "{:?} of {} restricted to {}", which, m, x);
            let above: BTreeSet<Subspace> =
                family.iter().filter(|s| s.contains(x).unwrap()).map(|s| s.quotient_image(x).unwrap()).collect();
            ensure!(collection(&m.contract(x).unwrap(), which) == above, "{:?} of {} contracted by {}", which, m, x);
        }
    }
    for &zid in a.cyclic_flat_ids() {
        let z = a.space(zid);
        let mc = analysis(&m.contract(z).unwrap());
        let zero = mc.universe().zero_id();
        ensure!(mc.is_cyclic_flat(zero), "0 is not cyclic in {} / {}", m, z);
        let got: BTreeSet<Subspace> = (0..mc.universe().len() as u32)
            .filter(|&i| mc.is_flat(i) && mc.cyclic_core_id(i) == zero)
            .map(|i| mc.space(i).clone())
            .collect();
        let want: BTreeSet<Subspace> = (0..a.universe().len() as u32)
            .filter(|&i| a.is_flat(i) && a.cyclic_core_id(i) == zid)
            .map(|i| a.space(i).quotient_image(z).unwrap())
            .collect();
        ensure!(got == want, "cyclic-core fiber of 0 in {} / {}", m, z);
    }
    Ok(())
}

/// Rank and flats of M_1 ⊕ U_{n2,n2} and M_1 ⊕ U_{0,n2}.
pub fn flats_free_trivial(m1: &QMatroid, n2: u32) -> Check {
    let q = m1.q();
    let t1 = m1.materialize().unwrap();
    let a1 = Analysis::new(&t1);
    for (k, free) in [(n2, true), (0, false)] {
        let m = QMatroid::direct_sum(m1, &QMatroid::uniform(k, n2, q).unwrap()).unwrap();
        let frame = DirectSumFrame::new(m1.ambient(), Ambient::new(q, n2).unwrap()).unwrap();
        let a = analysis(&m);
        for id in 0..a.universe().len() as u32 {
            let v = a.space(id);
            let rho = a.table().rank_id(id);
            if free {
                let (v1, p2) = (frame.meet_left(v), frame.project_right(v));
                ensure!(v.dim() == v1.dim() + p2.dim(), "dimension split of {}", v);
                ensure!(rho == t1.rank(&v1).unwrap() + p2.dim(), "free rank of {}", v);
                let f1 = a1.is_flat(a1.id(&v1).unwrap());
                ensure!(a.is_flat(id) == f1, "free flat test for {}", v);
            } else {
                let p1 = frame.project_left(v);
                ensure!(rho == t1.rank(&p1).unwrap(), "trivial rank of {}", v);
            }
        }
        if !free {
            let e2 = Subspace::full(frame.right);
            let want: BTreeSet<Subspace> =
                a1.collection(Collection::Flats).iter().map(|f1| frame.join(f1, &e2)).collect();
            ensure!(collection(&m, Collection::Flats) == want, "flats of {} plus a trivial summand", m1);
        }
    }
    Ok(())
}

/// ρ(V) = dim V + min over X ≤ V of ρ_1(π_1 X) + ρ_2(π_2 X) − dim X,
/// against the cyclic-flat rank of the direct sum.
pub fn direct_sum_rank(m1: &QMatroid, m2: &QMatroid) -> Check {
    let (t1, t2) = (m1.materialize().unwrap(), m2.materialize().unwrap());
    let frame = DirectSumFrame::new(m1.ambient(), m2.ambient()).unwrap();
    let sum = QMatroid::direct_sum(m1, m2).unwrap().materialize().unwrap();
    let u = Universe::new(frame.whole, qmat_core::DEFAULT_MAX_N).unwrap();
    // best[V] = min over X ≤ V, built up through hyperplanes
    let mut best = vec![i64::MAX; u.len()];
    for id in 0..u.len() as u32 {
        let x = u.get(id);
        let own = t1.rank(&frame.project_left(x)).unwrap() as i64 + t2.rank(&frame.project_right(x)).unwrap() as i64
            - x.dim() as i64;
        let mut b = own;
        u.for_each_hyperplane(id, |h, _| b = b.min(best[h as usize]));
        best[id as usize] = b;
        let rho = x.dim() as i64 + b;
        ensure!(rho == sum.rank_id(id) as i64, "{} ⊕ {} at {}: {} vs {}", m1, m2, x, rho, sum.rank_id(id));
    }
    Ok(())
}

pub fn test_field(q: u32) -> Arc<ExtensionField> {
    let f = match q {
        2 => ExtensionField::new(2, 3, &[1, 1, 0, 1]),
        3 => ExtensionField::new(3, 2, &[2, 1, 1]),
        _ => panic!("no test field for q = {}", q),
    };
    Arc::new(f.unwrap())
}

/// A represented matroid with a generator drawn from `seed`.
pub fn random_represented(q: u32, k: u32, n: u32, seed: u64) -> QMatroid {
    let f = test_field(q);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let size = f.size() as u64;
    let g = (0..k)
        .map(|_| {
            (0..n)
                .map(|_| {
                    let e = rng.next_u64() % size;
                    if e == 0 { f.zero() } else { f.pow_of_omega(e) }
                })
                .collect()
        })
        .collect();
    QMatroid::represented(f, g).unwrap()
}

/// Uniform matroids and a few represented ones on F_q^n.
pub fn sample_matroids(q: u32, n: u32) -> Vec<QMatroid> {
    let mut v: Vec<QMatroid> = (0..=n).map(|k| QMatroid::uniform(k, n, q).unwrap()).collect();
    for (i, k) in (1..n).enumerate() {
        v.push(random_represented(q, k, n, 1000 * q as u64 + 10 * n as u64 + i as u64));
    }
    v
}
