//! Acceptance run: one line per criterion, nonzero exit if any fails.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use common::*;
use num_bigint::BigInt;
use qmat_core::axioms::{validate_rank_axioms, Mode};
use qmat_core::condense::coarsest_condensation;
use qmat_core::invariants::{char_poly, cloud, extremal_terms, flock, star_product, whitney};
use qmat_core::lattice::{config, cyclic_flat_lattice};
use qmat_core::subspace::parse_subspace;
use qmat_core::transforms::prime_free_whitney;
use qmat_core::{
    suite, Ambient, Analysis, BivariatePoly, LabeledLattice, QMatroid, RankTable, Subspace, UnivariatePoly, Var,
};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+).into());
        }
    };
}

type Outcome = Result<(), Box<dyn std::error::Error>>;

fn sp(amb: Ambient, s: &str) -> Subspace {
    parse_subspace(amb, s).unwrap()
}

fn canonical(s: &str) -> String {
    s.parse::<BivariatePoly>().unwrap().to_string()
}

fn ux(s: &str) -> UnivariatePoly {
    UnivariatePoly::parse(Var::X, s).unwrap()
}

fn uy(s: &str) -> UnivariatePoly {
    UnivariatePoly::parse(Var::Y, s).unwrap()
}

fn flat_set(a: &Analysis) -> BTreeSet<Subspace> {
    a.cyclic_flats().into_iter().collect()
}

fn id(a: &Analysis, v: &Subspace) -> u32 {
    a.id(v).unwrap()
}

/// Rank tables of every fixture, built once.
fn fixture_tables() -> &'static [(String, RankTable)] {
    static TABLES: OnceLock<Vec<(String, RankTable)>> = OnceLock::new();
    TABLES.get_or_init(|| fixture_names().into_iter().map(|n| (n.clone(), load(&n).materialize().unwrap())).collect())
}

fn within(start: Instant, limit: Duration) -> Outcome {
    let t = start.elapsed();
    ensure!(t <= limit, "took {:.1?}, limit {:?}", t, limit);
    Ok(())
}

/// Names of the spaces in the cloud-flock example, in the printed order.
const CF2_FLATS: [&str; 8] = [
    "0",
    "<e1, e2>",
    "<e1+e2+e4, e3+e4>",
    "<e1+e3+e4, e2+e4+e5, e6>",
    "<e1+e4+e5, e2+e3+e5, e6>",
    "<e2+e5, e3+e5+e6, e4>",
    "<e1, e2, e3, e4>",
    "<e1, e2, e3, e4, e5, e6>",
];
const CF2_COVERS: [(usize, usize); 11] =
    [(0, 1), (0, 2), (0, 3), (0, 4), (0, 5), (1, 6), (2, 6), (3, 7), (4, 7), (5, 7), (6, 7)];
const CF2_WHITNEY: &str = "x^3 + (2y + 63)x^2 + (y^2 + 42y + 649)x + y^3 + 63y^2 + 650y + 1353";

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let m = load("cloud_flock_2.json");
    let a = analysis(&m);
    let amb = m.ambient();
    ensure!(a.universe().len() == 2825, "{} subspaces", a.universe().len());
    let listed: Vec<Subspace> = CF2_FLATS.iter().map(|s| sp(amb, s)).collect();
    ensure!(flat_set(&a) == listed.iter().cloned().collect(), "cyclic flats differ");
    let l = cyclic_flat_lattice(&a)?;
    let got: BTreeSet<(Subspace, Subspace)> =
        l.covers().into_iter().map(|(x, y)| (l.label(x).clone(), l.label(y).clone())).collect();
    let want: BTreeSet<(Subspace, Subspace)> =
        CF2_COVERS.iter().map(|&(x, y)| (listed[x].clone(), listed[y].clone())).collect();
    ensure!(got == want, "Hasse diagram differs");
    let table = [
        ("x^3 + 57x^2 + 451x", "1", "x^3 + 57x^2 + 451x"),
        ("x^2 + 12x", "y + 3", "(y + 3)x^2 + (12y + 72)x"),
        ("x^2 + 12x", "y + 3", "(y + 3)x^2 + (12y + 72)x"),
        ("x", "y + 7", "(y + 7)x"),
        ("x", "y + 7", "(y + 7)x"),
        ("x", "y + 7", "(y + 7)x"),
        ("x", "y^2 + 15y + 33", "(y^2 + 15y + 33)x"),
        ("1", "y^3 + 63y^2 + 650y + 1353", "y^3 + 63y^2 + 650y + 1353"),
    ];
    let mut sum = BivariatePoly::zero();
    for (z, (c, f, h)) in listed.iter().zip(table) {
        let (cz, fz) = (cloud(&a, id(&a, z))?, flock(&a, id(&a, z))?);
        ensure!(cz == ux(c) && fz == uy(f), "cloud/flock of {}: {} | {}", z, cz, fz);
        let hz = star_product(&cz, &fz, 2);
        ensure!(hz.to_string() == h, "h of {}: {}", z, hz);
        sum.add_assign(&hz);
    }
    let r = whitney(a.table());
    ensure!(r.to_string() == CF2_WHITNEY, "R = {}", r);
    ensure!(sum == r, "sum of h differs from R");
    within(start, Duration::from_secs(5))
}

fn criterion_2() -> Outcome {
    let amb = Ambient::new(2, 6).unwrap();
    let (v1, v2, v3) = (sp(amb, "<e1, e2, e3>"), sp(amb, "<e4, e5, e6>"), sp(amb, "<e3, e4, e5>"));
    let want = canonical("x^3 + y^3 + 63x^2 + 2xy + 63y^2 + 651x + 651y + 1393");
    for (name, other) in [("non_iso_m1.json", &v2), ("non_iso_m2.json", &v3)] {
        let t = load(name).materialize().unwrap();
        let report = validate_rank_axioms(&t, Mode::Exhaustive)?;
        ensure!(report.passed(), "{}: {:?}", name, report.violation);
        ensure!(whitney(&t).to_string() == want, "{}: R = {}", name, whitney(&t));
        let a = Analysis::new(&t);
        let z: BTreeSet<Subspace> = [Subspace::zero(amb), v1.clone(), other.clone(), Subspace::full(amb)].into();
        ensure!(flat_set(&a) == z, "{}: cyclic flats differ", name);
    }
    ensure!(v1.intersect(&v2)?.is_zero(), "V1 ∩ V2 ≠ 0");
    ensure!(!v1.intersect(&v3)?.is_zero(), "V1 ∩ V3 = 0");
    Ok(())
}

fn criterion_3() -> Outcome {
    let amb = Ambient::new(2, 5).unwrap();
    let want_r = "x^3 + 31x^2 + (3y + 155)x + y^2 + 31y + 152";
    let middles = [
        ["<e1+e4, e2+e5, e3+e4>", "<e1+e5, e2+e5, e3>", "<e1+e3+e4, e2+e3, e5>"],
        ["<e1+e5, e2+e5, e3+e4>", "<e1+e4+e5, e2+e4, e3+e4+e5>", "<e1+e2+e4, e3, e5>"],
    ];
    let mut configs = Vec::new();
    for (name, mids) in ["cloud_flock_3_m1.json", "cloud_flock_3_m2.json"].into_iter().zip(middles) {
        let m = load(name);
        let a = analysis(&m);
        let mids: Vec<Subspace> = mids.iter().map(|s| sp(amb, s)).collect();
        let mut z: BTreeSet<Subspace> = mids.iter().cloned().collect();
        z.insert(Subspace::zero(amb));
        z.insert(Subspace::full(amb));
        ensure!(flat_set(&a) == z && z.len() == 5, "{}: cyclic flats differ", name);
        ensure!(whitney(a.table()).to_string() == want_r, "{}: R differs", name);
        let zero = id(&a, &Subspace::zero(amb));
        let full = id(&a, &Subspace::full(amb));
        ensure!(cloud(&a, zero)? == ux("x^3 + 31x^2 + 134x") && flock(&a, zero)? == uy("1"), "{}: Z0 row", name);
        ensure!(cloud(&a, full)? == ux("1") && flock(&a, full)? == uy("y^2 + 31y + 152"), "{}: E row", name);
        for v in &mids {
            ensure!(cloud(&a, id(&a, v))? == ux("x") && flock(&a, id(&a, v))? == uy("y + 7"), "{}: {}", name, v);
        }
        configs.push((config(&a)?, mids));
    }
    let printed = LabeledLattice::from_covers(vec![(3, 0), (1, 1), (1, 1), (1, 1), (0, 2)], &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)])?;
    for (c, _) in &configs {
        ensure!(c.is_isomorphic(&printed), "configuration differs from the printed one");
    }
    let meets = |mids: &[Subspace]| -> BTreeSet<Subspace> {
        let mut s = BTreeSet::new();
        for i in 0..3 {
            for j in i + 1..3 {
                s.insert(mids[i].intersect(&mids[j]).unwrap());
            }
        }
        s
    };
    let (m1, m2) = (meets(&configs[0].1), meets(&configs[1].1));
    ensure!(m1.len() == 3 && m1.iter().all(|v| v.dim() == 1), "first matroid: {:?}", m1);
    ensure!(m2 == [sp(amb, "<e1+e2+e3+e4>")].into(), "second matroid: {:?}", m2);
    Ok(())
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let m = load("cloud_flock_2.json");
    let d = m.dual();
    let (a, ad) = (analysis(&m), analysis(&d));
    ensure!(whitney(ad.table()) == whitney(a.table()).swap_xy(), "R* is not R with x and y swapped");
    let perps: BTreeSet<Subspace> = a.cyclic_flats().iter().map(Subspace::perp).collect();
    ensure!(flat_set(&ad) == perps, "Z(M*) is not the set of Z^⊥");
    ensure!(d.dual().materialize()? == *a.table(), "M** differs from M");
    let h = load("cloud_flock_2_dual.json").materialize()?;
    ensure!(h == *ad.table(), "the printed generator of M* gives a different rank function");
    let table = [
        ("1", "y^3 + 63y^2 + 649y + 1353"),
        ("x", "y^2 + 15y + 34"),
        ("x", "y^2 + 15y + 34"),
        ("x", "y + 7"),
        ("x", "y + 7"),
        ("x", "y + 7"),
        ("x^2 + 9x", "y + 3"),
        ("x^3 + 60x^2 + 507x", "1"),
    ];
    for (z, (c, f)) in CF2_FLATS.iter().zip(table) {
        let zp = sp(m.ambient(), z).perp();
        let i = id(&ad, &zp);
        ensure!(cloud(&ad, i)? == ux(c) && flock(&ad, i)? == uy(f), "dual row for {}^⊥", z);
    }
    within(start, Duration::from_secs(10))
}

fn criterion_5() -> Outcome {
    let want = canonical("x^3 + (y + 63)x^2 + (y^2 + 39y + 650)x + y^3 + 63y^2+ 650y + 1356");
    let matrix = [[1356, 650, 63, 1], [650, 39, 1, 0], [63, 1, 0, 0], [1, 0, 0, 0]];
    // printed configurations: node 0 is (3,0), the last node is (0,3)
    let config_1 = {
        let mut labels = vec![(3, 0), (2, 1)];
        labels.extend([(1, 1); 12]);
        labels.extend([(1, 2), (0, 3)]);
        let mut covers: Vec<(usize, usize)> = (1..=13).map(|i| (0, i)).collect();
        covers.extend((2..=13).map(|i| (i, 15)));
        covers.extend([(1, 14), (14, 15)]);
        LabeledLattice::from_covers(labels, &covers)?
    };
    let config_2 = {
        let mut labels = vec![(3, 0), (2, 1)];
        labels.extend([(1, 1); 9]);
        labels.extend([(1, 2), (0, 3)]);
        let mut covers: Vec<(usize, usize)> = (1..=11).map(|i| (0, i)).collect();
        covers.extend((1..=11).map(|i| (i, 12)));
        LabeledLattice::from_covers(labels, &covers)?
    };
    for (name, size, printed) in [("diff_cyc_m1.json", 16, &config_1), ("diff_cyc_m2.json", 13, &config_2)] {
        let a = analysis(&load(name));
        let r = whitney(a.table());
        ensure!(r.to_string() == want, "{}: R = {}", name, r);
        ensure!(a.cyclic_flat_ids().len() == size, "{}: |Z| = {}", name, a.cyclic_flat_ids().len());
        ensure!(config(&a)?.is_isomorphic(printed), "{}: configuration differs", name);
        for (i, row) in matrix.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                ensure!(r.coeff(i, j) == BigInt::from(v), "{}: matrix entry ({}, {})", name, i, j);
            }
        }
        let ext = extremal_terms(&r)?;
        let one = BigInt::from(1);
        let want_ext = vec![(0, 3, one.clone()), (1, 2, one.clone()), (2, 1, one.clone()), (3, 0, one)];
        let mut got = ext.clone();
        got.sort();
        ensure!(got == want_ext, "{}: extremal terms {:?}", name, ext);
        let t = a.table();
        for (i, j, c) in ext {
            let n = a.cyclic_flat_ids().iter().filter(|&&z| t.corank_id(z) as usize == i && t.nullity_id(z) as usize == j).count();
            ensure!(BigInt::from(n) == c, "{}: {} cyclic flats at ({}, {})", name, n, i, j);
        }
    }
    Ok(())
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let printed = [
        "x^4 + (2y + 255)x^3 + (2y^2 + 159y + 10793)x^2 + (2y^3 + 159y^2 + 3469y+ 96996)x + y^4 + 255y^3 + 10793y^2 + 96996y +    197316",
        "x^4 + (2y + 255)x^3 + (2y^2 + 159y + 10793)x^2 + (2y^3 + 159y^2 + 3475y+ 96996)x + y^4 + 255y^3 + 10793y^2 + 96996y +    197310",
    ];
    let mut rs = Vec::new();
    for (name, p) in ["direct_sum_m1.json", "direct_sum_m2.json"].into_iter().zip(printed) {
        let t = load(name).materialize()?;
        ensure!(t.universe().len() == 417199, "{}: {} subspaces", name, t.universe().len());
        let r = whitney(&t);
        ensure!(r.to_string() == canonical(p), "{}: R = {}", name, r);
        rs.push(r);
    }
    let diff: Vec<(usize, usize)> = rs[0].sub(&rs[1]).terms().map(|(i, j, _)| (i, j)).collect();
    ensure!(diff == vec![(0, 0), (1, 1)], "the two functions differ at {:?}", diff);
    ensure!(char_poly(&rs[0], 2) != char_poly(&rs[1], 2), "equal characteristic polynomials");
    within(start, Duration::from_secs(60))
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let amb = Ambient::new(2, 8).unwrap();
    let z = |s: &str| sp(amb, s);
    let common = ["0", "<e1, e2, e3>", "<e4, e5, e6>", "<e1+e4, e2+e5, e3+e6>", "<e1, e2, e3, e7, e8>"];
    let e = Subspace::full(amb);
    let want_r = canonical("x^4 + 255x^3 + (3y + 10795)x^2 + (2y^2 + 149y + 97152)x + y^4 + 255y^3 + 10795y^2 + 97153y + 200638");
    let gamma: Vec<Vec<u64>> = vec![vec![1, 1, 1, 1], vec![0, 1, 1, 3], vec![0, 0, 1, 2], vec![0, 0, 0, 1]];
    let lambda = [(4, 0), (2, 1), (1, 2), (0, 4)];
    let mut clouds = Vec::new();
    for (name, z5) in [("c_config_m1.json", "<e4, e5, e6, e7, e8>"), ("c_config_m2.json", "<e1, e2, e3, e4+e7, e5+e8>")] {
        let m = load(name);
        let a = analysis(&m);
        let listed: Vec<Subspace> = common.iter().map(|s| z(s)).chain([z(z5), e.clone()]).collect();
        ensure!(flat_set(&a) == listed.iter().cloned().collect(), "{}: cyclic flats differ", name);
        let blocks_printed: Vec<BTreeSet<Subspace>> =
            [vec![0], vec![1, 2, 3], vec![4, 5], vec![6]].iter().map(|b| b.iter().map(|&i| listed[i].clone()).collect()).collect();
        let c = config(&a)?;
        let cc = coarsest_condensation(&c);
        let ids = a.cyclic_flat_ids();
        let blocks: Vec<BTreeSet<Subspace>> =
            cc.blocks().iter().map(|b| b.iter().map(|&i| a.space(ids[i]).clone()).collect()).collect();
        let order: Vec<usize> = blocks_printed
            .iter()
            .map(|b| blocks.iter().position(|x| x == b).ok_or_else(|| format!("{}: block {:?} missing", name, b)))
            .collect::<Result<_, _>>()?;
        ensure!(blocks.len() == 4, "{}: {} blocks", name, blocks.len());
        for i in 0..4 {
            ensure!(cc.lambda()[order[i]] == lambda[i], "{}: lambda", name);
            for j in 0..4 {
                ensure!(cc.gamma()[order[i]][order[j]] == gamma[i][j], "{}: gamma ({}, {})", name, i, j);
            }
        }
        ensure!(whitney(a.table()).to_string() == want_r, "{}: R differs", name);
        clouds.push(cloud(&a, id(&a, &listed[1]))?);
    }
    ensure!(clouds[0] != clouds[1], "clouds of Z1 agree: {}", clouds[0]);
    within(start, Duration::from_secs(120))
}

fn criterion_8() -> Outcome {
    for (name, t) in fixture_tables() {
        let mode = if t.ambient().n() <= 6 { Mode::Exhaustive } else { Mode::Sampled };
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for c in suite::run(t, mode, 100_000, &mut rng)? {
            if let Some(Err(e)) = c.outcome {
                return Err(format!("{}: {}: {}", name, c.name, e).into());
            }
        }
    }
    Ok(())
}

fn criterion_9() -> Outcome {
    for q in [2, 3] {
        for n in 0..=5 {
            gaussian_counts(q, n)?;
        }
        for f in 0..=4 {
            direct_complements(q, f)?;
        }
        for n in 2..=5 {
            for n1 in 1..n {
                extend_spaces(q, n1, n - n1)?;
            }
        }
        for n in 1..=5 {
            for m in sample_matroids(q, n) {
                flock_sizes(&m)?;
                restrict_contract(&m)?;
            }
        }
        for n1 in 1..=4 {
            for m1 in sample_matroids(q, n1) {
                for n2 in 1..=5 - n1 {
                    flats_free_trivial(&m1, n2)?;
                }
            }
        }
        for n1 in 1..=4 {
            for n2 in 1..=5 - n1 {
                for m1 in sample_matroids(q, n1) {
                    for m2 in sample_matroids(q, n2) {
                        direct_sum_rank(&m1, &m2)?;
                    }
                }
            }
        }
    }
    Ok(())
}

fn extremal_check(label: &str, a: &Analysis) -> Outcome {
    let r = whitney(a.table());
    let ext = extremal_terms(&r).map_err(|e| format!("{}: {}", label, e))?;
    let t = a.table();
    for (i, j, c) in ext {
        let n = a.cyclic_flat_ids().iter().filter(|&&z| t.corank_id(z) as usize == i && t.nullity_id(z) as usize == j).count();
        ensure!(BigInt::from(n) == c, "{}: {} cyclic flats at ({}, {}), entry {}", label, n, i, j, c);
    }
    Ok(())
}

fn criterion_10() -> Outcome {
    for (name, t) in fixture_tables() {
        extremal_check(name, &Analysis::new(t))?;
    }
    for q in [2, 3] {
        for n in 1..=4 {
            for m in sample_matroids(q, n) {
                extremal_check(&m.to_string(), &analysis(&m))?;
            }
        }
    }
    Ok(())
}

fn criterion_11() -> Outcome {
    for q in [2, 3] {
        let top = if q == 2 { 6 } else { 5 };
        for n1 in 0..=top {
            for n2 in 0..=top - n1 {
                let m = QMatroid::direct_sum(&QMatroid::uniform(n1, n1, q)?, &QMatroid::uniform(0, n2, q)?)?;
                let r = whitney(&m.materialize()?);
                ensure!(r == prime_free_whitney(n1, n2, q), "q = {}, n1 = {}, n2 = {}: {}", q, n1, n2, r);
            }
        }
    }
    Ok(())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("cloud-flock example over F_2^6", criterion_1),
        ("non-isomorphic modified uniform pair", criterion_2),
        ("five cyclic flats over F_2^5", criterion_3),
        ("duality", criterion_4),
        ("different cyclic flats, same Whitney function", criterion_5),
        ("direct sums with U_{1,2}", criterion_6),
        ("condensed configuration over F_2^8", criterion_7),
        ("reconstruction identities on fixtures", criterion_8),
        ("counting lemmas", criterion_9),
        ("extremal terms", criterion_10),
        ("prime-free Whitney functions", criterion_11),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = match catch_unwind(AssertUnwindSafe(f)) {
            Ok(r) => r.map_err(|e| e.to_string()),
            Err(p) => Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into())),
        };
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("criterion {:>2}: PASS  {} ({:.2}s)", i + 1, name, secs),
            Err(e) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {} ({:.2}s): {}", i + 1, name, secs, e);
            }
        }
    }
    if failed > 0 {
        println!("{} of {} criteria failed", failed, criteria.len());
        std::process::exit(1);
    }
}
