//! The invariant checks run by `verify`: each one recomputes a quantity in
//! two independent ways and compares.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use rand_core::RngCore;

use crate::analysis::Analysis;
use crate::axioms::{self, Mode};
use crate::condense::{coarsest_condensation, cf_recursion, verify_recursion, whitney_from_condensed};
use crate::error::Error;
use crate::invariants::{
    cloud, cloud_by_preimage, extremal_terms, flock, flock_by_preimage, star_product, subflock, supercloud, trunc_x,
    trunc_y, uniform_cloud, uniform_flock, whitney, whitney_by_preimages, whitney_from_cf, CloudFlockPair,
};
use crate::lattice::{cf_from_config, cf_lattice, config, cyclic_flat_lattice};
use crate::poly::BivariatePoly;
use crate::universe::RankTable;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    /// `None` when the check does not apply.
    pub outcome: Option<Result<(), String>>,
}

impl Check {
    pub fn passed(&self) -> bool {
        !matches!(self.outcome, Some(Err(_)))
    }
}

fn check(name: &'static str, f: impl FnOnce() -> Result<(), String>) -> Check {
    Check { name, outcome: Some(f()) }
}

fn skip(name: &'static str) -> Check {
    Check { name, outcome: None }
}

fn eq<T: PartialEq + core::fmt::Display>(what: &str, got: &T, want: &T) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{}: {} != {}", what, got, want))
    }
}

fn err(e: Error) -> String {
    format!("{}", e)
}

/// Runs the rank-axiom check in the requested mode, then every identity
/// that relates the Whitney function to the cyclic flats.
pub fn run<R: RngCore>(table: &RankTable, mode: Mode, samples: u64, rng: &mut R) -> Result<Vec<Check>, Error> {
    let a = Analysis::new(table);
    let q = table.ambient().q();
    let r = whitney(table);
    let ids = a.cyclic_flat_ids().to_vec();
    let mut out = Vec::new();

    out.push(check("rank axioms", || {
        let report = match mode {
            Mode::Exhaustive => axioms::validate_rank_axioms(table, Mode::Exhaustive).map_err(err)?,
            Mode::Sampled => axioms::validate_sampled(table, samples, rng),
        };
        match report.violation {
            None => Ok(()),
            Some(v) => Err(format!("{}", v)),
        }
    }));

    out.push(check("cyclic flats form a lattice", || {
        cyclic_flat_lattice(&a).map_err(err)?.check_laws().map_err(err)
    }));

    let pairs: Result<Vec<CloudFlockPair>, Error> =
        ids.iter().map(|&z| Ok(CloudFlockPair { cloud: cloud(&a, z)?, flock: flock(&a, z)? })).collect();
    let pairs = pairs?;

    out.push(check("cloud and flock from preimages", || {
        for (&z, p) in ids.iter().zip(&pairs) {
            eq("cloud", &cloud_by_preimage(&a, z).map_err(err)?, &p.cloud)?;
            eq("flock", &flock_by_preimage(&a, z).map_err(err)?, &p.flock)?;
        }
        Ok(())
    }));

    out.push(check("whitney from cloud-flock pairs", || eq("R", &whitney_from_cf(&pairs, q), &r)));

    out.push(check("whitney from supercloud and subflock", || {
        let mut s = BivariatePoly::zero();
        for &z in &ids {
            s.add_assign(&star_product(&supercloud(&a, z).map_err(err)?, &subflock(&a, z).map_err(err)?, q));
        }
        eq("R", &s, &r)
    }));

    out.push(check("whitney by preimage weights", || eq("R", &whitney_by_preimages(&a, q), &r)));

    out.push(check("cloud-flock lattice from configuration", || {
        let c = config(&a).map_err(err)?;
        let direct = cf_lattice(&a).map_err(err)?;
        let derived = cf_from_config(&c, q).map_err(err)?;
        if derived == direct {
            Ok(())
        } else {
            Err("labels differ".into())
        }
    }));

    let cc = coarsest_condensation(&config(&a)?);
    out.push(check("whitney from coarsest condensation", || {
        eq("R", &whitney_from_condensed(&cc, q).map_err(err)?, &r)
    }));

    out.push(check("condensed recursion against the matroid", || {
        let st = cf_recursion(&cc, q).map_err(err)?;
        verify_recursion(&a, &ids, &cc, &st).map_err(err)
    }));

    out.push(check("extremal terms count cyclic flats", || {
        let t = a.table();
        for (i, j, c) in extremal_terms(&r).map_err(err)? {
            let count = ids.iter().filter(|&&z| t.corank_id(z) as usize == i && t.nullity_id(z) as usize == j).count();
            eq(&format!("cyclic flats with corank {} and nullity {}", i, j), &BigInt::from(count), &c)?;
        }
        Ok(())
    }));

    if a.is_full() {
        out.push(check("truncations", || {
            let u = a.universe();
            let (rho, n) = (a.rank_full(), u.ambient().n());
            let zero = u.zero_id();
            let full = u.full_id();
            let mut inner = BivariatePoly::zero();
            for (&z, p) in ids.iter().zip(&pairs) {
                if z != zero && z != full {
                    inner.add_assign(&star_product(&p.cloud, &p.flock, q));
                }
            }
            let k0 = ids.iter().position(|&z| z == zero).expect("full");
            let ke = ids.iter().position(|&z| z == full).expect("full");
            eq("d_x(R)", &trunc_x(&r), &uniform_cloud(rho, n, q))?;
            eq("c", &trunc_x(&inner).add(&pairs[k0].cloud), &uniform_cloud(rho, n, q))?;
            eq("f", &trunc_y(&inner).add(&pairs[ke].flock), &uniform_flock(rho, n, q))
        }));
    } else {
        out.push(skip("truncations"));
    }
    Ok(out)
}
