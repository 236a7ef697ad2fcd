//! Command line verbs.

use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::Value;

use qmat_core::axioms::{Mode, DEFAULT_SAMPLES, EXHAUSTIVE_MAX_N};
use qmat_core::condense::{coarsest_condensation, condensed_config, whitney_from_condensed, Condensation};
use qmat_core::invariants::{char_poly, extremal_terms, star_product, whitney, whitney_from_cf};
use qmat_core::lattice::{
    cf_dual, cf_from_config, cf_lattice, config, config_direct_sum, config_dual, CloudFlockLattice, Configuration,
};
use qmat_core::lift::{self, CyclicFlatsData};
use qmat_core::{suite, Analysis, BivariatePoly, QMatroid};

use crate::desc::{
    cf_desc, config_desc, cyclic_flats_desc, from_json, to_json, CondensationDesc, LatticeDesc, MatroidDesc,
    MatroidSetsDesc, PairDesc, PartitionDesc, PolyDesc, UniPolyDesc,
};
use crate::error::CliError;
use crate::render::{self, node_name};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Verb {
    Whitney,
    CharPoly,
    CyclicFlats,
    CloudFlock,
    Config,
    CfFromConfig,
    Dual,
    DirectSum,
    Condense,
    CondensedConfig,
    WhitneyFromCondensed,
    Extremal,
    FromCyclicFlats,
    LiftMatroid,
    Verify,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Exhaustive,
    Sampled,
}

#[derive(Debug, Clone, Parser)]
#[command(name = "qmat", version, about = "Invariants of q-matroids: Whitney functions, cyclic flats, configurations")]
pub struct Args {
    pub verb: Verb,
    /// Input descriptor (JSON). Repeat for verbs taking two inputs.
    #[arg(long, short)]
    pub input: Vec<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    /// Rank-axiom check used by `verify`; exhaustive up to n = 6 by default.
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub samples: Option<u64>,
    /// Field size for inputs that do not carry one.
    #[arg(long)]
    pub q: Option<u32>,
}

/// A parsed input file.
#[derive(Debug, Clone)]
pub enum Input {
    Matroid(MatroidDesc),
    Sets(MatroidSetsDesc),
    Config(LatticeDesc<(u32, u32)>),
    Cf(LatticeDesc<PairDesc>),
    Condensation(CondensationDesc),
    Partition(PartitionDesc),
    Poly(PolyDesc),
}

fn conv<T: serde::de::DeserializeOwned>(v: Value) -> Result<T, CliError> {
    serde_json::from_value(v).map_err(CliError::parse)
}

impl Input {
    /// Picks the schema from the keys present.
    pub fn from_value(v: Value) -> Result<Input, CliError> {
        let obj = v.as_object().ok_or_else(|| CliError::Parse("expected a JSON object".into()))?;
        let has = |k: &str| obj.contains_key(k);
        let cf = obj.get("labels").and_then(Value::as_array).and_then(|l| l.first()).is_some_and(Value::is_object);
        if has("kind") {
            Ok(Input::Matroid(conv(v)?))
        } else if has("gamma") {
            Ok(Input::Condensation(conv(v)?))
        } else if has("labels") {
            if cf {
                Ok(Input::Cf(conv(v)?))
            } else {
                Ok(Input::Config(conv(v)?))
            }
        } else if has("blocks") {
            Ok(Input::Partition(conv(v)?))
        } else if has("coeffs") {
            Ok(Input::Poly(conv(v)?))
        } else if has("sets") {
            Ok(Input::Sets(conv(v)?))
        } else {
            Err(CliError::Parse("unrecognized descriptor".into()))
        }
    }

    pub fn parse(text: &str) -> Result<Input, CliError> {
        Input::from_value(from_json(text)?)
    }

    fn kind(&self) -> &'static str {
        match self {
            Input::Matroid(_) => "matroid",
            Input::Sets(_) => "matroid cyclic sets",
            Input::Config(_) => "configuration",
            Input::Cf(_) => "cloud-flock lattice",
            Input::Condensation(_) => "condensation",
            Input::Partition(_) => "partition",
            Input::Poly(_) => "polynomial",
        }
    }
}

struct Ctx<'a> {
    args: &'a Args,
    max_n: u32,
    inputs: Vec<Input>,
}

fn unexpected(verb: Verb, i: &Input) -> CliError {
    CliError::Parse(format!("{:?} does not accept a {}", verb, i.kind()))
}

fn json<T: Serialize>(v: &T) -> String {
    let mut s = to_json(v);
    s.push('\n');
    s
}

impl Ctx<'_> {
    fn one(&self) -> Result<&Input, CliError> {
        match self.inputs.as_slice() {
            [i] => Ok(i),
            other => Err(CliError::Parse(format!("expected one input, got {}", other.len()))),
        }
    }

    fn two(&self) -> Result<(&Input, &Input), CliError> {
        match self.inputs.as_slice() {
            [a, b] => Ok((a, b)),
            other => Err(CliError::Parse(format!("expected two inputs, got {}", other.len()))),
        }
    }

    fn q(&self, own: Option<u32>) -> Result<u32, CliError> {
        own.or(self.args.q).ok_or_else(|| CliError::Parse("field size unknown: pass --q".into()))
    }

    fn analysis(&self, d: &MatroidDesc) -> Result<(QMatroid, Analysis), CliError> {
        let m = d.build(self.max_n)?;
        let a = Analysis::new(&m.materialize_with(self.max_n)?);
        Ok((m, a))
    }

    /// Configuration of a matroid or configuration input.
    fn configuration(&self, i: &Input) -> Result<(Configuration, Option<u32>), CliError> {
        match i {
            Input::Matroid(d) => {
                let (m, a) = self.analysis(d)?;
                Ok((config(&a)?, Some(m.q())))
            }
            Input::Sets(s) => Ok((lift::matroid_config(&s.build()?)?, self.args.q)),
            Input::Config(c) => Ok((c.build()?, c.q.or(self.args.q))),
            other => Err(unexpected(self.args.verb, other)),
        }
    }

    fn poly_out(&self, p: &BivariatePoly) -> String {
        match self.args.format {
            Format::Json => json(&PolyDesc::of(p)),
            _ => format!("{}\n", p),
        }
    }

    fn flats_out(&self, a: &Analysis) -> Result<String, CliError> {
        let t = a.table();
        let ids = a.cyclic_flat_ids();
        let data = CyclicFlatsData {
            ambient: t.ambient(),
            flats: ids.iter().map(|&z| (a.space(z).clone(), t.rank_id(z))).collect(),
        };
        Ok(match self.args.format {
            Format::Json => json(&cyclic_flats_desc(&data)),
            Format::Dot => {
                let l = qmat_core::lattice::cyclic_flat_lattice(a)?;
                render::dot(&l, node_name, |i| format!("{} {}", node_name(i), l.label(i)))
            }
            Format::Text => {
                let l = qmat_core::lattice::cyclic_flat_lattice(a)?;
                let rows: Vec<Vec<String>> = ids
                    .iter()
                    .enumerate()
                    .map(|(i, &z)| {
                        vec![
                            node_name(i),
                            a.space(z).to_string(),
                            a.space(z).dim().to_string(),
                            t.rank_id(z).to_string(),
                            t.corank_id(z).to_string(),
                            t.nullity_id(z).to_string(),
                        ]
                    })
                    .collect();
                let mut s = render::table(&["flat", "space", "dim", "rank", "corank", "nullity"], &rows);
                s.push_str(&render::covers_text(&l, node_name));
                s
            }
        })
    }

    fn config_out(&self, c: &Configuration, q: Option<u32>) -> String {
        match self.args.format {
            Format::Json => json(&config_desc(c, q)),
            Format::Dot => render::dot(c, node_name, |i| format!("{} {}", node_name(i), render::config_label(c.label(i)))),
            Format::Text => {
                let rows: Vec<Vec<String>> =
                    (0..c.len()).map(|i| vec![node_name(i), render::config_label(c.label(i))]).collect();
                let mut s = render::table(&["node", "(corank,nullity)"], &rows);
                s.push_str(&render::covers_text(c, node_name));
                s
            }
        }
    }

    fn cf_out(&self, cf: &CloudFlockLattice, q: u32, spaces: Option<&[String]>) -> String {
        match self.args.format {
            Format::Json => json(&cf_desc(cf, Some(q))),
            Format::Dot => render::dot(cf, node_name, |i| format!("{} {}", node_name(i), render::pair_label(cf.label(i)))),
            Format::Text => {
                let rows: Vec<Vec<String>> = (0..cf.len())
                    .map(|i| {
                        let p = cf.label(i);
                        let mut r = vec![node_name(i)];
                        if let Some(s) = spaces {
                            r.push(s[i].clone());
                        }
                        r.push(p.cloud.to_string());
                        r.push(p.flock.to_string());
                        r.push(star_product(&p.cloud, &p.flock, q).to_string());
                        r
                    })
                    .collect();
                let header: &[&str] =
                    if spaces.is_some() { &["flat", "space", "cloud", "flock", "h"] } else { &["node", "cloud", "flock", "h"] };
                let mut s = render::table(header, &rows);
                s.push_str(&render::covers_text(cf, node_name));
                s
            }
        }
    }

    fn condensation_out(&self, c: &Condensation, q: Option<u32>) -> String {
        match self.args.format {
            Format::Json => json(&CondensationDesc::of(c, q)),
            Format::Dot => render::condensation_dot(c),
            Format::Text => render::condensation_text(c),
        }
    }

    fn run(&self) -> Result<String, CliError> {
        let verb = self.args.verb;
        match verb {
            Verb::Whitney => match self.one()? {
                Input::Matroid(d) => {
                    let m = d.build(self.max_n)?;
                    Ok(self.poly_out(&whitney(&m.materialize_with(self.max_n)?)))
                }
                Input::Cf(c) => {
                    let q = self.q(c.q)?;
                    Ok(self.poly_out(&whitney_from_cf(c.build()?.labels(), q)))
                }
                i @ (Input::Config(_) | Input::Sets(_)) => {
                    let (c, q) = self.configuration(i)?;
                    let q = self.q(q)?;
                    Ok(self.poly_out(&whitney_from_cf(cf_from_config(&c, q)?.labels(), q)))
                }
                other => Err(unexpected(verb, other)),
            },
            Verb::CharPoly => {
                let p = match self.one()? {
                    Input::Matroid(d) => {
                        let m = d.build(self.max_n)?;
                        char_poly(&whitney(&m.materialize_with(self.max_n)?), m.q())
                    }
                    Input::Poly(r) => char_poly(&r.build()?, self.q(None)?),
                    other => return Err(unexpected(verb, other)),
                };
                Ok(match self.args.format {
                    Format::Json => json(&UniPolyDesc::of(&p)),
                    _ => format!("{}\n", p),
                })
            }
            Verb::CyclicFlats => match self.one()? {
                Input::Matroid(d) => self.flats_out(&self.analysis(d)?.1),
                other => Err(unexpected(verb, other)),
            },
            Verb::CloudFlock => match self.one()? {
                Input::Matroid(d) => {
                    let (m, a) = self.analysis(d)?;
                    let spaces: Vec<String> = a.cyclic_flat_ids().iter().map(|&z| a.space(z).to_string()).collect();
                    Ok(self.cf_out(&cf_lattice(&a)?, m.q(), Some(&spaces)))
                }
                i @ Input::Config(_) => {
                    let (c, q) = self.configuration(i)?;
                    let q = self.q(q)?;
                    Ok(self.cf_out(&cf_from_config(&c, q)?, q, None))
                }
                other => Err(unexpected(verb, other)),
            },
            Verb::Config => {
                let (c, q) = self.configuration(self.one()?)?;
                Ok(self.config_out(&c, q))
            }
            Verb::CfFromConfig => match self.one()? {
                i @ (Input::Config(_) | Input::Matroid(_) | Input::Sets(_)) => {
                    let (c, q) = self.configuration(i)?;
                    let q = self.q(q)?;
                    Ok(self.cf_out(&cf_from_config(&c, q)?, q, None))
                }
                other => Err(unexpected(verb, other)),
            },
            Verb::Dual => match self.one()? {
                Input::Matroid(d) => {
                    let m = d.build(self.max_n)?.dual();
                    self.flats_out(&Analysis::new(&m.materialize_with(self.max_n)?))
                }
                Input::Config(c) => Ok(self.config_out(&config_dual(&c.build()?), c.q)),
                Input::Cf(c) => {
                    let q = self.q(c.q)?;
                    Ok(self.cf_out(&cf_dual(&c.build()?, q)?, q, None))
                }
                other => Err(unexpected(verb, other)),
            },
            Verb::DirectSum => match self.two()? {
                (Input::Matroid(l), Input::Matroid(r)) => {
                    let m = QMatroid::direct_sum_with(&l.build(self.max_n)?, &r.build(self.max_n)?, self.max_n)?;
                    self.flats_out(&Analysis::new(&m.materialize_with(self.max_n)?))
                }
                (Input::Config(l), Input::Config(r)) => {
                    let q = l.q.or(r.q);
                    Ok(self.config_out(&config_direct_sum(&l.build()?, &r.build()?)?, q))
                }
                (l, r) => Err(CliError::Parse(format!("cannot add a {} and a {}", l.kind(), r.kind()))),
            },
            Verb::Condense => {
                let (c, q) = self.configuration(self.one()?)?;
                Ok(self.condensation_out(&coarsest_condensation(&c), q))
            }
            Verb::CondensedConfig => {
                let (l, p) = self.two()?;
                let (l, p) = match (l, p) {
                    (Input::Partition(p), l) | (l, Input::Partition(p)) => (l, p),
                    _ => return Err(CliError::Parse("expected a partition input".into())),
                };
                let (c, q) = self.configuration(l)?;
                Ok(self.condensation_out(&condensed_config(&c, &p.blocks)?, q))
            }
            Verb::WhitneyFromCondensed => match self.one()? {
                Input::Condensation(c) => {
                    let q = self.q(c.q)?;
                    Ok(self.poly_out(&whitney_from_condensed(&c.build()?, q)?))
                }
                i => {
                    let (c, q) = self.configuration(i)?;
                    let q = self.q(q)?;
                    Ok(self.poly_out(&whitney_from_condensed(&coarsest_condensation(&c), q)?))
                }
            },
            Verb::Extremal => {
                let r = match self.one()? {
                    Input::Matroid(d) => whitney(&d.build(self.max_n)?.materialize_with(self.max_n)?),
                    Input::Poly(p) => p.build()?,
                    other => return Err(unexpected(verb, other)),
                };
                let terms = extremal_terms(&r)?;
                Ok(match self.args.format {
                    Format::Json => {
                        let v: Vec<(usize, usize, String)> = terms.iter().map(|(i, j, c)| (*i, *j, c.to_string())).collect();
                        json(&v)
                    }
                    _ => {
                        let rows: Vec<Vec<String>> =
                            terms.iter().map(|(i, j, c)| vec![i.to_string(), j.to_string(), c.to_string()]).collect();
                        render::table(&["corank", "nullity", "count"], &rows)
                    }
                })
            }
            Verb::FromCyclicFlats => match self.one()? {
                Input::Matroid(d @ MatroidDesc::CyclicFlats { .. }) => {
                    let m = lift::from_cyclic_flats_with(&d.cyclic_flats_data()?, self.max_n)?;
                    self.flats_out(&Analysis::new(&m.materialize_with(self.max_n)?))
                }
                other => Err(unexpected(verb, other)),
            },
            Verb::LiftMatroid => {
                let (data, q) = match self.one()? {
                    Input::Sets(s) => (s.build()?, self.q(None).unwrap_or(2)),
                    Input::Matroid(MatroidDesc::MatroidLift { q, n, sets }) => {
                        (MatroidSetsDesc { n: *n, sets: sets.clone() }.build()?, *q)
                    }
                    other => return Err(unexpected(verb, other)),
                };
                let lifted = lift::lift_matroid(&data, q)?;
                let m = lift::from_cyclic_flats_with(&lifted, self.max_n)?;
                self.flats_out(&Analysis::new(&m.materialize_with(self.max_n)?))
            }
            Verb::Verify => match self.one()? {
                Input::Matroid(d) => self.verify(d),
                other => Err(unexpected(verb, other)),
            },
        }
    }

    fn verify(&self, d: &MatroidDesc) -> Result<String, CliError> {
        let m = d.build(self.max_n)?;
        let t = m.materialize_with(self.max_n)?;
        let mode = match self.args.mode {
            Some(ModeArg::Exhaustive) => Mode::Exhaustive,
            Some(ModeArg::Sampled) => Mode::Sampled,
            None if m.n() <= EXHAUSTIVE_MAX_N => Mode::Exhaustive,
            None => Mode::Sampled,
        };
        let mut rng = ChaCha8Rng::seed_from_u64(self.args.seed);
        let checks = suite::run(&t, mode, self.args.samples.unwrap_or(DEFAULT_SAMPLES), &mut rng)?;
        let ok = checks.iter().all(|c| c.passed());
        let out = match self.args.format {
            Format::Json => {
                let v: Vec<Value> = checks
                    .iter()
                    .map(|c| {
                        let (status, detail) = match &c.outcome {
                            None => ("skip", None),
                            Some(Ok(())) => ("pass", None),
                            Some(Err(e)) => ("fail", Some(e.clone())),
                        };
                        serde_json::json!({ "check": c.name, "status": status, "detail": detail })
                    })
                    .collect();
                json(&v)
            }
            _ => {
                let rows: Vec<Vec<String>> = checks
                    .iter()
                    .map(|c| {
                        let (status, detail) = match &c.outcome {
                            None => ("skip", String::new()),
                            Some(Ok(())) => ("pass", String::new()),
                            Some(Err(e)) => ("FAIL", e.clone()),
                        };
                        vec![c.name.to_string(), status.to_string(), detail]
                    })
                    .collect();
                render::table(&["check", "result", "detail"], &rows)
            }
        };
        if ok {
            Ok(out)
        } else {
            Err(CliError::Failed(out))
        }
    }
}

/// Reads and classifies the inputs, then runs the verb.
pub fn run(args: &Args, max_n: u32) -> Result<String, CliError> {
    let inputs = args
        .input
        .iter()
        .map(|p| {
            let text = std::fs::read_to_string(p).map_err(|source| CliError::Io { path: p.clone(), source })?;
            Input::parse(&text)
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Ctx { args, max_n, inputs }.run()
}

/// `QMAT_MAX_N`, defaulting to the core limit.
pub fn max_n_from_env() -> Result<u32, CliError> {
    match std::env::var("QMAT_MAX_N") {
        Ok(s) => s.trim().parse().map_err(|_| CliError::Parse(format!("QMAT_MAX_N={:?} is not a number", s))),
        Err(_) => Ok(qmat_core::DEFAULT_MAX_N),
    }
}
