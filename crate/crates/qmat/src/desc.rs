//! JSON descriptors for matroids, subspaces, polynomials, lattices and
//! condensations.

use std::sync::Arc;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use qmat_core::condense::Condensation;
use qmat_core::invariants::CloudFlockPair;
use qmat_core::lattice::{CloudFlockLattice, Configuration, LabeledLattice};
use qmat_core::lift::{self, CyclicFlatsData, MatroidCyclicData};
use qmat_core::subspace::parse_subspace;
use qmat_core::{Ambient, BivariatePoly, ExtensionField, QMatroid, Subspace, UnivariatePoly, Var};

use crate::error::CliError;

/// A subspace either as rows of digits or in the `<e1+e2, e3>` form.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SubspaceDesc {
    Rows { n: u32, rows: Vec<Vec<u32>> },
    Text(String),
}

impl SubspaceDesc {
    pub fn of(v: &Subspace) -> Self {
        SubspaceDesc::Rows { n: v.n(), rows: v.digit_rows() }
    }

    pub fn build(&self, amb: Ambient) -> Result<Subspace, CliError> {
        match self {
            SubspaceDesc::Rows { n, rows } => {
                if *n != amb.n() {
                    return Err(CliError::Parse(format!("subspace of F^{} where F^{} was expected", n, amb.n())));
                }
                Subspace::from_rows(amb, rows).map_err(CliError::parse)
            }
            SubspaceDesc::Text(s) => parse_subspace(amb, s).map_err(CliError::parse),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FieldDesc {
    pub m: u32,
    /// Coefficients from the constant term up to the leading 1.
    pub min_poly: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FlatDesc {
    pub space: SubspaceDesc,
    pub rank: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SetDesc {
    /// Elements of [n], counted from 1.
    pub elements: Vec<u32>,
    pub rank: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MatroidDesc {
    Represented { q: u32, field: FieldDesc, generator: Vec<Vec<String>> },
    Uniform { q: u32, k: u32, n: u32 },
    CyclicFlats { q: u32, n: u32, flats: Vec<FlatDesc> },
    ModifiedUniform { q: u32, k: u32, n: u32, demoted: Vec<SubspaceDesc> },
    MatroidLift { q: u32, n: u32, sets: Vec<SetDesc> },
    Dual { of: Box<MatroidDesc> },
    DirectSum { left: Box<MatroidDesc>, right: Box<MatroidDesc> },
    Restriction { of: Box<MatroidDesc>, x: SubspaceDesc },
    Contraction { of: Box<MatroidDesc>, x: SubspaceDesc },
    Iso { of: Box<MatroidDesc>, matrix: Vec<Vec<u32>> },
}

/// Matroid cyclic sets on [n], the input of `lift-matroid`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatroidSetsDesc {
    pub n: u32,
    pub sets: Vec<SetDesc>,
}

impl MatroidSetsDesc {
    pub fn build(&self) -> Result<MatroidCyclicData, CliError> {
        let sets = self
            .sets
            .iter()
            .map(|s| {
                let mut mask = 0u32;
                for &e in &s.elements {
                    if e == 0 || e > self.n || e > 31 {
                        return Err(CliError::Parse(format!("element {} is not in [{}]", e, self.n)));
                    }
                    mask |= 1 << (e - 1);
                }
                Ok((mask, s.rank))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(MatroidCyclicData { n: self.n, sets })
    }
}

pub fn cyclic_flats_desc(data: &CyclicFlatsData) -> MatroidDesc {
    MatroidDesc::CyclicFlats {
        q: data.ambient.q(),
        n: data.ambient.n(),
        flats: data.flats.iter().map(|(z, r)| FlatDesc { space: SubspaceDesc::of(z), rank: *r }).collect(),
    }
}

impl MatroidDesc {
    /// Builds the matroid; `max_n` bounds any enumeration needed on the way.
    pub fn build(&self, max_n: u32) -> Result<QMatroid, CliError> {
        Ok(match self {
            MatroidDesc::Represented { q, field, generator } => {
                let f = Arc::new(ExtensionField::new(*q, field.m, &field.min_poly).map_err(CliError::parse)?);
                let g = generator
                    .iter()
                    .map(|row| row.iter().map(|s| f.parse_element(s)).collect::<Result<Vec<_>, _>>())
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(CliError::parse)?;
                QMatroid::represented(f, g).map_err(CliError::parse)?
            }
            MatroidDesc::Uniform { q, k, n } => QMatroid::uniform(*k, *n, *q).map_err(CliError::parse)?,
            MatroidDesc::CyclicFlats { .. } => lift::from_cyclic_flats_with(&self.cyclic_flats_data()?, max_n)?,
            MatroidDesc::ModifiedUniform { q, k, n, demoted } => {
                let amb = Ambient::new(*q, *n).map_err(CliError::parse)?;
                let spaces = demoted.iter().map(|d| d.build(amb)).collect::<Result<Vec<_>, _>>()?;
                QMatroid::modified_uniform(*q, *k, *n, &spaces)?
            }
            MatroidDesc::MatroidLift { q, n, sets } => {
                let data = MatroidSetsDesc { n: *n, sets: sets.clone() }.build()?;
                lift::from_cyclic_flats_with(&lift::lift_matroid(&data, *q)?, max_n)?
            }
            MatroidDesc::Dual { of } => of.build(max_n)?.dual(),
            MatroidDesc::DirectSum { left, right } => {
                QMatroid::direct_sum_with(&left.build(max_n)?, &right.build(max_n)?, max_n)?
            }
            MatroidDesc::Restriction { of, x } => {
                let m = of.build(max_n)?;
                let x = x.build(m.ambient())?;
                m.restrict(&x)?
            }
            MatroidDesc::Contraction { of, x } => {
                let m = of.build(max_n)?;
                let x = x.build(m.ambient())?;
                m.contract(&x)?
            }
            MatroidDesc::Iso { of, matrix } => of.build(max_n)?.apply_linear_iso(matrix)?,
        })
    }

    pub fn cyclic_flats_data(&self) -> Result<CyclicFlatsData, CliError> {
        match self {
            MatroidDesc::CyclicFlats { q, n, flats } => {
                let amb = Ambient::new(*q, *n).map_err(CliError::parse)?;
                let flats = flats.iter().map(|f| Ok((f.space.build(amb)?, f.rank))).collect::<Result<Vec<_>, CliError>>()?;
                Ok(CyclicFlatsData { ambient: amb, flats })
            }
            _ => Err(CliError::Parse("expected a cyclic_flats descriptor".into())),
        }
    }
}

/// Integer coefficients as JSON numbers when they fit, strings otherwise.
fn int_value(c: &BigInt) -> Value {
    match i64::try_from(c) {
        Ok(v) => Value::from(v),
        Err(_) => Value::String(c.to_string()),
    }
}

fn value_int(v: &Value) -> Result<BigInt, CliError> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| CliError::Parse(format!("coefficient {} is not an integer", n))),
        Value::String(s) => s.parse().map_err(|_| CliError::Parse(format!("coefficient {:?} is not an integer", s))),
        other => Err(CliError::Parse(format!("coefficient {} is not an integer", other))),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolyDesc {
    pub deg_x: Option<usize>,
    pub deg_y: Option<usize>,
    /// Rows by x-exponent, columns by y-exponent.
    pub coeffs: Vec<Vec<Value>>,
}

impl PolyDesc {
    pub fn of(p: &BivariatePoly) -> Self {
        PolyDesc {
            deg_x: p.deg_x(),
            deg_y: p.deg_y(),
            coeffs: p.matrix().iter().map(|r| r.iter().map(int_value).collect()).collect(),
        }
    }

    pub fn build(&self) -> Result<BivariatePoly, CliError> {
        let rows = self
            .coeffs
            .iter()
            .map(|r| r.iter().map(value_int).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        let p = BivariatePoly::from_matrix(rows);
        if p.deg_x() != self.deg_x || p.deg_y() != self.deg_y {
            return Err(CliError::Parse("degrees do not match the coefficients".into()));
        }
        Ok(p)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UniPolyDesc {
    /// Constant term first.
    pub coeffs: Vec<Value>,
}

impl UniPolyDesc {
    pub fn of(p: &UnivariatePoly) -> Self {
        UniPolyDesc { coeffs: p.coeffs().iter().map(int_value).collect() }
    }

    pub fn build(&self, var: Var) -> Result<UnivariatePoly, CliError> {
        Ok(UnivariatePoly::new(var, self.coeffs.iter().map(value_int).collect::<Result<_, _>>()?))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairDesc {
    pub cloud: UniPolyDesc,
    pub flock: UniPolyDesc,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LatticeDesc<L> {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<u32>,
    pub labels: Vec<L>,
    /// Cover pairs (lower, upper).
    pub covers: Vec<(usize, usize)>,
}

pub fn config_desc(c: &Configuration, q: Option<u32>) -> LatticeDesc<(u32, u32)> {
    LatticeDesc { q, labels: c.labels().to_vec(), covers: c.covers() }
}

pub fn cf_desc(c: &CloudFlockLattice, q: Option<u32>) -> LatticeDesc<PairDesc> {
    LatticeDesc {
        q,
        labels: c.labels().iter().map(|p| PairDesc { cloud: UniPolyDesc::of(&p.cloud), flock: UniPolyDesc::of(&p.flock) }).collect(),
        covers: c.covers(),
    }
}

impl LatticeDesc<(u32, u32)> {
    pub fn build(&self) -> Result<Configuration, CliError> {
        Ok(LabeledLattice::from_covers(self.labels.clone(), &self.covers)?)
    }
}

impl LatticeDesc<PairDesc> {
    pub fn build(&self) -> Result<CloudFlockLattice, CliError> {
        let labels = self
            .labels
            .iter()
            .map(|p| Ok(CloudFlockPair { cloud: p.cloud.build(Var::X)?, flock: p.flock.build(Var::Y)? }))
            .collect::<Result<Vec<_>, CliError>>()?;
        Ok(LabeledLattice::from_covers(labels, &self.covers)?)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CondensationDesc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<u32>,
    #[serde(default)]
    pub blocks: Vec<Vec<usize>>,
    pub gamma: Vec<Vec<u64>>,
    pub lambda: Vec<(u32, u32)>,
}

impl CondensationDesc {
    pub fn of(c: &Condensation, q: Option<u32>) -> Self {
        CondensationDesc { q, blocks: c.blocks().to_vec(), gamma: c.gamma().to_vec(), lambda: c.lambda().to_vec() }
    }

    pub fn build(&self) -> Result<Condensation, CliError> {
        Ok(Condensation::new(self.gamma.clone(), self.lambda.clone())?)
    }
}

/// A partition of the cyclic flats, by node index.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PartitionDesc {
    pub blocks: Vec<Vec<usize>>,
}

pub fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))
}

pub fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("descriptors serialize")
}
