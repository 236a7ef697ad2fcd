//! q-matroids as rank functions with interchangeable backends.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::analysis::Analysis;
use crate::axioms::{self, Mode};
use crate::error::Error;
use crate::field::{ExtElement, ExtensionField};
use crate::subspace::{self, Ambient, DirectSumFrame, Echelon, Subspace};
use crate::universe::{RankTable, Universe};
use crate::DEFAULT_MAX_N;

/// How ranks are evaluated.
#[derive(Debug)]
pub enum Backend {
    /// ρ(rowsp Y) = rk(G·Yᵀ) over the extension field.
    Represented { field: Arc<ExtensionField>, generator: Vec<Vec<ExtElement>> },
    /// ρ(V) = min over cyclic flats Z of ρ(Z) + dim(V+Z) − dim Z.
    CyclicFlats(Vec<(Subspace, u32)>),
    Table(RankTable),
    Uniform(u32),
    Dual { inner: QMatroid, inner_full_rank: u32 },
    /// Ground F_q^{dim X}, read through the RREF basis of X.
    Restriction { inner: QMatroid, x: Subspace },
    /// Ground F_q^{n − dim X}, coordinatized by the non-pivot columns of X.
    Contraction { inner: QMatroid, x: Subspace, rank_x: u32 },
    /// Evaluated through the sums Z_1 ⊕ Z_2 of cyclic flats of the summands.
    DirectSum { left: QMatroid, right: QMatroid, frame: DirectSumFrame, flats: Vec<(Subspace, u32)> },
    /// ρ'(V) = ρ(A⁻¹V); `inverse_t` holds the rows of (A⁻¹)ᵀ.
    Iso { inner: QMatroid, matrix: Vec<Vec<u32>>, inverse_t: Vec<u64> },
}

#[derive(Debug, Clone)]
pub struct QMatroid {
    amb: Ambient,
    backend: Arc<Backend>,
}

impl QMatroid {
    fn from_backend(amb: Ambient, backend: Backend) -> Self {
        QMatroid { amb, backend: Arc::new(backend) }
    }

    pub fn represented(field: Arc<ExtensionField>, generator: Vec<Vec<ExtElement>>) -> Result<Self, Error> {
        let n = generator.first().map_or(0, |r| r.len());
        if generator.iter().any(|r| r.len() != n) {
            return Err(Error::Shape("generator rows have different lengths".into()));
        }
        if generator.iter().flatten().any(|e| e.packed() >= field.size()) {
            return Err(Error::Range("generator entry outside the field".into()));
        }
        let amb = Ambient::new(field.q(), n as u32)?;
        Ok(QMatroid::from_backend(amb, Backend::Represented { field, generator }))
    }

    pub fn uniform(k: u32, n: u32, q: u32) -> Result<Self, Error> {
        if k > n {
            return Err(Error::Range(format!("U_{{{},{}}} needs k ≤ n", k, n)));
        }
        Ok(QMatroid::from_backend(Ambient::new(q, n)?, Backend::Uniform(k)))
    }

    pub fn from_table(table: RankTable) -> Self {
        QMatroid::from_backend(table.ambient(), Backend::Table(table))
    }

    /// Rank function extended from a list of cyclic flats without checking the axioms.
    pub fn from_cyclic_flats_unchecked(amb: Ambient, flats: Vec<(Subspace, u32)>) -> Result<Self, Error> {
        if flats.iter().any(|(z, _)| z.ambient() != amb) {
            return Err(Error::Shape("cyclic flat in a different ambient space".into()));
        }
        if flats.is_empty() {
            return Err(Error::Empty);
        }
        Ok(QMatroid::from_backend(amb, Backend::CyclicFlats(flats)))
    }

    /// U_{k,n} with each listed k-dimensional space demoted to rank k − 1.
    /// The result is checked exhaustively against the rank axioms, so n ≤ 6.
    pub fn modified_uniform(q: u32, k: u32, n: u32, demoted: &[Subspace]) -> Result<Self, Error> {
        if n > axioms::EXHAUSTIVE_MAX_N {
            return Err(Error::Scale { n, limit: axioms::EXHAUSTIVE_MAX_N });
        }
        if k == 0 {
            return Err(Error::Range("nothing to demote in U_{0,n}".into()));
        }
        let base = QMatroid::uniform(k, n, q)?;
        let table = base.materialize()?;
        let mut changes = Vec::new();
        for v in demoted {
            if v.dim() != k || v.ambient() != base.amb {
                return Err(Error::Shape(format!("demoted space {} is not a {}-space of F_{}^{}", v, k, q, n)));
            }
            changes.push((v.clone(), k - 1));
        }
        let table = table.with_overrides(&changes)?;
        let report = axioms::validate_rank_axioms(&table, Mode::Exhaustive)?;
        if let Some(v) = report.violation {
            return Err(Error::Axiom { axiom: v.axiom, detail: format!("{} and {}", v.v, v.w) });
        }
        Ok(QMatroid::from_table(table))
    }

    pub fn ambient(&self) -> Ambient {
        self.amb
    }

    pub fn n(&self) -> u32 {
        self.amb.n()
    }

    pub fn q(&self) -> u32 {
        self.amb.q()
    }

    pub fn backend(&self) -> &Backend {
        &self.backend
    }

    pub fn rank(&self, v: &Subspace) -> Result<u32, Error> {
        if v.ambient() != self.amb {
            return Err(Error::Shape(format!(
                "subspace of F_{}^{} given to a q-matroid on F_{}^{}",
                v.ambient().q(),
                v.n(),
                self.q(),
                self.n()
            )));
        }
        Ok(self.rank_unchecked(v))
    }

    /// ρ(E).
    pub fn full_rank(&self) -> u32 {
        self.rank_unchecked(&Subspace::full(self.amb))
    }

    pub(crate) fn rank_unchecked(&self, v: &Subspace) -> u32 {
        match &*self.backend {
            Backend::Represented { field, generator } => represented_rank(field, generator, self.amb, v),
            Backend::CyclicFlats(flats) | Backend::DirectSum { flats, .. } => flats
                .iter()
                .map(|(z, r)| r + z.sum_dim(v) - z.dim())
                .min()
                .expect("nonempty list"),
            Backend::Table(t) => t.rank_id(t.universe().id_of_rows(v.rows())),
            Backend::Uniform(k) => v.dim().min(*k),
            Backend::Dual { inner, inner_full_rank } => v.dim() + inner.rank_unchecked(&v.perp()) - inner_full_rank,
            Backend::Restriction { inner, x } => {
                let image = Subspace::from_coordinates(x, v).expect("checked ambient");
                inner.rank_unchecked(&image)
            }
            Backend::Contraction { inner, x, rank_x } => {
                let pre = Subspace::quotient_preimage(x, v).expect("checked ambient");
                inner.rank_unchecked(&pre) - rank_x
            }
            Backend::Iso { inner, inverse_t, .. } => inner.rank_unchecked(&v.transform(inverse_t)),
        }
    }

    /// Rank table over all of L(E), for n ≤ [`DEFAULT_MAX_N`].
    pub fn materialize(&self) -> Result<RankTable, Error> {
        self.materialize_with(DEFAULT_MAX_N)
    }

    pub fn materialize_with(&self, max_n: u32) -> Result<RankTable, Error> {
        if let Backend::Table(t) = &*self.backend {
            return Ok(t.clone());
        }
        let u = Universe::new(self.amb, max_n)?;
        self.materialize_in(&u)
    }

    pub fn materialize_in(&self, u: &Arc<Universe>) -> Result<RankTable, Error> {
        if u.ambient() != self.amb {
            return Err(Error::Shape("universe of a different ambient space".into()));
        }
        match &*self.backend {
            Backend::Table(t) => Ok(t.clone()),
            Backend::Dual { inner, inner_full_rank } => {
                let it = inner.materialize_in(u)?;
                Ok(RankTable::from_fn(u.clone(), |v| {
                    v.dim() + it.rank_id(u.id_of_rows(v.perp().rows())) - inner_full_rank
                }))
            }
            _ => Ok(RankTable::from_fn(u.clone(), |v| self.rank_unchecked(v))),
        }
    }

    /// cl(V): V plus every <x> with ρ(V + <x>) = ρ(V).
    pub fn closure(&self, v: &Subspace) -> Result<Subspace, Error> {
        let r = self.rank(v)?;
        let mut e = Echelon::from_subspace(v);
        let mut buf = Vec::new();
        subspace::for_each_cover_vector(v, |x| {
            subspace::cover_rows(v, x, &mut buf);
            if self.rank_unchecked(&Subspace::from_rref(self.amb, buf.clone())) == r {
                e.insert(x);
            }
        });
        Ok(e.into_subspace())
    }

    /// cyc(V): the intersection of the hyperplanes of V of smaller rank.
    pub fn cyclic_core(&self, v: &Subspace) -> Result<Subspace, Error> {
        let r = self.rank(v)?;
        let mut deficient = Vec::new();
        subspace::for_each_hyperplane_rows(v, |rows, a| {
            if self.rank_unchecked(&Subspace::from_rref(self.amb, rows.to_vec())) < r {
                deficient.push(a);
            }
        });
        let local = self.amb.with_dim(v.dim());
        let kernel = Subspace::span(local, deficient).perp();
        Ok(Subspace::span(self.amb, kernel.rows().iter().map(|&c| v.combine(c))))
    }

    pub fn dual(&self) -> QMatroid {
        QMatroid::from_backend(
            self.amb,
            Backend::Dual { inner: self.clone(), inner_full_rank: self.full_rank() },
        )
    }

    /// M|X on F_q^{dim X}.
    pub fn restrict(&self, x: &Subspace) -> Result<QMatroid, Error> {
        if x.ambient() != self.amb {
            return Err(Error::Shape("restriction to a subspace of another space".into()));
        }
        Ok(QMatroid::from_backend(
            self.amb.with_dim(x.dim()),
            Backend::Restriction { inner: self.clone(), x: x.clone() },
        ))
    }

    /// M/X on F_q^{n − dim X}.
    pub fn contract(&self, x: &Subspace) -> Result<QMatroid, Error> {
        let rank_x = self.rank(x)?;
        Ok(QMatroid::from_backend(
            self.amb.with_dim(self.n() - x.dim()),
            Backend::Contraction { inner: self.clone(), x: x.clone(), rank_x },
        ))
    }

    pub fn direct_sum(left: &QMatroid, right: &QMatroid) -> Result<QMatroid, Error> {
        QMatroid::direct_sum_with(left, right, DEFAULT_MAX_N)
    }

    /// Direct sum; the summands' cyclic flats are enumerated up to `max_n`.
    pub fn direct_sum_with(left: &QMatroid, right: &QMatroid, max_n: u32) -> Result<QMatroid, Error> {
        if left.q() != right.q() {
            return Err(Error::Field(left.q(), right.q()));
        }
        let frame = DirectSumFrame::new(left.amb, right.amb)?;
        let zl = cyclic_flats_with_ranks(left, max_n)?;
        let zr = cyclic_flats_with_ranks(right, max_n)?;
        let mut flats = Vec::with_capacity(zl.len() * zr.len());
        for (z1, r1) in &zl {
            for (z2, r2) in &zr {
                flats.push((frame.join(z1, z2), r1 + r2));
            }
        }
        Ok(QMatroid::from_backend(
            frame.whole,
            Backend::DirectSum { left: left.clone(), right: right.clone(), frame, flats },
        ))
    }

    /// The q-matroid with ρ'(AV) = ρ(V) for A acting on column vectors.
    pub fn apply_linear_iso(&self, a: &[Vec<u32>]) -> Result<QMatroid, Error> {
        let n = self.n() as usize;
        if a.len() != n || a.iter().any(|r| r.len() != n) {
            return Err(Error::Shape(format!("expected a {}×{} matrix", n, n)));
        }
        let inv = invert(self.amb, a)?;
        // rows of (A⁻¹)ᵀ are the columns of A⁻¹
        let inverse_t = (0..n)
            .map(|j| {
                let col: Vec<u32> = (0..n).map(|i| inv[i][j]).collect();
                self.amb.pack(&col)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(QMatroid::from_backend(
            self.amb,
            Backend::Iso { inner: self.clone(), matrix: a.to_vec(), inverse_t },
        ))
    }

    /// (M_full, n_trivial, n_free) with M = M_full ⊕ U_{0,n_trivial} ⊕ U_{n_free,n_free}
    /// up to equivalence, M_full = (M|cyc(E))/cl(0).
    pub fn full_decomposition(&self) -> Result<(QMatroid, u32, u32), Error> {
        let top = self.cyclic_core(&Subspace::full(self.amb))?;
        let bottom = self.closure(&Subspace::zero(self.amb))?;
        let n_trivial = bottom.dim();
        let n_free = self.n() - top.dim();
        let restricted = self.restrict(&top)?;
        let local_bottom = bottom.coordinates_in(&top)?;
        let full = restricted.contract(&local_bottom)?;
        Ok((full, n_trivial, n_free))
    }
}

fn cyclic_flats_with_ranks(m: &QMatroid, max_n: u32) -> Result<Vec<(Subspace, u32)>, Error> {
    if let Backend::CyclicFlats(flats) = &*m.backend {
        return Ok(flats.clone());
    }
    let a = Analysis::new(&m.materialize_with(max_n)?);
    Ok(a.cyclic_flat_ids().iter().map(|&id| (a.space(id).clone(), a.table().rank_id(id))).collect())
}

fn represented_rank(field: &ExtensionField, g: &[Vec<ExtElement>], amb: Ambient, v: &Subspace) -> u32 {
    let k = g.len();
    let mut pivots: Vec<(usize, Vec<ExtElement>)> = Vec::new();
    for &y in v.rows() {
        // u = G·y
        let mut u: Vec<ExtElement> = (0..k)
            .map(|i| {
                let mut acc = ExtElement::ZERO;
                for (l, &gil) in g[i].iter().enumerate() {
                    let c = amb.get(y, l);
                    if c != 0 && !gil.is_zero() {
                        let t = if c == 1 { gil } else { field.mul(gil, field.from_base(c)) };
                        acc = field.add(acc, t);
                    }
                }
                acc
            })
            .collect();
        for (p, row) in &pivots {
            if !u[*p].is_zero() {
                let c = u[*p];
                for (ui, &ri) in u.iter_mut().zip(row) {
                    *ui = field.sub(*ui, field.mul(c, ri));
                }
            }
        }
        if let Some(p) = u.iter().position(|e| !e.is_zero()) {
            let inv = field.inv(u[p]).expect("nonzero");
            let row: Vec<ExtElement> = u.iter().map(|&e| field.mul(e, inv)).collect();
            pivots.push((p, row));
            if pivots.len() == k {
                break;
            }
        }
    }
    pivots.len() as u32
}

/// Gauss–Jordan inverse over F_q.
fn invert(amb: Ambient, a: &[Vec<u32>]) -> Result<Vec<Vec<u32>>, Error> {
    let f = amb.field();
    let n = a.len();
    let mut m: Vec<Vec<u32>> = a
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row: Vec<u32> = r.iter().map(|&c| c % f.q()).collect();
            row.extend((0..n).map(|j| u32::from(i == j)));
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| m[r][col] != 0).ok_or(Error::Singular)?;
        m.swap(col, piv);
        let inv = f.inv(m[col][col])?;
        for x in m[col].iter_mut() {
            *x = f.mul(*x, inv);
        }
        for r in 0..n {
            if r != col && m[r][col] != 0 {
                let c = m[r][col];
                let pivot_row = m[col].clone();
                for (x, &p) in m[r].iter_mut().zip(&pivot_row) {
                    *x = f.sub(*x, f.mul(c, p));
                }
            }
        }
    }
    Ok(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

impl core::fmt::Display for QMatroid {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        let kind = match &*self.backend {
            Backend::Represented { .. } => "represented",
            Backend::CyclicFlats(_) => "cyclic_flats",
            Backend::Table(_) => "table",
            Backend::Uniform(_) => "uniform",
            Backend::Dual { .. } => "dual",
            Backend::Restriction { .. } => "restriction",
            Backend::Contraction { .. } => "contraction",
            Backend::DirectSum { .. } => "direct_sum",
            Backend::Iso { .. } => "iso",
        };
        write!(f, "{} q-matroid on F_{}^{}", kind, self.q(), self.n())
    }
}

#[allow(dead_code)]
fn assert_send_sync() {
    fn check<T: Send + Sync>() {}
    check::<QMatroid>();
}
