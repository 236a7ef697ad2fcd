//! Subspaces of F_q^n in canonical reduced row echelon form.
//!
//! A vector is packed into a `u64`, coordinate `i` occupying the digit at
//! bit offset `(n - 1 - i) * bits` where `bits` is the width of a residue
//! mod q. For q = 2 this is a plain bit vector with e_1 as the most
//! significant bit, so addition is XOR.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::error::Error;
use crate::field::PrimeField;

/// Hard limit on the ambient dimension.
pub const MAX_AMBIENT: u32 = 16;

/// The space F_q^n together with its packing parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ambient {
    q: u32,
    n: u32,
    bits: u32,
}

impl Ambient {
    pub fn new(q: u32, n: u32) -> Result<Self, Error> {
        let field = PrimeField::new(q)?;
        let bits = 32 - (field.q() - 1).leading_zeros();
        if n > MAX_AMBIENT || n * bits > 64 {
            return Err(Error::Range(format!("ambient dimension {} too large for q = {}", n, q)));
        }
        Ok(Ambient { q, n, bits })
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.q
    }

    #[inline]
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn field(&self) -> PrimeField {
        PrimeField::new(self.q).expect("checked at construction")
    }

    /// Same field, different dimension.
    pub fn with_dim(&self, n: u32) -> Ambient {
        Ambient::new(self.q, n).expect("smaller or equal packing width")
    }

    #[inline]
    fn shift(&self, i: usize) -> u32 {
        (self.n - 1 - i as u32) * self.bits
    }

    #[inline]
    fn digit_mask(&self) -> u64 {
        (1u64 << self.bits) - 1
    }

    /// Mask of all used bits.
    pub fn full_mask(&self) -> u64 {
        low_mask(self.n * self.bits)
    }

    #[inline]
    pub fn get(&self, v: u64, i: usize) -> u32 {
        ((v >> self.shift(i)) & self.digit_mask()) as u32
    }

    #[inline]
    pub fn set(&self, v: u64, i: usize, c: u32) -> u64 {
        let s = self.shift(i);
        (v & !(self.digit_mask() << s)) | ((c as u64) << s)
    }

    pub fn unit(&self, i: usize) -> u64 {
        1u64 << self.shift(i)
    }

    #[inline]
    pub fn add(&self, v: u64, w: u64) -> u64 {
        if self.q == 2 {
            return v ^ w;
        }
        let mut r = 0;
        for i in 0..self.n as usize {
            let c = (self.get(v, i) + self.get(w, i)) % self.q;
            r |= (c as u64) << self.shift(i);
        }
        r
    }

    #[inline]
    pub fn scale(&self, v: u64, c: u32) -> u64 {
        if self.q == 2 || c == 1 {
            return if c == 0 { 0 } else { v };
        }
        let mut r = 0;
        for i in 0..self.n as usize {
            let d = (self.get(v, i) * c) % self.q;
            r |= (d as u64) << self.shift(i);
        }
        r
    }

    #[inline]
    pub fn neg(&self, v: u64) -> u64 {
        self.scale(v, self.q - 1)
    }

    /// v + c·w
    #[inline]
    pub fn axpy(&self, v: u64, c: u32, w: u64) -> u64 {
        if c == 0 {
            return v;
        }
        self.add(v, self.scale(w, c))
    }

    /// Index of the first nonzero coordinate.
    #[inline]
    pub fn lead(&self, v: u64) -> Option<usize> {
        if v == 0 {
            return None;
        }
        let top = 63 - v.leading_zeros();
        Some((self.n - 1 - top / self.bits) as usize)
    }

    /// Scales v so that its leading entry is 1.
    pub fn normalize(&self, v: u64) -> u64 {
        match self.lead(v) {
            None => 0,
            Some(p) => {
                let c = self.get(v, p);
                self.scale(v, self.field().inv(c).expect("nonzero"))
            }
        }
    }

    pub fn dot(&self, v: u64, w: u64) -> u32 {
        if self.q == 2 {
            return (v & w).count_ones() & 1;
        }
        (0..self.n as usize).fold(0, |acc, i| (acc + self.get(v, i) * self.get(w, i)) % self.q)
    }

    pub fn pack(&self, digits: &[u32]) -> Result<u64, Error> {
        if digits.len() != self.n as usize {
            return Err(Error::Shape(format!(
                "row of length {} in ambient dimension {}",
                digits.len(),
                self.n
            )));
        }
        let mut v = 0;
        for (i, &c) in digits.iter().enumerate() {
            if c >= self.q {
                return Err(Error::Range(format!("entry {} not reduced mod {}", c, self.q)));
            }
            v = self.set(v, i, c);
        }
        Ok(v)
    }

    pub fn unpack(&self, v: u64) -> Vec<u32> {
        (0..self.n as usize).map(|i| self.get(v, i)).collect()
    }
}

#[inline]
fn low_mask(bits: u32) -> u64 {
    if bits >= 64 {
        u64::MAX
    } else {
        (1u64 << bits) - 1
    }
}

#[inline]
fn shl(v: u64, s: u32) -> u64 {
    if s >= 64 {
        0
    } else {
        v << s
    }
}

#[inline]
fn shr(v: u64, s: u32) -> u64 {
    if s >= 64 {
        0
    } else {
        v >> s
    }
}

/// Incrementally built reduced echelon basis.
#[derive(Debug, Clone)]
pub(crate) struct Echelon {
    amb: Ambient,
    rows: Vec<u64>,
    leads: Vec<usize>,
}

impl Echelon {
    pub(crate) fn new(amb: Ambient) -> Self {
        Echelon { amb, rows: Vec::new(), leads: Vec::new() }
    }

    pub(crate) fn from_subspace(v: &Subspace) -> Self {
        let leads = v.rows.iter().map(|&r| v.amb.lead(r).expect("nonzero row")).collect();
        Echelon { amb: v.amb, rows: v.rows.clone(), leads }
    }

    pub(crate) fn reduce(&self, mut v: u64) -> u64 {
        for (&r, &p) in self.rows.iter().zip(&self.leads) {
            let c = self.amb.get(v, p);
            if c != 0 {
                v = self.amb.axpy(v, self.amb.q - c, r);
            }
        }
        v
    }

    /// Adds v to the span; returns whether the dimension grew.
    pub(crate) fn insert(&mut self, v: u64) -> bool {
        let v = self.reduce(v);
        if v == 0 {
            return false;
        }
        let v = self.amb.normalize(v);
        let p = self.amb.lead(v).expect("nonzero");
        for r in self.rows.iter_mut() {
            let c = self.amb.get(*r, p);
            if c != 0 {
                *r = self.amb.axpy(*r, self.amb.q - c, v);
            }
        }
        let pos = self.leads.partition_point(|&l| l < p);
        self.rows.insert(pos, v);
        self.leads.insert(pos, p);
        true
    }

    pub(crate) fn into_subspace(self) -> Subspace {
        Subspace { amb: self.amb, rows: self.rows }
    }
}

/// A subspace of F_q^n, stored by its unique RREF basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    amb: Ambient,
    rows: Vec<u64>,
}

impl PartialOrd for Subspace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subspace {
    /// Ambient, then dimension, then basis rows.
    fn cmp(&self, other: &Self) -> Ordering {
        self.amb
            .cmp(&other.amb)
            .then(self.rows.len().cmp(&other.rows.len()))
            .then_with(|| other.rows.cmp(&self.rows))
    }
}

impl Subspace {
    pub fn zero(amb: Ambient) -> Self {
        Subspace { amb, rows: Vec::new() }
    }

    pub fn full(amb: Ambient) -> Self {
        Subspace { amb, rows: (0..amb.n as usize).map(|i| amb.unit(i)).collect() }
    }

    /// Span of the given packed vectors.
    pub fn span(amb: Ambient, vectors: impl IntoIterator<Item = u64>) -> Self {
        let mut e = Echelon::new(amb);
        for v in vectors {
            e.insert(v & amb.full_mask());
        }
        e.into_subspace()
    }

    /// Canonicalizes rows given as digit lists.
    pub fn from_rows(amb: Ambient, rows: &[Vec<u32>]) -> Result<Self, Error> {
        let packed = rows.iter().map(|r| amb.pack(r)).collect::<Result<Vec<_>, _>>()?;
        Ok(Subspace::span(amb, packed))
    }

    /// Span of e_i for the given zero-based coordinates.
    pub fn coordinate(amb: Ambient, coords: &[usize]) -> Result<Self, Error> {
        if let Some(&c) = coords.iter().find(|&&c| c >= amb.n as usize) {
            return Err(Error::Range(format!("coordinate {} out of range", c + 1)));
        }
        Ok(Subspace::span(amb, coords.iter().map(|&c| amb.unit(c))))
    }

    /// Trusted constructor; rows must already be the RREF basis.
    pub(crate) fn from_rref(amb: Ambient, rows: Vec<u64>) -> Self {
        debug_assert_eq!(Subspace::span(amb, rows.iter().copied()).rows, rows);
        Subspace { amb, rows }
    }

    pub fn ambient(&self) -> Ambient {
        self.amb
    }

    pub fn n(&self) -> u32 {
        self.amb.n
    }

    pub fn dim(&self) -> u32 {
        self.rows.len() as u32
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    /// Packed basis rows.
    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    pub fn digit_rows(&self) -> Vec<Vec<u32>> {
        self.rows.iter().map(|&r| self.amb.unpack(r)).collect()
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|&r| self.amb.lead(r).expect("nonzero row")).collect()
    }

    fn check(&self, other: &Subspace) -> Result<(), Error> {
        if self.amb != other.amb {
            return Err(Error::Shape(format!(
                "subspaces of F_{}^{} and F_{}^{}",
                self.amb.q, self.amb.n, other.amb.q, other.amb.n
            )));
        }
        Ok(())
    }

    /// Remainder of v after eliminating the pivot coordinates.
    pub fn reduce(&self, mut v: u64) -> u64 {
        for &r in &self.rows {
            let p = self.amb.lead(r).expect("nonzero row");
            let c = self.amb.get(v, p);
            if c != 0 {
                v = self.amb.axpy(v, self.amb.q - c, r);
            }
        }
        v
    }

    pub fn contains_vector(&self, v: u64) -> bool {
        self.reduce(v) == 0
    }

    /// W ≤ self.
    pub fn contains(&self, w: &Subspace) -> Result<bool, Error> {
        self.check(w)?;
        Ok(self.contains_unchecked(w))
    }

    pub(crate) fn contains_unchecked(&self, w: &Subspace) -> bool {
        w.rows.len() <= self.rows.len() && w.rows.iter().all(|&r| self.contains_vector(r))
    }

    pub fn sum(&self, w: &Subspace) -> Result<Subspace, Error> {
        self.check(w)?;
        Ok(self.sum_unchecked(w))
    }

    pub(crate) fn sum_unchecked(&self, w: &Subspace) -> Subspace {
        let (big, small) = if self.rows.len() >= w.rows.len() { (self, w) } else { (w, self) };
        let mut e = Echelon::from_subspace(big);
        for &r in &small.rows {
            e.insert(r);
        }
        e.into_subspace()
    }

    /// dim(self + w) without building the sum.
    pub(crate) fn sum_dim(&self, w: &Subspace) -> u32 {
        let mut e = Echelon::from_subspace(self);
        let mut d = self.rows.len() as u32;
        for &r in &w.rows {
            if e.insert(r) {
                d += 1;
            }
        }
        d
    }

    pub fn intersect(&self, w: &Subspace) -> Result<Subspace, Error> {
        self.check(w)?;
        Ok(self.sum_and_intersection(w).1)
    }

    /// Sum and intersection from one elimination of the stacked system
    /// [V | V ; W | 0]: rows whose left half vanishes carry V ∩ W.
    pub(crate) fn sum_and_intersection(&self, w: &Subspace) -> (Subspace, Subspace) {
        let amb = self.amb;
        let mut left: Vec<(u64, u64, usize)> = Vec::with_capacity(self.rows.len() + w.rows.len());
        let mut meet = Echelon::new(amb);
        let stacked = self.rows.iter().map(|&r| (r, r)).chain(w.rows.iter().map(|&r| (r, 0)));
        for (mut a, mut b) in stacked {
            for &(ra, rb, p) in &left {
                let c = amb.get(a, p);
                if c != 0 {
                    a = amb.axpy(a, amb.q - c, ra);
                    b = amb.axpy(b, amb.q - c, rb);
                }
            }
            match amb.lead(a) {
                Some(p) => {
                    let inv = amb.field().inv(amb.get(a, p)).expect("nonzero");
                    left.push((amb.scale(a, inv), amb.scale(b, inv), p));
                }
                None => {
                    meet.insert(b);
                }
            }
        }
        let sum = Subspace::span(amb, left.iter().map(|&(a, _, _)| a));
        (sum, meet.into_subspace())
    }

    /// Orthogonal complement under the standard dot product.
    pub fn perp(&self) -> Subspace {
        let amb = self.amb;
        let piv = self.pivots();
        let mut is_piv = vec![false; amb.n as usize];
        for &p in &piv {
            is_piv[p] = true;
        }
        let mut out = Vec::new();
        for f in (0..amb.n as usize).filter(|&f| !is_piv[f]) {
            let mut v = amb.unit(f);
            for (&r, &p) in self.rows.iter().zip(&piv) {
                let c = amb.get(r, f);
                if c != 0 {
                    v = amb.set(v, p, (amb.q - c) % amb.q);
                }
            }
            out.push(v);
        }
        Subspace::span(amb, out)
    }

    /// Vector with coordinates `c` (packed in F_q^{dim}) in this basis.
    pub(crate) fn combine(&self, c: u64) -> u64 {
        let local = self.amb.with_dim(self.dim());
        let mut v = 0;
        for (i, &r) in self.rows.iter().enumerate() {
            v = self.amb.axpy(v, local.get(c, i), r);
        }
        v
    }

    /// All subspaces of codimension one in self.
    pub fn hyperplanes(&self) -> Result<Vec<Subspace>, Error> {
        if self.is_zero() {
            return Err(Error::Empty);
        }
        let mut out = Vec::new();
        for_each_hyperplane_rows(self, |rows, _| out.push(Subspace::from_rref(self.amb, rows.to_vec())));
        Ok(out)
    }

    /// Coordinates of self ≤ x in the RREF basis of x, as a subspace of F_q^{dim x}.
    pub fn coordinates_in(&self, x: &Subspace) -> Result<Subspace, Error> {
        self.check(x)?;
        if !x.contains_unchecked(self) {
            return Err(Error::Containment);
        }
        let local = self.amb.with_dim(x.dim());
        let piv = x.pivots();
        let rows = self.rows.iter().map(|&r| {
            piv.iter().enumerate().fold(0, |acc, (i, &p)| local.set(acc, i, self.amb.get(r, p)))
        });
        Ok(Subspace::span(local, rows))
    }

    /// Inverse of [`Subspace::coordinates_in`].
    pub fn from_coordinates(x: &Subspace, local: &Subspace) -> Result<Subspace, Error> {
        if local.n() != x.dim() || local.amb.q != x.amb.q {
            return Err(Error::Shape("coordinate space does not match the basis".into()));
        }
        Ok(Subspace::span(x.amb, local.rows.iter().map(|&c| x.combine(c))))
    }

    /// Image of self in E/x, coordinatized by the non-pivot columns of x.
    pub fn quotient_image(&self, x: &Subspace) -> Result<Subspace, Error> {
        self.check(x)?;
        let free = free_columns(x);
        let local = self.amb.with_dim(free.len() as u32);
        let rows = self.rows.iter().map(|&r| {
            let r = x.reduce(r);
            free.iter().enumerate().fold(0, |acc, (i, &f)| local.set(acc, i, self.amb.get(r, f)))
        });
        Ok(Subspace::span(local, rows))
    }

    /// Preimage in E of a subspace of the quotient coordinates of x.
    pub fn quotient_preimage(x: &Subspace, local: &Subspace) -> Result<Subspace, Error> {
        let free = free_columns(x);
        if local.n() as usize != free.len() || local.amb.q != x.amb.q {
            return Err(Error::Shape("quotient coordinates do not match".into()));
        }
        let lifted = local.rows.iter().map(|&u| {
            free.iter().enumerate().fold(0, |acc, (i, &f)| x.amb.set(acc, f, local.amb.get(u, i)))
        });
        let mut e = Echelon::from_subspace(x);
        for v in lifted {
            e.insert(v);
        }
        Ok(e.into_subspace())
    }

    /// Image under v ↦ v·M where `m` holds the packed rows of M.
    pub fn transform(&self, m: &[u64]) -> Subspace {
        let amb = self.amb;
        let image = self.rows.iter().map(|&v| {
            (0..amb.n as usize).fold(0, |acc, i| amb.axpy(acc, amb.get(v, i), m[i]))
        });
        Subspace::span(amb, image)
    }
}

pub(crate) fn free_columns(x: &Subspace) -> Vec<usize> {
    let piv = x.pivots();
    (0..x.n() as usize).filter(|c| !piv.contains(c)).collect()
}

/// Calls `f` with the RREF rows of each hyperplane of v and the packed
/// functional (in F_q^{dim v}) whose kernel it is. The functional is
/// normalized to have its last nonzero entry equal to 1, which keeps the
/// kernel basis b_i − a_i b_last in reduced echelon form.
pub(crate) fn for_each_hyperplane_rows(v: &Subspace, mut f: impl FnMut(&[u64], u64)) {
    let amb = v.amb;
    let k = v.rows.len();
    if k == 0 {
        return;
    }
    let local = amb.with_dim(k as u32);
    let q = amb.q as u64;
    let mut buf: Vec<u64> = Vec::with_capacity(k);
    for last in 0..k {
        let combos = q.pow(last as u32);
        for val in 0..combos {
            let mut a = local.unit(last);
            let mut t = val;
            for i in (0..last).rev() {
                a = local.set(a, i, (t % q) as u32);
                t /= q;
            }
            buf.clear();
            let bl = v.rows[last];
            for (i, &r) in v.rows.iter().enumerate() {
                if i == last {
                    continue;
                }
                let ai = if i < last { local.get(a, i) } else { 0 };
                buf.push(if ai == 0 { r } else { amb.axpy(r, amb.q - ai, bl) });
            }
            f(&buf, a);
        }
    }
}

/// Calls `f` with each nonzero vector that is zero on the pivots of v and
/// has leading entry 1; these represent the covers v + <x> bijectively.
pub(crate) fn for_each_cover_vector(v: &Subspace, mut f: impl FnMut(u64)) {
    let amb = v.amb;
    let free = free_columns(v);
    let q = amb.q as u64;
    for (j, &p) in free.iter().enumerate() {
        let tail = &free[j + 1..];
        let combos = q.pow(tail.len() as u32);
        for val in 0..combos {
            let mut x = amb.unit(p);
            let mut t = val;
            for &c in tail.iter().rev() {
                x = amb.set(x, c, (t % q) as u32);
                t /= q;
            }
            f(x);
        }
    }
}

/// RREF rows of v + <x> for a cover vector x from [`for_each_cover_vector`].
pub(crate) fn cover_rows(v: &Subspace, x: u64, out: &mut Vec<u64>) {
    let amb = v.amb;
    let p = amb.lead(x).expect("nonzero");
    out.clear();
    let mut placed = false;
    for &r in &v.rows {
        if !placed && amb.lead(r).expect("nonzero") > p {
            out.push(x);
            placed = true;
        }
        let c = amb.get(r, p);
        out.push(if c == 0 { r } else { amb.axpy(r, amb.q - c, x) });
    }
    if !placed {
        out.push(x);
    }
}

/// All W ≤ f with z ⊕ W = f.
pub fn complements(z: &Subspace, f: &Subspace) -> Result<Vec<Subspace>, Error> {
    z.check(f)?;
    if !f.contains_unchecked(z) {
        return Err(Error::Containment);
    }
    let amb = z.amb;
    // a fixed complement: rows of f that enlarge z
    let mut e = Echelon::from_subspace(z);
    let mut c = Vec::new();
    for &r in &f.rows {
        if e.insert(r) {
            c.push(r);
        }
    }
    let zdim = z.dim();
    let q = amb.q as u64;
    let per = q.pow(zdim);
    let total = per.pow(c.len() as u32);
    let local = amb.with_dim(zdim);
    let mut out = Vec::with_capacity(total as usize);
    for mut val in 0..total {
        let rows = c.iter().map(|&ci| {
            let mut coords = 0;
            let mut t = val % per;
            for i in (0..zdim as usize).rev() {
                coords = local.set(coords, i, (t % q) as u32);
                t /= q;
            }
            val /= per;
            amb.add(ci, z.combine(coords))
        });
        let rows: Vec<u64> = rows.collect();
        out.push(Subspace::span(amb, rows));
    }
    Ok(out)
}

/// Pivot positions of each RREF profile of a given dimension in
/// lexicographic order.
pub(crate) fn profiles(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut c: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(c.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if c[i] < n - k + i {
                c[i] += 1;
                for j in i + 1..k {
                    c[j] = c[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Free (row, column) slots of a profile, row-major.
pub(crate) fn free_slots(n: usize, pivots: &[usize]) -> Vec<(usize, usize)> {
    let mut slots = Vec::new();
    for (r, &p) in pivots.iter().enumerate() {
        for c in p + 1..n {
            if !pivots.contains(&c) {
                slots.push((r, c));
            }
        }
    }
    slots
}

/// RREF rows for a profile and the big-endian base-q filling `val` of its free slots.
pub(crate) fn profile_rows(amb: Ambient, pivots: &[usize], slots: &[(usize, usize)], mut val: u64) -> Vec<u64> {
    let mut rows: Vec<u64> = pivots.iter().map(|&p| amb.unit(p)).collect();
    let q = amb.q as u64;
    for &(r, c) in slots.iter().rev() {
        rows[r] = amb.set(rows[r], c, (val % q) as u32);
        val /= q;
    }
    rows
}

/// Streams every subspace of the given dimension (or of all dimensions)
/// in profile order, each exactly once.
pub struct SubspaceIter {
    amb: Ambient,
    queue: Vec<(Vec<usize>, Vec<(usize, usize)>)>,
    pos: usize,
    val: u64,
    count: u64,
}

impl Iterator for SubspaceIter {
    type Item = Subspace;

    fn next(&mut self) -> Option<Subspace> {
        while self.pos < self.queue.len() {
            if self.val < self.count {
                let (piv, slots) = &self.queue[self.pos];
                let rows = profile_rows(self.amb, piv, slots, self.val);
                self.val += 1;
                return Some(Subspace { amb: self.amb, rows });
            }
            self.pos += 1;
            self.val = 0;
            if let Some((_, slots)) = self.queue.get(self.pos) {
                self.count = (self.amb.q as u64).pow(slots.len() as u32);
            }
        }
        None
    }
}

pub fn enumerate(amb: Ambient, k: Option<u32>) -> Result<SubspaceIter, Error> {
    let n = amb.n as usize;
    let dims: Vec<usize> = match k {
        Some(k) if k > amb.n => return Err(Error::Range(format!("dimension {} exceeds {}", k, amb.n))),
        Some(k) => vec![k as usize],
        None => (0..=n).collect(),
    };
    let mut queue = Vec::new();
    for d in dims {
        for piv in profiles(n, d) {
            let slots = free_slots(n, &piv);
            queue.push((piv, slots));
        }
    }
    let count = queue.first().map_or(0, |(_, s)| (amb.q as u64).pow(s.len() as u32));
    Ok(SubspaceIter { amb, queue, pos: 0, val: 0, count })
}

/// Coordinates split as E = E_1 ⊕ E_2 with E_1 the first n1 coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DirectSumFrame {
    pub left: Ambient,
    pub right: Ambient,
    pub whole: Ambient,
}

impl DirectSumFrame {
    pub fn new(left: Ambient, right: Ambient) -> Result<Self, Error> {
        if left.q != right.q {
            return Err(Error::Field(left.q, right.q));
        }
        let whole = Ambient::new(left.q, left.n + right.n)?;
        Ok(DirectSumFrame { left, right, whole })
    }

    fn split_shift(&self) -> u32 {
        self.right.n * self.whole.bits
    }

    pub fn embed_left(&self, v: &Subspace) -> Subspace {
        let s = self.split_shift();
        Subspace::span(self.whole, v.rows.iter().map(|&r| shl(r, s)))
    }

    pub fn embed_right(&self, v: &Subspace) -> Subspace {
        Subspace::span(self.whole, v.rows.iter().copied())
    }

    /// V_1 ⊕ V_2.
    pub fn join(&self, v1: &Subspace, v2: &Subspace) -> Subspace {
        let s = self.split_shift();
        Subspace::span(self.whole, v1.rows.iter().map(|&r| shl(r, s)).chain(v2.rows.iter().copied()))
    }

    pub fn project_left(&self, v: &Subspace) -> Subspace {
        let s = self.split_shift();
        Subspace::span(self.left, v.rows.iter().map(|&r| shr(r, s)))
    }

    pub fn project_right(&self, v: &Subspace) -> Subspace {
        let m = low_mask(self.split_shift());
        Subspace::span(self.right, v.rows.iter().map(|&r| r & m))
    }

    /// V ∩ E_1 as a subspace of E_1.
    pub fn meet_left(&self, v: &Subspace) -> Subspace {
        let e1 = self.embed_left(&Subspace::full(self.left));
        self.project_left(&v.sum_and_intersection(&e1).1)
    }

    /// V ∩ E_2 as a subspace of E_2.
    pub fn meet_right(&self, v: &Subspace) -> Subspace {
        let e2 = self.embed_right(&Subspace::full(self.right));
        self.project_right(&v.sum_and_intersection(&e2).1)
    }
}

impl fmt::Display for Subspace {
    /// `<e1+e2, e3>` style; the zero space prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.rows.iter().map(|&r| format_vector(self.amb, r)).collect();
        write!(f, "<{}>", parts.join(", "))
    }
}

pub fn format_vector(amb: Ambient, v: u64) -> String {
    let mut terms = Vec::new();
    for i in 0..amb.n as usize {
        match amb.get(v, i) {
            0 => {}
            1 => terms.push(format!("e{}", i + 1)),
            c => terms.push(format!("{}e{}", c, i + 1)),
        }
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}

/// Parses `<e1+e2, 2e3>` or `0` (the inverse of the Display form).
pub fn parse_subspace(amb: Ambient, s: &str) -> Result<Subspace, Error> {
    let t = s.trim();
    if t == "0" {
        return Ok(Subspace::zero(amb));
    }
    let inner = t
        .strip_prefix('<')
        .and_then(|r| r.strip_suffix('>'))
        .ok_or_else(|| Error::Parse(format!("expected <...>, got {:?}", s)))?;
    let mut rows = Vec::new();
    for part in inner.split(',') {
        let mut v = 0u64;
        for term in part.split('+') {
            let term = term.trim();
            let (coef, idx) = match term.find('e') {
                Some(pos) => (&term[..pos], &term[pos + 1..]),
                None => return Err(Error::Parse(format!("bad term {:?}", term))),
            };
            let c: u32 = if coef.is_empty() {
                1
            } else {
                coef.parse().map_err(|_| Error::Parse(format!("bad coefficient {:?}", coef)))?
            };
            let i: usize = idx.parse().map_err(|_| Error::Parse(format!("bad index {:?}", idx)))?;
            if i == 0 || i > amb.n as usize || c >= amb.q {
                return Err(Error::Range(format!("term {:?}", term)));
            }
            v = amb.axpy(v, c, amb.unit(i - 1));
        }
        rows.push(v);
    }
    Ok(Subspace::span(amb, rows))
}
