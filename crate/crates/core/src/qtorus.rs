//! Quantum tori: twisted Laurent polynomials over `Z[q^{±1/2}]`.
//!
//! Every [`QLaurent`] belongs to a [`Torus`], which fixes the ordered vertex
//! set and the skew form `Λ`. A stored term with exponent `m` stands for the
//! normalized monomial `x^m`, so `x^m * x^h = q^{λ(m,h)/2} x^{m+h}`.

use crate::error::{QError, QResult};
use crate::linalg::{self, Rat};
use crate::scalar::{Int, QScalar};
use rustc_hash::FxHashMap;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

pub type Vid = i64;
pub(crate) type Mono = Box<[i32]>;

/// Finitely supported exponent vector keyed by vertex id.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ExpVec(BTreeMap<Vid, i64>);

impl ExpVec {
    pub fn new() -> Self {
        ExpVec(BTreeMap::new())
    }

    pub fn unit(v: Vid) -> Self {
        Self::from_pairs([(v, 1)])
    }

    pub fn from_pairs<I: IntoIterator<Item = (Vid, i64)>>(it: I) -> Self {
        let mut e = ExpVec::new();
        for (v, x) in it {
            e.add_at(v, x);
        }
        e
    }

    pub fn get(&self, v: Vid) -> i64 {
        self.0.get(&v).copied().unwrap_or(0)
    }

    pub fn add_at(&mut self, v: Vid, x: i64) {
        let e = self.0.entry(v).or_insert(0);
        *e += x;
        if *e == 0 {
            self.0.remove(&v);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (Vid, i64)> + '_ {
        self.0.iter().map(|(&v, &x)| (v, x))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn support(&self) -> impl Iterator<Item = Vid> + '_ {
        self.0.keys().copied()
    }

    pub fn add(&self, o: &ExpVec) -> ExpVec {
        let mut r = self.clone();
        for (v, x) in o.iter() {
            r.add_at(v, x);
        }
        r
    }

    pub fn sub(&self, o: &ExpVec) -> ExpVec {
        self.add(&o.scale(-1))
    }

    pub fn scale(&self, k: i64) -> ExpVec {
        if k == 0 {
            return ExpVec::new();
        }
        ExpVec(self.0.iter().map(|(&v, &x)| (v, x * k)).collect())
    }

    /// Renames vertices through `f`.
    pub fn map_vertices(&self, f: impl Fn(Vid) -> Vid) -> ExpVec {
        ExpVec::from_pairs(self.iter().map(|(v, x)| (f(v), x)))
    }
}

impl fmt::Debug for ExpVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (v, x)) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}: {x}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Display for ExpVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Sparse integer bilinear form on vertex ids; zero when unset.
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct LambdaForm {
    entries: BTreeMap<(Vid, Vid), i64>,
}

impl LambdaForm {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_dense(verts: &[Vid], m: &[Vec<i64>]) -> Self {
        let mut l = LambdaForm::new();
        for (i, &u) in verts.iter().enumerate() {
            for (j, &v) in verts.iter().enumerate() {
                l.set_raw(u, v, m[i][j]);
            }
        }
        l
    }

    pub fn get(&self, i: Vid, j: Vid) -> i64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    /// Sets `Λ_ij = x` and `Λ_ji = -x`.
    pub fn set(&mut self, i: Vid, j: Vid, x: i64) {
        self.set_raw(i, j, x);
        self.set_raw(j, i, -x);
    }

    /// Sets a single entry without touching its transpose.
    pub fn set_raw(&mut self, i: Vid, j: Vid, x: i64) {
        if x == 0 {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), x);
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = ((Vid, Vid), i64)> + '_ {
        self.entries.iter().map(|(&k, &v)| (k, v))
    }

    /// Pairs violating `Λ_ij = -Λ_ji`.
    pub fn skew_violations(&self) -> Vec<(Vid, Vid)> {
        let mut out = Vec::new();
        for (&(i, j), &x) in &self.entries {
            if i <= j && (i == j || self.get(j, i) != -x) {
                out.push((i, j));
            } else if i > j && !self.entries.contains_key(&(j, i)) {
                out.push((j, i));
            }
        }
        out
    }

    pub fn is_skew(&self) -> bool {
        self.skew_violations().is_empty()
    }

    pub fn dense(&self, verts: &[Vid]) -> Vec<Vec<i64>> {
        verts.iter().map(|&u| verts.iter().map(|&v| self.get(u, v)).collect()).collect()
    }

    /// `λ(m, h) = Σ m_i h_j Λ_ij`.
    pub fn pair(&self, m: &ExpVec, h: &ExpVec) -> i64 {
        let mut s = 0;
        for (i, a) in m.iter() {
            for (j, b) in h.iter() {
                s += a * b * self.get(i, j);
            }
        }
        s
    }

    pub fn restrict(&self, verts: &[Vid]) -> LambdaForm {
        let set: std::collections::BTreeSet<Vid> = verts.iter().copied().collect();
        LambdaForm {
            entries: self
                .entries
                .iter()
                .filter(|((i, j), _)| set.contains(i) && set.contains(j))
                .map(|(&k, &v)| (k, v))
                .collect(),
        }
    }
}

static NEXT_TORUS: AtomicU64 = AtomicU64::new(1);

/// A reference torus: ordered vertices and the twisting form.
pub struct Torus {
    id: u64,
    verts: Vec<Vid>,
    pos: BTreeMap<Vid, usize>,
    lam: Vec<i64>,
    names: Vec<String>,
}

impl Torus {
    pub fn new(verts: &[Vid], lam: &LambdaForm) -> Arc<Torus> {
        let mut vs = verts.to_vec();
        vs.sort_unstable();
        vs.dedup();
        let n = vs.len();
        let mut flat = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                flat[i * n + j] = lam.get(vs[i], vs[j]);
            }
        }
        let names = vs.iter().map(|v| format!("x{v}")).collect();
        Self::build(vs, flat, names)
    }

    pub fn classical(verts: &[Vid]) -> Arc<Torus> {
        Self::new(verts, &LambdaForm::new())
    }

    fn build(verts: Vec<Vid>, lam: Vec<i64>, names: Vec<String>) -> Arc<Torus> {
        let pos = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        Arc::new(Torus {
            id: NEXT_TORUS.fetch_add(1, Ordering::Relaxed),
            verts,
            pos,
            lam,
            names,
        })
    }

    /// Same torus data with custom display names for the variables.
    pub fn with_names(&self, names: Vec<String>) -> Arc<Torus> {
        assert_eq!(names.len(), self.verts.len());
        Self::build(self.verts.clone(), self.lam.clone(), names)
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn verts(&self) -> &[Vid] {
        &self.verts
    }

    pub fn rank(&self) -> usize {
        self.verts.len()
    }

    pub fn index(&self, v: Vid) -> Option<usize> {
        self.pos.get(&v).copied()
    }

    pub fn lam(&self, i: usize, j: usize) -> i64 {
        self.lam[i * self.verts.len() + j]
    }

    pub fn lambda_form(&self) -> LambdaForm {
        let n = self.verts.len();
        let mut l = LambdaForm::new();
        for i in 0..n {
            for j in 0..n {
                l.set_raw(self.verts[i], self.verts[j], self.lam[i * n + j]);
            }
        }
        l
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub(crate) fn mono(&self, e: &ExpVec) -> QResult<Mono> {
        let mut m = vec![0i32; self.verts.len()];
        for (v, x) in e.iter() {
            let i = self.index(v).ok_or(QError::UnknownVertex(v))?;
            m[i] = x as i32;
        }
        Ok(m.into_boxed_slice())
    }

    pub(crate) fn expvec(&self, m: &[i32]) -> ExpVec {
        ExpVec(
            m.iter()
                .enumerate()
                .filter(|(_, &x)| x != 0)
                .map(|(i, &x)| (self.verts[i], x as i64))
                .collect(),
        )
    }

    /// `m Λ` as a dense row, so that `λ(m,h) = (mΛ)·h`.
    fn row_times_lam(&self, m: &[i32], lam: &[i64]) -> Vec<i64> {
        let n = self.verts.len();
        let mut u = vec![0i64; n];
        for (i, &a) in m.iter().enumerate() {
            if a != 0 {
                let row = &lam[i * n..(i + 1) * n];
                for j in 0..n {
                    u[j] += a as i64 * row[j];
                }
            }
        }
        u
    }
}

impl fmt::Debug for Torus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Torus#{}({:?})", self.id, self.verts)
    }
}

#[inline]
fn dot(u: &[i64], h: &[i32]) -> i64 {
    let mut s = 0;
    for (a, &b) in u.iter().zip(h) {
        s += a * b as i64;
    }
    s
}

#[inline]
fn add_mono(m: &[i32], h: &[i32]) -> Mono {
    m.iter().zip(h).map(|(a, b)| a + b).collect()
}

/// Element of a quantum torus.
#[derive(Clone)]
pub struct QLaurent {
    torus: Arc<Torus>,
    terms: BTreeMap<Mono, QScalar>,
}

impl PartialEq for QLaurent {
    fn eq(&self, o: &Self) -> bool {
        self.torus.id == o.torus.id && self.terms == o.terms
    }
}

impl Eq for QLaurent {}

impl QLaurent {
    pub fn zero(t: &Arc<Torus>) -> Self {
        QLaurent { torus: t.clone(), terms: BTreeMap::new() }
    }

    pub fn one(t: &Arc<Torus>) -> Self {
        Self::scalar(t, QScalar::one())
    }

    pub fn scalar(t: &Arc<Torus>, c: QScalar) -> Self {
        let mut z = Self::zero(t);
        if !c.is_zero() {
            z.terms.insert(vec![0; t.rank()].into_boxed_slice(), c);
        }
        z
    }

    /// `c · x^e` with `x^e` the normalized monomial.
    pub fn monomial(t: &Arc<Torus>, e: &ExpVec, c: QScalar) -> QResult<Self> {
        let mut z = Self::zero(t);
        if !c.is_zero() {
            z.terms.insert(t.mono(e)?, c);
        }
        Ok(z)
    }

    pub fn var(t: &Arc<Torus>, v: Vid) -> QResult<Self> {
        Self::monomial(t, &ExpVec::unit(v), QScalar::one())
    }

    pub fn from_terms<I: IntoIterator<Item = (ExpVec, QScalar)>>(t: &Arc<Torus>, it: I) -> QResult<Self> {
        let mut z = Self::zero(t);
        for (e, c) in it {
            z.add_term(t.mono(&e)?, &c);
        }
        Ok(z)
    }

    pub fn torus(&self) -> &Arc<Torus> {
        &self.torus
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> Vec<(ExpVec, QScalar)> {
        let mut v: Vec<(ExpVec, QScalar)> =
            self.terms.iter().map(|(m, c)| (self.torus.expvec(m), c.clone())).collect();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        v
    }

    pub fn coeff(&self, e: &ExpVec) -> QScalar {
        match self.torus.mono(e) {
            Ok(m) => self.terms.get(&m).cloned().unwrap_or_default(),
            Err(_) => QScalar::zero(),
        }
    }

    /// The single term when this is `c x^m`.
    pub fn as_monomial(&self) -> Option<(ExpVec, QScalar)> {
        if self.terms.len() != 1 {
            return None;
        }
        let (m, c) = self.terms.iter().next().unwrap();
        Some((self.torus.expvec(m), c.clone()))
    }

    fn add_term(&mut self, m: Mono, c: &QScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(x) => {
                *x += c;
                if x.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    fn check(&self, o: &Self) -> QResult<()> {
        if self.torus.id != o.torus.id {
            return Err(QError::TorusMismatch(self.torus.id, o.torus.id));
        }
        Ok(())
    }

    pub fn try_add(&self, o: &Self) -> QResult<Self> {
        self.check(o)?;
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), c);
        }
        Ok(r)
    }

    pub fn try_sub(&self, o: &Self) -> QResult<Self> {
        self.try_add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&QScalar::from_int(-1))
    }

    pub fn scale(&self, c: &QScalar) -> Self {
        if c.is_zero() {
            return Self::zero(&self.torus);
        }
        QLaurent {
            torus: self.torus.clone(),
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    /// Multiplies every coefficient by `q^{half/2}`.
    pub fn shift_q(&self, half: i64) -> Self {
        QLaurent {
            torus: self.torus.clone(),
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x.shift(half))).collect(),
        }
    }

    /// Twisted product with the torus's own form.
    pub fn try_mul(&self, o: &Self) -> QResult<Self> {
        self.check(o)?;
        Ok(QLaurent { torus: self.torus.clone(), terms: mul_kernel(&self.torus, &self.torus.lam, self, o) })
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(&self.torus);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Bar involution `q^{1/2} -> q^{-1/2}` on coefficients.
    pub fn bar(&self) -> Self {
        QLaurent {
            torus: self.torus.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.bar())).collect(),
        }
    }

    /// Classical specialization `q = 1`.
    pub fn at_q1(&self) -> BTreeMap<ExpVec, Int> {
        let mut out = BTreeMap::new();
        for (m, c) in &self.terms {
            let v = c.at_one();
            if !v.is_zero() {
                out.insert(self.torus.expvec(m), v);
            }
        }
        out
    }

    /// Same coefficients read in another torus on the same vertex set.
    pub fn retorus(&self, t: &Arc<Torus>) -> QResult<Self> {
        if t.verts != self.torus.verts {
            return Err(QError::Invalid("vertex sets differ".into()));
        }
        Ok(QLaurent { torus: t.clone(), terms: self.terms.clone() })
    }

    /// Lex-leading exponent.
    pub fn leading(&self) -> Option<(ExpVec, QScalar)> {
        self.terms.iter().next_back().map(|(m, c)| (self.torus.expvec(m), c.clone()))
    }

    /// Exact left quotient: `w` with `w * d = self`.
    pub fn exact_div(&self, d: &Self) -> QResult<Self> {
        self.check(d)?;
        exact_div_kernel(self, d)
    }

    /// Per-vertex (min, max) exponents over the support.
    fn bounds(&self) -> (Vec<i32>, Vec<i32>) {
        let n = self.torus.rank();
        let mut lo = vec![i32::MAX; n];
        let mut hi = vec![i32::MIN; n];
        for m in self.terms.keys() {
            for i in 0..n {
                lo[i] = lo[i].min(m[i]);
                hi[i] = hi[i].max(m[i]);
            }
        }
        (lo, hi)
    }

    /// Largest power of `x_v` dividing every term, negated; i.e. the minimal
    /// exponent of `v` across the support.
    pub fn min_exponent(&self, v: Vid) -> Option<i64> {
        let i = self.torus.index(v)?;
        self.terms.keys().map(|m| m[i] as i64).min()
    }

    /// Max absolute size of coefficients, for diagnostics.
    pub fn total_coefficients(&self) -> usize {
        self.terms.values().map(|c| c.len()).sum()
    }
}

fn mul_kernel(t: &Torus, lam: &[i64], a: &QLaurent, b: &QLaurent) -> BTreeMap<Mono, QScalar> {
    let mut acc: FxHashMap<Mono, QScalar> = FxHashMap::default();
    acc.reserve(a.terms.len() * b.terms.len() / 2 + 1);
    for (m, c) in &a.terms {
        let u = t.row_times_lam(m, lam);
        for (h, d) in &b.terms {
            let l = dot(&u, h);
            let mut prod = c * d;
            prod.shift_in_place(l);
            let key = add_mono(m, h);
            match acc.get_mut(&key) {
                Some(x) => *x += &prod,
                None => {
                    acc.insert(key, prod);
                }
            }
        }
    }
    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

fn exact_div_kernel(z: &QLaurent, d: &QLaurent) -> QResult<QLaurent> {
    if d.is_zero() {
        return Err(QError::DivByZero);
    }
    let t = z.torus.clone();
    if z.is_zero() {
        return Ok(QLaurent::zero(&t));
    }
    let n = t.rank();
    let (zlo, zhi) = z.bounds();
    let (dlo, dhi) = d.bounds();
    let (dn, dc) = d.terms.iter().next_back().map(|(m, c)| (m.clone(), c.clone())).unwrap();
    let dterms: Vec<(&Mono, &QScalar)> = d.terms.iter().collect();
    // a monomial divisor needs no long division
    if dterms.len() == 1 {
        let mut out = BTreeMap::new();
        for (zm, zc) in &z.terms {
            let m: Mono = zm.iter().zip(dn.iter()).map(|(a, b)| a - b).collect();
            let u = t.row_times_lam(&m, &t.lam);
            let l = dot(&u, &dn);
            let c = zc.exact_div(&dc.shift(l)).ok_or(QError::Inexact)?;
            out.insert(m, c);
        }
        return Ok(QLaurent { torus: t, terms: out });
    }
    let mut rem = z.terms.clone();
    let mut quot: BTreeMap<Mono, QScalar> = BTreeMap::new();
    while let Some((zm, zc)) = rem.iter().next_back().map(|(m, c)| (m.clone(), c.clone())) {
        let m: Mono = zm.iter().zip(dn.iter()).map(|(a, b)| a - b).collect();
        for i in 0..n {
            if m[i] < zlo[i] - dlo[i] || m[i] > zhi[i] - dhi[i] {
                return Err(QError::Inexact);
            }
        }
        let u = t.row_times_lam(&m, &t.lam);
        let c = zc.exact_div(&dc.shift(dot(&u, &dn))).ok_or(QError::Inexact)?;
        for (h, hc) in &dterms {
            let key = add_mono(&m, h);
            let mut prod = &c * *hc;
            prod.shift_in_place(dot(&u, h));
            match rem.get_mut(&key) {
                Some(x) => {
                    *x -= &prod;
                    if x.is_zero() {
                        rem.remove(&key);
                    }
                }
                None => {
                    rem.insert(key, -prod);
                }
            }
        }
        debug_assert!(!rem.contains_key(&zm));
        quot.insert(m, c);
    }
    Ok(QLaurent { torus: t, terms: quot })
}

impl std::ops::Mul<&QLaurent> for &QLaurent {
    type Output = QLaurent;
    fn mul(self, o: &QLaurent) -> QLaurent {
        self.try_mul(o).expect("twisted product across different tori")
    }
}

impl std::ops::Add<&QLaurent> for &QLaurent {
    type Output = QLaurent;
    fn add(self, o: &QLaurent) -> QLaurent {
        self.try_add(o).expect("sum across different tori")
    }
}

impl std::ops::Sub<&QLaurent> for &QLaurent {
    type Output = QLaurent;
    fn sub(self, o: &QLaurent) -> QLaurent {
        self.try_sub(o).expect("difference across different tori")
    }
}

/// Twisted product using an explicitly supplied form.
pub fn twisted_mul(a: &QLaurent, b: &QLaurent, lam: &LambdaForm) -> QResult<QLaurent> {
    a.check(b)?;
    let t = &a.torus;
    let n = t.rank();
    let mut flat = vec![0; n * n];
    for i in 0..n {
        for j in 0..n {
            flat[i * n + j] = lam.get(t.verts[i], t.verts[j]);
        }
    }
    Ok(QLaurent { torus: t.clone(), terms: mul_kernel(t, &flat, a, b) })
}

pub fn bar(z: &QLaurent) -> QLaurent {
    z.bar()
}

pub fn exact_div(z: &QLaurent, d: &QLaurent, lam: &LambdaForm) -> QResult<QLaurent> {
    z.check(d)?;
    let alt = Torus::new(z.torus.verts(), lam);
    if alt.lam == z.torus.lam {
        return exact_div_kernel(z, d);
    }
    let w = exact_div_kernel(&z.retorus(&alt)?, &d.retorus(&alt)?)?;
    w.retorus(&z.torus)
}

/// Normalized monomial `x^e` built as an ordered product of images:
/// `x^e = q^{-1/2 Σ_{i<j} e_i e_j Λ_ij} X_{v1}^{e_1} * X_{v2}^{e_2} * ...`.
/// Negative exponents require monomial images.
pub fn substitute(
    z: &QLaurent,
    images: &BTreeMap<Vid, QLaurent>,
    target: &Arc<Torus>,
) -> QResult<QLaurent> {
    let src = z.torus.clone();
    let n = src.rank();
    let mut cache: BTreeMap<(usize, i32), QLaurent> = BTreeMap::new();
    let mut out = QLaurent::zero(target);
    for (m, c) in &z.terms {
        let mut corr = 0i64;
        for i in 0..n {
            for j in i + 1..n {
                corr += m[i] as i64 * m[j] as i64 * src.lam(i, j);
            }
        }
        let mut acc = QLaurent::scalar(target, c.shift(-corr));
        for i in 0..n {
            if m[i] == 0 {
                continue;
            }
            if !cache.contains_key(&(i, m[i])) {
                let v = src.verts[i];
                let img = images.get(&v).ok_or(QError::UnknownVertex(v))?;
                if img.torus.id != target.id {
                    return Err(QError::TorusMismatch(img.torus.id, target.id));
                }
                let p = if m[i] > 0 {
                    img.pow(m[i] as u32)
                } else {
                    monomial_inverse(img)?.pow((-m[i]) as u32)
                };
                cache.insert((i, m[i]), p);
            }
            acc = &acc * &cache[&(i, m[i])];
        }
        out = &out + &acc;
    }
    Ok(out)
}

/// Inverse of a unit monomial `±q^a x^h`.
pub fn monomial_inverse(z: &QLaurent) -> QResult<QLaurent> {
    if z.terms.len() != 1 {
        return Err(QError::Inexact);
    }
    let (m, c) = z.terms.iter().next().unwrap();
    let (half, sign) = c.as_unit().ok_or(QError::Inexact)?;
    let inv: Mono = m.iter().map(|x| -x).collect();
    let mut terms = BTreeMap::new();
    terms.insert(inv, QScalar::mono(-half, sign as i64));
    Ok(QLaurent { torus: z.torus.clone(), terms })
}

/// Dominance data for a full-column-rank `B̃` (rows = torus vertices).
#[derive(Clone, Debug)]
pub struct DominanceSolver {
    verts: Vec<Vid>,
    cols: Vec<Vid>,
    b: Vec<Vec<Rat>>,
    linv: Vec<Vec<Rat>>,
    psi: Vec<Rat>,
}

impl DominanceSolver {
    /// `b[i][k]` indexed by vertex position `i` and unfrozen column `k`.
    pub fn new(verts: &[Vid], cols: &[Vid], b: &[Vec<i64>]) -> QResult<Self> {
        let br = linalg::to_rat_matrix(b);
        let linv = linalg::left_inverse(&br, cols.len()).ok_or(QError::NotInjective)?;
        let n = verts.len();
        let mut psi = vec![Rat::ZERO; n];
        for row in &linv {
            for (i, x) in row.iter().enumerate() {
                psi[i] = &psi[i] + x;
            }
        }
        Ok(DominanceSolver { verts: verts.to_vec(), cols: cols.to_vec(), b: br, linv, psi })
    }

    fn dense(&self, e: &ExpVec) -> Option<Vec<Rat>> {
        let mut v = vec![Rat::ZERO; self.verts.len()];
        for (u, x) in e.iter() {
            let i = self.verts.iter().position(|&w| w == u)?;
            v[i] = linalg::rat(x);
        }
        Some(v)
    }

    /// `n` with `B̃ n = delta`, if any rational solution exists.
    fn solve(&self, delta: &[Rat]) -> Option<Vec<Rat>> {
        let n = linalg::mat_vec(&self.linv, delta);
        if linalg::mat_vec(&self.b, &n) == delta {
            Some(n)
        } else {
            None
        }
    }

    fn nonneg_integral(n: &[Rat]) -> bool {
        n.iter().all(|x| linalg::as_int(x).map(|k| k >= 0).unwrap_or(false))
    }

    /// `h ≼ m`: `h = m + B̃ n` with `n ∈ N^{I_uf}`.
    pub fn leq(&self, h: &ExpVec, m: &ExpVec) -> bool {
        let Some(d) = self.dense(&h.sub(m)) else { return false };
        match self.solve(&d) {
            Some(n) => Self::nonneg_integral(&n),
            None => false,
        }
    }

    /// The coordinates `n` of `h - m` when `h ≼ m`.
    pub fn witness(&self, h: &ExpVec, m: &ExpVec) -> Option<BTreeMap<Vid, i64>> {
        let d = self.dense(&h.sub(m))?;
        let n = self.solve(&d)?;
        if !Self::nonneg_integral(&n) {
            return None;
        }
        Some(self.cols.iter().zip(&n).map(|(&k, x)| (k, linalg::as_int(x).unwrap())).collect())
    }

    /// Degree of a pointed element; `None` when not pointed.
    pub fn degree(&self, z: &QLaurent) -> QResult<Option<ExpVec>> {
        if z.torus.verts != self.verts {
            return Err(QError::Invalid("element and seed have different vertex sets".into()));
        }
        if z.is_zero() {
            return Ok(None);
        }
        let mut best: Option<(Rat, &Mono)> = None;
        let mut tie = false;
        for m in z.terms.keys() {
            let mut s = Rat::ZERO;
            for (i, &x) in m.iter().enumerate() {
                if x != 0 && self.psi[i] != Rat::ZERO {
                    s = s + &self.psi[i] * linalg::rat(x as i64);
                }
            }
            match &best {
                None => best = Some((s, m)),
                Some((b, _)) if s < *b => {
                    best = Some((s, m));
                    tie = false;
                }
                Some((b, _)) if s == *b => tie = true,
                _ => {}
            }
        }
        if tie {
            return Ok(None);
        }
        let top = best.unwrap().1;
        for m in z.terms.keys() {
            if m == top {
                continue;
            }
            let d: Vec<Rat> = m.iter().zip(top.iter()).map(|(a, b)| linalg::rat((a - b) as i64)).collect();
            match self.solve(&d) {
                Some(n) if Self::nonneg_integral(&n) => {}
                _ => return Ok(None),
            }
        }
        Ok(Some(z.torus.expvec(top)))
    }
}

impl fmt::Display for QLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let t = &self.torus;
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            let mono: Vec<String> = m
                .iter()
                .enumerate()
                .filter(|(_, &x)| x != 0)
                .map(|(i, &x)| if x == 1 { t.name(i).to_string() } else { format!("{}^{}", t.name(i), x) })
                .collect();
            match (mono.is_empty(), c.is_one()) {
                (true, _) => write!(f, "{c}")?,
                (false, true) => write!(f, "{}", mono.join("*"))?,
                (false, false) if c.len() == 1 => write!(f, "{c}*{}", mono.join("*"))?,
                (false, false) => write!(f, "({c})*{}", mono.join("*"))?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for QLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QLaurent[{}]({self})", self.torus.id)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn torus3() -> Arc<Torus> {
        let mut l = LambdaForm::new();
        l.set(1, 2, 1);
        l.set(1, 3, -2);
        l.set(2, 3, 3);
        Torus::new(&[1, 2, 3], &l)
    }

    fn x(t: &Arc<Torus>, pairs: &[(Vid, i64)], half: i64) -> QLaurent {
        QLaurent::monomial(t, &ExpVec::from_pairs(pairs.iter().copied()), QScalar::qpow(half)).unwrap()
    }

    #[test]
    fn twisted_product_of_generators() {
        let t = torus3();
        let a = x(&t, &[(1, 1)], 0);
        let b = x(&t, &[(2, 1)], 0);
        // x1 * x2 = q^{1/2} x^{f1+f2}, x2 * x1 = q^{-1/2} x^{f1+f2}
        assert_eq!(&a * &b, x(&t, &[(1, 1), (2, 1)], 1));
        assert_eq!(&b * &a, x(&t, &[(1, 1), (2, 1)], -1));
        assert_eq!(&QLaurent::one(&t) * &a, a);
    }

    #[test]
    fn division_round_trip() {
        let t = torus3();
        let a = &(&x(&t, &[(1, 1)], 0) + &x(&t, &[(2, 1), (3, -1)], 1)) + &QLaurent::one(&t);
        let b = &x(&t, &[(3, 2)], 0) + &x(&t, &[(1, -1)], -3);
        let p = &a * &b;
        assert_eq!(p.exact_div(&b).unwrap(), a);
        let inexact = &x(&t, &[(1, 1)], 0) + &QLaurent::one(&t);
        assert_eq!(x(&t, &[(2, 1)], 0).exact_div(&inexact), Err(QError::Inexact));
        assert_eq!(a.exact_div(&QLaurent::zero(&t)), Err(QError::DivByZero));
    }

    #[test]
    fn mismatched_tori_are_rejected() {
        let t = torus3();
        let s = torus3();
        let r = x(&t, &[(1, 1)], 0).try_mul(&x(&s, &[(1, 1)], 0));
        assert!(matches!(r, Err(QError::TorusMismatch(_, _))));
    }

    #[test]
    fn substitution_identity() {
        let t = torus3();
        let z = &x(&t, &[(1, 2), (2, -1)], 3) + &x(&t, &[(3, 1)], 0);
        let images: BTreeMap<Vid, QLaurent> = [1, 2, 3].iter().map(|&v| (v, QLaurent::var(&t, v).unwrap())).collect();
        assert_eq!(substitute(&z, &images, &t).unwrap(), z);
    }

    #[test]
    fn skew_detection() {
        let mut l = LambdaForm::new();
        l.set_raw(1, 2, 1);
        l.set_raw(2, 1, 1);
        assert!(!l.is_skew());
        l.set(1, 2, 4);
        assert!(l.is_skew());
    }
}
