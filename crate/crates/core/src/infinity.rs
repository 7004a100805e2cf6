//! Chains of good sub-seeds and their colimits, extension of quantizations
//! along a chain, star-fish membership in the upper cluster algebra, and
//! the seeds `ssd_i`, `usd_i`, `dsd_s` built from Coxeter words.
//!
//! Infinite seeds are never materialized. A chain is a memoized level
//! generator whose vertex ids are stable, so every embedding `ι_i` is the
//! identity on ids.

use crate::cartan::Cartan;
use crate::error::{QError, QResult};
use crate::forms::{quantized_rsd, solve_compatible_lambda, FormKind, HeightFn};
use crate::linalg::{self, as_int, rat, Rat};
use crate::qtorus::{substitute, ExpVec, LambdaForm, QLaurent, Vid};
use crate::roots::{apply_word, is_positive, nu_and_h, positive_roots, simple_root};
use crate::seed::{good_subseed_check, validate, Seed, SeedData};
use crate::tsystems::{interval_variables, sigma_blocks, IntervalTable};
use crate::words::{build_dsd_shifted, build_rsd, Pos, SignedWord};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::{Arc, Mutex};

type LevelFn = dyn Fn(&SeedChain, usize) -> QResult<Seed> + Send + Sync;

/// A chain `sd_0 ⊂ sd_1 ⊂ ⋯` of good sub-seeds with stable vertex ids.
pub struct SeedChain {
    name: String,
    gen: Box<LevelFn>,
    cache: Mutex<BTreeMap<usize, Arc<Seed>>>,
}

impl fmt::Debug for SeedChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SeedChain({})", self.name)
    }
}

fn empty_seed(quantum: bool) -> QResult<Seed> {
    let mut data = SeedData::default();
    if quantum {
        data.lam = Some(LambdaForm::new());
    }
    Seed::new(data)
}

impl SeedChain {
    /// A chain from an arbitrary level generator. The generator may ask the
    /// chain for lower levels (they are cached).
    pub fn new(name: impl Into<String>, gen: impl Fn(&SeedChain, usize) -> QResult<Seed> + Send + Sync + 'static) -> Self {
        SeedChain { name: name.into(), gen: Box::new(gen), cache: Mutex::new(BTreeMap::new()) }
    }

    /// `sd_i = rsd(c^i)`, quantized by the chosen form.
    pub fn sd(c: &Cartan, cox: &SignedWord, kind: FormKind) -> QResult<Self> {
        let xi = HeightFn::from_coxeter(c, cox)?;
        let (c, cox) = (c.clone(), cox.clone());
        Ok(Self::new(format!("sd({cox})"), move |_, i| {
            if i == 0 {
                return empty_seed(true);
            }
            quantized_rsd(&cox.repeat(i), &c, &xi, kind)
        }))
    }

    /// `ssd_i` (or `usd_i`) on the vertex set of `sd_{2i}`.
    pub fn scenario(kind: ScenarioKind, c: &Cartan, cox: &SignedWord, form: FormKind) -> QResult<Self> {
        if kind == ScenarioKind::DsdGhl {
            return Self::dsd_ghl(c, cox);
        }
        HeightFn::from_coxeter(c, cox)?;
        let (c, cox) = (c.clone(), cox.clone());
        Ok(Self::new(format!("{kind}({cox})"), move |_, i| {
            let sc = build_scenario(kind, &c, &cox, i, form)?;
            sc.seed.reinitialized()
        }))
    }

    /// `dsd_s = dsd(c^s, ubi, ν(c)^s)` with `ubi = (η_1,-η_1,…,η_l,-η_l)`
    /// for the `c`-sorting word `η` of `w_0`. Level 0 is quantized by a
    /// compatible `Λ`, every later level by `extend_quantization`.
    pub fn dsd_ghl(c: &Cartan, cox: &SignedWord) -> QResult<Self> {
        let ubi = ghl_word(c, cox)?;
        let nuc = nu_word(c, cox)?;
        let (c, cox) = (c.clone(), cox.clone());
        Ok(Self::new(format!("dsd({cox}; {ubi})"), move |chain, s| {
            let sd = dsd_level(&c, &cox, &ubi, &nuc, s)?;
            if s == 0 {
                let lam = solve_compatible_lambda(&sd, 4)?;
                return sd.quantize(&lam);
            }
            let prev = chain.level(s - 1)?;
            let lam_prime = prev.lambda_form().ok_or_else(|| QError::Invalid("level is not quantized".into()))?;
            let (i1, i2, i3) = chain_partition(&prev, &sd)?;
            let lam = extend_quantization(&sd, &i1, &i2, &i3, &lam_prime)?;
            sd.quantize(&lam)
        }))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Level `i` (memoized; the lock is not held while building).
    pub fn level(&self, i: usize) -> QResult<Arc<Seed>> {
        if let Some(s) = self.cache.lock().unwrap().get(&i) {
            return Ok(s.clone());
        }
        let s = Arc::new((self.gen)(self, i)?);
        Ok(self.cache.lock().unwrap().entry(i).or_insert(s).clone())
    }

    /// `ι_i : I(sd_i) → I(sd_{i+1})`.
    pub fn embedding(&self, i: usize) -> QResult<BTreeMap<Vid, Vid>> {
        Ok(self.level(i)?.verts().iter().map(|&v| (v, v)).collect())
    }
}

/// `(I_1, I_2, I_3)` for `sub ⊂ sup` with `I_1 = I_uf(sub)`, `I_2 = I_f(sub)`
/// and `I_3 = I(sup) \ I(sub)`.
fn chain_partition(sub: &Seed, sup: &Seed) -> QResult<(Vec<Vid>, Vec<Vid>, Vec<Vid>)> {
    let i1 = sub.unfrozen();
    let i2 = sub.frozen();
    let i3: Vec<Vid> = sup.verts().iter().copied().filter(|v| !sub.contains(*v)).collect();
    if i1.iter().chain(&i2).any(|v| !sup.contains(*v)) {
        return Err(QError::Invalid("lower level is not contained in the next one".into()));
    }
    Ok((i1, i2, i3))
}

/// Level `i` of the colimit: checks that every `ι_j`, `j < i`, is a good
/// sub-seed embedding (including agreement of `Λ`) and returns `sd_i`.
pub fn colimit_view(chain: &SeedChain, i: usize) -> QResult<Arc<Seed>> {
    for j in 0..i {
        let (sub, sup) = (chain.level(j)?, chain.level(j + 1)?);
        let iota = chain.embedding(j)?;
        if !good_subseed_check(&sub, &sup, &iota) {
            let why = crate::seed::embedding_violations(&sub, &sup, &iota, true);
            return Err(QError::Hypothesis(format!(
                "level {j} is not a good sub seed of level {}: {}",
                j + 1,
                why.join("; ")
            )));
        }
    }
    chain.level(i)
}

/// Pushes `z` (in the torus of a fresh level-`i` seed) into the torus of
/// `sup` along `ι`.
fn push_forward(z: &QLaurent, iota: &BTreeMap<Vid, Vid>, sup: &Seed) -> QResult<QLaurent> {
    let t = sup.reference();
    let images: BTreeMap<Vid, QLaurent> =
        iota.iter().map(|(&v, &w)| Ok((v, QLaurent::var(t, w)?))).collect::<QResult<_>>()?;
    substitute(z, &images, t)
}

/// Mutates level `i` and level `i + 1` along `seq` and compares every
/// cluster variable of level `i` with its image. Returns the vertices
/// where they differ.
pub fn chain_coherence(chain: &SeedChain, i: usize, seq: &[Vid]) -> QResult<Vec<Vid>> {
    let sub = colimit_view(chain, i + 1).and_then(|_| chain.level(i))?;
    let sup = chain.level(i + 1)?;
    let iota = chain.embedding(i)?;
    let supr = sup.reinitialized()?;
    let (mut a, mut b) = (sub.reinitialized()?, supr.clone());
    for &k in seq {
        a = a.mutate(k)?;
        b = b.mutate(iota[&k])?;
    }
    let mut bad = Vec::new();
    for &v in a.verts() {
        let img = push_forward(a.var(v)?, &iota, &supr)?;
        if img != *b.var(iota[&v])? {
            bad.push(v);
        }
    }
    Ok(bad)
}

fn connected(verts: &[Vid], edge: impl Fn(Vid, Vid) -> bool) -> bool {
    let Some(&start) = verts.first() else {
        return true;
    };
    let mut seen = BTreeSet::from([start]);
    let mut stack = vec![start];
    while let Some(u) = stack.pop() {
        for &v in verts {
            if !seen.contains(&v) && (edge(u, v) || edge(v, u)) {
                seen.insert(v);
                stack.push(v);
            }
        }
    }
    seen.len() == verts.len()
}

/// Blocks of `B̃ D` and `Λ'` in the ordering `I_1, I_2, I_3`.
struct Blocks {
    bd: Vec<Vec<Rat>>, // rows I1 ∪ I2 ∪ I3, columns I1 ∪ I2
    lam: Vec<Vec<Rat>>, // I1 ∪ I2 square
}

impl Blocks {
    fn b(&self, r: std::ops::Range<usize>, c: std::ops::Range<usize>) -> Vec<Vec<Rat>> {
        self.bd[r].iter().map(|row| row[c.clone()].to_vec()).collect()
    }
}

fn neg(m: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    m.iter().map(|r| r.iter().map(|x| -x.clone()).collect()).collect()
}

fn transpose(m: &[Vec<Rat>], ncols: usize) -> Vec<Vec<Rat>> {
    (0..ncols).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

fn is_zero(m: &[Vec<Rat>]) -> bool {
    m.iter().all(|r| r.iter().all(|x| *x == Rat::ZERO))
}

/// Uniquely extends a quantization `Λ'` of the sub-seed on `I_1 ∪ I_2`
/// (with `I_2` frozen there) to `sd`, whose frozen set is `I_3`.
///
/// Solves, over `Q`,
/// `[Λ11 Λ12][B12;B22] + Z13 B32 = 0`,
/// `[Λ21 Λ22][B12;B22] + Z23 B32 = -α Id`,
/// `-[Z13ᵀ Z23ᵀ][B12;B22] + Z33 B32 = 0`,
/// and checks the remaining equation `[Z13ᵀ Z23ᵀ][B11;B21] = 0`, the
/// skew-symmetry of `Z33` and integrality.
pub fn extend_quantization(
    sd: &Seed,
    i1: &[Vid],
    i2: &[Vid],
    i3: &[Vid],
    lam_prime: &LambdaForm,
) -> QResult<LambdaForm> {
    let order: Vec<Vid> = i1.iter().chain(i2).chain(i3).copied().collect();
    let set: BTreeSet<Vid> = order.iter().copied().collect();
    if set.len() != order.len() || set != sd.verts().iter().copied().collect() {
        return Err(QError::Invalid("I1, I2, I3 must partition the vertex set".into()));
    }
    let uf: BTreeSet<Vid> = sd.unfrozen().into_iter().collect();
    if uf != i1.iter().chain(i2).copied().collect() {
        return Err(QError::Invalid("I1 ∪ I2 must be the unfrozen vertices".into()));
    }
    let (n1, n2, n3) = (i1.len(), i2.len(), i3.len());
    let sub: Vec<Vid> = order[..n1 + n2].to_vec();
    let bd: Vec<Vec<Rat>> =
        order.iter().map(|&i| sub.iter().map(|&k| rat(sd.b(i, k) * sd.d(k))).collect()).collect();
    let lam: Vec<Vec<Rat>> = sub.iter().map(|&i| sub.iter().map(|&j| rat(lam_prime.get(i, j))).collect()).collect();
    let bl = Blocks { bd, lam };

    if !is_zero(&bl.b(n1 + n2..n1 + n2 + n3, 0..n1)) {
        return Err(QError::Hypothesis("B31 is not zero".into()));
    }
    if n2 != n3 {
        return Err(QError::Hypothesis(format!("|I2| = {n2} differs from |I3| = {n3}")));
    }
    let i1s: Vec<Vid> = i1.to_vec();
    if !connected(&i1s, |u, v| sd.b(u, v) != 0) {
        return Err(QError::Hypothesis("B11 is not connected".into()));
    }
    let ufv: Vec<Vid> = sub.clone();
    if !connected(&ufv, |u, v| sd.b(u, v) != 0) {
        return Err(QError::Hypothesis("the principal part of B~ is not connected".into()));
    }
    if !lam_prime.is_skew() {
        return Err(QError::Invalid("Λ' is not skew-symmetric".into()));
    }

    // Λ' [B11; B21] = -α [Id; 0]
    let b_1 = bl.b(0..n1 + n2, 0..n1);
    let lb = linalg::mat_mul(&bl.lam, &b_1, n1 + n2, n1);
    let alpha = if n1 == 0 { Rat::ZERO } else { -lb[0][0].clone() };
    for (r, row) in lb.iter().enumerate() {
        for (c, x) in row.iter().enumerate() {
            let want = if r == c { -alpha.clone() } else { Rat::ZERO };
            if *x != want {
                return Err(QError::Hypothesis("Λ' is not compatible with the sub seed".into()));
            }
        }
    }
    if n1 > 0 && alpha <= Rat::ZERO {
        return Err(QError::Hypothesis("Λ' has a non-positive compatibility constant".into()));
    }
    if n3 == 0 {
        return Ok(lam_prime.restrict(&sub));
    }

    let b32 = bl.b(n1 + n2..n1 + n2 + n3, n1..n1 + n2);
    let b32_inv = linalg::inverse(&b32).ok_or_else(|| QError::Hypothesis("B32 is not of full rank".into()))?;
    let b_2 = bl.b(0..n1 + n2, n1..n1 + n2); // [B12; B22]
    let lb2 = linalg::mat_mul(&bl.lam, &b_2, n1 + n2, n2);
    let z13 = linalg::mat_mul(&neg(&lb2[..n1]), &b32_inv, n2, n3);
    let mut rhs2 = neg(&lb2[n1..]);
    for (t, row) in rhs2.iter_mut().enumerate() {
        row[t] = &row[t] - &alpha;
    }
    let z23 = linalg::mat_mul(&rhs2, &b32_inv, n2, n3);
    // [Z13; Z23] stacked, transposed: I3 x (I1 ∪ I2)
    let mut z_12: Vec<Vec<Rat>> = z13.clone();
    z_12.extend(z23.iter().cloned());
    let zt = transpose(&z_12, n3);
    let z33 = linalg::mat_mul(&linalg::mat_mul(&zt, &b_2, n1 + n2, n2), &b32_inv, n2, n3);
    if !is_zero(&linalg::mat_mul(&zt, &b_1, n1 + n2, n1)) {
        return Err(QError::Hypothesis("the fourth block equation fails".into()));
    }
    for a in 0..n3 {
        for b in 0..n3 {
            if z33[a][b] != -z33[b][a].clone() {
                return Err(QError::Hypothesis("the solution Z33 is not skew-symmetric".into()));
            }
        }
    }

    let mut out = lam_prime.restrict(&sub);
    let int = |x: &Rat, i: Vid, j: Vid| {
        as_int(x).ok_or_else(|| QError::NonIntegral(format!("Λ({i},{j}) = {x}")))
    };
    for (r, &i) in sub.iter().enumerate() {
        for (c, &j) in i3.iter().enumerate() {
            out.set(i, j, int(&z_12[r][c], i, j)?);
        }
    }
    for a in 0..n3 {
        for b in a + 1..n3 {
            out.set(i3[a], i3[b], int(&z33[a][b], i3[a], i3[b])?);
        }
    }
    let rep = validate(&sd.quantize(&out)?);
    if !rep.is_valid() {
        return Err(QError::Invalid(format!("extended Λ fails validation: {}", rep.lines().join("; "))));
    }
    Ok(out)
}

/// Which of the four block equations `Λ` satisfies, in the order
/// `(1,2)`, `(2,2)`, `(3,2)`, `(3,1)` of `Λ B̃ D = -α [Id 0; 0 Id; 0 0]`.
pub fn block_equations(sd: &Seed, i1: &[Vid], i2: &[Vid], i3: &[Vid], lam: &LambdaForm, alpha: i64) -> [bool; 4] {
    let ok = |rows: &[Vid], cols: &[Vid], diag: bool| {
        rows.iter().all(|&i| {
            cols.iter().all(|&k| {
                let s: i64 = sd.verts().iter().map(|&t| lam.get(i, t) * sd.b(t, k) * sd.d(k)).sum();
                s == if diag && i == k { -alpha } else { 0 }
            })
        })
    };
    [ok(i1, i2, false), ok(i2, i2, true), ok(i3, i2, false), ok(i3, i1, false)]
}

/// Star-fish test: `z` (read in the cluster of `sd`) lies in `LP(sd)` and
/// in `LP(μ_k sd)` for every unfrozen `k`.
///
/// For each `k` the element `z x_k^N` (no negative power of `x_k`) is
/// rewritten in the cluster of `μ_k sd` via `x_k = μ_k(x'_k)`, and the
/// result must be right-divisible by the image of `x_k^N`.
pub fn upper_membership(z: &QLaurent, sd: &Seed) -> QResult<bool> {
    if z.torus().verts() != sd.verts() {
        return Err(QError::Invalid("element is not written in the vertices of the seed".into()));
    }
    let uf = sd.unfrozen();
    if linalg::rank(&linalg::to_rat_matrix(&sd.btilde()), uf.len()) < uf.len() {
        return Err(QError::NotInjective);
    }
    let s0 = sd.reinitialized()?;
    let z = z.retorus(s0.reference())?;
    for &k in &uf {
        let flipped = s0.mutate(k)?.reinitialized()?;
        let back = flipped.mutate(k)?;
        let t = flipped.reference().clone();
        let mut images = BTreeMap::new();
        for &v in sd.verts() {
            images.insert(v, back.var(v)?.clone());
        }
        let n = (-z.min_exponent(k).unwrap_or(0)).max(0);
        let xk = QLaurent::var(s0.reference(), k)?.pow(n as u32);
        let lifted = &z * &xk;
        let y = substitute(&lifted, &images, &t)?;
        let d = images[&k].pow(n as u32);
        match y.exact_div(&d) {
            Ok(_) => {}
            Err(QError::Inexact) => return Ok(false),
            Err(e) => return Err(e),
        }
    }
    Ok(true)
}

/// The seeds built from Coxeter words.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ScenarioKind {
    Sd,
    Ssd,
    Usd,
    DsdGhl,
}

impl fmt::Display for ScenarioKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ScenarioKind::Sd => "sd",
            ScenarioKind::Ssd => "ssd",
            ScenarioKind::Usd => "usd",
            ScenarioKind::DsdGhl => "dsd",
        })
    }
}

impl std::str::FromStr for ScenarioKind {
    type Err = QError;
    fn from_str(s: &str) -> QResult<Self> {
        match s {
            "sd" => Ok(ScenarioKind::Sd),
            "ssd" => Ok(ScenarioKind::Ssd),
            "usd" => Ok(ScenarioKind::Usd),
            "dsd" | "dsd_GHL" | "ghl" => Ok(ScenarioKind::DsdGhl),
            _ => Err(QError::Parse(format!("unknown scenario kind {s:?}"))),
        }
    }
}

/// `W_[⟪a,lo⟫,⟪a,hi⟫]` in the recentered indexing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct IntervalLabel {
    pub a: i64,
    pub lo: i64,
    pub hi: i64,
}

impl fmt::Display for IntervalLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lo == self.hi {
            write!(f, "W<<{},{}>>", self.a, self.lo)
        } else {
            write!(f, "W[<<{},{}>>,<<{},{}>>]", self.a, self.lo, self.a, self.hi)
        }
    }
}

/// A scenario seed with its predicted initial cluster variables.
#[derive(Clone, Debug)]
pub struct Scenario {
    pub kind: ScenarioKind,
    pub level: usize,
    /// The signed word whose `rsd` (or `dsd`) the seed should be.
    pub word: SignedWord,
    /// Mutation steps applied to `sd_{2i}`, in order.
    pub steps: Vec<Vid>,
    /// The mutated seed; variables live in the torus of `sd_{2i}`.
    pub seed: Seed,
    /// Interval table of `sd_{2i}` (absent for `dsd`).
    pub base: Option<IntervalTable>,
    pub labels: BTreeMap<Vid, IntervalLabel>,
}

/// One predicted-label comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelLine {
    pub vertex: Vid,
    pub label: IntervalLabel,
    pub ok: bool,
}

impl LabelLine {
    pub fn describe(&self) -> String {
        format!("x_{} = {}: {}", self.vertex, self.label, if self.ok { "ok" } else { "MISMATCH" })
    }
}

/// Splits `c` as `(c⁺, c⁻)` with both parts free of edges. `J⁺` is the
/// first part.
pub fn bipartite_split(c: &Cartan, cox: &SignedWord) -> QResult<(Vec<i64>, Vec<i64>)> {
    let l = cox.letters();
    let indep = |s: &[i64]| s.iter().all(|&a| s.iter().all(|&b| a == b || c.entry(a, b) == 0));
    for p in (1..=l.len()).rev() {
        if indep(&l[..p]) && indep(&l[p..]) {
            return Ok((l[..p].to_vec(), l[p..].to_vec()));
        }
    }
    Err(QError::Hypothesis(format!("{cox} is not of the form (c+, c-) for a bipartite orientation")))
}

fn signed(letters: impl IntoIterator<Item = i64>, sign: i64) -> Vec<i64> {
    letters.into_iter().map(|a| sign * a).collect()
}

/// The signed word of a scenario at level `i`.
pub fn scenario_word(kind: ScenarioKind, c: &Cartan, cox: &SignedWord, i: usize) -> QResult<SignedWord> {
    let l = cox.letters().to_vec();
    let rev: Vec<i64> = l.iter().rev().copied().collect();
    let unit: Vec<i64> = match kind {
        ScenarioKind::Sd => [l.clone(), l.clone()].concat(),
        ScenarioKind::Ssd => [l.clone(), signed(rev, -1)].concat(),
        ScenarioKind::Usd => {
            let (p, m) = bipartite_split(c, cox)?;
            let mr: Vec<i64> = m.iter().rev().copied().collect();
            let pr: Vec<i64> = p.iter().rev().copied().collect();
            [p, signed(mr, -1), signed(pr, -1), m].concat()
        }
        ScenarioKind::DsdGhl => {
            let ubi = ghl_word(c, cox)?;
            let nuc = nu_word(c, cox)?;
            let mut v = cox.repeat(i).letters().to_vec();
            v.extend(ubi.letters());
            v.extend(nuc.repeat(i).letters());
            return SignedWord::new(v);
        }
    };
    SignedWord::new(unit.repeat(i))
}

/// The recentered label predicted for the vertex `⟨a,e⟩` at level `i`.
fn predicted_label(kind: ScenarioKind, a: i64, e: i64, minus: &[i64]) -> IntervalLabel {
    let d = e.div_euclid(2);
    let (lo, hi) = match (kind, e % 2, minus.contains(&a)) {
        (ScenarioKind::Usd, 0, true) => (-d, d),
        (_, 0, _) => (-d + 1, d + 1),
        _ => (-d, d + 1),
    };
    IntervalLabel { a, lo, hi }
}

/// `W_[⟪a,lo⟫,⟪a,hi⟫]` of `sd_{2i}`, with `⟪a,d⟫` at occurrence `d + i - 1`.
pub fn interval_by_label(tbl: &IntervalTable, i: usize, lab: &IntervalLabel) -> QResult<QLaurent> {
    let w = tbl.word();
    let pos = |d: i64| -> QResult<usize> {
        let o = d + i as i64 - 1;
        if o < 0 {
            return Err(QError::ContextTooSmall(format!("<<{},{}>> lies before sd_{}", lab.a, d, 2 * i)));
        }
        w.position(lab.a, o as usize)
            .ok_or_else(|| QError::ContextTooSmall(format!("<<{},{}>> lies beyond sd_{}", lab.a, d, 2 * i)))
    };
    tbl.get(pos(lab.lo)?, Pos::At(pos(lab.hi)?))
}

/// Builds `sd_{2i}`, `ssd_i`, `usd_i` (on the vertices of `sd_{2i}`) or
/// `dsd_i` together with the labels predicted for the initial variables.
///
/// `ssd_i = μ^{(i)} sd_{2i}` with `μ^{(i)} = μ^{(i-1)} Σ_{c_n} ⋯ Σ_{c_1}`;
/// `usd_i` further mutates `⟨a,2d⟩` for `a ∈ J⁻`, `d < i`.
pub fn build_scenario(kind: ScenarioKind, c: &Cartan, cox: &SignedWord, i: usize, form: FormKind) -> QResult<Scenario> {
    if !cox.is_coxeter_for(c) {
        return Err(QError::Invalid(format!("{cox} is not a Coxeter word")));
    }
    let word = scenario_word(kind, c, cox, i)?;
    if kind == ScenarioKind::DsdGhl {
        let chain = SeedChain::dsd_ghl(c, cox)?;
        let seed = (*colimit_view(&chain, i)?).clone();
        return Ok(Scenario { kind, level: i, word, steps: Vec::new(), seed, base: None, labels: BTreeMap::new() });
    }
    let minus = if kind == ScenarioKind::Usd { bipartite_split(c, cox)?.1 } else { Vec::new() };
    if i == 0 {
        let seed = empty_seed(true)?;
        return Ok(Scenario { kind, level: 0, word, steps: Vec::new(), seed, base: None, labels: BTreeMap::new() });
    }
    let xi = HeightFn::from_coxeter(c, cox)?;
    let n = cox.len();
    let base_word = cox.repeat(2 * i);
    let sd = quantized_rsd(&base_word, c, &xi, form)?;
    let tbl = interval_variables(&base_word, c, &sd)?;
    let mut steps: Vec<Vid> = Vec::new();
    if kind != ScenarioKind::Sd {
        for t in (1..=i).rev() {
            let blocks = sigma_blocks(&cox.repeat(2 * t))?;
            steps.extend(blocks[..n].iter().flatten().copied());
        }
    }
    if kind == ScenarioKind::Usd {
        for d in 0..i {
            for &a in &minus {
                steps.push(base_word.position(a, 2 * d).unwrap() as Vid);
            }
        }
    }
    let mut seed = tbl.seed().clone();
    for &k in &steps {
        seed = seed.mutate(k)?;
    }
    let mut labels = BTreeMap::new();
    for p in 1..=base_word.len() {
        let (a, e) = (base_word.abs(p), base_word.occurrence(p) as i64);
        let lab = if kind == ScenarioKind::Sd {
            // x_p(sd_{2i}) = W_[p^min, p]
            IntervalLabel { a, lo: 1 - i as i64, hi: e + 1 - i as i64 }
        } else {
            predicted_label(kind, a, e, &minus)
        };
        labels.insert(p as Vid, lab);
        seed.set_label(p as Vid, lab.to_string());
    }
    Ok(Scenario { kind, level: i, word, steps, seed, base: Some(tbl), labels })
}

impl Scenario {
    /// Compares every cluster variable with its predicted interval variable.
    pub fn verify_labels(&self) -> QResult<Vec<LabelLine>> {
        let Some(tbl) = &self.base else {
            return Ok(Vec::new());
        };
        let mut out = Vec::new();
        for (&v, lab) in &self.labels {
            let want = interval_by_label(tbl, self.level, lab)?;
            out.push(LabelLine { vertex: v, label: *lab, ok: *self.seed.var(v)? == want });
        }
        Ok(out)
    }

    /// The vertex of `sd_{2i}` carrying position `p` of the scenario word,
    /// matched by letter and occurrence.
    pub fn relabel(&self) -> QResult<BTreeMap<Vid, Vid>> {
        if self.kind == ScenarioKind::DsdGhl {
            return Err(QError::Invalid("dsd scenarios keep their own ids".into()));
        }
        let base_word = self.base.as_ref().map(|t| t.word().clone()).unwrap_or_default();
        let mut out = BTreeMap::new();
        for p in 1..=self.word.len() {
            let (a, o) = (self.word.abs(p), self.word.occurrence(p));
            let q = base_word.position(a, o).ok_or_else(|| QError::Invalid("occurrence missing".into()))?;
            out.insert(p as Vid, q as Vid);
        }
        Ok(out)
    }

    /// Independent check of the combinatorics: `B̃` and the frozen set of
    /// the mutated seed equal those of `rsd(word)` after relabeling.
    pub fn matches_word_seed(&self, c: &Cartan) -> QResult<bool> {
        if self.base.is_none() {
            return Ok(true);
        }
        let direct = build_rsd(&self.word, c)?;
        let sigma = self.relabel()?;
        for &p in direct.verts() {
            if direct.is_frozen(p) != self.seed.is_frozen(sigma[&p]) {
                return Ok(false);
            }
            for &q in direct.verts() {
                if direct.b(p, q) != self.seed.b(sigma[&p], sigma[&q]) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// The `c`-sorting word of `w_0`: scan `c c c ⋯`, keep a letter when it
/// lengthens the element, and never keep a letter skipped in an earlier
/// pass.
pub fn c_sorting_w0(c: &Cartan, cox: &SignedWord) -> QResult<Vec<i64>> {
    let np = positive_roots(c)?.len();
    let mut w: Vec<i64> = Vec::new();
    let mut alive: BTreeSet<i64> = cox.letters().iter().copied().collect();
    while w.len() < np {
        let mut next = BTreeSet::new();
        for &a in cox.letters() {
            if alive.contains(&a) && is_positive(&apply_word(&w, &simple_root(c, a), c)) {
                w.push(a);
                next.insert(a);
            }
        }
        if next.is_empty() {
            return Err(QError::Invalid("c-sorting did not reach w0".into()));
        }
        alive = next;
    }
    Ok(w)
}

/// `ubi = (η_1, -η_1, …, η_l, -η_l)` for the `c`-sorting word `η` of `w_0`.
pub fn ghl_word(c: &Cartan, cox: &SignedWord) -> QResult<SignedWord> {
    let eta = c_sorting_w0(c, cox)?;
    SignedWord::new(eta.iter().flat_map(|&a| [a, -a]).collect())
}

/// `ν(c)`.
pub fn nu_word(c: &Cartan, cox: &SignedWord) -> QResult<SignedWord> {
    let (nu, _) = nu_and_h(c)?;
    SignedWord::new(cox.letters().iter().map(|&a| nu[(a - 1) as usize]).collect())
}

/// Classical `dsd(c^s, ubi, ν(c)^s)` with ids `φ⟨a,d⟩ - s|J|` and
/// `⟨c_k,-1⟩ ↦ k - (s+1)|J|`.
pub fn dsd_level(c: &Cartan, cox: &SignedWord, ubi: &SignedWord, nuc: &SignedWord, s: usize) -> QResult<Seed> {
    let wp = cox.repeat(s).concat(ubi).concat(&nuc.repeat(s));
    build_dsd_shifted(&wp, cox, c, (s * cox.len()) as i64)
}

/// Exponent vector helper for callers building monomials by vertex.
pub fn exp(pairs: &[(Vid, i64)]) -> ExpVec {
    ExpVec::from_pairs(pairs.iter().copied())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tsystems::standard_monomial;

    fn a2() -> (Cartan, SignedWord) {
        (Cartan::of_type("A2").unwrap(), SignedWord::parse("1,2").unwrap())
    }

    fn b3() -> (Cartan, SignedWord) {
        (Cartan::of_type("B3").unwrap(), SignedWord::parse("2,1,3").unwrap())
    }

    #[test]
    fn sd_chain_levels_agree() {
        let (c, cox) = a2();
        let ch = SeedChain::sd(&c, &cox, FormKind::Underline).unwrap();
        let l3 = colimit_view(&ch, 3).unwrap();
        let l2 = ch.level(2).unwrap();
        for &i in l2.verts() {
            for &j in l2.verts() {
                assert_eq!(l2.lam(i, j), l3.lam(i, j));
            }
            for k in l2.unfrozen() {
                assert_eq!(l2.b(i, k), l3.b(i, k));
            }
        }
        assert!(ch.level(0).unwrap().is_empty());
    }

    #[test]
    fn sd_chain_coherence() {
        let (c, cox) = a2();
        let ch = SeedChain::sd(&c, &cox, FormKind::Underline).unwrap();
        for i in 1..=2 {
            let uf = ch.level(i).unwrap().unfrozen();
            for &k in &uf {
                for &k2 in &uf {
                    assert!(chain_coherence(&ch, i, &[k, k2]).unwrap().is_empty(), "level {i} at {k},{k2}");
                }
            }
        }
    }

    #[test]
    fn c_sorting_words() {
        let (c, cox) = a2();
        assert_eq!(c_sorting_w0(&c, &cox).unwrap(), vec![1, 2, 1]);
        let a3 = Cartan::of_type("A3").unwrap();
        assert_eq!(c_sorting_w0(&a3, &SignedWord::parse("1,2,3").unwrap()).unwrap(), vec![1, 2, 3, 1, 2, 1]);
        assert_eq!(ghl_word(&c, &cox).unwrap().letters(), &[1, -1, 2, -2, 1, -1]);
        assert_eq!(nu_word(&c, &cox).unwrap().letters(), &[2, 1]);
    }

    #[test]
    fn dsd_level_one_quiver() {
        // arrows of the level-one quiver, read as b_{ij} > 0 for i -> j
        let (c, cox) = a2();
        let ubi = ghl_word(&c, &cox).unwrap();
        let nuc = nu_word(&c, &cox).unwrap();
        let sd = dsd_level(&c, &cox, &ubi, &nuc, 1).unwrap();
        assert_eq!(sd.verts(), (-3..=8).collect::<Vec<_>>().as_slice());
        assert_eq!(sd.frozen(), vec![-3, -2, 7, 8]);
        let arrows = [
            (-1, 1), (2, 1), (2, 5), (6, 5), (5, 4), (4, 3), (0, 3), (3, 2), (1, 0), (0, -1),
            (-1, -2), (-2, 0), (-3, -1), (4, 7), (7, 6), (6, 8),
        ];
        let mut seen = BTreeSet::new();
        for (i, j) in arrows {
            let (x, y) = if sd.is_frozen(j) { (j, i) } else { (i, j) };
            let want = if sd.is_frozen(j) { -1 } else { 1 };
            assert_eq!(sd.b(x, y), want, "arrow {i} -> {j}");
            seen.insert((i.min(j), i.max(j)));
        }
        for k in sd.unfrozen() {
            for &i in sd.verts() {
                if sd.b(i, k) != 0 {
                    assert!(seen.contains(&(i.min(k), i.max(k))), "extra arrow between {i} and {k}");
                }
            }
        }
    }

    #[test]
    fn dsd_chain_extends_quantization() {
        let (c, cox) = a2();
        let ch = SeedChain::dsd_ghl(&c, &cox).unwrap();
        let top = colimit_view(&ch, 3).unwrap();
        assert!(validate(&top).is_valid());
        for s in 0..3 {
            let (sub, sup) = (ch.level(s).unwrap(), ch.level(s + 1).unwrap());
            let (i1, i2, i3) = chain_partition(&sub, &sup).unwrap();
            assert_eq!(i2.len(), 2 * cox.len());
            assert_eq!(i3.len(), 2 * cox.len());
            let lam = sup.lambda_form().unwrap();
            let alpha = -(sub.verts().iter().map(|&t| lam.get(i1[0], t) * sup.b(t, i1[0]) * sup.d(i1[0])).sum::<i64>());
            assert_eq!(block_equations(&sup, &i1, &i2, &i3, &lam, alpha), [true; 4]);
            // any change of the new entries breaks one of the block equations
            let mut bad = lam.clone();
            bad.set(i1[0], i3[0], lam.get(i1[0], i3[0]) + 1);
            assert_ne!(block_equations(&sup, &i1, &i2, &i3, &bad, alpha), [true; 4]);
            let mut bad = lam.clone();
            bad.set(i3[0], i3[1], lam.get(i3[0], i3[1]) + 1);
            assert_ne!(block_equations(&sup, &i1, &i2, &i3, &bad, alpha), [true; 4]);
        }
    }

    #[test]
    fn dsd_chain_coherence() {
        let (c, cox) = a2();
        let ch = SeedChain::dsd_ghl(&c, &cox).unwrap();
        for i in 0..3 {
            let uf = ch.level(i).unwrap().unfrozen();
            for &k in &uf {
                assert!(chain_coherence(&ch, i, &[k]).unwrap().is_empty(), "level {i} at {k}");
                for &k2 in &uf {
                    assert!(chain_coherence(&ch, i, &[k, k2]).unwrap().is_empty(), "level {i} at {k},{k2}");
                }
            }
        }
    }

    #[test]
    fn scenario_chains_are_good() {
        for (c, cox) in [a2(), b3()] {
            for kind in [ScenarioKind::Ssd, ScenarioKind::Usd] {
                let ch = SeedChain::scenario(kind, &c, &cox, FormKind::Underline).unwrap();
                colimit_view(&ch, 3).unwrap();
            }
        }
    }

    #[test]
    fn extension_edge_cases() {
        let (c, cox) = a2();
        let ch = SeedChain::dsd_ghl(&c, &cox).unwrap();
        let (s0, s1) = (ch.level(0).unwrap(), ch.level(1).unwrap());
        let lam0 = s0.lambda_form().unwrap();
        let (i1, i2, i3) = chain_partition(&s0, &s1).unwrap();
        let lam = extend_quantization(&s1.reinitialized().unwrap(), &i1, &i2, &i3, &lam0).unwrap();
        assert_eq!(lam.restrict(s0.verts()), lam0.restrict(s0.verts()));
        // |I2| != |I3|
        assert!(matches!(
            extend_quantization(&s0, &s0.unfrozen(), &[], &s0.frozen(), &lam0),
            Err(QError::Hypothesis(_))
        ));
        // B32 loses a column
        let mut data = s1.data();
        let v = i2[0];
        data.b.retain(|&(i, k), _| !(k == v && i3.contains(&i)));
        data.lam = None;
        let broken = Seed::new(data).unwrap();
        assert!(matches!(extend_quantization(&broken, &i1, &i2, &i3, &lam0), Err(QError::Hypothesis(_))));
    }

    #[test]
    fn extension_with_nothing_to_add() {
        let data = SeedData {
            verts: vec![1, 2],
            b: [((1, 2), 1), ((2, 1), -1)].into_iter().collect(),
            ..Default::default()
        };
        let sd = Seed::new(data).unwrap();
        let mut lam = LambdaForm::new();
        lam.set(1, 2, 1);
        assert_eq!(extend_quantization(&sd, &[1, 2], &[], &[], &lam).unwrap(), lam);
    }

    #[test]
    fn a2_ssd2_labels() {
        let (c, cox) = a2();
        let sc = build_scenario(ScenarioKind::Ssd, &c, &cox, 2, FormKind::Underline).unwrap();
        assert_eq!(sc.steps, vec![1, 3, 5, 2, 4, 6, 1, 2]);
        assert_eq!(sc.word.letters(), &[1, 2, -2, -1, 1, 2, -2, -1]);
        let want = [
            (1, 1, 1, 1), (2, 2, 1, 1), (3, 1, 0, 1), (4, 2, 0, 1),
            (5, 1, 0, 2), (6, 2, 0, 2), (7, 1, -1, 2), (8, 2, -1, 2),
        ];
        for (v, a, lo, hi) in want {
            assert_eq!(sc.labels[&v], IntervalLabel { a, lo, hi }, "vertex {v}");
        }
        for line in sc.verify_labels().unwrap() {
            assert!(line.ok, "{}", line.describe());
        }
        assert!(sc.matches_word_seed(&c).unwrap());
    }

    #[test]
    fn a2_usd2_labels() {
        let (c, cox) = a2();
        let sc = build_scenario(ScenarioKind::Usd, &c, &cox, 2, FormKind::Underline).unwrap();
        assert_eq!(sc.word.letters(), &[1, -2, -1, 2, 1, -2, -1, 2]);
        assert_eq!(&sc.steps[8..], &[2, 6]);
        let want = [
            (1, 1, 1, 1), (2, 2, 0, 0), (3, 1, 0, 1), (4, 2, 0, 1),
            (5, 1, 0, 2), (6, 2, -1, 1), (7, 1, -1, 2), (8, 2, -1, 2),
        ];
        for (v, a, lo, hi) in want {
            assert_eq!(sc.labels[&v], IntervalLabel { a, lo, hi }, "vertex {v}");
        }
        for line in sc.verify_labels().unwrap() {
            assert!(line.ok, "{}", line.describe());
        }
        assert!(sc.matches_word_seed(&c).unwrap());
    }

    #[test]
    fn b3_scenarios() {
        let (c, cox) = b3();
        for kind in [ScenarioKind::Ssd, ScenarioKind::Usd] {
            let sc = build_scenario(kind, &c, &cox, 2, FormKind::Underline).unwrap();
            for line in sc.verify_labels().unwrap() {
                assert!(line.ok, "{kind}: {}", line.describe());
            }
            assert!(sc.matches_word_seed(&c).unwrap(), "{kind}");
        }
        assert_eq!(scenario_word(ScenarioKind::Usd, &c, &cox, 1).unwrap().letters(), &[2, -3, -1, -2, 1, 3]);
    }

    #[test]
    fn level_zero_scenarios() {
        let (c, cox) = a2();
        for kind in [ScenarioKind::Sd, ScenarioKind::Ssd, ScenarioKind::Usd] {
            let sc = build_scenario(kind, &c, &cox, 0, FormKind::Underline).unwrap();
            assert!(sc.seed.is_empty());
        }
        let sc = build_scenario(ScenarioKind::DsdGhl, &c, &cox, 0, FormKind::Underline).unwrap();
        let direct = build_dsd_shifted(&ghl_word(&c, &cox).unwrap(), &cox, &c, 0).unwrap();
        assert!(sc.seed.reinitialized().unwrap().data().b == direct.data().b);
    }

    #[test]
    fn usd_needs_bipartite_word() {
        let c = Cartan::of_type("A3").unwrap();
        assert!(bipartite_split(&c, &SignedWord::parse("1,3,2").unwrap()).is_ok());
        assert!(bipartite_split(&c, &SignedWord::parse("1,2,3").unwrap()).is_err());
    }

    #[test]
    fn star_fish() {
        let (c, cox) = a2();
        let sd = build_rsd(&cox.repeat(3), &c).unwrap();
        let t = sd.reference().clone();
        let bad = QLaurent::monomial(&t, &exp(&[(1, -1), (2, 1)]), crate::QScalar::one()).unwrap();
        assert!(!upper_membership(&bad, &sd).unwrap());
        let frozen = QLaurent::monomial(&t, &exp(&[(5, -2), (6, 3)]), crate::QScalar::one()).unwrap();
        assert!(upper_membership(&frozen, &sd).unwrap());
        for &k in &sd.unfrozen() {
            let m = sd.mutate(k).unwrap();
            assert!(upper_membership(m.var(k).unwrap(), &sd).unwrap());
            for &k2 in &sd.unfrozen() {
                if k2 != k {
                    let m2 = m.mutate(k2).unwrap();
                    assert!(upper_membership(m2.var(k2).unwrap(), &sd).unwrap());
                }
            }
        }
    }

    #[test]
    fn star_fish_on_standard_monomials() {
        let (c, cox) = a2();
        let w = cox.repeat(3);
        let xi = HeightFn::from_coxeter(&c, &cox).unwrap();
        let sd = quantized_rsd(&w, &c, &xi, FormKind::Underline).unwrap();
        let tbl = interval_variables(&w, &c, &sd).unwrap();
        for wv in crate::bases::indices_up_to(6, 2) {
            let m = standard_monomial(&wv, &tbl).unwrap();
            assert!(upper_membership(&m, &sd).unwrap(), "M({wv:?})");
        }
    }
}
