//! The green-to-red sequence of a word seed, interval and fundamental
//! variables, T-system identities and standard monomials.

use crate::cartan::Cartan;
use crate::error::{QError, QResult};
use crate::forms::HeightFn;
use crate::qtorus::{ExpVec, QLaurent, Vid};
use crate::scalar::QScalar;
use crate::seed::{self, MutSeq, Seed};
use crate::words::{Pos, SignedWord};
use std::collections::BTreeMap;

fn check_unsigned(w: &SignedWord) -> QResult<()> {
    if w.letters().iter().any(|&x| x < 0) {
        return Err(QError::Invalid(format!("{w} has negative letters; green-to-red sequences need a word in J")));
    }
    Ok(())
}

/// `Σ_1, ..., Σ_l` with `Σ_k = μ_{[k^min, k^min[o_+(k)-1]]}`.
pub fn sigma_blocks(w: &SignedWord) -> QResult<Vec<Vec<Vid>>> {
    check_unsigned(w)?;
    let l = w.len();
    Ok((1..=l)
        .map(|k| {
            let a = w.abs(k);
            let o_plus = w.count(k + 1, l, a);
            let kmin = w.kmin(k);
            (0..o_plus as i64).map(|d| w.successor(kmin, d).finite().unwrap() as Vid).collect()
        })
        .collect())
}

/// `Σ = Σ_l ⋯ Σ_1`, steps listed in the order they are applied.
pub fn green_to_red(w: &SignedWord) -> QResult<MutSeq> {
    Ok(MutSeq::new(sigma_blocks(w)?.into_iter().flatten().collect()))
}

/// Interval variables `W_[j,k]` of `rsd(w)` keyed by positions `(j, k)`.
#[derive(Clone, Debug)]
pub struct IntervalTable {
    word: SignedWord,
    cartan: Cartan,
    seed: Seed,
    entries: BTreeMap<(usize, usize), QLaurent>,
}

/// Reads off `W_[<a,r_a>,<a,r_a+d>] = x_<a,d>(rsd{r})` along `Σ`.
///
/// `sd` must be `rsd(w)` (classical or quantized) with its own cluster as
/// the reference torus.
pub fn interval_variables(w: &SignedWord, c: &Cartan, sd: &Seed) -> QResult<IntervalTable> {
    let blocks = sigma_blocks(w)?;
    let l = w.len();
    if sd.verts() != (1..=l as Vid).collect::<Vec<_>>().as_slice() {
        return Err(QError::Invalid("seed is not indexed by the positions of the word".into()));
    }
    let mut entries: BTreeMap<(usize, usize), QLaurent> = BTreeMap::new();
    let mut cur = sd.clone();
    for r in 0..=l {
        if r > 0 {
            for &k in &blocks[r - 1] {
                cur = cur.mutate(k)?;
            }
        }
        for a in c.letters() {
            let ra = w.count(1, r, a);
            let total = w.count(1, l, a);
            for d in 0..total.saturating_sub(ra) {
                let j = w.position(a, ra).unwrap();
                let k = w.position(a, ra + d).unwrap();
                let v = w.position(a, d).unwrap() as Vid;
                let x = cur.var(v)?.clone();
                if let Some(old) = entries.get(&(j, k)) {
                    if *old != x {
                        return Err(QError::Invalid(format!("W[{j},{k}] read off twice with different values")));
                    }
                } else {
                    entries.insert((j, k), x);
                }
            }
        }
    }
    Ok(IntervalTable { word: w.clone(), cartan: c.clone(), seed: sd.clone(), entries })
}

impl IntervalTable {
    pub fn word(&self) -> &SignedWord {
        &self.word
    }

    pub fn cartan(&self) -> &Cartan {
        &self.cartan
    }

    pub fn seed(&self) -> &Seed {
        &self.seed
    }

    pub fn entries(&self) -> &BTreeMap<(usize, usize), QLaurent> {
        &self.entries
    }

    /// `W_[j,k]`; the empty interval `k = j[-1]` gives 1.
    pub fn get(&self, j: usize, k: Pos) -> QResult<QLaurent> {
        if k == self.word.successor(j, -1) || k == Pos::NegInf {
            return Ok(QLaurent::one(self.seed.reference()));
        }
        let k = k.finite().ok_or_else(|| QError::Invalid(format!("interval [{j},+inf] is not defined")))?;
        self.entries
            .get(&(j, k))
            .cloned()
            .ok_or_else(|| QError::Invalid(format!("no interval variable W[{j},{k}]")))
    }

    pub fn fundamental(&self, k: usize) -> QResult<QLaurent> {
        self.get(k, Pos::At(k))
    }

    /// `f_k - f_{j[-1]}` with `f_{±∞} = 0`.
    pub fn expected_degree(&self, j: usize, k: usize) -> ExpVec {
        let mut e = ExpVec::unit(k as Vid);
        if let Pos::At(p) = self.word.successor(j, -1) {
            e.add_at(p as Vid, -1);
        }
        e
    }

    pub fn degree(&self, z: &QLaurent) -> QResult<ExpVec> {
        seed::degree(z, &self.seed)?.ok_or(QError::NotPointed)
    }

    /// `[z]` relative to the initial seed.
    pub fn normalize(&self, z: &QLaurent) -> QResult<QLaurent> {
        seed::normalize(z, &self.seed)
    }

    fn lam(&self, m: &ExpVec, h: &ExpVec) -> i64 {
        let mut s = 0;
        for (i, a) in m.iter() {
            for (j, b) in h.iter() {
                s += a * b * self.seed.lam(i, j);
            }
        }
        s
    }
}

/// One T-system identity at `(j, s)`; `alpha`, `alpha_prime` in units of `q^{1/2}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TLine {
    pub j: usize,
    pub s: usize,
    pub alpha: i64,
    pub alpha_prime: i64,
    pub holds: bool,
    pub strict: bool,
}

impl TLine {
    pub fn ok(&self) -> bool {
        self.holds && self.strict
    }

    pub fn describe(&self) -> String {
        format!(
            "T-system j={} s={}: identity {}, alpha={}/2 alpha'={}/2 ({})",
            self.j,
            self.s,
            if self.holds { "holds" } else { "FAILS" },
            self.alpha,
            self.alpha_prime,
            if self.strict { "alpha > alpha'" } else { "alpha <= alpha' FAILS" }
        )
    }
}

/// Factors `(i, i[d], multiplicity)` of the second term at `(j, s)`.
fn second_term_factors(w: &SignedWord, c: &Cartan, j: usize, s: usize) -> Vec<(usize, Pos, i64)> {
    let a = w.abs(j);
    let end = w.successor(j, s as i64 + 1).finite().unwrap();
    let mut out = Vec::new();
    for b in c.letters() {
        let cba = c.entry(b, a);
        if b == a || cba == 0 {
            continue;
        }
        let o = w.count(1, j - 1, b);
        let Some(i) = w.position(b, o) else { continue };
        // i[d] < j[s+1] < i[d+1]
        let inside = w.count(j, end - 1, b);
        if inside == 0 {
            continue;
        }
        out.push((i, w.successor(i, inside as i64 - 1), -cba));
    }
    out
}

fn check_identity(
    tbl: &IntervalTable,
    j: usize,
    s: usize,
    first: (usize, Pos, usize, Pos),
    second: &[(usize, Pos, i64)],
) -> QResult<TLine> {
    let w = &tbl.word;
    let (j1, js, js1) = (w.successor(j, 1).finite().unwrap(), w.successor(j, s as i64), w.successor(j, s as i64 + 1));
    let left_a = tbl.get(j, js)?;
    let left_b = tbl.get(j1, js1)?;
    let lhs = left_a.try_mul(&left_b)?;
    let (p, pe, q, qe) = first;
    let t1 = tbl.normalize(&tbl.get(p, pe)?.try_mul(&tbl.get(q, qe)?)?)?;
    let mut prod = QLaurent::one(tbl.seed.reference());
    let mut deg2 = ExpVec::new();
    for &(i, ie, mult) in second {
        let z = tbl.get(i, ie)?;
        deg2 = deg2.add(&tbl.degree(&z)?.scale(mult));
        prod = prod.try_mul(&z.pow(mult as u32))?;
    }
    let t2 = tbl.normalize(&prod)?;
    let (da, db) = (tbl.degree(&left_a)?, tbl.degree(&left_b)?);
    let alpha = tbl.lam(&da, &db);
    let alpha_prime = tbl.lam(&da, &deg2);
    let rhs = t1.scale(&QScalar::qpow(alpha)).try_add(&t2.scale(&QScalar::qpow(alpha_prime)))?;
    Ok(TLine { j, s, alpha, alpha_prime, holds: lhs == rhs, strict: alpha > alpha_prime })
}

/// Every identity `W_[j,j[s]] * W_[j[1],j[s+1]] = q^α[W_[j[1],j[s]] * W_[j,j[s+1]]] + q^α'[∏ W^{-C}]`
/// with `j[s+1]` inside the word.
pub fn verify_tsystems(tbl: &IntervalTable) -> QResult<Vec<TLine>> {
    let w = &tbl.word;
    let mut out = Vec::new();
    for j in 1..=w.len() {
        let mut s = 0;
        while let Pos::At(_) = w.successor(j, s as i64 + 1) {
            let (j1, js, js1) = (w.successor(j, 1).finite().unwrap(), w.successor(j, s as i64), w.successor(j, s as i64 + 1));
            // only intervals that start at some <a, r_a> are interval variables
            let second = second_term_factors(w, &tbl.cartan, j, s);
            out.push(check_identity(tbl, j, s, (j1, js, j, js1), &second)?);
            s += 1;
        }
    }
    Ok(out)
}

/// The same identities for `w = c^n` with a bipartite Coxeter word, indexed
/// through the height function: the second term runs over the neighbours
/// `c_h` of `a` on the interval `[(c_h, ξ_a-1-2m), (c_h, ξ_a-1-2m-2s)]`.
pub fn verify_tsystems_bipartite(tbl: &IntervalTable, cox: &SignedWord, xi: &HeightFn) -> QResult<Vec<TLine>> {
    let c = &tbl.cartan;
    let w = &tbl.word;
    let n = cox.len();
    if n == 0 || w.len() % n != 0 || *w != cox.repeat(w.len() / n) {
        return Err(QError::Invalid("word is not a power of the Coxeter word".into()));
    }
    if !xi.is_compatible(c, cox) {
        return Err(QError::Invalid("height function does not match the Coxeter word".into()));
    }
    let reps = (w.len() / n) as i64;
    // node (a, p) with p = ξ_a - 2m is position of <a, m>
    let node = |a: i64, p: i64| -> Option<usize> {
        let diff = xi.get(a) - p;
        if diff < 0 || diff % 2 != 0 {
            return None;
        }
        w.position(a, (diff / 2) as usize)
    };
    let mut out = Vec::new();
    for a in cox.letters().iter().copied() {
        for m in 0..reps {
            for s in 0..reps {
                if m + s + 1 >= reps {
                    continue;
                }
                let xa = xi.get(a);
                let j = node(a, xa - 2 * m).unwrap();
                let j1 = node(a, xa - 2 * m - 2).unwrap();
                let js = Pos::At(node(a, xa - 2 * m - 2 * s).unwrap());
                let js1 = Pos::At(node(a, xa - 2 * m - 2 * s - 2).unwrap());
                let mut second = Vec::new();
                for b in cox.letters().iter().copied() {
                    if b == a || c.entry(b, a) == 0 {
                        continue;
                    }
                    let (start, stop) = (xa - 1 - 2 * m, xa - 1 - 2 * m - 2 * s);
                    let (Some(i), Some(ie)) = (node(b, start), node(b, stop)) else {
                        return Err(QError::Invalid("height function is not bipartite for this word".into()));
                    };
                    second.push((i, Pos::At(ie), -c.entry(b, a)));
                }
                out.push(check_identity(tbl, j, s as usize, (j1, js, j, js1), &second)?);
            }
        }
    }
    Ok(out)
}

/// `M(w) = [W_1^{w_1} * ⋯ * W_l^{w_l}]`.
pub fn standard_monomial(wvec: &[u32], tbl: &IntervalTable) -> QResult<QLaurent> {
    if wvec.len() > tbl.word.len() {
        return Err(QError::Invalid("standard monomial index longer than the word".into()));
    }
    let mut acc = QLaurent::one(tbl.seed.reference());
    for (k, &e) in wvec.iter().enumerate() {
        if e > 0 {
            acc = acc.try_mul(&tbl.fundamental(k + 1)?.pow(e))?;
        }
    }
    tbl.normalize(&acc)
}
