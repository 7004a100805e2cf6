//! Standard monomials `M(w)`, expansion in the standard basis, the
//! Kazhdan-Lusztig type basis `L(w)` and the straightening law.

use crate::error::{QError, QResult};
use crate::linalg::{self, Rat};
use crate::qtorus::{ExpVec, QLaurent, Vid};
use crate::scalar::QScalar;
use crate::tsystems::{standard_monomial, IntervalTable};
use crate::words::Pos;
use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

/// Index `w ∈ N^l` of a standard monomial.
pub type WIdx = Vec<u32>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Order {
    RevLex,
    Lex,
}

impl Order {
    pub fn cmp(self, a: &[u32], b: &[u32]) -> Ordering {
        match self {
            Order::Lex => a.cmp(b),
            Order::RevLex => a.iter().rev().cmp(b.iter().rev()),
        }
    }
}

/// `z = Σ coeffs(w) M(w)`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct StdExpansion {
    pub coeffs: BTreeMap<WIdx, QScalar>,
}

impl StdExpansion {
    pub fn get(&self, w: &[u32]) -> QScalar {
        self.coeffs.get(w).cloned().unwrap_or_default()
    }

    fn add(&mut self, w: &[u32], c: &QScalar) {
        let e = self.coeffs.entry(w.to_vec()).or_default();
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(w);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl fmt::Display for StdExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})M{w:?}")?;
        }
        Ok(())
    }
}

/// `e_k` in `N^l`.
pub fn unit_index(l: usize, k: usize) -> WIdx {
    let mut w = vec![0; l];
    w[k - 1] = 1;
    w
}

/// All `w ∈ N^l` with `|w| ≤ n`, in lex order.
pub fn indices_up_to(l: usize, n: u32) -> Vec<WIdx> {
    fn rec(l: usize, n: u32, cur: &mut WIdx, out: &mut Vec<WIdx>) {
        if cur.len() == l {
            out.push(cur.clone());
            return;
        }
        for x in 0..=n {
            cur.push(x);
            rec(l, n - x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(l, n, &mut Vec::new(), &mut out);
    out
}

const CAP: usize = 100_000;

/// Caches standard monomials, bar expansions and KL elements for one
/// interval table.
pub struct BasisContext<'a> {
    tbl: &'a IntervalTable,
    l: usize,
    psi: Vec<Rat>,
    mono: HashMap<WIdx, QLaurent>,
    bars: HashMap<WIdx, StdExpansion>,
    kl: HashMap<(WIdx, Order), StdExpansion>,
}

impl<'a> BasisContext<'a> {
    pub fn new(tbl: &'a IntervalTable) -> QResult<BasisContext<'a>> {
        let sd = tbl.seed();
        let linv = linalg::left_inverse(&linalg::to_rat_matrix(&sd.btilde()), sd.unfrozen().len())
            .ok_or(QError::NotInjective)?;
        // ψ(m + B̃n) = ψ(m) + Σ n, so dominance-larger exponents have smaller ψ
        let mut psi = vec![Rat::ZERO; sd.len()];
        for row in &linv {
            for (i, x) in row.iter().enumerate() {
                psi[i] = &psi[i] + x;
            }
        }
        Ok(BasisContext { tbl, l: tbl.word().len(), psi, mono: HashMap::new(), bars: HashMap::new(), kl: HashMap::new() })
    }

    pub fn table(&self) -> &IntervalTable {
        self.tbl
    }

    pub fn len(&self) -> usize {
        self.l
    }

    pub fn is_empty(&self) -> bool {
        self.l == 0
    }

    pub fn monomial(&mut self, w: &[u32]) -> QResult<QLaurent> {
        if w.len() != self.l {
            return Err(QError::Invalid(format!("index {w:?} should have length {}", self.l)));
        }
        if let Some(z) = self.mono.get(w) {
            return Ok(z.clone());
        }
        let z = standard_monomial(w, self.tbl)?;
        self.mono.insert(w.to_vec(), z.clone());
        Ok(z)
    }

    /// `deg M(w) = Σ w_k (f_k - f_{k[-1]})`.
    pub fn degree_of(&self, w: &[u32]) -> ExpVec {
        let mut e = ExpVec::new();
        for (i, &x) in w.iter().enumerate() {
            if x > 0 {
                e = e.add(&self.tbl.expected_degree(i + 1, i + 1).scale(x as i64));
            }
        }
        e
    }

    /// Inverse of `degree_of`: `w_k = Σ_{t ≥ 0} m_{k[t]}`; `None` if negative.
    pub fn index_of(&self, m: &ExpVec) -> Option<WIdx> {
        let word = self.tbl.word();
        let mut w = vec![0u32; self.l];
        for k in (1..=self.l).rev() {
            let next = match word.successor(k, 1) {
                Pos::At(p) => w[p - 1] as i64,
                _ => 0,
            };
            let x = m.get(k as Vid) + next;
            if x < 0 {
                return None;
            }
            w[k - 1] = x as u32;
        }
        if m.support().any(|v| v < 1 || v as usize > self.l) {
            return None;
        }
        Some(w)
    }

    fn psi(&self, m: &ExpVec) -> Rat {
        let mut s = Rat::ZERO;
        for (v, x) in m.iter() {
            s = s + &self.psi[(v - 1) as usize] * linalg::rat(x);
        }
        s
    }

    /// Triangular elimination: repeatedly removes a dominance-maximal term
    /// `c x^m` of the residue by subtracting `c M(w)` with `deg M(w) = m`.
    /// Ties between incomparable terms are broken by revlex on `w`.
    pub fn expand(&mut self, z: &QLaurent) -> QResult<StdExpansion> {
        let mut res = z.clone();
        let mut out = StdExpansion::default();
        for _ in 0..CAP {
            if res.is_zero() {
                return Ok(out);
            }
            let terms = res.terms();
            let best = terms.iter().map(|(m, _)| self.psi(m)).min().unwrap();
            let mut pick: Option<(WIdx, QScalar)> = None;
            for (m, c) in &terms {
                if self.psi(m) != best {
                    continue;
                }
                let w = self.index_of(m).ok_or(QError::NotInSpan)?;
                if pick.as_ref().map(|(p, _)| Order::RevLex.cmp(&w, p) == Ordering::Greater).unwrap_or(true) {
                    pick = Some((w, c.clone()));
                }
            }
            let (w, c) = pick.unwrap();
            let m = self.monomial(&w)?;
            res = res.try_sub(&m.scale(&c))?;
            out.add(&w, &c);
        }
        Err(QError::NotInSpan)
    }

    pub fn reconstruct(&mut self, e: &StdExpansion) -> QResult<QLaurent> {
        let mut acc = QLaurent::zero(self.tbl.seed().reference());
        for (w, c) in &e.coeffs {
            acc = acc.try_add(&self.monomial(w)?.scale(c))?;
        }
        Ok(acc)
    }

    /// `bar(M(w))` in standard coordinates.
    pub fn bar_expansion(&mut self, w: &[u32]) -> QResult<StdExpansion> {
        if let Some(e) = self.bars.get(w) {
            return Ok(e.clone());
        }
        let z = self.monomial(w)?.bar();
        let e = self.expand(&z)?;
        self.bars.insert(w.to_vec(), e.clone());
        Ok(e)
    }

    /// `L(w)` in standard coordinates: `b_w = 1` and, going down in `order`,
    /// `b_v` is the negative-exponent part of
    /// `s_v = Σ_{u > v} bar(b_u) r_{u,v}` where `bar(M(u)) = Σ r_{u,v} M(v)`.
    pub fn kl_expansion(&mut self, w: &[u32], order: Order) -> QResult<StdExpansion> {
        let key = (w.to_vec(), order);
        if let Some(e) = self.kl.get(&key) {
            return Ok(e.clone());
        }
        let mut set: BTreeSet<WIdx> = BTreeSet::new();
        let mut stack = vec![w.to_vec()];
        let mut r: BTreeMap<WIdx, StdExpansion> = BTreeMap::new();
        while let Some(u) = stack.pop() {
            if !set.insert(u.clone()) {
                continue;
            }
            if set.len() > CAP {
                return Err(QError::Hypothesis("bar closure does not terminate".into()));
            }
            let e = self.bar_expansion(&u)?;
            if !e.get(&u).is_one() {
                return Err(QError::Hypothesis(format!("bar(M({u:?})) does not have leading coefficient 1")));
            }
            for v in e.coeffs.keys() {
                if v != &u && order.cmp(v, &u) != Ordering::Less {
                    return Err(QError::Hypothesis(format!("bar(M({u:?})) involves M({v:?}) which is not lower")));
                }
                stack.push(v.clone());
            }
            r.insert(u, e);
        }
        let mut sorted: Vec<WIdx> = set.into_iter().collect();
        sorted.sort_by(|a, b| order.cmp(b, a));
        let mut b: BTreeMap<WIdx, QScalar> = BTreeMap::new();
        b.insert(w.to_vec(), QScalar::one());
        for v in sorted.iter().skip(1) {
            let mut s = QScalar::zero();
            for (u, bu) in &b {
                let ruv = r[u].get(v);
                if !ruv.is_zero() {
                    s += &(&bu.bar() * &ruv);
                }
            }
            let neg = QScalar::from_terms(s.terms().iter().filter(|(e, _)| *e < 0).cloned());
            let pos = QScalar::from_terms(s.terms().iter().filter(|(e, _)| *e > 0).cloned());
            if !s.coeff(0).is_zero() || pos != -&neg.bar() {
                return Err(QError::Hypothesis(format!("KL recursion: {s} is not of the form b - bar(b) at {v:?}")));
            }
            if !neg.is_zero() {
                b.insert(v.clone(), neg);
            }
        }
        let e = StdExpansion { coeffs: b };
        self.kl.insert(key, e.clone());
        Ok(e)
    }

    pub fn kl_element(&mut self, w: &[u32], order: Order) -> QResult<QLaurent> {
        let e = self.kl_expansion(w, order)?;
        self.reconstruct(&e)
    }

    /// Coordinates of `z` in the basis `{L(u)}`.
    pub fn expand_in_kl(&mut self, z: &QLaurent, order: Order) -> QResult<StdExpansion> {
        let mut std = self.expand(z)?;
        let mut out = StdExpansion::default();
        for _ in 0..CAP {
            let Some(top) = std.coeffs.keys().max_by(|a, b| order.cmp(a, b)).cloned() else {
                return Ok(out);
            };
            let c = std.get(&top);
            for (v, bv) in &self.kl_expansion(&top, order)?.coeffs {
                std.add(v, &-&(&c * bv));
            }
            out.add(&top, &c);
        }
        Err(QError::NotInSpan)
    }
}

/// `expand_in_standard` on a fresh context.
pub fn expand_in_standard(z: &QLaurent, tbl: &IntervalTable) -> QResult<StdExpansion> {
    BasisContext::new(tbl)?.expand(z)
}

pub fn kl_basis_element(w: &[u32], order: Order, tbl: &IntervalTable) -> QResult<QLaurent> {
    BasisContext::new(tbl)?.kl_element(w, order)
}

/// Whether every coefficient lies in `q^{-1/2} Z[q^{-1/2}]`.
pub fn in_negative_ideal(c: &QScalar) -> bool {
    c.terms().iter().all(|(e, _)| *e < 0)
}

#[derive(Clone, Debug)]
pub struct LsLine {
    pub j: usize,
    pub k: usize,
    /// `W_k * W_j - q^{λ(deg W_k, deg W_j)} W_j * W_k` in standard coordinates.
    pub remainder: StdExpansion,
    pub ok: bool,
}

impl LsLine {
    pub fn describe(&self) -> String {
        format!(
            "W{}*W{} - q^lambda W{}*W{} = {}: {}",
            self.k,
            self.j,
            self.j,
            self.k,
            self.remainder,
            if self.ok { "ok" } else { "FAIL" }
        )
    }
}

/// Checks that the remainder of each pair `j ≤ k` is supported on
/// `N^{[j+1, k-1]}`.
pub fn verify_ls_straightening(tbl: &IntervalTable) -> QResult<Vec<LsLine>> {
    let lam = tbl.seed().lambda_form().ok_or_else(|| QError::Hypothesis("seed is not quantized".into()))?;
    let mut ctx = BasisContext::new(tbl)?;
    let l = ctx.len();
    let mut out = Vec::new();
    for k in 1..=l {
        for j in 1..=k {
            let (wj, wk) = (tbl.fundamental(j)?, tbl.fundamental(k)?);
            let e = lam.pair(&tbl.degree(&wk)?, &tbl.degree(&wj)?);
            let z = wk.try_mul(&wj)?.try_sub(&wj.try_mul(&wk)?.scale(&QScalar::qpow(2 * e)))?;
            let rem = ctx.expand(&z)?;
            let ok = rem
                .coeffs
                .keys()
                .all(|w| w.iter().enumerate().all(|(i, &x)| x == 0 || (i + 1 > j && i + 1 < k)));
            out.push(LsLine { j, k, remainder: rem, ok });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::Cartan;
    use crate::forms::{quantized_rsd, FormKind, HeightFn};
    use crate::tsystems::interval_variables;
    use crate::words::SignedWord;

    fn a2() -> IntervalTable {
        let c = Cartan::of_type("A2").unwrap();
        let cox = SignedWord::parse("1,2").unwrap();
        let xi = HeightFn::from_coxeter(&c, &cox).unwrap();
        let w = cox.repeat(3);
        let sd = quantized_rsd(&w, &c, &xi, FormKind::Underline).unwrap();
        interval_variables(&w, &c, &sd).unwrap()
    }

    #[test]
    fn orders() {
        assert_eq!(Order::RevLex.cmp(&[0, 1, 0], &[1, 0, 1]), Ordering::Less);
        assert_eq!(Order::Lex.cmp(&[0, 1, 0], &[1, 0, 1]), Ordering::Less);
        assert_eq!(Order::RevLex.cmp(&[2, 0], &[0, 1]), Ordering::Less);
        assert_eq!(Order::Lex.cmp(&[2, 0], &[0, 1]), Ordering::Greater);
        assert_eq!(indices_up_to(6, 3).len(), 84);
    }

    #[test]
    fn fundamental_expansions() {
        let tbl = a2();
        let mut ctx = BasisContext::new(&tbl).unwrap();
        for k in 1..=6 {
            let e = ctx.expand(&tbl.fundamental(k).unwrap()).unwrap();
            assert_eq!(e.coeffs, BTreeMap::from([(unit_index(6, k), QScalar::one())]));
            assert_eq!(ctx.kl_element(&unit_index(6, k), Order::RevLex).unwrap(), tbl.fundamental(k).unwrap());
        }
    }

    #[test]
    fn x3_in_standard_basis() {
        let tbl = a2();
        let mut ctx = BasisContext::new(&tbl).unwrap();
        let x3 = tbl.get(1, Pos::At(3)).unwrap();
        let e = ctx.expand(&x3).unwrap();
        let want = BTreeMap::from([(vec![1, 0, 1, 0, 0, 0], QScalar::one()), (vec![0, 1, 0, 0, 0, 0], -&QScalar::qpow(-2))]);
        assert_eq!(e.coeffs, want);
        for order in [Order::RevLex, Order::Lex] {
            assert_eq!(ctx.kl_element(&[1, 0, 1, 0, 0, 0], order).unwrap(), x3);
        }
    }

    #[test]
    fn ls_pairs() {
        let tbl = a2();
        let lines = verify_ls_straightening(&tbl).unwrap();
        assert_eq!(lines.len(), 21);
        assert!(lines.iter().all(|l| l.ok));
        let get = |j, k| lines.iter().find(|l| l.j == j && l.k == k).unwrap().remainder.clone();
        assert!(get(3, 4).is_zero());
        let one = &QScalar::one() - &QScalar::qpow(-4);
        assert_eq!(get(1, 4).coeffs, BTreeMap::from([(vec![0; 6], one)]));
    }

    #[test]
    fn not_in_span() {
        let tbl = a2();
        let t = tbl.seed().reference();
        let z = QLaurent::var(t, 1).unwrap().try_mul(&QLaurent::var(t, 2).unwrap().pow(1)).unwrap();
        let inv = crate::qtorus::monomial_inverse(&z).unwrap();
        assert!(matches!(expand_in_standard(&inv, &tbl), Err(QError::NotInSpan)));
    }
}
