//! Signed words, the seeds `rsd`/`dsd` built from them, and word moves with
//! their permutation-mutation sequences.
//!
//! Vertices of `rsd(w)` are the positions `1..=l`; position `k` carries the
//! label `<a,d>` with `a = |w_k|` and `d` the number of earlier occurrences
//! of `a`. In `dsd(w')` built on a Coxeter prefix `c`, the frozen vertex
//! `<c_t,-1>` gets id `t - |J|` and position `p` of `w'` keeps id `p`.

use crate::cartan::Cartan;
use crate::error::{QError, QResult};
use crate::qtorus::Vid;
use crate::seed::{embedding_violations, MutSeq, Seed, SeedData};
use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::fmt;

/// A position or one of the sentinels `±∞`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub enum Pos {
    NegInf,
    At(usize),
    PosInf,
}

impl Pos {
    pub fn finite(self) -> Option<usize> {
        match self {
            Pos::At(k) => Some(k),
            _ => None,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct SignedWord(Vec<i64>);

impl SignedWord {
    pub fn new(letters: Vec<i64>) -> QResult<Self> {
        if letters.contains(&0) {
            return Err(QError::Invalid("signed words have no zero letters".into()));
        }
        Ok(SignedWord(letters))
    }

    /// Parses the literal syntax `"1,-1,2"`; the empty string is the empty word.
    pub fn parse(s: &str) -> QResult<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(SignedWord(Vec::new()));
        }
        let letters = s
            .split(',')
            .map(|t| {
                let t = t.trim();
                t.parse::<i64>().map_err(|_| QError::Parse(format!("bad letter {t:?}")))
            })
            .collect::<QResult<Vec<i64>>>()?;
        if letters.iter().any(|x| x.unsigned_abs() > 1 << 20) {
            return Err(QError::Parse("letter out of range".into()));
        }
        SignedWord::new(letters)
    }

    pub fn letters(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Letter at 1-based position `k`.
    pub fn letter(&self, k: usize) -> i64 {
        self.0[k - 1]
    }

    pub fn abs(&self, k: usize) -> i64 {
        self.letter(k).abs()
    }

    pub fn eps(&self, k: usize) -> i64 {
        self.letter(k).signum()
    }

    pub fn check_support(&self, c: &Cartan) -> QResult<()> {
        for &x in &self.0 {
            if x.unsigned_abs() as usize > c.rank() {
                return Err(QError::Invalid(format!("letter {x} outside the Cartan index set")));
            }
        }
        Ok(())
    }

    /// `k[d]`: the `d`-th next (or previous, for `d < 0`) position with the same letter.
    pub fn successor(&self, k: usize, d: i64) -> Pos {
        let a = self.abs(k);
        let mut cur = k;
        if d >= 0 {
            for _ in 0..d {
                match (cur + 1..=self.len()).find(|&j| self.abs(j) == a) {
                    Some(j) => cur = j,
                    None => return Pos::PosInf,
                }
            }
        } else {
            for _ in 0..(-d) {
                match (1..cur).rev().find(|&j| self.abs(j) == a) {
                    Some(j) => cur = j,
                    None => return Pos::NegInf,
                }
            }
        }
        Pos::At(cur)
    }

    /// `O([j,k]; a)`, occurrences of `±a` in positions `j..=k`.
    pub fn count(&self, j: usize, k: usize, a: i64) -> usize {
        if j > k || j == 0 {
            return if j == 0 && k > 0 { self.count(1, k, a) } else { 0 };
        }
        self.0[j - 1..k.min(self.len())].iter().filter(|x| x.abs() == a).count()
    }

    /// Occurrence index `d` of position `k`, i.e. `o_-(k)`.
    pub fn occurrence(&self, k: usize) -> usize {
        self.count(1, k - 1, self.abs(k))
    }

    /// Position of `<a,d>`.
    pub fn position(&self, a: i64, d: usize) -> Option<usize> {
        (1..=self.len()).filter(|&k| self.abs(k) == a).nth(d)
    }

    pub fn kmin(&self, k: usize) -> usize {
        self.position(self.abs(k), 0).unwrap()
    }

    pub fn kmax(&self, k: usize) -> usize {
        let a = self.abs(k);
        (1..=self.len()).rev().find(|&j| self.abs(j) == a).unwrap()
    }

    pub fn is_coxeter_for(&self, c: &Cartan) -> bool {
        let set: BTreeSet<i64> = self.0.iter().copied().collect();
        self.len() == c.rank() && set.len() == c.rank() && set.iter().all(|&x| x >= 1 && x as usize <= c.rank())
    }

    pub fn concat(&self, o: &SignedWord) -> SignedWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&o.0);
        SignedWord(v)
    }

    pub fn repeat(&self, n: usize) -> SignedWord {
        SignedWord(self.0.repeat(n))
    }

    /// `w_{[j,k]}` (1-based, inclusive).
    pub fn sub(&self, j: usize, k: usize) -> SignedWord {
        if j > k {
            return SignedWord(Vec::new());
        }
        SignedWord(self.0[j - 1..k].to_vec())
    }

    pub fn label(&self, k: usize) -> String {
        format!("<{},{}>", self.abs(k), self.occurrence(k))
    }
}

impl fmt::Display for SignedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", s.join(","))
    }
}

/// `b_jk` of `rsd(w)` for positions `j` and unfrozen `k`.
pub fn rsd_entry(w: &SignedWord, c: &Cartan, j: usize, k: usize) -> i64 {
    let kp = w.successor(k, 1);
    let jp = w.successor(j, 1);
    let (ej, ek) = (w.eps(j), w.eps(k));
    if jp == Pos::At(k) {
        return ek;
    }
    if kp == Pos::At(j) {
        return -ej;
    }
    let cab = c.entry(w.abs(j), w.abs(k));
    if cab == 0 {
        return 0;
    }
    let (pj, pk) = (Pos::At(j), Pos::At(k));
    let eps_at = |p: Pos| p.finite().map(|x| w.eps(x)).unwrap_or(0);
    if let Some(jpf) = jp.finite() {
        if w.eps(jpf) == ek && pj < pk && pk < jp && jp < kp {
            return ek * cab;
        }
    }
    if ek == -eps_at(kp) && pj < pk && pk < kp && kp < jp {
        return ek * cab;
    }
    if eps_at(kp) == ej && pk < pj && pj < kp && kp < jp {
        return -ej * cab;
    }
    if let Some(jpf) = jp.finite() {
        if ej == -w.eps(jpf) && pk < pj && pj < jp && jp < kp {
            return -ej * cab;
        }
    }
    0
}

fn word_seed_data(w: &SignedWord, c: &Cartan, id: impl Fn(usize) -> Vid, label: impl Fn(usize) -> String) -> SeedData {
    let l = w.len();
    let mut data = SeedData::default();
    for k in 1..=l {
        let v = id(k);
        data.verts.push(v);
        data.d.insert(v, c.dual_sym(w.abs(k)));
        data.labels.insert(v, label(k));
        if w.successor(k, 1) == Pos::PosInf {
            data.frozen.insert(v);
        }
    }
    for k in 1..=l {
        if w.successor(k, 1) == Pos::PosInf {
            continue;
        }
        for j in 1..=l {
            let x = rsd_entry(w, c, j, k);
            if x != 0 {
                data.b.insert((id(j), id(k)), x);
            }
        }
    }
    data
}

/// The classical seed `rsd(w)`.
pub fn build_rsd(w: &SignedWord, c: &Cartan) -> QResult<Seed> {
    w.check_support(c)?;
    Seed::new(word_seed_data(w, c, |k| k as Vid, |k| w.label(k)))
}

/// `dsd(w')` on the Coxeter prefix `c`, with every id shifted down by `shift`.
pub fn build_dsd_shifted(wp: &SignedWord, prefix: &SignedWord, c: &Cartan, shift: i64) -> QResult<Seed> {
    if !prefix.is_coxeter_for(c) {
        return Err(QError::Invalid(format!("prefix {prefix} is not a Coxeter word")));
    }
    wp.check_support(c)?;
    let full = prefix.concat(wp);
    let nj = c.rank();
    let id = |p: usize| p as Vid - nj as Vid - shift;
    let label = |p: usize| {
        if p <= nj {
            format!("<{},-1>", full.abs(p))
        } else {
            format!("<{},{}>", full.abs(p), full.occurrence(p) - 1)
        }
    };
    let mut data = word_seed_data(&full, c, id, label);
    for p in 1..=nj {
        let v = id(p);
        data.frozen.insert(v);
        data.b.retain(|&(_, k), _| k != v);
    }
    Seed::new(data)
}

pub fn build_dsd(wp: &SignedWord, prefix: &SignedWord, c: &Cartan) -> QResult<Seed> {
    build_dsd_shifted(wp, prefix, c, 0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EmbeddingKind {
    Subword,
    Freezing,
    Permutation,
    Chain,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    pub map: BTreeMap<Vid, Vid>,
    pub kind: EmbeddingKind,
}

impl Embedding {
    pub fn apply(&self, v: Vid) -> Option<Vid> {
        self.map.get(&v).copied()
    }

    /// Cluster-embedding violations between two seeds (empty when good).
    pub fn violations(&self, sub: &Seed, sup: &Seed) -> Vec<String> {
        embedding_violations(sub, sup, &self.map, true)
    }
}

/// `ι: rsd(w_{[j,k]}) -> rsd(w)`, `<a,d> -> <a, d + O([1,j-1];a)>`.
pub fn subword_embedding(w: &SignedWord, j: usize, k: usize) -> QResult<Embedding> {
    if j < 1 || j > k || k > w.len() {
        return Err(QError::Invalid(format!("subword range [{j},{k}] out of range")));
    }
    let map = (1..=k - j + 1).map(|p| (p as Vid, (p + j - 1) as Vid)).collect();
    Ok(Embedding { map, kind: EmbeddingKind::Subword })
}

/// `ι: dsd(w'_{[j,k]}) -> dsd(w')` for a fixed Coxeter prefix.
pub fn subword_embedding_dsd(wp: &SignedWord, prefix: &SignedWord, j: usize, k: usize) -> QResult<Embedding> {
    let mut e = subword_embedding(wp, j, k)?;
    let nj = prefix.len() as Vid;
    for (t, &a) in prefix.letters().iter().enumerate() {
        let src = t as Vid + 1 - nj;
        let o = wp.count(1, j - 1, a);
        let dst = if o == 0 { src } else { wp.position(a, o - 1).unwrap() as Vid };
        e.map.insert(src, dst);
    }
    Ok(e)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Move {
    LeftReflection,
    /// Flip of positions `j, j+1`.
    Flip(usize),
    /// Replace `w_{[j,k]}` by the braid-equivalent word `gamma` (same sign).
    Braid { j: usize, k: usize, gamma: Vec<i64> },
}

/// Applies a move and returns the new word with `μ^σ` such that
/// `rsd(w') = μ^σ rsd(w)`.
pub fn word_move(w: &SignedWord, mv: &Move, c: &Cartan) -> QResult<(SignedWord, MutSeq)> {
    w.check_support(c)?;
    let l = w.len();
    match mv {
        Move::LeftReflection => {
            if l == 0 {
                return Err(QError::Invalid("left reflection needs a nonempty word".into()));
            }
            let mut v = w.0.clone();
            v[0] = -v[0];
            Ok((SignedWord(v), MutSeq::default()))
        }
        Move::Flip(j) => {
            let j = *j;
            if j < 1 || j + 1 > l || w.eps(j) == w.eps(j + 1) {
                return Err(QError::Invalid(format!("no flip applies at position {j}")));
            }
            let mut v = w.0.clone();
            v.swap(j - 1, j);
            let ms = if w.abs(j) == w.abs(j + 1) {
                MutSeq::new(vec![j as Vid])
            } else {
                MutSeq::perm([(j as Vid, j as Vid + 1), (j as Vid + 1, j as Vid)].into_iter().collect())
            };
            Ok((SignedWord(v), ms))
        }
        Move::Braid { j, k, gamma } => braid_move(w, *j, *k, gamma, c),
    }
}

fn braid_order(c: &Cartan, a: i64, b: i64) -> Option<usize> {
    match c.entry(a, b) * c.entry(b, a) {
        0 => Some(2),
        1 => Some(3),
        2 => Some(4),
        3 => Some(6),
        _ => None,
    }
}

fn braid_move(w: &SignedWord, j: usize, k: usize, gamma: &[i64], c: &Cartan) -> QResult<(SignedWord, MutSeq)> {
    let bad = || QError::Invalid(format!("no braid move applies on [{j},{k}]"));
    if j < 1 || k > w.len() || j >= k {
        return Err(bad());
    }
    let eps = w.eps(j);
    if (j..=k).any(|r| w.eps(r) != eps) {
        return Err(bad());
    }
    let (a, b) = (w.abs(j), w.abs(j + 1));
    let m = braid_order(c, a, b).ok_or_else(bad)?;
    let alt = |x: i64, y: i64| (0..m).map(|t| if t % 2 == 0 { x } else { y }).collect::<Vec<i64>>();
    let cur: Vec<i64> = (j..=k).map(|r| w.abs(r)).collect();
    let g: Vec<i64> = gamma.iter().map(|x| x.abs()).collect();
    if a == b || k - j + 1 != m || cur != alt(a, b) || g != alt(b, a) {
        return Err(bad());
    }
    let mut v = w.0.clone();
    for (t, &x) in g.iter().enumerate() {
        v[j - 1 + t] = eps * x;
    }
    let w2 = SignedWord(v);
    let src = build_rsd(w, c)?;
    let dst = build_rsd(&w2, c)?;
    let u: Vec<Vid> = (j..=k)
        .filter(|&r| matches!(w.successor(r, 1), Pos::At(s) if s <= k))
        .map(|r| r as Vid)
        .collect();
    let window: Vec<Vid> = (j as Vid..=k as Vid).collect();
    let ms = search_mutations(&src, &dst, &u, &window, 3 * u.len() + 3).ok_or_else(|| {
        QError::Invalid(format!("no permutation-mutation sequence found for the braid move on [{j},{k}]"))
    })?;
    Ok((w2, ms))
}

/// Exchange data only, for searching without computing cluster variables.
#[derive(Clone)]
struct Mat {
    verts: Vec<Vid>,
    b: Vec<Vec<i64>>,
    frozen: Vec<bool>,
    d: Vec<i64>,
}

impl Mat {
    fn of(s: &Seed) -> Mat {
        let verts = s.verts().to_vec();
        let b = verts.iter().map(|&i| verts.iter().map(|&j| s.b(i, j)).collect()).collect();
        let frozen = verts.iter().map(|&v| s.is_frozen(v)).collect();
        let d = verts.iter().map(|&v| s.d(v)).collect();
        Mat { verts, b, frozen, d }
    }

    fn idx(&self, v: Vid) -> usize {
        self.verts.binary_search(&v).unwrap()
    }

    fn mutate(&self, k: usize) -> Mat {
        let mut m = self.clone();
        let n = self.verts.len();
        for i in 0..n {
            for j in 0..n {
                m.b[i][j] = if i == k || j == k {
                    -self.b[i][j]
                } else if self.frozen[j] {
                    0
                } else {
                    let (x, y) = (self.b[i][k], self.b[k][j]);
                    self.b[i][j] + (x.abs() * y + x * y.abs()) / 2
                };
            }
        }
        m
    }
}

/// Bounded BFS over mutation sequences on `u` followed by a permutation of
/// `window` matching `dst` on `(d, B̃)` and on the frozen set.
pub fn search_mutations(src: &Seed, dst: &Seed, u: &[Vid], window: &[Vid], depth: usize) -> Option<MutSeq> {
    let (src, dst) = (Mat::of(src), Mat::of(dst));
    if src.verts != dst.verts {
        return None;
    }
    let mut queue: VecDeque<(Mat, Vec<Vid>)> = VecDeque::new();
    let mut seen: HashSet<Vec<Vec<i64>>> = HashSet::new();
    seen.insert(src.b.clone());
    queue.push_back((src, Vec::new()));
    while let Some((s, steps)) = queue.pop_front() {
        if let Some(perm) = match_permutation(&s, &dst, u, window) {
            return Some(MutSeq { steps, final_perm: perm });
        }
        if steps.len() >= depth {
            continue;
        }
        for &k in u {
            if steps.last() == Some(&k) {
                continue;
            }
            let t = s.mutate(s.idx(k));
            if seen.insert(t.b.clone()) {
                let mut st = steps.clone();
                st.push(k);
                queue.push_back((t, st));
            }
        }
    }
    None
}

fn match_permutation(s: &Mat, dst: &Mat, u: &[Vid], window: &[Vid]) -> Option<BTreeMap<Vid, Vid>> {
    let n = s.verts.len();
    let win: Vec<usize> = window.iter().map(|&v| s.idx(v)).collect();
    let in_u: Vec<bool> = s.verts.iter().map(|v| u.contains(v)).collect();
    let mut in_win = vec![false; n];
    for &i in &win {
        in_win[i] = true;
    }
    for x in (0..n).filter(|&x| !in_win[x]) {
        if s.frozen[x] != dst.frozen[x] {
            return None;
        }
        for y in (0..n).filter(|&y| !in_win[y]) {
            if s.b[x][y] != dst.b[x][y] {
                return None;
            }
        }
    }
    // img[i] = target index once assigned; outside the window it is fixed
    let mut img: Vec<Option<usize>> = (0..n).map(|i| if in_win[i] { None } else { Some(i) }).collect();
    let mut used = vec![false; n];
    fn rec(
        s: &Mat,
        dst: &Mat,
        win: &[usize],
        in_u: &[bool],
        idx: usize,
        img: &mut Vec<Option<usize>>,
        used: &mut Vec<bool>,
    ) -> bool {
        if idx == win.len() {
            return true;
        }
        let v = win[idx];
        for &t in win {
            if used[t] || in_u[v] != in_u[t] || s.d[v] != dst.d[t] || s.frozen[v] != dst.frozen[t] {
                continue;
            }
            img[v] = Some(t);
            let ok = (0..s.verts.len()).all(|y| match img[y] {
                None => true,
                Some(ty) => s.b[v][y] == dst.b[t][ty] && s.b[y][v] == dst.b[ty][t],
            });
            if ok {
                used[t] = true;
                if rec(s, dst, win, in_u, idx + 1, img, used) {
                    return true;
                }
                used[t] = false;
            }
            img[v] = None;
        }
        false
    }
    if !rec(s, dst, &win, &in_u, 0, &mut img, &mut used) {
        return None;
    }
    Some(
        (0..n)
            .filter_map(|i| img[i].filter(|&t| t != i).map(|t| (s.verts[i], s.verts[t])))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> Cartan {
        Cartan::of_type("A2").unwrap()
    }

    #[test]
    fn successors() {
        let w = SignedWord::parse("1,2,1,2,1,2").unwrap();
        assert_eq!(w.successor(1, 1), Pos::At(3));
        assert_eq!(w.successor(3, 1), Pos::At(5));
        assert_eq!(w.successor(5, 1), Pos::PosInf);
        assert_eq!(w.successor(1, -1), Pos::NegInf);
        assert_eq!(w.successor(6, -2), Pos::At(2));
        let b = SignedWord::parse("2,1,3,2,1,3,2,1,3,2,1,3").unwrap();
        assert_eq!(b.successor(1, 1), Pos::At(4));
    }

    #[test]
    fn a2_exchange_matrix() {
        let s = build_rsd(&SignedWord::parse("1,2,1,2,1,2").unwrap(), &a2()).unwrap();
        let expect = [
            [0, -1, 1, 0],
            [1, 0, -1, 1],
            [-1, 1, 0, -1],
            [0, -1, 1, 0],
            [0, 0, -1, 1],
            [0, 0, 0, -1],
        ];
        assert_eq!(s.btilde(), expect.iter().map(|r| r.to_vec()).collect::<Vec<_>>());
        assert_eq!(s.frozen(), vec![5, 6]);
    }

    #[test]
    fn empty_word_gives_empty_seed() {
        let s = build_rsd(&SignedWord::default(), &a2()).unwrap();
        assert!(s.is_empty());
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(SignedWord::parse("1,0").is_err());
        assert!(SignedWord::parse("1,,2").is_err());
        assert!(SignedWord::parse("a").is_err());
        assert_eq!(SignedWord::parse(" 1, -2 ").unwrap().letters(), &[1, -2]);
    }

    fn check_move(w: &str, mv: Move, ty: &str) {
        let c = Cartan::of_type(ty).unwrap();
        let w = SignedWord::parse(w).unwrap();
        let (w2, ms) = word_move(&w, &mv, &c).unwrap();
        let lhs = build_rsd(&w, &c).unwrap().apply_seq(&ms).unwrap();
        let rhs = build_rsd(&w2, &c).unwrap();
        assert!(lhs.same_data(&rhs), "{w} -> {w2} via {ms:?}");
    }

    #[test]
    fn flips_match_rebuilt_seed() {
        check_move("1,-2,1,2", Move::Flip(1), "A2");
        check_move("2,1,-1,2,1", Move::Flip(2), "A2");
        check_move("1,2,-1,-2,1,2", Move::Flip(2), "A2");
        check_move("-2,1,3,2,1,3,2", Move::Flip(1), "B3");
        check_move("3,2,-3,2,3,2", Move::Flip(2), "B3");
        check_move("2,-2,1,2", Move::Flip(1), "G2");
    }

    #[test]
    fn left_reflection_keeps_seed() {
        check_move("1,2,1,2", Move::LeftReflection, "A2");
        check_move("-2,1,3,2", Move::LeftReflection, "B3");
    }

    #[test]
    fn braid_moves_match_rebuilt_seed() {
        check_move("1,2,1,2,1", Move::Braid { j: 1, k: 3, gamma: vec![2, 1, 2] }, "A2");
        check_move("2,1,2,1,2,1", Move::Braid { j: 2, k: 4, gamma: vec![2, 1, 2] }, "A2");
        check_move("-1,-2,-1,2", Move::Braid { j: 1, k: 3, gamma: vec![-2, -1, -2] }, "A2");
        check_move("1,3,1,2", Move::Braid { j: 1, k: 2, gamma: vec![3, 1] }, "A3");
        check_move("2,3,2,3,2,3", Move::Braid { j: 1, k: 4, gamma: vec![3, 2, 3, 2] }, "B3");
        check_move("1,2,1,2,1,2,1,2", Move::Braid { j: 1, k: 6, gamma: vec![2, 1, 2, 1, 2, 1] }, "G2");
    }

    #[test]
    fn bad_moves_are_rejected() {
        let c = a2();
        let w = SignedWord::parse("1,2,1").unwrap();
        assert!(word_move(&w, &Move::Flip(1), &c).is_err());
        assert!(word_move(&w, &Move::Braid { j: 1, k: 3, gamma: vec![1, 2, 1] }, &c).is_err());
    }

    #[test]
    fn subword_embedding_is_good() {
        let c = Cartan::of_type("B3").unwrap();
        let w = SignedWord::parse("2,1,3,-2,1,3,2,-1,3").unwrap();
        let sup = build_rsd(&w, &c).unwrap();
        for k in 1..=w.len() {
            let sub = build_rsd(&w.sub(1, k), &c).unwrap();
            let e = subword_embedding(&w, 1, k).unwrap();
            assert!(e.violations(&sub, &sup).is_empty(), "k = {k}: {:?}", e.violations(&sub, &sup));
        }
    }

    #[test]
    fn dsd_shape() {
        let c = a2();
        let pre = SignedWord::parse("1,2").unwrap();
        let s = build_dsd(&SignedWord::parse("1,2,1,2").unwrap(), &pre, &c).unwrap();
        assert_eq!(s.verts(), &[-1, 0, 1, 2, 3, 4]);
        assert_eq!(s.frozen(), vec![-1, 0, 3, 4]);
        assert_eq!(s.label(-1), Some("<1,-1>"));
        assert_eq!(s.label(3), Some("<1,1>"));
        let e = subword_embedding_dsd(&SignedWord::parse("1,2,1,2").unwrap(), &pre, 2, 4).unwrap();
        assert_eq!(e.apply(-1), Some(1));
        assert_eq!(e.apply(0), Some(0));
        assert_eq!(e.apply(1), Some(2));
    }
}
