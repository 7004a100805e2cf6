//! Deformed Cartan matrices, their series inverses, the skew forms built
//! from them, and quantization matrices for word seeds.

use crate::cartan::Cartan;
use crate::error::{QError, QResult};
use crate::linalg::{self, Rat};
use crate::qtorus::{LambdaForm, Vid};
use crate::seed::Seed;
use crate::words::SignedWord;
use std::collections::BTreeMap;

/// A `J x J` matrix of Laurent series in `z`, known on `[lo, hi]`.
///
/// Coefficients below `lo` are zero. Above `hi` they are zero when `exact`
/// and unknown otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesMatrix {
    n: usize,
    lo: i64,
    hi: i64,
    exact: bool,
    coef: Vec<Vec<Vec<i64>>>,
}

impl SeriesMatrix {
    pub fn from_coeffs(lo: i64, coef: Vec<Vec<Vec<i64>>>, exact: bool) -> SeriesMatrix {
        let n = coef.first().map(|m| m.len()).unwrap_or(0);
        let hi = lo + coef.len() as i64 - 1;
        SeriesMatrix { n, lo, hi, exact, coef }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn window(&self) -> (i64, i64) {
        (self.lo, self.hi)
    }

    /// Coefficient of `z^m` in entry `(a, b)` (0-based).
    pub fn get(&self, a: usize, b: usize, m: i64) -> QResult<i64> {
        if m < self.lo || (self.exact && m > self.hi) {
            return Ok(0);
        }
        if m > self.hi {
            return Err(QError::ContextTooSmall(format!("series coefficient z^{m} beyond truncation {}", self.hi)));
        }
        Ok(self.coef[(m - self.lo) as usize][a][b])
    }

    /// Coefficient matrix of `z^m`.
    pub fn at(&self, m: i64) -> QResult<Vec<Vec<i64>>> {
        (0..self.n).map(|a| (0..self.n).map(|b| self.get(a, b, m)).collect()).collect()
    }

    /// Left multiplication by a constant diagonal matrix.
    pub fn scale_rows(&self, d: &[i64]) -> SeriesMatrix {
        let mut s = self.clone();
        for m in s.coef.iter_mut() {
            for (a, row) in m.iter_mut().enumerate() {
                for x in row.iter_mut() {
                    *x *= d[a];
                }
            }
        }
        s
    }

    /// Product of two series, valid on the window both factors determine.
    pub fn mul(&self, o: &SeriesMatrix) -> SeriesMatrix {
        let n = self.n;
        let lo = self.lo + o.lo;
        let hi = match (self.exact, o.exact) {
            (true, true) => self.hi + o.hi,
            (true, false) => self.lo + o.hi,
            (false, true) => self.hi + o.lo,
            (false, false) => (self.hi + o.lo).min(self.lo + o.hi),
        };
        let mut coef = vec![vec![vec![0i64; n]; n]; (hi - lo + 1).max(0) as usize];
        for m in lo..=hi {
            let c = &mut coef[(m - lo) as usize];
            for i in self.lo..=self.hi {
                let j = m - i;
                if j < o.lo || j > o.hi {
                    continue;
                }
                let (x, y) = (&self.coef[(i - self.lo) as usize], &o.coef[(j - o.lo) as usize]);
                for a in 0..n {
                    for t in 0..n {
                        if x[a][t] == 0 {
                            continue;
                        }
                        for b in 0..n {
                            c[a][b] += x[a][t] * y[t][b];
                        }
                    }
                }
            }
        }
        SeriesMatrix { n, lo, hi, exact: self.exact && o.exact, coef }
    }
}

/// `C(z)`: diagonal `z + z^{-1}`, off-diagonal `C_ab`.
pub fn deformed_cartan(c: &Cartan) -> SeriesMatrix {
    let n = c.rank();
    let mut coef = vec![vec![vec![0i64; n]; n]; 3];
    for a in 0..n {
        coef[0][a][a] = 1;
        coef[2][a][a] = 1;
        for b in 0..n {
            if a != b {
                coef[1][a][b] = c.matrix()[a][b];
            }
        }
    }
    SeriesMatrix::from_coeffs(-1, coef, true)
}

/// Inverse series of `cz`, computed through `z^max_exp`. The lowest
/// coefficient matrix must be invertible over the integers.
pub fn invert_series(cz: &SeriesMatrix, max_exp: i64) -> QResult<SeriesMatrix> {
    let n = cz.n;
    let l0 = cz.at(cz.lo)?;
    let inv = int_inverse(&l0)?;
    let lo = -cz.lo;
    if max_exp < lo {
        return Err(QError::ContextTooSmall(format!("truncation {max_exp} below the leading exponent {lo}")));
    }
    let len = (max_exp - lo + 1) as usize;
    let mut x: Vec<Vec<Vec<i64>>> = Vec::with_capacity(len);
    x.push(inv.clone());
    for m in 1..len {
        let mut acc = vec![vec![0i64; n]; n];
        for i in 1..=m {
            let li = cz.at(cz.lo + i as i64)?;
            let prev = &x[m - i];
            for a in 0..n {
                for t in 0..n {
                    if li[a][t] == 0 {
                        continue;
                    }
                    for b in 0..n {
                        acc[a][b] += li[a][t] * prev[t][b];
                    }
                }
            }
        }
        let mut xm = vec![vec![0i64; n]; n];
        for a in 0..n {
            for b in 0..n {
                xm[a][b] = -(0..n).map(|t| inv[a][t] * acc[t][b]).sum::<i64>();
            }
        }
        x.push(xm);
    }
    Ok(SeriesMatrix::from_coeffs(lo, x, false))
}

fn int_inverse(m: &[Vec<i64>]) -> QResult<Vec<Vec<i64>>> {
    let n = m.len();
    let r = linalg::to_rat_matrix(m);
    let mut out = vec![vec![0i64; n]; n];
    for b in 0..n {
        let e: Vec<Rat> = (0..n).map(|a| linalg::rat((a == b) as i64)).collect();
        let (x, ker) = linalg::solve(&r, &e, n).ok_or_else(|| QError::Invalid("leading coefficient is singular".into()))?;
        if !ker.is_empty() {
            return Err(QError::Invalid("leading coefficient is singular".into()));
        }
        for a in 0..n {
            out[a][b] = linalg::as_int(&x[a])
                .ok_or_else(|| QError::Invalid("leading coefficient is not unimodular".into()))?;
        }
    }
    Ok(out)
}

/// Default truncation `6h`.
pub fn default_truncation(h: i64) -> i64 {
    6 * h
}

/// Which skew form quantizes the word seeds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FormKind {
    /// Four-term form in the inverse of `C(z)`.
    N,
    /// The same with `C(z)` replaced by `C(z) D^{-1}`; its inverse is `D C̃`.
    Underline,
}

/// The form on `⊕ Z e_(a,p)` together with the series it reads.
#[derive(Clone, Debug)]
pub struct SkewForm {
    kind: FormKind,
    ct: SeriesMatrix,
}

impl SkewForm {
    pub fn new(c: &Cartan, kind: FormKind, truncation: i64) -> QResult<SkewForm> {
        let inv = invert_series(&deformed_cartan(c), truncation)?;
        let ct = match kind {
            FormKind::N => inv,
            FormKind::Underline => inv.scale_rows(c.syms()),
        };
        Ok(SkewForm { kind, ct })
    }

    pub fn kind(&self) -> FormKind {
        self.kind
    }

    pub fn series(&self) -> &SeriesMatrix {
        &self.ct
    }

    /// Value on unit vectors `e_(a,p)`, `e_(b,s)` (letters 1-based).
    pub fn eval(&self, a: i64, p: i64, b: i64, s: i64) -> QResult<i64> {
        let (a, b) = ((a - 1) as usize, (b - 1) as usize);
        let t = &self.ct;
        let (ab, ba) = match self.kind {
            FormKind::N => ((a, b), (b, a)),
            FormKind::Underline => ((a, b), (a, b)),
        };
        Ok(t.get(ab.0, ab.1, -1 + p - s)? - t.get(ba.0, ba.1, -1 - p + s)? - t.get(ab.0, ab.1, 1 + p - s)?
            + t.get(ba.0, ba.1, 1 - p + s)?)
    }

    /// Bilinear extension to finitely supported vectors over `(a, p)`.
    pub fn eval_vec(&self, x: &BTreeMap<(i64, i64), i64>, y: &BTreeMap<(i64, i64), i64>) -> QResult<i64> {
        let mut s = 0;
        for (&(a, p), &u) in x {
            for (&(b, q), &v) in y {
                s += u * v * self.eval(a, p, b, q)?;
            }
        }
        Ok(s)
    }
}

/// `𝒩(e_(a,p), e_(b,s))` from an inverse series `C̃`.
pub fn n_form(a: i64, p: i64, b: i64, s: i64, ct: &SeriesMatrix) -> QResult<i64> {
    let (a, b) = ((a - 1) as usize, (b - 1) as usize);
    Ok(ct.get(a, b, -1 + p - s)? - ct.get(b, a, -1 - p + s)? - ct.get(a, b, 1 + p - s)? + ct.get(b, a, 1 - p + s)?)
}

/// Height function values `ξ_a` (letters 1-based).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeightFn(pub Vec<i64>);

impl HeightFn {
    pub fn get(&self, a: i64) -> i64 {
        self.0[(a - 1) as usize]
    }

    /// The height function of a Coxeter word: `ξ_{c_1} = 0` and
    /// `ξ_{c_j} = ξ_{c_k} + 1` for linked `j < k`. Needs a tree.
    pub fn from_coxeter(c: &Cartan, word: &SignedWord) -> QResult<HeightFn> {
        if !word.is_coxeter_for(c) {
            return Err(QError::Invalid(format!("{word} is not a Coxeter word")));
        }
        let n = c.rank();
        let pos: BTreeMap<i64, usize> = word.letters().iter().enumerate().map(|(i, &a)| (a, i)).collect();
        let mut xi: Vec<Option<i64>> = vec![None; n];
        xi[(word.letter(1) - 1) as usize] = Some(0);
        let mut changed = true;
        while changed {
            changed = false;
            for a in 1..=n as i64 {
                for b in 1..=n as i64 {
                    if a == b || c.entry(a, b) >= 0 {
                        continue;
                    }
                    let (ia, ib) = ((a - 1) as usize, (b - 1) as usize);
                    let off = if pos[&a] < pos[&b] { 1 } else { -1 };
                    match (xi[ia], xi[ib]) {
                        (Some(x), None) => {
                            xi[ib] = Some(x - off);
                            changed = true;
                        }
                        (Some(x), Some(y)) if x != y + off => {
                            return Err(QError::Invalid("no height function for this orientation".into()))
                        }
                        _ => {}
                    }
                }
            }
        }
        xi.into_iter()
            .collect::<Option<Vec<i64>>>()
            .map(HeightFn)
            .ok_or_else(|| QError::Invalid("Dynkin diagram is disconnected".into()))
    }

    /// `ξ_{c_j} = ξ_{c_k} + 1` whenever `C_{c_j c_k} < 0` and `j < k`.
    pub fn is_compatible(&self, c: &Cartan, word: &SignedWord) -> bool {
        let l = word.letters();
        (0..l.len()).all(|j| {
            (j + 1..l.len()).all(|k| c.entry(l[j], l[k]) >= 0 || self.get(l[j]) == self.get(l[k]) + 1)
        })
    }
}

/// `Λ_{<a,d>,<b,s>} = form(Σ_{t≤d} e_(a,ξ_a-2t), Σ_{t≤s} e_(b,ξ_b-2t))` on `rsd(w)`.
pub fn lambda_from_form(w: &SignedWord, form: &SkewForm, xi: &HeightFn) -> QResult<LambdaForm> {
    let l = w.len();
    let vec_of = |k: usize| -> BTreeMap<(i64, i64), i64> {
        let a = w.abs(k);
        (0..=w.occurrence(k) as i64).map(|t| ((a, xi.get(a) - 2 * t), 1)).collect()
    };
    let vs: Vec<_> = (1..=l).map(vec_of).collect();
    let mut lam = LambdaForm::new();
    for j in 0..l {
        for k in j + 1..l {
            let x = form.eval_vec(&vs[j], &vs[k])?;
            let y = form.eval_vec(&vs[k], &vs[j])?;
            if x != -y {
                return Err(QError::Invalid(format!("form is not skew on vertices {} and {}", j + 1, k + 1)));
            }
            lam.set((j + 1) as Vid, (k + 1) as Vid, x);
        }
    }
    Ok(lam)
}

/// `rsd(w)` quantized by `lambda_from_form`; fails if the result is not compatible.
pub fn quantized_rsd(w: &SignedWord, c: &Cartan, xi: &HeightFn, kind: FormKind) -> QResult<Seed> {
    let trunc = default_truncation(2 * (w.len() as i64 + 2));
    let form = SkewForm::new(c, kind, trunc)?;
    let lam = lambda_from_form(w, &form, xi)?;
    let sd = crate::words::build_rsd(w, c)?.quantize(&lam)?;
    let rep = crate::seed::validate(&sd);
    if !rep.is_valid() {
        return Err(QError::Invalid(format!("form does not give a compatible quantization: {}", rep.lines().join("; "))));
    }
    Ok(sd)
}

/// A compatible integer `Λ` for `sd`: `(ΛB̃)_{ik} = -δ_k` on the diagonal
/// and zero elsewhere, with `δ_k = t · lcm(d) / d_k` for the least `t ≤ bound`.
/// Kernel freedom is reduced by a deterministic descent on `(Σ|Λ_ij|, entries)`.
pub fn solve_compatible_lambda(sd: &Seed, bound: i64) -> QResult<LambdaForm> {
    let verts = sd.verts().to_vec();
    let uf = sd.unfrozen();
    let n = verts.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let var = |i: usize, j: usize| -> (usize, i64) {
        if i < j {
            (pairs.iter().position(|&p| p == (i, j)).unwrap(), 1)
        } else {
            (pairs.iter().position(|&p| p == (j, i)).unwrap(), -1)
        }
    };
    let lcm = uf.iter().fold(1i64, |acc, &k| {
        let d = sd.d(k);
        let g = gcd(acc, d);
        acc / g * d
    });
    // rows: (i, k) for every vertex i and unfrozen k
    let mut a = Vec::new();
    let mut rhs_unit = Vec::new();
    for i in 0..n {
        for &k in &uf {
            let mut row = vec![0i64; pairs.len()];
            for t in 0..n {
                if t == i {
                    continue;
                }
                let b = sd.b(verts[t], k);
                if b != 0 {
                    let (v, sgn) = var(i, t);
                    row[v] += sgn * b;
                }
            }
            a.push(row);
            rhs_unit.push(if verts[i] == k { -(lcm / sd.d(k)) } else { 0 });
        }
    }
    if sd.is_empty() {
        return Ok(LambdaForm::new());
    }
    let rank = linalg::rank(&linalg::to_rat_matrix(&sd.btilde()), uf.len());
    if rank < uf.len() {
        return Err(QError::NoSolution);
    }
    for t in 1..=bound {
        let rhs: Vec<i64> = rhs_unit.iter().map(|x| x * t).collect();
        if let Some((mut x, ker)) = linalg::int_solve(&a, &rhs, pairs.len()) {
            reduce_by_kernel(&mut x, &ker);
            let mut lam = LambdaForm::new();
            for (idx, &(i, j)) in pairs.iter().enumerate() {
                lam.set(verts[i], verts[j], x[idx]);
            }
            return Ok(lam);
        }
    }
    Err(QError::NoSolution)
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn cost(x: &[i64]) -> (i64, Vec<i64>) {
    (x.iter().map(|v| v.abs()).sum(), x.to_vec())
}

/// Greedy descent over `x ± k_i` and `x ± k_i ± k_j`.
fn reduce_by_kernel(x: &mut Vec<i64>, ker: &[Vec<i64>]) {
    let add = |x: &[i64], v: &[i64], s: i64| -> Vec<i64> { x.iter().zip(v).map(|(a, b)| a + s * b).collect() };
    loop {
        let mut best = cost(x);
        let mut next: Option<Vec<i64>> = None;
        for i in 0..ker.len() {
            for s in [1, -1] {
                let y = add(x, &ker[i], s);
                let cy = cost(&y);
                if cy < best {
                    best = cy;
                    next = Some(y.clone());
                }
                for j in i + 1..ker.len() {
                    for s2 in [1, -1] {
                        let z = add(&y, &ker[j], s2);
                        let cz = cost(&z);
                        if cz < best {
                            best = cz;
                            next = Some(z);
                        }
                    }
                }
            }
        }
        match next {
            Some(y) => *x = y,
            None => return,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::build_rsd;

    #[test]
    fn a2_inverse_series() {
        let c = Cartan::of_type("A2").unwrap();
        let ct = invert_series(&deformed_cartan(&c), 30).unwrap();
        for m in 0..=30 {
            let diag = match m % 6 {
                1 => 1,
                5 => -1,
                _ => 0,
            };
            let off = match m % 6 {
                2 => 1,
                4 => -1,
                _ => 0,
            };
            assert_eq!(ct.at(m).unwrap(), vec![vec![diag, off], vec![off, diag]], "m = {m}");
        }
        assert!(ct.get(0, 0, 31).is_err());
        let prod = deformed_cartan(&c).mul(&ct);
        assert_eq!(prod.at(0).unwrap(), vec![vec![1, 0], vec![0, 1]]);
        for m in 1..=28 {
            assert_eq!(prod.at(m).unwrap(), vec![vec![0, 0], vec![0, 0]]);
        }
    }

    #[test]
    fn height_functions() {
        let a2 = Cartan::of_type("A2").unwrap();
        let xi = HeightFn::from_coxeter(&a2, &SignedWord::parse("1,2").unwrap()).unwrap();
        assert_eq!(xi.0, vec![0, -1]);
        let b3 = Cartan::of_type("B3").unwrap();
        let w = SignedWord::parse("2,1,3").unwrap();
        let xi = HeightFn::from_coxeter(&b3, &w).unwrap();
        assert_eq!(xi.0, vec![-1, 0, -1]);
        assert!(xi.is_compatible(&b3, &w));
    }

    #[test]
    fn generic_quantizer_a2() {
        let c = Cartan::of_type("A2").unwrap();
        let s = build_rsd(&SignedWord::parse("1,2,1,2,1,2").unwrap(), &c).unwrap();
        let lam = solve_compatible_lambda(&s, 4).unwrap();
        let q = s.quantize(&lam).unwrap();
        let rep = crate::seed::validate(&q);
        assert!(rep.is_valid(), "{:?}", rep.lines());
        assert!(rep.deltas.values().all(|&d| d == 1 || d == 2));
    }

    fn a2_setup() -> (Cartan, SkewForm, HeightFn, SignedWord) {
        let c = Cartan::of_type("A2").unwrap();
        let f = SkewForm::new(&c, FormKind::N, 36).unwrap();
        (c, f, HeightFn(vec![0, -1]), SignedWord::parse("1,2,1,2,1,2").unwrap())
    }

    #[test]
    fn a2_n_matrix() {
        let (_, f, xi, _) = a2_setup();
        let node = |j: i64| {
            let a = if j % 2 == 1 { 1 } else { 2 };
            (a, xi.get(a) - 2 * ((j - a) / 2))
        };
        let expect = [
            [0, -1, 1, 2, 1, -1],
            [1, 0, -1, 1, 2, 1],
            [-1, 1, 0, -1, 1, 2],
            [-2, -1, 1, 0, -1, 1],
            [-1, -2, -1, 1, 0, -1],
            [1, -1, -2, -1, 1, 0],
        ];
        for j in 1..=6 {
            for k in 1..=6 {
                let ((a, p), (b, s)) = (node(j), node(k));
                assert_eq!(f.eval(a, p, b, s).unwrap(), expect[(j - 1) as usize][(k - 1) as usize]);
                assert_eq!(n_form(a, p, b, s, f.series()).unwrap(), expect[(j - 1) as usize][(k - 1) as usize]);
            }
        }
    }

    #[test]
    fn a2_lambda_matrix() {
        let (c, f, xi, w) = a2_setup();
        let lam = lambda_from_form(&w, &f, &xi).unwrap();
        let expect = [
            [0, -1, 1, 1, 2, 0],
            [1, 0, 0, 1, 2, 2],
            [-1, 0, 0, 1, 2, 2],
            [-1, -1, -1, 0, 0, 2],
            [-2, -2, -2, 0, 0, 0],
            [0, -2, -2, -2, 0, 0],
        ];
        let verts: Vec<Vid> = (1..=6).collect();
        assert_eq!(lam.dense(&verts), expect.iter().map(|r| r.to_vec()).collect::<Vec<_>>());
        let s = build_rsd(&w, &c).unwrap().quantize(&lam).unwrap();
        let rep = crate::seed::validate(&s);
        assert!(rep.is_valid());
        assert!(rep.deltas.values().all(|&d| d == 2));
    }

    #[test]
    fn single_letter_lambda_is_zero() {
        let (_, f, xi, _) = a2_setup();
        let lam = lambda_from_form(&SignedWord::parse("1").unwrap(), &f, &xi).unwrap();
        assert_eq!(lam.dense(&[1]), vec![vec![0]]);
    }
}
