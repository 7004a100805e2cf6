//! Seeds, mutation of `(B̃, Λ, x)`, tropical mutation, freezing and
//! sub-seed checks.
//!
//! Cluster variables are stored eagerly as elements of one reference torus,
//! so variables of different seeds in a mutation class compare directly.

use crate::error::{QError, QResult};
use crate::qtorus::{DominanceSolver, ExpVec, LambdaForm, QLaurent, Torus, Vid};
use crate::scalar::QScalar;
use std::collections::{BTreeMap, BTreeSet};
use std::sync::{Arc, OnceLock};

/// Mutation steps followed by a relabeling: vertex `perm[v]` receives the
/// data of `v`. Vertices missing from `perm` are fixed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MutSeq {
    pub steps: Vec<Vid>,
    pub final_perm: BTreeMap<Vid, Vid>,
}

impl MutSeq {
    pub fn new(steps: Vec<Vid>) -> Self {
        MutSeq { steps, final_perm: BTreeMap::new() }
    }

    pub fn perm(p: BTreeMap<Vid, Vid>) -> Self {
        MutSeq { steps: Vec::new(), final_perm: p }
    }

    pub fn is_identity(&self) -> bool {
        self.steps.is_empty() && self.final_perm.iter().all(|(a, b)| a == b)
    }

    /// `other` applied after `self`.
    pub fn then(&self, other: &MutSeq) -> MutSeq {
        // move other's steps back through self's permutation
        let inv: BTreeMap<Vid, Vid> = self.final_perm.iter().map(|(&a, &b)| (b, a)).collect();
        let mut steps = self.steps.clone();
        steps.extend(other.steps.iter().map(|v| *inv.get(v).unwrap_or(v)));
        let mut keys: BTreeSet<Vid> = self.final_perm.keys().copied().collect();
        keys.extend(other.final_perm.keys().map(|v| *inv.get(v).unwrap_or(v)));
        let mut final_perm = BTreeMap::new();
        for v in keys {
            let a = *self.final_perm.get(&v).unwrap_or(&v);
            let b = *other.final_perm.get(&a).unwrap_or(&a);
            if b != v {
                final_perm.insert(v, b);
            }
        }
        MutSeq { steps, final_perm }
    }
}

#[derive(Clone)]
pub struct Seed {
    verts: Vec<Vid>,
    pos: BTreeMap<Vid, usize>,
    unfrozen: Vec<bool>,
    d: Vec<i64>,
    // n x n, columns of frozen vertices are kept at zero
    b: Vec<Vec<i64>>,
    lam: Option<Vec<Vec<i64>>>,
    vars: Vec<QLaurent>,
    reference: Arc<Torus>,
    labels: Vec<String>,
    dominance: OnceLock<Result<Arc<DominanceSolver>, QError>>,
}

impl std::fmt::Debug for Seed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Seed")
            .field("verts", &self.verts)
            .field("frozen", &self.frozen())
            .field("d", &self.d)
            .field("b", &self.b)
            .field("lam", &self.lam)
            .finish()
    }
}

/// Structural equality: partition, `d`, `B̃`, `Λ` and cluster variables.
impl PartialEq for Seed {
    fn eq(&self, o: &Self) -> bool {
        self.same_matrices(o) && self.vars == o.vars
    }
}

/// Builder input for a seed over explicit vertex ids.
#[derive(Clone, Debug, Default)]
pub struct SeedData {
    pub verts: Vec<Vid>,
    pub frozen: BTreeSet<Vid>,
    pub d: BTreeMap<Vid, i64>,
    /// Entries `b_{ij}` with `j` unfrozen.
    pub b: BTreeMap<(Vid, Vid), i64>,
    pub lam: Option<LambdaForm>,
    pub labels: BTreeMap<Vid, String>,
}

impl Seed {
    /// Initial seed whose cluster variables are the torus generators.
    pub fn new(data: SeedData) -> QResult<Seed> {
        let mut verts = data.verts.clone();
        verts.sort_unstable();
        verts.dedup();
        if verts.len() != data.verts.len() {
            return Err(QError::Invalid("duplicate vertex ids".into()));
        }
        let lam_form = data.lam.clone().unwrap_or_default();
        let torus = Torus::new(&verts, &lam_form);
        let labels: Vec<String> =
            verts.iter().map(|v| data.labels.get(v).cloned().unwrap_or_else(|| format!("x{v}"))).collect();
        let torus = torus.with_names(labels.clone());
        let vars = verts.iter().map(|&v| QLaurent::var(&torus, v)).collect::<QResult<Vec<_>>>()?;
        Self::assemble(data, verts, vars, torus, labels)
    }

    /// Seed whose cluster variables are given elements of an existing torus.
    pub fn with_variables(data: SeedData, vars: BTreeMap<Vid, QLaurent>, reference: Arc<Torus>) -> QResult<Seed> {
        let mut verts = data.verts.clone();
        verts.sort_unstable();
        verts.dedup();
        let mut vs = Vec::with_capacity(verts.len());
        for v in &verts {
            let z = vars.get(v).ok_or(QError::UnknownVertex(*v))?;
            if z.torus().id() != reference.id() {
                return Err(QError::TorusMismatch(z.torus().id(), reference.id()));
            }
            vs.push(z.clone());
        }
        let labels = verts.iter().map(|v| data.labels.get(v).cloned().unwrap_or_else(|| format!("x{v}"))).collect();
        Self::assemble(data, verts, vs, reference, labels)
    }

    fn assemble(
        data: SeedData,
        verts: Vec<Vid>,
        vars: Vec<QLaurent>,
        reference: Arc<Torus>,
        labels: Vec<String>,
    ) -> QResult<Seed> {
        let n = verts.len();
        let pos: BTreeMap<Vid, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        for f in &data.frozen {
            if !pos.contains_key(f) {
                return Err(QError::UnknownVertex(*f));
            }
        }
        let unfrozen: Vec<bool> = verts.iter().map(|v| !data.frozen.contains(v)).collect();
        let mut d = vec![1; n];
        for (v, &x) in &data.d {
            let i = *pos.get(v).ok_or(QError::UnknownVertex(*v))?;
            if x <= 0 {
                return Err(QError::Invalid(format!("symmetrizer of {v} must be positive")));
            }
            d[i] = x;
        }
        let mut b = vec![vec![0; n]; n];
        for (&(i, j), &x) in &data.b {
            let pi = *pos.get(&i).ok_or(QError::UnknownVertex(i))?;
            let pj = *pos.get(&j).ok_or(QError::UnknownVertex(j))?;
            if unfrozen[pj] {
                b[pi][pj] = x;
            }
        }
        let lam = data.lam.as_ref().map(|l| l.dense(&verts));
        Ok(Seed { verts, pos, unfrozen, d, b, lam, vars, reference, labels, dominance: OnceLock::new() })
    }

    pub fn verts(&self) -> &[Vid] {
        &self.verts
    }

    pub fn len(&self) -> usize {
        self.verts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.verts.is_empty()
    }

    pub fn index(&self, v: Vid) -> Option<usize> {
        self.pos.get(&v).copied()
    }

    pub fn contains(&self, v: Vid) -> bool {
        self.pos.contains_key(&v)
    }

    pub fn is_frozen(&self, v: Vid) -> bool {
        self.index(v).map(|i| !self.unfrozen[i]).unwrap_or(false)
    }

    pub fn unfrozen(&self) -> Vec<Vid> {
        self.verts.iter().zip(&self.unfrozen).filter(|(_, &u)| u).map(|(&v, _)| v).collect()
    }

    pub fn frozen(&self) -> Vec<Vid> {
        self.verts.iter().zip(&self.unfrozen).filter(|(_, &u)| !u).map(|(&v, _)| v).collect()
    }

    pub fn d(&self, v: Vid) -> i64 {
        self.index(v).map(|i| self.d[i]).unwrap_or(0)
    }

    /// `b_{ij}`; zero when `j` is frozen or either vertex is absent.
    pub fn b(&self, i: Vid, j: Vid) -> i64 {
        match (self.index(i), self.index(j)) {
            (Some(a), Some(c)) => self.b[a][c],
            _ => 0,
        }
    }

    pub fn is_quantum(&self) -> bool {
        self.lam.is_some()
    }

    pub fn lam(&self, i: Vid, j: Vid) -> i64 {
        match (&self.lam, self.index(i), self.index(j)) {
            (Some(l), Some(a), Some(c)) => l[a][c],
            _ => 0,
        }
    }

    pub fn lambda_form(&self) -> Option<LambdaForm> {
        self.lam.as_ref().map(|l| LambdaForm::from_dense(&self.verts, l))
    }

    /// Attaches (or replaces) the quantization matrix. Cluster variables
    /// are reset to the generators of a fresh torus carrying `lam`.
    pub fn quantize(&self, lam: &LambdaForm) -> QResult<Seed> {
        let mut data = self.data();
        data.lam = Some(lam.clone());
        Seed::new(data)
    }

    /// Same combinatorial data with fresh generator variables.
    pub fn reinitialized(&self) -> QResult<Seed> {
        Seed::new(self.data())
    }

    /// Exports the combinatorial data.
    pub fn data(&self) -> SeedData {
        let mut b = BTreeMap::new();
        for (i, &u) in self.verts.iter().enumerate() {
            for (j, &v) in self.verts.iter().enumerate() {
                if self.b[i][j] != 0 {
                    b.insert((u, v), self.b[i][j]);
                }
            }
        }
        SeedData {
            verts: self.verts.clone(),
            frozen: self.frozen().into_iter().collect(),
            d: self.verts.iter().copied().zip(self.d.iter().copied()).collect(),
            b,
            lam: self.lambda_form(),
            labels: self.verts.iter().copied().zip(self.labels.iter().cloned()).collect(),
        }
    }

    pub fn var(&self, v: Vid) -> QResult<&QLaurent> {
        self.index(v).map(|i| &self.vars[i]).ok_or(QError::UnknownVertex(v))
    }

    pub fn vars(&self) -> impl Iterator<Item = (Vid, &QLaurent)> + '_ {
        self.verts.iter().copied().zip(self.vars.iter())
    }

    pub fn reference(&self) -> &Arc<Torus> {
        &self.reference
    }

    pub fn label(&self, v: Vid) -> Option<&str> {
        self.index(v).map(|i| self.labels[i].as_str())
    }

    pub fn set_label(&mut self, v: Vid, s: String) {
        if let Some(i) = self.index(v) {
            self.labels[i] = s;
        }
    }

    /// `B̃` as dense rows over all vertices and columns over unfrozen ones.
    pub fn btilde(&self) -> Vec<Vec<i64>> {
        let cols: Vec<usize> = (0..self.len()).filter(|&j| self.unfrozen[j]).collect();
        self.b.iter().map(|row| cols.iter().map(|&j| row[j]).collect()).collect()
    }

    /// Torus of this seed's own cluster (generators `x_i(sd)` with `Λ(sd)`).
    pub fn own_torus(&self) -> Arc<Torus> {
        let lam = self.lambda_form().unwrap_or_default();
        Torus::new(&self.verts, &lam).with_names(self.labels.clone())
    }

    pub fn dominance(&self) -> QResult<Arc<DominanceSolver>> {
        self.dominance
            .get_or_init(|| DominanceSolver::new(&self.verts, &self.unfrozen(), &self.btilde()).map(Arc::new))
            .clone()
    }

    fn same_matrices(&self, o: &Self) -> bool {
        self.verts == o.verts && self.unfrozen == o.unfrozen && self.d == o.d && self.b == o.b && self.lam == o.lam
    }

    /// Equality of `(I, I_uf, d, B̃, Λ)` ignoring cluster variables.
    pub fn same_data(&self, o: &Self) -> bool {
        self.same_matrices(o)
    }

    /// Normalized ordered product `x^a` of the current cluster variables.
    pub fn cluster_monomial(&self, a: &ExpVec) -> QResult<QLaurent> {
        let mut corr = 0i64;
        let sup: Vec<(Vid, i64)> = a.iter().collect();
        for (x, &(i, ai)) in sup.iter().enumerate() {
            for &(j, aj) in &sup[x + 1..] {
                corr += ai * aj * self.lam(i, j);
            }
        }
        let mut acc = QLaurent::scalar(&self.reference, QScalar::qpow(-corr));
        for &(v, e) in &sup {
            let z = self.var(v)?;
            let p = if e >= 0 {
                z.pow(e as u32)
            } else {
                crate::qtorus::monomial_inverse(z)?.pow((-e) as u32)
            };
            acc = &acc * &p;
        }
        Ok(acc)
    }

    /// The sparse matrices `E_ε` (I x I) and `F_ε` (I_uf x I_uf) of the
    /// mutation at `k`, as maps of their non-identity entries.
    pub fn mutation_matrices(&self, k: Vid, eps: i64) -> QResult<(BTreeMap<(Vid, Vid), i64>, BTreeMap<(Vid, Vid), i64>)> {
        let ki = self.index(k).ok_or(QError::UnknownVertex(k))?;
        if !self.unfrozen[ki] {
            return Err(QError::Frozen(k));
        }
        let mut e = BTreeMap::new();
        let mut f = BTreeMap::new();
        e.insert((k, k), -1);
        f.insert((k, k), -1);
        for (i, &v) in self.verts.iter().enumerate() {
            if i != ki {
                let x = (-eps * self.b[i][ki]).max(0);
                if x != 0 {
                    e.insert((v, k), x);
                }
                if self.unfrozen[i] {
                    let y = (eps * self.b[ki][i]).max(0);
                    if y != 0 {
                        f.insert((k, v), y);
                    }
                }
            }
        }
        Ok((e, f))
    }

    /// Mutation at `k` with sign `ε`; the result does not depend on `ε`.
    pub fn mutate_with_sign(&self, k: Vid, eps: i64) -> QResult<Seed> {
        let (e, f) = self.mutation_matrices(k, eps)?;
        let ki = self.index(k).unwrap();
        let n = self.len();
        let ecol: Vec<i64> = (0..n).map(|i| e.get(&(self.verts[i], k)).copied().unwrap_or(0)).collect();
        let frow: Vec<i64> = (0..n).map(|j| f.get(&(k, self.verts[j])).copied().unwrap_or(0)).collect();
        // E B: row k negated, other rows gain ecol[i] * row k
        let mut eb = self.b.clone();
        for i in 0..n {
            if i == ki {
                continue;
            }
            if ecol[i] != 0 {
                for j in 0..n {
                    eb[i][j] += ecol[i] * self.b[ki][j];
                }
            }
        }
        eb[ki] = self.b[ki].iter().map(|x| -x).collect();
        // (E B) F: column k negated, other columns gain frow[j] * column k
        let mut b2 = eb.clone();
        for row in b2.iter_mut() {
            let ck = row[ki];
            for j in 0..n {
                if j != ki && self.unfrozen[j] && frow[j] != 0 {
                    row[j] += ck * frow[j];
                }
            }
            row[ki] = -ck;
        }
        // Λ' = E^T Λ E: only pairs involving k change
        let lam2 = self.lam.as_ref().map(|l| {
            let mut l2 = l.clone();
            let col: Vec<i64> = (0..n)
                .map(|i| {
                    let mut s = -l[i][ki];
                    for (t, &c) in ecol.iter().enumerate() {
                        if t != ki && c != 0 {
                            s += c * l[i][t];
                        }
                    }
                    s
                })
                .collect();
            for i in 0..n {
                if i != ki {
                    l2[i][ki] = col[i];
                    l2[ki][i] = -col[i];
                }
            }
            l2[ki][ki] = 0;
            l2
        });
        let new_var = self.exchange(k)?;
        let mut vars = self.vars.clone();
        vars[ki] = new_var;
        Ok(Seed {
            verts: self.verts.clone(),
            pos: self.pos.clone(),
            unfrozen: self.unfrozen.clone(),
            d: self.d.clone(),
            b: b2,
            lam: lam2,
            vars,
            reference: self.reference.clone(),
            labels: self.labels.clone(),
            dominance: OnceLock::new(),
        })
    }

    pub fn mutate(&self, k: Vid) -> QResult<Seed> {
        self.mutate_with_sign(k, 1)
    }

    /// `x'_k` with `x'_k * x_k = q^{λ(a1,f_k)/2} x^{a1} + q^{λ(a2,f_k)/2} x^{a2}`.
    fn exchange(&self, k: Vid) -> QResult<QLaurent> {
        let ki = self.index(k).unwrap();
        let mut a1 = ExpVec::new();
        let mut a2 = ExpVec::new();
        for (i, &v) in self.verts.iter().enumerate() {
            let x = self.b[i][ki];
            if x > 0 {
                a2.add_at(v, x);
            } else if x < 0 {
                a1.add_at(v, -x);
            }
        }
        let mut p = QLaurent::zero(&self.reference);
        for a in [&a1, &a2] {
            let l: i64 = a.iter().map(|(v, x)| x * self.lam(v, k)).sum();
            p = &p + &self.cluster_monomial(a)?.shift_q(l);
        }
        p.exact_div(&self.vars[ki]).map_err(|e| match e {
            QError::Inexact => QError::Invalid(format!("exchange relation at {k} is not Laurent")),
            other => other,
        })
    }

    /// Relabels vertices: `sigma(v)` receives the data of `v`.
    pub fn permute(&self, sigma: &BTreeMap<Vid, Vid>) -> QResult<Seed> {
        if sigma.iter().all(|(a, b)| a == b) {
            return Ok(self.clone());
        }
        let img = |v: Vid| *sigma.get(&v).unwrap_or(&v);
        let targets: BTreeSet<Vid> = self.verts.iter().map(|&v| img(v)).collect();
        if targets.len() != self.len() || targets.iter().any(|t| !self.contains(*t)) {
            return Err(QError::Invalid("relabeling is not a permutation of the vertex set".into()));
        }
        let n = self.len();
        let p: Vec<usize> = self.verts.iter().map(|&v| self.index(img(v)).unwrap()).collect();
        let mut b = vec![vec![0; n]; n];
        let mut lam = self.lam.as_ref().map(|_| vec![vec![0; n]; n]);
        let mut d = vec![0; n];
        let mut unfrozen = vec![false; n];
        let mut vars = self.vars.clone();
        let mut labels = self.labels.clone();
        for i in 0..n {
            d[p[i]] = self.d[i];
            unfrozen[p[i]] = self.unfrozen[i];
            vars[p[i]] = self.vars[i].clone();
            labels[p[i]] = self.labels[i].clone();
            for j in 0..n {
                b[p[i]][p[j]] = self.b[i][j];
                if let (Some(l2), Some(l)) = (lam.as_mut(), self.lam.as_ref()) {
                    l2[p[i]][p[j]] = l[i][j];
                }
            }
        }
        Ok(Seed {
            verts: self.verts.clone(),
            pos: self.pos.clone(),
            unfrozen,
            d,
            b,
            lam,
            vars,
            reference: self.reference.clone(),
            labels,
            dominance: OnceLock::new(),
        })
    }

    pub fn apply_seq(&self, ms: &MutSeq) -> QResult<Seed> {
        let mut s = self.clone();
        for &k in &ms.steps {
            s = s.mutate(k)?;
        }
        s.permute(&ms.final_perm)
    }

    /// Freezes the vertices in `f`, dropping their columns.
    pub fn freeze(&self, f: &BTreeSet<Vid>) -> Seed {
        let mut s = self.clone();
        for (j, v) in self.verts.iter().enumerate() {
            if f.contains(v) && s.unfrozen[j] {
                s.unfrozen[j] = false;
                for row in s.b.iter_mut() {
                    row[j] = 0;
                }
            }
        }
        s.dominance = OnceLock::new();
        s
    }

    /// Restriction to a vertex subset (a full sub-seed), keeping the variables.
    pub fn restrict(&self, keep: &BTreeSet<Vid>, frozen_extra: &BTreeSet<Vid>) -> QResult<Seed> {
        let mut data = self.data();
        data.verts.retain(|v| keep.contains(v));
        data.frozen = data.frozen.into_iter().filter(|v| keep.contains(v)).collect();
        data.frozen.extend(frozen_extra.iter().copied().filter(|v| keep.contains(v)));
        data.d.retain(|v, _| keep.contains(v));
        let frozen = data.frozen.clone();
        data.b.retain(|(i, j), _| keep.contains(i) && keep.contains(j) && !frozen.contains(j));
        data.lam = data.lam.map(|l| l.restrict(&data.verts));
        let vars: BTreeMap<Vid, QLaurent> =
            self.vars().filter(|(v, _)| keep.contains(v)).map(|(v, z)| (v, z.clone())).collect();
        Seed::with_variables(data, vars, self.reference.clone())
    }
}

/// Validation outcome, one list per invariant.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub skew_symmetrizable: Vec<String>,
    pub lambda_skew: Vec<String>,
    pub compatibility: Vec<String>,
    /// `δ_k` with `(ΛB̃)_{kk} = -δ_k`, for quantum seeds.
    pub deltas: BTreeMap<Vid, i64>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.skew_symmetrizable.is_empty() && self.lambda_skew.is_empty() && self.compatibility.is_empty()
    }

    pub fn lines(&self) -> Vec<String> {
        let mut out = Vec::new();
        for s in &self.skew_symmetrizable {
            out.push(format!("skew-symmetrizability: {s}"));
        }
        for s in &self.lambda_skew {
            out.push(format!("lambda skewness: {s}"));
        }
        for s in &self.compatibility {
            out.push(format!("compatibility: {s}"));
        }
        out
    }
}

pub fn validate(sd: &Seed) -> ValidationReport {
    let mut r = ValidationReport::default();
    let n = sd.len();
    for i in 0..n {
        for j in 0..n {
            if i < j && sd.unfrozen[i] && sd.unfrozen[j] && sd.b[i][j] * sd.d[j] != -sd.b[j][i] * sd.d[i] {
                r.skew_symmetrizable.push(format!(
                    "b[{},{}]*d = {} but -b[{},{}]*d = {}",
                    sd.verts[i],
                    sd.verts[j],
                    sd.b[i][j] * sd.d[j],
                    sd.verts[j],
                    sd.verts[i],
                    -sd.b[j][i] * sd.d[i]
                ));
            }
        }
    }
    let Some(l) = &sd.lam else { return r };
    for i in 0..n {
        for j in i..n {
            if l[i][j] != -l[j][i] {
                r.lambda_skew.push(format!(
                    "lambda[{},{}] = {}, lambda[{},{}] = {}",
                    sd.verts[i], sd.verts[j], l[i][j], sd.verts[j], sd.verts[i], l[j][i]
                ));
            }
        }
    }
    for k in 0..n {
        if !sd.unfrozen[k] {
            continue;
        }
        for i in 0..n {
            let s: i64 = (0..n).map(|t| l[i][t] * sd.b[t][k]).sum();
            if i == k {
                if s < 0 {
                    r.deltas.insert(sd.verts[k], -s);
                } else {
                    r.compatibility.push(format!("(lambda B)[{0},{0}] = {s} is not negative", sd.verts[k]));
                }
            } else if s != 0 {
                r.compatibility.push(format!("(lambda B)[{},{}] = {s}", sd.verts[i], sd.verts[k]));
            }
        }
    }
    r
}

/// Tropical transport `φ_{μ_k sd, sd}` of an exponent vector.
pub fn tropical_mutate(m: &ExpVec, sd: &Seed, k: Vid) -> QResult<ExpVec> {
    if !sd.contains(k) {
        return Err(QError::UnknownVertex(k));
    }
    if sd.is_frozen(k) {
        return Err(QError::Frozen(k));
    }
    let mk = m.get(k);
    let mut out = ExpVec::new();
    for &i in sd.verts() {
        let v = if i == k {
            -mk
        } else {
            let b = sd.b(i, k);
            m.get(i) + b.max(0) * mk.max(0) - (-b).max(0) * (-mk).max(0)
        };
        out.add_at(i, v);
    }
    for (v, x) in m.iter() {
        if !sd.contains(v) {
            out.add_at(v, x);
        }
    }
    Ok(out)
}

/// Checks that `iota` (sub vertex -> sup vertex) is a cluster embedding and
/// that `B̃(sup)` vanishes on `(I \ ιI') × ιI'_uf`.
pub fn good_subseed_check(sub: &Seed, sup: &Seed, iota: &BTreeMap<Vid, Vid>) -> bool {
    embedding_violations(sub, sup, iota, true).is_empty()
}

/// Reasons an embedding fails; empty when it is a (good) cluster embedding.
pub fn embedding_violations(sub: &Seed, sup: &Seed, iota: &BTreeMap<Vid, Vid>, good: bool) -> Vec<String> {
    let mut out = Vec::new();
    let img = |v: Vid| iota.get(&v).copied();
    let mut seen = BTreeSet::new();
    for &v in sub.verts() {
        match img(v) {
            Some(w) if sup.contains(w) => {
                if !seen.insert(w) {
                    out.push(format!("not injective at {w}"));
                }
            }
            _ => out.push(format!("vertex {v} has no image")),
        }
    }
    if !out.is_empty() {
        return out;
    }
    for &v in sub.verts() {
        let w = img(v).unwrap();
        if sub.d(v) != sup.d(w) {
            out.push(format!("d mismatch at {v}"));
        }
        if !sub.is_frozen(v) && sup.is_frozen(w) {
            out.push(format!("unfrozen {v} maps to frozen {w}"));
        }
    }
    for &i in sub.verts() {
        for k in sub.unfrozen() {
            if sub.b(i, k) != sup.b(img(i).unwrap(), img(k).unwrap()) {
                out.push(format!("b mismatch at ({i},{k})"));
            }
        }
        if sub.is_quantum() && sup.is_quantum() {
            for &j in sub.verts() {
                if sub.lam(i, j) != sup.lam(img(i).unwrap(), img(j).unwrap()) {
                    out.push(format!("lambda mismatch at ({i},{j})"));
                }
            }
        }
    }
    if good {
        for &u in sup.verts() {
            if seen.contains(&u) {
                continue;
            }
            for k in sub.unfrozen() {
                if sup.b(u, img(k).unwrap()) != 0 {
                    out.push(format!("b[{u},{}] nonzero outside the image", img(k).unwrap()));
                }
            }
        }
    }
    out
}

/// Degree of `z ∈ LP(sd)`, or `None` when `z` is not pointed.
pub fn degree(z: &QLaurent, sd: &Seed) -> QResult<Option<ExpVec>> {
    sd.dominance()?.degree(z)
}

/// `h ≼ m`: `h = m + B̃ n` with `n ≥ 0` integral.
pub fn dominance_leq(h: &ExpVec, m: &ExpVec, sd: &Seed) -> QResult<bool> {
    Ok(sd.dominance()?.leq(h, m))
}

/// Rescales a pointed element so its degree term has coefficient 1.
pub fn normalize(z: &QLaurent, sd: &Seed) -> QResult<QLaurent> {
    let m = degree(z, sd)?.ok_or(QError::NotPointed)?;
    let c = z.coeff(&m);
    let (half, sign) = c.as_unit().ok_or_else(|| QError::NotNormalizable(c.to_string()))?;
    let w = z.shift_q(-half);
    Ok(if sign < 0 { w.neg() } else { w })
}

/// Runs `seq` from `sd` and reports every failure of: involutivity of each
/// step (including `Λ` and variables), independence of the sign `ε`,
/// compatibility, exactness of each exchange, bar-invariance of quantum
/// variables, agreement with the classical exchange at `q = 1`, and
/// transport of the final degrees along the first step.
pub fn mutation_path_failures(sd: &Seed, seq: &[Vid]) -> Vec<String> {
    let mut out = Vec::new();
    let s0 = match sd.reinitialized() {
        Ok(s) => s,
        Err(e) => return vec![format!("initial seed: {e}")],
    };
    let mut classical = {
        let mut data = s0.data();
        data.lam = None;
        match Seed::new(data) {
            Ok(s) => s,
            Err(e) => return vec![format!("classical copy: {e}")],
        }
    };
    let mut cur = s0.clone();
    for (t, &k) in seq.iter().enumerate() {
        let at = format!("step {t} (mu_{k})");
        let next = match cur.mutate(k) {
            Ok(s) => s,
            Err(e) => {
                out.push(format!("{at}: {e}"));
                return out;
            }
        };
        match next.mutate(k) {
            Ok(back) if back == cur => {}
            Ok(_) => out.push(format!("{at}: mu_k mu_k is not the identity")),
            Err(e) => out.push(format!("{at}: second mutation failed: {e}")),
        }
        match cur.mutate_with_sign(k, -1) {
            Ok(other) if other == next => {}
            Ok(_) => out.push(format!("{at}: result depends on the sign")),
            Err(e) => out.push(format!("{at}: mutation with sign -1 failed: {e}")),
        }
        let rep = validate(&next);
        if !rep.is_valid() {
            out.push(format!("{at}: {}", rep.lines().join("; ")));
        }
        let x = next.var(k).expect("vertex exists");
        if next.is_quantum() && x.bar() != *x {
            out.push(format!("{at}: new variable is not bar-invariant"));
        }
        match classical.mutate(k) {
            Ok(c) => {
                if c.var(k).expect("vertex exists").at_q1() != x.at_q1() {
                    out.push(format!("{at}: q = 1 specialization differs from the classical exchange"));
                }
                classical = c;
            }
            Err(e) => out.push(format!("{at}: classical mutation failed: {e}")),
        }
        cur = next;
    }
    if let Some(&k0) = seq.first() {
        let moved = s0.mutate(k0).and_then(|m| m.reinitialized());
        let replay = moved.clone().and_then(|m| seq[1..].iter().try_fold(m, |s, &k| s.mutate(k)));
        match (moved, replay) {
            (Ok(base1), Ok(fin1)) => {
                for &v in cur.verts() {
                    let d0 = degree(cur.var(v).unwrap(), &s0);
                    let d1 = degree(fin1.var(v).unwrap(), &base1);
                    match (d0, d1) {
                        (Ok(Some(m0)), Ok(Some(m1))) => match tropical_mutate(&m0, &s0, k0) {
                            Ok(t) if t == m1 => {}
                            _ => out.push(format!("degree of x_{v} is not transported along mu_{k0}")),
                        },
                        _ => out.push(format!("x_{v} is not pointed")),
                    }
                }
            }
            (Err(e), _) | (_, Err(e)) => out.push(format!("replay after mu_{k0} failed: {e}")),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Rank-2 seed with one frozen vertex: b_21 = 1 on vertices {1, 2}.
    fn a1_frozen(sign: i64) -> Seed {
        let mut data = SeedData { verts: vec![1, 2], ..Default::default() };
        data.frozen.insert(2);
        data.b.insert((2, 1), sign);
        Seed::new(data).unwrap()
    }

    #[test]
    fn exchange_and_involution() {
        let s = a1_frozen(1);
        let m = s.mutate(1).unwrap();
        let t = s.reference();
        let expect = QLaurent::from_terms(
            t,
            [
                (ExpVec::from_pairs([(1, -1), (2, 1)]), QScalar::one()),
                (ExpVec::from_pairs([(1, -1)]), QScalar::one()),
            ],
        )
        .unwrap();
        assert_eq!(m.var(1).unwrap(), &expect);
        assert_eq!(m.b(2, 1), -1);
        assert_eq!(m.mutate(1).unwrap(), s);
    }

    #[test]
    fn frozen_mutation_rejected() {
        let s = a1_frozen(1);
        assert_eq!(s.mutate(2).err(), Some(QError::Frozen(2)));
    }

    #[test]
    fn tropical_transport_signs() {
        // degree of x'_1 in sd is -f1 (b21 = 1) and f1 in mu_1 sd
        let s = a1_frozen(1);
        let m = ExpVec::from_pairs([(1, -1)]);
        assert_eq!(tropical_mutate(&m, &s, 1).unwrap(), ExpVec::unit(1));
        let s = a1_frozen(-1);
        let m = ExpVec::from_pairs([(1, -1), (2, 1)]);
        assert_eq!(tropical_mutate(&m, &s, 1).unwrap(), ExpVec::unit(1));
    }

    #[test]
    fn mutseq_composition() {
        let a = MutSeq { steps: vec![1], final_perm: [(1, 2), (2, 1)].into_iter().collect() };
        let b = MutSeq::new(vec![2]);
        let c = a.then(&b);
        assert_eq!(c.steps, vec![1, 1]);
        assert_eq!(c.final_perm, a.final_perm);
    }
}
