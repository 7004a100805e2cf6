//! Finite root systems: reflections, positive roots, `ν`, the Coxeter
//! number and the bijection `φ^ξ : J_Z(ξ) → Φ⁺ × Z`.

use crate::cartan::Cartan;
use crate::error::{QError, QResult};
use crate::words::SignedWord;
use std::collections::{BTreeSet, VecDeque};

pub use crate::forms::HeightFn;

/// Coordinates in the basis of simple roots.
pub type RootVec = Vec<i64>;

pub fn simple_root(c: &Cartan, a: i64) -> RootVec {
    let mut r = vec![0; c.rank()];
    r[(a - 1) as usize] = 1;
    r
}

pub fn is_positive(r: &[i64]) -> bool {
    r.iter().all(|&x| x >= 0) && r.iter().any(|&x| x > 0)
}

pub fn negate(r: &[i64]) -> RootVec {
    r.iter().map(|x| -x).collect()
}

/// `s_a(r) = r - (Σ_b C_ab r_b) α_a`.
pub fn reflect(a: i64, r: &[i64], c: &Cartan) -> RootVec {
    let ai = (a - 1) as usize;
    let k: i64 = r.iter().enumerate().map(|(b, &x)| c.entry(a, b as i64 + 1) * x).sum();
    let mut out = r.to_vec();
    out[ai] -= k;
    out
}

/// `s_{w_1} s_{w_2} ⋯ s_{w_n} r`.
pub fn apply_word(word: &[i64], r: &[i64], c: &Cartan) -> RootVec {
    word.iter().rev().fold(r.to_vec(), |acc, &a| reflect(a, &acc, c))
}

fn require_finite(c: &Cartan) -> QResult<()> {
    if c.is_finite_type() {
        Ok(())
    } else {
        Err(QError::Hypothesis("Cartan matrix is not of finite type".into()))
    }
}

/// `Φ⁺`, sorted by height and then lexicographically.
pub fn positive_roots(c: &Cartan) -> QResult<Vec<RootVec>> {
    require_finite(c)?;
    let mut seen: BTreeSet<RootVec> = BTreeSet::new();
    let mut queue: VecDeque<RootVec> = c.letters().map(|a| simple_root(c, a)).collect();
    while let Some(r) = queue.pop_front() {
        if !seen.insert(r.clone()) {
            continue;
        }
        for a in c.letters() {
            let s = reflect(a, &r, c);
            if is_positive(&s) && !seen.contains(&s) {
                queue.push_back(s);
            }
        }
    }
    let mut out: Vec<RootVec> = seen.into_iter().collect();
    out.sort_by_key(|r| (r.iter().sum::<i64>(), r.clone()));
    Ok(out)
}

/// A reduced word for `w_0`, found by extending `w` on the right by any
/// `s_a` with `w(α_a) > 0` until none is left.
pub fn longest_word(c: &Cartan) -> QResult<Vec<i64>> {
    require_finite(c)?;
    let mut w: Vec<i64> = Vec::new();
    'outer: loop {
        for a in c.letters() {
            if is_positive(&apply_word(&w, &simple_root(c, a), c)) {
                w.push(a);
                continue 'outer;
            }
        }
        return Ok(w);
    }
}

/// `ν` with `-w_0 α_a = α_{ν(a)}` (as `nu[a-1]`) and `h = 2|Φ⁺| / |J|`.
pub fn nu_and_h(c: &Cartan) -> QResult<(Vec<i64>, i64)> {
    let w0 = longest_word(c)?;
    let mut nu = Vec::with_capacity(c.rank());
    for a in c.letters() {
        let r = negate(&apply_word(&w0, &simple_root(c, a), c));
        let b = c
            .letters()
            .find(|&b| r == simple_root(c, b))
            .ok_or_else(|| QError::Invalid("-w0 does not permute the simple roots".into()))?;
        nu.push(b);
    }
    let np = positive_roots(c)?.len() as i64;
    Ok((nu, 2 * np / c.rank() as i64))
}

/// `τ γ = s_{c_1} ⋯ s_{c_n} γ`, or `τ^{-1} γ` when `inverse`.
pub fn tau(cox: &SignedWord, r: &[i64], c: &Cartan, inverse: bool) -> RootVec {
    if inverse {
        let rev: Vec<i64> = cox.letters().iter().rev().copied().collect();
        apply_word(&rev, r, c)
    } else {
        apply_word(cox.letters(), r, c)
    }
}

/// `φ^ξ(a, p)`.
///
/// Starts from `φ^ξ(c_k, ξ_{c_k}) = (s_{c_1} ⋯ s_{c_{k-1}} α_{c_k}, 0)` and
/// moves `p` by steps of two: going up applies `τ^{-1}`, going down applies
/// `τ`, and a root leaving `Φ⁺` is negated while the level moves by one.
pub fn phi_xi(a: i64, p: i64, xi: &HeightFn, cox: &SignedWord, c: &Cartan) -> QResult<(RootVec, i64)> {
    require_finite(c)?;
    if !cox.is_coxeter_for(c) {
        return Err(QError::Invalid(format!("{cox} is not a Coxeter word")));
    }
    if a < 1 || a > c.rank() as i64 {
        return Err(QError::Invalid(format!("letter {a} out of range")));
    }
    let p0 = xi.get(a);
    if (p - p0).rem_euclid(2) != 0 {
        return Err(QError::Invalid(format!("({a}, {p}) has the wrong parity for xi_{a} = {p0}")));
    }
    let k = cox.letters().iter().position(|&x| x == a).unwrap();
    let mut gamma = apply_word(&cox.letters()[..k], &simple_root(c, a), c);
    let mut m = 0i64;
    let steps = (p - p0) / 2;
    let up = steps > 0;
    for _ in 0..steps.abs() {
        let g = tau(cox, &gamma, c, up);
        if is_positive(&g) {
            gamma = g;
        } else {
            gamma = negate(&g);
            m += if up { 1 } else { -1 };
        }
    }
    Ok((gamma, m))
}

/// The node `(a, ξ_a - 2t)` of position `k` in a power of `cox`, where `t`
/// counts earlier occurrences of `a`.
pub fn node_of_position(w: &SignedWord, k: usize, xi: &HeightFn) -> (i64, i64) {
    let a = w.abs(k);
    (a, xi.get(a) - 2 * w.occurrence(k) as i64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> Cartan {
        Cartan::of_type("A2").unwrap()
    }

    #[test]
    fn reflections() {
        let c = a2();
        assert_eq!(reflect(1, &[1, 0], &c), vec![-1, 0]);
        assert_eq!(reflect(1, &[0, 1], &c), vec![1, 1]);
        assert_eq!(apply_word(&[2, 1], &[0, 1], &c), vec![1, 0]);
    }

    #[test]
    fn root_counts_and_nu() {
        for (ty, np, nu, h) in [
            ("A1", 1, vec![1], 2),
            ("A2", 3, vec![2, 1], 3),
            ("A3", 6, vec![3, 2, 1], 4),
            ("B3", 9, vec![1, 2, 3], 6),
            ("G2", 6, vec![1, 2], 6),
            ("D4", 12, vec![1, 2, 3, 4], 6),
        ] {
            let c = Cartan::of_type(ty).unwrap();
            assert_eq!(positive_roots(&c).unwrap().len(), np, "{ty}");
            assert_eq!(longest_word(&c).unwrap().len(), np, "{ty}");
            assert_eq!(nu_and_h(&c).unwrap(), (nu, h), "{ty}");
        }
    }

    #[test]
    fn affine_rejected() {
        let c = Cartan::new(vec![vec![2, -2], vec![-2, 2]], vec![1, 1]).unwrap();
        assert!(positive_roots(&c).is_err());
        assert!(nu_and_h(&c).is_err());
    }

    #[test]
    fn a2_root_nodes() {
        let c = a2();
        let cox = SignedWord::parse("1,2").unwrap();
        let xi = HeightFn::from_coxeter(&c, &cox).unwrap();
        let w = cox.repeat(3);
        let want = [
            (vec![1, 0], 0),
            (vec![1, 1], 0),
            (vec![0, 1], 0),
            (vec![1, 0], -1),
            (vec![1, 1], -1),
            (vec![0, 1], -1),
        ];
        for k in 1..=6 {
            let (a, p) = node_of_position(&w, k, &xi);
            assert_eq!(phi_xi(a, p, &xi, &cox, &c).unwrap(), want[k - 1], "position {k}");
        }
        assert!(phi_xi(1, 1, &xi, &cox, &c).is_err());
    }

    #[test]
    fn shift_by_coxeter_number() {
        for (ty, cw) in [("A2", "1,2"), ("A3", "2,1,3"), ("B3", "2,1,3"), ("G2", "2,1")] {
            let c = Cartan::of_type(ty).unwrap();
            let cox = SignedWord::parse(cw).unwrap();
            let xi = HeightFn::from_coxeter(&c, &cox).unwrap();
            let (nu, h) = nu_and_h(&c).unwrap();
            for b in c.letters() {
                for p in (-12..=12).filter(|p| (p - xi.get(b)).rem_euclid(2) == 0) {
                    let (g, k) = phi_xi(b, p, &xi, &cox, &c).unwrap();
                    let mut bi = b;
                    for i in 1..=2 {
                        bi = nu[(bi - 1) as usize];
                        let (g2, k2) = phi_xi(bi, p + i * h, &xi, &cox, &c).unwrap();
                        assert_eq!((g2, k2), (g.clone(), k + i), "{ty} b={b} p={p} i={i}");
                    }
                }
            }
        }
    }

    #[test]
    fn phi_is_injective_on_windows() {
        for (ty, cw) in [("A2", "1,2"), ("B3", "2,1,3"), ("A3", "1,2,3")] {
            let c = Cartan::of_type(ty).unwrap();
            let cox = SignedWord::parse(cw).unwrap();
            let xi = HeightFn::from_coxeter(&c, &cox).unwrap();
            let (_, h) = nu_and_h(&c).unwrap();
            let mut seen = BTreeSet::new();
            let mut count = 0;
            for b in c.letters() {
                for p in (-3 * h..3 * h).filter(|p| (p - xi.get(b)).rem_euclid(2) == 0) {
                    let (g, k) = phi_xi(b, p, &xi, &cox, &c).unwrap();
                    assert!(is_positive(&g));
                    assert!(seen.insert((g, k)));
                    count += 1;
                }
            }
            // 3h nodes per letter, so six levels' worth of Φ⁺
            let np = positive_roots(&c).unwrap().len();
            assert_eq!(count, 6 * np);
        }
    }
}
