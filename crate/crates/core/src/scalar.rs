//! The ground ring `Z[q^{±1/2}]`.
//!
//! A [`QScalar`] is a Laurent polynomial in `t = q^{1/2}`; exponents count
//! half-steps, so `q` itself is stored as exponent 2.

use dashu_int::IBig;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

pub type Int = IBig;

#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct QScalar {
    // sorted by exponent, no zero coefficients
    terms: Vec<(i64, Int)>,
}

impl QScalar {
    pub fn zero() -> Self {
        QScalar { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::mono(0, 1)
    }

    /// `c * q^{half/2}`.
    pub fn mono(half: i64, c: impl Into<Int>) -> Self {
        let c = c.into();
        if c.is_zero() {
            return Self::zero();
        }
        QScalar { terms: vec![(half, c)] }
    }

    /// `q^{half/2}`.
    pub fn qpow(half: i64) -> Self {
        Self::mono(half, 1)
    }

    pub fn from_int(c: impl Into<Int>) -> Self {
        Self::mono(0, c)
    }

    /// Builds from arbitrary (exponent, coefficient) pairs, merging repeats.
    pub fn from_terms<I: IntoIterator<Item = (i64, Int)>>(it: I) -> Self {
        let mut v: Vec<(i64, Int)> = it.into_iter().collect();
        v.sort_by_key(|t| t.0);
        let mut out: Vec<(i64, Int)> = Vec::with_capacity(v.len());
        for (e, c) in v {
            match out.last_mut() {
                Some(last) if last.0 == e => last.1 += c,
                _ => out.push((e, c)),
            }
        }
        out.retain(|t| !t.1.is_zero());
        QScalar { terms: out }
    }

    pub fn terms(&self) -> &[(i64, Int)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1 == Int::ONE
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Returns `(half, sign)` when the scalar is `±q^{half/2}`.
    pub fn as_unit(&self) -> Option<(i64, i8)> {
        if self.terms.len() != 1 {
            return None;
        }
        let (e, c) = &self.terms[0];
        if *c == Int::ONE {
            Some((*e, 1))
        } else if *c == Int::NEG_ONE {
            Some((*e, -1))
        } else {
            None
        }
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.first().map(|t| t.0)
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.last().map(|t| t.0)
    }

    pub fn coeff(&self, half: i64) -> Int {
        match self.terms.binary_search_by_key(&half, |t| t.0) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => Int::ZERO,
        }
    }

    /// Multiplies by `q^{half/2}`.
    pub fn shift(&self, half: i64) -> Self {
        QScalar {
            terms: self.terms.iter().map(|(e, c)| (e + half, c.clone())).collect(),
        }
    }

    pub fn shift_in_place(&mut self, half: i64) {
        for t in &mut self.terms {
            t.0 += half;
        }
    }

    /// `q^{1/2} -> q^{-1/2}`.
    pub fn bar(&self) -> Self {
        let mut terms: Vec<(i64, Int)> = self.terms.iter().map(|(e, c)| (-e, c.clone())).collect();
        terms.reverse();
        QScalar { terms }
    }

    /// Value at `q = 1`.
    pub fn at_one(&self) -> Int {
        let mut s = Int::ZERO;
        for (_, c) in &self.terms {
            s += c;
        }
        s
    }

    pub fn scale_int(&self, k: &Int) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        QScalar {
            terms: self.terms.iter().map(|(e, c)| (*e, c * k)).collect(),
        }
    }

    /// True when every exponent is even, i.e. the scalar lies in `Z[q^{±1}]`.
    pub fn is_integral_in_q(&self) -> bool {
        self.terms.iter().all(|t| t.0 % 2 == 0)
    }

    /// Membership in `q^{-1/2} Z[q^{-1/2}]`.
    pub fn in_negative_ideal(&self) -> bool {
        self.terms.iter().all(|t| t.0 < 0)
    }

    /// Coefficients all nonnegative.
    pub fn is_nonnegative(&self) -> bool {
        self.terms.iter().all(|t| t.1 > Int::ZERO)
    }

    fn merge(&self, other: &Self, negate: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b = &other.terms;
        while i < a.len() || j < b.len() {
            let ord = if i == a.len() {
                Ordering::Greater
            } else if j == b.len() {
                Ordering::Less
            } else {
                a[i].0.cmp(&b[j].0)
            };
            match ord {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    let c = if negate { -b[j].1.clone() } else { b[j].1.clone() };
                    out.push((b[j].0, c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        QScalar { terms: out }
    }

    /// Exact quotient `self / d` in `Z[q^{±1/2}]`, or `None`.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        if d.terms.len() == 1 {
            let (de, dc) = &d.terms[0];
            let mut terms = Vec::with_capacity(self.terms.len());
            for (e, c) in &self.terms {
                if !(c % dc).is_zero() {
                    return None;
                }
                terms.push((e - de, c / dc));
            }
            return Some(QScalar { terms });
        }
        let (dlo, dhi) = (d.min_exp().unwrap(), d.max_exp().unwrap());
        let lo = self.min_exp().unwrap() - dlo;
        let dlead = &d.terms.last().unwrap().1;
        let mut rem = self.clone();
        let mut q = Vec::new();
        while let Some((e, c)) = rem.terms.last().cloned() {
            let qe = e - dhi;
            if qe < lo || !(&c % dlead).is_zero() {
                return None;
            }
            let qc = &c / dlead;
            rem -= &d.shift(qe).scale_int(&qc);
            q.push((qe, qc));
        }
        q.reverse();
        Some(QScalar { terms: q })
    }

    /// Pseudo-GCD as polynomials in `q^{1/2}`: primitive, positive leading
    /// coefficient, normalized to minimal exponent 0.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.normalized_primitive();
        }
        if other.is_zero() {
            return self.normalized_primitive();
        }
        let ca = self.content();
        let cb = other.content();
        let c = gcd_int(&ca, &cb);
        let mut a = self.normalized_primitive();
        let mut b = other.normalized_primitive();
        if a.max_exp() < b.max_exp() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.normalized_primitive();
        }
        a.scale_int(&c)
    }

    fn content(&self) -> Int {
        let mut g = Int::ZERO;
        for (_, c) in &self.terms {
            g = gcd_int(&g, c);
        }
        g
    }

    fn normalized_primitive(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let g = self.content();
        let lo = self.min_exp().unwrap();
        let sign = if self.terms.last().unwrap().1 < Int::ZERO { -Int::ONE } else { Int::ONE };
        QScalar {
            terms: self.terms.iter().map(|(e, c)| (e - lo, c / &g * &sign)).collect(),
        }
    }

    // both operands polynomials with min exponent 0
    fn pseudo_rem(&self, d: &Self) -> Self {
        let dd = d.max_exp().unwrap();
        let lc = d.terms.last().unwrap().1.clone();
        let mut r = self.clone();
        while let Some(re) = r.max_exp() {
            if re < dd {
                break;
            }
            let rc = r.terms.last().unwrap().1.clone();
            r = r.scale_int(&lc);
            r -= &d.shift(re - dd).scale_int(&rc);
        }
        r
    }

    /// Sign of the leading (highest exponent) coefficient.
    pub fn leading_sign(&self) -> i8 {
        match self.terms.last() {
            None => 0,
            Some((_, c)) if *c > Int::ZERO => 1,
            _ => -1,
        }
    }
}

pub fn gcd_int(a: &Int, b: &Int) -> Int {
    let mut a = if *a < Int::ZERO { -a.clone() } else { a.clone() };
    let mut b = if *b < Int::ZERO { -b.clone() } else { b.clone() };
    while !b.is_zero() {
        let r = &a % &b;
        a = b;
        b = r;
    }
    a
}

/// Quantum integer `[n]_v = (v^n - v^{-n}) / (v - v^{-1})` with `v = q^{half/2}`.
pub fn qint(n: u32, half: i64) -> QScalar {
    let n = n as i64;
    QScalar::from_terms((0..n).map(|i| ((n - 1 - 2 * i) * half, Int::ONE)))
}

/// `[n]_v!`.
pub fn qfactorial(n: u32, half: i64) -> QScalar {
    let mut acc = QScalar::one();
    for k in 1..=n {
        acc = &acc * &qint(k, half);
    }
    acc
}

impl Add<&QScalar> for &QScalar {
    type Output = QScalar;
    fn add(self, o: &QScalar) -> QScalar {
        self.merge(o, false)
    }
}

impl Sub<&QScalar> for &QScalar {
    type Output = QScalar;
    fn sub(self, o: &QScalar) -> QScalar {
        self.merge(o, true)
    }
}

impl AddAssign<&QScalar> for QScalar {
    fn add_assign(&mut self, o: &QScalar) {
        if o.terms.len() == 1 {
            let (e, c) = &o.terms[0];
            match self.terms.binary_search_by_key(e, |t| t.0) {
                Ok(i) => {
                    self.terms[i].1 += c;
                    if self.terms[i].1.is_zero() {
                        self.terms.remove(i);
                    }
                }
                Err(i) => self.terms.insert(i, (*e, c.clone())),
            }
            return;
        }
        *self = self.merge(o, false);
    }
}

impl SubAssign<&QScalar> for QScalar {
    fn sub_assign(&mut self, o: &QScalar) {
        *self = self.merge(o, true);
    }
}

impl Neg for &QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        QScalar {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

impl Neg for QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        -&self
    }
}

impl Mul<&QScalar> for &QScalar {
    type Output = QScalar;
    fn mul(self, o: &QScalar) -> QScalar {
        if self.is_zero() || o.is_zero() {
            return QScalar::zero();
        }
        if self.terms.len() == 1 || o.terms.len() == 1 {
            let (s, m) = if self.terms.len() == 1 { (o, &self.terms[0]) } else { (self, &o.terms[0]) };
            return QScalar {
                terms: s.terms.iter().map(|(e, c)| (e + m.0, c * &m.1)).collect(),
            };
        }
        let lo = self.terms[0].0 + o.terms[0].0;
        let hi = self.terms.last().unwrap().0 + o.terms.last().unwrap().0;
        let mut acc = vec![Int::ZERO; (hi - lo + 1) as usize];
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                acc[(e1 + e2 - lo) as usize] += c1 * c2;
            }
        }
        QScalar {
            terms: acc
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (lo + i as i64, c))
                .collect(),
        }
    }
}

macro_rules! owned_binop {
    ($tr:ident, $f:ident) => {
        impl $tr<QScalar> for QScalar {
            type Output = QScalar;
            fn $f(self, o: QScalar) -> QScalar {
                (&self).$f(&o)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl From<i64> for QScalar {
    fn from(c: i64) -> Self {
        QScalar::from_int(c)
    }
}

fn fmt_qpow(half: i64) -> String {
    if half % 2 == 0 {
        match half / 2 {
            1 => "q".to_string(),
            k => format!("q^{k}"),
        }
    } else {
        format!("q^({half}/2)")
    }
}

impl fmt::Display for QScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let neg = *c < Int::ZERO;
            let abs = if neg { -c.clone() } else { c.clone() };
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match (*e == 0, abs == Int::ONE) {
                (true, _) => write!(f, "{abs}")?,
                (false, true) => write!(f, "{}", fmt_qpow(*e))?,
                (false, false) => write!(f, "{abs}*{}", fmt_qpow(*e))?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for QScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QScalar({self})")
    }
}
