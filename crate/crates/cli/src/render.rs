//! Deterministic text output. Terms are listed by increasing exponent
//! vector; vertex `v` prints as `x{v}` (or `x[v]` when negative).

use qclust::scalar::Int;
use qclust::{ExpVec, QLaurent, QScalar, Seed, Vid};
use std::fmt::Write;

pub fn var_name(v: Vid) -> String {
    if v < 0 {
        format!("x[{v}]")
    } else {
        format!("x{v}")
    }
}

pub fn monomial(e: &ExpVec) -> String {
    e.iter()
        .map(|(v, x)| if x == 1 { var_name(v) } else { format!("{}^{x}", var_name(v)) })
        .collect::<Vec<_>>()
        .join("*")
}

fn join_terms(terms: Vec<(bool, String)>) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut s = String::new();
    for (i, (neg, body)) in terms.into_iter().enumerate() {
        match (i, neg) {
            (0, true) => s.push('-'),
            (0, false) => {}
            (_, true) => s.push_str(" - "),
            (_, false) => s.push_str(" + "),
        }
        s.push_str(&body);
    }
    s
}

fn int_term(c: &Int, mono: &str) -> (bool, String) {
    let neg = *c < Int::ZERO;
    let a = if neg { -c.clone() } else { c.clone() };
    let body = match (mono.is_empty(), a == Int::ONE) {
        (true, _) => a.to_string(),
        (false, true) => mono.to_string(),
        (false, false) => format!("{a}*{mono}"),
    };
    (neg, body)
}

/// `z` with `q` kept, or specialized at `q = 1` when `q1`.
pub fn laurent(z: &QLaurent, q1: bool) -> String {
    if q1 {
        let terms = z.at_q1().iter().map(|(e, c)| int_term(c, &monomial(e))).collect();
        return join_terms(terms);
    }
    let mut terms = z.terms();
    terms.sort_by(|a, b| a.0.cmp(&b.0));
    let out = terms
        .iter()
        .map(|(e, c)| {
            let m = monomial(e);
            match c.as_unit() {
                Some((h, s)) => {
                    let q = if h == 0 { String::new() } else { qpow(h) };
                    let body = match (q.is_empty(), m.is_empty()) {
                        (true, true) => "1".to_string(),
                        (true, false) => m,
                        (false, true) => q,
                        (false, false) => format!("{q}*{m}"),
                    };
                    (s < 0, body)
                }
                None if m.is_empty() => (false, format!("({c})")),
                None => (false, format!("({c})*{m}")),
            }
        })
        .collect();
    join_terms(out)
}

pub fn qpow(half: i64) -> String {
    if half % 2 == 0 {
        match half / 2 {
            1 => "q".into(),
            k => format!("q^{k}"),
        }
    } else {
        format!("q^({half}/2)")
    }
}

pub fn scalar(c: &QScalar, q1: bool) -> String {
    if q1 {
        c.at_one().to_string()
    } else {
        c.to_string()
    }
}

pub fn matrix(rows: &[Vec<i64>]) -> String {
    let w = rows.iter().flatten().map(|x| x.to_string().len()).max().unwrap_or(1);
    let mut s = String::new();
    for r in rows {
        let cells: Vec<String> = r.iter().map(|x| format!("{x:>w$}")).collect();
        let _ = writeln!(s, "  [{}]", cells.join(" "));
    }
    s
}

/// Vertices, `B̃`, `Λ` (if any) and the cluster variables of `sd`.
pub fn seed(sd: &Seed, q1: bool) -> String {
    let mut s = String::new();
    let verts = sd.verts();
    let names: Vec<String> = verts
        .iter()
        .map(|&v| {
            let mut n = v.to_string();
            if let Some(l) = sd.label(v) {
                let _ = write!(n, "={l}");
            }
            if sd.is_frozen(v) {
                n.push('*');
            }
            n
        })
        .collect();
    let _ = writeln!(s, "vertices (* frozen): {}", names.join(" "));
    let uf = sd.unfrozen();
    let _ = writeln!(
        s,
        "B~ (rows {}; columns {}):",
        verts.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","),
        uf.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
    );
    s.push_str(&matrix(&sd.btilde()));
    let d: Vec<String> = verts.iter().map(|&v| sd.d(v).to_string()).collect();
    let _ = writeln!(s, "d: {}", d.join(","));
    if let Some(lam) = sd.lambda_form() {
        let _ = writeln!(s, "Lambda:");
        s.push_str(&matrix(&lam.dense(verts)));
    }
    for (v, z) in sd.vars() {
        let _ = writeln!(s, "{}(sd) = {}", var_name(v), laurent(z, q1));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use qclust::{LambdaForm, Torus};

    #[test]
    fn laurent_text() {
        let mut l = LambdaForm::new();
        l.set(1, 2, 1);
        let t = Torus::new(&[1, 2], &l);
        let x1 = QLaurent::var(&t, 1).unwrap();
        let x2 = QLaurent::var(&t, 2).unwrap();
        let z = &(&x1 * &x2) + &x2.scale(&QScalar::mono(-2, -3));
        assert_eq!(laurent(&z, false), "q^(1/2)*x1*x2 + (-3*q^-1)*x2");
        assert_eq!(laurent(&z, true), "x1*x2 - 3*x2");
        let inv = qclust::qtorus::monomial_inverse(&x1).unwrap();
        assert_eq!(laurent(&inv, true), "x1^-1");
        assert_eq!(laurent(&QLaurent::zero(&t), false), "0");
        assert_eq!(laurent(&(&x1 - &x1.shift_q(2)), true), "0");
        assert_eq!(var_name(-3), "x[-3]");
    }
}
