//! Parsing of command-line literals and JSON job files.

use qclust::{Cartan, ExpVec, QLaurent, QScalar, SignedWord, Torus, Vid};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

pub const MAX_RANK: usize = 8;
pub const MAX_CARTAN_ENTRY: i64 = 4;
pub const MAX_WORD_LEN: usize = 96;
pub const MAX_MUTATIONS: usize = 256;
pub const MAX_TRUNCATION: i64 = 2000;
pub const MAX_LEVEL: usize = 6;
pub const MAX_REPS: usize = 12;
pub const MAX_EXPONENT: i64 = 1000;
pub const MAX_TERMS: usize = 4096;

/// Bad input. Maps to exit code 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputError(pub String);

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

impl From<qclust::QError> for InputError {
    fn from(e: qclust::QError) -> Self {
        InputError(e.to_string())
    }
}

fn bad<T>(msg: impl Into<String>) -> Result<T, InputError> {
    Err(InputError(msg.into()))
}

pub fn parse_int_list(s: &str) -> Result<Vec<i64>, InputError> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|_| InputError(format!("'{t}' is not an integer"))))
        .collect()
}

/// A word literal such as `1,-1,2,-2`, bounded in length.
pub fn parse_word(s: &str) -> Result<SignedWord, InputError> {
    let w = SignedWord::parse(s)?;
    if w.len() > MAX_WORD_LEN {
        return bad(format!("word longer than {MAX_WORD_LEN} letters"));
    }
    Ok(w)
}

pub fn parse_word_for(s: &str, c: &Cartan) -> Result<SignedWord, InputError> {
    let w = parse_word(s)?;
    w.check_support(c)?;
    Ok(w)
}

/// `A2`, `B3`, ... or a dense matrix `2,-1;-1,2` with symmetrizers.
pub fn parse_cartan(name: Option<&str>, matrix: Option<&str>, sym: Option<&str>) -> Result<Cartan, InputError> {
    match (name, matrix) {
        (Some(n), None) => {
            if sym.is_some() {
                return bad("--sym only goes with --cartan-matrix");
            }
            let c = Cartan::of_type(n.trim())?;
            if c.rank() > MAX_RANK {
                return bad(format!("rank above {MAX_RANK}"));
            }
            Ok(c)
        }
        (None, Some(m)) => {
            let rows: Vec<Vec<i64>> = m.split(';').map(parse_int_list).collect::<Result<_, _>>()?;
            let n = rows.len();
            if n == 0 || n > MAX_RANK {
                return bad(format!("Cartan matrix must have between 1 and {MAX_RANK} rows"));
            }
            if rows.iter().flatten().any(|x| x.abs() > MAX_CARTAN_ENTRY) {
                return bad(format!("Cartan entries are bounded by {MAX_CARTAN_ENTRY}"));
            }
            let d = match sym {
                Some(s) => parse_int_list(s)?,
                None => vec![1; n],
            };
            if d.len() != n || d.iter().any(|&x| !(1..=MAX_CARTAN_ENTRY).contains(&x)) {
                return bad("symmetrizers must be one positive entry per row");
            }
            Ok(Cartan::new(rows, d)?)
        }
        (Some(_), Some(_)) => bad("give either --cartan or --cartan-matrix, not both"),
        (None, None) => bad("missing --cartan"),
    }
}

/// One term `c q^{h/2} x^exp` of a Laurent element; `q` counts half-steps.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Term {
    pub q: i64,
    #[serde(default = "one", skip_serializing_if = "is_one")]
    pub c: i64,
    pub exp: BTreeMap<String, i64>,
}

fn one() -> i64 {
    1
}

fn is_one(x: &i64) -> bool {
    *x == 1
}

/// Parses a JSON term list `[{"q": h, "exp": {"v": n, ...}}, ...]`.
pub fn parse_terms(s: &str) -> Result<Vec<Term>, InputError> {
    let terms: Vec<Term> = serde_json::from_str(s).map_err(|e| InputError(format!("term list: {e}")))?;
    check_terms(&terms)?;
    Ok(terms)
}

pub fn check_terms(terms: &[Term]) -> Result<(), InputError> {
    if terms.len() > MAX_TERMS {
        return bad(format!("more than {MAX_TERMS} terms"));
    }
    for t in terms {
        if t.q.abs() > MAX_EXPONENT || t.c.abs() > 1 << 40 {
            return bad("term coefficient or q-power out of range");
        }
        for (v, &x) in &t.exp {
            v.trim().parse::<Vid>().map_err(|_| InputError(format!("vertex '{v}' is not an integer")))?;
            if x.abs() > MAX_EXPONENT {
                return bad(format!("exponent {x} out of range"));
            }
        }
    }
    Ok(())
}

pub fn terms_to_laurent(terms: &[Term], t: &Arc<Torus>) -> Result<QLaurent, InputError> {
    check_terms(terms)?;
    let mut out = Vec::with_capacity(terms.len());
    for term in terms {
        let mut e = ExpVec::new();
        for (v, &x) in &term.exp {
            let v: Vid = v.trim().parse().expect("checked above");
            if t.index(v).is_none() {
                return bad(format!("vertex {v} is not in the seed"));
            }
            e.add_at(v, x);
        }
        out.push((e, QScalar::mono(term.q, term.c)));
    }
    Ok(QLaurent::from_terms(t, out)?)
}

/// A Cartan matrix in a job file: a type name or dense rows.
#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(untagged)]
pub enum CartanField {
    Type(String),
    Matrix(Vec<Vec<i64>>),
}

/// A job file: one command with its arguments as named fields.
#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    /// E.g. `["tsys", "intervals"]` or `["verify", "a2-lambda"]`.
    pub command: Vec<String>,
    pub cartan: Option<CartanField>,
    pub symmetrizers: Option<Vec<i64>>,
    pub word: Option<String>,
    pub coxeter: Option<String>,
    pub prefix: Option<String>,
    pub mutations: Option<Vec<i64>>,
    pub form: Option<String>,
    pub truncation: Option<i64>,
    pub output: Option<String>,
    pub q: Option<i64>,
    pub kind: Option<String>,
    pub level: Option<usize>,
    pub reps: Option<usize>,
    pub ops: Option<Vec<i64>>,
    pub generator: Option<[i64; 2]>,
    pub standard: Option<Vec<u32>>,
    pub order: Option<String>,
    pub element: Option<Vec<Term>>,
}

fn join(v: &[i64]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

impl JobConfig {
    pub fn parse(s: &str) -> Result<JobConfig, InputError> {
        let job: JobConfig = serde_json::from_str(s).map_err(|e| InputError(format!("config: {e}")))?;
        job.check()?;
        Ok(job)
    }

    fn check(&self) -> Result<(), InputError> {
        if self.command.is_empty() || self.command.len() > 2 {
            return bad("command must have one or two words");
        }
        if self.command.iter().any(|s| s.starts_with('-')) {
            return bad("command words cannot be flags");
        }
        if let Some(CartanField::Matrix(m)) = &self.cartan {
            if m.is_empty() || m.len() > MAX_RANK || m.iter().any(|r| r.len() != m.len()) {
                return bad(format!("Cartan matrix must be square of size at most {MAX_RANK}"));
            }
        }
        if let Some(d) = &self.symmetrizers {
            if !matches!(self.cartan, Some(CartanField::Matrix(_))) {
                return bad("symmetrizers need a dense Cartan matrix");
            }
            if d.len() > MAX_RANK {
                return bad("too many symmetrizers");
            }
        }
        if self.mutations.as_ref().is_some_and(|m| m.len() > MAX_MUTATIONS) {
            return bad(format!("more than {MAX_MUTATIONS} mutations"));
        }
        if self.truncation.is_some_and(|t| !(1..=MAX_TRUNCATION).contains(&t)) {
            return bad(format!("truncation must lie in [1, {MAX_TRUNCATION}]"));
        }
        if self.level.is_some_and(|l| l > MAX_LEVEL) {
            return bad(format!("level above {MAX_LEVEL}"));
        }
        if self.reps.is_some_and(|r| r == 0 || r > MAX_REPS) {
            return bad(format!("reps must lie in [1, {MAX_REPS}]"));
        }
        if self.q.is_some_and(|q| q != 1) {
            return bad("q can only be specialized to 1");
        }
        if let Some(t) = &self.element {
            check_terms(t)?;
        }
        Ok(())
    }

    /// The equivalent command line.
    pub fn to_args(&self) -> Vec<String> {
        let mut a: Vec<String> = vec!["qclust".into()];
        if self.q.is_some() {
            a.extend(["--q".into(), "1".into()]);
        }
        if let Some(o) = &self.output {
            a.extend(["--out".into(), o.clone()]);
        }
        a.extend(self.command.iter().cloned());
        let mut opt = |flag: &str, v: Option<String>| {
            if let Some(v) = v {
                a.push(format!("--{flag}"));
                a.push(v);
            }
        };
        match &self.cartan {
            Some(CartanField::Type(t)) => opt("cartan", Some(t.clone())),
            Some(CartanField::Matrix(m)) => {
                opt("cartan-matrix", Some(m.iter().map(|r| join(r)).collect::<Vec<_>>().join(";")))
            }
            None => {}
        }
        opt("sym", self.symmetrizers.as_ref().map(|d| join(d)));
        opt("word", self.word.clone());
        opt("coxeter", self.coxeter.clone());
        opt("prefix", self.prefix.clone());
        opt("form", self.form.clone());
        opt("truncation", self.truncation.map(|t| t.to_string()));
        opt("kind", self.kind.clone());
        opt("level", self.level.map(|t| t.to_string()));
        opt("reps", self.reps.map(|t| t.to_string()));
        opt("ops", self.ops.as_ref().map(|o| join(o)));
        opt("gen", self.generator.map(|g| join(&g)));
        opt("w", self.standard.as_ref().map(|w| w.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")));
        opt("order", self.order.clone());
        opt("element", self.element.as_ref().map(|e| serde_json::to_string(e).expect("terms serialize")));
        for k in self.mutations.iter().flatten() {
            opt("at", Some(k.to_string()));
        }
        a
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_literals() {
        assert_eq!(parse_word("1,-1,2,-2,1,-1").unwrap().letters(), &[1, -1, 2, -2, 1, -1]);
        assert!(parse_word("1,,2").is_err());
        assert!(parse_word("0").is_err());
        let long = vec!["1"; MAX_WORD_LEN + 1].join(",");
        assert!(parse_word(&long).is_err());
        let a2 = Cartan::of_type("A2").unwrap();
        assert!(parse_word_for("1,3", &a2).is_err());
    }

    #[test]
    fn cartan_inputs() {
        assert_eq!(parse_cartan(Some("B3"), None, None).unwrap().rank(), 3);
        let c = parse_cartan(None, Some("2,-1;-2,2"), Some("2,1")).unwrap();
        assert_eq!(c.entry(2, 1), -2);
        assert!(parse_cartan(None, Some("2,-1;-1,2"), Some("1")).is_err());
        assert!(parse_cartan(None, Some("2,-9;-1,2"), None).is_err());
        assert!(parse_cartan(None, None, None).is_err());
    }

    #[test]
    fn term_lists() {
        let t = parse_terms(r#"[{"q": 1, "exp": {"1": -1, "3": 1}}, {"q": -1, "c": 2, "exp": {}}]"#).unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!(t[1].c, 2);
        assert!(parse_terms(r#"[{"q": 1, "exp": {}, "coef": 3}]"#).is_err());
        assert!(parse_terms(r#"[{"q": 1, "exp": {"a": 1}}]"#).is_err());
        let torus = Torus::classical(&[1, 2, 3]);
        let z = terms_to_laurent(&t, &torus).unwrap();
        assert_eq!(z.len(), 2);
        let far = parse_terms(r#"[{"q": 0, "exp": {"9": 1}}]"#).unwrap();
        assert!(terms_to_laurent(&far, &torus).is_err());
    }

    #[test]
    fn job_files() {
        let j = JobConfig::parse(
            r#"{"command": ["tsys", "intervals"], "cartan": "A2", "word": "1,2,1,2,1,2", "q": 1}"#,
        )
        .unwrap();
        assert_eq!(
            j.to_args(),
            ["qclust", "--q", "1", "tsys", "intervals", "--cartan", "A2", "--word", "1,2,1,2,1,2"]
        );
        assert!(JobConfig::parse(r#"{"command": ["seed", "validate"], "colour": 1}"#).is_err());
        assert!(JobConfig::parse(r#"{"command": ["seed", "mutate"], "truncation": -4}"#).is_err());
        assert!(JobConfig::parse(r#"{"command": ["seed", "mutate"], "q": 2}"#).is_err());
        let m = JobConfig::parse(r#"{"command": ["seed", "validate"], "cartan": [[2,-1],[-1,2]], "mutations": [1, 1]}"#)
            .unwrap();
        assert_eq!(&m.to_args()[3..], ["--cartan-matrix", "2,-1;-1,2", "--at", "1", "--at", "1"]);
    }
}
