//! Replays the fuzz corpus, plus every truncation of each seed, through the
//! parsers the fuzz targets drive. None of them may panic.

use qclust::{LambdaForm, SignedWord, Torus};
use qclust_cli::input::{parse_terms, parse_word, terms_to_laurent, JobConfig};
use std::path::Path;

fn seeds(target: &str) -> Vec<String> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut v: Vec<String> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| std::fs::read_to_string(e.unwrap().path()).unwrap())
        .collect();
    v.sort();
    assert!(!v.is_empty());
    v
}

fn variants(s: &str) -> Vec<String> {
    let mut out = vec![s.to_string()];
    for (i, _) in s.char_indices() {
        out.push(s[..i].to_string());
        out.push(format!("{}{}", &s[..i], &s[i..].chars().skip(1).collect::<String>()));
    }
    out
}

#[test]
fn word_literals() {
    for s in seeds("word_literal").iter().flat_map(|s| variants(s)) {
        if let Ok(w) = parse_word(&s) {
            assert_eq!(SignedWord::parse(&w.to_string()).unwrap(), w);
        }
    }
}

#[test]
fn job_configs() {
    for s in seeds("job_config").iter().flat_map(|s| variants(s)) {
        if let Ok(j) = JobConfig::parse(&s) {
            assert_eq!(j.to_args()[0], "qclust");
        }
    }
}

#[test]
fn term_lists() {
    let mut lam = LambdaForm::new();
    lam.set(1, 2, 1);
    lam.set(2, 3, -1);
    let t = Torus::new(&[1, 2, 3], &lam);
    let mut parsed = 0;
    for s in seeds("term_list").iter().flat_map(|s| variants(s)) {
        if let Ok(terms) = parse_terms(&s) {
            parsed += 1;
            let _ = terms_to_laurent(&terms, &t);
        }
    }
    assert!(parsed >= 2);
}
