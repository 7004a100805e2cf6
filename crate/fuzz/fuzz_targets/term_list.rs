#![no_main]

use libfuzzer_sys::fuzz_target;
use qclust::{LambdaForm, Torus};
use qclust_cli::input::{parse_terms, terms_to_laurent};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    let Ok(terms) = parse_terms(s) else { return };
    let mut lam = LambdaForm::new();
    lam.set(1, 2, 1);
    lam.set(2, 3, -1);
    let t = Torus::new(&[1, 2, 3], &lam);
    let _ = terms_to_laurent(&terms, &t);
});
