#![no_main]

use libfuzzer_sys::fuzz_target;
use qclust::SignedWord;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(w) = qclust_cli::input::parse_word(s) {
        // printing and re-parsing a word is lossless
        let again = SignedWord::parse(&w.to_string()).expect("printed word parses");
        assert_eq!(again, w);
    }
});
