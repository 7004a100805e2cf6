#![no_main]

use libfuzzer_sys::fuzz_target;
use qclust_cli::input::JobConfig;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(j) = JobConfig::parse(s) {
        let args = j.to_args();
        assert_eq!(args[0], "qclust");
    }
});
