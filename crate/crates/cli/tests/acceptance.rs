//! One line per acceptance criterion. A criterion passes when every check
//! in its suite holds and the suite finishes inside its time budget.

use qclust_cli::suites::SUITES;
use std::time::Instant;

fn main() {
    let mut failed = Vec::new();
    for s in SUITES.iter() {
        let t = Instant::now();
        let r = s.run();
        let el = t.elapsed();
        let ok = r.pass && el <= s.budget;
        println!(
            "criterion {} [{}]: {} ({} checks, {} failed, {} ms, budget {} ms){}",
            s.criterion,
            s.name,
            if ok { "PASS" } else { "FAIL" },
            r.checks,
            r.failed.len(),
            el.as_millis(),
            s.budget.as_millis(),
            r.error.as_deref().map(|e| format!(" error: {e}")).unwrap_or_default()
        );
        for c in &r.failed {
            println!("    {}: {}", c.name, c.detail);
        }
        if !ok {
            failed.push(s.criterion);
        }
    }
    if !failed.is_empty() {
        eprintln!("failing criteria: {failed:?}");
        std::process::exit(1);
    }
}
