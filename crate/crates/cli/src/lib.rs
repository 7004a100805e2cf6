//! Command-line front end for the `qclust` engine.
//!
//! Exit codes: 0 success, 1 a verification failed, 2 bad input.

pub mod commands;
pub mod input;
pub mod render;
pub mod suites;

use clap::Parser;
use commands::{Cli, Command};

/// Outcome of one invocation.
pub struct RunOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn fail(code: i32, msg: String) -> RunOutput {
    RunOutput { code, stdout: String::new(), stderr: msg }
}

pub fn run<I, T>(args: I) -> RunOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                RunOutput { code, stdout: text, stderr: String::new() }
            } else {
                fail(code, text)
            };
        }
    };
    if let Command::Job { path } = &cli.cmd {
        let text = match std::fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) => return fail(2, format!("error: cannot read {path}: {e}\n")),
        };
        let job = match input::JobConfig::parse(&text) {
            Ok(j) => j,
            Err(e) => return fail(2, format!("error: {e}\n")),
        };
        let argv = job.to_args();
        if matches!(argv.get(1).map(String::as_str), Some("job")) {
            return fail(2, "error: job files cannot be nested\n".into());
        }
        return run(argv);
    }
    let rep = match commands::dispatch(&cli) {
        Ok(r) => r,
        Err(e) => return fail(2, format!("error: {e}\n")),
    };
    if let Some(path) = &cli.out {
        if let Err(e) = std::fs::write(path, &rep.text) {
            return fail(2, format!("error: cannot write {path}: {e}\n"));
        }
    }
    RunOutput { code: if rep.ok { 0 } else { 1 }, stdout: rep.text, stderr: String::new() }
}
