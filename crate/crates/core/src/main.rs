use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use cross_spec::cli::{self, Cli};

fn main() -> ExitCode {
    let args = Cli::parse();
    if let Some(warning) = cli::init_threads() {
        eprintln!("warning: {warning}");
    }
    let out = cli::run(args);
    print!("{}", out.stdout);
    let _ = std::io::stdout().flush();
    if !out.stderr.is_empty() {
        eprintln!("{}", out.stderr.trim_end());
    }
    ExitCode::from(out.code as u8)
}
