//! Running a subcommand in-process and reading the JSON report.

use clap::Parser;
use freudenthal::cli::{execute, Cli};

fn main() {
    let cli = Cli::parse_from(["freudenthal", "fts", "classify", "--kind", "ms", "--w-dim", "26", "--samples", "10"]);
    let report = execute(&cli).unwrap();
    println!("{}", serde_json::to_string_pretty(&report.data["classification"]["verdict"]).unwrap());
    println!("exit code {}", report.exit_code());
}
