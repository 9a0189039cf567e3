use std::process::ExitCode;

use clap::{Parser, Subcommand};
use seventerm::problem::Checks;
use seventerm::report::GroupReport;
use seventerm::{run, InputError, ProblemSpec};
use seventerm_core::fixtures;
use seventerm_core::oracle::Oracle;

/// Seven-term exact sequences of finite group extensions, checked against
/// the spectral sequence.
#[derive(Parser)]
#[command(name = "seventerm", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the sequence for a problem and verify it.
    Run {
        /// A problem file or the name of a built-in fixture.
        #[arg(long)]
        input: String,
        #[arg(long, value_enum)]
        checks: Option<Checks>,
        /// Where to write the JSON report.
        #[arg(long)]
        report: Option<String>,
        #[arg(long)]
        degree_max: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// Record per-stage timings in the report.
        #[arg(long)]
        timing: bool,
    },
    /// List the built-in fixtures.
    ListFixtures,
    /// Print one E2 term of the spectral sequence.
    Oracle {
        #[arg(long)]
        input: String,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
    },
}

const INPUT_ERROR: u8 = 2;

fn input_error(e: &InputError) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(INPUT_ERROR)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { INPUT_ERROR } else { 0 });
        }
    };
    match cli.command {
        Command::ListFixtures => {
            for f in fixtures::all() {
                println!("{:<12} {}", f.name, f.summary);
            }
            ExitCode::SUCCESS
        }
        Command::Run { input, checks, report, degree_max, seed, timing } => {
            let mut spec = match ProblemSpec::load(&input) {
                Ok(s) => s,
                Err(e) => return input_error(&e),
            };
            let o = &mut spec.options;
            o.checks = checks.unwrap_or(o.checks);
            o.degree_max = degree_max.unwrap_or(o.degree_max);
            o.seed = seed.unwrap_or(o.seed);
            o.timing |= timing;
            let report_path = report.or_else(|| o.report.clone());
            let problem = match spec.validate() {
                Ok(p) => p,
                Err(e) => return input_error(&e),
            };
            let r = run(&spec, &problem);
            print!("{}", r.summary());
            if let Some(path) = &report_path {
                if let Err(e) = std::fs::write(path, r.to_json()) {
                    eprintln!("error: cannot write {path}: {e}");
                    return ExitCode::from(INPUT_ERROR);
                }
            }
            if r.flagged {
                ExitCode::FAILURE
            } else {
                ExitCode::SUCCESS
            }
        }
        Command::Oracle { input, p, q } => {
            let problem = match ProblemSpec::load(&input).and_then(|s| s.validate()) {
                Ok(p) => p,
                Err(e) => return input_error(&e),
            };
            let page = Oracle::new(&problem.ext, &problem.module).and_then(|o| o.page(p, q));
            match page {
                Ok(page) => {
                    let g = GroupReport::new(format!("E2^{{{p},{q}}}"), page.group());
                    println!("{} = {} (order {})", g.label, g.describe(), page.order());
                    ExitCode::SUCCESS
                }
                Err(seventerm_core::Error::UnsupportedBidegree { .. }) => {
                    eprintln!("error: E2^{{{p},{q}}} is outside the supported range p + q <= 3");
                    ExitCode::from(INPUT_ERROR)
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::FAILURE
                }
            }
        }
    }
}
