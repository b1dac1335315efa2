mod args;
mod cache;
mod commands;
mod engine;
mod record;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};

/// Errors that stop a command before it produces a report.
#[derive(Debug)]
pub enum CliError {
    Input(String),
}

impl From<qhom::Error> for CliError {
    fn from(e: qhom::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

/// Rendered output and the exit status it implies.
pub struct Outcome {
    pub text: String,
    pub code: u8,
}

impl Outcome {
    pub fn ok(text: String) -> Self {
        Outcome { text, code: 0 }
    }
}

fn thread_pool(jobs: Option<usize>) -> Result<rayon::ThreadPool, CliError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = jobs {
        if n == 0 {
            return Err(CliError::Input("--jobs must be at least 1".into()));
        }
        builder = builder.num_threads(n);
    }
    builder.build().map_err(|e| CliError::Input(e.to_string()))
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    let jobs = match &cli.command {
        Command::Validate { .. } => None,
        Command::Homology { run, .. }
        | Command::Verify { run, .. }
        | Command::Theorem { run, .. }
        | Command::Multiterm { run, .. } => run.jobs,
    };
    thread_pool(jobs)?.install(|| match cli.command {
        Command::Validate {
            source,
            inner_group,
            format,
        } => commands::validate(&source, inner_group, format),
        Command::Homology {
            sources,
            theory,
            reduced,
            degrees,
            run,
        } => commands::homology(&sources, &theory, reduced, degrees, &run),
        Command::Verify {
            source,
            identity,
            degree,
            j,
            expect_failure,
            sample,
            run,
        } => commands::verify(&source, identity, degree, j, expect_failure, sample, &run),
        Command::Theorem {
            sources,
            theory,
            degrees,
            run,
        } => commands::theorem(&sources, theory, degrees, &run),
        Command::Multiterm {
            ops,
            coeffs,
            degrees,
            run,
        } => commands::multiterm(&ops, &coeffs, degrees, &run),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(outcome) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(outcome.text.as_bytes());
            let _ = stdout.flush();
            ExitCode::from(outcome.code)
        }
        Err(CliError::Input(message)) => {
            eprintln!("qhom: {message}");
            ExitCode::from(2)
        }
    }
}
