mod commands;
mod config;
mod report;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use commands::Outcome;
use report::{render, Format, RunReport};

#[derive(Parser, Debug)]
#[command(name = "etarho", version, about = "Exact rho and eta tables for finite and infinite groups")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    /// key=value file supplying defaults for flags.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<String>,
    /// Worker threads for parallel sections.
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,
    /// Add a metadata block (version, timestamp) to JSON output.
    #[arg(long, global = true)]
    meta: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Conjugacy classes, τ-orbits and Class±₀ bases of a finite group.
    Chars(commands::CharsArgs),
    /// Induce a rho vector along a subgroup inclusion.
    Induce(commands::InduceArgs),
    /// Delocalized rho table of a lens space.
    Lens(commands::LensArgs),
    /// Eta partial sums over a subset family of the circle covering.
    Circle(commands::CircleArgs),
    /// Growth of a conjugacy class in a zoo group.
    Growth(commands::GrowthArgs),
    /// Run an element script from stdin against a zoo group.
    Zoo(commands::ZooArgs),
    /// Membership of rationals in the ring generated by inverse element orders.
    Ringcheck(commands::RingcheckArgs),
    /// Run the numbered verification suites.
    Verify(commands::VerifyArgs),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Chars(_) => "chars",
            Command::Induce(_) => "induce",
            Command::Lens(_) => "lens",
            Command::Circle(_) => "circle",
            Command::Growth(_) => "growth",
            Command::Zoo(_) => "zoo",
            Command::Ringcheck(_) => "ringcheck",
            Command::Verify(_) => "verify",
        }
    }

    fn run(&self) -> Outcome {
        match self {
            Command::Chars(a) => commands::chars(a),
            Command::Induce(a) => commands::induce(a),
            Command::Lens(a) => commands::lens(a),
            Command::Circle(a) => commands::circle(a),
            Command::Growth(a) => commands::growth(a),
            Command::Zoo(a) => commands::zoo(a, &mut std::io::stdin().lock()),
            Command::Ringcheck(a) => commands::ringcheck(a),
            Command::Verify(a) => commands::verify(a),
        }
    }
}

fn main() -> ExitCode {
    let args = match config::expand_args(std::env::args().collect()) {
        Ok(a) => a,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(1);
        }
    };
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(n) = cli.jobs {
        if n == 0 {
            eprintln!("error: --jobs must be at least 1");
            return ExitCode::from(1);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: cannot size worker pool: {e}");
            return ExitCode::from(2);
        }
    }

    let outcome = cli.command.run();
    for d in &outcome.diagnostics {
        if outcome.exit_code != 0 {
            eprintln!("error: {d}");
        }
    }
    let meta = cli.meta.then(|| {
        let secs = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        json!({
            "version": env!("CARGO_PKG_VERSION"),
            "generated_unix_seconds": secs,
            "worker_threads": rayon::current_num_threads(),
        })
    });
    let report = RunReport {
        command: cli.command.name().to_string(),
        inputs: outcome.inputs,
        results: outcome.results,
        diagnostics: outcome.diagnostics,
        exit_code: outcome.exit_code,
        meta,
    };
    let text = render(&report, &outcome.table, cli.format);
    let mut stdout = std::io::stdout().lock();
    if stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()).is_err() {
        return ExitCode::from(2);
    }
    ExitCode::from(report.exit_code as u8)
}
