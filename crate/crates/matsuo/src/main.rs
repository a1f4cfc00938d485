use std::process::ExitCode;

use clap::{Parser, Subcommand};
use matsuo::catalog::Scope;
use matsuo::cli::{
    check_albert, check_report, check_rows, cmd_albert, cmd_build, cmd_dump, cmd_edges, cmd_jordan,
    cmd_spectrum, cmd_theorem1, parse_eta, render_theorem1, CliError, GroupArgs,
};
use matsuo::matsuo_core::exact::Rational;
use matsuo::parallel::with_threads;
use matsuo::report::{Format, RunReport};

/// Matsuo algebras of 3-transposition groups and their Jordan factors.
#[derive(Debug, Parser)]
#[command(name = "matsuo", version)]
struct Cli {
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: Format,
    /// Worker threads for sweeps (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Close the class and report its size, connectivity and spectrum.
    Build(GroupArgs),
    /// Compare the diagram spectrum with its closed form.
    Spectrum(GroupArgs),
    /// Decide whether the quotient of M_eta by its radical is Jordan.
    Jordan {
        #[command(flatten)]
        group: GroupArgs,
        /// Exact rational, e.g. 1/2.
        #[arg(long, default_value = "1/2", value_parser = parse_eta)]
        eta: Rational,
    },
    /// Run the built-in case list and compare with the expected table.
    Theorem1 {
        #[arg(long, value_enum, default_value = "quick")]
        scope: Scope,
    },
    /// Verify the Albert algebra certificate.
    Albert,
    /// Print the diagram as an edge list.
    Edges(GroupArgs),
    /// Print the structure constants of M_eta as JSON.
    Dump {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, default_value = "1/2", value_parser = parse_eta)]
        eta: Rational,
    },
}

fn fail(e: &CliError) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(e.exit_code() as u8)
}

/// Prints the rendered value, then maps its reference check to an exit code.
fn emit<T>(
    result: Result<T, CliError>,
    render: impl Fn(&T) -> String,
    check: impl Fn(&T) -> Result<(), CliError>,
) -> ExitCode {
    let outcome = result.and_then(|value| {
        print!("{}", render(&value));
        check(&value)
    });
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => fail(&e),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    let report = |r: &RunReport| r.render(format);
    with_threads(cli.threads, move || match &cli.command {
        Command::Build(g) => emit(cmd_build(g), report, |_| Ok(())),
        Command::Spectrum(g) => emit(cmd_spectrum(g), report, check_report),
        Command::Jordan { group, eta } => emit(cmd_jordan(group, eta, true), report, check_report),
        Command::Theorem1 { scope } => emit(
            cmd_theorem1(*scope, true),
            |rows| render_theorem1(rows, format),
            |rows| check_rows(rows),
        ),
        Command::Albert => emit(cmd_albert(), |s| s.render(format), check_albert),
        Command::Edges(g) => emit(cmd_edges(g), String::clone, |_| Ok(())),
        Command::Dump { group, eta } => emit(cmd_dump(group, eta), String::clone, |_| Ok(())),
    })
}
