use std::path::PathBuf;
use std::process::ExitCode;

use blockqap_cli::commands::{self, GenKind, GenOptions, SolveOptions, VerifyOptions};
use blockqap_cli::{Exit, Failure};
use clap::{Parser, Subcommand, ValueEnum};

/// Exact solvers and reductions for structured quadratic assignment problems.
#[derive(Parser)]
#[command(name = "blockqap", version)]
struct Cli {
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report which structured classes A and B belong to.
    Recognize { file: PathBuf },
    /// Solve an instance with the matching structured algorithm.
    Solve {
        file: PathBuf,
        /// Use exhaustive search instead.
        #[arg(long)]
        oracle: bool,
        /// Run the product-block solver on an uncertified pattern.
        #[arg(long)]
        force: bool,
        /// Largest n accepted by the exhaustive search.
        #[arg(long, default_value_t = 10)]
        max_n: usize,
    },
    /// Decide the complexity class of a block pattern where possible.
    Classify { file: PathBuf },
    /// Build a QAP instance from a hard source problem.
    Reduce {
        #[arg(value_enum)]
        source: Source,
        file: PathBuf,
    },
    /// Emit a random instance.
    Gen {
        #[arg(value_enum)]
        kind: Kind,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[arg(long)]
        q: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run the verification suites.
    Verify {
        #[arg(long)]
        quick: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Run one criterion only.
        #[arg(long)]
        only: Option<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Source {
    Partition,
    Bisection,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    AntiMonge,
    MonotoneAntiMonge,
    Product,
    Multicut,
    Pattern,
}

impl From<Kind> for GenKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::AntiMonge => GenKind::AntiMonge,
            Kind::MonotoneAntiMonge => GenKind::MonotoneAntiMonge,
            Kind::Product => GenKind::Product,
            Kind::Multicut => GenKind::Multicut,
            Kind::Pattern => GenKind::Pattern,
        }
    }
}

fn dispatch(command: Command) -> Result<(String, Exit), Failure> {
    let ok = |text: String| (text, Exit::Ok);
    match command {
        Command::Recognize { file } => commands::recognize(&file).map(ok),
        Command::Solve {
            file,
            oracle,
            force,
            max_n,
        } => commands::solve(&file, &SolveOptions { oracle, force, max_n }).map(ok),
        Command::Classify { file } => commands::classify(&file).map(ok),
        Command::Reduce { source, file } => match source {
            Source::Partition => commands::reduce_partition_file(&file),
            Source::Bisection => commands::reduce_bisection_file(&file),
        }
        .map(ok),
        Command::Gen { kind, n, k, q, seed } => commands::generate(kind.into(), &GenOptions { n, k, q, seed }).map(ok),
        Command::Verify { quick, seed, only } => commands::verify(&VerifyOptions { quick, seed, only }),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = dispatch(cli.command).and_then(|(text, exit)| {
        match &cli.output {
            Some(path) => std::fs::write(path, &text)
                .map_err(|e| Failure::input(format!("cannot write {}: {e}", path.display())))?,
            None => print!("{text}"),
        }
        Ok(exit)
    });
    match result {
        Ok(exit) => ExitCode::from(exit.code()),
        Err(failure) => {
            eprintln!("error: {failure}");
            ExitCode::from(failure.exit.code())
        }
    }
}
