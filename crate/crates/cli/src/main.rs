use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use seqrules::axioms::Bounds;
use seqrules::engine::DEFAULT_BRANCH_CAP;
use seqrules_cli::commands::{self, Input};
use seqrules_cli::report::render;
use seqrules_cli::{AxiomsArgs, CliError};

#[derive(Parser)]
#[command(
    name = "seqrules",
    version,
    about = "Sequential committee voting rules: compute, check axioms, build witnesses"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute f(A, 0), ..., f(A, k) with marginal scores.
    Compute {
        rule: String,
        profile: PathBuf,
        k: usize,
        /// Counting table to use instead of the catalog rule.
        #[arg(long)]
        counting: Option<PathBuf>,
        #[arg(long)]
        branch_cap: Option<usize>,
    },
    /// Run a suite of bounded axiom checks (proper, monotone, clones, all).
    Axioms {
        rule: String,
        suite: String,
        #[command(flatten)]
        bounds: BoundsFlags,
        #[arg(long)]
        counting: Option<PathBuf>,
    },
    /// Build and replay a witness profile for a Thiele counting table.
    Witness {
        /// clone-rejection, distrust, clone-acceptance or clone-proportionality
        kind: String,
        counting: PathBuf,
    },
    /// Print a profile file in canonical form.
    Format { profile: PathBuf },
    /// List the named rules.
    Rules,
}

#[derive(Args)]
struct BoundsFlags {
    /// Voters per profile for single-profile axioms.
    #[arg(long)]
    max_voters: Option<usize>,
    /// Voters per side for axioms over pairs of profiles.
    #[arg(long)]
    pair_max_voters: Option<usize>,
    #[arg(long)]
    min_m: Option<usize>,
    #[arg(long)]
    max_m: Option<usize>,
    /// Largest replication factor tried for continuity.
    #[arg(long)]
    j_max: Option<usize>,
    #[arg(long)]
    branch_cap: Option<usize>,
}

impl BoundsFlags {
    fn resolve(&self) -> AxiomsArgs {
        let mut b = Bounds::default();
        b.max_voters = self.max_voters.unwrap_or(b.max_voters);
        b.pair_max_voters = self.pair_max_voters.unwrap_or(b.pair_max_voters);
        b.min_m = self.min_m.unwrap_or(b.min_m);
        b.max_m = self.max_m.unwrap_or(b.max_m);
        b.j_max = self.j_max.unwrap_or(b.j_max);
        AxiomsArgs { bounds: b, branch_cap: self.branch_cap.unwrap_or(DEFAULT_BRANCH_CAP) }
    }
}

struct File {
    path: String,
    text: String,
}

impl File {
    fn read(path: &PathBuf) -> Result<File, CliError> {
        let shown = path.display().to_string();
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: shown.clone(), source })?;
        Ok(File { path: shown, text })
    }

    fn input(&self) -> Input<'_> {
        Input { path: &self.path, text: &self.text }
    }
}

fn read_opt(path: &Option<PathBuf>) -> Result<Option<File>, CliError> {
    path.as_ref().map(File::read).transpose()
}

fn run(cli: Cli) -> Result<u8, CliError> {
    let outcome = match &cli.command {
        Command::Compute { rule, profile, k, counting, branch_cap } => {
            let p = File::read(profile)?;
            let c = read_opt(counting)?;
            commands::compute(rule, p.input(), *k, c.as_ref().map(File::input), *branch_cap)?
        }
        Command::Axioms { rule, suite, bounds, counting } => {
            let c = read_opt(counting)?;
            commands::axioms(rule, suite, bounds.resolve(), c.as_ref().map(File::input))?
        }
        Command::Witness { kind, counting } => commands::witness(kind, File::read(counting)?.input())?,
        Command::Format { profile } => {
            print!("{}", commands::format(File::read(profile)?.input())?);
            return Ok(0);
        }
        Command::Rules => {
            print!("{}", render(&commands::rules()));
            return Ok(0);
        }
    };
    print!("{}", render(&outcome.report));
    Ok(outcome.exit)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
