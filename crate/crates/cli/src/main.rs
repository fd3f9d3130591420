use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use turanpack::Pattern;
use turanpack_cli::formula::{cmd_formula, cmd_table, table_csv, Family, Params};
use turanpack_cli::graph_cmds::{
    cmd_color, cmd_construct, cmd_oracle, cmd_pack, cmd_resolve, cmd_verify, read_graph,
    FamilyParams, PackMode,
};
use turanpack_cli::probe::{cmd_probe, Probe};
use turanpack_cli::settings::{Overrides, GUARD_ENV};
use turanpack_cli::{CliError, ResultRecord, Settings};

const DEFAULT_SEED: u64 = 0x7572_616e;

#[derive(Debug, Parser)]
#[command(name = "turanpack", version, about = "Turán numbers of disjoint cliques and exact packing search")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Common {
    /// Output format; csv applies to tables, graph6 to constructions.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Largest component the exact searches will take on.
    #[arg(long, global = true)]
    guard_n: Option<usize>,
    /// Digraph rebuilds allowed in the shifting phase of `resolve`.
    #[arg(long, global = true)]
    budget: Option<usize>,
    /// `key = value` file with guard_n and budget.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Record wall-clock timestamp and runtime (output is then not reproducible).
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Graph6,
}

#[derive(Debug, Args)]
struct FormulaArgs {
    /// Kp, kK2, kKp-tight, 2Kp, KpKq, 3Kp, 4Kp, f3, or a concrete pattern such as 4K3.
    pattern: String,
    #[arg(long)]
    n: Option<u64>,
    #[arg(long)]
    p: Option<u64>,
    #[arg(long)]
    k: Option<u64>,
    #[arg(long)]
    q: Option<u64>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate one closed form.
    Formula(FormulaArgs),
    /// Tabulate a closed form over ranges of n and p.
    Table {
        pattern: String,
        #[arg(long, value_parser = parse_range)]
        n: (u64, u64),
        #[arg(long, value_parser = parse_range)]
        p: (u64, u64),
        #[arg(long)]
        k: Option<u64>,
        #[arg(long)]
        q: Option<u64>,
        /// Build each row's construction and confirm it with exact search.
        #[arg(long)]
        verify: bool,
    },
    /// Build a named construction.
    Construct {
        /// turan, hub-join, J, tight-a, tight-b or witness.
        family: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        p: Option<usize>,
        #[arg(long)]
        s: Option<usize>,
        #[arg(long)]
        x: Option<usize>,
        #[arg(long)]
        parts: Option<usize>,
        /// G1 … G5 for the witness family.
        #[arg(long)]
        which: Option<String>,
        /// Write graph6 here and the descriptor next to it as .json.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Find four disjoint independent p-sets or certify the K_7-union structure.
    Resolve {
        #[arg(long, default_value = "-")]
        input: String,
        #[arg(long)]
        p: usize,
    },
    /// Exact search for k disjoint independent sets or cliques of order p.
    Pack {
        #[arg(long, default_value = "-")]
        input: String,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        p: usize,
        #[arg(long, value_enum, default_value_t = PackMode::Independent)]
        mode: PackMode,
    },
    /// Re-check a witness or certificate (raw JSON or a result record).
    Verify {
        #[arg(long, default_value = "-")]
        input: String,
        #[arg(long)]
        claim: PathBuf,
        #[arg(long, default_value_t = 4)]
        k: usize,
        #[arg(long)]
        p: usize,
    },
    /// Extremal number by enumerating every labelled graph (n ≤ 7).
    Oracle {
        pattern: Pattern,
        #[arg(long)]
        n: usize,
    },
    /// Random or tabulated probes of open generalisations.
    Probe {
        #[arg(value_enum)]
        which: Probe,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        p: usize,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
    },
    /// Equitable colouring with a given number of colours.
    Color {
        #[arg(long, default_value = "-")]
        input: String,
        #[arg(long)]
        colors: usize,
        /// Exhaustive search instead of the degree-bound algorithm.
        #[arg(long)]
        exact: bool,
    },
}

fn parse_range(raw: &str) -> Result<(u64, u64), String> {
    let parse = |s: &str| s.trim().parse::<u64>().map_err(|e| format!("{s:?}: {e}"));
    match raw.split_once("..") {
        Some((lo, hi)) => Ok((parse(lo)?, parse(hi.trim_start_matches('='))?)),
        None => parse(raw).map(|v| (v, v)),
    }
}

fn run(cli: &Cli) -> Result<String, CliError> {
    let c = &cli.common;
    let env = std::env::var(GUARD_ENV).ok();
    let settings = Settings::load(
        &Overrides { guard_n: c.guard_n, budget: c.budget },
        c.config.as_deref(),
        env.as_deref(),
    )?;
    let started = Instant::now();
    let mut rec: ResultRecord = match &cli.command {
        Command::Formula(a) => cmd_formula(a.pattern.parse()?, Params { n: a.n, p: a.p, k: a.k, q: a.q })?,
        Command::Table { pattern, n, p, k, q, verify } => {
            let family: Family = pattern.parse()?;
            cmd_table(family, *n, *p, Params { n: None, p: None, k: *k, q: *q }, *verify, &settings.search())?
        }
        Command::Construct { family, n, k, p, s, x, parts, which, output } => {
            let params = FamilyParams { n: *n, k: *k, p: *p, s: *s, x: *x, parts: *parts, which: which.clone() };
            cmd_construct(family, &params, output.as_deref())?
        }
        Command::Resolve { input, p } => cmd_resolve(&read_graph(input)?, *p, &settings)?,
        Command::Pack { input, k, p, mode } => cmd_pack(&read_graph(input)?, *k, *p, *mode, &settings)?,
        Command::Verify { input, claim, k, p } => {
            let text = std::fs::read_to_string(claim)?;
            cmd_verify(&read_graph(input)?, &serde_json::from_str(&text)?, *k, *p)?
        }
        Command::Oracle { pattern, n } => cmd_oracle(*n, *pattern)?,
        Command::Probe { which, k, p, trials } => cmd_probe(*which, *k, *p, *trials, c.seed, &settings.search())?,
        Command::Color { input, colors, exact } => cmd_color(&read_graph(input)?, *colors, *exact, &settings)?,
    };
    if c.timing {
        rec.stamp(started.elapsed());
    }
    match c.format {
        Format::Json => Ok(rec.to_json_line()),
        Format::Csv if rec.command == "table" => Ok(table_csv(&rec)?.trim_end().to_string()),
        Format::Graph6 if rec.command == "construct" => Ok(rec.payload["graph6"].as_str().unwrap_or_default().to_string()),
        other => Err(CliError::Precondition(format!("--format {other:?} does not apply to {}", rec.command))),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            println!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
