//! The `schur` command line: argument model, dispatch and output.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use schur_core::algebra::CoefficientField;
use schur_core::limits::{BLOCK_CAP, CONCRETE_CROSSCHECK_CAP};

mod commands;
mod construct;
mod reproduce;

pub use reproduce::EXAMPLE_IDS;

/// Exit status for a failed mathematical check.
pub const EXIT_VERIFICATION: i32 = 1;
/// Exit status for bad arguments or unparseable input.
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Verification(String),
    #[error(transparent)]
    Core(#[from] schur_core::Error),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use schur_core::Error as E;
        match self {
            CliError::Verification(_) | CliError::Core(E::Verification(_) | E::NotSchur(_)) => EXIT_VERIFICATION,
            _ => EXIT_USAGE,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Parser, Debug)]
#[command(name = "schur", version, about = "Schur rings over finite groups, computed exactly")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    /// Coefficient field: Q or F<q> for a prime q.
    #[arg(long, global = true, default_value = "Q", value_parser = parse_field)]
    pub field: CoefficientField,
    /// Largest group order accepted as input.
    #[arg(long, global = true, default_value_t = CONCRETE_CROSSCHECK_CAP as usize, value_parser = positive)]
    pub cap_group_order: usize,
    /// Largest number of basic sets accepted by the block-level searches.
    #[arg(long, global = true, default_value_t = BLOCK_CAP, value_parser = positive)]
    pub cap_blocks: usize,
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads for the parallel suites (default: all cores).
    #[arg(long, global = true, value_parser = positive)]
    pub jobs: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Automorphism classes of a group.
    Classes { group: String },
    /// Lattice of characteristic subgroups for `p=<odd prime>;lambda=<list>`.
    Charlattice { signature: String },
    /// The S-ring spanned by a lattice of subgroups.
    Latsring {
        group: String,
        #[arg(long, value_enum, default_value = "char")]
        lattice: LatticeKind,
    },
    /// Build an S-ring from one of the standard constructions.
    Construct(ConstructArgs),
    /// Decide whether a partition is a Schur partition.
    Check {
        group: String,
        /// JSON block list of element indices or labels, e.g. `[[0],[4,8],[1,5,9]]`.
        #[arg(long)]
        blocks: String,
    },
    /// Automorphism group of an S-ring given by its blocks.
    Aut {
        group: String,
        #[arg(long)]
        blocks: String,
    },
    /// Every S-ring over Z_n.
    EnumerateCyclic {
        n: usize,
        /// Enumerate 1..=n instead of n alone.
        #[arg(long)]
        upto: bool,
    },
    /// Realize a group as the automorphism group of a rational S-ring.
    Realize {
        group: String,
        #[arg(long, default_value_t = 3)]
        prime: u64,
    },
    /// Distinct Cayley-isomorphic S-rings over a non-cyclic abelian group.
    ConvPair { group: String },
    /// Rerun a worked example and check its stated outcome (`all` runs every one).
    Reproduce { id: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum LatticeKind {
    /// Characteristic subgroups.
    Char,
    /// Normal subgroups.
    Normal,
}

#[derive(Args, Debug)]
pub struct ConstructArgs {
    #[arg(value_enum)]
    pub kind: ConstructKind,
    pub group: String,
    /// Multipliers generating Ω, e.g. `5,7`.
    #[arg(long, value_delimiter = ',')]
    pub omega: Vec<u64>,
    /// Coprime orders `a,b` of the dot-product factors.
    #[arg(long, value_delimiter = ',')]
    pub factors: Vec<usize>,
    /// Left factor: trivial, full, cyclo:<u,...> or enum:<i>.
    #[arg(long, default_value = "trivial")]
    pub left: String,
    /// Right factor, same grammar as --left.
    #[arg(long, default_value = "trivial")]
    pub right: String,
    /// Order of the wedge subgroup H.
    #[arg(long)]
    pub h: Option<usize>,
    /// Order of the wedge subgroup K.
    #[arg(long)]
    pub k: Option<usize>,
    /// Divisors of n naming the subgroups of a cyclic lattice.
    #[arg(long, value_delimiter = ',')]
    pub divisors: Vec<u64>,
    /// Generators of each member, as JSON lists of element indices.
    #[arg(long)]
    pub subgroups: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ConstructKind {
    Trivial,
    Full,
    Cyclotomic,
    Dot,
    Wedge,
    Lattice,
}

fn parse_field(s: &str) -> Result<CoefficientField, String> {
    s.parse().map_err(|e: schur_core::Error| e.to_string())
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

/// A finished report in every format it supports.
pub struct Report {
    pub json: serde_json::Value,
    pub text: String,
    pub dot: Option<String>,
    /// `Some(msg)` marks a failed verification; the report is still printed.
    pub failure: Option<String>,
}

impl Report {
    pub fn new(json: serde_json::Value, text: String) -> Self {
        Report { json, text, dot: None, failure: None }
    }

    pub fn with_dot(mut self, dot: String) -> Self {
        self.dot = Some(dot);
        self
    }

    fn render(&self, format: Format) -> CliResult<String> {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).map_err(|e| CliError::Usage(e.to_string()))?;
                s.push('\n');
                Ok(s)
            }
            Format::Text => Ok(self.text.clone()),
            Format::Dot => self
                .dot
                .clone()
                .ok_or_else(|| CliError::Usage("this subcommand has no DOT output".into())),
        }
    }
}

fn execute(cli: &Cli) -> CliResult<Report> {
    let g = &cli.global;
    match &cli.command {
        Command::Classes { group } => commands::classes(g, group),
        Command::Charlattice { signature } => commands::charlattice(signature),
        Command::Latsring { group, lattice } => commands::latsring(g, group, *lattice),
        Command::Construct(args) => construct::run(g, args),
        Command::Check { group, blocks } => commands::check(g, group, blocks),
        Command::Aut { group, blocks } => commands::aut(g, group, blocks),
        Command::EnumerateCyclic { n, upto } => commands::enumerate_cyclic(g, *n, *upto),
        Command::Realize { group, prime } => commands::realize(g, group, *prime),
        Command::ConvPair { group } => commands::conv_pair(g, group),
        Command::Reproduce { id } => reproduce::run(id),
    }
}

fn emit(global: &GlobalOpts, body: &str) -> CliResult<()> {
    match &global.out {
        Some(path) => std::fs::write(path, body)?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(body.as_bytes())?;
            out.flush()?;
        }
    }
    Ok(())
}

/// Parses `argv` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(cli.global.jobs.unwrap_or(0))
        .build()
    {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: thread pool: {e}");
            return EXIT_USAGE;
        }
    };
    let result = pool.install(|| {
        let report = execute(&cli)?;
        let body = report.render(cli.global.format)?;
        emit(&cli.global, &body)?;
        match report.failure {
            Some(msg) => Err(CliError::Verification(msg)),
            None => Ok(()),
        }
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
