mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use fence_rowmotion::fence::DEFAULT_MAX_FAMILY;
use fence_rowmotion::toggles::DEFAULT_SEED;
use fence_rowmotion::{Family, FenceError};

#[derive(Parser, Debug)]
#[command(name = "fence", version, about = "Rowmotion, tilings and homomesy checks on fence posets")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,

    /// Largest family of ideals or antichains that may be enumerated.
    #[arg(long, global = true, env = "FENCE_MAX_FAMILY", default_value_t = DEFAULT_MAX_FAMILY)]
    pub max_family: usize,

    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Report runtime_ms as 0 so repeated runs are byte-identical.
    #[arg(long, global = true)]
    pub no_timing: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Ascii,
    Svg,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    #[value(alias = "antichain")]
    Antichains,
    #[value(alias = "ideal")]
    Ideals,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Family {
        match f {
            FamilyArg::Antichains => Family::Antichains,
            FamilyArg::Ideals => Family::Ideals,
        }
    }
}

#[derive(Args, Debug)]
pub struct AlphaArg {
    /// Composition, e.g. 4,3,4.
    #[arg(long)]
    pub alpha: String,
}

#[derive(Args, Debug)]
pub struct FamilyOpt {
    #[arg(long, value_enum, default_value = "antichains")]
    pub family: FamilyArg,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Element positions, covers, shared elements and the ideal count.
    Info(AlphaArg),
    /// Orbit decomposition with tile counts and totals per orbit.
    Orbits {
        #[command(flatten)]
        alpha: AlphaArg,
        #[command(flatten)]
        family: FamilyOpt,
    },
    /// Render the tiling of one antichain orbit.
    Tiling {
        #[command(flatten)]
        alpha: AlphaArg,
        /// An antichain of the orbit, e.g. x4,x10.
        #[arg(long, conflicts_with = "orbit_index")]
        rep: Option<String>,
        /// Position of the orbit in the sorted orbit list.
        #[arg(long)]
        orbit_index: Option<usize>,
        #[arg(long, value_enum)]
        render: Option<Render>,
    },
    /// Homomesy and orbomesy of a statistic such as "chi[5]-chi[6]".
    Check {
        #[command(flatten)]
        alpha: AlphaArg,
        /// Used when the statistic does not name a family.
        #[arg(long, value_enum)]
        family: Option<FamilyArg>,
        #[arg(long)]
        stat: String,
    },
    /// Number of ideals.
    Count(AlphaArg),
    /// Verify a theorem over a parameter range.
    Verify(VerifyArgs),
    /// Scan a conjecture over a parameter range.
    Scan(ScanArgs),
    /// Edges of the toggle base graph.
    BaseGraph {
        #[command(flatten)]
        alpha: AlphaArg,
        #[command(flatten)]
        family: FamilyOpt,
    },
    /// Conjugate a Coxeter word by an admissible toggle.
    Conjugate {
        #[command(flatten)]
        alpha: AlphaArg,
        #[arg(long, value_enum, default_value = "ideals")]
        family: FamilyArg,
        /// Toggle order, written left to right, e.g. 1,5,2,4,3.
        #[arg(long)]
        word: String,
        /// The toggle to conjugate by, e.g. x5.
        #[arg(long)]
        at: String,
    },
    /// Admissible conjugations turning one word's orientation into another's.
    ConjugationPath {
        #[command(flatten)]
        alpha: AlphaArg,
        #[arg(long, value_enum, default_value = "ideals")]
        family: FamilyArg,
        #[arg(long)]
        word: String,
        #[arg(long)]
        to: String,
    },
    /// Compare statistic verdicts under two Coxeter words.
    Transfer {
        #[command(flatten)]
        alpha: AlphaArg,
        #[arg(long, value_enum, default_value = "ideals")]
        family: FamilyArg,
        /// Random when omitted.
        #[arg(long)]
        word: Option<String>,
        /// Random when omitted.
        #[arg(long)]
        to: Option<String>,
        /// Defaults to every single indicator plus the total.
        #[arg(long)]
        stat: Vec<String>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Render {
    Ascii,
    Svg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Claim {
    TwoSegment,
    Aba,
    A4,
    A1a1a,
    General,
    TilingLemma,
    TilingBijection,
    LinearExtensions,
    BaseGraph,
    Transfer,
    Counts,
    Palindromic,
    Counterexample,
    Complement,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub claim: Claim,
    #[arg(long)]
    pub a: Option<usize>,
    #[arg(long)]
    pub b: Option<usize>,
    #[arg(long)]
    pub max_sum: Option<usize>,
    #[arg(long)]
    pub max_a: Option<usize>,
    #[arg(long)]
    pub max_n: Option<usize>,
    #[arg(long)]
    pub alpha: Option<String>,
    /// Random words per fence for sampled claims.
    #[arg(long)]
    pub samples: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Conjecture {
    ConstantAlpha,
    PalindromicConstant,
    AntichainTransfer,
}

#[derive(Args, Debug)]
pub struct ScanArgs {
    #[arg(value_enum)]
    pub conjecture: Conjecture,
    /// Bound on a + s for constant compositions.
    #[arg(long)]
    pub max: Option<usize>,
    #[arg(long)]
    pub alpha: Option<String>,
    #[arg(long)]
    pub max_n: Option<usize>,
    #[arg(long)]
    pub samples: Option<usize>,
    /// Compare every Coxeter word instead of sampling.
    #[arg(long)]
    pub exhaustive: bool,
}

/// A failure reported as `error[code]: message`.
#[derive(Debug)]
pub struct CliError {
    pub code: String,
    pub message: String,
    pub exit: u8,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError {
            code: "usage".into(),
            message: message.into(),
            exit: 1,
        }
    }
}

impl From<FenceError> for CliError {
    fn from(e: FenceError) -> Self {
        let exit = if matches!(e, FenceError::CapExceeded { .. }) { 3 } else { 1 };
        CliError {
            code: e.code().to_string(),
            message: e.to_string(),
            exit,
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError {
            code: "io".into(),
            message: e.to_string(),
            exit: 1,
        }
    }
}

fn one_line(s: &str) -> String {
    s.split_whitespace().collect::<Vec<_>>().join(" ")
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let text = e.to_string();
            let first = text.lines().next().unwrap_or("invalid arguments");
            eprintln!("error[usage]: {}", first.trim_start_matches("error: "));
            return ExitCode::from(1);
        }
    };
    match commands::run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error[{}]: {}", e.code, one_line(&e.message));
            ExitCode::from(e.exit)
        }
    }
}
