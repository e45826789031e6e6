//! Command-line front end.
//!
//! Exit codes: 0 all checks pass, 1 a check failed, 2 usage error,
//! 3 parse error, 4 configuration or i/o error.

pub mod commands;
pub mod expr;
pub mod sweep;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::affine_weyl::AffineWeylGroup;
use crate::error::{Error, Result};
use crate::kl::KlTable;
use crate::root_datum::{DatumConfig, RootDatum};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_PARSE: i32 = 3;
pub const EXIT_CONFIG: i32 = 4;

pub const KL_CACHE_ENV: &str = "AFFHECKE_KL_CACHE";

/// Exit code for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } => EXIT_PARSE,
        Error::RankMismatch { .. } | Error::NotDominant(_) | Error::DatumMismatch => EXIT_USAGE,
        Error::InvalidDatum(_) | Error::NoHighestRoot(_) | Error::Config(_) | Error::Io(_) => EXIT_CONFIG,
        Error::NotExpressible(_) => EXIT_CHECK_FAILED,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    Json,
    #[default]
    Table,
}

#[derive(Debug, Parser)]
#[command(name = "affhecke", version, about = "Affine Weyl groups, affine Hecke algebras and KL polynomials")]
pub struct Cli {
    #[command(flatten)]
    pub datum: DatumArgs,

    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    pub format: Format,

    /// JSON file used to persist Kazhdan-Lusztig polynomials between runs.
    #[arg(long, env = KL_CACHE_ENV, global = true)]
    pub kl_cache: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
#[group(required = true, multiple = false)]
pub struct DatumArgs {
    /// Preset name: GL<n>, SL<n>, PGL<n>, Sp4, GSp4 (an "affine" suffix is accepted).
    #[arg(long, global = true)]
    pub group: Option<String>,

    /// TOML file describing a root datum.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Length of an element.
    Length {
        #[arg(long)]
        x: String,
    },
    /// Length-zero part and reduced word.
    Word {
        #[arg(long)]
        x: String,
    },
    /// Whether x <= y in the Bruhat order.
    Bruhat {
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
    /// The mu-admissible set.
    Adm {
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
    },
    /// Weights of the dual-group module of highest weight mu.
    OmegaSet {
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
    },
    /// Multiplicity of lambda in the dual-group module of highest weight mu.
    WeightMult {
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
    },
    /// Product of normalized basis elements.
    HeckeMul {
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
    /// Inverse of a normalized basis element.
    Inv {
        #[arg(long)]
        x: String,
    },
    /// Expansion of a Wakimoto function.
    Wakimoto {
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
    },
    /// Bernstein element of a coweight.
    Theta {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
    },
    /// Kazhdan-Lusztig polynomial.
    Kl {
        #[arg(long)]
        x: String,
        #[arg(long)]
        w: String,
    },
    /// Kottwitz function of a dominant coweight.
    Kottwitz {
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
    },
    /// Polynomiality and degree bounds for nearby cycles.
    VerifyThm1 {
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
    },
    /// Polynomiality and degree bounds for a Wakimoto function.
    VerifyThm2 {
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
    },
    /// Runs both verifiers and the KL invariants over a range of inputs.
    Sweep(sweep::SweepArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Length { .. } => "length",
            Command::Word { .. } => "word",
            Command::Bruhat { .. } => "bruhat",
            Command::Adm { .. } => "adm",
            Command::OmegaSet { .. } => "omega-set",
            Command::WeightMult { .. } => "weight-mult",
            Command::HeckeMul { .. } => "hecke-mul",
            Command::Inv { .. } => "inv",
            Command::Wakimoto { .. } => "wakimoto",
            Command::Theta { .. } => "theta",
            Command::Kl { .. } => "kl",
            Command::Kottwitz { .. } => "kottwitz",
            Command::VerifyThm1 { .. } => "verify-thm1",
            Command::VerifyThm2 { .. } => "verify-thm2",
            Command::Sweep(_) => "sweep",
        }
    }

    fn uses_kl(&self) -> bool {
        matches!(self, Command::Kl { .. } | Command::VerifyThm1 { .. } | Command::VerifyThm2 { .. } | Command::Sweep(_))
    }
}

/// Where the root datum comes from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DatumSource {
    Preset(String),
    File(PathBuf),
}

impl DatumSource {
    pub fn load(&self) -> Result<RootDatum> {
        match self {
            DatumSource::Preset(name) => RootDatum::from_preset_name(name),
            DatumSource::File(path) => DatumConfig::load(path)?.build(),
        }
    }
}

/// Everything a run needs.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub datum: DatumSource,
    pub command: Command,
    pub format: Format,
    pub kl_cache: Option<PathBuf>,
}

impl From<Cli> for RunConfig {
    fn from(cli: Cli) -> Self {
        let datum = match (cli.datum.group, cli.datum.config) {
            (Some(name), _) => DatumSource::Preset(name),
            (None, Some(path)) => DatumSource::File(path),
            (None, None) => unreachable!("clap requires one of --group and --config"),
        };
        RunConfig { datum, command: cli.command, format: cli.format, kl_cache: cli.kl_cache }
    }
}

/// Result of one command, renderable both ways.
#[derive(Debug, Clone)]
pub struct Output {
    pub result: serde_json::Value,
    pub table: String,
    pub pass: bool,
}

#[derive(Serialize)]
struct Envelope<'a> {
    command: &'a str,
    group: &'a str,
    pass: bool,
    result: &'a serde_json::Value,
}

/// Text to print and the exit status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Emitted {
    pub text: String,
    pub exit_code: i32,
}

pub fn run(config: &RunConfig) -> Result<Emitted> {
    let g = AffineWeylGroup::new(config.datum.load()?);
    let mut kl = match (&config.kl_cache, config.command.uses_kl()) {
        (Some(path), true) => KlTable::load(&g, path)?,
        _ => KlTable::new(),
    };
    let out = commands::dispatch(&g, &mut kl, &config.command)?;
    if let (Some(path), true) = (&config.kl_cache, config.command.uses_kl()) {
        kl.save(&g, path)?;
    }
    let text = match config.format {
        Format::Json => {
            let env = Envelope {
                command: config.command.name(),
                group: g.datum().name(),
                pass: out.pass,
                result: &out.result,
            };
            serde_json::to_string_pretty(&env).expect("reports serialize") + "\n"
        }
        Format::Table => out.table,
    };
    Ok(Emitted { text, exit_code: if out.pass { EXIT_PASS } else { EXIT_CHECK_FAILED } })
}

/// Parses `args`, runs, and returns the process exit code; output goes to
/// stdout and diagnostics to stderr.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let _ = e.print();
            return code;
        }
    };
    match run(&cli.into()) {
        Ok(emitted) => {
            print!("{}", emitted.text);
            emitted.exit_code
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
