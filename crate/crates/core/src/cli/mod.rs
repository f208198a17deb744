//! Command-line frontend. [`run`] parses arguments, dispatches and returns
//! the exit code: 0 success, 1 domain failure, 2 usage or parse error.

mod cmd;

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Domain(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Domain(_) => 1,
            CliError::Usage(_) | CliError::Io(_) => 2,
        }
    }
}

pub(crate) fn usage(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

pub(crate) fn domain(e: impl std::fmt::Display) -> CliError {
    CliError::Domain(e.to_string())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Fmt {
    #[default]
    Text,
    Json,
    Dot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum ModeArg {
    #[default]
    Full,
    Bounded,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum ReadingArg {
    #[default]
    Tc,
    Rank,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum ExpansionArg {
    #[default]
    Atoms,
    Witness,
    Certificate,
    Absorb,
}

#[derive(Debug, Parser)]
#[command(
    name = "classcode",
    version,
    about = "Membership codes over hereditarily finite sets"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Fmt::Text)]
    pub fmt: Fmt,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Operations on single codes and code constructors.
    #[command(subcommand)]
    Code(CodeCmd),
    /// Hereditarily finite set utilities.
    #[command(subcommand)]
    Hf(HfCmd),
    /// Unroll a model into its structure of codes.
    Unroll(UnrollArgs),
    /// Cut a transitive structure off at a bound.
    Cutoff(CutoffArgs),
    /// Bi-interpretability round trip.
    Roundtrip(RoundtripArgs),
    /// Axiom and translation audits of an unrolling.
    #[command(subcommand)]
    Audit(AuditCmd),
    /// Iterated truth predicates.
    #[command(subcommand)]
    Truth(TruthCmd),
    /// Def over the structure a code presents.
    Def(DefArgs),
    /// L-hierarchy codes.
    Lhier(LhierArgs),
    /// Elementary transfinite recursion.
    #[command(subcommand)]
    Etr(EtrCmd),
    /// Formula translations.
    #[command(subcommand)]
    Translate(TranslateCmd),
}

/// Code inputs: JSON files (`-` for stdin) or set literals turned into canonical codes.
#[derive(Debug, Args, Clone, Default)]
pub struct CodeInputs {
    /// Code file `{"nodes":[..],"edges":[[a,b],..],"top":t}`; repeatable.
    #[arg(long = "in", value_name = "PATH|-")]
    pub inputs: Vec<String>,
    /// Set literal (`{{}}` or `#N`) taken as its canonical code; repeatable.
    #[arg(long = "set", value_name = "LITERAL")]
    pub sets: Vec<String>,
}

#[derive(Debug, Subcommand)]
pub enum CodeCmd {
    /// Check the code invariants.
    Validate(CodeInputs),
    /// Mostowski collapse of the top.
    Collapse(CodeInputs),
    /// Isomorphism between two codes.
    Iso(CodeInputs),
    /// Code-level membership A ⋳ B.
    Vin(CodeInputs),
    /// Code for {A, B}.
    Pair(CodeInputs),
    /// Code for the union.
    Union(CodeInputs),
    /// Code for a well-order of pen A.
    Wo {
        #[command(flatten)]
        code: CodeInputs,
        /// Comma-separated listing of pen A.
        #[arg(long)]
        order: String,
    },
    /// Code F* for f: pen A → pen B.
    Fn {
        #[command(flatten)]
        code: CodeInputs,
        /// Comma-separated `a:b` pairs.
        #[arg(long)]
        map: String,
    },
    /// Read a code G as a function pen A → pen B (inputs G, A, B).
    Fnof(CodeInputs),
    /// Code for the ordinal of a given length.
    Ord {
        #[arg(long)]
        length: usize,
    },
    /// Cone below the top, merged extensionally.
    Normalize(CodeInputs),
    /// Canonical code of a set.
    Canon(CodeInputs),
    /// A restricted below a node.
    Below {
        #[command(flatten)]
        code: CodeInputs,
        #[arg(long)]
        node: String,
    },
    /// Maximum initial partial isomorphism.
    Maxipi(CodeInputs),
    /// Disjoint union with shared isomorphic cones merged.
    Glue(CodeInputs),
    /// A random code.
    Random {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 6)]
        max_nodes: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum HfCmd {
    /// Literal forms, rank and tcSize of a set.
    Show { literal: String },
    /// V_n.
    Vstage { n: usize },
    /// Every set of tcSize at most k.
    Enum { k: usize },
}

/// A source model: a V-stage, h_bounded(k) or a literal list, with FULL classes.
#[derive(Debug, Args, Clone, Default)]
pub struct ModelArgs {
    #[arg(long, conflicts_with_all = ["hbounded", "sets_list"])]
    pub vstage: Option<usize>,
    #[arg(long, conflicts_with = "sets_list")]
    pub hbounded: Option<usize>,
    /// Comma-separated set literals (`#N` or braces) forming a transitive set.
    #[arg(long = "universe", value_name = "LITERALS")]
    pub sets_list: Option<String>,
}

#[derive(Debug, Args)]
pub struct UnrollArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long)]
    pub budget: usize,
    /// Worker threads for the enumeration (default: available parallelism).
    #[arg(long)]
    pub threads: Option<usize>,
}

#[derive(Debug, Args)]
pub struct CutoffArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// The bound.
    #[arg(long)]
    pub k: usize,
    #[arg(long, value_enum, default_value_t = ReadingArg::Tc)]
    pub reading: ReadingArg,
}

#[derive(Debug, Args)]
pub struct RoundtripArgs {
    /// CUT∘UNROLL on (V_n, FULL).
    #[arg(long, conflicts_with = "hbounded")]
    pub vstage: Option<usize>,
    /// UNROLL∘CUT on h_bounded(k).
    #[arg(long)]
    pub hbounded: Option<usize>,
    /// Defaults to |M|+1, or k for h_bounded(k).
    #[arg(long)]
    pub budget: Option<usize>,
    #[arg(long, value_enum, default_value_t = ReadingArg::Tc)]
    pub reading: ReadingArg,
}

#[derive(Debug, Subcommand)]
pub enum AuditCmd {
    /// Axioms in the unrolling of a model.
    Axioms {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        budget: usize,
        /// ext, pair, union, found, sep0, s0tr; repeatable (default: the first five).
        #[arg(long = "axiom")]
        axioms: Vec<String>,
        /// Formula for a single sep0 instance (else every formula up to --size-bound).
        #[arg(long)]
        formula: Option<String>,
        #[arg(long, default_value_t = 7)]
        size_bound: usize,
        /// Step formula for s0tr.
        #[arg(long)]
        step: Option<String>,
        #[arg(long, default_value_t = 2)]
        length: usize,
        #[arg(long)]
        index: Option<String>,
    },
    /// 𝔘 ⊨ φ against φ* (and φ⋆ for Σ₀ φ).
    Translation {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        budget: usize,
        #[arg(long)]
        formula: String,
        /// Parameters a1, a2, … as set literals.
        #[arg(long = "param")]
        params: Vec<String>,
    },
}

/// A V-stage model, an order of ordinal levels and a formula source.
#[derive(Debug, Args, Clone)]
pub struct TruthModel {
    #[arg(long, default_value_t = 2)]
    pub vstage: usize,
    /// Number of levels (ordinals 0 … n-1).
    #[arg(long, default_value_t = 1)]
    pub levels: usize,
}

#[derive(Debug, Subcommand)]
pub enum TruthCmd {
    /// Is (level, φ, v) in Tr_Γ?
    Eval {
        #[command(flatten)]
        model: TruthModel,
        #[arg(long, default_value_t = 0)]
        level: usize,
        #[arg(long)]
        formula: String,
        /// `var=LITERAL`; repeatable.
        #[arg(long = "val")]
        vals: Vec<String>,
    },
    /// Materialize the table within bounds.
    Table {
        #[command(flatten)]
        model: TruthModel,
        #[arg(long, default_value_t = 3)]
        size_bound: usize,
        #[arg(long, default_value = "x,y")]
        vars: String,
        /// Also run the clause audit.
        #[arg(long)]
        audit: bool,
    },
    /// Build the table as a layered recursion and compare with the materialized one.
    Iter {
        #[command(flatten)]
        model: TruthModel,
        #[arg(long, default_value_t = 3)]
        size_bound: usize,
        #[arg(long, default_value = "x,y")]
        vars: String,
    },
}

#[derive(Debug, Args)]
pub struct DefArgs {
    #[command(flatten)]
    pub code: CodeInputs,
    #[arg(long, value_enum, default_value_t = ModeArg::Full)]
    pub mode: ModeArg,
    #[arg(long, default_value_t = 3)]
    pub size_bound: usize,
    #[arg(long, default_value_t = 1)]
    pub max_params: usize,
}

#[derive(Debug, Args)]
pub struct LhierArgs {
    #[arg(long)]
    pub levels: usize,
    #[arg(long, value_enum, default_value_t = ModeArg::Full)]
    pub mode: ModeArg,
    #[arg(long, default_value_t = 3)]
    pub size_bound: usize,
    #[arg(long, default_value_t = 1)]
    pub max_params: usize,
}

/// A recursion over a V-stage along a relation on set labels.
#[derive(Debug, Args, Clone)]
pub struct EtrInstanceArgs {
    #[arg(long, default_value_t = 2)]
    pub vstage: usize,
    /// Step formula φ(x, [i,] Y).
    #[arg(long)]
    pub step: String,
    /// Variable bound to the slice label.
    #[arg(long)]
    pub index: Option<String>,
    /// Chain of the ordinals 0 … n-1.
    #[arg(long, conflicts_with = "rel")]
    pub chain: Option<usize>,
    /// Relation as a JSON list of [label, label] literal pairs, or a path to one.
    #[arg(long)]
    pub rel: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum EtrCmd {
    Solve(EtrInstanceArgs),
    /// Check a solution given as JSON `{label: [literals]}` (path or `-`).
    Check {
        #[command(flatten)]
        inst: EtrInstanceArgs,
        #[arg(long = "in", value_name = "PATH|-")]
        solution: String,
    },
    /// Compare two ordinal-labelled well-orders of the given lengths.
    Compare {
        #[arg(long)]
        gamma: usize,
        #[arg(long)]
        delta: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum TranslateCmd {
    Star {
        #[arg(long)]
        formula: String,
        #[arg(long, value_enum, default_value_t = ExpansionArg::Atoms)]
        expansion: ExpansionArg,
    },
    Etrstar {
        #[arg(long)]
        formula: String,
        /// Parameters a1, a2, … as set literals.
        #[arg(long = "param")]
        params: Vec<String>,
    },
    Interp {
        #[arg(long)]
        formula: String,
    },
}

/// Runs the CLI on `args` (including the program name).
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    0
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    2
                }
            };
        }
    };
    match cmd::dispatch(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "{e}");
            e.code()
        }
    }
}
