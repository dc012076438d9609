use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(
    name = "resolvitor",
    version,
    about = "Explicit free resolutions attached to four ring elements"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Also write the report as JSON to this path (`-` prints JSON instead of text).
    #[arg(long, global = true, value_name = "PATH")]
    pub json: Option<PathBuf>,

    /// Record wall-clock time in the report (makes output non-reproducible).
    #[arg(long, global = true)]
    pub timings: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the assembled matrices.
    GenMatrices(GenArgs),
    /// Check the products of consecutive matrices symbolically.
    CheckAnnihilation(SeqArgs),
    /// Build a complex and check composition, minimality and exactness.
    CheckComplex(ComplexArgs),
    /// Check the determinantal identities on minors (generic mode).
    CheckMinors(MinorArgs),
    /// Hilbert-series test for a homogeneous regular sequence.
    CheckRegseq(RegseqArgs),
    /// Resolution and Hilbert function of the Hartshorne–Rao module.
    CurveHr(CurveArgs),
    /// Presentation and resolution of I_C/(Q).
    CurveResolution(CurveArgs),
    /// Betti table shape and gap of the Hartshorne–Rao resolution.
    CurveGap(CurveArgs),
    /// Diagnostics for the canonical module display.
    CurveOmega(CurveArgs),
}

#[derive(Debug, Clone, Args)]
pub struct SeqArgs {
    /// Construction parameter a (at least 2).
    #[arg(long = "param", value_name = "A")]
    pub param: usize,

    /// Work over Z[f1,f2,f3,f4] (the default when --f is absent).
    #[arg(long, conflicts_with_all = ["f", "vars"])]
    pub generic: bool,

    /// The sequence as "p1,p2,p3,p4".
    #[arg(long)]
    pub f: Option<String>,

    /// Variables, in monomial-order priority.
    #[arg(long, default_value = "x0,x1,x2,x3")]
    pub vars: String,
}

#[derive(Debug, Clone, Args)]
pub struct GenArgs {
    #[command(flatten)]
    pub seq: SeqArgs,

    /// Only this matrix (A, B, A', A'', B', B'', C or D).
    #[arg(long)]
    pub matrix: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct FieldArgs {
    /// q or fp:<prime>.
    #[arg(long, default_value = "fp:32003")]
    pub field: String,

    /// Last degree examined.
    #[arg(long, value_name = "N")]
    pub deg_max: Option<i64>,
}

#[derive(Debug, Clone, Args)]
pub struct ComplexArgs {
    /// C1, C2, D1, D2 or CFULL.
    #[arg(long, default_value = "CFULL")]
    pub complex: String,

    /// Construction parameter a (at least 2).
    #[arg(long = "param", value_name = "A")]
    pub param: usize,

    /// Symbolic checks only, over Z[f1,f2,f3,f4].
    #[arg(long, conflicts_with_all = ["f", "vars", "field", "deg_max", "quotient"])]
    pub generic: bool,

    /// The sequence as "p1,p2,p3,p4" (default: the variables).
    #[arg(long)]
    pub f: Option<String>,

    #[arg(long, default_value = "x0,x1,x2,x3")]
    pub vars: String,

    /// Work over A/I with I generated by "g1;g2;…".
    #[arg(long)]
    pub quotient: Option<String>,

    /// q or fp:<prime>.
    #[arg(long)]
    pub field: Option<String>,

    /// Last degree examined.
    #[arg(long, value_name = "N")]
    pub deg_max: Option<i64>,
}

#[derive(Debug, Clone, Args)]
pub struct MinorArgs {
    /// Construction parameter a (at least 2).
    #[arg(long = "param", value_name = "A")]
    pub param: usize,

    /// Accepted for symmetry with the other commands; minors are always generic.
    #[arg(long)]
    pub generic: bool,

    /// Field for the power search (q or fp:<prime>).
    #[arg(long, default_value = "fp:32003")]
    pub field: String,

    /// Largest exponent N tried in the power search.
    #[arg(long, value_name = "N")]
    pub deg_max: Option<u32>,
}

#[derive(Debug, Clone, Args)]
pub struct RegseqArgs {
    /// The sequence as "p1,p2,…".
    #[arg(long)]
    pub f: String,

    #[arg(long, default_value = "x0,x1,x2,x3")]
    pub vars: String,

    /// Ambient ring A/I with I generated by "g1;g2;…".
    #[arg(long)]
    pub quotient: Option<String>,

    #[command(flatten)]
    pub field: FieldArgs,
}

#[derive(Debug, Clone, Args)]
pub struct CurveArgs {
    #[arg(long)]
    pub a: u32,

    #[arg(long)]
    pub b: u32,

    #[command(flatten)]
    pub field: FieldArgs,
}
