mod commands;

use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Parser, Debug)]
#[command(name = "hecke", version, about = "Exact computations with infinitesimal and rational Cherednik-type Hecke algebras")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    /// Seed for randomized sampling; recorded in every report.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args, Debug, Clone)]
pub struct SpecArg {
    /// Algebra spec JSON file (`-` for stdin).
    #[arg(long)]
    pub spec: String,
}

/// Module to analyse: a Verma module of an algebra or the polynomial (Dunkl) module.
#[derive(Args, Debug, Clone)]
pub struct ModuleArgs {
    /// Algebra spec JSON; builds the Verma module M(Y).
    #[arg(long, conflicts_with = "dunkl", required_unless_present = "dunkl")]
    pub spec: Option<String>,
    /// Dunkl data JSON `{t, finite | orthogonal}`; builds the polynomial module.
    #[arg(long)]
    pub dunkl: Option<String>,
    /// Base module Y as JSON `{"group": [matrices]}` or `{"lie": [matrices]}`; default trivial.
    #[arg(long, requires = "spec")]
    pub ymod: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Deformation coefficients r_m (gl) or ℓ_m (sp), optionally assembled into κ.
    Genfun {
        #[arg(long, value_parser = ["gl", "sp"])]
        family: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        order: usize,
        /// Comma-separated β_0, β_1, …; prints the assembled κ as well.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        beta: Option<Vec<String>>,
    },
    /// Builds an algebra and summarizes its relations.
    Build(SpecArg),
    /// Normal form of a word such as `y1 x1^2 E12`.
    Nf {
        #[command(flatten)]
        spec: SpecArg,
        word: String,
    },
    /// Jacobi identity and critical-pair check of the PBW property.
    Flatness(SpecArg),
    /// Ranks of filtered pieces compared with the undeformed algebra.
    Census {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long, default_value_t = 3)]
        degree: usize,
    },
    /// Lie-algebra closure of gl_n ⊕ h ⊕ h* with κ(y, x) = r_1(x, y), and the map into sl_{n+1}.
    LieClosure {
        #[arg(long)]
        n: usize,
        /// Omit the (x,y)Id part of r_1.
        #[arg(long)]
        drop_trace: bool,
    },
    /// Dunkl operators.
    Dunkl {
        #[command(subcommand)]
        op: DunklOp,
    },
    /// Verma (or polynomial) module: dimensions and Euler eigenvalues.
    Verma {
        #[command(flatten)]
        module: ModuleArgs,
        #[arg(long, default_value_t = 4)]
        top: usize,
    },
    /// Singular vectors (killed by every y) in one degree.
    Singular {
        #[command(flatten)]
        module: ModuleArgs,
        #[arg(long)]
        degree: usize,
    },
    /// Shapovalov form ranks per degree.
    Shapovalov {
        #[command(flatten)]
        module: ModuleArgs,
        #[arg(long, default_value_t = 4)]
        top: usize,
        /// Include the Gram matrices.
        #[arg(long)]
        gram: bool,
    },
    /// Structure of L(ℂ) for O(d) at k = -d/2 - m.
    Lc {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        m: usize,
    },
    /// Character series of M(Y) at a torus point.
    Character {
        /// Eigenvalues of g on h* (comma-separated); default all 1.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        eigenvalues: Option<Vec<String>>,
        /// Dimension of h when no eigenvalues are given.
        #[arg(long)]
        d: Option<usize>,
        /// χ_Y(g).
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        chi: String,
        /// Scalar c_Y by which c acts on Y.
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        c: String,
        #[arg(long, default_value_t = 8)]
        order: usize,
    },
    /// Singular-vector criterion for H_β(gl_n): c_{S^N h*} - c_ℂ = N.
    Criterion {
        #[arg(long)]
        n: usize,
        #[arg(long = "N")]
        big_n: usize,
        /// Comma-separated β_0, β_1, …
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, conflicts_with = "distribution")]
        beta: Option<Vec<String>>,
        /// Distribution data JSON `{points: [{at, order, coeff}]}`.
        #[arg(long, required_unless_present = "beta")]
        distribution: Option<String>,
    },
    /// Wreath products Γ_n = S_n ⋉ Γ^n.
    Wreath {
        #[command(subcommand)]
        op: WreathOp,
    },
}

#[derive(Subcommand, Debug)]
enum DunklOp {
    /// Applies D_y to a polynomial in u1, …, ud.
    Apply {
        #[arg(long)]
        dunkl: String,
        #[arg(long)]
        poly: String,
        /// Comma-separated coordinates of y; default the first basis vector.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        y: Option<Vec<String>>,
    },
    /// [D_i, D_j] = 0 on all monomials up to a degree, or on random samples.
    Commute {
        #[arg(long)]
        dunkl: String,
        #[arg(long, default_value_t = 4)]
        degree: u32,
        /// Check this many random polynomials (drawn from --seed) instead of every monomial.
        #[arg(long)]
        sample: Option<usize>,
    },
    /// Matrices of D_i from degree n to n-1 and of x_i from n to n+1.
    Matrices {
        #[arg(long)]
        dunkl: String,
        #[arg(long)]
        degree: u32,
    },
}

#[derive(Subcommand, Debug)]
enum WreathOp {
    /// McKay graph as an adjacency list (or DOT text with --dot).
    Graph {
        /// Γ as JSON, e.g. `{"cyclic": 3}`, `{"binary_dihedral": 8}`, `"torus"`, or a file path.
        #[arg(long)]
        gamma: String,
        /// Vertex window `a..b` for infinite groups.
        #[arg(long, default_value = "-3..3", allow_hyphen_values = true)]
        window: String,
        #[arg(long)]
        dot: bool,
    },
    /// Finite-dimensionality conditions for W ⊗ Y↑.
    Check {
        #[arg(long)]
        spec: String,
    },
}

/// Envelope around every report; `data` is verb specific.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub seed: u64,
    pub ok: bool,
    pub data: Value,
}

/// Result of one verb: JSON data, a text rendering and whether its check passed.
pub struct Outcome {
    pub data: Value,
    pub text: String,
    pub ok: bool,
}

#[derive(Debug)]
pub enum CliError {
    Schema(String),
    CheckFailed(String),
    Internal(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Schema(_) => 2,
            CliError::CheckFailed(_) => 3,
            CliError::Internal(_) => 4,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Schema(_) => "schema",
            CliError::CheckFailed(_) => "check_failed",
            CliError::Internal(_) => "internal",
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Schema(m) | CliError::CheckFailed(m) | CliError::Internal(m) => m,
        }
    }
}

impl From<hecke::Error> for CliError {
    fn from(e: hecke::Error) -> Self {
        use hecke::Error::*;
        match e {
            NotFlat(_) | NonTerminating(_) => CliError::CheckFailed(e.to_string()),
            NotDivisible(_) | NonzeroConstantTerm | OrderMismatch(_) | SpecMismatch => CliError::Internal(e.to_string()),
            _ => CliError::Schema(e.to_string()),
        }
    }
}

fn command_name(c: &Command) -> String {
    match c {
        Command::Genfun { .. } => "genfun".into(),
        Command::Build(_) => "build".into(),
        Command::Nf { .. } => "nf".into(),
        Command::Flatness(_) => "flatness".into(),
        Command::Census { .. } => "census".into(),
        Command::LieClosure { .. } => "lie-closure".into(),
        Command::Dunkl { op } => match op {
            DunklOp::Apply { .. } => "dunkl apply".into(),
            DunklOp::Commute { .. } => "dunkl commute".into(),
            DunklOp::Matrices { .. } => "dunkl matrices".into(),
        },
        Command::Verma { .. } => "verma".into(),
        Command::Singular { .. } => "singular".into(),
        Command::Shapovalov { .. } => "shapovalov".into(),
        Command::Lc { .. } => "lc".into(),
        Command::Character { .. } => "character".into(),
        Command::Criterion { .. } => "criterion".into(),
        Command::Wreath { op } => match op {
            WreathOp::Graph { .. } => "wreath graph".into(),
            WreathOp::Check { .. } => "wreath check".into(),
        },
    }
}

fn dispatch(cli: &Cli) -> Result<Outcome, CliError> {
    use commands as c;
    match &cli.command {
        Command::Genfun { family, n, order, beta } => c::genfun(family, *n, *order, beta.as_deref()),
        Command::Build(s) => c::build(&s.spec),
        Command::Nf { spec, word } => c::nf(&spec.spec, word),
        Command::Flatness(s) => c::flatness(&s.spec),
        Command::Census { spec, degree } => c::census(&spec.spec, *degree),
        Command::LieClosure { n, drop_trace } => c::lie_closure(*n, *drop_trace),
        Command::Dunkl { op } => match op {
            DunklOp::Apply { dunkl, poly, y } => c::dunkl_apply(dunkl, poly, y.as_deref()),
            DunklOp::Commute { dunkl, degree, sample } => c::dunkl_commute(dunkl, *degree, *sample, cli.seed),
            DunklOp::Matrices { dunkl, degree } => c::dunkl_matrices(dunkl, *degree),
        },
        Command::Verma { module, top } => c::verma(module, *top),
        Command::Singular { module, degree } => c::singular(module, *degree),
        Command::Shapovalov { module, top, gram } => c::shapovalov(module, *top, *gram),
        Command::Lc { d, m } => c::lc(*d, *m),
        Command::Character { eigenvalues, d, chi, c: cy, order } => c::character(eigenvalues.as_deref(), *d, chi, cy, *order),
        Command::Criterion { n, big_n, beta, distribution } => c::criterion(*n, *big_n, beta.as_deref(), distribution.as_deref()),
        Command::Wreath { op } => match op {
            WreathOp::Graph { gamma, window, dot } => c::wreath_graph(gamma, window, *dot),
            WreathOp::Check { spec } => c::wreath_check(spec),
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = command_name(&cli.command);
    let result = catch_unwind(AssertUnwindSafe(|| dispatch(&cli)))
        .unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(CliError::Internal(msg.unwrap_or_else(|| "panic".into())))
        });
    let mut out = std::io::stdout().lock();
    match result {
        Ok(o) => {
            match cli.format {
                Format::Json => {
                    let r = Report { command: name, seed: cli.seed, ok: o.ok, data: o.data };
                    let _ = writeln!(out, "{}", serde_json::to_string_pretty(&r).expect("reports serialize"));
                }
                Format::Text => {
                    let _ = writeln!(out, "# {name} (seed {})", cli.seed);
                    let _ = write!(out, "{}", o.text);
                    if !o.text.ends_with('\n') {
                        let _ = writeln!(out);
                    }
                    if !o.ok {
                        let _ = writeln!(out, "check failed");
                    }
                }
            }
            if o.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(3)
            }
        }
        Err(e) => {
            match cli.format {
                Format::Json => {
                    let v = serde_json::json!({
                        "command": name,
                        "seed": cli.seed,
                        "error": { "kind": e.kind(), "message": e.message() },
                    });
                    let _ = writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("errors serialize"));
                }
                Format::Text => eprintln!("error ({}): {}", e.kind(), e.message()),
            }
            ExitCode::from(e.code())
        }
    }
}
