//! `gaeta`: batch JSON front end. Reports go to standard output as
//! sorted-key JSON; diagnostics go to standard error. Exit status is 0 when
//! every check passes, 1 when a checked condition fails, and 2 for
//! unsupported, Unknown, or malformed input.

mod commands;
mod io;
mod sweep;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::io::{error_outcome, Outcome};

/// JSON arguments are given inline or as a path to a file.
#[derive(Parser)]
#[command(name = "gaeta", version, about = "Exact computations for Gaeta resolutions on rational surfaces")]
struct Cli {
    /// Emit JSON (the only output format).
    #[arg(long, global = true, default_value_t = true)]
    json: bool,
    /// Indent the JSON report.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Canonical class, exceptional sequence, duals, and basepoint-free family.
    Surface {
        #[arg(long)]
        surface: String,
    },
    /// Line-bundle cohomology.
    Cohom {
        #[arg(long)]
        surface: String,
        #[arg(long)]
        divisor: String,
    },
    /// Exceptional-sequence checks.
    Exc {
        #[command(subcommand)]
        op: ExcOp,
    },
    /// Gaeta-resolution exponents, existence, and twist search.
    Gaeta {
        #[command(subcommand)]
        op: GaetaOp,
    },
    /// Stability hypotheses.
    Stab {
        #[command(subcommand)]
        op: StabOp,
    },
    /// Strange-duality numerics.
    Sd {
        #[command(subcommand)]
        op: SdOp,
    },
    /// Property sweeps.
    Sweep {
        #[command(subcommand)]
        op: SweepOp,
    },
}

#[derive(Subcommand)]
enum ExcOp {
    Verify {
        #[arg(long)]
        surface: String,
    },
}

#[derive(clap::Args)]
struct ClassArgs {
    #[arg(long)]
    surface: String,
    #[arg(long)]
    class: String,
}

#[derive(Subcommand)]
enum GaetaOp {
    Exponents(ClassArgs),
    Exists(ClassArgs),
    Twist {
        #[command(flatten)]
        args: ClassArgs,
        /// Required χ(f(L))/r, as an integer or p/q.
        #[arg(long = "M", allow_hyphen_values = true)]
        m: Option<String>,
    },
}

#[derive(Subcommand)]
enum StabOp {
    Check {
        #[arg(long)]
        surface: String,
        #[arg(long = "H")]
        h: String,
        #[arg(long)]
        class: String,
    },
}

#[derive(Subcommand)]
enum SdOp {
    Report {
        #[arg(long)]
        surface: String,
        #[arg(long)]
        r: i64,
        #[arg(long)]
        ell: i64,
        #[arg(long = "L")]
        l: String,
        #[arg(long = "H")]
        h: String,
    },
}

#[derive(Subcommand)]
enum SweepOp {
    /// Exhaustive comparison of 𝔽ₑ cohomology with monomial counting,
    /// Riemann–Roch, and Serre duality.
    CohomOracle {
        #[arg(long, default_value_t = 4)]
        e_max: u32,
        #[arg(long, default_value_t = 12)]
        range: i64,
    },
    /// Sequence and dual checks on every admissible shape.
    ExcShapes {
        #[arg(long, default_value_t = 4)]
        e_max: u32,
        #[arg(long, default_value_t = 4)]
        t_max: usize,
    },
    /// class_of then exponents on random exponent vectors.
    Roundtrip(RandomArgs),
    /// χ(σ ⊗ ρ) = 0 on random pairs.
    Orthogonality(RandomArgs),
    /// c₂(v) = χ(L) on random ℓ = 1 pairs.
    CountMatch(RandomArgs),
    /// gap ≤ 0 on random hypothesis-satisfying tuples.
    StratumGap(RandomArgs),
}

#[derive(clap::Args)]
struct RandomArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 200)]
    count: usize,
}

fn run(command: Command) -> Outcome {
    let (name, result) = match command {
        Command::Surface { surface } => ("surface", commands::surface(&surface)),
        Command::Cohom { surface, divisor } => ("cohom", commands::cohom(&surface, &divisor)),
        Command::Exc { op: ExcOp::Verify { surface } } => ("exc verify", commands::exc_verify(&surface)),
        Command::Gaeta { op } => match op {
            GaetaOp::Exponents(a) => ("gaeta exponents", commands::gaeta_exponents(&a.surface, &a.class)),
            GaetaOp::Exists(a) => ("gaeta exists", commands::gaeta_exists(&a.surface, &a.class)),
            GaetaOp::Twist { args, m } => ("gaeta twist", commands::gaeta_twist(&args.surface, &args.class, m.as_deref())),
        },
        Command::Stab { op: StabOp::Check { surface, h, class } } => ("stab check", commands::stab_check(&surface, &h, &class)),
        Command::Sd { op: SdOp::Report { surface, r, ell, l, h } } => ("sd report", commands::sd_report(&surface, r, ell, &l, &h)),
        Command::Sweep { op } => {
            return match op {
                SweepOp::CohomOracle { e_max, range } => sweep::cohom_oracle(e_max, range),
                SweepOp::ExcShapes { e_max, t_max } => sweep::exc_shapes(e_max, t_max),
                SweepOp::Roundtrip(a) => sweep::roundtrip(a.seed, a.count),
                SweepOp::Orthogonality(a) => sweep::pairs(a.seed, a.count, false),
                SweepOp::CountMatch(a) => sweep::pairs(a.seed, a.count, true),
                SweepOp::StratumGap(a) => sweep::stratum_gaps(a.seed, a.count),
            }
        }
    };
    result.unwrap_or_else(|e| {
        eprintln!("gaeta {name}: {e}");
        error_outcome(name, &e)
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = run(cli.command);
    let text = if cli.pretty {
        serde_json::to_string_pretty(&outcome.report)
    } else {
        serde_json::to_string(&outcome.report)
    }
    .expect("reports are plain JSON values");
    println!("{text}");
    ExitCode::from(outcome.code as u8)
}
