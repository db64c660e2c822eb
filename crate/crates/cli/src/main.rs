//! `cyclofactor`: build and check `r`-regular complete permutation
//! polynomials over `F_{q^2}` from the command line.
//!
//! Exit status: 0 on success, 2 when the parameters violate the
//! construction's hypotheses (or input is unusable), 1 when a verdict
//! contradicts a claim or an internal invariant fails.

mod bundle;
mod commands;
mod error;
mod gen;
mod report;
mod search;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use cyclofactor_core::VariantKind;

use crate::commands::{ConstructOpts, FactorChoice, FieldOpts};
use crate::error::CliResult;
use crate::report::{Format, Report};

#[derive(Parser)]
#[command(name = "cyclofactor", version, about = "Construct and verify r-regular CPPs over F_{q^2}")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Quadratic factors of the r-th cyclotomic polynomial over F_q.
    Factor(FactorArgs),
    /// Build σ for one spec and emit the verification bundle.
    Construct(ConstructArgs),
    /// Recompute every verdict from a bundle.
    Verify(VerifyArgs),
    /// Cycle structure of a bundle's table, or of σ for a bare spec.
    Cycles(CyclesArgs),
    /// Univariate polynomial form of a bundle's table or a spec's σ.
    Univariate(UnivariateArgs),
    /// Run a parameter grid.
    Search(SearchArgs),
}

#[derive(Args)]
struct FieldArgs {
    /// Characteristic.
    #[arg(long)]
    p: u32,
    /// F_q = F_{p^k}.
    #[arg(long, default_value_t = 1)]
    k: u32,
    /// Monic modulus of F_q over F_p, coefficients low to high.
    #[arg(long, value_delimiter = ',')]
    modulus_q: Option<Vec<u32>>,
    /// Monic modulus of F_{q^2} over F_q as c0,c1,c2 canonical F_q indices.
    #[arg(long, value_delimiter = ',')]
    modulus_q2: Option<Vec<u32>>,
}

impl FieldArgs {
    fn opts(&self) -> FieldOpts {
        FieldOpts { p: self.p, k: self.k, modulus_q: self.modulus_q.clone(), modulus_q2: self.modulus_q2.clone() }
    }
}

#[derive(Args)]
struct OutputArgs {
    /// Output format.
    #[arg(long, visible_alias = "emit", value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct FactorArgs {
    #[command(flatten)]
    field: FieldArgs,
    #[arg(long)]
    r: u64,
    /// List every quadratic factor instead of the default one.
    #[arg(long)]
    all: bool,
    /// Exponent selector s (ζ^s).
    #[arg(long)]
    s: Option<u64>,
    /// Second exponent t when q ≡ 1 (mod r).
    #[arg(long)]
    t: Option<u64>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct ConstructArgs {
    #[command(flatten)]
    field: FieldArgs,
    #[arg(long)]
    r: u64,
    /// type4, type5 or general.
    #[arg(long, default_value = "type4")]
    variant: VariantKind,
    /// Nonzero scalar: canonical F_q index or "generator".
    #[arg(long, default_value = "1")]
    m: String,
    /// Position of h in the sorted list from `factor --all`.
    #[arg(long)]
    h_index: Option<usize>,
    #[arg(long)]
    s: Option<u64>,
    #[arg(long)]
    t: Option<u64>,
    /// identity | monomial | monomial:k | random:seed
    #[arg(long, default_value = "identity")]
    a1: String,
    /// As for a1, or inverse-of-a1.
    #[arg(long, default_value = "inverse-of-a1")]
    a2: String,
    /// General variant: identity | random:seed | linear:m1,m2,m3,m4
    #[arg(long, default_value = "identity")]
    tau1: String,
    /// As for tau1, or inverse-of-tau1.
    #[arg(long, default_value = "inverse-of-tau1")]
    tau2: String,
    /// General variant: M as m1,m2,m3,m4 (defaults to the type4 matrix).
    #[arg(long)]
    matrix: Option<String>,
    /// Include every cycle explicitly in the cycle report.
    #[arg(long)]
    list_cycles: bool,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    bundle: PathBuf,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct CyclesArgs {
    /// A bundle from `construct`, or just its "spec" object.
    #[arg(long)]
    spec: PathBuf,
    /// Include every cycle explicitly.
    #[arg(long)]
    list: bool,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct UnivariateArgs {
    /// A bundle from `construct`, or just its "spec" object.
    #[arg(long)]
    spec: PathBuf,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct SearchArgs {
    /// Grid description; the built-in grid is used when omitted.
    #[arg(long)]
    grid: Option<PathBuf>,
    #[command(flatten)]
    out: OutputArgs,
}

fn run(cli: Cli) -> CliResult<(Report, OutputArgs)> {
    Ok(match cli.command {
        Command::Factor(a) => (commands::factor(&a.field.opts(), a.r, a.all, a.s, a.t)?, a.out),
        Command::Construct(a) => {
            let opts = ConstructOpts {
                r: a.r,
                variant: a.variant,
                m: a.m,
                factor: FactorChoice { h_index: a.h_index, s: a.s, t: a.t },
                a1: a.a1,
                a2: a.a2,
                tau1: a.tau1,
                tau2: a.tau2,
                matrix: a.matrix,
                list_cycles: a.list_cycles,
            };
            (commands::construct(&a.field.opts(), &opts)?, a.out)
        }
        Command::Verify(a) => (commands::verify(&a.bundle)?, a.out),
        Command::Cycles(a) => (commands::cycles(&a.spec, a.list)?, a.out),
        Command::Univariate(a) => (commands::univariate(&a.spec)?, a.out),
        Command::Search(a) => (search::search(search::load_grid(a.grid.as_deref())?)?, a.out),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(cli).and_then(|(report, out)| {
        report.emit(out.format, out.output.as_deref())?;
        Ok(report.contradictions)
    });
    match result {
        Ok(contradictions) if contradictions.is_empty() => ExitCode::SUCCESS,
        Ok(contradictions) => {
            for c in &contradictions {
                eprintln!("contradiction: {c}");
            }
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
