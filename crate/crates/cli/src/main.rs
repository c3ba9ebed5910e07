//! `quivar`: command-line front end. JSON on stdout, diagnostics on stderr;
//! exit 2 on bad arguments, 3 on an unsupported quiver type, 1 when a
//! computation fails.

mod commands;
mod io;
mod output;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::output::Format;

#[derive(Parser, Debug)]
#[command(name = "quivar", version, about = "Quiver varieties, attracting sets and the coproduct block model")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    /// Quiver file, or a bundled name: A1, A2, A3, D4, jordan, affine-A1.
    #[arg(long, global = true)]
    pub quiver: Option<String>,
    /// Numeric tolerance (default 1e-9, or QUIVAR_PRECISION).
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Path-length cap for invariant records (default (Σv)²).
    #[arg(long, global = true)]
    pub cap: Option<usize>,
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Convert input matrices exactly to Gaussian rationals and compute exactly.
    #[arg(long, global = true)]
    pub exact: bool,
}

#[derive(Args, Debug, Clone)]
pub struct SplitDims {
    #[arg(long)]
    pub v: String,
    #[arg(long)]
    pub w1: String,
    #[arg(long)]
    pub w2: String,
}

#[derive(Args, Debug, Clone)]
pub struct RepArgs {
    /// Representation file.
    #[arg(long)]
    pub rep: String,
    /// Override the file's framing split with this `W¹` dimension vector.
    #[arg(long)]
    pub w1: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Finite, affine (with δ) or indefinite.
    Type,
    /// Positive roots up to a bound, tagged real or imaginary.
    Roots {
        #[arg(long)]
        bound: String,
    },
    /// Strata of the affine quotient M₀(v, w).
    Strata {
        #[arg(long)]
        v: String,
        #[arg(long)]
        w: String,
    },
    /// Components of the fixed locus for W = W¹ ⊕ W², with codimensions.
    Fixed(SplitDims),
    /// The component order (JSON poset, or DOT with --format dot).
    Poset(SplitDims),
    /// Strata of the fixed locus with their σ-fiber counts.
    SigmaFibers(SplitDims),
    /// Moment map of a representation.
    Mu(RepArgs),
    /// Stability of a representation.
    Stable(RepArgs),
    /// Membership in the attracting sets T₀, T̃₀, T₀⁻.
    Member(RepArgs),
    /// Invariants of lim_{t→0} λ(t)x.
    Limit(RepArgs),
    /// Solve μ = 0 by damped Gauss-Newton.
    Solve {
        /// Starting representation; random (from --seed) when omitted.
        #[arg(long)]
        rep: Option<String>,
        #[arg(long)]
        v: Option<String>,
        #[arg(long)]
        w: Option<String>,
        #[arg(long, default_value_t = 200)]
        max_iter: usize,
        /// Random restarts until a stable solution is found.
        #[arg(long, default_value_t = 1)]
        attempts: usize,
    },
    /// Correspondence classes: invert, check, coassoc.
    Coproduct {
        #[command(subcommand)]
        op: CoproductOp,
    },
    /// Coassociativity on triple components, for given or generated classes.
    Coassoc(CoassocArgs),
    /// Tensor product decomposition for a finite ADE type.
    Tensor {
        #[arg(long = "type")]
        kind: String,
        #[arg(long)]
        lhs: String,
        #[arg(long)]
        rhs: String,
    },
    /// Multiplicity n_{x¹,x²}^{x⁰} from quiver data.
    TensorN {
        #[arg(long)]
        v1: String,
        #[arg(long)]
        w1: String,
        #[arg(long)]
        v2: String,
        #[arg(long)]
        w2: String,
        #[arg(long)]
        v0: String,
    },
    /// Oracle-equivalence suite.
    Selftest {
        /// Smaller samples.
        #[arg(long)]
        quick: bool,
    },
}

#[derive(Subcommand, Debug)]
pub enum CoproductOp {
    Invert {
        #[arg(long)]
        poset: String,
        #[arg(long)]
        class: String,
    },
    /// Support and splitting checks; an invalid class is reported, not an error.
    Check {
        #[arg(long)]
        poset: String,
        #[arg(long)]
        class: String,
    },
    Coassoc(CoassocArgs),
}

#[derive(Args, Debug, Clone)]
pub struct CoassocArgs {
    /// Triple poset file (`{"v": ..}` or `{"triples": ..}`).
    #[arg(long)]
    pub triples: Option<String>,
    /// Shortcut for `{"v": ..}` with one-dimensional blocks.
    #[arg(long)]
    pub v: Option<String>,
    /// File with the four classes keyed `c12,3`, `c1,23`, `c(1,2),3`, `c1,(2,3)`.
    #[arg(long)]
    pub classes: Option<String>,
    /// Generate classes instead: `diagonal` (always coassociative) or `random`.
    #[arg(long, value_parser = ["diagonal", "random"])]
    pub generate: Option<String>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match commands::dispatch(&cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(out.as_bytes());
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code as u8)
        }
    }
}
