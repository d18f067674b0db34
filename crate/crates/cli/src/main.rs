mod commands;
mod report;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use spinchain::crystal::RecursionVariant;

use commands::{Ctx, CliError};
use report::Format;

#[derive(Parser)]
#[command(
    name = "spinchain",
    version,
    about = "Exact partition functions for inhomogeneous ±1 spin chains"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format (`--out` works too).
    #[arg(long, global = true, value_enum, default_value_t = Format::Json, alias = "out")]
    format: Format,
    /// Decimal digits carried by numeric output.
    #[arg(long, global = true, default_value_t = 30)]
    precision: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VariantArg {
    /// The index placement validated against enumeration.
    Oracle,
    /// The placement as published, kept for comparison.
    Printed,
}

impl From<VariantArg> for RecursionVariant {
    fn from(variant: VariantArg) -> Self {
        match variant {
            VariantArg::Oracle => RecursionVariant::OracleValidated,
            VariantArg::Printed => RecursionVariant::AsPrinted,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Partition functions Z⁺ and Z^± for symmetric chains of growing size.
    Global {
        /// Interaction profile (JSON file).
        #[arg(long)]
        profile: PathBuf,
        /// Largest chain index n to report.
        #[arg(long)]
        nmax: u32,
        /// Inverse temperature; values come out as decimals.
        #[arg(long, conflicts_with = "tau")]
        beta: Option<String>,
        /// Exact weight τ = e^{-β}; values come out as rationals.
        #[arg(long)]
        tau: Option<String>,
    },
    /// Fixed-count window tables built by the two-family recursion.
    Crystal {
        #[arg(long)]
        profile: PathBuf,
        /// Window of free sites, written m..n.
        #[arg(long, allow_hyphen_values = true)]
        window: String,
        /// Which recursion to run.
        #[arg(long, value_enum, default_value_t = VariantArg::Oracle)]
        variant: VariantArg,
        #[arg(long, conflicts_with = "tau")]
        beta: Option<String>,
        #[arg(long)]
        tau: Option<String>,
        /// Compare every entry against brute-force enumeration.
        #[arg(long)]
        check: bool,
    },
    /// Homogeneous-chain polynomials in s = e^{-βI}.
    Poly {
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        r: Option<u32>,
        /// Build by the closed form (the default route).
        #[arg(long, conflicts_with = "recursive")]
        closed: bool,
        /// Build by the recursion instead.
        #[arg(long)]
        recursive: bool,
        /// Evaluate at s = TAU instead of printing coefficients.
        #[arg(long)]
        eval: Option<String>,
        /// Sweep the closed-form/recursion identities and report OK or FAIL.
        #[arg(long, conflicts_with_all = ["n", "r", "closed", "recursive", "eval"])]
        verify: bool,
        /// Sweep depth for --verify.
        #[arg(long, default_value_t = 30)]
        nmax: u32,
    },
    /// Boundary-conditioned probabilities of spin counts on a window.
    Prob {
        #[arg(long)]
        profile: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        window: String,
        /// Pinned boundary spins, e.g. ++ or -+.
        #[arg(long, allow_hyphen_values = true)]
        boundary: String,
        #[arg(long, conflicts_with = "tau")]
        beta: Option<String>,
        #[arg(long)]
        tau: Option<String>,
        /// r=K for one count, all for the whole distribution.
        #[arg(long, default_value = "all")]
        event: String,
    },
    /// Partial sums and contour bounds for a coupling profile.
    Diagnose {
        #[arg(long)]
        profile: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        window: String,
        /// Largest contour extent to test.
        #[arg(long)]
        kmax: i64,
    },
    /// Cross-validate every computation route on the builtin profiles.
    Verify {
        /// Largest chain index for the global checks.
        #[arg(long, default_value_t = 3)]
        nmax: u32,
        /// Profile set to run against.
        #[arg(long, default_value = "builtin")]
        profiles: String,
        /// Longest window length exercised by the crystal checks.
        #[arg(long, default_value_t = 6)]
        window: usize,
        /// Depth of the homogeneous-chain identity sweep.
        #[arg(long, default_value_t = 12)]
        polymax: u32,
    },
    /// Time the oracle, the recursions, and the closed form.
    Bench {
        /// Comma-separated chain sizes; empty for an empty report.
        #[arg(long)]
        sizes: Option<String>,
    },
}

fn main() {
    // Die quietly when the reader closes the pipe, as line tools should.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    let ctx = Ctx {
        format: cli.format,
        precision: cli.precision,
    };
    let result = match &cli.command {
        Command::Global {
            profile,
            nmax,
            beta,
            tau,
        } => commands::global(&ctx, profile, *nmax, beta.as_deref(), tau.as_deref()),
        Command::Crystal {
            profile,
            window,
            variant,
            beta,
            tau,
            check,
        } => commands::crystal(
            &ctx,
            profile,
            window,
            (*variant).into(),
            beta.as_deref(),
            tau.as_deref(),
            *check,
        ),
        Command::Poly {
            n,
            r,
            closed: _,
            recursive,
            eval,
            verify,
            nmax,
        } => commands::poly(&ctx, *n, *r, *recursive, eval.as_deref(), *verify, *nmax),
        Command::Prob {
            profile,
            window,
            boundary,
            beta,
            tau,
            event,
        } => commands::prob(
            &ctx,
            profile,
            window,
            boundary,
            beta.as_deref(),
            tau.as_deref(),
            event,
        ),
        Command::Diagnose {
            profile,
            window,
            kmax,
        } => commands::diagnose(&ctx, profile, window, *kmax),
        Command::Verify {
            nmax,
            profiles,
            window,
            polymax,
        } => commands::verify(&ctx, *nmax, profiles, *window, *polymax),
        Command::Bench { sizes } => commands::bench(&ctx, sizes.as_deref()),
    };
    match result {
        Ok(()) => {}
        Err(CliError::Usage(message)) => {
            eprintln!("error: {message}");
            std::process::exit(2);
        }
        Err(CliError::Inconsistency(message)) => {
            eprintln!("error: {message}");
            std::process::exit(3);
        }
    }
}
