use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use minorant_cli::{
    cmd_bessel_zero, cmd_beta, cmd_critical_radius, cmd_lp_study, cmd_verify_identity, exit_code, render,
    DimRange, Format, Identity, LpGrid, OutputRecord, DEFAULT_C, EXIT_OK,
};

#[derive(Parser)]
#[command(name = "minorant", version, about = "Band-limited minorants of the unit ball")]
struct Cli {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// n-th positive zero of J_nu
    BesselZero {
        #[arg(long, allow_negative_numbers = true)]
        nu: f64,
        #[arg(long)]
        n: usize,
    },
    /// r_d = j_(d/2-1,1)/pi next to its large-d approximation
    CriticalRadius {
        /// A dimension or an inclusive range such as 1..5
        #[arg(long)]
        d: DimRange,
    },
    /// Closed-form beta(d, r), optionally with the LP estimate
    Beta {
        #[arg(long)]
        d: u32,
        #[arg(long, allow_negative_numbers = true)]
        r: f64,
        /// Also solve the discretized problem
        #[arg(long)]
        lp: bool,
        /// LP mesh as <m>x<samples_per_unit>, implies --lp
        #[arg(long)]
        lp_grid: Option<LpGrid>,
        /// Simplex iteration cap
        #[arg(long)]
        lp_max_iterations: Option<usize>,
    },
    /// Quadrature check of the weighted isometry
    VerifyIdentity {
        #[arg(long, allow_negative_numbers = true)]
        nu: f64,
        #[arg(long)]
        n: u32,
        /// Truncation point; chosen from the tail estimate when omitted
        #[arg(long = "T", alias = "truncation")]
        truncation: Option<f64>,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = Identity::Isometry)]
        identity: Identity,
        /// Scale of F = c G_n^2 for the integral identity
        #[arg(long, default_value_t = DEFAULT_C)]
        c: f64,
    },
    /// LP objective along a ladder of meshes doubling m
    LpStudy {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        r: f64,
        /// Coarsest mesh
        #[arg(long, default_value = "32x16")]
        lp_grid: LpGrid,
        #[arg(long, default_value_t = 3)]
        rungs: usize,
    },
}

fn run(command: Command) -> Result<Vec<OutputRecord>, minorant_core::Error> {
    match command {
        Command::BesselZero { nu, n } => Ok(vec![cmd_bessel_zero(nu, n)?]),
        Command::CriticalRadius { d } => cmd_critical_radius(&d),
        Command::Beta {
            d,
            r,
            lp,
            lp_grid,
            lp_max_iterations,
        } => {
            let use_lp = lp || lp_grid.is_some() || lp_max_iterations.is_some();
            let cfg = use_lp.then(|| {
                let mut cfg = lp_grid.unwrap_or_default().config();
                if let Some(n) = lp_max_iterations {
                    cfg.max_iterations = n;
                }
                cfg
            });
            Ok(vec![cmd_beta(d, r, cfg)?])
        }
        Command::VerifyIdentity {
            nu,
            n,
            truncation,
            tol,
            identity,
            c,
        } => Ok(vec![cmd_verify_identity(nu, n, truncation, tol, identity, c)?]),
        Command::LpStudy { d, r, lp_grid, rungs } => cmd_lp_study(d, r, lp_grid, rungs),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(records) => {
            let mut out = std::io::stdout().lock();
            let _ = out.write_all(render(&records, cli.format).as_bytes());
            let code = records.iter().map(OutputRecord::exit_code).find(|&c| c != EXIT_OK).unwrap_or(EXIT_OK);
            ExitCode::from(code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
