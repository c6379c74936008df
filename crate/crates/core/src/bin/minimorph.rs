use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;

use minimorph::polyexact::{Branch, GaussRat};
use minimorph::suite::{
    report_all, trace_report, variety_report, verify_report, Report, RunConfig, VerifyMode,
};
use minimorph::Error;

const COMPLEX_HELP: &str = "\
Complex numbers are written a, bi, a+bi or a-bi, where a and b are integers,
fractions p/q or finite decimals, and `i` alone means 1i. Examples: 3, -4,
5i, -i, 1/2+3/4i, 0.25-2i. Components are kept as exact rationals.

Exit status: 0 if every non-skipped check passes, 1 if a check fails,
2 on invalid input or other errors. The environment variable MINIMORPH_SEED
overrides --seed.";

#[derive(Parser)]
#[command(name = "minimorph", version, about = "Harmonic morphisms from eigenfamilies of polynomials and the minimal surfaces in their fibers", after_help = COMPLEX_HELP)]
struct Cli {
    #[command(flatten)]
    opts: GlobalOpts,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Args)]
struct GlobalOpts {
    /// Random seed recorded in every report
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Gauss-Newton residual tolerance
    #[arg(long, global = true)]
    newton_tol: Option<f64>,
    /// Tolerance for quantities that should vanish
    #[arg(long, global = true)]
    zero_tol: Option<f64>,
    /// Bound on the mean-curvature norm for minimality verdicts
    #[arg(long, global = true)]
    curvature_tol: Option<f64>,
    /// Finite-difference step of the curvature estimator
    #[arg(long, global = true)]
    fd_h: Option<f64>,
    /// Record wall-clock timings (reports are then not byte-reproducible)
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Run the identity checks for one catalog entry
    #[command(after_help = COMPLEX_HELP)]
    Verify {
        /// Catalog name, e.g. s4-quadric or phi-odd:d=3,n=2
        name: String,
        /// Exact polynomial identities (needs a rational form)
        #[arg(long, conflicts_with = "numeric", required_unless_present = "numeric")]
        exact: bool,
        /// Sampled tension, conformality, pullback and radial checks
        #[arg(long)]
        numeric: bool,
        /// Write the JSON report here as well as to stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Point of the quadric coefficient variety over (b1, b2)
    #[command(after_help = COMPLEX_HELP)]
    Variety {
        #[arg(allow_hyphen_values = true)]
        b1: String,
        #[arg(allow_hyphen_values = true)]
        b2: String,
        /// Square-root branch for a1: + or -
        #[arg(allow_hyphen_values = true)]
        branch: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Trace a patch of the fiber Phi = alpha and export it
    #[command(after_help = COMPLEX_HELP)]
    Trace {
        /// Catalog name of a map on S^4 or H^4, e.g. s4-quadric
        name: String,
        /// Fiber value, a non-zero complex number
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        /// Grid size as NxM
        #[arg(long, default_value = "21x21")]
        grid: String,
        /// Grid step
        #[arg(long, default_value_t = minimorph::suite::DEFAULT_H)]
        h: f64,
        /// Directory for the PLY, CSV and JSON files and the report
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run every acceptance check and write one consolidated report
    ReportAll {
        /// Grid step of the traced patches
        #[arg(long)]
        h: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_grid(s: &str) -> Result<(usize, usize), Error> {
    let bad = || Error::Parse(format!("grid must look like 21x21, got `{s}`"));
    let (a, b) = s.split_once(['x', 'X']).ok_or_else(bad)?;
    Ok((
        a.trim().parse().map_err(|_| bad())?,
        b.trim().parse().map_err(|_| bad())?,
    ))
}

fn config(opts: &GlobalOpts) -> Result<RunConfig, Error> {
    let mut cfg = RunConfig::default();
    if let Some(s) = opts.seed {
        cfg.seed = s;
    }
    if let Some(v) = opts.newton_tol {
        cfg.newton_tol = v;
    }
    if let Some(v) = opts.zero_tol {
        cfg.zero_tol = v;
    }
    if let Some(v) = opts.curvature_tol {
        cfg.curvature_tol = v;
    }
    if let Some(v) = opts.fd_h {
        cfg.fd_h = v;
    }
    cfg.record_timing = opts.timing;
    cfg.with_env_seed()
}

fn emit(report: &Report, out: Option<&PathBuf>) -> Result<(), Error> {
    if let Some(p) = out {
        report.write(p)?;
    }
    println!("{}", report.to_json()?);
    Ok(())
}

fn run(cli: Cli) -> Result<Report, Error> {
    let mut cfg = config(&cli.opts)?;
    match cli.cmd {
        Command::Verify {
            name, exact, out, ..
        } => {
            let mode = if exact {
                VerifyMode::Exact
            } else {
                VerifyMode::Numeric
            };
            cfg.out = out.as_ref().map(|p| p.display().to_string());
            let r = verify_report(&name, mode, &cfg)?;
            emit(&r, out.as_ref())?;
            Ok(r)
        }
        Command::Variety {
            b1,
            b2,
            branch,
            out,
        } => {
            let b1: GaussRat = b1.parse()?;
            let b2: GaussRat = b2.parse()?;
            let branch: Branch = branch.parse()?;
            cfg.out = out.as_ref().map(|p| p.display().to_string());
            let r = variety_report(&b1, &b2, branch, &cfg)?;
            emit(&r, out.as_ref())?;
            Ok(r)
        }
        Command::Trace {
            name,
            alpha,
            grid,
            h,
            out,
        } => {
            let alpha: Complex64 = alpha.parse::<GaussRat>()?.to_c64();
            let grid = parse_grid(&grid)?;
            cfg.h = h;
            cfg.out = out.as_ref().map(|p| p.display().to_string());
            let t = trace_report(&name, alpha, grid, out.as_deref(), &cfg)?;
            let report_path = out.map(|d| d.join("report.json"));
            emit(&t.report, report_path.as_ref())?;
            Ok(t.report)
        }
        Command::ReportAll { h, out } => {
            if let Some(h) = h {
                cfg.h = h;
            }
            cfg.out = out.as_ref().map(|p| p.display().to_string());
            let r = report_all(&cfg)?;
            for c in &r.checks {
                eprintln!("{}", c.line());
            }
            emit(&r, out.as_ref())?;
            Ok(r)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(r) if r.all_pass() => ExitCode::SUCCESS,
        Ok(_) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
