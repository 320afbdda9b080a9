mod complex;
mod output;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use output::{num, write_csv, Manifest};
use ramsum::arith::{cohen_sum, cohen_sum_table, SumParams};
use ramsum::bartz::{decomposition, functional_equation_residual, residue_probe};
use ramsum::config::TruncationConfig;
use ramsum::explicit::{explicit_c, explicit_psi};
use ramsum::series::{convergence_sweep, growth_exponent, GrowthEstimate};
use ramsum::zeta::{
    load_zero_table, parse_ordinates, refine_zero, verify_zero, zeta_eval, EvalAccuracy, ZeroTable, ZERO_VERIFY_TOL,
};
use rayon::prelude::*;
use std::f64::consts::PI;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] ramsum::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    /// The CSV was written but some rows report a failed check.
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) if e.is_numeric() => 3,
            CliError::Failed(_) => 3,
            _ => 2,
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Generalized Ramanujan sums, explicit formulas over zeta zeros and the
/// Bartz function, with CSV output.
#[derive(Parser)]
#[command(name = "ramsum", version)]
struct Cli {
    /// Zero table file (one ordinate per line); "bundled" selects the built-in 100 zeros.
    #[arg(long, global = true, env = "RAMSUM_ZERO_TABLE")]
    table: Option<String>,
    /// Output file; stdout when absent or "-".
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct ParamArgs {
    /// The argument n of c_q^(β)(n).
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    n: u64,
    /// The power β.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..=64))]
    beta: u32,
}

impl ParamArgs {
    fn params(&self) -> CliResult<SumParams> {
        Ok(SumParams::new(self.n, self.beta)?)
    }
}

#[derive(Args, Clone, Copy)]
struct GridArgs {
    #[arg(long)]
    xmin: f64,
    #[arg(long)]
    xmax: f64,
    #[arg(long, default_value_t = 1.0)]
    xstep: f64,
    /// Number of zeros taken from the table.
    #[arg(long, default_value_t = 100)]
    pairs: usize,
    /// Stop threshold for the trivial-zero series.
    #[arg(long, default_value_t = 1e-16)]
    tol: f64,
}

#[derive(Args, Clone, Copy)]
struct ContourArgs {
    #[command(flatten)]
    p: ParamArgs,
    /// Number of zeros in the zero sum.
    #[arg(long, default_value_t = 100)]
    pairs: usize,
    /// Cutoff Q of the pole series.
    #[arg(long, default_value_t = 10_000)]
    qmax: u64,
    /// Initial Simpson panel width.
    #[arg(long, default_value_t = 0.05)]
    quad_step: f64,
    /// Upper limit of the vertical integral (chosen from a decay bound when absent).
    #[arg(long)]
    t_cut: Option<f64>,
    /// Stop threshold for convergent power series.
    #[arg(long, default_value_t = 1e-16)]
    tol: f64,
}

impl ContourArgs {
    fn config(&self) -> TruncationConfig {
        TruncationConfig {
            zero_pairs: self.pairs,
            series_tol: self.tol,
            q_cutoff: self.qmax,
            quad_step: self.quad_step,
            t_cut: self.t_cut,
        }
    }

    fn manifest(&self, name: &str) -> Manifest {
        Manifest::new(name)
            .param("n", self.p.n)
            .param("beta", self.p.beta)
            .param("pairs", self.pairs)
            .param("qmax", self.qmax)
            .param("quad_step", num(self.quad_step))
            .param("t_cut", self.t_cut.map_or("auto".to_string(), num))
            .param("tol", num(self.tol))
    }
}

#[derive(Subcommand)]
enum Command {
    /// Table of c_q^(β)(n) for q in [qmin, qmax].
    Csum {
        #[command(flatten)]
        p: ParamArgs,
        #[arg(long, default_value_t = 1)]
        qmin: u64,
        #[arg(long)]
        qmax: u64,
    },
    /// Truncated explicit formula for the half-jump summatory function of c_q over an x grid.
    ExplicitC {
        #[command(flatten)]
        p: ParamArgs,
        #[command(flatten)]
        g: GridArgs,
    },
    /// Truncated explicit formula for the generalized Chebyshev function (n plays the role of m).
    ExplicitPsi {
        #[command(flatten)]
        p: ParamArgs,
        #[command(flatten)]
        g: GridArgs,
    },
    /// Partial sums of Σ c_q/q^s against σ_{1−s/β}(n)/ζ(s).
    Series {
        #[command(flatten)]
        p: ParamArgs,
        /// The exponent s, written a+bi.
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        /// Comma-separated ascending cutoffs Q.
        #[arg(long, value_delimiter = ',', conflicts_with = "qmax")]
        cutoffs: Vec<u64>,
        /// Emit every Q from 1 to qmax.
        #[arg(long)]
        qmax: Option<u64>,
    },
    /// Bartz function checks.
    Bartz {
        #[command(subcommand)]
        command: BartzCommand,
    },
    /// Zero table verification, refinement and export.
    Zeros {
        #[command(subcommand)]
        command: ZerosCommand,
    },
    /// Growth exponent of the summatory function of c_q up to xmax.
    Growth {
        #[command(flatten)]
        p: ParamArgs,
        #[arg(long, value_parser = clap::value_parser!(u64).range(100..))]
        xmax: u64,
    },
}

#[derive(Subcommand)]
enum BartzCommand {
    /// Residual of ϖ(z) + conj ϖ(z̄) − A(z) for both forms of A.
    Fe {
        #[command(flatten)]
        c: ContourArgs,
        /// Points z (0 < Im z < π), comma separated, each written a+bi.
        #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
        z: Vec<String>,
    },
    /// Zero sum against the three contour pieces.
    Decomp {
        #[command(flatten)]
        c: ContourArgs,
        /// Points z with Im z > 0, comma separated, each written a+bi.
        #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
        z: Vec<String>,
    },
    /// Residues at z = log q against −c_q(n)/(2πi).
    Residue {
        #[command(flatten)]
        c: ContourArgs,
        /// Values of q, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        q: Vec<u64>,
        /// Radius of the sampling circle.
        #[arg(long, default_value_t = 1e-3)]
        eps: f64,
    },
}

#[derive(Subcommand)]
enum ZerosCommand {
    /// Checks |ζ(½+iγ)| and a sign change of Hardy's Z for every ordinate.
    Verify {
        /// "bundled" or a file path; defaults to --table, then the bundled table.
        source: Option<String>,
        #[arg(long, default_value_t = ZERO_VERIFY_TOL)]
        tol: f64,
    },
    /// Newton-refines approximate ordinates read from a file.
    Refine {
        /// File with one approximate ordinate per line.
        source: String,
    },
    /// Writes a verified table in the loadable text format.
    Dump {
        /// "bundled" or a file path; defaults to --table, then the bundled table.
        source: Option<String>,
    },
}

fn parse_z(items: &[String]) -> CliResult<Vec<Complex64>> {
    items.iter().map(|s| complex::parse_complex(s).map_err(CliError::Usage)).collect()
}

fn grid(g: &GridArgs) -> CliResult<Vec<f64>> {
    if !(g.xstep > 0.0) || !g.xmin.is_finite() || !g.xmax.is_finite() || g.xmax < g.xmin {
        return Err(CliError::Usage("need finite xmin <= xmax and xstep > 0".into()));
    }
    let count = ((g.xmax - g.xmin) / g.xstep + 1e-9).floor() + 1.0;
    if count > 1e7 {
        return Err(CliError::Usage(format!("grid of {count} points is too large")));
    }
    Ok((0..count as usize).map(|i| g.xmin + i as f64 * g.xstep).collect())
}

/// Evaluates `f` over `items` in parallel and returns results in input
/// order, stopping at the first error.
fn sweep<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> CliResult<R> + Sync + Send) -> CliResult<Vec<R>> {
    items.par_iter().map(f).collect::<Vec<_>>().into_iter().collect()
}

/// Loaded table and the label used for it in the manifest.
fn resolve_table(explicit: Option<&str>, global: Option<&str>) -> CliResult<(ZeroTable, String)> {
    match explicit.or(global) {
        None | Some("bundled") => Ok((ZeroTable::bundled().clone(), "bundled".into())),
        Some(path) => Ok((load_zero_table(path, &EvalAccuracy::default())?, path.to_string())),
    }
}

fn read_ordinates(explicit: Option<&str>, global: Option<&str>) -> CliResult<(Vec<f64>, String)> {
    match explicit.or(global) {
        None | Some("bundled") => Ok((ZeroTable::bundled().ordinates().to_vec(), "bundled".into())),
        Some(path) => Ok((parse_ordinates(&std::fs::read_to_string(path)?)?, path.to_string())),
    }
}

fn run(cli: Cli) -> CliResult<()> {
    let out = cli.out.as_deref();
    let table_flag = cli.table.as_deref();
    match cli.command {
        Command::Csum { p, qmin, qmax } => {
            let params = p.params()?;
            if qmin == 0 || qmax < qmin {
                return Err(CliError::Usage("need 1 <= qmin <= qmax".into()));
            }
            let values = cohen_sum_table(qmax as usize, params);
            let rows: Vec<Vec<String>> = (qmin..=qmax).map(|q| vec![q.to_string(), values[q as usize].to_string()]).collect();
            let m = Manifest::new("csum").param("n", p.n).param("beta", p.beta).param("qmin", qmin).param("qmax", qmax);
            write_csv(out, &m, &["q", "c_q"], &rows)?;
        }
        Command::ExplicitC { p, g } => run_explicit(false, p, g, out, table_flag)?,
        Command::ExplicitPsi { p, g } => run_explicit(true, p, g, out, table_flag)?,
        Command::Series { p, s, cutoffs, qmax } => {
            let params = p.params()?;
            let s_val = complex::parse_complex(&s).map_err(CliError::Usage)?;
            let cutoffs = match qmax {
                Some(q) => (1..=q).collect(),
                None if !cutoffs.is_empty() => cutoffs,
                None => return Err(CliError::Usage("give --cutoffs or --qmax".into())),
            };
            let d = convergence_sweep(s_val, params, &cutoffs, &EvalAccuracy::default())?;
            let rows: Vec<Vec<String>> = d
                .cutoffs
                .iter()
                .zip(&d.partials)
                .zip(&d.residuals)
                .map(|((q, part), r)| {
                    vec![q.to_string(), num(part.re), num(part.im), num(d.target.re), num(d.target.im), num(*r)]
                })
                .collect();
            let m = Manifest::new("series")
                .param("s", &s)
                .param("n", p.n)
                .param("beta", p.beta)
                .param("cutoffs", cutoffs.len());
            write_csv(out, &m, &["Q", "partial_re", "partial_im", "target_re", "target_im", "residual"], &rows)?;
        }
        Command::Bartz { command } => run_bartz(command, out, table_flag)?,
        Command::Zeros { command } => run_zeros(command, out, table_flag)?,
        Command::Growth { p, xmax } => {
            let estimate = growth_exponent(p.params()?, xmax)?;
            let (exponent, degenerate) = match estimate {
                GrowthEstimate::Exponent(e) => (num(e), "false"),
                GrowthEstimate::DegenerateTail => (String::new(), "true"),
            };
            let row = vec![p.n.to_string(), p.beta.to_string(), xmax.to_string(), exponent, degenerate.to_string()];
            let m = Manifest::new("growth").param("n", p.n).param("beta", p.beta).param("xmax", xmax);
            write_csv(out, &m, &["n", "beta", "xmax", "exponent", "degenerate_tail"], &[row])?;
        }
    }
    Ok(())
}

fn run_explicit(psi: bool, p: ParamArgs, g: GridArgs, out: Option<&Path>, table_flag: Option<&str>) -> CliResult<()> {
    let params = p.params()?;
    let xs = grid(&g)?;
    let (table, label) = resolve_table(None, table_flag)?;
    let rows = sweep(&xs, |&x| {
        let e = if psi {
            explicit_psi(x, p.n, p.beta, &table, g.pairs, g.tol)?
        } else {
            explicit_c(x, params, &table, g.pairs, g.tol)?
        };
        Ok(vec![num(x), num(e.actual_sharp), num(e.formula_total), num(e.residual)])
    })?;
    let name = if psi { "explicit-psi" } else { "explicit-c" };
    let m = Manifest::new(name)
        .param(if psi { "m" } else { "n" }, p.n)
        .param("beta", p.beta)
        .param("xmin", num(g.xmin))
        .param("xmax", num(g.xmax))
        .param("xstep", num(g.xstep))
        .param("pairs", g.pairs)
        .param("tol", num(g.tol))
        .param("truncation_height", num(table.truncation_height(g.pairs)?))
        .table(&label, table.len());
    write_csv(out, &m, &["x", "actual_sharp", "formula", "residual"], &rows)?;
    Ok(())
}

fn run_bartz(command: BartzCommand, out: Option<&Path>, table_flag: Option<&str>) -> CliResult<()> {
    match command {
        BartzCommand::Fe { c, z } => {
            let params = c.p.params()?;
            let cfg = c.config();
            let zs = parse_z(&z)?;
            let (table, label) = resolve_table(None, table_flag)?;
            let rows = sweep(&zs, |&z| {
                let fe = functional_equation_residual(z, params, &table, &cfg)?;
                Ok(vec![
                    num(z.re),
                    num(z.im),
                    num(fe.varpi.re),
                    num(fe.varpi.im),
                    num(fe.varpi_conj_reflected.re),
                    num(fe.varpi_conj_reflected.im),
                    num(fe.a_derived.re),
                    num(fe.a_derived.im),
                    num(fe.a_as_stated.re),
                    num(fe.a_as_stated.im),
                    num(fe.residual_derived.norm()),
                    num(fe.residual_as_stated.norm()),
                ])
            })?;
            let header = [
                "z_re",
                "z_im",
                "varpi_re",
                "varpi_im",
                "reflected_re",
                "reflected_im",
                "a_derived_re",
                "a_derived_im",
                "a_as_stated_re",
                "a_as_stated_im",
                "residual_derived",
                "residual_as_stated",
            ];
            write_csv(out, &c.manifest("bartz fe").table(&label, table.len()), &header, &rows)?;
        }
        BartzCommand::Decomp { c, z } => {
            let params = c.p.params()?;
            let cfg = c.config();
            let zs = parse_z(&z)?;
            let (table, label) = resolve_table(None, table_flag)?;
            let rows = sweep(&zs, |&z| {
                let e = decomposition(z, params, &table, &cfg)?;
                Ok(vec![
                    num(z.re),
                    num(z.im),
                    num(e.varpi_zero_sum.re),
                    num(e.varpi_zero_sum.im),
                    num(e.varpi1.re),
                    num(e.varpi1.im),
                    num(e.varpi2.re),
                    num(e.varpi2.im),
                    num(e.varpi3.re),
                    num(e.varpi3.im),
                    num(e.varpi3_tail_bound),
                    num(e.decomposition_residual.norm()),
                ])
            })?;
            let header = [
                "z_re",
                "z_im",
                "zero_sum_re",
                "zero_sum_im",
                "varpi1_re",
                "varpi1_im",
                "varpi2_re",
                "varpi2_im",
                "varpi3_re",
                "varpi3_im",
                "varpi3_tail_bound",
                "residual",
            ];
            write_csv(out, &c.manifest("bartz decomp").table(&label, table.len()), &header, &rows)?;
        }
        BartzCommand::Residue { c, q, eps } => {
            let params = c.p.params()?;
            let cfg = c.config();
            let rows = sweep(&q, |&q| {
                let cq = cohen_sum(q, params);
                let expected = -(cq as f64) / Complex64::new(0.0, 2.0 * PI);
                let got = residue_probe(q, params, eps, &cfg)?;
                let rel = (got - expected).norm() / expected.norm();
                Ok(vec![
                    q.to_string(),
                    cq.to_string(),
                    num(got.re),
                    num(got.im),
                    num(expected.re),
                    num(expected.im),
                    num(rel),
                ])
            })?;
            let header = ["q", "c_q", "residue_re", "residue_im", "expected_re", "expected_im", "rel_err"];
            write_csv(out, &c.manifest("bartz residue").param("eps", num(eps)), &header, &rows)?;
        }
    }
    Ok(())
}

fn run_zeros(command: ZerosCommand, out: Option<&Path>, table_flag: Option<&str>) -> CliResult<()> {
    let acc = EvalAccuracy::default();
    match command {
        ZerosCommand::Verify { source, tol } => {
            let (ordinates, label) = read_ordinates(source.as_deref(), table_flag)?;
            let indexed: Vec<(usize, f64)> = ordinates.iter().copied().enumerate().collect();
            let rows = sweep(&indexed, |&(i, g)| {
                let ok = verify_zero(g, tol, &acc).is_ok();
                let magnitude = zeta_eval(Complex64::new(0.5, g), &acc)?.norm();
                Ok((ok, vec![(i + 1).to_string(), num(g), num(magnitude), ok.to_string()]))
            })?;
            let failed = rows.iter().filter(|(ok, _)| !ok).count();
            let rows: Vec<Vec<String>> = rows.into_iter().map(|(_, r)| r).collect();
            let m = Manifest::new("zeros verify").param("tol", num(tol)).table(&label, ordinates.len());
            write_csv(out, &m, &["index", "gamma", "abs_zeta", "verified"], &rows)?;
            if failed > 0 {
                return Err(CliError::Failed(format!("{failed} of {} ordinates failed verification", rows.len())));
            }
        }
        ZerosCommand::Refine { source } => {
            let seeds = parse_ordinates(&std::fs::read_to_string(&source)?)?;
            let indexed: Vec<(usize, f64)> = seeds.iter().copied().enumerate().collect();
            let rows = sweep(&indexed, |&(i, seed)| {
                let g = refine_zero(seed, &acc)?;
                let magnitude = zeta_eval(Complex64::new(0.5, g), &acc)?.norm();
                Ok(vec![(i + 1).to_string(), num(seed), num(g), num(magnitude)])
            })?;
            let m = Manifest::new("zeros refine").table(&source, seeds.len());
            write_csv(out, &m, &["index", "seed", "gamma", "abs_zeta"], &rows)?;
        }
        ZerosCommand::Dump { source } => {
            let (table, label) = resolve_table(source.as_deref(), table_flag)?;
            let m = Manifest::new("zeros dump").table(&label, table.len());
            let mut w = output::open(out, &m)?;
            w.write_all(table.dump().as_bytes())?;
            w.flush()?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
