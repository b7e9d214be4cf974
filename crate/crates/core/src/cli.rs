//! Command-line front end.
//!
//! Exit codes: 0 success, 1 verified disagreement, 2 usage error, 3 internal
//! assertion failure.

use std::ffi::OsString;
use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::grothendieck::{happel_check, K0Report};
use crate::hochschild::{compute, sweep, HHReport, HochschildError, SweepRow};
use crate::linalg::Matrix;
use crate::quiver::{hilbert_coeff, Algebra, DownUpParams};
use crate::resolution::{verify_resolution, ResolutionReport};
use crate::scalar::{Field, QuadScalar};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DISAGREE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

/// Environment variable capping `sweep --n-max`.
pub const MAX_N_VAR: &str = "BEILINSON_HH_MAX_N";
pub const DEFAULT_MAX_N: usize = 5;

#[derive(Parser, Debug)]
#[command(
    name = "beilinson-hh",
    version,
    about = "Exact Hochschild cohomology of Beilinson algebras of graded down-up algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// HH dimensions at one parameter point, brute force against the closed form.
    Compute(PointArgs),
    /// Exactness and minimality audit of the bimodule resolution.
    Resolution(PointArgs),
    /// Cartan, Serre and Coxeter matrices with the Happel trace check.
    Grothendieck(PointArgs),
    /// Every case branch for a range of n at representative parameters.
    Sweep(SweepArgs),
    /// Block dimensions against the Hilbert series and the quotient oracle.
    Hilbert(HilbertArgs),
}

#[derive(Args, Debug)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Write output to this file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct PointArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, allow_hyphen_values = true)]
    alpha: String,
    #[arg(long, allow_hyphen_values = true)]
    beta: String,
    /// Work in Q(sqrt(d)); 1 means Q.
    #[arg(long, default_value_t = 1)]
    d: u64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[arg(long, default_value_t = 1)]
    n_min: usize,
    /// Defaults to the cap from BEILINSON_HH_MAX_N (5 if unset).
    #[arg(long)]
    n_max: Option<usize>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct HilbertArgs {
    #[arg(long)]
    n: usize,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    Compute,
    Resolution,
    Grothendieck,
    Sweep,
    Hilbert,
}

/// A validated invocation.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: CommandKind,
    pub n_range: (usize, usize),
    pub params: Option<DownUpParams>,
    pub format: Format,
    pub out: Option<PathBuf>,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Internal(String),
}

impl From<HochschildError> for Failure {
    fn from(e: HochschildError) -> Self {
        Failure::Internal(e.to_string())
    }
}

fn max_n() -> Result<usize, Failure> {
    match std::env::var(MAX_N_VAR) {
        Ok(v) => {
            v.trim().parse().map_err(|_| Failure::Usage(format!("{MAX_N_VAR} must be a positive integer, got {v:?}")))
        }
        Err(_) => Ok(DEFAULT_MAX_N),
    }
}

fn point_params(args: &PointArgs) -> Result<DownUpParams, Failure> {
    let field = Field::new(args.d).map_err(|e| Failure::Usage(e.to_string()))?;
    let alpha = QuadScalar::parse(&args.alpha, field).map_err(|e| Failure::Usage(format!("--alpha: {e}")))?;
    let beta = QuadScalar::parse(&args.beta, field).map_err(|e| Failure::Usage(format!("--beta: {e}")))?;
    DownUpParams::new(args.n, alpha, beta).map_err(|e| Failure::Usage(e.to_string()))
}

impl RunConfig {
    fn from_cli(cli: Cli) -> Result<Self, Failure> {
        let point = |kind, args: PointArgs| -> Result<RunConfig, Failure> {
            let params = point_params(&args)?;
            Ok(RunConfig {
                command: kind,
                n_range: (args.n, args.n),
                params: Some(params),
                format: args.output.format,
                out: args.output.out,
            })
        };
        match cli.command {
            Command::Compute(a) => point(CommandKind::Compute, a),
            Command::Resolution(a) => point(CommandKind::Resolution, a),
            Command::Grothendieck(a) => point(CommandKind::Grothendieck, a),
            Command::Sweep(a) => {
                let cap = max_n()?;
                let n_max = a.n_max.unwrap_or(cap);
                if a.n_min == 0 || a.n_min > n_max {
                    return Err(Failure::Usage(format!("empty or invalid range {}..{}", a.n_min, n_max)));
                }
                if n_max > cap {
                    return Err(Failure::Usage(format!(
                        "--n-max {n_max} exceeds the cap {cap}; raise {MAX_N_VAR} to allow it"
                    )));
                }
                Ok(RunConfig {
                    command: CommandKind::Sweep,
                    n_range: (a.n_min, n_max),
                    params: None,
                    format: a.output.format,
                    out: a.output.out,
                })
            }
            Command::Hilbert(a) => {
                if a.n == 0 {
                    return Err(Failure::Usage("n must be at least 1".into()));
                }
                Ok(RunConfig {
                    command: CommandKind::Hilbert,
                    n_range: (a.n, a.n),
                    params: None,
                    format: a.output.format,
                    out: a.output.out,
                })
            }
        }
    }
}

/// Parses `args` (including the program name), runs the command and returns
/// the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let cfg = match RunConfig::from_cli(cli) {
        Ok(cfg) => cfg,
        Err(f) => return report_failure(f, err),
    };
    let result = catch_unwind(AssertUnwindSafe(|| execute(&cfg)));
    let (body, code) = match result {
        Ok(Ok(done)) => done,
        Ok(Err(f)) => return report_failure(f, err),
        Err(_) => return report_failure(Failure::Internal("computation panicked".into()), err),
    };
    let written = match &cfg.out {
        Some(path) => {
            std::fs::write(path, body.as_bytes()).map_err(|e| format!("cannot write {}: {e}", path.display()))
        }
        None => out.write_all(body.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(msg) = written {
        return report_failure(Failure::Usage(msg), err);
    }
    code
}

fn report_failure(f: Failure, err: &mut dyn Write) -> i32 {
    let (code, msg) = match f {
        Failure::Usage(m) => (EXIT_USAGE, m),
        Failure::Internal(m) => (EXIT_INTERNAL, format!("internal error: {m}")),
    };
    let _ = writeln!(err, "error: {msg}");
    code
}

fn execute(cfg: &RunConfig) -> Result<(String, i32), Failure> {
    let params = || cfg.params.as_ref().expect("point command carries params");
    let verdict = |ok: bool| if ok { EXIT_OK } else { EXIT_DISAGREE };
    match cfg.command {
        CommandKind::Compute => {
            let report = compute(params())?;
            let body = render(cfg.format, &report, render_hh_table);
            Ok((body, verdict(report.agree)))
        }
        CommandKind::Resolution => {
            let report = verify_resolution(params());
            let body = render(cfg.format, &report, render_resolution_table);
            Ok((body, verdict(report.ok())))
        }
        CommandKind::Grothendieck => {
            let report = happel_check(params())?;
            let body = render(cfg.format, &report, render_k0_table);
            Ok((body, verdict(report.happel_ok)))
        }
        CommandKind::Sweep => {
            let rows = sweep(cfg.n_range.0, cfg.n_range.1);
            if let Some(e) = rows.iter().find_map(|r| r.error.clone()) {
                return Err(Failure::Internal(e));
            }
            let ok = rows.iter().filter(|r| r.exercised).all(SweepRow::agrees);
            let body = render(cfg.format, &rows, |r| render_sweep_table(r));
            Ok((body, verdict(ok)))
        }
        CommandKind::Hilbert => {
            let report = hilbert_report(cfg.n_range.0);
            let body = render(cfg.format, &report, render_hilbert_table);
            Ok((body, verdict(report.ok)))
        }
    }
}

fn render<T: Serialize + ?Sized>(format: Format, value: &T, table: impl Fn(&T) -> String) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(value).expect("reports serialise");
            s.push('\n');
            s
        }
        Format::Table => table(value),
    }
}

/// Left-aligned columns separated by two spaces.
fn grid(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<String>| {
        let mut s = String::new();
        for (i, (cell, w)) in cells.iter().zip(&widths).enumerate() {
            if i + 1 == cells.len() {
                s.push_str(cell);
            } else {
                s.push_str(&format!("{cell:<w$}  "));
            }
        }
        s.push('\n');
        s
    };
    let mut out = line(header.iter().map(|h| h.to_string()).collect());
    for row in rows {
        out.push_str(&line(row.clone()));
    }
    out
}

fn key_values(pairs: &[(&str, String)]) -> String {
    let width = pairs.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    pairs.iter().map(|(k, v)| format!("{k:<width$}  {v}\n")).collect()
}

fn opt(v: Option<usize>) -> String {
    v.map_or_else(|| "-".to_string(), |r| r.to_string())
}

fn render_hh_table(r: &HHReport) -> String {
    key_values(&[
        ("n", r.n.to_string()),
        ("alpha", r.alpha.to_string()),
        ("beta", r.beta.to_string()),
        ("d", r.d.to_string()),
        ("delta", r.delta.to_string()),
        ("disc", r.disc.to_string()),
        ("case", r.case.to_string()),
        ("brute", r.brute.to_string()),
        ("closed", r.closed.to_string()),
        ("agree", r.agree.to_string()),
        ("rankL1", opt(r.rank_l1)),
        ("rankL2", opt(r.rank_l2)),
    ])
}

fn render_resolution_table(r: &ResolutionReport) -> String {
    let mut s = key_values(&[
        ("n", r.n.to_string()),
        ("alpha", r.alpha.to_string()),
        ("beta", r.beta.to_string()),
        ("d", r.d.to_string()),
        ("dims", format!("P0={} P1={} P2={} Lambda={}", r.dims.p0, r.dims.p1, r.dims.p2, r.dims.lambda)),
        ("ranks", format!("D0={} D1={} D2={}", r.ranks.d0, r.ranks.d1, r.ranks.d2)),
        ("complex", r.complex.to_string()),
        ("exact", r.exact.to_string()),
        ("euler", r.euler.to_string()),
        ("minimal", r.minimal.to_string()),
    ]);
    for f in &r.failures {
        s.push_str(&format!("failure  {f}\n"));
    }
    s
}

fn render_matrix(name: &str, m: &Matrix) -> String {
    format!("{name}\n{m}")
}

fn render_k0_table(r: &K0Report) -> String {
    let mut s = key_values(&[
        ("n", r.n.to_string()),
        ("k0_rank", r.k0_rank.to_string()),
        ("unipotent", r.unipotent.to_string()),
        ("neg_trace_coxeter", r.neg_trace_coxeter.to_string()),
        ("hh", r.hh.to_string()),
        ("euler_hh", r.euler_hh.to_string()),
        ("happel_ok", r.happel_ok.to_string()),
    ]);
    s.push_str(&render_matrix("cartan", &r.cartan));
    s.push_str(&render_matrix("serre", &r.serre));
    s.push_str(&render_matrix("coxeter", &r.coxeter));
    s
}

fn render_sweep_table(rows: &[SweepRow]) -> String {
    let body: Vec<Vec<String>> = rows
        .iter()
        .map(|row| match &row.report {
            Some(r) => vec![
                row.n.to_string(),
                row.case.to_string(),
                r.alpha.to_string(),
                r.beta.to_string(),
                r.d.to_string(),
                r.closed.to_string(),
                r.brute.to_string(),
                r.brute.euler().to_string(),
                if row.agrees() { "ok".into() } else { "MISMATCH".into() },
            ],
            None => {
                let mut cells = vec![row.n.to_string(), row.case.to_string()];
                cells.extend(std::iter::repeat_n("-".to_string(), 6));
                cells.push("not exercised".into());
                cells
            }
        })
        .collect();
    grid(&["n", "case", "alpha", "beta", "d", "expected", "computed", "euler", "status"], &body)
}

/// One vertex pair of the block-dimension audit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockDimRow {
    pub i: usize,
    pub j: usize,
    pub degree: usize,
    pub basis: usize,
    pub hilbert: usize,
    pub oracle: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertReport {
    pub n: usize,
    pub blocks: Vec<BlockDimRow>,
    pub ok: bool,
}

/// `dim e_iΛe_j` three ways: the normal-path basis, `hilbert_coeff`, and the
/// rank computation on the free path algebra.
pub fn hilbert_report(n: usize) -> HilbertReport {
    let alg = Algebra::new(DownUpParams::rational(n, (1, 1), (1, 1)).expect("valid parameters"));
    let size = 2 * n + 2;
    let mut blocks = Vec::new();
    for i in 1..=size {
        for j in i..=size {
            blocks.push(BlockDimRow {
                i,
                j,
                degree: j - i,
                basis: alg.block_dim(i, j),
                hilbert: hilbert_coeff(n, j - i),
                oracle: alg.quotient_oracle(i, j),
            });
        }
    }
    let ok = blocks.iter().all(|b| b.basis == b.hilbert && b.hilbert == b.oracle);
    HilbertReport { n, blocks, ok }
}

fn render_hilbert_table(r: &HilbertReport) -> String {
    let size = 2 * r.n + 2;
    let mut m = vec![vec!["0".to_string(); size]; size];
    for b in &r.blocks {
        m[b.i - 1][b.j - 1] = b.basis.to_string();
    }
    let width = m.iter().flatten().map(|c| c.len()).max().unwrap_or(1);
    let mut s = format!("dim e_i L e_j for n = {}\n", r.n);
    for row in &m {
        let cells: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
        s.push_str(&format!("  {}\n", cells.join(" ")));
    }
    let per_degree: Vec<Vec<String>> = (0..size)
        .map(|deg| {
            let of_deg: Vec<&BlockDimRow> = r.blocks.iter().filter(|b| b.degree == deg).collect();
            let agree = of_deg.iter().all(|b| b.basis == b.hilbert && b.hilbert == b.oracle);
            vec![
                deg.to_string(),
                hilbert_coeff(r.n, deg).to_string(),
                of_deg[0].basis.to_string(),
                of_deg[0].oracle.to_string(),
                of_deg.len().to_string(),
                if agree { "ok".into() } else { "MISMATCH".into() },
            ]
        })
        .collect();
    s.push_str(&grid(&["degree", "hilbert", "basis", "oracle", "blocks", "status"], &per_degree));
    s.push_str(&format!("all blocks agree: {}\n", r.ok));
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["beilinson-hh"];
        full.extend_from_slice(args);
        let code = run(full, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn compute_agrees() {
        let (code, out, _) = run_capture(&["compute", "--n", "2", "--alpha", "0", "--beta", "1"]);
        assert_eq!(code, 0);
        assert!(out.contains("(1,1,6)"));
    }

    #[test]
    fn beta_zero_is_usage_error() {
        let (code, _, err) = run_capture(&["compute", "--n", "2", "--alpha", "1", "--beta", "0"]);
        assert_eq!(code, 2);
        assert!(err.contains("if and only if β ≠ 0"));
    }

    #[test]
    fn bad_scalar_and_flags() {
        assert_eq!(run_capture(&["compute", "--n", "2", "--alpha", "x", "--beta", "1"]).0, 2);
        assert_eq!(run_capture(&["compute", "--n", "2"]).0, 2);
        assert_eq!(run_capture(&["frobnicate"]).0, 2);
        assert_eq!(run_capture(&["compute", "--n", "0", "--alpha", "1", "--beta", "1"]).0, 2);
        assert_eq!(run_capture(&["--help"]).0, 0);
    }

    #[test]
    fn hilbert_degree_rows() {
        let r = hilbert_report(3);
        assert!(r.ok);
        assert!(r.blocks.iter().filter(|b| b.degree == 5).all(|b| b.basis == 3));
        let r = hilbert_report(2);
        assert!(r.blocks.iter().filter(|b| b.degree == 4).all(|b| b.basis == 4));
        let (code, out, _) = run_capture(&["hilbert", "--n", "2"]);
        assert_eq!(code, 0);
        assert!(out.contains("  1 1 2 3 4 5\n"));
    }

    #[test]
    fn sweep_cap() {
        assert_eq!(run_capture(&["sweep", "--n-min", "3", "--n-max", "2"]).0, 2);
        assert_eq!(run_capture(&["sweep", "--n-min", "1", "--n-max", "99"]).0, 2);
    }
}
