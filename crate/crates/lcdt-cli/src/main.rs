//! Command-line surface: kernel/transform CSV dumps, the verification suite
//! with its JSON report, and a report summarizer.
//!
//! Exit codes: 0 success (and, for `verify`, zero violated verdicts),
//! 1 verify found violations, 2 invalid parameters/config/input,
//! 3 quadrature non-convergence.

use clap::{Parser, Subcommand};
use lcdt::corpus::{
    corpus_default, make_gaussian, make_indicator, make_poly_gaussian, make_smooth_bump,
};
use lcdt::harness::{default_matrices, default_orders, run_suite, SuiteConfig};
use lcdt::interp::ComplexSpline;
use lcdt::measure::{QuadratureSpec, Signal};
use lcdt::special::DunklOrder;
use lcdt::transform::{default_grid, lcdt_forward, lcdt_kernel, linspace, CanonicalMatrix};
use lcdt::Complex64;
use serde::Deserialize;
use std::io::Write;
use std::path::{Path, PathBuf};

#[derive(Parser)]
#[command(
    name = "lcdt",
    version,
    about = "Linear canonical Dunkl transform toolkit"
)]
struct Cli {
    /// Corpus seed (verify)
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Quadrature relative tolerance override
    #[arg(long, global = true)]
    quad_tol: Option<f64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print CSV samples of the transform kernel E_k^M(λ, x) at fixed x
    Kernel {
        #[arg(long, allow_hyphen_values = true)]
        k: f64,
        /// matrix entries "a,b,c,d" (det = 1)
        #[arg(long, allow_hyphen_values = true)]
        matrix: Option<String>,
        /// fractional angle θ for (cos θ, -sin θ; sin θ, cos θ)
        #[arg(long, allow_hyphen_values = true)]
        theta: Option<f64>,
        /// λ grid "lo:hi:n" (n = 0 prints the header only)
        #[arg(long, allow_hyphen_values = true)]
        lambda_range: String,
        #[arg(long, allow_hyphen_values = true)]
        x: f64,
    },
    /// Transform a parametric or sampled signal and write a CSV spectrum
    Transform {
        /// parametric signal "family:key=value,..." — families: gaussian(s[,w]),
        /// poly_gaussian(m,delta), indicator(r), smooth_bump(r), zero
        #[arg(long)]
        signal: Option<String>,
        /// CSV file of x,re,im samples (cubic-interpolated)
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, allow_hyphen_values = true)]
        k: f64,
        #[arg(long, allow_hyphen_values = true)]
        matrix: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        theta: Option<f64>,
        /// λ grid "lo:hi:n" (defaults to 513 points over the signal's window)
        #[arg(long, allow_hyphen_values = true)]
        grid: Option<String>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run the uncertainty-inequality suite and write the JSON report
    Verify {
        /// JSON run configuration (defaults baked in)
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Render a per-theorem summary table from a JSON report
    Report {
        #[arg(long = "in")]
        input: PathBuf,
    },
}

#[derive(Debug)]
struct CliError {
    code: i32,
    message: String,
}

impl CliError {
    fn invalid(message: impl Into<String>) -> Self {
        CliError {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<lcdt::Error> for CliError {
    fn from(e: lcdt::Error) -> Self {
        let code = match e {
            lcdt::Error::NonConvergence { .. } => 3,
            _ => 2,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError {
            code: 2,
            message: e.to_string(),
        }
    }
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {}", e.message);
            std::process::exit(e.code);
        }
    }
}

fn run(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Kernel {
            k,
            matrix,
            theta,
            lambda_range,
            x,
        } => cmd_kernel(k, matrix.as_deref(), theta, &lambda_range, x),
        Command::Transform {
            signal,
            input,
            k,
            matrix,
            theta,
            grid,
            out,
        } => cmd_transform(
            signal.as_deref(),
            input.as_deref(),
            k,
            matrix.as_deref(),
            theta,
            grid.as_deref(),
            &out,
            cli.quad_tol,
        ),
        Command::Verify { config, out } => {
            cmd_verify(config.as_deref(), &out, cli.seed, cli.quad_tol)
        }
        Command::Report { input } => cmd_report(&input),
    }
}

fn parse_matrix(matrix: Option<&str>, theta: Option<f64>) -> Result<CanonicalMatrix, CliError> {
    match (matrix, theta) {
        (Some(_), Some(_)) => Err(CliError::invalid(
            "give either --matrix or --theta, not both",
        )),
        (Some(spec), None) => {
            let parts: Vec<f64> = spec
                .split(',')
                .map(|s| s.trim().parse::<f64>())
                .collect::<Result<_, _>>()
                .map_err(|e| CliError::invalid(format!("matrix entries: {e}")))?;
            if parts.len() != 4 {
                return Err(CliError::invalid(
                    "matrix needs exactly four entries a,b,c,d",
                ));
            }
            Ok(CanonicalMatrix::new(
                parts[0], parts[1], parts[2], parts[3],
            )?)
        }
        (None, Some(theta)) => Ok(CanonicalMatrix::fractional(theta)),
        (None, None) => Err(CliError::invalid(
            "a matrix is required: --matrix a,b,c,d or --theta θ",
        )),
    }
}

/// "lo:hi:n" → n equally spaced points (n = 0 allowed: empty grid).
fn parse_range(spec: &str) -> Result<Vec<f64>, CliError> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        return Err(CliError::invalid(format!(
            "range must be lo:hi:n, got {spec}"
        )));
    }
    let lo: f64 = parts[0]
        .trim()
        .parse()
        .map_err(|e| CliError::invalid(format!("range lo: {e}")))?;
    let hi: f64 = parts[1]
        .trim()
        .parse()
        .map_err(|e| CliError::invalid(format!("range hi: {e}")))?;
    let n: usize = parts[2]
        .trim()
        .parse()
        .map_err(|e| CliError::invalid(format!("range n: {e}")))?;
    match n {
        0 => Ok(Vec::new()),
        1 => Ok(vec![lo]),
        _ => {
            if !(lo < hi) {
                return Err(CliError::invalid("range needs lo < hi"));
            }
            Ok(linspace(lo, hi, n))
        }
    }
}

/// 17 significant digits: round-trip exact for f64.
fn fmt17(v: f64) -> String {
    format!("{v:.16e}")
}

fn cmd_kernel(
    k: f64,
    matrix: Option<&str>,
    theta: Option<f64>,
    lambda_range: &str,
    x: f64,
) -> Result<i32, CliError> {
    let order = DunklOrder::new(k)?;
    let matrix = parse_matrix(matrix, theta)?;
    let grid = parse_range(lambda_range)?;
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    writeln!(out, "lambda,re,im")?;
    for &lambda in &grid {
        let v = lcdt_kernel(&matrix, order, lambda, x)?;
        writeln!(out, "{},{},{}", fmt17(lambda), fmt17(v.re), fmt17(v.im))?;
    }
    Ok(0)
}

fn parse_signal(spec: &str) -> Result<Signal, CliError> {
    let (family, rest) = match spec.split_once(':') {
        Some((f, r)) => (f.trim(), r.trim()),
        None => (spec.trim(), ""),
    };
    let mut kv = std::collections::BTreeMap::new();
    if !rest.is_empty() {
        for pair in rest.split(',') {
            let (key, value) = pair.split_once('=').ok_or_else(|| {
                CliError::invalid(format!("signal parameter `{pair}` is not key=value"))
            })?;
            let value: f64 = value
                .trim()
                .parse()
                .map_err(|e| CliError::invalid(format!("signal parameter {key}: {e}")))?;
            kv.insert(key.trim().to_string(), value);
        }
    }
    let get = |key: &str| -> Option<f64> { kv.get(key).copied() };
    let signal = match family {
        "gaussian" => make_gaussian(
            get("s").ok_or_else(|| CliError::invalid("gaussian needs s=<rate>"))?,
            get("w").unwrap_or(0.0),
        )?,
        "poly_gaussian" => make_poly_gaussian(
            get("m").ok_or_else(|| CliError::invalid("poly_gaussian needs m=<degree>"))? as u32,
            get("delta").ok_or_else(|| CliError::invalid("poly_gaussian needs delta=<rate>"))?,
        )?,
        "indicator" => make_indicator(
            get("r").ok_or_else(|| CliError::invalid("indicator needs r=<radius>"))?,
        )?,
        "smooth_bump" => make_smooth_bump(
            get("r").ok_or_else(|| CliError::invalid("smooth_bump needs r=<radius>"))?,
        )?,
        "zero" => Signal::new("zero", 1.0, |_| Complex64::new(0.0, 0.0)),
        other => {
            return Err(CliError::invalid(format!(
                "unknown signal family `{other}`"
            )))
        }
    };
    Ok(signal)
}

fn load_sampled_signal(path: &Path) -> Result<Signal, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::invalid(format!("{}: {e}", path.display())))?;
    let mut rows: Vec<(f64, Complex64)> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || (i == 0 && line.starts_with(|c: char| c.is_alphabetic())) {
            continue; // optional header
        }
        let cols: Vec<&str> = line.split(',').collect();
        if cols.len() != 3 {
            return Err(CliError::invalid(format!("line {}: need x,re,im", i + 1)));
        }
        let x: f64 = cols[0]
            .trim()
            .parse()
            .map_err(|e| CliError::invalid(format!("line {}: {e}", i + 1)))?;
        let re: f64 = cols[1]
            .trim()
            .parse()
            .map_err(|e| CliError::invalid(format!("line {}: {e}", i + 1)))?;
        let im: f64 = cols[2]
            .trim()
            .parse()
            .map_err(|e| CliError::invalid(format!("line {}: {e}", i + 1)))?;
        rows.push((x, Complex64::new(re, im)));
    }
    if rows.len() < 3 {
        return Err(CliError::invalid("sampled input needs at least 3 rows"));
    }
    rows.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    if rows.windows(2).any(|w| w[0].0 >= w[1].0) {
        return Err(CliError::invalid("sample abscissae must be distinct"));
    }
    let xs: Vec<f64> = rows.iter().map(|r| r.0).collect();
    let ys: Vec<Complex64> = rows.iter().map(|r| r.1).collect();
    let (lo, hi) = (xs[0], *xs.last().unwrap());
    let spline = ComplexSpline::new(xs, ys);
    Ok(Signal::new(
        format!("sampled[{}]", path.display()),
        lo.abs().max(hi.abs()),
        move |x| spline.eval(x),
    )
    .with_support(lo, hi))
}

fn write_atomic(path: &Path, contents: &str) -> Result<(), CliError> {
    let dir = path
        .parent()
        .filter(|p| !p.as_os_str().is_empty())
        .unwrap_or(Path::new("."));
    let tmp = dir.join(format!(
        ".{}.tmp",
        path.file_name()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "out".into())
    ));
    std::fs::write(&tmp, contents)?;
    std::fs::rename(&tmp, path)?;
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_transform(
    signal: Option<&str>,
    input: Option<&Path>,
    k: f64,
    matrix: Option<&str>,
    theta: Option<f64>,
    grid: Option<&str>,
    out: &Path,
    quad_tol: Option<f64>,
) -> Result<i32, CliError> {
    let order = DunklOrder::new(k)?;
    let matrix = parse_matrix(matrix, theta)?;
    let signal = match (signal, input) {
        (Some(_), Some(_)) => {
            return Err(CliError::invalid(
                "give either --signal or --input, not both",
            ))
        }
        (Some(spec), None) => parse_signal(spec)?,
        (None, Some(path)) => load_sampled_signal(path)?,
        (None, None) => {
            return Err(CliError::invalid(
                "a signal is required: --signal or --input",
            ))
        }
    };
    let grid = match grid {
        Some(spec) => {
            let g = parse_range(spec)?;
            if g.is_empty() {
                return Err(CliError::invalid("transform grid must be nonempty"));
            }
            g
        }
        None => default_grid(&signal, &matrix, 513),
    };
    let mut quad = QuadratureSpec {
        radius: signal.decay_radius.max(30.0),
        ..QuadratureSpec::default()
    };
    if let Some(tol) = quad_tol {
        quad = QuadratureSpec::new(quad.radius, quad.panels, quad.nodes_per_panel, tol)?;
    }
    let spectrum = lcdt_forward(&signal, &matrix, order, &grid, &quad)?;
    let mut csv = String::from("lambda,re,im\n");
    for (&l, v) in spectrum.grid().iter().zip(spectrum.values()) {
        csv.push_str(&format!("{},{},{}\n", fmt17(l), fmt17(v.re), fmt17(v.im)));
    }
    write_atomic(out, &csv)?;
    Ok(0)
}

/// JSON run configuration; every field optional.
#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RunConfig {
    seed: Option<u64>,
    orders: Option<Vec<f64>>,
    matrices: Option<Vec<[f64; 4]>>,
    thetas: Option<Vec<f64>>,
    p_values: Option<Vec<f64>>,
    s_values: Option<Vec<f64>>,
    heavy_matrix_limit: Option<usize>,
    ds_radius: Option<f64>,
    quad: Option<QuadOverrides>,
    miyachi: Option<MiyachiGrid>,
    cowling: Option<CowlingGrid>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct QuadOverrides {
    radius: Option<f64>,
    panels: Option<usize>,
    nodes_per_panel: Option<usize>,
    rel_tol: Option<f64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MiyachiGrid {
    s: Option<Vec<f64>>,
    b: Option<Vec<f64>>,
    k: Option<Vec<f64>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CowlingGrid {
    m: Option<Vec<u32>>,
    delta: Option<Vec<f64>>,
    k: Option<Vec<f64>>,
}

fn cmd_verify(
    config: Option<&Path>,
    out: &Path,
    seed_flag: Option<u64>,
    quad_tol: Option<f64>,
) -> Result<i32, CliError> {
    let raw: RunConfig = match config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::invalid(format!("{}: {e}", path.display())))?;
            serde_json::from_str(&text).map_err(|e| CliError::invalid(format!("config: {e}")))?
        }
        None => RunConfig::default(),
    };
    let mut suite = SuiteConfig::default();
    if let Some(seed) = raw.seed {
        suite.seed = seed;
    }
    if let Some(seed) = seed_flag {
        suite.seed = seed;
    }
    if let Some(p) = raw.p_values {
        for &v in &p {
            if !(v > 1.0 && v <= 2.0) {
                return Err(CliError::invalid(format!("p value {v} outside (1, 2]")));
            }
        }
        suite.p_values = p;
    }
    if let Some(s) = raw.s_values {
        if s.iter().any(|&v| v <= 0.0) {
            return Err(CliError::invalid("s values must be positive"));
        }
        suite.s_values = s;
    }
    if let Some(h) = raw.heavy_matrix_limit {
        suite.heavy_matrix_limit = h;
    }
    if let Some(r) = raw.ds_radius {
        if !(r > 0.0) {
            return Err(CliError::invalid("ds_radius must be positive"));
        }
        suite.ds_radius = r;
    }
    if let Some(q) = raw.quad {
        let base = suite.quad;
        suite.quad = QuadratureSpec::new(
            q.radius.unwrap_or(base.radius),
            q.panels.unwrap_or(base.panels),
            q.nodes_per_panel.unwrap_or(base.nodes_per_panel),
            q.rel_tol.unwrap_or(base.rel_tol),
        )?;
    }
    if let Some(tol) = quad_tol {
        suite.quad = QuadratureSpec::new(
            suite.quad.radius,
            suite.quad.panels,
            suite.quad.nodes_per_panel,
            tol,
        )?;
    }
    if let Some(m) = raw.miyachi {
        if let Some(v) = m.s {
            suite.miyachi_s = v;
        }
        if let Some(v) = m.b {
            if v.iter().any(|&b| b == 0.0) {
                return Err(CliError::invalid("miyachi b values must be nonzero"));
            }
            suite.miyachi_b = v;
        }
        if let Some(v) = m.k {
            suite.miyachi_k = v;
        }
    }
    if let Some(c) = raw.cowling {
        if let Some(v) = c.m {
            suite.cowling_m = v;
        }
        if let Some(v) = c.delta {
            suite.cowling_delta = v;
        }
        if let Some(v) = c.k {
            suite.cowling_k = v;
        }
    }
    let orders: Vec<DunklOrder> = match raw.orders {
        Some(ks) => ks
            .into_iter()
            .map(DunklOrder::new)
            .collect::<lcdt::Result<_>>()
            .map_err(|e| CliError::invalid(e.to_string()))?,
        None => default_orders(),
    };
    for &kk in suite.miyachi_k.iter().chain(&suite.cowling_k) {
        DunklOrder::new(kk).map_err(|e| CliError::invalid(e.to_string()))?;
    }
    let mut matrices: Vec<CanonicalMatrix> = Vec::new();
    if let Some(ms) = raw.matrices {
        for [a, b, c, d] in ms {
            matrices.push(
                CanonicalMatrix::new(a, b, c, d).map_err(|e| CliError::invalid(e.to_string()))?,
            );
        }
    }
    if let Some(thetas) = raw.thetas {
        matrices.extend(thetas.into_iter().map(CanonicalMatrix::fractional));
    }
    if matrices.is_empty() {
        matrices = default_matrices();
    }

    let corpus = corpus_default(suite.seed);
    let report = run_suite(&corpus, &matrices, &orders, &suite);
    let json = serde_json::to_string_pretty(&report)
        .map_err(|e| CliError::invalid(format!("serialize: {e}")))?;
    write_atomic(out, &json)?;
    let violated = report.violated_count();
    if violated > 0 {
        eprintln!("{violated} violated verdict(s); see {}", out.display());
        Ok(1)
    } else {
        Ok(0)
    }
}

fn cmd_report(input: &Path) -> Result<i32, CliError> {
    let text = std::fs::read_to_string(input)
        .map_err(|e| CliError::invalid(format!("{}: {e}", input.display())))?;
    let doc: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| CliError::invalid(format!("report: {e}")))?;
    let summary = doc
        .get("summary")
        .and_then(|s| s.as_object())
        .ok_or_else(|| CliError::invalid("report has no summary object"))?;
    println!(
        "{:<34} {:>6} {:>13} {:>6} {:>9} {:>8} {:>10}",
        "theorem", "cases", "worst_ratio", "holds", "violated", "trivial", "empirical"
    );
    for (id, row) in summary {
        let get = |key: &str| row.get(key).and_then(|v| v.as_u64()).unwrap_or(0);
        let worst = row
            .get("worst_ratio")
            .and_then(|v| v.as_f64())
            .unwrap_or(f64::NAN);
        println!(
            "{:<34} {:>6} {:>13.6e} {:>6} {:>9} {:>8} {:>10}",
            id,
            get("cases"),
            worst,
            get("holds"),
            get("violated"),
            get("trivial"),
            get("empirical_only")
        );
    }
    Ok(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn range_parsing() {
        assert_eq!(parse_range("0:1:3").unwrap(), vec![0.0, 0.5, 1.0]);
        assert!(parse_range("1:0:5").is_err());
        assert!(parse_range("0:1").is_err());
        assert!(parse_range("0:1:0").unwrap().is_empty());
    }

    #[test]
    fn signal_parsing() {
        assert!(parse_signal("gaussian:s=1").is_ok());
        assert!(parse_signal("gaussian:s=1,w=0.5").is_ok());
        assert!(parse_signal("poly_gaussian:m=2,delta=1").is_ok());
        assert!(parse_signal("zero").is_ok());
        assert!(parse_signal("gaussian").is_err());
        assert!(parse_signal("warp:q=1").is_err());
    }

    #[test]
    fn nonconvergence_maps_to_exit_3() {
        let e = CliError::from(lcdt::Error::NonConvergence {
            panels: 4,
            rel_change: 0.1,
        });
        assert_eq!(e.code, 3);
        let e = CliError::from(lcdt::Error::DegenerateMatrix);
        assert_eq!(e.code, 2);
    }
}
