//! Command-line surface: state parsing, measure computation, protocol
//! evaluation, noise-family scans and the oracle suite.
//!
//! Exit codes: 0 success, 1 oracle-check failure, 2 usage or parse error,
//! 3 unphysical input state. Identical invocations produce byte-identical
//! output; every emitted number carries 12 significant digits. Set
//! `RAYON_NUM_THREADS` to pin the worker count.

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use crate::error::Error;
use crate::measures::{
    c1, c2, c3, c3_bell_closed, discord_entropic, discord_entropic_bell, discord_quadratic,
    SearchOpts,
};
use crate::rsp::{
    g_closed, mc_simulate, pq_av_closed, pq_av_quadrature, pq_max, AliceMeasurement, GreatCircle,
    TargetState,
};
use crate::state::{is_physical, ppt_check, Separability, StateSpec, Vec3, PSD_TOL};
use crate::verify::{counterexample_scan, full_suite, Level, SuiteReport};

/// Self-description attached to every data output; records the fixed
/// conventions behind the numbers.
pub const CONVENTION: &str = "pauli=x,y,z; basis=|00>,|01>,|10>,|11| (Alice first); \
     entropy=bits(log2); pq_av_closed=||E||^2-beta'(E'E)beta (twice the circle average)";

const EXACT_SCAN_HEADER: &str = "p,g_c,g_g,c3_c,c3_g,d3_c,d3_g,dent_c,dent_g,sep_c,sep_g";

#[derive(Parser)]
#[command(
    name = "scmub",
    version,
    about = "Two-qubit remote state preparation payoffs and correlation measures"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Correlation measures of a single state
    Measures(MeasuresArgs),
    /// One protocol instance: optimal payoff and circle averages
    Rsp(RspArgs),
    /// Sweep the two singlet-plus-noise families over a mixing range
    Scan(ScanArgs),
    /// Run the oracle suite
    Verify(VerifyArgs),
}

#[derive(Args, Clone)]
struct SearchArgs {
    /// Sphere-grid seeds for direction searches
    #[arg(long, default_value_t = 1024)]
    grid_points: usize,
    /// Cells per angle of the frame grid (C2, C3)
    #[arg(long, default_value_t = 20)]
    frame_grid: usize,
    /// Simplex size at which local refinement stops
    #[arg(long, default_value_t = 1e-6)]
    refine_tol: f64,
    /// Refinement iteration cap
    #[arg(long, default_value_t = 500)]
    iter_cap: usize,
    /// Seed for seeded subroutines (Monte Carlo, randomized cross-checks)
    #[arg(long, default_value_t = 42)]
    seed: u64,
}

impl SearchArgs {
    fn opts(&self) -> SearchOpts {
        SearchOpts {
            grid_points: self.grid_points,
            frame_grid: self.frame_grid,
            refine_tol: self.refine_tol,
            iter_cap: self.iter_cap,
            seed: self.seed,
        }
    }
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct MeasuresArgs {
    /// State: `bell:E1,E2,E3`, `fano:ax,ay,az;bx,by,bz;E11,...,E33`,
    /// or a path to a file whose first non-comment line holds such a spec
    #[arg(long)]
    state: String,
    /// Comma-separated subset of c1,c2,c3,c3_closed,d3,dent,g, or `all`
    /// (`all` expands to the measures applicable to the given state)
    #[arg(long, default_value = "all")]
    which: String,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the output to a file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    search: SearchArgs,
}

#[derive(Args)]
struct RspArgs {
    /// State spec or file path (as in `measures`)
    #[arg(long)]
    state: String,
    /// Circle normal: `x,y,z` or `theta=..,phi=..`
    #[arg(long)]
    beta: String,
    /// Target on the circle: `theta=..,phi=..` (radians)
    #[arg(long)]
    target: String,
    /// Also simulate this many protocol events at the optimal measurement
    #[arg(long)]
    mc: Option<usize>,
    /// Quadrature points for the direct circle average
    #[arg(long, default_value_t = 4096)]
    circle_points: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    search: SearchArgs,
}

#[derive(Args)]
struct ScanArgs {
    /// State family; `cg` sweeps rho_c(p) against rho_g(p)
    #[arg(long, default_value = "cg")]
    family: String,
    /// Mixing range `start:stop:step`
    #[arg(long)]
    p: String,
    /// Write the CSV to a file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Additionally write gnuplot-ready two-column files per measure here
    #[arg(long)]
    plot_dir: Option<PathBuf>,
}

#[derive(Copy, Clone, ValueEnum)]
enum LevelArg {
    Smoke,
    Full,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = LevelArg::Smoke)]
    level: LevelArg,
    /// Write a machine-readable JSON report here
    #[arg(long)]
    report: Option<PathBuf>,
}

/// Parse arguments and dispatch. Returns the process exit code.
pub fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Measures(args) => cmd_measures(args),
        Command::Rsp(args) => cmd_rsp(args),
        Command::Scan(args) => cmd_scan(args),
        Command::Verify(args) => cmd_verify(args),
    };
    match code {
        Ok(c) => ExitCode::from(c),
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                Error::Unphysical { .. } => 3,
                _ => 2,
            };
            ExitCode::from(code)
        }
    }
}

/// Format with exactly 12 significant digits, locale-independent.
fn fmt_sig(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x }; // normalize -0
    format!("{x:.11e}")
}

fn fmt_vec(v: &Vec3) -> String {
    format!("[{},{},{}]", fmt_sig(v.x), fmt_sig(v.y), fmt_sig(v.z))
}

fn emit(text: &str, out: &Option<PathBuf>) -> Result<(), Error> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Error::Domain(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            std::io::stdout().flush().ok();
            Ok(())
        }
    }
}

fn resolve_state(raw: &str) -> Result<StateSpec, Error> {
    if raw.starts_with("bell:") || raw.starts_with("fano:") {
        return raw.parse();
    }
    let text = std::fs::read_to_string(raw).map_err(|e| {
        Error::Parse(format!(
            "'{raw}' is neither a state spec nor a readable file: {e}"
        ))
    })?;
    text.lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .ok_or_else(|| Error::Parse(format!("no state spec found in file '{raw}'")))?
        .parse()
}

fn require_physical(spec: &StateSpec) -> Result<(), Error> {
    let report = is_physical(&spec.fano(), PSD_TOL);
    if !report.physical {
        return Err(Error::Unphysical {
            min_eigenvalue: report.min_eigenvalue,
        });
    }
    Ok(())
}

fn parse_angles(text: &str, what: &str) -> Result<(f64, f64), Error> {
    let mut theta = None;
    let mut phi = None;
    for part in text.split(',') {
        let (key, value) = part
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("{what}: expected theta=..,phi=..")))?;
        let v: f64 = value
            .trim()
            .parse()
            .map_err(|e| Error::Parse(format!("{what}: bad angle '{value}': {e}")))?;
        match key.trim() {
            "theta" => theta = Some(v),
            "phi" => phi = Some(v),
            other => return Err(Error::Parse(format!("{what}: unknown key '{other}'"))),
        }
    }
    match (theta, phi) {
        (Some(t), Some(p)) => Ok((t, p)),
        _ => Err(Error::Parse(format!(
            "{what}: both theta and phi are required"
        ))),
    }
}

fn parse_direction(text: &str, what: &str) -> Result<Vec3, Error> {
    if text.contains('=') {
        let (theta, phi) = parse_angles(text, what)?;
        Ok(Vec3::new(
            theta.sin() * phi.sin(),
            theta.sin() * phi.cos(),
            theta.cos(),
        ))
    } else {
        let parts: Vec<f64> = text
            .split(',')
            .map(|t| t.trim().parse::<f64>())
            .collect::<Result<_, _>>()
            .map_err(|e| Error::Parse(format!("{what}: bad component: {e}")))?;
        if parts.len() != 3 {
            return Err(Error::Parse(format!("{what}: expected three components")));
        }
        Ok(Vec3::new(parts[0], parts[1], parts[2]))
    }
}

enum JsonValue {
    Num(f64),
    Int(u64),
    Str(String),
    Raw(String),
}

fn json_object(pairs: &[(&str, JsonValue)]) -> String {
    let body: Vec<String> = pairs
        .iter()
        .map(|(k, v)| {
            let value = match v {
                JsonValue::Num(x) => fmt_sig(*x),
                JsonValue::Int(n) => n.to_string(),
                JsonValue::Str(s) => {
                    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
                }
                JsonValue::Raw(s) => s.clone(),
            };
            format!("  \"{k}\": {value}")
        })
        .collect();
    format!("{{\n{}\n}}\n", body.join(",\n"))
}

const ALL_MEASURES: [&str; 7] = ["c1", "c2", "c3", "c3_closed", "d3", "dent", "g"];

fn cmd_measures(args: MeasuresArgs) -> Result<u8, Error> {
    let spec = resolve_state(&args.state)?;
    require_physical(&spec)?;
    let fano = spec.fano();
    let bell = spec.bell();
    let opts = args.search.opts();

    let which: Vec<String> = if args.which.trim() == "all" {
        ALL_MEASURES
            .iter()
            .filter(|name| bell.is_some() || !matches!(**name, "c3_closed" | "d3" | "g"))
            .map(|s| s.to_string())
            .collect()
    } else {
        args.which
            .split(',')
            .map(|s| s.trim().to_string())
            .collect()
    };

    let mut values: Vec<(String, f64)> = Vec::new();
    for name in &which {
        let need_bell = || {
            bell.ok_or_else(|| {
                Error::Domain(format!("measure '{name}' requires a Bell-diagonal state"))
            })
        };
        let value = match name.as_str() {
            "c1" => c1(&fano, &opts).value.value(),
            "c2" => c2(&fano, &opts).value.value(),
            "c3" => c3(&fano, &opts).value.value(),
            "c3_closed" => c3_bell_closed(&need_bell()?)?.value(),
            "d3" => discord_quadratic(&need_bell()?),
            "dent" => discord_entropic(&fano, &opts)?.value.value(),
            "g" => g_closed(&need_bell()?),
            other => {
                return Err(Error::Parse(format!(
                    "unknown measure '{other}'; available: {}",
                    ALL_MEASURES.join(",")
                )))
            }
        };
        values.push((name.clone(), value));
    }

    let text = match args.format {
        Format::Json => {
            let mut pairs: Vec<(&str, JsonValue)> = vec![
                ("convention", JsonValue::Str(CONVENTION.into())),
                ("state", JsonValue::Str(args.state.clone())),
            ];
            for (name, value) in &values {
                pairs.push((name, JsonValue::Num(*value)));
            }
            json_object(&pairs)
        }
        Format::Csv => {
            let header: Vec<&str> = values.iter().map(|(n, _)| n.as_str()).collect();
            let row: Vec<String> = values.iter().map(|(_, v)| fmt_sig(*v)).collect();
            format!(
                "{}\n# convention: {}\n{}\n",
                header.join(","),
                CONVENTION,
                row.join(",")
            )
        }
    };
    emit(&text, &args.out)?;
    Ok(0)
}

fn cmd_rsp(args: RspArgs) -> Result<u8, Error> {
    let spec = resolve_state(&args.state)?;
    require_physical(&spec)?;
    let fano = spec.fano();
    let bell = spec.bell();
    let opts = args.search.opts();

    let circle = GreatCircle::new(parse_direction(&args.beta, "--beta")?)?;
    let (theta, phi) = parse_angles(&args.target, "--target")?;
    let target = TargetState::new(theta, phi);
    let off = target.bloch().dot(&circle.beta()).abs();
    if off > 1e-9 {
        return Err(Error::Parse(format!(
            "target is not on the great circle perpendicular to beta (|t.beta| = {off:.3e})"
        )));
    }

    let report = pq_max(&fano, &target, &circle, &opts)?;
    let averages = bell.map(|bd| {
        (
            pq_av_closed(&bd, &circle),
            pq_av_quadrature(&bd, &circle, args.circle_points.max(64)),
        )
    });
    let mc = args.mc.map(|n| {
        let alpha = AliceMeasurement::new(report.argmax_alpha).expect("unit argmax");
        mc_simulate(&fano, &alpha, &circle, &target, n.max(1), args.search.seed)
    });

    let text = match args.format {
        Format::Json => {
            let mut pairs: Vec<(&str, JsonValue)> = vec![
                ("convention", JsonValue::Str(CONVENTION.into())),
                ("state", JsonValue::Str(args.state.clone())),
                ("beta", JsonValue::Raw(fmt_vec(&circle.beta()))),
                ("target", JsonValue::Raw(fmt_vec(&target.bloch()))),
                ("pq_max", JsonValue::Num(report.pq)),
                ("pl_at_optimum", JsonValue::Num(report.pl)),
                (
                    "argmax_alpha",
                    JsonValue::Raw(fmt_vec(&report.argmax_alpha)),
                ),
            ];
            if let Some((closed, quad)) = averages {
                pairs.push(("pq_av_closed", JsonValue::Num(closed)));
                pairs.push(("pq_av_quadrature", JsonValue::Num(quad)));
            } else {
                pairs.push((
                    "note",
                    JsonValue::Str("circle averages apply to Bell-diagonal states only".into()),
                ));
            }
            if let Some(mc) = &mc {
                let block = json_object(&[
                    ("mean", JsonValue::Raw(fmt_vec(&mc.mean))),
                    ("std_error", JsonValue::Raw(fmt_vec(&mc.std_error))),
                    ("pq", JsonValue::Num(mc.pq)),
                    ("pl", JsonValue::Num(mc.pl)),
                    ("events", JsonValue::Int(mc.events as u64)),
                    ("seed", JsonValue::Int(args.search.seed)),
                ]);
                pairs.push(("mc", JsonValue::Raw(block.trim_end().replace('\n', "\n  "))));
            }
            json_object(&pairs)
        }
        Format::Csv => {
            let mut header = vec!["pq_max", "pl_at_optimum", "alpha_x", "alpha_y", "alpha_z"];
            let mut row = vec![
                fmt_sig(report.pq),
                fmt_sig(report.pl),
                fmt_sig(report.argmax_alpha.x),
                fmt_sig(report.argmax_alpha.y),
                fmt_sig(report.argmax_alpha.z),
            ];
            if let Some((closed, quad)) = averages {
                header.extend(["pq_av_closed", "pq_av_quadrature"]);
                row.push(fmt_sig(closed));
                row.push(fmt_sig(quad));
            }
            if let Some(mc) = &mc {
                header.extend([
                    "mc_mean_x",
                    "mc_mean_y",
                    "mc_mean_z",
                    "mc_se_x",
                    "mc_se_y",
                    "mc_se_z",
                    "mc_events",
                ]);
                for i in 0..3 {
                    row.push(fmt_sig(mc.mean[i]));
                }
                for i in 0..3 {
                    row.push(fmt_sig(mc.std_error[i]));
                }
                row.push(mc.events.to_string());
            }
            format!(
                "{}\n# convention: {}\n{}\n",
                header.join(","),
                CONVENTION,
                row.join(",")
            )
        }
    };
    emit(&text, &args.out)?;
    Ok(0)
}

struct ScanRow {
    p: f64,
    g_c: f64,
    g_g: f64,
    c3_c: f64,
    c3_g: f64,
    d3_c: f64,
    d3_g: f64,
    dent_c: f64,
    dent_g: f64,
    sep_c: bool,
    sep_g: bool,
}

fn parse_range(text: &str) -> Result<Vec<f64>, Error> {
    let parts: Vec<f64> = text
        .split(':')
        .map(|t| t.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|e| Error::Parse(format!("bad range '{text}': {e}")))?;
    if parts.len() != 3 {
        return Err(Error::Parse(format!(
            "range '{text}' must be start:stop:step"
        )));
    }
    let (start, stop, step) = (parts[0], parts[1], parts[2]);
    if step <= 0.0 || stop < start - 1e-12 {
        return Err(Error::Parse(format!(
            "range '{text}' must have step > 0 and stop >= start"
        )));
    }
    let mut values = Vec::new();
    let mut k = 0u32;
    loop {
        let p = start + f64::from(k) * step;
        if p > stop + 1e-12 {
            break;
        }
        values.push(p);
        k += 1;
    }
    Ok(values)
}

fn cmd_scan(args: ScanArgs) -> Result<u8, Error> {
    if args.family != "cg" {
        return Err(Error::Parse(format!(
            "unknown family '{}'; available: cg",
            args.family
        )));
    }
    let ps = parse_range(&args.p)?;
    if let Some(bad) = ps.iter().find(|p| !(-1e-12..=1.0 + 1e-12).contains(*p)) {
        return Err(Error::Parse(format!(
            "mixing parameter {bad} outside [0, 1]"
        )));
    }

    let rows: Vec<ScanRow> = ps
        .par_iter()
        .map(|&p| {
            let c = crate::rsp::rho_c(p).expect("range checked");
            let g = crate::rsp::rho_g(p).expect("range checked");
            ScanRow {
                p,
                g_c: g_closed(&c),
                g_g: g_closed(&g),
                c3_c: c3_bell_closed(&c).expect("physical").value(),
                c3_g: c3_bell_closed(&g).expect("physical").value(),
                d3_c: discord_quadratic(&c),
                d3_g: discord_quadratic(&g),
                dent_c: discord_entropic_bell(&c).expect("physical"),
                dent_g: discord_entropic_bell(&g).expect("physical"),
                sep_c: ppt_check(&c.to_fano()).classification == Separability::Separable,
                sep_g: ppt_check(&g.to_fano()).classification == Separability::Separable,
            }
        })
        .collect();

    let mut text = format!("{EXACT_SCAN_HEADER}\n# convention: {CONVENTION}; sep=1 separable\n");
    for r in &rows {
        text.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{}\n",
            fmt_sig(r.p),
            fmt_sig(r.g_c),
            fmt_sig(r.g_g),
            fmt_sig(r.c3_c),
            fmt_sig(r.c3_g),
            fmt_sig(r.d3_c),
            fmt_sig(r.d3_g),
            fmt_sig(r.dent_c),
            fmt_sig(r.dent_g),
            u8::from(r.sep_c),
            u8::from(r.sep_g),
        ));
    }
    emit(&text, &args.out)?;

    if let Some(dir) = &args.plot_dir {
        std::fs::create_dir_all(dir)
            .map_err(|e| Error::Domain(format!("cannot create {}: {e}", dir.display())))?;
        type Column = fn(&ScanRow) -> f64;
        let columns: [(&str, Column); 8] = [
            ("g_c", |r| r.g_c),
            ("g_g", |r| r.g_g),
            ("c3_c", |r| r.c3_c),
            ("c3_g", |r| r.c3_g),
            ("d3_c", |r| r.d3_c),
            ("d3_g", |r| r.d3_g),
            ("dent_c", |r| r.dent_c),
            ("dent_g", |r| r.dent_g),
        ];
        for (name, get) in &columns {
            let mut data = format!("# {name} vs p; {CONVENTION}\n");
            for r in &rows {
                data.push_str(&format!("{} {}\n", fmt_sig(r.p), fmt_sig(get(r))));
            }
            let path = dir.join(format!("{name}.dat"));
            std::fs::write(&path, data)
                .map_err(|e| Error::Domain(format!("cannot write {}: {e}", path.display())))?;
        }
    }
    Ok(0)
}

fn cmd_verify(args: VerifyArgs) -> Result<u8, Error> {
    let level = match args.level {
        LevelArg::Smoke => Level::Smoke,
        LevelArg::Full => Level::Full,
    };
    let started = std::time::Instant::now();
    let suite = full_suite(args.seed, level);
    print_suite(&suite, started.elapsed().as_secs_f64());
    if let Some(path) = &args.report {
        let json = serde_json::to_string_pretty(&suite)
            .map_err(|e| Error::Domain(format!("cannot serialize report: {e}")))?;
        std::fs::write(path, json)
            .map_err(|e| Error::Domain(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(u8::from(!suite.passed()))
}

fn print_suite(suite: &SuiteReport, total_s: f64) {
    for check in &suite.checks {
        let tag = if check.passed { "PASS" } else { "FAIL" };
        let obs: Vec<String> = check.observed.iter().map(|v| format!("{v:.4e}")).collect();
        let exp: Vec<String> = check.expected.iter().map(|v| format!("{v:.4e}")).collect();
        println!(
            "[{tag}] {}: observed [{}] expected [{}] tol {:.1e} ({:.2}s)\n       {}",
            check.name,
            obs.join(", "),
            exp.join(", "),
            check.tolerance,
            check.runtime_s,
            check.note,
        );
    }
    let passed = suite.checks.iter().filter(|c| c.passed).count();
    println!(
        "{passed}/{} checks passed (level {}, seed {}, {total_s:.2}s total)",
        suite.checks.len(),
        suite.level,
        suite.seed
    );
}

/// Library entry for the counterexample table, mirroring the CLI scan at
/// fixed mixing values.
pub fn counterexample_table(p_grid: &[f64]) -> Vec<crate::verify::CheckReport> {
    counterexample_scan(p_grid, 50, &SearchOpts::default())
}
