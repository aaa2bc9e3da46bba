//! `zfr`: command-line front end for the zero-free region pipeline.
//!
//! Exit codes: 0 success, 1 check or constraint failure, 2 usage or parse
//! failure.

mod manifest;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use manifest::{wrap_csv, wrap_json, ManifestBuilder};
use zfr_core::classical::{gamma_bound_table, region_constants_from_table, Xi2Bound, EPSILON_MAX};
use zfr_core::exceptional::{compute_r, search_split, Sweep};
use zfr_core::polysearch::anneal;
use zfr_core::reproduce::reproduce_all;
use zfr_core::trigpoly::verify_admissible;
use zfr_core::{report, AnnealConfig, BoundConfig, Objective, RegionSplit, SolverConfig, TrigPoly};

#[derive(Parser, Debug)]
#[command(
    name = "zfr",
    version,
    about = "Explicit zero-free region constants for Dedekind zeta-functions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Certify that a polynomial file is admissible.
    VerifyPoly {
        path: PathBuf,
        /// Grid points on [0, π].
        #[arg(long, default_value_t = 1_000_001)]
        grid_points: usize,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Per-k bound table: B_eps(k), S1, S2, S, with alpha_eps and d_eps(0).
    Tables {
        #[command(flatten)]
        bounds: BoundArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// The constants (C1, C2, C3, C4) of the classical zero-free region.
    Constants {
        #[command(flatten)]
        bounds: BoundArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// The low-height constant R for one split or a grid of splits.
    Exceptional {
        #[arg(long, required_unless_present = "search", requires = "d2")]
        d1: Option<f64>,
        #[arg(long, required_unless_present = "search", requires = "d1")]
        d2: Option<f64>,
        /// Search a grid of splits instead of a single one.
        #[arg(long, conflicts_with_all = ["d1", "d2"])]
        search: bool,
        #[arg(long, default_value = "0.995:1.005", value_parser = parse_range)]
        d1_range: (f64, f64),
        #[arg(long, default_value = "2.31:2.33", value_parser = parse_range)]
        d2_range: (f64, f64),
        #[arg(long, default_value_t = 1e-3)]
        d1_step: f64,
        #[arg(long, default_value_t = 1e-3)]
        d2_step: f64,
        /// Use the coarse solver (r-grid step 1e-2); the default under --search.
        #[arg(long)]
        coarse: bool,
        /// Write the per-cell CSV of a search here.
        #[arg(long)]
        cells_out: Option<PathBuf>,
        #[arg(long)]
        poly: Option<PathBuf>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Simulated-annealing search for a better polynomial.
    Anneal {
        #[arg(long, default_value_t = 16)]
        degree: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 10_000)]
        steps: usize,
        #[arg(long, default_value_t = 1.0)]
        initial_temp: f64,
        #[arg(long, default_value_t = 0.9995)]
        cooling_rate: f64,
        #[arg(long, default_value_t = 0.05)]
        move_scale: f64,
        #[arg(long, value_enum, default_value_t = ObjectiveArg::C1)]
        objective: ObjectiveArg,
        /// Split used by the R objective.
        #[arg(long, default_value_t = 1.0015)]
        d1: f64,
        #[arg(long, default_value_t = 2.318)]
        d2: f64,
        /// Non-negativity tolerance for the start, every proposal, and the result.
        #[arg(long, default_value_t = 1e-9)]
        nonneg_tol: f64,
        /// Start polynomial; defaults to 3 + 4cos φ + cos 2φ.
        #[arg(long)]
        start: Option<PathBuf>,
        /// Write the best polynomial (polynomial file format) here.
        #[arg(long)]
        best_out: Option<PathBuf>,
        /// Write the per-step trace CSV here.
        #[arg(long)]
        trace_out: Option<PathBuf>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Run every reproduction check and print one line per check.
    Reproduce {
        #[arg(long)]
        json: bool,
        #[arg(long)]
        poly: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(clap::Args, Debug)]
struct BoundArgs {
    #[arg(long, default_value_t = 0.01, value_parser = parse_epsilon)]
    epsilon: f64,
    /// Polynomial file; defaults to the embedded degree-16 polynomial.
    #[arg(long)]
    poly: Option<PathBuf>,
    /// Largest k of the table; defaults to the polynomial degree.
    #[arg(long)]
    kmax: Option<usize>,
    #[arg(long, value_enum, default_value_t = Xi2Arg::Published)]
    xi2_bound: Xi2Arg,
    /// Points per axis of the audit grids.
    #[arg(long, default_value_t = 400)]
    grid_points: usize,
}

#[derive(clap::Args, Debug)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Output path; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Csv,
    Json,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
enum Xi2Arg {
    Published,
    Audited,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum ObjectiveArg {
    C1,
    R,
}

fn parse_epsilon(s: &str) -> std::result::Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if v > 0.0 && v <= EPSILON_MAX {
        Ok(v)
    } else {
        Err(format!("epsilon must lie in (0, {EPSILON_MAX}]"))
    }
}

fn parse_range(s: &str) -> std::result::Result<(f64, f64), String> {
    let (lo, hi) = s.split_once(':').ok_or("expected LO:HI")?;
    let lo: f64 = lo.trim().parse().map_err(|e| format!("{e}"))?;
    let hi: f64 = hi.trim().parse().map_err(|e| format!("{e}"))?;
    if lo <= hi {
        Ok((lo, hi))
    } else {
        Err("LO must not exceed HI".into())
    }
}

/// Errors that map to exit code 2.
#[derive(Debug)]
struct UsageError(String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

fn load_poly(path: Option<&Path>, manifest: &mut ManifestBuilder) -> Result<TrigPoly> {
    let Some(path) = path else {
        return Ok(TrigPoly::mt16());
    };
    let bytes =
        fs::read(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    manifest.input(path, &bytes);
    let text = String::from_utf8(bytes).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    TrigPoly::from_json(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

fn bound_config(args: &BoundArgs, p: &TrigPoly) -> Result<BoundConfig> {
    let cfg = BoundConfig {
        epsilon: args.epsilon,
        kmax: args.kmax.unwrap_or(p.degree()),
        grid_points_sigma: args.grid_points,
        grid_points_t: args.grid_points,
        xi2_bound: match args.xi2_bound {
            Xi2Arg::Published => Xi2Bound::Published,
            Xi2Arg::Audited => Xi2Bound::Audited,
        },
        ..BoundConfig::default()
    };
    cfg.validate().map_err(|e| usage(e.to_string()))?;
    Ok(cfg)
}

fn report_audit(audit: &zfr_core::classical::AuditReport) -> u8 {
    let failures: Vec<_> = audit.failures().collect();
    for f in &failures {
        eprintln!("audit failed: {}: {}", f.name, f.detail);
    }
    u8::from(!failures.is_empty())
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::VerifyPoly {
            path,
            grid_points,
            tol,
            out,
        } => {
            let mut m = ManifestBuilder::new("verify-poly");
            let p = load_poly(Some(&path), &mut m)?;
            let cfg = BoundConfig {
                nonneg_grid_points: grid_points,
                nonneg_tol: tol,
                ..BoundConfig::default()
            };
            cfg.validate().map_err(|e| usage(e.to_string()))?;
            m.config(&serde_json::json!({ "grid_points": grid_points, "tol": tol }));
            let rep = verify_admissible(&p, &cfg).map_err(|e| usage(e.to_string()))?;
            let text = match out.format {
                Format::Json => wrap_json(&m.finish(), &rep),
                Format::Csv => {
                    let csv = format!(
                        "nonneg_ok,coeff_sign_ok,a0_lt_a1_ok,min_value_lower_bound,witness_phi,grid_min,grid_points\n{},{},{},{},{},{},{}\n",
                        rep.nonneg_ok,
                        rep.coeff_sign_ok,
                        rep.a0_lt_a1_ok,
                        report::full(rep.min_value_lower_bound),
                        report::full(rep.witness_phi),
                        report::full(rep.grid_min),
                        rep.grid_points
                    );
                    wrap_csv(&m.finish(), &csv)
                }
            };
            emit(out.out.as_deref(), &text)?;
            Ok(u8::from(!rep.admissible()))
        }
        Command::Tables { bounds, out } => {
            let mut m = ManifestBuilder::new("tables");
            let p = load_poly(bounds.poly.as_deref(), &mut m)?;
            let cfg = bound_config(&bounds, &p)?;
            m.config(&cfg);
            let table = gamma_bound_table(&cfg)?;
            let text = match out.format {
                Format::Json => wrap_json(&m.finish(), &table),
                Format::Csv => wrap_csv(&m.finish(), &report::gamma_table_csv(&table)?),
            };
            emit(out.out.as_deref(), &text)?;
            Ok(report_audit(&table.audit))
        }
        Command::Constants { bounds, out } => {
            let mut m = ManifestBuilder::new("constants");
            let p = load_poly(bounds.poly.as_deref(), &mut m)?;
            let cfg = bound_config(&bounds, &p)?;
            m.config(&cfg);
            let table = gamma_bound_table(&cfg)?;
            let consts = region_constants_from_table(&p, &table)?;
            let text = match out.format {
                Format::Json => wrap_json(
                    &m.finish(),
                    &serde_json::json!({ "constants": consts, "audit": table.audit }),
                ),
                Format::Csv => wrap_csv(&m.finish(), &report::constants_csv(&consts)?),
            };
            emit(out.out.as_deref(), &text)?;
            Ok(report_audit(&table.audit))
        }
        Command::Exceptional {
            d1,
            d2,
            search,
            d1_range,
            d2_range,
            d1_step,
            d2_step,
            coarse,
            cells_out,
            poly,
            out,
        } => {
            let mut m = ManifestBuilder::new("exceptional");
            let p = load_poly(poly.as_deref(), &mut m)?;
            if search {
                let solver = SolverConfig::coarse();
                let s1 = Sweep::new(d1_range.0, d1_range.1, d1_step)
                    .map_err(|e| usage(e.to_string()))?;
                let s2 = Sweep::new(d2_range.0, d2_range.1, d2_step)
                    .map_err(|e| usage(e.to_string()))?;
                m.config(&serde_json::json!({ "d1": s1, "d2": s2, "solver": solver }));
                let found = search_split(&p, s1, s2, &solver)?;
                let manifest = m.finish();
                if let Some(path) = &cells_out {
                    emit(
                        Some(path),
                        &wrap_csv(&manifest, &report::cells_csv(&found.cells)?),
                    )?;
                }
                let best = found
                    .best
                    .as_ref()
                    .ok_or_else(|| anyhow!("no feasible split in the search grid"))?;
                let text = match out.format {
                    Format::Json => wrap_json(&manifest, &best),
                    Format::Csv => wrap_csv(&manifest, &report::exceptional_csv(best)?),
                };
                emit(out.out.as_deref(), &text)?;
                Ok(u8::from(
                    !(best.constraints_ok() && best.residuals_ok(1e-4)),
                ))
            } else {
                let solver = if coarse {
                    SolverConfig::coarse()
                } else {
                    SolverConfig::default()
                };
                let (d1, d2) = (d1.expect("required by clap"), d2.expect("required by clap"));
                let split = RegionSplit::new(d1, d2).map_err(|e| usage(e.to_string()))?;
                m.config(&serde_json::json!({ "split": split, "solver": solver }));
                let res = compute_r(&p, split, &solver)?;
                let text = match out.format {
                    Format::Json => wrap_json(&m.finish(), &res),
                    Format::Csv => wrap_csv(&m.finish(), &report::exceptional_csv(&res)?),
                };
                emit(out.out.as_deref(), &text)?;
                Ok(u8::from(!(res.constraints_ok() && res.residuals_ok(1e-4))))
            }
        }
        Command::Anneal {
            degree,
            seed,
            steps,
            initial_temp,
            cooling_rate,
            move_scale,
            objective,
            d1,
            d2,
            nonneg_tol,
            start,
            best_out,
            trace_out,
            out,
        } => {
            let mut m = ManifestBuilder::new("anneal");
            let start_poly = match &start {
                Some(path) => load_poly(Some(path), &mut m)?,
                None => TrigPoly::new(vec![3.0, 4.0, 1.0])?,
            };
            let objective = match objective {
                ObjectiveArg::C1 => Objective::C1Ratio,
                ObjectiveArg::R => Objective::RExceptional {
                    split: RegionSplit::new(d1, d2).map_err(|e| usage(e.to_string()))?,
                    solver: SolverConfig::coarse(),
                },
            };
            let acfg = AnnealConfig {
                degree,
                seed,
                initial_temp,
                cooling_rate,
                steps,
                move_scale,
                objective,
                ..AnnealConfig::default()
            };
            acfg.validate().map_err(|e| usage(e.to_string()))?;
            let cfg = BoundConfig {
                nonneg_tol,
                ..BoundConfig::default()
            };
            cfg.validate().map_err(|e| usage(e.to_string()))?;
            m.config(&serde_json::json!({ "anneal": acfg, "nonneg_tol": nonneg_tol }));
            let res = anneal(&start_poly, &acfg, &cfg)?;
            let manifest = m.finish();
            if let Some(path) = &best_out {
                emit(Some(path), &format!("{}\n", res.best.to_json()))?;
            }
            if let Some(path) = &trace_out {
                emit(
                    Some(path),
                    &wrap_csv(&manifest, &report::trace_csv(&res.trace)?),
                )?;
            }
            let summary = serde_json::json!({
                "best": res.best.coeffs(),
                "best_value": res.best_value,
                "start_value": res.start_value,
                "accepted": res.accepted,
                "steps": steps,
                "certificate": res.certificate,
            });
            let text = match out.format {
                Format::Json => wrap_json(&manifest, &summary),
                Format::Csv => wrap_csv(&manifest, &report::trace_csv(&res.trace)?),
            };
            emit(out.out.as_deref(), &text)?;
            Ok(0)
        }
        Command::Reproduce { json, poly, out } => {
            let mut m = ManifestBuilder::new("reproduce");
            let p = load_poly(poly.as_deref(), &mut m)?;
            m.config(&serde_json::json!({ "json": json }));
            let rep = reproduce_all(&p)?;
            let text = if json {
                wrap_json(&m.finish(), &rep)
            } else {
                let mut s = String::new();
                for c in &rep.checks {
                    let tag = if c.passed { "PASS" } else { "FAIL" };
                    s.push_str(&format!(
                        "[{tag}] criterion {:>2}: {} ({})\n",
                        c.criterion, c.name, c.detail
                    ));
                }
                for n in &rep.notes {
                    s.push_str(&format!("[INFO] {n}\n"));
                }
                let passed = rep.checks.iter().filter(|c| c.passed).count();
                s.push_str(&format!("{passed}/{} checks passed\n", rep.checks.len()));
                if let Some(f) = rep.first_failure() {
                    s.push_str(&format!(
                        "first failure: criterion {}: {}\n",
                        f.criterion, f.name
                    ));
                }
                s
            };
            emit(out.as_deref(), &text)?;
            Ok(u8::from(!rep.passed()))
        }
    }
}

fn configure_threads() -> Result<()> {
    if let Ok(v) = std::env::var("ZFR_THREADS") {
        let n: usize = v
            .parse()
            .map_err(|_| usage(format!("ZFR_THREADS must be a positive integer, got {v:?}")))?;
        if n == 0 {
            return Err(usage("ZFR_THREADS must be positive"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .context("configuring the worker pool")?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match configure_threads().and_then(|()| run(cli)) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            if err.downcast_ref::<UsageError>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
