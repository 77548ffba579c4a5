use std::path::{Path, PathBuf};

use burgers_core::acceptance::{self, CriterionResult};
use burgers_core::grid::Field1D;
use burgers_core::solver::{evolve, Equation};
use burgers_core::special::self_test;
use burgers_core::strain::{SimilarityFrame, StrainModel};
use burgers_core::verification::crosscheck::{cross_check_transform, CrossCheckParams, Verdict};
use burgers_core::verification::{
    discrete_spectrum, spatial_order_study, temporal_order_study, DiscrepancyReport,
};
use rayon::prelude::*;
use serde::Serialize;

use crate::config::{
    self, ConvergenceConfig, CrossCheckConfig, EvalConfig, EvolveConfig, InitialConfig, SpectrumConfig,
};
use crate::csvio::{read_snapshot, to_csv};
use crate::error::CliError;
use crate::output::{write_atomic, write_json};

pub struct Context {
    pub config: Option<PathBuf>,
    pub out: PathBuf,
    pub threads: Option<usize>,
    pub tolerance: Option<f64>,
}

impl Context {
    fn config_path(&self, command: &str) -> Result<&Path, CliError> {
        self.config
            .as_deref()
            .ok_or_else(|| CliError::Validation(format!("`{command}` needs --config <path>")))
    }

    fn tolerance_or(&self, default: f64) -> Result<f64, CliError> {
        match self.tolerance {
            Some(t) if !(t.is_finite() && t > 0.0) => {
                Err(CliError::Validation(format!("--tolerance must be finite and > 0, got {t}")))
            }
            Some(t) => Ok(t),
            None => Ok(default),
        }
    }

    fn no_tolerance(&self, command: &str) -> Result<(), CliError> {
        match self.tolerance {
            Some(_) => Err(CliError::Validation(format!("--tolerance does not apply to `{command}`"))),
            None => Ok(()),
        }
    }
}

pub fn eval(ctx: &Context) -> Result<(), CliError> {
    ctx.no_tolerance("eval")?;
    let cfg: EvalConfig = config::load(ctx.config_path("eval")?)?;
    let solution = cfg.solution.build("solution")?;
    let grid = cfg.grid.build("grid")?;
    // similarity output is the physical output of the unit frame at t = τ
    let (frame, t, coord) = match &cfg.frame {
        Some(f) => (f.build("frame")?, f.t, "x"),
        None => (SimilarityFrame::new(StrainModel::constant(1.0)?, 1.0)?, cfg.tau, "xi"),
    };
    let mut rows = Vec::with_capacity(grid.len());
    for x in grid.coords() {
        let mut row = vec![x, solution.physical_omega(&frame, x, t)?];
        if cfg.include_w {
            row.push(solution.w_profile(&frame, x, t)?);
        }
        rows.push(row);
    }
    let mut header = vec![coord, "omega"];
    let mut comments = vec![
        "burgers eval".to_string(),
        format!("solution: {:?}", cfg.solution),
        match &cfg.frame {
            Some(f) => format!("physical coordinates: strain {:?}, nu = {}, t = {}", f.strain, f.nu, f.t),
            None => format!("similarity coordinates, tau = {}", cfg.tau),
        },
        format!("{coord}: coordinate; omega: vorticity"),
    ];
    if cfg.include_w {
        header.push("w");
        comments.push("w: axial velocity, integral of omega dx from 0 (w = 0 at the origin)".into());
    }
    write_atomic(&ctx.out, &cfg.output, &to_csv(&comments, &header, &rows)?)?;
    println!("wrote {} rows to {}", rows.len(), ctx.out.join(&cfg.output).display());
    Ok(())
}

fn initial_field(cfg: &EvolveConfig, config_dir: &Path, equation: &Equation) -> Result<Field1D, CliError> {
    Ok(match &cfg.initial {
        InitialConfig::Zero { grid } => Field1D::zeros(grid.build("initial.grid")?),
        InitialConfig::Solution { solution, grid } => {
            let solution = solution.build("initial.solution")?;
            let grid = grid.build("initial.grid")?;
            match equation {
                Equation::Similarity { .. } => Field1D::try_from_fn(grid, |x| solution.omega(x, 0.0))?,
                Equation::Physical(frame) => Field1D::try_from_fn(grid, |x| solution.physical_omega(frame, x, 0.0))?,
            }
        }
        InitialConfig::Csv { path } => read_snapshot(&config_dir.join(path))?,
    })
}

pub fn evolve_cmd(ctx: &Context) -> Result<(), CliError> {
    ctx.no_tolerance("evolve")?;
    let path = ctx.config_path("evolve")?;
    let cfg: EvolveConfig = config::load(path)?;
    let spec = cfg.spec()?;
    let dir = path.parent().unwrap_or(Path::new("."));
    let initial = initial_field(&cfg, dir, &spec.equation)?;
    let result = evolve(&initial, &spec)?;
    let (coord, time) = match spec.equation {
        Equation::Similarity { .. } => ("xi", "tau"),
        Equation::Physical(_) => ("x", "t"),
    };
    for (k, (t, field)) in result.snapshots.iter().enumerate() {
        let rows: Vec<Vec<f64>> = field.grid().coords().into_iter().zip(field.values()).map(|(x, v)| vec![x, *v]).collect();
        let comments = vec![
            "burgers evolve snapshot".to_string(),
            format!("{time} = {t}"),
            format!("{coord}: coordinate; omega: vorticity"),
        ];
        write_atomic(&ctx.out, &format!("snapshot_{k:03}.csv"), &to_csv(&comments, &["coordinate", "omega"], &rows)?)?;
    }
    let rows: Vec<Vec<f64>> = result.norms.iter().map(|s| vec![s.time, s.l2, s.linf]).collect();
    let comments = vec![
        "burgers evolve norms".to_string(),
        format!("time: {time}; l2: sqrt(h sum omega^2); linf: max |omega|"),
    ];
    write_atomic(&ctx.out, "norms.csv", &to_csv(&comments, &["time", "l2", "linf"], &rows)?)?;
    println!(
        "{} steps; {} snapshots; final L2 = {}; output in {}",
        result.steps,
        result.snapshots.len(),
        result.field.l2_norm(),
        ctx.out.display()
    );
    Ok(())
}

pub fn spectrum(ctx: &Context) -> Result<(), CliError> {
    let cfg: SpectrumConfig = config::load(ctx.config_path("spectrum")?)?;
    let threshold = ctx.tolerance_or(cfg.threshold)?;
    let grid = cfg.grid.build("grid")?;
    let report = discrete_spectrum(cfg.alpha, &grid, cfg.k)?;
    write_json(&ctx.out, "spectrum.json", &report)?;
    println!("alpha = {}, N = {}, L = {}", cfg.alpha, grid.len(), grid.half_width());
    println!("{:>3}  {:>22}  {:>22}  {:>10}", "n", "computed", "closed form", "abs error");
    for (((n, v), exact), err) in report.computed.iter().zip(&report.closed_form).zip(&report.abs_errors) {
        let flag = if *v < 0.0 { "  growing mode" } else { "" };
        println!("{n:>3}  {v:>22.15e}  {exact:>22.15e}  {err:>10.3e}{flag}");
    }
    let worst = report.max_abs_error();
    if worst >= threshold {
        return Err(CliError::CheckFailed(format!("max abs error {worst:e} >= threshold {threshold:e}")));
    }
    Ok(())
}

pub fn crosscheck(ctx: &Context) -> Result<(), CliError> {
    let cfg: CrossCheckConfig = config::load(ctx.config_path("crosscheck")?)?;
    let mut params = CrossCheckParams::new(cfg.strain, cfg.nu, cfg.mode_n, cfg.t_end)
        .with_points(cfg.num_points)
        .with_implied_alpha(cfg.implied_alpha);
    params.threshold = ctx.tolerance_or(cfg.threshold)?;
    let report = cross_check_transform(&params)?;
    write_json(&ctx.out, "crosscheck.json", &report)?;
    println!("c1 = {}, n = {}, t_end = {}, tau_end = {}", cfg.strain.c1(), cfg.mode_n, cfg.t_end, report.tau_end);
    for c in &report.candidates {
        match c.max_error {
            Some(e) => println!("  alpha = {:<8} ({:<8}) max error {e:.3e}", c.alpha, c.label),
            None => println!("  alpha = {:<8} ({:<8}) inadmissible (alpha <= 0)", c.alpha, c.label),
        }
    }
    if let Some(a) = report.implied_alpha {
        println!("  implied alpha (error minimiser, coarse grid) = {a:.4}");
    }
    match DiscrepancyReport::build(&report) {
        Ok(d) => write_json(&ctx.out, "discrepancy.json", &d)?,
        Err(e) => println!("  discrepancy report not written: {e}"),
    }
    match report.verdict {
        Verdict::Winner { alpha } => {
            println!("winner: alpha = {alpha} (separation {:.1}x)", report.separation.unwrap_or(f64::NAN));
            Ok(())
        }
        Verdict::Degenerate { alpha } => {
            println!("both candidates pass with alpha = {alpha}: degenerate at c1=0");
            Ok(())
        }
        Verdict::Ambiguous => Err(CliError::CheckFailed("both candidates pass with distinct alpha".into())),
        Verdict::NoCandidate => Err(CliError::CheckFailed(format!(
            "no candidate below the threshold {:e}",
            params.threshold
        ))),
    }
}

pub fn specfun_check(ctx: &Context) -> Result<(), CliError> {
    ctx.no_tolerance("specfun-check")?;
    let report = self_test()?;
    write_json(&ctx.out, "specfun.json", &report)?;
    use acceptance::tol;
    let rows = [
        ("recurrence (relative)", report.recurrence, tol::SPECFUN_RECURRENCE),
        ("Hermite reduction", report.hermite_reduction, tol::SPECFUN_HERMITE),
        ("Weber residual", report.weber, tol::SPECFUN_WEBER),
    ];
    let mut failed = Vec::new();
    for (name, w, limit) in rows {
        let ok = w.value < limit;
        println!(
            "{} {name:<22} {:.3e} < {limit:e}   (worst at nu = {:.4}, z = {:.4})",
            if ok { "PASS" } else { "FAIL" },
            w.value,
            w.nu,
            w.z
        );
        if !ok {
            failed.push(name);
        }
    }
    println!("     handoff mismatch       {:.3e}", report.handoff.value);
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::CheckFailed(format!("failed: {}", failed.join(", "))))
    }
}

#[derive(Serialize)]
struct ConvergenceReport {
    spatial: burgers_core::verification::OrderStudy,
    temporal: burgers_core::verification::OrderStudy,
}

pub fn convergence(ctx: &Context) -> Result<(), CliError> {
    ctx.no_tolerance("convergence")?;
    let cfg: ConvergenceConfig = match &ctx.config {
        Some(p) => config::load(p)?,
        None => ConvergenceConfig::default(),
    };
    let spatial = spatial_order_study(cfg.alpha, cfg.spatial_mode, 10.0, &cfg.sizes, cfg.tau_end)?;
    let grid = cfg.temporal_grid.build("temporal_grid")?;
    let temporal = temporal_order_study(cfg.alpha, cfg.temporal_mode, &grid, &cfg.dts, cfg.tau_end)?;
    println!("spatial (h{}, alpha = {}):", cfg.spatial_mode, cfg.alpha);
    for (i, (h, e)) in spatial.steps.iter().zip(&spatial.errors).enumerate() {
        let order = if i > 0 { format!("{:.3}", spatial.orders[i - 1]) } else { "-".into() };
        println!("  h = {h:<10.4e} error = {e:.3e}  order = {order}");
    }
    println!("temporal (RK4, discrete mode {}):", cfg.temporal_mode);
    for (i, (dt, e)) in temporal.steps.iter().zip(&temporal.errors).enumerate() {
        let order = if i > 0 { format!("{:.3}", temporal.orders[i - 1]) } else { "-".into() };
        println!("  dt = {dt:<9.4e} error = {e:.3e}  order = {order}");
    }
    let ok = spatial.min_order() >= acceptance::tol::SPATIAL_ORDER && temporal.min_order() >= acceptance::tol::TEMPORAL_ORDER;
    write_json(&ctx.out, "convergence.json", &ConvergenceReport { spatial, temporal })?;
    if ok {
        Ok(())
    } else {
        Err(CliError::CheckFailed("observed order below the expected order".into()))
    }
}

pub fn accept(ctx: &Context) -> Result<(), CliError> {
    ctx.no_tolerance("accept")?;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = ctx.threads {
        if n == 0 {
            return Err(CliError::Validation("--threads must be >= 1".into()));
        }
        builder = builder.num_threads(n);
    }
    let pool = builder.build().map_err(|e| CliError::Numeric(e.to_string()))?;
    let results: Vec<CriterionResult> =
        pool.install(|| acceptance::CRITERIA.par_iter().map(|(id, _)| acceptance::run(*id)).collect());
    for r in &results {
        println!("{r}");
    }
    write_json(&ctx.out, "accept.json", &results)?;
    let failed: Vec<String> = results.iter().filter(|r| !r.passed()).map(|r| r.id.to_string()).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::CheckFailed(format!("criteria failed: {}", failed.join(", "))))
    }
}
