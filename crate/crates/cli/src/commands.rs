use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use bifurcate_core::dynamics::{classify_block, invariant_circle, ClassifyRow};
use bifurcate_core::pde::{
    bifurcation_sweep, integrate_pde, sweep_csv, SimConfig, SweepConfig, SweepRow,
};
use bifurcate_core::reduction::{parameterized_reduction, reduced_vector_field, ReductionSetup};
use bifurcate_core::scalar::{format_f64, rational_from_f64};
use bifurcate_core::spectral::REDUCTION_TRUNCATION;
use serde::Serialize;

use crate::config::RawConfig;
use crate::initial::parse_initial_state;
use crate::{CliError, VERSION};

/// Options shared by the file-producing subcommands.
#[derive(Debug, Clone, Default)]
pub struct CommonArgs {
    pub config: Option<PathBuf>,
    pub out: PathBuf,
    pub seed: Option<u64>,
    pub order: Option<u32>,
}

impl CommonArgs {
    fn order(&self, cfg: &mut RawConfig) -> Result<u32, CliError> {
        let from_file = cfg.get("order", 5u32)?;
        let order = self.order.unwrap_or(from_file);
        if order != 3 && order != 5 {
            return Err(CliError::Config(format!(
                "order must be 3 or 5, got {order}"
            )));
        }
        Ok(order)
    }
}

/// Writes all files or none: every path is written only after all
/// contents have been computed.
fn write_outputs(dir: &Path, files: &[(&str, String)]) -> Result<Vec<PathBuf>, CliError> {
    fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let mut written = Vec::new();
    for (name, contents) in files {
        let path = dir.join(name);
        fs::write(&path, contents).map_err(|e| CliError::io(&path, e))?;
        eprintln!("wrote {}", path.display());
        written.push(path);
    }
    Ok(written)
}

fn sim_config(
    cfg: &mut RawConfig,
    seed: Option<u64>,
    defaults: &SimConfig,
) -> Result<SimConfig, CliError> {
    let sim = SimConfig {
        lambda: defaults.lambda,
        truncation: cfg.get("truncation", defaults.truncation)?,
        dt: cfg.get("dt", defaults.dt)?,
        t_end: cfg.get("t_end", defaults.t_end)?,
        ic_seed: match seed {
            Some(s) => {
                cfg.get("ic_seed", s)?;
                s
            }
            None => cfg.get("ic_seed", defaults.ic_seed)?,
        },
        ic_count: cfg.get("ic_count", defaults.ic_count)?,
        ic_radius: cfg.get("ic_radius", defaults.ic_radius)?,
        tol: cfg.get("tol", defaults.tol)?,
        record_every: cfg.get("record_every", defaults.record_every)?,
    };
    Ok(sim)
}

/// `reduced_field.json` and `center_manifold.json` for one `λ`.
pub fn cmd_reduce(args: &CommonArgs) -> Result<Vec<PathBuf>, CliError> {
    let mut cfg = RawConfig::load(args.config.as_deref())?;
    let lambda = cfg.get_rational("lambda", "9")?;
    let order = args.order(&mut cfg)?;
    let truncation = cfg.get("truncation", REDUCTION_TRUNCATION)?;
    cfg.finish()?;
    eprintln!("reducing at lambda = {lambda}, order {order}");

    let psi = ReductionSetup::new(lambda)
        .with_truncation(truncation)
        .solve_center_manifold(3)?;
    let field = reduced_vector_field(&psi, order)?;
    let field_json = serde_json::to_string(&field.to_record()).expect("records serialize") + "\n";
    let psi_json = serde_json::to_string(&psi.to_record()).expect("records serialize") + "\n";
    write_outputs(
        &args.out,
        &[
            ("reduced_field.json", field_json),
            ("center_manifold.json", psi_json),
        ],
    )
}

#[derive(Serialize)]
struct SweepSummary<'a> {
    version: &'a str,
    command: &'a str,
    config: BTreeMap<String, String>,
    lambdas: &'a [f64],
    rows: &'a [SweepRow],
}

/// `sweep.csv` plus `sweep_summary.json`.
pub fn cmd_sweep(args: &CommonArgs) -> Result<Vec<PathBuf>, CliError> {
    let mut cfg = RawConfig::load(args.config.as_deref())?;
    let lambdas = cfg.get_grid("lambdas", &[8.5, 9.0, 9.2, 9.5])?;
    let defaults = SweepConfig::default();
    let sim = sim_config(&mut cfg, args.seed, &defaults.sim)?;
    let order = args.order(&mut cfg)?;
    let block_radius = cfg.get("block_radius", defaults.block_radius)?;
    let block_samples = cfg.get("block_samples", defaults.block_samples)?;
    let echo = cfg.finish()?;
    sim.validate()?;
    let sweep = SweepConfig {
        sim,
        order,
        block_radius,
        block_samples,
    };
    eprintln!("sweeping {} parameter values", lambdas.len());

    let rows = bifurcation_sweep(&lambdas, &sweep)?;
    for r in &rows {
        for e in &r.errors {
            eprintln!("lambda = {}: {e}", r.lambda);
        }
    }
    let summary = SweepSummary {
        version: VERSION,
        command: "sweep",
        config: echo,
        lambdas: &lambdas,
        rows: &rows,
    };
    let json = serde_json::to_string_pretty(&summary).expect("summary serializes") + "\n";
    write_outputs(
        &args.out,
        &[
            ("sweep.csv", sweep_csv(&rows)),
            ("sweep_summary.json", json),
        ],
    )
}

/// `trajectory.csv` with columns `t,norm,V`.
pub fn cmd_simulate(args: &CommonArgs) -> Result<Vec<PathBuf>, CliError> {
    let mut cfg = RawConfig::load(args.config.as_deref())?;
    let lambda: f64 = cfg.get("lambda", 9.2)?;
    let mut sim = sim_config(&mut cfg, args.seed, &SimConfig::default())?;
    sim.lambda = lambda;
    let u0_text = cfg.get_string("u0")?.unwrap_or_else(|| "0.1*sin2x".into());
    cfg.finish()?;
    sim.validate()?;
    let u0 = parse_initial_state(&u0_text, sim.truncation)?;
    eprintln!(
        "integrating from {u0_text} at lambda = {lambda} to t = {}",
        sim.t_end
    );

    let traj = integrate_pde(&sim, &u0)?;
    if traj.escaped {
        eprintln!(
            "trajectory escaped at t = {}",
            traj.times.last().copied().unwrap_or(0.0)
        );
    }
    let mut csv = String::from("t,norm,V\n");
    for (t, u) in traj.times.iter().zip(&traj.states) {
        csv.push_str(&format!(
            "{},{},{}\n",
            format_f64(*t),
            format_f64(u.norm()),
            format_f64(u.lyapunov(lambda))
        ));
    }
    write_outputs(&args.out, &[("trajectory.csv", csv)])
}

/// `classify.json`: one disk-block verdict per `λ`.
pub fn cmd_classify(args: &CommonArgs) -> Result<Vec<PathBuf>, CliError> {
    let mut cfg = RawConfig::load(args.config.as_deref())?;
    let lambdas = cfg.get_grid("lambdas", &[8.9, 9.1])?;
    let radius: f64 = cfg.get("radius", 0.01)?;
    let samples: usize = cfg.get("samples", 256)?;
    let order = args.order(&mut cfg)?;
    cfg.finish()?;
    if !(radius.is_finite() && radius > 0.0) || samples < 64 {
        return Err(CliError::Config(format!(
            "need radius > 0 and samples >= 64, got {radius} and {samples}"
        )));
    }
    eprintln!(
        "classifying disks of radius {radius} at {} parameter values",
        lambdas.len()
    );

    let rows: Vec<ClassifyRow> = lambdas
        .iter()
        .map(|&lambda| classify_row(lambda, radius, samples, order))
        .collect();
    for row in &rows {
        for e in &row.errors {
            eprintln!("lambda = {}: {e}", row.lambda);
        }
    }
    let json = serde_json::to_string_pretty(&rows).expect("rows serialize") + "\n";
    write_outputs(&args.out, &[("classify.json", json)])
}

fn classify_row(lambda: f64, radius: f64, samples: usize, order: u32) -> ClassifyRow {
    let mut row = ClassifyRow {
        lambda,
        r: radius,
        verdict: "error".into(),
        r_star: None,
        errors: Vec::new(),
    };
    let vf = match rational_from_f64(lambda)
        .and_then(|q| parameterized_reduction(&q, order).map_err(|e| e.to_string()))
    {
        Ok(vf) => vf,
        Err(e) => {
            row.errors.push(format!("reduction: {e}"));
            return row;
        }
    };
    match classify_block(&vf, radius, samples) {
        Ok(block) => row.verdict = block.verdict.as_str().into(),
        Err(e) => row.errors.push(format!("block: {e}")),
    }
    match invariant_circle(&vf) {
        Ok(c) => row.r_star = c.map(|c| c.radius),
        Err(e) => row.errors.push(format!("circle: {e}")),
    }
    row
}
