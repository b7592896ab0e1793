use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::Path;

use barypoly::analysis::{check_order, run_sweep, verify_seed, SweepConfig, VerificationReport};
use barypoly::stationary::{certificate, solve_alpha, stationary_point, DEFAULT_ALPHA_TOL};
use barypoly::{centroid, dual_sequence, run_trajectory, DualSequenceRecord, StationaryCertificate, TrajectoryRecord};
use serde::Serialize;

use crate::args::{AlphaArgs, Cli, Command, DualArgs, FigureArgs, TrajectoryArgs, VerifyArgs};
use crate::config::RunConfig;
use crate::error::CliError;
use crate::figure::{render_figure, Figure, DEFAULT_MIN_ITERATIONS};

/// Float format for every CSV cell: 17 significant digits.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn run(cli: Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Alpha(args) => alpha(&args, stdout),
        Command::Trajectory(args) => trajectory(&args, stdout, stderr),
        Command::Dual(args) => dual(&args, stdout, stderr),
        Command::Verify(args) => verify(&args, stdout, stderr),
        Command::Figure(args) => figure(&args, stdout, stderr),
    }
}

/// Sends output to `path` (under the configured output directory) or to `stdout`.
fn emit<T>(
    path: Option<&Path>,
    config: &RunConfig,
    stdout: &mut dyn Write,
    body: impl FnOnce(&mut dyn Write) -> Result<T, CliError>,
) -> Result<T, CliError> {
    let Some(path) = path else {
        return body(stdout);
    };
    let path = config.output_path(path);
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    }
    let file = File::create(&path).map_err(|e| CliError::io(&path, e))?;
    let mut w = BufWriter::new(file);
    let value = body(&mut w)?;
    w.flush().map_err(|e| CliError::io(&path, e))?;
    Ok(value)
}

pub fn cmd_alpha(p: usize) -> Result<StationaryCertificate, CliError> {
    if p < 3 {
        return Err(CliError::Usage(format!(
            "the stationary point is only analysed for p >= 3 (at least three points), got p = {p}"
        )));
    }
    Ok(certificate(p)?)
}

fn alpha(args: &AlphaArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let cert = cmd_alpha(args.p)?;
    emit(args.out.as_deref(), &RunConfig::default(), stdout, |w| {
        if args.json {
            serde_json::to_writer_pretty(&mut *w, &cert)?;
            writeln!(w)?;
        } else {
            writeln!(w, "p                   {}", cert.p)?;
            writeln!(w, "alpha               {:.16}", cert.alpha)?;
            writeln!(w, "beta                {:.16}", cert.beta)?;
            writeln!(w, "lambda_repulsive    {:.16}  (multiplicity 1)", cert.lambda_repulsive)?;
            writeln!(
                w,
                "lambda_contractive  {:.16}  (multiplicity {})",
                cert.lambda_contractive,
                cert.p - 1
            )?;
            writeln!(w, "instability_margin  {:.16}", cert.instability_margin)?;
            writeln!(w, "unstable            {}", cert.is_unstable())?;
        }
        Ok(())
    })
}

pub fn cmd_trajectory(config: &RunConfig, stationary: bool) -> Result<TrajectoryRecord, CliError> {
    let t = if stationary {
        let p = config
            .order()?
            .ok_or_else(|| CliError::Usage("--stationary needs --p".into()))?;
        if p < 3 {
            return Err(CliError::Usage(format!(
                "the stationary point needs p >= 3, got p = {p}"
            )));
        }
        stationary_point(p)?
    } else {
        config.weight_tuple()?
    };
    let alpha = solve_alpha(t.p(), DEFAULT_ALPHA_TOL)?;
    Ok(run_trajectory(&t.to_conjugate(), config.steps(), alpha))
}

/// Columns `m, u_1..u_p, spread, phase`, one row per recorded step. The
/// components are in sorted order.
pub fn write_trajectory_csv(rec: &TrajectoryRecord, w: &mut dyn Write) -> Result<(), CliError> {
    let mut out = csv::Writer::from_writer(w);
    let mut header = vec!["m".to_string()];
    header.extend((1..=rec.p()).map(|k| format!("u_{k}")));
    header.extend(["spread".to_string(), "phase".to_string()]);
    out.write_record(&header)?;
    for (m, state) in rec.states().iter().enumerate() {
        let mut row = vec![m.to_string()];
        row.extend(state.u().iter().map(|&x| fmt_f64(x)));
        row.push(fmt_f64(rec.spread()[m]));
        row.push(rec.phase()[m].to_string());
        out.write_record(&row)?;
    }
    out.flush()?;
    Ok(())
}

fn trajectory(args: &TrajectoryArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<(), CliError> {
    let config = args.run.resolve()?;
    let rec = cmd_trajectory(&config, args.stationary)?;
    emit(args.run.out.as_deref(), &config, stdout, |w| {
        write_trajectory_csv(&rec, w)
    })?;
    if rec.permutation().iter().enumerate().any(|(i, &k)| i != k) {
        let order: Vec<String> = rec.permutation().iter().map(|k| (k + 1).to_string()).collect();
        writeln!(stderr, "components sorted: u_1..u_p are the inputs {}", order.join(","))?;
    }
    if let Some(s) = rec.saturation_step() {
        writeln!(stderr, "saturated at step {s}")?;
    }
    Ok(())
}

#[derive(Debug, Serialize)]
pub struct DualOutput {
    pub centroid: Vec<f64>,
    #[serde(flatten)]
    pub record: DualSequenceRecord,
}

pub fn cmd_dual(config: &RunConfig) -> Result<DualOutput, CliError> {
    let t = config.weight_tuple()?;
    let a = config.point_set(t.p())?;
    Ok(DualOutput {
        centroid: centroid(&a),
        record: dual_sequence(&a, &t, config.steps())?,
    })
}

/// Columns `m, x_1..x_d, distance`.
pub fn write_dual_csv(rec: &DualSequenceRecord, w: &mut dyn Write) -> Result<(), CliError> {
    let mut out = csv::Writer::from_writer(w);
    let dim = rec.points.first().map_or(0, Vec::len);
    let mut header = vec!["m".to_string()];
    header.extend((1..=dim).map(|k| format!("x_{k}")));
    header.push("distance".to_string());
    out.write_record(&header)?;
    for (m, (g, d)) in rec.points.iter().zip(&rec.distances_to_centroid).enumerate() {
        let mut row = vec![m.to_string()];
        row.extend(g.iter().map(|&x| fmt_f64(x)));
        row.push(fmt_f64(*d));
        out.write_record(&row)?;
    }
    out.flush()?;
    Ok(())
}

fn dual(args: &DualArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<(), CliError> {
    let config = args.run.resolve()?;
    let result = cmd_dual(&config)?;
    emit(args.run.out.as_deref(), &config, stdout, |w| {
        if args.json {
            serde_json::to_writer_pretty(&mut *w, &result)?;
            writeln!(w)?;
            Ok(())
        } else {
            write_dual_csv(&result.record, w)
        }
    })?;
    match result.record.fitted_rate {
        Some(rate) => writeln!(stderr, "fitted ln-rate: {rate:.6} per order")?,
        None => writeln!(
            stderr,
            "fitted ln-rate: undefined (distances already at rounding level)"
        )?,
    }
    Ok(())
}

pub fn cmd_verify(config: &RunConfig, args: &VerifyArgs) -> Result<VerificationReport, CliError> {
    let p = config.order()?;
    if let Some(p) = p.filter(|&p| p < 3) {
        return Err(CliError::Usage(format!("verification needs p >= 3, got p = {p}")));
    }
    if config.weights.is_some() && !args.sweep {
        let t = config.weight_tuple()?;
        let mut results = check_order(t.p(), args.check);
        results.extend(verify_seed(
            &t.to_conjugate(),
            config.steps(),
            args.check,
            args.inject_fault,
        )?);
        return Ok(VerificationReport::from_results(results));
    }
    let defaults = SweepConfig::default();
    let sweep = SweepConfig {
        orders: p.map_or(defaults.orders, |p| vec![p]),
        seeds_per_order: args.seeds_per_order,
        seed: config.seed.unwrap_or(defaults.seed),
        max_steps: config.steps(),
        only: args.check,
        inject_fault: args.inject_fault,
    };
    Ok(run_sweep(&sweep)?)
}

fn verify(args: &VerifyArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<(), CliError> {
    let config = args.run.resolve()?;
    let report = cmd_verify(&config, args)?;
    emit(args.run.out.as_deref(), &config, stdout, |w| {
        serde_json::to_writer_pretty(&mut *w, &report)?;
        writeln!(w)?;
        Ok(())
    })?;
    for c in &report.checks {
        let status = if c.passed { "pass" } else { "FAIL" };
        writeln!(
            stderr,
            "{status}  {:<18} {} run(s), {} failure(s)",
            c.name, c.runs, c.failures
        )?;
    }
    if report.passed {
        Ok(())
    } else {
        Err(CliError::ChecksFailed(
            report.failed().map(|c| c.name.to_string()).collect(),
        ))
    }
}

pub fn cmd_figure(config: &RunConfig, orders: &[usize]) -> Result<Figure, CliError> {
    let t = config.weight_tuple()?;
    let a = config.point_set(t.p())?;
    render_figure(&a, &t, orders, config.max_steps.unwrap_or(DEFAULT_MIN_ITERATIONS))
}

fn figure(args: &FigureArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<(), CliError> {
    let config = args.run.resolve()?;
    let fig = cmd_figure(&config, &args.order)?;
    emit(args.run.out.as_deref(), &config, stdout, |w| {
        Ok(w.write_all(fig.svg.as_bytes())?)
    })?;
    for s in &fig.series {
        writeln!(
            stderr,
            "order {}: {} iterations, final diameter {:.3e} ({:.3e} of initial)",
            s.order,
            s.iterations,
            s.final_diameter,
            s.final_diameter / fig.initial_diameter
        )?;
    }
    Ok(())
}
