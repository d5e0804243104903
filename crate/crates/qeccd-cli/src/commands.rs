//! The five subcommands: coefficient dumps, process-matrix reconstruction,
//! figure data, correlation sweeps, and the analytic-table audit.

use crate::config::{Format, RunConfig};
use crate::CliError;
use num_complex::Complex64 as C64;
use qeccd::analysis::{
    correlation_d, default_time_grid, geometric_discord, mutual_info_dstar, sweep_max, Quantity,
};
use qeccd::audit::audit_analytic_tables;
use qeccd::channel::{
    apply_superoperator, coefficients, computational_superoperator, spatial_f, spatial_g,
};
use qeccd::code::MeasureMode;
use qeccd::pauli::basis_label_2q;
use qeccd::tomography::{
    code, direct_chi_at, qpt_chi_from, run_schedule_with, ProcessMatrix, Schedule,
};
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

/// Below this value of `k0*r12` the G column of the spatial-function dump is
/// marked divergent instead of printing a number.
const G_DIVERGENCE_CUTOFF: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Method {
    Direct,
    Qpt,
    Qeccd,
}

pub fn out_path(cfg: &RunConfig, name: &str) -> PathBuf {
    Path::new(&cfg.output.dir).join(name)
}

fn write_file(cfg: &RunConfig, name: &str, contents: &str) -> Result<(), CliError> {
    let path = out_path(cfg, name);
    fs::write(&path, contents)
        .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}

/// Write a CSV artifact and, under `--format json`, a structural JSON mirror
/// (`columns` plus typed `rows`).
fn write_csv(cfg: &RunConfig, name: &str, contents: &str) -> Result<(), CliError> {
    write_file(cfg, name, contents)?;
    if cfg.output.format == Format::Json {
        let mut lines = contents.lines();
        let columns: Vec<&str> = lines.next().unwrap_or_default().split(',').collect();
        let rows: Vec<serde_json::Value> = lines
            .map(|line| {
                line.split(',')
                    .map(|cell| match cell.parse::<f64>() {
                        Ok(v) => serde_json::json!(v),
                        Err(_) => serde_json::json!(cell),
                    })
                    .collect()
            })
            .collect();
        let mirror = serde_json::json!({ "columns": columns, "rows": rows });
        write_json(cfg, &name.replace(".csv", ".json"), &mirror)?;
    }
    Ok(())
}

fn write_json(cfg: &RunConfig, name: &str, value: &serde_json::Value) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value).expect("serializable");
    text.push('\n');
    write_file(cfg, name, &text)
}

pub fn cmd_coeffs(cfg: &RunConfig) -> Result<(), CliError> {
    let params = cfg.channel.params();
    params.validate().map_err(CliError::config)?;
    let times = cfg.channel.times();
    let mut csv = String::from(qeccd::Coefficients::csv_header());
    csv.push('\n');
    for &t in &times {
        let co = coefficients(&params.with_t(t)).map_err(CliError::config)?;
        csv.push_str(&co.csv_row(t));
        csv.push('\n');
    }
    write_csv(cfg, "coeffs.csv", &csv)?;
    println!("wrote {} ({} rows)", out_path(cfg, "coeffs.csv").display(), times.len());
    Ok(())
}

fn validate_chi(chi: &ProcessMatrix) -> Result<(), CliError> {
    let herm = chi.hermiticity_defect();
    let trace_defect = (chi.trace() - C64::new(1.0, 0.0)).norm();
    if herm > 1e-9 || trace_defect > 1e-9 {
        return Err(CliError::Numeric(format!(
            "reconstructed chi violates invariants: hermiticity {herm:.2e}, trace {trace_defect:.2e}"
        )));
    }
    Ok(())
}

pub fn cmd_chi(cfg: &RunConfig, method: Method) -> Result<(), CliError> {
    let params = cfg.channel.params();
    params.validate().map_err(CliError::config)?;
    let beta0 = C64::new(cfg.protocol.beta0, 0.0);
    let beta1 = C64::new(cfg.protocol.beta1, 0.0);
    let code = code();
    let co = coefficients(&params).map_err(CliError::config)?;

    let (name, chi, report) = match method {
        Method::Direct => {
            let chi = direct_chi_at(code, &co, beta0, beta1).map_err(CliError::numeric)?;
            ("chi_direct", chi, None)
        }
        Method::Qpt => ("chi_qpt", qpt_chi_from(&co), None),
        Method::Qeccd => {
            let mode = cfg.protocol.measure_mode();
            let rec = run_schedule_with(code, &params, mode, beta0, beta1)
                .map_err(CliError::numeric)?;
            ("chi_qeccd", rec.chi, Some(rec.report))
        }
    };
    validate_chi(&chi)?;
    write_file(cfg, &format!("{name}.csv"), &chi.to_csv())?;
    write_json(cfg, &format!("{name}.json"), &chi.to_json())?;

    if let Some(recon_report) = report {
        // comparison against the direct oracle, element by element
        let oracle = direct_chi_at(code, &co, beta0, beta1).map_err(CliError::numeric)?;
        let mut comparison = String::from("row_label,col_label,abs_error\n");
        let mut max_err: f64 = 0.0;
        for l in 0..16 {
            for m in 0..16 {
                let err = (chi.get(l, m) - oracle.get(l, m)).norm();
                max_err = max_err.max(err);
                let _ = writeln!(
                    comparison,
                    "{},{},{}",
                    basis_label_2q(l),
                    basis_label_2q(m),
                    err
                );
            }
        }
        write_csv(cfg, "comparison.csv", &comparison)?;

        let audit = audit_analytic_tables(code, &params).map_err(CliError::numeric)?;
        write_csv(cfg, "audit.csv", &audit.to_csv())?;
        write_json(cfg, "schedule.json", &Schedule::standard().to_json(code))?;

        let mut report_text = String::new();
        let _ = writeln!(report_text, "reconstruction report");
        let _ = writeln!(report_text, "  mode: {:?}", cfg.protocol.mode);
        if let MeasureMode::Sampled { shots, seed } = cfg.protocol.measure_mode() {
            let _ = writeln!(report_text, "  shots per configuration: {shots}");
            let _ = writeln!(report_text, "  master seed: {seed}");
        }
        let _ = writeln!(
            report_text,
            "  configurations: {}",
            recon_report.configurations
        );
        let _ = writeln!(
            report_text,
            "  max |qeccd - direct| over all 256 entries: {max_err:e}"
        );
        if recon_report.low_statistics.is_empty() {
            let _ = writeln!(report_text, "  low-statistics rows: none");
        } else {
            let _ = writeln!(
                report_text,
                "  low-statistics rows ({}):",
                recon_report.low_statistics.len()
            );
            for line in &recon_report.low_statistics {
                let _ = writeln!(report_text, "    {line}");
            }
        }
        let flagged = audit.flagged_ids();
        let _ = writeln!(
            report_text,
            "  analytic-table audit: {} of 96 rows match as printed; {} flagged \
             (undefined-symbol rows {:?}); documented corrections all match: {}",
            audit.ok_ids().len(),
            flagged.len(),
            audit.undefined_symbol_ids(),
            audit.all_corrections_match(),
        );
        write_file(cfg, "report.txt", &report_text)?;
        println!(
            "wrote {} (max |reconstruction - oracle| = {max_err:.3e})",
            out_path(cfg, "chi_qeccd.csv").display()
        );
    } else {
        println!("wrote {}", out_path(cfg, &format!("{name}.csv")).display());
    }
    Ok(())
}

const SWEEP_HEADER: &str = "r12,t_or_tmax,D,Dstar,discord\n";

fn fmt_opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

pub fn cmd_figures(cfg: &RunConfig) -> Result<(), CliError> {
    let params = cfg.channel.params();
    params.validate().map_err(CliError::config)?;

    // spatial functions over k0 r12, with the divergent G region marked
    let mut fig1 = String::from("k0r12,F,G\n");
    let n = 2001;
    for i in 0..n {
        let x = 20.0 * i as f64 / (n - 1) as f64;
        let f = spatial_f(x / params.k0, params.k0, params.alpha);
        let g = if x < G_DIVERGENCE_CUTOFF {
            "divergent".to_string()
        } else {
            spatial_g(x / params.k0, params.k0, params.alpha)
                .map_err(CliError::numeric)?
                .to_string()
        };
        let _ = writeln!(fig1, "{x},{f},{g}");
    }
    write_csv(cfg, "fig1.csv", &fig1)?;

    let t_grid = default_time_grid(params.gamma);

    // correlation measure against time in both regimes
    let mut fig3a = String::from(SWEEP_HEADER);
    for &r12 in &[0.1, 100.0] {
        for &t in &t_grid {
            let co = coefficients(&params.with_r12(r12).with_t(t)).map_err(CliError::config)?;
            let chi = qpt_chi_from(&co);
            let d = correlation_d(&chi);
            let dstar = mutual_info_dstar(&chi);
            let _ = writeln!(fig3a, "{r12},{t},{d},{dstar},");
        }
    }
    write_csv(cfg, "fig3a.csv", &fig3a)?;

    // maximum correlation against separation
    let r_grid: Vec<f64> = (0..21)
        .map(|i| 0.05 * (200.0f64 / 0.05).powf(i as f64 / 20.0))
        .collect();
    let maxima = sweep_max(&params, &r_grid, &t_grid, &[Quantity::CorrelationD])
        .map_err(CliError::numeric)?;
    let mut fig3b = String::from(SWEEP_HEADER);
    for p in &maxima {
        let _ = writeln!(fig3b, "{},{},{},,", p.r12, p.t, fmt_opt(p.d));
    }
    write_csv(cfg, "fig3b.csv", &fig3b)?;

    // discord maxima: the configured product start (stationary for the
    // ground-ground default) plus the excited start as a sensitivity column
    let mut fig4 = String::from("r12,t_or_tmax,D,Dstar,discord,discord_excited\n");
    for &r12 in &r_grid {
        let mut best_default = (0.0f64, 0.0f64);
        let mut best_excited = (0.0f64, 0.0f64);
        for &t in &t_grid {
            let co = coefficients(&params.with_r12(r12).with_t(t)).map_err(CliError::config)?;
            let s = computational_superoperator(&co);
            let d0 = geometric_discord(&apply_superoperator(
                &s,
                &cfg.protocol.discord_init.state(),
            ))
            .map_err(CliError::numeric)?;
            if d0 > best_default.1 {
                best_default = (t, d0);
            }
            let d1 = geometric_discord(&apply_superoperator(
                &s,
                &qeccd::analysis::DiscordInit::ExcitedExcited.state(),
            ))
            .map_err(CliError::numeric)?;
            if d1 > best_excited.1 {
                best_excited = (t, d1);
            }
        }
        let _ = writeln!(
            fig4,
            "{r12},{},,,{},{}",
            best_excited.0, best_default.1, best_excited.1
        );
    }
    write_csv(cfg, "fig4.csv", &fig4)?;

    println!(
        "wrote fig1.csv, fig3a.csv, fig3b.csv, fig4.csv under {}",
        cfg.output.dir
    );
    Ok(())
}

pub fn cmd_sweep(cfg: &RunConfig) -> Result<(), CliError> {
    let params = cfg.channel.params();
    params.validate().map_err(CliError::config)?;
    let times = cfg.channel.times();
    let quantities = [
        Quantity::CorrelationD,
        Quantity::MutualInfoDstar,
        Quantity::Discord(cfg.protocol.discord_init),
    ];
    let mut csv = String::from(SWEEP_HEADER);
    for &t in &times {
        if t <= 0.0 {
            continue; // the measures are identically zero at t = 0
        }
        let point = qeccd::analysis::analyze_point(&params, params.r12, t, &quantities)
            .map_err(CliError::numeric)?;
        let _ = writeln!(
            csv,
            "{},{},{},{},{}",
            point.r12,
            point.t,
            fmt_opt(point.d),
            fmt_opt(point.dstar),
            fmt_opt(point.discord)
        );
    }
    write_csv(cfg, "sweep.csv", &csv)?;
    println!("wrote {}", out_path(cfg, "sweep.csv").display());
    Ok(())
}

pub fn cmd_audit(cfg: &RunConfig) -> Result<(), CliError> {
    let params = cfg.channel.params();
    params.validate().map_err(CliError::config)?;
    let report = audit_analytic_tables(code(), &params).map_err(CliError::numeric)?;
    write_csv(cfg, "audit.csv", &report.to_csv())?;
    let flagged = report.flagged_ids();
    let summary = serde_json::json!({
        "tolerance": report.tolerance,
        "ok": report.ok_ids(),
        "flagged": flagged,
        "undefined_symbol_rows": report.undefined_symbol_ids(),
        "all_corrections_match": report.all_corrections_match(),
    });
    write_json(cfg, "audit.json", &summary)?;
    println!(
        "audit at gamma*t = {}, k0*r12 = {}: {} of 96 rows match as printed, {} flagged; \
         corrections all match: {}",
        cfg.channel.gamma * cfg.channel.t,
        cfg.channel.k0 * cfg.channel.r12,
        report.ok_ids().len(),
        flagged.len(),
        report.all_corrections_match()
    );
    Ok(())
}

impl CliError {
    pub fn config<E: std::fmt::Display>(e: E) -> CliError {
        CliError::Config(e.to_string())
    }

    pub fn numeric<E: std::fmt::Display>(e: E) -> CliError {
        CliError::Numeric(e.to_string())
    }
}
