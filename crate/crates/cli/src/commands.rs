//! The four subcommands.

use std::fmt::Write as _;

use hardy_core::bounds::BoundValue;
use hardy_core::harness::{
    default_bound_sweeps, run_bound_sweep, run_convergence_study, run_existence_check,
    run_hardy_positivity, run_transform_identity, theorem_bound, ConvergenceCase,
    ConvergenceReport, ExistenceCase, ExistenceReport, HardyReport, IdentityReport, SweepReport,
    Verdict, MAX_EXISTENCE_WINDOW,
};
use hardy_core::bounds::{OperatorSpec, Theorem};
use hardy_core::spectra::total_central_count;
use hardy_core::{LogDepth, PotentialSpec, Variant};
use serde::Serialize;
use serde_json::json;

use crate::config::RunConfig;
use crate::output::rows_to_csv;
use crate::{CliError, Outcome, Suite};

fn describe(spec: &OperatorSpec) -> String {
    format!(
        "d={} n={} variant={} domain r > {}",
        spec.d,
        spec.n.0,
        spec.variant.as_str(),
        spec.domain.value
    )
}

fn fmt_bound(b: &BoundValue) -> String {
    match b.cap {
        Some(cap) => format!("raw = {:.12}  cap = {cap}", b.raw),
        None => format!("raw = {}  cap = none (bound is not finite)", b.raw),
    }
}

pub fn cmd_bound(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let spec = cfg.operator()?;
    let v = cfg.potential.resolve()?;
    let theorem = cfg.theorem();
    let b = theorem_bound(theorem, &v, &spec, &cfg.constants, cfg.tol)?;
    let mut text = String::new();
    let _ = writeln!(text, "theorem    {}", theorem.as_str());
    let _ = writeln!(text, "operator   {}", describe(&spec));
    let _ = writeln!(text, "potential  {v}");
    let _ = writeln!(text, "bound      {}", fmt_bound(&b));
    let _ = writeln!(
        text,
        "quadrature error ≈ {:.2e}, {} evaluations",
        b.quadrature.error_estimate, b.quadrature.evaluations
    );
    for c in &b.channels {
        let _ = writeln!(
            text,
            "  l = {:<3} D = {:<6} I_l = {:.12}  contribution = {:.12}",
            c.l, c.degeneracy, c.integral, c.contribution
        );
    }
    for w in &b.warnings {
        let _ = writeln!(text, "warning: {w}");
    }
    let report = json!({
        "command": "bound",
        "theorem": theorem,
        "operator": spec,
        "potential": v.to_string(),
        "bound": b,
    });
    Ok(Outcome {
        text,
        json: report,
        csv: None,
        passed: true,
    })
}

pub fn cmd_count(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let spec = cfg.operator()?;
    let v = cfg.potential.resolve()?;
    let total = total_central_count(&spec, &v, &cfg.numerics)?;
    let mut text = String::new();
    let _ = writeln!(text, "operator   {}", describe(&spec));
    let _ = writeln!(text, "potential  {v}");
    let _ = writeln!(text, "negative eigenvalues: {}", total.total);
    if spec.d > 1 {
        let _ = writeln!(
            text,
            "l_max = {}",
            total.l_max.map_or("none".to_string(), |l| l.to_string())
        );
        let _ = writeln!(text, "{:>5} {:>8} {:>6}  trail", "l", "D", "count");
    }
    for c in &total.channels {
        let trail: Vec<String> = c
            .result
            .trail
            .iter()
            .map(|s| format!("{}@L={},m={}", s.count, s.window, s.points))
            .collect();
        if spec.d > 1 {
            let _ = writeln!(text, "{:>5} {:>8} {:>6}  {}", c.l, c.degeneracy, c.count, trail.join(" "));
        } else {
            let _ = writeln!(text, "trail: {}", trail.join(" "));
        }
        if !c.result.lowest_eigenvalues.is_empty() {
            let _ = writeln!(text, "  lowest eigenvalues: {:?}", c.result.lowest_eigenvalues);
        }
        if c.result.inertia.is_ambiguous() {
            let _ = writeln!(
                text,
                "  warning: zero pivot, count between {} and {}",
                c.result.inertia.low, c.result.inertia.high
            );
        }
    }
    let report = json!({
        "command": "count",
        "operator": spec,
        "potential": v.to_string(),
        "count": total,
    });
    Ok(Outcome {
        text,
        json: report,
        csv: None,
        passed: true,
    })
}

#[derive(Debug, Default, Serialize)]
pub struct VerifyReport {
    pub hardy: Option<HardyReport>,
    pub transform: Option<IdentityReport>,
    pub bounds: Option<SweepReport>,
    pub existence: Option<ExistenceReport>,
    pub convergence: Option<Vec<(String, ConvergenceReport)>>,
    pub passed: bool,
}

fn selected(suite: Suite, s: Suite) -> bool {
    suite == Suite::All || suite == s
}

fn well(c: f64, a: f64, b: f64) -> Result<PotentialSpec, CliError> {
    Ok(PotentialSpec::square_well(c, a, b)?)
}

pub fn cmd_verify(cfg: &RunConfig, suite: Suite) -> Result<Outcome, CliError> {
    let mut report = VerifyReport::default();
    let mut text = String::new();
    let mut passed = true;
    let mut line = |name: &str, verdict: Verdict, detail: String| {
        passed &= verdict.is_ok();
        let _ = writeln!(text, "{name:<12} {:<12} {detail}", verdict.as_str());
    };

    if selected(suite, Suite::Hardy) {
        let depths = [LogDepth(0), LogDepth(1), LogDepth(2)];
        let r = run_hardy_positivity(&[1, 2, 3, 4, 5], &depths, None, 1e-10)?;
        line(
            "hardy",
            r.verdict,
            format!("{} cases, minimum quotient {:.6}", r.cases.len(), r.minimum_quotient),
        );
        report.hardy = Some(r);
    }
    if selected(suite, Suite::Transform) {
        let pots = [PotentialSpec::zero(), well(1.0, 1.0, 2.0)?];
        let r = run_transform_identity(&[1, 2, 3, 5], &[LogDepth(0), LogDepth(1)], &pots, None, cfg.tol)?;
        line(
            "transform",
            r.verdict,
            format!("{} cases, max discrepancy {:.2e} (tol {:e})", r.cases.len(), r.max_discrepancy, cfg.tol),
        );
        report.transform = Some(r);
    }
    if selected(suite, Suite::Bounds) {
        let mut rows = Vec::new();
        for sweep in default_bound_sweeps(cfg.numerics, cfg.tol)? {
            rows.extend(run_bound_sweep(&sweep, &cfg.constants)?);
        }
        let r = SweepReport::from_rows(rows);
        let satisfied = r.rows.iter().filter(|x| x.satisfied).count();
        line("bounds", r.verdict, format!("{satisfied}/{} rows satisfied", r.rows.len()));
        report.bounds = Some(r);
    }
    if selected(suite, Suite::Existence) {
        let e = std::f64::consts::E;
        let cases = vec![
            ExistenceCase { potential: well(1.0, 1.0, 2.0)?, n: LogDepth(0) },
            ExistenceCase { potential: well(0.01, 1.0, 2.0)?, n: LogDepth(0) },
            ExistenceCase { potential: well(1.0, e, e * e)?, n: LogDepth(1) },
        ];
        let r = run_existence_check(&cases, &cfg.numerics, MAX_EXISTENCE_WINDOW)?;
        let detail: Vec<String> = r
            .rows
            .iter()
            .map(|x| format!("{}: {} at L={}", x.potential, x.count, x.window))
            .collect();
        line("existence", r.verdict, detail.join("; "));
        report.existence = Some(r);
    }
    if selected(suite, Suite::Convergence) {
        let spec = OperatorSpec::for_theorem(Theorem::T41, 1, LogDepth(0), Variant::Zero)?;
        let m = cfg.numerics.points.max(8);
        let grids = [m / 4, m / 2, m];
        let mut all = Vec::new();
        for v in [PotentialSpec::zero(), well(64.0, 1.0, 2.0)?, well(0.01, 1.0, 2.0)?] {
            let case = ConvergenceCase { spec, potential: v.clone(), channel: 0 };
            let r = run_convergence_study(&case, cfg.numerics.window, &[1, 2, 4], &grids)?;
            let finest: Vec<usize> = r.table.iter().map(|row| row.last().map_or(0, |c| c.count)).collect();
            line("convergence", r.verdict, format!("{v}: counts by window {finest:?}"));
            all.push((v.to_string(), r));
        }
        report.convergence = Some(all);
    }
    report.passed = passed;
    let csv = report.bounds.as_ref().map(|b| rows_to_csv(&b.rows));
    Ok(Outcome {
        text,
        json: serde_json::to_value(&report).expect("report serializes"),
        csv,
        passed,
    })
}

pub fn cmd_sweep(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let Some(sweep) = &cfg.sweep else {
        return Err(CliError::config("sweep needs a `sweep` section in the config file"));
    };
    let rows = run_bound_sweep(sweep, &cfg.constants)?;
    let report = SweepReport::from_rows(rows);
    let mut text = String::new();
    for r in &report.rows {
        let _ = writeln!(
            text,
            "{}  scale {:<8} count {:<8} {}  {}",
            r.experiment_id,
            r.scale,
            r.count,
            fmt_bound(&r.bound),
            if r.satisfied { "satisfied" } else { "VIOLATED" }
        );
    }
    let _ = writeln!(text, "verdict: {}", report.verdict.as_str());
    Ok(Outcome {
        text,
        csv: Some(rows_to_csv(&report.rows)),
        passed: report.verdict == Verdict::Pass,
        json: serde_json::to_value(&report).expect("report serializes"),
    })
}
