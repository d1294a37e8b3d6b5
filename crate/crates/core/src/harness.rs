//! Verification experiments: positivity of the Hardy forms, the
//! substitution identity, existence of bound states, bound-versus-count
//! sweeps and convergence of the discrete counts.
//!
//! Every experiment runs sequentially in a fixed order, so reports are
//! reproducible bit for bit.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::bounds::{
    bound_1d, central_bound, clr_bound, BoundConstants, BoundValue, OperatorSpec, Theorem,
};
use crate::error::{Error, Result};
use crate::iterfun::{iterated_exp, LogDepth, Variant};
use crate::potentials::PotentialSpec;
use crate::spectra::{
    count_negative, quadratic_form_value, total_central_count, Bump, ChannelCount, FormSide,
    Numerics, RefinementStep,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Verdict {
    Pass,
    /// Not decided at the largest window tried.
    Inconclusive,
    Fail,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Inconclusive => "inconclusive",
            Verdict::Fail => "fail",
        }
    }

    /// Pass or inconclusive.
    pub fn is_ok(self) -> bool {
        self != Verdict::Fail
    }

    fn worst(self, other: Verdict) -> Verdict {
        match (self, other) {
            (Verdict::Fail, _) | (_, Verdict::Fail) => Verdict::Fail,
            (Verdict::Inconclusive, _) | (_, Verdict::Inconclusive) => Verdict::Inconclusive,
            _ => Verdict::Pass,
        }
    }
}

/// Five bumps inside `r > exp^{(n)}(0)`, from hugging the threshold to wide.
pub fn bump_suite(n: LogDepth) -> Result<Vec<Bump>> {
    let t = iterated_exp(0.0, n)?;
    let spans: [(f64, f64); 5] = [(0.05, 0.5), (0.1, 2.0), (0.5, 5.0), (1.0, 30.0), (0.01, 100.0)];
    Ok(spans
        .iter()
        .map(|&(lo, hi)| Bump::new(t + 0.5 * (lo + hi), 0.5 * (hi - lo)))
        .collect())
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct HardyCase {
    pub d: u32,
    pub n: LogDepth,
    pub bump: Bump,
    /// `Q[u] / ∫|u'|² r^{d-1} dr` for the operator without potential.
    pub quotient: f64,
    pub kinetic: f64,
    pub error_estimate: f64,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct HardyReport {
    pub threshold: f64,
    pub minimum_quotient: f64,
    pub cases: Vec<HardyCase>,
    pub errors: Vec<String>,
    pub verdict: Verdict,
}

/// Rayleigh quotients below this (relative to the gradient term) fail.
pub const POSITIVITY_THRESHOLD: f64 = -1e-8;

/// Checks `Q_{d,n}[u] ≥ 0` for `V ≡ 0`, `l = 0`, on every bump of the suite
/// (the default suite of each depth when `suite` is `None`).
pub fn run_hardy_positivity(
    dims: &[u32],
    depths: &[LogDepth],
    suite: Option<&[Bump]>,
    tol: f64,
) -> Result<HardyReport> {
    if dims.is_empty() || depths.is_empty() || suite.is_some_and(|s| s.is_empty()) {
        return Err(Error::invalid("positivity run needs dimensions, depths and test functions"));
    }
    let zero = PotentialSpec::zero();
    let mut cases = Vec::new();
    let mut errors = Vec::new();
    for &d in dims {
        for &n in depths {
            let spec = OperatorSpec::new(d, n, Variant::Zero, n.0)?;
            let bumps = match suite {
                Some(s) => s.to_vec(),
                None => bump_suite(n)?,
            };
            for bump in bumps {
                match quadratic_form_value(FormSide::Original, &spec, &zero, 0, &bump, tol) {
                    Ok(f) => cases.push(HardyCase {
                        d,
                        n,
                        bump,
                        quotient: f.value / f.kinetic,
                        kinetic: f.kinetic,
                        error_estimate: f.error_estimate,
                    }),
                    Err(e) => errors.push(format!("d={d} n={} {bump:?}: {e}", n.0)),
                }
            }
        }
    }
    let minimum_quotient = cases.iter().map(|c| c.quotient).fold(f64::INFINITY, f64::min);
    let verdict = if errors.is_empty() && minimum_quotient >= POSITIVITY_THRESHOLD {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    Ok(HardyReport {
        threshold: POSITIVITY_THRESHOLD,
        minimum_quotient,
        cases,
        errors,
        verdict,
    })
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct IdentityCase {
    pub d: u32,
    pub n: LogDepth,
    pub l: u32,
    pub potential: String,
    pub bump: Bump,
    pub original: f64,
    pub reduced: f64,
    /// Single-substitution value, where that form is defined for the bump.
    pub single_step: Option<f64>,
    /// Largest pairwise difference divided by the size of the original form.
    pub discrepancy: f64,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct IdentityReport {
    pub tolerance: f64,
    pub max_discrepancy: f64,
    pub cases: Vec<IdentityCase>,
    pub errors: Vec<String>,
    pub verdict: Verdict,
}

fn single_step_defined(d: u32, bump: &Bump) -> bool {
    let (a, b) = (bump.center - bump.half_width, bump.center + bump.half_width);
    if d == 1 {
        return true;
    }
    if a < 1.0 && b > 1.0 {
        return false;
    }
    d % 2 == 1 || a >= 1.0
}

/// Compares the quadratic form of `H_{d,n} + V` in the radial variable with
/// its fully substituted one-dimensional form (and the one-step form where
/// defined), channel by channel.
pub fn run_transform_identity(
    dims: &[u32],
    depths: &[LogDepth],
    potentials: &[PotentialSpec],
    suite: Option<&[Bump]>,
    tol: f64,
) -> Result<IdentityReport> {
    if dims.is_empty() || depths.is_empty() || potentials.is_empty() {
        return Err(Error::invalid("identity run needs dimensions, depths and potentials"));
    }
    let quad_tol = (tol * 1e-3).max(1e-13);
    let mut cases = Vec::new();
    let mut errors = Vec::new();
    for &d in dims {
        for &n in depths {
            let spec = OperatorSpec::new(d, n, Variant::Zero, n.0)?;
            let bumps = match suite {
                Some(s) => s.to_vec(),
                None => bump_suite(n)?,
            };
            let channels: &[u32] = if d == 1 { &[0] } else { &[0, 1] };
            for v in potentials {
                for &l in channels {
                    for bump in &bumps {
                        let run = || -> Result<IdentityCase> {
                            let o = quadratic_form_value(FormSide::Original, &spec, v, l, bump, quad_tol)?;
                            let r = quadratic_form_value(FormSide::Reduced, &spec, v, l, bump, quad_tol)?;
                            let single = if single_step_defined(d, bump) {
                                Some(quadratic_form_value(FormSide::SingleStep, &spec, v, l, bump, quad_tol)?.value)
                            } else {
                                None
                            };
                            let scale = o.scale().max(f64::MIN_POSITIVE);
                            let mut diff = (o.value - r.value).abs();
                            if let Some(m) = single {
                                diff = diff.max((o.value - m).abs()).max((r.value - m).abs());
                            }
                            Ok(IdentityCase {
                                d,
                                n,
                                l,
                                potential: format!("{v}"),
                                bump: *bump,
                                original: o.value,
                                reduced: r.value,
                                single_step: single,
                                discrepancy: diff / scale,
                            })
                        };
                        match run() {
                            Ok(c) => cases.push(c),
                            Err(e) => errors.push(format!("d={d} n={} l={l} {v} {bump:?}: {e}", n.0)),
                        }
                    }
                }
            }
        }
    }
    let max_discrepancy = cases.iter().map(|c| c.discrepancy).fold(0.0, f64::max);
    let verdict = if errors.is_empty() && max_discrepancy <= tol {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    Ok(IdentityReport {
        tolerance: tol,
        max_discrepancy,
        cases,
        errors,
        verdict,
    })
}

/// Largest window the existence check escalates to.
pub const MAX_EXISTENCE_WINDOW: f64 = 320.0;

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ExistenceCase {
    pub potential: PotentialSpec,
    pub n: LogDepth,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ExistenceRow {
    pub potential: String,
    pub n: LogDepth,
    pub count: usize,
    /// Window at which the count was first positive, or the largest tried.
    pub window: f64,
    pub points: usize,
    pub trail: Vec<RefinementStep>,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ExistenceReport {
    pub rows: Vec<ExistenceRow>,
    pub verdict: Verdict,
}

/// Points on a window `factor` times larger at the same grid step.
fn points_at_same_step(points: usize, factor: usize) -> usize {
    (points + 1) * factor - 1
}

/// For non-trivial `V ≤ 0` on the line (`d = 1`, variant zero) at least one
/// negative eigenvalue must appear. The window doubles at fixed grid step up
/// to `max_window`; a case still at zero there is inconclusive.
pub fn run_existence_check(
    cases: &[ExistenceCase],
    numerics: &Numerics,
    max_window: f64,
) -> Result<ExistenceReport> {
    if cases.is_empty() {
        return Err(Error::invalid("existence run needs at least one potential"));
    }
    let mut rows = Vec::new();
    for case in cases {
        let v = &case.potential;
        v.validate()?;
        let spec = OperatorSpec::for_theorem(Theorem::T41, 1, case.n, Variant::Zero)?;
        let mut trail = Vec::new();
        let mut factor = 1usize;
        let row = loop {
            let window = numerics.window * factor as f64;
            let points = points_at_same_step(numerics.points, factor);
            let local = Numerics {
                window,
                points,
                refinements: 0,
                eigenvalues: 0,
            };
            let r = count_negative(&spec, v, None, &local)?;
            trail.extend(r.trail.iter().copied());
            if r.negative_count >= 1 || window * 2.0 > max_window {
                let verdict = if r.negative_count >= 1 {
                    Verdict::Pass
                } else {
                    Verdict::Inconclusive
                };
                break ExistenceRow {
                    potential: format!("{v}"),
                    n: case.n,
                    count: r.negative_count,
                    window,
                    points,
                    trail,
                    verdict,
                };
            }
            factor *= 2;
        };
        rows.push(row);
    }
    let verdict = rows.iter().fold(Verdict::Pass, |acc, r| acc.worst(r.verdict));
    Ok(ExistenceReport { rows, verdict })
}

/// One bound-versus-count sweep.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(deny_unknown_fields))]
pub struct SweepSpec {
    pub theorem: Theorem,
    pub dimensions: Vec<u32>,
    pub n: LogDepth,
    pub variant: Variant,
    /// Potential at scale 1.
    pub potential: PotentialSpec,
    /// Multipliers applied to `potential`, one row each.
    pub scales: Vec<f64>,
    pub numerics: Numerics,
    pub tol: f64,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if self.scales.is_empty() {
            return Err(Error::invalid("sweep needs at least one scale"));
        }
        if self.dimensions.is_empty() {
            return Err(Error::invalid("sweep needs at least one dimension"));
        }
        if self.scales.iter().any(|s| !s.is_finite()) {
            return Err(Error::invalid("sweep scales must be finite"));
        }
        if !(self.tol > 0.0) {
            return Err(Error::invalid("sweep tolerance must be positive"));
        }
        if !(self.numerics.window > 0.0 && self.numerics.window.is_finite()) || self.numerics.points < 2 {
            return Err(Error::invalid("sweep numerics need a positive window and m >= 2"));
        }
        self.potential.validate()?;
        for &d in &self.dimensions {
            OperatorSpec::for_theorem(self.theorem, d, self.n, self.variant)?;
        }
        if self.theorem != Theorem::T41 && !self.potential.central {
            return Err(Error::invalid("t42 and t43 sweeps need a central potential"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ExperimentRow {
    pub experiment_id: String,
    pub theorem: Theorem,
    pub spec: OperatorSpec,
    pub scale: f64,
    pub potential: PotentialSpec,
    pub count: u64,
    pub trail: Vec<RefinementStep>,
    pub bound: BoundValue,
    pub satisfied: bool,
    pub window: f64,
    pub points: usize,
    pub pivot_ambiguous: bool,
    pub channels: Vec<ChannelCount>,
}

impl ExperimentRow {
    pub fn trail_non_decreasing(&self) -> bool {
        self.trail.windows(2).all(|w| w[1].count >= w[0].count)
    }
}

/// Evaluates the bound of the given theorem.
pub fn theorem_bound(
    theorem: Theorem,
    v: &PotentialSpec,
    spec: &OperatorSpec,
    constants: &BoundConstants,
    tol: f64,
) -> Result<BoundValue> {
    match theorem {
        Theorem::T41 => bound_1d(v, spec, tol),
        Theorem::T42 => clr_bound(v, spec, constants, tol),
        Theorem::T43 => central_bound(v, spec, tol),
    }
}

/// Rows ordered by dimension, then scale. Each row pairs the discrete count
/// at the finest refinement with the bound of the theorem.
pub fn run_bound_sweep(sweep: &SweepSpec, constants: &BoundConstants) -> Result<Vec<ExperimentRow>> {
    sweep.validate()?;
    let mut scales = sweep.scales.clone();
    scales.sort_by(f64::total_cmp);
    let mut rows = Vec::new();
    for &d in &sweep.dimensions {
        let spec = OperatorSpec::for_theorem(sweep.theorem, d, sweep.n, sweep.variant)?;
        for &c in &scales {
            let v = sweep.potential.scaled(c)?;
            let bound = theorem_bound(sweep.theorem, &v, &spec, constants, sweep.tol)?;
            let (count, trail, ambiguous, channels, grid) = if d == 1 {
                let r = count_negative(&spec, &v, None, &sweep.numerics)?;
                let amb = r.inertia.is_ambiguous();
                (r.negative_count as u64, r.trail.clone(), amb, Vec::new(), r.grid)
            } else {
                let total = total_central_count(&spec, &v, &sweep.numerics)?;
                let amb = total.any_ambiguous();
                let trail = summed_trail(&total.channels);
                let grid = total.channels[0].result.grid;
                (total.total, trail, amb, total.channels, grid)
            };
            let id = format!(
                "{}-d{}-n{}-{}-{:03}",
                sweep.theorem.as_str(),
                d,
                sweep.n.0,
                sweep.variant.as_str(),
                rows.len()
            );
            rows.push(ExperimentRow {
                experiment_id: id,
                theorem: sweep.theorem,
                spec,
                scale: c,
                potential: v,
                count,
                trail,
                satisfied: bound.admits(count),
                bound,
                window: grid.s_max - grid.s_min,
                points: grid.m,
                pivot_ambiguous: ambiguous,
                channels,
            });
        }
    }
    Ok(rows)
}

/// Degeneracy-weighted totals per refinement level.
fn summed_trail(channels: &[ChannelCount]) -> Vec<RefinementStep> {
    let Some(first) = channels.first() else {
        return Vec::new();
    };
    (0..first.result.trail.len())
        .map(|j| {
            let base = first.result.trail[j];
            let mut count = 0usize;
            let mut ambiguous = false;
            for c in channels {
                let step = c.result.trail[j];
                count += c.degeneracy as usize * step.count;
                ambiguous |= step.ambiguous;
            }
            RefinementStep {
                window: base.window,
                points: base.points,
                count,
                ambiguous,
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SweepReport {
    pub rows: Vec<ExperimentRow>,
    pub verdict: Verdict,
}

impl SweepReport {
    pub fn from_rows(rows: Vec<ExperimentRow>) -> Self {
        let ok = rows.iter().all(|r| r.satisfied && r.trail_non_decreasing());
        SweepReport {
            rows,
            verdict: if ok { Verdict::Pass } else { Verdict::Fail },
        }
    }
}

/// Geometric ladder `1, 2, 4, …, 2^{steps-1}`.
pub fn doubling_ladder(steps: u32) -> Vec<f64> {
    (0..steps).map(|j| (1u64 << j) as f64).collect()
}

/// The three standard sweeps: a depth ladder for the line bound, a
/// partial-wave check in `d = 3`, and a CLR ladder in `d = 3`.
pub fn default_bound_sweeps(numerics: Numerics, tol: f64) -> Result<Vec<SweepSpec>> {
    Ok(alloc::vec![
        SweepSpec {
            theorem: Theorem::T41,
            dimensions: alloc::vec![1],
            n: LogDepth(0),
            variant: Variant::One,
            potential: PotentialSpec::square_well(1.0, 1.0, 2.0)?,
            scales: doubling_ladder(7),
            numerics,
            tol,
        },
        SweepSpec {
            theorem: Theorem::T43,
            dimensions: alloc::vec![3],
            n: LogDepth(0),
            variant: Variant::One,
            potential: PotentialSpec::square_well(1.0, 1.0, 2.0)?,
            scales: alloc::vec![1.0],
            numerics,
            tol,
        },
        SweepSpec {
            theorem: Theorem::T42,
            dimensions: alloc::vec![3],
            n: LogDepth(0),
            variant: Variant::Zero,
            potential: PotentialSpec::square_well(1.0, 3.0, 6.0)?,
            scales: alloc::vec![1.0, 4.0, 16.0, 64.0, 256.0],
            numerics,
            tol,
        },
    ])
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(deny_unknown_fields))]
pub struct ConvergenceCase {
    pub spec: OperatorSpec,
    pub potential: PotentialSpec,
    #[cfg_attr(feature = "serde", serde(default))]
    pub channel: u32,
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ConvergenceCell {
    pub window: f64,
    pub points: usize,
    pub step: f64,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ConvergenceReport {
    /// Row `i` is window `i`, column `j` is grid `j`.
    pub table: Vec<Vec<ConvergenceCell>>,
    /// Whether counts grow with the window in every grid column.
    pub window_monotone: bool,
    /// Per window, first grid index from which the count stays constant,
    /// or `None` if only the finest grid reaches the final value.
    pub grid_stable_from: Vec<Option<usize>>,
    pub verdict: Verdict,
}

/// Counts on the product of a window ladder (multipliers of the base window,
/// each an integer) and a grid ladder (interior points at the base window).
/// Grid `j` keeps its step across windows, so windows are nested and the
/// counts in one column can only grow.
pub fn run_convergence_study(
    case: &ConvergenceCase,
    base_window: f64,
    window_ladder: &[u32],
    grid_ladder: &[usize],
) -> Result<ConvergenceReport> {
    if window_ladder.len() < 3 || grid_ladder.len() < 3 {
        return Err(Error::invalid("convergence ladders need at least three entries"));
    }
    if window_ladder.contains(&0) || grid_ladder.iter().any(|&m| m < 2) {
        return Err(Error::invalid("window multipliers must be positive and grids need m >= 2"));
    }
    if !(base_window > 0.0 && base_window.is_finite()) {
        return Err(Error::invalid("base window must be positive"));
    }
    let channel = (case.spec.d > 1).then_some(case.channel);
    let mut table = Vec::new();
    for &w in window_ladder {
        let mut row = Vec::new();
        for &m in grid_ladder {
            let numerics = Numerics {
                window: base_window * w as f64,
                points: points_at_same_step(m, w as usize),
                refinements: 0,
                eigenvalues: 0,
            };
            let r = count_negative(&case.spec, &case.potential, channel, &numerics)?;
            row.push(ConvergenceCell {
                window: numerics.window,
                points: numerics.points,
                step: r.grid.step(),
                count: r.negative_count,
            });
        }
        table.push(row);
    }
    let window_monotone = (0..grid_ladder.len())
        .all(|j| table.windows(2).all(|p| p[1][j].count >= p[0][j].count));
    let grid_stable_from: Vec<Option<usize>> = table
        .iter()
        .map(|row| {
            let last = row.last().map(|c| c.count);
            let mut from = row.len() - 1;
            while from > 0 && Some(row[from - 1].count) == last {
                from -= 1;
            }
            (from < row.len() - 1).then_some(from)
        })
        .collect();
    let verdict = if !window_monotone {
        Verdict::Fail
    } else if grid_stable_from.iter().all(Option::is_some) {
        Verdict::Pass
    } else {
        Verdict::Inconclusive
    };
    Ok(ConvergenceReport {
        table,
        window_monotone,
        grid_stable_from,
        verdict,
    })
}

/// `C_d`-bound of the potential-free operator in each dimension, which
/// vanishes for `d = 3` and not above.
pub fn clr_free_operator(dims: &[u32], constants: &BoundConstants, tol: f64) -> Result<Vec<(u32, f64)>> {
    dims.iter()
        .map(|&d| {
            let spec = OperatorSpec::for_theorem(Theorem::T42, d, LogDepth(0), Variant::Zero)?;
            Ok((d, clr_bound(&PotentialSpec::zero(), &spec, constants, tol)?.raw))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn two_dimensional_positivity_is_trivial() {
        let r = run_hardy_positivity(&[2], &[LogDepth(0)], None, 1e-10).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
        for c in &r.cases {
            assert!((c.quotient - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn identity_free_line() {
        let r = run_transform_identity(&[1], &[LogDepth(0)], &[PotentialSpec::zero()], None, 1e-8)
            .unwrap();
        assert!(r.errors.is_empty(), "{:?}", r.errors);
        assert_eq!(r.verdict, Verdict::Pass, "max {}", r.max_discrepancy);
    }

    #[test]
    fn existence_strong_well() {
        let cases = vec![ExistenceCase {
            potential: PotentialSpec::square_well(1.0, 1.0, 2.0).unwrap(),
            n: LogDepth(0),
        }];
        let r = run_existence_check(&cases, &Numerics::default(), MAX_EXISTENCE_WINDOW).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
        assert_eq!(r.rows[0].window, 20.0);
    }

    #[test]
    fn sweep_rejects_empty_ladder() {
        let mut s = default_bound_sweeps(Numerics::default(), 1e-8).unwrap().remove(0);
        s.scales.clear();
        assert!(run_bound_sweep(&s, &BoundConstants::default()).is_err());
    }

    #[test]
    fn convergence_free_operator() {
        let case = ConvergenceCase {
            spec: OperatorSpec::for_theorem(Theorem::T41, 1, LogDepth(0), Variant::Zero).unwrap(),
            potential: PotentialSpec::zero(),
            channel: 0,
        };
        let r = run_convergence_study(&case, 10.0, &[1, 2, 4], &[100, 200, 400]).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
        assert!(r.table.iter().flatten().all(|c| c.count == 0));
        assert!(run_convergence_study(&case, 10.0, &[1, 2], &[100, 200, 400]).is_err());
    }
}
