//! Acceptance suite. Prints one `PASS`/`FAIL` line per criterion and exits
//! non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use hardy_core::bounds::{bound_1d, central_bound, clr_bound, l_max, BoundConstants, OperatorSpec, Theorem};
use hardy_core::harness::{
    run_bound_sweep, run_hardy_positivity, run_transform_identity, SweepSpec,
};
use hardy_core::iterfun::degeneracy;
use hardy_core::potentials::FnPotential;
use hardy_core::spectra::{
    assemble, count_negative, inertia_negative_count, lowest_eigenvalues, total_central_count,
    Grid, Numerics, TridiagonalOperator,
};
use hardy_core::{LogDepth, PotentialSpec, Variant};
use nalgebra::DMatrix;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const I0: f64 = 2.0 * std::f64::consts::LN_2 - 0.75;

type Outcome = Result<String, String>;

fn check(cond: bool, what: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn well(c: f64, a: f64, b: f64) -> PotentialSpec {
    PotentialSpec::square_well(c, a, b).unwrap()
}

fn criterion_1() -> Outcome {
    let dims = [1, 2, 3, 5];
    let depths = [LogDepth(0), LogDepth(1)];
    let pots = [PotentialSpec::zero(), well(1.0, 1.0, 2.0)];
    let r = run_transform_identity(&dims, &depths, &pots, None, 1e-6).map_err(|e| e.to_string())?;
    check(r.errors.is_empty(), format!("errors: {:?}", r.errors))?;
    check(
        r.max_discrepancy <= 1e-6,
        format!("max relative discrepancy {:e}", r.max_discrepancy),
    )?;
    Ok(format!("{} cases, max relative discrepancy {:.2e}", r.cases.len(), r.max_discrepancy))
}

fn criterion_2() -> Outcome {
    let depths = [LogDepth(0), LogDepth(1), LogDepth(2)];
    let r = run_hardy_positivity(&[1, 2, 3, 4, 5], &depths, None, 1e-10).map_err(|e| e.to_string())?;
    check(r.errors.is_empty(), format!("errors: {:?}", r.errors))?;
    check(r.minimum_quotient >= -1e-8, format!("minimum quotient {:e}", r.minimum_quotient))?;
    Ok(format!("{} cases, minimum quotient {:.6}", r.cases.len(), r.minimum_quotient))
}

fn criterion_3() -> Outcome {
    let spec = OperatorSpec::for_theorem(Theorem::T41, 1, LogDepth(0), Variant::One).unwrap();
    let v = well(1.0, 1.0, 2.0);
    let b = bound_1d(&v, &spec, 1e-12).map_err(|e| e.to_string())?;
    check((b.raw - I0).abs() <= 1e-9, format!("raw {} vs {}", b.raw, I0))?;
    check(b.cap == Some(0), format!("cap {:?}", b.cap))?;
    let numerics = Numerics { refinements: 1, ..Numerics::default() };
    let c = count_negative(&spec, &v, None, &numerics).map_err(|e| e.to_string())?;
    let counts: Vec<usize> = c.trail.iter().map(|s| s.count).collect();
    check(counts == [0, 0], format!("counts {counts:?}"))?;
    Ok(format!("raw {:.12}, cap 0, counts {counts:?}", b.raw))
}

fn criterion_4() -> Outcome {
    let spec = OperatorSpec::for_theorem(Theorem::T41, 1, LogDepth(0), Variant::Zero).unwrap();
    let mut counts = Vec::new();
    for c in [1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0] {
        let r = count_negative(&spec, &well(c, 1.0, 2.0), None, &Numerics::default())
            .map_err(|e| e.to_string())?;
        let cap = (1.0 + c * I0).floor() as usize;
        check(r.negative_count <= cap, format!("c={c}: count {} > {cap}", r.negative_count))?;
        counts.push(r.negative_count);
    }
    check(counts[0] >= 1, "no bound state at c = 1")?;
    check(counts.windows(2).all(|w| w[1] >= w[0]), format!("counts {counts:?} not monotone"))?;
    Ok(format!("counts {counts:?}"))
}

fn i1_closed_form() -> f64 {
    // ∫_{√2}^{2} (r - 2/r) ln r dr, with l(l+d-2) = 2
    let f = |r: f64| r * r / 2.0 * r.ln() - r * r / 4.0 - r.ln().powi(2);
    f(2.0) - f(2f64.sqrt())
}

fn criterion_5() -> Outcome {
    let spec = OperatorSpec::for_theorem(Theorem::T43, 3, LogDepth(0), Variant::One).unwrap();
    let v = well(1.0, 1.0, 2.0);
    let lm = l_max(&v, 3, &spec.domain);
    check(lm == Some(1), format!("l_max {lm:?}"))?;
    let b = central_bound(&v, &spec, 1e-12).map_err(|e| e.to_string())?;
    let want = I0 + 3.0 * i1_closed_form();
    check((b.raw - want).abs() <= 1e-9, format!("raw {} vs {}", b.raw, want))?;
    check((b.channels[0].integral - I0).abs() <= 1e-9, "I_0 mismatch")?;
    let total = total_central_count(&spec, &v, &Numerics::default()).map_err(|e| e.to_string())?;
    check(b.admits(total.total), format!("count {} > cap {:?}", total.total, b.cap))?;
    Ok(format!("l_max 1, raw {:.10}, cap {:?}, count {}", b.raw, b.cap, total.total))
}

fn criterion_6() -> Outcome {
    let constants = BoundConstants::default();
    let spec3 = OperatorSpec::for_theorem(Theorem::T42, 3, LogDepth(0), Variant::Zero).unwrap();
    let bump = PotentialSpec::tabulated(vec![3.0, 4.0, 5.0, 6.0], vec![0.0, 2.0, 1.0, 0.0]).unwrap();
    for v in [PotentialSpec::zero(), bump] {
        let b = clr_bound(&v, &spec3, &constants, 1e-10).map_err(|e| e.to_string())?;
        check(b.raw == 0.0, format!("d=3 bound {} for {v}", b.raw))?;
        let c = total_central_count(&spec3, &v, &Numerics::default()).map_err(|e| e.to_string())?;
        check(c.total == 0, format!("d=3 count {} for {v}", c.total))?;
    }
    let spec5 = OperatorSpec::for_theorem(Theorem::T42, 5, LogDepth(0), Variant::Zero).unwrap();
    let b5 = clr_bound(&PotentialSpec::zero(), &spec5, &constants, 1e-10).map_err(|e| e.to_string())?;
    check(b5.raw > 0.0, format!("d=5 bound {}", b5.raw))?;
    Ok(format!("d=3 bound 0, count 0; d=5 bound {}", b5.raw))
}

fn criterion_7() -> Outcome {
    let sweep = SweepSpec {
        theorem: Theorem::T42,
        dimensions: vec![3],
        n: LogDepth(0),
        variant: Variant::Zero,
        potential: well(1.0, 3.0, 6.0),
        scales: vec![1.0, 4.0, 16.0, 64.0, 256.0],
        numerics: Numerics::default(),
        tol: 1e-8,
    };
    let rows = run_bound_sweep(&sweep, &BoundConstants::default()).map_err(|e| e.to_string())?;
    let summary: Vec<String> = rows
        .iter()
        .map(|r| format!("c={}:{}<={:?}", r.scale, r.count, r.bound.cap))
        .collect();
    check(rows.iter().all(|r| r.satisfied), format!("unsatisfied rows: {summary:?}"))?;
    Ok(summary.join(" "))
}

fn criterion_8() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut agree = 0;
    for _ in 0..100 {
        let m = rng.gen_range(1..=200);
        let diag: Vec<f64> = (0..m).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let off: Vec<f64> = (0..m - 1).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let t = TridiagonalOperator::new(diag.clone(), off.clone()).unwrap();
        let dense = DMatrix::from_fn(m, m, |i, j| {
            if i == j {
                diag[i]
            } else if i + 1 == j {
                off[i]
            } else if j + 1 == i {
                off[j]
            } else {
                0.0
            }
        });
        let want = dense.symmetric_eigenvalues().iter().filter(|&&x| x < 0.0).count();
        if inertia_negative_count(&t, 0.0).exact() == Some(want) {
            agree += 1;
        }
    }
    check(agree == 100, format!("{agree}/100 agree"))?;
    Ok("100/100 agree".into())
}

fn binomial(n: i64, k: i64) -> u128 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

fn criterion_9() -> Outcome {
    for d in 2..=10u32 {
        for l in 0..=20u32 {
            let (di, li) = (d as i64, l as i64);
            let want = binomial(di + li - 1, li) - binomial(di + li - 3, li - 2);
            let got = degeneracy(d, l).map_err(|e| e.to_string())? as u128;
            check(got == want, format!("degeneracy({d},{l}) = {got}, want {want}"))?;
        }
    }
    for l in 0..=20 {
        check(degeneracy(3, l).unwrap() == 2 * l as u64 + 1, format!("d=3 l={l}"))?;
    }
    Ok("189 pairs exact".into())
}

fn criterion_10() -> Outcome {
    let m = 60;
    let t = TridiagonalOperator::new(vec![2.0; m], vec![-1.0; m - 1]).unwrap();
    let ev = lowest_eigenvalues(&t, m, 1e-13).map_err(|e| e.to_string())?;
    let mut worst = 0.0f64;
    for (j, got) in ev.iter().enumerate() {
        let want = 2.0 - 2.0 * ((j + 1) as f64 * std::f64::consts::PI / (m + 1) as f64).cos();
        worst = worst.max((got - want).abs());
    }
    check(worst <= 1e-10, format!("Toeplitz error {worst:e}"))?;
    let pt = FnPotential::new(|s: f64| -2.0 / s.cosh().powi(2));
    let grid = Grid::new(-20.0, 20.0, 8000).unwrap();
    let op = assemble(&pt, &grid).map_err(|e| e.to_string())?;
    let count = inertia_negative_count(&op, 0.0);
    check(count.exact() == Some(1), format!("Pöschl–Teller count {count:?}"))?;
    let e0 = lowest_eigenvalues(&op, 1, 1e-12).map_err(|e| e.to_string())?[0];
    check((e0 + 1.0).abs() <= 1e-3, format!("Pöschl–Teller ground state {e0}"))?;
    Ok(format!("Toeplitz max error {worst:.1e}, Pöschl–Teller E0 = {e0:.6}"))
}

fn main() -> ExitCode {
    let criteria: [(u32, &str, fn() -> Outcome, u64); 10] = [
        (1, "transformation identity", criterion_1, 30),
        (2, "Hardy positivity", criterion_2, 10),
        (3, "line bound, variant one", criterion_3, 5),
        (4, "existence and depth ladder", criterion_4, 60),
        (5, "partial-wave bound, d = 3", criterion_5, 30),
        (6, "CLR sanity", criterion_6, 10),
        (7, "CLR sweep, d = 3", criterion_7, 120),
        (8, "inertia oracle", criterion_8, 10),
        (9, "degeneracy oracle", criterion_9, 1),
        (10, "eigenvalue oracle", criterion_10, 10),
    ];
    let mut failed = 0;
    for (id, name, run, limit) in criteria {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run)
            .unwrap_or_else(|_| Err("panicked".to_string()));
        let elapsed = start.elapsed();
        let slow = elapsed > Duration::from_secs(limit);
        let (status, detail) = match (&outcome, slow) {
            (Ok(d), false) => ("PASS", d.clone()),
            (Ok(d), true) => ("FAIL", format!("{d}; exceeded {limit} s")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!("{status} criterion {id} ({name}) [{:.2} s]: {detail}", elapsed.as_secs_f64());
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
