use hardy_core::bounds::{bound_1d, OperatorSpec, Theorem};
use hardy_core::iterfun::{degeneracy, hardy_weight_stack, iterated_exp, iterated_log};
use hardy_core::potentials::{transform_potential, Potential};
use hardy_core::spectra::{inertia_negative_count, TridiagonalOperator};
use hardy_core::{LogDepth, PotentialSpec, Variant};
use nalgebra::DMatrix;
use proptest::prelude::*;

fn binomial(n: i64, k: i64) -> u128 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

fn dense(t: &TridiagonalOperator) -> DMatrix<f64> {
    let m = t.dim();
    DMatrix::from_fn(m, m, |i, j| match i.abs_diff(j) {
        0 => t.diagonal[i],
        1 => t.off_diagonal[i.min(j)],
        _ => 0.0,
    })
}

fn tridiagonal() -> impl Strategy<Value = TridiagonalOperator> {
    (1usize..60).prop_flat_map(|m| {
        (
            prop::collection::vec(-5.0f64..5.0, m),
            prop::collection::vec(-5.0f64..5.0, m - 1),
        )
            .prop_map(|(d, e)| TridiagonalOperator::new(d, e).unwrap())
    })
}

fn potential() -> impl Strategy<Value = PotentialSpec> {
    prop_oneof![
        Just(PotentialSpec::zero()),
        (0.01f64..100.0, 0.1f64..5.0, 0.1f64..5.0)
            .prop_map(|(c, a, w)| PotentialSpec::square_well(c, a, a + w).unwrap()),
        (0.01f64..10.0, 0.1f64..5.0).prop_map(|(c, a)| PotentialSpec::inverse_square(c, a).unwrap()),
        (0.01f64..10.0, -3.0f64..0.0, -2.0f64..2.0, 1.5f64..4.0)
            .prop_map(|(c, p, q, lo)| PotentialSpec::power_log_well(c, p, q, lo, None).unwrap()),
    ]
}

proptest! {
    #[test]
    fn literal_round_trip(v in potential()) {
        let text = v.to_string();
        let back: PotentialSpec = text.parse().unwrap();
        prop_assert_eq!(back.to_string(), text);
        for r in [0.3, 1.0, 1.7, 2.5, 7.0] {
            prop_assert_eq!(back.eval(r).unwrap(), v.eval(r).unwrap());
        }
    }

    #[test]
    fn degeneracy_matches_binomials(d in 2u32..30, l in 0u32..40) {
        let (di, li) = (d as i64, l as i64);
        let want = binomial(di + li - 1, li) - binomial(di + li - 3, li - 2);
        prop_assert_eq!(degeneracy(d, l).unwrap() as u128, want);
    }

    #[test]
    fn log_inverts_exp(x in -2.0f64..2.0, k in 0u32..3) {
        let y = iterated_exp(x, LogDepth(k)).unwrap();
        let back = iterated_log(y, LogDepth(k)).unwrap();
        prop_assert!((back - x).abs() <= 1e-12 * x.abs().max(1.0));
    }

    #[test]
    fn weight_stack_grows_with_depth(x in 16.0f64..1e6, d in 1u32..8, n in 0u32..2) {
        let lo = hardy_weight_stack(x, d, LogDepth(n)).unwrap();
        let hi = hardy_weight_stack(x, d, LogDepth(n + 1)).unwrap();
        prop_assert!(hi > lo);
    }

    #[test]
    fn single_transform_matches_definition(v in potential(), s in -3.0f64..3.0) {
        let w = transform_potential(&v, 1, 0.0).unwrap();
        let r = s.exp();
        let want = r * r * v.eval(r).unwrap();
        prop_assert!((w.eval(s).unwrap() - want).abs() <= 1e-12 * want.abs().max(1e-300));
    }

    #[test]
    fn transform_is_linear(v in potential(), c in 0.1f64..10.0, s in -2.0f64..1.5, k in 1u32..3) {
        let w = transform_potential(&v, k, 0.0).unwrap().eval(s).unwrap();
        let wc = transform_potential(&v.scaled(c).unwrap(), k, 0.0).unwrap().eval(s).unwrap();
        prop_assert!((wc - c * w).abs() <= 1e-12 * (c * w).abs());
    }

    #[test]
    fn line_bound_scales_linearly(c in 0.1f64..50.0, a in 1.0f64..3.0) {
        let spec = OperatorSpec::for_theorem(Theorem::T41, 1, LogDepth(0), Variant::One).unwrap();
        let v = PotentialSpec::square_well(1.0, a, a + 1.0).unwrap();
        let one = bound_1d(&v, &spec, 1e-12).unwrap().raw;
        let many = bound_1d(&v.scaled(c).unwrap(), &spec, 1e-12).unwrap().raw;
        prop_assert!((many - c * one).abs() <= 1e-10 * many);
    }

    #[test]
    fn inertia_matches_dense(t in tridiagonal(), shift in -3.0f64..3.0) {
        let want = dense(&t).symmetric_eigenvalues().iter().filter(|&&x| x < shift).count();
        let got = inertia_negative_count(&t, shift);
        prop_assert!(got.low <= want && want <= got.high);
    }

    #[test]
    fn inertia_grows_with_shift(t in tridiagonal(), a in -10.0f64..10.0, b in -10.0f64..10.0) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        prop_assert!(inertia_negative_count(&t, lo).low <= inertia_negative_count(&t, hi).high);
    }
}
