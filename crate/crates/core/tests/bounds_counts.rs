use hardy_core::bounds::*;
use hardy_core::iterfun::sphere_area;
use hardy_core::quadrature::try_integrate;
use hardy_core::spectra::{count_negative, total_central_count, Numerics};
use hardy_core::{LogDepth, PotentialSpec, Variant};

fn well(c: f64, a: f64, b: f64) -> PotentialSpec {
    PotentialSpec::square_well(c, a, b).unwrap()
}

#[test]
fn clr_three_dimensions_closed_form() {
    // Constant depth c on [3, 6]: C_3 4π c^{3/2} ∫ r² ln² r dr.
    let spec = OperatorSpec::for_theorem(Theorem::T42, 3, LogDepth(0), Variant::Zero).unwrap();
    let c: f64 = 2.5;
    let b = clr_bound(&well(c, 3.0, 6.0), &spec, &BoundConstants::default(), 1e-12).unwrap();
    let f = |r: f64| {
        let l = r.ln();
        r.powi(3) * (l * l / 3.0 - 2.0 * l / 9.0 + 2.0 / 27.0)
    };
    let want = C3_LIEB * 4.0 * std::f64::consts::PI * c.powf(1.5) * (f(6.0) - f(3.0));
    assert!((b.raw - want).abs() <= 1e-9 * want, "{} vs {want}", b.raw);
}

#[test]
fn clr_matches_radial_route() {
    let constants = BoundConstants::default();
    for (d, variant, v) in [
        (3, Variant::Zero, well(1.5, 3.0, 6.0)),
        (3, Variant::One, well(1.5, 20.0, 40.0)),
        (4, Variant::One, well(0.7, 20.0, 30.0)),
        (5, Variant::One, well(0.3, 16.0, 30.0)),
    ] {
        let spec = OperatorSpec::for_theorem(Theorem::T42, d, LogDepth(0), variant).unwrap();
        let b = clr_bound(&v, &spec, &constants, 1e-11).unwrap();
        let lo = spec.domain.value;
        let mut total = 0.0;
        // Split at the well edges and far out; the tail beyond 1e4 is below tolerance.
        let mut pts = vec![lo * (1.0 + 1e-12), 16.0, 20.0, 30.0, 40.0, 1e2, 1e3, 1e4];
        pts.retain(|&p| p >= lo * (1.0 + 1e-12));
        for w in pts.windows(2) {
            total += try_integrate(|r| clr_radial_integrand(&v, &spec, r), w[0], w[1], 1e-11)
                .unwrap()
                .value;
        }
        let want = constants.get(d).unwrap() * sphere_area(d).unwrap() * total;
        assert!(
            (b.raw - want).abs() <= 1e-6 * want.max(1e-12),
            "d={d} {variant:?}: {} vs {want}",
            b.raw
        );
    }
}

#[test]
fn partial_wave_s_wave_reproduces_line_bound() {
    let v = well(0.1, 1.0, 2.0);
    let central = OperatorSpec::for_theorem(Theorem::T43, 3, LogDepth(0), Variant::One).unwrap();
    let line = OperatorSpec::for_theorem(Theorem::T41, 1, LogDepth(0), Variant::One).unwrap();
    assert_eq!(l_max(&v, 3, &central.domain), Some(0));
    let a = central_bound(&v, &central, 1e-12).unwrap().raw;
    let b = bound_1d(&v, &line, 1e-12).unwrap().raw;
    assert!((a - b).abs() <= 1e-12);
}

#[test]
fn deep_well_channel_table() {
    let spec = OperatorSpec::for_theorem(Theorem::T43, 3, LogDepth(0), Variant::One).unwrap();
    let v = well(40.0, 1.0, 2.0);
    let total = total_central_count(&spec, &v, &Numerics::default()).unwrap();
    let lmax = total.l_max.unwrap();
    let last = total.channels.last().unwrap();
    assert_eq!(last.count, 0);
    assert!(last.l > lmax);
    let sum: u64 = total.channels.iter().map(|c| c.degeneracy * c.count as u64).sum();
    assert_eq!(sum, total.total);
    assert!(total.total > 5);
    for w in total.channels.windows(2) {
        assert_eq!(w[1].l, w[0].l + 1);
        assert!(w[1].count <= w[0].count);
    }
    let bound = central_bound(&v, &spec, 1e-10).unwrap();
    assert!(bound.admits(total.total));
}

#[test]
fn count_trail_grows_under_refinement() {
    let spec = OperatorSpec::for_theorem(Theorem::T41, 1, LogDepth(1), Variant::Zero).unwrap();
    let numerics = Numerics { refinements: 2, ..Numerics::default() };
    let r = count_negative(&spec, &well(30.0, 2.0, 5.0), None, &numerics).unwrap();
    assert_eq!(r.trail.len(), 3);
    assert!(r.trail_non_decreasing());
    assert_eq!(r.trail[2].window, 80.0);
    assert_eq!(r.trail[2].points, 16000);
}

#[test]
fn depth_cap_is_reported() {
    let spec = OperatorSpec::for_theorem(Theorem::T41, 1, LogDepth(3), Variant::Zero);
    match spec {
        Err(_) => {}
        Ok(spec) => assert!(count_negative(&spec, &well(1.0, 20.0, 30.0), None, &Numerics::default()).is_err()),
    }
}
