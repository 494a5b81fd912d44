use num_complex::Complex64;
use proptest::prelude::*;

use eit_soliton::output::write_metrics_csv;
use eit_soliton::presets::{field_unit, UniformLayout, DENSITY, DIPOLE, GAMMA, LAMBDA_P};
use eit_soliton::soliton::width_fwhm;
use eit_soliton::*;

fn small(mode: SolverMode) -> ScenarioConfig {
    UniformLayout {
        nx: 128,
        nonlinear_lengths: 0.5,
        steps_per_length: 40,
        stride: 5,
        mode,
        ..UniformLayout::default()
    }
    .scenario()
    .unwrap()
}

fn gaussian(s: &ScenarioConfig, amplitude: f64, width: f64, shift: f64, tilt: f64) -> FieldState {
    let half = s.grid.x_max;
    FieldState {
        z: 0.0,
        envelope: s
            .grid
            .xs()
            .iter()
            .map(|&x| {
                let r = (x - shift * half) / (width * half);
                Complex64::from_polar(amplitude * (-r * r).exp(), tilt * x / half)
            })
            .collect(),
    }
}

fn propagate(s: &ScenarioConfig, initial: &FieldState) -> Trajectory {
    Solver::new(s, initial)
        .unwrap()
        .run_from(initial, |_, _| {})
        .unwrap()
}

fn norm(state: &FieldState) -> f64 {
    state.envelope.iter().map(|c| c.norm_sqr()).sum()
}

fn medium() -> impl Strategy<Value = AtomicParams> {
    (
        0.0..1e-6f64,
        -1e-6..1e-6f64,
        -1.0..1.0f64,
        1.0..200.0f64,
        any::<bool>(),
    )
        .prop_map(|(g2, d13, d23, d24, sign)| {
            AtomicParams::uniform(DENSITY, DIPOLE, GAMMA)
                .unwrap()
                .with_gamma2(g2 * GAMMA)
                .with_detunings(
                    d13 * GAMMA,
                    d23 * GAMMA,
                    if sign { d24 } else { -d24 } * GAMMA,
                )
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn global_phase_commutes_with_propagation(theta in 0.0..std::f64::consts::TAU, amp in 0.001..0.02f64) {
        let s = small(SolverMode::FullChi);
        let base = gaussian(&s, amp * field_unit(), 0.1, 0.0, 0.0);
        let rotation = Complex64::from_polar(1.0, theta);
        let rotated = FieldState {
            z: 0.0,
            envelope: base.envelope.iter().map(|c| c * rotation).collect(),
        };
        let a = propagate(&s, &base);
        let b = propagate(&s, &rotated);
        let expect: Vec<Complex64> = a.last().unwrap().envelope.iter().map(|c| c * rotation).collect();
        prop_assert!(propagator::relative_l2(&b.last().unwrap().envelope, &expect) < 1e-12);
    }

    #[test]
    fn runs_are_byte_identical(amp in 0.001..0.02f64, shift in -0.3..0.3f64) {
        let s = small(SolverMode::FullChi);
        let initial = gaussian(&s, amp * field_unit(), 0.1, shift, 0.0);
        let csv = |t: &Trajectory| {
            let mut buf = Vec::new();
            write_metrics_csv(&mut buf, &t.metrics).unwrap();
            buf
        };
        prop_assert_eq!(csv(&propagate(&s, &initial)), csv(&propagate(&s, &initial)));
    }

    #[test]
    fn cubic_mode_conserves_discrete_power(
        amp in 0.001..0.03f64,
        width in 0.05..0.2f64,
        shift in -0.2..0.2f64,
        tilt in -20.0..20.0f64,
    ) {
        let s = small(SolverMode::CubicNlse);
        let initial = gaussian(&s, amp * field_unit(), width, shift, tilt);
        let t = propagate(&s, &initial);
        let n0 = norm(&initial);
        for st in &t.snapshots {
            prop_assert!((norm(st) / n0 - 1.0).abs() < 1e-11);
        }
    }

    #[test]
    fn absorbing_medium_never_gains_power(
        g2 in 1e-9..1e-6f64,
        amp in 0.001..0.02f64,
        width in 0.05..0.2f64,
    ) {
        let mut s = small(SolverMode::FullChi);
        s.atomic = s.atomic.with_gamma2(g2 * GAMMA);
        s.solver.sponge.fraction = 0.1;
        s.solver.snapshot_stride = 1;
        let t = propagate(&s, &gaussian(&s, amp * field_unit(), width, 0.0, 0.0));
        for w in t.snapshots.windows(2) {
            prop_assert!(norm(&w[1]) <= norm(&w[0]) * (1.0 + 1e-13));
        }
    }

    #[test]
    fn susceptibility_is_passive(params in medium(), ep in 0.0..0.05f64, ec in 0.1..3.0f64) {
        let chi = susceptibility(
            &params,
            Complex64::new(ep * field_unit(), 0.0),
            Complex64::new(ec * field_unit(), 0.0),
        ).unwrap();
        prop_assert!(chi.im >= 0.0, "{chi}");
    }

    #[test]
    fn kerr_expansion_matches_small_probe_response(params in medium(), ec in 0.3..3.0f64) {
        let e_c = Complex64::new(ec * field_unit(), 0.0);
        let k = kerr_expansion(&params, e_c).unwrap();
        let ep = 1e-4 * e_c.re;
        let full = susceptibility(&params, Complex64::new(ep, 0.0), e_c).unwrap();
        let predicted = k.chi1 + k.chi3 * ep * ep;
        let scale = (k.chi3 * ep * ep).norm();
        prop_assert!((full - predicted).norm() <= 1e-6 * scale + 1e-12 * k.chi1.norm());
    }

    #[test]
    fn width_scales_with_amplitude_ratio(ratio in 1e-4..0.05f64, factor in 0.25..8.0f64, d24 in 1.0..100.0f64) {
        let params = AtomicParams::uniform(DENSITY, DIPOLE, GAMMA).unwrap().with_detunings(0.0, 0.0, -d24 * GAMMA);
        let e_c = field_unit();
        let w = width_fwhm(&params, e_c, ratio * e_c, LAMBDA_P).unwrap();
        let wf = width_fwhm(&params, e_c, ratio * e_c / factor, LAMBDA_P).unwrap();
        prop_assert!((wf / (w * factor) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn scenario_text_round_trips(
        m in 1e-4..1e-2f64,
        center in -1e-4..1e-4f64,
        nx in 16usize..5000,
        stride in 1usize..50,
        second in any::<bool>(),
        cubic in any::<bool>(),
        fraction in 0.0..0.4f64,
    ) {
        let mut s = small(if cubic { SolverMode::CubicNlse } else { SolverMode::FullChi });
        s.probe = scenario::ProbeSource::Soliton(SolitonSpec {
            m,
            order: if second { SolitonOrder::Second } else { SolitonOrder::Fundamental },
            center_x: center,
            transverse_velocity: 0.0,
        });
        s.grid.nx = nx;
        s.solver.snapshot_stride = stride;
        s.solver.sponge.fraction = fraction;
        prop_assert_eq!(parse_scenario(&render_scenario(&s)).unwrap(), s);
    }
}
