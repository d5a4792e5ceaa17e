use bellswitch_core::circuits::{bell_analyzer, bell_creator, qubit_reference_gate, Device};
use bellswitch_core::detection::{outcome_distribution, Outcome};
use bellswitch_core::elements::{
    apply_gate, apply_switch, hadamard_gate, norm_change, required_injection_for_pi, waveplate_gate, HadamardModes,
    Mode, SwitchSettings, TwoModeGate,
};
use bellswitch_core::state::{bell_vector, inner, make_downconversion_state, BellLabel, PairState, RectLabel};
use bellswitch_core::C64;
use proptest::prelude::*;

fn amp(scale: f64) -> impl Strategy<Value = C64> {
    (-scale..scale, -scale..scale).prop_map(|(re, im)| C64::new(re, im))
}

fn pair_state(scale: f64) -> impl Strategy<Value = PairState> {
    (amp(1.0), proptest::array::uniform4(amp(scale))).prop_map(|(v, p)| PairState::new(v, p))
}

fn nonzero_eps() -> impl Strategy<Value = C64> {
    amp(0.2).prop_filter("nonzero", |e| e.norm() > 1e-4)
}

fn mode() -> impl Strategy<Value = Mode> {
    prop_oneof![Just(Mode::One), Just(Mode::Two)]
}

fn rect() -> impl Strategy<Value = RectLabel> {
    (0usize..4).prop_map(|i| RectLabel::from_index(i).unwrap())
}

#[test]
fn bell_and_rect_bases_are_related_by_a_unitary() {
    // Columns are the Bell vectors written in the rectilinear basis.
    let mut m = [[C64::new(0.0, 0.0); 4]; 4];
    for (col, label) in BellLabel::ALL.iter().enumerate() {
        for (r, x) in bell_vector(*label).iter().enumerate() {
            m[r][col] = *x;
        }
    }
    let u = TwoModeGate::from_matrix(m);
    assert!(u.is_unitary(1e-15));
    for (col, label) in BellLabel::ALL.iter().enumerate() {
        let there = u.apply(&RectLabel::from_index(col).unwrap().vector());
        let back = u.adjoint().apply(&there);
        assert!(there
            .iter()
            .zip(bell_vector(*label))
            .all(|(a, b)| (a - b).norm() < 1e-15));
        assert!(back
            .iter()
            .zip(RectLabel::from_index(col).unwrap().vector())
            .all(|(a, b)| (a - b).norm() < 1e-15));
    }
}

#[test]
fn reference_circuits_are_unitary_and_mutually_inverse() {
    for d in [Device::Creator, Device::Analyzer] {
        assert!(qubit_reference_gate(d).is_unitary(1e-12));
    }
    let prod = qubit_reference_gate(Device::Analyzer) * qubit_reference_gate(Device::Creator);
    assert!(prod.max_abs_diff(&TwoModeGate::identity()) < 1e-15);
}

#[test]
fn both_reference_and_optical_creators_are_bijections_onto_bell_states() {
    let eps = C64::new(0.01, 0.0);
    let creator = bell_creator(eps).unwrap();
    for circuit_out in [
        RectLabel::ALL.map(|l| qubit_reference_gate(Device::Creator).apply(&l.vector())),
        RectLabel::ALL.map(|l| creator.run(&PairState::rectilinear(eps, l)).pairs),
    ] {
        let mut hit = [false; 4];
        for out in circuit_out {
            let (label, _) = bellswitch_core::state::as_bell(&out, 1e-12).expect("Bell output");
            let idx = BellLabel::ALL.iter().position(|l| *l == label).unwrap();
            assert!(!hit[idx], "two inputs mapped to {label}");
            hit[idx] = true;
        }
    }
}

proptest! {
    #[test]
    fn waveplates_are_unitary_involutions(theta in -10.0f64..10.0, m in mode()) {
        let g = waveplate_gate(theta, m);
        prop_assert!(g.is_unitary(1e-12));
        prop_assert!((g * g).max_abs_diff(&TwoModeGate::identity()) < 1e-12);
    }

    #[test]
    fn gates_preserve_norm_and_vacuum(s in pair_state(1.0), theta in -4.0f64..4.0, m in mode()) {
        for g in [waveplate_gate(theta, m), hadamard_gate(HadamardModes::Both), hadamard_gate(HadamardModes::Mode1Only)] {
            let out = apply_gate(&s, &g);
            prop_assert_eq!(out.vacuum, s.vacuum);
            prop_assert!((out.total_norm_sq() - s.total_norm_sq()).abs() < 1e-12);
        }
    }

    #[test]
    fn switch_is_affine_invertible(s in pair_state(0.1), mu in amp(0.1), t in rect()) {
        let fwd = apply_switch(&s, &SwitchSettings::new(mu, t));
        let back = apply_switch(&fwd, &SwitchSettings::new(-mu, t));
        // (a + μ) - μ is exact up to one rounding of the target amplitude
        prop_assert!(back.max_deviation(&s) <= 2.0 * f64::EPSILON * 0.2);
        // untouched amplitudes are bit-identical
        prop_assert_eq!(fwd.vacuum, s.vacuum);
        for l in RectLabel::ALL.into_iter().filter(|l| *l != t) {
            prop_assert_eq!(fwd.pair(l), s.pair(l));
        }
    }

    #[test]
    fn norm_change_matches_direct_difference(s in pair_state(0.1), mu in amp(0.1), t in rect()) {
        let set = SwitchSettings::new(mu, t);
        let direct = apply_switch(&s, &set).total_norm_sq() - s.total_norm_sq();
        prop_assert!((norm_change(&s, &set) - direct).abs() < 1e-12);
    }

    #[test]
    fn pi_condition_negates_target(s in pair_state(0.1), t in rect()) {
        let set = SwitchSettings::new(required_injection_for_pi(&s, t), t);
        let out = apply_switch(&s, &set);
        prop_assert!((out.pair(t) + s.pair(t)).norm() <= 1e-12);
        prop_assert!(norm_change(&s, &set).abs() <= 1e-12);
        prop_assert!((out.total_norm_sq() - s.total_norm_sq()).abs() <= 1e-12);
    }

    #[test]
    fn switch_commutes_with_gates_fixing_target(s in pair_state(0.1), mu in amp(0.1), theta in -4.0f64..4.0) {
        // A plate in mode 2 at angle 0 is diag(1, -1) there: it fixes HH.
        let fixing = [waveplate_gate(0.0, Mode::Two), waveplate_gate(0.0, Mode::One) * waveplate_gate(0.0, Mode::One)];
        let set = SwitchSettings::hh(mu);
        for g in fixing {
            let a = apply_switch(&apply_gate(&s, &g), &set);
            let b = apply_gate(&apply_switch(&s, &set), &g);
            prop_assert!(a.max_deviation(&b) < 1e-15);
        }
        // and a generic plate usually does not
        let g = waveplate_gate(theta, Mode::One);
        let fixes = (g.apply(&RectLabel::HH.vector())[0] - C64::new(1.0, 0.0)).norm() < 1e-12;
        if fixes {
            let a = apply_switch(&apply_gate(&s, &g), &set);
            let b = apply_gate(&apply_switch(&s, &set), &g);
            prop_assert!(a.max_deviation(&b) < 1e-12);
        }
    }

    #[test]
    fn downconversion_is_linear_in_coefficients(
        eps in amp(0.5),
        x in proptest::array::uniform4(amp(1.0)),
        y in proptest::array::uniform4(amp(1.0)),
        k in amp(2.0),
    ) {
        let combo: [C64; 4] = core::array::from_fn(|i| x[i] + k * y[i]);
        let lhs = make_downconversion_state(eps, combo);
        let sx = make_downconversion_state(eps, x);
        let sy = make_downconversion_state(eps, y);
        for i in 0..4 {
            prop_assert!((lhs.pairs[i] - (sx.pairs[i] + k * sy.pairs[i])).norm() < 1e-14);
        }
    }

    #[test]
    fn devices_are_mutual_inverses(eps in nonzero_eps()) {
        let creator = bell_creator(eps).unwrap();
        let analyzer = bell_analyzer(eps).unwrap();
        for l in RectLabel::ALL {
            let s = PairState::rectilinear(eps, l);
            prop_assert!(analyzer.run(&creator.run(&s)).max_deviation(&s) <= 1e-12);
        }
        for b in BellLabel::ALL {
            let s = PairState::bell(-eps, b);
            prop_assert!(creator.run(&analyzer.run(&s)).max_deviation(&s) <= 1e-12);
        }
    }

    #[test]
    fn analyzer_output_has_one_pair_of_magnitude_eps(eps in nonzero_eps()) {
        let analyzer = bell_analyzer(eps).unwrap();
        for b in BellLabel::ALL {
            let out = analyzer.run(&PairState::bell(-eps, b));
            let big: Vec<_> = out.pairs.iter().filter(|a| a.norm() > 1e-12).collect();
            prop_assert_eq!(big.len(), 1);
            prop_assert!((big[0].norm() - eps.norm()).abs() <= 1e-12);
        }
    }

    #[test]
    fn distribution_is_normalized(s in pair_state(1.0), eta in 0.0f64..=1.0) {
        prop_assume!(s.total_norm_sq() > 1e-6);
        let d = outcome_distribution(&s, eta).unwrap();
        let sum: f64 = d.probabilities().iter().sum();
        prop_assert!((sum - 1.0).abs() <= 1e-12);
        prop_assert!(d.probabilities().iter().all(|p| *p >= 0.0));
    }

    #[test]
    fn coincidences_scale_with_efficiency_squared(s in pair_state(1.0), eta in 0.0f64..=1.0) {
        prop_assume!(s.total_norm_sq() > 1e-6);
        let full = outcome_distribution(&s, 1.0).unwrap();
        let part = outcome_distribution(&s, eta).unwrap();
        for o in &Outcome::ALL[..4] {
            prop_assert!((part.get(*o) - eta * eta * full.get(*o)).abs() <= 1e-15);
        }
        prop_assert!((part.get(Outcome::NoCoincidence) - (1.0 - part.coincidence_total())).abs() <= 1e-15);
    }
}

#[test]
fn matched_bell_inputs_herald_one_outcome() {
    let eps = 0.1;
    let analyzer = bell_analyzer(C64::new(eps, 0.0)).unwrap();
    for b in BellLabel::ALL {
        let d = outcome_distribution(&analyzer.run(&PairState::bell(C64::new(-eps, 0.0), b)), 1.0).unwrap();
        let nonzero: Vec<_> = Outcome::ALL[..4].iter().filter(|o| d.get(**o) > 1e-20).collect();
        assert_eq!(nonzero.len(), 1);
        assert!((d.get(*nonzero[0]) - eps * eps / (1.0 + eps * eps)).abs() <= 1e-12);
    }
}

#[test]
fn mapping_deviation_grows_linearly_with_injection_error() {
    use bellswitch_core::circuits::mapping_report_for;
    let eps = C64::new(0.01, 0.0);
    for d in [Device::Creator, Device::Analyzer] {
        let mut last = None;
        for delta in [1e-9, 1e-8, 1e-7] {
            let circuit = d.circuit_with_injection(d.nominal_injection(eps) + delta);
            let r = mapping_report_for(&circuit, d, eps, 1e-12);
            assert!(!r.passed());
            let dev = r.max_deviation();
            if let Some(prev) = last {
                let ratio: f64 = dev / prev;
                assert!((ratio - 10.0).abs() < 0.01, "{d}: ratio {ratio}");
            }
            last = Some(dev);
        }
        // perturbations well below the tolerance leave the table intact
        let circuit = d.circuit_with_injection(d.nominal_injection(eps) + 1e-14);
        assert!(mapping_report_for(&circuit, d, eps, 1e-12).passed());
    }
}

#[test]
fn inner_product_is_conjugate_linear_in_first_argument() {
    let a = [
        C64::new(0.0, 1.0),
        C64::new(0.0, 0.0),
        C64::new(0.0, 0.0),
        C64::new(0.0, 0.0),
    ];
    let b = RectLabel::HH.vector();
    assert_eq!(inner(&a, &b), C64::new(0.0, -1.0));
}
