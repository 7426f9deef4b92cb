use galilei_core::exactmath::{Ring, GR};
use galilei_core::limits::*;

const EPS: [f64; 3] = [1e-1, 1e-2, 1e-3];

fn probe(scheme: &str, target: &str) -> LimitProbe {
    LimitProbe::new(scheme, target, &EPS)
}

#[test]
fn zero_wave_has_exactly_zero_residuals() {
    for (s, t) in PAIRS {
        let mut p = probe(s, t);
        p.wave = NullWave::zero();
        let table = run_probe(&p).unwrap();
        assert!(table
            .rows
            .iter()
            .all(|r| r.residuals.iter().all(|(_, x)| *x == 0.0)));
        assert_eq!(table.slope, None);
        assert_eq!(table.expected_order, None);
    }
}

#[test]
fn fitted_slopes_match_the_exact_order() {
    for (s, t) in PAIRS {
        let table = run_probe(&probe(s, t)).unwrap();
        let expected = table.expected_order.unwrap() as f64;
        let slope = table.slope.unwrap();
        assert!(
            (slope - expected).abs() <= 0.1,
            "{s} -> {t}: {slope} vs {expected}"
        );
        assert!(slope >= MIN_SLOPE);
    }
}

#[test]
fn residual_over_power_stays_bounded() {
    for (s, t) in PAIRS {
        let table = run_probe(&probe(s, t)).unwrap();
        let k = table.expected_order.unwrap();
        let ratios: Vec<f64> = table.rows.iter().map(|r| r.max() / r.eps.powi(k)).collect();
        let (lo, hi) = ratios
            .iter()
            .fold((f64::MAX, 0.0f64), |(a, b), &x| (a.min(x), b.max(x)));
        assert!(lo > 0.0 && hi / lo < 1.1, "{s}: {ratios:?}");
    }
}

#[test]
fn only_the_sourced_equations_leave_a_residual() {
    let orders = leading_orders(&probe("v3", "extended")).unwrap();
    for (eq, o) in orders {
        let sourced = ["J0", "J", "J4"].contains(&eq.as_str());
        assert_eq!(o.is_some(), sourced, "{eq}");
    }
    let mag = leading_orders(&probe("v1", "magnetic")).unwrap();
    assert_eq!(mag.iter().find(|(e, _)| e == "gauss").unwrap().1, None);
    assert_eq!(mag.iter().find(|(e, _)| e == "ampere").unwrap().1, Some(2));
}

#[test]
fn scalar_gauss_row_against_hand_expansion() {
    // ∇·R = −(k·k)A⁴ = −ε²Ω²A⁴ and A⁴ → −(α(p_x − i p_y))/Ω as ε → 0
    let p = probe("v3", "extended");
    let rows = exact_rows(&p).unwrap();
    let j4 = &rows.iter().find(|(n, _)| n == "J4").unwrap().1;
    let w = &p.wave;
    let lead = w
        .omega
        .mul_ref(&w.alpha)
        .mul_ref(&w.polarization[0].sub_ref(&GR::i().mul_ref(&w.polarization[1])));
    assert_eq!(j4.min_exp(), Some(2));
    assert_eq!(j4.coeff(2), lead);
}

#[test]
fn float_pipeline_agrees_with_exact_at_eps_one() {
    for (s, t) in PAIRS {
        let p = probe(s, t);
        let exact = exact_rows(&p).unwrap();
        let float = float_rows(&p, 1.0).unwrap();
        for ((name, e), (_, f)) in exact.iter().zip(&float) {
            let (re, im) = e.eval_f64(1.0);
            let d = ((re - f.re).powi(2) + (im - f.im).powi(2)).sqrt();
            let scale = (re * re + im * im).sqrt().max(1.0);
            assert!(d <= 1e-12 * scale, "{s} {name}: {d}");
        }
    }
}

#[test]
fn probes_are_deterministic() {
    let p = probe("v2", "electric");
    assert_eq!(run_probe(&p).unwrap(), run_probe(&p).unwrap());
    let all: Vec<LimitProbe> = PAIRS.iter().map(|(s, t)| probe(s, t)).collect();
    let par = run_probes(&all);
    for (p, r) in all.iter().zip(par) {
        assert_eq!(r.unwrap(), run_probe(p).unwrap());
    }
}

#[test]
fn unsupported_pairs_are_rejected() {
    for (s, t) in [
        ("v1", "electric"),
        ("v3", "magnetic"),
        ("v4", "magnetic"),
        ("v2", "nowhere"),
    ] {
        assert!(
            matches!(
                run_probe(&probe(s, t)),
                Err(LimitError::TargetMismatch { .. })
            ),
            "{s} {t}"
        );
    }
}

#[test]
fn detuned_wave_is_rejected() {
    let mut p = probe("v3", "extended");
    p.wave.detune = GR::frac(1, 10);
    assert!(matches!(
        run_probe(&p),
        Err(LimitError::DispersionViolated { .. })
    ));
    assert!(matches!(
        exact_rows(&p),
        Err(LimitError::DispersionViolated { .. })
    ));
}

#[test]
fn bad_inputs_are_rejected() {
    let p = LimitProbe::new("v1", "magnetic", &[1e-3, 1e-1]);
    assert_eq!(run_probe(&p), Err(LimitError::InvalidEps));
    let mut q = probe("v1", "magnetic");
    q.wave.alpha = GR::zero();
    assert_eq!(run_probe(&q), Err(LimitError::BadWave));
}

#[test]
fn loglog_text_has_one_line_per_eps() {
    let table = run_probe(&probe("v1", "magnetic")).unwrap();
    let text = table.loglog_text();
    assert_eq!(text.lines().count(), 3);
    assert!(text.starts_with("-1.000000 "));
}
