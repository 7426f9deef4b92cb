//! One line per acceptance criterion; exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use galilei_core::contraction::{
    contract, direct_sum as lorentz_sum, four_vector_rep, identify, parse_scheme_matrix,
    scalar_rep, ContractionError, ContractionScheme,
};
use galilei_core::exactmath::{ExactMatrix, Ring, VPoly, GR};
use galilei_core::fieldsys::{
    boost_covariance, boosted_solution_suite, catalogue, group_law_holds, lattice_edges,
    matches_catalogued, negative_control, potential_identities, reduce_along, rotation_covariance,
    velocity_pairs, wave_samples, POTENTIAL_SCHEMES, SYSTEM_NAMES,
};
use galilei_core::limits::{run_probe, LimitProbe, PAIRS};
use galilei_core::reps::{
    build_rep, check_structure, direct_sum, enumerate_labels, finite_boost, is_indecomposable,
    GalileiRep, RepLabel,
};

struct Outcome {
    pass: bool,
    detail: String,
}

type Criterion = (&'static str, fn() -> Outcome);

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn all_reps() -> Vec<GalileiRep> {
    enumerate_labels()
        .into_iter()
        .map(|(l, _)| build_rep(l).expect("catalogued label"))
        .collect()
}

fn structure() -> Outcome {
    let t = Instant::now();
    let reps = all_reps();
    let ok = reps
        .iter()
        .filter(|r| check_structure(r).all_pass())
        .count();
    let secs = t.elapsed().as_secs_f64();
    outcome(
        ok == 10 && reps.len() == 10 && secs < 5.0,
        format!("{ok}/10 reps satisfy all relations in {secs:.2} s"),
    )
}

type V3 = [VPoly; 3];

fn dot(a: &V3, b: &V3) -> VPoly {
    (0..3).fold(VPoly::zero(), |acc, k| acc.add_ref(&a[k].mul_ref(&b[k])))
}

fn cross(a: &V3, b: &V3) -> V3 {
    std::array::from_fn(|i| {
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        a[j].mul_ref(&b[k]).sub_ref(&a[k].mul_ref(&b[j]))
    })
}

fn axpy(s: &VPoly, a: &V3, b: &V3) -> V3 {
    std::array::from_fn(|i| s.mul_ref(&a[i]).add_ref(&b[i]))
}

fn add3(a: &V3, b: &V3) -> V3 {
    std::array::from_fn(|i| a[i].add_ref(&b[i]))
}

/// The eight finite boost laws, written out component by component.
fn boost_laws(rep: &GalileiRep) -> ExactMatrix<VPoly> {
    let d = rep.dim();
    let v: V3 = std::array::from_fn(VPoly::var);
    let v2h = dot(&v, &v).scale(&GR::frac(1, 2));
    let mut out = ExactMatrix::zeros(d, d);
    for col in 0..d {
        let unit = |name: &str| -> Vec<VPoly> {
            let Some(k) = rep.layout.iter().position(|c| c.name == name) else {
                return vec![
                    VPoly::zero();
                    if matches!(name, "A" | "B" | "C") {
                        1
                    } else {
                        3
                    }
                ];
            };
            let o = rep.offsets()[k];
            (0..rep.layout[k].kind.width())
                .map(|j| {
                    if o + j == col {
                        VPoly::one()
                    } else {
                        VPoly::zero()
                    }
                })
                .collect()
        };
        let vec3 = |n: &str| -> V3 {
            let x = unit(n);
            [x[0].clone(), x[1].clone(), x[2].clone()]
        };
        let sc = |n: &str| unit(n)[0].clone();
        let mut image = Vec::new();
        for c in &rep.layout {
            let part: Vec<VPoly> = match c.name.as_str() {
                "A" => vec![sc("A")],
                "B" => vec![sc("B").add_ref(&dot(&v, &vec3("R")))],
                "C" => vec![sc("C")
                    .add_ref(&dot(&v, &vec3("U")))
                    .add_ref(&v2h.mul_ref(&sc("A")))],
                "R" => vec3("R").to_vec(),
                "U" => axpy(&sc("A"), &v, &vec3("U")).to_vec(),
                "W" => add3(&vec3("W"), &cross(&v, &vec3("R"))).to_vec(),
                "K" => axpy(&sc("A"), &v, &add3(&vec3("K"), &cross(&v, &vec3("R")))).to_vec(),
                "N" => {
                    let r = vec3("R");
                    let t = add3(&vec3("N"), &cross(&v, &vec3("W")));
                    let t = axpy(&sc("B"), &v, &t);
                    let t = axpy(&dot(&v, &r), &v, &t);
                    axpy(&v2h.neg_ref(), &r, &t).to_vec()
                }
                other => panic!("no law for {other}"),
            };
            image.extend(part);
        }
        for (row, p) in image.into_iter().enumerate() {
            out.set(row, col, p);
        }
    }
    out
}

fn boost_laws_suite() -> Outcome {
    let reps = all_reps();
    let bad: Vec<String> = reps
        .iter()
        .filter(|r| {
            finite_boost(r)
                .map(|b| *b.matrix() != boost_laws(r))
                .unwrap_or(true)
        })
        .map(|r| format!("{:?}", r.label))
        .collect();
    outcome(
        bad.is_empty(),
        format!(
            "{}/10 reps reproduce the laws with zero residual {bad:?}",
            10 - bad.len()
        ),
    )
}

fn indecomposability() -> Outcome {
    let reps = all_reps();
    let singles = reps
        .iter()
        .filter(|r| is_indecomposable(r).indecomposable)
        .count();
    let mut pairs = 0;
    let mut witnessed = 0;
    for i in 0..reps.len() {
        for j in i + 1..reps.len() {
            pairs += 1;
            let sum = direct_sum(&[&reps[i], &reps[j]]);
            let v = is_indecomposable(&sum);
            let ok = !v.indecomposable
                && v.witness.is_some_and(|p| {
                    p.mul(&p) == p && sum.generators().iter().all(|g| p.mul(g) == g.mul(&p))
                });
            witnessed += ok as usize;
        }
    }
    outcome(
        singles == 10 && pairs == 45 && witnessed == 45,
        format!("{singles}/10 indecomposable, {witnessed}/{pairs} sums split by a projector"),
    )
}

fn contraction_suite() -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;
    for (scheme, label) in [
        (ContractionScheme::v1(), RepLabel::new(1, 1, 0)),
        (ContractionScheme::v2(), RepLabel::new(1, 1, 1)),
    ] {
        let g = contract(&four_vector_rep(), &scheme);
        let target = build_rep(label).expect("catalogued");
        let hit = g.as_ref().is_ok_and(|g| {
            g.s == target.s && g.eta == target.eta && identify(g).label == Some(label)
        });
        ok &= hit;
        notes.push(format!(
            "{} -> {label}: {}",
            scheme.name,
            if hit { "exact" } else { "mismatch" }
        ));
    }
    let five = lorentz_sum(&[&four_vector_rep(), &scalar_rep()]);
    let v3_ok = contract(&five, &ContractionScheme::v3()).is_ok_and(|g| {
        let id = identify(&g);
        let target = build_rep(RepLabel::new(1, 2, 1)).expect("catalogued");
        // input layout is (vector, scalar, scalar) at offsets 0, 3, 4
        let widths = [3, 1, 1];
        let offs = target.offsets();
        let mut t = ExactMatrix::zeros(5, 5);
        let mut o = 0;
        for (k, w) in widths.iter().enumerate() {
            for j in 0..*w {
                t.set(offs[id.permutation[k]] + j, o + j, id.scales[k].clone());
            }
            o += w;
        }
        let ti = t.inverse().expect("invertible basis change");
        id.label == Some(RepLabel::new(1, 2, 1))
            && (0..3).all(|a| {
                t.mul(&g.eta[a]).mul(&ti) == target.eta[a] && t.mul(&g.s[a]).mul(&ti) == target.s[a]
            })
    });
    ok &= v3_ok;
    notes.push(format!(
        "v3 -> D(1,2,1): {}",
        if v3_ok {
            "after basis change"
        } else {
            "mismatch"
        }
    ));
    let trivial = contract(&four_vector_rep(), &ContractionScheme::identity(4))
        == Err(ContractionError::TrivialBoosts);
    let over = parse_scheme_matrix("eps^2 0 0 0\n0 eps^2 0 0\n0 0 eps^2 0\n0 0 0 1")
        .ok()
        .and_then(|v| ContractionScheme::from_matrix("over", v).ok())
        .is_some_and(|s| {
            matches!(
                contract(&four_vector_rep(), &s),
                Err(ContractionError::NegativePower { .. })
            )
        });
    ok &= trivial && over;
    notes.push(format!(
        "identity TrivialBoosts: {trivial}, eps^2 NegativePower: {over}"
    ));
    outcome(ok, notes.join("; "))
}

fn covariance_suite() -> Outcome {
    let mut failed = Vec::new();
    for name in SYSTEM_NAMES {
        let sys = catalogue(name).expect("catalogued");
        let boost = boost_covariance(&sys);
        let rot = rotation_covariance(&sys).pass;
        let group = boost
            .m
            .as_ref()
            .is_some_and(|m| group_law_holds(m, &velocity_pairs(0xC0DE, 10)));
        if !(boost.covariant && rot && group) {
            let why = match &boost.failing_identity {
                Some(f) => format!("{name} (boost: {} | {} | {})", f.row, f.column, f.residual),
                None => format!("{name} (rotation {rot}, group law {group})"),
            };
            failed.push(why);
        }
    }
    let n = SYSTEM_NAMES.len();
    outcome(
        failed.is_empty(),
        format!(
            "{}/{n} systems covariant; failing: {}",
            n - failed.len(),
            failed.join(", ")
        ),
    )
}

fn negative_controls() -> Outcome {
    let names = [
        "magnetic",
        "electric",
        "extended",
        "reduced_R0",
        "subsystem_8",
    ];
    let rejected: Vec<&str> = names
        .iter()
        .copied()
        .filter(|n| negative_control(n).is_some_and(|c| !boost_covariance(&c).covariant))
        .collect();
    outcome(
        rejected.len() == 5,
        format!("{}/5 sign-flipped systems rejected", rejected.len()),
    )
}

fn lattice() -> Outcome {
    let expected = [
        ("extended", "reduced_R0"),
        ("reduced_R0", "magnetic"),
        ("magnetic", "electrostatic"),
        ("extended", "subsystem_8"),
        ("subsystem_8", "scalar_system"),
        ("subsystem_8", "electric"),
        ("subsystem_8", "reduced_W"),
        ("electric", "magnetostatic"),
    ];
    let edges = lattice_edges();
    let mut got: Vec<(&str, &str)> = edges.iter().map(|e| (e.from, e.to)).collect();
    got.sort_unstable();
    let mut want = expected.to_vec();
    want.sort_unstable();
    let matched = edges
        .iter()
        .filter(|e| {
            reduce_along(e).is_ok_and(|r| catalogue(e.to).is_ok_and(|t| matches_catalogued(&r, &t)))
        })
        .count();
    outcome(
        got == want && matched == 8,
        format!("{matched}/8 edges reduce onto their catalogued targets"),
    )
}

fn potentials() -> Outcome {
    let mut ok = 0;
    for s in POTENTIAL_SCHEMES {
        if potential_identities(s).is_ok_and(|r| r.all_vanish()) {
            ok += 1;
        }
    }
    outcome(
        ok == POTENTIAL_SCHEMES.len(),
        format!(
            "{ok}/{} schemes vanish identically",
            POTENTIAL_SCHEMES.len()
        ),
    )
}

fn boosted_solutions() -> Outcome {
    let samples = wave_samples(0x5EED, 20);
    let mut failed = Vec::new();
    let mut vacuous = Vec::new();
    for name in SYSTEM_NAMES {
        let sys = catalogue(name).expect("catalogued").homogeneous();
        let r = boosted_solution_suite(&sys, &samples);
        if !r.holds() {
            failed.push(format!(
                "{name} ({}/{} amplitudes fail)",
                r.failures, r.amplitudes
            ));
        } else if r.amplitudes == 0 {
            vacuous.push(name);
        }
    }
    let n = SYSTEM_NAMES.len();
    outcome(
        failed.is_empty(),
        format!(
            "{}/{n} systems hold; failing: {}; no real plane waves on these samples: {}",
            n - failed.len(),
            failed.join(", "),
            vacuous.join(", ")
        ),
    )
}

fn limit_probes() -> Outcome {
    let t = Instant::now();
    let mut notes = Vec::new();
    let mut ok = true;
    for (scheme, target) in PAIRS {
        let probe = LimitProbe::new(scheme, target, &[1e-1, 1e-2, 1e-3]);
        match run_probe(&probe) {
            Ok(table) => {
                let (s, e) = (
                    table.slope.unwrap_or(f64::NAN),
                    table.expected_order.map_or(f64::NAN, f64::from),
                );
                ok &= (s - e).abs() <= 0.1;
                notes.push(format!("{scheme}->{target} slope {s:.3} (exact order {e})"));
            }
            Err(err) => {
                ok = false;
                notes.push(format!("{scheme}->{target}: {err}"));
            }
        }
    }
    let secs = t.elapsed().as_secs_f64();
    ok &= secs < 60.0;
    outcome(ok, format!("{}; {secs:.2} s", notes.join(", ")))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("structure suite", structure),
        ("boost-law suite", boost_laws_suite),
        ("indecomposability", indecomposability),
        ("contraction suite", contraction_suite),
        ("covariance suite", covariance_suite),
        ("negative controls", negative_controls),
        ("reduction lattice", lattice),
        ("potential identities", potentials),
        ("boosted-solution property", boosted_solutions),
        ("limit probes", limit_probes),
    ];
    let mut failures = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        failures += (!o.pass) as usize;
        println!(
            "criterion {:>2} {} {name}: {}",
            k + 1,
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
    }
    println!("acceptance: {}/10 criteria pass", 10 - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
