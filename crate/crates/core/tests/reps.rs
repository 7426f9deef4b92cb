use galilei_core::exactmath::{commutator, ExactMatrix, Ring, VPoly, GR};
use galilei_core::reps::{
    build_rep, check_structure, commutant, direct_sum, enumerate_labels, finite_boost,
    invariant_component_subsets, is_indecomposable, levi_civita, GalileiRep, RepLabel,
};
use proptest::prelude::*;

type V3 = [VPoly; 3];

fn zero3() -> V3 {
    [VPoly::zero(), VPoly::zero(), VPoly::zero()]
}

fn dot(a: &V3, b: &V3) -> VPoly {
    (0..3).fold(VPoly::zero(), |acc, k| acc.add_ref(&a[k].mul_ref(&b[k])))
}

fn cross(a: &V3, b: &V3) -> V3 {
    std::array::from_fn(|i| {
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        a[j].mul_ref(&b[k]).sub_ref(&a[k].mul_ref(&b[j]))
    })
}

fn add3(a: &V3, b: &V3) -> V3 {
    std::array::from_fn(|i| a[i].add_ref(&b[i]))
}

fn smul(s: &VPoly, a: &V3) -> V3 {
    std::array::from_fn(|i| s.mul_ref(&a[i]))
}

/// Hand transcription of the eight finite boost laws, quadratic terms included.
fn transform(names: &[String], state: &[Vec<VPoly>]) -> Vec<Vec<VPoly>> {
    let v: V3 = std::array::from_fn(VPoly::var);
    let v2 = dot(&v, &v);
    let half = GR::frac(1, 2);
    let find = |n: &str| -> Vec<VPoly> {
        names
            .iter()
            .position(|x| x == n)
            .map(|k| state[k].clone())
            .unwrap_or_else(|| {
                if matches!(n, "A" | "B" | "C") {
                    vec![VPoly::zero()]
                } else {
                    zero3().to_vec()
                }
            })
    };
    let vec3 = |n: &str| -> V3 {
        let x = find(n);
        [x[0].clone(), x[1].clone(), x[2].clone()]
    };
    let sc = |n: &str| find(n)[0].clone();
    names
        .iter()
        .map(|n| match n.as_str() {
            "A" => vec![sc("A")],
            "B" => vec![sc("B").add_ref(&dot(&v, &vec3("R")))],
            "C" => vec![sc("C")
                .add_ref(&dot(&v, &vec3("U")))
                .add_ref(&v2.scale(&half).mul_ref(&sc("A")))],
            "R" => vec3("R").to_vec(),
            "U" => add3(&vec3("U"), &smul(&sc("A"), &v)).to_vec(),
            "W" => add3(&vec3("W"), &cross(&v, &vec3("R"))).to_vec(),
            "K" => add3(
                &add3(&vec3("K"), &cross(&v, &vec3("R"))),
                &smul(&sc("A"), &v),
            )
            .to_vec(),
            "N" => {
                let r = vec3("R");
                let t = add3(&vec3("N"), &cross(&v, &vec3("W")));
                let t = add3(&t, &smul(&sc("B"), &v));
                let t = add3(&t, &smul(&dot(&v, &r), &v));
                add3(&t, &smul(&v2.scale(&half.neg_ref()), &r)).to_vec()
            }
            other => panic!("unknown component {other}"),
        })
        .collect()
}

fn law_oracle(rep: &GalileiRep) -> ExactMatrix<VPoly> {
    let names: Vec<String> = rep.layout.iter().map(|c| c.name.clone()).collect();
    let d = rep.dim();
    let mut out = ExactMatrix::zeros(d, d);
    for col in 0..d {
        let mut flat: Vec<VPoly> = vec![VPoly::zero(); d];
        flat[col] = VPoly::one();
        let mut state = Vec::new();
        let mut k = 0;
        for c in &rep.layout {
            let w = c.kind.width();
            state.push(flat[k..k + w].to_vec());
            k += w;
        }
        let image: Vec<VPoly> = transform(&names, &state).into_iter().flatten().collect();
        for (row, p) in image.into_iter().enumerate() {
            out.set(row, col, p);
        }
    }
    out
}

fn all_reps() -> Vec<GalileiRep> {
    enumerate_labels()
        .into_iter()
        .map(|(l, _)| build_rep(l).unwrap())
        .collect()
}

#[test]
fn every_rep_satisfies_all_fifteen_relations() {
    for rep in all_reps() {
        let report = check_structure(&rep);
        assert_eq!(report.relations.len(), 15);
        assert!(report.all_pass(), "{:?}", rep.label);
    }
}

#[test]
fn finite_boost_reproduces_the_transformation_laws() {
    for rep in all_reps() {
        let boost = finite_boost(&rep).unwrap();
        assert_eq!(boost.matrix(), &law_oracle(&rep), "{:?}", rep.label);
    }
}

#[test]
fn boost_generators_are_nilpotent_of_order_three() {
    for rep in all_reps() {
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    assert!(rep.eta[a].mul(&rep.eta[b]).mul(&rep.eta[c]).is_zero());
                }
            }
        }
    }
}

#[test]
fn spin_one_commutator_literal_reading_has_opposite_sign() {
    // (s_a)_bc = i eps_abc as printed closes with -i; the transposed reading used here closes with +i.
    let lit =
        |a: usize| ExactMatrix::from_fn(3, 3, |b, c| GR::i().scale(&GR::int(levi_civita(a, b, c))));
    let c = commutator(&lit(0), &lit(1)).unwrap();
    assert_eq!(c, lit(2).scale(&GR::i().neg_ref()));
}

fn i_at(d: usize, entries: &[(usize, usize)], val: GR) -> ExactMatrix<GR> {
    let mut m = ExactMatrix::zeros(d, d);
    for &(r, c) in entries {
        m.set(r, c, val.clone());
    }
    m
}

#[test]
fn generators_of_the_contracted_four_vector_reps() {
    // D(1,1,0) on (R, B): eta_a = k_a in the lower-left block, k_a = i e_a
    let rep = build_rep(RepLabel::new(1, 1, 0)).unwrap();
    for a in 0..3 {
        assert_eq!(rep.eta[a], i_at(4, &[(3, a)], GR::i()));
    }
    // D(1,1,1) on (U, A): eta_a = -k_a^dagger in the upper-right block
    let rep = build_rep(RepLabel::new(1, 1, 1)).unwrap();
    for a in 0..3 {
        assert_eq!(rep.eta[a], i_at(4, &[(a, 3)], GR::i()));
    }
}

#[test]
fn d121_generators_match_printed_form_up_to_the_sign_of_a() {
    let rep = build_rep(RepLabel::new(1, 2, 1)).unwrap();
    for a in 0..3 {
        // printed: k_a^dagger at (U_a, A) = -i, k_a at (C, U_a) = +i
        let mut printed = i_at(5, &[(4, a)], GR::i());
        printed.set(a, 3, GR::i().neg_ref());
        let flip = ExactMatrix::from_fn(5, 5, |r, c| match (r == c, r) {
            (true, 3) => GR::int(-1),
            (true, _) => GR::one(),
            _ => GR::zero(),
        });
        assert_eq!(flip.mul(&printed).mul(&flip), rep.eta[a]);
    }
}

#[test]
fn indecomposability_of_singles_and_pairs() {
    let reps = all_reps();
    for r in &reps {
        assert!(is_indecomposable(r).indecomposable, "{:?}", r.label);
    }
    let mut pairs = 0;
    for i in 0..reps.len() {
        for j in i + 1..reps.len() {
            let sum = direct_sum(&[&reps[i], &reps[j]]);
            let v = is_indecomposable(&sum);
            assert!(!v.indecomposable);
            let p = v.witness.expect("projector witness");
            assert_eq!(p.mul(&p), p);
            for g in sum.generators() {
                assert_eq!(p.mul(g), g.mul(&p));
            }
            pairs += 1;
        }
    }
    assert_eq!(pairs, 45);
}

#[test]
fn commutant_dimension_matches_dense_nullspace() {
    for label in [
        RepLabel::new(1, 1, 0),
        RepLabel::new(1, 2, 1),
        RepLabel::new(2, 1, 1),
    ] {
        let rep = build_rep(label).unwrap();
        let d = rep.dim();
        // vec(XG - GX) = (I (x) G^T - G (x) I) vec(X), row-major vec
        let mut rows = Vec::new();
        for g in rep.generators() {
            for i in 0..d {
                for j in 0..d {
                    let mut row = vec![GR::zero(); d * d];
                    for k in 0..d {
                        row[i * d + k] = row[i * d + k].add_ref(g.get(k, j));
                        row[k * d + j] = row[k * d + j].sub_ref(g.get(i, k));
                    }
                    rows.push(row);
                }
            }
        }
        let big = ExactMatrix::from_rows(rows);
        let basis = commutant(&rep);
        assert_eq!(basis.len(), d * d - big.rank(), "{label}");
        for x in &basis {
            for g in rep.generators() {
                assert_eq!(x.mul(g), g.mul(x));
            }
        }
    }
}

#[test]
fn invariant_subsets_of_the_extended_field_rep() {
    let rep = build_rep(RepLabel::new(3, 1, 1)).unwrap(); // (B, N, W, R)
    let subsets = invariant_component_subsets(&rep);
    assert!(subsets.contains(&vec![3]));
    assert!(!subsets.contains(&vec![2]));
    assert_eq!(
        invariant_component_subsets(&build_rep(RepLabel::new(0, 1, 0)).unwrap()),
        vec![vec![0]]
    );
}

fn small_rational() -> impl Strategy<Value = GR> {
    (-9i64..=9, 1i64..=5).prop_map(|(n, d)| GR::frac(n, d))
}

fn velocity() -> impl Strategy<Value = [GR; 3]> {
    [small_rational(), small_rational(), small_rational()]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10))]

    #[test]
    fn boosts_compose_additively(idx in 0usize..10, v in velocity(), w in velocity()) {
        let (label, _) = enumerate_labels()[idx].clone();
        let boost = finite_boost(&build_rep(label).unwrap()).unwrap();
        let sum: [GR; 3] = std::array::from_fn(|a| v[a].add_ref(&w[a]));
        prop_assert_eq!(boost.eval(&v).mul(&boost.eval(&w)), boost.eval(&sum));
    }
}
