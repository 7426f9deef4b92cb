use super::{
    build_system, EqSpec, FieldSysError, LinearFieldSystem, Multiplet, PolyMatrix, Term, DT,
};
use crate::exactmath::{ExactMatrix, Ring, GR};
use crate::reps::{Component, Coupling, Kind, LinearLaw};

use Coupling::{Cross, Dot, Scale};
use Kind::{Scalar, Vector};
use Term::{Curl, Div, Dt, Grad};

pub const SYSTEM_NAMES: [&str; 11] = [
    "magnetic",
    "electric",
    "maxwell",
    "scalar_gradient",
    "extended",
    "reduced_R0",
    "electrostatic",
    "subsystem_8",
    "scalar_system",
    "magnetostatic",
    "reduced_W",
];

type LawSpec<'a> = (&'a str, &'a str, Coupling, i64);

pub(crate) fn multiplet(layout: &[(&str, Kind)], laws: &[LawSpec<'_>]) -> Multiplet {
    let comps: Vec<Component> = layout
        .iter()
        .map(|&(n, kind)| Component {
            name: n.to_string(),
            kind,
        })
        .collect();
    let idx = |n: &str| {
        comps
            .iter()
            .position(|c| c.name == n)
            .unwrap_or_else(|| panic!("no component {n}"))
    };
    let laws = laws
        .iter()
        .map(|&(t, s, c, k)| LinearLaw::new(idx(t), idx(s), c, k))
        .collect();
    Multiplet::new(comps, laws)
}

fn eq<'a>(
    name: &'a str,
    kind: Kind,
    terms: &'a [Term<'a>],
    sources: &'a [(&'a str, i64)],
) -> EqSpec<'a> {
    EqSpec {
        name,
        kind,
        terms,
        sources,
    }
}

/// Looks up a catalogued system by its stable name.
pub fn catalogue(name: &str) -> Result<LinearFieldSystem, FieldSysError> {
    let sys = match name {
        "magnetic" => build_system(
            name,
            multiplet(
                &[("H_m", Vector), ("E_m", Vector)],
                &[("E_m", "H_m", Cross, -1)],
            ),
            multiplet(
                &[("j_m", Vector), ("j0_m", Scalar)],
                &[("j0_m", "j_m", Dot, 1)],
            ),
            &[
                eq("faraday", Vector, &[Curl("E_m", 1), Dt("H_m", -1)], &[]),
                eq("gauss", Scalar, &[Div("E_m", 1)], &[("j0_m", 1)]),
                eq("ampere", Vector, &[Curl("H_m", 1)], &[("j_m", 1)]),
                eq("div_h", Scalar, &[Div("H_m", 1)], &[]),
            ],
        ),
        "electric" => build_system(
            name,
            multiplet(
                &[("H_e", Vector), ("E_e", Vector)],
                &[("H_e", "E_e", Cross, 1)],
            ),
            multiplet(
                &[("j_e", Vector), ("j4_e", Scalar)],
                &[("j_e", "j4_e", Scale, 1)],
            ),
            &[
                eq(
                    "ampere",
                    Vector,
                    &[Curl("H_e", 1), Dt("E_e", 1)],
                    &[("j_e", 1)],
                ),
                eq("gauss", Scalar, &[Div("E_e", 1)], &[("j4_e", 1)]),
                eq("curl_e", Vector, &[Curl("E_e", 1)], &[]),
                eq("div_h", Scalar, &[Div("H_e", 1)], &[]),
            ],
        ),
        "maxwell" => build_system(
            name,
            multiplet(&[("E", Vector), ("H", Vector)], &[]),
            multiplet(&[("j", Vector), ("j0", Scalar)], &[]),
            &[
                eq("faraday", Vector, &[Curl("E", 1), Dt("H", -1)], &[]),
                eq("div_h", Scalar, &[Div("H", 1)], &[]),
                eq("ampere", Vector, &[Curl("H", 1), Dt("E", 1)], &[("j", 1)]),
                eq("gauss", Scalar, &[Div("E", 1)], &[("j0", 1)]),
            ],
        ),
        "scalar_gradient" => build_system(
            name,
            multiplet(&[("F", Vector), ("F0", Scalar)], &[]),
            multiplet(&[("j4", Scalar)], &[]),
            &[
                eq("div", Scalar, &[Dt("F0", 1), Div("F", 1)], &[("j4", 1)]),
                eq("curl", Vector, &[Curl("F", 1)], &[]),
                eq("grad", Vector, &[Dt("F", 1), Grad("F0", -1)], &[]),
            ],
        ),
        "extended" => build_system(
            name,
            multiplet(
                &[("R", Vector), ("W", Vector), ("N", Vector), ("B", Scalar)],
                &[
                    ("B", "R", Dot, 1),
                    ("W", "R", Cross, 1),
                    ("N", "W", Cross, 1),
                    ("N", "B", Scale, 1),
                ],
            ),
            multiplet(
                &[("j", Vector), ("j0", Scalar), ("j4", Scalar)],
                &[("j", "j4", Scale, 1), ("j0", "j", Dot, -1)],
            ),
            &[
                eq("J0", Scalar, &[Div("N", 1), Dt("B", -1)], &[("j0", 1)]),
                eq("J", Vector, &[Curl("W", 1), Grad("B", 1)], &[("j", 1)]),
                eq("J4", Scalar, &[Div("R", 1)], &[("j4", 1)]),
                eq("N", Vector, &[Dt("W", 1), Curl("N", 1)], &[]),
                eq("W", Vector, &[Dt("R", 1), Grad("B", -1)], &[]),
                eq("R", Vector, &[Curl("R", 1)], &[]),
                eq("B", Scalar, &[Div("W", 1)], &[]),
            ],
        ),
        "reduced_R0" => build_system(
            name,
            multiplet(
                &[("Htilde", Vector), ("Etilde", Vector), ("S", Scalar)],
                &[("Etilde", "Htilde", Cross, 1), ("Etilde", "S", Scale, 1)],
            ),
            multiplet(&[("j", Vector), ("j0", Scalar)], &[("j0", "j", Dot, -1)]),
            &[
                eq(
                    "faraday",
                    Vector,
                    &[Dt("Htilde", 1), Curl("Etilde", 1)],
                    &[],
                ),
                eq("ampere", Vector, &[Curl("Htilde", 1)], &[("j", 1)]),
                eq("div_h", Scalar, &[Div("Htilde", 1)], &[]),
                eq(
                    "gauss",
                    Scalar,
                    &[Div("Etilde", 1), Dt("S", -1)],
                    &[("j0", 1)],
                ),
                eq("grad_s", Vector, &[Grad("S", 1)], &[]),
            ],
        ),
        "electrostatic" => build_system(
            name,
            multiplet(&[("Ehat", Vector)], &[]),
            multiplet(&[("rho", Scalar)], &[]),
            &[
                eq("curl", Vector, &[Curl("Ehat", 1)], &[]),
                eq("gauss", Scalar, &[Div("Ehat", 1)], &[("rho", 1)]),
            ],
        ),
        "subsystem_8" => build_system(
            name,
            multiplet(
                &[("R", Vector), ("W", Vector), ("B", Scalar)],
                &[("W", "R", Cross, 1), ("B", "R", Dot, 1)],
            ),
            multiplet(&[("j", Vector), ("j4", Scalar)], &[("j", "j4", Scale, 1)]),
            &[
                eq("J", Vector, &[Curl("W", 1), Dt("R", 1)], &[("j", 1)]),
                eq("J4", Scalar, &[Div("R", 1)], &[("j4", 1)]),
                eq("W", Vector, &[Dt("R", 1), Grad("B", -1)], &[]),
                eq("R", Vector, &[Curl("R", 1)], &[]),
                eq("B", Scalar, &[Div("W", 1)], &[]),
            ],
        ),
        "scalar_system" => build_system(
            name,
            multiplet(&[("R", Vector), ("B", Scalar)], &[("B", "R", Dot, 1)]),
            multiplet(&[("j4", Scalar)], &[]),
            &[
                eq("J4", Scalar, &[Div("R", 1)], &[("j4", 1)]),
                eq("W", Vector, &[Dt("R", 1), Grad("B", -1)], &[]),
                eq("R", Vector, &[Curl("R", 1)], &[]),
            ],
        ),
        "magnetostatic" => build_system(
            name,
            multiplet(&[("Hhat", Vector)], &[]),
            multiplet(&[("j", Vector)], &[]),
            &[
                eq("curl", Vector, &[Curl("Hhat", 1)], &[("j", 1)]),
                eq("div", Scalar, &[Div("Hhat", 1)], &[]),
            ],
        ),
        "reduced_W" => build_system(
            name,
            multiplet(&[("Hhat", Vector), ("S", Scalar)], &[]),
            multiplet(&[("j", Vector)], &[]),
            &[
                eq("curl", Vector, &[Curl("Hhat", 1)], &[("j", 1)]),
                eq("div", Scalar, &[Div("Hhat", 1)], &[]),
                eq("grad_s", Vector, &[Grad("S", 1)], &[]),
            ],
        ),
        other => return Err(FieldSysError::UnknownSystem(other.to_string())),
    };
    Ok(sys)
}

/// Equation whose `∂_t` term is sign-flipped in the negative control of a system.
const CONTROL_ROWS: [(&str, &str); 5] = [
    ("magnetic", "faraday"),
    ("electric", "ampere"),
    ("extended", "N"),
    ("reduced_R0", "faraday"),
    ("subsystem_8", "J"),
];

/// The catalogued system with the time derivative of one equation negated;
/// defined for the five systems that carry a designated control.
pub fn negative_control(name: &str) -> Option<LinearFieldSystem> {
    let (_, eq_name) = CONTROL_ROWS.iter().find(|(s, _)| *s == name)?;
    let mut sys = catalogue(name).ok()?;
    let k = sys.equation_index(eq_name).ok()?;
    let rows = sys.rows_of(&[k]);
    let ct = sys.symbol.coeff(&DT);
    let mut delta = ExactMatrix::zeros(ct.rows(), ct.cols());
    for &r in &rows {
        for c in 0..ct.cols() {
            delta.set(r, c, ct.get(r, c).scale(&GR::int(-2)));
        }
    }
    sys.symbol.add_term(DT, &delta);
    sys.name = format!("{name}:flip_dt_{eq_name}");
    Some(sys)
}

fn sq(i: usize) -> [u8; 4] {
    let mut d = [0; 4];
    d[i] = 2;
    d
}

/// Relativistic potential system on `(A, A⁰, A⁴)` in momentum symbols, the
/// time slot holding `p₀`: five wave rows `(p² − p₀²)·A = −e·j` and the
/// Lorentz-gauge row `p₀A⁰ − p·A = 0`. `scalar_source_sign` is the sign of
/// the `j⁴` source relative to the four-vector rows (−1 makes all five rows
/// alike).
pub fn relativistic_potential_system(scalar_source_sign: i64) -> LinearFieldSystem {
    let field = multiplet(&[("A", Vector), ("A0", Scalar), ("A4", Scalar)], &[]);
    let current = multiplet(&[("j", Vector), ("j0", Scalar), ("j4", Scalar)], &[]);
    let mut symbol = PolyMatrix::zeros(6, 5);
    for r in 0..5 {
        for i in 1..4 {
            symbol.add_entry(sq(i), r, r, GR::one());
        }
        symbol.add_entry(sq(0), r, r, GR::int(-1));
    }
    symbol.add_entry(DT, 5, 3, GR::one());
    for i in 0..3 {
        symbol.add_entry(super::dspace(i), 5, i, GR::int(-1));
    }
    let mut source = ExactMatrix::zeros(6, 5);
    for r in 0..4 {
        source.set(r, r, GR::int(-1));
    }
    source.set(4, 4, GR::int(scalar_source_sign));
    LinearFieldSystem {
        name: "relativistic_potential".into(),
        field,
        current,
        coupling: GR::one(),
        equations: vec![
            Component::vector("wave_A"),
            Component::scalar("wave_A0"),
            Component::scalar("wave_A4"),
            Component::scalar("gauge"),
        ],
        symbol,
        source,
    }
}

/// The contracted potential system `p²A′ = −e j′`, `p_t A′⁴ = p·A′` in
/// momentum symbols, with the potential and current boost laws of the
/// five-component representation. `j0_dot_sign` is the coefficient of `v·j`
/// in the `j⁰` law.
pub fn galilean_potential_system(j0_dot_sign: i64) -> LinearFieldSystem {
    let field = multiplet(
        &[("A", Vector), ("A4", Scalar), ("A0", Scalar)],
        &[("A", "A4", Scale, 1), ("A0", "A", Dot, 1)],
    );
    let current = multiplet(
        &[("j", Vector), ("j4", Scalar), ("j0", Scalar)],
        &[("j", "j4", Scale, 1), ("j0", "j", Dot, j0_dot_sign)],
    );
    let mut symbol = PolyMatrix::zeros(6, 5);
    for r in 0..5 {
        for i in 1..4 {
            symbol.add_entry(sq(i), r, r, GR::one());
        }
    }
    symbol.add_entry(DT, 5, 3, GR::one());
    for i in 0..3 {
        symbol.add_entry(super::dspace(i), 5, i, GR::int(-1));
    }
    let source = ExactMatrix::<GR>::identity(5).neg();
    let source = ExactMatrix::vstack(&[&source, &ExactMatrix::zeros(1, 5)]);
    LinearFieldSystem {
        name: "galilean_potential".into(),
        field,
        current,
        coupling: GR::one(),
        equations: vec![
            Component::vector("wave_A"),
            Component::scalar("wave_A4"),
            Component::scalar("wave_A0"),
            Component::scalar("gauge"),
        ],
        symbol,
        source,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_name_builds_and_is_first_order() {
        for n in SYSTEM_NAMES {
            let s = catalogue(n).unwrap();
            assert!(s.is_first_order(), "{n}");
            assert_eq!(s.symbol.rows(), s.source.rows());
        }
        assert!(matches!(
            catalogue("nope"),
            Err(FieldSysError::UnknownSystem(_))
        ));
    }

    #[test]
    fn magnetic_has_four_equations_and_eight_rows() {
        let s = catalogue("magnetic").unwrap();
        assert_eq!(s.equation_names(), ["faraday", "gauss", "ampere", "div_h"]);
        assert_eq!(s.equation_rows(), 8);
        let faraday = &s.blocks()[0];
        // -∂_t H_m
        assert_eq!(*faraday.ct.get(0, 0), GR::int(-1));
        // (∇×E)_x = ∂_y E_z − ∂_z E_y
        assert_eq!(*faraday.cy.get(0, 5), GR::one());
        assert_eq!(*faraday.cz.get(0, 4), GR::int(-1));
        assert_eq!(*s.blocks()[1].csrc.get(0, 3), GR::one());
    }

    #[test]
    fn extended_has_seven_equations() {
        let s = catalogue("extended").unwrap();
        assert_eq!(s.equation_names(), ["J0", "J", "J4", "N", "W", "R", "B"]);
        assert_eq!(s.field.dim(), 10);
    }

    #[test]
    fn controls_only_touch_one_equation() {
        for (name, _) in CONTROL_ROWS {
            let base = catalogue(name).unwrap();
            let flipped = negative_control(name).unwrap();
            let diff = base.symbol.coeff(&DT).sub(&flipped.symbol.coeff(&DT));
            assert!(!diff.is_zero());
            assert_eq!(
                base.symbol.coeff(&super::super::dspace(0)),
                flipped.symbol.coeff(&super::super::dspace(0))
            );
        }
        assert!(negative_control("maxwell").is_none());
    }
}
