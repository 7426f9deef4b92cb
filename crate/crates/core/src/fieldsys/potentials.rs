use super::catalogue::multiplet;
use super::{
    boost_covariance, build_system, catalogue, galilean_potential_system,
    relativistic_potential_system, slot_names, CovarianceReport, EqSpec, FieldSysError,
    LinearFieldSystem, PolyMatrix, Term,
};
use crate::contraction::ContractionScheme;
use crate::exactmath::{eps_limit, EpsSeries, ExactMatrix, MathError, Ring, GR};
use crate::reps::Kind::{Scalar, Vector};

use Term::{Curl, Dt, Grad};

pub const POTENTIAL_SCHEMES: [&str; 4] = [
    "magnetic_pot",
    "electric_pot",
    "relativistic",
    "extended_pot",
];

/// One homogeneous equation after substituting the strengths.
#[derive(Clone, Debug, PartialEq)]
pub struct IdentityCheck {
    pub system: String,
    pub equation: String,
    pub vanishes: bool,
    /// Nonzero rows of the substituted expression, `row: terms`.
    pub residual: Vec<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PotentialReport {
    pub scheme: String,
    /// The identities that must hold.
    pub checks: Vec<IdentityCheck>,
    /// Equations as printed whose substitution is reported, not asserted.
    pub printed_forms: Vec<IdentityCheck>,
    /// Change of each strength under `A → A + ∇φ`, nonzero rows only.
    pub gauge_change: Vec<String>,
}

impl PotentialReport {
    pub fn all_vanish(&self) -> bool {
        self.checks.iter().all(|c| c.vanishes)
    }
}

fn eq<'a>(name: &'a str, kind: crate::reps::Kind, terms: &'a [Term<'a>]) -> EqSpec<'a> {
    EqSpec {
        name,
        kind,
        terms,
        sources: &[],
    }
}

/// Strength definitions as a map from potentials to the target field slots.
fn strengths(scheme: &str) -> Result<LinearFieldSystem, FieldSysError> {
    let none = || multiplet(&[], &[]);
    let s = match scheme {
        "magnetic_pot" => build_system(
            scheme,
            multiplet(&[("A", Vector), ("A0", Scalar)], &[]),
            none(),
            &[
                eq("H_m", Vector, &[Curl("A", 1)]),
                eq("E_m", Vector, &[Dt("A", -1), Grad("A0", -1)]),
            ],
        ),
        "electric_pot" => build_system(
            scheme,
            multiplet(&[("A", Vector), ("A4", Scalar)], &[]),
            none(),
            &[
                eq("H_e", Vector, &[Curl("A", 1)]),
                eq("E_e", Vector, &[Grad("A4", -1)]),
            ],
        ),
        "relativistic" => build_system(
            scheme,
            multiplet(&[("A", Vector), ("A0", Scalar), ("A4", Scalar)], &[]),
            none(),
            &[
                eq("E", Vector, &[Dt("A", -1), Grad("A0", -1)]),
                eq("H", Vector, &[Curl("A", 1)]),
                eq("F", Vector, &[Grad("A4", 1)]),
                eq("F0", Scalar, &[Dt("A4", 1)]),
            ],
        ),
        "extended_pot" => build_system(
            scheme,
            multiplet(&[("A", Vector), ("A0", Scalar), ("A4", Scalar)], &[]),
            none(),
            &[
                eq("R", Vector, &[Grad("A4", 1)]),
                eq("W", Vector, &[Curl("A", 1)]),
                eq("N", Vector, &[Dt("A", -1), Grad("A0", -1)]),
                eq("B", Scalar, &[Dt("A4", 1)]),
            ],
        ),
        other => return Err(FieldSysError::UnknownScheme(other.to_string())),
    };
    Ok(s)
}

/// Rows of `sys` for the named equations, with columns reordered to the
/// strength slots `cols`.
fn equation_rows(
    sys: &LinearFieldSystem,
    names: &[&str],
    cols: &[usize],
) -> Result<LinearFieldSystem, FieldSysError> {
    let idx: Vec<usize> = names
        .iter()
        .map(|n| sys.equation_index(n))
        .collect::<Result<_, _>>()?;
    let rows = sys.rows_of(&idx);
    Ok(LinearFieldSystem {
        equations: idx.iter().map(|&k| sys.equations[k].clone()).collect(),
        symbol: sys.symbol.select(&rows, cols),
        source: ExactMatrix::zeros(rows.len(), 0),
        ..sys.clone()
    })
}

fn substitute(eqs: &LinearFieldSystem, d: &PolyMatrix, pot_names: &[String]) -> Vec<IdentityCheck> {
    let prod = eqs.symbol.mul(d);
    let offs = crate::reps::offsets(&eqs.equations);
    let names = slot_names(&eqs.equations);
    eqs.equations
        .iter()
        .enumerate()
        .map(|(k, c)| {
            let residual: Vec<String> = (offs[k]..offs[k] + c.kind.width())
                .filter_map(|r| {
                    let s = prod.render_row(r, pot_names);
                    (s != "0").then(|| format!("{}: {s}", names[r]))
                })
                .collect();
            IdentityCheck {
                system: eqs.name.clone(),
                equation: c.name.clone(),
                vanishes: residual.is_empty(),
                residual,
            }
        })
        .collect()
}

/// Field-slot permutation taking `sys`'s field layout to the strength order.
fn columns_for(
    sys: &LinearFieldSystem,
    strength: &LinearFieldSystem,
) -> Result<Vec<usize>, FieldSysError> {
    let mut cols = Vec::new();
    for c in &strength.equations {
        let k = sys.field.index(&c.name)?;
        cols.extend(sys.field.rep.slots(&[k]));
    }
    Ok(cols)
}

/// Faraday's law with the time derivative entering with a plus sign, the
/// form implied by the strength definitions.
fn faraday_plus(sys: &LinearFieldSystem, e: &str, h: &str) -> LinearFieldSystem {
    let mut s = build_system(
        &sys.name,
        sys.field.clone(),
        multiplet(&[], &[]),
        &[eq("faraday (+dt)", Vector, &[Curl(e, 1), Dt(h, 1)])],
    );
    s.name = sys.name.clone();
    s
}

/// Substitutes the strength definitions of a potential scheme into the
/// homogeneous equations of the matching systems.
pub fn potential_identities(scheme: &str) -> Result<PotentialReport, FieldSysError> {
    let d = strengths(scheme)?;
    let pot_names = d.field.slot_names();
    let mut checks = Vec::new();
    let mut printed_forms = Vec::new();
    let run = |sys: &LinearFieldSystem,
               names: &[&str],
               out: &mut Vec<IdentityCheck>|
     -> Result<(), FieldSysError> {
        let cols = columns_for(sys, &d)?;
        let rows = equation_rows(sys, names, &cols)?;
        out.extend(substitute(&rows, &d.symbol, &pot_names));
        Ok(())
    };
    // the strength tables list every field of their target systems, so
    // column selection doubles as a layout check
    match scheme {
        "magnetic_pot" => {
            let sys = catalogue("magnetic")?;
            run(
                &faraday_plus(&sys, "E_m", "H_m"),
                &["faraday (+dt)"],
                &mut checks,
            )?;
            run(&sys, &["div_h"], &mut checks)?;
            run(&sys, &["faraday"], &mut printed_forms)?;
        }
        "electric_pot" => {
            let sys = catalogue("electric")?;
            run(&sys, &["curl_e", "div_h"], &mut checks)?;
        }
        "relativistic" => {
            let mx = catalogue("maxwell")?;
            let sg = catalogue("scalar_gradient")?;
            let split = |names: &[&str]| -> Result<LinearFieldSystem, FieldSysError> {
                let f: Vec<usize> = names
                    .iter()
                    .map(|n| d.equation_index(n))
                    .collect::<Result<_, _>>()?;
                let rows = d.rows_of(&f);
                let all: Vec<usize> = (0..d.field.dim()).collect();
                Ok(LinearFieldSystem {
                    equations: f.iter().map(|&k| d.equations[k].clone()).collect(),
                    symbol: d.symbol.select(&rows, &all),
                    ..d.clone()
                })
            };
            for (sys, part, names, printed) in [
                (
                    faraday_plus(&mx, "E", "H"),
                    split(&["E", "H"])?,
                    vec!["faraday (+dt)"],
                    false,
                ),
                (mx.clone(), split(&["E", "H"])?, vec!["div_h"], false),
                (sg, split(&["F", "F0"])?, vec!["curl", "grad"], false),
                (mx, split(&["E", "H"])?, vec!["faraday"], true),
            ] {
                let cols = columns_for(&sys, &part)?;
                let rows = equation_rows(&sys, &names, &cols)?;
                let target = if printed {
                    &mut printed_forms
                } else {
                    &mut checks
                };
                target.extend(substitute(&rows, &part.symbol, &pot_names));
            }
        }
        "extended_pot" => {
            let sys = catalogue("extended")?;
            run(&sys, &["N", "W", "R", "B"], &mut checks)?;
        }
        _ => unreachable!("strengths() rejects unknown schemes"),
    }

    // A → A + ∇φ: the shift of the potential column, then its image
    let k = d.field.index("A")?;
    let o = d.field.rep.offsets()[k];
    let mut shift = PolyMatrix::zeros(d.field.dim(), 1);
    for i in 0..3 {
        shift.add_entry(super::dspace(i), o + i, 0, GR::one());
    }
    let change = d.symbol.mul(&shift);
    let strength_names = d.row_names();
    let phi = ["phi".to_string()];
    let gauge_change = (0..change.rows())
        .filter_map(|r| {
            let s = change.render_row(r, &phi);
            (s != "0").then(|| format!("{}: {s}", strength_names[r]))
        })
        .collect();
    Ok(PotentialReport {
        scheme: scheme.to_string(),
        checks,
        printed_forms,
        gauge_change,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct PotentialSystemReport {
    /// Contracting the relativistic system reproduces the Galilean one.
    pub recovered: bool,
    /// Exponent of the surviving negative power when the scalar source keeps
    /// the sign opposite to the four-vector rows.
    pub opposite_scalar_sign: Option<i32>,
    /// Covariance of the contracted system under the potential and current laws.
    pub covariance: CovarianceReport,
}

fn eps_power(k: u8) -> EpsSeries {
    EpsSeries::monomial(GR::one(), k as i32)
}

/// Contracts the relativistic potential system at the symbol level:
/// `p₀ → ε p_t`, fields and currents conjugated by the five-dimensional
/// scheme, the gauge row left as is, then `ε → 0` term by term.
pub fn contract_potential_system(
    rel: &LinearFieldSystem,
) -> Result<LinearFieldSystem, FieldSysError> {
    let v3 = ContractionScheme::v3();
    let rows = rel.equation_rows();
    let mut w = ExactMatrix::<EpsSeries>::identity(rows);
    for r in 0..5 {
        for c in 0..5 {
            w.set(r, c, v3.v.get(r, c).clone());
        }
    }
    let limit = |m: &ExactMatrix<EpsSeries>| {
        eps_limit(m).map_err(|e| match e {
            MathError::NegativePower { row, col, exponent } => {
                FieldSysError::NegativePower { row, col, exponent }
            }
            other => unreachable!("eps_limit only fails on negative powers: {other}"),
        })
    };
    let mut symbol = PolyMatrix::zeros(rows, 5);
    for (d, c) in rel.symbol.terms() {
        let scaled = ExactMatrix::<EpsSeries>::lift(c).scale_by(&eps_power(d[0]));
        symbol.add_term(*d, &limit(&w.mul(&scaled).mul(&v3.v_inv))?);
    }
    let src = limit(&w.mul(&ExactMatrix::lift(&rel.source)).mul(&v3.v_inv))?;
    let galilean = galilean_potential_system(1);
    Ok(LinearFieldSystem {
        name: "contracted_potential".into(),
        symbol,
        source: src,
        ..galilean
    })
}

/// Stores the relativistic potential system, contracts it, compares with the
/// Galilean potential system and checks the latter's covariance.
pub fn potential_system_check() -> PotentialSystemReport {
    let target = galilean_potential_system(1);
    let recovered = match contract_potential_system(&relativistic_potential_system(-1)) {
        Ok(c) => c.symbol == target.symbol && c.source == target.source,
        Err(_) => false,
    };
    let opposite_scalar_sign = match contract_potential_system(&relativistic_potential_system(1)) {
        Err(FieldSysError::NegativePower { exponent, .. }) => Some(exponent),
        _ => None,
    };
    PotentialSystemReport {
        recovered,
        opposite_scalar_sign,
        covariance: boost_covariance(&target),
    }
}
