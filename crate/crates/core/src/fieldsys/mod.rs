//! Linear constant-coefficient field systems, their Galilei covariance, the
//! reduction lattice between them, and potential/field-strength identities.
//!
//! A system is stored through its symbol: `C(∂) F − e·Csrc·j = 0`, with `C` a
//! matrix polynomial in `(∂_t, ∂_x, ∂_y, ∂_z)`.

mod catalogue;
mod covariance;
mod planewave;
mod potentials;
mod reduce;
mod samples;
mod symbol;
mod textfmt;

pub use catalogue::{
    catalogue, galilean_potential_system, negative_control, relativistic_potential_system,
    SYSTEM_NAMES,
};
pub use covariance::{
    boost_covariance, galilean_boost_exists, group_law_holds, rotation_covariance,
    CovarianceReport, FailingIdentity, RotationReport,
};
pub use planewave::{
    boosted_solution_holds, boosted_solution_suite, plane_wave, BoostedSolutionReport,
};
pub use potentials::{
    contract_potential_system, potential_identities, potential_system_check, IdentityCheck,
    PotentialReport, PotentialSystemReport, POTENTIAL_SCHEMES,
};
pub use reduce::{
    apply_constraint, drop_equations, lattice_edges, matches_catalogued, reduce_along, rename,
    subsystem_current_consistent, Edge, EdgeOp, Rename,
};
pub use samples::{velocity_pairs, wave_samples, WaveSample};
pub use symbol::{deriv_name, dspace, parse_deriv, Deriv, PolyMatrix, DT};
pub use textfmt::{export_text, parse_text};

use thiserror::Error;

use crate::exactmath::{ExactMatrix, Ring, GR};
use crate::reps::{finite_boost, levi_civita, BoostMatrix, Component, GalileiRep, Kind, LinearLaw};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FieldSysError {
    #[error("unknown system `{0}`")]
    UnknownSystem(String),
    #[error("unknown component `{0}`")]
    UnknownComponent(String),
    #[error("unknown equation `{0}`")]
    UnknownEquation(String),
    #[error("setting {0:?} to zero is not boost invariant")]
    NotInvariant(Vec<String>),
    #[error("retained equations mix with dropped equations {0:?} under boosts")]
    NotClosed(Vec<String>),
    #[error("system `{0}` is not boost covariant; cannot derive its equation boost")]
    NotCovariant(String),
    #[error("unknown potential scheme `{0}`")]
    UnknownScheme(String),
    #[error("contracted symbol keeps eps^{exponent} at row {row}, column {col}")]
    NegativePower {
        row: usize,
        col: usize,
        exponent: i32,
    },
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// A multiplet of fields or currents with its boost laws.
#[derive(Clone, PartialEq, Debug)]
pub struct Multiplet {
    pub rep: GalileiRep,
    pub laws: Vec<LinearLaw>,
    pub boost: BoostMatrix,
}

impl Multiplet {
    pub fn new(layout: Vec<Component>, laws: Vec<LinearLaw>) -> Self {
        let rep = GalileiRep::from_laws(None, layout, &laws);
        let boost = finite_boost(&rep).expect("law-generated boosts are nilpotent");
        Self { rep, laws, boost }
    }

    pub fn layout(&self) -> &[Component] {
        &self.rep.layout
    }

    pub fn dim(&self) -> usize {
        self.rep.dim()
    }

    pub fn index(&self, name: &str) -> Result<usize, FieldSysError> {
        self.rep
            .component_index(name)
            .ok_or_else(|| FieldSysError::UnknownComponent(name.to_string()))
    }

    /// Per-slot names such as `E_m.x` or `j0_m`.
    pub fn slot_names(&self) -> Vec<String> {
        slot_names(self.layout())
    }
}

pub fn slot_names(layout: &[Component]) -> Vec<String> {
    layout
        .iter()
        .flat_map(|c| match c.kind {
            Kind::Scalar => vec![c.name.clone()],
            Kind::Vector => ["x", "y", "z"]
                .iter()
                .map(|s| format!("{}.{s}", c.name))
                .collect(),
        })
        .collect()
}

/// `C(∂) F − e·Csrc·j = 0` together with the field and current multiplets.
#[derive(Clone, PartialEq, Debug)]
pub struct LinearFieldSystem {
    pub name: String,
    pub field: Multiplet,
    pub current: Multiplet,
    pub coupling: GR,
    /// Equation multiplet layout (each equation is a scalar or a 3-vector).
    pub equations: Vec<Component>,
    pub symbol: PolyMatrix,
    pub source: ExactMatrix<GR>,
}

/// Coefficient matrices of one named equation.
#[derive(Clone, Debug)]
pub struct EquationBlock {
    pub name: String,
    pub ct: ExactMatrix<GR>,
    pub cx: ExactMatrix<GR>,
    pub cy: ExactMatrix<GR>,
    pub cz: ExactMatrix<GR>,
    pub csrc: ExactMatrix<GR>,
}

impl LinearFieldSystem {
    pub fn equation_rows(&self) -> usize {
        self.symbol.rows()
    }

    pub fn equation_names(&self) -> Vec<String> {
        self.equations.iter().map(|c| c.name.clone()).collect()
    }

    pub fn row_names(&self) -> Vec<String> {
        slot_names(&self.equations)
    }

    pub fn equation_index(&self, name: &str) -> Result<usize, FieldSysError> {
        self.equations
            .iter()
            .position(|c| c.name == name)
            .ok_or_else(|| FieldSysError::UnknownEquation(name.into()))
    }

    /// Row indices belonging to the given equations.
    pub fn rows_of(&self, eqs: &[usize]) -> Vec<usize> {
        let offs = crate::reps::offsets(&self.equations);
        let mut v: Vec<usize> = eqs
            .iter()
            .flat_map(|&k| offs[k]..offs[k] + self.equations[k].kind.width())
            .collect();
        v.sort_unstable();
        v
    }

    pub fn is_first_order(&self) -> bool {
        self.symbol.max_order() <= 1
    }

    /// Block view: one `(name, Ct, Cx, Cy, Cz, Csrc)` block per equation.
    pub fn blocks(&self) -> Vec<EquationBlock> {
        let nf = self.field.dim();
        let all: Vec<usize> = (0..nf).collect();
        let nj: Vec<usize> = (0..self.current.dim()).collect();
        (0..self.equations.len())
            .map(|k| {
                let rows = self.rows_of(&[k]);
                let c = |d: Deriv| self.symbol.coeff(&d).submatrix(&rows, &all);
                EquationBlock {
                    name: self.equations[k].name.clone(),
                    ct: c(DT),
                    cx: c(dspace(0)),
                    cy: c(dspace(1)),
                    cz: c(dspace(2)),
                    csrc: self.source.submatrix(&rows, &nj),
                }
            })
            .collect()
    }

    /// Same system with every current set to zero.
    pub fn homogeneous(&self) -> Self {
        let mut s = self.clone();
        s.source = ExactMatrix::zeros(self.source.rows(), self.source.cols());
        s
    }
}

/// One differential term of an equation in the catalogue builder.
#[derive(Clone, Copy, Debug)]
pub enum Term<'a> {
    Dt(&'a str, i64),
    Grad(&'a str, i64),
    Div(&'a str, i64),
    Curl(&'a str, i64),
}

/// Builder input for one equation; `sources` list `(current, c)` with the
/// term `−c·e·current` appearing in the equation.
pub struct EqSpec<'a> {
    pub name: &'a str,
    pub kind: Kind,
    pub terms: &'a [Term<'a>],
    pub sources: &'a [(&'a str, i64)],
}

/// Assembles a system from vector-calculus terms.
pub fn build_system(
    name: &str,
    field: Multiplet,
    current: Multiplet,
    eqs: &[EqSpec<'_>],
) -> LinearFieldSystem {
    let equations: Vec<Component> = eqs
        .iter()
        .map(|e| Component {
            name: e.name.to_string(),
            kind: e.kind,
        })
        .collect();
    let ne: usize = equations.iter().map(|c| c.kind.width()).sum();
    let (nf, nj) = (field.dim(), current.dim());
    let foffs = field.rep.offsets();
    let joffs = current.rep.offsets();
    let mut symbol = PolyMatrix::zeros(ne, nf);
    let mut source = ExactMatrix::<GR>::zeros(ne, nj);
    let mut row0 = 0;
    for e in eqs {
        let comp = |n: &str| {
            let k = field
                .index(n)
                .unwrap_or_else(|_| panic!("{name}: no field {n}"));
            (foffs[k], field.layout()[k].kind)
        };
        for t in e.terms {
            match *t {
                Term::Dt(n, c) => {
                    let (o, kind) = comp(n);
                    assert_eq!(kind, e.kind, "{name}/{}: d/dt must preserve kind", e.name);
                    for i in 0..kind.width() {
                        symbol.add_entry(DT, row0 + i, o + i, GR::int(c));
                    }
                }
                Term::Grad(n, c) => {
                    let (o, kind) = comp(n);
                    assert!(
                        kind == Kind::Scalar && e.kind == Kind::Vector,
                        "{name}/{}: grad",
                        e.name
                    );
                    for i in 0..3 {
                        symbol.add_entry(dspace(i), row0 + i, o, GR::int(c));
                    }
                }
                Term::Div(n, c) => {
                    let (o, kind) = comp(n);
                    assert!(
                        kind == Kind::Vector && e.kind == Kind::Scalar,
                        "{name}/{}: div",
                        e.name
                    );
                    for i in 0..3 {
                        symbol.add_entry(dspace(i), row0, o + i, GR::int(c));
                    }
                }
                Term::Curl(n, c) => {
                    let (o, kind) = comp(n);
                    assert!(
                        kind == Kind::Vector && e.kind == Kind::Vector,
                        "{name}/{}: curl",
                        e.name
                    );
                    for i in 0..3 {
                        for j in 0..3 {
                            for k in 0..3 {
                                let s = levi_civita(i, j, k);
                                if s != 0 {
                                    symbol.add_entry(dspace(j), row0 + i, o + k, GR::int(c * s));
                                }
                            }
                        }
                    }
                }
            }
        }
        for &(n, c) in e.sources {
            let k = current
                .index(n)
                .unwrap_or_else(|_| panic!("{name}: no current {n}"));
            assert_eq!(
                current.layout()[k].kind,
                e.kind,
                "{name}/{}: source kind",
                e.name
            );
            for i in 0..e.kind.width() {
                let cur = source.get(row0 + i, joffs[k] + i).add_ref(&GR::int(c));
                source.set(row0 + i, joffs[k] + i, cur);
            }
        }
        row0 += e.kind.width();
    }
    LinearFieldSystem {
        name: name.to_string(),
        field,
        current,
        coupling: GR::one(),
        equations,
        symbol,
        source,
    }
}
