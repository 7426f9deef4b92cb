//! The ten indecomposable vector/scalar representations D(m,n,λ) of hg(1,3).
//!
//! Every representation is generated from its linear boost laws: a law such
//! as `B' = B + v·R` contributes the linear part of the finite boost, and the
//! generators follow from the global convention
//!
//! ```text
//! Λ(v) = exp(−i v·η) = I + X + X²/2,   X = −i Σ_a v_a η_a
//! ```
//!
//! so the quadratic terms of the laws (`½v²A`, `v(v·R) − ½v²R`) are never
//! written down — they fall out of the exponential.

mod decompose;

pub use decompose::{commutant, invariant_component_subsets, is_indecomposable, Indecomposability};

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::exactmath::{commutator, ExactMatrix, Ring, VPoly, GR};

/// Human-readable statement of the boost sign convention, embedded in reports.
pub const CONVENTION: &str =
    "Lambda(v) = exp(-i v.eta); (s_a)_bc = -i eps_abc; boosted frame: d/dt -> d/dt + v.grad";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepError {
    #[error("unknown representation label `{0}`")]
    UnknownLabel(String),
    #[error("boost generators are not nilpotent of order 3")]
    NonNilpotent,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, PartialOrd, Ord)]
pub enum Kind {
    Scalar,
    Vector,
}

impl Kind {
    pub fn width(self) -> usize {
        match self {
            Kind::Scalar => 1,
            Kind::Vector => 3,
        }
    }
}

/// A named slot group of a multiplet: one scalar or one 3-vector.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct Component {
    pub name: String,
    pub kind: Kind,
}

impl Component {
    pub fn scalar(name: &str) -> Self {
        Self {
            name: name.to_string(),
            kind: Kind::Scalar,
        }
    }
    pub fn vector(name: &str) -> Self {
        Self {
            name: name.to_string(),
            kind: Kind::Vector,
        }
    }
}

/// The eight quantities of the catalogue.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub enum ComponentName {
    A,
    B,
    C,
    R,
    U,
    W,
    K,
    N,
}

impl ComponentName {
    pub fn kind(self) -> Kind {
        match self {
            Self::A | Self::B | Self::C => Kind::Scalar,
            _ => Kind::Vector,
        }
    }

    pub fn component(self) -> Component {
        Component {
            name: format!("{self:?}"),
            kind: self.kind(),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, PartialOrd, Ord)]
pub struct RepLabel {
    pub m: u8,
    pub n: u8,
    pub lambda: u8,
}

impl RepLabel {
    pub const fn new(m: u8, n: u8, lambda: u8) -> Self {
        Self { m, n, lambda }
    }
}

impl fmt::Display for RepLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "D({},{},{})", self.m, self.n, self.lambda)
    }
}

/// Accepts `D(1,2,1)`, `(1,2,1)` and `1,2,1`; the label must be catalogued.
impl FromStr for RepLabel {
    type Err = RepError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || RepError::UnknownLabel(s.to_string());
        let t = s.trim();
        let t = t.strip_prefix('D').unwrap_or(t);
        let t = t.trim_start_matches('(').trim_end_matches(')');
        let nums: Vec<u8> = t
            .split(',')
            .map(|x| x.trim().parse().map_err(|_| bad()))
            .collect::<Result<_, _>>()?;
        let [m, n, lambda] = nums[..] else {
            return Err(bad());
        };
        let label = RepLabel { m, n, lambda };
        if CATALOGUE.iter().any(|e| e.label == label) {
            Ok(label)
        } else {
            Err(bad())
        }
    }
}

/// How a source component feeds a target component under a boost.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Coupling {
    /// scalar target += coef · v·(vector source)
    Dot,
    /// vector target += coef · v (scalar source)
    Scale,
    /// vector target += coef · v×(vector source)
    Cross,
}

/// One linear term of a finite boost law; indices refer to the layout.
#[derive(Clone, PartialEq, Debug)]
pub struct LinearLaw {
    pub target: usize,
    pub source: usize,
    pub coupling: Coupling,
    pub coef: GR,
}

impl LinearLaw {
    pub fn new(target: usize, source: usize, coupling: Coupling, coef: i64) -> Self {
        Self {
            target,
            source,
            coupling,
            coef: GR::int(coef),
        }
    }
}

pub struct CatalogueEntry {
    pub label: RepLabel,
    pub layout: &'static [ComponentName],
    laws: &'static [(usize, usize, Coupling)],
}

use ComponentName as CN;
use Coupling::*;

/// The ten representations in catalogue order, with layouts following the
/// column vectors used for their generator matrices.
pub static CATALOGUE: [CatalogueEntry; 10] = [
    CatalogueEntry {
        label: RepLabel::new(0, 1, 0),
        layout: &[CN::A],
        laws: &[],
    },
    CatalogueEntry {
        label: RepLabel::new(1, 0, 0),
        layout: &[CN::R],
        laws: &[],
    },
    CatalogueEntry {
        label: RepLabel::new(1, 1, 0),
        layout: &[CN::R, CN::B],
        laws: &[(1, 0, Dot)],
    },
    CatalogueEntry {
        label: RepLabel::new(1, 1, 1),
        layout: &[CN::U, CN::A],
        laws: &[(0, 1, Scale)],
    },
    CatalogueEntry {
        label: RepLabel::new(1, 2, 1),
        layout: &[CN::U, CN::A, CN::C],
        laws: &[(0, 1, Scale), (2, 0, Dot)],
    },
    CatalogueEntry {
        label: RepLabel::new(2, 0, 0),
        layout: &[CN::W, CN::R],
        laws: &[(0, 1, Cross)],
    },
    CatalogueEntry {
        label: RepLabel::new(2, 1, 0),
        layout: &[CN::R, CN::W, CN::B],
        laws: &[(1, 0, Cross), (2, 0, Dot)],
    },
    CatalogueEntry {
        label: RepLabel::new(2, 1, 1),
        layout: &[CN::A, CN::K, CN::R],
        laws: &[(1, 2, Cross), (1, 0, Scale)],
    },
    CatalogueEntry {
        label: RepLabel::new(2, 2, 1),
        layout: &[CN::A, CN::B, CN::K, CN::R],
        laws: &[(1, 3, Dot), (2, 3, Cross), (2, 0, Scale)],
    },
    CatalogueEntry {
        label: RepLabel::new(3, 1, 1),
        layout: &[CN::B, CN::N, CN::W, CN::R],
        laws: &[(0, 3, Dot), (2, 3, Cross), (1, 2, Cross), (1, 0, Scale)],
    },
];

/// The ten labels paired with their layouts.
pub fn enumerate_labels() -> Vec<(RepLabel, Vec<ComponentName>)> {
    CATALOGUE
        .iter()
        .map(|e| (e.label, e.layout.to_vec()))
        .collect()
}

/// A representation of hg(1,3) on a multiplet of scalars and 3-vectors.
#[derive(Clone, PartialEq, Debug)]
pub struct GalileiRep {
    pub label: Option<RepLabel>,
    pub layout: Vec<Component>,
    pub s: [ExactMatrix<GR>; 3],
    pub eta: [ExactMatrix<GR>; 3],
}

/// Levi-Civita symbol on indices 0..3.
pub fn levi_civita(a: usize, b: usize, c: usize) -> i64 {
    match (a, b, c) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1,
        _ => 0,
    }
}

/// Spin-one matrix, `(s_a)_bc = −i ε_abc`, so that `[s_1, s_2] = i s_3`.
pub fn spin1(a: usize) -> ExactMatrix<GR> {
    ExactMatrix::from_fn(3, 3, |b, c| GR::i().scale(&GR::int(-levi_civita(a, b, c))))
}

/// Start offset of each component.
pub fn offsets(layout: &[Component]) -> Vec<usize> {
    layout
        .iter()
        .scan(0, |acc, c| {
            let o = *acc;
            *acc += c.kind.width();
            Some(o)
        })
        .collect()
}

pub fn layout_dim(layout: &[Component]) -> usize {
    layout.iter().map(|c| c.kind.width()).sum()
}

/// Rotation generators of a layout: one spin-1 block per vector, zero per scalar.
pub fn rotation_generators(layout: &[Component]) -> [ExactMatrix<GR>; 3] {
    let d = layout_dim(layout);
    let offs = offsets(layout);
    std::array::from_fn(|a| {
        let mut m = ExactMatrix::zeros(d, d);
        let s = spin1(a);
        for (c, o) in layout.iter().zip(&offs) {
            if c.kind == Kind::Vector {
                for i in 0..3 {
                    for j in 0..3 {
                        m.set(o + i, o + j, s.get(i, j).clone());
                    }
                }
            }
        }
        m
    })
}

/// Linear boost parts `X_a` (so that `Λ = exp(Σ v_a X_a)`) from a law table.
pub fn linear_parts(layout: &[Component], laws: &[LinearLaw]) -> [ExactMatrix<GR>; 3] {
    let d = layout_dim(layout);
    let offs = offsets(layout);
    let mut x: [ExactMatrix<GR>; 3] = std::array::from_fn(|_| ExactMatrix::zeros(d, d));
    for law in laws {
        let (t, s) = (&layout[law.target], &layout[law.source]);
        let (to, so) = (offs[law.target], offs[law.source]);
        let add = |m: &mut ExactMatrix<GR>, r: usize, c: usize, v: GR| {
            let cur = m.get(r, c).add_ref(&v);
            m.set(r, c, cur);
        };
        match law.coupling {
            Dot => {
                assert!(
                    t.kind == Kind::Scalar && s.kind == Kind::Vector,
                    "Dot law needs scalar <- vector"
                );
                for a in 0..3 {
                    add(&mut x[a], to, so + a, law.coef.clone());
                }
            }
            Scale => {
                assert!(
                    t.kind == Kind::Vector && s.kind == Kind::Scalar,
                    "Scale law needs vector <- scalar"
                );
                for a in 0..3 {
                    add(&mut x[a], to + a, so, law.coef.clone());
                }
            }
            Cross => {
                assert!(
                    t.kind == Kind::Vector && s.kind == Kind::Vector,
                    "Cross law needs vector <- vector"
                );
                for a in 0..3 {
                    for dd in 0..3 {
                        for c in 0..3 {
                            let e = levi_civita(dd, a, c);
                            if e != 0 {
                                add(&mut x[a], to + dd, so + c, law.coef.scale(&GR::int(e)));
                            }
                        }
                    }
                }
            }
        }
    }
    x
}

impl GalileiRep {
    /// Builds generators from linear boost laws: `η_a = i X_a`.
    pub fn from_laws(label: Option<RepLabel>, layout: Vec<Component>, laws: &[LinearLaw]) -> Self {
        let s = rotation_generators(&layout);
        let eta = linear_parts(&layout, laws).map(|x| x.scale(&GR::i()));
        Self {
            label,
            layout,
            s,
            eta,
        }
    }

    pub fn dim(&self) -> usize {
        self.s[0].rows()
    }

    pub fn offsets(&self) -> Vec<usize> {
        offsets(&self.layout)
    }

    /// Slot indices belonging to the given components.
    pub fn slots(&self, components: &[usize]) -> Vec<usize> {
        let offs = self.offsets();
        let mut v: Vec<usize> = components
            .iter()
            .flat_map(|&c| offs[c]..offs[c] + self.layout[c].kind.width())
            .collect();
        v.sort_unstable();
        v
    }

    pub fn component_index(&self, name: &str) -> Option<usize> {
        self.layout.iter().position(|c| c.name == name)
    }

    pub fn generators(&self) -> Vec<&ExactMatrix<GR>> {
        self.s.iter().chain(self.eta.iter()).collect()
    }
}

/// Builds a catalogued representation.
pub fn build_rep(label: RepLabel) -> Result<GalileiRep, RepError> {
    let entry = CATALOGUE
        .iter()
        .find(|e| e.label == label)
        .ok_or_else(|| RepError::UnknownLabel(label.to_string()))?;
    let layout: Vec<Component> = entry.layout.iter().map(|c| c.component()).collect();
    let laws: Vec<LinearLaw> = entry
        .laws
        .iter()
        .map(|&(t, s, c)| LinearLaw::new(t, s, c, 1))
        .collect();
    Ok(GalileiRep::from_laws(Some(label), layout, &laws))
}

/// Block-diagonal sum; the label is dropped.
pub fn direct_sum(reps: &[&GalileiRep]) -> GalileiRep {
    let layout = reps.iter().flat_map(|r| r.layout.iter().cloned()).collect();
    let blocks = |f: &dyn Fn(&GalileiRep) -> &ExactMatrix<GR>| {
        let ms: Vec<&ExactMatrix<GR>> = reps.iter().map(|r| f(r)).collect();
        ExactMatrix::block_diag(&ms)
    };
    GalileiRep {
        label: None,
        layout,
        s: std::array::from_fn(|a| blocks(&|r| &r.s[a])),
        eta: std::array::from_fn(|a| blocks(&|r| &r.eta[a])),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationCheck {
    pub relation: String,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct StructureReport {
    pub relations: Vec<RelationCheck>,
}

impl StructureReport {
    pub fn all_pass(&self) -> bool {
        self.relations.iter().all(|r| r.pass)
    }
}

/// Sum `i Σ_c ε_abc M_c`.
fn i_eps_combo(a: usize, b: usize, ms: &[ExactMatrix<GR>; 3]) -> ExactMatrix<GR> {
    let d = ms[0].rows();
    (0..3).fold(ExactMatrix::zeros(d, d), |acc, c| {
        let e = levi_civita(a, b, c);
        if e == 0 {
            acc
        } else {
            acc.add(&ms[c].scale(&GR::i().scale(&GR::int(e))))
        }
    })
}

/// The 15 independent hg(1,3) relations:
/// `[S_a,S_b] = iε_abc S_c`, `[η_a,S_b] = iε_abc η_c`, `[η_a,η_b] = 0`.
pub fn check_structure(rep: &GalileiRep) -> StructureReport {
    let mut relations = Vec::with_capacity(15);
    let holds = |lhs: Result<ExactMatrix<GR>, _>, rhs: ExactMatrix<GR>| lhs.is_ok_and(|l| l == rhs);
    for (a, b) in [(0, 1), (1, 2), (0, 2)] {
        relations.push(RelationCheck {
            relation: format!("[S{},S{}]", a + 1, b + 1),
            pass: holds(commutator(&rep.s[a], &rep.s[b]), i_eps_combo(a, b, &rep.s)),
        });
    }
    for a in 0..3 {
        for b in 0..3 {
            relations.push(RelationCheck {
                relation: format!("[eta{},S{}]", a + 1, b + 1),
                pass: holds(
                    commutator(&rep.eta[a], &rep.s[b]),
                    i_eps_combo(a, b, &rep.eta),
                ),
            });
        }
    }
    let d = rep.dim();
    for (a, b) in [(0, 1), (1, 2), (0, 2)] {
        relations.push(RelationCheck {
            relation: format!("[eta{},eta{}]", a + 1, b + 1),
            pass: holds(
                commutator(&rep.eta[a], &rep.eta[b]),
                ExactMatrix::zeros(d, d),
            ),
        });
    }
    StructureReport { relations }
}

/// Finite boost `Λ(v)` with polynomial entries in v.
#[derive(Clone, PartialEq, Debug)]
pub struct BoostMatrix(pub ExactMatrix<VPoly>);

impl BoostMatrix {
    pub fn identity(n: usize) -> Self {
        Self(ExactMatrix::identity(n))
    }

    pub fn matrix(&self) -> &ExactMatrix<VPoly> {
        &self.0
    }

    pub fn eval(&self, v: &[GR; 3]) -> ExactMatrix<GR> {
        self.0.eval(v)
    }

    pub fn dim(&self) -> usize {
        self.0.rows()
    }
}

/// `Λ(v) = I + X + X²/2` with `X = −i Σ v_a η_a`, after checking that all
/// triple products `η_a η_b η_c` vanish (so the series terminates).
pub fn finite_boost(rep: &GalileiRep) -> Result<BoostMatrix, RepError> {
    boost_from_generators(&rep.eta)
}

pub fn boost_from_generators(eta: &[ExactMatrix<GR>; 3]) -> Result<BoostMatrix, RepError> {
    for a in 0..3 {
        for b in 0..3 {
            let ab = eta[a].mul(&eta[b]);
            for c in 0..3 {
                if !ab.mul(&eta[c]).is_zero() {
                    return Err(RepError::NonNilpotent);
                }
            }
        }
    }
    let d = eta[0].rows();
    let minus_i = GR::i().neg_ref();
    let x = (0..3).fold(ExactMatrix::<VPoly>::zeros(d, d), |acc, a| {
        let term = ExactMatrix::<VPoly>::lift(&eta[a].scale(&minus_i)).scale_by(&VPoly::var(a));
        acc.add(&term)
    });
    let x2 = x.mul(&x).scale(&GR::frac(1, 2));
    Ok(BoostMatrix(ExactMatrix::identity(d).add(&x).add(&x2)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ten_labels() {
        let labels = enumerate_labels();
        assert_eq!(labels.len(), 10);
        assert!(labels.contains(&(RepLabel::new(0, 1, 0), vec![CN::A])));
        let (_, l121) = labels
            .iter()
            .find(|(l, _)| *l == RepLabel::new(1, 2, 1))
            .unwrap();
        let mut names = l121.clone();
        names.sort_by_key(|c| format!("{c:?}"));
        assert_eq!(names, vec![CN::A, CN::C, CN::U]);
    }

    #[test]
    fn spin_matrices_close_with_plus_i() {
        let c = commutator(&spin1(0), &spin1(1)).unwrap();
        assert_eq!(c, spin1(2).scale(&GR::i()));
    }

    #[test]
    fn label_parsing() {
        assert_eq!(
            "D(1,2,1)".parse::<RepLabel>().unwrap(),
            RepLabel::new(1, 2, 1)
        );
        assert_eq!("3,1,1".parse::<RepLabel>().unwrap(), RepLabel::new(3, 1, 1));
        assert!("D(3,3,3)".parse::<RepLabel>().is_err());
        assert!(build_rep(RepLabel::new(2, 2, 0)).is_err());
    }

    #[test]
    fn perturbed_generator_breaks_abelian_boosts() {
        let mut rep = build_rep(RepLabel::new(2, 2, 1)).unwrap();
        rep.eta[0] = rep.eta[0].add(&rep.s[0]);
        let report = check_structure(&rep);
        let bad = report
            .relations
            .iter()
            .find(|r| r.relation == "[eta1,eta2]")
            .unwrap();
        assert!(!bad.pass);
    }

    #[test]
    fn boost_at_zero_is_identity() {
        for (label, _) in enumerate_labels() {
            let rep = build_rep(label).unwrap();
            let b = finite_boost(&rep).unwrap();
            let zero = [GR::zero(), GR::zero(), GR::zero()];
            assert_eq!(b.eval(&zero), ExactMatrix::identity(rep.dim()));
        }
    }

    #[test]
    fn non_nilpotent_guard() {
        let mut rep = build_rep(RepLabel::new(1, 0, 0)).unwrap();
        rep.eta = rep.s.clone();
        assert_eq!(finite_boost(&rep), Err(RepError::NonNilpotent));
    }
}
