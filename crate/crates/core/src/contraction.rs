//! Inönü–Wigner contraction of Lorentz representations.
//!
//! Boost generators are rescaled by ε, conjugated by an ε-dependent matrix
//! `V(ε)`, and the limit ε→0 is taken exactly on Laurent series:
//!
//! ```text
//! S'_a = lim V S_a V⁻¹,   η_a = lim ε V S_0a V⁻¹
//! ```

use std::collections::VecDeque;

use serde::Serialize;
use thiserror::Error;

use crate::exactmath::{eps_limit, EpsSeries, ExactMatrix, Field, MathError, Ring, GR};
use crate::reps::{
    self, build_rep, rotation_generators, spin1, Component, GalileiRep, Kind, RepLabel,
    StructureReport,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ContractionError {
    #[error("scheme dimension {scheme} does not match representation dimension {rep}")]
    DimensionMismatch { scheme: usize, rep: usize },
    #[error("limit does not exist: {generator} entry ({row},{col}) has eps^{exponent}")]
    NegativePower {
        generator: String,
        row: usize,
        col: usize,
        exponent: i32,
    },
    #[error("limit exists but all boost generators vanish")]
    TrivialBoosts,
    #[error("contracted generators violate the hg(1,3) relations")]
    RelationsViolated,
    #[error("scheme matrix times its inverse is not the identity")]
    BadInverse,
    #[error("scheme matrix is not invertible over Laurent polynomials")]
    NotInvertible,
    #[error("cannot parse scheme: {0}")]
    Parse(String),
}

/// so(1,3) representation: rotations `S_a = ½ε_abc S_bc` and boosts `S_0a`.
#[derive(Clone, PartialEq, Debug)]
pub struct LorentzRep {
    pub s_rot: [ExactMatrix<GR>; 3],
    pub s_boost: [ExactMatrix<GR>; 3],
}

impl LorentzRep {
    pub fn dim(&self) -> usize {
        self.s_rot[0].rows()
    }

    /// `[S_a,S_b] = iεS_c`, `[S_a,S_0b] = iεS_0c`, `[S_0a,S_0b] = −iεS_c`.
    pub fn check_so13(&self) -> StructureReport {
        let mut relations = Vec::new();
        let combo = |a: usize, b: usize, ms: &[ExactMatrix<GR>; 3], sign: i64| {
            let d = ms[0].rows();
            (0..3).fold(ExactMatrix::zeros(d, d), |acc, c| {
                let e = reps::levi_civita(a, b, c) * sign;
                if e == 0 {
                    acc
                } else {
                    acc.add(&ms[c].scale(&GR::i().scale(&GR::int(e))))
                }
            })
        };
        let comm = |x: &ExactMatrix<GR>, y: &ExactMatrix<GR>| x.mul(y).sub(&y.mul(x));
        for a in 0..3 {
            for b in 0..3 {
                if a < b {
                    relations.push(reps::RelationCheck {
                        relation: format!("[S{},S{}]", a + 1, b + 1),
                        pass: comm(&self.s_rot[a], &self.s_rot[b]) == combo(a, b, &self.s_rot, 1),
                    });
                    relations.push(reps::RelationCheck {
                        relation: format!("[S0{},S0{}]", a + 1, b + 1),
                        pass: comm(&self.s_boost[a], &self.s_boost[b])
                            == combo(a, b, &self.s_rot, -1),
                    });
                }
                relations.push(reps::RelationCheck {
                    relation: format!("[S{},S0{}]", a + 1, b + 1),
                    pass: comm(&self.s_rot[a], &self.s_boost[b]) == combo(a, b, &self.s_boost, 1),
                });
            }
        }
        StructureReport { relations }
    }

    pub fn conjugate(&self, w: &ExactMatrix<GR>, w_inv: &ExactMatrix<GR>) -> Self {
        let c = |m: &ExactMatrix<GR>| w.mul(m).mul(w_inv);
        Self {
            s_rot: self.s_rot.each_ref().map(c),
            s_boost: self.s_boost.each_ref().map(c),
        }
    }
}

/// The vector representation D(½,½): spin one plus a scalar, with
/// `S_0a = [[0, −k_a†], [k_a, 0]]` and `k_a = i e_aᵀ`.
pub fn four_vector_rep() -> LorentzRep {
    let layout = [Component::vector("x"), Component::scalar("x0")];
    let s_rot = rotation_generators(&layout);
    let s_boost = std::array::from_fn(|a| {
        let mut m = ExactMatrix::zeros(4, 4);
        m.set(a, 3, GR::i());
        m.set(3, a, GR::i());
        m
    });
    LorentzRep { s_rot, s_boost }
}

/// The one-dimensional trivial representation D(0,0).
pub fn scalar_rep() -> LorentzRep {
    let z = || ExactMatrix::zeros(1, 1);
    LorentzRep {
        s_rot: std::array::from_fn(|_| z()),
        s_boost: std::array::from_fn(|_| z()),
    }
}

/// Block-diagonal sum. Panics on an empty list.
pub fn direct_sum(reps: &[&LorentzRep]) -> LorentzRep {
    assert!(!reps.is_empty(), "direct sum of nothing");
    let bd = |f: &dyn Fn(&LorentzRep) -> &ExactMatrix<GR>| {
        let ms: Vec<&ExactMatrix<GR>> = reps.iter().map(|r| f(r)).collect();
        ExactMatrix::block_diag(&ms)
    };
    LorentzRep {
        s_rot: std::array::from_fn(|a| bd(&|r| &r.s_rot[a])),
        s_boost: std::array::from_fn(|a| bd(&|r| &r.s_boost[a])),
    }
}

/// An ε-dependent similarity transformation together with its inverse.
#[derive(Clone, PartialEq, Debug)]
pub struct ContractionScheme {
    pub name: String,
    pub v: ExactMatrix<EpsSeries>,
    pub v_inv: ExactMatrix<EpsSeries>,
}

fn eps_pow(c: GR, k: i32) -> EpsSeries {
    EpsSeries::monomial(c, k)
}

fn diag_eps(exps: &[i32]) -> ExactMatrix<EpsSeries> {
    let n = exps.len();
    ExactMatrix::from_fn(n, n, |r, c| {
        if r == c {
            eps_pow(GR::one(), exps[r])
        } else {
            EpsSeries::zero()
        }
    })
}

impl ContractionScheme {
    /// Pairs `v` with a given inverse after checking `V·V⁻¹ = I`.
    pub fn with_inverse(
        name: &str,
        v: ExactMatrix<EpsSeries>,
        v_inv: ExactMatrix<EpsSeries>,
    ) -> Result<Self, ContractionError> {
        let prod = v
            .checked_mul(&v_inv)
            .map_err(|_| ContractionError::BadInverse)?;
        if prod != ExactMatrix::identity(v.rows()) {
            return Err(ContractionError::BadInverse);
        }
        Ok(Self {
            name: name.to_string(),
            v,
            v_inv,
        })
    }

    /// Computes the inverse by adjugate; the determinant must be a monomial in ε.
    pub fn from_matrix(name: &str, v: ExactMatrix<EpsSeries>) -> Result<Self, ContractionError> {
        let v_inv = v
            .adjugate_inverse()
            .map_err(|_| ContractionError::NotInvertible)?;
        Self::with_inverse(name, v, v_inv)
    }

    /// `diag(ε, ε, ε, 1)`.
    pub fn v1() -> Self {
        Self::with_inverse("v1", diag_eps(&[1, 1, 1, 0]), diag_eps(&[-1, -1, -1, 0])).expect("v1")
    }

    /// `diag(1, 1, 1, ε)`.
    pub fn v2() -> Self {
        Self::with_inverse("v2", diag_eps(&[0, 0, 0, 1]), diag_eps(&[0, 0, 0, -1])).expect("v2")
    }

    /// Five-dimensional scheme for four-vector ⊕ scalar, with the printed inverse.
    pub fn v3() -> Self {
        let h = GR::frac(1, 2);
        let one = GR::one();
        let mut v = diag_eps(&[0, 0, 0]);
        v = ExactMatrix::block_diag(&[&v, &ExactMatrix::zeros(2, 2)]);
        v.set(3, 3, eps_pow(h.clone(), 1));
        v.set(3, 4, eps_pow(h.clone(), 1));
        v.set(4, 3, eps_pow(one.neg_ref(), -1));
        v.set(4, 4, eps_pow(one.clone(), -1));
        let mut w = ExactMatrix::block_diag(&[&diag_eps(&[0, 0, 0]), &ExactMatrix::zeros(2, 2)]);
        w.set(3, 3, eps_pow(one.clone(), -1));
        w.set(3, 4, eps_pow(h.neg_ref(), 1));
        w.set(4, 3, eps_pow(one, -1));
        w.set(4, 4, eps_pow(h, 1));
        Self::with_inverse("v3", v, w).expect("printed V3 inverse")
    }

    pub fn identity(n: usize) -> Self {
        Self::with_inverse(
            "identity",
            ExactMatrix::identity(n),
            ExactMatrix::identity(n),
        )
        .expect("identity")
    }

    pub fn by_name(name: &str) -> Option<Self> {
        match name {
            "v1" => Some(Self::v1()),
            "v2" => Some(Self::v2()),
            "v3" => Some(Self::v3()),
            _ => None,
        }
    }

    pub fn dim(&self) -> usize {
        self.v.rows()
    }

    /// Conjugates by a constant matrix: `W V W⁻¹`.
    pub fn conjugate(&self, w: &ExactMatrix<GR>, w_inv: &ExactMatrix<GR>) -> Self {
        let (w, wi) = (
            ExactMatrix::<EpsSeries>::lift(w),
            ExactMatrix::<EpsSeries>::lift(w_inv),
        );
        Self {
            name: format!("{}^W", self.name),
            v: w.mul(&self.v).mul(&wi),
            v_inv: w.mul(&self.v_inv).mul(&wi),
        }
    }
}

/// Parses one ε-monomial such as `1`, `-1/2*eps`, `(1+i)*eps^-1`, `eps^2`.
pub fn parse_eps_monomial(s: &str) -> Result<EpsSeries, ContractionError> {
    let bad = || ContractionError::Parse(format!("bad entry `{s}`"));
    let t = s.trim();
    let (coef, power) = match t.find("eps") {
        None => (t, 0),
        Some(k) => {
            let rest = &t[k + 3..];
            let p = if rest.is_empty() {
                1
            } else {
                rest.strip_prefix('^')
                    .ok_or_else(bad)?
                    .parse::<i32>()
                    .map_err(|_| bad())?
            };
            let c = t[..k].trim_end_matches('*');
            (c, p)
        }
    };
    let coef = coef.trim_start_matches('(').trim_end_matches(')');
    let c: GR = match coef {
        "" | "+" => GR::one(),
        "-" => GR::int(-1),
        c => c.parse().map_err(|_| bad())?,
    };
    Ok(EpsSeries::monomial(c, power))
}

/// Whitespace-separated ε-monomials, one matrix row per line; `#` starts a comment.
pub fn parse_scheme_matrix(text: &str) -> Result<ExactMatrix<EpsSeries>, ContractionError> {
    let rows: Vec<Vec<EpsSeries>> = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(|l| l.split_whitespace().map(parse_eps_monomial).collect())
        .collect::<Result<_, _>>()?;
    let n = rows.len();
    if n == 0 || rows.iter().any(|r| r.len() != n) {
        return Err(ContractionError::Parse(
            "scheme matrix must be square and nonempty".into(),
        ));
    }
    Ok(ExactMatrix::from_rows(rows))
}

/// Rotation and boost generators of a Galilei representation.
#[derive(Clone, PartialEq, Debug)]
pub struct GalileiGenerators {
    pub s: [ExactMatrix<GR>; 3],
    pub eta: [ExactMatrix<GR>; 3],
}

impl GalileiGenerators {
    pub fn dim(&self) -> usize {
        self.s[0].rows()
    }
}

impl From<&GalileiRep> for GalileiGenerators {
    fn from(r: &GalileiRep) -> Self {
        Self {
            s: r.s.clone(),
            eta: r.eta.clone(),
        }
    }
}

fn limit_of(name: String, m: &ExactMatrix<EpsSeries>) -> Result<ExactMatrix<GR>, ContractionError> {
    eps_limit(m).map_err(|e| match e {
        MathError::NegativePower { row, col, exponent } => ContractionError::NegativePower {
            generator: name,
            row,
            col,
            exponent,
        },
        _ => unreachable!("eps_limit only fails with NegativePower"),
    })
}

/// The ε-dependent generators `V S_a V⁻¹` and `ε V S_0a V⁻¹` before the limit.
pub fn transformed(
    l: &LorentzRep,
    scheme: &ContractionScheme,
) -> Result<[[ExactMatrix<EpsSeries>; 3]; 2], ContractionError> {
    if scheme.dim() != l.dim() {
        return Err(ContractionError::DimensionMismatch {
            scheme: scheme.dim(),
            rep: l.dim(),
        });
    }
    let conj = |m: &ExactMatrix<GR>| scheme.v.mul(&ExactMatrix::lift(m)).mul(&scheme.v_inv);
    let eps = EpsSeries::eps();
    Ok([
        l.s_rot.each_ref().map(conj),
        l.s_boost.each_ref().map(|m| conj(m).scale_by(&eps)),
    ])
}

/// Contracts `l` along `scheme`; the result is checked against hg(1,3).
pub fn contract(
    l: &LorentzRep,
    scheme: &ContractionScheme,
) -> Result<GalileiGenerators, ContractionError> {
    let [rot, boost] = transformed(l, scheme)?;
    let mut s = Vec::with_capacity(3);
    let mut eta = Vec::with_capacity(3);
    for a in 0..3 {
        s.push(limit_of(format!("S{}", a + 1), &rot[a])?);
        eta.push(limit_of(format!("eta{}", a + 1), &boost[a])?);
    }
    let gens = GalileiGenerators {
        s: s.try_into().expect("three rotations"),
        eta: eta.try_into().expect("three boosts"),
    };
    if gens.eta.iter().all(ExactMatrix::is_zero) {
        return Err(ContractionError::TrivialBoosts);
    }
    let probe = GalileiRep {
        label: None,
        layout: Vec::new(),
        s: gens.s.clone(),
        eta: gens.eta.clone(),
    };
    if !reps::check_structure(&probe).all_pass() {
        return Err(ContractionError::RelationsViolated);
    }
    Ok(gens)
}

/// Result of matching contracted generators against the catalogue.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Identification {
    pub label: Option<RepLabel>,
    /// True when no basis change was needed.
    pub exact: bool,
    /// `permutation[k]` is the catalogue component receiving input component `k`.
    pub permutation: Vec<usize>,
    /// Rational rescaling applied to each input component.
    #[serde(serialize_with = "ser_display_vec")]
    pub scales: Vec<GR>,
}

fn ser_display_vec<S: serde::Serializer>(v: &[GR], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(ToString::to_string))
}

/// Splits a standard-form rotation action into scalar and vector slot groups.
fn detect_layout(s: &[ExactMatrix<GR>; 3]) -> Option<Vec<(Kind, usize)>> {
    let d = s[0].rows();
    let mut out = Vec::new();
    let mut i = 0;
    let touches = |i: usize| {
        s.iter()
            .any(|m| (0..d).any(|j| !m.get(i, j).is_zero() || !m.get(j, i).is_zero()))
    };
    while i < d {
        if !touches(i) {
            out.push((Kind::Scalar, i));
            i += 1;
            continue;
        }
        if i + 3 > d {
            return None;
        }
        let idx = [i, i + 1, i + 2];
        for a in 0..3 {
            if s[a].submatrix(&idx, &idx) != spin1(a) {
                return None;
            }
        }
        out.push((Kind::Vector, i));
        i += 3;
    }
    // the blocks must not talk to each other
    let mut rebuilt = ExactMatrix::zeros(d, d);
    for &(k, o) in &out {
        if k == Kind::Vector {
            for r in 0..3 {
                for c in 0..3 {
                    rebuilt.set(o + r, o + c, s[0].get(o + r, o + c).clone());
                }
            }
        }
    }
    (rebuilt == s[0]).then_some(out)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for k in 0..=p.len() {
            let mut q = p.clone();
            q.insert(k, n - 1);
            out.push(q);
        }
    }
    out
}

/// Transformation `T` with `T ψ_in = ψ_catalogue`.
fn basis_change(
    input: &[(Kind, usize)],
    target_offsets: &[usize],
    perm: &[usize],
    scales: &[GR],
    d: usize,
) -> ExactMatrix<GR> {
    let mut t = ExactMatrix::zeros(d, d);
    for (k, &(kind, o)) in input.iter().enumerate() {
        for j in 0..kind.width() {
            t.set(target_offsets[perm[k]] + j, o + j, scales[k].clone());
        }
    }
    t
}

/// Identifies generators with a catalogued representation, first exactly and
/// then up to permutations of like components and real rational rescalings.
pub fn identify(gens: &GalileiGenerators) -> Identification {
    let d = gens.dim();
    let unidentified = Identification {
        label: None,
        exact: false,
        permutation: vec![],
        scales: vec![],
    };
    let candidates: Vec<GalileiRep> = reps::CATALOGUE
        .iter()
        .map(|e| build_rep(e.label).expect("catalogued"))
        .filter(|r| r.dim() == d)
        .collect();
    for r in &candidates {
        if r.s == gens.s && r.eta == gens.eta {
            let n = r.layout.len();
            return Identification {
                label: r.label,
                exact: true,
                permutation: (0..n).collect(),
                scales: vec![GR::one(); n],
            };
        }
    }
    let Some(input) = detect_layout(&gens.s) else {
        return unidentified;
    };
    let n = input.len();
    let comp_of = |slot: usize| {
        input
            .iter()
            .rposition(|&(_, o)| o <= slot)
            .expect("slot in layout")
    };
    for r in &candidates {
        if r.layout.len() != n {
            continue;
        }
        let offs = r.offsets();
        for perm in permutations(n) {
            if (0..n).any(|k| input[k].0 != r.layout[perm[k]].kind) {
                continue;
            }
            let target_slot = |slot: usize| {
                let c = comp_of(slot);
                offs[perm[c]] + slot - input[c].1
            };
            // ratio constraints d_i / d_j = target / input, over input components
            let mut edges: Vec<Vec<(usize, GR)>> = vec![Vec::new(); n];
            let mut ok = true;
            for (a, e) in gens.eta.iter().enumerate() {
                for i in 0..d {
                    for j in 0..d {
                        let x = e.get(i, j);
                        if x.is_zero() {
                            continue;
                        }
                        let y = r.eta[a].get(target_slot(i), target_slot(j));
                        if y.is_zero() {
                            ok = false;
                            continue;
                        }
                        let ratio = y.clone() / x.clone();
                        let (ci, cj) = (comp_of(i), comp_of(j));
                        edges[cj].push((ci, ratio.inv().expect("nonzero ratio")));
                        edges[ci].push((cj, ratio));
                    }
                }
            }
            if !ok {
                continue;
            }
            let Some(scales) = propagate(&edges) else {
                continue;
            };
            if scales.iter().any(|s| !s.is_real()) {
                continue;
            }
            let t = basis_change(&input, &offs, &perm, &scales, d);
            let Ok(tinv) = t.inverse() else {
                continue;
            };
            let conj = |m: &ExactMatrix<GR>| t.mul(m).mul(&tinv);
            if (0..3).all(|a| conj(&gens.s[a]) == r.s[a] && conj(&gens.eta[a]) == r.eta[a]) {
                return Identification {
                    label: r.label,
                    exact: false,
                    permutation: perm,
                    scales,
                };
            }
        }
    }
    unidentified
}

/// Breadth-first assignment of component scales from ratio constraints
/// `d_i / d_j = ratio`; `None` on inconsistency.
fn propagate(edges: &[Vec<(usize, GR)>]) -> Option<Vec<GR>> {
    let n = edges.len();
    let mut val: Vec<Option<GR>> = vec![None; n];
    for root in 0..n {
        if val[root].is_some() {
            continue;
        }
        val[root] = Some(GR::one());
        let mut queue = VecDeque::from([root]);
        while let Some(i) = queue.pop_front() {
            let di = val[i].clone().expect("visited");
            for (j, ratio) in &edges[i] {
                // d_i / d_j = ratio  =>  d_j = d_i / ratio
                let want = di.clone() / ratio.clone();
                match &val[*j] {
                    Some(dj) if *dj != want => return None,
                    Some(_) => {}
                    None => {
                        val[*j] = Some(want);
                        queue.push_back(*j);
                    }
                }
            }
        }
    }
    Some(val.into_iter().map(|v| v.expect("assigned")).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn four_vector_satisfies_so13() {
        let r = four_vector_rep().check_so13();
        assert_eq!(r.relations.len(), 15);
        assert!(r.all_pass());
    }

    #[test]
    fn printed_v3_inverse_is_exact() {
        let v3 = ContractionScheme::v3();
        assert_eq!(v3.v.adjugate_inverse().unwrap(), v3.v_inv);
    }

    #[test]
    fn parses_scheme_files() {
        let m =
            parse_scheme_matrix("eps 0 0 0\n0 eps 0 0 # row two\n0 0 eps 0\n0 0 0 1\n").unwrap();
        assert_eq!(m, ContractionScheme::v1().v);
        assert_eq!(
            parse_eps_monomial("(1/2+1*i)*eps^-2").unwrap(),
            EpsSeries::monomial("1/2+1*i".parse().unwrap(), -2)
        );
        assert_eq!(
            parse_eps_monomial("-eps").unwrap(),
            EpsSeries::monomial(GR::int(-1), 1)
        );
        assert!(parse_scheme_matrix("1 0\n0").is_err());
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let err = contract(&four_vector_rep(), &ContractionScheme::v3()).unwrap_err();
        assert_eq!(
            err,
            ContractionError::DimensionMismatch { scheme: 5, rep: 4 }
        );
    }
}
