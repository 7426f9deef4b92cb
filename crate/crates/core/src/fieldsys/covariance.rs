use std::collections::{BTreeMap, BTreeSet};

use super::{deriv_name, Deriv, LinearFieldSystem};
use crate::exactmath::{ExactMatrix, Ring, SparseEchelon, VPoly, GR};
use crate::par;
use crate::reps::{rotation_generators, spin1, CONVENTION};

/// One coefficient identity that cannot be balanced by any `M(v)`.
#[derive(Clone, Debug, PartialEq)]
pub struct FailingIdentity {
    /// Equation row, e.g. `faraday.x`.
    pub row: String,
    /// Symbol and field slot (`dt H_m.x`) or source slot (`src j0_m`).
    pub column: String,
    /// `(M(v)·K − R(v))` at that entry for the best particular `M`.
    pub residual: VPoly,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CovarianceReport {
    pub system: String,
    pub covariant: bool,
    /// Equation-multiplet boost, present when covariant.
    pub m: Option<ExactMatrix<VPoly>>,
    pub failing_identity: Option<FailingIdentity>,
    pub convention: &'static str,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RotationReport {
    pub system: String,
    pub pass: bool,
    /// Equation-multiplet rotation generators `m_a`, present on success.
    pub generators: Option<[ExactMatrix<GR>; 3]>,
    /// `(axis, row, column)` of the first unbalanced identity.
    pub failing: Option<(usize, String, String)>,
}

/// Left-solves `M·K = R` for a constant `K`; on inconsistency returns the
/// residual `M·K − R` of the particular solution fitted on the pivot columns,
/// which does not depend on that choice.
struct LeftSolver {
    k: ExactMatrix<GR>,
    kp_t: ExactMatrix<GR>,
    pivots: Vec<usize>,
}

impl LeftSolver {
    fn new(k: ExactMatrix<GR>) -> Self {
        let (_, pivots) = k.rref();
        let rows: Vec<usize> = (0..k.rows()).collect();
        let kp_t = k.submatrix(&rows, &pivots).transpose();
        Self { k, kp_t, pivots }
    }

    fn solve(&self, r: &ExactMatrix<GR>) -> (ExactMatrix<GR>, ExactMatrix<GR>) {
        let rows: Vec<usize> = (0..r.rows()).collect();
        let rp_t = r.submatrix(&rows, &self.pivots).transpose();
        let m = self
            .kp_t
            .solve(&rp_t)
            .expect("pivot columns are independent")
            .transpose();
        let residual = m.mul(&self.k).sub(r);
        (m, residual)
    }
}

fn column_labels(sys: &LinearFieldSystem, keys: &[Deriv]) -> Vec<String> {
    let fields = sys.field.slot_names();
    let mut out = Vec::new();
    for d in keys {
        for f in &fields {
            out.push(format!("d{} {f}", deriv_name(d)));
        }
    }
    out.extend(
        sys.current
            .slot_names()
            .into_iter()
            .map(|j| format!("src {j}")),
    );
    out
}

fn vhstack(blocks: &[ExactMatrix<VPoly>]) -> ExactMatrix<VPoly> {
    let refs: Vec<&ExactMatrix<VPoly>> = blocks.iter().collect();
    ExactMatrix::hstack(&refs)
}

/// Solves exactly for the equation boost `M(v)` with
/// `C(p_t + v·p, p)·Λ_F(v) = M(v)·C(p_t, p)` and `M(v)·Csrc = Csrc·Λ_j(v)`
/// as identities in the symbols and `v`.
pub fn boost_covariance(sys: &LinearFieldSystem) -> CovarianceReport {
    let ne = sys.equation_rows();
    let lam_f = sys.field.boost.matrix();
    let lam_j = sys.current.boost.matrix();
    let boosted = sys.symbol.boosted_time();
    let keys: Vec<Deriv> = sys
        .symbol
        .keys()
        .into_iter()
        .chain(boosted.keys().copied())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();

    let mut k_blocks: Vec<ExactMatrix<GR>> = keys.iter().map(|d| sys.symbol.coeff(d)).collect();
    k_blocks.push(sys.source.clone());
    let k = ExactMatrix::hstack(&k_blocks.iter().collect::<Vec<_>>());

    let zero_l = ExactMatrix::<VPoly>::zeros(ne, sys.field.dim());
    let mut r_blocks: Vec<ExactMatrix<VPoly>> = keys
        .iter()
        .map(|d| {
            boosted
                .get(d)
                .map_or_else(|| zero_l.clone(), |b| b.mul(lam_f))
        })
        .collect();
    r_blocks.push(ExactMatrix::lift(&sys.source).mul(lam_j));
    let r = vhstack(&r_blocks);

    let mut monomials: BTreeSet<[u8; 3]> = r.monomials().into_iter().collect();
    monomials.insert([0, 0, 0]);
    let monomials: Vec<[u8; 3]> = monomials.into_iter().collect();

    let solver = LeftSolver::new(k);
    let solved = par::map(&monomials, |&mu| {
        if mu == [0, 0, 0] {
            let id = ExactMatrix::identity(ne);
            let residual = id.mul(&solver.k).sub(&r.coeff(mu));
            (mu, id, residual)
        } else {
            let (m, res) = solver.solve(&r.coeff(mu));
            (mu, m, res)
        }
    });

    let covariant = solved.iter().all(|(_, _, res)| res.is_zero());
    let report = |m, failing_identity| CovarianceReport {
        system: sys.name.clone(),
        covariant,
        m,
        failing_identity,
        convention: CONVENTION,
    };
    if covariant {
        let mut m = ExactMatrix::<VPoly>::zeros(ne, ne);
        for (mu, coeff, _) in &solved {
            let term = ExactMatrix::<VPoly>::lift(coeff).scale_by(&VPoly::monomial(GR::one(), *mu));
            m = m.add(&term);
        }
        return report(Some(m), None);
    }
    let (_, _, first) = solved
        .iter()
        .find(|(_, _, res)| !res.is_zero())
        .expect("some residual");
    let (row, col) = (0..first.rows())
        .flat_map(|i| (0..first.cols()).map(move |j| (i, j)))
        .find(|&(i, j)| !first.get(i, j).is_zero())
        .expect("nonzero entry");
    let residual = solved.iter().fold(VPoly::zero(), |acc, (mu, _, res)| {
        acc.add_ref(&VPoly::monomial(res.get(row, col).clone(), *mu))
    });
    let failing = FailingIdentity {
        row: sys.row_names()[row].clone(),
        column: column_labels(sys, &keys)[col].clone(),
        residual,
    };
    report(None, Some(failing))
}

/// Action of the rotation generator `s_a` on the spatial symbols of one
/// monomial: `p_i ↦ Σ_j (s_a)_ij p_j`, extended as a derivation.
fn rotate_symbol(a: usize, d: &Deriv) -> Vec<(Deriv, GR)> {
    let s = spin1(a);
    let mut out = Vec::new();
    for i in 0..3 {
        if d[i + 1] == 0 {
            continue;
        }
        for j in 0..3 {
            let c = s.get(i, j);
            if c.is_zero() {
                continue;
            }
            let mut e = *d;
            e[i + 1] -= 1;
            e[j + 1] += 1;
            out.push((e, c.scale(&GR::int(d[i + 1] as i64))));
        }
    }
    out
}

/// Lie-algebra rotation covariance: finds `m_a` with
/// `m_a·C = C·S_a^F + D_a C` and `m_a·Csrc = Csrc·S_a^j`, where `D_a` rotates
/// the spatial symbols.
pub fn rotation_covariance(sys: &LinearFieldSystem) -> RotationReport {
    let sf = rotation_generators(sys.field.layout());
    let sj = rotation_generators(sys.current.layout());
    let mut generators = Vec::new();
    for a in 0..3 {
        let mut rhs: BTreeMap<Deriv, ExactMatrix<GR>> = BTreeMap::new();
        let mut acc = |d: Deriv, m: ExactMatrix<GR>| {
            let slot = rhs
                .entry(d)
                .or_insert_with(|| ExactMatrix::zeros(m.rows(), m.cols()));
            *slot = slot.add(&m);
        };
        for (d, c) in sys.symbol.terms() {
            acc(*d, c.mul(&sf[a]));
            for (e, w) in rotate_symbol(a, d) {
                acc(e, c.scale(&w));
            }
        }
        let keys: Vec<Deriv> = sys
            .symbol
            .keys()
            .into_iter()
            .chain(rhs.keys().copied())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let mut kb: Vec<ExactMatrix<GR>> = keys.iter().map(|d| sys.symbol.coeff(d)).collect();
        kb.push(sys.source.clone());
        let mut rb: Vec<ExactMatrix<GR>> = keys
            .iter()
            .map(|d| {
                rhs.get(d)
                    .cloned()
                    .unwrap_or_else(|| ExactMatrix::zeros(sys.equation_rows(), sys.field.dim()))
            })
            .collect();
        rb.push(sys.source.mul(&sj[a]));
        let solver = LeftSolver::new(ExactMatrix::hstack(&kb.iter().collect::<Vec<_>>()));
        let (m, res) = solver.solve(&ExactMatrix::hstack(&rb.iter().collect::<Vec<_>>()));
        if let Some((i, j)) = (0..res.rows())
            .flat_map(|i| (0..res.cols()).map(move |j| (i, j)))
            .find(|&(i, j)| !res.get(i, j).is_zero())
        {
            return RotationReport {
                system: sys.name.clone(),
                pass: false,
                generators: None,
                failing: Some((
                    a,
                    sys.row_names()[i].clone(),
                    column_labels(sys, &keys)[j].clone(),
                )),
            };
        }
        generators.push(m);
    }
    let generators: [ExactMatrix<GR>; 3] = generators.try_into().expect("three axes");
    RotationReport {
        system: sys.name.clone(),
        pass: true,
        generators: Some(generators),
        failing: None,
    }
}

/// Whether *any* infinitesimal boost along `x` on fields, currents and
/// equations makes the system covariant: solves
/// `∂_{v_x}C(p_t + v·p)|₀ + C·L − M·C = 0` and `Csrc·N − M·Csrc = 0` for
/// unknown `L`, `M`, `N`, ignoring the system's own boost laws.
pub fn galilean_boost_exists(sys: &LinearFieldSystem) -> bool {
    let (nf, ne, nj) = (sys.field.dim(), sys.equation_rows(), sys.current.dim());
    let (l0, m0, n0) = (0, nf * nf, nf * nf + ne * ne);
    let unknowns = n0 + nj * nj;
    let constant = unknowns;
    let mut ech = SparseEchelon::new(unknowns + 1);

    // ∂_{v_x}(p_t + v·p)^k: only the linear part of the boosted symbol matters
    let mut drift: BTreeMap<Deriv, ExactMatrix<GR>> = BTreeMap::new();
    for (d, m) in sys.symbol.terms() {
        if d[0] > 0 {
            let mut e = *d;
            e[0] -= 1;
            e[1] += 1;
            let slot = drift.entry(e).or_insert_with(|| ExactMatrix::zeros(ne, nf));
            *slot = slot.add(&m.scale(&GR::int(d[0] as i64)));
        }
    }
    let keys: BTreeSet<Deriv> = sys
        .symbol
        .keys()
        .into_iter()
        .chain(drift.keys().copied())
        .collect();
    for d in &keys {
        let c = sys.symbol.coeff(d);
        let dr = drift.get(d);
        for r in 0..ne {
            for col in 0..nf {
                let mut eq: Vec<(usize, GR)> = Vec::new();
                // (C L)[r][col] = Σ_k C[r][k] L[k][col]
                for k in 0..nf {
                    eq.push((l0 + k * nf + col, c.get(r, k).clone()));
                }
                // −(M C)[r][col] = −Σ_k M[r][k] C[k][col]
                for k in 0..ne {
                    eq.push((m0 + r * ne + k, c.get(k, col).neg_ref()));
                }
                if let Some(dr) = dr {
                    eq.push((constant, dr.get(r, col).clone()));
                }
                ech.push(eq);
            }
        }
    }
    for r in 0..ne {
        for col in 0..nj {
            let mut eq: Vec<(usize, GR)> = Vec::new();
            for k in 0..nj {
                eq.push((n0 + k * nj + col, sys.source.get(r, k).clone()));
            }
            for k in 0..ne {
                eq.push((m0 + r * ne + k, sys.source.get(k, col).neg_ref()));
            }
            ech.push(eq);
        }
    }
    !ech.has_pivot(constant)
}

/// Checks `M(v)·M(w) = M(v + w)` at each sample pair and `M(0) = I`.
pub fn group_law_holds(m: &ExactMatrix<VPoly>, pairs: &[([GR; 3], [GR; 3])]) -> bool {
    let zero = [GR::zero(), GR::zero(), GR::zero()];
    if m.eval(&zero) != ExactMatrix::identity(m.rows()) {
        return false;
    }
    pairs.iter().all(|(v, w)| {
        let s: [GR; 3] = std::array::from_fn(|a| v[a].add_ref(&w[a]));
        m.eval(v).mul(&m.eval(w)) == m.eval(&s)
    })
}
