use serde::Serialize;

use super::GalileiRep;
use crate::exactmath::{ExactMatrix, Ring, SparseEchelon, GR};

/// Basis of `{X : [X,S_a] = [X,η_a] = 0}`.
pub fn commutant(rep: &GalileiRep) -> Vec<ExactMatrix<GR>> {
    commutant_of(&rep.generators(), rep.dim())
}

/// Commutant of an arbitrary family of `d×d` matrices; unknown `(i,j)` is `X_ij`.
pub fn commutant_of(gens: &[&ExactMatrix<GR>], d: usize) -> Vec<ExactMatrix<GR>> {
    let mut sys = SparseEchelon::new(d * d);
    for g in gens {
        for i in 0..d {
            for j in 0..d {
                // (XG − GX)_ij = Σ_k X_ik G_kj − G_ik X_kj
                let mut eq = Vec::new();
                for k in 0..d {
                    let gkj = g.get(k, j);
                    if !gkj.is_zero() {
                        eq.push((i * d + k, gkj.clone()));
                    }
                    let gik = g.get(i, k);
                    if !gik.is_zero() {
                        eq.push((k * d + j, gik.neg_ref()));
                    }
                }
                if !eq.is_empty() {
                    sys.push(eq);
                }
            }
        }
    }
    sys.nullspace()
        .into_iter()
        .map(|x| ExactMatrix::from_fn(d, d, |i, j| x[i * d + j].clone()))
        .collect()
}

/// Outcome of the idempotent search in the commutant.
#[derive(Clone, Debug, Serialize)]
pub struct Indecomposability {
    pub indecomposable: bool,
    pub commutant_dim: usize,
    pub radical_dim: usize,
    /// Nontrivial idempotent commuting with every generator, when decomposable.
    #[serde(skip)]
    pub witness: Option<ExactMatrix<GR>>,
}

fn trace_of_product(a: &ExactMatrix<GR>, b: &ExactMatrix<GR>) -> GR {
    let d = a.rows();
    let mut t = GR::zero();
    for i in 0..d {
        for j in 0..d {
            let (x, y) = (a.get(i, j), b.get(j, i));
            if !x.is_zero() && !y.is_zero() {
                t = t.add_ref(&x.mul_ref(y));
            }
        }
    }
    t
}

fn pow(m: &ExactMatrix<GR>, k: usize) -> ExactMatrix<GR> {
    (0..k).fold(ExactMatrix::identity(m.rows()), |acc, _| acc.mul(m))
}

/// Projector onto the generalized λ-eigenspace of `x` along the rest, when
/// that eigenspace is proper and nonzero. Being a polynomial in `x`, it lies in
/// every algebra containing `x`.
fn fitting_projector(x: &ExactMatrix<GR>, lambda: &GR) -> Option<ExactMatrix<GR>> {
    let d = x.rows();
    let shifted = x.sub(&ExactMatrix::identity(d).scale(lambda));
    let n = pow(&shifted, d);
    let ker = n.nullspace();
    if ker.is_empty() || ker.len() == d {
        return None;
    }
    let (_, pivots) = n.rref();
    // image is spanned by the pivot columns of n
    let img: Vec<ExactMatrix<GR>> = pivots
        .iter()
        .map(|&c| n.submatrix(&(0..d).collect::<Vec<_>>(), &[c]))
        .collect();
    let cols: Vec<&ExactMatrix<GR>> = ker.iter().chain(img.iter()).collect();
    let basis = ExactMatrix::hstack(&cols);
    let binv = basis.inverse().ok()?;
    let mut sel = ExactMatrix::zeros(d, d);
    for k in 0..ker.len() {
        sel.set(k, k, GR::one());
    }
    Some(basis.mul(&sel).mul(&binv))
}

fn is_witness(p: &ExactMatrix<GR>, gens: &[&ExactMatrix<GR>]) -> bool {
    let d = p.rows();
    p.mul(p) == *p
        && !p.is_zero()
        && *p != ExactMatrix::identity(d)
        && gens.iter().all(|g| p.mul(g) == g.mul(p))
}

/// Decides indecomposability through the commutant algebra `C`.
///
/// The radical `J` of `C` is the kernel of the trace form `tr(xy)`. When
/// `C/J` is one-dimensional the algebra is local and its only idempotents are
/// 0 and 1. Otherwise a nontrivial idempotent is extracted as a Fitting
/// projector of some element and verified before being returned.
pub fn is_indecomposable(rep: &GalileiRep) -> Indecomposability {
    let basis = commutant(rep);
    let m = basis.len();
    let gram = ExactMatrix::from_fn(m, m, |k, l| trace_of_product(&basis[k], &basis[l]));
    let radical_dim = m - gram.rank();
    if m - radical_dim <= 1 {
        return Indecomposability {
            indecomposable: true,
            commutant_dim: m,
            radical_dim,
            witness: None,
        };
    }
    let gens = rep.generators();
    let d = rep.dim();
    let mut candidates: Vec<ExactMatrix<GR>> = basis.clone();
    // a few fixed combinations break accidental eigenvalue degeneracies
    for shift in 1..4i64 {
        let combo = basis
            .iter()
            .enumerate()
            .fold(ExactMatrix::zeros(d, d), |acc, (k, b)| {
                acc.add(&b.scale(&GR::int(k as i64 * shift + 1)))
            });
        candidates.push(combo);
    }
    for x in &candidates {
        let mut lambdas: Vec<GR> = (0..d).map(|i| x.get(i, i).clone()).collect();
        lambdas.push(GR::zero());
        lambdas.push(GR::one());
        lambdas.dedup();
        for lambda in &lambdas {
            if let Some(p) = fitting_projector(x, lambda) {
                if is_witness(&p, &gens) {
                    return Indecomposability {
                        indecomposable: false,
                        commutant_dim: m,
                        radical_dim,
                        witness: Some(p),
                    };
                }
            }
        }
    }
    // C/J is semisimple of dimension > 1 but no rational idempotent surfaced;
    // report decomposable without a witness rather than claim otherwise.
    Indecomposability {
        indecomposable: false,
        commutant_dim: m,
        radical_dim,
        witness: None,
    }
}

/// Component subsets `Σ` (as sorted index lists) whose coordinates transform
/// among themselves: every generator has a zero block from the remaining
/// components into `Σ`. These are exactly the sets that may consistently be
/// set to zero. Includes the full layout; excludes the empty set.
pub fn invariant_component_subsets(rep: &GalileiRep) -> Vec<Vec<usize>> {
    let n = rep.layout.len();
    assert!(n < 16, "too many components for subset enumeration");
    let gens = rep.generators();
    let mut out = Vec::new();
    for mask in 1u32..(1 << n) {
        let sigma: Vec<usize> = (0..n).filter(|k| mask & (1 << k) != 0).collect();
        let rest: Vec<usize> = (0..n).filter(|k| mask & (1 << k) == 0).collect();
        if is_closed(rep, &gens, &sigma, &rest) {
            out.push(sigma);
        }
    }
    out
}

/// `true` iff every generator maps nothing from `rest` into `sigma`.
pub fn is_closed(
    rep: &GalileiRep,
    gens: &[&ExactMatrix<GR>],
    sigma: &[usize],
    rest: &[usize],
) -> bool {
    let rows = rep.slots(sigma);
    let cols = rep.slots(rest);
    gens.iter().all(|g| {
        rows.iter()
            .all(|&r| cols.iter().all(|&c| g.get(r, c).is_zero()))
    })
}

#[cfg(test)]
mod tests {
    use super::super::{build_rep, direct_sum, RepLabel};
    use super::*;

    #[test]
    fn scalar_commutant_is_one_dimensional() {
        let c = commutant(&build_rep(RepLabel::new(0, 1, 0)).unwrap());
        assert_eq!(c, vec![ExactMatrix::identity(1)]);
    }

    #[test]
    fn direct_sum_has_block_projector() {
        let a = build_rep(RepLabel::new(1, 1, 0)).unwrap();
        let b = build_rep(RepLabel::new(1, 1, 1)).unwrap();
        let v = is_indecomposable(&direct_sum(&[&a, &b]));
        assert!(!v.indecomposable);
        let p = v.witness.unwrap();
        assert_eq!(p.mul(&p), p);
    }

    #[test]
    fn scalar_plus_vector_has_two_projectors() {
        let a = build_rep(RepLabel::new(0, 1, 0)).unwrap();
        let r = build_rep(RepLabel::new(1, 0, 0)).unwrap();
        let c = commutant(&direct_sum(&[&a, &r]));
        assert_eq!(c.len(), 2);
        let p = ExactMatrix::from_fn(4, 4, |i, j| {
            if i == j && i == 0 {
                GR::one()
            } else {
                GR::zero()
            }
        });
        let q = ExactMatrix::identity(4).sub(&p);
        let rep = direct_sum(&[&a, &r]);
        assert!(is_witness(&p, &rep.generators()));
        assert!(is_witness(&q, &rep.generators()));
    }

    #[test]
    fn invariant_subsets_follow_the_laws() {
        // D(1,2,1) = (U, A, C): A' = A, U' = U + vA, C' = C + v.U + v²A/2
        let rep = build_rep(RepLabel::new(1, 2, 1)).unwrap();
        let subsets = invariant_component_subsets(&rep);
        assert_eq!(subsets, vec![vec![1], vec![0, 1], vec![0, 1, 2]]);
    }
}
