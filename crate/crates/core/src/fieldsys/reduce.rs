use super::{boost_covariance, catalogue, FieldSysError, LinearFieldSystem, Multiplet};
use crate::exactmath::{ExactMatrix, Ring, VPoly, GR};
use crate::reps::{offsets, Component, LinearLaw};

/// Renames a field or current component, optionally flipping its sign.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Rename {
    pub from: &'static str,
    pub to: &'static str,
    pub scale: i64,
}

const fn rn(from: &'static str, to: &'static str) -> Rename {
    Rename { from, to, scale: 1 }
}

const fn rn_neg(from: &'static str, to: &'static str) -> Rename {
    Rename {
        from,
        to,
        scale: -1,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum EdgeOp {
    /// Set field and current components to zero.
    Zero {
        fields: &'static [&'static str],
        currents: &'static [&'static str],
    },
    /// Remove whole equations.
    Drop(&'static [&'static str]),
}

/// One reduction from a catalogued system to another.
#[derive(Clone, Debug, PartialEq)]
pub struct Edge {
    pub from: &'static str,
    pub to: &'static str,
    pub op: EdgeOp,
    pub renames: Vec<Rename>,
}

/// The reduction lattice between the catalogued Galilean systems.
pub fn lattice_edges() -> Vec<Edge> {
    use EdgeOp::{Drop, Zero};
    vec![
        Edge {
            from: "extended",
            to: "reduced_R0",
            op: Zero {
                fields: &["R"],
                currents: &["j4"],
            },
            renames: vec![rn("W", "Htilde"), rn("N", "Etilde"), rn("B", "S")],
        },
        Edge {
            from: "reduced_R0",
            to: "magnetic",
            op: Zero {
                fields: &["S"],
                currents: &[],
            },
            renames: vec![
                rn("Htilde", "H_m"),
                rn_neg("Etilde", "E_m"),
                rn("j", "j_m"),
                rn_neg("j0", "j0_m"),
            ],
        },
        Edge {
            from: "magnetic",
            to: "electrostatic",
            op: Zero {
                fields: &["H_m"],
                currents: &["j_m"],
            },
            renames: vec![rn("E_m", "Ehat"), rn("j0_m", "rho")],
        },
        Edge {
            from: "extended",
            to: "subsystem_8",
            op: Drop(&["N", "J0"]),
            renames: vec![],
        },
        Edge {
            from: "subsystem_8",
            to: "scalar_system",
            op: Drop(&["J", "B"]),
            renames: vec![],
        },
        Edge {
            from: "subsystem_8",
            to: "electric",
            op: Drop(&["W"]),
            renames: vec![
                rn("W", "H_e"),
                rn("R", "E_e"),
                rn("j", "j_e"),
                rn("j4", "j4_e"),
            ],
        },
        Edge {
            from: "subsystem_8",
            to: "reduced_W",
            op: Zero {
                fields: &["R"],
                currents: &["j4"],
            },
            renames: vec![rn("W", "Hhat"), rn("B", "S")],
        },
        Edge {
            from: "electric",
            to: "magnetostatic",
            op: Zero {
                fields: &["E_e"],
                currents: &["j4_e"],
            },
            renames: vec![rn("H_e", "Hhat"), rn("j_e", "j")],
        },
    ]
}

fn complement(n: usize, drop: &[usize]) -> Vec<usize> {
    (0..n).filter(|i| !drop.contains(i)).collect()
}

/// Restricts a multiplet to the components `keep` (by index).
fn restrict(m: &Multiplet, keep: &[usize]) -> Multiplet {
    let layout: Vec<Component> = keep.iter().map(|&k| m.layout()[k].clone()).collect();
    let pos = |k: usize| keep.iter().position(|&x| x == k);
    let laws = m
        .laws
        .iter()
        .filter_map(|l| {
            Some(LinearLaw {
                target: pos(l.target)?,
                source: pos(l.source)?,
                ..l.clone()
            })
        })
        .collect();
    Multiplet::new(layout, laws)
}

/// `{x : x_Z = 0}` is boost invariant iff no component in `Z` receives a
/// contribution from outside `Z`.
fn zero_set_invariant(m: &Multiplet, zeroed: &[usize]) -> bool {
    let z = m.rep.slots(zeroed);
    let rest = complement(m.dim(), &z);
    m.boost.matrix().submatrix(&z, &rest).is_zero()
}

fn indices(m: &Multiplet, names: &[&str]) -> Result<Vec<usize>, FieldSysError> {
    names.iter().map(|n| m.index(n)).collect()
}

/// Removes equations (by index) from a system and keeps everything else.
fn remove_equations(sys: &LinearFieldSystem, eqs: &[usize]) -> LinearFieldSystem {
    let keep_eq = complement(sys.equations.len(), eqs);
    let rows = sys.rows_of(&keep_eq);
    let fcols: Vec<usize> = (0..sys.field.dim()).collect();
    let jcols: Vec<usize> = (0..sys.current.dim()).collect();
    LinearFieldSystem {
        equations: keep_eq.iter().map(|&k| sys.equations[k].clone()).collect(),
        symbol: sys.symbol.select(&rows, &fcols),
        source: sys.source.submatrix(&rows, &jcols),
        ..sys.clone()
    }
}

/// Replaces the field and current multiplets by sub-multiplets, selecting
/// the matching columns.
fn restrict_columns(
    sys: &LinearFieldSystem,
    keep_f: &[usize],
    keep_j: &[usize],
) -> LinearFieldSystem {
    let all_rows: Vec<usize> = (0..sys.equation_rows()).collect();
    let fslots = sys.field.rep.slots(keep_f);
    let jslots = sys.current.rep.slots(keep_j);
    LinearFieldSystem {
        field: restrict(&sys.field, keep_f),
        current: restrict(&sys.current, keep_j),
        symbol: sys.symbol.select(&all_rows, &fslots),
        source: sys.source.submatrix(&all_rows, &jslots),
        ..sys.clone()
    }
}

/// Imposes `F_Z = 0`, `j_Z = 0`; equations that become `0 = 0` are dropped.
pub fn apply_constraint(
    sys: &LinearFieldSystem,
    fields: &[&str],
    currents: &[&str],
) -> Result<LinearFieldSystem, FieldSysError> {
    let zf = indices(&sys.field, fields)?;
    let zj = indices(&sys.current, currents)?;
    if !zero_set_invariant(&sys.field, &zf) {
        return Err(FieldSysError::NotInvariant(
            fields.iter().map(|s| s.to_string()).collect(),
        ));
    }
    if !zero_set_invariant(&sys.current, &zj) {
        return Err(FieldSysError::NotInvariant(
            currents.iter().map(|s| s.to_string()).collect(),
        ));
    }
    let reduced = restrict_columns(
        sys,
        &complement(sys.field.layout().len(), &zf),
        &complement(sys.current.layout().len(), &zj),
    );
    let empty: Vec<usize> = (0..reduced.equations.len())
        .filter(|&k| {
            let rows = reduced.rows_of(&[k]);
            rows.iter().all(|&r| {
                reduced
                    .symbol
                    .terms()
                    .all(|(_, m)| m.row(r).iter().all(Ring::is_zero))
                    && reduced.source.row(r).iter().all(Ring::is_zero)
            })
        })
        .collect();
    Ok(remove_equations(&reduced, &empty))
}

/// Removes equations whose span is closed under the parent's equation boost,
/// then prunes field and current components that no longer appear.
pub fn drop_equations(
    sys: &LinearFieldSystem,
    names: &[&str],
) -> Result<LinearFieldSystem, FieldSysError> {
    let dropped: Vec<usize> = names
        .iter()
        .map(|n| sys.equation_index(n))
        .collect::<Result<_, _>>()?;
    let report = boost_covariance(sys);
    let m = report
        .m
        .ok_or_else(|| FieldSysError::NotCovariant(sys.name.clone()))?;
    let drop_rows = sys.rows_of(&dropped);
    let keep_rows = complement(sys.equation_rows(), &drop_rows);
    if !m.submatrix(&keep_rows, &drop_rows).is_zero() {
        return Err(FieldSysError::NotClosed(
            names.iter().map(|s| s.to_string()).collect(),
        ));
    }
    let sub = remove_equations(sys, &dropped);

    let unused = |mult: &Multiplet, used: &dyn Fn(usize) -> bool| -> Vec<usize> {
        (0..mult.layout().len())
            .filter(|&k| !mult.rep.slots(&[k]).into_iter().any(used))
            .collect()
    };
    let field_used = |c: usize| {
        sub.symbol
            .terms()
            .any(|(_, mm)| (0..mm.rows()).any(|r| !mm.get(r, c).is_zero()))
    };
    let current_used = |c: usize| (0..sub.source.rows()).any(|r| !sub.source.get(r, c).is_zero());
    let mut pf = unused(&sub.field, &field_used);
    let mut pj = unused(&sub.current, &current_used);
    // a component may only go if nothing retained transforms into it
    let prunable = |mult: &Multiplet, pruned: &[usize]| {
        let p = mult.rep.slots(pruned);
        let rest = complement(mult.dim(), &p);
        mult.boost.matrix().submatrix(&rest, &p).is_zero()
    };
    if !prunable(&sub.field, &pf) {
        pf.clear();
    }
    if !prunable(&sub.current, &pj) {
        pj.clear();
    }
    Ok(restrict_columns(
        &sub,
        &complement(sub.field.layout().len(), &pf),
        &complement(sub.current.layout().len(), &pj),
    ))
}

fn scale_columns(m: &ExactMatrix<GR>, slots: &[usize], s: &GR) -> ExactMatrix<GR> {
    ExactMatrix::from_fn(m.rows(), m.cols(), |r, c| {
        if slots.contains(&c) {
            m.get(r, c).mul_ref(s)
        } else {
            m.get(r, c).clone()
        }
    })
}

fn rename_multiplet(m: &Multiplet, renames: &[Rename]) -> (Multiplet, Vec<(usize, i64)>) {
    let mut layout = m.layout().to_vec();
    let mut signs = vec![1i64; layout.len()];
    for r in renames {
        if let Some(k) = layout.iter().position(|c| c.name == r.from) {
            layout[k].name = r.to.to_string();
            signs[k] = r.scale;
        }
    }
    let laws = m
        .laws
        .iter()
        .map(|l| LinearLaw {
            coef: l.coef.scale(&GR::int(signs[l.target] * signs[l.source])),
            ..l.clone()
        })
        .collect();
    let flips = signs
        .iter()
        .enumerate()
        .filter(|(_, &s)| s != 1)
        .map(|(k, &s)| (k, s))
        .collect();
    (Multiplet::new(layout, laws), flips)
}

/// Applies component renames; a scale of −1 substitutes `X = −X_new`.
pub fn rename(sys: &LinearFieldSystem, renames: &[Rename]) -> LinearFieldSystem {
    let (field, ff) = rename_multiplet(&sys.field, renames);
    let (current, jf) = rename_multiplet(&sys.current, renames);
    let mut symbol = sys.symbol.clone();
    for (k, s) in ff {
        let slots = sys.field.rep.slots(&[k]);
        symbol = symbol.map_terms(symbol.rows(), symbol.cols(), |m| {
            scale_columns(m, &slots, &GR::int(s))
        });
    }
    let mut source = sys.source.clone();
    for (k, s) in jf {
        source = scale_columns(&source, &sys.current.rep.slots(&[k]), &GR::int(s));
    }
    LinearFieldSystem {
        field,
        current,
        symbol,
        source,
        ..sys.clone()
    }
}

/// Follows one lattice edge from its catalogued source.
pub fn reduce_along(edge: &Edge) -> Result<LinearFieldSystem, FieldSysError> {
    let parent = catalogue(edge.from)?;
    let reduced = match &edge.op {
        EdgeOp::Zero { fields, currents } => apply_constraint(&parent, fields, currents)?,
        EdgeOp::Drop(eqs) => drop_equations(&parent, eqs)?,
    };
    let mut out = rename(&reduced, &edge.renames);
    out.name = edge.to.to_string();
    Ok(out)
}

/// Permutation `perm` with `target[i] == ours[perm[i]]` by name and kind.
fn component_permutation(ours: &[Component], target: &[Component]) -> Option<Vec<usize>> {
    if ours.len() != target.len() {
        return None;
    }
    target
        .iter()
        .map(|t| ours.iter().position(|c| c == t))
        .collect()
}

fn slot_permutation(layout: &[Component], perm: &[usize]) -> Vec<usize> {
    let offs = offsets(layout);
    perm.iter()
        .flat_map(|&k| offs[k]..offs[k] + layout[k].kind.width())
        .collect()
}

fn stacked(
    sys: &LinearFieldSystem,
    keys: &[super::Deriv],
    fperm: &[usize],
    jperm: &[usize],
) -> ExactMatrix<GR> {
    let rows: Vec<usize> = (0..sys.equation_rows()).collect();
    let mut blocks: Vec<ExactMatrix<GR>> = keys
        .iter()
        .map(|d| sys.symbol.coeff(d).submatrix(&rows, fperm))
        .collect();
    blocks.push(sys.source.submatrix(&rows, jperm));
    ExactMatrix::hstack(&blocks.iter().collect::<Vec<_>>())
}

fn same_boost(a: &ExactMatrix<VPoly>, b: &ExactMatrix<VPoly>, perm: &[usize]) -> bool {
    a.submatrix(perm, perm) == *b
}

/// Whether `sys` is the catalogued `target` up to component order and an
/// invertible recombination of equations.
pub fn matches_catalogued(sys: &LinearFieldSystem, target: &LinearFieldSystem) -> bool {
    let (Some(fp), Some(jp)) = (
        component_permutation(sys.field.layout(), target.field.layout()),
        component_permutation(sys.current.layout(), target.current.layout()),
    ) else {
        return false;
    };
    let fslots = slot_permutation(sys.field.layout(), &fp);
    let jslots = slot_permutation(sys.current.layout(), &jp);
    if !same_boost(
        sys.field.boost.matrix(),
        target.field.boost.matrix(),
        &fslots,
    ) || !same_boost(
        sys.current.boost.matrix(),
        target.current.boost.matrix(),
        &jslots,
    ) {
        return false;
    }
    let mut keys = sys.symbol.keys();
    keys.extend(target.symbol.keys());
    keys.sort_unstable();
    keys.dedup();
    let ident_f: Vec<usize> = (0..target.field.dim()).collect();
    let ident_j: Vec<usize> = (0..target.current.dim()).collect();
    let ours = stacked(sys, &keys, &fslots, &jslots);
    let theirs = stacked(target, &keys, &ident_f, &ident_j);
    let r = ours.rank();
    r == theirs.rank() && r == ExactMatrix::vstack(&[&ours, &theirs]).rank()
}

/// The catalogued `𝓙` of the eight-component subsystem (with `∂_tR`) and the
/// one inherited from the extended system (with `∇B`) differ by a
/// combination of the retained `𝓦` rows.
pub fn subsystem_current_consistent() -> Result<bool, FieldSysError> {
    let printed = catalogue("subsystem_8")?;
    let inherited = drop_equations(&catalogue("extended")?, &["N", "J0"])?;
    let keys = [
        super::DT,
        super::dspace(0),
        super::dspace(1),
        super::dspace(2),
    ];
    let f: Vec<usize> = (0..printed.field.dim()).collect();
    let j: Vec<usize> = (0..printed.current.dim()).collect();
    let kp = stacked(&printed, &keys, &f, &j);
    let ki = stacked(&inherited, &keys, &f, &j);
    let jrows = printed.rows_of(&[printed.equation_index("J")?]);
    let wrows = printed.rows_of(&[printed.equation_index("W")?]);
    let cols: Vec<usize> = (0..kp.cols()).collect();
    let diff = kp
        .submatrix(&jrows, &cols)
        .sub(&ki.submatrix(&inherited.rows_of(&[inherited.equation_index("J")?]), &cols));
    Ok(!diff.is_zero() && kp.submatrix(&wrows, &cols).row_space_contains(&diff))
}
