//! Line-oriented text form of a system.
//!
//! ```text
//! system magnetic
//! field H_m vector
//! current j0_m scalar
//! fieldlaw E_m -1 cross H_m
//! eq gauss scalar
//! gauss: 1 * dx E_m.x + 1 * dy E_m.y + 1 * dz E_m.z + -1 * src j0_m
//! ```
//!
//! A row lists `coef * d<sym> <field slot>` terms and `coef * src <current
//! slot>` terms, the latter standing for `coef·e·j` on the left-hand side.
//! Rows that are absent are zero; `#` starts a comment.

use std::fmt::Write as _;

use super::{parse_deriv, FieldSysError, LinearFieldSystem, Multiplet, PolyMatrix};
use crate::exactmath::{ExactMatrix, Ring, GR};
use crate::reps::{Component, Coupling, Kind, LinearLaw};

fn kind_name(k: Kind) -> &'static str {
    match k {
        Kind::Scalar => "scalar",
        Kind::Vector => "vector",
    }
}

fn coupling_name(c: Coupling) -> &'static str {
    match c {
        Coupling::Dot => "dot",
        Coupling::Scale => "scale",
        Coupling::Cross => "cross",
    }
}

fn write_multiplet(out: &mut String, word: &str, m: &Multiplet) {
    for c in m.layout() {
        let _ = writeln!(out, "{word} {} {}", c.name, kind_name(c.kind));
    }
    for l in &m.laws {
        let _ = writeln!(
            out,
            "{word}law {} {} {} {}",
            m.layout()[l.target].name,
            l.coef,
            coupling_name(l.coupling),
            m.layout()[l.source].name
        );
    }
}

/// Renders a system in the text catalogue format.
pub fn export_text(sys: &LinearFieldSystem) -> String {
    let mut out = format!("system {}\n", sys.name);
    if !sys.coupling.is_one() {
        let _ = writeln!(out, "coupling {}", sys.coupling);
    }
    write_multiplet(&mut out, "field", &sys.field);
    write_multiplet(&mut out, "current", &sys.current);
    for e in &sys.equations {
        let _ = writeln!(out, "eq {} {}", e.name, kind_name(e.kind));
    }
    let fields = sys.field.slot_names();
    let currents = sys.current.slot_names();
    for (r, row) in sys.row_names().iter().enumerate() {
        let mut terms = Vec::new();
        let lhs = sys.symbol.render_row(r, &fields);
        if lhs != "0" {
            terms.push(lhs);
        }
        for (c, name) in currents.iter().enumerate() {
            let v = sys.source.get(r, c);
            if !v.is_zero() {
                terms.push(format!("{} * src {name}", v.neg_ref()));
            }
        }
        if !terms.is_empty() {
            let _ = writeln!(out, "{row}: {}", terms.join(" + "));
        }
    }
    out
}

fn parse_kind(s: &str) -> Option<Kind> {
    match s {
        "scalar" => Some(Kind::Scalar),
        "vector" => Some(Kind::Vector),
        _ => None,
    }
}

fn parse_coupling(s: &str) -> Option<Coupling> {
    match s {
        "dot" => Some(Coupling::Dot),
        "scale" => Some(Coupling::Scale),
        "cross" => Some(Coupling::Cross),
        _ => None,
    }
}

struct LawLine {
    target: String,
    coef: GR,
    coupling: Coupling,
    source: String,
}

fn build_multiplet(
    layout: Vec<Component>,
    laws: &[LawLine],
    line: usize,
) -> Result<Multiplet, FieldSysError> {
    let idx = |n: &str| {
        layout
            .iter()
            .position(|c| c.name == n)
            .ok_or_else(|| FieldSysError::UnknownComponent(n.to_string()))
    };
    let mut seen = std::collections::BTreeSet::new();
    if let Some(dup) = layout.iter().find(|c| !seen.insert(c.name.as_str())) {
        return Err(FieldSysError::Parse {
            line,
            msg: format!("duplicate component {}", dup.name),
        });
    }
    let mut out = Vec::new();
    for l in laws {
        let (t, s) = (idx(&l.target)?, idx(&l.source)?);
        let ok = match l.coupling {
            Coupling::Dot => layout[t].kind == Kind::Scalar && layout[s].kind == Kind::Vector,
            Coupling::Scale => layout[t].kind == Kind::Vector && layout[s].kind == Kind::Scalar,
            Coupling::Cross => layout[t].kind == Kind::Vector && layout[s].kind == Kind::Vector,
        };
        if !ok {
            return Err(FieldSysError::Parse {
                line,
                msg: format!("law {} <- {} has mismatched kinds", l.target, l.source),
            });
        }
        out.push(LinearLaw {
            target: t,
            source: s,
            coupling: l.coupling,
            coef: l.coef.clone(),
        });
    }
    Ok(Multiplet::new(layout, out))
}

/// Parses the text catalogue format.
pub fn parse_text(text: &str) -> Result<LinearFieldSystem, FieldSysError> {
    let mut name = None;
    let mut coupling = GR::one();
    let (mut fields, mut currents, mut equations) = (Vec::new(), Vec::new(), Vec::new());
    let (mut flaws, mut jlaws) = (Vec::new(), Vec::new());
    let mut rows: Vec<(usize, String, String)> = Vec::new();
    let mut last_header = 0;

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let err = |msg: &str| FieldSysError::Parse {
            line,
            msg: msg.to_string(),
        };
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some((row, terms)) = content.split_once(':') {
            rows.push((line, row.trim().to_string(), terms.trim().to_string()));
            continue;
        }
        last_header = line;
        let words: Vec<&str> = content.split_whitespace().collect();
        match words.as_slice() {
            ["system", n] => name = Some(n.to_string()),
            ["coupling", c] => coupling = c.parse().map_err(|_| err("bad coupling constant"))?,
            [w @ ("field" | "current" | "eq"), n, k] => {
                let kind = parse_kind(k).ok_or_else(|| err("kind must be scalar or vector"))?;
                let c = Component {
                    name: n.to_string(),
                    kind,
                };
                match *w {
                    "field" => fields.push(c),
                    "current" => currents.push(c),
                    _ => equations.push(c),
                }
            }
            [w @ ("fieldlaw" | "currentlaw"), t, c, k, s] => {
                let law = LawLine {
                    target: t.to_string(),
                    coef: c.parse().map_err(|_| err("bad law coefficient"))?,
                    coupling: parse_coupling(k)
                        .ok_or_else(|| err("coupling must be dot, scale or cross"))?,
                    source: s.to_string(),
                };
                if *w == "fieldlaw" {
                    flaws.push(law);
                } else {
                    jlaws.push(law);
                }
            }
            _ => return Err(err(&format!("unrecognised line `{content}`"))),
        }
    }

    let name = name.ok_or(FieldSysError::Parse {
        line: 1,
        msg: "missing `system` line".into(),
    })?;
    let field = build_multiplet(fields, &flaws, last_header)?;
    let current = build_multiplet(currents, &jlaws, last_header)?;
    let row_names = super::slot_names(&equations);
    let field_slots = field.slot_names();
    let current_slots = current.slot_names();
    let mut symbol = PolyMatrix::zeros(row_names.len(), field.dim());
    let mut source = ExactMatrix::<GR>::zeros(row_names.len(), current.dim());

    for (line, row, terms) in rows {
        let err = |msg: String| FieldSysError::Parse { line, msg };
        let r = row_names
            .iter()
            .position(|x| *x == row)
            .ok_or_else(|| err(format!("unknown equation row `{row}`")))?;
        if terms == "0" {
            continue;
        }
        for term in terms.split(" + ") {
            let (coef, rest) = term
                .split_once(" * ")
                .ok_or_else(|| err(format!("term `{term}` lacks ` * `")))?;
            let coef: GR = coef
                .trim()
                .parse()
                .map_err(|_| err(format!("bad coefficient `{coef}`")))?;
            let parts: Vec<&str> = rest.split_whitespace().collect();
            match parts.as_slice() {
                ["src", slot] => {
                    let c = current_slots
                        .iter()
                        .position(|x| x == slot)
                        .ok_or_else(|| err(format!("unknown current `{slot}`")))?;
                    let v = source.get(r, c).sub_ref(&coef);
                    source.set(r, c, v);
                }
                [d, slot] if d.starts_with('d') => {
                    let deriv =
                        parse_deriv(&d[1..]).ok_or_else(|| err(format!("bad derivative `{d}`")))?;
                    let c = field_slots
                        .iter()
                        .position(|x| x == slot)
                        .ok_or_else(|| err(format!("unknown field `{slot}`")))?;
                    symbol.add_entry(deriv, r, c, coef);
                }
                [slot] => {
                    let c = field_slots
                        .iter()
                        .position(|x| x == slot)
                        .ok_or_else(|| err(format!("unknown field `{slot}`")))?;
                    symbol.add_entry([0; 4], r, c, coef);
                }
                _ => return Err(err(format!("cannot read term `{term}`"))),
            }
        }
    }
    Ok(LinearFieldSystem {
        name,
        field,
        current,
        coupling,
        equations,
        symbol,
        source,
    })
}
