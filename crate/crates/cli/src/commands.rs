use std::fmt::Write as _;
use std::path::Path;

use galilei_core::contraction::{
    contract as contract_rep, direct_sum, four_vector_rep, identify, parse_scheme_matrix,
    scalar_rep, ContractionError, ContractionScheme, LorentzRep,
};
use galilei_core::fieldsys::{
    apply_constraint, boost_covariance, catalogue, drop_equations, export_text,
    potential_identities, rotation_covariance, CovarianceReport, FieldSysError, IdentityCheck,
    LinearFieldSystem, SYSTEM_NAMES,
};
use galilei_core::limits::{run_probe, LimitError, LimitProbe};
use galilei_core::par;
use galilei_core::reps::{
    build_rep, check_structure, enumerate_labels, is_indecomposable, RepLabel,
};
use serde_json::{json, Value};

use crate::render::{matrix, poly, poly_matrix, verdict, Report};
use crate::LorentzChoice;

fn parse_label(s: &str) -> Result<RepLabel, String> {
    s.parse::<RepLabel>().map_err(|e| e.to_string())
}

fn system(name: &str) -> Result<LinearFieldSystem, String> {
    catalogue(name).map_err(|e| e.to_string())
}

pub fn reps_list() -> Report {
    let mut text = String::new();
    let entries: Vec<Value> = enumerate_labels()
        .into_iter()
        .map(|(label, layout)| {
            let names: Vec<String> = layout.iter().map(|c| format!("{c:?}")).collect();
            let dim = build_rep(label).expect("catalogued").dim();
            let _ = writeln!(text, "{label}  dim {dim:>2}  [{}]", names.join(", "));
            json!({ "label": label.to_string(), "components": names, "dim": dim })
        })
        .collect();
    Report::new(true, json!(entries), text)
}

pub fn reps_check(which: &str) -> Result<Report, String> {
    let labels = if which == "all" {
        enumerate_labels().into_iter().map(|(l, _)| l).collect()
    } else {
        vec![parse_label(which)?]
    };
    let reports = par::map(&labels, |&l| {
        (l, check_structure(&build_rep(l).expect("catalogued")))
    });
    let mut text = String::new();
    let mut all = true;
    let entries: Vec<Value> = reports
        .iter()
        .map(|(label, r)| {
            let pass = r.all_pass();
            all &= pass;
            let failing: Vec<&str> = r
                .relations
                .iter()
                .filter(|c| !c.pass)
                .map(|c| c.relation.as_str())
                .collect();
            let _ = writeln!(
                text,
                "{label}: {} ({} relations)",
                verdict(pass),
                r.relations.len()
            );
            for f in &failing {
                let _ = writeln!(text, "  fails {f}");
            }
            json!({ "label": label.to_string(), "pass": pass, "relations": r.relations })
        })
        .collect();
    Ok(Report::new(all, json!(entries), text))
}

pub fn reps_indecomposable(which: &str) -> Result<Report, String> {
    let label = parse_label(which)?;
    let v = is_indecomposable(&build_rep(label).map_err(|e| e.to_string())?);
    let text = format!(
        "{label}: {} (commutant dim {}, radical dim {})\n",
        if v.indecomposable {
            "indecomposable"
        } else {
            "decomposable"
        },
        v.commutant_dim,
        v.radical_dim
    );
    let data = json!({
        "label": label.to_string(),
        "indecomposable": v.indecomposable,
        "commutant_dim": v.commutant_dim,
        "radical_dim": v.radical_dim,
    });
    Ok(Report::new(v.indecomposable, data, text))
}

pub fn contract(
    scheme: Option<&str>,
    file: Option<&Path>,
    rep: Option<LorentzChoice>,
) -> Result<Report, String> {
    let scheme = match (scheme, file) {
        (Some(name), _) => {
            ContractionScheme::by_name(name).ok_or_else(|| format!("unknown scheme `{name}`"))?
        }
        (None, Some(path)) => {
            let text =
                std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
            let v = parse_scheme_matrix(&text).map_err(|e| e.to_string())?;
            ContractionScheme::from_matrix(&path.display().to_string(), v)
                .map_err(|e| e.to_string())?
        }
        (None, None) => return Err("one of --scheme or --file is required".into()),
    };
    let rep = rep.unwrap_or(if scheme.dim() == 5 {
        LorentzChoice::FourVectorScalar
    } else {
        LorentzChoice::FourVector
    });
    let (rep_name, lorentz): (&str, LorentzRep) = match rep {
        LorentzChoice::FourVector => ("four-vector", four_vector_rep()),
        LorentzChoice::FourVectorScalar => (
            "four-vector+scalar",
            direct_sum(&[&four_vector_rep(), &scalar_rep()]),
        ),
    };
    let head = json!({ "scheme": scheme.name, "rep": rep_name });
    match contract_rep(&lorentz, &scheme) {
        Ok(g) => {
            let id = identify(&g);
            let label = id.label.map(|l| l.to_string());
            let mut text = format!(
                "{} on {rep_name}: {}\n",
                scheme.name,
                match &label {
                    Some(l) if id.exact => format!("{l} (exact)"),
                    Some(l) => format!(
                        "{l} after rescaling by [{}]",
                        id.scales
                            .iter()
                            .map(|s| s.to_string())
                            .collect::<Vec<_>>()
                            .join(", ")
                    ),
                    None => "no catalogued match".into(),
                }
            );
            for (a, eta) in g.eta.iter().enumerate() {
                let _ = writeln!(text, "eta_{}:\n{eta}", a + 1);
            }
            let data = json!({
                "scheme": scheme.name,
                "rep": rep_name,
                "label": label,
                "exact": id.exact,
                "permutation": id.permutation,
                "scales": id.scales.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "eta": g.eta.iter().map(matrix).collect::<Vec<_>>(),
                "s": g.s.iter().map(matrix).collect::<Vec<_>>(),
            });
            Ok(Report::new(id.label.is_some(), data, text))
        }
        Err(e @ ContractionError::DimensionMismatch { .. }) => Err(e.to_string()),
        Err(e) => {
            let mut data = head;
            data["error"] = json!(e.to_string());
            Ok(Report::new(
                false,
                data,
                format!("{} on {rep_name}: {e}\n", scheme.name),
            ))
        }
    }
}

fn covariance_json(sys: &LinearFieldSystem, r: &CovarianceReport) -> Value {
    json!({
        "system": r.system,
        "covariant": r.covariant,
        "M_poly": r.m.as_ref().map(|m| poly_matrix(m, &sys.row_names())),
        "failing_identity": r.failing_identity.as_ref().map(|f| json!({
            "row": f.row,
            "column": f.column,
            "residual": poly(&f.residual),
        })),
        "convention": r.convention,
    })
}

fn covariance_text(
    sys: &LinearFieldSystem,
    r: &CovarianceReport,
    rotation: bool,
    out: &mut String,
) {
    let _ = writeln!(
        out,
        "{}: {}",
        r.system,
        if r.covariant && rotation {
            "covariant"
        } else {
            "NOT covariant"
        }
    );
    if let Some(m) = &r.m {
        let names = sys.row_names();
        for e in poly_matrix(m, &names) {
            let terms: Vec<&str> = e["poly"]
                .as_array()
                .into_iter()
                .flatten()
                .filter_map(Value::as_str)
                .collect();
            let _ = writeln!(
                out,
                "  M[{}, {}] = {}",
                e["row"].as_str().unwrap_or(""),
                e["col"].as_str().unwrap_or(""),
                terms.join(" + ")
            );
        }
    }
    if let Some(f) = &r.failing_identity {
        let _ = writeln!(
            out,
            "  unbalanced at {} / {}: residual {}",
            f.row, f.column, f.residual
        );
    }
    if !rotation {
        let _ = writeln!(out, "  rotation check fails");
    }
}

pub fn covariance(which: &str) -> Result<Report, String> {
    let systems = if which == "all" {
        SYSTEM_NAMES
            .iter()
            .map(|n| system(n))
            .collect::<Result<Vec<_>, _>>()?
    } else {
        vec![system(which)?]
    };
    let results = par::map(&systems, |s| {
        (boost_covariance(s), rotation_covariance(s).pass)
    });
    let mut text = String::new();
    let mut values = Vec::new();
    let mut all = true;
    for (sys, (r, rot)) in systems.iter().zip(&results) {
        all &= r.covariant && *rot;
        covariance_text(sys, r, *rot, &mut text);
        let mut v = covariance_json(sys, r);
        v["rotation_covariant"] = json!(rot);
        values.push(v);
    }
    let data = if which == "all" {
        json!(values)
    } else {
        values.pop().expect("one system")
    };
    Ok(Report::new(all, data, text))
}

pub fn reduce(name: &str, zero: &[String], drop: &[String]) -> Result<Report, String> {
    let sys = system(name)?;
    let result = if drop.is_empty() {
        let (mut fields, mut currents) = (Vec::new(), Vec::new());
        for z in zero {
            if sys.field.index(z).is_ok() {
                fields.push(z.as_str());
            } else if sys.current.index(z).is_ok() {
                currents.push(z.as_str());
            } else {
                return Err(FieldSysError::UnknownComponent(z.clone()).to_string());
            }
        }
        apply_constraint(&sys, &fields, &currents)
    } else {
        let names: Vec<&str> = drop.iter().map(String::as_str).collect();
        drop_equations(&sys, &names)
    };
    let op = if drop.is_empty() {
        json!({ "zero": zero })
    } else {
        json!({ "drop": drop })
    };
    match result {
        Ok(reduced) => {
            let cov = boost_covariance(&reduced);
            let exported = export_text(&reduced);
            let mut text = format!("{name} reduced ({}):\n{exported}", verdict(cov.covariant));
            if let Some(f) = &cov.failing_identity {
                let _ = writeln!(text, "unbalanced at {} / {}", f.row, f.column);
            }
            let data = json!({
                "system": name,
                "operation": op,
                "reduced": exported,
                "covariance": covariance_json(&reduced, &cov),
            });
            Ok(Report::new(cov.covariant, data, text))
        }
        Err(
            e @ (FieldSysError::NotInvariant(_)
            | FieldSysError::NotClosed(_)
            | FieldSysError::NotCovariant(_)),
        ) => {
            let kind = match e {
                FieldSysError::NotInvariant(_) => "NotInvariant",
                FieldSysError::NotClosed(_) => "NotClosed",
                _ => "NotCovariant",
            };
            let data =
                json!({ "system": name, "operation": op, "error": kind, "message": e.to_string() });
            Ok(Report::new(false, data, format!("{name}: {kind}: {e}\n")))
        }
        Err(e) => Err(e.to_string()),
    }
}

fn identity_json(c: &IdentityCheck) -> Value {
    json!({ "system": c.system, "equation": c.equation, "vanishes": c.vanishes, "residual": c.residual })
}

pub fn potentials(scheme: &str) -> Result<Report, String> {
    let r = potential_identities(scheme).map_err(|e| e.to_string())?;
    let mut text = String::new();
    for c in &r.checks {
        let _ = writeln!(text, "{}.{}: {}", c.system, c.equation, verdict(c.vanishes));
        for row in &c.residual {
            let _ = writeln!(text, "  {row}");
        }
    }
    for c in &r.printed_forms {
        let _ = writeln!(
            text,
            "{}.{} as printed: {}",
            c.system,
            c.equation,
            if c.vanishes { "vanishes" } else { "residual" }
        );
        for row in &c.residual {
            let _ = writeln!(text, "  {row}");
        }
    }
    if !r.gauge_change.is_empty() {
        let _ = writeln!(text, "gauge change:");
        for g in &r.gauge_change {
            let _ = writeln!(text, "  {g}");
        }
    }
    let data = json!({
        "scheme": r.scheme,
        "checks": r.checks.iter().map(identity_json).collect::<Vec<_>>(),
        "printed_forms": r.printed_forms.iter().map(identity_json).collect::<Vec<_>>(),
        "gauge_change": r.gauge_change,
    });
    Ok(Report::new(r.all_vanish(), data, text))
}

pub fn limits(scheme: &str, target: &str, eps: &[f64], loglog: bool) -> Result<Report, String> {
    system(target)?;
    let probe = LimitProbe::new(scheme, target, eps);
    match run_probe(&probe) {
        Ok(t) => {
            let text = if loglog {
                t.loglog_text()
            } else {
                let mut s = format!("{scheme} -> {target}\n");
                for row in &t.rows {
                    let _ = writeln!(s, "eps {:<8e} max residual {:.6e}", row.eps, row.max());
                }
                match t.slope {
                    Some(k) => {
                        let _ = writeln!(
                            s,
                            "slope {k:.4} (exact leading order {:?})",
                            t.expected_order
                        );
                    }
                    None => s.push_str("residuals vanish identically\n"),
                }
                s
            };
            let data = serde_json::to_value(&t).map_err(|e| e.to_string())?;
            Ok(Report::new(true, data, text))
        }
        Err(e @ (LimitError::DispersionViolated { .. } | LimitError::NoConvergence { .. })) => {
            let data = json!({ "scheme": scheme, "target": target, "error": e.to_string() });
            Ok(Report::new(
                false,
                data,
                format!("{scheme} -> {target}: {e}\n"),
            ))
        }
        Err(e) => Err(e.to_string()),
    }
}

pub fn export(name: &str) -> Result<Report, String> {
    let text = export_text(&system(name)?);
    Ok(Report::new(
        true,
        json!({ "system": name, "text": text }),
        text,
    ))
}
