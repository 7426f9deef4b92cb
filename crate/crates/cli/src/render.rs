use galilei_core::exactmath::{ExactMatrix, VPoly, GR};
use galilei_core::reps::CONVENTION;
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
}

impl Outcome {
    pub fn from_bool(pass: bool) -> Self {
        if pass {
            Self::Pass
        } else {
            Self::Fail
        }
    }
}

/// What a verb produced: the verdict, structured data for JSON and a
/// rendering for humans.
pub struct Report {
    pub outcome: Outcome,
    pub data: Value,
    pub text: String,
}

impl Report {
    pub fn new(pass: bool, data: Value, text: String) -> Self {
        Self {
            outcome: Outcome::from_bool(pass),
            data,
            text,
        }
    }

    pub fn to_json(&self, argv: Vec<String>) -> String {
        let doc = json!({
            "command": argv,
            "convention": CONVENTION,
            "pass": self.outcome == Outcome::Pass,
            "result": self.data,
        });
        serde_json::to_string_pretty(&doc).expect("json values always serialize")
    }
}

pub fn matrix(m: &ExactMatrix<GR>) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|r| m.row(r).iter().map(ToString::to_string).collect())
        .collect()
}

/// A polynomial as its list of monomials, e.g. `["1/2*v1^2", "-1*v2*v3"]`.
pub fn poly(p: &VPoly) -> Vec<String> {
    p.terms()
        .map(|(e, c)| VPoly::monomial(c.clone(), *e).to_string())
        .collect()
}

/// Nonzero entries of a polynomial matrix with named rows and columns.
pub fn poly_matrix(m: &ExactMatrix<VPoly>, names: &[String]) -> Vec<Value> {
    let mut out = Vec::new();
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            let p = m.get(r, c);
            if p.terms().next().is_some() {
                out.push(json!({ "row": names[r], "col": names[c], "poly": poly(p) }));
            }
        }
    }
    out
}

pub fn verdict(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}
