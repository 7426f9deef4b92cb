use std::collections::BTreeMap;

use crate::exactmath::{ExactMatrix, Ring, VPoly, GR};

/// Multi-index of a derivative (or symbol monomial) in `(t, x, y, z)`.
pub type Deriv = [u8; 4];

pub const DT: Deriv = [1, 0, 0, 0];

/// `∂_i` for spatial `i ∈ 0..3`.
pub fn dspace(i: usize) -> Deriv {
    let mut d = [0; 4];
    d[i + 1] = 1;
    d
}

pub fn order(d: &Deriv) -> u32 {
    d.iter().map(|&k| k as u32).sum()
}

/// Renders a multi-index as `t`, `xx`, `ty` … (empty for order zero).
pub fn deriv_name(d: &Deriv) -> String {
    let letters = ['t', 'x', 'y', 'z'];
    d.iter()
        .zip(letters)
        .flat_map(|(&k, c)| std::iter::repeat_n(c, k as usize))
        .collect()
}

pub fn parse_deriv(s: &str) -> Option<Deriv> {
    let mut d = [0u8; 4];
    for ch in s.chars() {
        let k = "txyz".find(ch)?;
        d[k] += 1;
    }
    Some(d)
}

/// Matrix-valued polynomial in the four symbols `(p_t, p_x, p_y, p_z)`.
#[derive(Clone, PartialEq, Debug)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    terms: BTreeMap<Deriv, ExactMatrix<GR>>,
}

impl PolyMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            terms: BTreeMap::new(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Deriv, &ExactMatrix<GR>)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> Vec<Deriv> {
        self.terms.keys().copied().collect()
    }

    pub fn coeff(&self, d: &Deriv) -> ExactMatrix<GR> {
        self.terms
            .get(d)
            .cloned()
            .unwrap_or_else(|| ExactMatrix::zeros(self.rows, self.cols))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_order(&self) -> u32 {
        self.terms.keys().map(order).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, d: Deriv, m: &ExactMatrix<GR>) {
        assert_eq!(m.shape(), (self.rows, self.cols), "PolyMatrix term shape");
        let sum = match self.terms.get(&d) {
            Some(cur) => cur.add(m),
            None => m.clone(),
        };
        if sum.is_zero() {
            self.terms.remove(&d);
        } else {
            self.terms.insert(d, sum);
        }
    }

    /// Adds `c` at a single entry of the coefficient of `d`.
    pub fn add_entry(&mut self, d: Deriv, r: usize, c: usize, v: GR) {
        let mut m = ExactMatrix::zeros(self.rows, self.cols);
        m.set(r, c, v);
        self.add_term(d, &m);
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "PolyMatrix product shape");
        let mut out = Self::zeros(self.rows, o.cols);
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                let d = [a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]];
                out.add_term(d, &x.mul(y));
            }
        }
        out
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (d, m) in &o.terms {
            out.add_term(*d, m);
        }
        out
    }

    pub fn scale(&self, c: &GR) -> Self {
        let mut out = Self::zeros(self.rows, self.cols);
        for (d, m) in &self.terms {
            out.add_term(*d, &m.scale(c));
        }
        out
    }

    /// Right multiplication by a constant matrix.
    pub fn mul_const(&self, m: &ExactMatrix<GR>) -> Self {
        let mut out = Self::zeros(self.rows, m.cols());
        for (d, x) in &self.terms {
            out.add_term(*d, &x.mul(m));
        }
        out
    }

    /// Left multiplication by a constant matrix.
    pub fn const_mul(&self, m: &ExactMatrix<GR>) -> Self {
        let mut out = Self::zeros(m.rows(), self.cols);
        for (d, x) in &self.terms {
            out.add_term(*d, &m.mul(x));
        }
        out
    }

    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut out = Self::zeros(rows.len(), cols.len());
        for (d, m) in &self.terms {
            out.add_term(*d, &m.submatrix(rows, cols));
        }
        out
    }

    pub fn map_terms(
        &self,
        rows: usize,
        cols: usize,
        f: impl Fn(&ExactMatrix<GR>) -> ExactMatrix<GR>,
    ) -> Self {
        let mut out = Self::zeros(rows, cols);
        for (d, m) in &self.terms {
            out.add_term(*d, &f(m));
        }
        out
    }

    /// Terms of one row as `c * d<sym> <col>` joined by ` + `, ordered by
    /// derivative order, then `t, x, y, z`, then column; `0` for an empty row.
    pub fn render_row(&self, r: usize, cols: &[String]) -> String {
        let mut keys: Vec<&Deriv> = self.terms.keys().collect();
        keys.sort_by_key(|d| (order(d), deriv_name(d)));
        let mut parts = Vec::new();
        for d in keys {
            let m = &self.terms[d];
            for (c, name) in cols.iter().enumerate() {
                let v = m.get(r, c);
                if v.is_zero() {
                    continue;
                }
                match deriv_name(d).as_str() {
                    "" => parts.push(format!("{v} * {name}")),
                    sym => parts.push(format!("{v} * d{sym} {name}")),
                }
            }
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }

    /// Evaluates at a covector, each monomial taken literally (no factors of i).
    pub fn eval(&self, p: &[GR; 4]) -> ExactMatrix<GR> {
        let mut out = ExactMatrix::zeros(self.rows, self.cols);
        for (d, m) in &self.terms {
            let mut w = GR::one();
            for k in 0..4 {
                for _ in 0..d[k] {
                    w = w.mul_ref(&p[k]);
                }
            }
            out = out.add(&m.scale(&w));
        }
        out
    }

    /// Symbol of the differential operator at a plane wave `exp(i p·x)`:
    /// every derivative contributes a factor `i p`.
    pub fn eval_wave(&self, p: &[GR; 4]) -> ExactMatrix<GR> {
        let ip: [GR; 4] = std::array::from_fn(|k| p[k].mul_ref(&GR::i()));
        self.eval(&ip)
    }

    /// `C(p_t + v·p, p)`: substitutes the boosted time symbol and expands,
    /// with velocity-polynomial coefficients.
    pub fn boosted_time(&self) -> BTreeMap<Deriv, ExactMatrix<VPoly>> {
        let mut out: BTreeMap<Deriv, ExactMatrix<VPoly>> = BTreeMap::new();
        for (d, m) in &self.terms {
            let lifted = ExactMatrix::<VPoly>::lift(m);
            for (shift, coef) in expand_time_power(d[0]) {
                let key = [shift[0], d[1] + shift[1], d[2] + shift[2], d[3] + shift[3]];
                let term = lifted.scale_by(&coef);
                let slot = out
                    .entry(key)
                    .or_insert_with(|| ExactMatrix::zeros(self.rows, self.cols));
                *slot = slot.add(&term);
            }
        }
        out.retain(|_, m| !m.is_zero());
        out
    }
}

fn factorial(n: u8) -> i64 {
    (1..=n as i64).product()
}

/// `(p_t + v·p)^k = Σ multinomial · p_t^{k0} Π (v_i p_i)^{k_i}`; returns the
/// symbol exponents with their velocity coefficients.
fn expand_time_power(k: u8) -> Vec<(Deriv, VPoly)> {
    let mut out = Vec::new();
    for k0 in 0..=k {
        for k1 in 0..=k - k0 {
            for k2 in 0..=k - k0 - k1 {
                let k3 = k - k0 - k1 - k2;
                let multi =
                    factorial(k) / (factorial(k0) * factorial(k1) * factorial(k2) * factorial(k3));
                let v = VPoly::monomial(GR::int(multi), [k1, k2, k3]);
                out.push(([k0, k1, k2, k3], v));
            }
        }
    }
    out
}
