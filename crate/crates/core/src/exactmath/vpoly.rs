use std::collections::BTreeMap;
use std::fmt;

use super::{Ring, GR};

/// Highest total degree a [`VPoly`] may reach.
pub const VPOLY_MAX_DEGREE: u32 = 4;

/// Polynomial in the boost velocity components v₁, v₂, v₃.
///
/// Keys are exponent triples. Construction and multiplication assert that the
/// total degree never exceeds [`VPOLY_MAX_DEGREE`].
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct VPoly {
    terms: BTreeMap<[u8; 3], GR>,
}

fn degree(e: &[u8; 3]) -> u32 {
    e.iter().map(|&d| d as u32).sum()
}

impl VPoly {
    pub fn constant(c: GR) -> Self {
        Self::monomial(c, [0, 0, 0])
    }

    pub fn monomial(c: GR, exps: [u8; 3]) -> Self {
        assert!(
            degree(&exps) <= VPOLY_MAX_DEGREE,
            "VPoly degree cap exceeded: {exps:?}"
        );
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        Self { terms }
    }

    /// The coordinate v_a, `a ∈ 0..3`.
    pub fn var(a: usize) -> Self {
        let mut e = [0u8; 3];
        e[a] = 1;
        Self::monomial(GR::one(), e)
    }

    fn add_term(&mut self, e: [u8; 3], c: &GR) {
        if c.is_zero() {
            return;
        }
        assert!(
            degree(&e) <= VPOLY_MAX_DEGREE,
            "VPoly degree cap exceeded: {e:?}"
        );
        let slot = self.terms.entry(e).or_insert_with(GR::zero);
        *slot = slot.add_ref(c);
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u8; 3], &GR)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: [u8; 3]) -> GR {
        self.terms.get(&e).cloned().unwrap_or_else(GR::zero)
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(degree).max()
    }

    /// Exact evaluation at a velocity triple.
    pub fn eval(&self, v: &[GR; 3]) -> GR {
        let mut acc = GR::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for a in 0..3 {
                for _ in 0..e[a] {
                    t = t.mul_ref(&v[a]);
                }
            }
            acc = acc.add_ref(&t);
        }
        acc
    }
}

impl Ring for VPoly {
    fn zero() -> Self {
        Self::default()
    }
    fn one() -> Self {
        Self::constant(GR::one())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add_ref(&self, o: &Self) -> Self {
        let mut s = self.clone();
        for (e, c) in &o.terms {
            s.add_term(*e, c);
        }
        s
    }
    fn sub_ref(&self, o: &Self) -> Self {
        let mut s = self.clone();
        for (e, c) in &o.terms {
            s.add_term(*e, &c.neg_ref());
        }
        s
    }
    fn mul_ref(&self, o: &Self) -> Self {
        let mut s = Self::default();
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                s.add_term([a[0] + b[0], a[1] + b[1], a[2] + b[2]], &x.mul_ref(y));
            }
        }
        s
    }
    fn neg_ref(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (*e, c.neg_ref())).collect(),
        }
    }
    fn from_scalar(c: GR) -> Self {
        Self::constant(c)
    }
    fn scale(&self, c: &GR) -> Self {
        if c.is_zero() {
            return Self::default();
        }
        Self {
            terms: self.terms.iter().map(|(e, x)| (*e, x.mul_ref(c))).collect(),
        }
    }
}

/// Monomial-list rendering, e.g. `1/2*v1^2 + -1*v2*v3`.
impl fmt::Display for VPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut s = c.to_string();
                for (a, &d) in e.iter().enumerate() {
                    match d {
                        0 => {}
                        1 => s.push_str(&format!("*v{}", a + 1)),
                        _ => s.push_str(&format!("*v{}^{}", a + 1, d)),
                    }
                }
                s
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_of_linear_form() {
        let l = VPoly::var(0).add_ref(&VPoly::var(1));
        let sq = l.mul_ref(&l);
        assert_eq!(sq.coeff([1, 1, 0]), GR::int(2));
        assert_eq!(sq.degree(), Some(2));
        let v = [GR::int(2), GR::int(3), GR::int(7)];
        assert_eq!(sq.eval(&v), GR::int(25));
    }

    #[test]
    #[should_panic(expected = "degree cap")]
    fn degree_cap_is_enforced() {
        let v = VPoly::var(2);
        let v5 = (0..4).fold(v.clone(), |acc, _| acc.mul_ref(&v));
        let _ = v5;
    }

    #[test]
    fn display_lists_monomials() {
        let p = VPoly::var(0).mul_ref(&VPoly::var(0)).scale(&GR::frac(1, 2));
        assert_eq!(p.to_string(), "1/2*v1^2");
    }
}
