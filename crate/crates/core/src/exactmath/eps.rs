use std::collections::BTreeMap;
use std::fmt;

use super::{ExactDiv, Field, Ring, GR};

/// Laurent polynomial in the contraction parameter ε.
///
/// Zero coefficients are never stored, so structural equality is exact equality.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct EpsSeries {
    terms: BTreeMap<i32, GR>,
}

impl EpsSeries {
    /// `c·ε^k`
    pub fn monomial(c: GR, k: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(k, c);
        }
        Self { terms }
    }

    /// The parameter ε itself.
    pub fn eps() -> Self {
        Self::monomial(GR::one(), 1)
    }

    pub fn from_terms<I: IntoIterator<Item = (i32, GR)>>(it: I) -> Self {
        let mut s = Self::default();
        for (k, c) in it {
            s.add_term(k, &c);
        }
        s
    }

    fn add_term(&mut self, k: i32, c: &GR) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(k).or_insert_with(GR::zero);
        *e = e.add_ref(c);
        if e.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &GR)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn coeff(&self, k: i32) -> GR {
        self.terms.get(&k).cloned().unwrap_or_else(GR::zero)
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    /// Multiply by ε^k.
    pub fn shift(&self, k: i32) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// Single-term series, if it is one.
    pub fn as_monomial(&self) -> Option<(i32, &GR)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(k, c)| (*k, c))
        } else {
            None
        }
    }

    /// The ε⁰ coefficient, or the lowest negative exponent when the limit ε→0 diverges.
    pub fn limit(&self) -> Result<GR, i32> {
        match self.min_exp() {
            Some(k) if k < 0 => Err(k),
            _ => Ok(self.coeff(0)),
        }
    }

    /// Numerical evaluation at a real ε, as (re, im).
    pub fn eval_f64(&self, eps: f64) -> (f64, f64) {
        self.terms.iter().fold((0.0, 0.0), |(re, im), (k, c)| {
            let (cr, ci) = c.to_f64_pair();
            let p = eps.powi(*k);
            (re + cr * p, im + ci * p)
        })
    }
}

impl Ring for EpsSeries {
    fn zero() -> Self {
        Self::default()
    }
    fn one() -> Self {
        Self::monomial(GR::one(), 0)
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add_ref(&self, o: &Self) -> Self {
        let mut s = self.clone();
        for (k, c) in &o.terms {
            s.add_term(*k, c);
        }
        s
    }
    fn sub_ref(&self, o: &Self) -> Self {
        let mut s = self.clone();
        for (k, c) in &o.terms {
            s.add_term(*k, &c.neg_ref());
        }
        s
    }
    fn mul_ref(&self, o: &Self) -> Self {
        let mut s = Self::default();
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                s.add_term(a + b, &x.mul_ref(y));
            }
        }
        s
    }
    fn neg_ref(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(k, c)| (*k, c.neg_ref())).collect(),
        }
    }
    fn from_scalar(c: GR) -> Self {
        Self::monomial(c, 0)
    }
    fn scale(&self, c: &GR) -> Self {
        if c.is_zero() {
            return Self::default();
        }
        Self {
            terms: self.terms.iter().map(|(k, x)| (*k, x.mul_ref(c))).collect(),
        }
    }
}

impl ExactDiv for EpsSeries {
    /// Laurent long division from the lowest term up; `None` unless the
    /// quotient is itself a Laurent polynomial.
    fn exact_div(&self, d: &Self) -> Option<Self> {
        let (dlo, dhi) = (d.min_exp()?, d.max_exp()?);
        let lead_inv = d.coeff(dlo).inv()?;
        let Some(top) = self.max_exp() else {
            return Some(Self::default());
        };
        let qhi = top - dhi;
        let mut rem = self.clone();
        let mut q = Self::default();
        while let Some(lo) = rem.min_exp() {
            let k = lo - dlo;
            if k > qhi {
                return None;
            }
            let c = rem.coeff(lo).mul_ref(&lead_inv);
            rem = rem.sub_ref(&d.shift(k).scale(&c));
            q.add_term(k, &c);
        }
        Some(q)
    }
}

impl fmt::Display for EpsSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, c)| match k {
                0 => format!("({c})"),
                1 => format!("({c})*eps"),
                _ => format!("({c})*eps^{k}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(pairs: &[(i32, i64)]) -> EpsSeries {
        EpsSeries::from_terms(pairs.iter().map(|&(k, c)| (k, GR::int(c))))
    }

    #[test]
    fn product_exponent_range_is_sum_of_ranges() {
        let a = s(&[(-1, 2), (3, 1)]);
        let b = s(&[(0, 1), (2, -5)]);
        let p = a.mul_ref(&b);
        assert_eq!(p.min_exp(), Some(-1));
        assert_eq!(p.max_exp(), Some(5));
    }

    #[test]
    fn cancellation_drops_terms() {
        let a = s(&[(2, 3)]);
        assert!(a.sub_ref(&a).is_zero());
        assert_eq!(a.sub_ref(&a), EpsSeries::zero());
    }

    #[test]
    fn exact_division() {
        let a = s(&[(0, 1), (1, 1)]);
        let b = s(&[(-2, 1), (0, -1)]);
        let p = a.mul_ref(&b);
        assert_eq!(p.exact_div(&a), Some(b.clone()));
        assert_eq!(p.exact_div(&b), Some(a.clone()));
        // 1 / (1 + eps) is not a Laurent polynomial
        assert_eq!(EpsSeries::one().exact_div(&a), None);
    }

    #[test]
    fn limit_reports_lowest_negative_exponent() {
        assert_eq!(s(&[(-3, 1), (-1, 2), (0, 7)]).limit(), Err(-3));
        assert_eq!(s(&[(0, 7), (2, 1)]).limit(), Ok(GR::int(7)));
        assert_eq!(s(&[(2, 1)]).limit(), Ok(GR::zero()));
    }
}
