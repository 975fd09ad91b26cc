//! Sparse multivariate polynomials and total-degree-truncated power series
//! over an exact [`Field`].

mod exponent;
pub mod json;
pub mod text;

use std::collections::BTreeMap;
use std::fmt;

pub use exponent::Exponent;
pub use text::{format_series, parse_series, parse_with, SeriesFile, VarNames};

use crate::error::{Error, Result};
use crate::field::{Field, FieldValue};

/// A finite sum of terms `a_α x^α`.
///
/// When `truncation` is `Some(D)`, coefficients of total degree above `D`
/// are unknown and no such term is stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    n: usize,
    field: Field,
    terms: BTreeMap<Exponent, FieldValue>,
    truncation: Option<u32>,
}

impl Series {
    pub fn zero(n: usize, field: Field) -> Self {
        Series {
            n,
            field,
            terms: BTreeMap::new(),
            truncation: None,
        }
    }

    pub fn one(n: usize, field: Field) -> Self {
        Self::monomial(Exponent::zero(n), field.one())
    }

    /// `coef * x^exp`; panics on a negative exponent.
    pub fn monomial(exp: Exponent, coef: FieldValue) -> Self {
        assert!(exp.is_nonnegative(), "monomial with negative exponent {exp}");
        let field = coef.field();
        let mut s = Series::zero(exp.dim(), field);
        s.add_term(exp, coef);
        s
    }

    /// Collects terms, combining repeated exponents and dropping zeros.
    pub fn from_terms<I>(n: usize, field: Field, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Exponent, FieldValue)>,
    {
        let mut s = Series::zero(n, field);
        for (e, c) in terms {
            if e.dim() != n {
                return Err(Error::Mismatch(format!("exponent {e} in a {n}-variable series")));
            }
            if !e.is_nonnegative() {
                return Err(Error::Mismatch(format!("negative exponent {e}")));
            }
            if c.field() != field {
                return Err(Error::Mismatch(format!("coefficient over {} in a series over {field}", c.field())));
            }
            s.add_term(e, c);
        }
        Ok(s)
    }

    /// Convenience constructor from small integer data.
    pub fn from_ints(field: Field, terms: &[(&[i64], i64)]) -> Self {
        let n = terms.first().map(|t| t.0.len()).unwrap_or(1);
        Series::from_terms(n, field, terms.iter().map(|(e, c)| (Exponent::from(*e), field.from_i64(*c))))
            .expect("well-formed integer terms")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn truncation(&self) -> Option<u32> {
        self.truncation
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &FieldValue)> + '_ {
        self.terms.iter()
    }

    pub fn support(&self) -> Vec<Exponent> {
        self.terms.keys().cloned().collect()
    }

    pub fn coefficient(&self, e: &Exponent) -> FieldValue {
        self.terms.get(e).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn contains(&self, e: &Exponent) -> bool {
        self.terms.contains_key(e)
    }

    /// Adds `c * x^e` in place.
    pub fn add_term(&mut self, e: Exponent, c: FieldValue) {
        debug_assert_eq!(e.dim(), self.n);
        if c.is_zero() {
            return;
        }
        if let Some(t) = self.truncation {
            if e.degree() > t as i64 {
                return;
            }
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    fn check_compatible(&self, other: &Series) -> Result<()> {
        if self.n != other.n {
            return Err(Error::Mismatch(format!("{} vs {} variables", self.n, other.n)));
        }
        if self.field != other.field {
            return Err(Error::Mismatch(format!("field {} vs {}", self.field, other.field)));
        }
        Ok(())
    }

    fn combined_truncation(a: Option<u32>, b: Option<u32>) -> Option<u32> {
        match (a, b) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (x, None) => x,
            (None, y) => y,
        }
    }

    pub fn try_add(&self, other: &Series) -> Result<Series> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        out.truncation = Self::combined_truncation(self.truncation, other.truncation);
        out.discard_above_truncation();
        for (e, c) in other.terms() {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Series) -> Result<Series> {
        self.try_add(&other.neg())
    }

    /// Panicking `+` for series known to be compatible.
    pub fn add(&self, other: &Series) -> Series {
        self.try_add(other).expect("compatible series")
    }

    pub fn sub(&self, other: &Series) -> Series {
        self.try_sub(other).expect("compatible series")
    }

    pub fn neg(&self) -> Series {
        self.map_coefficients(|c| -c)
    }

    pub fn scale(&self, k: &FieldValue) -> Series {
        if k.is_zero() {
            return Series { terms: BTreeMap::new(), ..self.clone() };
        }
        self.map_coefficients(|c| c * k)
    }

    fn map_coefficients(&self, f: impl Fn(&FieldValue) -> FieldValue) -> Series {
        Series {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), f(c))).collect(),
            ..self.clone()
        }
    }

    /// Exact product; with `truncation = Some(D)` terms of degree above `D`
    /// are discarded and the result carries truncation `D`.
    pub fn multiply(&self, other: &Series, truncation: Option<u32>) -> Result<Series> {
        self.check_compatible(other)?;
        let trunc = Self::combined_truncation(
            Self::combined_truncation(self.truncation, other.truncation),
            truncation,
        );
        let mut out = Series::zero(self.n, self.field);
        out.truncation = trunc;
        let limit = trunc.map(|t| t as i64);
        for (ea, ca) in &self.terms {
            let da = ea.degree();
            if limit.is_some_and(|l| da > l) {
                continue;
            }
            for (eb, cb) in &other.terms {
                if limit.is_some_and(|l| da + eb.degree() > l) {
                    continue;
                }
                out.add_term(ea + eb, ca * cb);
            }
        }
        Ok(out)
    }

    /// Panicking product for series known to be compatible.
    pub fn mul(&self, other: &Series) -> Series {
        self.multiply(other, None).expect("compatible series")
    }

    /// Drops terms of degree above `d` and records the truncation.
    pub fn truncate(&self, d: u32) -> Series {
        let mut out = self.clone();
        out.truncation = Self::combined_truncation(self.truncation, Some(d));
        out.discard_above_truncation();
        out
    }

    /// Forgets the truncation marker; the stored terms are kept as an exact
    /// polynomial.
    pub fn as_polynomial(&self) -> Series {
        Series { truncation: None, ..self.clone() }
    }

    pub(crate) fn set_truncation(&mut self, t: Option<u32>) {
        self.truncation = t;
        self.discard_above_truncation();
    }

    fn discard_above_truncation(&mut self) {
        if let Some(t) = self.truncation {
            self.terms.retain(|e, _| e.degree() <= t as i64);
        }
    }

    /// Symbolic restriction: the sub-sum over exponents in `points`.
    pub fn restrict<'a, I>(&self, points: I) -> Series
    where
        I: IntoIterator<Item = &'a Exponent>,
    {
        let mut out = Series::zero(self.n, self.field);
        for p in points {
            if let Some(c) = self.terms.get(p) {
                out.terms.insert(p.clone(), c.clone());
            }
        }
        out
    }

    /// Restriction to the lattice points of the segment `[a, b]`.
    pub fn restrict_to_segment(&self, a: &Exponent, b: &Exponent) -> Series {
        self.restrict(segment_lattice_points(a, b).iter())
    }

    /// Terms satisfying a predicate.
    pub fn filter(&self, keep: impl Fn(&Exponent) -> bool) -> Series {
        Series {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| keep(e))
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
            ..self.clone()
        }
    }

    /// Multiplies by `x^shift`; `None` if some exponent would go negative.
    pub fn shift(&self, shift: &Exponent) -> Option<Series> {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let s = e + shift;
            if !s.is_nonnegative() {
                return None;
            }
            terms.insert(s, c.clone());
        }
        let mut out = Series { terms, ..self.clone() };
        if let Some(t) = out.truncation {
            let delta = shift.degree();
            out.truncation = Some((t as i64 + delta).max(0) as u32);
        }
        Some(out)
    }

    /// Componentwise minimum of the support (the monomial content); `None`
    /// for the zero series.
    pub fn min_exponent(&self) -> Option<Exponent> {
        let mut it = self.terms.keys();
        let first = it.next()?.clone();
        Some(it.fold(first, |acc, e| acc.componentwise_min(e)))
    }

    /// Largest total degree among stored terms.
    pub fn total_degree(&self) -> Option<i64> {
        self.terms.keys().map(|e| e.degree()).max()
    }

    /// Smallest total degree among stored terms.
    pub fn order(&self) -> Option<i64> {
        self.terms.keys().next().map(|e| e.degree())
    }

    /// Highest power of variable `var` (0-based) present.
    pub fn degree_in(&self, var: usize) -> Option<i64> {
        self.terms.keys().map(|e| e.0[var]).max()
    }

    /// Coefficient of `x_var^k` viewed as a series in the remaining
    /// variables (returned with `x_var` exponent zero).
    pub fn coefficient_of_power(&self, var: usize, k: i64) -> Series {
        let mut out = Series::zero(self.n, self.field);
        out.truncation = self.truncation;
        for (e, c) in &self.terms {
            if e.0[var] == k {
                let mut f = e.clone();
                f.0[var] = 0;
                out.terms.insert(f, c.clone());
            }
        }
        out
    }

    /// Formats with the default names `x1..xn`.
    pub fn to_text(&self) -> String {
        text::format_series(self, &VarNames::indexed(self.n))
    }

    pub fn to_text_with(&self, names: &VarNames) -> String {
        text::format_series(self, names)
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Lattice points `a, a+c, ..., b` of the segment `[a, b]` with `c`
/// primitive. A degenerate segment yields the single point `a`.
pub fn segment_lattice_points(a: &Exponent, b: &Exponent) -> Vec<Exponent> {
    let d = b - a;
    let g = d.content();
    if g == 0 {
        return vec![a.clone()];
    }
    let step = Exponent(d.0.iter().map(|x| x / g).collect());
    (0..=g).map(|j| a + &step.scale(j)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Series {
        parse_series(s, Field::Rationals).unwrap()
    }

    #[test]
    fn product_from_the_remark() {
        let f = q("x3^2 + x1*x2").multiply(&q("x3 + x1*x2"), None).unwrap();
        let expect = q("x3^3 + x1*x2*x3^2 + x1*x2*x3 + x1^2*x2^2");
        assert_eq!(f, expect);
    }

    #[test]
    fn identity_and_truncation() {
        let f = q("x1^2 - 3*x2 + 1/2");
        assert_eq!(f.mul(&Series::one(2, Field::Rationals)), f);
        let vars = VarNames::new(vec!["x".into(), "y".into()]);
        let a = text::parse_with("y - x", Field::Rationals, &vars).unwrap();
        let b = text::parse_with("y + x", Field::Rationals, &vars).unwrap();
        let p = a.multiply(&b, Some(1)).unwrap();
        assert!(p.is_zero());
        assert_eq!(p.truncation(), Some(1));
    }

    #[test]
    fn restriction() {
        let f = q("x3^3 + x1*x2*x3^2 + x1*x2*x3 + x1^2*x2^2");
        let r = f.restrict_to_segment(&Exponent(vec![1, 1, 1]), &Exponent(vec![2, 2, 0]));
        assert_eq!(r, q("x1*x2*x3 + x1^2*x2^2"));
        assert!(f.restrict(std::iter::empty()).is_zero());

        let vars = VarNames::new(vec!["x".into(), "y".into()]);
        let g = text::parse_with("y^2 - x^2 - x^3", Field::Rationals, &vars).unwrap();
        let pts = segment_lattice_points(&Exponent(vec![0, 2]), &Exponent(vec![2, 0]));
        assert_eq!(pts.len(), 3);
        let expect = text::parse_with("y^2 - x^2", Field::Rationals, &vars).unwrap();
        assert_eq!(g.restrict(pts.iter()), expect);
    }

    #[test]
    fn mismatch_is_rejected() {
        let a = q("x1");
        let b = parse_series("x1", Field::Prime(5)).unwrap();
        assert!(matches!(a.multiply(&b, None), Err(Error::Mismatch(_))));
        let c = q("x1*x2");
        assert!(a.try_add(&c).is_err());
    }

    #[test]
    fn shift_and_content() {
        let f = q("x1^2*x2 + x1*x2^3");
        assert_eq!(f.min_exponent().unwrap(), Exponent(vec![1, 1]));
        let g = f.shift(&Exponent(vec![-1, -1])).unwrap();
        assert_eq!(g, q("x1 + x2^2"));
        assert!(f.shift(&Exponent(vec![-2, 0])).is_none());
    }
}
