//! Dense univariate polynomials over a [`Field`], used as models of edge
//! polynomials: a graded element `sum u_j x^(a0 + j c)` corresponds to
//! `U(t) = sum u_j t^j`.

mod factor;

use std::fmt;

pub use factor::{factor, is_irreducible, power_of_irreducible, Factorization, MAX_FACTOR_DEGREE};

use crate::field::{Field, FieldValue};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    field: Field,
    /// Coefficients from `t^0` upward; no trailing zeros.
    coeffs: Vec<FieldValue>,
}

impl UniPoly {
    pub fn new(field: Field, coeffs: Vec<FieldValue>) -> Self {
        let mut p = UniPoly { field, coeffs };
        p.trim();
        p
    }

    pub fn from_ints(field: Field, coeffs: &[i64]) -> Self {
        Self::new(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn zero(field: Field) -> Self {
        UniPoly { field, coeffs: Vec::new() }
    }

    pub fn constant(c: FieldValue) -> Self {
        Self::new(c.field(), vec![c])
    }

    pub fn one(field: Field) -> Self {
        Self::constant(field.one())
    }

    /// The monomial `c t^k`.
    pub fn monomial(c: FieldValue, k: usize) -> Self {
        let field = c.field();
        let mut coeffs = vec![field.zero(); k];
        coeffs.push(c);
        Self::new(field, coeffs)
    }

    pub fn t(field: Field) -> Self {
        Self::monomial(field.one(), 1)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn coeffs(&self) -> &[FieldValue] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldValue {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> FieldValue {
        self.coeffs.last().cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn add(&self, o: &UniPoly) -> UniPoly {
        let len = self.coeffs.len().max(o.coeffs.len());
        Self::new(self.field, (0..len).map(|i| &self.coeff(i) + &o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &UniPoly) -> UniPoly {
        let len = self.coeffs.len().max(o.coeffs.len());
        Self::new(self.field, (0..len).map(|i| &self.coeff(i) - &o.coeff(i)).collect())
    }

    pub fn neg(&self) -> UniPoly {
        Self::new(self.field, self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn scale(&self, k: &FieldValue) -> UniPoly {
        Self::new(self.field, self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn mul(&self, o: &UniPoly) -> UniPoly {
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.field);
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Self::new(self.field, out)
    }

    pub fn pow(&self, k: usize) -> UniPoly {
        (0..k).fold(Self::one(self.field), |acc, _| acc.mul(self))
    }

    /// Euclidean division; panics when dividing by zero.
    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let inv = d.leading().inv().expect("nonzero leading coefficient");
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Self::zero(self.field), self.clone());
        }
        let mut q = vec![self.field.zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] * &inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[k + j] = &r[k + j] - &(&c * dc);
            }
            q[k] = c;
        }
        r.truncate(dd);
        (Self::new(self.field, q), Self::new(self.field, r))
    }

    pub fn rem(&self, d: &UniPoly) -> UniPoly {
        self.div_rem(d).1
    }

    /// Exact quotient, `None` if `d` does not divide `self`.
    pub fn exact_div(&self, d: &UniPoly) -> Option<UniPoly> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    /// Scaled to leading coefficient 1 (zero stays zero).
    pub fn monic(&self) -> UniPoly {
        match self.leading().inv() {
            Some(inv) => self.scale(&inv),
            None => self.clone(),
        }
    }

    /// Monic gcd.
    pub fn gcd(&self, o: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended Euclid: `(g, s, t)` with `s*self + t*o = g`, `g` monic.
    pub fn xgcd(&self, o: &UniPoly) -> (UniPoly, UniPoly, UniPoly) {
        let f = self.field;
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Self::one(f), Self::zero(f));
        let (mut t0, mut t1) = (Self::zero(f), Self::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.leading().inv() {
            Some(inv) => (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv)),
            None => (r0, s0, t0),
        }
    }

    pub fn derivative(&self) -> UniPoly {
        Self::new(
            self.field,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * &self.field.from_i64(i as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &FieldValue) -> FieldValue {
        self.coeffs
            .iter()
            .rev()
            .fold(self.field.zero(), |acc, c| &(&acc * x) + c)
    }

    /// Square-free decomposition (Musser/Yun): returns the unit and pairs
    /// `(P_i, i)` with `self = unit * prod P_i^i`, each `P_i` monic,
    /// square-free, nonconstant and pairwise coprime. Needs characteristic 0
    /// or larger than the degree.
    pub fn squarefree_decomposition(&self) -> (FieldValue, Vec<(UniPoly, usize)>) {
        let unit = self.leading();
        let f = self.monic();
        let mut out = Vec::new();
        if f.is_constant() {
            return (unit, out);
        }
        let mut c = f.gcd(&f.derivative());
        let mut w = f.exact_div(&c).expect("gcd divides");
        let mut i = 1;
        while !w.is_constant() {
            let y = w.gcd(&c);
            let z = w.exact_div(&y).expect("gcd divides");
            if !z.is_constant() {
                out.push((z, i));
            }
            c = c.exact_div(&y).expect("gcd divides");
            w = y;
            i += 1;
        }
        (unit, out)
    }

    /// `self(a t)`-free normalization: divides by the constant term when it
    /// is nonzero, otherwise makes the polynomial monic.
    pub fn normalized(&self) -> UniPoly {
        let c0 = self.coeff(0);
        match c0.inv() {
            Some(inv) => self.scale(&inv),
            None => self.monic(),
        }
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (neg, mag) = c.signed_parts();
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if mag != "1" {
                        write!(f, "{mag}*")?;
                    }
                    if i == 1 {
                        write!(f, "t")?;
                    } else {
                        write!(f, "t^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(c: &[i64]) -> UniPoly {
        UniPoly::from_ints(Field::Rationals, c)
    }

    #[test]
    fn division_and_gcd() {
        let a = q(&[1, 0, -1]); // 1 - t^2
        let b = q(&[1, -1]);
        let (qq, r) = a.div_rem(&b);
        assert_eq!(qq, q(&[1, 1]));
        assert!(r.is_zero());
        assert_eq!(q(&[1, -1]).gcd(&q(&[1, 1])), q(&[1]));
        assert_eq!(a.gcd(&q(&[-1, 1])), q(&[-1, 1]));
    }

    #[test]
    fn xgcd_identity() {
        let a = q(&[2, 3, 1]);
        let b = q(&[-1, 0, 1]);
        let (g, s, t) = a.xgcd(&b);
        assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
        assert_eq!(g, q(&[1, 1]));
    }

    #[test]
    fn squarefree() {
        // (1 - t)^2 (1 - 2t)
        let u = q(&[1, -1]).pow(2).mul(&q(&[1, -2]));
        let (unit, parts) = u.squarefree_decomposition();
        assert_eq!(unit, Field::Rationals.from_i64(-2));
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0], (q(&[-1, 2]).monic(), 1));
        assert_eq!(parts[1], (q(&[-1, 1]), 2));
        let mut back = UniPoly::constant(unit);
        for (p, i) in &parts {
            back = back.mul(&p.pow(*i));
        }
        assert_eq!(back, u);
    }

    #[test]
    fn display() {
        assert_eq!(q(&[1, 0, -1]).to_string(), "1 - t^2");
        assert_eq!(q(&[0, 2, 1]).to_string(), "2*t + t^2");
    }
}
