//! Truncated Weierstrass preparation in the last variable and division by
//! a Weierstrass polynomial.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::series::{Exponent, Series};

/// Unit and Weierstrass polynomial, both truncated at the requested degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Prepared {
    pub unit: Series,
    pub poly: Series,
    /// `x_n`-degree of the Weierstrass polynomial.
    pub degree: i64,
}

fn last_deg(e: &Exponent) -> i64 {
    *e.0.last().expect("n >= 1")
}

fn head_deg(e: &Exponent) -> i64 {
    e.0[..e.0.len() - 1].iter().sum()
}

/// Product keeping only terms with `x'`-degree at most `kmax` and
/// `x_n`-degree below `nprec`.
fn mul_clip(a: &Series, b: &Series, kmax: i64, nprec: i64) -> Series {
    let mut out = Series::zero(a.n(), a.field());
    for (ea, ca) in a.terms() {
        for (eb, cb) in b.terms() {
            let e = ea + eb;
            if head_deg(&e) <= kmax && last_deg(&e) < nprec {
                out.add_term(e, ca * cb);
            }
        }
    }
    out
}

/// Inverse of a unit power series in `x_n` alone, to `x_n`-precision `nprec`.
fn inverse_in_last(v: &Series, nprec: i64) -> Result<Series> {
    let n = v.n();
    let field = v.field();
    let coeff = |k: i64| {
        let mut e = vec![0; n];
        e[n - 1] = k;
        v.coefficient(&Exponent(e))
    };
    let inv0 = coeff(0)
        .inv()
        .ok_or_else(|| Error::NoPureLastPower("unit part vanishes at the origin".into()))?;
    let mut b = vec![inv0.clone()];
    for k in 1..nprec {
        let mut acc = field.zero();
        for j in 1..=k {
            acc = &acc + &(&coeff(j) * &b[(k - j) as usize]);
        }
        b.push(-&(&acc * &inv0));
    }
    let mut out = Series::zero(n, field);
    for (k, c) in b.into_iter().enumerate() {
        let mut e = vec![0; n];
        e[n - 1] = k as i64;
        out.add_term(Exponent(e), c);
    }
    Ok(out)
}

/// `s = u * W` modulo total degree `> d` with `W = x_n^k + sum_{j<k} a_j x_n^j`,
/// `a_j(0) = 0`, `u(0) != 0`. The input is treated as exact; a truncated
/// input must be known far enough (`k*d` suffices) for the output to be
/// meaningful.
pub fn weierstrass_prepare(s: &Series, d: u32) -> Result<Prepared> {
    let n = s.n();
    let field: Field = s.field();
    let pure: Vec<i64> = s.terms().map(|(e, _)| e).filter(|e| head_deg(e) == 0).map(last_deg).collect();
    let Some(&k) = pure.iter().min() else {
        return Err(Error::NoPureLastPower("no term in x_n alone".into()));
    };
    let dd = d as i64;
    let last = Exponent::unit(n, n - 1);
    // x_n precision: every division by x_n^k loses k digits.
    let nprec = k * (dd + 1) + dd + 1;
    let s = s.as_polynomial().filter(|e| head_deg(e) <= dd && last_deg(e) < nprec);
    let part = |j: i64| s.filter(|e| head_deg(e) == j);
    let v = part(0).shift(&last.scale(-k)).expect("x_n^k divides the pure part");
    let v_inv = inverse_in_last(&v, nprec)?;

    let mut us: Vec<Series> = vec![v.clone()];
    let mut a_parts: Vec<Series> = vec![Series::zero(n, field)];
    for j in 1..=dd {
        let mut rhs = part(j);
        for i in 1..j as usize {
            rhs = rhs.sub(&mul_clip(&us[i], &a_parts[j as usize - i], dd, nprec));
        }
        let a_j = mul_clip(&v_inv, &rhs, dd, k);
        let rest = rhs.sub(&mul_clip(&v, &a_j, dd, nprec));
        if rest.terms().any(|(e, _)| last_deg(e) < k) {
            return Err(Error::internal("Weierstrass step left low x_n terms"));
        }
        us.push(rest.shift(&last.scale(-k)).expect("x_n^k divides"));
        a_parts.push(a_j);
    }
    let mut poly = Series::monomial(last.scale(k), field.one());
    for a in &a_parts {
        poly = poly.add(a);
    }
    let unit = us.iter().fold(Series::zero(n, field), |acc, u| acc.add(u));
    Ok(Prepared { unit: unit.truncate(d), poly: poly.truncate(d), degree: k })
}

/// Quotient of `f` by the monic (in `x_n`) polynomial `w` of `x_n`-degree
/// `k`, correct up to total degree `d`. Remainder terms above degree `d + k`
/// cannot influence quotient terms of degree `<= d` and are dropped.
pub fn divide_by_weierstrass(f: &Series, w: &Series, k: i64, d: u32) -> Series {
    let n = f.n();
    let cap = d as i64 + k;
    let mut rem = f.filter(|e| e.degree() <= cap).as_polynomial();
    let mut quot = Series::zero(n, f.field());
    let lower = w.filter(|e| last_deg(e) < k).as_polynomial();
    loop {
        let Some((e, c)) = rem
            .terms()
            .filter(|(e, _)| last_deg(e) >= k)
            .max_by_key(|(e, _)| (last_deg(e), (*e).clone()))
            .map(|(e, c)| (e.clone(), c.clone()))
        else {
            break;
        };
        let mut m = e.clone();
        *m.0.last_mut().expect("n >= 1") -= k;
        quot.add_term(m.clone(), c.clone());
        rem.add_term(e, -&c);
        for (le, lc) in lower.terms() {
            let t = &m + le;
            if t.degree() <= cap {
                rem.add_term(t, -&(&c * lc));
            }
        }
    }
    quot.truncate(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{parse_with, VarNames};

    fn q(s: &str) -> Series {
        parse_with(s, Field::Rationals, &VarNames::indexed(2)).unwrap()
    }

    #[test]
    fn already_a_unit_multiple() {
        let p = weierstrass_prepare(&q("x2 + x1*x2^2"), 5).unwrap();
        assert_eq!(p.poly, q("x2").truncate(5));
        assert_eq!(p.unit, q("1 + x1*x2").truncate(5));
    }

    #[test]
    fn geometric_tail() {
        // x2 + x1 + x1 x2 = (1 + x1) (x2 + x1/(1 + x1))
        let p = weierstrass_prepare(&q("x2 + x1 + x1*x2"), 4).unwrap();
        assert_eq!(p.poly, q("x2 + x1 - x1^2 + x1^3 - x1^4").truncate(4));
        assert_eq!(p.unit, q("1 + x1").truncate(4));
    }

    #[test]
    fn weierstrass_input_is_fixed() {
        let s = q("x2^2 + x1*x2 + x1^3");
        let p = weierstrass_prepare(&s, 6).unwrap();
        assert_eq!(p.poly, s.truncate(6));
        assert_eq!(p.unit, Series::one(2, Field::Rationals).truncate(6));
    }

    #[test]
    fn missing_pure_power() {
        assert!(matches!(weierstrass_prepare(&q("x1*x2"), 3), Err(Error::NoPureLastPower(_))));
    }

    #[test]
    fn division() {
        let w = q("x2 - x1");
        let h = q("x2^2 + 3*x1*x2 - 7");
        let f = w.mul(&h);
        assert_eq!(divide_by_weierstrass(&f, &w, 1, 5), h.truncate(5));
    }
}
