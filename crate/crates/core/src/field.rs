//! Exact coefficient fields: the rationals and prime fields `F_p`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Which field the coefficients live in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rationals,
    Prime(u64),
}

impl Field {
    /// `F_p`, rejecting composite or tiny moduli.
    pub fn prime(p: u64) -> Result<Field> {
        if is_prime(p) {
            Ok(Field::Prime(p))
        } else {
            Err(Error::Precondition(format!("{p} is not a prime")))
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> FieldValue {
        self.from_i64(0)
    }

    pub fn one(&self) -> FieldValue {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> FieldValue {
        match self {
            Field::Rationals => FieldValue::Rational(BigRational::from_integer(v.into())),
            Field::Prime(p) => FieldValue::Residue {
                value: (v as i128).rem_euclid(*p as i128) as u64,
                modulus: *p,
            },
        }
    }

    pub fn from_bigint(&self, v: &BigInt) -> FieldValue {
        match self {
            Field::Rationals => FieldValue::Rational(BigRational::from_integer(v.clone())),
            Field::Prime(p) => FieldValue::Residue {
                value: reduce_bigint(v, *p),
                modulus: *p,
            },
        }
    }

    /// `num / den`, or `None` when the denominator vanishes in this field.
    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Option<FieldValue> {
        match self {
            Field::Rationals => {
                if den.is_zero() {
                    None
                } else {
                    Some(FieldValue::Rational(BigRational::new(num.clone(), den.clone())))
                }
            }
            Field::Prime(_) => {
                let d = self.from_bigint(den);
                d.inv().map(|d| self.from_bigint(num) * d)
            }
        }
    }

    /// Embeds a rational number; `None` if its denominator is divisible by `p`.
    pub fn from_rational(&self, q: &BigRational) -> Option<FieldValue> {
        self.from_ratio(q.numer(), q.denom())
    }

    pub fn contains(&self, v: &FieldValue) -> bool {
        v.field() == *self
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F {p}"),
        }
    }
}

/// A scalar of some [`Field`]. Rationals are kept reduced with positive
/// denominator (guaranteed by `BigRational`); residues lie in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldValue {
    Rational(BigRational),
    Residue { value: u64, modulus: u64 },
}

impl FieldValue {
    pub fn field(&self) -> Field {
        match self {
            FieldValue::Rational(_) => Field::Rationals,
            FieldValue::Residue { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldValue::Rational(q) => q.is_zero(),
            FieldValue::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldValue::Rational(q) => q.is_one(),
            FieldValue::Residue { value, .. } => *value == 1,
        }
    }

    pub fn inv(&self) -> Option<FieldValue> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            FieldValue::Rational(q) => FieldValue::Rational(q.recip()),
            FieldValue::Residue { value, modulus } => FieldValue::Residue {
                value: pow_mod(*value, modulus - 2, *modulus),
                modulus: *modulus,
            },
        })
    }

    pub fn pow(&self, mut e: u64) -> FieldValue {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Rational value, if this is a rational.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            FieldValue::Rational(q) => Some(q),
            FieldValue::Residue { .. } => None,
        }
    }

    /// Sign and magnitude used for printing. Residues above `p/2` print as
    /// negatives so that `-x` over `F_p` reads as `-x`, not `(p-1)*x`.
    pub fn signed_parts(&self) -> (bool, String) {
        match self {
            FieldValue::Rational(q) => {
                let mag = q.abs();
                let s = if mag.denom().is_one() {
                    mag.numer().to_string()
                } else {
                    format!("{}/{}", mag.numer(), mag.denom())
                };
                (q.is_negative(), s)
            }
            FieldValue::Residue { value, modulus } => {
                if *value > modulus / 2 {
                    (true, (modulus - value).to_string())
                } else {
                    (false, value.to_string())
                }
            }
        }
    }

    fn check_same(&self, other: &FieldValue) {
        assert_eq!(
            self.field(),
            other.field(),
            "arithmetic between values of different fields"
        );
    }
}

impl fmt::Display for FieldValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (neg, mag) = self.signed_parts();
        if neg {
            write!(f, "-{mag}")
        } else {
            write!(f, "{mag}")
        }
    }
}

impl<'a> Add<&'a FieldValue> for &'a FieldValue {
    type Output = FieldValue;
    fn add(self, rhs: &'a FieldValue) -> FieldValue {
        self.check_same(rhs);
        match (self, rhs) {
            (FieldValue::Rational(a), FieldValue::Rational(b)) => FieldValue::Rational(a + b),
            (FieldValue::Residue { value: a, modulus }, FieldValue::Residue { value: b, .. }) => {
                FieldValue::Residue {
                    value: ((*a as u128 + *b as u128) % *modulus as u128) as u64,
                    modulus: *modulus,
                }
            }
            _ => unreachable!(),
        }
    }
}

impl<'a> Sub<&'a FieldValue> for &'a FieldValue {
    type Output = FieldValue;
    fn sub(self, rhs: &'a FieldValue) -> FieldValue {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a FieldValue> for &'a FieldValue {
    type Output = FieldValue;
    fn mul(self, rhs: &'a FieldValue) -> FieldValue {
        self.check_same(rhs);
        match (self, rhs) {
            (FieldValue::Rational(a), FieldValue::Rational(b)) => FieldValue::Rational(a * b),
            (FieldValue::Residue { value: a, modulus }, FieldValue::Residue { value: b, .. }) => {
                FieldValue::Residue {
                    value: mul_mod(*a, *b, *modulus),
                    modulus: *modulus,
                }
            }
            _ => unreachable!(),
        }
    }
}

impl<'a> Div<&'a FieldValue> for &'a FieldValue {
    type Output = FieldValue;
    /// Panics on division by zero, like integer division.
    fn div(self, rhs: &'a FieldValue) -> FieldValue {
        let inv = rhs.inv().expect("division by zero in field");
        self * &inv
    }
}

impl Neg for &FieldValue {
    type Output = FieldValue;
    fn neg(self) -> FieldValue {
        match self {
            FieldValue::Rational(a) => FieldValue::Rational(-a),
            FieldValue::Residue { value, modulus } => FieldValue::Residue {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            },
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<FieldValue> for FieldValue {
            type Output = FieldValue;
            fn $m(self, rhs: FieldValue) -> FieldValue {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a FieldValue> for FieldValue {
            type Output = FieldValue;
            fn $m(self, rhs: &'a FieldValue) -> FieldValue {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for FieldValue {
    type Output = FieldValue;
    fn neg(self) -> FieldValue {
        -&self
    }
}

pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    acc
}

fn reduce_bigint(v: &BigInt, p: u64) -> u64 {
    let r = v.mod_floor(&BigInt::from(p));
    r.to_u64().expect("residue fits in u64")
}

/// Deterministic Miller-Rabin, exact for all `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for p in SMALL {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in SMALL {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        let small: Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]);
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to bases 2,3,5,7
        assert!(Field::prime(4).is_err());
    }

    #[test]
    fn residue_arithmetic() {
        let f = Field::prime(7).unwrap();
        let three = f.from_i64(3);
        let five = f.from_i64(5);
        assert_eq!(&three * &five, f.from_i64(1));
        assert_eq!(&three - &five, f.from_i64(5));
        assert_eq!(three.inv().unwrap(), five);
        assert_eq!(f.from_i64(-1), f.from_i64(6));
        assert!(f.from_ratio(&1.into(), &7.into()).is_none());
        assert_eq!(f.from_ratio(&1.into(), &2.into()).unwrap(), f.from_i64(4));
    }

    #[test]
    fn rational_arithmetic() {
        let q = Field::Rationals;
        let half = q.from_ratio(&1.into(), &2.into()).unwrap();
        let third = q.from_ratio(&(-2).into(), &(-6).into()).unwrap();
        assert_eq!((&half + &third).to_string(), "5/6");
        assert_eq!((&third - &half).to_string(), "-1/6");
        assert_eq!(half.pow(3).to_string(), "1/8");
        assert!(q.zero().inv().is_none());
    }

    #[test]
    fn signed_printing_of_residues() {
        let f = Field::Prime(101);
        assert_eq!(f.from_i64(-3).to_string(), "-3");
        assert_eq!(f.from_i64(50).to_string(), "50");
        assert_eq!(f.from_i64(51).to_string(), "-50");
    }
}
