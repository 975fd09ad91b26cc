use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Sub};

use num_integer::Integer;

/// A lattice point of `Z^n`. Exponents of stored terms are nonnegative;
/// negative coordinates only show up in intermediate lattice arithmetic.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Exponent(pub Vec<i64>);

impl Exponent {
    pub fn zero(n: usize) -> Self {
        Exponent(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        Exponent(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn dot(&self, other: &[i64]) -> i64 {
        self.0.iter().zip(other).map(|(a, b)| a * b).sum()
    }

    pub fn scale(&self, k: i64) -> Exponent {
        Exponent(self.0.iter().map(|c| c * k).collect())
    }

    pub fn componentwise_min(&self, other: &Exponent) -> Exponent {
        Exponent(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    /// gcd of the absolute values of the coordinates (0 for the origin).
    pub fn content(&self) -> i64 {
        self.0.iter().fold(0i64, |g, c| g.gcd(c))
    }

    /// `true` when `other - self` is in `N^n`.
    pub fn divides(&self, other: &Exponent) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl From<Vec<i64>> for Exponent {
    fn from(v: Vec<i64>) -> Self {
        Exponent(v)
    }
}

impl From<&[i64]> for Exponent {
    fn from(v: &[i64]) -> Self {
        Exponent(v.to_vec())
    }
}

impl Add for &Exponent {
    type Output = Exponent;
    fn add(self, rhs: &Exponent) -> Exponent {
        Exponent(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Exponent {
    type Output = Exponent;
    fn sub(self, rhs: &Exponent) -> Exponent {
        Exponent(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

/// Graded lexicographic: total degree first, then lexicographic with
/// `x1 > x2 > ... > xn`. Ascending iteration therefore lists low degree
/// first and, within a degree, higher powers of `x1` first.
impl Ord for Exponent {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Exponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl serde::Serialize for Exponent {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_order() {
        let mut v: Vec<Exponent> = [[0, 2], [1, 1], [2, 0], [0, 1], [1, 0], [0, 0]]
            .iter()
            .map(|e| Exponent(e.to_vec()))
            .collect();
        v.sort();
        let got: Vec<Vec<i64>> = v.into_iter().map(|e| e.0).collect();
        assert_eq!(got, vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![2, 0], vec![1, 1], vec![0, 2]]);
    }

    #[test]
    fn content_and_min() {
        assert_eq!(Exponent(vec![2, -4, 6]).content(), 2);
        assert_eq!(Exponent(vec![0, 0]).content(), 0);
        let a = Exponent(vec![1, 1, 1]);
        let b = Exponent(vec![2, 2, 0]);
        assert_eq!(a.componentwise_min(&b), Exponent(vec![1, 1, 0]));
        assert!(Exponent(vec![1, 1, 0]).divides(&b));
    }
}
