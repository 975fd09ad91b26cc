//! Exact feasibility of small systems of linear constraints over `Q` by
//! Fourier–Motzkin elimination. Strict inequalities are tracked through the
//! elimination, so no epsilon is ever introduced; a witness is rebuilt by
//! back-substitution.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    /// `<a, x> >= b`
    Ge,
    /// `<a, x> > b`
    Gt,
    /// `<a, x> = b`
    Eq,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<BigRational>,
    pub relation: Relation,
    pub bound: BigRational,
}

/// A conjunction of linear constraints in `n` unknowns.
#[derive(Clone, Debug, Default)]
pub struct FeasibilitySystem {
    n: usize,
    constraints: Vec<Constraint>,
}

fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

impl FeasibilitySystem {
    pub fn new(n: usize) -> Self {
        FeasibilitySystem { n, constraints: Vec::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn push(&mut self, c: Constraint) -> &mut Self {
        assert_eq!(c.coeffs.len(), self.n, "constraint width");
        self.constraints.push(c);
        self
    }

    pub fn add(&mut self, coeffs: &[i64], relation: Relation, bound: i64) -> &mut Self {
        self.push(Constraint {
            coeffs: coeffs.iter().map(|&c| rat(c)).collect(),
            relation,
            bound: rat(bound),
        })
    }

    pub fn ge(&mut self, coeffs: &[i64], bound: i64) -> &mut Self {
        self.add(coeffs, Relation::Ge, bound)
    }

    pub fn gt(&mut self, coeffs: &[i64], bound: i64) -> &mut Self {
        self.add(coeffs, Relation::Gt, bound)
    }

    pub fn eq(&mut self, coeffs: &[i64], bound: i64) -> &mut Self {
        self.add(coeffs, Relation::Eq, bound)
    }

    /// `true` when `x` satisfies every constraint.
    pub fn satisfied_by(&self, x: &[BigRational]) -> bool {
        self.constraints.iter().all(|c| {
            let lhs: BigRational = c.coeffs.iter().zip(x).map(|(a, v)| a * v).sum();
            match c.relation {
                Relation::Ge => lhs >= c.bound,
                Relation::Gt => lhs > c.bound,
                Relation::Eq => lhs == c.bound,
            }
        })
    }
}

/// Inequality `<a, x> (>= | >) b`.
#[derive(Clone, Debug)]
struct Ineq {
    a: Vec<BigRational>,
    b: BigRational,
    strict: bool,
}

impl Ineq {
    /// Trivial inequality (all coefficients zero): `Some(holds)`.
    fn trivial(&self) -> Option<bool> {
        self.a.iter().all(Zero::is_zero).then(|| {
            let z = BigRational::zero();
            if self.strict {
                z > self.b
            } else {
                z >= self.b
            }
        })
    }
}

/// `x_v = (rhs - <coeffs, x>) / 1` with `coeffs[v] == 0`.
struct Substitution {
    var: usize,
    coeffs: Vec<BigRational>,
    rhs: BigRational,
}

struct Elimination {
    var: usize,
    lower: Vec<Ineq>,
    upper: Vec<Ineq>,
}

/// Keeps one inequality per normalized direction, the tightest one.
fn normalize(ineqs: Vec<Ineq>) -> Option<Vec<Ineq>> {
    let mut best: BTreeMap<Vec<BigRational>, (BigRational, bool)> = BTreeMap::new();
    for mut q in ineqs {
        match q.trivial() {
            Some(true) => continue,
            Some(false) => return None,
            None => {}
        }
        let pivot = q.a.iter().find(|c| !c.is_zero()).expect("nontrivial").abs();
        for c in q.a.iter_mut() {
            *c /= &pivot;
        }
        q.b /= &pivot;
        let e = best.entry(q.a).or_insert((q.b.clone(), q.strict));
        if q.b > e.0 || (q.b == e.0 && q.strict) {
            *e = (q.b, q.strict);
        }
    }
    Some(best.into_iter().map(|(a, (b, strict))| Ineq { a, b, strict }).collect())
}

fn dot(a: &[BigRational], x: &[BigRational]) -> BigRational {
    a.iter().zip(x).map(|(p, q)| p * q).sum()
}

/// Decides the system exactly; returns a rational witness if one exists.
/// Deterministic for a fixed input.
pub fn feasible(sys: &FeasibilitySystem) -> Option<Vec<BigRational>> {
    let n = sys.n;
    let mut eqs: Vec<(Vec<BigRational>, BigRational)> = Vec::new();
    let mut ineqs: Vec<Ineq> = Vec::new();
    for c in &sys.constraints {
        match c.relation {
            Relation::Eq => eqs.push((c.coeffs.clone(), c.bound.clone())),
            Relation::Ge | Relation::Gt => ineqs.push(Ineq {
                a: c.coeffs.clone(),
                b: c.bound.clone(),
                strict: c.relation == Relation::Gt,
            }),
        }
    }

    // Equalities: solve each for its first live variable and substitute.
    let mut subs: Vec<Substitution> = Vec::new();
    while let Some((a, b)) = eqs.pop() {
        let Some(v) = a.iter().position(|c| !c.is_zero()) else {
            if b.is_zero() {
                continue;
            }
            return None;
        };
        let piv = a[v].clone();
        let mut coeffs: Vec<BigRational> = a.iter().map(|c| c / &piv).collect();
        coeffs[v] = BigRational::zero();
        let rhs = &b / &piv;
        let apply = |row: &mut Vec<BigRational>, bound: &mut BigRational| {
            let k = row[v].clone();
            if k.is_zero() {
                return;
            }
            for (r, c) in row.iter_mut().zip(&coeffs) {
                *r -= &k * c;
            }
            row[v] = BigRational::zero();
            *bound -= &k * &rhs;
        };
        for (row, bound) in eqs.iter_mut() {
            apply(row, bound);
        }
        for q in ineqs.iter_mut() {
            apply(&mut q.a, &mut q.b);
        }
        for s in subs.iter_mut() {
            let k = s.coeffs[v].clone();
            if !k.is_zero() {
                for (r, c) in s.coeffs.iter_mut().zip(&coeffs) {
                    *r -= &k * c;
                }
                s.coeffs[v] = BigRational::zero();
                s.rhs -= &k * &rhs;
            }
        }
        subs.push(Substitution { var: v, coeffs, rhs });
    }

    let substituted: Vec<usize> = subs.iter().map(|s| s.var).collect();
    let mut live: Vec<usize> = (0..n).filter(|v| !substituted.contains(v)).collect();
    let mut ineqs = normalize(ineqs)?;
    let mut steps: Vec<Elimination> = Vec::new();

    while !live.is_empty() {
        // Eliminate the variable producing the fewest new inequalities.
        let (idx, &var) = live
            .iter()
            .enumerate()
            .min_by_key(|(_, &v)| {
                let pos = ineqs.iter().filter(|q| q.a[v].is_positive()).count();
                let neg = ineqs.iter().filter(|q| q.a[v].is_negative()).count();
                pos * neg
            })
            .expect("nonempty");
        live.remove(idx);
        let (mut lower, mut upper, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for q in ineqs {
            if q.a[var].is_positive() {
                lower.push(q);
            } else if q.a[var].is_negative() {
                upper.push(q);
            } else {
                rest.push(q);
            }
        }
        for lo in &lower {
            for up in &upper {
                let s = lo.a[var].clone();
                let t = -up.a[var].clone();
                let a: Vec<BigRational> =
                    lo.a.iter().zip(&up.a).map(|(x, y)| x * &t + y * &s).collect();
                rest.push(Ineq { a, b: &lo.b * &t + &up.b * &s, strict: lo.strict || up.strict });
            }
        }
        ineqs = normalize(rest)?;
        steps.push(Elimination { var, lower, upper });
    }
    // All variables gone: `normalize` has already rejected violated trivial rows.

    let mut x = vec![BigRational::zero(); n];
    for step in steps.iter().rev() {
        let v = step.var;
        let bound_of = |q: &Ineq| {
            let mut a = q.a.clone();
            let k = a[v].clone();
            a[v] = BigRational::zero();
            ((&q.b - dot(&a, &x)) / k, q.strict)
        };
        let tighter_lo = |acc: Option<(BigRational, bool)>, c: (BigRational, bool)| match acc {
            Some(p) if p.0 > c.0 || (p.0 == c.0 && p.1) => Some(p),
            _ => Some(c),
        };
        let tighter_hi = |acc: Option<(BigRational, bool)>, c: (BigRational, bool)| match acc {
            Some(p) if p.0 < c.0 || (p.0 == c.0 && p.1) => Some(p),
            _ => Some(c),
        };
        let lo = step.lower.iter().map(bound_of).fold(None, tighter_lo);
        let hi = step.upper.iter().map(bound_of).fold(None, tighter_hi);
        let one = BigRational::one();
        x[v] = match (lo, hi) {
            (Some((l, ls)), Some((h, hs))) => {
                if l == h {
                    debug_assert!(!ls && !hs);
                    l
                } else {
                    (l + h) / BigRational::from_integer(BigInt::from(2))
                }
            }
            (Some((l, s)), None) => {
                if s {
                    l + one
                } else {
                    l
                }
            }
            (None, Some((h, s))) => {
                if s {
                    h - one
                } else {
                    h
                }
            }
            (None, None) => BigRational::zero(),
        };
    }
    for s in subs.iter().rev() {
        x[s.var] = &s.rhs - dot(&s.coeffs, &x);
    }
    debug_assert!(sys.satisfied_by(&x), "witness must satisfy the system");
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn contradictory_bounds() {
        let mut s = FeasibilitySystem::new(1);
        s.ge(&[1], 1).ge(&[-1], 0);
        assert!(feasible(&s).is_none());
    }

    #[test]
    fn equality_witness() {
        let mut s = FeasibilitySystem::new(2);
        s.eq(&[1, -1], 0).ge(&[1, 0], 1);
        let w = feasible(&s).unwrap();
        assert!(s.satisfied_by(&w));
        assert_eq!(w[0], w[1]);
    }

    #[test]
    fn strictness_matters() {
        let mut s = FeasibilitySystem::new(2);
        s.ge(&[1, 0], 0).ge(&[0, 1], 0).ge(&[-1, -1], 0);
        assert!(feasible(&s).is_some());
        s.gt(&[1, 0], 0);
        assert!(feasible(&s).is_none());
    }

    #[test]
    fn inconsistent_equalities() {
        let mut s = FeasibilitySystem::new(2);
        s.eq(&[1, 1], 1).eq(&[2, 2], 3);
        assert!(feasible(&s).is_none());
    }
}
