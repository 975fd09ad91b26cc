//! Factorization of univariate polynomials over `Q` and `F_p`.
//!
//! `F_p`: distinct-degree then equal-degree (Cantor–Zassenhaus) splitting.
//! `Q`: reduce a primitive integer model modulo a good prime, Hensel-lift the
//! modular factorization and recombine with Zassenhaus' subset search.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::UniPoly;
use crate::error::{Error, Result};
use crate::field::{is_prime, Field, FieldValue};

/// Largest degree accepted by [`factor`] and friends.
pub const MAX_FACTOR_DEGREE: usize = 12;

const EDF_SEED: u64 = 0x6e70_665f_6564_6631;

/// `unit * prod F_i^(k_i)` with monic irreducible, pairwise distinct `F_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: FieldValue,
    pub factors: Vec<(UniPoly, usize)>,
}

impl Factorization {
    pub fn expand(&self) -> UniPoly {
        self.factors
            .iter()
            .fold(UniPoly::constant(self.unit.clone()), |acc, (f, k)| acc.mul(&f.pow(*k)))
    }
}

fn check_bounds(u: &UniPoly) -> Result<()> {
    let deg = u.degree().unwrap_or(0);
    if deg > MAX_FACTOR_DEGREE {
        return Err(Error::DegreeTooLarge { degree: deg, bound: MAX_FACTOR_DEGREE });
    }
    if let Field::Prime(p) = u.field() {
        if p <= deg as u64 {
            return Err(Error::CharacteristicTooSmall { p, degree: deg });
        }
    }
    Ok(())
}

/// Complete factorization into irreducibles.
pub fn factor(u: &UniPoly) -> Result<Factorization> {
    if u.is_zero() {
        return Err(Error::Precondition("cannot factor the zero polynomial".into()));
    }
    check_bounds(u)?;
    let (unit, parts) = u.squarefree_decomposition();
    let mut factors = Vec::new();
    for (p, k) in parts {
        for q in factor_squarefree(&p) {
            factors.push((q, k));
        }
    }
    factors.sort_by(|a, b| {
        (a.0.degree(), a.1, a.0.to_string()).cmp(&(b.0.degree(), b.1, b.0.to_string()))
    });
    Ok(Factorization { unit, factors })
}

pub fn is_irreducible(u: &UniPoly) -> Result<bool> {
    let f = factor(u)?;
    Ok(f.factors.len() == 1 && f.factors[0].1 == 1)
}

/// `Some((F, k))` iff `u = unit * F^k` with `F` irreducible. `F` is scaled
/// to constant term 1 when possible (else monic).
pub fn power_of_irreducible(u: &UniPoly) -> Result<Option<(UniPoly, usize)>> {
    let f = factor(u)?;
    Ok(match f.factors.as_slice() {
        [(p, k)] => Some((p.normalized(), *k)),
        _ => None,
    })
}

/// Monic irreducible factors of a monic square-free polynomial.
fn factor_squarefree(f: &UniPoly) -> Vec<UniPoly> {
    if f.degree().unwrap_or(0) <= 1 {
        return vec![f.monic()];
    }
    match f.field() {
        Field::Prime(_) => factor_fp(f),
        Field::Rationals => factor_q(f),
    }
}

// ---------------------------------------------------------------- F_p

fn powmod(base: &UniPoly, e: &BigUint, m: &UniPoly) -> UniPoly {
    let mut acc = UniPoly::one(base.field());
    let b = base.rem(m);
    for i in (0..e.bits()).rev() {
        acc = acc.mul(&acc).rem(m);
        if e.bit(i) {
            acc = acc.mul(&b).rem(m);
        }
    }
    acc
}

/// Distinct-degree factorization of a monic square-free polynomial.
fn ddf(f: &UniPoly) -> Vec<(UniPoly, usize)> {
    let field = f.field();
    let p = BigUint::from(field.characteristic());
    let x = UniPoly::t(field);
    let mut rest = f.clone();
    let mut h = x.clone();
    let mut out = Vec::new();
    let mut d = 1;
    while rest.degree().unwrap_or(0) >= 2 * d {
        h = powmod(&h, &p, &rest);
        let g = h.sub(&x).gcd(&rest);
        if !g.is_constant() {
            rest = rest.exact_div(&g).expect("gcd divides");
            h = h.rem(&rest);
            out.push((g, d));
        }
        d += 1;
    }
    if !rest.is_constant() {
        let deg = rest.degree().unwrap_or(0);
        out.push((rest, deg));
    }
    out
}

fn random_poly(field: Field, below: usize, rng: &mut ChaCha8Rng) -> UniPoly {
    let p = field.characteristic();
    UniPoly::new(field, (0..below).map(|_| field.from_i64(rng.gen_range(0..p) as i64)).collect())
}

/// Splits a product of distinct irreducibles, all of degree `d`.
fn edf(f: &UniPoly, d: usize, rng: &mut ChaCha8Rng) -> Vec<UniPoly> {
    let n = f.degree().unwrap_or(0);
    if n <= d {
        return vec![f.clone()];
    }
    let field = f.field();
    let p = field.characteristic();
    loop {
        let a = random_poly(field, n, rng);
        if a.is_constant() {
            continue;
        }
        let mut g = a.gcd(f);
        if g.is_constant() {
            let b = if p == 2 {
                // trace map a + a^2 + ... + a^(2^(d-1))
                let two = BigUint::from(2u32);
                let mut term = a.rem(f);
                let mut sum = term.clone();
                for _ in 1..d {
                    term = powmod(&term, &two, f);
                    sum = sum.add(&term);
                }
                sum
            } else {
                let e = (BigUint::from(p).pow(d as u32) - 1u32) / 2u32;
                powmod(&a, &e, f).sub(&UniPoly::one(field))
            };
            g = b.gcd(f);
        }
        if !g.is_constant() && g.degree() != f.degree() {
            let other = f.exact_div(&g).expect("gcd divides");
            let mut out = edf(&g, d, rng);
            out.extend(edf(&other, d, rng));
            return out;
        }
    }
}

fn factor_fp(f: &UniPoly) -> Vec<UniPoly> {
    let mut rng = ChaCha8Rng::seed_from_u64(EDF_SEED);
    let mut out = Vec::new();
    for (g, d) in ddf(&f.monic()) {
        out.extend(edf(&g, d, &mut rng));
    }
    out
}

// ---------------------------------------------------------------- Q

/// Dense integer polynomial, constant term first, no trailing zeros.
type ZPoly = Vec<BigInt>;

fn ztrim(mut a: ZPoly) -> ZPoly {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

fn zmul(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    ztrim(out)
}

fn zsub(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let len = a.len().max(b.len());
    let z = BigInt::zero();
    ztrim((0..len).map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).collect())
}

fn zadd_scaled(a: &ZPoly, b: &ZPoly, k: &BigInt) -> ZPoly {
    let len = a.len().max(b.len());
    let z = BigInt::zero();
    ztrim((0..len).map(|i| a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z) * k).collect())
}

fn zmod(a: &ZPoly, m: &BigInt) -> ZPoly {
    ztrim(a.iter().map(|c| c.mod_floor(m)).collect())
}

fn zsymmetric(a: &ZPoly, m: &BigInt) -> ZPoly {
    let half = m / 2;
    ztrim(
        a.iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

fn zcontent(a: &ZPoly) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// Primitive part with positive leading coefficient.
fn zprimitive(a: &ZPoly) -> ZPoly {
    let mut g = zcontent(a);
    if g.is_zero() {
        return Vec::new();
    }
    if a.last().is_some_and(|c| c.is_negative()) {
        g = -g;
    }
    a.iter().map(|c| c / &g).collect()
}

/// Exact quotient `a / b` over `Z`, if any.
fn zdiv(a: &ZPoly, b: &ZPoly) -> Option<ZPoly> {
    let db = b.len().checked_sub(1)?;
    if a.len() < b.len() {
        return a.is_empty().then(Vec::new);
    }
    let lb = &b[db];
    let mut r = a.clone();
    let mut q = vec![BigInt::zero(); a.len() - db];
    for k in (0..q.len()).rev() {
        let (c, rem) = r[k + db].div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        for (j, bc) in b.iter().enumerate() {
            r[k + j] -= &c * bc;
        }
        q[k] = c;
    }
    r.iter().all(|c| c.is_zero()).then(|| ztrim(q))
}

fn to_fp(a: &ZPoly, p: u64) -> UniPoly {
    let field = Field::Prime(p);
    UniPoly::new(field, a.iter().map(|c| field.from_bigint(c)).collect())
}

fn from_fp(a: &UniPoly) -> ZPoly {
    a.coeffs()
        .iter()
        .map(|c| match c {
            FieldValue::Residue { value, .. } => BigInt::from(*value),
            FieldValue::Rational(_) => unreachable!("prime-field polynomial"),
        })
        .collect()
}

/// Primitive integer polynomial proportional to `f` (rational coefficients).
fn integer_model(f: &UniPoly) -> ZPoly {
    let den = f.coeffs().iter().fold(BigInt::one(), |l, c| {
        l.lcm(c.as_rational().expect("rational polynomial").denom())
    });
    let z: ZPoly = f
        .coeffs()
        .iter()
        .map(|c| {
            let q = c.as_rational().expect("rational polynomial");
            q.numer() * (&den / q.denom())
        })
        .collect();
    zprimitive(&z)
}

/// Lifts `t = a*b mod p` (both monic mod p, coprime) to `mod p^k`.
fn lift_two(t: &ZPoly, a: &UniPoly, b: &UniPoly, p: u64, k: u32) -> (ZPoly, ZPoly) {
    let (_, _, tt) = a.xgcd(b);
    let mut big_a = from_fp(a);
    let mut big_b = from_fp(b);
    let pb = BigInt::from(p);
    let mut pj = pb.clone();
    for _ in 1..k {
        let next = &pj * &pb;
        let e = zmod(&zsub(t, &zmul(&big_a, &big_b)), &next);
        let e: ZPoly = e.iter().map(|c| c / &pj).collect();
        let ep = to_fp(&e, p);
        let sigma = ep.mul(&tt).rem(a);
        let tau = ep.sub(&sigma.mul(b)).exact_div(a).expect("Hensel step divides");
        big_a = zmod(&zadd_scaled(&big_a, &from_fp(&sigma), &pj), &next);
        big_b = zmod(&zadd_scaled(&big_b, &from_fp(&tau), &pj), &next);
        pj = next;
    }
    (big_a, big_b)
}

fn hensel(t: &ZPoly, facs: &[UniPoly], p: u64, k: u32) -> Vec<ZPoly> {
    if facs.len() == 1 {
        return vec![t.clone()];
    }
    let mid = facs.len() / 2;
    let field = Field::Prime(p);
    let prod = |fs: &[UniPoly]| fs.iter().fold(UniPoly::one(field), |acc, f| acc.mul(f));
    let (ta, tb) = lift_two(t, &prod(&facs[..mid]), &prod(&facs[mid..]), p, k);
    let mut out = hensel(&ta, &facs[..mid], p, k);
    out.extend(hensel(&tb, &facs[mid..], p, k));
    out
}

/// Picks the prime with the fewest modular factors among the first few
/// primes keeping `z` square-free with unchanged degree.
fn choose_prime(z: &ZPoly) -> (u64, Vec<UniPoly>) {
    let lc = z.last().expect("nonzero");
    let mut best: Option<(u64, Vec<UniPoly>)> = None;
    let mut tried = 0;
    let mut p = 2u64;
    while tried < 6 {
        p += 1;
        if !is_prime(p) || (lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let zp = to_fp(z, p);
        if !zp.gcd(&zp.derivative()).is_constant() {
            continue;
        }
        tried += 1;
        let facs = factor_fp(&zp);
        if best.as_ref().is_none_or(|(_, b)| facs.len() < b.len()) {
            best = Some((p, facs));
        }
        if best.as_ref().is_some_and(|(_, b)| b.len() == 1) {
            break;
        }
    }
    best.expect("some prime is good")
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn factor_q(f: &UniPoly) -> Vec<UniPoly> {
    let z = integer_model(f);
    let deg = z.len() - 1;
    let (p, facs) = choose_prime(&z);
    if facs.len() == 1 {
        return vec![f.monic()];
    }
    // Coefficients of lc * (any factor scaled to leading coefficient lc)
    // are bounded by |lc| * 2^deg * ||z||_2.
    let lc = z.last().expect("nonzero").clone();
    let norm2: BigInt = z.iter().map(|c| c * c).sum();
    let bound = lc.abs() * (BigInt::one() << deg) * (norm2.sqrt() + 1u32);
    let pb = BigInt::from(p);
    let mut pk = pb.clone();
    let mut k = 1u32;
    while pk <= &bound * 2u32 {
        pk *= &pb;
        k += 1;
    }
    // Hensel target: z / lc, which is monic modulo p^k.
    let lc_inv = mod_inverse(&lc, &pk);
    let monic_t = zmod(&z.iter().map(|c| c * &lc_inv).collect(), &pk);
    let mut lifted = hensel(&monic_t, &facs, p, k);

    let mut rest = z;
    let mut out: Vec<ZPoly> = Vec::new();
    let mut s = 1;
    while 2 * s <= lifted.len() {
        let lcr = rest.last().expect("nonzero").clone();
        let mut hit = None;
        for subset in combinations(lifted.len(), s) {
            let prod = subset
                .iter()
                .fold(vec![lcr.clone()], |acc, &i| zmod(&zmul(&acc, &lifted[i]), &pk));
            let cand = zprimitive(&zsymmetric(&prod, &pk));
            if let Some(q) = zdiv(&rest, &cand) {
                hit = Some((subset, cand, q));
                break;
            }
        }
        match hit {
            Some((subset, cand, q)) => {
                out.push(cand);
                rest = q;
                lifted = lifted
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !subset.contains(i))
                    .map(|(_, g)| g)
                    .collect();
            }
            None => s += 1,
        }
    }
    if rest.len() > 1 {
        out.push(rest);
    }
    out.iter()
        .map(|g| {
            UniPoly::new(Field::Rationals, g.iter().map(|c| Field::Rationals.from_bigint(c)).collect())
                .monic()
        })
        .collect()
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(c: &[i64]) -> UniPoly {
        UniPoly::from_ints(Field::Rationals, c)
    }

    #[test]
    fn rational_factorization() {
        // (t^2 - 2)(t^2 + t + 1)(2t - 3)(t + 5)
        let u = q(&[-2, 0, 1]).mul(&q(&[1, 1, 1])).mul(&q(&[-3, 2])).mul(&q(&[5, 1]));
        let f = factor(&u).unwrap();
        assert_eq!(f.factors.len(), 4);
        assert_eq!(f.expand(), u);
        assert!(f.factors.iter().all(|(g, k)| *k == 1 && is_irreducible(g).unwrap()));
    }

    #[test]
    fn swinnerton_dyer_like_is_irreducible() {
        // t^4 - 10t^2 + 1 splits modulo every prime but is irreducible over Q.
        assert!(is_irreducible(&q(&[1, 0, -10, 0, 1])).unwrap());
        assert!(!is_irreducible(&q(&[-1, 0, 0, 0, 1])).unwrap());
    }

    #[test]
    fn powers() {
        assert_eq!(power_of_irreducible(&q(&[1, -1]).pow(2)).unwrap(), Some((q(&[1, -1]), 2)));
        assert_eq!(power_of_irreducible(&q(&[1, 0, -1])).unwrap(), None);
        let f2 = UniPoly::from_ints(Field::Prime(2), &[1, 1]);
        assert_eq!(power_of_irreducible(&f2).unwrap(), Some((f2.clone(), 1)));
    }

    #[test]
    fn prime_field_factorization() {
        let f = Field::Prime(101);
        let u = UniPoly::from_ints(f, &[1, 0, 1]).mul(&UniPoly::from_ints(f, &[3, 1])).mul(
            &UniPoly::from_ints(f, &[2, 0, 0, 1]),
        );
        let fac = factor(&u).unwrap();
        assert_eq!(fac.expand(), u);
        for (g, _) in &fac.factors {
            assert!(is_irreducible(g).unwrap());
        }
    }

    #[test]
    fn restrictions() {
        let u = UniPoly::from_ints(Field::Prime(3), &[1, 0, 0, 1]);
        assert!(matches!(power_of_irreducible(&u), Err(Error::CharacteristicTooSmall { .. })));
        let big = q(&[1; 14]);
        assert!(matches!(factor(&big), Err(Error::DegreeTooLarge { .. })));
    }
}
