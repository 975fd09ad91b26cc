//! Seeded random instances and brute-force oracles shared by the
//! acceptance run and the property tests.

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::field::{Field, FieldValue};
use crate::geometry::{is_primitive, Polyhedron};
use crate::grading::{sub_weights, Grading, UnivariateModel, Weight};
use crate::series::{Exponent, Series};
use crate::univariate::UniPoly;

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

pub fn small_coeff(rng: &mut ChaCha8Rng, field: Field) -> FieldValue {
    loop {
        let v: i64 = rng.gen_range(-4..=4);
        let c = field.from_i64(v);
        if !c.is_zero() {
            return c;
        }
    }
}

/// Primitive vector with entries in `-bound..=bound` and both signs.
pub fn mixed_direction(rng: &mut ChaCha8Rng, n: usize, bound: i64) -> Vec<i64> {
    loop {
        let c: Vec<i64> = (0..n).map(|_| rng.gen_range(-bound..=bound)).collect();
        if c.iter().any(|&x| x > 0) && c.iter().any(|&x| x < 0) && is_primitive(&c) {
            return c;
        }
    }
}

/// Primitive `(c_1, .., c_{n-1}, -c_n)` with `c_i >= 0`, `c_n > 0`.
pub fn descendant_direction(rng: &mut ChaCha8Rng, n: usize, bound: i64) -> Vec<i64> {
    loop {
        let mut c: Vec<i64> = (0..n - 1).map(|_| rng.gen_range(0..=bound)).collect();
        c.push(-rng.gen_range(1..=bound));
        if c[..n - 1].iter().any(|&x| x > 0) && is_primitive(&c) {
            return c;
        }
    }
}

/// `m * max(-c, 0)`.
pub fn negative_part(c: &[i64], m: i64) -> Exponent {
    Exponent(c.iter().map(|&x| m * (-x).max(0)).collect())
}

/// Random degree-`d` polynomial with nonzero end coefficients.
fn random_uni(rng: &mut ChaCha8Rng, field: Field, d: usize, first_one: bool) -> UniPoly {
    let mut cs: Vec<FieldValue> = (0..=d).map(|_| field.from_i64(rng.gen_range(-3..=3))).collect();
    cs[0] = if first_one { field.one() } else { small_coeff(rng, field) };
    cs[d] = small_coeff(rng, field);
    UniPoly::new(field, cs)
}

/// A lifting instance `f = g* h*` with `f|_E = G H` on a loose edge.
#[derive(Clone, Debug)]
pub struct SplitInstance {
    pub grading: Grading,
    pub edge: (Exponent, Exponent),
    pub g: Series,
    pub h: Series,
    pub g_star: Series,
    pub h_star: Series,
    pub f: Series,
}

/// Random tail terms of weight in `w + (M \ 0)`, of degree at most `max_deg`.
fn tail(
    rng: &mut ChaCha8Rng,
    gr: &Grading,
    field: Field,
    w: &[i64],
    max_deg: i64,
    count: usize,
    keep: impl Fn(&Exponent) -> bool,
) -> Series {
    let n = gr.n();
    let mut cands = Vec::new();
    let mut e = vec![0i64; n];
    fn walk(k: usize, left: i64, e: &mut Vec<i64>, out: &mut Vec<Exponent>) {
        if k == e.len() {
            out.push(Exponent(e.clone()));
            return;
        }
        for v in 0..=left {
            e[k] = v;
            walk(k + 1, left - v, e, out);
        }
        e[k] = 0;
    }
    walk(0, max_deg, &mut e, &mut cands);
    cands.retain(|a| {
        let d = sub_weights(&gr.weight(a), w);
        d.iter().any(|&x| x != 0) && gr.in_monoid(&d) && keep(a)
    });
    cands.shuffle(rng);
    let mut s = Series::zero(n, field);
    for a in cands.into_iter().take(count) {
        s.add_term(a, small_coeff(rng, field));
    }
    s
}

/// Coprime homogeneous split along `c` with `G` free of monomial factors
/// (and monic in `x_n` when `monic`), plus random tails. Retries until the
/// segment is a loose edge of `Δ(g* h*)`.
pub fn split_instance(rng: &mut ChaCha8Rng, n: usize, field: Field, monic: bool) -> SplitInstance {
    loop {
        let c0 = if monic || n == 2 { descendant_direction(rng, n, 2) } else { mixed_direction(rng, n, 2) };
        let Ok(gr) = Grading::from_direction(&c0) else { continue };
        let c = gr.direction().to_vec();
        let a = rng.gen_range(1..=2usize);
        let b = rng.gen_range(0..=2usize);
        let ua = random_uni(rng, field, a, monic);
        let ub = random_uni(rng, field, b, false);
        if !ua.gcd(&ub).is_constant() {
            continue;
        }
        let mut shift = vec![0i64; n];
        if rng.gen_bool(0.3) {
            let k = rng.gen_range(0..n - usize::from(monic));
            shift[k] = 1;
        }
        let shift = Exponent(shift);
        let g = gr.from_model(&UnivariateModel { base: negative_part(&c, a as i64), poly: ua });
        let h = gr.from_model(&UnivariateModel { base: &negative_part(&c, b as i64) + &shift, poly: ub });
        let (w, z) = (gr.homogeneous_weight(&g).unwrap(), gr.homogeneous_weight(&h).unwrap());
        let dg = g.total_degree().unwrap();
        let d_last = g.degree_in(n - 1).unwrap();
        let (kg, kh) = (rng.gen_range(0..=3), rng.gen_range(0..=3));
        let g_tail = tail(rng, &gr, field, &w, dg + 2, kg, |e| {
            !monic || (e.0[n - 1] < d_last && e.0[..n - 1].iter().any(|&x| x > 0))
        });
        let h_tail = tail(rng, &gr, field, &z, h.total_degree().unwrap() + 2, kh, |_| true);
        let g_star = g.add(&g_tail);
        let h_star = h.add(&h_tail);
        let f = g_star.mul(&h_star);
        let start = &negative_part(&c, (a + b) as i64) + &shift;
        let end = &start + &Exponent(c.iter().map(|x| x * (a + b) as i64).collect());
        let Ok(p) = Polyhedron::new(&f) else { continue };
        let Ok(e) = p.edge(&start, &end) else { continue };
        if !e.loose || (monic && !e.descendant) {
            continue;
        }
        return SplitInstance { grading: gr, edge: (start, end), g, h, g_star, h_star, f };
    }
}

/// Random polynomial whose Newton polyhedron has at least three vertices
/// and a loose edge.
pub fn corollary_instance(rng: &mut ChaCha8Rng, field: Field) -> Series {
    loop {
        let n = rng.gen_range(2..=3);
        let k = rng.gen_range(3..=5);
        let mut f = Series::zero(n, field);
        for _ in 0..k {
            let e: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=3)).collect();
            if e.iter().sum::<i64>() == 0 {
                continue;
            }
            f.add_term(Exponent(e), small_coeff(rng, field));
        }
        if f.is_zero() {
            continue;
        }
        let Ok(p) = Polyhedron::new(&f) else { continue };
        if p.vertices().len() >= 3 && !p.loose_edges().is_empty() {
            return f;
        }
    }
}

/// Graded piece by exhaustive enumeration of `alpha` with
/// `<xi_sum, alpha> = |w|`.
pub fn brute_piece(gr: &Grading, w: &[i64]) -> Vec<Exponent> {
    let s = gr.xi_sum();
    let total: i64 = w.iter().sum();
    let mut out = Vec::new();
    if total < 0 {
        return out;
    }
    let n = gr.n();
    let mut e = vec![0i64; n];
    fn walk(k: usize, left: i64, s: &[i64], e: &mut Vec<i64>, gr: &Grading, w: &[i64], out: &mut Vec<Exponent>) {
        if k == s.len() {
            if left == 0 {
                let a = Exponent(e.clone());
                if gr.weight(&a) == w {
                    out.push(a);
                }
            }
            return;
        }
        let mut v = 0;
        while v * s[k] <= left {
            e[k] = v;
            walk(k + 1, left - v * s[k], s, e, gr, w, out);
            v += 1;
        }
        e[k] = 0;
    }
    walk(0, total, &s, &mut e, gr, w, &mut out);
    out.sort();
    out
}

/// Weight of a random nonnegative exponent of degree `1..=max_deg`.
pub fn random_weight(rng: &mut ChaCha8Rng, gr: &Grading, max_deg: i64) -> Weight {
    loop {
        let e: Vec<i64> = (0..gr.n()).map(|_| rng.gen_range(0..=max_deg)).collect();
        if e.iter().sum::<i64>() > 0 {
            return gr.weight(&Exponent(e));
        }
    }
}

/// A random element of the monoid (possibly with an empty graded piece).
pub fn random_monoid_element(rng: &mut ChaCha8Rng, gr: &Grading, bound: i64) -> Weight {
    loop {
        let e: Vec<i64> = (0..gr.n()).map(|_| rng.gen_range(-bound..=bound)).collect();
        let z = gr.weight(&Exponent(e));
        if gr.in_monoid(&z) {
            return z;
        }
    }
}

pub fn field_for(k: usize) -> Field {
    if k.is_multiple_of(2) {
        Field::Rationals
    } else {
        Field::Prime(101)
    }
}

pub fn det_abs_is_one(rows: &[Vec<i64>]) -> bool {
    let d = crate::grading::determinant(rows);
    d == BigInt::from(1) || d == BigInt::from(-1)
}
