//! Lifting a coprime factorization of `f|_E` along a loose edge `E` to a
//! factorization `f = g h` modulo a total-degree horizon.
//!
//! The general driver solves one graded equation
//! `G h_{z+i} + H g_{w+i} = f_{w+z+i} - F_i` per weight `i` of the monoid,
//! in total-degree-then-lex order. The monic driver runs the same
//! recursion to a larger horizon and then normalizes the `G`-side factor
//! by Weierstrass preparation.

mod solve;
mod weierstrass;

use std::collections::BTreeMap;

use serde::Serialize;

pub use solve::{solve_graded, solve_graded_monic, GradedSolution, SystemStats};
pub use weierstrass::{divide_by_weierstrass, weierstrass_prepare, Prepared};

use crate::error::{Error, Result};
use crate::geometry::{EdgeDescriptor, Polyhedron};
use crate::grading::{add_weights, monic_in_last, sub_weights, weight_order, Grading, Weight};
use crate::series::{segment_lattice_points, Exponent, Series};
use solve::{dividing_variable, solve_graded_monic_raw, solve_graded_raw, PieceTable};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LiftMode {
    General,
    Monic,
}

/// Input of a lift. `edge` only needs the endpoints; the flags are
/// recomputed from `f`.
#[derive(Clone, Debug)]
pub struct LiftRequest {
    pub f: Series,
    pub edge: EdgeDescriptor,
    pub g: Series,
    pub h: Series,
    pub truncation: u32,
    pub mode: LiftMode,
}

impl LiftRequest {
    /// Request for the edge `[a, b]` of `Δ(f)`; fails if it is not an edge.
    pub fn new(f: Series, a: &Exponent, b: &Exponent, g: Series, h: Series, truncation: u32, mode: LiftMode) -> Result<Self> {
        let edge = Polyhedron::new(&f)?.edge(a, b)?;
        Ok(LiftRequest { f, edge, g, h, truncation, mode })
    }
}

/// A segment (or a point when `start == end`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Segment {
    pub start: Exponent,
    pub end: Exponent,
}

impl Segment {
    pub fn lattice_points(&self) -> Vec<Exponent> {
        segment_lattice_points(&self.start, &self.end)
    }
}

/// One solved weight of the recursion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TranscriptEntry {
    pub weight: Weight,
    pub rhs_terms: usize,
    pub g_component: String,
    pub h_component: String,
    pub unknowns: usize,
    pub equations: usize,
    pub rank: usize,
}

#[derive(Clone, Debug)]
pub struct LiftResult {
    pub mode: LiftMode,
    pub g: Series,
    pub h: Series,
    /// The split actually lifted (in Monic mode `G` is scaled to be monic).
    pub split_g: Series,
    pub split_h: Series,
    pub e1: Segment,
    pub e2: Segment,
    /// `f - g h` truncated at the horizon; always zero for a returned result.
    pub residual: Series,
    pub transcript: Vec<TranscriptEntry>,
    /// Total-degree horizon the graded recursion ran to.
    pub internal_horizon: u32,
}

impl LiftResult {
    pub fn transcript_json(&self) -> serde_json::Value {
        serde_json::json!({
            "schema": crate::series::json::SCHEMA,
            "mode": self.mode,
            "truncation": self.g.truncation(),
            "internal_horizon": self.internal_horizon,
            "e1": self.e1,
            "e2": self.e2,
            "weights": self.transcript,
        })
    }
}

/// Validated request: grading, the split in use and the precision needed.
struct Validated {
    grading: Grading,
    edge: EdgeDescriptor,
    g: Series,
    h: Series,
}

fn validate(req: &LiftRequest) -> Result<Validated> {
    let f = &req.f;
    for s in [&req.g, &req.h] {
        if s.n() != f.n() || s.field() != f.field() {
            return Err(Error::Mismatch(format!(
                "split factor has {} variables over {}, f has {} over {}",
                s.n(),
                s.field(),
                f.n(),
                f.field()
            )));
        }
    }
    let poly = Polyhedron::new(f)?;
    let edge = poly.edge(&req.edge.a, &req.edge.b)?;
    if !edge.loose {
        return Err(Error::NotLoose(edge.a.0.clone(), edge.b.0.clone()));
    }
    if req.mode == LiftMode::Monic && !edge.descendant {
        return Err(Error::NotDescendant(edge.a.0.clone(), edge.b.0.clone()));
    }
    let grading = Grading::for_edge(&edge)?;
    grading.homogeneous_weight(&req.g)?;
    grading.homogeneous_weight(&req.h)?;
    let restriction = f.restrict(edge.lattice_points().iter()).as_polynomial();
    if req.g.mul(&req.h).as_polynomial() != restriction {
        return Err(Error::SplitMismatch);
    }
    let (g, h) = match req.mode {
        LiftMode::General => {
            if let Some(v) = dividing_variable(&req.g) {
                return Err(Error::DivisibleByVariable(v + 1));
            }
            (req.g.as_polynomial(), req.h.as_polynomial())
        }
        LiftMode::Monic => {
            if !monic_in_last(&req.g) {
                return Err(Error::NotMonic);
            }
            let n = f.n();
            let d = req.g.degree_in(n - 1).expect("nonzero");
            let mut top = vec![0; n];
            top[n - 1] = d;
            let lc = req.g.coefficient(&Exponent(top));
            let inv = lc.inv().expect("leading coefficient is nonzero");
            if req.h.min_exponent().is_some_and(|m| m.0[n - 1] > 0) {
                return Err(Error::Precondition("H must not be divisible by the last variable in Monic mode".into()));
            }
            (req.g.scale(&inv).as_polynomial(), req.h.scale(&lc).as_polynomial())
        }
    };
    if !grading.coprime_split_check(&g, &h)?.coprime {
        return Err(Error::NotCoprime);
    }
    let delta = edge.max_degree();
    if i64::from(req.truncation) < delta {
        return Err(Error::HorizonTooSmall { trunc: req.truncation, needed: delta as u32 });
    }
    Ok(Validated { grading, edge, g, h })
}

/// All exponents with `<s, alpha> <= bound`, grouped by weight; each group
/// is a complete graded piece because the whole piece shares `<s, alpha>`.
fn piece_table(gr: &Grading, bound: i64) -> BTreeMap<Weight, Vec<Exponent>> {
    let s = gr.xi_sum();
    let n = gr.n();
    let mut table: BTreeMap<Weight, Vec<Exponent>> = BTreeMap::new();
    let mut alpha = vec![0i64; n];
    fn walk(k: usize, left: i64, s: &[i64], alpha: &mut Vec<i64>, gr: &Grading, table: &mut BTreeMap<Weight, Vec<Exponent>>) {
        if k == s.len() {
            let e = Exponent(alpha.clone());
            table.entry(gr.weight(&e)).or_default().push(e);
            return;
        }
        let mut v = 0;
        while v * s[k] <= left {
            alpha[k] = v;
            walk(k + 1, left - v * s[k], s, alpha, gr, table);
            v += 1;
        }
        alpha[k] = 0;
    }
    walk(0, bound, &s, &mut alpha, gr, &mut table);
    for pts in table.values_mut() {
        pts.sort();
    }
    table
}

fn weight_size(w: &[i64]) -> i64 {
    w.iter().sum()
}

/// The graded recursion up to total degree `horizon`: returns the raw lifts
/// of `G` and `H`, exact modulo total degree `> horizon`.
fn graded_lift(
    gr: &Grading,
    f: &Series,
    g0: &Series,
    h0: &Series,
    horizon: u32,
    monic: bool,
) -> Result<(Series, Series, Vec<TranscriptEntry>)> {
    let n = f.n();
    let field = f.field();
    let w = gr.homogeneous_weight(g0)?;
    let z = gr.homogeneous_weight(h0)?;
    let we = add_weights(&w, &z);
    let s_max = gr.xi_sum().into_iter().max().expect("n >= 2");
    // Every exponent of degree <= horizon has <xi_sum, alpha> <= s_max * horizon;
    // g_{w+i} and h_{z+i} are needed up to that size, so the products reach
    // one of |w|, |z| further.
    let bound = s_max * i64::from(horizon) + weight_size(&w).max(weight_size(&z));
    let table = piece_table(gr, bound);
    let pieces = PieceTable { grading: gr, table: &table };

    let comps = gr.decompose(&f.filter(|e| e.dot(&gr.xi_sum()) <= bound).as_polynomial());
    let mut order: Vec<Weight> = Vec::new();
    for (k, pts) in &table {
        if pts.is_empty() {
            continue;
        }
        let i = sub_weights(k, &we);
        if i.iter().all(|&x| x == 0) {
            continue;
        }
        if gr.in_monoid(&i) {
            order.push(i);
        } else if comps.get(k).is_some_and(|c| !c.is_zero()) {
            return Err(Error::internal(format!("f has a component of weight {k:?} outside w + z + M")));
        }
    }
    order.sort_by(|a, b| weight_order(a, b));

    let mut g_comp: BTreeMap<Weight, Series> = BTreeMap::new();
    let mut h_comp: BTreeMap<Weight, Series> = BTreeMap::new();
    let zero_w = vec![0i64; w.len()];
    g_comp.insert(zero_w.clone(), g0.clone());
    h_comp.insert(zero_w, h0.clone());
    let mut transcript = Vec::new();
    for i in &order {
        let mut rhs = comps.get(&add_weights(&we, i)).cloned().unwrap_or_else(|| Series::zero(n, field));
        for (k, gk) in &g_comp {
            if k.iter().all(|&x| x == 0) {
                continue;
            }
            let l = sub_weights(i, k);
            if l.iter().all(|&x| x == 0) {
                continue;
            }
            if let Some(hl) = h_comp.get(&l) {
                rhs = rhs.sub(&gk.mul(hl));
            }
        }
        if rhs.is_zero() {
            continue;
        }
        let sol = if monic {
            solve_graded_monic_raw(&pieces, gr, g0, h0, &rhs, i)?
        } else {
            solve_graded_raw(&pieces, n, field, g0, h0, &rhs, &w, &z, i)?
        };
        transcript.push(TranscriptEntry {
            weight: i.clone(),
            rhs_terms: rhs.len(),
            g_component: sol.phi.to_text(),
            h_component: sol.psi.to_text(),
            unknowns: sol.stats.unknowns,
            equations: sol.stats.equations,
            rank: sol.stats.rank,
        });
        if !sol.phi.is_zero() {
            g_comp.insert(i.clone(), sol.phi);
        }
        if !sol.psi.is_zero() {
            h_comp.insert(i.clone(), sol.psi);
        }
    }
    let sum = |m: &BTreeMap<Weight, Series>| m.values().fold(Series::zero(n, field), |acc, s| acc.add(s));
    Ok((sum(&g_comp), sum(&h_comp), transcript))
}

/// Endpoints of a homogeneous factor's support along the grading direction.
fn segment_of(gr: &Grading, s: &Series) -> Result<Segment> {
    let m = gr.univariate_model(s)?;
    let deg = m.poly.degree().unwrap_or(0) as i64;
    let end = &m.base + &Exponent(gr.direction().iter().map(|c| c * deg).collect());
    Ok(Segment { start: m.base, end })
}

fn finish(
    req: &LiftRequest,
    prep: &Validated,
    g: Series,
    h: Series,
    transcript: Vec<TranscriptEntry>,
    internal_horizon: u32,
) -> Result<LiftResult> {
    let d = req.truncation;
    let residual = req.f.sub(&g.mul(&h)).truncate(d);
    if !residual.is_zero() {
        return Err(Error::internal(format!("lift left residual {residual}")));
    }
    let e1 = segment_of(&prep.grading, &prep.g)?;
    let e2 = segment_of(&prep.grading, &prep.h)?;
    let sum = [&e1.start + &e2.start, &e1.end + &e2.end];
    let ends = [prep.edge.a.clone(), prep.edge.b.clone()];
    if !(sum == ends || sum == [ends[1].clone(), ends[0].clone()]) {
        return Err(Error::internal("E1 + E2 does not reproduce the edge"));
    }
    if g.restrict(e1.lattice_points().iter()).as_polynomial() != prep.g
        || h.restrict(e2.lattice_points().iter()).as_polynomial() != prep.h
    {
        return Err(Error::internal("lift does not restrict to the split on E1, E2"));
    }
    Ok(LiftResult {
        mode: req.mode,
        g,
        h,
        split_g: prep.g.clone(),
        split_h: prep.h.clone(),
        e1,
        e2,
        residual,
        transcript,
        internal_horizon,
    })
}

fn lift_general(req: &LiftRequest, prep: &Validated) -> Result<LiftResult> {
    let d = req.truncation;
    if req.f.truncation().is_some_and(|t| t < d) {
        return Err(Error::InsufficientPrecision(format!(
            "f is known to degree {}, lift asks for {d}",
            req.f.truncation().unwrap()
        )));
    }
    let (g, h, transcript) = graded_lift(&prep.grading, &req.f, &prep.g, &prep.h, d, false)?;
    finish(req, prep, g.truncate(d), h.truncate(d), transcript, d)
}

fn lift_monic_inner(req: &LiftRequest, prep: &Validated) -> Result<LiftResult> {
    let d = req.truncation;
    let n = req.f.n();
    let k = prep.g.degree_in(n - 1).expect("nonzero");
    let kk = k as u32;
    // Terms of the raw lift above degree (d + k) k - 1 cannot reach the
    // Weierstrass polynomial below degree d + k.
    let inner = ((d + kk) * kk).saturating_sub(1).max(d);
    if req.f.truncation().is_some_and(|t| t < inner) {
        return Err(Error::InsufficientPrecision(format!(
            "Monic mode with x_n-degree {k} at truncation {d} needs f to degree {inner}"
        )));
    }
    let (g_raw, _, transcript) = graded_lift(&prep.grading, &req.f, &prep.g, &prep.h, inner, true)?;
    let prepared = weierstrass_prepare(&g_raw.truncate(inner), (d + kk).saturating_sub(1))?;
    if prepared.degree != k {
        return Err(Error::internal(format!(
            "Weierstrass degree {} differs from the x_n-degree {k} of G",
            prepared.degree
        )));
    }
    let g = prepared.poly.truncate(d);
    let h = divide_by_weierstrass(&req.f.as_polynomial(), &prepared.poly, k, d);
    finish(req, prep, g, h, transcript, inner)
}

/// Lifts according to `req.mode`.
pub fn lift(req: &LiftRequest) -> Result<LiftResult> {
    let prep = validate(req)?;
    match req.mode {
        LiftMode::General => lift_general(req, &prep),
        LiftMode::Monic => lift_monic_inner(req, &prep),
    }
}

/// General lift: `G` must not be divisible by a variable.
pub fn lift_factorization(req: &LiftRequest) -> Result<LiftResult> {
    lift(&LiftRequest { mode: LiftMode::General, ..req.clone() })
}

/// Monic lift along a descendant edge: `g` is the unique monic (in `x_n`)
/// factor with `g|_{E1} = G`.
pub fn lift_monic(req: &LiftRequest) -> Result<LiftResult> {
    lift(&LiftRequest { mode: LiftMode::Monic, ..req.clone() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::series::{parse_with, VarNames};

    fn q(s: &str) -> Series {
        q_in(s, 2)
    }

    fn q_in(s: &str, n: usize) -> Series {
        parse_with(s, Field::Rationals, &VarNames::indexed(n)).unwrap()
    }

    fn e(v: &[i64]) -> Exponent {
        Exponent(v.to_vec())
    }

    fn node_request(d: u32, mode: LiftMode) -> LiftRequest {
        LiftRequest::new(q("x2^2 - x1^2 - x1^3"), &e(&[0, 2]), &e(&[2, 0]), q("x2 - x1"), q("x2 + x1"), d, mode).unwrap()
    }

    #[test]
    fn node_general() {
        let r = lift_factorization(&node_request(3, LiftMode::General)).unwrap();
        assert!(r.residual.is_zero());
        assert_eq!(r.g.mul(&r.h).truncate(3), q("x2^2 - x1^2 - x1^3").truncate(3));
    }

    #[test]
    fn node_monic() {
        let r = lift_monic(&node_request(5, LiftMode::Monic)).unwrap();
        assert_eq!(r.g, q("x2 - x1 - 1/2*x1^2 + 1/8*x1^3 - 1/16*x1^4 + 5/128*x1^5").truncate(5));
        assert_eq!(r.h, q("x2 + x1 + 1/2*x1^2 - 1/8*x1^3 + 1/16*x1^4 - 5/128*x1^5").truncate(5));
        let again = lift_monic(&node_request(5, LiftMode::Monic)).unwrap();
        assert_eq!(r.g, again.g);
    }

    #[test]
    fn remark_split() {
        let f = q_in("x3^3 + x1*x2*x3^2 + x1*x2*x3 + x1^2*x2^2", 3);
        let (a, b) = (e(&[1, 1, 1]), e(&[2, 2, 0]));
        let bad = LiftRequest::new(f.clone(), &a, &b, q_in("x2*x3 + x1*x2^2", 3), q_in("x1", 3), 6, LiftMode::General).unwrap();
        assert!(matches!(lift(&bad), Err(Error::DivisibleByVariable(2))));
        let good = LiftRequest::new(f.clone(), &a, &b, q_in("x3 + x1*x2", 3), q_in("x1*x2", 3), 6, LiftMode::General).unwrap();
        let r = lift(&good).unwrap();
        assert_eq!(r.g.as_polynomial(), q_in("x3 + x1*x2", 3));
        assert_eq!(r.h.as_polynomial(), q_in("x3^2 + x1*x2", 3));
        assert_eq!(r.e2.start, r.e2.end);
    }

    #[test]
    fn degenerate_h() {
        // f|_E = G * 1 along the edge (0,2)-(1,0) of y^2 + x + x y.
        let f = q("x2^2 + x1 + x1*x2");
        let r = LiftRequest::new(f.clone(), &e(&[0, 2]), &e(&[1, 0]), q("x2^2 + x1"), q("1"), 4, LiftMode::Monic)
            .and_then(|r| lift(&r))
            .unwrap();
        assert!(r.residual.is_zero());
        assert_eq!(r.g.degree_in(1), Some(2));
    }

    #[test]
    fn precision_checks() {
        let f = q("x2^2 - x1^2 - x1^3").truncate(4);
        let req = LiftRequest::new(f, &e(&[0, 2]), &e(&[2, 0]), q("x2 - x1"), q("x2 + x1"), 6, LiftMode::General).unwrap();
        assert!(matches!(lift(&req), Err(Error::InsufficientPrecision(_))));
        let small = LiftRequest { truncation: 1, ..node_request(3, LiftMode::General) };
        assert!(matches!(lift(&small), Err(Error::HorizonTooSmall { .. })));
    }
}
