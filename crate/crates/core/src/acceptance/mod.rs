//! The acceptance suite: eight checks run by `npf selftest` and by the
//! `acceptance` test target. Randomized checks are reproducible from a seed.

pub mod gen;

use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;

use crate::error::Error;
use crate::field::Field;
use crate::fixtures;
use crate::geometry::Polyhedron;
use crate::grading::{add_weights, orthogonal_basis, Grading};
use crate::lifting::{lift, solve_graded, LiftMode, LiftRequest};
use crate::screen::{reducibility_witness, ScreenStatus};
use crate::series::{Exponent, Series};

pub const DEFAULT_SEED: u64 = 20_240_917;

#[derive(Clone, Debug)]
pub struct Outcome {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub millis: u128,
}

type Check = std::result::Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e(v: &[i64]) -> Exponent {
    Exponent(v.to_vec())
}

fn fixture(name: &str) -> crate::series::SeriesFile {
    fixtures::load(name).expect("bundled fixture parses")
}

/// Runs every criterion with the given seed, in order.
pub fn run_all(seed: u64) -> Vec<Outcome> {
    let checks: [(u8, &'static str, fn(u64) -> Check); 8] = [
        (1, "remark fixture: loose edge, illegal split, exact lift", remark),
        (2, "node closed form, general and monic", node),
        (3, "randomized lift round trips", round_trips),
        (4, "graded piece dimension identity", dimension_identity),
        (5, "orthogonal basis algorithm", basis_algorithm),
        (6, "figure fixtures", figures),
        (7, "three-vertex polyhedra yield reducibility witnesses", corollary_one),
        (8, "graded solver kernel dimension", kernel_dimension),
    ];
    checks
        .iter()
        .map(|&(id, name, f)| {
            let t = Instant::now();
            let r = std::panic::catch_unwind(|| f(seed)).unwrap_or_else(|p| {
                let msg = p
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                Err(format!("panicked: {msg}"))
            });
            let (passed, detail) = match r {
                Ok(d) => (true, d),
                Err(d) => (false, d),
            };
            Outcome { id, name, passed, detail, millis: t.elapsed().as_millis() }
        })
        .collect()
}

pub fn format_line(o: &Outcome) -> String {
    format!(
        "[{}] criterion {}: {} ({} ms) - {}",
        if o.passed { "PASS" } else { "FAIL" },
        o.id,
        o.name,
        o.millis,
        o.detail
    )
}

fn remark(_seed: u64) -> Check {
    let file = fixture("remark");
    let f = &file.series;
    let p = Polyhedron::new(f).map_err(|e| e.to_string())?;
    let (a, b) = (e(&[1, 1, 1]), e(&[2, 2, 0]));
    let loose = p.loose_edges();
    let named: Vec<_> = loose.iter().filter(|x| (x.a == a && x.b == b) || (x.a == b && x.b == a)).collect();
    ensure(named.len() == 1, || format!("edge (1,1,1)-(2,2,0) reported {} times", named.len()))?;
    ensure(named[0].descendant, || "edge is not descendant".into())?;
    let fe = f.restrict_to_segment(&a, &b);
    let expect = file.parse_in_ring("x1*x2*x3 + x1^2*x2^2").unwrap();
    ensure(fe == expect, || format!("f|_E = {fe}"))?;

    let bad = LiftRequest::new(
        f.clone(),
        &a,
        &b,
        file.parse_in_ring("x2*x3 + x1*x2^2").unwrap(),
        file.parse_in_ring("x1").unwrap(),
        8,
        LiftMode::General,
    )
    .map_err(|e| e.to_string())?;
    match lift(&bad) {
        Err(Error::DivisibleByVariable(2)) => {}
        other => return Err(format!("illegal split not rejected as divisible by x2: {other:?}")),
    }
    let good = LiftRequest::new(
        f.clone(),
        &a,
        &b,
        file.parse_in_ring("x3 + x1*x2").unwrap(),
        file.parse_in_ring("x1*x2").unwrap(),
        8,
        LiftMode::General,
    )
    .map_err(|e| e.to_string())?;
    let r = lift(&good).map_err(|e| e.to_string())?;
    ensure(r.residual.is_zero(), || "nonzero residual".into())?;
    let prod = r.g.as_polynomial().mul(&r.h.as_polynomial());
    ensure(&prod == f, || format!("g*h = {prod}"))?;
    Ok(format!(
        "{} loose edges, named edge once; x2-divisible split rejected; g = {}, h = {}",
        loose.len(),
        r.g.as_polynomial(),
        r.h.as_polynomial()
    ))
}

/// Coefficients of `x sqrt(1 + x)` up to `x^d`, from the binomial series.
pub fn x_sqrt_one_plus_x(d: usize) -> Vec<BigRational> {
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    let mut binom = BigRational::from_integer(BigInt::from(1));
    let mut out = vec![BigRational::from_integer(BigInt::from(0))];
    for k in 0..d {
        // coefficient of x^(k+1) is binom(1/2, k)
        out.push(binom.clone());
        binom = binom * (&half - BigRational::from_integer(BigInt::from(k as i64))) / BigRational::from_integer(BigInt::from(k as i64 + 1));
    }
    out
}

fn node(_seed: u64) -> Check {
    let file = fixture("node");
    let f = &file.series;
    let split = (file.parse_in_ring("y - x").unwrap(), file.parse_in_ring("y + x").unwrap());
    let (a, b) = (e(&[0, 2]), e(&[2, 0]));
    let general = LiftRequest::new(f.clone(), &a, &b, split.0.clone(), split.1.clone(), 8, LiftMode::General)
        .and_then(|r| lift(&r))
        .map_err(|e| e.to_string())?;
    let res = f.sub(&general.g.multiply(&general.h, Some(8)).unwrap()).truncate(8);
    ensure(res.is_zero(), || format!("general residual {res}"))?;
    let monic = LiftRequest::new(f.clone(), &a, &b, split.0, split.1, 8, LiftMode::Monic)
        .and_then(|r| lift(&r))
        .map_err(|e| e.to_string())?;
    let coeffs = x_sqrt_one_plus_x(8);
    let mut expect = file.parse_in_ring("y").unwrap();
    for (k, c) in coeffs.iter().enumerate() {
        if k > 0 {
            expect.add_term(e(&[k as i64, 0]), Field::Rationals.from_rational(&-c.clone()).expect("rational"));
        }
    }
    let expect = expect.truncate(8);
    ensure(monic.g == expect, || format!("monic g = {}, expected {}", monic.g, expect))?;
    let res = f.sub(&monic.g.multiply(&monic.h, Some(8)).unwrap()).truncate(8);
    ensure(res.is_zero(), || format!("monic residual {res}"))?;
    Ok(format!("residual 0 at D = 8 in both modes; monic g = {}", file.format(&monic.g)))
}

/// Independent verification of a lift against its request.
fn verify_lift(f: &Series, d: u32, r: &crate::lifting::LiftResult) -> std::result::Result<(), String> {
    let res = f.sub(&r.g.multiply(&r.h, Some(d)).map_err(|e| e.to_string())?).truncate(d);
    ensure(res.is_zero(), || format!("residual {res}"))?;
    let g_e = r.g.restrict(r.e1.lattice_points().iter()).as_polynomial();
    let h_e = r.h.restrict(r.e2.lattice_points().iter()).as_polynomial();
    ensure(g_e == r.split_g && h_e == r.split_h, || "edge restriction invariant fails".into())
}

fn round_trips(seed: u64) -> Check {
    let mut rng = gen::rng(seed ^ 0x03);
    let (mut general, mut monic) = (0, 0);
    for k in 0..200 {
        let field = gen::field_for(k);
        let n = if k % 4 < 2 { 2 } else { 3 };
        let is_monic = k % 5 == 0;
        let inst = gen::split_instance(&mut rng, n, field, is_monic);
        let delta = inst.edge.0.degree().max(inst.edge.1.degree()) as u32;
        let d = rng.gen_range(delta.max(1)..=10.max(delta));
        let mode = if is_monic { LiftMode::Monic } else { LiftMode::General };
        let req = LiftRequest::new(inst.f.clone(), &inst.edge.0, &inst.edge.1, inst.g.clone(), inst.h.clone(), d, mode)
            .map_err(|e| format!("instance {k}: {e}"))?;
        let r = lift(&req).map_err(|e| format!("instance {k} (f = {}, D = {d}): {e}", inst.f))?;
        verify_lift(&inst.f, d, &r).map_err(|m| format!("instance {k}: {m}"))?;
        if is_monic {
            ensure(r.g == inst.g_star.truncate(d), || {
                format!("instance {k}: monic g = {} differs from planted {}", r.g, inst.g_star)
            })?;
            monic += 1;
        } else {
            general += 1;
        }
    }
    Ok(format!("{general} general and {monic} monic lifts verified"))
}

fn dimension_identity(seed: u64) -> Check {
    let mut rng = gen::rng(seed ^ 0x04);
    let mut done = 0;
    while done < 500 {
        let n = rng.gen_range(2..=4);
        let c = gen::mixed_direction(&mut rng, n, 3);
        let gr = Grading::from_direction(&c).map_err(|e| e.to_string())?;
        let w = if rng.gen_bool(0.5) {
            gr.weight(&gen::negative_part(gr.direction(), rng.gen_range(1..=2)))
        } else {
            gen::random_weight(&mut rng, &gr, 3)
        };
        let pw = gen::brute_piece(&gr, &w);
        let coprime = pw.iter().enumerate().any(|(i, a)| {
            pw[i + 1..].iter().any(|b| a.0.iter().zip(&b.0).all(|(x, y)| *x == 0 || *y == 0))
        });
        if !coprime {
            continue;
        }
        let z = gen::random_monoid_element(&mut rng, &gr, 2);
        let pz = gen::brute_piece(&gr, &z);
        let pwz = gen::brute_piece(&gr, &add_weights(&w, &z));
        ensure(pwz.len() + 1 == pw.len() + pz.len(), || {
            format!("c = {c:?}, w = {w:?}, z = {z:?}: {} != {} + {} - 1", pwz.len(), pw.len(), pz.len())
        })?;
        ensure(gr.graded_piece(&w).dim() == pw.len(), || format!("enumerator disagrees at {w:?}"))?;
        done += 1;
    }
    Ok(format!("{done} triples"))
}

fn basis_algorithm(seed: u64) -> Check {
    let golden = orthogonal_basis(&[2, 3, -4]).map_err(|e| e.to_string())?;
    ensure(golden.orthogonal == vec![vec![5, 2, 4], vec![3, 2, 3]] && golden.completion == vec![1, 1, 1], || {
        format!("golden run gave {:?} / {:?}", golden.orthogonal, golden.completion)
    })?;
    let mut rng = gen::rng(seed ^ 0x05);
    let mut steps = 0;
    for _ in 0..1000 {
        let n = rng.gen_range(2..=5);
        let c = gen::mixed_direction(&mut rng, n, 9);
        let run = orthogonal_basis(&c).map_err(|e| format!("{c:?}: {e}"))?;
        let mut rows = run.orthogonal.clone();
        for xi in &run.orthogonal {
            ensure(xi.iter().all(|&x| x >= 0), || format!("{c:?}: {xi:?} not in N^n"))?;
            ensure(xi.iter().zip(&c).map(|(a, b)| a * b).sum::<i64>() == 0, || format!("{c:?}: {xi:?} not orthogonal"))?;
        }
        ensure(run.completion.iter().all(|&x| x >= 0), || format!("{c:?}: completion not in N^n"))?;
        rows.push(run.completion.clone());
        ensure(gen::det_abs_is_one(&rows), || format!("{c:?}: not a lattice basis"))?;
        let mut last = run.initial_monovariant;
        for s in &run.steps {
            ensure(s.monovariant < last, || format!("{c:?}: monovariant {last} -> {}", s.monovariant))?;
            last = s.monovariant;
        }
        steps += run.steps.len();
    }
    Ok(format!("golden ok; 1000 runs, {steps} steps, monovariant strictly decreasing"))
}

fn figures(_seed: u64) -> Check {
    let count = |name: &str| -> std::result::Result<(usize, usize, Polyhedron), String> {
        let p = Polyhedron::new(&fixture(name).series).map_err(|e| e.to_string())?;
        Ok((p.compact_edges().len(), p.loose_edges().len(), p))
    };
    let (_, l1, _) = count("fig1")?;
    ensure(l1 == 0, || format!("fig1: {l1} loose edges"))?;
    let (c3, l3, _) = count("fig3")?;
    ensure(c3 == 3 && l3 == 3, || format!("fig3: {c3} compact, {l3} loose"))?;
    let (c4, l4, _) = count("fig4")?;
    ensure(c4 == 3 && l4 == 3, || format!("fig4: {c4} compact, {l4} loose"))?;
    let (_, _, pr) = count("remark")?;
    let re = pr.edge(&e(&[1, 1, 1]), &e(&[2, 2, 0])).map_err(|e| e.to_string())?;
    ensure(re.loose && re.descendant, || "remark edge not loose and descendant".into())?;
    let (c2, l2, p2) = count("fig2")?;
    let axis = p2.loose_edges().into_iter().any(|x| x.a == e(&[0, 0, 3]) || x.b == e(&[0, 0, 3]));
    ensure(l2 == 1 && c2 == 4 && axis, || format!("fig2: {c2} compact, {l2} loose"))?;
    Ok("fig1 0 loose; fig2 1 loose (axis end); fig3 3/3; fig4 3/3; remark edge loose + descendant".into())
}

fn corollary_one(seed: u64) -> Check {
    let mut rng = gen::rng(seed ^ 0x07);
    for k in 0..100 {
        let field = gen::field_for(k);
        let f = gen::corollary_instance(&mut rng, field);
        let d = f.total_degree().unwrap() as u32;
        let v = reducibility_witness(&f, d).map_err(|e| format!("instance {k} ({f}): {e}"))?;
        ensure(v.status == ScreenStatus::ReducibleWithWitness, || format!("instance {k} ({f}): {:?}", v.status))?;
        let w = v.witness.expect("witness accompanies the verdict");
        let res = f.sub(&w.lift.g.multiply(&w.lift.h, Some(d)).unwrap()).truncate(d);
        ensure(res.is_zero(), || format!("instance {k}: residual {res}"))?;
    }
    Ok("100 witnesses with zero residual".into())
}

fn kernel_dimension(seed: u64) -> Check {
    let mut rng = gen::rng(seed ^ 0x08);
    let mut nontrivial = 0;
    for k in 0..200 {
        let field = gen::field_for(k);
        let n = if k % 2 == 0 { 2 } else { 3 };
        let inst = gen::split_instance(&mut rng, n, field, false);
        let gr = &inst.grading;
        let (w, z) = (gr.homogeneous_weight(&inst.g).unwrap(), gr.homogeneous_weight(&inst.h).unwrap());
        let i = gen::random_weight(&mut rng, gr, 2);
        let target = add_weights(&add_weights(&w, &z), &i);
        let mut rhs = Series::zero(n, field);
        for m in gen::brute_piece(gr, &target) {
            if rng.gen_bool(0.6) {
                rhs.add_term(m, gen::small_coeff(&mut rng, field));
            }
        }
        let s = solve_graded(gr, &inst.g, &inst.h, &rhs, &i).map_err(|e| format!("system {k}: {e}"))?;
        let lhs = inst.g.mul(&s.psi).add(&inst.h.mul(&s.phi));
        ensure(lhs == rhs, || format!("system {k}: identity fails"))?;
        let expect = gen::brute_piece(gr, &i).len();
        ensure(s.stats.kernel_dim() == expect, || {
            format!("system {k}: kernel {} vs |R_i| = {expect}", s.stats.kernel_dim())
        })?;
        if expect > 1 {
            nontrivial += 1;
        }
    }
    Ok(format!("200 systems, {nontrivial} with kernel dimension > 1"))
}
