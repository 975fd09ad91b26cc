//! Graded linear equations `G psi + H phi = F` with `G in R_w`,
//! `H in R_z`, `F in R_{w+z+i}`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Field, FieldValue};
use crate::grading::{add_weights, Grading, Weight};
use crate::series::{Exponent, Series};

/// Canonical solution together with the shape of the linear system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSolution {
    /// Component in `R_{z+i}` (multiplies `G`).
    pub psi: Series,
    /// Component in `R_{w+i}` (multiplies `H`).
    pub phi: Series,
    pub stats: SystemStats,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SystemStats {
    pub unknowns: usize,
    pub equations: usize,
    pub rank: usize,
}

impl SystemStats {
    pub fn kernel_dim(&self) -> usize {
        self.unknowns - self.rank
    }
}

/// Reduced row echelon solve; free variables are set to zero.
/// Returns `None` for an inconsistent system.
pub(crate) fn solve_linear(
    field: Field,
    mut rows: Vec<Vec<FieldValue>>,
    mut rhs: Vec<FieldValue>,
    cols: usize,
) -> Option<(Vec<FieldValue>, usize)> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else { continue };
        rows.swap(p, r);
        rhs.swap(p, r);
        let inv = rows[r][col].inv().expect("nonzero pivot");
        for k in col..cols {
            rows[r][k] = &rows[r][k] * &inv;
        }
        rhs[r] = &rhs[r] * &inv;
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_zero() {
                let f = rows[i][col].clone();
                for k in col..cols {
                    let v = &f * &rows[r][k];
                    rows[i][k] = &rows[i][k] - &v;
                }
                let v = &f * &rhs[r];
                rhs[i] = &rhs[i] - &v;
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    if rhs[r..].iter().any(|v| !v.is_zero()) {
        return None;
    }
    let mut x = vec![field.zero(); cols];
    for (i, &col) in pivots.iter().enumerate() {
        x[col] = rhs[i].clone();
    }
    Some((x, pivots.len()))
}

/// Monomial bases of the pieces a graded equation touches.
pub(crate) trait PieceSource {
    fn piece(&self, w: &[i64]) -> Vec<Exponent>;
}

impl PieceSource for Grading {
    fn piece(&self, w: &[i64]) -> Vec<Exponent> {
        let mut pts = self.graded_piece(w).points;
        pts.sort();
        pts
    }
}

/// Pieces precomputed from an enumeration of exponents (already sorted).
pub(crate) struct PieceTable<'a> {
    pub grading: &'a Grading,
    pub table: &'a BTreeMap<Weight, Vec<Exponent>>,
}

impl PieceSource for PieceTable<'_> {
    fn piece(&self, w: &[i64]) -> Vec<Exponent> {
        match self.table.get(w) {
            Some(v) => v.clone(),
            None => self.grading.piece(w),
        }
    }
}

/// Core of [`solve_graded`] with no precondition checks.
pub(crate) fn solve_graded_raw(
    pieces: &dyn PieceSource,
    n: usize,
    field: Field,
    g: &Series,
    h: &Series,
    f: &Series,
    w: &[i64],
    z: &[i64],
    i: &[i64],
) -> Result<GradedSolution> {
    let psi_cols = pieces.piece(&add_weights(z, i));
    let phi_cols = pieces.piece(&add_weights(w, i));
    let rows = pieces.piece(&add_weights(&add_weights(w, z), i));
    let row_index: BTreeMap<&Exponent, usize> = rows.iter().enumerate().map(|(k, e)| (e, k)).collect();
    let cols = psi_cols.len() + phi_cols.len();
    let mut mat = vec![vec![field.zero(); cols]; rows.len()];
    for (col, (factor, m)) in psi_cols
        .iter()
        .map(|m| (g, m))
        .chain(phi_cols.iter().map(|m| (h, m)))
        .enumerate()
    {
        for (e, c) in factor.terms() {
            let k = *row_index
                .get(&(e + m))
                .ok_or_else(|| Error::internal("product left its graded piece"))?;
            mat[k][col] = c.clone();
        }
    }
    let mut rhs = vec![field.zero(); rows.len()];
    for (e, c) in f.terms() {
        let k = *row_index
            .get(e)
            .ok_or_else(|| Error::NotHomogeneous(format!("term {e} of F has the wrong weight")))?;
        rhs[k] = c.clone();
    }
    let stats = SystemStats { unknowns: cols, equations: rows.len(), rank: 0 };
    if rows.is_empty() {
        let zero = Series::zero(n, field);
        let stats = SystemStats { rank: 0, ..stats };
        return Ok(GradedSolution { psi: zero.clone(), phi: zero, stats });
    }
    let (x, rank) = solve_linear(field, mat, rhs, cols)
        .ok_or_else(|| Error::internal("graded system is inconsistent"))?;
    let mut psi = Series::zero(n, field);
    let mut phi = Series::zero(n, field);
    for (k, m) in psi_cols.iter().enumerate() {
        psi.add_term(m.clone(), x[k].clone());
    }
    for (k, m) in phi_cols.iter().enumerate() {
        phi.add_term(m.clone(), x[psi_cols.len() + k].clone());
    }
    Ok(GradedSolution { psi, phi, stats: SystemStats { rank, ..stats } })
}

fn check_same_ring(a: &Series, b: &Series) -> Result<()> {
    if a.n() != b.n() || a.field() != b.field() {
        return Err(Error::Mismatch(format!(
            "{} variables over {} vs {} variables over {}",
            a.n(),
            a.field(),
            b.n(),
            b.field()
        )));
    }
    Ok(())
}

fn homogeneous_or_zero(gr: &Grading, f: &Series, expected: &[i64]) -> Result<()> {
    if f.is_zero() {
        return Ok(());
    }
    let w = gr.homogeneous_weight(f)?;
    if w != expected {
        return Err(Error::NotHomogeneous(format!("F has weight {w:?}, expected {expected:?}")));
    }
    Ok(())
}

/// The common shape checks of both solvers; returns `(w, z)`.
fn check_inputs(gr: &Grading, g: &Series, h: &Series, f: &Series, i: &[i64]) -> Result<(Weight, Weight)> {
    check_same_ring(g, h)?;
    check_same_ring(g, f)?;
    if g.n() != gr.n() {
        return Err(Error::Mismatch("grading and series have different variable counts".into()));
    }
    let w = gr.homogeneous_weight(g)?;
    let z = gr.homogeneous_weight(h)?;
    if i.len() != w.len() {
        return Err(Error::Mismatch(format!("weight {i:?} has the wrong length")));
    }
    if !gr.in_monoid(i) {
        return Err(Error::NotInMonoid(i.to_vec()));
    }
    homogeneous_or_zero(gr, f, &add_weights(&add_weights(&w, &z), i))?;
    if !gr.coprime_split_check(g, h)?.coprime {
        return Err(Error::NotCoprime);
    }
    Ok((w, z))
}

/// First variable dividing every term of `g`.
pub(crate) fn dividing_variable(g: &Series) -> Option<usize> {
    g.min_exponent().and_then(|m| m.0.iter().position(|&x| x > 0))
}

/// Solves `G psi + H phi = F` for `G`, `H` coprime and `G` free of monomial
/// factors. Unknowns are ordered `psi` columns then `phi` columns, each in
/// ascending exponent order; free unknowns are zero.
pub fn solve_graded(gr: &Grading, g: &Series, h: &Series, f: &Series, i: &[i64]) -> Result<GradedSolution> {
    let (w, z) = check_inputs(gr, g, h, f, i)?;
    if let Some(v) = dividing_variable(g) {
        return Err(Error::DivisibleByVariable(v + 1));
    }
    solve_graded_raw(gr, g.n(), g.field(), g, h, f, &w, &z, i)
}

/// `x_n`-free part of `s` (terms with zero last exponent).
fn at_last_zero(s: &Series) -> Series {
    let n = s.n();
    s.filter(|e| e.0[n - 1] == 0)
}

/// `s / m` for a single monomial `m`, if exact.
fn divide_by_monomial(s: &Series, m: &Series) -> Option<Series> {
    let (e, c) = m.terms().next()?;
    let inv = c.inv()?;
    let neg = e.scale(-1);
    s.shift(&neg).map(|q| q.scale(&inv))
}

/// Core of [`solve_graded_monic`] without precondition checks.
pub(crate) fn solve_graded_monic_raw(
    pieces: &dyn PieceSource,
    gr: &Grading,
    g: &Series,
    h: &Series,
    f: &Series,
    i: &[i64],
) -> Result<GradedSolution> {
    let n = g.n();
    let field = g.field();
    let last = Exponent::unit(n, n - 1);
    let k = g.min_exponent().expect("nonzero").0[n - 1];
    let g_rest = g.shift(&last.scale(-k)).expect("x_n^k divides G");
    let h0 = at_last_zero(h);
    if k > 0 && h0.len() != 1 {
        return Err(Error::internal("H restricted to x_n = 0 must be a single monomial"));
    }
    let h_tail = if k > 0 {
        h.sub(&h0).shift(&last.scale(-1)).expect("x_n divides H - H(x_n=0)")
    } else {
        Series::zero(n, field)
    };

    // F = x_n^k A + H * (phi_1 + x_n phi_2 + ...)
    let mut phi = Series::zero(n, field);
    let mut power = Series::one(n, field);
    let mut a = f.clone();
    let x_n = Series::monomial(last.clone(), field.one());
    for _ in 0..k {
        let r0 = at_last_zero(&a);
        let q = a.sub(&r0).shift(&last.scale(-1)).expect("x_n divides F - F(x_n=0)");
        let phi_j = divide_by_monomial(&r0, &h0).ok_or_else(|| {
            Error::Precondition("remainder is not divisible by H(x_n = 0); check the edge is descendant".into())
        })?;
        a = q.sub(&h_tail.mul(&phi_j));
        phi = phi.add(&power.mul(&phi_j));
        power = power.mul(&x_n);
    }
    let w_rest = gr.homogeneous_weight(&g_rest)?;
    let z = gr.homogeneous_weight(h)?;
    let (psi, phi_rest, stats) = if g_rest.len() == 1 {
        let psi = divide_by_monomial(&a, &g_rest)
            .ok_or_else(|| Error::internal("pure power of x_n must divide the reduced right-hand side"))?;
        let cols = pieces.piece(&add_weights(&z, i)).len() + pieces.piece(&add_weights(&w_rest, i)).len();
        let rows = pieces.piece(&add_weights(&add_weights(&w_rest, &z), i)).len();
        (psi, Series::zero(n, field), SystemStats { unknowns: cols, equations: rows, rank: rows })
    } else {
        let s = solve_graded_raw(pieces, n, field, &g_rest, h, &a, &w_rest, &z, i)?;
        (s.psi, s.phi, s.stats)
    };
    let phi = phi.add(&power.mul(&phi_rest));
    Ok(GradedSolution { psi, phi, stats })
}

/// Solves `G psi + H phi = F` for `G` monic in the last variable by
/// peeling off powers of `x_n` (exact monomial divisions), then solving the
/// remaining system for the monomial-free cofactor of `G`.
pub fn solve_graded_monic(gr: &Grading, g: &Series, h: &Series, f: &Series, i: &[i64]) -> Result<GradedSolution> {
    check_inputs(gr, g, h, f, i)?;
    if !crate::grading::monic_in_last(g) {
        return Err(Error::NotMonic);
    }
    let c = gr.direction();
    if !crate::geometry::is_descendant(c) {
        return Err(Error::Precondition(format!("direction {c:?} is not descendant")));
    }
    solve_graded_monic_raw(gr, gr, g, h, f, i)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{parse_with, VarNames};

    fn q(s: &str) -> Series {
        q_in(s, 2)
    }

    fn q_in(s: &str, n: usize) -> Series {
        parse_with(s, Field::Rationals, &VarNames::indexed(n)).unwrap()
    }

    fn node() -> (Grading, Series, Series) {
        (Grading::from_direction(&[1, -1]).unwrap(), q("x2 - x1"), q("x2 + x1"))
    }

    #[test]
    fn node_equation() {
        let (gr, g, h) = node();
        let f = q("-x1^3");
        let s = solve_graded(&gr, &g, &h, &f, &[1]).unwrap();
        assert_eq!(g.mul(&s.psi).add(&h.mul(&s.phi)), f);
        assert_eq!(s.stats.kernel_dim(), gr.graded_piece(&[1]).dim());
        let m = solve_graded_monic(&gr, &g, &h, &f, &[1]).unwrap();
        assert_eq!(g.mul(&m.psi).add(&h.mul(&m.phi)), f);
    }

    #[test]
    fn zero_rhs() {
        let (gr, g, h) = node();
        let zero = Series::zero(2, Field::Rationals);
        let s = solve_graded(&gr, &g, &h, &zero, &[2]).unwrap();
        assert!(s.psi.is_zero() && s.phi.is_zero());
    }

    #[test]
    fn pure_power_base_case() {
        // G = x2, H = x1 (x2-free) along c = (1,-1).
        let gr = Grading::from_direction(&[1, -1]).unwrap();
        let g = q("x2");
        let h = q("x1");
        let f = q("x2*x1^3 + 3*x1^4 - x1*x2^3");
        let s = solve_graded_monic(&gr, &g, &h, &f, &[2]).unwrap();
        assert_eq!(g.mul(&s.psi).add(&h.mul(&s.phi)), f);
        assert_eq!(s.phi, q("3*x1^3"));
    }

    #[test]
    fn rejects_bad_inputs() {
        let gr = Grading::from_direction(&[1, 1, -1]).unwrap();
        let g = q_in("x2*x3 + x1*x2^2", 3);
        let h = q_in("x1", 3);
        let f = Series::zero(3, Field::Rationals);
        assert!(matches!(solve_graded(&gr, &g, &h, &f, &[0, 0]), Err(Error::DivisibleByVariable(2))));
        let (gr2, g2, _) = node();
        assert!(matches!(solve_graded(&gr2, &g2, &g2, &q("x1"), &[0]), Err(Error::NotCoprime) | Err(Error::NotHomogeneous(_))));
    }
}
