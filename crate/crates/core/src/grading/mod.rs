//! The grading attached to an edge direction `c`: an `N^n`-basis
//! `xi_1..xi_{n-1}` orthogonal to `c`, weights `omega(alpha)`, graded
//! pieces `R_w` (lattice points on a line parallel to `c`), the monoid `M`
//! and univariate models of homogeneous elements.

mod lattice;

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

pub use lattice::ColumnHnf;

use crate::error::{Error, Result};
use crate::geometry::{is_primitive, orient_direction, orthogonal_rays, EdgeDescriptor};
use crate::series::{Exponent, Series};
use crate::univariate::UniPoly;

/// A value of `omega`, one entry per orthogonal basis vector.
pub type Weight = Vec<i64>;

/// Total degree first, then lexicographic.
pub fn weight_order(a: &[i64], b: &[i64]) -> Ordering {
    let da: i64 = a.iter().sum();
    let db: i64 = b.iter().sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

pub fn add_weights(a: &[i64], b: &[i64]) -> Weight {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_weights(a: &[i64], b: &[i64]) -> Weight {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// One pass of the basis loop: `xi_k += xi_j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BasisStep {
    pub rule: &'static str,
    pub j: usize,
    pub k: usize,
    /// `sum |w_i|` after the step.
    pub monovariant: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BasisRun {
    /// `n - 1` vectors orthogonal to `c`, in their original index order.
    pub orthogonal: Vec<Vec<i64>>,
    /// The remaining vector, completing a basis of `R^n`.
    pub completion: Vec<i64>,
    pub initial_monovariant: i64,
    pub steps: Vec<BasisStep>,
}

/// Modifies the standard basis by steps `xi_k += xi_j` until exactly one
/// vector has nonzero scalar product with `c`. Ties are broken by the
/// smallest index. Panics if the monovariant `sum |<xi_i, c>|` fails to
/// decrease strictly.
pub fn orthogonal_basis(c: &[i64]) -> Result<BasisRun> {
    let n = c.len();
    let has_pos = c.iter().any(|&x| x > 0);
    let has_neg = c.iter().any(|&x| x < 0);
    if n < 2 || !has_pos || !has_neg || !is_primitive(c) {
        return Err(Error::InvalidDirection(c.to_vec()));
    }
    let mut xi: Vec<Vec<i64>> = (0..n).map(|i| Exponent::unit(n, i).0).collect();
    let weights = |xi: &[Vec<i64>]| -> Vec<i64> {
        xi.iter().map(|v| v.iter().zip(c).map(|(a, b)| a * b).sum()).collect()
    };
    let mono = |w: &[i64]| w.iter().map(|x| x.abs()).sum::<i64>();
    let initial = mono(c);
    let mut steps = Vec::new();
    let mut last = initial;
    loop {
        let w = weights(&xi);
        let nz: Vec<usize> = (0..n).filter(|&i| w[i] != 0).collect();
        if nz.len() <= 1 {
            break;
        }
        let opposite = |j: usize| -> Vec<usize> { nz.iter().copied().filter(|&k| w[k] * w[j] < 0).collect() };
        let (rule, j, k, stop) = if nz.len() == 2 && w[nz[0]] + w[nz[1]] == 0 {
            ("1", nz[0], nz[1], true)
        } else {
            let j = *nz.iter().min_by_key(|&&i| (w[i].abs(), i)).expect("nonempty");
            let opp = opposite(j);
            if let Some(&k) = opp.iter().find(|&&k| w[k].abs() > w[j].abs()) {
                ("2a", j, k, false)
            } else if opp.len() >= 2 {
                ("2b", j, opp[0], false)
            } else {
                let j2 = opp[0];
                let opp2 = opposite(j2);
                match opp2.iter().find(|&&k| w[k].abs() > w[j2].abs()) {
                    Some(&k) => ("2c", j2, k, false),
                    // All entries share |w_j|: take the first opposite entry.
                    None => ("2c-b", j2, opp2[0], false),
                }
            }
        };
        let add = xi[j].clone();
        for (x, a) in xi[k].iter_mut().zip(&add) {
            *x += a;
        }
        let now = mono(&weights(&xi));
        assert!(now < last, "basis loop monovariant must decrease ({last} -> {now})");
        last = now;
        steps.push(BasisStep { rule, j, k, monovariant: now });
        if stop {
            break;
        }
    }
    let w = weights(&xi);
    let m = (0..n).find(|&i| w[i] != 0).expect("one nonzero entry remains");
    Ok(BasisRun {
        orthogonal: (0..n).filter(|&i| i != m).map(|i| xi[i].clone()).collect(),
        completion: xi[m].clone(),
        initial_monovariant: initial,
        steps,
    })
}

/// Exact determinant of a small integer matrix.
pub fn determinant(rows: &[Vec<i64>]) -> BigInt {
    let n = rows.len();
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
        .collect();
    let mut det = BigRational::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return BigInt::zero();
        };
        if p != col {
            m.swap(p, col);
            det = -det;
        }
        det *= m[col][col].clone();
        for r in col + 1..n {
            let f = &m[r][col] / &m[col][col];
            for k in col..n {
                let v = &f * &m[col][k];
                m[r][k] -= v;
            }
        }
    }
    det.to_integer()
}

/// Lattice points `a0, a0 + c, ..., a0 + r c` of weight `w` in `N^n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedPiece {
    pub weight: Weight,
    pub points: Vec<Exponent>,
}

impl GradedPiece {
    pub fn dim(&self) -> usize {
        self.points.len()
    }

    /// Contains two monomials without a common variable.
    pub fn has_coprime_pair(&self) -> bool {
        self.points.iter().enumerate().any(|(i, a)| {
            self.points[i + 1..]
                .iter()
                .any(|b| a.0.iter().zip(&b.0).all(|(x, y)| *x == 0 || *y == 0))
        })
    }
}

/// `U(t) = sum u_j t^j` standing for `sum u_j x^(a0 + j c)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnivariateModel {
    pub base: Exponent,
    pub poly: UniPoly,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SplitReport {
    pub coprime: bool,
    pub g_var_free: bool,
    pub g_monic_in_last: bool,
}

#[derive(Clone, Debug)]
pub struct Grading {
    n: usize,
    edge: Option<EdgeDescriptor>,
    /// Walking direction (descendant edges: last entry negative).
    c: Vec<i64>,
    run: BasisRun,
    rays: Vec<Vec<i64>>,
    hnf: ColumnHnf,
}

fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

impl Grading {
    pub fn for_edge(edge: &EdgeDescriptor) -> Result<Self> {
        let mut g = Self::from_direction(&edge.oriented_direction())?;
        g.edge = Some(edge.clone());
        Ok(g)
    }

    /// Grading for a primitive direction; `c` is reoriented like an edge
    /// direction (descendant vectors get a negative last entry).
    pub fn from_direction(c: &[i64]) -> Result<Self> {
        let run = orthogonal_basis(c)?;
        let c = orient_direction(c, crate::geometry::is_descendant(c));
        let rays = orthogonal_rays(&c)?;
        let hnf = ColumnHnf::new(&run.orthogonal);
        Ok(Grading { n: c.len(), edge: None, c, run, rays, hnf })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge(&self) -> Option<&EdgeDescriptor> {
        self.edge.as_ref()
    }

    pub fn direction(&self) -> &[i64] {
        &self.c
    }

    pub fn basis(&self) -> &[Vec<i64>] {
        &self.run.orthogonal
    }

    pub fn completion(&self) -> &[i64] {
        &self.run.completion
    }

    pub fn basis_run(&self) -> &BasisRun {
        &self.run
    }

    pub fn rays(&self) -> &[Vec<i64>] {
        &self.rays
    }

    /// `xi_1 + ... + xi_{n-1}`; strictly positive, so its faces are compact.
    pub fn xi_sum(&self) -> Vec<i64> {
        (0..self.n).map(|k| self.run.orthogonal.iter().map(|v| v[k]).sum()).collect()
    }

    pub fn weight(&self, alpha: &Exponent) -> Weight {
        self.run.orthogonal.iter().map(|xi| alpha.dot(xi)).collect()
    }

    /// Rational point on the line `omega = w` (with `<xi_n, alpha> = 0`).
    fn line_point(&self, w: &[i64]) -> Vec<BigRational> {
        let n = self.n;
        let mut m: Vec<Vec<BigRational>> = self
            .run
            .orthogonal
            .iter()
            .chain(std::iter::once(&self.run.completion))
            .enumerate()
            .map(|(i, row)| {
                let mut r: Vec<BigRational> = row.iter().map(|&x| rat(x)).collect();
                r.push(rat(w.get(i).copied().unwrap_or(0)));
                r
            })
            .collect();
        for col in 0..n {
            let p = (col..n).find(|&r| !m[r][col].is_zero()).expect("basis is invertible");
            m.swap(p, col);
            let inv = m[col][col].recip();
            for k in col..=n {
                m[col][k] *= &inv;
            }
            for r in 0..n {
                if r != col && !m[r][col].is_zero() {
                    let f = m[r][col].clone();
                    for k in col..=n {
                        let v = &f * &m[col][k];
                        m[r][k] -= v;
                    }
                }
            }
        }
        m.into_iter().map(|r| r[n].clone()).collect()
    }

    pub fn graded_piece(&self, w: &[i64]) -> GradedPiece {
        let empty = || GradedPiece { weight: w.to_vec(), points: Vec::new() };
        let p = self.line_point(w);
        let c = &self.c;
        // Parametrize by an integer value k of the coordinate with the
        // smallest nonzero |c_i|.
        let i0 = (0..self.n).filter(|&i| c[i] != 0).min_by_key(|&i| (c[i].abs(), i)).expect("c != 0");
        let (mut lo, mut hi): (Option<BigRational>, Option<BigRational>) = (None, None);
        for i in 0..self.n {
            if c[i] == 0 {
                if !p[i].is_integer() || p[i].is_negative() {
                    return empty();
                }
                continue;
            }
            // p_i + s c_i >= 0
            let bound = -&p[i] / rat(c[i]);
            if c[i] > 0 {
                lo = Some(lo.map_or(bound.clone(), |l| l.max(bound)));
            } else {
                hi = Some(hi.map_or(bound.clone(), |h| h.min(bound)));
            }
        }
        let (lo, hi) = (lo.expect("mixed signs"), hi.expect("mixed signs"));
        if lo > hi {
            return empty();
        }
        // k = p_i0 + s c_i0 ranges over an interval of integers.
        let ci0 = rat(c[i0]);
        let (k1, k2) = (&p[i0] + &lo * &ci0, &p[i0] + &hi * &ci0);
        let (kmin, kmax) = if k1 <= k2 { (k1, k2) } else { (k2, k1) };
        let (kmin, kmax) = (kmin.ceil().to_integer(), kmax.floor().to_integer());
        let mut pts: Vec<(BigRational, Exponent)> = Vec::new();
        let mut k = kmin;
        while k <= kmax {
            let s = (BigRational::from_integer(k.clone()) - &p[i0]) / &ci0;
            let alpha: Vec<BigRational> = (0..self.n).map(|i| &p[i] + &s * rat(c[i])).collect();
            if alpha.iter().all(|a| a.is_integer()) {
                let e = Exponent(alpha.iter().map(|a| a.to_integer().to_i64().expect("fits")).collect());
                pts.push((s, e));
            }
            k += 1;
        }
        pts.sort_by(|a, b| a.0.cmp(&b.0));
        GradedPiece { weight: w.to_vec(), points: pts.into_iter().map(|(_, e)| e).collect() }
    }

    /// An integer vector of weight `z`, if any.
    pub fn lattice_representative(&self, z: &[i64]) -> Option<Exponent> {
        self.hnf.solve(z).map(Exponent)
    }

    pub fn in_monoid(&self, z: &[i64]) -> bool {
        match self.lattice_representative(z) {
            Some(alpha) => self.rays.iter().all(|r| alpha.dot(r) >= 0),
            None => false,
        }
    }

    /// Splits a series into its homogeneous components.
    pub fn decompose(&self, f: &Series) -> BTreeMap<Weight, Series> {
        let mut out: BTreeMap<Weight, Series> = BTreeMap::new();
        for (e, c) in f.terms() {
            out.entry(self.weight(e))
                .or_insert_with(|| Series::zero(f.n(), f.field()))
                .add_term(e.clone(), c.clone());
        }
        out
    }

    /// The single weight of a homogeneous nonzero series.
    pub fn homogeneous_weight(&self, g: &Series) -> Result<Weight> {
        let mut ws = g.terms().map(|(e, _)| self.weight(e));
        let Some(w) = ws.next() else {
            return Err(Error::NotHomogeneous("the zero series has no weight".into()));
        };
        if let Some(other) = ws.find(|v| *v != w) {
            return Err(Error::NotHomogeneous(format!("weights {w:?} and {other:?} both occur")));
        }
        Ok(w)
    }

    /// Position of `alpha` along `c` relative to `base`.
    fn index_along(&self, base: &Exponent, alpha: &Exponent) -> i64 {
        let i0 = (0..self.n).find(|&i| self.c[i] != 0).expect("c != 0");
        (alpha.0[i0] - base.0[i0]) / self.c[i0]
    }

    pub fn univariate_model(&self, g: &Series) -> Result<UnivariateModel> {
        self.homogeneous_weight(g)?;
        let support = g.support();
        let i0 = (0..self.n).find(|&i| self.c[i] != 0).expect("c != 0");
        let base = support
            .iter()
            .min_by_key(|e| e.0[i0] * self.c[i0].signum())
            .expect("nonzero")
            .clone();
        let mut coeffs = Vec::new();
        for (e, c) in g.terms() {
            let j = self.index_along(&base, e) as usize;
            if coeffs.len() <= j {
                coeffs.resize(j + 1, g.field().zero());
            }
            coeffs[j] = c.clone();
        }
        Ok(UnivariateModel { base, poly: UniPoly::new(g.field(), coeffs) })
    }

    /// Inverse of [`Grading::univariate_model`].
    pub fn from_model(&self, m: &UnivariateModel) -> Series {
        let mut s = Series::zero(self.n, m.poly.field());
        for (j, c) in m.poly.coeffs().iter().enumerate() {
            if !c.is_zero() {
                let shift = Exponent(self.c.iter().map(|x| x * j as i64).collect());
                s.add_term(&m.base + &shift, c.clone());
            }
        }
        s
    }

    pub fn coprime_split_check(&self, g: &Series, h: &Series) -> Result<SplitReport> {
        let ug = self.univariate_model(g)?;
        let uh = self.univariate_model(h)?;
        let gm = g.min_exponent().expect("nonzero");
        let hm = h.min_exponent().expect("nonzero");
        let disjoint = gm.0.iter().zip(&hm.0).all(|(a, b)| *a == 0 || *b == 0);
        Ok(SplitReport {
            coprime: disjoint && ug.poly.gcd(&uh.poly).is_constant(),
            g_var_free: gm.0.iter().all(|&x| x == 0),
            g_monic_in_last: monic_in_last(g),
        })
    }
}

/// The terms of top `x_n`-degree reduce to a single pure power `v x_n^d`.
pub fn monic_in_last(g: &Series) -> bool {
    let n = g.n();
    let Some(d) = g.degree_in(n - 1) else { return false };
    let top: Vec<&Exponent> = g.terms().map(|(e, _)| e).filter(|e| e.0[n - 1] == d).collect();
    top.len() == 1 && top[0].0[..n - 1].iter().all(|&x| x == 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    fn e(v: &[i64]) -> Exponent {
        Exponent(v.to_vec())
    }

    #[test]
    fn golden_two_three_minus_four() {
        let run = orthogonal_basis(&[2, 3, -4]).unwrap();
        assert_eq!(run.orthogonal, vec![vec![5, 2, 4], vec![3, 2, 3]]);
        assert_eq!(run.completion, vec![1, 1, 1]);
        let mut rows = run.orthogonal.clone();
        rows.push(run.completion.clone());
        assert_eq!(determinant(&rows), BigInt::from(-1));
        let mut last = run.initial_monovariant;
        for s in &run.steps {
            assert!(s.monovariant < last);
            last = s.monovariant;
        }
    }

    #[test]
    fn small_bases() {
        let r = orthogonal_basis(&[1, -1]).unwrap();
        assert_eq!((r.orthogonal, r.completion), (vec![vec![1, 1]], vec![1, 0]));
        let r = orthogonal_basis(&[1, 1, -1]).unwrap();
        assert_eq!(r.orthogonal, vec![vec![1, 0, 1], vec![0, 1, 1]]);
        assert_eq!(r.completion, vec![0, 1, 0]);
        let r = orthogonal_basis(&[2, -3]).unwrap();
        assert_eq!(r.orthogonal, vec![vec![3, 2]]);
        assert!(matches!(orthogonal_basis(&[1, 1]), Err(Error::InvalidDirection(_))));
        assert!(matches!(orthogonal_basis(&[2, -4]), Err(Error::InvalidDirection(_))));
    }

    #[test]
    fn pieces_three_two() {
        let g = Grading::from_direction(&[2, -3]).unwrap();
        assert_eq!(g.basis(), &[vec![3, 2]]);
        assert_eq!(g.weight(&e(&[1, 1])), vec![5]);
        assert_eq!(g.graded_piece(&[1]).dim(), 0);
        let six = g.graded_piece(&[6]);
        assert_eq!(six.points, vec![e(&[0, 3]), e(&[2, 0])]);
        assert!(g.in_monoid(&[1]));
        assert!(g.in_monoid(&[0]));
        assert!(!g.in_monoid(&[-1]));
    }

    #[test]
    fn total_degree_pieces() {
        let g = Grading::from_direction(&[1, -1]).unwrap();
        for d in 0..6 {
            assert_eq!(g.graded_piece(&[d]).dim(), d as usize + 1);
        }
    }

    #[test]
    fn models() {
        let g = Grading::from_direction(&[1, -1]).unwrap();
        let s = Series::from_ints(Field::Rationals, &[(&[0, 2], 1), (&[2, 0], -1)]);
        let m = g.univariate_model(&s).unwrap();
        assert_eq!(m.base, e(&[0, 2]));
        assert_eq!(m.poly, UniPoly::from_ints(Field::Rationals, &[1, 0, -1]));
        assert_eq!(g.from_model(&m), s);

        let g = Grading::from_direction(&[1, 1, -1]).unwrap();
        let fe = Series::from_ints(Field::Rationals, &[(&[1, 1, 1], 1), (&[2, 2, 0], 1)]);
        let m = g.univariate_model(&fe).unwrap();
        assert_eq!(m.base, e(&[1, 1, 1]));
        assert_eq!(m.poly, UniPoly::from_ints(Field::Rationals, &[1, 1]));
    }

    #[test]
    fn split_reports() {
        let q = Field::Rationals;
        let g = Grading::from_direction(&[1, -1]).unwrap();
        let gg = Series::from_ints(q, &[(&[0, 1], 1), (&[1, 0], -1)]);
        let hh = Series::from_ints(q, &[(&[0, 1], 1), (&[1, 0], 1)]);
        let r = g.coprime_split_check(&gg, &hh).unwrap();
        assert!(r.coprime && r.g_var_free && r.g_monic_in_last);

        let g3 = Grading::from_direction(&[1, 1, -1]).unwrap();
        let big = Series::from_ints(q, &[(&[1, 1, 1], 1), (&[2, 2, 0], 1)]);
        let x1 = Series::from_ints(q, &[(&[1, 0, 0], 1)]);
        assert!(!g3.coprime_split_check(&big, &x1).unwrap().coprime);
        let gg = Series::from_ints(q, &[(&[0, 0, 1], 1), (&[1, 1, 0], 1)]);
        let hh = Series::from_ints(q, &[(&[1, 1, 0], 1)]);
        let r = g3.coprime_split_check(&gg, &hh).unwrap();
        assert!(r.coprime && r.g_var_free && r.g_monic_in_last);
        let mixed = gg.add(&hh.mul(&hh));
        assert!(matches!(g3.coprime_split_check(&mixed, &hh), Err(Error::NotHomogeneous(_))));
    }
}
