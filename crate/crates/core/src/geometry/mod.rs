//! Newton polyhedra: vertices, compact edges, loose and descendant edges.
//!
//! Every question is phrased as an exact feasibility problem in the weight
//! vector `xi` and answered by [`feasibility::feasible`]. Strict positivity
//! and strict inequalities are scaled to `>= 1`, which is harmless because
//! all systems are positively homogeneous.

mod cone;
mod feasibility;
pub mod render;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

pub use cone::{extreme_rays, orthogonal_rays, MAX_RAY_DIM};
pub use feasibility::{feasible, Constraint, FeasibilitySystem, Relation};

use crate::error::{Error, Result};
use crate::series::{segment_lattice_points, Exponent, Series};

/// A compact edge `[a, b]` with primitive direction `c`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeDescriptor {
    pub a: Exponent,
    pub b: Exponent,
    pub c: Vec<i64>,
    pub compact: bool,
    pub loose: bool,
    pub descendant: bool,
}

impl EdgeDescriptor {
    /// Lattice points on the edge, from `a` to `b`.
    pub fn lattice_points(&self) -> Vec<Exponent> {
        segment_lattice_points(&self.a, &self.b)
    }

    /// Largest total degree among the edge's lattice points.
    pub fn max_degree(&self) -> i64 {
        self.a.degree().max(self.b.degree())
    }

    /// Direction used to walk the edge, see [`orient_direction`].
    pub fn oriented_direction(&self) -> Vec<i64> {
        orient_direction(&self.c, self.descendant)
    }
}

/// Primitive `(b - a) / gcd`, signed so that its first nonzero entry is
/// positive.
pub fn primitive_direction(a: &Exponent, b: &Exponent) -> Vec<i64> {
    let d = b - a;
    let g = d.content();
    let mut c: Vec<i64> = d.0.iter().map(|x| x / g.max(1)).collect();
    if c.iter().find(|x| **x != 0).is_some_and(|x| *x < 0) {
        c.iter_mut().for_each(|x| *x = -*x);
    }
    c
}

/// Descendant edges are walked with `c_n < 0`; all others keep the
/// first-nonzero-positive convention.
pub fn orient_direction(c: &[i64], descendant: bool) -> Vec<i64> {
    let flip = if descendant {
        c.last().is_some_and(|x| *x > 0)
    } else {
        c.iter().find(|x| **x != 0).is_some_and(|x| *x < 0)
    };
    if flip {
        c.iter().map(|x| -x).collect()
    } else {
        c.to_vec()
    }
}

/// `c` (up to sign) has `c_n < 0` and `c_i >= 0` for `i < n`.
pub fn is_descendant(c: &[i64]) -> bool {
    let Some(&last) = c.last() else { return false };
    if last == 0 {
        return false;
    }
    let s = -last.signum();
    c[..c.len() - 1].iter().all(|x| x * s >= 0)
}

/// A face `Delta^xi`, restricted to the support.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub points: Vec<Exponent>,
    pub compact: bool,
}

#[derive(Clone, Debug)]
pub struct Polyhedron {
    n: usize,
    support: Vec<Exponent>,
    /// Componentwise-minimal support points; only these can constrain `xi > 0`.
    minimal: Vec<Exponent>,
    vertices: Vec<Exponent>,
    certificates: Vec<Vec<BigRational>>,
}

fn sub(u: &Exponent, v: &Exponent) -> Vec<i64> {
    (u - v).0
}

fn ones(n: usize) -> impl Iterator<Item = Vec<i64>> {
    (0..n).map(move |i| Exponent::unit(n, i).0)
}

fn dot_q(xi: &[BigRational], e: &Exponent) -> BigRational {
    xi.iter().zip(&e.0).map(|(x, c)| x * BigRational::from_integer(BigInt::from(*c))).sum()
}

impl Polyhedron {
    /// The Newton polyhedron of a nonzero series.
    pub fn new(f: &Series) -> Result<Self> {
        if f.is_zero() {
            return Err(Error::ZeroSeries);
        }
        Self::from_support(f.n(), f.support())
    }

    pub fn from_support(n: usize, mut support: Vec<Exponent>) -> Result<Self> {
        support.sort();
        support.dedup();
        if support.is_empty() {
            return Err(Error::ZeroSeries);
        }
        let minimal: Vec<Exponent> = support
            .iter()
            .filter(|u| !support.iter().any(|v| v != *u && v.divides(u)))
            .cloned()
            .collect();
        let mut vertices = Vec::new();
        let mut certificates = Vec::new();
        for s in &minimal {
            let mut sys = FeasibilitySystem::new(n);
            for e in ones(n) {
                sys.ge(&e, 1);
            }
            for u in minimal.iter().filter(|u| *u != s) {
                sys.ge(&sub(u, s), 1);
            }
            if let Some(xi) = feasible(&sys) {
                vertices.push(s.clone());
                certificates.push(xi);
            }
        }
        Ok(Polyhedron { n, support, minimal, vertices, certificates })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn support(&self) -> &[Exponent] {
        &self.support
    }

    pub fn vertices(&self) -> &[Exponent] {
        &self.vertices
    }

    /// A strictly positive `xi` whose face is exactly `{v}`.
    pub fn certificate(&self, v: &Exponent) -> Option<&[BigRational]> {
        self.vertices.iter().position(|w| w == v).map(|i| self.certificates[i].as_slice())
    }

    /// `true` if the certificate of `v` strictly separates it from every
    /// other support point.
    pub fn verify_certificate(&self, v: &Exponent) -> bool {
        let Some(xi) = self.certificate(v) else { return false };
        let val = dot_q(xi, v);
        xi.iter().all(|x| x.is_positive())
            && self.support.iter().filter(|u| *u != v).all(|u| dot_q(xi, u) > val)
    }

    /// `u in conv(vertices) + R_{>=0}^n`, decided in the convex-combination
    /// weights.
    pub fn contains(&self, u: &Exponent) -> bool {
        let m = self.vertices.len();
        let mut sys = FeasibilitySystem::new(m);
        let mut unit = vec![0; m];
        for i in 0..m {
            unit[i] = 1;
            sys.ge(&unit, 0);
            unit[i] = 0;
        }
        sys.eq(&vec![1; m], 1);
        for k in 0..self.n {
            let row: Vec<i64> = self.vertices.iter().map(|v| -v.0[k]).collect();
            sys.ge(&row, -u.0[k]);
        }
        feasible(&sys).is_some()
    }

    /// Support points minimizing `<xi, .>`; compact iff `xi > 0`.
    pub fn face_for(&self, xi: &[BigRational]) -> Face {
        let vals: Vec<BigRational> = self.support.iter().map(|u| dot_q(xi, u)).collect();
        let min = vals.iter().min().cloned().unwrap_or_else(BigRational::zero);
        Face {
            points: self
                .support
                .iter()
                .zip(&vals)
                .filter(|(_, v)| **v == min)
                .map(|(u, _)| u.clone())
                .collect(),
            compact: xi.iter().all(|x| x.is_positive()),
        }
    }

    fn off_line<'a>(&'a self, a: &'a Exponent, b: &'a Exponent) -> impl Iterator<Item = &'a Exponent> {
        self.vertices.iter().filter(move |v| !collinear(a, b, v))
    }

    /// Shared part of the edge and looseness systems.
    fn supporting_system(&self, a: &Exponent, b: &Exponent) -> FeasibilitySystem {
        let mut sys = FeasibilitySystem::new(self.n);
        for e in ones(self.n) {
            sys.ge(&e, 1);
        }
        sys.eq(&sub(a, b), 0);
        for u in &self.minimal {
            sys.ge(&sub(u, a), 0);
        }
        sys
    }

    fn is_compact_edge(&self, a: &Exponent, b: &Exponent) -> bool {
        let mut sys = self.supporting_system(a, b);
        for v in self.off_line(a, b) {
            sys.ge(&sub(v, a), 1);
        }
        feasible(&sys).is_some()
    }

    fn loose_between(&self, a: &Exponent, b: &Exponent) -> bool {
        self.off_line(a, b).all(|v| {
            let mut sys = self.supporting_system(a, b);
            sys.eq(&sub(v, a), 0);
            feasible(&sys).is_none()
        })
    }

    fn descriptor(&self, a: &Exponent, b: &Exponent) -> EdgeDescriptor {
        let c = primitive_direction(a, b);
        EdgeDescriptor {
            a: a.clone(),
            b: b.clone(),
            descendant: is_descendant(&c),
            loose: self.loose_between(a, b),
            compact: true,
            c,
        }
    }

    /// All compact edges, endpoints ordered as in the vertex list.
    pub fn compact_edges(&self) -> Vec<EdgeDescriptor> {
        let mut out = Vec::new();
        for (i, a) in self.vertices.iter().enumerate() {
            for b in &self.vertices[i + 1..] {
                if self.is_compact_edge(a, b) {
                    out.push(self.descriptor(a, b));
                }
            }
        }
        out
    }

    pub fn loose_edges(&self) -> Vec<EdgeDescriptor> {
        self.compact_edges().into_iter().filter(|e| e.loose).collect()
    }

    /// Validates `[a, b]` as a compact edge and classifies it. The endpoint
    /// order given by the caller is kept.
    pub fn edge(&self, a: &Exponent, b: &Exponent) -> Result<EdgeDescriptor> {
        let is_vertex = |v: &Exponent| self.vertices.contains(v);
        if a == b || !is_vertex(a) || !is_vertex(b) || !self.is_compact_edge(a, b) {
            return Err(Error::NotAnEdge(a.0.clone(), b.0.clone()));
        }
        Ok(self.descriptor(a, b))
    }

    pub fn is_loose(&self, e: &EdgeDescriptor) -> Result<bool> {
        Ok(self.edge(&e.a, &e.b)?.loose)
    }

    /// For every extreme ray `r` of `{xi >= 0 : <xi,a> = <xi,b>}` and every
    /// support point `u`: `<r,u> >= <r,a>`.
    pub fn check_edge_lemma(&self, e: &EdgeDescriptor) -> Result<bool> {
        let rays = orthogonal_rays(&sub(&e.a, &e.b))?;
        Ok(rays.iter().all(|r| self.support.iter().all(|u| u.dot(r) >= e.a.dot(r))))
    }

    /// A loose edge whose endpoints have no common variable forces the
    /// polyhedron to have exactly those two vertices.
    pub fn check_two_vertices_lemma(&self, e: &EdgeDescriptor) -> bool {
        let disjoint = e.a.componentwise_min(&e.b).0.iter().all(|&x| x == 0);
        !(e.loose && disjoint) || self.vertices.len() == 2
    }
}

/// `v` lies on the affine line through `a` and `b`.
fn collinear(a: &Exponent, b: &Exponent, v: &Exponent) -> bool {
    let d = sub(b, a);
    let w = sub(v, a);
    (0..d.len()).all(|i| (i + 1..d.len()).all(|j| d[i] * w[j] == d[j] * w[i]))
}

/// gcd-based check that `c` is primitive.
pub fn is_primitive(c: &[i64]) -> bool {
    c.iter().fold(0i64, |g, x| g.gcd(x)) == 1
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(n: usize, pts: &[&[i64]]) -> Polyhedron {
        Polyhedron::from_support(n, pts.iter().map(|p| Exponent(p.to_vec())).collect()).unwrap()
    }

    fn e(v: &[i64]) -> Exponent {
        Exponent(v.to_vec())
    }

    #[test]
    fn figure_four() {
        let p = poly(2, &[&[0, 4], &[1, 2], &[2, 1], &[4, 0]]);
        assert_eq!(p.vertices().len(), 4);
        for v in p.vertices() {
            assert!(p.verify_certificate(v));
        }
        let edges = p.compact_edges();
        assert_eq!(edges.len(), 3);
        assert!(edges.iter().all(|e| e.loose && e.descendant));
    }

    #[test]
    fn remark_support() {
        let p = poly(3, &[&[0, 0, 3], &[1, 1, 2], &[1, 1, 1], &[2, 2, 0]]);
        assert_eq!(p.vertices(), &[e(&[1, 1, 1]), e(&[0, 0, 3]), e(&[2, 2, 0])]);
        // Both edges at (1,1,1) are loose: the three vertices span no compact 2-face.
        let loose = p.loose_edges();
        assert_eq!(loose.len(), 2);
        let named: Vec<_> =
            loose.iter().filter(|x| x.a == e(&[1, 1, 1]) && x.b == e(&[2, 2, 0])).collect();
        assert_eq!(named.len(), 1);
        let edge = named[0];
        assert!(edge.descendant);
        assert_eq!(edge.c, vec![1, 1, -1]);
        assert!(p.check_edge_lemma(edge).unwrap());
        assert!(p.check_two_vertices_lemma(edge));
        assert!(p.contains(&e(&[1, 1, 2])));
    }

    #[test]
    fn simplex_has_no_loose_edge() {
        let p = poly(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        let edges = p.compact_edges();
        assert_eq!(edges.len(), 3);
        assert!(edges.iter().all(|e| !e.loose));
    }

    #[test]
    fn figure_three() {
        let p = poly(3, &[&[2, 2, 0], &[1, 1, 1], &[2, 0, 2], &[0, 2, 2]]);
        let edges = p.compact_edges();
        assert_eq!(edges.len(), 3);
        assert!(edges.iter().all(|e| e.loose && (e.a == e_(&[1, 1, 1]) || e.b == e_(&[1, 1, 1]))));
        fn e_(v: &[i64]) -> Exponent {
            Exponent(v.to_vec())
        }
    }

    #[test]
    fn faces() {
        let p = poly(2, &[&[0, 4], &[1, 2], &[2, 1], &[4, 0]]);
        let q = |v: i64| BigRational::from_integer(v.into());
        let f = p.face_for(&[q(1), q(1)]);
        assert_eq!(f.points, vec![e(&[2, 1]), e(&[1, 2])]);
        assert!(f.compact);
        let all = p.face_for(&[q(0), q(0)]);
        assert_eq!(all.points.len(), 4);
        assert!(!all.compact);
    }

    #[test]
    fn descendant_rule() {
        assert!(is_descendant(&[1, -1]));
        assert!(is_descendant(&[-1, 1]));
        assert!(is_descendant(&[1, 1, -1]));
        assert!(!is_descendant(&[1, -1, 0]));
        assert!(!is_descendant(&[1, -2, -1]));
    }

    #[test]
    fn not_an_edge() {
        let p = poly(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1]]);
        assert!(matches!(p.edge(&e(&[1, 1, 1]), &e(&[1, 0, 0])), Err(Error::NotAnEdge(..))));
    }
}
