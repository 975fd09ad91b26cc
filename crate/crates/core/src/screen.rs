//! Reducibility witnesses from loose edges, and the necessary conditions an
//! irreducible series must satisfy along its loose edge.
//!
//! A `PassesNecessaryConditions` verdict is not a proof of irreducibility.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{EdgeDescriptor, Polyhedron};
use crate::grading::{Grading, UnivariateModel};
use crate::lifting::{lift_factorization, LiftRequest, LiftMode, LiftResult};
use crate::series::{Exponent, Series};
use crate::univariate::{self, UniPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ScreenStatus {
    ReducibleWithWitness,
    FailsNecessaryConditions,
    PassesNecessaryConditions,
}

/// How the split of `f|_E` was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SplitSource {
    /// `x^{-c} f|_E` and `x^c` for the common monomial `x^c` of the edge.
    MonomialFactor,
    /// Two coprime parts of the factorization of the edge polynomial.
    EdgeFactorization,
}

#[derive(Clone, Debug)]
pub struct Witness {
    pub edge: EdgeDescriptor,
    pub source: SplitSource,
    pub g: Series,
    pub h: Series,
    pub lift: LiftResult,
}

/// `f|_E = (a x^alpha + b x^beta)^k` shape of the edge polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BinomialReport {
    pub holds: bool,
    pub k: usize,
    /// `alpha - beta`, from the start of the edge to its end.
    pub alpha_minus_beta: Vec<i64>,
    pub primitive: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NecessaryConditions {
    pub unique_compact_edge: bool,
    pub edge_poly_is_cfk: bool,
    pub binomial_power_form: bool,
    /// The binomial form concerns an algebraic closure; over Q and F_p it
    /// is informational only.
    pub binomial_informational: bool,
    pub edge_polynomial: String,
    /// `F` and `k` with `f|_E = c F^k` in the univariate model, if so.
    pub irreducible_base: Option<(String, usize)>,
    pub binomial: Option<BinomialReport>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ScreenReport {
    pub vertex_count: usize,
    pub compact_edge_count: usize,
    pub loose_edge_count: usize,
    pub chosen_edge: Option<EdgeDescriptor>,
    /// Componentwise minimum of the chosen edge's endpoints.
    pub common_monomial: Option<Vec<i64>>,
    pub necessary: Option<NecessaryConditions>,
}

#[derive(Clone, Debug)]
pub struct ScreenVerdict {
    pub status: ScreenStatus,
    pub witness: Option<Witness>,
    pub report: ScreenReport,
}

impl ScreenVerdict {
    pub fn to_json(&self) -> serde_json::Value {
        let witness = self.witness.as_ref().map(|w| {
            serde_json::json!({
                "edge": w.edge,
                "source": w.source,
                "G": w.g.to_text(),
                "H": w.h.to_text(),
                "g": w.lift.g.to_text(),
                "h": w.lift.h.to_text(),
                "truncation": w.lift.g.truncation(),
                "residual_zero": w.lift.residual.is_zero(),
                "e1": w.lift.e1,
                "e2": w.lift.e2,
            })
        });
        serde_json::json!({
            "schema": crate::series::json::SCHEMA,
            "status": self.status,
            "report": self.report,
            "witness": witness,
        })
    }
}

/// The loose edge a witness is built on: the one whose endpoints share the
/// largest common monomial (total degree), first in order on ties.
pub fn choose_edge(p: &Polyhedron) -> Option<EdgeDescriptor> {
    let mut best: Option<(i64, EdgeDescriptor)> = None;
    for e in p.loose_edges() {
        let deg = e.a.componentwise_min(&e.b).degree();
        if best.as_ref().is_none_or(|(d, _)| deg > *d) {
            best = Some((deg, e));
        }
    }
    best.map(|(_, e)| e)
}

/// `(F, k)` with `U = unit * F^k`, `F` irreducible; `F` is placed on the
/// segment starting at `deg(F) * c^-`, which makes it free of monomial
/// factors.
pub fn power_of_irreducible(gr: &Grading, u: &UnivariateModel) -> Result<Option<(UnivariateModel, usize)>> {
    Ok(univariate::power_of_irreducible(&u.poly)?.map(|(f, k)| {
        let base = negative_part(gr.direction(), f.degree().unwrap_or(0) as i64);
        (UnivariateModel { base, poly: f }, k)
    }))
}

/// `m * max(-c, 0)`.
fn negative_part(c: &[i64], m: i64) -> Exponent {
    Exponent(c.iter().map(|&x| m * (-x).max(0)).collect())
}

fn edge_restriction(f: &Series, e: &EdgeDescriptor) -> Series {
    f.restrict(e.lattice_points().iter()).as_polynomial()
}

fn conditions_for(p: &Polyhedron, f: &Series, e: &EdgeDescriptor) -> Result<NecessaryConditions> {
    let gr = Grading::for_edge(e)?;
    let fe = edge_restriction(f, e);
    let model = gr.univariate_model(&fe)?;
    let power = power_of_irreducible(&gr, &model)?;
    let binomial = power.as_ref().map(|(fm, k)| {
        let start = &model.base;
        let end = &model.base + &Exponent(gr.direction().iter().map(|c| c * model.poly.degree().unwrap_or(0) as i64).collect());
        let diff: Vec<i64> = (start - &end).0.iter().map(|x| x / *k as i64).collect();
        let g = diff.iter().fold(0i64, |acc, &x| num_integer::gcd(acc, x));
        let linear = fm.poly.degree() == Some(1);
        BinomialReport { holds: linear, k: *k, primitive: linear && g == 1, alpha_minus_beta: diff }
    });
    Ok(NecessaryConditions {
        unique_compact_edge: p.compact_edges().len() == 1,
        edge_poly_is_cfk: power.is_some(),
        binomial_power_form: binomial.as_ref().is_some_and(|b| b.holds && b.primitive),
        binomial_informational: true,
        edge_polynomial: fe.to_text(),
        irreducible_base: power.as_ref().map(|(fm, k)| (gr.from_model(fm).to_text(), *k)),
        binomial,
    })
}

/// Necessary-condition report for the loose edge [`choose_edge`] selects.
pub fn necessary_conditions(f: &Series) -> Result<NecessaryConditions> {
    let p = Polyhedron::new(f)?;
    let e = choose_edge(&p).ok_or(Error::NoLooseEdge)?;
    conditions_for(&p, f, &e)
}

/// Coprime split of `f|_E` from the factorization of its model, if the
/// model is not a unit times a power of one irreducible. Requires the edge
/// endpoints to have no common monomial.
fn factorization_split(gr: &Grading, fe: &Series) -> Result<Option<(Series, Series)>> {
    let model = gr.univariate_model(fe)?;
    let fact = univariate::factor(&model.poly)?;
    if fact.factors.len() < 2 {
        return Ok(None);
    }
    // The prime power of largest multiplicity (first on ties) goes to G.
    let pick = (0..fact.factors.len()).max_by_key(|&j| (fact.factors[j].1, std::cmp::Reverse(j))).expect("two factors");
    let mut a = UniPoly::one(model.poly.field());
    let mut b = UniPoly::constant(fact.unit.clone());
    for (j, (p, k)) in fact.factors.iter().enumerate() {
        if j == pick {
            a = a.mul(&p.pow(*k));
        } else {
            b = b.mul(&p.pow(*k));
        }
    }
    // f|_E starts at m c^-; splitting that base as deg(A) c^- + deg(B) c^-
    // keeps both factors free of monomials.
    let c = gr.direction();
    let to_series = |u: UniPoly| {
        let base = negative_part(c, u.degree().unwrap_or(0) as i64);
        gr.from_model(&UnivariateModel { base, poly: u })
    };
    let (g, h) = (to_series(a), to_series(b));
    if g.mul(&h) != *fe {
        return Err(Error::internal("edge factorization does not multiply back"));
    }
    Ok(Some((g, h)))
}

/// The split a witness uses on `edge`: `x^{-c} f|_E` and `x^c` when the
/// endpoints share a monomial `x^c`, otherwise two coprime parts of the
/// factored edge polynomial. `None` when `f|_E` is a unit times a power of
/// one irreducible.
pub fn edge_split(f: &Series, edge: &EdgeDescriptor) -> Result<Option<(Series, Series, SplitSource)>> {
    let cmin = edge.a.componentwise_min(&edge.b);
    let fe = edge_restriction(f, edge);
    if cmin.degree() > 0 {
        let g = fe.shift(&cmin.scale(-1)).expect("x^c divides f|_E");
        let h = Series::monomial(cmin, f.field().one());
        return Ok(Some((g, h, SplitSource::MonomialFactor)));
    }
    let gr = Grading::for_edge(edge)?;
    Ok(factorization_split(&gr, &fe)?.map(|(g, h)| (g, h, SplitSource::EdgeFactorization)))
}

/// Screens `f` along a loose edge and, when possible, certifies
/// reducibility by lifting a split of `f|_E` to truncation `d`.
pub fn reducibility_witness(f: &Series, d: u32) -> Result<ScreenVerdict> {
    let p = Polyhedron::new(f)?;
    let mut report = ScreenReport {
        vertex_count: p.vertices().len(),
        compact_edge_count: p.compact_edges().len(),
        loose_edge_count: p.loose_edges().len(),
        ..ScreenReport::default()
    };
    let Some(edge) = choose_edge(&p) else {
        return Ok(ScreenVerdict { status: ScreenStatus::PassesNecessaryConditions, witness: None, report });
    };
    report.chosen_edge = Some(edge.clone());
    report.common_monomial = Some(edge.a.componentwise_min(&edge.b).0);
    let split = edge_split(f, &edge)?.map(|(g, h, src)| (src, g, h));
    if split.is_none() {
        report.necessary = Some(conditions_for(&p, f, &edge)?);
    }
    let Some((source, g, h)) = split else {
        let nc = report.necessary.as_ref().expect("set above");
        let status = if nc.unique_compact_edge && nc.edge_poly_is_cfk {
            ScreenStatus::PassesNecessaryConditions
        } else {
            ScreenStatus::FailsNecessaryConditions
        };
        return Ok(ScreenVerdict { status, witness: None, report });
    };
    let req = LiftRequest { f: f.clone(), edge: edge.clone(), g: g.clone(), h: h.clone(), truncation: d, mode: LiftMode::General };
    let lift = lift_factorization(&req)?;
    // Independent check of the certificate.
    if !f.sub(&lift.g.mul(&lift.h)).truncate(d).is_zero() {
        return Err(Error::internal("witness lift has a nonzero residual"));
    }
    Ok(ScreenVerdict {
        status: ScreenStatus::ReducibleWithWitness,
        witness: Some(Witness { edge, source, g, h, lift }),
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::series::{parse_with, VarNames};

    fn q(s: &str, n: usize) -> Series {
        parse_with(s, Field::Rationals, &VarNames::indexed(n)).unwrap()
    }

    #[test]
    fn remark_witness() {
        let f = q("x3^3 + x1*x2*x3^2 + x1*x2*x3 + x1^2*x2^2", 3);
        let v = reducibility_witness(&f, 6).unwrap();
        assert_eq!(v.status, ScreenStatus::ReducibleWithWitness);
        assert_eq!(v.report.common_monomial, Some(vec![1, 1, 0]));
        let w = v.witness.unwrap();
        assert_eq!(w.g, q("x3 + x1*x2", 3));
        assert_eq!(w.h, q("x1*x2", 3));
    }

    #[test]
    fn cusp_passes() {
        let f = q("x2^2 - x1^3", 2);
        let v = reducibility_witness(&f, 6).unwrap();
        assert_eq!(v.status, ScreenStatus::PassesNecessaryConditions);
        let nc = v.report.necessary.unwrap();
        assert!(nc.unique_compact_edge && nc.edge_poly_is_cfk && nc.binomial_power_form);
        assert_eq!(nc.binomial.unwrap().alpha_minus_beta, vec![-3, 2]);
    }

    #[test]
    fn cubic_edge_splits() {
        let sq = q("x2^2 - 2*x1*x2 + x1^2", 2);
        let f = sq.mul(&q("x2 - 2*x1", 2)).add(&q("x1^5", 2));
        let v = reducibility_witness(&f, 7).unwrap();
        assert_eq!(v.status, ScreenStatus::ReducibleWithWitness);
        let w = v.witness.unwrap();
        assert_eq!(w.source, SplitSource::EdgeFactorization);
        assert_eq!(w.g, sq);
        assert_eq!(w.h, q("x2 - 2*x1", 2));
    }

    #[test]
    fn conditions() {
        let fig3 = q("x1^2*x2^2 + x1*x2*x3 + x2^2*x3^2 + x1^2*x3^2", 3);
        assert!(!necessary_conditions(&fig3).unwrap().unique_compact_edge);
        let sq = q("x2^2 - 2*x1*x2 + x1^2 + x1^3", 2);
        let nc = necessary_conditions(&sq).unwrap();
        assert!(nc.edge_poly_is_cfk);
        assert_eq!(nc.irreducible_base.as_ref().unwrap().1, 2);
        assert!(nc.binomial_power_form);
        assert_eq!(nc.binomial.unwrap().alpha_minus_beta, vec![-1, 1]);
    }

    #[test]
    fn model_powers() {
        let gr = Grading::from_direction(&[1, -1]).unwrap();
        let m = |c: &[i64]| UnivariateModel { base: Exponent(vec![0, 2]), poly: UniPoly::from_ints(Field::Rationals, c) };
        let (f, k) = power_of_irreducible(&gr, &m(&[1, -2, 1])).unwrap().unwrap();
        assert_eq!((f.poly, k), (UniPoly::from_ints(Field::Rationals, &[1, -1]), 2));
        assert!(power_of_irreducible(&gr, &m(&[1, 0, -1])).unwrap().is_none());
        let f2 = Field::prime(2).unwrap();
        let u = UnivariateModel { base: Exponent(vec![0, 1]), poly: UniPoly::from_ints(f2, &[1, 1]) };
        assert_eq!(power_of_irreducible(&gr, &u).unwrap().unwrap().1, 1);
    }
}
