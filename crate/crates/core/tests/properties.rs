use npf::acceptance::gen;
use npf::field::Field;
use npf::geometry::Polyhedron;
use npf::grading::{add_weights, sub_weights, Grading};
use npf::lifting::{lift, LiftMode, LiftRequest};
use npf::series::{parse_with, SeriesFile, VarNames};
use npf::univariate::{power_of_irreducible, UniPoly};
use npf::{Exponent, Series};
use proptest::prelude::*;

fn field_strategy() -> impl Strategy<Value = Field> {
    prop_oneof![Just(Field::Rationals), Just(Field::Prime(7)), Just(Field::Prime(101))]
}

fn series_strategy(n: usize) -> impl Strategy<Value = Series> {
    (field_strategy(), prop::collection::vec((prop::collection::vec(0i64..4, n), -5i64..=5), 0..6)).prop_map(
        move |(field, terms)| {
            let mut s = Series::zero(n, field);
            for (e, c) in terms {
                s.add_term(Exponent(e), field.from_i64(c));
            }
            s
        },
    )
}

fn same_field(a: &Series, b: &Series) -> Series {
    let mut out = Series::zero(b.n(), a.field());
    for (e, c) in b.terms() {
        let v: i64 = c.to_string().parse().unwrap_or(1);
        out.add_term(e.clone(), a.field().from_i64(v));
    }
    out
}

fn direction_strategy(n: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-3i64..=3, n).prop_filter("primitive, mixed signs", |c| {
        c.iter().any(|&x| x > 0) && c.iter().any(|&x| x < 0) && npf::geometry::is_primitive(c)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_laws(a in series_strategy(3), b0 in series_strategy(3), c0 in series_strategy(3)) {
        let (b, c) = (same_field(&a, &b0), same_field(&a, &c0));
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert!(a.sub(&a).is_zero());
        prop_assert_eq!(a.mul(&Series::one(3, a.field())), a.clone());
    }

    #[test]
    fn truncated_product(a in series_strategy(2), b0 in series_strategy(2), d in 0u32..8) {
        let b = same_field(&a, &b0);
        let direct = a.multiply(&b, Some(d)).unwrap();
        prop_assert_eq!(direct, a.mul(&b).truncate(d));
        prop_assert_eq!(a.truncate(d).multiply(&b.truncate(d), Some(d)).unwrap(), a.mul(&b).truncate(d));
    }

    #[test]
    fn text_round_trip(s in series_strategy(3)) {
        let names = VarNames::indexed(3);
        let text = npf::series::format_series(&s, &names);
        prop_assert_eq!(parse_with(&text, s.field(), &names).unwrap(), s.clone());
        let file = SeriesFile::new(s.clone(), Some(names));
        prop_assert_eq!(SeriesFile::parse(&file.to_text()).unwrap().series, s.clone());
        let json = npf::series::json::to_json_string(&file);
        prop_assert_eq!(SeriesFile::parse(&json).unwrap().series, s);
    }

    #[test]
    fn weights_are_additive(c in direction_strategy(3), a in prop::collection::vec(0i64..5, 3), b in prop::collection::vec(0i64..5, 3)) {
        let gr = Grading::from_direction(&c).unwrap();
        let (a, b) = (Exponent(a), Exponent(b));
        prop_assert_eq!(gr.weight(&(&a + &b)), add_weights(&gr.weight(&a), &gr.weight(&b)));
        // Moving along the edge direction keeps the weight.
        let base = &a + &gen::negative_part(&c, 1);
        prop_assert_eq!(gr.weight(&(&base + &Exponent(c.clone()))), gr.weight(&base));
    }

    #[test]
    fn monoid_is_closed(c in direction_strategy(3), seed in any::<u64>()) {
        let gr = Grading::from_direction(&c).unwrap();
        let mut rng = gen::rng(seed);
        let u = gen::random_monoid_element(&mut rng, &gr, 3);
        let v = gen::random_monoid_element(&mut rng, &gr, 3);
        prop_assert!(gr.in_monoid(&add_weights(&u, &v)));
        prop_assert!(gr.in_monoid(&[0; 3]));
        // Every nonempty piece has its weight in the monoid.
        let w = gen::random_weight(&mut rng, &gr, 3);
        prop_assert!(gr.in_monoid(&w));
        for p in gr.graded_piece(&w).points {
            prop_assert_eq!(gr.weight(&p), w.clone());
        }
        prop_assert_eq!(sub_weights(&add_weights(&u, &v), &v), u);
    }

    #[test]
    fn lift_invariants(seed in any::<u64>(), monic in any::<bool>(), n in 2usize..=3, prime in any::<bool>()) {
        let field = if prime { Field::Prime(101) } else { Field::Rationals };
        let mut rng = gen::rng(seed);
        let inst = gen::split_instance(&mut rng, n, field, monic);
        let d = inst.edge.0.degree().max(inst.edge.1.degree()).max(4) as u32;
        let mode = if monic { LiftMode::Monic } else { LiftMode::General };
        let req = LiftRequest::new(inst.f.clone(), &inst.edge.0, &inst.edge.1, inst.g.clone(), inst.h.clone(), d, mode).unwrap();
        let res = lift(&req).unwrap();
        prop_assert!(inst.f.sub(&res.g.mul(&res.h)).truncate(d).is_zero());
        let e1 = res.g.restrict_to_segment(&res.e1.start, &res.e1.end);
        let e2 = res.h.restrict_to_segment(&res.e2.start, &res.e2.end);
        prop_assert_eq!(e1.as_polynomial(), res.split_g.as_polynomial());
        prop_assert_eq!(e2.as_polynomial(), res.split_h.as_polynomial());
        prop_assert_eq!(&res.e1.start + &res.e2.start, inst.edge.0.clone());
        prop_assert_eq!(&res.e1.end + &res.e2.end, inst.edge.1.clone());
        prop_assert!(Polyhedron::new(&inst.f).unwrap().edge(&inst.edge.0, &inst.edge.1).unwrap().loose);
    }
}

/// All monic polynomials of degree `d` over `F_p`.
fn monics(p: u64, d: usize) -> Vec<UniPoly> {
    let field = Field::Prime(p);
    let mut out = Vec::new();
    for mut code in 0..p.pow(d as u32) {
        let mut cs = Vec::with_capacity(d + 1);
        for _ in 0..d {
            cs.push(field.from_i64((code % p) as i64));
            code /= p;
        }
        cs.push(field.one());
        out.push(UniPoly::new(field, cs));
    }
    out
}

fn brute_irreducible(p: u64, f: &UniPoly) -> bool {
    let d = f.degree().unwrap();
    (1..=d / 2).all(|k| monics(p, k).iter().all(|q| !f.rem(q).is_zero()))
}

fn brute_power(p: u64, u: &UniPoly) -> Option<(UniPoly, usize)> {
    let deg = u.degree()?;
    let lc = u.leading();
    for k in (1..=deg).rev().filter(|k| deg % k == 0) {
        for f in monics(p, deg / k) {
            if f.pow(k).scale(&lc) == *u && brute_irreducible(p, &f) {
                return Some((f, k));
            }
        }
    }
    None
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn power_of_irreducible_matches_brute_force(cs in prop::collection::vec(0i64..7, 2..=4), lead in 1i64..7) {
        // Degrees stay below the characteristic.
        let field = Field::Prime(7);
        let mut cs: Vec<_> = cs.into_iter().map(|c| field.from_i64(c)).collect();
        cs.push(field.from_i64(lead));
        let u = UniPoly::new(field, cs);
        let got = power_of_irreducible(&u).unwrap().map(|(f, k)| (f.monic(), k));
        prop_assert_eq!(got, brute_power(7, &u));
    }
}
