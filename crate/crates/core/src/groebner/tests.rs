use std::sync::Arc;

use super::*;
use crate::coeffs::{Integers, PiRing, PrimeField, Rationals};
use crate::poly::{grid_blocks, parse_poly, VarUniverse};

fn q_polys(u: &Arc<VarUniverse>, s: &[&str]) -> Vec<MPoly<Rationals>> {
    s.iter().map(|x| parse_poly(&Rationals, u, x).unwrap()).collect()
}

fn pi_ring() -> PiRing<PrimeField> {
    PiRing::new(PrimeField::new(32003).unwrap())
}

#[test]
fn one_step_field() {
    let u = VarUniverse::new(["x", "y"]).unwrap();
    let o = TermOrder::lex(&u);
    let e = q_polys(&u, &["x"]);
    let (h, step) = reduce_one_step(&q_polys(&u, &["x^2"])[0], &e, &o).unwrap().unwrap();
    assert!(h.is_zero());
    assert_eq!(step.quotients[0].exps(), &[1, 0]);
}

#[test]
fn one_step_blocked_by_valuation() {
    let r = pi_ring();
    let u = VarUniverse::new(["x"]).unwrap();
    let f = parse_poly(&r, &u, "pi*x").unwrap();
    let e = vec![parse_poly(&r, &u, "pi^2*x").unwrap()];
    assert!(reduce_one_step(&f, &e, &TermOrder::lex(&u)).unwrap().is_none());
}

#[test]
fn one_step_with_bezout_combination() {
    let u = VarUniverse::new(["x"]).unwrap();
    let z = Integers;
    let f = parse_poly(&z, &u, "2*x").unwrap();
    let e = vec![parse_poly(&z, &u, "3*x").unwrap(), parse_poly(&z, &u, "5*x").unwrap()];
    let (h, step) = reduce_one_step(&f, &e, &TermOrder::lex(&u)).unwrap().unwrap();
    assert!(h.is_zero());
    assert_eq!(step.reducers, vec![0, 1]);
    // 2 = c0*3 + c1*5
    let c = &step.coeffs;
    assert_eq!(&c[0] * 3 + &c[1] * 5, 2.into());
}

#[test]
fn normal_form_examples() {
    let u = VarUniverse::new(["x", "y"]).unwrap();
    let o = TermOrder::lex(&u);
    let (h, _) = normal_form(&q_polys(&u, &["x^2 + y"])[0], &q_polys(&u, &["x"]), &o).unwrap();
    assert_eq!(h.to_string(), "y");
    let f = q_polys(&u, &["x^2 + y"])[0].clone();
    assert_eq!(normal_form(&f, &[], &o).unwrap().0, f);

    let r = pi_ring();
    let f = parse_poly(&r, &u, "pi*x + y").unwrap();
    let g = vec![parse_poly(&r, &u, "x + y").unwrap()];
    let (h, trace) = normal_form(&f, &g, &o).unwrap();
    assert_eq!(h, parse_poly(&r, &u, "y - pi*y").unwrap());
    assert_eq!(trace.replay(&f, &g).unwrap(), h);
}

#[test]
fn buchberger_examples() {
    let u = VarUniverse::new(["x", "y"]).unwrap();
    let o = TermOrder::lex(&u);
    let gb = buchberger(&q_polys(&u, &["x", "y"]), &o, RingMode::Field).unwrap();
    assert_eq!(gb.elements().len(), 2);

    let gb = buchberger(&q_polys(&u, &["x + y", "x"]), &o, RingMode::Field).unwrap();
    assert!(gb.elements().contains(&q_polys(&u, &["y"])[0]));

    let z = Integers;
    let gens = vec![parse_poly(&z, &u, "2*x").unwrap(), parse_poly(&z, &u, "3*x").unwrap()];
    let gb = buchberger(&gens, &o, RingMode::EuclideanRing).unwrap();
    assert_eq!(gb.elements(), &[parse_poly(&z, &u, "x").unwrap()]);

    assert!(matches!(buchberger(&gens, &o, RingMode::Field), Err(Error::NotAField)));
}

#[test]
fn groebner_check_examples() {
    let u = VarUniverse::new(["x", "y"]).unwrap();
    let o = TermOrder::lex(&u);
    assert!(is_groebner(&q_polys(&u, &["x", "y"]), &o, RingMode::Field).unwrap().is_groebner);
    let c = is_groebner(&q_polys(&u, &["x + y", "x"]), &o, RingMode::Field).unwrap();
    assert!(!c.is_groebner);
    assert_eq!(c.witness.unwrap().remainder.to_string(), "y");
    let r = pi_ring();
    let single = vec![parse_poly(&r, &u, "pi*x + y^2").unwrap()];
    assert!(is_groebner(&single, &o, RingMode::EuclideanRing).unwrap().is_groebner);
}

#[test]
fn membership_examples() {
    let u = VarUniverse::new(["x", "y"]).unwrap();
    let o = TermOrder::lex(&u);
    let i = Ideal::new(&Rationals, &u, q_polys(&u, &["x"])).unwrap();
    assert!(ideal_membership(&q_polys(&u, &["x^2"])[0], &i, &o).unwrap());
    assert!(!ideal_membership(&q_polys(&u, &["y"])[0], &i, &o).unwrap());
    let j = Ideal::new(&Rationals, &u, q_polys(&u, &["x + y", "x"])).unwrap();
    assert!(ideal_membership(&q_polys(&u, &["y"])[0], &j, &o).unwrap());
}

#[test]
fn saturation_examples() {
    let k = PrimeField::new(32003).unwrap();
    let u = VarUniverse::new(["x", "y", "pi"]).unwrap();
    let p = |s: &str| parse_poly(&k, &u, s).unwrap();
    let pi = p("pi");
    let sat = |gens: &[&str]| {
        let i = Ideal::new(&k, &u, gens.iter().map(|s| p(s)).collect()).unwrap();
        let s = saturate(&i, std::slice::from_ref(&pi)).unwrap();
        s.groebner_basis(&TermOrder::degrevlex(&u)).unwrap()
    };
    assert_eq!(sat(&["pi*x"]), vec![p("x")]);
    assert_eq!(sat(&["x"]), vec![p("x")]);
    let mut s = sat(&["x + pi*y", "pi*x"]);
    s.sort_by_key(|g| g.to_string());
    assert_eq!(s, vec![p("x"), p("y")]);
}

#[test]
fn weighted_saturation_agrees_with_rabinowitsch() {
    let k = PrimeField::new(32003).unwrap();
    let u = VarUniverse::new(["x", "y", "pi"]).unwrap();
    let p = |s: &str| parse_poly(&k, &u, s).unwrap();
    // homogeneous for weights (2, 1, 1)
    let gens = vec![p("x*pi - y^2*pi"), p("x*y - pi*y^2"), p("pi^2*x - x^2")];
    assert!(gens.iter().all(|g| is_weighted_homogeneous(g, &[2, 1, 1])));
    let fast = saturate_by_variable(&gens, &u, 2, &[2, 1, 1]).unwrap();
    let i = Ideal::new(&k, &u, gens.clone()).unwrap();
    let slow = saturate(&i, &[p("pi")]).unwrap();
    let o = fast.order().clone();
    let a = Ideal::new(&k, &u, fast.elements().to_vec()).unwrap().groebner_basis(&o).unwrap();
    let b = Ideal::new(&k, &u, slow.generators().to_vec()).unwrap().groebner_basis(&o).unwrap();
    assert_eq!(a, b);
    assert!(matches!(
        saturate_by_variable(&[p("x + y")], &u, 2, &[2, 1, 1]),
        Err(Error::NotHomogeneous)
    ));
}

#[test]
fn elimination_examples() {
    let u = VarUniverse::new(["x", "y"]).unwrap();
    let o = TermOrder::lex(&u);
    let i = Ideal::new(&Rationals, &u, q_polys(&u, &["x - y^2"])).unwrap();
    assert!(eliminate(&i, &[0], &o).unwrap().is_zero());
    let i = Ideal::new(&Rationals, &u, q_polys(&u, &["x - y", "x"])).unwrap();
    assert_eq!(eliminate(&i, &[0], &o).unwrap().generators(), &q_polys(&u, &["y"])[..]);
    let bad = TermOrder::lex_by_names(&u, &["y", "x"]).unwrap();
    assert!(matches!(eliminate(&i, &[0], &bad), Err(Error::NotEliminationOrder)));

    let r = pi_ring();
    let uy = VarUniverse::new(["y"]).unwrap();
    let i = Ideal::new(&r, &uy, vec![parse_poly(&r, &uy, "1 - pi*y").unwrap()]).unwrap();
    assert!(eliminate(&i, &[0], &TermOrder::lex(&uy)).unwrap().is_zero());
}

#[test]
fn radical_examples() {
    let u = VarUniverse::new(["x", "y"]).unwrap();
    let k = PrimeField::new(32003).unwrap();
    let p = |s: &str| parse_poly(&k, &u, s).unwrap();
    let i = Ideal::new(&k, &u, vec![p("x^2")]).unwrap();
    assert!(radical_membership(&p("x"), &i).unwrap());
    let i = Ideal::new(&k, &u, vec![p("x")]).unwrap();
    assert!(!radical_membership(&p("y"), &i).unwrap());
    let i = Ideal::new(&k, &u, vec![p("x^2"), p("y^2")]).unwrap();
    assert!(radical_membership(&p("x + y"), &i).unwrap());
    let z = Integers;
    let i = Ideal::new(&z, &u, vec![parse_poly(&z, &u, "x").unwrap()]).unwrap();
    assert!(matches!(radical_membership(&parse_poly(&z, &u, "x").unwrap(), &i), Err(Error::NotAField)));
}

#[test]
fn monomial_intersections() {
    let u = VarUniverse::grid(2, 1, &[]).unwrap();
    let q = Rationals;
    let id = |s: &[&str]| Ideal::new(&q, &u, q_polys(&u, s)).unwrap();
    let r = intersect_monomial_ideals(&[id(&["x[1][0]"]), id(&["x[2][0]"])]).unwrap();
    assert_eq!(r.to_strings(), vec!["x[1][0]*x[2][0]"]);
    let r = intersect_monomial_ideals(&[id(&["x[1][0]", "x[2][0]"]), id(&["x[1][0]"])]).unwrap();
    assert_eq!(r.to_strings(), vec!["x[1][0]"]);
    let r = intersect_monomial_ideals(&[
        id(&["x[1][0]", "x[2][0]"]),
        id(&["x[1][0]", "x[1][1]"]),
        id(&["x[1][1]", "x[2][1]"]),
    ])
    .unwrap();
    let mut got = r.to_strings();
    got.sort();
    let mut want = vec!["x[1][0]*x[1][1]", "x[1][0]*x[2][1]", "x[2][0]*x[1][1]"];
    want.sort();
    assert_eq!(got, want);
    assert!(matches!(
        intersect_monomial_ideals(&[id(&["x[1][0] + x[2][0]"])]),
        Err(Error::NotMonomial(_))
    ));
}

#[test]
fn hilbert_examples() {
    let u = VarUniverse::new(["x", "y"]).unwrap();
    let q = Rationals;
    let blocks = vec![vec![0, 1]];
    let i = Ideal::new(&q, &u, q_polys(&u, &["x"])).unwrap();
    let h = hilbert_function(&i, &blocks, &[3]).unwrap();
    assert_eq!(h.values().copied().collect::<Vec<_>>(), vec![1, 1, 1, 1]);
    let z = Ideal::zero(&q, &u);
    let h = hilbert_function(&z, &blocks, &[3]).unwrap();
    assert_eq!(h.values().copied().collect::<Vec<_>>(), vec![1, 2, 3, 4]);

    let g = VarUniverse::grid(2, 1, &[]).unwrap();
    let i = Ideal::new(&q, &g, q_polys(&g, &["x[1][0]*x[1][1]"])).unwrap();
    let h = hilbert_function(&i, &grid_blocks(2, 1), &[1, 1]).unwrap();
    assert_eq!(h[&vec![1, 1]], 3);

    let bad = Ideal::new(&q, &u, q_polys(&u, &["x + 1"])).unwrap();
    assert!(matches!(hilbert_function(&bad, &blocks, &[2]), Err(Error::NotHomogeneous)));
}

#[test]
fn dimension_of_monomial_ideals() {
    let m = |e: &[u32]| Monomial::from_exps(e.to_vec());
    assert_eq!(krull_dimension(&[m(&[1, 1, 0])], 3), Some(2));
    assert_eq!(krull_dimension(&[m(&[1, 0, 0]), m(&[0, 1, 0])], 3), Some(1));
    assert_eq!(krull_dimension(&[], 3), Some(3));
    assert_eq!(krull_dimension(&[m(&[0, 0, 0])], 3), None);
}

#[test]
fn ring_and_field_modes_agree_over_fp() {
    let k = PrimeField::new(101).unwrap();
    let u = VarUniverse::new(["x", "y", "z"]).unwrap();
    let gens: Vec<_> = ["x^2*y - z + 3", "x*y^2 - x*z", "y*z + 5*x"]
        .iter()
        .map(|s| parse_poly(&k, &u, s).unwrap())
        .collect();
    let o = TermOrder::degrevlex(&u);
    let a = buchberger(&gens, &o, RingMode::Field).unwrap();
    let b = buchberger(&gens, &o, RingMode::EuclideanRing).unwrap();
    let la = minimalize_monomials(a.leading_monomials());
    let lb = minimalize_monomials(b.leading_monomials());
    assert_eq!(la, lb);
}

#[test]
fn trace_log_lines() {
    let u = VarUniverse::new(["x", "y"]).unwrap();
    let o = TermOrder::lex(&u);
    let (gb, lines) = budget::capture_trace(|| buchberger(&q_polys(&u, &["x^2 + y", "x*y - 1"]), &o, RingMode::Field));
    assert!(gb.is_ok());
    assert!(!lines.is_empty());
    assert!(lines[0].starts_with("pair ("));
}

#[test]
fn time_cap_is_reported() {
    let u = VarUniverse::new(["x", "y", "z"]).unwrap();
    let gens = q_polys(&u, &["x^3 - y*z", "y^3 - x*z", "z^3 - x*y + 1"]);
    let b = budget::Budget { time: Some(std::time::Duration::ZERO), max_terms: None };
    let r = budget::with_budget(b, || buchberger(&gens, &TermOrder::lex(&u), RingMode::Field));
    assert!(matches!(r, Err(Error::ResourceCapped(_))));
}

#[test]
fn bounded_membership_examples() {
    use super::oracle::bounded_membership;
    let f = crate::coeffs::PrimeField::new(101).unwrap();
    let u = crate::poly::VarUniverse::new(["x", "y", "z"]).unwrap();
    let p = |s: &str| crate::poly::parse_poly(&f, &u, s).unwrap();
    let gens = [p("x*y - z^2"), p("x^2 - y*z")];
    assert!(bounded_membership(&p("x^2*y - x*z^2"), &gens, 3).unwrap());
    assert!(!bounded_membership(&p("x*y"), &gens, 2).unwrap());
    assert!(!bounded_membership(&p("x - 1"), &[p("x^2 - 1")], 2).unwrap());
    assert!(bounded_membership(&p("x^3 - x"), &[p("x^2 - 1")], 3).unwrap());
}
