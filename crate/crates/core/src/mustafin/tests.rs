use super::*;
use crate::coeffs::{PrimeField, Rationals, DEFAULT_PRIME};
use crate::poly::parse_poly;

fn fp() -> PrimeField {
    PrimeField::new(DEFAULT_PRIME).unwrap()
}

#[test]
fn g_matrices() {
    let c = LatticeConfig::identity(&fp(), 3, 0, vec![1, 2]).unwrap();
    let g = build_g(&c);
    let got: Vec<String> = g[0].iter().flat_map(|r| r.iter().map(|e| e.to_string())).collect();
    assert_eq!(got, ["1", "0", "0", "0", "pi", "0", "0", "0", "pi^2"]);
    let s = LatticeConfig::symbolic(&fp(), 2, 0, vec![1]).unwrap();
    assert_eq!(build_g(&s)[0][1][1].to_string(), "pi*A[2][2][0]");
}

#[test]
fn minor_counts_and_example() {
    let c = LatticeConfig::identity(&fp(), 2, 1, vec![1]).unwrap();
    assert_eq!(minors_ideal(&c).unwrap().generators().len(), 1);
    let c = LatticeConfig::identity(&fp(), 4, 3, vec![1, 3, 7]).unwrap();
    assert_eq!(minors_ideal(&c).unwrap().generators().len(), 36);
    let c = LatticeConfig::identity(&fp(), 3, 2, vec![1, 2]).unwrap();
    let forms = column_forms(&c);
    let want = parse_poly(&fp(), &c.universe(), "x[1][0]*pi*x[2][1] - pi*x[2][0]*x[1][1]").unwrap();
    assert_eq!(minor(&forms, (0, 1), (1, 2)), want);
}

#[test]
fn rejects_bad_configs() {
    assert!(LatticeConfig::identity(&fp(), 3, 1, vec![2, 1]).is_err());
    assert!(LatticeConfig::identity(&fp(), 3, 1, vec![1]).is_err());
    let k = fp();
    let zero = crate::coeffs::Ring::zero(&crate::coeffs::PiRing::new(k.clone()));
    let m = vec![vec![zero.clone(); 2]; 2];
    assert!(matches!(
        LatticeConfig::new(&k, 2, 0, vec![1], Entries::Concrete(vec![m])),
        Err(crate::Error::Singular(_))
    ));
}

#[test]
fn trivial_fibres() {
    let c = LatticeConfig::random(&fp(), 3, 0, vec![1, 2], 1).unwrap();
    assert!(mustafin_ideal(&c).unwrap().is_zero());
    assert!(special_fibre(&c).unwrap().is_zero());
    assert!(conjecture_check(&c, CheckMode::BothContainments).unwrap().equal);
}

#[test]
fn d2_fibre_is_two_components() {
    let c = LatticeConfig::random(&fp(), 2, 1, vec![1], 5).unwrap();
    let f = special_fibre(&c).unwrap();
    assert_eq!(f.to_strings(), vec!["x[1][0]*x[1][1]"]);
}

#[test]
fn d3_conjecture_instances() {
    for seed in 0..3 {
        let c = LatticeConfig::random(&fp(), 3, 2, vec![1, 2], seed).unwrap();
        let r = conjecture_check(&c, CheckMode::BothContainments).unwrap();
        assert!(r.equal, "{r:?}");
        let f = special_fibre(&c).unwrap();
        assert!(hilbert_cross_check(&c, &f, 2).unwrap().agree);
    }
}

#[test]
fn vectors() {
    let v = |d, n| component_vectors(d, n).into_iter().map(|v| v.0).collect::<Vec<_>>();
    assert_eq!(v(3, 1), vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
    assert_eq!(v(3, 2).len(), 6);
    assert!(v(3, 2).contains(&vec![1, 1, 2]));
    assert_eq!(v(5, 0), vec![vec![0]]);
}

#[test]
fn iv_and_flags() {
    let q = Rationals;
    let cv = |v: Vec<usize>| ComponentVector::new(3, v).unwrap();
    assert_eq!(ideal_iv(&q, &cv(vec![1, 1]), 3).to_strings(), vec!["x[1][0]", "x[1][1]"]);
    assert_eq!(ideal_iv(&q, &cv(vec![2, 0]), 3).to_strings(), vec!["x[1][0]", "x[2][0]"]);
    assert!(ideal_iv(&q, &ComponentVector(vec![0, 0]), 3).is_zero());
    // flags only look at the entries, not the sum
    let v = ComponentVector(vec![1, 2, 2]);
    assert_eq!(component_length(&v, 3), (vec![0], 1));
    assert!(!primary_flag(&v) && star_flag(&v, 3));
    assert!(primary_flag(&cv(vec![0, 2, 2])));
    assert_eq!(component_length(&cv(vec![1, 1, 2]), 3).1, 2);
}

#[test]
fn d4_explicit_fibre() {
    let q = Rationals;
    let e = expected_fibre_d4(&q, 3).unwrap();
    assert_eq!(e.generators().len(), 61);
    assert!(e.to_strings().contains(&"x[3][0]*x[3][1]*x[3][2]*x[3][3]".to_string()));
    let min = crate::groebner::minimalize_monomials(crate::groebner::monomials_of(&e).unwrap());
    let j = intersection_of_components(&q, 4, 3).unwrap();
    assert_eq!(min, crate::groebner::monomials_of(&j).unwrap());
    assert!(borel_fixed_check(&e, 4, 3).unwrap());
    assert!(expected_fibre_d4(&q, 2).is_err());
}

#[test]
fn borel_examples() {
    let q = Rationals;
    let u = crate::poly::VarUniverse::grid(3, 1, &[]).unwrap();
    let i = |s: &str| crate::poly::Ideal::new(&q, &u, vec![parse_poly(&q, &u, s).unwrap()]).unwrap();
    assert!(!borel_fixed_check(&i("x[2][0]"), 3, 1).unwrap());
    assert!(borel_fixed_check(&i("x[1][0]"), 3, 1).unwrap());
    for n in 1..=3 {
        let j = intersection_of_components(&q, 3, n).unwrap();
        assert!(borel_fixed_check(&j, 3, n).unwrap());
    }
}

#[test]
fn pipeline_generic_and_degenerate() {
    let c = LatticeConfig::random(&fp(), 4, 3, vec![1, 3, 7], 11).unwrap();
    let r = minor_pipeline_d4(&c).unwrap();
    assert!(r.passed, "{:?}", r.stages.iter().map(|s| (&s.stage, s.failures.iter().take(3).collect::<Vec<_>>())).collect::<Vec<_>>());
    let id = LatticeConfig::identity(&fp(), 4, 3, vec![1, 3, 7]).unwrap();
    let r = minor_pipeline_d4(&id).unwrap();
    assert!(!r.passed);
    assert_eq!(r.failed_stage.as_deref(), Some("m1"));
    let bad = LatticeConfig::random(&fp(), 4, 3, vec![1, 2, 7], 1).unwrap();
    assert!(minor_pipeline_d4(&bad).is_err());
}
