use super::*;
use crate::coeffs::{PrimeField, DEFAULT_PRIME};

fn fp() -> PrimeField {
    PrimeField::new(DEFAULT_PRIME).unwrap()
}

fn grid(c: &LatticeConfig<PrimeField>, s: &str) -> MPoly<PrimeField> {
    parse_poly(&fp(), &c.universe(), s).unwrap()
}

fn ys(d: usize, s: &str) -> MPoly<PrimeField> {
    parse_poly(&fp(), &y_universe(d), s).unwrap()
}

#[test]
fn upsilon_on_the_identity() {
    let c = LatticeConfig::identity(&fp(), 2, 1, vec![1]).unwrap();
    let a = upsilon(&grid(&c, "x[1][1]"), 0, &c).unwrap();
    assert_eq!((a.pi_exponent, a.numerator.clone()), (0, ys(2, "y1")));
    let b = upsilon(&grid(&c, "x[2][1]"), 0, &c).unwrap();
    assert_eq!((b.pi_exponent, b.numerator.clone()), (-1, ys(2, "y2")));
    assert_eq!(b.to_string(), "pi^-1 * (y2)");
    assert!(matches!(upsilon(&grid(&c, "x[1][0]"), 0, &c), Err(Error::DegreeProfile(_))));
    assert!(matches!(upsilon(&grid(&c, "x[1][1] + x[1][1]^2"), 0, &c), Err(Error::DegreeProfile(_))));
}

#[test]
fn upsilon_degree_is_the_block_degree_sum() {
    let c = LatticeConfig::random(&fp(), 3, 2, vec![1, 2], 4).unwrap();
    let f = grid(&c, "x[1][1]*x[3][2]^2 + pi*x[2][1]*x[1][2]*x[3][2]");
    let g = upsilon(&f, 0, &c).unwrap();
    assert_eq!(g.degree(), Some(3));
    assert!(g.unit.is_constant());
}

#[test]
fn sigma_examples() {
    let c = LatticeConfig::identity(&fp(), 2, 1, vec![1]).unwrap();
    assert!(!sigma_membership(&grid(&c, "x[1][1]"), 0, 2, 1));
    assert!(sigma_membership(&grid(&c, "x[2][1]"), 0, 2, 1));
    assert!(sigma_membership(&grid(&c, "pi*x[2][1]"), 0, 2, 1));
    assert!(!sigma_membership(&grid(&c, "x[1][1] + pi*x[2][1]"), 0, 2, 1));
    assert!(sigma_membership(&grid(&c, "pi*x[1][1] + pi*x[2][1]"), 0, 2, 1));
    assert!(!sigma_membership(&MPoly::zero(&fp(), &c.universe()), 0, 2, 1));
}

fn datum(c: &LatticeConfig<PrimeField>, rho: u32, degrees: &[u32], w: &[&str]) -> SyzygyDatum<PrimeField> {
    SyzygyDatum { rho, degrees: degrees.to_vec(), witnesses: w.iter().map(|s| grid(c, s)).collect() }
}

#[test]
fn admissibility_examples() {
    let c = LatticeConfig::random(&fp(), 3, 2, vec![1, 2], 8).unwrap();
    let good = datum(&c, 2, &[2, 1, 1], &["x[3][1]*x[3][2]", "x[3][2]", "x[3][1]"]);
    let r = admissibility_certificate(&good, &c).unwrap();
    assert!(r.admissible);
    let degs: Vec<_> = r.forms.iter().map(|f| f.degree()).collect();
    assert_eq!(degs, [Some(2), Some(1), Some(1)]);

    let mixed = datum(&c, 2, &[2, 1, 1], &["x[3][1]*x[3][2] + x[1][1]*x[2][2]", "x[3][2] + x[1][2]", "x[3][1] + pi*x[1][1]"]);
    let r = admissibility_certificate(&mixed, &c).unwrap();
    assert_eq!(r.memberships, [true, true, true]);

    let bad = datum(&c, 2, &[2, 1, 1], &["x[3][1]*x[3][2]", "pi*x[1][2]", "x[3][1]"]);
    let r = admissibility_certificate(&bad, &c).unwrap();
    assert!(!r.admissible);
    assert_eq!(r.memberships, [true, false, true]);

    let sum = datum(&c, 2, &[2, 2, 1], &["x[3][2]", "x[3][2]", "x[3][1]"]);
    assert!(matches!(admissibility_certificate(&sum, &c), Err(Error::DegreeProfile(_))));
    let profile = datum(&c, 2, &[2, 1, 1], &["x[3][1]", "x[3][2]", "x[3][1]"]);
    assert!(matches!(admissibility_certificate(&profile, &c), Err(Error::DegreeProfile(_))));
}

#[test]
fn datum_round_trips_through_strings() {
    let c = LatticeConfig::random(&fp(), 3, 2, vec![1, 2], 8).unwrap();
    let d = datum(&c, 2, &[2, 1, 1], &["x[3][1]*x[3][2]", "x[3][2]", "pi*x[3][1]"]);
    assert_eq!(SyzygyDatum::parse(&c, &d.to_strings()).unwrap(), d);
}

#[test]
fn cover_examples() {
    let x = SubvarietyInput::parse(&fp(), 2, &["y1".into()], 0, 1).unwrap();
    assert!(curve_cover_check(&x, &[ys(2, "y2")]).unwrap());
    assert!(!curve_cover_check(&x, &[ys(2, "y1")]).unwrap());
    assert!(curve_cover_check(&x, &[ys(2, "pi*y1 + y2")]).unwrap());
    let l = SubvarietyInput::parse(&fp(), 2, &["y1 - y2".into()], 0, 1).unwrap();
    assert!(curve_cover_check(&l, &[ys(2, "y1 + y2")]).unwrap());
    assert!(!curve_cover_check(&l, &[ys(2, "y1 - y2"), ys(2, "pi*y1 - pi*y2")]).unwrap());

    let line = SubvarietyInput::parse(&fp(), 3, &["y3".into()], 1, 1).unwrap();
    assert!(!curve_cover_check(&line, &[ys(3, "y1"), ys(3, "y1*y2")]).unwrap());
    assert!(curve_cover_check(&line, &[ys(3, "y1"), ys(3, "y2^2")]).unwrap());
}

/// Prime of the primary component attached to block `l` of a line's fibre.
fn primary_prime(c: &LatticeConfig<PrimeField>, l: usize) -> Vec<MPoly<PrimeField>> {
    let u = c.fibre_universe();
    let mut gens = vec![MPoly::var_named(&fp(), &u, &grid_name(1, l)).unwrap()];
    for j in (0..=c.n).filter(|&j| j != l) {
        gens.push(MPoly::var_named(&fp(), &u, &grid_name(1, j)).unwrap());
        gens.push(MPoly::var_named(&fp(), &u, &grid_name(2, j)).unwrap());
    }
    gens
}

#[test]
fn sigma_matches_nonvanishing_on_primary_components() {
    use crate::groebner::Reducer;
    let c = LatticeConfig::random(&fp(), 3, 2, vec![1, 2], 3).unwrap();
    let cases = [
        (0, "x[3][1]*x[3][2] + x[1][1]*x[3][2]"),
        (0, "x[1][1]*x[3][2] + pi*x[3][1]*x[3][2]"),
        (1, "pi*x[3][0]*x[3][2] + pi^2*x[2][0]*x[1][2]"),
        (2, "x[2][0]*x[3][1] + x[3][0]*x[1][1]"),
        (2, "pi^3*x[3][0]^2 + pi^4*x[1][0]^2"),
    ];
    let fu = c.fibre_universe();
    let order = TermOrder::degrevlex(&fu);
    for (i, s) in cases {
        let f = grid(&c, s);
        let pi = c.pi_var();
        let (_, g) = strip_pi(&f, pi);
        let keep: Vec<_> = g.terms().iter().filter(|(m, _)| m.exp(pi) == 0).cloned().collect();
        let red = MPoly::from_terms(&fp(), &c.universe(), keep).change_universe(&fu).unwrap();
        let r = Reducer::new(&fp(), &primary_prime(&c, i), &order).unwrap();
        assert_eq!(sigma_membership(&f, i, 3, 2), !r.reduces_to_zero(&red).unwrap(), "{s}");
    }
}

#[test]
fn parse_rejects_bad_profiles() {
    let c = LatticeConfig::random(&fp(), 3, 2, vec![1, 2], 8).unwrap();
    let s = |rho, degrees: &[u32]| SyzygyStrings { rho, degrees: degrees.to_vec(), witnesses: vec!["x[3][1]".into(); 3] };
    for (rho, degs) in [(2, &[2, 2, 1][..]), (0, &[0, 0, 0][..]), (2, &[3, 1, 0][..]), (2, &[2, 2][..])] {
        assert!(matches!(SyzygyDatum::parse(&c, &s(rho, degs)), Err(Error::DegreeProfile(_))), "{rho} {degs:?}");
    }
}
