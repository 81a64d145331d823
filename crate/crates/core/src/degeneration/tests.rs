use super::*;
use crate::coeffs::{PrimeField, DEFAULT_PRIME};
use crate::groebner::hilbert_function;
use crate::mustafin::special_fibre;

fn fp() -> PrimeField {
    PrimeField::new(DEFAULT_PRIME).unwrap()
}

fn same_ideal(a: &Ideal<PrimeField>, b: &Ideal<PrimeField>) -> bool {
    let order = TermOrder::degrevlex(a.universe());
    let (ga, gb) = (a.groebner_basis(&order).unwrap(), b.groebner_basis(&order).unwrap());
    let (ra, rb) = (Reducer::new(&fp(), &ga, &order).unwrap(), Reducer::new(&fp(), &gb, &order).unwrap());
    ga.iter().all(|g| rb.reduces_to_zero(g).unwrap()) && gb.iter().all(|g| ra.reduces_to_zero(g).unwrap())
}

fn ideal_of(u: &Arc<VarUniverse>, gens: &[&str]) -> Ideal<PrimeField> {
    Ideal::new(&fp(), u, gens.iter().map(|s| parse_poly(&fp(), u, s).unwrap()).collect()).unwrap()
}

fn integral(ideal: &Ideal<PrimeField>, pi: usize) -> Ideal<PrimeField> {
    integral_model(ideal, pi, None).unwrap().0
}

#[test]
fn coordinate_point_model() {
    let c = LatticeConfig::identity(&fp(), 3, 1, vec![1, 2]).unwrap();
    let x = SubvarietyInput::coordinate_point(&fp(), 3).unwrap();
    let m = integral(&model_ideal(&c, &x).unwrap(), c.pi_var());
    let want = ideal_of(&c.universe(), &["x[2][0]", "x[3][0]", "x[2][1]", "x[3][1]"]);
    assert!(same_ideal(&m, &want));
    let rank = integral(&model_ideal_rank(&c, &x, 7).unwrap(), c.pi_var());
    assert!(same_ideal(&rank, &want));
}

#[test]
fn single_lattice_model_is_the_pullback() {
    let c = LatticeConfig::identity(&fp(), 3, 0, vec![1, 2]).unwrap();
    let x = SubvarietyInput::parse(&fp(), 3, &["y1 + y2 + y3".into()], 1, 1).unwrap();
    let m = model_ideal(&c, &x).unwrap();
    assert!(same_ideal(&integral(&m, c.pi_var()), &ideal_of(&c.universe(), &["x[1][0] + pi*x[2][0] + pi^2*x[3][0]"])));
    let f = special_fibre_of_model(&c, &x).unwrap();
    assert!(same_ideal(&f, &ideal_of(&c.fibre_universe(), &["x[1][0]"])));
}

#[test]
fn identity_lattice_pulls_back_mod_pi() {
    let k = fp();
    let one = crate::coeffs::Ring::one(&crate::coeffs::PiRing::new(k.clone()));
    let zero = crate::coeffs::Ring::zero(&crate::coeffs::PiRing::new(k.clone()));
    let id = vec![vec![one.clone(), zero.clone()], vec![zero, one]];
    let c = LatticeConfig::new(&k, 2, 0, vec![1], crate::mustafin::Entries::Concrete(vec![id])).unwrap();
    let x = SubvarietyInput::parse(&k, 2, &["y1 - 3*y2".into()], 0, 1).unwrap();
    let f = special_fibre_of_model(&c, &x).unwrap();
    assert!(same_ideal(&f, &ideal_of(&c.fibre_universe(), &["x[1][0]"])));
}

#[test]
fn integral_model_examples() {
    let u = VarUniverse::new(["x", "y", "pi"]).unwrap();
    assert!(same_ideal(&integral(&ideal_of(&u, &["pi*x"]), 2), &ideal_of(&u, &["x"])));
    assert!(same_ideal(&integral(&ideal_of(&u, &["x + pi*y", "pi*x"]), 2), &ideal_of(&u, &["x", "y"])));
    let sat = ideal_of(&u, &["x^2 - pi*y^2"]);
    assert!(same_ideal(&integral(&sat, 2), &sat));
    let once = integral(&ideal_of(&u, &["x*y + pi*x", "pi^2*y"]), 2);
    assert!(same_ideal(&integral(&once, 2), &once));
}

#[test]
fn generic_line_three_lattices() {
    for seed in 0..3 {
        let c = LatticeConfig::random(&fp(), 3, 2, vec![1, 2], seed).unwrap();
        let x = SubvarietyInput::random_linear(&fp(), 3, 1, 100 + seed).unwrap();
        let model = model_ideal(&c, &x).unwrap();
        assert!(is_multihomogeneous_model(&c, &model));
        let fibre = special_fibre_of_model(&c, &x).unwrap();
        let comps = monomial_components(&c, &fibre).unwrap();
        assert!(comps.certified, "seed {seed}");
        let mut got = comps.primes.clone();
        let mut want: Vec<Vec<String>> = (0..3)
            .map(|l| {
                let mut p = vec![format!("x[1][{l}]")];
                for i in (0..3).filter(|&i| i != l) {
                    p.push(format!("x[1][{i}]"));
                    p.push(format!("x[2][{i}]"));
                }
                p.sort();
                p
            })
            .collect();
        for p in got.iter_mut() {
            p.sort();
        }
        got.sort();
        want.sort();
        assert_eq!(got, want, "seed {seed}");
        assert!(got.len() as u64 <= chow_component_bound(3, 2, 1, 1).unwrap());
    }
}

#[test]
fn generic_line_two_lattices_has_bidegree_one_one() {
    let c = LatticeConfig::random(&fp(), 3, 1, vec![1, 2], 5).unwrap();
    let x = SubvarietyInput::random_linear(&fp(), 3, 1, 11).unwrap();
    let fibre = special_fibre_of_model(&c, &x).unwrap();
    let hf = hilbert_function(&fibre, &grid_blocks(3, 1), &[3, 3]).unwrap();
    for (deg, v) in hf {
        assert_eq!(v, deg[0] + deg[1] + 1, "{deg:?}");
    }
    assert!(model_cross_check(&c, &x, 3).unwrap());
}

#[test]
fn whole_space_gives_the_ambient_fibre() {
    let c = LatticeConfig::random(&fp(), 3, 1, vec![1, 2], 2).unwrap();
    let x = SubvarietyInput::whole_space(&fp(), 3).unwrap();
    let f = special_fibre_of_model(&c, &x).unwrap();
    assert!(same_ideal(&f, &special_fibre(&c).unwrap()));
}

#[test]
fn support_of_curves_points_and_space() {
    let c = LatticeConfig::random(&fp(), 3, 2, vec![1, 2], 1).unwrap();
    let line = SubvarietyInput::random_linear(&fp(), 3, 1, 9).unwrap();
    let r = support_analysis(&c, &line).unwrap();
    assert_eq!(r.delta, Some(1));
    assert!(r.star_like);
    let flags: Vec<bool> = r.per_level.iter().map(|l| l.contained).collect();
    assert_eq!(flags, [false, true, true]);
    assert!(r.per_level[0].witness.is_some());

    let all = SubvarietyInput::whole_space(&fp(), 3).unwrap();
    let r = support_analysis(&c, &all).unwrap();
    assert_eq!(r.delta, Some(2));
    // every component vector for d = 3, n = 2 has an entry 2
    assert!(r.star_like);

    let pt = SubvarietyInput::random_linear(&fp(), 3, 2, 4).unwrap();
    let r = support_analysis(&c, &pt).unwrap();
    assert_eq!(r.delta, Some(1));
}

#[test]
fn chow_bounds() {
    for deg in 1..4 {
        assert_eq!(chow_component_bound(3, 2, 1, deg).unwrap(), 3 * deg);
        assert_eq!(chow_component_bound(4, 3, 0, deg).unwrap(), deg);
        assert_eq!(chow_component_bound(2, 1, 1, deg).unwrap(), 2 * deg);
    }
    assert_eq!(chow_closed_form(2, 1, 5), 5);
    assert_eq!(chow_closed_form(2, 2, 1), 4);
    assert!(chow_component_bound(3, 1, 3, 1).is_err());
}

#[test]
fn rejects_mismatched_inputs() {
    let c = LatticeConfig::identity(&fp(), 3, 1, vec![1, 2]).unwrap();
    let x = SubvarietyInput::coordinate_point(&fp(), 2).unwrap();
    assert!(model_ideal(&c, &x).is_err());
    assert!(SubvarietyInput::parse(&fp(), 3, &["y1^2 + y2".into()], 1, 2).is_err());
    let s = LatticeConfig::symbolic(&fp(), 3, 1, vec![1, 2]).unwrap();
    let x = SubvarietyInput::coordinate_point(&fp(), 3).unwrap();
    assert!(model_ideal(&s, &x).is_err());
}

#[test]
fn conic_fibre_has_one_primary_certificate_per_component() {
    let c = LatticeConfig::random(&fp(), 3, 2, vec![1, 2], 6).unwrap();
    let q = SubvarietyInput::random_quadric(&fp(), 3, 12).unwrap();
    assert_eq!((q.dim, q.degree), (1, 2));
    let fibre = special_fibre_of_model(&c, &q).unwrap();
    let comps = monomial_components(&c, &fibre).unwrap();
    assert!(comps.certified);
    let certs = primary_certificates(3, 2, &comps);
    assert!(certs.iter().all(|v| v.len() == 1));
    let mut fired: Vec<_> = certs.into_iter().flatten().collect();
    fired.sort();
    fired.dedup();
    assert_eq!(fired.len(), 3);
    assert!(fired.len() as u64 <= chow_component_bound(3, 2, 1, 2).unwrap());
    assert!(SubvarietyInput::random_quadric(&PrimeField::new(2).unwrap(), 3, 0).is_err());
}
