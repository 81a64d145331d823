use std::sync::Arc;

use mustafin_core::coeffs::PrimeField;
use mustafin_core::poly::{parse_poly, BlockKind, MPoly, VarUniverse};
use mustafin_core::specialize::{
    check_specialization, obstruction_polynomials, sample_assignment, subst, violated_conditions, Assignment,
};
use proptest::prelude::*;

fn fp() -> PrimeField {
    PrimeField::new(32003).unwrap()
}

fn universe() -> Arc<VarUniverse> {
    VarUniverse::new(["x", "y", "A1", "A2", "pi"]).unwrap()
}

fn p(s: &str) -> MPoly<PrimeField> {
    parse_poly(&fp(), &universe(), s).unwrap()
}

fn assign(a1: &str, a2: &str) -> Assignment<PrimeField> {
    Assignment::parse(&fp(), [("A1", a1), ("A2", a2)]).unwrap()
}

/// Parametric problems built from a few shapes with random coefficients.
fn problem() -> impl Strategy<Value = Vec<String>> {
    (0usize..3, 1u64..50, 1u64..50).prop_map(|(k, a, b)| match k {
        0 => vec![format!("{a}*pi*A1*x + A2*y")],
        1 => vec![format!("A1*x^2 + {b}*pi*y^2"), format!("A2*x*y - {a}*pi*y^2")],
        _ => vec![format!("A1*x*y + {a}*pi*x^2"), format!("{b}*x^2 - pi*A2*y")],
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn substitution_is_a_ring_map(a1 in 1u64..32003, a2 in 0u64..32003, k in 0u32..3) {
        let a = assign(&a1.to_string(), &format!("{a2} + pi^{k}"));
        let f = p("pi*A1*x + A2*y^2 - 3");
        let g = p("A2*A1*x*y + pi^2");
        let lhs = subst(&a, &(&f * &g)).unwrap();
        prop_assert_eq!(lhs, &subst(&a, &f).unwrap() * &subst(&a, &g).unwrap());
        prop_assert_eq!(subst(&a, &(&f + &g)).unwrap(), &subst(&a, &f).unwrap() + &subst(&a, &g).unwrap());
    }

    /// Units keep the leading terms, so the specialized basis stays a basis and
    /// saturation commutes.
    #[test]
    fn nonzero_constants_specialize_the_worked_example(a1 in 1u64..32003, a2 in 1u64..32003) {
        let c = check_specialization(&[p("pi*A1*x + A2*y")], &p("pi"), &assign(&a1.to_string(), &a2.to_string()), &BlockKind::DegRevLex).unwrap();
        prop_assert!(c.is_groebner && c.commutes && c.passed, "{:?}", c);
    }

    #[test]
    fn a_non_unit_is_diagnosed(a1 in 1u64..32003, c2 in 1u64..32003, k in 1u32..3) {
        let a = assign(&a1.to_string(), &format!("{c2}*pi^{k}"));
        let c = check_specialization(&[p("pi*A1*x + A2*y")], &p("pi"), &a, &BlockKind::DegRevLex).unwrap();
        prop_assert!(!c.passed);
        prop_assert!(c.diagnosis.iter().any(|d| d == "unit condition A2 violated"), "{:?}", c.diagnosis);
    }

    /// Assignments that satisfy the obstructions pass the direct check.
    #[test]
    fn obstructions_are_sound(gens in problem(), seed in 0u64..1000) {
        let gens: Vec<MPoly<PrimeField>> = gens.iter().map(|s| p(s)).collect();
        let obs = obstruction_polynomials(&gens, &p("pi"), &BlockKind::DegRevLex).unwrap();
        prop_assume!(obs.complete);
        let names = vec!["A1".to_string(), "A2".to_string()];
        let s = sample_assignment(seed, &fp(), &names, Some(&obs), 200).unwrap();
        prop_assert!(violated_conditions(&obs, &s.assignment).unwrap().is_empty());
        let c = check_specialization(&gens, &p("pi"), &s.assignment, &BlockKind::DegRevLex).unwrap();
        prop_assert!(c.passed, "{:?} at {:?}", c, s.assignment.to_strings());
    }

    #[test]
    fn sampling_is_reproducible(seed in any::<u64>()) {
        let names = vec!["A1".to_string(), "A2".to_string()];
        let a = sample_assignment(seed, &fp(), &names, None, 1).unwrap();
        let b = sample_assignment(seed, &fp(), &names, None, 1).unwrap();
        prop_assert_eq!(a, b);
    }
}
