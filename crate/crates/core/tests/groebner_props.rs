use std::cmp::Ordering;
use std::sync::Arc;

use mustafin_core::coeffs::{PrimeField, Ring};
use mustafin_core::groebner::oracle::bounded_membership;
use mustafin_core::groebner::{
    buchberger, hilbert_function, is_groebner, minimalize_monomials, saturate, Reducer, RingMode,
};
use mustafin_core::poly::{BlockKind, Ideal, MPoly, Monomial, OrderBlock, TermOrder, VarUniverse};
use proptest::prelude::*;

fn fp() -> PrimeField {
    PrimeField::new(32003).unwrap()
}

fn xyz() -> Arc<VarUniverse> {
    VarUniverse::new(["x", "y", "z"]).unwrap()
}

fn orders(u: &Arc<VarUniverse>) -> Vec<TermOrder> {
    vec![
        TermOrder::lex(u),
        TermOrder::degrevlex(u),
        TermOrder::block(u, vec![OrderBlock::new(vec![0, 1, 2], BlockKind::WeightedDegRevLex(vec![3, 1, 2]))]).unwrap(),
        TermOrder::block(
            u,
            vec![OrderBlock::new(vec![2], BlockKind::DegRevLex), OrderBlock::new(vec![0, 1], BlockKind::Lex)],
        )
        .unwrap(),
    ]
}

fn mono() -> impl Strategy<Value = Monomial> {
    prop::collection::vec(0u32..4, 3).prop_map(Monomial::from_exps)
}

fn poly(max_deg: u32) -> impl Strategy<Value = MPoly<PrimeField>> {
    prop::collection::vec((prop::collection::vec(0u32..=max_deg, 3), 1u64..32003), 1..4).prop_map(move |ts| {
        let terms = ts.into_iter().map(|(mut e, c)| {
            while e.iter().sum::<u32>() > max_deg {
                let i = e.iter().position(|&x| x > 0).unwrap();
                e[i] -= 1;
            }
            (Monomial::from_exps(e), fp().from_i64(c as i64))
        });
        MPoly::from_terms(&fp(), &xyz(), terms)
    })
}

/// Homogeneous of the given degree.
fn form(deg: u32) -> impl Strategy<Value = MPoly<PrimeField>> {
    prop::collection::vec((0..=deg, 0..=deg, 1u64..32003), 1..4).prop_map(move |ts| {
        let terms = ts.into_iter().map(|(a, b, c)| {
            let a = a.min(deg);
            let b = b.min(deg - a);
            (Monomial::from_exps(vec![a, b, deg - a - b]), fp().from_i64(c as i64))
        });
        MPoly::from_terms(&fp(), &xyz(), terms)
    })
}

fn nonzero(gens: Vec<MPoly<PrimeField>>) -> Vec<MPoly<PrimeField>> {
    gens.into_iter().filter(|g| !g.is_zero()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn orders_are_total_multiplicative_well_founded(a in mono(), b in mono(), c in mono(), k in 0usize..4) {
        let o = &orders(&xyz())[k];
        let ab = o.compare(&a, &b).unwrap();
        prop_assert_eq!(ab, o.compare(&b, &a).unwrap().reverse());
        prop_assert_eq!(ab == Ordering::Equal, a == b);
        prop_assert_eq!(ab, o.compare(&a.mul(&c), &b.mul(&c)).unwrap());
        prop_assert_ne!(o.compare(&Monomial::one(3), &a).unwrap(), Ordering::Greater);
        if ab == Ordering::Less && o.compare(&b, &c).unwrap() == Ordering::Less {
            prop_assert_eq!(o.compare(&a, &c).unwrap(), Ordering::Less);
        }
    }

    #[test]
    fn reduced_bases_are_fixed_points(gens in prop::collection::vec(poly(3), 1..4), k in 0usize..4) {
        let gens = nonzero(gens);
        prop_assume!(!gens.is_empty());
        let o = &orders(&xyz())[k];
        let g = buchberger(&gens, o, RingMode::Field).unwrap();
        prop_assert!(is_groebner(g.elements(), o, RingMode::Field).unwrap().is_groebner);
        let again = buchberger(g.elements(), o, RingMode::Field).unwrap();
        prop_assert_eq!(again.elements(), g.elements());
        let r = Reducer::new(&fp(), g.elements(), o).unwrap();
        for f in &gens {
            prop_assert!(r.reduces_to_zero(f).unwrap());
        }
    }

    #[test]
    fn membership_agrees_with_linear_algebra(
        gens in prop::collection::vec(form(2), 1..3),
        cofactors in prop::collection::vec(form(1), 2),
        other in form(3),
        use_member in any::<bool>(),
    ) {
        let gens = nonzero(gens);
        prop_assume!(!gens.is_empty());
        let mut member = MPoly::zero(&fp(), &xyz());
        for (g, c) in gens.iter().zip(&cofactors) {
            member = &member + &(g * c);
        }
        let f = if use_member { member } else { other };
        let o = TermOrder::degrevlex(&xyz());
        let g = buchberger(&gens, &o, RingMode::Field).unwrap();
        let by_basis = Reducer::new(&fp(), g.elements(), &o).unwrap().reduces_to_zero(&f).unwrap();
        prop_assert_eq!(by_basis, bounded_membership(&f, &gens, 3).unwrap());
        if use_member {
            prop_assert!(by_basis);
        }
    }

    #[test]
    fn saturation_contains_and_is_idempotent(gens in prop::collection::vec(poly(2), 1..3), v in 0usize..3) {
        let gens = nonzero(gens);
        prop_assume!(!gens.is_empty());
        let u = xyz();
        let i = Ideal::new(&fp(), &u, gens.clone()).unwrap();
        let x = [MPoly::var(&fp(), &u, v)];
        let s = saturate(&i, &x).unwrap();
        let o = TermOrder::degrevlex(&u);
        let gs = s.groebner_basis(&o).unwrap();
        let r = Reducer::new(&fp(), &gs, &o).unwrap();
        for g in &gens {
            prop_assert!(r.reduces_to_zero(g).unwrap());
        }
        let s2 = saturate(&s, &x).unwrap();
        prop_assert_eq!(s2.groebner_basis(&o).unwrap(), gs.clone());
        // x * h in the saturation forces h in it
        for h in &gs {
            let xh = &x[0] * h;
            prop_assert!(r.reduces_to_zero(&xh).unwrap());
        }
    }

    #[test]
    fn ring_and_field_modes_share_leading_ideals(gens in prop::collection::vec(poly(3), 1..4)) {
        let gens = nonzero(gens);
        prop_assume!(!gens.is_empty());
        let o = TermOrder::degrevlex(&xyz());
        let lead = |m: RingMode| {
            let g = buchberger(&gens, &o, m).unwrap();
            let mut l = minimalize_monomials(g.leading_monomials());
            l.sort();
            l
        };
        prop_assert_eq!(lead(RingMode::Field), lead(RingMode::EuclideanRing));
    }

    /// `0 -> S/(I:x)(-1) -> S/I -> S/(I+x) -> 0` for a monomial ideal `I`.
    #[test]
    fn hilbert_function_is_additive(ms in prop::collection::vec(mono(), 1..4), v in 0usize..3) {
        let u = xyz();
        let k = fp();
        let as_ideal = |ms: Vec<Monomial>| {
            let gens = ms.into_iter().map(|m| MPoly::monomial(&k, &u, k.one(), m)).collect();
            Ideal::new(&k, &u, gens).unwrap()
        };
        let x = Monomial::var(3, v, 1);
        let colon: Vec<Monomial> = ms.iter().map(|m| m.div(&m.gcd(&x)).unwrap()).collect();
        let mut plus = ms.clone();
        plus.push(x.clone());
        let blocks = vec![vec![0, 1, 2]];
        let hf = |ms: Vec<Monomial>| hilbert_function(&as_ideal(ms), &blocks, &[6]).unwrap();
        let (whole, c, p) = (hf(ms), hf(colon), hf(plus));
        for t in 0..=6u64 {
            let shifted = if t == 0 { 0 } else { c[&vec![t - 1]] };
            prop_assert_eq!(whole[&vec![t]], shifted + p[&vec![t]], "degree {}", t);
        }
    }
}
