//! Seeded randomized battery for the Groebner engine.

use std::cmp::Ordering;
use std::sync::Arc;

use mustafin_core::coeffs::{Field, PrimeField, Rationals};
use mustafin_core::groebner::oracle::bounded_membership;
use mustafin_core::groebner::{buchberger, is_groebner, minimalize_monomials, saturate, Reducer, RingMode};
use mustafin_core::poly::{BlockKind, Ideal, MPoly, Monomial, OrderBlock, TermOrder, VarUniverse};
use mustafin_core::Result;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

#[derive(Clone, Debug, Default, Serialize, PartialEq)]
pub struct BatteryReport {
    pub ideals: usize,
    pub membership_checks: usize,
    pub order_checks: usize,
    pub failures: Vec<String>,
}

fn random_monomial(rng: &mut ChaCha8Rng, nv: usize, deg: u64) -> Monomial {
    let mut e = vec![0u32; nv];
    for _ in 0..deg {
        e[rng.gen_range(0..nv)] += 1;
    }
    Monomial::from_exps(e)
}

fn random_poly<F: Field>(rng: &mut ChaCha8Rng, f: &F, u: &Arc<VarUniverse>, degs: &[u64], terms: usize) -> MPoly<F> {
    let t: Vec<(Monomial, F::Elem)> = (0..terms)
        .map(|_| {
            let deg = degs[rng.gen_range(0..degs.len())];
            let mut c = f.sample_from(rng.gen());
            if f.is_zero(&c) {
                c = f.one();
            }
            (random_monomial(rng, u.len(), deg), c)
        })
        .collect();
    MPoly::from_terms(f, u, t)
}

fn orders(u: &Arc<VarUniverse>) -> Vec<TermOrder> {
    let n = u.len();
    let mut out = vec![TermOrder::lex(u), TermOrder::degrevlex(u)];
    let w: Vec<u32> = (0..n as u32).map(|i| i + 1).collect();
    out.push(TermOrder::block(u, vec![OrderBlock::new((0..n).collect(), BlockKind::WeightedDegRevLex(w))]).expect("one block"));
    if n >= 2 {
        let b = vec![
            OrderBlock::new(vec![0], BlockKind::DegRevLex),
            OrderBlock::new((1..n).collect(), BlockKind::DegRevLex),
        ];
        out.push(TermOrder::block(u, b).expect("covering blocks"));
    }
    out
}

/// Totality, transitivity, multiplicativity and minimality of 1.
fn order_axioms(rng: &mut ChaCha8Rng, rep: &mut BatteryReport) -> Result<()> {
    for nv in 1..=3 {
        let u = VarUniverse::new(["x", "y", "z"].iter().take(nv).copied())?;
        for (k, o) in orders(&u).iter().enumerate() {
            for _ in 0..60 {
                let ms: Vec<Monomial> = (0..3).map(|_| { let d = rng.gen_range(0..5); random_monomial(rng, nv, d) }).collect();
                let (a, b, c) = (&ms[0], &ms[1], &ms[2]);
                rep.order_checks += 1;
                let ab = o.compare(a, b)?;
                if ab != o.compare(b, a)?.reverse() || (ab == Ordering::Equal) != (a == b) {
                    rep.failures.push(format!("order {k}: not total on {a:?}, {b:?}"));
                }
                if ab == Ordering::Less && o.compare(b, c)? == Ordering::Less && o.compare(a, c)? != Ordering::Less {
                    rep.failures.push(format!("order {k}: not transitive"));
                }
                if ab != o.compare(&a.mul(c), &b.mul(c))? {
                    rep.failures.push(format!("order {k}: not multiplicative"));
                }
                if o.compare(&Monomial::one(nv), a)? == Ordering::Greater {
                    rep.failures.push(format!("order {k}: 1 is not minimal"));
                }
            }
        }
    }
    Ok(())
}

/// Equal reduced bases.
fn same_ideal<F: Field>(a: &[MPoly<F>], b: &[MPoly<F>], o: &TermOrder) -> Result<bool> {
    let ga = buchberger(a, o, RingMode::Field)?;
    let gb = buchberger(b, o, RingMode::Field)?;
    Ok(ga.elements() == gb.elements())
}

fn lm_set<F: Field>(g: &[MPoly<F>], o: &TermOrder) -> Result<Vec<Monomial>> {
    let ms = g.iter().map(|p| p.leading_monomial(o).cloned()).collect::<Result<Vec<_>>>()?;
    let mut m = minimalize_monomials(ms);
    m.sort();
    Ok(m)
}

/// One random ideal: GB facts, membership against the oracle, saturation.
fn one_ideal<F: Field>(rng: &mut ChaCha8Rng, f: &F, homogeneous: bool, rep: &mut BatteryReport) -> Result<()> {
    let nv = rng.gen_range(2..=3);
    let u = VarUniverse::new(["x", "y", "z"].iter().take(nv).copied())?;
    let count = rng.gen_range(1..=3);
    let gens: Vec<MPoly<F>> = (0..count)
        .map(|_| {
            let d = rng.gen_range(1..=3);
            let degs: Vec<u64> = if homogeneous { vec![d] } else { (0..=d).collect() };
            let t = rng.gen_range(1..=4);
            random_poly(rng, f, &u, &degs, t)
        })
        .filter(|g| !g.is_zero())
        .collect();
    if gens.is_empty() {
        return Ok(());
    }
    rep.ideals += 1;
    let tag = format!("{} {:?}", f.tag(), gens.iter().map(|g| g.to_string()).collect::<Vec<_>>());
    let all = orders(&u);
    let o = &all[rng.gen_range(0..all.len())];
    let gb = buchberger(&gens, o, RingMode::Field)?;
    if !is_groebner(gb.elements(), o, RingMode::Field)?.is_groebner {
        rep.failures.push(format!("{tag}: output is not a Groebner basis"));
    }
    let again = buchberger(gb.elements(), o, RingMode::Field)?;
    if again.elements() != gb.elements() {
        rep.failures.push(format!("{tag}: basis of a reduced basis differs"));
    }
    let red = Reducer::new(f, gb.elements(), o)?;
    for g in &gens {
        if !red.reduces_to_zero(g)? {
            rep.failures.push(format!("{tag}: generator {g} not reduced to zero"));
        }
    }
    // members built from the generators, and random polynomials
    for _ in 0..4 {
        let mut p = MPoly::zero(f, &u);
        let top = rng.gen_range(1..=4u64);
        for g in &gens {
            let dg = g.total_degree().unwrap_or(0);
            let k = top.saturating_sub(dg);
            let degs: Vec<u64> = if homogeneous { vec![k] } else { (0..=k).collect() };
            p = &p + &random_poly(rng, f, &u, &degs, 2).checked_mul(g)?;
        }
        let q = if homogeneous {
            let d = p.total_degree().unwrap_or(top);
            random_poly(rng, f, &u, &[d], 3)
        } else {
            random_poly(rng, f, &u, &(0..=top).collect::<Vec<_>>(), 3)
        };
        for (h, member) in [(&p, true), (&q, false)] {
            rep.membership_checks += 1;
            let by_gb = red.reduces_to_zero(h)?;
            if member && !by_gb {
                rep.failures.push(format!("{tag}: combination {h} not a member"));
            }
            let bound = if homogeneous { h.total_degree().unwrap_or(0) } else { 5 };
            let by_oracle = bounded_membership(h, &gens, bound)?;
            if homogeneous && by_oracle != by_gb {
                rep.failures.push(format!("{tag}: {h}: basis says {by_gb}, oracle says {by_oracle}"));
            }
            if !homogeneous && by_oracle && !by_gb {
                rep.failures.push(format!("{tag}: {h}: oracle certificate missed by the basis"));
            }
        }
    }
    // saturation by a variable: contains I and is idempotent
    let ideal = Ideal::new(f, &u, gens.clone())?;
    let var = MPoly::var(f, &u, rng.gen_range(0..nv));
    let sat = saturate(&ideal, std::slice::from_ref(&var))?;
    let dl = TermOrder::degrevlex(&u);
    let sgb = sat.groebner_basis(&dl)?;
    let sred = Reducer::new(f, &sgb, &dl)?;
    for g in &gens {
        if !sred.reduces_to_zero(g)? {
            rep.failures.push(format!("{tag}: saturation misses {g}"));
        }
    }
    let sat2 = saturate(&sat, std::slice::from_ref(&var))?;
    if !same_ideal(&sgb, &sat2.groebner_basis(&dl)?, &dl)? {
        rep.failures.push(format!("{tag}: saturation is not idempotent"));
    }
    Ok(())
}

/// Ring-mode and field-mode bases over 𝔽_p have the same leading ideal.
fn ring_vs_field(rng: &mut ChaCha8Rng, f: &PrimeField, rep: &mut BatteryReport) -> Result<()> {
    let u = VarUniverse::new(["x", "y", "z"])?;
    let gens: Vec<MPoly<PrimeField>> =
        (0..rng.gen_range(1..=3)).map(|_| { let t = rng.gen_range(1..=3); random_poly(rng, f, &u, &[1, 2, 3], t) }).collect();
    let o = TermOrder::degrevlex(&u);
    let a = buchberger(&gens, &o, RingMode::Field)?;
    let b = buchberger(&gens, &o, RingMode::EuclideanRing)?;
    if lm_set(a.elements(), &o)? != lm_set(b.elements(), &o)? {
        let g: Vec<String> = gens.iter().map(|g| g.to_string()).collect();
        rep.failures.push(format!("ring and field leading ideals differ for {g:?}"));
    }
    Ok(())
}

/// Runs the battery; errors count as failures.
pub fn battery(seed: u64) -> BatteryReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rep = BatteryReport::default();
    let fp = PrimeField::new(32003).expect("prime");
    let small = PrimeField::new(7).expect("prime");
    let note = |r: Result<()>, rep: &mut BatteryReport| {
        if let Err(e) = r {
            rep.failures.push(format!("error: {e}"));
        }
    };
    let r = order_axioms(&mut rng, &mut rep);
    note(r, &mut rep);
    for k in 0..240 {
        let homogeneous = k % 2 == 0;
        let r = match k % 4 {
            0 | 1 => one_ideal(&mut rng, &fp, homogeneous, &mut rep),
            2 => one_ideal(&mut rng, &small, homogeneous, &mut rep),
            _ => one_ideal(&mut rng, &Rationals, homogeneous, &mut rep),
        };
        note(r, &mut rep);
    }
    for _ in 0..60 {
        let r = ring_vs_field(&mut rng, &fp, &mut rep);
        note(r, &mut rep);
    }
    rep
}
