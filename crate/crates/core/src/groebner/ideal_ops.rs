use std::sync::Arc;

use crate::coeffs::EuclideanRing;
use crate::error::{Error, Result};
use crate::groebner::engine::{self, Space};
use crate::groebner::{buchberger, default_mode, GroebnerBasis, RingMode};
use crate::poly::{BlockKind, Ideal, MPoly, Monomial, OrderBlock, TermOrder, VarUniverse};

/// Saturation by the product of `elems`, with degrevlex on the original variables.
pub fn saturate<R: EuclideanRing>(ideal: &Ideal<R>, elems: &[MPoly<R>]) -> Result<Ideal<R>> {
    let order = TermOrder::degrevlex(ideal.universe());
    saturate_with_order(ideal, elems, &order)
}

/// Saturation via fresh variables `y_i` and the relations `1 - y_i a_i`,
/// eliminated with a block order putting the `y_i` first and `order` on the
/// original variables. The result caches its basis for `order`.
pub fn saturate_with_order<R: EuclideanRing>(
    ideal: &Ideal<R>,
    elems: &[MPoly<R>],
    order: &TermOrder,
) -> Result<Ideal<R>> {
    let u = ideal.universe();
    if elems.is_empty() {
        return Ok(ideal.clone());
    }
    let ring = ideal.ring();
    let ys = u.fresh_names("y", elems.len());
    let big = u.extend(&ys)?;
    let n = u.len();
    let mut blocks = vec![OrderBlock::new((n..n + ys.len()).collect(), BlockKind::Lex)];
    blocks.extend(order.blocks().iter().cloned());
    let big_order = TermOrder::block(&big, blocks)?;
    let mut gens = ideal
        .generators()
        .iter()
        .map(|g| g.change_universe(&big))
        .collect::<Result<Vec<_>>>()?;
    for (k, a) in elems.iter().enumerate() {
        let a = a.change_universe(&big)?;
        let y = MPoly::var(ring, &big, n + k);
        gens.push(&MPoly::one(ring, &big) - &(&y * &a));
    }
    let gb = buchberger(&gens, &big_order, default_mode(ring))?;
    let kept = gb
        .into_elements()
        .into_iter()
        .filter(|g| !(n..n + ys.len()).any(|v| g.involves(v)))
        .map(|g| g.change_universe(u))
        .collect::<Result<Vec<_>>>()?;
    Ok(Ideal::new(ring, u, kept.clone())?.with_basis(order, kept))
}

/// Generators of the intersection with the subring free of `vars`; `order`
/// must eliminate `vars`. The result stays in the same universe.
pub fn eliminate<R: EuclideanRing>(
    ideal: &Ideal<R>,
    vars: &[usize],
    order: &TermOrder,
) -> Result<Ideal<R>> {
    if !order.eliminates(vars) {
        return Err(Error::NotEliminationOrder);
    }
    let gb = ideal.groebner_basis(order)?;
    let kept: Vec<_> = gb.into_iter().filter(|g| !vars.iter().any(|&v| g.involves(v))).collect();
    Ideal::new(ideal.ring(), ideal.universe(), kept)
}

/// `f ∈ √I` via `1 ∈ ⟨I, 1 - y f⟩`; field coefficients only.
pub fn radical_membership<R: EuclideanRing>(f: &MPoly<R>, ideal: &Ideal<R>) -> Result<bool> {
    let ring = ideal.ring();
    if !ring.is_field() {
        return Err(Error::NotAField);
    }
    if f.is_zero() {
        return Ok(true);
    }
    let u = ideal.universe();
    let y = u.fresh_names("y", 1);
    let big = u.extend(&y)?;
    let mut gens = ideal
        .generators()
        .iter()
        .map(|g| g.change_universe(&big))
        .collect::<Result<Vec<_>>>()?;
    let yv = MPoly::var(ring, &big, u.len());
    gens.push(&MPoly::one(ring, &big) - &(&yv * &f.change_universe(&big)?));
    let gb = buchberger(&gens, &TermOrder::degrevlex(&big), RingMode::Field)?;
    Ok(gb.is_unit_ideal())
}

/// Saturation by a single variable for ideals homogeneous under positive
/// `weights` (one per variable). Uses a weighted degree-reverse-lexicographic
/// order with `var` last, in which dividing the basis by the largest power of
/// `var` yields a basis of the saturation. Returns that reduced basis.
pub fn saturate_by_variable<R: EuclideanRing>(
    gens: &[MPoly<R>],
    universe: &Arc<VarUniverse>,
    var: usize,
    weights: &[u32],
) -> Result<GroebnerBasis<R>> {
    let n = universe.len();
    if weights.len() != n || var >= n {
        return Err(Error::InvalidOrder("one weight per variable required".into()));
    }
    for g in gens {
        if !is_weighted_homogeneous(g, weights) {
            return Err(Error::NotHomogeneous);
        }
    }
    let mut vars: Vec<usize> = (0..n).filter(|&v| v != var).collect();
    vars.push(var);
    let w = vars.iter().map(|&v| weights[v]).collect();
    let order = TermOrder::block(universe, vec![OrderBlock::new(vars, BlockKind::WeightedDegRevLex(w))])?;
    let ring = match gens.iter().find(|g| !g.is_zero()) {
        Some(g) => g.ring().clone(),
        None => return buchberger(gens, &order, RingMode::Field),
    };
    if !ring.is_field() {
        return Err(Error::NotAField);
    }
    let gb = buchberger(gens, &order, RingMode::Field)?;
    let divided: Vec<MPoly<R>> = gb
        .elements()
        .iter()
        .map(|g| {
            let k = g.terms().iter().map(|(m, _)| m.exp(var)).min().unwrap_or(0);
            g.divide_monomial(&Monomial::var(n, var, k)).expect("power divides every term")
        })
        .collect();
    let space = Space::new(&order);
    let terms = divided.iter().map(|g| space.import(g)).collect::<Result<Vec<_>>>()?;
    let reduced = engine::interreduce_all(&ring, &space, terms)?;
    let elements = reduced.iter().map(|t| space.export(&ring, t)).collect();
    Ok(GroebnerBasis::from_parts(elements, order, RingMode::Field))
}

pub fn is_weighted_homogeneous<R: crate::coeffs::Ring>(f: &MPoly<R>, weights: &[u32]) -> bool {
    let deg = |m: &Monomial| -> u64 {
        m.exps().iter().zip(weights).map(|(&e, &w)| e as u64 * w as u64).sum()
    };
    match f.terms().first() {
        None => true,
        Some((m0, _)) => {
            let d0 = deg(m0);
            f.terms().iter().all(|(m, _)| deg(m) == d0)
        }
    }
}
