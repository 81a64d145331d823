//! Moving between coefficients in L[π] and π as an ordinary variable.

use std::sync::Arc;

use crate::coeffs::{Field, PiRing};
use crate::error::{Error, Result};
use crate::poly::{MPoly, Monomial, VarUniverse};

/// Expands L[π]-coefficients into powers of the variable `pi_var` of `target`.
/// Variables of `f` are matched by name.
pub fn pi_coeffs_to_var<F: Field>(
    f: &MPoly<PiRing<F>>,
    target: &Arc<VarUniverse>,
    pi_var: usize,
) -> Result<MPoly<F>> {
    let base = f.ring().base().clone();
    let map = name_map(f.universe(), target, &f.support_vars())?;
    let mut terms = Vec::new();
    for (m, c) in f.terms() {
        let mm = m.remap(&map, target.len());
        for (k, a) in c.coeffs().iter().enumerate() {
            if base.is_zero(a) {
                continue;
            }
            let k = u32::try_from(k).map_err(|_| Error::ExponentOverflow)?;
            let t = mm.checked_mul(&Monomial::var(target.len(), pi_var, k))?;
            terms.push((t, a.clone()));
        }
    }
    Ok(MPoly::from_terms(&base, target, terms))
}

/// Collects powers of the variable `pi_var` into L[π]-coefficients in `target`
/// (which must not contain `pi_var`'s name).
pub fn pi_var_to_coeffs<F: Field>(
    f: &MPoly<F>,
    ring: &PiRing<F>,
    pi_var: usize,
    target: &Arc<VarUniverse>,
) -> Result<MPoly<PiRing<F>>> {
    let others: Vec<usize> = f.support_vars().into_iter().filter(|&v| v != pi_var).collect();
    let map = name_map(f.universe(), target, &others)?;
    let mut grouped: std::collections::HashMap<Monomial, Vec<F::Elem>> = Default::default();
    for (m, c) in f.terms() {
        let k = m.exp(pi_var) as usize;
        let mut e = m.exps().to_vec();
        e[pi_var] = 0;
        let mm = Monomial::from_exps(e).remap(&map, target.len());
        let slot = grouped.entry(mm).or_default();
        if slot.len() <= k {
            slot.resize(k + 1, ring.base().zero());
        }
        slot[k] = ring.base().add(&slot[k], c);
    }
    Ok(MPoly::from_terms(
        ring,
        target,
        grouped.into_iter().map(|(m, cs)| (m, ring.from_coeffs(cs))),
    ))
}

/// Coefficientwise reduction modulo π.
pub fn reduce_mod_pi<F: Field>(f: &MPoly<PiRing<F>>) -> MPoly<F> {
    let r = f.ring().clone();
    f.map_coeffs(r.base(), |c| r.reduce_mod_pi(c))
}

/// Constant embedding of a polynomial over L into L[π].
pub fn lift_to_pi<F: Field>(f: &MPoly<F>, ring: &PiRing<F>) -> MPoly<PiRing<F>> {
    f.map_coeffs(ring, |c| ring.constant(c.clone()))
}

/// Minimum π-valuation over all coefficients, `None` for zero.
pub fn pi_content<F: Field>(f: &MPoly<PiRing<F>>) -> Option<usize> {
    let r = f.ring();
    f.terms().iter().filter_map(|(_, c)| r.pi_valuation(c).ok()).min()
}

/// Divides by π^k; every coefficient must be divisible.
pub fn divide_by_pi_power<F: Field>(f: &MPoly<PiRing<F>>, k: usize) -> Option<MPoly<PiRing<F>>> {
    f.divide_coeffs(&f.ring().pi_pow(k))
}

/// Removes the π-content, returning it with the quotient.
pub fn strip_pi_content<F: Field>(f: &MPoly<PiRing<F>>) -> (usize, MPoly<PiRing<F>>) {
    match pi_content(f) {
        None => (0, f.clone()),
        Some(k) => (k, divide_by_pi_power(f, k).expect("content divides every coefficient")),
    }
}

fn name_map(from: &VarUniverse, to: &VarUniverse, used: &[usize]) -> Result<Vec<usize>> {
    let mut map = vec![0usize; from.len()];
    for &v in used {
        map[v] = to.require(from.name(v))?;
    }
    Ok(map)
}
