//! Mustafin varieties of lattice configurations `g_l = M_l·diag(1, π^{n_1}, …)`:
//! their ideals, special fibres, the component ideals `I_v`, and the checks
//! built on them.

mod components;
mod config;
mod conjecture;
mod pipeline;

use std::sync::Arc;

use crate::coeffs::Field;
use crate::error::{Error, Result};
use crate::groebner::{
    buchberger, is_weighted_homogeneous, saturate_by_variable, saturate_with_order, GroebnerBasis, RingMode,
};
use crate::poly::{BlockKind, Ideal, MPoly, OrderBlock, TermOrder};

pub use components::{
    borel_fixed_check, component_length, component_vectors, expected_fibre_d4, ideal_iv, intersection_of_components,
    primary_flag, star_flag, ComponentVector,
};
pub use config::{build_g, column_forms, parameter_name, Entries, LatticeConfig};
pub use conjecture::{check_against, conjecture_check, hilbert_cross_check, CheckMode, ConjectureReport, HilbertReport};
pub use pipeline::{minor_pipeline_d4, PipelineReport, StageReport};

/// The 2×2 minor on columns `α, β` (0-based) and rows `γ, δ` (1-based) of
/// the matrix of column forms.
pub fn minor<F: Field>(forms: &[Vec<MPoly<F>>], (alpha, beta): (usize, usize), (gamma, delta): (usize, usize)) -> MPoly<F> {
    let (a, b) = (&forms[alpha], &forms[beta]);
    let (g, d) = (gamma - 1, delta - 1);
    &(&a[g] * &b[d]) - &(&a[d] * &b[g])
}

/// All 2×2 minors, columns `α < β` outermost, then rows `γ < δ`.
pub fn minors_ideal<F: Field>(config: &LatticeConfig<F>) -> Result<Ideal<F>> {
    let forms = column_forms(config);
    let mut gens = Vec::new();
    for a in 0..=config.n {
        for b in a + 1..=config.n {
            for g in 1..=config.d {
                for d in g + 1..=config.d {
                    gens.push(minor(&forms, (a, b), (g, d)));
                }
            }
        }
    }
    let u = config.universe();
    Ideal::new(&config.field, &u, gens)
}

/// Weighted degree-reverse-lexicographic order on the grid and π with π last,
/// using the weights of [`LatticeConfig::bayer_weights`].
pub fn working_order<F: Field>(config: &LatticeConfig<F>) -> Result<TermOrder> {
    let u = config.universe();
    let w = config.bayer_weights();
    let vars: Vec<usize> = (0..=config.pi_var()).collect();
    let mut blocks = vec![OrderBlock::new(vars.clone(), BlockKind::WeightedDegRevLex(w))];
    if u.len() > vars.len() {
        blocks.push(OrderBlock::new((vars.len()..u.len()).collect(), BlockKind::DegRevLex));
    }
    TermOrder::block(&u, blocks)
}

/// The induced order on the grid variables alone.
pub fn fibre_order<F: Field>(config: &LatticeConfig<F>) -> Result<TermOrder> {
    let u = config.fibre_universe();
    let w = config.bayer_weights()[..config.pi_var()].to_vec();
    TermOrder::block(&u, vec![OrderBlock::new((0..u.len()).collect(), BlockKind::WeightedDegRevLex(w))])
}

/// Reduced basis of `sat(⟨minors⟩, π)` in [`working_order`].
pub fn mustafin_basis<F: Field>(config: &LatticeConfig<F>) -> Result<GroebnerBasis<F>> {
    if !config.is_concrete() {
        return Err(Error::InvalidConfig("concrete entries required".into()));
    }
    let minors = minors_ideal(config)?;
    let u = config.universe();
    match saturate_by_variable(minors.generators(), &u, config.pi_var(), &config.bayer_weights()) {
        Err(Error::NotHomogeneous) => {
            let order = working_order(config)?;
            let pi = MPoly::var(&config.field, &u, config.pi_var());
            let sat = saturate_with_order(&minors, &[pi], &order)?;
            let gb = sat.groebner_basis(&order)?;
            Ok(GroebnerBasis::from_parts(gb, order, RingMode::Field))
        }
        other => other,
    }
}

/// `sat(⟨minors⟩, π)`, with its basis cached under [`working_order`].
pub fn mustafin_ideal<F: Field>(config: &LatticeConfig<F>) -> Result<Ideal<F>> {
    let gb = mustafin_basis(config)?;
    let u = config.universe();
    let elems = gb.elements().to_vec();
    Ok(Ideal::new(&config.field, &u, elems.clone())?.with_basis(gb.order(), elems))
}

/// Setting π = 0 in a basis of the saturated ideal. Valid when the basis is
/// reduced and weighted homogeneous in [`working_order`], or already contains π.
pub fn special_fibre_from_basis<F: Field>(config: &LatticeConfig<F>, basis: &[MPoly<F>]) -> Result<Ideal<F>> {
    let fu: Arc<_> = config.fibre_universe();
    let pi = config.pi_var();
    let mut gens = Vec::new();
    for g in basis {
        let terms: Vec<_> = g.terms().iter().filter(|(m, _)| m.exp(pi) == 0).cloned().collect();
        if terms.is_empty() {
            continue;
        }
        let h = MPoly::from_terms(&config.field, g.universe(), terms);
        gens.push(h.change_universe(&fu)?);
    }
    let order = fibre_order(config)?;
    Ok(Ideal::new(&config.field, &fu, gens.clone())?.with_basis(&order, gens))
}

/// Ideal of the special fibre over the residue field, in the grid variables.
/// Its cached basis (under [`fibre_order`]) is a Groebner basis.
pub fn special_fibre<F: Field>(config: &LatticeConfig<F>) -> Result<Ideal<F>> {
    fibre_of_saturated(config, &mustafin_basis(config)?)
}

/// The π = 0 fibre of a π-saturated ideal on the grid and π, given by a
/// reduced basis in a weighted order with π last.
pub(crate) fn fibre_of_saturated<F: Field>(config: &LatticeConfig<F>, gb: &GroebnerBasis<F>) -> Result<Ideal<F>> {
    let w = config.bayer_weights();
    let w = &w[..];
    let sliceable = *gb.order() == working_order(config)?
        && gb.elements().iter().all(|g| is_weighted_homogeneous(g, &pad(w, g.nvars())));
    if sliceable {
        return special_fibre_from_basis(config, gb.elements());
    }
    let u = config.universe();
    let mut gens = gb.elements().to_vec();
    gens.push(MPoly::var(&config.field, &u, config.pi_var()));
    let with_pi = buchberger(&gens, gb.order(), RingMode::Field)?;
    special_fibre_from_basis(config, with_pi.elements())
}

fn pad(w: &[u32], n: usize) -> Vec<u32> {
    let mut v = w.to_vec();
    v.resize(n, 1);
    v
}

#[cfg(test)]
mod tests;
