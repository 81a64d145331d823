use serde::{Deserialize, Serialize};

use crate::coeffs::Field;
use crate::error::Result;
use crate::groebner::{hilbert_from_monomials, minimalize_monomials, monomials_of, Reducer};
use crate::poly::{grid_blocks, Ideal};

use super::{fibre_order, intersection_of_components, special_fibre, LatticeConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckMode {
    /// `∩ I_v ⊆ F` and `F ⊆ ∩ I_v`.
    BothContainments,
    /// `∩ I_v ⊆ F` only; equal Hilbert polynomials make this sufficient.
    ForwardOnly,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConjectureReport {
    pub equal: bool,
    pub mode: CheckMode,
    /// Generators of `∩ I_v` outside the fibre ideal.
    pub forward_failures: Vec<String>,
    /// Fibre generators outside `∩ I_v`.
    pub backward_failures: Vec<String>,
    pub seed: Option<u64>,
    pub field: String,
    pub fibre_generators: usize,
    pub intersection_generators: usize,
}

/// Compares the special fibre with `∩ I_v` by containments.
pub fn conjecture_check<F: Field>(config: &LatticeConfig<F>, mode: CheckMode) -> Result<ConjectureReport> {
    let fibre = special_fibre(config)?;
    check_against(config, &fibre, mode)
}

/// As [`conjecture_check`], for an already computed fibre.
pub fn check_against<F: Field>(config: &LatticeConfig<F>, fibre: &Ideal<F>, mode: CheckMode) -> Result<ConjectureReport> {
    let field = &config.field;
    let order = fibre_order(config)?;
    let basis = fibre.groebner_basis(&order)?;
    let j = intersection_of_components(field, config.d, config.n)?;
    let reducer = Reducer::new(field, &basis, &order)?;
    let mut forward = Vec::new();
    for g in j.generators() {
        let g = g.change_universe(fibre.universe())?;
        if !reducer.reduces_to_zero(&g)? {
            forward.push(g.to_string());
        }
    }
    let mut backward = Vec::new();
    if mode == CheckMode::BothContainments {
        let jm = monomials_of(&j)?;
        for g in &basis {
            if !g.terms().iter().all(|(m, _)| jm.iter().any(|k| k.divides(m))) {
                backward.push(g.to_string());
            }
        }
    }
    Ok(ConjectureReport {
        equal: forward.is_empty() && backward.is_empty(),
        mode,
        forward_failures: forward,
        backward_failures: backward,
        seed: config.seed,
        field: field_tag(field),
        fibre_generators: basis.len(),
        intersection_generators: j.generators().len(),
    })
}

pub(crate) fn field_tag<F: Field>(f: &F) -> String {
    crate::coeffs::Ring::tag(f)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HilbertReport {
    pub agree: bool,
    /// `(multidegree, fibre value, intersection value)` where they differ.
    pub mismatches: Vec<(Vec<u64>, u64, u64)>,
    pub checked: usize,
}

/// Multigraded Hilbert functions of the fibre and of `∩ I_v` on the box
/// `[0, bound]^{n+1}`.
pub fn hilbert_cross_check<F: Field>(config: &LatticeConfig<F>, fibre: &Ideal<F>, bound: u64) -> Result<HilbertReport> {
    let order = fibre_order(config)?;
    let basis = fibre.groebner_basis(&order)?;
    let lms: Vec<_> = basis
        .iter()
        .map(|g| g.leading_monomial(&order).map(|m| m.clone()))
        .collect::<Result<Vec<_>>>()?;
    let lms = minimalize_monomials(lms);
    let j = intersection_of_components(&config.field, config.d, config.n)?;
    let jm = monomials_of(&j)?;
    let blocks = grid_blocks(config.d, config.n);
    let bounds = vec![bound; config.n + 1];
    let nv = fibre.universe().len();
    let a = hilbert_from_monomials(&lms, &blocks, &bounds, nv);
    let b = hilbert_from_monomials(&jm, &blocks, &bounds, nv);
    let mismatches: Vec<_> = a
        .iter()
        .filter_map(|(k, &x)| {
            let y = b[k];
            (x != y).then(|| (k.clone(), x, y))
        })
        .collect();
    Ok(HilbertReport { agree: mismatches.is_empty(), mismatches, checked: a.len() })
}
