//! Groebner bases over fields and Euclidean domains, and the ideal
//! operations built on them.

pub mod budget;
mod engine;
pub(crate) mod ideal_ops;
mod monomial_ideals;
pub mod oracle;

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::coeffs::{EuclideanRing, Ring};
use crate::error::{Error, Result};
use crate::poly::{Ideal, MPoly, Monomial, TermOrder};

pub use ideal_ops::{
    eliminate, is_weighted_homogeneous, radical_membership, saturate, saturate_by_variable,
    saturate_with_order,
};
pub use monomial_ideals::{
    hilbert_from_monomials, hilbert_function, intersect_monomial_ideals, krull_dimension, minimalize_monomials,
    monomial_ideal_contains, monomials_of, standard_monomial_count,
};

use engine::{Space, Terms};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RingMode {
    Field,
    EuclideanRing,
}

/// A Groebner basis together with the order and engine mode that produced it.
#[derive(Clone, Debug)]
pub struct GroebnerBasis<R: Ring> {
    elements: Vec<MPoly<R>>,
    order: TermOrder,
    mode: RingMode,
}

impl<R: Ring> GroebnerBasis<R> {
    pub(crate) fn from_parts(elements: Vec<MPoly<R>>, order: TermOrder, mode: RingMode) -> Self {
        GroebnerBasis { elements, order, mode }
    }

    pub fn elements(&self) -> &[MPoly<R>] {
        &self.elements
    }

    pub fn into_elements(self) -> Vec<MPoly<R>> {
        self.elements
    }

    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    pub fn mode(&self) -> RingMode {
        self.mode
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elements
            .iter()
            .map(|g| g.leading_monomial(&self.order).expect("basis elements are nonzero").clone())
            .collect()
    }

    /// Whether the basis contains a unit, i.e. generates the whole ring.
    pub fn is_unit_ideal(&self) -> bool {
        self.elements.iter().any(|g| g.is_constant() && g.ring().is_unit(&g.constant_term()))
    }
}

fn check_inputs<R: Ring>(gens: &[MPoly<R>], order: &TermOrder) -> Result<()> {
    for g in gens {
        if !(Arc::ptr_eq(g.universe(), order.universe()) || **g.universe() == **order.universe()) {
            return Err(Error::UniverseMismatch);
        }
    }
    Ok(())
}

fn import_all<R: EuclideanRing>(space: &Space, gens: &[MPoly<R>]) -> Result<Vec<Terms<R::Elem>>> {
    gens.iter().filter(|g| !g.is_zero()).map(|g| space.import(g)).collect()
}

/// Groebner basis of the ideal generated by `gens`.
///
/// Field mode returns the reduced monic basis. Ring mode returns a strong
/// basis, minimal in the sense that no element's leading term is a multiple
/// of another's.
pub fn buchberger<R: EuclideanRing>(
    gens: &[MPoly<R>],
    order: &TermOrder,
    mode: RingMode,
) -> Result<GroebnerBasis<R>> {
    check_inputs(gens, order)?;
    let ring = match gens.first() {
        Some(g) => g.ring().clone(),
        None => return Ok(GroebnerBasis { elements: Vec::new(), order: order.clone(), mode }),
    };
    if mode == RingMode::Field && !ring.is_field() {
        return Err(Error::NotAField);
    }
    let space = Space::new(order);
    let input = import_all(&space, gens)?;
    let out = match mode {
        RingMode::Field => engine::gb_field(&ring, &space, input)?,
        RingMode::EuclideanRing => engine::gb_ring(&ring, &space, input)?,
    };
    let elements = out.iter().map(|t| space.export(&ring, t)).collect();
    Ok(GroebnerBasis { elements, order: order.clone(), mode })
}

/// Mode matching the coefficient domain.
pub fn default_mode<R: Ring>(ring: &R) -> RingMode {
    if ring.is_field() {
        RingMode::Field
    } else {
        RingMode::EuclideanRing
    }
}

/// One recorded reduction step `h = f - Σ c_j q_j f_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct TraceStep<R: Ring> {
    pub reducers: Vec<usize>,
    pub coeffs: Vec<R::Elem>,
    pub quotients: Vec<Monomial>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReductionTrace<R: Ring> {
    pub steps: Vec<TraceStep<R>>,
}

impl<R: Ring> ReductionTrace<R> {
    /// Recomputes the remainder from `f` and the basis the trace was taken against.
    pub fn replay(&self, f: &MPoly<R>, basis: &[MPoly<R>]) -> Result<MPoly<R>> {
        let mut h = f.clone();
        for s in &self.steps {
            for k in 0..s.reducers.len() {
                let g = basis.get(s.reducers[k]).ok_or(Error::UniverseMismatch)?;
                h = &h - &g.mul_term(&s.coeffs[k], &s.quotients[k])?;
            }
        }
        Ok(h)
    }

    /// Intermediate polynomials after each step, starting with `f`.
    pub fn intermediates(&self, f: &MPoly<R>, basis: &[MPoly<R>]) -> Result<Vec<MPoly<R>>> {
        let mut out = vec![f.clone()];
        let mut h = f.clone();
        for s in &self.steps {
            for k in 0..s.reducers.len() {
                let g = basis.get(s.reducers[k]).ok_or(Error::UniverseMismatch)?;
                h = &h - &g.mul_term(&s.coeffs[k], &s.quotients[k])?;
            }
            out.push(h.clone());
        }
        Ok(out)
    }
}

fn export_step<R: EuclideanRing>(space: &Space, s: engine::Step<R::Elem>) -> TraceStep<R> {
    TraceStep {
        reducers: s.js,
        coeffs: s.cs,
        quotients: s.qs.iter().map(|q| space.to_monomial(q)).collect(),
    }
}

fn nonzero_basis<R: Ring>(basis: &[MPoly<R>]) -> Result<()> {
    if basis.iter().any(|g| g.is_zero()) {
        Err(Error::ZeroPolynomial)
    } else {
        Ok(())
    }
}

/// Reduces the leading term of `f` once, if some reducer set allows it.
pub fn reduce_one_step<R: EuclideanRing>(
    f: &MPoly<R>,
    basis: &[MPoly<R>],
    order: &TermOrder,
) -> Result<Option<(MPoly<R>, TraceStep<R>)>> {
    check_inputs(std::slice::from_ref(f), order)?;
    check_inputs(basis, order)?;
    nonzero_basis(basis)?;
    if f.is_zero() {
        return Ok(None);
    }
    let space = Space::new(order);
    let b = import_all(&space, basis)?;
    let ft = space.import(f)?;
    let cands: Vec<usize> = (0..b.len()).collect();
    let ring = f.ring();
    match engine::find_step(ring, &ft[0].0, &ft[0].1, &b, &cands, false) {
        None => Ok(None),
        Some(step) => {
            let h = engine::apply_step(ring, &ft, &step, &b)?;
            Ok(Some((space.export(ring, &h), export_step(&space, step))))
        }
    }
}

/// Full normal form of `f` with its reduction trace.
pub fn normal_form<R: EuclideanRing>(
    f: &MPoly<R>,
    basis: &[MPoly<R>],
    order: &TermOrder,
) -> Result<(MPoly<R>, ReductionTrace<R>)> {
    check_inputs(std::slice::from_ref(f), order)?;
    check_inputs(basis, order)?;
    nonzero_basis(basis)?;
    let space = Space::new(order);
    let b = import_all(&space, basis)?;
    let cands: Vec<usize> = (0..b.len()).collect();
    let mut steps = Vec::new();
    let ring = f.ring();
    let h = engine::normal_form(ring, &space, space.import(f)?, &b, &cands, true, false, Some(&mut steps), None)?;
    let steps = steps.into_iter().map(|s| export_step(&space, s)).collect();
    Ok((space.export(ring, &h), ReductionTrace { steps }))
}

/// A basis prepared once for many normal-form computations.
pub struct Reducer<R: EuclideanRing> {
    ring: R,
    space: Space,
    basis: Vec<Terms<R::Elem>>,
    cands: Vec<usize>,
    order: TermOrder,
}

impl<R: EuclideanRing> Reducer<R> {
    pub fn new(ring: &R, basis: &[MPoly<R>], order: &TermOrder) -> Result<Self> {
        check_inputs(basis, order)?;
        let space = Space::new(order);
        let b = import_all(&space, basis)?;
        let cands = (0..b.len()).collect();
        Ok(Reducer { ring: ring.clone(), space, basis: b, cands, order: order.clone() })
    }

    pub fn reduce(&self, f: &MPoly<R>) -> Result<MPoly<R>> {
        check_inputs(std::slice::from_ref(f), &self.order)?;
        let h = engine::normal_form(
            &self.ring,
            &self.space,
            self.space.import(f)?,
            &self.basis,
            &self.cands,
            true,
            false,
            None,
            None,
        )?;
        Ok(self.space.export(&self.ring, &h))
    }

    pub fn reduces_to_zero(&self, f: &MPoly<R>) -> Result<bool> {
        check_inputs(std::slice::from_ref(f), &self.order)?;
        let h = engine::normal_form(
            &self.ring,
            &self.space,
            self.space.import(f)?,
            &self.basis,
            &self.cands,
            false,
            false,
            None,
            None,
        )?;
        Ok(h.is_empty())
    }
}

/// A pair combination that failed to reduce to zero.
#[derive(Clone, Debug)]
pub struct Witness<R: Ring> {
    pub pair: (usize, usize),
    pub combination: MPoly<R>,
    pub remainder: MPoly<R>,
}

#[derive(Clone, Debug)]
pub struct GroebnerCheck<R: Ring> {
    pub is_groebner: bool,
    pub witness: Option<Witness<R>>,
}

/// Checks the pairwise S-combinations, which generate the syzygies of the
/// leading terms over a field or a Euclidean domain.
pub fn is_groebner<R: EuclideanRing>(
    g: &[MPoly<R>],
    order: &TermOrder,
    mode: RingMode,
) -> Result<GroebnerCheck<R>> {
    check_inputs(g, order)?;
    nonzero_basis(g)?;
    let ring = match g.first() {
        Some(x) => x.ring().clone(),
        None => return Ok(GroebnerCheck { is_groebner: true, witness: None }),
    };
    if mode == RingMode::Field && !ring.is_field() {
        return Err(Error::NotAField);
    }
    let space = Space::new(order);
    let b = import_all(&space, g)?;
    let cands: Vec<usize> = (0..b.len()).collect();
    for j in 0..b.len() {
        for i in 0..j {
            budget::check_time()?;
            let (fi, fj) = (&b[i], &b[j]);
            if mode == RingMode::Field && fi[0].0.coprime(&fj[0].0) {
                continue;
            }
            let l = space.lcm(&fi[0].0, &fj[0].0);
            let (li, lj) = (&fi[0].1, &fj[0].1);
            let a = ring.lcm(li, lj);
            let ci = ring.divide_exact(&a, li).expect("lcm is a multiple");
            let cj = ring.divide_exact(&a, lj).expect("lcm is a multiple");
            let s = engine::mul_term(&ring, &fi[1..], &ci, &l.div(&fi[0].0))?;
            let s = engine::merge_sub(&ring, &s, &cj, &l.div(&fj[0].0), &fj[1..])?;
            let h = engine::normal_form(&ring, &space, s.clone(), &b, &cands, false, false, None, None)?;
            if !h.is_empty() {
                let h = engine::normal_form(&ring, &space, s.clone(), &b, &cands, true, false, None, None)?;
                return Ok(GroebnerCheck {
                    is_groebner: false,
                    witness: Some(Witness {
                        pair: (i, j),
                        combination: space.export(&ring, &s),
                        remainder: space.export(&ring, &h),
                    }),
                });
            }
        }
    }
    Ok(GroebnerCheck { is_groebner: true, witness: None })
}

/// Membership via the normal form against a Groebner basis of `ideal`.
pub fn ideal_membership<R: EuclideanRing>(
    f: &MPoly<R>,
    ideal: &Ideal<R>,
    order: &TermOrder,
) -> Result<bool> {
    let gb = ideal.groebner_basis(order)?;
    Reducer::new(ideal.ring(), &gb, order)?.reduces_to_zero(f)
}

#[cfg(test)]
mod tests;
