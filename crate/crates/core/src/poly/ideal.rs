use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::coeffs::{EuclideanRing, Ring};
use crate::error::{Error, Result};
use crate::groebner::{buchberger, RingMode};
use crate::poly::{MPoly, TermOrder, VarUniverse};

/// Generator list with a write-once Groebner basis cache.
pub struct Ideal<R: Ring> {
    ring: R,
    vars: Arc<VarUniverse>,
    gens: Vec<MPoly<R>>,
    cache: OnceLock<(TermOrder, Vec<MPoly<R>>)>,
}

impl<R: Ring> Clone for Ideal<R> {
    fn clone(&self) -> Self {
        let cache = OnceLock::new();
        if let Some(c) = self.cache.get() {
            let _ = cache.set(c.clone());
        }
        Ideal { ring: self.ring.clone(), vars: self.vars.clone(), gens: self.gens.clone(), cache }
    }
}

impl<R: Ring> fmt::Debug for Ideal<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.gens.iter().map(|g| g.to_string())).finish()
    }
}

impl<R: Ring> Ideal<R> {
    /// Zero generators are dropped. All generators must share `vars`.
    pub fn new(ring: &R, vars: &Arc<VarUniverse>, gens: Vec<MPoly<R>>) -> Result<Self> {
        for g in &gens {
            if !(Arc::ptr_eq(g.universe(), vars) || **g.universe() == **vars) {
                return Err(Error::UniverseMismatch);
            }
        }
        Ok(Ideal {
            ring: ring.clone(),
            vars: vars.clone(),
            gens: gens.into_iter().filter(|g| !g.is_zero()).collect(),
            cache: OnceLock::new(),
        })
    }

    pub fn zero(ring: &R, vars: &Arc<VarUniverse>) -> Self {
        Ideal { ring: ring.clone(), vars: vars.clone(), gens: Vec::new(), cache: OnceLock::new() }
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn universe(&self) -> &Arc<VarUniverse> {
        &self.vars
    }

    pub fn generators(&self) -> &[MPoly<R>] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn push(&mut self, g: MPoly<R>) -> Result<()> {
        if !(Arc::ptr_eq(g.universe(), &self.vars) || **g.universe() == *self.vars) {
            return Err(Error::UniverseMismatch);
        }
        if !g.is_zero() {
            self.gens.push(g);
            self.cache = OnceLock::new();
        }
        Ok(())
    }

    pub fn is_monomial(&self) -> bool {
        self.gens.iter().all(|g| g.is_monomial())
    }

    /// Cached basis, if one was computed for `order`.
    pub fn cached_basis(&self, order: &TermOrder) -> Option<&[MPoly<R>]> {
        self.cache.get().filter(|(o, _)| o == order).map(|(_, g)| g.as_slice())
    }

    /// Seeds the cache with a basis known to be a Groebner basis for `order`.
    pub fn with_basis(mut self, order: &TermOrder, gb: Vec<MPoly<R>>) -> Self {
        self.cache = OnceLock::new();
        let _ = self.cache.set((order.clone(), gb));
        self
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.gens.iter().map(|g| g.to_string()).collect()
    }
}

impl<R: EuclideanRing> Ideal<R> {
    /// Groebner basis under `order`; the first computed basis is cached.
    pub fn groebner_basis(&self, order: &TermOrder) -> Result<Vec<MPoly<R>>> {
        if let Some(g) = self.cached_basis(order) {
            return Ok(g.to_vec());
        }
        let mode = if self.ring.is_field() { RingMode::Field } else { RingMode::EuclideanRing };
        let gb = buchberger(&self.gens, order, mode)?.into_elements();
        let _ = self.cache.set((order.clone(), gb.clone()));
        Ok(gb)
    }
}
