//! The substitution map `Υ_i`, the source condition `Σ_i`, and the
//! admissibility certificate built from explicit witnesses.
//!
//! Images of `Υ_i` live in [`y_universe`]: `y1..yd` are the coordinates of
//! the ambient projective space and `pi` is the uniformizer.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::coeffs::Field;
use crate::degeneration::{y_universe, SubvarietyInput};
use crate::error::{Error, Result};
use crate::groebner::{buchberger, RingMode};
use crate::linalg::{adjugate_poly, det_poly};
use crate::mustafin::{build_g, LatticeConfig};
use crate::poly::{grid_blocks, grid_name, parse_poly, BlockKind, MPoly, Monomial, OrderBlock, TermOrder, VarUniverse};

/// Witness data: `rho`, degrees `d_0..d_n` and one polynomial `F_i` per
/// block, of degree `rho - d_j` in every block `j != i` and 0 in block `i`.
#[derive(Clone, Debug, PartialEq)]
pub struct SyzygyDatum<F: Field> {
    pub rho: u32,
    pub degrees: Vec<u32>,
    pub witnesses: Vec<MPoly<F>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SyzygyStrings {
    pub rho: u32,
    pub degrees: Vec<u32>,
    pub witnesses: Vec<String>,
}

impl<F: Field> SyzygyDatum<F> {
    /// Witnesses parsed in the grid-and-π universe of `config`; the degree
    /// profile is validated.
    pub fn parse(config: &LatticeConfig<F>, s: &SyzygyStrings) -> Result<Self> {
        let u = config.universe();
        let witnesses = s.witnesses.iter().map(|t| parse_poly(&config.field, &u, t)).collect::<Result<Vec<_>>>()?;
        let d = SyzygyDatum { rho: s.rho, degrees: s.degrees.clone(), witnesses };
        d.validate(config.n)?;
        Ok(d)
    }

    pub fn to_strings(&self) -> SyzygyStrings {
        SyzygyStrings {
            rho: self.rho,
            degrees: self.degrees.clone(),
            witnesses: self.witnesses.iter().map(|w| w.to_string()).collect(),
        }
    }

    fn validate(&self, n: usize) -> Result<()> {
        if self.rho == 0 {
            return Err(Error::DegreeProfile("rho must be positive".into()));
        }
        if self.degrees.len() != n + 1 || self.witnesses.len() != n + 1 {
            return Err(Error::DegreeProfile(format!("expected {} degrees and witnesses", n + 1)));
        }
        if let Some(i) = self.degrees.iter().position(|&di| di > self.rho) {
            return Err(Error::DegreeProfile(format!("d_{i} exceeds rho")));
        }
        let total: u64 = self.degrees.iter().map(|&x| x as u64).sum();
        if total != n as u64 * self.rho as u64 {
            return Err(Error::DegreeProfile(format!("degrees sum to {total}, expected {}", n as u64 * self.rho as u64)));
        }
        Ok(())
    }

    /// Block degrees `F_i` must have.
    pub fn profile(&self, i: usize) -> Vec<u64> {
        self.degrees
            .iter()
            .enumerate()
            .map(|(j, &dj)| if j == i { 0 } else { (self.rho - dj) as u64 })
            .collect()
    }
}

/// An element `π^pi_exponent · numerator / unit` of `K[y1..yd]`, where
/// `unit` is a polynomial in π with nonzero constant term and `numerator`
/// is not divisible by π.
#[derive(Clone, Debug, PartialEq)]
pub struct KForm<F: Field> {
    pub numerator: MPoly<F>,
    pub pi_exponent: i64,
    pub unit: MPoly<F>,
}

impl<F: Field> KForm<F> {
    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    /// Degree in `y`, if homogeneous.
    pub fn degree(&self) -> Option<u64> {
        let u = self.numerator.universe();
        let ys: Vec<usize> = (0..u.len()).filter(|&v| u.name(v) != "pi").collect();
        self.numerator.multidegree(&[ys]).map(|v| v[0])
    }
}

impl<F: Field> fmt::Display for KForm<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut head = format!("({})", self.numerator);
        if self.pi_exponent != 0 {
            head = format!("pi^{} * {head}", self.pi_exponent);
        }
        if !self.unit.is_constant() {
            head = format!("{head} / ({})", self.unit);
        }
        write!(f, "{head}")
    }
}

fn pi_content<F: Field>(f: &MPoly<F>, pi: Option<usize>) -> u32 {
    match pi {
        Some(p) => f.terms().iter().map(|(m, _)| m.exp(p)).min().unwrap_or(0),
        None => 0,
    }
}

fn strip_pi<F: Field>(f: &MPoly<F>, pi: usize) -> (u32, MPoly<F>) {
    let c = pi_content(f, Some(pi));
    let m = Monomial::var(f.nvars(), pi, c);
    (c, f.divide_monomial(&m).expect("content divides"))
}

/// `Υ_i(F)`: every block-`j` vector `x_{·j}` replaced by `g_j^{-1}·y`.
pub fn upsilon<F: Field>(f: &MPoly<F>, i: usize, config: &LatticeConfig<F>) -> Result<KForm<F>> {
    if !config.is_concrete() {
        return Err(Error::InvalidConfig("concrete entries required".into()));
    }
    let (d, n) = (config.d, config.n);
    if i > n {
        return Err(Error::InvalidConfig(format!("block index {i} out of range")));
    }
    let fu = f.universe().clone();
    let blocks = block_indices(&fu, d, n)?;
    let degs = f
        .multidegree(&blocks)
        .ok_or_else(|| Error::DegreeProfile("witness is not multihomogeneous in the grid blocks".into()))?;
    if degs[i] != 0 {
        return Err(Error::DegreeProfile(format!("witness has degree {} in its own block {i}", degs[i])));
    }
    let target = y_universe(d);
    let field = &config.field;
    let pi = target.require("pi")?;
    let mut images = HashMap::new();
    let mut shift = 0i64;
    let mut unit = MPoly::one(field, &target);
    for (j, g) in build_g(config).into_iter().enumerate() {
        let g: Vec<Vec<MPoly<F>>> =
            g.iter().map(|r| r.iter().map(|c| c.change_universe(&target)).collect()).collect::<Result<_>>()?;
        let det = det_poly(&g)?;
        if det.is_zero() {
            return Err(Error::Singular(format!("g_{j} is not invertible")));
        }
        let adj = adjugate_poly(&g)?;
        for c in 0..d {
            if let Some(v) = fu.index_of(&grid_name(c + 1, j)) {
                let mut img = MPoly::zero(field, &target);
                for (k, a) in adj[c].iter().enumerate() {
                    img = &img + &(a * &MPoly::var(field, &target, k));
                }
                images.insert(v, img);
            }
        }
        if degs[j] > 0 {
            let (k, u) = strip_pi(&det, pi);
            shift -= k as i64 * degs[j] as i64;
            unit = unit.checked_mul(&u.pow(degs[j] as u32)?)?;
        }
    }
    let num = f.substitute_into(&target, &images)?;
    if num.is_zero() {
        return Ok(KForm { numerator: num, pi_exponent: 0, unit: MPoly::one(field, &target) });
    }
    let (c, mut num) = strip_pi(&num, pi);
    if unit.is_constant() {
        num = num.scale(&field.inv(&unit.constant_term())?);
        unit = MPoly::one(field, &target);
    }
    Ok(KForm { numerator: num, pi_exponent: shift + c as i64, unit })
}

/// Grid blocks of `u` located by name.
fn block_indices(u: &Arc<VarUniverse>, d: usize, n: usize) -> Result<Vec<Vec<usize>>> {
    let found: Vec<Vec<usize>> =
        (0..=n).map(|j| (1..=d).filter_map(|c| u.index_of(&grid_name(c, j))).collect()).collect();
    if found.iter().any(|b| b.len() != d) {
        return Err(Error::InvalidConfig("witness universe lacks grid variables".into()));
    }
    Ok(found)
}

/// Whether `F` lies in `Σ_i`: after removing its π-content and reducing mod
/// π, some term uses only the last variables `x_{dj}`, `j != i`.
pub fn sigma_membership<F: Field>(f: &MPoly<F>, i: usize, d: usize, n: usize) -> bool {
    let u = f.universe();
    let pi = u.index_of("pi");
    let c = pi_content(f, pi);
    let allowed: Vec<usize> = (0..=n).filter(|&j| j != i).filter_map(|j| u.index_of(&grid_name(d, j))).collect();
    f.terms().iter().any(|(m, _)| {
        pi.is_none_or(|p| m.exp(p) == c) && m.support().all(|v| Some(v) == pi || allowed.contains(&v))
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct Admissibility<F: Field> {
    pub admissible: bool,
    pub memberships: Vec<bool>,
    pub forms: Vec<KForm<F>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdmissibilityReport {
    pub admissible: bool,
    pub memberships: Vec<bool>,
    pub forms: Vec<String>,
    pub degrees: Vec<Option<u64>>,
}

impl<F: Field> Admissibility<F> {
    pub fn report(&self) -> AdmissibilityReport {
        AdmissibilityReport {
            admissible: self.admissible,
            memberships: self.memberships.clone(),
            forms: self.forms.iter().map(|f| f.to_string()).collect(),
            degrees: self.forms.iter().map(|f| f.degree()).collect(),
        }
    }
}

/// Checks `F_i ∈ Σ_i` for every witness and returns `f_i = Υ_i(F_i)`.
pub fn admissibility_certificate<F: Field>(data: &SyzygyDatum<F>, config: &LatticeConfig<F>) -> Result<Admissibility<F>> {
    data.validate(config.n)?;
    let blocks = grid_blocks(config.d, config.n);
    let mut memberships = Vec::with_capacity(config.n + 1);
    let mut forms = Vec::with_capacity(config.n + 1);
    for (i, w) in data.witnesses.iter().enumerate() {
        let w = w.change_universe(&config.universe())?;
        if !w.is_zero() && w.multidegree(&blocks).as_deref() != Some(&data.profile(i)[..]) {
            return Err(Error::DegreeProfile(format!("witness {i} does not have block degrees {:?}", data.profile(i))));
        }
        memberships.push(sigma_membership(&w, i, config.d, config.n));
        forms.push(upsilon(&w, i, config)?);
    }
    Ok(Admissibility { admissible: memberships.iter().all(|&b| b), memberships, forms })
}

/// Whether `X ⊂ ⋃ D₊(f_i)` over `K`: for every `y_k`, the ideal
/// `I′ + ⟨f⟩ + ⟨1 - t·y_k⟩` contains a nonzero polynomial in π alone.
pub fn curve_cover_check<F: Field>(x: &SubvarietyInput<F>, f: &[MPoly<F>]) -> Result<bool> {
    let base = y_universe(x.d);
    let t = base.fresh_names("t", 1);
    let big = base.extend(&t)?;
    let pi = base.require("pi")?;
    let tv = base.len();
    let mut gens = Vec::new();
    for g in x.gens.iter().chain(f) {
        gens.push(g.change_universe(&big)?);
    }
    let upper: Vec<usize> = (0..big.len()).filter(|&v| v != pi).collect();
    let order = TermOrder::block(
        &big,
        vec![OrderBlock::new(upper, BlockKind::DegRevLex), OrderBlock::new(vec![pi], BlockKind::DegRevLex)],
    )?;
    let field = &x.field;
    for k in 0..x.d {
        let mut all = gens.clone();
        let ty = MPoly::var(field, &big, tv).checked_mul(&MPoly::var(field, &big, k))?;
        all.push(&MPoly::one(field, &big) - &ty);
        let gb = buchberger(&all, &order, RingMode::Field)?;
        if !gb.elements().iter().any(|g| g.support_vars().iter().all(|&v| v == pi)) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests;
