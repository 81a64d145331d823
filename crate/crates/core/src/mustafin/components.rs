use serde::{Deserialize, Serialize};

use crate::coeffs::Ring;
use crate::error::{Error, Result};
use crate::groebner::{intersect_monomial_ideals, minimalize_monomials, monomial_ideal_contains, monomials_of};
use crate::poly::{grid_index, Ideal, MPoly, Monomial, VarUniverse};

/// Index vector `v` of a conjectural fibre component: `0 <= v_i <= d-1`
/// and `Σ v_i = n(d-1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ComponentVector(pub Vec<usize>);

impl ComponentVector {
    pub fn new(d: usize, v: Vec<usize>) -> Result<Self> {
        let n = v.len().checked_sub(1).ok_or_else(|| Error::InvalidConfig("empty component vector".into()))?;
        if v.iter().any(|&x| x >= d) || v.iter().sum::<usize>() != n * (d - 1) {
            return Err(Error::InvalidConfig(format!("{v:?} is not a component vector for d = {d}")));
        }
        Ok(ComponentVector(v))
    }

    pub fn n(&self) -> usize {
        self.0.len() - 1
    }
}

/// All component vectors for `(d, n)` in descending lexicographic order.
pub fn component_vectors(d: usize, n: usize) -> Vec<ComponentVector> {
    let total = n * (d - 1);
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n + 1);
    fill(d, n + 1, total, &mut cur, &mut out);
    out
}

fn fill(d: usize, slots: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<ComponentVector>) {
    if cur.len() == slots {
        if left == 0 {
            out.push(ComponentVector(cur.clone()));
        }
        return;
    }
    let rest = slots - cur.len() - 1;
    for x in (0..d.min(left + 1)).rev() {
        if left - x > rest * (d - 1) {
            continue;
        }
        cur.push(x);
        fill(d, slots, left - x, cur, out);
        cur.pop();
    }
}

/// `I_v = ⟨x_{ij} : i <= v_j⟩` in the grid universe of `(d, n)`.
pub fn ideal_iv<R: Ring>(ring: &R, v: &ComponentVector, d: usize) -> Ideal<R> {
    let n = v.n();
    let u = VarUniverse::grid(d, n, &[]).expect("grid names are distinct");
    let gens = v
        .0
        .iter()
        .enumerate()
        .flat_map(|(j, &vj)| (1..=vj).map(move |i| grid_index(d, i, j)))
        .map(|k| MPoly::var(ring, &u, k))
        .collect();
    Ideal::new(ring, &u, gens).expect("same universe")
}

/// `∩ I_v` over all component vectors of `(d, n)`.
pub fn intersection_of_components<R: Ring>(ring: &R, d: usize, n: usize) -> Result<Ideal<R>> {
    let ideals: Vec<_> = component_vectors(d, n).iter().map(|v| ideal_iv(ring, v, d)).collect();
    intersect_monomial_ideals(&ideals)
}

/// Indices `j` where `v_j < d-1`, and their number.
pub fn component_length(v: &ComponentVector, d: usize) -> (Vec<usize>, usize) {
    let s: Vec<usize> = v.0.iter().enumerate().filter(|(_, &x)| x < d - 1).map(|(j, _)| j).collect();
    let l = s.len();
    (s, l)
}

pub fn primary_flag(v: &ComponentVector) -> bool {
    v.0.contains(&0)
}

pub fn star_flag(v: &ComponentVector, d: usize) -> bool {
    v.0.contains(&(d - 1))
}

/// The explicit generator families for `d = 4`, `n = 3`, listed with
/// ordered index tuples (so the `x_{2i}x_{3j}x_{3l}` family repeats each
/// monomial twice).
pub fn expected_fibre_d4<R: Ring>(ring: &R, n: usize) -> Result<Ideal<R>> {
    if n != 3 {
        return Err(Error::InvalidConfig("the explicit d = 4 fibre is stated for n = 3".into()));
    }
    let d = 4;
    let u = VarUniverse::grid(d, n, &[])?;
    let nv = u.len();
    let x = |i: usize, j: usize| Monomial::var(nv, grid_index(d, i, j), 1);
    let mut ms: Vec<Monomial> = Vec::new();
    for (a, b) in [(1, 1), (2, 2)] {
        for i in 0..4 {
            for j in i + 1..4 {
                ms.push(x(a, i).mul(&x(b, j)));
            }
        }
    }
    for (a, b) in [(1, 2), (1, 3)] {
        for i in 0..4 {
            for j in 0..4 {
                if i != j {
                    ms.push(x(a, i).mul(&x(b, j)));
                }
            }
        }
    }
    for i in 0..4 {
        for j in 0..4 {
            for l in 0..4 {
                if i != j && j != l && i != l {
                    ms.push(x(2, i).mul(&x(3, j)).mul(&x(3, l)));
                }
            }
        }
    }
    ms.push((0..4).fold(Monomial::one(nv), |m, j| m.mul(&x(3, j))));
    let gens = ms.into_iter().map(|m| MPoly::monomial(ring, &u, ring.one(), m)).collect();
    Ideal::new(ring, &u, gens)
}

/// Stability of a monomial ideal under the moves `x_{ij} -> x_{i'j}`, `i' < i`,
/// within each column block.
pub fn borel_fixed_check<R: Ring>(ideal: &Ideal<R>, d: usize, n: usize) -> Result<bool> {
    let nv = ideal.universe().len();
    if nv < d * (n + 1) {
        return Err(Error::InvalidConfig("ideal does not live on the grid".into()));
    }
    let gens = minimalize_monomials(monomials_of(ideal)?);
    for m in &gens {
        for j in 0..=n {
            for i in 2..=d {
                let v = grid_index(d, i, j);
                if m.exp(v) == 0 {
                    continue;
                }
                let without = m.div(&Monomial::var(nv, v, 1)).expect("variable divides");
                for i2 in 1..i {
                    let moved = without.mul(&Monomial::var(nv, grid_index(d, i2, j), 1));
                    if !monomial_ideal_contains(&gens, &moved) {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}
