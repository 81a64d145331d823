use std::collections::BTreeMap;

use crate::coeffs::{EuclideanRing, Ring};
use crate::error::{Error, Result};
use crate::groebner::{buchberger, RingMode};
use crate::poly::{canonical_cmp, Ideal, MPoly, Monomial, TermOrder};

/// Monomial generators of a monomial ideal; errors on any other generator.
pub fn monomials_of<R: Ring>(ideal: &Ideal<R>) -> Result<Vec<Monomial>> {
    ideal
        .generators()
        .iter()
        .map(|g| {
            if g.is_monomial() {
                Ok(g.terms()[0].0.clone())
            } else {
                Err(Error::NotMonomial(g.to_string()))
            }
        })
        .collect()
}

/// Minimal generating set, sorted descending in the canonical order.
pub fn minimalize_monomials(mut ms: Vec<Monomial>) -> Vec<Monomial> {
    ms.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| canonical_cmp(a, b)));
    ms.dedup();
    let mut out: Vec<Monomial> = Vec::new();
    for m in ms {
        if !out.iter().any(|k| k.divides(&m)) {
            out.push(m);
        }
    }
    out.sort_by(|a, b| canonical_cmp(b, a));
    out
}

pub fn monomial_ideal_contains(gens: &[Monomial], m: &Monomial) -> bool {
    gens.iter().any(|g| g.divides(m))
}

/// Intersection of monomial ideals by pairwise lcms and minimalization.
pub fn intersect_monomial_ideals<R: Ring>(ideals: &[Ideal<R>]) -> Result<Ideal<R>> {
    let first = ideals
        .first()
        .ok_or_else(|| Error::InvalidConfig("intersection of an empty family".into()))?;
    let (ring, u) = (first.ring().clone(), first.universe().clone());
    let mut acc = minimalize_monomials(monomials_of(first)?);
    for i in &ideals[1..] {
        if **i.universe() != *u {
            return Err(Error::UniverseMismatch);
        }
        let other = minimalize_monomials(monomials_of(i)?);
        let mut next = Vec::with_capacity(acc.len() * other.len());
        for a in &acc {
            for b in &other {
                next.push(a.lcm(b));
            }
        }
        acc = minimalize_monomials(next);
    }
    let gens = acc.into_iter().map(|m| MPoly::monomial(&ring, &u, ring.one(), m)).collect();
    Ideal::new(&ring, &u, gens)
}

/// Number of monomials with the given per-block degrees outside the ideal
/// generated by `lms`.
pub fn standard_monomial_count(lms: &[Monomial], blocks: &[Vec<usize>], degrees: &[u64], nvars: usize) -> u64 {
    let mut exps = vec![0u32; nvars];
    let mut count = 0;
    fill_block(lms, blocks, degrees, 0, &mut exps, &mut count);
    count
}

fn fill_block(
    lms: &[Monomial],
    blocks: &[Vec<usize>],
    degrees: &[u64],
    b: usize,
    exps: &mut Vec<u32>,
    count: &mut u64,
) {
    if b == blocks.len() {
        let m = Monomial::from_exps(exps.clone());
        if !monomial_ideal_contains(lms, &m) {
            *count += 1;
        }
        return;
    }
    compositions(&blocks[b], 0, degrees[b], exps, &mut |exps| {
        fill_block(lms, blocks, degrees, b + 1, exps, count)
    });
}

fn compositions(
    vars: &[usize],
    k: usize,
    left: u64,
    exps: &mut Vec<u32>,
    f: &mut dyn FnMut(&mut Vec<u32>),
) {
    if k + 1 == vars.len() {
        exps[vars[k]] = left as u32;
        f(exps);
        exps[vars[k]] = 0;
        return;
    }
    for e in 0..=left {
        exps[vars[k]] = e as u32;
        compositions(vars, k + 1, left - e, exps, f);
    }
    exps[vars[k]] = 0;
}

/// Multigraded Hilbert function on the box `[0, bounds_0] × … × [0, bounds_n]`.
pub fn hilbert_function<R: EuclideanRing>(
    ideal: &Ideal<R>,
    blocks: &[Vec<usize>],
    bounds: &[u64],
) -> Result<BTreeMap<Vec<u64>, u64>> {
    if !ideal.ring().is_field() {
        return Err(Error::NotAField);
    }
    let n = ideal.universe().len();
    let mut covered = vec![false; n];
    for b in blocks {
        if b.is_empty() {
            return Err(Error::InvalidConfig("empty block".into()));
        }
        for &v in b {
            if v >= n || covered[v] {
                return Err(Error::InvalidConfig("blocks must partition the variables".into()));
            }
            covered[v] = true;
        }
    }
    if covered.iter().any(|c| !c) || bounds.len() != blocks.len() {
        return Err(Error::InvalidConfig("blocks must partition the variables".into()));
    }
    if ideal.generators().iter().any(|g| !g.is_multihomogeneous(blocks)) {
        return Err(Error::NotHomogeneous);
    }
    let lms = if ideal.is_monomial() {
        minimalize_monomials(monomials_of(ideal)?)
    } else {
        let order = TermOrder::degrevlex(ideal.universe());
        buchberger(ideal.generators(), &order, RingMode::Field)?.leading_monomials()
    };
    Ok(hilbert_from_monomials(&lms, blocks, bounds, n))
}

/// Multigraded Hilbert function of `k[x]/⟨lms⟩` on the box given by `bounds`.
pub fn hilbert_from_monomials(
    lms: &[Monomial],
    blocks: &[Vec<usize>],
    bounds: &[u64],
    n: usize,
) -> BTreeMap<Vec<u64>, u64> {
    let mut out = BTreeMap::new();
    let mut deg = vec![0u64; blocks.len()];
    loop {
        out.insert(deg.clone(), standard_monomial_count(lms, blocks, &deg, n));
        let mut k = 0;
        loop {
            if k == deg.len() {
                return out;
            }
            if deg[k] < bounds[k] {
                deg[k] += 1;
                break;
            }
            deg[k] = 0;
            k += 1;
        }
    }
}

/// Krull dimension of `k[x]/J` for the monomial ideal `J = ⟨lms⟩`: the size
/// of a largest variable set containing the support of no generator.
/// `None` when `J` is the unit ideal.
pub fn krull_dimension(lms: &[Monomial], nvars: usize) -> Option<usize> {
    if lms.iter().any(|m| m.is_one()) {
        return None;
    }
    let supports: Vec<Vec<usize>> = minimalize_monomials(lms.to_vec())
        .iter()
        .map(|m| m.support().collect())
        .collect();
    let mut chosen = vec![false; nvars];
    let mut best = 0;
    search(&supports, nvars, 0, 0, &mut chosen, &mut best);
    Some(best)
}

fn search(
    supports: &[Vec<usize>],
    nvars: usize,
    v: usize,
    size: usize,
    chosen: &mut Vec<bool>,
    best: &mut usize,
) {
    if size > *best {
        *best = size;
    }
    if v == nvars || size + (nvars - v) <= *best {
        return;
    }
    chosen[v] = true;
    let ok = !supports.iter().any(|s| s.contains(&v) && s.iter().all(|&w| chosen[w]));
    if ok {
        search(supports, nvars, v + 1, size + 1, chosen, best);
    }
    chosen[v] = false;
    search(supports, nvars, v + 1, size, chosen, best);
}
