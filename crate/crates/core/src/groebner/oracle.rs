//! Degree-bounded ideal membership by linear algebra, independent of any
//! Groebner basis computation.

use std::collections::HashMap;

use crate::coeffs::Field;
use crate::error::{Error, Result};
use crate::poly::{MPoly, Monomial};

/// All exponent vectors in `nv` variables of total degree `<= bound`.
pub fn monomials_up_to(nv: usize, bound: u64) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; nv];
    fn rec(v: usize, left: u64, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if v == cur.len() {
            out.push(Monomial::from_exps(cur.clone()));
            return;
        }
        for e in 0..=left {
            cur[v] = e as u32;
            rec(v + 1, left - e, cur, out);
        }
        cur[v] = 0;
    }
    rec(0, bound, &mut cur, &mut out);
    out
}

/// Whether `f` is a combination `Σ c_i m_i g_i` with every product of total
/// degree at most `bound`. For homogeneous generators and homogeneous `f`,
/// `bound = deg f` decides membership exactly.
pub fn bounded_membership<F: Field>(f: &MPoly<F>, gens: &[MPoly<F>], bound: u64) -> Result<bool> {
    let field = f.ring().clone();
    if f.is_zero() {
        return Ok(true);
    }
    if f.total_degree().is_some_and(|d| d > bound) {
        return Ok(false);
    }
    let nv = f.nvars();
    let cols: HashMap<Monomial, usize> =
        monomials_up_to(nv, bound).into_iter().enumerate().map(|(i, m)| (m, i)).collect();
    let ncols = cols.len();
    let dense = |p: &MPoly<F>| -> Result<Vec<F::Elem>> {
        let mut v = vec![field.zero(); ncols];
        for (m, c) in p.terms() {
            let i = *cols.get(m).ok_or_else(|| Error::InvalidConfig("term beyond the degree bound".into()))?;
            v[i] = c.clone();
        }
        Ok(v)
    };
    // echelon rows keyed by pivot column
    let mut pivots: Vec<(usize, Vec<F::Elem>)> = Vec::new();
    let reduce = |mut v: Vec<F::Elem>, pivots: &[(usize, Vec<F::Elem>)]| -> Vec<F::Elem> {
        for (p, row) in pivots {
            if field.is_zero(&v[*p]) {
                continue;
            }
            let c = v[*p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !field.is_zero(r) {
                    *x = field.sub(x, &field.mul(&c, r));
                }
            }
        }
        v
    };
    for g in gens.iter().filter(|g| !g.is_zero()) {
        let dg = g.total_degree().expect("nonzero");
        if dg > bound {
            continue;
        }
        for m in monomials_up_to(nv, bound - dg) {
            let prod = g.mul_term(&field.one(), &m)?;
            let v = reduce(dense(&prod)?, &pivots);
            if let Some(p) = v.iter().position(|x| !field.is_zero(x)) {
                let inv = field.inv(&v[p])?;
                let row: Vec<F::Elem> = v.iter().map(|x| field.mul(x, &inv)).collect();
                // keep earlier rows reduced against the new pivot
                for (_, r) in pivots.iter_mut() {
                    if !field.is_zero(&r[p]) {
                        let c = r[p].clone();
                        for (x, y) in r.iter_mut().zip(&row) {
                            *x = field.sub(x, &field.mul(&c, y));
                        }
                    }
                }
                pivots.push((p, row));
            }
        }
    }
    let rest = reduce(dense(f)?, &pivots);
    Ok(rest.iter().all(|x| field.is_zero(x)))
}
