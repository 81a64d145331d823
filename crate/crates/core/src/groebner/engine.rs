//! Internal representation and the Buchberger loops.
//!
//! A monomial is stored as its order key followed by its exponents, so a
//! product is an elementwise sum and comparison is a slice comparison of the
//! key half. Polynomials are term vectors sorted descending.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::sync::Arc;

use crate::coeffs::EuclideanRing;
use crate::error::{Error, Result};
use crate::groebner::budget;
use crate::poly::{BlockKind, MPoly, Monomial, TermOrder, VarUniverse};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct IM {
    d: Box<[i32]>,
    mask: u64,
}

impl IM {
    #[inline]
    fn n(&self) -> usize {
        self.d.len() / 2
    }

    #[inline]
    pub fn key(&self) -> &[i32] {
        &self.d[..self.n()]
    }

    #[inline]
    pub fn exps(&self) -> &[i32] {
        &self.d[self.n()..]
    }

    #[inline]
    pub fn cmp_order(&self, o: &IM) -> Ordering {
        self.key().cmp(o.key())
    }

    pub fn mul(&self, o: &IM) -> Result<IM> {
        let mut d = Vec::with_capacity(self.d.len());
        for (a, b) in self.d.iter().zip(o.d.iter()) {
            d.push(a.checked_add(*b).ok_or(Error::ExponentOverflow)?);
        }
        Ok(IM { d: d.into_boxed_slice(), mask: self.mask | o.mask })
    }

    #[inline]
    pub fn divides(&self, o: &IM) -> bool {
        if self.mask & !o.mask != 0 {
            return false;
        }
        self.exps().iter().zip(o.exps()).all(|(a, b)| a <= b)
    }

    /// `self / o`, assuming `o` divides `self`.
    pub fn div(&self, o: &IM) -> IM {
        let d: Box<[i32]> = self.d.iter().zip(o.d.iter()).map(|(a, b)| a - b).collect();
        let n = d.len() / 2;
        let mask = mask_of(&d[n..]);
        IM { d, mask }
    }

    pub fn coprime(&self, o: &IM) -> bool {
        self.exps().iter().zip(o.exps()).all(|(a, b)| *a == 0 || *b == 0)
    }
}

fn mask_of(exps: &[i32]) -> u64 {
    let mut m = 0u64;
    for (i, &e) in exps.iter().enumerate() {
        if e > 0 {
            m |= 1 << (i % 64);
        }
    }
    m
}

pub(crate) type Terms<E> = Vec<(IM, E)>;

/// Order data shared by the engine routines.
pub(crate) struct Space {
    universe: Arc<VarUniverse>,
    rows: Vec<Vec<(usize, i64)>>,
    sugar_w: Vec<i64>,
}

impl Space {
    pub fn new(order: &TermOrder) -> Space {
        let n = order.nvars();
        let mut sugar_w = vec![1i64; n];
        if let Some(b) = order.blocks().first() {
            if b.vars.len() == n {
                if let BlockKind::WeightedDegRevLex(w) = &b.kind {
                    for (&v, &x) in b.vars.iter().zip(w) {
                        sugar_w[v] = x as i64;
                    }
                }
            }
        }
        Space { universe: order.universe().clone(), rows: order.rows().to_vec(), sugar_w }
    }

    fn from_exps_i64(&self, exps: &[i64]) -> Result<IM> {
        let n = exps.len();
        let mut d = Vec::with_capacity(2 * n);
        for r in &self.rows {
            let k: i64 = r.iter().map(|&(v, w)| w * exps[v]).sum();
            d.push(i32::try_from(k).map_err(|_| Error::ExponentOverflow)?);
        }
        for &e in exps {
            d.push(i32::try_from(e).map_err(|_| Error::ExponentOverflow)?);
        }
        let mask = mask_of(&d[n..]);
        Ok(IM { d: d.into_boxed_slice(), mask })
    }

    pub fn mono(&self, m: &Monomial) -> Result<IM> {
        let e: Vec<i64> = m.exps().iter().map(|&x| x as i64).collect();
        self.from_exps_i64(&e)
    }

    pub fn lcm(&self, a: &IM, b: &IM) -> IM {
        let e: Vec<i64> =
            a.exps().iter().zip(b.exps()).map(|(x, y)| *x.max(y) as i64).collect();
        self.from_exps_i64(&e).expect("lcm of representable monomials is representable")
    }

    pub fn to_monomial(&self, m: &IM) -> Monomial {
        Monomial::from_exps(m.exps().iter().map(|&e| e as u32).collect())
    }

    pub fn sugar_deg(&self, m: &IM) -> i64 {
        m.exps().iter().zip(&self.sugar_w).map(|(&e, &w)| e as i64 * w).sum()
    }

    pub fn import<R: EuclideanRing>(&self, f: &MPoly<R>) -> Result<Terms<R::Elem>> {
        let mut t = f
            .terms()
            .iter()
            .map(|(m, c)| Ok((self.mono(m)?, c.clone())))
            .collect::<Result<Vec<_>>>()?;
        t.sort_by(|a, b| b.0.cmp_order(&a.0));
        Ok(t)
    }

    pub fn export<R: EuclideanRing>(&self, ring: &R, t: &[(IM, R::Elem)]) -> MPoly<R> {
        MPoly::from_terms(
            ring,
            &self.universe,
            t.iter().map(|(m, c)| (self.to_monomial(m), c.clone())),
        )
    }

    pub fn format_mono(&self, m: &IM) -> String {
        let s = MPoly::monomial(
            &crate::coeffs::Integers,
            &self.universe,
            1.into(),
            self.to_monomial(m),
        )
        .to_string();
        s
    }
}

/// `a - c * q * g`.
pub(crate) fn merge_sub<R: EuclideanRing>(
    ring: &R,
    a: &[(IM, R::Elem)],
    c: &R::Elem,
    q: &IM,
    g: &[(IM, R::Elem)],
) -> Result<Terms<R::Elem>> {
    let mut out = Vec::with_capacity(a.len() + g.len());
    let mut i = 0;
    let mut gi = g.iter();
    let next = |gi: &mut std::slice::Iter<'_, (IM, R::Elem)>| -> Result<Option<(IM, R::Elem)>> {
        match gi.next() {
            None => Ok(None),
            Some((m, x)) => Ok(Some((m.mul(q)?, ring.mul(c, x)))),
        }
    };
    let mut cur = next(&mut gi)?;
    while let Some((pm, pc)) = cur.take() {
        while i < a.len() && a[i].0.cmp_order(&pm) == Ordering::Greater {
            out.push(a[i].clone());
            i += 1;
        }
        if i < a.len() && a[i].0.cmp_order(&pm) == Ordering::Equal {
            let v = ring.sub(&a[i].1, &pc);
            if !ring.is_zero(&v) {
                out.push((pm, v));
            }
            i += 1;
        } else if !ring.is_zero(&pc) {
            out.push((pm, ring.neg(&pc)));
        }
        cur = next(&mut gi)?;
    }
    out.extend_from_slice(&a[i..]);
    Ok(out)
}

pub(crate) fn mul_term<R: EuclideanRing>(
    ring: &R,
    f: &[(IM, R::Elem)],
    c: &R::Elem,
    q: &IM,
) -> Result<Terms<R::Elem>> {
    let mut out = Vec::with_capacity(f.len());
    for (m, x) in f {
        let y = ring.mul(c, x);
        if !ring.is_zero(&y) {
            out.push((m.mul(q)?, y));
        }
    }
    Ok(out)
}

/// One weak reduction step: reducer indices, cofactors and quotient monomials.
#[derive(Clone, Debug)]
pub(crate) struct Step<E> {
    pub js: Vec<usize>,
    pub cs: Vec<E>,
    pub qs: Vec<IM>,
}

/// Greedy reducer set for the term `c*m`: scan `cands` in order, accumulating
/// the gcd of leading coefficients until it divides `c`.
pub(crate) fn find_step<R: EuclideanRing>(
    ring: &R,
    m: &IM,
    c: &R::Elem,
    basis: &[Terms<R::Elem>],
    cands: &[usize],
    single: bool,
) -> Option<Step<R::Elem>> {
    let mut js: Vec<usize> = Vec::new();
    let mut us: Vec<R::Elem> = Vec::new();
    let mut g: Option<R::Elem> = None;
    for &j in cands {
        let (lm, lc) = match basis[j].first() {
            Some(t) => (&t.0, &t.1),
            None => continue,
        };
        if !lm.divides(m) {
            continue;
        }
        match &g {
            None => {
                if let Some(q) = ring.divide_exact(c, lc) {
                    return Some(Step { js: vec![j], cs: vec![q], qs: vec![m.div(lm)] });
                }
                if single {
                    continue;
                }
                g = Some(lc.clone());
                js.push(j);
                us.push(ring.one());
            }
            Some(gg) => {
                let (g2, s, t) = match ring.extended_gcd(gg, lc) {
                    Ok(x) => x,
                    Err(_) => continue,
                };
                if ring.divide_exact(&g2, gg).is_some() {
                    // no progress: gg already generates (gg, lc)
                    continue;
                }
                for u in us.iter_mut() {
                    *u = ring.mul(u, &s);
                }
                us.push(t);
                js.push(j);
                if let Some(q) = ring.divide_exact(c, &g2) {
                    let cs = us.iter().map(|u| ring.mul(u, &q)).collect();
                    let qs = js.iter().map(|&k| m.div(&basis[k][0].0)).collect();
                    return Some(Step { js, cs, qs });
                }
                g = Some(g2);
            }
        }
    }
    None
}

/// Applies a step to `f` whose leading monomial is the reduced one.
pub(crate) fn apply_step<R: EuclideanRing>(
    ring: &R,
    f: &[(IM, R::Elem)],
    step: &Step<R::Elem>,
    basis: &[Terms<R::Elem>],
) -> Result<Terms<R::Elem>> {
    if step.js.len() == 1 {
        let g = &basis[step.js[0]];
        return merge_sub(ring, &f[1..], &step.cs[0], &step.qs[0], &g[1..]);
    }
    let mut cur = f.to_vec();
    for k in 0..step.js.len() {
        cur = merge_sub(ring, &cur, &step.cs[k], &step.qs[k], &basis[step.js[k]])?;
    }
    debug_assert!(cur.first().map_or(true, |t| t.0.cmp_order(&f[0].0) == Ordering::Less));
    Ok(cur)
}

/// Full normal form. Returns the remainder and, if requested, the steps.
/// `sugar` tracks the sugar degree through the reductions.
pub(crate) fn normal_form<R: EuclideanRing>(
    ring: &R,
    space: &Space,
    f: Terms<R::Elem>,
    basis: &[Terms<R::Elem>],
    cands: &[usize],
    full: bool,
    single: bool,
    mut steps: Option<&mut Vec<Step<R::Elem>>>,
    mut sugar: Option<(&mut i64, &[i64])>,
) -> Result<Terms<R::Elem>> {
    let mut rest = f;
    let mut out: Terms<R::Elem> = Vec::new();
    let mut count = 0usize;
    while !rest.is_empty() {
        count += 1;
        if count % 256 == 0 {
            budget::check_time()?;
        }
        let (m, c) = (&rest[0].0, &rest[0].1);
        match find_step(ring, m, c, basis, cands, single) {
            Some(step) => {
                if let Some((s, bs)) = sugar.as_mut() {
                    for (k, &j) in step.js.iter().enumerate() {
                        let cand = bs[j] + space.sugar_deg(&step.qs[k]);
                        if cand > **s {
                            **s = cand;
                        }
                    }
                }
                rest = apply_step(ring, &rest, &step, basis)?;
                if let Some(v) = steps.as_mut() {
                    v.push(step);
                }
            }
            None => {
                if !full {
                    out.extend(rest);
                    return Ok(out);
                }
                let t = rest.remove(0);
                out.push(t);
            }
        }
    }
    Ok(out)
}

#[derive(Clone, PartialEq, Eq)]
struct Pair {
    sugar: i64,
    lcm: IM,
    i: usize,
    j: usize,
}

impl Ord for Pair {
    fn cmp(&self, o: &Self) -> Ordering {
        self.sugar
            .cmp(&o.sugar)
            .then_with(|| self.lcm.cmp_order(&o.lcm))
            .then_with(|| self.i.cmp(&o.i))
            .then_with(|| self.j.cmp(&o.j))
    }
}

impl PartialOrd for Pair {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

struct State<E> {
    polys: Vec<Terms<E>>,
    sugar: Vec<i64>,
    active: Vec<bool>,
    pairs: BTreeSet<Pair>,
    total_terms: usize,
}

impl<E: Clone> State<E> {
    fn active_list(&self) -> Vec<usize> {
        (0..self.polys.len()).filter(|&i| self.active[i]).collect()
    }
}

fn make_monic<R: EuclideanRing>(ring: &R, f: Terms<R::Elem>) -> Terms<R::Elem> {
    let u = ring.normalizing_unit(&f[0].1);
    if ring.is_one(&u) {
        return f;
    }
    f.into_iter().map(|(m, c)| (m, ring.mul(&u, &c))).collect()
}

/// Gebauer–Möller pair update after adding basis element `h`.
fn gm_update<E: Clone>(space: &Space, st: &mut State<E>, h: usize) {
    let lm_h = st.polys[h][0].0.clone();
    let cands: Vec<usize> = (0..h).filter(|&g| st.active[g]).collect();
    let lcms: Vec<IM> = cands.iter().map(|&g| space.lcm(&st.polys[g][0].0, &lm_h)).collect();
    let disjoint: Vec<bool> = cands.iter().map(|&g| st.polys[g][0].0.coprime(&lm_h)).collect();
    let mut d: Vec<usize> = Vec::new();
    for k in 0..cands.len() {
        let keep = disjoint[k]
            || (!(k + 1..cands.len()).any(|o| lcms[o].divides(&lcms[k]))
                && !d.iter().any(|&o| lcms[o].divides(&lcms[k])));
        if keep {
            d.push(k);
        }
    }
    let sh = st.sugar[h];
    st.pairs.retain(|p| {
        !(lm_h.divides(&p.lcm)
            && space.lcm(&st.polys[p.i][0].0, &lm_h) != p.lcm
            && space.lcm(&st.polys[p.j][0].0, &lm_h) != p.lcm)
    });
    for k in d {
        if disjoint[k] {
            continue;
        }
        let g = cands[k];
        let l = &lcms[k];
        let s = (st.sugar[g] + space.sugar_deg(&l.div(&st.polys[g][0].0)))
            .max(sh + space.sugar_deg(&l.div(&lm_h)));
        st.pairs.insert(Pair { sugar: s, lcm: l.clone(), i: g, j: h });
    }
    for g in 0..h {
        if st.active[g] && lm_h.divides(&st.polys[g][0].0) {
            st.active[g] = false;
        }
    }
    st.active[h] = true;
}

fn total_degree_sugar<E>(space: &Space, f: &[(IM, E)]) -> i64 {
    f.iter().map(|(m, _)| space.sugar_deg(m)).max().unwrap_or(0)
}

/// Buchberger over a field with sugar selection and the Gebauer–Möller
/// criteria. Returns the reduced monic basis sorted by ascending leading term.
pub(crate) fn gb_field<R: EuclideanRing>(
    ring: &R,
    space: &Space,
    mut input: Vec<Terms<R::Elem>>,
) -> Result<Vec<Terms<R::Elem>>> {
    input.retain(|f| !f.is_empty());
    input.sort_by(|a, b| a[0].0.cmp_order(&b[0].0).then_with(|| a.len().cmp(&b.len())));
    let mut st = State {
        polys: Vec::new(),
        sugar: Vec::new(),
        active: Vec::new(),
        pairs: BTreeSet::new(),
        total_terms: 0,
    };
    let trace = budget::tracing();
    for f in input {
        let mut s = total_degree_sugar(space, &f);
        let cands = st.active_list();
        let h = normal_form(
            ring,
            space,
            f,
            &st.polys,
            &cands,
            true,
            false,
            None,
            Some((&mut s, &st.sugar)),
        )?;
        if h.is_empty() {
            continue;
        }
        add_poly(ring, space, &mut st, h, s)?;
    }
    while let Some(p) = st.pairs.pop_first() {
        budget::check_time()?;
        let (fi, fj) = (&st.polys[p.i], &st.polys[p.j]);
        let qi = p.lcm.div(&fi[0].0);
        let qj = p.lcm.div(&fj[0].0);
        let a = mul_term(ring, &fi[1..], &ring.one(), &qi)?;
        let spoly = merge_sub(ring, &a, &ring.one(), &qj, &fj[1..])?;
        let mut s = p.sugar;
        let cands = st.active_list();
        let h = normal_form(
            ring,
            space,
            spoly,
            &st.polys,
            &cands,
            true,
            false,
            None,
            Some((&mut s, &st.sugar)),
        )?;
        if trace {
            budget::trace_line(format!(
                "pair ({},{}) lcm={} zero={}",
                p.i,
                p.j,
                space.format_mono(&p.lcm),
                h.is_empty()
            ));
        }
        if !h.is_empty() {
            add_poly(ring, space, &mut st, h, s)?;
        }
    }
    let active = st.active_list();
    Ok(interreduce(ring, space, &st.polys, &active)?)
}

fn add_poly<R: EuclideanRing>(
    ring: &R,
    space: &Space,
    st: &mut State<R::Elem>,
    h: Terms<R::Elem>,
    s: i64,
) -> Result<()> {
    let h = make_monic(ring, h);
    st.total_terms += h.len();
    budget::check_terms(st.total_terms)?;
    st.polys.push(h);
    st.sugar.push(s);
    st.active.push(false);
    let idx = st.polys.len() - 1;
    gm_update(space, st, idx);
    Ok(())
}

/// Reduced basis from a field-mode Groebner basis given in any form.
pub(crate) fn interreduce_all<R: EuclideanRing>(
    ring: &R,
    space: &Space,
    polys: Vec<Terms<R::Elem>>,
) -> Result<Vec<Terms<R::Elem>>> {
    let polys: Vec<_> = polys.into_iter().filter(|f| !f.is_empty()).map(|f| make_monic(ring, f)).collect();
    let idx: Vec<usize> = (0..polys.len()).collect();
    interreduce(ring, space, &polys, &idx)
}

/// Minimalizes by leading monomials and tail-reduces; output sorted by
/// ascending leading term.
fn interreduce<R: EuclideanRing>(
    ring: &R,
    space: &Space,
    polys: &[Terms<R::Elem>],
    idx: &[usize],
) -> Result<Vec<Terms<R::Elem>>> {
    let mut keep: Vec<usize> = Vec::new();
    for (a, &i) in idx.iter().enumerate() {
        let lm = &polys[i][0].0;
        let dominated = idx.iter().enumerate().any(|(b, &j)| {
            j != i && {
                let lj = &polys[j][0].0;
                lj.divides(lm) && (lj != lm || b < a)
            }
        });
        if !dominated {
            keep.push(i);
        }
    }
    keep.sort_by(|&a, &b| polys[a][0].0.cmp_order(&polys[b][0].0));
    let mut out = Vec::with_capacity(keep.len());
    for (k, &i) in keep.iter().enumerate() {
        budget::check_time()?;
        let others: Vec<usize> = keep.iter().enumerate().filter(|(o, _)| *o != k).map(|(_, &j)| j).collect();
        let tail = polys[i][1..].to_vec();
        let red = normal_form(ring, space, tail, polys, &others, true, false, None, None)?;
        let mut f = Vec::with_capacity(red.len() + 1);
        f.push(polys[i][0].clone());
        f.extend(red);
        out.push(make_monic(ring, f));
    }
    Ok(out)
}

/// Buchberger over a Euclidean domain: every pair contributes its
/// S-combination and, when neither leading coefficient divides the other,
/// its G-combination.
pub(crate) fn gb_ring<R: EuclideanRing>(
    ring: &R,
    space: &Space,
    mut input: Vec<Terms<R::Elem>>,
) -> Result<Vec<Terms<R::Elem>>> {
    input.retain(|f| !f.is_empty());
    input.sort_by(|a, b| a[0].0.cmp_order(&b[0].0).then_with(|| a.len().cmp(&b.len())));
    let mut polys: Vec<Terms<R::Elem>> = Vec::new();
    let mut pairs: BTreeSet<Pair> = BTreeSet::new();
    let mut total = 0usize;
    let trace = budget::tracing();
    let mut push = |polys: &mut Vec<Terms<R::Elem>>,
                    pairs: &mut BTreeSet<Pair>,
                    h: Terms<R::Elem>|
     -> Result<()> {
        let h = make_monic(ring, h);
        total += h.len();
        budget::check_terms(total)?;
        let j = polys.len();
        for i in 0..j {
            let l = space.lcm(&polys[i][0].0, &h[0].0);
            pairs.insert(Pair { sugar: space.sugar_deg(&l), lcm: l, i, j });
        }
        polys.push(h);
        Ok(())
    };
    for f in input {
        let cands: Vec<usize> = (0..polys.len()).collect();
        let h = normal_form(ring, space, f, &polys, &cands, true, true, None, None)?;
        if !h.is_empty() {
            push(&mut polys, &mut pairs, h)?;
        }
    }
    while let Some(p) = pairs.pop_first() {
        budget::check_time()?;
        let (fi, fj) = (polys[p.i].clone(), polys[p.j].clone());
        let (li, lj) = (&fi[0].1, &fj[0].1);
        let qi = p.lcm.div(&fi[0].0);
        let qj = p.lcm.div(&fj[0].0);
        let mut combos = Vec::with_capacity(2);
        let a = ring.lcm(li, lj);
        let ci = ring.divide_exact(&a, li).expect("lcm is a multiple");
        let cj = ring.divide_exact(&a, lj).expect("lcm is a multiple");
        let s = mul_term(ring, &fi[1..], &ci, &qi)?;
        combos.push(merge_sub(ring, &s, &cj, &qj, &fj[1..])?);
        if ring.divide_exact(li, lj).is_none() && ring.divide_exact(lj, li).is_none() {
            let (_, u, v) = ring.extended_gcd(li, lj)?;
            let g = mul_term(ring, &fi, &u, &qi)?;
            combos.push(merge_sub(ring, &g, &ring.neg(&v), &qj, &fj)?);
        }
        for c in combos {
            let cands: Vec<usize> = (0..polys.len()).collect();
            let h = normal_form(ring, space, c, &polys, &cands, true, true, None, None)?;
            if trace {
                budget::trace_line(format!(
                    "pair ({},{}) lcm={} zero={}",
                    p.i,
                    p.j,
                    space.format_mono(&p.lcm),
                    h.is_empty()
                ));
            }
            if !h.is_empty() {
                push(&mut polys, &mut pairs, h)?;
            }
        }
    }
    // strong minimalization: drop g_i when some g_j has lm_j | lm_i and lc_j | lc_i
    let n = polys.len();
    let mut keep = vec![true; n];
    for i in 0..n {
        for j in 0..n {
            if i == j || !keep[j] {
                continue;
            }
            let (mi, ci) = (&polys[i][0].0, &polys[i][0].1);
            let (mj, cj) = (&polys[j][0].0, &polys[j][0].1);
            if mj.divides(mi) && ring.divide_exact(ci, cj).is_some() {
                let equal = mi == mj && ring.divide_exact(cj, ci).is_some();
                if !equal || j < i {
                    keep[i] = false;
                    break;
                }
            }
        }
    }
    let mut idx: Vec<usize> = (0..n).filter(|&i| keep[i]).collect();
    idx.sort_by(|&a, &b| polys[a][0].0.cmp_order(&polys[b][0].0));
    let mut out = Vec::with_capacity(idx.len());
    for (k, &i) in idx.iter().enumerate() {
        let others: Vec<usize> = idx.iter().enumerate().filter(|(o, _)| *o != k).map(|(_, &j)| j).collect();
        let tail = polys[i][1..].to_vec();
        let red = normal_form(ring, space, tail, &polys, &others, true, true, None, None)?;
        let mut f = Vec::with_capacity(red.len() + 1);
        f.push(polys[i][0].clone());
        f.extend(red);
        out.push(make_monic(ring, f));
    }
    Ok(out)
}
