use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::coeffs::Ring;
use crate::error::{Error, Result};
use crate::poly::monomial::canonical_cmp;
use crate::poly::{Monomial, TermOrder, VarUniverse};

/// Sparse multivariate polynomial. Terms are kept sorted descending in the
/// canonical degrevlex order with no zero coefficients, so equality is
/// structural.
#[derive(Clone, Debug)]
pub struct MPoly<R: Ring> {
    ring: R,
    vars: Arc<VarUniverse>,
    terms: Vec<(Monomial, R::Elem)>,
}

impl<R: Ring> PartialEq for MPoly<R> {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring
            && (Arc::ptr_eq(&self.vars, &other.vars) || *self.vars == *other.vars)
            && self.terms == other.terms
    }
}

impl<R: Ring> Eq for MPoly<R> {}

impl<R: Ring> MPoly<R> {
    pub fn zero(ring: &R, vars: &Arc<VarUniverse>) -> Self {
        MPoly { ring: ring.clone(), vars: vars.clone(), terms: Vec::new() }
    }

    pub fn one(ring: &R, vars: &Arc<VarUniverse>) -> Self {
        Self::constant(ring, vars, ring.one())
    }

    pub fn constant(ring: &R, vars: &Arc<VarUniverse>, c: R::Elem) -> Self {
        Self::monomial(ring, vars, c, Monomial::one(vars.len()))
    }

    pub fn monomial(ring: &R, vars: &Arc<VarUniverse>, c: R::Elem, m: Monomial) -> Self {
        assert_eq!(m.nvars(), vars.len(), "monomial outside universe");
        let terms = if ring.is_zero(&c) { Vec::new() } else { vec![(m, c)] };
        MPoly { ring: ring.clone(), vars: vars.clone(), terms }
    }

    pub fn var(ring: &R, vars: &Arc<VarUniverse>, i: usize) -> Self {
        Self::monomial(ring, vars, ring.one(), Monomial::var(vars.len(), i, 1))
    }

    pub fn var_named(ring: &R, vars: &Arc<VarUniverse>, name: &str) -> Result<Self> {
        Ok(Self::var(ring, vars, vars.require(name)?))
    }

    /// Collects arbitrary terms, combining duplicates and dropping zeros.
    pub fn from_terms(
        ring: &R,
        vars: &Arc<VarUniverse>,
        terms: impl IntoIterator<Item = (Monomial, R::Elem)>,
    ) -> Self {
        let mut acc: HashMap<Monomial, R::Elem> = HashMap::new();
        for (m, c) in terms {
            assert_eq!(m.nvars(), vars.len(), "monomial outside universe");
            match acc.get_mut(&m) {
                Some(e) => *e = ring.add(e, &c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !ring.is_zero(c)).collect();
        terms.sort_by(|a, b| canonical_cmp(&b.0, &a.0));
        MPoly { ring: ring.clone(), vars: vars.clone(), terms }
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn universe(&self) -> &Arc<VarUniverse> {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn terms(&self) -> &[(Monomial, R::Elem)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, R::Elem)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn constant_term(&self) -> R::Elem {
        self.coeff(&Monomial::one(self.nvars()))
    }

    pub fn coeff(&self, m: &Monomial) -> R::Elem {
        self.terms
            .binary_search_by(|(t, _)| canonical_cmp(m, t))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| self.ring.zero())
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    /// Variables that occur with positive exponent.
    pub fn support_vars(&self) -> Vec<usize> {
        let mut seen = vec![false; self.nvars()];
        for (m, _) in &self.terms {
            for v in m.support() {
                seen[v] = true;
            }
        }
        (0..self.nvars()).filter(|&v| seen[v]).collect()
    }

    pub fn involves(&self, v: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.exp(v) > 0)
    }

    fn check_universe(&self, order: &TermOrder) -> Result<()> {
        if Arc::ptr_eq(&self.vars, order.universe()) || *self.vars == **order.universe() {
            Ok(())
        } else {
            Err(Error::UniverseMismatch)
        }
    }

    /// Index into `terms()` of the leading term under `order`.
    pub fn leading_index(&self, order: &TermOrder) -> Result<usize> {
        self.check_universe(order)?;
        let mut best: Option<usize> = None;
        for (i, (m, _)) in self.terms.iter().enumerate() {
            match best {
                None => best = Some(i),
                Some(b) => {
                    if order.cmp_unchecked(m.exps(), self.terms[b].0.exps()) == Ordering::Greater {
                        best = Some(i);
                    }
                }
            }
        }
        best.ok_or(Error::ZeroPolynomial)
    }

    pub fn leading_term(&self, order: &TermOrder) -> Result<(&R::Elem, &Monomial)> {
        let i = self.leading_index(order)?;
        Ok((&self.terms[i].1, &self.terms[i].0))
    }

    pub fn leading_monomial(&self, order: &TermOrder) -> Result<&Monomial> {
        Ok(self.leading_term(order)?.1)
    }

    pub fn leading_coeff(&self, order: &TermOrder) -> Result<&R::Elem> {
        Ok(self.leading_term(order)?.0)
    }

    /// Terms sorted descending under `order`.
    pub fn sorted_terms(&self, order: &TermOrder) -> Result<Vec<&(Monomial, R::Elem)>> {
        self.check_universe(order)?;
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| order.cmp_unchecked(b.0.exps(), a.0.exps()));
        Ok(v)
    }

    fn assert_compatible(&self, other: &Self) {
        assert!(
            Arc::ptr_eq(&self.vars, &other.vars) || *self.vars == *other.vars,
            "polynomials live in different universes"
        );
    }

    fn merge(&self, other: &Self, negate_other: bool) -> Self {
        self.assert_compatible(other);
        let r = &self.ring;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        let conv = |c: &R::Elem| if negate_other { r.neg(c) } else { c.clone() };
        while i < a.len() && j < b.len() {
            match canonical_cmp(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b[j].0.clone(), conv(&b[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate_other {
                        r.sub(&a[i].1, &b[j].1)
                    } else {
                        r.add(&a[i].1, &b[j].1)
                    };
                    if !r.is_zero(&c) {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, c)| (m.clone(), conv(c))));
        MPoly { ring: r.clone(), vars: self.vars.clone(), terms: out }
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.assert_compatible(other);
        let r = &self.ring;
        let mut acc: HashMap<Monomial, R::Elem> = HashMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let m = m1.checked_mul(m2)?;
                let c = r.mul(c1, c2);
                match acc.get_mut(&m) {
                    Some(e) => *e = r.add(e, &c),
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !r.is_zero(c)).collect();
        terms.sort_by(|a, b| canonical_cmp(&b.0, &a.0));
        Ok(MPoly { ring: r.clone(), vars: self.vars.clone(), terms })
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        let r = &self.ring;
        let terms = self
            .terms
            .iter()
            .map(|(m, x)| (m.clone(), r.mul(x, c)))
            .filter(|(_, x)| !r.is_zero(x))
            .collect();
        MPoly { ring: r.clone(), vars: self.vars.clone(), terms }
    }

    pub fn mul_term(&self, c: &R::Elem, m: &Monomial) -> Result<Self> {
        let r = &self.ring;
        let mut terms = Vec::with_capacity(self.terms.len());
        for (t, x) in &self.terms {
            let y = r.mul(x, c);
            if !r.is_zero(&y) {
                terms.push((t.checked_mul(m)?, y));
            }
        }
        Ok(MPoly { ring: r.clone(), vars: self.vars.clone(), terms })
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        let mut acc = Self::one(&self.ring, &self.vars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.checked_mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.checked_mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Exact division of every coefficient by `c`.
    pub fn divide_coeffs(&self, c: &R::Elem) -> Option<Self> {
        let r = &self.ring;
        let terms = self
            .terms
            .iter()
            .map(|(m, x)| r.divide_exact(x, c).map(|q| (m.clone(), q)))
            .collect::<Option<Vec<_>>>()?;
        Some(MPoly { ring: r.clone(), vars: self.vars.clone(), terms })
    }

    /// Exact division by a monomial dividing every term.
    pub fn divide_monomial(&self, m: &Monomial) -> Option<Self> {
        let terms = self
            .terms
            .iter()
            .map(|(t, x)| t.div(m).map(|q| (q, x.clone())))
            .collect::<Option<Vec<_>>>()?;
        Some(MPoly { ring: self.ring.clone(), vars: self.vars.clone(), terms })
    }

    /// Coefficientwise image in another domain.
    pub fn map_coeffs<S: Ring>(&self, target: &S, f: impl Fn(&R::Elem) -> S::Elem) -> MPoly<S> {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), f(c)))
            .filter(|(_, c)| !target.is_zero(c))
            .collect();
        MPoly { ring: target.clone(), vars: self.vars.clone(), terms }
    }

    /// Moves the polynomial into `target`, matching variables by name.
    pub fn change_universe(&self, target: &Arc<VarUniverse>) -> Result<Self> {
        if Arc::ptr_eq(&self.vars, target) {
            return Ok(self.clone());
        }
        let used = self.support_vars();
        let mut map = vec![0usize; self.nvars()];
        for v in used {
            map[v] = target.require(self.vars.name(v))?;
        }
        Ok(Self::from_terms(
            &self.ring,
            target,
            self.terms.iter().map(|(m, c)| (m.remap(&map, target.len()), c.clone())),
        ))
    }

    /// Ring homomorphism image: variables in `images` are replaced, all others
    /// map to the same-named variable of the images' universe.
    pub fn substitute(&self, images: &HashMap<usize, MPoly<R>>) -> Result<Self> {
        let target = match images.values().next() {
            Some(p) => p.vars.clone(),
            None => return Ok(self.clone()),
        };
        self.substitute_into(&target, images)
    }

    pub fn substitute_into(
        &self,
        target: &Arc<VarUniverse>,
        images: &HashMap<usize, MPoly<R>>,
    ) -> Result<Self> {
        let n = self.nvars();
        let mut img: Vec<Option<MPoly<R>>> = vec![None; n];
        for v in self.support_vars() {
            img[v] = Some(match images.get(&v) {
                Some(p) => {
                    if !(Arc::ptr_eq(&p.vars, target) || *p.vars == **target) {
                        return Err(Error::UniverseMismatch);
                    }
                    p.clone()
                }
                None => MPoly::var(&self.ring, target, target.require(self.vars.name(v))?),
            });
        }
        let mut powers: HashMap<(usize, u32), MPoly<R>> = HashMap::new();
        let mut acc = MPoly::zero(&self.ring, target);
        for (m, c) in &self.terms {
            let mut t = MPoly::constant(&self.ring, target, c.clone());
            for v in m.support() {
                let e = m.exp(v);
                let p = match powers.get(&(v, e)) {
                    Some(p) => p.clone(),
                    None => {
                        let p = img[v].as_ref().unwrap().pow(e)?;
                        powers.insert((v, e), p.clone());
                        p
                    }
                };
                t = t.checked_mul(&p)?;
                if t.is_zero() {
                    break;
                }
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// Whether every term has the same per-block degree.
    pub fn is_multihomogeneous(&self, blocks: &[Vec<usize>]) -> bool {
        match self.terms.first() {
            None => true,
            Some((m0, _)) => {
                let d0 = m0.multidegree(blocks);
                self.terms.iter().all(|(m, _)| m.multidegree(blocks) == d0)
            }
        }
    }

    pub fn multidegree(&self, blocks: &[Vec<usize>]) -> Option<Vec<u64>> {
        if !self.is_multihomogeneous(blocks) {
            return None;
        }
        self.terms.first().map(|(m, _)| m.multidegree(blocks))
    }

    /// Text with terms in descending `order`.
    pub fn to_string_with(&self, order: &TermOrder) -> String {
        match self.sorted_terms(order) {
            Ok(ts) => self.format_terms(ts.into_iter()),
            Err(_) => self.to_string(),
        }
    }

    fn format_terms<'a>(&'a self, ts: impl Iterator<Item = &'a (Monomial, R::Elem)>) -> String {
        let mut out = String::new();
        for (k, (m, c)) in ts.enumerate() {
            let t = format_term(&self.ring, &self.vars, c, m);
            if k == 0 {
                out.push_str(&t);
            } else if let Some(rest) = t.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(&t);
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

fn format_monomial(vars: &VarUniverse, m: &Monomial) -> String {
    let parts: Vec<String> = m
        .support()
        .map(|v| match m.exp(v) {
            1 => vars.name(v).to_string(),
            e => format!("{}^{}", vars.name(v), e),
        })
        .collect();
    parts.join("*")
}

fn format_term<R: Ring>(ring: &R, vars: &VarUniverse, c: &R::Elem, m: &Monomial) -> String {
    if m.is_one() {
        return ring.format_elem(c);
    }
    let mono = format_monomial(vars, m);
    if ring.is_one(c) {
        return mono;
    }
    let minus_one = ring.neg(&ring.one());
    if *c == minus_one {
        return format!("-{mono}");
    }
    let cs = ring.format_elem(c);
    if ring.is_compound(c) {
        format!("({cs})*{mono}")
    } else {
        format!("{cs}*{mono}")
    }
}

impl<R: Ring> fmt::Display for MPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_terms(self.terms.iter()))
    }
}

impl<R: Ring> Add for &MPoly<R> {
    type Output = MPoly<R>;
    fn add(self, rhs: Self) -> MPoly<R> {
        self.merge(rhs, false)
    }
}

impl<R: Ring> Sub for &MPoly<R> {
    type Output = MPoly<R>;
    fn sub(self, rhs: Self) -> MPoly<R> {
        self.merge(rhs, true)
    }
}

impl<R: Ring> Mul for &MPoly<R> {
    type Output = MPoly<R>;
    fn mul(self, rhs: Self) -> MPoly<R> {
        self.checked_mul(rhs).expect("exponent overflow")
    }
}

impl<R: Ring> Neg for &MPoly<R> {
    type Output = MPoly<R>;
    fn neg(self) -> MPoly<R> {
        let r = &self.ring;
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), r.neg(c))).collect();
        MPoly { ring: r.clone(), vars: self.vars.clone(), terms }
    }
}

macro_rules! owned_ops {
    ($tr:ident, $f:ident) => {
        impl<R: Ring> $tr for MPoly<R> {
            type Output = MPoly<R>;
            fn $f(self, rhs: Self) -> MPoly<R> {
                (&self).$f(&rhs)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl<R: Ring> Neg for MPoly<R> {
    type Output = MPoly<R>;
    fn neg(self) -> MPoly<R> {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffs::{PrimeField, Rationals};
    use crate::poly::parse_poly;

    #[test]
    fn arithmetic_and_display() {
        let u = VarUniverse::new(["x", "y"]).unwrap();
        let q = Rationals;
        let x = MPoly::var(&q, &u, 0);
        let y = MPoly::var(&q, &u, 1);
        let f = &(&x + &y) * &(&x - &y);
        assert_eq!(f.to_string(), "x^2 - y^2");
        assert!((&f - &f).is_zero());
        assert_eq!(MPoly::zero(&q, &u).to_string(), "0");
    }

    #[test]
    fn leading_terms() {
        let u = VarUniverse::new(["x", "y"]).unwrap();
        let q = Rationals;
        let f = parse_poly(&q, &u, "x^2 + x*y").unwrap();
        let (c, m) = f.leading_term(&TermOrder::degrevlex(&u)).unwrap();
        assert_eq!(q.format_elem(c), "1");
        assert_eq!(m.exps(), &[2, 0]);
        let c = parse_poly(&q, &u, "7").unwrap();
        assert!(c.leading_term(&TermOrder::lex(&u)).unwrap().1.is_one());
        assert_eq!(
            MPoly::zero(&q, &u).leading_term(&TermOrder::lex(&u)).unwrap_err(),
            Error::ZeroPolynomial
        );
    }

    #[test]
    fn substitution() {
        let u = VarUniverse::new(["A1", "A2", "x", "y", "pi"]).unwrap();
        let k = PrimeField::new(32003).unwrap();
        let f = parse_poly(&k, &u, "pi*A1*x + A2*y").unwrap();
        let mut imgs = HashMap::new();
        imgs.insert(0, MPoly::one(&k, &u));
        imgs.insert(1, MPoly::var(&k, &u, 4));
        let g = f.substitute(&imgs).unwrap();
        assert_eq!(g, parse_poly(&k, &u, "pi*x + pi*y").unwrap());
        assert_eq!(f.substitute(&HashMap::new()).unwrap(), f);
    }

    #[test]
    fn universe_change_by_name() {
        let u = VarUniverse::new(["x", "y"]).unwrap();
        let w = VarUniverse::new(["t", "y", "x"]).unwrap();
        let q = Rationals;
        let f = parse_poly(&q, &u, "x^2 + 3*y").unwrap();
        let g = f.change_universe(&w).unwrap();
        assert_eq!(g, parse_poly(&q, &w, "x^2 + 3*y").unwrap());
        assert!(g.change_universe(&VarUniverse::new(["x"]).unwrap()).is_err());
    }
}
