//! The Euclidean domain L[π], standing in for the valuation ring L[[π]].
//!
//! Every ring element that shows up in the lattice computations (matrix
//! entries, minors, saturations) is polynomial in π, so the polynomial
//! subring is enough. Units of the valuation ring are the elements of
//! π-valuation zero; units of L[π] itself are only the nonzero constants.

use num_bigint::BigInt;

use super::{EuclideanRing, Field, Ring};
use crate::error::{Error, Result};

/// Polynomial in π; `coeffs[i]` is the coefficient of π^i. No trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PiPoly<E> {
    coeffs: Vec<E>,
}

impl<E> PiPoly<E> {
    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree in π, `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PiRing<F: Field> {
    base: F,
}

impl<F: Field> PiRing<F> {
    pub fn new(base: F) -> Self {
        PiRing { base }
    }

    pub fn base(&self) -> &F {
        &self.base
    }

    /// Builds the canonical element from a coefficient list (ascending powers).
    pub fn from_coeffs(&self, mut coeffs: Vec<F::Elem>) -> PiPoly<F::Elem> {
        while coeffs.last().is_some_and(|c| self.base.is_zero(c)) {
            coeffs.pop();
        }
        PiPoly { coeffs }
    }

    pub fn constant(&self, c: F::Elem) -> PiPoly<F::Elem> {
        self.from_coeffs(vec![c])
    }

    /// c·π^k
    pub fn monomial(&self, c: F::Elem, k: usize) -> PiPoly<F::Elem> {
        let mut v = vec![self.base.zero(); k];
        v.push(c);
        self.from_coeffs(v)
    }

    pub fn pi(&self) -> PiPoly<F::Elem> {
        self.monomial(self.base.one(), 1)
    }

    pub fn pi_pow(&self, k: usize) -> PiPoly<F::Elem> {
        self.monomial(self.base.one(), k)
    }

    /// Least exponent with a nonzero coefficient.
    pub fn pi_valuation(&self, f: &PiPoly<F::Elem>) -> Result<usize> {
        f.coeffs
            .iter()
            .position(|c| !self.base.is_zero(c))
            .ok_or(Error::ZeroValuation)
    }

    /// Image in the residue field (evaluation at π = 0).
    pub fn reduce_mod_pi(&self, f: &PiPoly<F::Elem>) -> F::Elem {
        f.coeffs.first().cloned().unwrap_or_else(|| self.base.zero())
    }

    /// Unit of the valuation ring: nonzero with valuation 0.
    pub fn is_okunit(&self, f: &PiPoly<F::Elem>) -> bool {
        f.coeffs.first().is_some_and(|c| !self.base.is_zero(c))
    }

    /// Divides out the largest power of π; returns `(k, f / π^k)`.
    pub fn split_pi_content(&self, f: &PiPoly<F::Elem>) -> (usize, PiPoly<F::Elem>) {
        match self.pi_valuation(f) {
            Ok(k) => (k, PiPoly { coeffs: f.coeffs[k..].to_vec() }),
            Err(_) => (0, f.clone()),
        }
    }

    pub fn scale(&self, f: &PiPoly<F::Elem>, c: &F::Elem) -> PiPoly<F::Elem> {
        self.from_coeffs(f.coeffs.iter().map(|a| self.base.mul(a, c)).collect())
    }

    pub fn shift(&self, f: &PiPoly<F::Elem>, k: usize) -> PiPoly<F::Elem> {
        if f.is_zero() {
            return f.clone();
        }
        let mut v = vec![self.base.zero(); k];
        v.extend(f.coeffs.iter().cloned());
        PiPoly { coeffs: v }
    }

    pub fn eval(&self, f: &PiPoly<F::Elem>, at: &F::Elem) -> F::Elem {
        f.coeffs
            .iter()
            .rev()
            .fold(self.base.zero(), |acc, c| self.base.add(&self.base.mul(&acc, at), c))
    }

    fn leading<'a>(&self, f: &'a PiPoly<F::Elem>) -> Option<&'a F::Elem> {
        f.coeffs.last()
    }
}

impl<F: Field> Ring for PiRing<F> {
    type Elem = PiPoly<F::Elem>;

    fn zero(&self) -> Self::Elem {
        PiPoly { coeffs: Vec::new() }
    }
    fn one(&self) -> Self::Elem {
        self.constant(self.base.one())
    }
    fn from_i64(&self, n: i64) -> Self::Elem {
        self.constant(self.base.from_i64(n))
    }
    fn from_bigint(&self, n: &BigInt) -> Self::Elem {
        self.constant(self.base.from_bigint(n))
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let n = a.coeffs.len().max(b.coeffs.len());
        let z = self.base.zero();
        let v = (0..n)
            .map(|i| {
                let x = a.coeffs.get(i).unwrap_or(&z);
                let y = b.coeffs.get(i).unwrap_or(&z);
                self.base.add(x, y)
            })
            .collect();
        self.from_coeffs(v)
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        PiPoly { coeffs: a.coeffs.iter().map(|c| self.base.neg(c)).collect() }
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        if a.is_zero() || b.is_zero() {
            return self.zero();
        }
        let mut v = vec![self.base.zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if self.base.is_zero(x) {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                v[i + j] = self.base.add(&v[i + j], &self.base.mul(x, y));
            }
        }
        self.from_coeffs(v)
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.is_zero()
    }
    fn unit_inverse(&self, a: &Self::Elem) -> Option<Self::Elem> {
        if a.coeffs.len() == 1 {
            self.base.unit_inverse(&a.coeffs[0]).map(|c| self.constant(c))
        } else {
            None
        }
    }
    fn is_field(&self) -> bool {
        false
    }
    fn divide_exact(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        if b.is_zero() {
            return None;
        }
        let (q, r) = self.div_rem(a, b);
        r.is_zero().then_some(q)
    }
    fn named_constant(&self, name: &str) -> Option<Self::Elem> {
        (name == "pi").then(|| self.pi())
    }
    fn format_elem(&self, a: &Self::Elem) -> String {
        if a.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, c) in a.coeffs.iter().enumerate() {
            if self.base.is_zero(c) {
                continue;
            }
            let s = self.base.format_elem(c);
            let (neg, mag) = match s.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, s),
            };
            let body = match (k, mag.as_str()) {
                (0, _) => mag.clone(),
                (1, "1") => "pi".to_string(),
                (1, _) => format!("{mag}*pi"),
                (_, "1") => format!("pi^{k}"),
                _ => format!("{mag}*pi^{k}"),
            };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        out
    }
    fn is_compound(&self, a: &Self::Elem) -> bool {
        a.coeffs.iter().filter(|c| !self.base.is_zero(c)).count() > 1
    }
    fn tag(&self) -> String {
        format!("pi:{}", self.base.tag())
    }
}

impl<F: Field> EuclideanRing for PiRing<F> {
    fn div_rem(&self, a: &Self::Elem, b: &Self::Elem) -> (Self::Elem, Self::Elem) {
        let lb = self.leading(b).expect("division by zero in L[pi]");
        let lb_inv = self.base.inv(lb).expect("leading coefficient is nonzero");
        let db = b.coeffs.len() - 1;
        let mut r = a.coeffs.clone();
        if r.len() < b.coeffs.len() {
            return (self.zero(), a.clone());
        }
        let mut q = vec![self.base.zero(); r.len() - db];
        for i in (0..q.len()).rev() {
            let c = self.base.mul(&r[i + db], &lb_inv);
            if self.base.is_zero(&c) {
                continue;
            }
            for (j, bj) in b.coeffs.iter().enumerate() {
                r[i + j] = self.base.sub(&r[i + j], &self.base.mul(&c, bj));
            }
            q[i] = c;
        }
        (self.from_coeffs(q), self.from_coeffs(r))
    }

    fn normalizing_unit(&self, a: &Self::Elem) -> Self::Elem {
        match self.leading(a) {
            Some(c) => self.constant(self.base.inv(c).expect("nonzero")),
            None => self.one(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffs::{PrimeField, Rationals};

    fn ring() -> PiRing<Rationals> {
        PiRing::new(Rationals)
    }

    fn q(n: i64) -> num_rational::BigRational {
        Rationals.from_i64(n)
    }

    #[test]
    fn valuation_examples() {
        let r = ring();
        let f = r.mul(&r.pi_pow(2), &r.from_coeffs(vec![q(1), q(1)]));
        assert_eq!(r.pi_valuation(&f).unwrap(), 2);
        assert_eq!(r.pi_valuation(&r.from_coeffs(vec![q(3), q(1)])).unwrap(), 0);
        assert_eq!(r.pi_valuation(&r.zero()), Err(Error::ZeroValuation));
    }

    #[test]
    fn reduction_examples() {
        let r = ring();
        assert_eq!(r.reduce_mod_pi(&r.from_coeffs(vec![q(3), q(5)])), q(3));
        assert_eq!(r.reduce_mod_pi(&r.pi()), q(0));
        assert_eq!(r.reduce_mod_pi(&r.zero()), q(0));
    }

    #[test]
    fn okunit_examples() {
        let r = ring();
        let one_plus_pi = r.from_coeffs(vec![q(1), q(1)]);
        assert!(r.is_okunit(&one_plus_pi));
        assert!(!r.is_okunit(&r.mul(&r.pi(), &one_plus_pi)));
        assert!(!r.is_okunit(&r.zero()));
        // a unit of the valuation ring need not be a unit of L[pi]
        assert!(!r.is_unit(&one_plus_pi));
    }

    #[test]
    fn gcd_examples() {
        let r = ring();
        let one_plus_pi = r.from_coeffs(vec![q(1), q(1)]);
        let (g, u, v) = r.extended_gcd(&r.pi(), &one_plus_pi).unwrap();
        assert_eq!(g, r.one());
        assert_eq!(r.add(&r.mul(&u, &r.pi()), &r.mul(&v, &one_plus_pi)), g);

        let (g, _, _) = r.extended_gcd(&r.pi_pow(2), &r.pi_pow(3)).unwrap();
        assert_eq!(g, r.pi_pow(2));

        let f = r.from_coeffs(vec![q(2), q(4)]);
        let (g, u, v) = r.extended_gcd(&f, &r.zero()).unwrap();
        assert_eq!(g, r.from_coeffs(vec![Rationals.from_ratio(&1.into(), &2.into()).unwrap(), q(1)]));
        assert_eq!(u, r.constant(Rationals.from_ratio(&1.into(), &4.into()).unwrap()));
        assert_eq!(v, r.zero());

        assert_eq!(r.extended_gcd(&r.zero(), &r.zero()), Err(Error::GcdOfZeros));
    }

    #[test]
    fn text_form() {
        let r = PiRing::new(PrimeField::new(32003).unwrap());
        let f = r.from_coeffs(vec![3, 0, 5]);
        assert_eq!(r.format_elem(&f), "3 + 5*pi^2");
        assert_eq!(r.parse_elem("3 + 5*pi^2").unwrap(), f);
        let g = r.from_coeffs(vec![0, 32002, 1]);
        assert_eq!(r.format_elem(&g), "-pi + pi^2");
        assert_eq!(r.parse_elem(&r.format_elem(&g)).unwrap(), g);
    }
}
