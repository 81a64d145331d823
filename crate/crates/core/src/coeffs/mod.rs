//! Exact coefficient domains.
//!
//! A domain is a small value (`PrimeField`, `Rationals`, `Integers`,
//! `PiRing`) that knows how to do arithmetic on its element type. Polynomials
//! carry a copy of their domain, so the domain values are cheap to clone.

mod fp;
mod integer;
mod pipoly;
mod rational;

use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub use fp::PrimeField;
pub use integer::Integers;
pub use pipoly::{PiPoly, PiRing};
pub use rational::Rationals;

/// Default modulus for randomized trials.
pub const DEFAULT_PRIME: u64 = 32003;

pub trait Ring: Clone + Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + PartialEq + Eq + Hash + Debug + Send + Sync + 'static;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn from_bigint(&self, n: &BigInt) -> Self::Elem;

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// Multiplicative inverse when `a` is a unit of this domain.
    fn unit_inverse(&self, a: &Self::Elem) -> Option<Self::Elem>;

    fn is_unit(&self, a: &Self::Elem) -> bool {
        self.unit_inverse(a).is_some()
    }

    fn is_field(&self) -> bool;

    /// Exact quotient `a / b` when `b` divides `a`.
    fn divide_exact(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem>;

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<Self::Elem> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.from_bigint(num);
        if den.is_one() {
            return Ok(n);
        }
        let d = self.from_bigint(den);
        self.divide_exact(&n, &d).ok_or_else(|| Error::Parse {
            col: 0,
            msg: format!("{num}/{den} is not an element of this domain"),
        })
    }

    /// Elements the expression parser should recognise by name (e.g. `pi`).
    fn named_constant(&self, _name: &str) -> Option<Self::Elem> {
        None
    }

    /// Canonical text of an element; negative elements print with a leading `-`.
    fn format_elem(&self, a: &Self::Elem) -> String;

    /// Whether the printed form is a sum and needs parentheses inside a product.
    fn is_compound(&self, _a: &Self::Elem) -> bool {
        false
    }

    fn parse_elem(&self, s: &str) -> Result<Self::Elem> {
        crate::poly::parse_constant(self, s)
    }

    /// Short machine-readable tag, e.g. `fp:32003` or `Q`.
    fn tag(&self) -> String;
}

/// Euclidean domains: division with remainder and Bézout coefficients.
pub trait EuclideanRing: Ring {
    fn div_rem(&self, a: &Self::Elem, b: &Self::Elem) -> (Self::Elem, Self::Elem);

    /// A unit `u` such that `u * a` is the canonical associate of `a`.
    fn normalizing_unit(&self, a: &Self::Elem) -> Self::Elem;

    fn normalize(&self, a: &Self::Elem) -> Self::Elem {
        self.mul(&self.normalizing_unit(a), a)
    }

    /// Returns `(g, u, v)` with `u*a + v*b = g`, `g` the canonical generator of `(a, b)`.
    fn extended_gcd(
        &self,
        a: &Self::Elem,
        b: &Self::Elem,
    ) -> Result<(Self::Elem, Self::Elem, Self::Elem)> {
        if self.is_zero(a) && self.is_zero(b) {
            return Err(Error::GcdOfZeros);
        }
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (self.one(), self.zero());
        let (mut t0, mut t1) = (self.zero(), self.one());
        while !self.is_zero(&r1) {
            let (q, r) = self.div_rem(&r0, &r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = self.sub(&s0, &self.mul(&q, &s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = self.sub(&t0, &self.mul(&q, &t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        let u = self.normalizing_unit(&r0);
        Ok((self.mul(&u, &r0), self.mul(&u, &s0), self.mul(&u, &t0)))
    }

    fn gcd(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        match self.extended_gcd(a, b) {
            Ok((g, _, _)) => g,
            Err(_) => self.zero(),
        }
    }

    fn lcm(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        if self.is_zero(a) || self.is_zero(b) {
            return self.zero();
        }
        let g = self.gcd(a, b);
        let q = self.divide_exact(a, &g).expect("gcd divides its argument");
        self.normalize(&self.mul(&q, b))
    }
}

/// Fields. Every field is trivially Euclidean.
pub trait Field: EuclideanRing {
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem> {
        self.unit_inverse(a).ok_or(Error::DivisionByZero)
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// Characteristic (0 for the rationals).
    fn characteristic(&self) -> u64;

    /// Element from a uniformly random `u64` draw; used by the samplers.
    fn sample_from(&self, raw: u64) -> Self::Elem;
}

pub(crate) fn field_div_rem<F: Ring>(f: &F, a: &F::Elem, b: &F::Elem) -> (F::Elem, F::Elem) {
    let inv = f.unit_inverse(b).expect("division by zero in field");
    (f.mul(a, &inv), f.zero())
}

pub(crate) fn field_normalizing_unit<F: Ring>(f: &F, a: &F::Elem) -> F::Elem {
    if f.is_zero(a) {
        f.one()
    } else {
        f.unit_inverse(a).expect("nonzero field element is a unit")
    }
}
