use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{EuclideanRing, Ring};

/// The integers, used as the reference Euclidean domain for ring-mode tests.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Integers;

impl Ring for Integers {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn from_i64(&self, n: i64) -> BigInt {
        n.into()
    }
    fn from_bigint(&self, n: &BigInt) -> BigInt {
        n.clone()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn unit_inverse(&self, a: &BigInt) -> Option<BigInt> {
        if a.abs().is_one() {
            Some(a.clone())
        } else {
            None
        }
    }
    fn is_field(&self) -> bool {
        false
    }
    fn divide_exact(&self, a: &BigInt, b: &BigInt) -> Option<BigInt> {
        if b.is_zero() {
            return None;
        }
        let (q, r) = a.div_rem(b);
        r.is_zero().then_some(q)
    }
    fn format_elem(&self, a: &BigInt) -> String {
        a.to_string()
    }
    fn tag(&self) -> String {
        "Z".to_string()
    }
}

impl EuclideanRing for Integers {
    fn div_rem(&self, a: &BigInt, b: &BigInt) -> (BigInt, BigInt) {
        a.div_mod_floor(b)
    }
    fn normalizing_unit(&self, a: &BigInt) -> BigInt {
        if a.is_negative() {
            -BigInt::one()
        } else {
            BigInt::one()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bezout_for_three_and_five() {
        let z = Integers;
        let (g, u, v) = z.extended_gcd(&3.into(), &5.into()).unwrap();
        assert_eq!(g, BigInt::one());
        assert_eq!(u * 3 + v * 5, BigInt::one());
    }

    #[test]
    fn gcd_is_nonnegative() {
        let z = Integers;
        assert_eq!(z.gcd(&(-4).into(), &6.into()), 2.into());
        assert_eq!(z.lcm(&(-4).into(), &6.into()), 12.into());
    }
}
