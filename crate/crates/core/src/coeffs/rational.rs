use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{field_div_rem, field_normalizing_unit, EuclideanRing, Field, Ring};

/// The rational numbers with arbitrary-precision numerators and denominators.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

impl Ring for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::from_integer(1.into())
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }
    fn from_bigint(&self, n: &BigInt) -> BigRational {
        BigRational::from_integer(n.clone())
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn unit_inverse(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn is_field(&self) -> bool {
        true
    }
    fn divide_exact(&self, a: &BigRational, b: &BigRational) -> Option<BigRational> {
        if b.is_zero() {
            None
        } else {
            Some(a / b)
        }
    }
    fn format_elem(&self, a: &BigRational) -> String {
        if a.is_integer() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
    fn tag(&self) -> String {
        "Q".to_string()
    }
}

impl EuclideanRing for Rationals {
    fn div_rem(&self, a: &BigRational, b: &BigRational) -> (BigRational, BigRational) {
        field_div_rem(self, a, b)
    }
    fn normalizing_unit(&self, a: &BigRational) -> BigRational {
        field_normalizing_unit(self, a)
    }
}

impl Field for Rationals {
    fn characteristic(&self) -> u64 {
        0
    }
    fn sample_from(&self, raw: u64) -> BigRational {
        // small signed integers keep rational coefficient growth in check
        let v = (raw % 201) as i64 - 100;
        self.from_i64(v)
    }
}

