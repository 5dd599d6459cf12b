use std::fmt::{self, Debug, Display};
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact coefficient field. Elements are plain values; all arithmetic is exact.
pub trait Field: Clone + PartialEq + Eq + Hash + Debug + Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self) -> Option<Self>;
    fn from_i64(n: i64) -> Self;
    fn characteristic() -> u64;
    fn name() -> String;
    /// Parses the textual coefficient form written by `Display`.
    fn parse_coeff(s: &str) -> Option<Self>;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|i| self.mul(&i))
    }
}

/// The prime field F_P. `P` must be prime; `Fp<2>` is the default field.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fp<const P: u32>(u32);

pub type F2 = Fp<2>;

impl<const P: u32> Fp<P> {
    pub fn new(v: i64) -> Self {
        Fp(v.rem_euclid(P as i64) as u32)
    }

    pub fn value(&self) -> u32 {
        self.0
    }

    fn pow(&self, mut e: u64) -> Self {
        let mut base = self.0 as u64;
        let mut acc = 1u64;
        let p = P as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        Fp(acc as u32)
    }
}

impl<const P: u32> Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u32> Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u32> Field for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn one() -> Self {
        Fp(1 % P)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn add(&self, other: &Self) -> Self {
        Fp(((self.0 as u64 + other.0 as u64) % P as u64) as u32)
    }
    fn sub(&self, other: &Self) -> Self {
        Fp(((self.0 as u64 + P as u64 - other.0 as u64) % P as u64) as u32)
    }
    fn mul(&self, other: &Self) -> Self {
        Fp(((self.0 as u64 * other.0 as u64) % P as u64) as u32)
    }
    fn neg(&self) -> Self {
        Fp((P - self.0) % P)
    }
    fn inv(&self) -> Option<Self> {
        if self.0 == 0 {
            None
        } else {
            Some(self.pow(P as u64 - 2))
        }
    }
    fn from_i64(n: i64) -> Self {
        Fp::new(n)
    }
    fn characteristic() -> u64 {
        P as u64
    }
    fn name() -> String {
        format!("F{P}")
    }
    fn parse_coeff(s: &str) -> Option<Self> {
        s.trim().parse::<i64>().ok().map(Fp::new)
    }
}

/// The rationals, with arbitrary-precision numerator and denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Q(pub BigRational);

impl Debug for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Display for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Field for Q {
    fn zero() -> Self {
        Q(BigRational::zero())
    }
    fn one() -> Self {
        Q(BigRational::one())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn add(&self, other: &Self) -> Self {
        Q(&self.0 + &other.0)
    }
    fn sub(&self, other: &Self) -> Self {
        Q(&self.0 - &other.0)
    }
    fn mul(&self, other: &Self) -> Self {
        Q(&self.0 * &other.0)
    }
    fn neg(&self) -> Self {
        Q(-&self.0)
    }
    fn inv(&self) -> Option<Self> {
        if self.0.is_zero() {
            None
        } else {
            Some(Q(self.0.recip()))
        }
    }
    fn from_i64(n: i64) -> Self {
        Q(BigRational::from_integer(BigInt::from(n)))
    }
    fn characteristic() -> u64 {
        0
    }
    fn name() -> String {
        "Q".to_string()
    }
    fn parse_coeff(s: &str) -> Option<Self> {
        let s = s.trim();
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim().parse::<BigInt>().ok()?, d.trim().parse::<BigInt>().ok()?),
            None => (s.parse::<BigInt>().ok()?, BigInt::one()),
        };
        if den.is_zero() {
            return None;
        }
        Some(Q(BigRational::new(num, den)))
    }
}

impl Q {
    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fp_inverse() {
        type F7 = Fp<7>;
        for v in 1..7 {
            let a = F7::new(v);
            assert!(a.mul(&a.inv().unwrap()).is_one());
        }
        assert!(F7::zero().inv().is_none());
        assert_eq!(F7::new(-1), F7::new(6));
    }

    #[test]
    fn f2_is_characteristic_two() {
        assert_eq!(F2::one().add(&F2::one()), F2::zero());
        assert_eq!(F2::one().neg(), F2::one());
        assert_eq!(F2::characteristic(), 2);
    }

    #[test]
    fn rational_parse() {
        let a = Q::parse_coeff("-3/6").unwrap();
        assert_eq!(a, Q::from_i64(-1).mul(&Q::from_i64(2).inv().unwrap()));
        assert!(Q::parse_coeff("1/0").is_none());
    }
}
