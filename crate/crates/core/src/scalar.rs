//! Scalar traits shared by every exact computation in the crate.
//!
//! All linear algebra is written once against [`Ring`] / [`Field`] and then
//! instantiated at [`Rational`](crate::Rational), [`CycloNum`](crate::CycloNum),
//! the prime field [`Fp`] (used for fast non-nilpotency certificates) and, for
//! ring-only operations, [`PuiseuxSeries`](crate::PuiseuxSeries).

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A commutative ring with unit in which integers embed.
pub trait Ring:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Send
    + Sync
{
    fn from_i64(n: i64) -> Self;

    fn pow_u32(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            base = base.clone() * base;
            e >>= 1;
        }
        acc
    }
}

/// A field: every nonzero element is invertible.
pub trait Field: Ring + Div<Output = Self> {
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self) -> Self;

    fn pow_i64(&self, e: i64) -> Self {
        if e >= 0 {
            self.pow_u32(e as u32)
        } else {
            self.inv().pow_u32((-e) as u32)
        }
    }
}

impl Ring for BigRational {
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
}

impl Field for BigRational {
    fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        self.recip()
    }
}

/// Integer reduction used where an exact rational must be an integer.
pub fn rational_to_i64(q: &BigRational) -> Option<i64> {
    if !q.is_integer() {
        return None;
    }
    i64::try_from(q.to_integer()).ok()
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Formats a rational as `p` or `p/q`.
pub fn format_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `p` or `p/q` (optional sign, no spaces).
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(BigRational::new(n, d))
}

pub fn rational_abs(q: &BigRational) -> BigRational {
    q.abs()
}

/// Arithmetic in the prime field Z/PZ for a word-sized prime `P`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp<const P: u64>(u64);

/// The Mersenne prime 2^61 - 1.
pub const MERSENNE_61: u64 = (1 << 61) - 1;

pub type F61 = Fp<MERSENNE_61>;

impl<const P: u64> Fp<P> {
    pub fn new(v: u64) -> Self {
        Fp(v % P)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    pub fn from_bigint(n: &BigInt) -> Self {
        let m = BigInt::from(P);
        let mut r = n % &m;
        if r.is_negative() {
            r += &m;
        }
        Fp(u64::try_from(r).expect("reduced residue fits in u64"))
    }

    /// Reduction of a rational whose denominator is prime to `P`.
    pub fn from_rational(q: &BigRational) -> Option<Self> {
        let d = Self::from_bigint(q.denom());
        if d.0 == 0 {
            return None;
        }
        Some(Self::from_bigint(q.numer()) * d.inv())
    }
}

impl<const P: u64> Zero for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u64> One for Fp<P> {
    fn one() -> Self {
        Fp(1)
    }
}

impl<const P: u64> Add for Fp<P> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let s = self.0 + o.0;
        Fp(if s >= P { s - P } else { s })
    }
}

impl<const P: u64> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Fp(if self.0 >= o.0 { self.0 - o.0 } else { self.0 + P - o.0 })
    }
}

impl<const P: u64> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp(if self.0 == 0 { 0 } else { P - self.0 })
    }
}

impl<const P: u64> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Fp(((self.0 as u128 * o.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Div for Fp<P> {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: Self) -> Self {
        self * o.inv()
    }
}

impl<const P: u64> Ring for Fp<P> {
    fn from_i64(n: i64) -> Self {
        let r = n.rem_euclid(P as i64);
        Fp(r as u64)
    }
}

impl<const P: u64> Field for Fp<P> {
    fn inv(&self) -> Self {
        assert!(self.0 != 0, "inverse of zero in F_p");
        // Fermat
        let mut e = P - 2;
        let mut base = *self;
        let mut acc = Fp(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fp_inverse_roundtrip() {
        for v in [1u64, 2, 3, 12345, MERSENNE_61 - 1] {
            let x = F61::new(v);
            assert_eq!(x * x.inv(), F61::one());
        }
        assert_eq!(F61::from_i64(-1), F61::new(MERSENNE_61 - 1));
    }

    #[test]
    fn rational_parse_format() {
        let q = parse_rational("-6/4").unwrap();
        assert_eq!(format_rational(&q), "-3/2");
        assert_eq!(parse_rational("7").unwrap(), rat_int(7));
        assert!(parse_rational("1/0").is_none());
        assert!(parse_rational("x").is_none());
    }

    #[test]
    fn fp_from_rational() {
        let q = rat(1, 3);
        let f = F61::from_rational(&q).unwrap();
        assert_eq!(f * F61::from_i64(3), F61::one());
    }
}
