//! Elements of cyclotomic fields Q(ζ_m), stored as residues modulo the m-th
//! cyclotomic polynomial in the power basis 1, ζ, …, ζ^(φ(m)-1).
//!
//! Operands of different conductors are lifted to the lcm of the conductors
//! before combining, so `zero()`/`one()` (conductor 1) mix freely with
//! everything else.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::poly::Poly;
use crate::scalar::{format_rational, Field, Ring};

/// Euler's totient.
pub fn totient(m: u32) -> usize {
    let mut n = m;
    let mut out = m;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if n > 1 {
        out -= out / n;
    }
    out as usize
}

fn divisors(m: u32) -> Vec<u32> {
    (1..=m).filter(|d| m.is_multiple_of(*d)).collect()
}

/// The m-th cyclotomic polynomial, obtained by exact division of x^m - 1 by
/// every Φ_d with d a proper divisor of m.
pub fn cyclo_minpoly(m: u32) -> Poly<BigInt> {
    assert!(m >= 1, "cyclotomic index must be positive");
    let mut p: Poly<BigInt> = Poly::monomial(BigInt::one(), m as usize).sub(&Poly::one());
    for d in divisors(m) {
        if d == m {
            continue;
        }
        let (q, r) = p.divrem_monic(&cyclo_minpoly(d));
        debug_assert!(r.is_zero());
        p = q;
    }
    p
}

fn minpoly_cached(m: u32) -> Arc<[i64]> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<[i64]>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().expect("cyclotomic cache poisoned").get(&m) {
        return p.clone();
    }
    let p: Arc<[i64]> = cyclo_minpoly(m)
        .coeffs()
        .iter()
        .map(|c| c.to_i64().expect("cyclotomic coefficient overflow"))
        .collect();
    cache.lock().expect("cyclotomic cache poisoned").insert(m, p.clone());
    p
}

#[derive(Clone)]
pub struct CycloNum {
    conductor: u32,
    coeffs: Vec<BigRational>,
}

/// Reduces `c` (power-basis coefficients of any length) modulo Φ_m.
fn reduce_mod(m: u32, mut c: Vec<BigRational>) -> Vec<BigRational> {
    let phi = totient(m);
    let mp = minpoly_cached(m);
    for k in (phi..c.len()).rev() {
        let top = std::mem::replace(&mut c[k], BigRational::zero());
        if top.is_zero() {
            continue;
        }
        for (j, &pj) in mp[..phi].iter().enumerate() {
            if pj != 0 {
                c[k - phi + j] -= &top * BigRational::from_integer(BigInt::from(pj));
            }
        }
    }
    c.resize(phi, BigRational::zero());
    c
}

impl CycloNum {
    pub fn from_rational(q: BigRational) -> Self {
        CycloNum {
            conductor: 1,
            coeffs: vec![q],
        }
    }

    /// Builds an element from power-basis coefficients (any length), reducing
    /// modulo Φ_m.
    pub fn from_coeffs(m: u32, coeffs: Vec<BigRational>) -> Self {
        assert!(m >= 1);
        CycloNum {
            conductor: m,
            coeffs: reduce_mod(m, coeffs),
        }
    }

    /// ζ_m^k, with ζ_m the class of x modulo Φ_m.
    pub fn zeta_pow(m: u32, k: i64) -> Self {
        let e = k.rem_euclid(m as i64) as usize;
        let mut c = vec![BigRational::zero(); e + 1];
        c[e] = BigRational::one();
        Self::from_coeffs(m, c)
    }

    pub fn zeta(m: u32) -> Self {
        Self::zeta_pow(m, 1)
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Re-expresses the element in Q(ζ_big); `conductor` must divide `big`.
    pub fn lift(&self, big: u32) -> Self {
        if big == self.conductor {
            return self.clone();
        }
        assert!(
            big.is_multiple_of(self.conductor),
            "cannot lift Q(ζ_{}) into Q(ζ_{big})",
            self.conductor
        );
        let step = (big / self.conductor) as usize;
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            let mut c = vec![BigRational::zero(); totient(big)];
            c[0] = self.coeffs[0].clone();
            return CycloNum {
                conductor: big,
                coeffs: c,
            };
        }
        let mut c = vec![BigRational::zero(); step * (self.coeffs.len() - 1) + 1];
        for (k, a) in self.coeffs.iter().enumerate() {
            c[k * step] = a.clone();
        }
        Self::from_coeffs(big, c)
    }

    /// Coefficient vector in Q(ζ_big); used as an exact hash/dedup key.
    pub fn key_in(&self, big: u32) -> Vec<BigRational> {
        self.lift(big).coeffs
    }

    fn common(a: &Self, b: &Self) -> (u32, Self, Self) {
        if a.conductor == b.conductor {
            return (a.conductor, a.clone(), b.clone());
        }
        let l = a.conductor.lcm(&b.conductor);
        (l, a.lift(l), b.lift(l))
    }

    fn add_ref(&self, o: &Self) -> Self {
        if self.conductor == o.conductor {
            let coeffs = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect();
            return CycloNum {
                conductor: self.conductor,
                coeffs,
            };
        }
        let (_, a, b) = Self::common(self, o);
        a.add_ref(&b)
    }

    fn sub_ref(&self, o: &Self) -> Self {
        self.add_ref(&o.neg_ref())
    }

    fn neg_ref(&self) -> Self {
        CycloNum {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }

    fn mul_ref(&self, o: &Self) -> Self {
        if self.conductor != o.conductor {
            if let Some(q) = self.to_rational() {
                return o.scale(&q);
            }
            if let Some(q) = o.to_rational() {
                return self.scale(&q);
            }
            let (_, a, b) = Self::common(self, o);
            return a.mul_ref(&b);
        }
        let n = self.coeffs.len();
        if n == 1 {
            return CycloNum {
                conductor: self.conductor,
                coeffs: vec![&self.coeffs[0] * &o.coeffs[0]],
            };
        }
        let mut prod = vec![BigRational::zero(); 2 * n - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        CycloNum {
            conductor: self.conductor,
            coeffs: reduce_mod(self.conductor, prod),
        }
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        CycloNum {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|a| a * q).collect(),
        }
    }

    fn inv_ref(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero in a cyclotomic field");
        if let Some(q) = self.to_rational() {
            let mut out = CycloNum::from_rational(q.recip());
            if self.conductor != 1 {
                out = out.lift(self.conductor);
            }
            return out;
        }
        let m = self.conductor;
        let a: Poly<BigRational> = Poly::new(self.coeffs.clone());
        let phi: Poly<BigRational> = Poly::new(
            minpoly_cached(m)
                .iter()
                .map(|&c| BigRational::from_integer(c.into()))
                .collect(),
        );
        let (g, s, _) = a.ext_gcd(&phi);
        debug_assert!(g.degree() == Some(0));
        CycloNum::from_coeffs(m, s.into_coeffs())
    }

    /// Multiplicative order if the element is a root of unity, searching
    /// exponents up to `limit`.
    pub fn root_of_unity_order(&self, limit: u32) -> Option<u32> {
        let one = CycloNum::one();
        let mut p = self.clone();
        for k in 1..=limit {
            if p == one {
                return Some(k);
            }
            p = p.mul_ref(self);
        }
        None
    }
}

impl fmt::Debug for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let c = format_rational(c);
            parts.push(match k {
                0 => c,
                1 => format!("{c}*z{}", self.conductor),
                _ => format!("{c}*z{}^{k}", self.conductor),
            });
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl PartialEq for CycloNum {
    fn eq(&self, o: &Self) -> bool {
        if self.conductor == o.conductor {
            return self.coeffs == o.coeffs;
        }
        let (_, a, b) = Self::common(self, o);
        a.coeffs == b.coeffs
    }
}

impl Eq for CycloNum {}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $inner:ident) => {
        impl $tr for CycloNum {
            type Output = CycloNum;
            fn $m(self, o: CycloNum) -> CycloNum {
                self.$inner(&o)
            }
        }
        impl<'a> $tr<&'a CycloNum> for &'a CycloNum {
            type Output = CycloNum;
            fn $m(self, o: &'a CycloNum) -> CycloNum {
                self.$inner(o)
            }
        }
    };
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);

impl Div for CycloNum {
    type Output = CycloNum;
    fn div(self, o: CycloNum) -> CycloNum {
        self.mul_ref(&o.inv_ref())
    }
}

impl Neg for CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        self.neg_ref()
    }
}

impl Zero for CycloNum {
    fn zero() -> Self {
        CycloNum::from_rational(BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
}

impl One for CycloNum {
    fn one() -> Self {
        CycloNum::from_rational(BigRational::one())
    }
}

impl Ring for CycloNum {
    fn from_i64(n: i64) -> Self {
        CycloNum::from_rational(BigRational::from_integer(n.into()))
    }
}

impl Field for CycloNum {
    fn inv(&self) -> Self {
        self.inv_ref()
    }
}

impl From<BigRational> for CycloNum {
    fn from(q: BigRational) -> Self {
        CycloNum::from_rational(q)
    }
}

/// Scalars that embed into some cyclotomic field.
pub trait ExactScalar: Field {
    fn to_cyclo(&self) -> CycloNum;
    fn from_rational(q: BigRational) -> Self;
}

impl ExactScalar for BigRational {
    fn to_cyclo(&self) -> CycloNum {
        CycloNum::from_rational(self.clone())
    }
    fn from_rational(q: BigRational) -> Self {
        q
    }
}

impl ExactScalar for CycloNum {
    fn to_cyclo(&self) -> CycloNum {
        self.clone()
    }
    fn from_rational(q: BigRational) -> Self {
        CycloNum::from_rational(q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn ints(p: &Poly<BigInt>) -> Vec<i64> {
        p.coeffs().iter().map(|c| c.to_i64().unwrap()).collect()
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(ints(&cyclo_minpoly(1)), vec![-1, 1]);
        assert_eq!(ints(&cyclo_minpoly(2)), vec![1, 1]);
        assert_eq!(ints(&cyclo_minpoly(12)), vec![1, 0, -1, 0, 1]);
        assert_eq!(ints(&cyclo_minpoly(9)), vec![1, 0, 0, 1, 0, 0, 1]);
    }

    #[test]
    fn phi_12_oracle() {
        // x^12 - 1 divided by Φ1 Φ2 Φ3 Φ4 Φ6 = (x^2-1)(x^2+x+1)(x^2+1)(x^2-x+1)
        let mut p: Poly<BigInt> = Poly::from_i64s(&[-1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]);
        for d in [
            Poly::from_i64s(&[-1, 1]),
            Poly::from_i64s(&[1, 1]),
            Poly::from_i64s(&[1, 1, 1]),
            Poly::from_i64s(&[1, 0, 1]),
            Poly::from_i64s(&[1, -1, 1]),
        ] {
            let (q, r) = p.divrem_monic(&d);
            assert!(r.is_zero());
            p = q;
        }
        assert_eq!(p, cyclo_minpoly(12));
    }

    #[test]
    fn degree_is_totient() {
        for m in 1..=40 {
            assert_eq!(cyclo_minpoly(m).degree(), Some(totient(m)));
        }
    }

    #[test]
    fn zeta_has_exact_order() {
        for m in 1..=30u32 {
            let z = CycloNum::zeta(m);
            assert_eq!(z.coeffs().len(), totient(m));
            let mut p = CycloNum::one();
            for k in 1..=m {
                p = p * z.clone();
                if k < m {
                    assert!(p != CycloNum::one(), "zeta_{m}^{k} == 1");
                }
            }
            assert_eq!(p, CycloNum::one(), "zeta_{m}^{m} != 1");
            // minimal polynomial evaluates to zero
            let mp = cyclo_minpoly(m);
            let val = mp.coeffs().iter().rev().fold(CycloNum::zero(), |acc, c| {
                acc * z.clone() + CycloNum::from_i64(c.to_i64().unwrap())
            });
            assert!(val.is_zero());
        }
    }

    #[test]
    fn field_inverse_and_lift() {
        let z = CycloNum::zeta(12);
        let a = z.clone() + CycloNum::from_rational(rat(1, 2));
        let b = a.inv();
        assert_eq!(a * b, CycloNum::one());
        // ζ_3 = ζ_12^4
        let z3 = CycloNum::zeta(3);
        assert_eq!(z3.lift(12), CycloNum::zeta_pow(12, 4));
        assert_eq!(z3, CycloNum::zeta_pow(12, 4));
        assert_eq!(CycloNum::zeta(2), CycloNum::from_i64(-1));
        assert_eq!(CycloNum::zeta(4).root_of_unity_order(100), Some(4));
    }
}
