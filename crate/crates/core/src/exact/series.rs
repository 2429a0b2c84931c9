//! Finite-support Puiseux series Σ c_e t^(e/b).
//!
//! Every value is kept in normal form: no stored zero coefficients and the
//! ramification `b` reduced to the smallest denominator that expresses all
//! exponents, so equal series built through different covers compare equal.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::scalar::{format_rational, Ring};

#[derive(Clone, PartialEq)]
pub struct PuiseuxSeries<C> {
    ramification: u32,
    terms: BTreeMap<i64, C>,
    /// Terms are known only strictly below t^precision; `None` means exact.
    precision: Option<BigRational>,
}

fn exp_rat(e: i64, b: u32) -> BigRational {
    BigRational::new(BigInt::from(e), BigInt::from(b))
}

impl<C: Ring> PuiseuxSeries<C> {
    /// Builds `Σ c t^(e/b)` from `(e, c)` pairs; repeated exponents are summed.
    pub fn new(ramification: u32, terms: impl IntoIterator<Item = (i64, C)>) -> Self {
        assert!(ramification >= 1, "ramification must be positive");
        let mut map: BTreeMap<i64, C> = BTreeMap::new();
        for (e, c) in terms {
            let slot = map.entry(e).or_insert_with(C::zero);
            *slot = slot.clone() + c;
        }
        Self::normalized(ramification, map, None)
    }

    pub fn constant(c: C) -> Self {
        Self::new(1, [(0, c)])
    }

    /// `c t^(num/den)`.
    pub fn monomial(c: C, num: i64, den: u32) -> Self {
        Self::new(den, [(num, c)])
    }

    pub fn with_precision(mut self, precision: BigRational) -> Self {
        self.precision = Some(precision);
        Self::normalized(self.ramification, self.terms, self.precision)
    }

    fn normalized(b: u32, mut terms: BTreeMap<i64, C>, precision: Option<BigRational>) -> Self {
        terms.retain(|_, c| !c.is_zero());
        if let Some(p) = &precision {
            terms.retain(|&e, _| &exp_rat(e, b) < p);
        }
        let mut g = b as i64;
        for &e in terms.keys() {
            g = g.gcd(&e);
            if g == 1 {
                break;
            }
        }
        if terms.is_empty() {
            g = b as i64;
        }
        let (b, terms) = if g > 1 {
            (b / g as u32, terms.into_iter().map(|(e, c)| (e / g, c)).collect())
        } else {
            (b, terms)
        };
        PuiseuxSeries {
            ramification: b,
            terms,
            precision,
        }
    }

    pub fn ramification(&self) -> u32 {
        self.ramification
    }

    pub fn precision(&self) -> Option<&BigRational> {
        self.precision.as_ref()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// `(exponent in t, coefficient)` in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (BigRational, &C)> + '_ {
        self.terms.iter().map(move |(&e, c)| (exp_rat(e, self.ramification), c))
    }

    /// Raw `(e, c)` pairs meaning `c t^(e/b)` with `b = ramification()`.
    pub fn raw_terms(&self) -> impl Iterator<Item = (i64, &C)> + '_ {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn coefficient(&self, exponent: &BigRational) -> C {
        let scaled = exponent * BigRational::from_integer(self.ramification.into());
        if !scaled.is_integer() {
            return C::zero();
        }
        let e: i64 = scaled.to_integer().try_into().expect("exponent overflow");
        self.terms.get(&e).cloned().unwrap_or_else(C::zero)
    }

    /// Smallest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<BigRational> {
        self.terms.keys().next().map(|&e| exp_rat(e, self.ramification))
    }

    pub fn leading(&self) -> Option<(BigRational, &C)> {
        self.terms
            .iter()
            .next()
            .map(|(&e, c)| (exp_rat(e, self.ramification), c))
    }

    /// Order of the pole, `max(0, -valuation)`. The zero series has pole
    /// order 0; use [`is_zero`](Self::is_zero) to tell it apart.
    pub fn ord_pole(&self) -> BigRational {
        match self.valuation() {
            Some(v) if v < BigRational::zero() => -v,
            _ => BigRational::zero(),
        }
    }

    /// Evaluation at t = 1 (all fractional powers of 1 taken to be 1).
    pub fn specialize_one(&self) -> C {
        self.terms.values().fold(C::zero(), |acc, c| acc + c.clone())
    }

    /// Substitution t := u^c, expressed as a series in u.
    pub fn substitute_power(&self, c: u32) -> Self {
        assert!(c >= 1);
        let terms = self.terms.iter().map(|(&e, v)| (e * c as i64, v.clone())).collect();
        let precision = self.precision.as_ref().map(|p| p * BigRational::from_integer(c.into()));
        Self::normalized(self.ramification, terms, precision)
    }

    pub fn map_coeffs<D: Ring>(&self, f: impl Fn(&C) -> D) -> PuiseuxSeries<D> {
        let terms = self.terms.iter().map(|(&e, c)| (e, f(c))).collect();
        PuiseuxSeries::normalized(self.ramification, terms, self.precision.clone())
    }

    pub fn scale(&self, k: &C) -> Self {
        self.map_coeffs(|c| c.clone() * k.clone())
    }

    fn rebase(&self, b: u32) -> BTreeMap<i64, C> {
        let f = (b / self.ramification) as i64;
        self.terms.iter().map(|(&e, c)| (e * f, c.clone())).collect()
    }

    fn min_precision(a: &Option<BigRational>, b: &Option<BigRational>) -> Option<BigRational> {
        match (a, b) {
            (Some(x), Some(y)) => Some(x.min(y).clone()),
            (Some(x), None) | (None, Some(x)) => Some(x.clone()),
            (None, None) => None,
        }
    }

    fn add_ref(&self, o: &Self) -> Self {
        let b = self.ramification.lcm(&o.ramification);
        let mut terms = self.rebase(b);
        for (e, c) in o.rebase(b) {
            let slot = terms.entry(e).or_insert_with(C::zero);
            *slot = slot.clone() + c;
        }
        Self::normalized(b, terms, Self::min_precision(&self.precision, &o.precision))
    }

    fn mul_ref(&self, o: &Self) -> Self {
        let b = self.ramification.lcm(&o.ramification);
        let (ta, tb) = (self.rebase(b), o.rebase(b));
        let mut terms: BTreeMap<i64, C> = BTreeMap::new();
        for (ea, ca) in &ta {
            for (eb, cb) in &tb {
                let slot = terms.entry(ea + eb).or_insert_with(C::zero);
                *slot = slot.clone() + ca.clone() * cb.clone();
            }
        }
        let pa = self.precision.as_ref().zip(o.valuation()).map(|(p, v)| p + v);
        let pb = o.precision.as_ref().zip(self.valuation()).map(|(p, v)| p + v);
        Self::normalized(b, terms, Self::min_precision(&pa, &pb))
    }
}

impl<C: Ring> Add for PuiseuxSeries<C> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        self.add_ref(&o)
    }
}

impl<C: Ring> Sub for PuiseuxSeries<C> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self.add_ref(&-o)
    }
}

impl<C: Ring> Mul for PuiseuxSeries<C> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        self.mul_ref(&o)
    }
}

impl<C: Ring> Neg for PuiseuxSeries<C> {
    type Output = Self;
    fn neg(self) -> Self {
        self.map_coeffs(|c| -c.clone())
    }
}

impl<C: Ring> Zero for PuiseuxSeries<C> {
    fn zero() -> Self {
        PuiseuxSeries {
            ramification: 1,
            terms: BTreeMap::new(),
            precision: None,
        }
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<C: Ring> One for PuiseuxSeries<C> {
    fn one() -> Self {
        Self::constant(C::one())
    }
}

impl<C: Ring> Ring for PuiseuxSeries<C> {
    fn from_i64(n: i64) -> Self {
        Self::constant(C::from_i64(n))
    }
}

impl<C: Ring + fmt::Display> fmt::Display for PuiseuxSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            write!(f, "0")?;
        }
        for (i, (e, c)) in self.terms().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if e.is_zero() {
                write!(f, "({c})")?;
            } else {
                write!(f, "({c})*t^({})", format_rational(&e))?;
            }
        }
        if let Some(p) = &self.precision {
            write!(f, " + O(t^({}))", format_rational(p))?;
        }
        Ok(())
    }
}

impl<C: Ring> fmt::Debug for PuiseuxSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PuiseuxSeries")
            .field("b", &self.ramification)
            .field("terms", &self.terms)
            .field("precision", &self.precision)
            .finish()
    }
}

pub fn is_one<C: Ring>(c: &C) -> bool {
    c == &C::one()
}
