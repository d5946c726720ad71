//! Unreduced count pairs and exact rationals.
//!
//! A [`Tally`] is a probability kept as `(winners, total)` with no
//! reduction, so that mediant sums of tallies count disjoint events.
//! [`ExactRational`] is the reduced form used for comparisons, limits and
//! display.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{invalid, Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Tally {
    wins: BigUint,
    total: BigUint,
}

impl Tally {
    pub fn new(wins: impl Into<BigUint>, total: impl Into<BigUint>) -> Result<Self> {
        let (wins, total) = (wins.into(), total.into());
        if wins > total {
            return Err(invalid(format!("tally {wins}/{total} has wins above total")));
        }
        Ok(Tally { wins, total })
    }

    /// The empty tally `0/0`, the identity for [`Tally::oplus`].
    pub fn empty() -> Self {
        Tally::default()
    }

    pub fn wins(&self) -> &BigUint {
        &self.wins
    }

    pub fn total(&self) -> &BigUint {
        &self.total
    }

    /// Mediant sum `(a/b) ⊕ (c/d) = (a+c)/(b+d)`.
    pub fn oplus(&self, other: &Tally) -> Tally {
        Tally {
            wins: &self.wins + &other.wins,
            total: &self.total + &other.total,
        }
    }

    /// Compares the represented rationals by cross-multiplication.
    ///
    /// A tally with zero total compares as zero.
    pub fn cmp_as_rational(&self, other: &Tally) -> Ordering {
        match (self.total.is_zero(), other.total.is_zero()) {
            (true, true) => Ordering::Equal,
            (true, false) => BigUint::zero().cmp(&other.wins),
            (false, true) => self.wins.cmp(&BigUint::zero()),
            (false, false) => (&self.wins * &other.total).cmp(&(&other.wins * &self.total)),
        }
    }

    pub fn to_rational(&self) -> Result<ExactRational> {
        if self.total.is_zero() {
            return Err(invalid("tally with zero total has no rational value"));
        }
        Ok(ExactRational::from_biguints(&self.wins, &self.total))
    }

    pub fn to_f64(&self) -> f64 {
        match self.to_rational() {
            Ok(r) => r.to_f64(),
            Err(_) => f64::NAN,
        }
    }
}

impl Add for Tally {
    type Output = Tally;
    fn add(self, rhs: Tally) -> Tally {
        self.oplus(&rhs)
    }
}

impl AddAssign<&Tally> for Tally {
    fn add_assign(&mut self, rhs: &Tally) {
        self.wins += &rhs.wins;
        self.total += &rhs.total;
    }
}

impl Sum for Tally {
    fn sum<I: Iterator<Item = Tally>>(iter: I) -> Tally {
        iter.fold(Tally::empty(), |a, b| a + b)
    }
}

impl<'a> Sum<&'a Tally> for Tally {
    fn sum<I: Iterator<Item = &'a Tally>>(iter: I) -> Tally {
        let mut acc = Tally::empty();
        for t in iter {
            acc += t;
        }
        acc
    }
}

impl fmt::Display for Tally {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.wins, self.total)
    }
}

impl fmt::Debug for Tally {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tally({}/{})", self.wins, self.total)
    }
}

impl FromStr for Tally {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (a, b) = s
            .trim()
            .split_once('/')
            .ok_or_else(|| Error::Parse(format!("tally {s:?} lacks '/'")))?;
        let wins = BigUint::from_str(a.trim()).map_err(|_| Error::Parse(format!("bad wins {a:?}")))?;
        let total =
            BigUint::from_str(b.trim()).map_err(|_| Error::Parse(format!("bad total {b:?}")))?;
        Tally::new(wins, total).map_err(|e| Error::Parse(e.to_string()))
    }
}

impl Serialize for Tally {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Tally {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A reduced rational with positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExactRational(BigRational);

impl ExactRational {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self> {
        let (n, d) = (numer.into(), denom.into());
        if d.is_zero() {
            return Err(invalid("zero denominator"));
        }
        Ok(ExactRational(BigRational::new(n, d)))
    }

    pub fn from_biguints(n: &BigUint, d: &BigUint) -> Self {
        ExactRational(BigRational::new(BigInt::from(n.clone()), BigInt::from(d.clone())))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        ExactRational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        ExactRational(BigRational::zero())
    }

    pub fn one() -> Self {
        ExactRational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn inner(&self) -> &BigRational {
        &self.0
    }

    pub fn from_inner(r: BigRational) -> Self {
        ExactRational(r)
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Truncated decimal expansion with `digits` places, computed exactly.
    /// Display only.
    pub fn to_decimal(&self, digits: usize) -> String {
        let neg = self.0.is_negative();
        let n = self.0.numer().abs();
        let d = self.0.denom().clone();
        let (int, mut rem) = n.div_rem(&d);
        let mut s = String::new();
        if neg {
            s.push('-');
        }
        s.push_str(&int.to_string());
        if digits > 0 {
            s.push('.');
            let ten = BigInt::from(10u8);
            for _ in 0..digits {
                rem *= &ten;
                let (q, r) = rem.div_rem(&d);
                s.push_str(&q.to_string());
                rem = r;
            }
        }
        s
    }
}

impl std::ops::Add for &ExactRational {
    type Output = ExactRational;
    fn add(self, rhs: &ExactRational) -> ExactRational {
        ExactRational(&self.0 + &rhs.0)
    }
}

impl std::ops::Sub for &ExactRational {
    type Output = ExactRational;
    fn sub(self, rhs: &ExactRational) -> ExactRational {
        ExactRational(&self.0 - &rhs.0)
    }
}

impl std::ops::Mul for &ExactRational {
    type Output = ExactRational;
    fn mul(self, rhs: &ExactRational) -> ExactRational {
        ExactRational(&self.0 * &rhs.0)
    }
}

impl fmt::Display for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl fmt::Debug for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for ExactRational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (a, b) = s.split_once('/').unwrap_or((s, "1"));
        let n = BigInt::from_str(a.trim()).map_err(|_| Error::Parse(format!("bad numerator {a:?}")))?;
        let d =
            BigInt::from_str(b.trim()).map_err(|_| Error::Parse(format!("bad denominator {b:?}")))?;
        ExactRational::new(n, d).map_err(|e| Error::Parse(e.to_string()))
    }
}

impl Serialize for ExactRational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ExactRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
