//! Sparse univariate polynomials in `q` with big-integer coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use super::Scalar;
use crate::error::{Error, Result};

/// A polynomial in `q` stored as `(exponent, coefficient)` pairs.
///
/// Terms are kept sorted by exponent and no stored coefficient is zero, so
/// two values are equal exactly when their term lists are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct QPoly {
    terms: Vec<(u64, BigInt)>,
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(0, BigInt::one())
    }

    /// `coeff * q^exp`.
    pub fn monomial(exp: u64, coeff: impl Into<BigInt>) -> Self {
        let coeff = coeff.into();
        if coeff.is_zero() {
            return Self::zero();
        }
        QPoly {
            terms: vec![(exp, coeff)],
        }
    }

    /// `q^exp`.
    pub fn q_pow(exp: u64) -> Self {
        Self::monomial(exp, 1)
    }

    /// `1 - q^exp`.
    pub fn one_minus_q_pow(exp: u64) -> Self {
        Self::one() - Self::q_pow(exp)
    }

    /// Builds a polynomial from arbitrary terms; repeated exponents are summed
    /// and zero coefficients dropped.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (u64, C)>,
        C: Into<BigInt>,
    {
        let mut acc: BTreeMap<u64, BigInt> = BTreeMap::new();
        for (e, c) in terms {
            *acc.entry(e).or_insert_with(BigInt::zero) += c.into();
        }
        Self::from_map(acc)
    }

    fn from_map(map: BTreeMap<u64, BigInt>) -> Self {
        QPoly {
            terms: map.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn terms(&self) -> &[(u64, BigInt)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn min_degree(&self) -> Option<u64> {
        self.terms.first().map(|(e, _)| *e)
    }

    pub fn degree(&self) -> Option<u64> {
        self.terms.last().map(|(e, _)| *e)
    }

    pub fn coeff(&self, exp: u64) -> BigInt {
        match self.terms.binary_search_by_key(&exp, |(e, _)| *e) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => BigInt::zero(),
        }
    }

    /// Value at `q = 1`, i.e. the coefficient sum.
    pub fn coefficient_sum(&self) -> BigInt {
        self.terms.iter().map(|(_, c)| c).sum()
    }

    pub fn all_coefficients_positive(&self) -> bool {
        self.terms.iter().all(|(_, c)| c.is_positive())
    }

    pub fn all_exponents_even(&self) -> bool {
        self.terms.iter().all(|(e, _)| e % 2 == 0)
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: u64) -> Self {
        QPoly {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// Divides by `q^k`, or `None` if some exponent would become negative.
    pub fn unshift(&self, k: u64) -> Option<Self> {
        if self.min_degree().is_some_and(|d| d < k) {
            return None;
        }
        Some(QPoly {
            terms: self.terms.iter().map(|(e, c)| (e - k, c.clone())).collect(),
        })
    }

    pub fn scale(&self, factor: &BigInt) -> Self {
        if factor.is_zero() {
            return Self::zero();
        }
        QPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, c * factor)).collect(),
        }
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Polynomial long division, `self = quotient * divisor + remainder`.
    ///
    /// Fails with `InexactDivision` if a leading coefficient does not divide
    /// exactly over the integers.
    pub fn div_rem(&self, divisor: &QPoly) -> Result<(QPoly, QPoly)> {
        let (dlead_exp, dlead) = divisor.terms.last().ok_or(Error::DivisionByZero)?;
        let mut rem: BTreeMap<u64, BigInt> = self.terms.iter().cloned().collect();
        let mut quot: BTreeMap<u64, BigInt> = BTreeMap::new();
        while let Some((&top, top_coeff)) = rem.iter().next_back() {
            if top < *dlead_exp {
                break;
            }
            let (q, r) = top_coeff.div_rem(dlead);
            if !r.is_zero() {
                return Err(Error::InexactDivision);
            }
            let shift = top - dlead_exp;
            for (e, c) in &divisor.terms {
                let entry = rem.entry(e + shift).or_insert_with(BigInt::zero);
                *entry -= c * &q;
                if entry.is_zero() {
                    rem.remove(&(e + shift));
                }
            }
            quot.insert(shift, q);
        }
        Ok((Self::from_map(quot), Self::from_map(rem)))
    }

    /// Quotient of a division known to be exact.
    pub fn div_exact(&self, divisor: &QPoly) -> Result<QPoly> {
        let (q, r) = self.div_rem(divisor)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::InexactDivision)
        }
    }

    /// Horner evaluation in any scalar field.
    pub fn evaluate<S: Scalar>(&self, q: &S) -> S {
        let mut acc = S::zero();
        let mut prev_exp: Option<u64> = None;
        for (e, c) in self.terms.iter().rev() {
            if let Some(p) = prev_exp {
                acc = acc.mul_ref(&q.powi((p - e) as i64));
            }
            acc = acc.add_ref(&S::from_bigint(c));
            prev_exp = Some(*e);
        }
        match prev_exp {
            Some(p) => acc.mul_ref(&q.powi(p as i64)),
            None => acc,
        }
    }

    fn mul_impl(&self, other: &QPoly) -> QPoly {
        if self.is_zero() || other.is_zero() {
            return QPoly::zero();
        }
        if self.terms.len() == 1 || other.terms.len() == 1 {
            let (mono, poly) = if self.terms.len() == 1 {
                (self, other)
            } else {
                (other, self)
            };
            let (me, mc) = &mono.terms[0];
            return QPoly {
                terms: poly.terms.iter().map(|(e, c)| (e + me, c * mc)).collect(),
            };
        }
        let lo = self.min_degree().unwrap() + other.min_degree().unwrap();
        let hi = self.degree().unwrap() + other.degree().unwrap();
        let span = (hi - lo + 1) as usize;
        let products = self.terms.len().saturating_mul(other.terms.len());
        if span <= products.saturating_mul(4) {
            // dense accumulator over the exponent window
            let mut acc = vec![BigInt::zero(); span];
            for (ea, ca) in &self.terms {
                for (eb, cb) in &other.terms {
                    acc[(ea + eb - lo) as usize] += ca * cb;
                }
            }
            QPoly {
                terms: acc
                    .into_iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(i, c)| (lo + i as u64, c))
                    .collect(),
            }
        } else {
            let mut acc: BTreeMap<u64, BigInt> = BTreeMap::new();
            for (ea, ca) in &self.terms {
                for (eb, cb) in &other.terms {
                    *acc.entry(ea + eb).or_insert_with(BigInt::zero) += ca * cb;
                }
            }
            Self::from_map(acc)
        }
    }

    fn add_impl(&self, other: &QPoly, negate_other: bool) -> QPoly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b = &other.terms;
        let sign = |c: &BigInt| if negate_other { -c } else { c.clone() };
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i].clone());
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                out.push((b[j].0, sign(&b[j].1)));
                j += 1;
            } else {
                let c = if negate_other {
                    &a[i].1 - &b[j].1
                } else {
                    &a[i].1 + &b[j].1
                };
                if !c.is_zero() {
                    out.push((a[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
        QPoly { terms: out }
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            match (*e, abs.is_one()) {
                (0, _) => write!(f, "{abs}")?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{abs}*q")?,
                (e, true) => write!(f, "q^{e}")?,
                (e, false) => write!(f, "{abs}*q^{e}")?,
            }
        }
        Ok(())
    }
}

impl From<i64> for QPoly {
    fn from(c: i64) -> Self {
        QPoly::monomial(0, c)
    }
}

impl<'a> Add<&'a QPoly> for &'a QPoly {
    type Output = QPoly;
    fn add(self, rhs: &'a QPoly) -> QPoly {
        self.add_impl(rhs, false)
    }
}

impl Add for QPoly {
    type Output = QPoly;
    fn add(self, rhs: QPoly) -> QPoly {
        self.add_impl(&rhs, false)
    }
}

impl<'a> Sub<&'a QPoly> for &'a QPoly {
    type Output = QPoly;
    fn sub(self, rhs: &'a QPoly) -> QPoly {
        self.add_impl(rhs, true)
    }
}

impl Sub for QPoly {
    type Output = QPoly;
    fn sub(self, rhs: QPoly) -> QPoly {
        self.add_impl(&rhs, true)
    }
}

impl<'a> Mul<&'a QPoly> for &'a QPoly {
    type Output = QPoly;
    fn mul(self, rhs: &'a QPoly) -> QPoly {
        self.mul_impl(rhs)
    }
}

impl Mul for QPoly {
    type Output = QPoly;
    fn mul(self, rhs: QPoly) -> QPoly {
        self.mul_impl(&rhs)
    }
}

impl Neg for QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly {
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl std::iter::Sum for QPoly {
    fn sum<I: Iterator<Item = QPoly>>(iter: I) -> QPoly {
        iter.fold(QPoly::zero(), |acc, p| &acc + &p)
    }
}

impl<'a> std::iter::Sum<&'a QPoly> for QPoly {
    fn sum<I: Iterator<Item = &'a QPoly>>(iter: I) -> QPoly {
        iter.fold(QPoly::zero(), |acc, p| &acc + p)
    }
}

// JSON form: [[exponent, "coefficient"], ...] sorted by exponent.
impl Serialize for QPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for (e, c) in &self.terms {
            seq.serialize_element(&(e, c.to_str_radix(10)))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for QPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct TermsVisitor;
        impl<'de> Visitor<'de> for TermsVisitor {
            type Value = QPoly;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an array of [exponent, \"coefficient\"] pairs")
            }
            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> std::result::Result<QPoly, A::Error> {
                let mut terms: Vec<(u64, BigInt)> = Vec::new();
                while let Some((e, c)) = seq.next_element::<(u64, String)>()? {
                    let coeff: BigInt = c
                        .parse()
                        .map_err(|_| de::Error::custom(format!("bad coefficient {c:?}")))?;
                    if coeff.is_zero() {
                        return Err(de::Error::custom("zero coefficient in canonical form"));
                    }
                    if terms.last().is_some_and(|(prev, _)| *prev >= e) {
                        return Err(de::Error::custom("exponents must be strictly increasing"));
                    }
                    terms.push((e, coeff));
                }
                Ok(QPoly { terms })
            }
        }
        deserializer.deserialize_seq(TermsVisitor)
    }
}
