use std::fmt;

use serde::{Deserialize, Serialize};

use super::{QPoly, Scalar};
use crate::error::{Error, Result};

/// A ratio of two polynomials in `q`, kept unreduced.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "RawQRational")]
pub struct QRational {
    pub num: QPoly,
    pub den: QPoly,
}

#[derive(Deserialize)]
struct RawQRational {
    num: QPoly,
    den: QPoly,
}

impl TryFrom<RawQRational> for QRational {
    type Error = Error;
    fn try_from(raw: RawQRational) -> Result<Self> {
        QRational::new(raw.num, raw.den)
    }
}

impl QRational {
    pub fn new(num: QPoly, den: QPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(QRational { num, den })
    }

    pub fn zero() -> Self {
        QRational {
            num: QPoly::zero(),
            den: QPoly::one(),
        }
    }

    pub fn one() -> Self {
        QRational {
            num: QPoly::one(),
            den: QPoly::one(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn evaluate<S: Scalar>(&self, q: &S) -> Result<S> {
        let d = self.den.evaluate(q);
        self.num.evaluate(q).div_ref(&d).ok_or(Error::DivisionByZero)
    }

    /// Equality as rational functions, by cross-multiplication.
    pub fn same_value(&self, other: &QRational) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }

    pub fn complement(&self) -> QRational {
        QRational {
            num: &self.den - &self.num,
            den: self.den.clone(),
        }
    }

    /// Sum of ratios sharing a denominator; `None` if denominators differ.
    pub fn sum_common<'a>(items: impl IntoIterator<Item = &'a QRational>) -> Option<QRational> {
        let mut it = items.into_iter();
        let first = it.next()?.clone();
        it.try_fold(first, |acc, r| {
            (acc.den == r.den).then(|| QRational {
                num: &acc.num + &r.num,
                den: acc.den,
            })
        })
    }
}

impl fmt::Display for QRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}
