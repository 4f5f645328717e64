use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Field in which polynomials and bounds are evaluated.
///
/// Implemented for exact rationals (decidable comparisons) and `f64`.
pub trait Scalar: Clone + PartialOrd + std::fmt::Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_bigint(c: &BigInt) -> Self;
    fn from_i64(c: i64) -> Self;
    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    /// `None` when `other` is zero.
    fn div_ref(&self, other: &Self) -> Option<Self>;
    fn is_zero_value(&self) -> bool;
    fn to_f64(&self) -> f64;

    /// Integer power; negative exponents take the reciprocal.
    fn powi(&self, exp: i64) -> Self {
        let mut base = self.clone();
        let mut e = exp.unsigned_abs();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_ref(&base);
            }
        }
        if exp < 0 {
            Self::one().div_ref(&acc).expect("negative power of zero")
        } else {
            acc
        }
    }
}

impl Scalar for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_bigint(c: &BigInt) -> Self {
        BigRational::from_integer(c.clone())
    }
    fn from_i64(c: i64) -> Self {
        BigRational::from_integer(c.into())
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn div_ref(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            None
        } else {
            Some(self / other)
        }
    }
    fn is_zero_value(&self) -> bool {
        self.is_zero()
    }
    fn to_f64(&self) -> f64 {
        ratio_to_f64(self)
    }
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_bigint(c: &BigInt) -> Self {
        c.to_f64().unwrap_or(if c.is_negative() { f64::NEG_INFINITY } else { f64::INFINITY })
    }
    fn from_i64(c: i64) -> Self {
        c as f64
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn div_ref(&self, other: &Self) -> Option<Self> {
        if *other == 0.0 {
            None
        } else {
            Some(self / other)
        }
    }
    fn is_zero_value(&self) -> bool {
        *self == 0.0
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn powi(&self, exp: i64) -> Self {
        match i32::try_from(exp) {
            Ok(e) => f64::powi(*self, e),
            Err(_) => f64::powf(*self, exp as f64),
        }
    }
}

/// Nearest-ish `f64` for a big rational without overflowing on huge parts.
pub fn ratio_to_f64(r: &BigRational) -> f64 {
    if let (Some(n), Some(d)) = (r.numer().to_f64(), r.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    let nb = r.numer().bits() as i64;
    let db = r.denom().bits() as i64;
    let shift = nb - db;
    let scaled = if shift > 60 {
        r / BigRational::from_integer(BigInt::one() << (shift - 60) as usize)
    } else if shift < -60 {
        r * BigRational::from_integer(BigInt::one() << (-shift - 60) as usize)
    } else {
        return num_traits::ToPrimitive::to_f64(r).unwrap_or(f64::NAN);
    };
    let base = num_traits::ToPrimitive::to_f64(&scaled).unwrap_or(f64::NAN);
    let exp = if shift > 60 { shift - 60 } else { -(-shift - 60) };
    base * 2f64.powi(exp as i32)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn powers() {
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(half.powi(3), BigRational::new(1.into(), 8.into()));
        assert_eq!(half.powi(-2), BigRational::from_integer(4.into()));
        assert_eq!(Scalar::powi(&0.5_f64, -1), 2.0);
        assert_eq!(half.powi(0), <BigRational as Scalar>::one());
    }

    #[test]
    fn huge_ratio_to_float() {
        let big = BigRational::new(BigInt::one() << 2000usize, (BigInt::one() << 1999usize) * 3);
        assert!((ratio_to_f64(&big) - 2.0 / 3.0).abs() < 1e-15);
        let tiny = BigRational::new(BigInt::one(), BigInt::one() << 1100usize);
        assert_eq!(ratio_to_f64(&tiny), 0.0);
    }
}
