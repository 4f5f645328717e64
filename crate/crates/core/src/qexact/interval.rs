use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

/// Closed rational interval `[lo, hi]` enclosing a real value.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RationalInterval {
    #[serde(serialize_with = "ser_ratio")]
    pub lo: BigRational,
    #[serde(serialize_with = "ser_ratio")]
    pub hi: BigRational,
}

fn ser_ratio<S: serde::Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

impl RationalInterval {
    pub fn point(v: BigRational) -> Self {
        RationalInterval { lo: v.clone(), hi: v }
    }

    pub fn contains(&self, v: &BigRational) -> bool {
        &self.lo <= v && v <= &self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    /// Product with a non-negative exact factor.
    pub fn scale_nonneg(&self, factor: &BigRational) -> Self {
        debug_assert!(!factor.is_negative());
        RationalInterval {
            lo: &self.lo * factor,
            hi: &self.hi * factor,
        }
    }
}

/// Encloses `exp(x)` for rational `0 <= x < 1` using the Taylor partial sum
/// with `terms` terms as lower end and a geometric tail bound on top.
pub fn exp_enclosure(x: &BigRational, terms: u32) -> RationalInterval {
    assert!(!x.is_negative(), "exp_enclosure expects x >= 0");
    assert!(terms >= 1);
    let mut sum = BigRational::zero();
    let mut term = BigRational::one();
    for k in 0..terms {
        sum += &term;
        term = term * x / BigRational::from_integer(BigInt::from(k + 1));
    }
    // `term` is now x^K / K!; remaining tail <= term / (1 - x/(K+1)).
    let ratio = x / BigRational::from_integer(BigInt::from(terms + 1));
    let tail = if ratio < BigRational::one() {
        term / (BigRational::one() - ratio)
    } else {
        panic!("exp_enclosure: increase terms for x = {x}");
    };
    RationalInterval {
        hi: &sum + tail,
        lo: sum,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qexact::scalar::ratio_to_f64;

    #[test]
    fn exp_contains_float_value() {
        for (n, d) in [(0, 1), (1, 96), (1, 3), (9, 10)] {
            let x = BigRational::new(n.into(), d.into());
            let iv = exp_enclosure(&x, 20);
            let e = (n as f64 / d as f64).exp();
            assert!(ratio_to_f64(&iv.lo) <= e + 1e-15);
            assert!(ratio_to_f64(&iv.hi) >= e - 1e-15);
            assert!(ratio_to_f64(&iv.width()) < 1e-15);
        }
    }

    #[test]
    fn exp_of_zero_is_tight() {
        let iv = exp_enclosure(&BigRational::zero(), 5);
        assert_eq!(iv.lo, BigRational::one());
        assert_eq!(iv.hi, BigRational::one());
    }
}
