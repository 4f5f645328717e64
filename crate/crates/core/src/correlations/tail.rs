//! Upper bound on `Prob(F_L = l)` for `l >= 1`:
//! `q^{l(l-1)} / l! · [q^{L+1}/(1-q²)]^l · exp[q^{L+3}/(1-q²)]`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::qexact::{exp_enclosure, QValue, RationalInterval, Scalar};

const EXP_TERMS: u32 = 40;

fn check(l: u64) -> Result<()> {
    if l == 0 {
        return Err(Error::Range("tail bound needs l >= 1".into()));
    }
    Ok(())
}

fn factorial(l: u64) -> BigInt {
    (1..=l).fold(BigInt::one(), |acc, k| acc * k)
}

/// The algebraic prefactor and the exponent argument, both exact.
fn parts(q: &BigRational, window: u64, l: u64) -> (BigRational, BigRational) {
    let one_minus_q2 = <BigRational as One>::one() - q * q;
    let base = q.powi(window as i64 + 1) / &one_minus_q2;
    let prefactor = q.powi((l * (l - 1)) as i64) * base.powi(l as i64)
        / BigRational::from_integer(factorial(l));
    let arg = q.powi(window as i64 + 3) / one_minus_q2;
    (prefactor, arg)
}

/// Rational enclosure of the tail bound for exact `q ∈ (0, 1)`.
pub fn tail_bound_interval(q: &BigRational, window: u64, l: u64) -> Result<RationalInterval> {
    check(l)?;
    QValue::Exact(q.clone()).validate()?;
    let (prefactor, arg) = parts(q, window, l);
    let mut terms = EXP_TERMS;
    // the enclosure needs arg < terms + 1
    while BigRational::from_integer((terms + 1).into()) <= arg {
        terms *= 2;
    }
    Ok(exp_enclosure(&arg, terms).scale_nonneg(&prefactor))
}

pub fn tail_bound_f64(q: f64, window: u64, l: u64) -> Result<f64> {
    check(l)?;
    QValue::Float(q).validate()?;
    let one_minus_q2 = 1.0 - q * q;
    let base = Scalar::powi(&q, window as i64 + 1) / one_minus_q2;
    let mut log_fact = 0.0;
    for k in 1..=l {
        log_fact += (k as f64).ln();
    }
    let log_value = (l * (l - 1)) as f64 * q.ln() + l as f64 * base.ln() - log_fact
        + Scalar::powi(&q, window as i64 + 3) / one_minus_q2;
    Ok(log_value.exp())
}
