use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use super::scalar::ratio_to_f64;
use crate::error::{Error, Result};

/// A value of the deformation parameter `q`, either exact or binary float.
#[derive(Clone, Debug, PartialEq)]
pub enum QValue {
    Exact(BigRational),
    Float(f64),
}

impl QValue {
    pub fn exact(num: i64, den: i64) -> Self {
        QValue::Exact(BigRational::new(num.into(), den.into()))
    }

    pub fn as_f64(&self) -> f64 {
        match self {
            QValue::Exact(r) => ratio_to_f64(r),
            QValue::Float(x) => *x,
        }
    }

    pub fn mode(&self) -> &'static str {
        match self {
            QValue::Exact(_) => "exact",
            QValue::Float(_) => "float",
        }
    }

    /// Checks `0 < q < 1`.
    pub fn validate(&self) -> Result<()> {
        let ok = match self {
            QValue::Exact(r) => r.is_positive() && *r < BigRational::one(),
            QValue::Float(x) => x.is_finite() && *x > 0.0 && *x < 1.0,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Domain(format!("q must satisfy 0 < q < 1, got {self}")))
        }
    }

    /// Parses `"p/r"` or an integer as an exact rational.
    pub fn parse_exact(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("expected an exact rational like 1/2, got {s:?}"));
        let r = match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(bad());
                }
                BigRational::new(n, d)
            }
            None => BigRational::from_integer(s.parse().map_err(|_| bad())?),
        };
        Ok(QValue::Exact(r))
    }

    pub fn parse_float(s: &str) -> Result<Self> {
        s.trim()
            .parse::<f64>()
            .map(QValue::Float)
            .map_err(|_| Error::Parse(format!("expected a float, got {s:?}")))
    }
}

impl FromStr for QValue {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        QValue::parse_exact(s)
    }
}

impl fmt::Display for QValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QValue::Exact(r) => write!(f, "{r}"),
            QValue::Float(x) => write!(f, "{x}"),
        }
    }
}

impl Serialize for QValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            QValue::Exact(r) => s.serialize_str(&r.to_string()),
            QValue::Float(x) => s.serialize_f64(*x),
        }
    }
}

/// Anisotropy `Δ = (q + 1/q)/2`, boundary field `A(Δ) = ½·sqrt(1 − Δ⁻²)` and
/// inverse temperature `β` of the equivalent classical area model, `q² = e^{−β}`.
#[derive(Clone, Debug, Serialize)]
pub struct ModelParameters {
    pub q: QValue,
    /// Exact when `q` is exact.
    pub delta_exact: Option<String>,
    pub delta: f64,
    pub boundary_field: f64,
    pub beta: f64,
    /// `e^{−β}` recomputed from `β`; should reproduce `q²`.
    pub q_squared_from_beta: f64,
    /// `q` recovered from `Δ` as the root `Δ − sqrt(Δ² − 1)` in `(0, 1)`.
    pub q_from_delta: f64,
    /// Set when `Δ − 1 < 1e-6`: the isotropic point where `A(Δ) → 0`.
    pub near_isotropic: bool,
}

impl ModelParameters {
    pub fn new(q: QValue) -> Result<Self> {
        q.validate()?;
        let (delta_exact, delta) = match &q {
            QValue::Exact(r) => {
                let d = (r + r.recip()) / BigRational::from_integer(2.into());
                (Some(d.to_string()), ratio_to_f64(&d))
            }
            QValue::Float(x) => (None, (x + 1.0 / x) / 2.0),
        };
        let qf = q.as_f64();
        let boundary_field = 0.5 * (1.0 - 1.0 / (delta * delta)).sqrt();
        let beta = -2.0 * qf.ln();
        Ok(ModelParameters {
            delta_exact,
            delta,
            boundary_field,
            beta,
            q_squared_from_beta: (-beta).exp(),
            q_from_delta: delta - (delta * delta - 1.0).sqrt(),
            near_isotropic: delta - 1.0 < 1e-6,
            q,
        })
    }
}
