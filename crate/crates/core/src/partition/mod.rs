//! Canonical and generalized partition functions.
//!
//! `Z(n, m)` sums the weights of all paths from the origin to `(n, m)`. It is
//! `q^{n(n+1)}` times the Gaussian binomial `[n+m choose n]` in `q²`. A box
//! `(n', m'; n, m)` reduces to a canonical value by translation:
//! `Z(n',m';n,m) = q^{2(n'+m')(n-n')} Z(n-n', m-m')`.

mod cache;
pub mod identities;

use num_rational::BigRational;
use serde::Serialize;

pub use cache::{CacheStats, ZCache};

use crate::error::{Error, Result};
use crate::lattice_paths::BoxSpec;
use crate::qexact::{ModelParameters, QPoly, QValue, Scalar};

/// `Z(n, m)` from the product formula, dividing one factor at a time.
///
/// Each intermediate quotient is itself a Gaussian binomial, so every
/// division is exact; a nonzero remainder means an arithmetic bug.
pub fn z_closed(n: u64, m: u64) -> QPoly {
    gaussian_binomial_q2(n + m, n.min(m)).shift(n * (n + 1))
}

/// `[total choose k]` in the variable `q²`.
pub fn gaussian_binomial_q2(total: u64, k: u64) -> QPoly {
    assert!(k <= total, "Gaussian binomial needs k <= total");
    let k = k.min(total - k);
    let mut acc = QPoly::one();
    for i in 1..=k {
        let numer = &acc * &QPoly::one_minus_q_pow(2 * (total - k + i));
        acc = numer
            .div_exact(&QPoly::one_minus_q_pow(2 * i))
            .expect("Gaussian binomial telescoping division must be exact");
    }
    acc
}

/// `Z(n, m)` via `Z(n,m) = Z(n,m-1) + q^{2(n+m)} Z(n-1,m)`, filling the
/// table row by row and memoising every entry in `cache`.
pub fn z_recursive(n: u64, m: u64, cache: &ZCache) -> QPoly {
    if let Some(v) = cache.get(n, m) {
        return v;
    }
    let cols = (m + 1) as usize;
    let mut row_prev: Vec<QPoly> = Vec::new();
    for a in 0..=n {
        let mut row: Vec<QPoly> = Vec::with_capacity(cols);
        for b in 0..=m {
            let value = if let Some(v) = cache.get(a, b) {
                v
            } else {
                let v = if a == 0 {
                    QPoly::one()
                } else if b == 0 {
                    QPoly::q_pow(a * (a + 1))
                } else {
                    &row[(b - 1) as usize] + &row_prev[b as usize].shift(2 * (a + b))
                };
                cache.insert(a, b, v.clone());
                v
            };
            row.push(value);
        }
        row_prev = row;
    }
    row_prev.pop().expect("row is non-empty")
}

/// Translation factor exponent `2(x+y)(n-n')` of moving `bx` by `(-x, -y)`.
pub fn translation_exponent(bx: &BoxSpec, x: u64, y: u64) -> u64 {
    2 * (x + y) * bx.width()
}

/// Moves the box by `(-x, -y)`, returning the translated box and the power of
/// `q` that relates the two partition functions.
pub fn translate(bx: &BoxSpec, x: u64, y: u64) -> Result<(BoxSpec, u64)> {
    if x > bx.n0 || y > bx.m0 {
        return Err(Error::Range(format!(
            "translation by ({x},{y}) leaves the quadrant for box {bx}"
        )));
    }
    let moved = BoxSpec::new(bx.n0 - x, bx.m0 - y, bx.n - x, bx.m - y)?;
    Ok((moved, translation_exponent(bx, x, y)))
}

/// Generalized partition function, reduced to a canonical one by translation.
pub fn z_generalized(bx: &BoxSpec) -> QPoly {
    z_closed(bx.width(), bx.height()).shift(translation_exponent(bx, bx.n0, bx.m0))
}

/// As [`z_generalized`] but sourcing the canonical value from `cache`.
pub fn z_generalized_cached(bx: &BoxSpec, cache: &ZCache) -> QPoly {
    cache
        .get_or_closed(bx.width(), bx.height())
        .shift(translation_exponent(bx, bx.n0, bx.m0))
}

/// Smallest exponent of `q` in `Z(n',m';n,m)` as
/// `[2(m'+1)+2n'](n-n') + (n-n')(n-n'-1)`.
pub fn box_min_exponent(bx: &BoxSpec) -> u64 {
    let a = bx.width();
    (2 * (bx.m0 + 1) + 2 * bx.n0) * a + a * a.saturating_sub(1)
}

/// One term of a Markov cut: the path passes through `point`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CutTerm {
    pub point: (u64, u64),
    /// `Z(n', m'; x, y)`.
    pub head: QPoly,
    /// `Z(x, y; n, m)`.
    pub tail: QPoly,
}

/// Splits `Z(box)` along the anti-diagonal `x + y = z`.
pub fn markov_decompose(bx: &BoxSpec, z: u64) -> Result<Vec<CutTerm>> {
    let lo = bx.n0 + bx.m0;
    let hi = bx.n + bx.m;
    if z < lo || z > hi {
        return Err(Error::Range(format!("cut z = {z} outside [{lo}, {hi}] for box {bx}")));
    }
    let x_min = bx.n0.max(z.saturating_sub(bx.m));
    let x_max = bx.n.min(z - bx.m0);
    Ok((x_min..=x_max)
        .map(|x| {
            let y = z - x;
            CutTerm {
                point: (x, y),
                head: z_generalized(&BoxSpec { n0: bx.n0, m0: bx.m0, n: x, m: y }),
                tail: z_generalized(&BoxSpec { n0: x, m0: y, n: bx.n, m: bx.m }),
            }
        })
        .collect())
}

/// Sum of products over a Markov cut.
pub fn recombine(terms: &[CutTerm]) -> QPoly {
    terms.iter().map(|t| &t.head * &t.tail).sum()
}

/// Outcome of checking `Z(n-v, m-w) <= q^{-2nv+v(v-1)} Z(n,m)` on a grid.
#[derive(Clone, Debug, Serialize)]
pub struct RatioBoundReport {
    pub lhs: QPoly,
    pub rhs: QPoly,
    pub holds_at: Vec<String>,
    pub violations: Vec<String>,
}

pub fn ratio_bound_check(n: u64, m: u64, v: u64, w: u64, grid: &[BigRational]) -> Result<RatioBoundReport> {
    if v > n || w > m {
        return Err(Error::Range(format!("need v <= n and w <= m, got v={v}, w={w}, n={n}, m={m}")));
    }
    let lhs = z_closed(n - v, m - w);
    // 2nv - v(v-1) <= n(n+1) = min degree of Z(n,m), so this never underflows
    let drop = 2 * n * v - v * v.saturating_sub(1);
    let rhs = z_closed(n, m)
        .unshift(drop)
        .expect("q^{-2nv+v(v-1)} Z(n,m) is a polynomial");
    let mut holds_at = Vec::new();
    let mut violations = Vec::new();
    for q in grid {
        if lhs.evaluate(q) <= rhs.evaluate(q) {
            holds_at.push(q.to_string());
        } else {
            violations.push(q.to_string());
        }
    }
    Ok(RatioBoundReport { lhs, rhs, holds_at, violations })
}

/// Derived model parameters for `q`, with the `q → Δ → q` round trip.
pub fn parameters_roundtrip(q: QValue) -> Result<ModelParameters> {
    ModelParameters::new(q)
}

/// Value of `Z(n, m)` at `q`.
pub fn z_value<S: Scalar>(n: u64, m: u64, q: &S) -> S {
    z_closed(n, m).evaluate(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice_paths::{oracle_partition, DEFAULT_ENUMERATION_CAP};

    fn p(terms: &[(u64, i64)]) -> QPoly {
        QPoly::from_terms(terms.iter().copied())
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(z_closed(0, 7), QPoly::one());
        assert_eq!(z_closed(0, 0), QPoly::one());
        assert_eq!(z_closed(2, 1), p(&[(6, 1), (8, 1), (10, 1)]));
        assert_eq!(z_closed(3, 0), QPoly::q_pow(12));
        assert_eq!(z_closed(1, 1), p(&[(2, 1), (4, 1)]));
    }

    #[test]
    fn closed_form_degree_window_and_positivity() {
        for n in 0..8 {
            for m in 0..8 {
                let z = z_closed(n, m);
                assert!(z.all_coefficients_positive());
                assert!(z.all_exponents_even());
                assert_eq!(z.min_degree(), Some(n * (n + 1)));
                assert_eq!(z.degree(), Some(n * (n + 1) + 2 * n * m));
            }
        }
    }

    #[test]
    fn recursive_examples() {
        let cache = ZCache::new();
        assert_eq!(z_recursive(1, 1, &cache), p(&[(2, 1), (4, 1)]));
        assert_eq!(z_recursive(0, 7, &cache), QPoly::one());
        assert_eq!(z_recursive(5, 5, &ZCache::new()), z_closed(5, 5));
        let stats = cache.stats();
        assert!(stats.entries >= 4);
    }

    #[test]
    fn generalized_examples() {
        let b = BoxSpec::new(1, 0, 2, 1).unwrap();
        assert_eq!(z_generalized(&b), p(&[(4, 1), (6, 1)]));
        assert_eq!(z_generalized(&b), oracle_partition(&b, DEFAULT_ENUMERATION_CAP).unwrap());
        assert_eq!(z_generalized(&BoxSpec::sector(3, 2)), z_closed(3, 2));
        assert_eq!(z_generalized(&BoxSpec::new(2, 3, 2, 3).unwrap()), QPoly::one());
    }

    #[test]
    fn translation_matches_oracle() {
        let bx = BoxSpec::new(2, 3, 4, 6).unwrap();
        let direct = oracle_partition(&bx, DEFAULT_ENUMERATION_CAP).unwrap();
        for x in 0..=2 {
            for y in 0..=3 {
                let (moved, e) = translate(&bx, x, y).unwrap();
                let moved_z = oracle_partition(&moved, DEFAULT_ENUMERATION_CAP).unwrap();
                assert_eq!(direct, moved_z.shift(e), "shift ({x},{y})");
            }
        }
        assert!(translate(&bx, 3, 0).is_err());
    }

    #[test]
    fn min_exponent_formula() {
        for (n0, m0, n, m) in [(0, 0, 3, 2), (1, 2, 4, 4), (2, 0, 2, 5), (3, 1, 5, 1)] {
            let bx = BoxSpec::new(n0, m0, n, m).unwrap();
            let z = oracle_partition(&bx, DEFAULT_ENUMERATION_CAP).unwrap();
            assert_eq!(z.min_degree(), Some(box_min_exponent(&bx)), "{bx}");
        }
    }

    #[test]
    fn markov_examples() {
        let terms = markov_decompose(&BoxSpec::sector(1, 1), 1).unwrap();
        assert_eq!(terms.len(), 2);
        // through (0,1) the only horizontal bond ends at (1,1); through (1,0) it ends at (1,0)
        assert_eq!(terms[0].point, (0, 1));
        assert_eq!((&terms[0].head, &terms[0].tail), (&QPoly::one(), &QPoly::q_pow(4)));
        assert_eq!(terms[1].point, (1, 0));
        assert_eq!((&terms[1].head, &terms[1].tail), (&QPoly::q_pow(2), &QPoly::one()));
        assert_eq!(recombine(&terms), p(&[(2, 1), (4, 1)]));

        let t0 = markov_decompose(&BoxSpec::sector(2, 3), 0).unwrap();
        assert_eq!(t0.len(), 1);
        assert_eq!(recombine(&t0), z_closed(2, 3));

        let t3 = markov_decompose(&BoxSpec::sector(3, 3), 3).unwrap();
        assert_eq!(t3.len(), 4);
        assert_eq!(recombine(&t3), z_closed(3, 3));

        assert!(matches!(markov_decompose(&BoxSpec::sector(1, 1), 3), Err(Error::Range(_))));
        let inner = BoxSpec::new(1, 1, 3, 3).unwrap();
        assert!(markov_decompose(&inner, 1).is_err());
        assert_eq!(recombine(&markov_decompose(&inner, 4).unwrap()), z_generalized(&inner));
    }

    #[test]
    fn ratio_bound_examples() {
        let grid = [rat(1, 5), rat(1, 2), rat(3, 4), rat(4, 5)];
        let r = ratio_bound_check(3, 3, 0, 0, &grid).unwrap();
        assert_eq!(r.lhs, r.rhs);
        assert!(r.violations.is_empty());
        let r = ratio_bound_check(3, 3, 1, 1, &[rat(1, 2)]).unwrap();
        assert_eq!(r.holds_at, vec!["1/2".to_string()]);
        let r = ratio_bound_check(4, 2, 2, 0, &[rat(3, 4)]).unwrap();
        assert!(r.violations.is_empty());
        assert!(ratio_bound_check(2, 2, 3, 0, &grid).is_err());
    }

    #[test]
    fn parameters() {
        let p = parameters_roundtrip(QValue::exact(1, 2)).unwrap();
        assert_eq!(p.delta, 1.25);
        assert!(parameters_roundtrip(QValue::Float(1.5)).is_err());
    }

    #[test]
    fn value_helper() {
        assert_eq!(z_value(1, 1, &rat(1, 2)), rat(5, 16));
    }
}
