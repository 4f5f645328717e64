//! Two-dimensional partition functions by reduction to one-dimensional ones.
//!
//! The lattice is idealized as `M` diagonals of `N` sites each; every site of
//! diagonal `j` (for `j = N … N+M−1`) carries weight `q^{2j}`. The canonical
//! partition function with `k` down spins is the `k`-th elementary symmetric
//! polynomial of this weight multiset. It is computed three ways: through
//! compositions and products of `Z(j, M−j)`, as a coefficient of the
//! grand-canonical product, and by a direct recurrence over the weights.

use num_bigint::BigInt;
use num_integer::binomial;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::partition::{z_closed, ZCache};
use crate::qexact::QPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Reduction2DQuery {
    /// Sites per diagonal.
    #[serde(rename = "N")]
    pub n: u64,
    /// Number of diagonals.
    #[serde(rename = "M")]
    pub m: u64,
    /// Total down spins.
    pub k: u64,
}

impl Reduction2DQuery {
    pub fn new(n: u64, m: u64, k: u64) -> Result<Self> {
        if n == 0 || m == 0 {
            return Err(Error::Range(format!("need N, M >= 1, got N={n}, M={m}")));
        }
        if k > n * m {
            return Err(Error::Range(format!("k={k} exceeds N*M={}", n * m)));
        }
        Ok(Reduction2DQuery { n, m, k })
    }

    /// Site weights' exponents: `2j` repeated `N` times for each diagonal `j`.
    pub fn weight_exponents(&self) -> Vec<u64> {
        site_exponents(self.n, self.m)
    }
}

fn site_exponents(n: u64, m: u64) -> Vec<u64> {
    (n..n + m).flat_map(|j| std::iter::repeat(2 * j).take(n as usize)).collect()
}

/// All `(k_0, …, k_M)` with `Σ k_i = N` and `Σ i·k_i = k`, largest `k_0` first.
pub fn compositions(n: u64, m: u64, k: u64) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(m as usize + 1);
    fill(0, m, n, k, &mut current, &mut out);
    out
}

fn fill(i: u64, m: u64, left: u64, weight: u64, current: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
    if i == m {
        // the last slot takes whatever is left, and must land on the weight exactly
        if left * m == weight {
            current.push(left);
            out.push(current.clone());
            current.pop();
        }
        return;
    }
    // the remaining slots i+1..=m can absorb at most left·m and at least left·(i+1)
    for ki in (0..=left).rev() {
        let rest = left - ki;
        let used = i * ki;
        if used > weight {
            continue;
        }
        let need = weight - used;
        if need < rest * (i + 1) || need > rest * m {
            continue;
        }
        current.push(ki);
        fill(i + 1, m, rest, need, current, out);
        current.pop();
    }
}

fn multinomial(n: u64, ks: &[u64]) -> BigInt {
    let mut left = n;
    let mut acc = BigInt::from(1);
    for &k in ks {
        acc *= binomial(BigInt::from(left), BigInt::from(k));
        left -= k;
    }
    acc
}

/// `q^{2(N−1)k} Σ N!/(k_0!…k_M!) ∏_j Z(j, M−j)^{k_j}` over `compositions(N, M, k)`.
pub fn z2d_reduction(n: u64, m: u64, k: u64) -> QPoly {
    z2d_reduction_cached(n, m, k, &ZCache::new())
}

pub fn z2d_reduction_cached(n: u64, m: u64, k: u64, cache: &ZCache) -> QPoly {
    let sum: QPoly = compositions(n, m, k)
        .iter()
        .map(|ks| {
            let product = ks
                .iter()
                .enumerate()
                .filter(|(_, kj)| **kj > 0)
                .fold(QPoly::one(), |acc, (j, kj)| {
                    &acc * &cache.get_or_closed(j as u64, m - j as u64).pow(*kj as u32)
                });
            product.scale(&multinomial(n, ks))
        })
        .sum();
    sum.shift(2 * n.saturating_sub(1) * k)
}

/// Every `k` at once, independent per `k`.
pub fn z2d_reduction_all(n: u64, m: u64, exec: Execution) -> Vec<QPoly> {
    let cache = ZCache::new();
    exec.map_range(0..(n * m + 1) as usize, |k| z2d_reduction_cached(n, m, k as u64, &cache))
}

/// Polynomial in the fugacity `z`; entry `k` is the coefficient of `z^k`.
pub type FugacityPoly = Vec<QPoly>;

fn fugacity_mul(a: &[QPoly], b: &[QPoly]) -> FugacityPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![QPoly::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    out
}

fn fugacity_pow(base: &[QPoly], exp: u64) -> FugacityPoly {
    (0..exp).fold(vec![QPoly::one()], |acc, _| fugacity_mul(&acc, base))
}

/// `∏_{j=N}^{N+M−1} (1 + z q^{2j})^N`, each factor expanded binomially.
pub fn z2d_product(n: u64, m: u64) -> FugacityPoly {
    (n..n + m).fold(vec![QPoly::one()], |acc, j| {
        let factor: FugacityPoly = (0..=n)
            .map(|i| QPoly::monomial(2 * j * i, binomial(BigInt::from(n), BigInt::from(i))))
            .collect();
        fugacity_mul(&acc, &factor)
    })
}

/// `{Σ_l z^l q^{2(N−1)l} Z(l, M−l)}^N`, the product regrouped by diagonal occupation.
pub fn z2d_diagonal_power(n: u64, m: u64) -> FugacityPoly {
    let single: FugacityPoly = (0..=m).map(|l| z_closed(l, m - l).shift(2 * n.saturating_sub(1) * l)).collect();
    fugacity_pow(&single, n)
}

/// `e_k` of the weight multiset by the recurrence `e_j ← e_j + w·e_{j−1}`.
pub fn z2d_oracle(n: u64, m: u64, k: u64) -> QPoly {
    elementary_symmetric(&site_exponents(n, m), k as usize)
}

fn elementary_symmetric(exponents: &[u64], k: usize) -> QPoly {
    if k > exponents.len() {
        return QPoly::zero();
    }
    let mut e = vec![QPoly::zero(); k + 1];
    e[0] = QPoly::one();
    for (count, &w) in exponents.iter().enumerate() {
        for j in (1..=k.min(count + 1)).rev() {
            let add = e[j - 1].shift(w);
            e[j] = &e[j] + &add;
        }
    }
    e.pop().unwrap_or_default()
}

/// `q^{2 Σ weights}`, the fully occupied configuration.
pub fn total_weight(n: u64, m: u64) -> QPoly {
    QPoly::q_pow(site_exponents(n, m).iter().sum())
}

/// `q^{2(2N+M−1)k} e_{NM−k} = (∏ weights) · e_k`, which follows from the
/// weight multiset being symmetric under `j ↦ 2N+M−1−j`.
pub fn particle_hole_holds(n: u64, m: u64, k: u64) -> bool {
    let total = n * m;
    if k > total {
        return false;
    }
    let lhs = z2d_oracle(n, m, total - k).shift(2 * (2 * n + m - 1) * k);
    let rhs = &total_weight(n, m) * &z2d_oracle(n, m, k);
    lhs == rhs
}

#[derive(Clone, Debug, Serialize)]
pub struct Reduction2DCheck {
    #[serde(flatten)]
    pub query: Reduction2DQuery,
    pub compositions: Vec<Vec<u64>>,
    pub reduction: QPoly,
    pub product_coefficient: QPoly,
    pub oracle: QPoly,
    pub equal: bool,
}

/// Computes all three forms of `Z_2d(k, NM−k)` and compares them.
pub fn three_way_check(query: &Reduction2DQuery, product: &[QPoly]) -> Reduction2DCheck {
    let Reduction2DQuery { n, m, k } = *query;
    let reduction = z2d_reduction(n, m, k);
    let product_coefficient = product.get(k as usize).cloned().unwrap_or_default();
    let oracle = z2d_oracle(n, m, k);
    let equal = reduction == product_coefficient && reduction == oracle;
    Reduction2DCheck {
        query: *query,
        compositions: compositions(n, m, k),
        reduction,
        product_coefficient,
        oracle,
        equal,
    }
}

/// Three-way checks for every `k` of one `(N, M)`.
pub fn three_way_all(n: u64, m: u64, exec: Execution) -> Result<Vec<Reduction2DCheck>> {
    Reduction2DQuery::new(n, m, 0)?;
    let product = z2d_product(n, m);
    Ok(exec.map_range(0..(n * m + 1) as usize, |k| {
        three_way_check(&Reduction2DQuery { n, m, k: k as u64 }, &product)
    }))
}
