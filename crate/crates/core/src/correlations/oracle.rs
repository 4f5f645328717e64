//! Brute-force sums over spin configurations.
//!
//! A configuration with `n` down spins among `L = n + m` sites has weight
//! `q^{2 Σ (positions of down spins)}`. These sums never touch the path
//! decomposition machinery and serve as the reference for it.

use std::collections::BTreeMap;

use super::query::CorrelationQuery;
use crate::error::Result;
use crate::lattice_paths::{enumerate_paths, BoxSpec, DEFAULT_ENUMERATION_CAP};
use crate::qexact::QPoly;

/// Every configuration of the sector as an `α` vector (1 = down).
pub fn configurations(n: u64, m: u64) -> Result<Vec<Vec<u8>>> {
    Ok(enumerate_paths(&BoxSpec::sector(n, m), DEFAULT_ENUMERATION_CAP)?
        .iter()
        .map(|p| p.spins())
        .collect())
}

/// `2 Σ x α_x` for a configuration.
pub fn configuration_exponent(alphas: &[u8]) -> u64 {
    alphas
        .iter()
        .enumerate()
        .filter(|(_, a)| **a == 1)
        .map(|(i, _)| 2 * (i as u64 + 1))
        .sum()
}

fn sum_weights<'a>(configs: impl Iterator<Item = &'a Vec<u8>>) -> QPoly {
    let mut counts: BTreeMap<u64, u64> = BTreeMap::new();
    for c in configs {
        *counts.entry(configuration_exponent(c)).or_default() += 1;
    }
    QPoly::from_terms(counts)
}

/// Sector normalisation by direct summation.
pub fn configuration_partition(n: u64, m: u64) -> Result<QPoly> {
    Ok(sum_weights(configurations(n, m)?.iter()))
}

/// Weight of the configurations matching every constraint of `query`.
pub fn configuration_numerator(query: &CorrelationQuery) -> Result<QPoly> {
    let configs = configurations(query.n, query.m)?;
    Ok(sum_weights(configs.iter().filter(|c| {
        query
            .constraints()
            .iter()
            .all(|(x, s)| c[(*x - 1) as usize] == s.alpha())
    })))
}

/// Numerators of `Prob(F_L = l)` in sector `(N/2, N/2)`, keyed by `l`.
pub fn configuration_fluctuations(chain: u64, window: u64) -> Result<BTreeMap<i64, QPoly>> {
    let half = chain / 2;
    let start = ((chain - window) / 2) as usize;
    let mut buckets: BTreeMap<i64, BTreeMap<u64, u64>> = BTreeMap::new();
    for c in configurations(half, half)? {
        let downs = c[start..start + window as usize].iter().filter(|a| **a == 1).count() as i64;
        let l = window as i64 / 2 - downs;
        *buckets
            .entry(l)
            .or_default()
            .entry(configuration_exponent(&c))
            .or_default() += 1;
    }
    Ok(buckets
        .into_iter()
        .map(|(l, counts)| (l, QPoly::from_terms(counts)))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sector_two_two() {
        let configs = configurations(2, 2).unwrap();
        assert_eq!(configs.len(), 6);
        let z = configuration_partition(2, 2).unwrap();
        assert_eq!(z, QPoly::from_terms([(6, 1), (8, 1), (10, 2), (12, 1), (14, 1)]));
    }

    #[test]
    fn fluctuations_four_two() {
        let f = configuration_fluctuations(4, 2).unwrap();
        assert_eq!(f[&1], QPoly::q_pow(10));
        assert_eq!(f[&-1], QPoly::q_pow(10));
        assert_eq!(f[&0], QPoly::from_terms([(6, 1), (8, 1), (12, 1), (14, 1)]));
    }
}
