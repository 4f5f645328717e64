//! Distribution of the total spin `F_L` on a window centred on the interface.
//!
//! Spins are `±1/2`, so with `d` down spins in a window of even length `L`,
//! `F_L = L/2 − d`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::lattice_paths::BoxSpec;
use crate::partition::{z_generalized_cached, ZCache};
use crate::qexact::{QPoly, QRational, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FluctuationQuery {
    /// Chain length `N`, even; the sector is `(N/2, N/2)`.
    pub chain: u64,
    /// Window length `L`, even and at most `N`.
    pub window: u64,
}

impl FluctuationQuery {
    pub fn new(chain: u64, window: u64) -> Result<Self> {
        if chain == 0 || chain % 2 != 0 || window == 0 || window % 2 != 0 || window > chain {
            return Err(Error::Range(format!(
                "need even N >= 2 and even 2 <= L <= N, got N={chain}, L={window}"
            )));
        }
        Ok(FluctuationQuery { chain, window })
    }

    /// First and last site of the window, 1-based inclusive.
    pub fn window_sites(&self) -> (u64, u64) {
        ((self.chain - self.window) / 2 + 1, (self.chain + self.window) / 2)
    }

    pub fn half(&self) -> u64 {
        self.chain / 2
    }
}

/// Exact `Prob(F_L = l)` for every attainable `l`, sharing the denominator `Z(N/2, N/2)`.
#[derive(Clone, Debug, Serialize)]
pub struct FluctuationDistribution {
    pub query: FluctuationQuery,
    pub partition: QPoly,
    pub numerators: BTreeMap<i64, QPoly>,
}

impl FluctuationDistribution {
    /// `Prob(F_L = l)`; zero outside the support.
    pub fn prob(&self, l: i64) -> QRational {
        let num = self.numerators.get(&l).cloned().unwrap_or_default();
        QRational::new(num, self.partition.clone()).expect("partition function is nonzero")
    }

    pub fn values(&self) -> impl Iterator<Item = i64> + '_ {
        self.numerators.keys().copied()
    }

    /// Σ_l Prob(F_L = l) = 1 as a polynomial identity.
    pub fn is_normalised(&self) -> bool {
        self.numerators.values().sum::<QPoly>() == self.partition
    }

    /// Prob(F_L = l) = Prob(F_L = −l) for every `l`, numerator by numerator.
    pub fn is_symmetric(&self) -> bool {
        self.numerators
            .iter()
            .all(|(l, p)| self.numerators.get(&-l).is_some_and(|r| r == p))
    }

    /// `Σ_l l · Prob(F_L = l)` at `q`.
    pub fn mean<S: Scalar>(&self, q: &S) -> S {
        let z = self.partition.evaluate(q);
        let total = self
            .numerators
            .iter()
            .fold(S::zero(), |acc, (l, p)| acc.add_ref(&S::from_i64(*l).mul_ref(&p.evaluate(q))));
        total.div_ref(&z).expect("partition function is positive on (0,1)")
    }

    /// Polynomial numerator of the mean; zero iff the mean vanishes identically.
    pub fn mean_numerator(&self) -> QPoly {
        self.numerators
            .iter()
            .map(|(l, p)| p.scale(&(*l).into()))
            .sum()
    }

    pub fn evaluate<S: Scalar>(&self, q: &S) -> BTreeMap<i64, S> {
        let z = self.partition.evaluate(q);
        self.numerators
            .iter()
            .map(|(l, p)| (*l, p.evaluate(q).div_ref(&z).expect("Z > 0")))
            .collect()
    }
}

/// Cuts the path at both window edges and sums over the number of down spins
/// left of and inside the window.
pub fn fluctuation_distribution(fq: &FluctuationQuery, cache: &ZCache, exec: Execution) -> FluctuationDistribution {
    let k = fq.half();
    let a = (fq.chain - fq.window) / 2;
    let w = fq.window;
    let per_d: Vec<(i64, QPoly)> = exec.map_range(0..(w + 1) as usize, |d| {
        let d = d as u64;
        let mut num = QPoly::zero();
        for d1 in 0..=a.min(k) {
            let u1 = a - d1;
            let (dx, dy) = (d1 + d, u1 + (w - d));
            if u1 > k || dx > k || dy > k {
                continue;
            }
            let left = cache.get_or_closed(d1, u1);
            let inside = z_generalized_cached(&BoxSpec { n0: d1, m0: u1, n: dx, m: dy }, cache);
            let right = z_generalized_cached(&BoxSpec { n0: dx, m0: dy, n: k, m: k }, cache);
            num = &num + &(&(&left * &inside) * &right);
        }
        (w as i64 / 2 - d as i64, num)
    });
    FluctuationDistribution {
        query: *fq,
        partition: cache.get_or_closed(k, k),
        numerators: per_d.into_iter().filter(|(_, p)| !p.is_zero()).collect(),
    }
}
