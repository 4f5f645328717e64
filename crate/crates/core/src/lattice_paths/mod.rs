//! Monotone lattice paths and the brute-force oracles built on them.
//!
//! Bond weights are assigned in absolute coordinates: a horizontal bond whose
//! right end is `(x, y)` carries `q^{2(x+y)}`, vertical bonds carry 1. A path
//! from the origin with `n` horizontal steps therefore has weight
//! `q^{n(n+1) + 2·area}`.

mod path;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

pub use path::{Path, Step};

use crate::error::{Error, Result};
use crate::qexact::QPoly;

/// Default cap on the number of paths an oracle will enumerate.
pub const DEFAULT_ENUMERATION_CAP: u128 = 1_000_000;

/// The rectangle from `(n0, m0)` to `(n, m)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BoxSpec {
    pub n0: u64,
    pub m0: u64,
    pub n: u64,
    pub m: u64,
}

impl BoxSpec {
    pub fn new(n0: u64, m0: u64, n: u64, m: u64) -> Result<Self> {
        if n0 > n || m0 > m {
            return Err(Error::InvalidBox(format!(
                "({n0},{m0};{n},{m}) needs n' <= n and m' <= m"
            )));
        }
        Ok(BoxSpec { n0, m0, n, m })
    }

    /// Box anchored at the origin.
    pub fn sector(n: u64, m: u64) -> Self {
        BoxSpec { n0: 0, m0: 0, n, m }
    }

    pub fn width(&self) -> u64 {
        self.n - self.n0
    }

    pub fn height(&self) -> u64 {
        self.m - self.m0
    }

    /// `binomial(width + height, width)`, saturating at `u128::MAX`.
    pub fn path_count(&self) -> u128 {
        binomial_u128(self.width() + self.height(), self.width())
    }
}

impl fmt::Display for BoxSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{};{},{})", self.n0, self.m0, self.n, self.m)
    }
}

pub(crate) fn binomial_u128(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k) as u128;
    let n = n as u128;
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step
        acc = match acc.checked_mul(n - i) {
            Some(v) => v / (i + 1),
            None => return u128::MAX,
        };
    }
    acc
}

fn check_cap(bx: &BoxSpec, cap: u128) -> Result<()> {
    let count = bx.path_count();
    if count > cap {
        return Err(Error::CapExceeded { count, cap });
    }
    Ok(())
}

/// Every monotone path in the box, each exactly once, in lexicographic order
/// with `H < V`.
pub fn enumerate_paths(bx: &BoxSpec, cap: u128) -> Result<Vec<Path>> {
    check_cap(bx, cap)?;
    let mut out = Vec::with_capacity(bx.path_count() as usize);
    let mut steps = Vec::with_capacity((bx.width() + bx.height()) as usize);
    fn rec(h: u64, v: u64, steps: &mut Vec<Step>, origin: (u64, u64), out: &mut Vec<Path>) {
        if h == 0 && v == 0 {
            out.push(Path::new(origin, steps.clone()));
            return;
        }
        if h > 0 {
            steps.push(Step::H);
            rec(h - 1, v, steps, origin, out);
            steps.pop();
        }
        if v > 0 {
            steps.push(Step::V);
            rec(h, v - 1, steps, origin, out);
            steps.pop();
        }
    }
    rec(bx.width(), bx.height(), &mut steps, (bx.n0, bx.m0), &mut out);
    Ok(out)
}

/// Partition function by direct summation of path weights over the box.
pub fn oracle_partition(bx: &BoxSpec, cap: u128) -> Result<QPoly> {
    let mut counts: BTreeMap<u64, u64> = BTreeMap::new();
    for p in enumerate_paths(bx, cap)? {
        *counts.entry(p.weight_exponent()).or_default() += 1;
    }
    Ok(QPoly::from_terms(counts))
}

/// Partition function of a box by a transfer sweep over its lattice points,
/// applying the bond weights directly. Needs no enumeration cap.
pub fn transfer_partition(bx: &BoxSpec) -> QPoly {
    let w = bx.width() as usize;
    let h = bx.height() as usize;
    // row[j] holds the weight sum of paths from the box origin to (n0 + i, m0 + j)
    let mut row: Vec<QPoly> = Vec::with_capacity(h + 1);
    row.push(QPoly::one());
    for _ in 0..h {
        row.push(QPoly::one());
    }
    for i in 1..=w {
        let x = bx.n0 + i as u64;
        for j in 0..=h {
            let y = bx.m0 + j as u64;
            let from_left = row[j].shift(2 * (x + y));
            row[j] = if j == 0 {
                from_left
            } else {
                &row[j - 1] + &from_left
            };
        }
    }
    row.pop().expect("row is non-empty")
}

/// Number of paths with each area, for paths in the box.
pub fn area_histogram(bx: &BoxSpec, cap: u128) -> Result<BTreeMap<u64, u64>> {
    let mut counts = BTreeMap::new();
    for p in enumerate_paths(bx, cap)? {
        *counts.entry(p.area()).or_default() += 1;
    }
    Ok(counts)
}
