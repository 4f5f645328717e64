use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::qexact::QPoly;

/// One unit step. `H` moves right and marks a down spin, `V` moves up and
/// marks an up spin.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Step {
    H,
    V,
}

impl Step {
    /// Spin occupation `α`: 1 for a down spin, 0 for an up spin.
    pub fn alpha(self) -> u8 {
        match self {
            Step::H => 1,
            Step::V => 0,
        }
    }

    pub fn from_alpha(alpha: u8) -> Self {
        if alpha == 1 {
            Step::H
        } else {
            Step::V
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Step::H => Step::V,
            Step::V => Step::H,
        }
    }
}

/// A monotone lattice path starting at `origin`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    origin: (u64, u64),
    steps: Vec<Step>,
}

impl Path {
    pub fn new(origin: (u64, u64), steps: Vec<Step>) -> Self {
        Path { origin, steps }
    }

    pub fn from_origin(steps: Vec<Step>) -> Self {
        Path::new((0, 0), steps)
    }

    /// Path from the origin whose `x`-th step is `H` iff `alphas[x-1] == 1`.
    pub fn from_spins(alphas: &[u8]) -> Self {
        Path::from_origin(alphas.iter().map(|&a| Step::from_alpha(a)).collect())
    }

    pub fn origin(&self) -> (u64, u64) {
        self.origin
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn horizontal_count(&self) -> u64 {
        self.steps.iter().filter(|s| **s == Step::H).count() as u64
    }

    pub fn vertical_count(&self) -> u64 {
        self.len() as u64 - self.horizontal_count()
    }

    pub fn end(&self) -> (u64, u64) {
        (
            self.origin.0 + self.horizontal_count(),
            self.origin.1 + self.vertical_count(),
        )
    }

    pub fn spins(&self) -> Vec<u8> {
        self.steps.iter().map(|s| s.alpha()).collect()
    }

    /// Lattice points visited, origin included.
    pub fn points(&self) -> Vec<(u64, u64)> {
        let mut pts = Vec::with_capacity(self.len() + 1);
        let (mut x, mut y) = self.origin;
        pts.push((x, y));
        for s in &self.steps {
            match s {
                Step::H => x += 1,
                Step::V => y += 1,
            }
            pts.push((x, y));
        }
        pts
    }

    /// Right ends `(x_b, y_b)` of the horizontal bonds, in absolute coordinates.
    pub fn horizontal_bond_ends(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        let (mut x, mut y) = self.origin;
        self.steps.iter().filter_map(move |s| match s {
            Step::H => {
                x += 1;
                Some((x, y))
            }
            Step::V => {
                y += 1;
                None
            }
        })
    }

    /// Exponent of `q` in the path weight: `2·Σ (x_b + y_b)` over horizontal bonds.
    pub fn weight_exponent(&self) -> u64 {
        self.horizontal_bond_ends().map(|(x, y)| 2 * (x + y)).sum()
    }

    /// Bond-product weight, a monomial in `q`.
    pub fn weight(&self) -> QPoly {
        QPoly::q_pow(self.weight_exponent())
    }

    /// Unit plaquettes between the path and the floor `y = origin.1`.
    pub fn area(&self) -> u64 {
        let floor = self.origin.1;
        self.horizontal_bond_ends().map(|(_, y)| y - floor).sum()
    }

    /// Reflection in the diagonal: every step flips, the origin swaps coordinates.
    pub fn parity(&self) -> Path {
        Path {
            origin: (self.origin.1, self.origin.0),
            steps: self.steps.iter().map(|s| s.flipped()).collect(),
        }
    }

    /// The same steps walked in reverse order from the same origin.
    pub fn time_reverse(&self) -> Path {
        Path {
            origin: self.origin,
            steps: self.steps.iter().rev().copied().collect(),
        }
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{}):", self.origin.0, self.origin.1)?;
        for s in &self.steps {
            f.write_str(match s {
                Step::H => "H",
                Step::V => "V",
            })?;
        }
        Ok(())
    }
}

impl FromStr for Path {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("expected a path like (0,0):HVH, got {s:?}"));
        let (origin, steps) = s.trim().split_once(':').ok_or_else(bad)?;
        let inner = origin
            .trim()
            .strip_prefix('(')
            .and_then(|o| o.strip_suffix(')'))
            .ok_or_else(bad)?;
        let (x, y) = inner.split_once(',').ok_or_else(bad)?;
        let x: u64 = x.trim().parse().map_err(|_| bad())?;
        let y: u64 = y.trim().parse().map_err(|_| bad())?;
        let steps = steps
            .trim()
            .chars()
            .map(|c| match c {
                'H' => Ok(Step::H),
                'V' => Ok(Step::V),
                _ => Err(bad()),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Path::new((x, y), steps))
    }
}
