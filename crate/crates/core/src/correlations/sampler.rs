//! Exact sampling of paths from `w(p) / Z(n, m)`.
//!
//! The walk starts at `(n, m)` and moves backwards. At `(a, b)` the last step
//! was vertical with probability `Z(a, b-1) / Z(a, b)` and horizontal with
//! probability `q^{2(a+b)} Z(a-1, b) / Z(a, b)`. Every Bernoulli decision is
//! made exactly against its rational threshold by comparing it with the
//! binary expansion of a uniform variate drawn 64 bits at a time.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::RngCore;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::lattice_paths::{Path, Step};
use crate::qexact::QValue;

/// Threshold tables for one sector and one exact `q`.
#[derive(Clone, Debug)]
pub struct PathSampler {
    n: u64,
    m: u64,
    /// `vertical[a][b] = Z(a, b-1) / Z(a, b)` as `(numerator, denominator)`.
    vertical: Vec<Vec<(BigUint, BigUint)>>,
}

impl PathSampler {
    pub fn new(n: u64, m: u64, q: &BigRational) -> Result<Self> {
        QValue::Exact(q.clone()).validate()?;
        let (rows, cols) = ((n + 1) as usize, (m + 1) as usize);
        // exact values Z(a, b) at q, by the same recursion the walk inverts
        let mut z = vec![vec![BigRational::zero(); cols]; rows];
        let q2 = q * q;
        for a in 0..rows {
            for b in 0..cols {
                z[a][b] = if a == 0 {
                    BigRational::one()
                } else if b == 0 {
                    z[a - 1][0].clone() * pow(&q2, a as u64)
                } else {
                    &z[a][b - 1] + &z[a - 1][b] * pow(&q2, (a + b) as u64)
                };
            }
        }
        let vertical = (0..rows)
            .map(|a| {
                (0..cols)
                    .map(|b| {
                        if b == 0 {
                            (BigUint::zero(), BigUint::one())
                        } else if a == 0 {
                            (BigUint::one(), BigUint::one())
                        } else {
                            let p = &z[a][b - 1] / &z[a][b];
                            (to_biguint(p.numer()), to_biguint(p.denom()))
                        }
                    })
                    .collect()
            })
            .collect();
        Ok(PathSampler { n, m, vertical })
    }

    /// One path from the exact distribution.
    pub fn sample<R: RngCore>(&self, rng: &mut R) -> Path {
        let (mut a, mut b) = (self.n as usize, self.m as usize);
        let mut rev = Vec::with_capacity(a + b);
        while a + b > 0 {
            let (num, den) = &self.vertical[a][b];
            if bernoulli(num, den, rng) {
                rev.push(Step::V);
                b -= 1;
            } else {
                rev.push(Step::H);
                a -= 1;
            }
        }
        rev.reverse();
        Path::from_origin(rev)
    }

    /// `count` independent draws; draw `i` uses ChaCha8 stream `i` of `seed`,
    /// so the output does not depend on the execution mode.
    pub fn sample_many(&self, seed: u64, count: usize, exec: Execution) -> Vec<Path> {
        exec.map_range(0..count, |i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i as u64);
            self.sample(&mut rng)
        })
    }
}

fn pow(x: &BigRational, e: u64) -> BigRational {
    (0..e).fold(BigRational::one(), |acc, _| acc * x)
}

fn to_biguint(x: &BigInt) -> BigUint {
    debug_assert!(!x.is_negative());
    x.magnitude().clone()
}

/// `true` with probability exactly `num / den` (`num <= den`).
fn bernoulli<R: RngCore>(num: &BigUint, den: &BigUint, rng: &mut R) -> bool {
    if num.is_zero() {
        return false;
    }
    if num >= den {
        return true;
    }
    let mut rem = num.clone();
    loop {
        // next 64 bits of p's binary expansion
        let (digit, r) = (rem << 64u32).div_rem(den);
        let digit = digit.iter_u64_digits().next().unwrap_or(0);
        let u = rng.next_u64();
        if u < digit {
            return true;
        }
        if u > digit {
            return false;
        }
        if r.is_zero() {
            return false;
        }
        rem = r;
    }
}

/// Single draw from stream 0 of `seed`.
pub fn sample_path(n: u64, m: u64, q: &BigRational, seed: u64) -> Result<Path> {
    let sampler = PathSampler::new(n, m, q)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(sampler.sample(&mut rng))
}

/// Parses an exact `q` and rejects floats, which cannot drive an exact sampler.
pub fn exact_q(q: &QValue) -> Result<BigRational> {
    match q {
        QValue::Exact(r) => Ok(r.clone()),
        QValue::Float(_) => Err(Error::Domain("the sampler needs an exact rational q".into())),
    }
}
