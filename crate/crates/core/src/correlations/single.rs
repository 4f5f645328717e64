//! One-point, single-spin and adjacent-pair probabilities with their bounds.

use crate::error::{Error, Result};
use crate::lattice_paths::BoxSpec;
use crate::partition::{z_generalized_cached, ZCache};
use crate::qexact::{QPoly, QRational, Scalar};

fn sector_ratio(num: QPoly, n: u64, m: u64, cache: &ZCache) -> QRational {
    QRational::new(num, cache.get_or_closed(n, m)).expect("Z(n,m) is never the zero polynomial")
}

fn check_site(n: u64, m: u64, x: u64) -> Result<()> {
    if x < 1 || x > n + m {
        return Err(Error::Range(format!("site {x} outside [1, {}]", n + m)));
    }
    Ok(())
}

/// Probability that the path passes through `(x, y)`:
/// `q^{2(x+y)(n-x)} Z(x,y) Z(n-x,m-y) / Z(n,m)`.
pub fn point_prob(n: u64, m: u64, x: u64, y: u64, cache: &ZCache) -> Result<QRational> {
    if x > n || y > m {
        return Err(Error::Range(format!("point ({x},{y}) outside box (0,0;{n},{m})")));
    }
    let num = &cache.get_or_closed(x, y) * &cache.get_or_closed(n - x, m - y).shift(2 * (x + y) * (n - x));
    Ok(sector_ratio(num, n, m, cache))
}

/// `P(S_x = down)`: sum over the horizontal bonds ending on the diagonal
/// `x + y = x` of `Z(j-1, x-j) q^{2x} Z(j, x-j; n, m) / Z(n, m)`.
pub fn spin_down_prob(n: u64, m: u64, x: u64, cache: &ZCache) -> Result<QRational> {
    check_site(n, m, x)?;
    let lo = 1.max(x.saturating_sub(m));
    let hi = n.min(x);
    let num: QPoly = (lo..=hi)
        .map(|j| {
            let head = cache.get_or_closed(j - 1, x - j);
            let tail = z_generalized_cached(&BoxSpec { n0: j, m0: x - j, n, m }, cache);
            (&head * &tail).shift(2 * x)
        })
        .sum();
    Ok(sector_ratio(num, n, m, cache))
}

/// `P(S_x = up)`, summing over the vertical bonds `(j, x-j-1) → (j, x-j)`.
pub fn spin_up_prob(n: u64, m: u64, x: u64, cache: &ZCache) -> Result<QRational> {
    check_site(n, m, x)?;
    let lo = x.saturating_sub(m);
    let hi = n.min(x - 1);
    let num: QPoly = (lo..=hi)
        .map(|j| {
            let head = cache.get_or_closed(j, x - j - 1);
            let tail = z_generalized_cached(&BoxSpec { n0: j, m0: x - j, n, m }, cache);
            &head * &tail
        })
        .sum();
    Ok(sector_ratio(num, n, m, cache))
}

/// `P(S_x = down, S_{x+1} = up)` as
/// `q^{2x} Σ_j Z(j-1, x-j) Z(j, x-j+1; n, m) / Z(n, m)`.
pub fn pair_down_up_prob(n: u64, m: u64, x: u64, cache: &ZCache) -> Result<QRational> {
    if x < 1 || x >= n + m {
        return Err(Error::Range(format!("pair site {x} outside [1, {})", n + m)));
    }
    let lo = 1.max((x + 1).saturating_sub(m));
    let hi = n.min(x);
    let num: QPoly = (lo..=hi)
        .map(|j| {
            let head = cache.get_or_closed(j - 1, x - j);
            let tail = z_generalized_cached(&BoxSpec { n0: j, m0: x - j + 1, n, m }, cache);
            (&head * &tail).shift(2 * x)
        })
        .sum();
    Ok(sector_ratio(num, n, m, cache))
}

fn one_minus_q_pow<S: Scalar>(q: &S, e: i64) -> S {
    S::one().sub_ref(&q.powi(e))
}

/// `q^{2(x-n)} (1 - q^{2n}) / (1 - q^{2(n+m)})`; `None` for the empty chain.
pub fn bound_down<S: Scalar>(n: u64, m: u64, x: u64, q: &S) -> Option<S> {
    let (n, m, x) = (n as i64, m as i64, x as i64);
    let num = q.powi(2 * (x - n)).mul_ref(&one_minus_q_pow(q, 2 * n));
    num.div_ref(&one_minus_q_pow(q, 2 * (n + m)))
}

/// `(1 - q^{2m}) / (1 - q^{2(n+m)})`; `None` for the empty chain.
pub fn spin_up_bound<S: Scalar>(n: u64, m: u64, q: &S) -> Option<S> {
    let (n, m) = (n as i64, m as i64);
    one_minus_q_pow(q, 2 * m).div_ref(&one_minus_q_pow(q, 2 * (n + m)))
}

/// `q^{2(x-n)} (1-q^{2m})/(1-q^{2n}) · (1-q^{2L})/(1-q^{2(L-1)})`.
///
/// `None` when `n = 0` or `L = 1`, where the expression is undefined.
pub fn pair_bound<S: Scalar>(n: u64, m: u64, x: u64, q: &S) -> Option<S> {
    let (n, m, x) = (n as i64, m as i64, x as i64);
    let l = n + m;
    let a = one_minus_q_pow(q, 2 * m).div_ref(&one_minus_q_pow(q, 2 * n))?;
    let b = one_minus_q_pow(q, 2 * l).div_ref(&one_minus_q_pow(q, 2 * (l - 1)))?;
    Some(q.powi(2 * (x - n)).mul_ref(&a).mul_ref(&b))
}

/// The sharper pair bound `q^{2x} Z(n-1,m-1)/Z(n,m)` written in closed form,
/// `q^{2(x-n)} (1-q^{2n})(1-q^{2m}) / ((1-q^{2(L-1)})(1-q^{2L}))`.
pub fn pair_bound_sharp<S: Scalar>(n: u64, m: u64, x: u64, q: &S) -> Option<S> {
    let (n, m, x) = (n as i64, m as i64, x as i64);
    let l = n + m;
    let num = one_minus_q_pow(q, 2 * n).mul_ref(&one_minus_q_pow(q, 2 * m));
    let den = one_minus_q_pow(q, 2 * (l - 1)).mul_ref(&one_minus_q_pow(q, 2 * l));
    Some(q.powi(2 * (x - n)).mul_ref(&num.div_ref(&den)?))
}

/// Sites where the down-spin bound is claimed: `x >= n`.
pub fn down_bound_regime(n: u64, _m: u64, x: u64) -> bool {
    x >= n
}

/// Sites where the up-spin bound is claimed: `x >= n`, `x >= m`, `x <= n+m`.
pub fn up_bound_regime(n: u64, m: u64, x: u64) -> bool {
    x >= n && x >= m && x <= n + m
}

/// Sites where the pair bound is claimed: `x >= n`, `x >= m`, `x < n+m`.
pub fn pair_bound_regime(n: u64, m: u64, x: u64) -> bool {
    x >= n && x >= m && x < n + m
}
