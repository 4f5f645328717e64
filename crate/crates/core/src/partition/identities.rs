//! Exact identities satisfied by the partition functions, as checks.
//!
//! Every check returns `Err` with a description of the mismatch. Identities
//! that involve ratios are cross-multiplied so only polynomial arithmetic is
//! needed.

use super::z_closed;
use crate::lattice_paths::{transfer_partition, BoxSpec};
use crate::qexact::QPoly;

pub type Check = Result<(), String>;

fn expect_eq(name: &str, lhs: &QPoly, rhs: &QPoly) -> Check {
    if lhs == rhs {
        Ok(())
    } else {
        Err(format!("{name}: {lhs} != {rhs}"))
    }
}

/// `Z(a, b)` with `Z = 0` outside the quadrant.
fn z_or_zero(a: i64, b: i64) -> QPoly {
    if a < 0 || b < 0 {
        QPoly::zero()
    } else {
        z_closed(a as u64, b as u64)
    }
}

/// `Z(n,m) = Z(n,m-1) + q^{2(n+m)} Z(n-1,m)`, for `n + m >= 1`.
pub fn upper_corner(n: u64, m: u64) -> Check {
    let (ni, mi) = (n as i64, m as i64);
    let rhs = &z_or_zero(ni, mi - 1) + &z_or_zero(ni - 1, mi).shift(2 * (n + m));
    expect_eq(&format!("upper corner ({n},{m})"), &z_closed(n, m), &rhs)
}

/// `Z(n,m) = q^{2n} Z(n-1,m) + q^{2n} Z(n,m-1)`, for `n >= 1`.
pub fn q_pascal_second(n: u64, m: u64) -> Check {
    let (ni, mi) = (n as i64, m as i64);
    let rhs = &z_or_zero(ni - 1, mi).shift(2 * n) + &z_or_zero(ni, mi - 1).shift(2 * n);
    expect_eq(&format!("second q-Pascal ({n},{m})"), &z_closed(n, m), &rhs)
}

/// `Z(n,m) = q² Z(1,0;n,m) + Z(0,1;n,m)`, with absent boxes contributing 0.
///
/// The generalized values come from a transfer sweep, not from translation.
pub fn lower_corner(n: u64, m: u64) -> Check {
    let right = BoxSpec::new(1, 0, n, m).map(|b| transfer_partition(&b)).unwrap_or_default();
    let up = BoxSpec::new(0, 1, n, m).map(|b| transfer_partition(&b)).unwrap_or_default();
    expect_eq(
        &format!("lower corner ({n},{m})"),
        &z_closed(n, m),
        &(&right.shift(2) + &up),
    )
}

/// `Z(n,m) q^{m(m+1)} = Z(m,n) q^{n(n+1)}`.
pub fn time_reversal(n: u64, m: u64) -> Check {
    expect_eq(
        &format!("time reversal ({n},{m})"),
        &z_closed(n, m).shift(m * (m + 1)),
        &z_closed(m, n).shift(n * (n + 1)),
    )
}

/// `q^{(n'+m)(n'+m+1)} Z(n',m';n,m) = q^{(n+m')(n+m'+1)} Z(m',n';m,n)`.
pub fn generalized_reflection(bx: &BoxSpec) -> Check {
    let mirrored = BoxSpec::new(bx.m0, bx.n0, bx.m, bx.n).expect("mirror of a valid box is valid");
    let a = bx.n0 + bx.m;
    let b = bx.n + bx.m0;
    expect_eq(
        &format!("generalized reflection {bx}"),
        &transfer_partition(bx).shift(a * (a + 1)),
        &transfer_partition(&mirrored).shift(b * (b + 1)),
    )
}

/// `Z(n',m';n,m) = q^{2(x+y)(n-n')} Z(n'-x, m'-y; n-x, m-y)`, both sides by transfer sweep.
pub fn translation(bx: &BoxSpec, x: u64, y: u64) -> Check {
    let (moved, e) = super::translate(bx, x, y).map_err(|err| err.to_string())?;
    expect_eq(
        &format!("translation {bx} by ({x},{y})"),
        &transfer_partition(bx),
        &transfer_partition(&moved).shift(e),
    )
}

/// Sum over the cut `x + y = z` of head·tail equals the whole, with heads and
/// tails from the transfer sweep and the whole from the closed form.
pub fn markov(bx: &BoxSpec, z: u64) -> Check {
    let terms = super::markov_decompose(bx, z).map_err(|e| e.to_string())?;
    let sum: QPoly = terms
        .iter()
        .map(|t| {
            let head = transfer_partition(&BoxSpec { n0: bx.n0, m0: bx.m0, n: t.point.0, m: t.point.1 });
            let tail = transfer_partition(&BoxSpec { n0: t.point.0, m0: t.point.1, n: bx.n, m: bx.m });
            &head * &tail
        })
        .sum();
    let whole = z_closed(bx.width(), bx.height()).shift(super::translation_exponent(bx, bx.n0, bx.m0));
    expect_eq(&format!("markov {bx} at z={z}"), &whole, &sum)
}

/// `q^{2n}(1 - q^{2L}) Z(n-1,m) = (1 - q^{2n}) Z(n,m)` for `n >= 1`.
pub fn ratio_down(n: u64, m: u64) -> Check {
    let l = n + m;
    let lhs = &QPoly::one_minus_q_pow(2 * l) * &z_or_zero(n as i64 - 1, m as i64).shift(2 * n);
    let rhs = &QPoly::one_minus_q_pow(2 * n) * &z_closed(n, m);
    expect_eq(&format!("ratio Z(n-1,m)/Z(n,m) ({n},{m})"), &lhs, &rhs)
}

/// `(1 - q^{2L}) Z(n,m-1) = (1 - q^{2m}) Z(n,m)` for `m >= 1`.
pub fn ratio_up(n: u64, m: u64) -> Check {
    let l = n + m;
    let lhs = &QPoly::one_minus_q_pow(2 * l) * &z_or_zero(n as i64, m as i64 - 1);
    let rhs = &QPoly::one_minus_q_pow(2 * m) * &z_closed(n, m);
    expect_eq(&format!("ratio Z(n,m-1)/Z(n,m) ({n},{m})"), &lhs, &rhs)
}

/// `q^{2n}(1 - q^{2(L-1)})(1 - q^{2L}) Z(n-1,m-1) = (1 - q^{2n})(1 - q^{2m}) Z(n,m)`.
pub fn ratio_diagonal(n: u64, m: u64) -> Check {
    let l = n + m;
    let lhs = &(&QPoly::one_minus_q_pow(2 * (l - 1)) * &QPoly::one_minus_q_pow(2 * l))
        * &z_or_zero(n as i64 - 1, m as i64 - 1).shift(2 * n);
    let rhs = &(&QPoly::one_minus_q_pow(2 * n) * &QPoly::one_minus_q_pow(2 * m)) * &z_closed(n, m);
    expect_eq(&format!("ratio Z(n-1,m-1)/Z(n,m) ({n},{m})"), &lhs, &rhs)
}

/// Positive coefficients, even exponents and degree window `[n(n+1), n(n+1)+2nm]`.
pub fn shape(n: u64, m: u64) -> Check {
    let z = z_closed(n, m);
    let lo = n * (n + 1);
    let ok = z.all_coefficients_positive()
        && z.all_exponents_even()
        && z.min_degree() == Some(lo)
        && z.degree() == Some(lo + 2 * n * m);
    if ok {
        Ok(())
    } else {
        Err(format!("shape ({n},{m}): {z}"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_hold_on_small_grid() {
        for n in 0..6 {
            for m in 0..6 {
                if n + m >= 1 {
                    upper_corner(n, m).unwrap();
                    lower_corner(n, m).unwrap();
                }
                if n >= 1 {
                    q_pascal_second(n, m).unwrap();
                    ratio_down(n, m).unwrap();
                }
                if m >= 1 {
                    ratio_up(n, m).unwrap();
                }
                if n >= 1 && m >= 1 {
                    ratio_diagonal(n, m).unwrap();
                }
                time_reversal(n, m).unwrap();
                shape(n, m).unwrap();
            }
        }
    }

    #[test]
    fn box_identities() {
        let bx = BoxSpec::new(1, 2, 4, 5).unwrap();
        generalized_reflection(&bx).unwrap();
        translation(&bx, 1, 1).unwrap();
        for z in 3..=9 {
            markov(&bx, z).unwrap();
        }
        assert!(translation(&bx, 2, 0).is_err());
    }

    #[test]
    fn mismatch_is_reported() {
        let err = expect_eq("demo", &QPoly::one(), &QPoly::zero()).unwrap_err();
        assert_eq!(err, "demo: 1 != 0");
    }
}
