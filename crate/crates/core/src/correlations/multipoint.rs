//! Joint probabilities of prescribed spins at several sites.
//!
//! The path is cut at each constrained diagonal. Between cuts the path is
//! free and contributes a generalized partition function; at a cut the step
//! direction is forced by the prescribed spin.

use std::collections::BTreeMap;

use super::query::{CorrelationQuery, Spin};
use crate::error::{Error, Result};
use crate::lattice_paths::BoxSpec;
use crate::partition::{z_generalized_cached, ZCache};
use crate::qexact::{QPoly, QRational, Scalar};

/// Exact joint probability of the query's spin pattern.
///
/// Fails with `InconsistentQuery` when the query prescribes more down spins
/// than `n` or more up spins than `m`; other infeasible patterns give 0.
pub fn multipoint_prob(query: &CorrelationQuery, cache: &ZCache) -> Result<QRational> {
    if query.count_infeasible() {
        return Err(Error::InconsistentQuery(format!(
            "{} down and {} up spins prescribed in sector ({}, {})",
            query.v(),
            query.r() as u64 - query.v(),
            query.n,
            query.m
        )));
    }
    let num = multipoint_numerator(query, cache);
    Ok(QRational::new(num, cache.get_or_closed(query.n, query.m)).expect("Z(n,m) is nonzero"))
}

/// Sum of weights of all paths matching the query.
pub fn multipoint_numerator(query: &CorrelationQuery, cache: &ZCache) -> QPoly {
    let (n, m) = (query.n, query.m);
    // weight of constrained prefixes ending at each point of the last cut diagonal
    let mut frontier: BTreeMap<(u64, u64), QPoly> = BTreeMap::new();
    frontier.insert((0, 0), QPoly::one());
    for &(x, spin) in query.constraints() {
        let mut next: BTreeMap<(u64, u64), QPoly> = BTreeMap::new();
        // the forced step leaves a point on the diagonal x - 1
        let d = x - 1;
        for (&(a, b), prefix) in &frontier {
            let c_lo = a.max(d.saturating_sub(m));
            let c_hi = n.min(d.saturating_sub(b));
            if d < a + b {
                continue;
            }
            for c in c_lo..=c_hi {
                let e = d - c;
                if e < b || e > m {
                    continue;
                }
                let (target, bond) = match spin {
                    Spin::Down if c < n => ((c + 1, e), 2 * x),
                    Spin::Up if e < m => ((c, e + 1), 0),
                    _ => continue,
                };
                let free = z_generalized_cached(&BoxSpec { n0: a, m0: b, n: c, m: e }, cache);
                let contribution = (prefix * &free).shift(bond);
                let slot = next.entry(target).or_insert_with(QPoly::zero);
                *slot = &*slot + &contribution;
            }
        }
        frontier = next;
    }
    frontier
        .into_iter()
        .map(|((a, b), prefix)| &prefix * &z_generalized_cached(&BoxSpec { n0: a, m0: b, n, m }, cache))
        .sum()
}

/// `q^{v(v-1) + 2 Σ_k d_k}` with `d_k = (x_k − n) α_k`.
pub fn exp_bound<S: Scalar>(query: &CorrelationQuery, q: &S) -> S {
    q.powi(exp_bound_exponent(query))
}

pub fn exp_bound_exponent(query: &CorrelationQuery) -> i64 {
    let v = query.v() as i64;
    v * (v - 1) + 2 * query.down_distance_sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::correlations::oracle::configuration_numerator;
    use crate::correlations::single::spin_down_prob;
    use num_rational::BigRational;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn full_specification_is_a_single_configuration() {
        let c = ZCache::new();
        let q = CorrelationQuery::parse(2, 2, "1:up,2:down,3:up,4:down").unwrap();
        let p = multipoint_prob(&q, &c).unwrap();
        assert_eq!(p.num, QPoly::q_pow(2 * (2 + 4)));
    }

    #[test]
    fn single_site_matches_spin_down() {
        let c = ZCache::new();
        let q = CorrelationQuery::parse(1, 1, "2:down").unwrap();
        let p = multipoint_prob(&q, &c).unwrap();
        assert_eq!(p.num, QPoly::q_pow(4));
        assert!(p.same_value(&spin_down_prob(1, 1, 2, &c).unwrap()));
    }

    #[test]
    fn two_downs_right_of_interface() {
        let c = ZCache::new();
        let q = CorrelationQuery::parse(2, 2, "3:down,4:down").unwrap();
        let p = multipoint_prob(&q, &c).unwrap();
        assert_eq!(p.num, configuration_numerator(&q).unwrap());
        assert_eq!(p.num, QPoly::q_pow(14));
        let half = rat(1, 2);
        let value = p.evaluate(&half).unwrap();
        assert!(value <= exp_bound(&q, &half));
        assert_eq!(exp_bound_exponent(&q), 8);
    }

    #[test]
    fn exp_bound_examples() {
        let q = CorrelationQuery::parse(3, 3, "5:up").unwrap();
        assert_eq!(exp_bound(&q, &rat(1, 2)), rat(1, 1));
        let q = CorrelationQuery::parse(1, 1, "2:down").unwrap();
        assert_eq!(exp_bound_exponent(&q), 2);
    }

    #[test]
    fn inconsistent_counts() {
        let c = ZCache::new();
        for (n, m, sites) in [(1, 3, "1:down,2:down"), (3, 2, "1:up,2:up,3:up"), (2, 1, "1:up,3:up")] {
            let q = CorrelationQuery::parse(n, m, sites).unwrap();
            assert!(matches!(multipoint_prob(&q, &c), Err(Error::InconsistentQuery(_))));
        }
        let q = CorrelationQuery::parse(0, 3, "2:up").unwrap();
        assert!(multipoint_prob(&q, &c).unwrap().num.is_one());
    }
}
