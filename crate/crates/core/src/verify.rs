//! Verification suites: every identity and bound checked over a range of
//! instances, with the first failing instance kept as a counterexample.
//!
//! Instances are visited smallest first, so the recorded counterexample is
//! minimal in that order. Records marked `hard = false` cover claims checked
//! outside their stated regime; their failures are reported but do not fail
//! the suite.

use std::collections::BTreeMap;

use num_rational::BigRational;
use serde::Serialize;

use crate::correlations::oracle::configuration_numerator;
use crate::correlations::{
    bound_down, down_bound_regime, exp_bound, multipoint_numerator, pair_bound, pair_bound_regime,
    pair_down_up_prob, spin_down_prob, spin_up_bound, spin_up_prob, up_bound_regime, CorrelationQuery, Spin,
};
use crate::exec::Execution;
use crate::higher_dim::{three_way_all, z2d_diagonal_power, z2d_product};
use crate::lattice_paths::{enumerate_paths, oracle_partition, BoxSpec, DEFAULT_ENUMERATION_CAP};
use crate::partition::identities::{self, Check};
use crate::partition::{box_min_exponent, z_closed, z_recursive, ZCache};
use crate::qexact::{QPoly, QRational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityRecord {
    pub name: String,
    /// The statement being checked.
    pub reference: String,
    pub instances: u64,
    pub failures: u64,
    pub counterexample: Option<String>,
    pub hard: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub records: Vec<IdentityRecord>,
    pub pass: bool,
}

impl VerificationReport {
    fn new(suite: &str, records: Vec<IdentityRecord>) -> Self {
        let pass = records.iter().all(|r| !r.hard || r.failures == 0);
        VerificationReport { suite: suite.to_string(), records, pass }
    }

    /// JSON with object keys sorted, for stable diffs.
    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report is plain data")
    }

    pub fn record(&self, name: &str) -> Option<&IdentityRecord> {
        self.records.iter().find(|r| r.name == name)
    }

    pub fn merge(suite: &str, reports: Vec<VerificationReport>) -> Self {
        Self::new(suite, reports.into_iter().flat_map(|r| r.records).collect())
    }
}

/// Runs `check` on every instance (in parallel under `exec`) and keeps the
/// first failure in instance order.
fn run<I, F>(name: &str, reference: &str, hard: bool, instances: Vec<I>, exec: Execution, check: F) -> IdentityRecord
where
    I: Send,
    F: Fn(&I) -> Check + Sync + Send,
{
    let count = instances.len() as u64;
    let results = exec.map(instances, |i| check(&i));
    let failures: Vec<String> = results.into_iter().filter_map(|r| r.err()).collect();
    IdentityRecord {
        name: name.to_string(),
        reference: reference.to_string(),
        instances: count,
        failures: failures.len() as u64,
        counterexample: failures.into_iter().next(),
        hard,
    }
}

/// Sectors `(n, m)` with `n + m <= max`, ordered by `n + m` then `n`.
pub fn sectors(max: u64) -> Vec<(u64, u64)> {
    (0..=max).flat_map(|l| (0..=l).map(move |n| (n, l - n))).collect()
}

/// Every box `(n0, m0; n, m)` with `n + m <= max`.
pub fn boxes(max: u64) -> Vec<BoxSpec> {
    let mut out = Vec::new();
    for (n, m) in sectors(max) {
        for n0 in 0..=n {
            for m0 in 0..=m {
                out.push(BoxSpec { n0, m0, n, m });
            }
        }
    }
    out
}

fn expect(cond: bool, what: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

/// Partition-function identities for every sector and box with `n + m <= max_nm`.
///
/// The enumeration oracle is only run up to `n + m <= 12`.
pub fn identities(max_nm: u64, exec: Execution) -> VerificationReport {
    let cache = ZCache::new();
    let all = sectors(max_nm);
    let with = |pred: fn(u64, u64) -> bool| -> Vec<(u64, u64)> { all.iter().copied().filter(|(n, m)| pred(*n, *m)).collect() };
    let small: Vec<(u64, u64)> = all.iter().copied().filter(|(n, m)| n + m <= 12).collect();
    let bxs = boxes(max_nm);
    let translations: Vec<(BoxSpec, u64, u64)> = bxs
        .iter()
        .flat_map(|b| (0..=b.n0).flat_map(move |x| (0..=b.m0).map(move |y| (*b, x, y))))
        .collect();
    let cuts: Vec<(BoxSpec, u64)> = bxs
        .iter()
        .flat_map(|b| (b.n0 + b.m0..=b.n + b.m).map(move |z| (*b, z)))
        .collect();

    let records = vec![
        run(
            "closed_form_vs_oracle",
            "Z(n,m) = q^{n(n+1)} [n+m choose n]_{q^2} = sum of path weights",
            true,
            small,
            exec,
            |&(n, m)| {
                let oracle = oracle_partition(&BoxSpec::sector(n, m), DEFAULT_ENUMERATION_CAP).map_err(|e| e.to_string())?;
                expect(z_closed(n, m) == oracle, || format!("closed form ({n},{m}) differs from enumeration"))
            },
        ),
        run(
            "recursive_vs_closed",
            "Z(n,m) from the upper-corner recursion equals the closed form",
            true,
            all.clone(),
            exec,
            |&(n, m)| expect(z_recursive(n, m, &cache) == z_closed(n, m), || format!("recursive ({n},{m})")),
        ),
        run(
            "q_pascal_upper_corner",
            "Z(n,m) = Z(n,m-1) + q^{2(n+m)} Z(n-1,m)",
            true,
            with(|n, m| n + m >= 1),
            exec,
            |&(n, m)| identities::upper_corner(n, m),
        ),
        run(
            "q_pascal_second",
            "Z(n,m) = q^{2n} Z(n-1,m) + q^{2n} Z(n,m-1)",
            true,
            with(|n, _| n >= 1),
            exec,
            |&(n, m)| identities::q_pascal_second(n, m),
        ),
        run(
            "lower_corner",
            "Z(n,m) = q^2 Z(1,0;n,m) + Z(0,1;n,m)",
            true,
            with(|n, m| n + m >= 1),
            exec,
            |&(n, m)| identities::lower_corner(n, m),
        ),
        run(
            "time_reversal",
            "Z(n,m) q^{m(m+1)} = Z(m,n) q^{n(n+1)}",
            true,
            all.clone(),
            exec,
            |&(n, m)| identities::time_reversal(n, m),
        ),
        run(
            "shape",
            "Z(n,m) has positive coefficients on even exponents n(n+1) ..= n(n+1)+2nm",
            true,
            all.clone(),
            exec,
            |&(n, m)| identities::shape(n, m),
        ),
        run(
            "ratio_down",
            "Z(n-1,m)/Z(n,m) = q^{-2n}(1-q^{2n})/(1-q^{2L})",
            true,
            with(|n, _| n >= 1),
            exec,
            |&(n, m)| identities::ratio_down(n, m),
        ),
        run(
            "ratio_up",
            "Z(n,m-1)/Z(n,m) = (1-q^{2m})/(1-q^{2L})",
            true,
            with(|_, m| m >= 1),
            exec,
            |&(n, m)| identities::ratio_up(n, m),
        ),
        run(
            "ratio_diagonal",
            "Z(n-1,m-1)/Z(n,m) = q^{-2n}(1-q^{2n})(1-q^{2m})/((1-q^{2(L-1)})(1-q^{2L}))",
            true,
            with(|n, m| n >= 1 && m >= 1),
            exec,
            |&(n, m)| identities::ratio_diagonal(n, m),
        ),
        run(
            "translation",
            "Z(n',m';n,m) = q^{2(x+y)(n-n')} Z(n'-x,m'-y;n-x,m-y)",
            true,
            translations,
            exec,
            |(b, x, y)| identities::translation(b, *x, *y),
        ),
        run(
            "generalized_reflection",
            "q^{(n'+m)(n'+m+1)} Z(n',m';n,m) = q^{(n+m')(n+m'+1)} Z(m',n';m,n)",
            true,
            bxs.clone(),
            exec,
            identities::generalized_reflection,
        ),
        run(
            "markov",
            "Z(n',m';n,m) = sum over the cut x+y=z of Z(n',m';x,y) Z(x,y;n,m)",
            true,
            cuts,
            exec,
            |(b, z)| identities::markov(b, *z),
        ),
        run(
            "box_min_exponent",
            "lowest exponent of Z(n',m';n,m) is 2(n'+m')(n-n') + (n-n')(n-n'+1)",
            true,
            bxs,
            exec,
            |b| {
                let got = crate::lattice_paths::transfer_partition(b).min_degree();
                expect(got == Some(box_min_exponent(b)), || format!("min exponent {b}: {got:?}"))
            },
        ),
    ];
    VerificationReport::new("identities", records)
}

/// Area of a path plus the area of its parity image equals `n m`, and both
/// parity and time reversal are involutions.
pub fn path_symmetries(max_nm: u64, exec: Execution) -> VerificationReport {
    let all = sectors(max_nm);
    let records = vec![run(
        "area_complement",
        "area(p) + area(parity(p)) = nm = area(p) + area(reverse(p))",
        true,
        all,
        exec,
        |&(n, m)| {
            let paths = enumerate_paths(&BoxSpec::sector(n, m), DEFAULT_ENUMERATION_CAP).map_err(|e| e.to_string())?;
            for p in &paths {
                let f = p.parity();
                let t = p.time_reverse();
                let ok = p.area() + f.area() == n * m
                    && p.area() + t.area() == n * m
                    && f.parity() == *p
                    && t.time_reverse() == *p
                    && f.time_reverse().area() == p.area();
                if !ok {
                    return Err(format!("path {p}"));
                }
            }
            Ok(())
        },
    )];
    VerificationReport::new("path_symmetries", records)
}

fn le(p: &QRational, bound: Option<BigRational>, q: &BigRational) -> Check {
    let value = p.evaluate(q).map_err(|e| e.to_string())?;
    match bound {
        Some(b) if value <= b => Ok(()),
        Some(b) => Err(format!("{value} > {b}")),
        None => Err("bound undefined".into()),
    }
}

fn split_regime<T: Clone>(items: &[(T, bool)]) -> (Vec<T>, Vec<T>) {
    let inside = items.iter().filter(|(_, r)| *r).map(|(t, _)| t.clone()).collect();
    let outside = items.iter().filter(|(_, r)| !*r).map(|(t, _)| t.clone()).collect();
    (inside, outside)
}

/// Spin patterns on every subset of up to `max_sites` sites, as queries.
fn queries(n: u64, m: u64, max_sites: usize, only: impl Fn(u64) -> bool) -> Vec<CorrelationQuery> {
    let sites: Vec<u64> = (1..=n + m).filter(|x| only(*x)).collect();
    let mut out = Vec::new();
    for mask in 1u64..(1 << sites.len()) {
        let chosen: Vec<u64> = (0..sites.len()).filter(|i| mask >> i & 1 == 1).map(|i| sites[i]).collect();
        if chosen.len() > max_sites {
            continue;
        }
        for spins in 0u64..(1 << chosen.len()) {
            let c = chosen
                .iter()
                .enumerate()
                .map(|(i, x)| (*x, if spins >> i & 1 == 1 { Spin::Down } else { Spin::Up }))
                .collect();
            let q = CorrelationQuery::new(n, m, c).expect("sites are valid");
            if !q.count_infeasible() {
                out.push(q);
            }
        }
    }
    out
}

/// Every bound on the grid of `q` values for sectors with `1 <= n + m <= max_nm`.
///
/// Claims inside their stated regime are hard; the same inequalities outside
/// it are recorded as informational.
pub fn bounds(max_nm: u64, grid: &[BigRational], exec: Execution) -> VerificationReport {
    let cache = ZCache::new();
    let all: Vec<(u64, u64)> = sectors(max_nm).into_iter().filter(|(n, m)| n + m >= 1).collect();
    let site_cases = |regime: fn(u64, u64, u64) -> bool, pair: bool| -> Vec<((u64, u64, u64, BigRational), bool)> {
        let mut v = Vec::new();
        for &(n, m) in &all {
            let last = if pair { n + m - 1 } else { n + m };
            for x in 1..=last {
                for q in grid {
                    v.push(((n, m, x, q.clone()), regime(n, m, x)));
                }
            }
        }
        v
    };

    let down = site_cases(down_bound_regime, false);
    let (down_in, down_out) = split_regime(&down);
    let up = site_cases(up_bound_regime, false);
    let (up_in, up_out) = split_regime(&up);
    let pair = site_cases(|n, m, x| pair_bound_regime(n, m, x) && n >= 1, true);
    let (pair_in, pair_out) = split_regime(&pair);
    let pair_out: Vec<_> = pair_out.into_iter().filter(|(n, _, _, _)| *n >= 1).collect();

    let mut multi = Vec::new();
    for &(n, m) in &all {
        let regime_site = |x: u64| x > n && x > m;
        for qy in queries(n, m, usize::MAX, regime_site) {
            for q in grid {
                multi.push(((qy.clone(), q.clone()), true));
            }
        }
        for qy in queries(n, m, 2, |x| !regime_site(x)) {
            for q in grid {
                multi.push(((qy.clone(), q.clone()), false));
            }
        }
    }
    let (multi_in, multi_out) = split_regime(&multi);

    let down_check = |(n, m, x, q): &(u64, u64, u64, BigRational)| {
        let p = spin_down_prob(*n, *m, *x, &cache).map_err(|e| e.to_string())?;
        le(&p, bound_down(*n, *m, *x, q), q).map_err(|e| format!("({n},{m}) x={x} q={q}: {e}"))
    };
    let up_check = |(n, m, x, q): &(u64, u64, u64, BigRational)| {
        let p = spin_up_prob(*n, *m, *x, &cache).map_err(|e| e.to_string())?;
        le(&p, spin_up_bound(*n, *m, q), q).map_err(|e| format!("({n},{m}) x={x} q={q}: {e}"))
    };
    let pair_check = |(n, m, x, q): &(u64, u64, u64, BigRational)| {
        let p = pair_down_up_prob(*n, *m, *x, &cache).map_err(|e| e.to_string())?;
        le(&p, pair_bound(*n, *m, *x, q), q).map_err(|e| format!("({n},{m}) x={x} q={q}: {e}"))
    };
    let multi_check = |(qy, q): &(CorrelationQuery, BigRational)| {
        let num = multipoint_numerator(qy, &cache);
        let p = QRational::new(num, cache.get_or_closed(qy.n, qy.m)).map_err(|e| e.to_string())?;
        le(&p, Some(exp_bound(qy, q)), q).map_err(|e| format!("({},{}) {} q={q}: {e}", qy.n, qy.m, qy.sites_string()))
    };

    let down_ref = "P(S_x = down) <= q^{2(x-n)}(1-q^{2n})/(1-q^{2L}) for x >= n";
    let up_ref = "P(S_x = up) <= (1-q^{2m})/(1-q^{2L}) for n, m <= x <= L";
    let pair_ref = "P(S_x = down, S_{x+1} = up) <= q^{2(x-n)}(1-q^{2m})/(1-q^{2n}) (1-q^{2L})/(1-q^{2(L-1)}) for n, m <= x < L";
    let multi_ref = "P(pattern) <= q^{v(v-1) + 2 sum_k (x_k - n) alpha_k} for sites x_k > n, m";
    let records = vec![
        run("bound_down", down_ref, true, down_in, exec, down_check),
        run("bound_down_outside_regime", down_ref, false, down_out, exec, down_check),
        run("bound_up", up_ref, true, up_in, exec, up_check),
        run("bound_up_outside_regime", up_ref, false, up_out, exec, up_check),
        run("bound_pair", pair_ref, true, pair_in, exec, pair_check),
        run("bound_pair_outside_regime", pair_ref, false, pair_out, exec, pair_check),
        run("bound_exponential", multi_ref, true, multi_in, exec, multi_check),
        run("bound_exponential_outside_regime", multi_ref, false, multi_out, exec, multi_check),
    ];
    VerificationReport::new("bounds", records)
}

/// Exact correlation identities for sectors with `1 <= n + m <= max_nm`,
/// against brute-force configuration sums for up to `max_sites` sites.
pub fn correlations(max_nm: u64, max_sites: usize, exec: Execution) -> VerificationReport {
    let cache = ZCache::new();
    let all: Vec<(u64, u64)> = sectors(max_nm).into_iter().filter(|(n, m)| n + m >= 1).collect();
    let all_queries: Vec<CorrelationQuery> =
        all.iter().flat_map(|&(n, m)| queries(n, m, max_sites, |_| true)).collect();
    let site_sets: Vec<(u64, u64, Vec<u64>)> = all
        .iter()
        .flat_map(|&(n, m)| {
            let l = n + m;
            (1u64..(1 << l))
                .filter(move |mask| (mask.count_ones() as usize) <= max_sites)
                .map(move |mask| (n, m, (1..=l).filter(|x| mask >> (x - 1) & 1 == 1).collect()))
        })
        .collect();
    let site_pairs: Vec<(u64, u64, u64)> =
        all.iter().flat_map(|&(n, m)| (1..=n + m).map(move |x| (n, m, x))).collect();

    let pattern_prob = |n: u64, m: u64, c: Vec<(u64, Spin)>| -> Option<QPoly> {
        let q = CorrelationQuery::new(n, m, c).ok()?;
        if q.count_infeasible() {
            Some(QPoly::zero())
        } else {
            Some(multipoint_numerator(&q, &cache))
        }
    };
    let assignments = |sites: &[u64]| -> Vec<Vec<(u64, Spin)>> {
        (0u64..(1 << sites.len()))
            .map(|s| {
                sites
                    .iter()
                    .enumerate()
                    .map(|(i, x)| (*x, if s >> i & 1 == 1 { Spin::Down } else { Spin::Up }))
                    .collect()
            })
            .collect()
    };

    let records = vec![
        run(
            "multipoint_vs_configurations",
            "segment decomposition equals the sum over matching spin configurations",
            true,
            all_queries,
            exec,
            |qy| {
                let a = multipoint_numerator(qy, &cache);
                let b = configuration_numerator(qy).map_err(|e| e.to_string())?;
                expect(a == b, || format!("({},{}) {}", qy.n, qy.m, qy.sites_string()))
            },
        ),
        run(
            "total_probability",
            "sum over all spin assignments of a site set is 1",
            true,
            site_sets.clone(),
            exec,
            |(n, m, sites)| {
                let total: QPoly = assignments(sites).into_iter().filter_map(|c| pattern_prob(*n, *m, c)).sum();
                expect(total == cache.get_or_closed(*n, *m), || format!("({n},{m}) sites {sites:?}"))
            },
        ),
        run(
            "marginal_consistency",
            "summing out the last site of a pattern gives the pattern on the remaining sites",
            true,
            site_sets.into_iter().filter(|(_, _, s)| s.len() >= 2).collect(),
            exec,
            |(n, m, sites)| {
                let (last, rest) = sites.split_last().expect("at least two sites");
                for c in assignments(rest) {
                    let sub = pattern_prob(*n, *m, c.clone()).unwrap_or_default();
                    let summed: QPoly = [Spin::Down, Spin::Up]
                        .into_iter()
                        .filter_map(|s| {
                            let mut full = c.clone();
                            full.push((*last, s));
                            pattern_prob(*n, *m, full)
                        })
                        .sum();
                    if summed != sub {
                        return Err(format!("({n},{m}) sites {sites:?}"));
                    }
                }
                Ok(())
            },
        ),
        run(
            "flip_reflection_symmetry",
            "P_{n,m}(S_x = down) = P_{m,n}(S_{L-x+1} = up)",
            true,
            site_pairs.clone(),
            exec,
            |&(n, m, x)| {
                let a = spin_down_prob(n, m, x, &cache).map_err(|e| e.to_string())?;
                let b = spin_up_prob(m, n, n + m - x + 1, &cache).map_err(|e| e.to_string())?;
                expect(a.same_value(&b), || format!("({n},{m}) x={x}"))
            },
        ),
        run(
            "down_up_complement",
            "P(S_x = down) + P(S_x = up) = 1",
            true,
            site_pairs,
            exec,
            |&(n, m, x)| {
                let a = spin_down_prob(n, m, x, &cache).map_err(|e| e.to_string())?;
                let b = spin_up_prob(n, m, x, &cache).map_err(|e| e.to_string())?;
                expect(&a.num + &b.num == a.den, || format!("({n},{m}) x={x}"))
            },
        ),
    ];
    VerificationReport::new("correlations", records)
}

/// Three-way equality of the 2D partition functions for `N, M <= max`, and
/// the regrouping of the product by diagonal occupation.
pub fn reduce2d(max: u64, exec: Execution) -> VerificationReport {
    let grid: Vec<(u64, u64)> = (1..=max).flat_map(|n| (1..=max).map(move |m| (n, m))).collect();
    let records = vec![
        run(
            "reduce2d_three_way",
            "composition sum = coefficient of z^k in the product = k-th elementary symmetric polynomial",
            true,
            grid.clone(),
            exec,
            |&(n, m)| {
                let checks = three_way_all(n, m, Execution::Sequential).map_err(|e| e.to_string())?;
                match checks.iter().find(|c| !c.equal) {
                    None => Ok(()),
                    Some(c) => Err(format!("N={n} M={m} k={}", c.query.k)),
                }
            },
        ),
        run(
            "reduce2d_regrouping",
            "prod_j (1 + z q^{2j})^N = (sum_l z^l q^{2(N-1)l} Z(l, M-l))^N",
            true,
            grid,
            exec,
            |&(n, m)| expect(z2d_diagonal_power(n, m) == z2d_product(n, m), || format!("N={n} M={m}")),
        ),
    ];
    VerificationReport::new("reduce2d", records)
}

/// Failure counts by record name, for compact summaries.
pub fn failure_summary(report: &VerificationReport) -> BTreeMap<String, u64> {
    report.records.iter().map(|r| (r.name.clone(), r.failures)).collect()
}

/// The default exact grid for bound checks.
pub fn default_grid() -> Vec<BigRational> {
    [(1, 5), (1, 2), (4, 5)]
        .iter()
        .map(|&(a, b)| BigRational::new(a.into(), b.into()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identities_pass_small() {
        let r = identities(6, Execution::Parallel);
        assert!(r.pass, "{r:#?}");
        assert!(r.records.iter().all(|x| x.instances > 0));
        let json = serde_json::to_string(&r.to_json_value()).unwrap();
        assert!(json.starts_with("{\"pass\":true,\"records\":[{\"counterexample\":null"));
    }

    #[test]
    fn bounds_pass_small() {
        let r = bounds(6, &default_grid(), Execution::Parallel);
        assert!(r.pass, "{:#?}", failure_summary(&r));
    }

    #[test]
    fn correlations_pass_small() {
        let r = correlations(5, 3, Execution::Parallel);
        assert!(r.pass, "{:#?}", failure_summary(&r));
    }

    #[test]
    fn reduce2d_pass_small() {
        assert!(reduce2d(3, Execution::Sequential).pass);
    }

    #[test]
    fn counterexample_is_first_failure() {
        let r = run("demo", "x < 3", true, vec![1, 2, 3, 4], Execution::Parallel, |x| {
            expect(*x < 3, || format!("x={x}"))
        });
        assert_eq!(r.failures, 2);
        assert_eq!(r.counterexample.as_deref(), Some("x=3"));
        let report = VerificationReport::new("demo", vec![r.clone()]);
        assert!(!report.pass);
        let soft = IdentityRecord { hard: false, ..r };
        assert!(VerificationReport::new("demo", vec![soft]).pass);
    }

    #[test]
    fn path_symmetries_pass() {
        assert!(path_symmetries(6, Execution::Parallel).pass);
    }
}
