//! Acceptance suite: one PASS/FAIL line per criterion, exit code 1 if any fails.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use statrs::distribution::{ChiSquared, ContinuousCDF};

use xxz_paths::correlations::oracle::configuration_numerator;
use xxz_paths::correlations::{
    fluctuation_distribution, multipoint_prob, tail_bound_interval, CorrelationQuery, FluctuationQuery, PathSampler,
    Spin,
};
use xxz_paths::higher_dim::{z2d_oracle, z2d_reduction};
use xxz_paths::lattice_paths::{area_histogram, enumerate_paths, oracle_partition, BoxSpec, DEFAULT_ENUMERATION_CAP};
use xxz_paths::partition::{identities, z_closed, ZCache};
use xxz_paths::verify::{self, sectors};
use xxz_paths::{Execution, QPoly};

fn rat(a: i64, b: i64) -> BigRational {
    BigRational::new(a.into(), b.into())
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn random_box(rng: &mut ChaCha8Rng, max_nm: u64) -> BoxSpec {
    let l = rng.gen_range(0..=max_nm);
    let n = rng.gen_range(0..=l);
    let m = l - n;
    BoxSpec { n0: rng.gen_range(0..=n), m0: rng.gen_range(0..=m), n, m }
}

fn first_failure(checks: impl Iterator<Item = Result<(), String>>) -> (usize, Option<String>) {
    let mut count = 0;
    let mut first = None;
    for c in checks {
        count += 1;
        if let Err(e) = c {
            first.get_or_insert(e);
        }
    }
    (count, first)
}

fn from_checks(checks: impl Iterator<Item = Result<(), String>>) -> Outcome {
    let (count, first) = first_failure(checks);
    match first {
        None => outcome(true, format!("{count} instances exact")),
        Some(e) => outcome(false, format!("{count} instances, first failure: {e}")),
    }
}

fn c1_oracle() -> Outcome {
    from_checks(sectors(12).into_iter().map(|(n, m)| {
        let oracle = oracle_partition(&BoxSpec::sector(n, m), DEFAULT_ENUMERATION_CAP).map_err(|e| e.to_string())?;
        if z_closed(n, m) == oracle {
            Ok(())
        } else {
            Err(format!("({n},{m})"))
        }
    }))
}

fn c2_q_pascal() -> Outcome {
    let mut table: BTreeMap<(u64, u64), QPoly> = BTreeMap::new();
    let pairs: Vec<(u64, u64)> = (0..=30).flat_map(|n| (0..=30).map(move |m| (n, m))).collect();
    for ((n, m), z) in pairs.iter().zip(Execution::Parallel.map(pairs.clone(), |(n, m)| z_closed(n, m))) {
        table.insert((*n, *m), z);
    }
    let z = |n: i64, m: i64| -> QPoly {
        if n < 0 || m < 0 {
            QPoly::zero()
        } else {
            table[&(n as u64, m as u64)].clone()
        }
    };
    from_checks(pairs.iter().filter(|(n, m)| n + m >= 1).map(|&(n, m)| {
        let (ni, mi) = (n as i64, m as i64);
        let upper = &z(ni, mi - 1) + &z(ni - 1, mi).shift(2 * (n + m));
        if upper != z(ni, mi) {
            return Err(format!("upper corner ({n},{m})"));
        }
        if n >= 1 {
            let second = &z(ni - 1, mi).shift(2 * n) + &z(ni, mi - 1).shift(2 * n);
            if second != z(ni, mi) {
                return Err(format!("second q-Pascal ({n},{m})"));
            }
        }
        Ok(())
    }))
}

fn c3_markov() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let instances: Vec<(BoxSpec, u64)> = (0..200)
        .map(|_| {
            let b = random_box(&mut rng, 20);
            let z = rng.gen_range(b.n0 + b.m0..=b.n + b.m);
            (b, z)
        })
        .collect();
    from_checks(Execution::Parallel.map(instances, |(b, z)| identities::markov(&b, z)).into_iter())
}

fn c4_translation_symmetry() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut instances = Vec::new();
    for _ in 0..200 {
        let b = random_box(&mut rng, 20);
        let x = rng.gen_range(0..=b.n0);
        let y = rng.gen_range(0..=b.m0);
        let l = rng.gen_range(0..=20u64);
        let n = rng.gen_range(0..=l);
        instances.push((b, x, y, n, l - n));
    }
    from_checks(
        Execution::Parallel
            .map(instances, |(b, x, y, n, m)| {
                identities::translation(&b, x, y)?;
                identities::generalized_reflection(&b)?;
                identities::time_reversal(n, m)
            })
            .into_iter(),
    )
}

fn c5_area() -> Outcome {
    let mut paths = 0usize;
    let result = first_failure(sectors(10).into_iter().map(|(n, m)| {
        let all = enumerate_paths(&BoxSpec::sector(n, m), DEFAULT_ENUMERATION_CAP).map_err(|e| e.to_string())?;
        paths += all.len();
        for p in &all {
            if p.weight_exponent() != n * (n + 1) + 2 * p.area() {
                return Err(format!("exponent of {p}"));
            }
            let (f, t) = (p.parity(), p.time_reverse());
            if p.area() + f.area() != n * m || p.area() + t.area() != n * m || f.time_reverse().area() != p.area() {
                return Err(format!("parity or reversal area of {p}"));
            }
        }
        Ok(())
    }));
    match result.1 {
        None => outcome(true, format!("{paths} paths, zero exceptions")),
        Some(e) => outcome(false, e),
    }
}

fn c6_multipoint() -> Outcome {
    let half = rat(1, 2);
    let cache = ZCache::new();
    let mut queries = Vec::new();
    for (n, m) in sectors(8).into_iter().filter(|(n, m)| n + m >= 1) {
        let l = n + m;
        for mask in 1u64..(1 << l) {
            if mask.count_ones() > 3 {
                continue;
            }
            let sites: Vec<u64> = (1..=l).filter(|x| mask >> (x - 1) & 1 == 1).collect();
            for spins in 0u64..(1 << sites.len()) {
                let c: Vec<(u64, Spin)> = sites
                    .iter()
                    .enumerate()
                    .map(|(i, x)| (*x, if spins >> i & 1 == 1 { Spin::Down } else { Spin::Up }))
                    .collect();
                let q = CorrelationQuery::new(n, m, c).unwrap();
                if !q.count_infeasible() {
                    queries.push(q);
                }
            }
        }
    }
    from_checks(
        Execution::Parallel
            .map(queries, |q| {
                let exact = multipoint_prob(&q, &cache).map_err(|e| e.to_string())?;
                let brute = configuration_numerator(&q).map_err(|e| e.to_string())?;
                let brute_value = brute.evaluate(&half) / z_closed(q.n, q.m).evaluate(&half);
                if exact.num == brute && exact.evaluate(&half).map_err(|e| e.to_string())? == brute_value {
                    Ok(())
                } else {
                    Err(format!("({},{}) {}", q.n, q.m, q.sites_string()))
                }
            })
            .into_iter(),
    )
}

fn c7_bounds() -> Outcome {
    let report = verify::bounds(10, &verify::default_grid(), Execution::Parallel);
    let hard: Vec<String> = report
        .records
        .iter()
        .filter(|r| r.hard)
        .map(|r| format!("{} {}/{}", r.name, r.failures, r.instances))
        .collect();
    let soft: Vec<String> = report
        .records
        .iter()
        .filter(|r| !r.hard)
        .map(|r| format!("{} {}/{}", r.name, r.failures, r.instances))
        .collect();
    outcome(
        report.pass,
        format!("in-regime violations: {}; informational: {}", hard.join(", "), soft.join(", ")),
    )
}

fn c8_fluctuations() -> Outcome {
    let q = rat(1, 2);
    let cache = ZCache::new();
    let mut checked = 0;
    let mut p0 = BTreeMap::new();
    for chain in [4u64, 8, 12, 16] {
        for window in [2u64, 4, 6] {
            if window > chain {
                continue;
            }
            let fq = FluctuationQuery::new(chain, window).unwrap();
            let d = fluctuation_distribution(&fq, &cache, Execution::Parallel);
            if !d.is_normalised() || !d.is_symmetric() || !d.mean_numerator().is_zero() {
                return outcome(false, format!("N={chain} L={window}: normalisation, symmetry or mean"));
            }
            for l in 1..=(window as i64 / 2) {
                let p = d.prob(l).evaluate(&q).unwrap();
                let bound = tail_bound_interval(&q, window, l as u64).unwrap();
                if p > bound.lo {
                    return outcome(false, format!("N={chain} L={window} l={l}: {p} > {}", bound.lo));
                }
                checked += 1;
            }
            p0.insert((window, chain), d.prob(0).evaluate(&q).unwrap());
        }
    }
    let trend = [p0[&(2, 4)].clone(), p0[&(4, 8)].clone(), p0[&(6, 12)].clone()];
    if !(trend[0] < trend[1] && trend[1] < trend[2]) {
        return outcome(false, format!("P(F=0) not increasing: {trend:?}"));
    }
    let shown: Vec<String> = trend.iter().map(|v| format!("{:.4}", xxz_paths::qexact::ratio_to_f64(v))).collect();
    outcome(true, format!("{checked} tail checks; P(F=0) along (2,4),(4,8),(6,12): {}", shown.join(" < ")))
}

fn c9_reduce2d() -> Outcome {
    let report = verify::reduce2d(4, Execution::Parallel);
    if !report.pass {
        return outcome(false, format!("{:?}", verify::failure_summary(&report)));
    }
    let z = z_closed;
    let k3 = (&(&z(1, 2).pow(3) + &(&z(1, 2) * &z(2, 1)).scale(&6.into())) + &z(3, 0).scale(&3.into())).shift(12);
    if z2d_reduction(3, 3, 3) != k3 {
        return outcome(false, "Z_2d(3,6) regression");
    }
    let k4 = (&(&(&z(1, 2) * &z(3, 0)).scale(&6.into()) + &z(2, 1).pow(2).scale(&3.into()))
        + &(&z(1, 2).pow(2) * &z(2, 1)).scale(&3.into()))
        .shift(16);
    if z2d_reduction(3, 3, 4) != k4 || z2d_oracle(3, 3, 4) != k4 {
        return outcome(false, "Z_2d(4,5) regression");
    }
    outcome(true, "three-way equality for N, M <= 4; Z_2d(3,6) and Z_2d(4,5) regressions")
}

fn c10_sampler() -> Outcome {
    let (n, m) = (4, 4);
    let q = rat(1, 2);
    let draws = 100_000usize;
    let sampler = PathSampler::new(n, m, &q).unwrap();
    let mut observed: BTreeMap<u64, f64> = BTreeMap::new();
    for p in sampler.sample_many(2024, draws, Execution::Parallel) {
        *observed.entry(p.area()).or_default() += 1.0;
    }
    // exact area distribution: weight of area a is q^{n(n+1)+2a}
    let counts = area_histogram(&BoxSpec::sector(n, m), DEFAULT_ENUMERATION_CAP).unwrap();
    let weights: Vec<(u64, f64)> = counts
        .iter()
        .map(|(a, c)| (*a, *c as f64 * 0.25f64.powi(*a as i32)))
        .collect();
    let total: f64 = weights.iter().map(|(_, w)| w).sum();
    // merge the tail so every bin expects at least 5 draws
    let mut bins: Vec<(f64, f64)> = Vec::new();
    let (mut e_acc, mut o_acc) = (0.0, 0.0);
    for (a, w) in &weights {
        e_acc += draws as f64 * w / total;
        o_acc += observed.get(a).copied().unwrap_or(0.0);
        if e_acc >= 5.0 {
            bins.push((e_acc, o_acc));
            e_acc = 0.0;
            o_acc = 0.0;
        }
    }
    if let Some(last) = bins.last_mut() {
        last.0 += e_acc;
        last.1 += o_acc;
    }
    let chi2: f64 = bins.iter().map(|(e, o)| (o - e) * (o - e) / e).sum();
    let df = (bins.len() - 1) as f64;
    let critical = ChiSquared::new(df).unwrap().inverse_cdf(0.99);
    outcome(
        chi2 < critical,
        format!("chi2 = {chi2:.2} over {} bins, critical {critical:.2} at 0.01", bins.len()),
    )
}

fn main() {
    let criteria: Vec<(&str, Option<Duration>, fn() -> Outcome)> = vec![
        ("1 oracle equivalence n+m<=12", Some(Duration::from_secs(30)), c1_oracle),
        ("2 q-Pascal identities n,m<=30", Some(Duration::from_secs(10)), c2_q_pascal),
        ("3 Markov property, 200 random instances n+m<=20", Some(Duration::from_secs(10)), c3_markov),
        ("4 translation and symmetries, random n+m<=20", None, c4_translation_symmetry),
        ("5 area identity exhaustive n+m<=10", None, c5_area),
        ("6 multipoint exactness n+m<=8, <=3 sites, q=1/2", Some(Duration::from_secs(60)), c6_multipoint),
        ("7 bound suite n+m<=10, q in {1/5,1/2,4/5}", None, c7_bounds),
        ("8 fluctuation theorem at desk scale", Some(Duration::from_secs(60)), c8_fluctuations),
        ("9 2D reduction", Some(Duration::from_secs(30)), c9_reduce2d),
        ("10 sampler fidelity (4,4), q=1/2", Some(Duration::from_secs(60)), c10_sampler),
    ];
    let mut failed = 0;
    for (name, budget, run) in criteria {
        let start = Instant::now();
        let out = run();
        let elapsed = start.elapsed();
        let in_time = budget.map_or(true, |b| elapsed < b);
        let pass = out.pass && in_time;
        if !pass {
            failed += 1;
        }
        let budget_note = budget.map_or(String::new(), |b| format!(" (budget {}s)", b.as_secs()));
        println!(
            "{} criterion {name}: {} [{:.2}s{budget_note}]",
            if pass { "PASS" } else { "FAIL" },
            out.detail,
            elapsed.as_secs_f64()
        );
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all criteria passed");
}
