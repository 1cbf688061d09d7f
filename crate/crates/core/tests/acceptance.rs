//! Acceptance criteria, one pass/fail line each. Exact checks with pinned time limits.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use num_bigint::BigUint;

use padic_dynamics::decompose::minimality_check;
use padic_dynamics::engine::{analyze, find_cycles, Behavior, DEFAULT_HEADROOM};
use padic_dynamics::oracle::{basin_of, build_graph, census, crosscheck, FunctionalGraph};
use padic_dynamics::padic::hensel_lift;
use padic_dynamics::theorems::{classify_case, conjecture_check, growing_cycle_count, predict};
use padic_dynamics::{decompose, Decomposition, IntPolynomial, Level, Prime, Residue};

type Check = Result<String, String>;

fn prime(p: u32) -> Prime {
    Prime::new(p).unwrap()
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let m = m as u128;
    let mut acc: u128 = 1 % m;
    let mut b2 = b as u128 % m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b2 % m;
        }
        b2 = b2 * b2 % m;
        e >>= 1;
    }
    b = acc as u64;
    b
}

/// Inverse of an odd number modulo `2^bits` by Newton iteration.
fn inv_mod_2k(x: u64, bits: u32) -> u64 {
    let mut y = x;
    for _ in 0..6 {
        y = y.wrapping_mul(2u64.wrapping_sub(x.wrapping_mul(y)));
    }
    y & ((1u64 << bits) - 1)
}

fn graphs(m: u32, p: u32, top: u32) -> Vec<FunctionalGraph> {
    (1..=top).map(|n| build_graph(&IntPolynomial::monomial(m), prime(p), n).unwrap()).collect()
}

fn same(predicted: &Decomposition, computed: &Decomposition, what: &str) -> Result<(), String> {
    let diff = predicted.differences(computed);
    if diff.is_empty() {
        Ok(())
    } else {
        Err(format!("{what}: {}", diff[..diff.len().min(3)].join("; ")))
    }
}

fn crosschecked(d: &Decomposition, gs: &[FunctionalGraph], what: &str) -> Result<(), String> {
    for g in gs.iter().filter(|g| g.level() <= d.max_level) {
        let r = crosscheck(d, g);
        if let Some(v) = r.violations.first() {
            return Err(format!("{what} at level {}: {} {}", g.level(), v.kind, v.detail));
        }
    }
    Ok(())
}

fn component_centers(d: &Decomposition) -> BTreeSet<Vec<(u64, u32)>> {
    d.components
        .iter()
        .map(|c| {
            let mut v: Vec<(u64, u32)> =
                c.balls().iter().map(|b| (b.center().to_u64().unwrap(), b.level())).collect();
            v.sort();
            v
        })
        .collect()
}

fn criterion_1() -> Check {
    for m in [2, 4, 6, 8] {
        let gs = graphs(m, 2, 10);
        for n in 2..=10 {
            let case = classify_case(2, m as u64).map_err(|e| e.to_string())?;
            let predicted = predict(&case, n).map_err(|e| e.to_string())?;
            let computed = decompose(&case.polynomial(), case.prime, n).map_err(|e| e.to_string())?;
            same(&predicted, &computed, &format!("m={m} N={n}"))?;
            crosschecked(&computed, &gs, &format!("m={m} N={n}"))?;
            if computed.periodic_orbits.len() != 2 || !computed.components.is_empty() || computed.basins.len() != 2 {
                return Err(format!("m={m} N={n}: expected two attracting fixed points and two basins"));
            }
        }
    }
    Ok("m in {2,4,6,8}, N = 2..10: decompose = predict = oracle".into())
}

fn criterion_2() -> Check {
    let n = 12;
    for (m, t) in [(5u32, 2u32), (9, 3)] {
        let f = IntPolynomial::monomial(m);
        let computed = decompose(&f, prime(2), n).map_err(|e| e.to_string())?;
        let mut expected = BTreeSet::new();
        for l in 0..=(n - t - 2) {
            let level = t + l + 2;
            let modulus = 1u64 << level;
            for a in 0..(1u64 << (t - 1)) {
                for c in [1u64, modulus - 1] {
                    let x = (c + (1 << (l + 2)) + (a << (l + 3))) % modulus;
                    expected.insert(vec![(x, level)]);
                }
            }
        }
        let got = component_centers(&computed);
        if got != expected {
            return Err(format!("m={m}: {} components found, formula gives {}", got.len(), expected.len()));
        }
        for comp in &computed.components {
            match minimality_check(&f, comp, n) {
                Ok(v) if v == n => {}
                other => return Err(format!("m={m}: minimality of {} fails: {other:?}", comp.balls()[0])),
            }
        }
        let predicted = predict(&classify_case(2, m as u64).unwrap(), n).map_err(|e| e.to_string())?;
        same(&predicted, &computed, &format!("m={m}"))?;
    }
    Ok("m=5,9: families 1+2^(l+2)+2^(l+3)a and -1+... to level 12, minimal to 12".into())
}

fn criterion_3() -> Check {
    let n = 12;
    for (m, t) in [(3u32, 2u32), (7, 3)] {
        let mut expected = BTreeSet::new();
        for l in 0..=(n - t - 3) {
            let level = t + l + 3;
            let modulus = 1u64 << level;
            for a in 0..(1u64 << (t - 1)) {
                for c in [1u64, modulus - 1] {
                    let x = (c + (1 << (l + 2)) + (a << (l + 4))) % modulus;
                    let y = (inv_mod_2k(x, level) + (1 << (t + l + 2))) % modulus;
                    if pow_mod(x, m as u64, modulus) != y || pow_mod(y, m as u64, modulus) != x {
                        return Err(format!("m={m}: f does not swap {x} and {y} mod 2^{level}"));
                    }
                    let mut pair = vec![(x, level), (y, level)];
                    pair.sort();
                    expected.insert(pair);
                }
            }
        }
        let case = classify_case(2, m as u64).unwrap();
        let predicted = predict(&case, n).map_err(|e| e.to_string())?;
        let computed = decompose(&case.polynomial(), case.prime, n).map_err(|e| e.to_string())?;
        if component_centers(&predicted) != expected {
            return Err(format!("m={m}: predicted components differ from the inverse-centered formula"));
        }
        same(&predicted, &computed, &format!("m={m}"))?;
        let g = build_graph(&case.polynomial(), case.prime, n).map_err(|e| e.to_string())?;
        crosschecked(&predicted, std::slice::from_ref(&g), &format!("m={m}"))?;
    }
    Ok("m=3,7: {x, x^-1 + 2^(t+l+2)} components by congruence, decomposer and oracle to level 12".into())
}

/// Growing cycles of each length at level `n`: oracle cycles classified by the engine,
/// compared with the engine's own cycle enumeration.
fn growing_census(p: u32, m: u32, n: u32) -> Result<BTreeMap<usize, usize>, String> {
    let f = IntPolynomial::monomial(m);
    let g = build_graph(&f, prime(p), n).map_err(|e| e.to_string())?;
    let oracle = census(&g, &f, Some(Behavior::Grows)).counts;
    let mut engine = BTreeMap::new();
    for c in find_cycles(&f, prime(p), Level::new(n).unwrap()).map_err(|e| e.to_string())? {
        if analyze(&f, &c, n + DEFAULT_HEADROOM).map_err(|e| e.to_string())?.behavior == Behavior::Grows {
            *engine.entry(c.len()).or_insert(0) += 1;
        }
    }
    if oracle != engine {
        return Err(format!("x^{m} mod {p}^{n}: oracle census {oracle:?} != engine {engine:?}"));
    }
    Ok(oracle)
}

fn expect_counts(p: u32, m: u32, levels: std::ops::RangeInclusive<u32>, expected: &[(usize, usize)]) -> Result<(), String> {
    let predicted = growing_cycle_count(&classify_case(p, m as u64).unwrap()).map_err(|e| e.to_string())?;
    let predicted: Vec<(usize, usize)> = predicted.into_iter().map(|(k, c)| (k, c as usize)).collect();
    if predicted != expected {
        return Err(format!("p={p} m={m}: theorem count {predicted:?} != stated {expected:?}"));
    }
    for n in levels {
        let got = growing_census(p, m, n)?;
        for &(k, c) in expected {
            let seen = got.get(&k).copied().unwrap_or(0);
            if seen != c {
                return Err(format!("p={p} m={m} level {n}: {seen} growing {k}-cycles, expected {c}"));
            }
        }
    }
    Ok(())
}

fn criterion_4() -> Check {
    expect_counts(3, 7, 2..=7, &[(1, 4)])?;
    expect_counts(3, 10, 3..=7, &[(1, 6)])?;
    Ok("p=3: m=7 has 4 growing 1-cycles at levels 2..7; m=10 has 6 at levels 3..7".into())
}

fn criterion_5() -> Check {
    expect_counts(3, 5, 2..=7, &[(2, 2)])?;
    expect_counts(3, 2, 2..=7, &[(2, 1)])?;
    Ok("p=3: m=5 has 2 growing 2-cycles, m=2 has 1, at levels 2..7".into())
}

fn criterion_6() -> Check {
    expect_counts(5, 21, 2..=6, &[(1, 16)])?;
    expect_counts(5, 11, 2..=6, &[(1, 8), (2, 4)])?;
    expect_counts(5, 6, 2..=6, &[(1, 4)])?;
    expect_counts(5, 9, 2..=6, &[(2, 8)])?;
    expect_counts(5, 4, 2..=6, &[(2, 2)])?;
    Ok("p=5: m=21,11,6,9,4 growing-cycle counts at levels 2..6".into())
}

fn criterion_7() -> Check {
    let p5 = prime(5);
    let f2 = IntPolynomial::from_i64(&[1, 0, 1]);
    let i8 = hensel_lift(&f2, &Residue::from_u64(p5, Level::new(1).unwrap(), 2), Level::new(8).unwrap())
        .map_err(|e| e.to_string())?;
    let m8 = BigUint::from(5u32).pow(8);
    if (i8.value() * i8.value() + 1u32) % &m8 != BigUint::from(0u32) {
        return Err("i^2 + 1 is not divisible by 5^8".into());
    }
    let n = 5;
    let modulus = 5u64.pow(n);
    let i = (i8.value() % modulus).try_into().unwrap_or(0u64);
    let mi = modulus - i;
    let minus1 = modulus - 1;
    for (m, orbits) in [
        (10u32, vec![vec![0u64], vec![1]]),
        (25, vec![vec![0], vec![1], vec![minus1], vec![i], vec![mi]]),
        (15, vec![vec![0], vec![1], vec![minus1], vec![i, mi]]),
    ] {
        let f = IntPolynomial::monomial(m);
        let g = build_graph(&f, p5, n).map_err(|e| e.to_string())?;
        let got: BTreeSet<BTreeSet<u64>> = g.cycles().iter().map(|c| c.iter().copied().collect()).collect();
        let want: BTreeSet<BTreeSet<u64>> = orbits.iter().map(|o| o.iter().copied().collect()).collect();
        if got != want {
            return Err(format!("m={m}: oracle cycles mod 5^5 are {got:?}, expected {want:?}"));
        }
        let case = classify_case(5, m as u64).unwrap();
        let predicted = predict(&case, n).map_err(|e| e.to_string())?;
        let computed = decompose(&f, p5, n).map_err(|e| e.to_string())?;
        same(&predicted, &computed, &format!("m={m}"))?;
        crosschecked(&predicted, &graphs(m, 5, n), &format!("m={m}"))?;
        for (idx, orbit) in predicted.periodic_orbits.iter().enumerate() {
            let pts: Vec<u64> = orbit.points().iter().map(|x| x.to_u64().unwrap()).collect();
            let oracle_basin = basin_of(&g, &pts).map_err(|e| e.to_string())?;
            let mut predicted_basin: BTreeSet<u64> = pts.iter().copied().collect();
            for b in predicted.basins.iter().filter(|b| b.attractor == padic_dynamics::decompose::Attractor::Orbit(idx)) {
                for ball in &b.region {
                    predicted_basin.extend(ball.residues_at(n));
                }
            }
            if oracle_basin != predicted_basin {
                return Err(format!("m={m}: basin of orbit {pts:?} differs from the oracle"));
            }
        }
    }
    Ok("p=5: m=10,25,15 periodic points and basins match the oracle at level 5; i^2 = -1 mod 5^8".into())
}

fn criterion_8() -> Check {
    for (m, levels, expected) in [(7u64, 3..=5u32, 20usize), (2, 2..=5, 1), (3, 2..=5, 4)] {
        let r = conjecture_check(m, 5).map_err(|e| e.to_string())?;
        if r.expected as usize != expected {
            return Err(format!("m={m}: formula gives {} but the stated count is {expected}", r.expected));
        }
        for n in levels {
            let engine = r.observed.get(&n).copied().unwrap_or(0) as usize;
            let oracle = growing_census(5, m as u32, n)?.get(&4).copied().unwrap_or(0);
            if engine != expected || oracle != expected {
                return Err(format!(
                    "conjecture refuted: m={m} level {n} has {oracle} growing 4-cycles, conjecture says {expected}"
                ));
            }
        }
    }
    Ok("Conjectural-pass: m=7 (t=2) 20, m=2 1, m=3 4 growing 4-cycles per level".into())
}

fn criterion_9() -> Check {
    let instances = common::random_instances(0x5eed, 200);
    for &(p, m, l) in &instances {
        common::check_lift_laws(p, m, l)?;
        common::check_engine_oracle(p, m, l)?;
    }
    let pairs = common::random_residue_pairs(0xfeed, 1000);
    for (x, y) in &pairs {
        common::check_valuation_laws(x, y)?;
    }
    Ok("lift laws and engine/oracle equality on 200 instances, valuation laws on 1000 residue pairs".into())
}

fn main() {
    let criteria: [(u32, Duration, fn() -> Check); 9] = [
        (1, Duration::from_secs(1), criterion_1),
        (2, Duration::from_secs(5), criterion_2),
        (3, Duration::from_secs(5), criterion_3),
        (4, Duration::from_secs(2), criterion_4),
        (5, Duration::from_secs(2), criterion_5),
        (6, Duration::from_secs(30), criterion_6),
        (7, Duration::from_secs(10), criterion_7),
        (8, Duration::from_secs(30), criterion_8),
        (9, Duration::from_secs(60), criterion_9),
    ];
    let mut failed = 0;
    for (id, limit, run) in criteria {
        let start = Instant::now();
        let result = run();
        let took = start.elapsed();
        let limit_s = limit.as_secs_f64();
        match result {
            Ok(msg) if took <= limit => {
                println!("PASS criterion {id}: {msg} ({:.3} s, limit {limit_s} s)", took.as_secs_f64());
            }
            Ok(msg) => {
                failed += 1;
                println!("FAIL criterion {id}: too slow, {:.3} s > {limit_s} s ({msg})", took.as_secs_f64());
            }
            Err(e) => {
                failed += 1;
                println!("FAIL criterion {id}: {e} ({:.3} s)", took.as_secs_f64());
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all 9 criteria passed");
}
