#![allow(dead_code)]

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use padic_dynamics::engine::{analyze, find_cycles, lift, Behavior};
use padic_dynamics::oracle::build_graph;
use padic_dynamics::padic::valuation;
use padic_dynamics::{IntPolynomial, Level, Prime, Residue};

pub const PRIMES: [u32; 4] = [2, 3, 5, 7];

/// `(p, m, level)` triples with `m <= 50` and `level <= 5`.
pub fn random_instances(seed: u64, count: usize) -> Vec<(u32, u32, u32)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let p = PRIMES[rng.gen_range(0..PRIMES.len())];
            (p, rng.gen_range(2..=50), rng.gen_range(1..=5))
        })
        .collect()
}

fn order_mod(a: u64, p: u64) -> u64 {
    let mut x = a % p;
    let mut d = 1;
    while x != 1 {
        x = x * a % p;
        d += 1;
    }
    d
}

/// Every cycle mod `p^level` lifts according to the residues of its multiplier and displacement.
pub fn check_lift_laws(p: u32, m: u32, level: u32) -> Result<(), String> {
    let f = IntPolynomial::monomial(m);
    let prime = Prime::new(p).unwrap();
    for sigma in find_cycles(&f, prime, Level::new(level).unwrap()).map_err(|e| e.to_string())? {
        let k = sigma.len();
        let an = analyze(&f, &sigma, level + 8).map_err(|e| e.to_string())?;
        let set = lift(&f, &sigma);
        let modulus = prime.pow(level);
        let parents: BTreeSet<BigUint> = sigma.points().iter().cloned().collect();
        let mut seen = BTreeSet::new();
        for c in &set.children {
            if c.len() % k != 0 {
                return Err(format!("x^{m} mod {p}^{level} {sigma}: child {c} length not a multiple of {k}"));
            }
            for x in c.points() {
                if !parents.contains(&(x % &modulus)) || !seen.insert(x.clone()) {
                    return Err(format!("x^{m} mod {p}^{level} {sigma}: child {c} leaves the parent balls"));
                }
            }
        }
        let mut lengths: Vec<usize> = set.children.iter().map(|c| c.len() / k).collect();
        lengths.sort();
        let pk = p as usize;
        let expected: Vec<usize> = match an.behavior {
            Behavior::GrowsTails => vec![1],
            Behavior::PartiallySplits { order } => {
                let a = an.multiplier.a.value().mod_floor(&BigUint::from(p)).try_into().unwrap();
                let d = order_mod(a, p as u64) as usize;
                if d != order as usize {
                    return Err(format!("x^{m} mod {p}^{level} {sigma}: order {order} != {d}"));
                }
                let mut v = vec![1];
                v.extend(std::iter::repeat_n(d, (pk - 1) / d));
                v
            }
            b if b.is_growing() || b == Behavior::WeaklyGrows => vec![pk],
            b if b.is_splitting() || b == Behavior::WeaklySplits => vec![1; pk],
            b => return Err(format!("unexpected behavior {b:?}")),
        };
        if lengths != expected {
            return Err(format!(
                "x^{m} mod {p}^{level} {sigma} ({:?}): child lengths/k {lengths:?}, expected {expected:?}",
                an.behavior
            ));
        }
    }
    Ok(())
}

/// The engine's cycles mod `p^level` equal the oracle's.
pub fn check_engine_oracle(p: u32, m: u32, level: u32) -> Result<(), String> {
    let f = IntPolynomial::monomial(m);
    let prime = Prime::new(p).unwrap();
    let engine: BTreeSet<BTreeSet<u64>> = find_cycles(&f, prime, Level::new(level).unwrap())
        .map_err(|e| e.to_string())?
        .iter()
        .map(|c| c.points().iter().map(|x| x.try_into().unwrap()).collect())
        .collect();
    let g = build_graph(&f, prime, level).map_err(|e| e.to_string())?;
    let oracle: BTreeSet<BTreeSet<u64>> = g.cycles().iter().map(|c| c.iter().copied().collect()).collect();
    if engine != oracle {
        return Err(format!("x^{m} mod {p}^{level}: engine and oracle cycle sets differ"));
    }
    Ok(())
}

/// Valuation laws for a pair of residues at a common level.
pub fn check_valuation_laws(x: &Residue, y: &Residue) -> Result<(), String> {
    let n = x.level().get();
    let (vx, vy) = (valuation(x), valuation(y));
    let digits = x.digits();
    let zeros = digits.iter().take_while(|&&d| d == 0).count() as u32;
    if vx.value != zeros.min(n) || vx.is_exact() != (zeros < n) {
        return Err(format!("valuation of {} disagrees with its digits", x.value()));
    }
    if x.is_unit() != (vx.get() == Some(0)) {
        return Err(format!("unit test disagrees for {}", x.value()));
    }
    let vp = valuation(&(x * y));
    if vx.is_exact() && vy.is_exact() && vx.value + vy.value < n {
        if vp.get() != Some(vx.value + vy.value) {
            return Err(format!("v(xy) != v(x) + v(y) for {}, {}", x.value(), y.value()));
        }
    } else if vp.value < (vx.value + vy.value).min(n) {
        return Err(format!("v(xy) too small for {}, {}", x.value(), y.value()));
    }
    let vs = valuation(&(x + y));
    let low = vx.value.min(vy.value);
    if vs.value < low {
        return Err(format!("ultrametric inequality fails for {}, {}", x.value(), y.value()));
    }
    if vx.value != vy.value && vx.is_exact() && vy.is_exact() && vs.get() != Some(low) {
        return Err(format!("strict ultrametric equality fails for {}, {}", x.value(), y.value()));
    }
    if valuation(&-x) != vx {
        return Err(format!("v(-x) != v(x) for {}", x.value()));
    }
    Ok(())
}

/// Random residue pairs over `p in {2, 3, 5, 7}` with levels up to 30, biased towards
/// high valuations.
pub fn random_residue_pairs(seed: u64, count: usize) -> Vec<(Residue, Residue)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let prime = Prime::new(PRIMES[rng.gen_range(0..PRIMES.len())]).unwrap();
            let level = Level::new(rng.gen_range(1..=30)).unwrap();
            let pick = |rng: &mut ChaCha8Rng| {
                let shift = rng.gen_range(0..=level.get());
                let unit: u64 = rng.gen();
                let v = prime.pow(shift) * BigUint::from(unit);
                Residue::from_biguint(prime, level, v)
            };
            (pick(&mut rng), pick(&mut rng))
        })
        .collect()
}
