//! Brute-force ground truth on `Z/p^n Z`.
//!
//! The oracle builds the complete functional graph of `f mod p^n`. Successors are computed
//! term by term with square-and-multiply powers (no Horner, no engine code), and cyclic
//! nodes are found by in-degree peeling rather than path walking, so the two code paths
//! share nothing but the polynomial coefficients.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::decompose::{Attractor, Decomposition};
use crate::engine::{self, Behavior, Cycle};
use crate::padic::{IntPolynomial, Level, Prime};

/// Default bound on `p^n` for a single graph.
pub const DEFAULT_NODE_CAP: u64 = 100_000_000;

/// Environment variable overriding [`DEFAULT_NODE_CAP`].
pub const NODE_CAP_ENV: &str = "PADIC_NODE_CAP";

const NOT_CYCLIC: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("graph of size {prime}^{level} exceeds the node cap {cap}")]
    CapExceeded { prime: u32, level: u32, cap: u64 },
    #[error("the given orbit is not a cycle of the graph")]
    NotACycle,
}

/// Reads the node cap from `PADIC_NODE_CAP`, falling back to the default.
pub fn node_cap() -> u64 {
    std::env::var(NODE_CAP_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_NODE_CAP)
}

/// The functional graph of `f` on `Z/p^n Z`.
#[derive(Debug, Clone)]
pub struct FunctionalGraph {
    prime: Prime,
    level: u32,
    successor: Vec<u64>,
    cycle_label: Vec<u32>,
    attractor_label: Vec<u32>,
    tail_distance: Vec<u32>,
    cycles: Vec<Vec<u64>>,
}

impl FunctionalGraph {
    pub fn prime(&self) -> Prime {
        self.prime
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn node_count(&self) -> u64 {
        self.successor.len() as u64
    }

    pub fn successor(&self, x: u64) -> u64 {
        self.successor[x as usize]
    }

    /// Cycles with their smallest node first, ordered by that node.
    pub fn cycles(&self) -> &[Vec<u64>] {
        &self.cycles
    }

    /// Index into [`cycles`](Self::cycles) when `x` lies on a cycle.
    pub fn cycle_of(&self, x: u64) -> Option<usize> {
        let c = self.cycle_label[x as usize];
        (c != NOT_CYCLIC).then_some(c as usize)
    }

    /// Index of the cycle that the forward orbit of `x` enters.
    pub fn attractor_of(&self, x: u64) -> usize {
        self.attractor_label[x as usize] as usize
    }

    /// Steps before the orbit of `x` reaches a cycle.
    pub fn tail_distance(&self, x: u64) -> u32 {
        self.tail_distance[x as usize]
    }
}

/// Evaluates `f(x) mod modulus` as a sum of independently computed powers.
fn eval_terms(coeffs: &[BigUint], x: u64, modulus: u64) -> u64 {
    let m = modulus as u128;
    let mut acc: u128 = 0;
    for (i, c) in coeffs.iter().enumerate() {
        let c = c.to_u64().expect("reduced coefficient") as u128;
        if c == 0 {
            continue;
        }
        acc = (acc + c * pow_mod(x as u128, i as u64, m)) % m;
    }
    acc as u64
}

fn pow_mod(mut base: u128, mut exp: u64, m: u128) -> u128 {
    let mut out = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            out = out * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    out
}

/// Builds the graph using the cap from the environment.
pub fn build_graph(f: &IntPolynomial, prime: Prime, level: u32) -> Result<FunctionalGraph, OracleError> {
    build_graph_with_cap(f, prime, level, node_cap())
}

pub fn build_graph_with_cap(
    f: &IntPolynomial,
    prime: Prime,
    level: u32,
    cap: u64,
) -> Result<FunctionalGraph, OracleError> {
    let size = prime
        .pow_u64(level)
        .filter(|&n| n <= cap && n < (1 << 62))
        .ok_or(OracleError::CapExceeded { prime: prime.get(), level, cap })?;
    let modulus = BigInt::from(size);
    let coeffs: Vec<BigUint> = f
        .coefficients()
        .iter()
        .map(|c| c.mod_floor(&modulus).to_biguint().unwrap())
        .collect();

    let n = size as usize;
    let successor: Vec<u64> = (0..size).map(|x| eval_terms(&coeffs, x, size)).collect();

    // Peel nodes of in-degree zero; what survives is exactly the union of the cycles.
    let mut indegree = vec![0u32; n];
    for &s in &successor {
        indegree[s as usize] += 1;
    }
    let mut on_cycle = vec![true; n];
    let mut queue: VecDeque<usize> = (0..n).filter(|&x| indegree[x] == 0).collect();
    while let Some(x) = queue.pop_front() {
        on_cycle[x] = false;
        let s = successor[x] as usize;
        indegree[s] -= 1;
        if indegree[s] == 0 {
            queue.push_back(s);
        }
    }

    let mut cycle_label = vec![NOT_CYCLIC; n];
    let mut cycles = Vec::new();
    for start in 0..n {
        if !on_cycle[start] || cycle_label[start] != NOT_CYCLIC {
            continue;
        }
        let id = cycles.len() as u32;
        let mut cycle = vec![start as u64];
        cycle_label[start] = id;
        let mut x = successor[start] as usize;
        while x != start {
            cycle_label[x] = id;
            cycle.push(x as u64);
            x = successor[x] as usize;
        }
        cycles.push(cycle);
    }

    // Breadth-first search backwards from the cycles labels every tail node.
    let mut preimages: Vec<Vec<u32>> = vec![Vec::new(); n];
    for (x, &s) in successor.iter().enumerate() {
        if !on_cycle[x] {
            preimages[s as usize].push(x as u32);
        }
    }
    let mut attractor_label = cycle_label.clone();
    let mut tail_distance = vec![0u32; n];
    let mut frontier: VecDeque<usize> = (0..n).filter(|&x| on_cycle[x]).collect();
    while let Some(x) = frontier.pop_front() {
        for &y in &preimages[x] {
            let y = y as usize;
            attractor_label[y] = attractor_label[x];
            tail_distance[y] = tail_distance[x] + 1;
            frontier.push_back(y);
        }
    }

    Ok(FunctionalGraph {
        prime,
        level,
        successor,
        cycle_label,
        attractor_label,
        tail_distance,
        cycles,
    })
}

/// Number of cycles of each length at one level.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CycleCensus {
    pub level: u32,
    pub counts: BTreeMap<usize, usize>,
    pub tail_nodes: u64,
}

impl CycleCensus {
    pub fn count(&self, length: usize) -> usize {
        self.counts.get(&length).copied().unwrap_or(0)
    }

    pub fn cyclic_nodes(&self) -> u64 {
        self.counts.iter().map(|(k, c)| (k * c) as u64).sum()
    }
}

/// Cycle census, optionally restricted to cycles the engine classifies as `filter`.
///
/// Classification uses the dynamics engine on each oracle cycle; the cycle set itself
/// always comes from the graph.
pub fn census(g: &FunctionalGraph, f: &IntPolynomial, filter: Option<Behavior>) -> CycleCensus {
    let mut counts = BTreeMap::new();
    for cycle in &g.cycles {
        if let Some(wanted) = filter {
            let level = Level::new(g.level).expect("graph level >= 1");
            let c = Cycle::from_points_unchecked(
                g.prime,
                level,
                cycle.iter().map(|&x| BigUint::from(x)).collect(),
            );
            let working = g.level + engine::DEFAULT_HEADROOM;
            match engine::analyze(f, &c, working) {
                Ok(a) if a.behavior == wanted => {}
                _ => continue,
            }
        }
        *counts.entry(cycle.len()).or_insert(0) += 1;
    }
    let tail_nodes = (0..g.node_count()).filter(|&x| g.cycle_of(x).is_none()).count() as u64;
    CycleCensus { level: g.level, counts, tail_nodes }
}

/// All nodes whose forward orbit enters `orbit`.
pub fn basin_of(g: &FunctionalGraph, orbit: &[u64]) -> Result<BTreeSet<u64>, OracleError> {
    let first = *orbit.first().ok_or(OracleError::NotACycle)?;
    if first >= g.node_count() {
        return Err(OracleError::NotACycle);
    }
    let id = g.cycle_of(first).ok_or(OracleError::NotACycle)?;
    let members: BTreeSet<u64> = g.cycles[id].iter().copied().collect();
    let given: BTreeSet<u64> = orbit.iter().copied().collect();
    if members != given || given.len() != orbit.len() {
        return Err(OracleError::NotACycle);
    }
    Ok((0..g.node_count())
        .filter(|&x| g.attractor_of(x) == id)
        .collect())
}

/// One disagreement between a decomposition and the oracle graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub kind: &'static str,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CrosscheckReport {
    pub level: u32,
    pub violations: Vec<Violation>,
}

impl CrosscheckReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    fn push(&mut self, kind: &'static str, detail: String) {
        self.violations.push(Violation { kind, detail });
    }
}

/// Checks a decomposition against the graph at the graph's level.
///
/// Balls finer than the graph level cannot be observed there and are only used for the
/// coverage check.
pub fn crosscheck(dec: &Decomposition, g: &FunctionalGraph) -> CrosscheckReport {
    let n = g.level;
    let mut report = CrosscheckReport { level: n, violations: Vec::new() };
    if dec.prime != g.prime || n > dec.max_level {
        report.push(
            "setup",
            format!(
                "graph {}^{} does not match decomposition over p={} to level {}",
                g.prime, n, dec.prime, dec.max_level
            ),
        );
        return report;
    }
    let size = g.node_count();
    let p = g.prime.get() as u64;
    let reduce = |x: &BigUint| (x % size).to_u64().unwrap();

    // Every residue must be claimed by exactly one ball of level <= n, or else sit
    // above some finer ball.
    let mut owner = vec![0u8; size as usize];
    let mut finer = vec![false; size as usize];
    let mut claim = |level: u32, center: &BigUint, owner: &mut Vec<u8>| {
        if level <= n {
            let step = p.pow(level);
            let base = (center % step).to_u64().unwrap();
            let mut x = base;
            while x < size {
                owner[x as usize] = owner[x as usize].saturating_add(1);
                x += step;
            }
        } else {
            finer[reduce(center) as usize] = true;
        }
    };
    for orbit in &dec.periodic_orbits {
        for pt in orbit.points() {
            claim(pt.level().get(), pt.value(), &mut owner);
        }
    }
    for comp in &dec.components {
        for b in comp.balls() {
            claim(b.level(), b.center().value(), &mut owner);
        }
    }
    for basin in &dec.basins {
        for b in &basin.region {
            claim(b.level(), b.center().value(), &mut owner);
        }
    }
    for b in &dec.unresolved {
        claim(b.level(), b.center().value(), &mut owner);
    }
    let overlaps = owner.iter().filter(|&&c| c > 1).count();
    let uncovered = (0..size as usize)
        .filter(|&x| owner[x] == 0 && !finer[x])
        .count();
    if overlaps > 0 {
        report.push("partition", format!("{overlaps} residues claimed more than once"));
    }
    if uncovered > 0 {
        report.push("partition", format!("{uncovered} residues not covered"));
    }

    for orbit in &dec.periodic_orbits {
        let pts: Vec<u64> = orbit.points().iter().map(|r| reduce(r.value())).collect();
        match g.cycle_of(pts[0]) {
            None => report.push(
                "periodic",
                format!("orbit through {} is not cyclic mod {}^{}", pts[0], p, n),
            ),
            Some(_) => {
                for w in 0..pts.len() {
                    let next = pts[(w + 1) % pts.len()];
                    if g.successor(pts[w]) != next {
                        report.push(
                            "periodic",
                            format!("f({}) != {} mod {}^{}", pts[w], next, p, n),
                        );
                    }
                }
            }
        }
    }

    for comp in &dec.components {
        let level = comp.level();
        if level > n {
            continue;
        }
        let step = p.pow(level);
        let mut residues = BTreeSet::new();
        for b in comp.balls() {
            let base = (b.center().value() % step).to_u64().unwrap();
            let mut x = base;
            while x < size {
                residues.insert(x);
                x += step;
            }
        }
        let start = *residues.iter().next().unwrap();
        let ok = match g.cycle_of(start) {
            Some(id) => {
                let cyc = &g.cycles[id];
                cyc.len() == residues.len() && cyc.iter().all(|x| residues.contains(x))
            }
            None => false,
        };
        if !ok {
            report.push(
                "component",
                format!(
                    "component at {} (level {}) is not a single cycle of {} residues mod {}^{}",
                    comp.balls()[0].center().value(),
                    level,
                    residues.len(),
                    p,
                    n
                ),
            );
        }
    }

    for basin in &dec.basins {
        let target: Box<dyn Fn(u64) -> bool> = match &basin.attractor {
            Attractor::Orbit(idx) => {
                let Some(orbit) = dec.periodic_orbits.get(*idx) else {
                    report.push("basin", format!("attractor index {idx} out of range"));
                    continue;
                };
                let point = reduce(orbit.points()[0].value());
                match g.cycle_of(point) {
                    Some(id) => Box::new(move |x| g.attractor_of(x) == id),
                    None => {
                        report.push("basin", format!("attractor {point} is not cyclic"));
                        continue;
                    }
                }
            }
            Attractor::InvariantSet(balls) => {
                let balls = balls.clone();
                let targets: BTreeSet<usize> = (0..size)
                    .filter(|&x| {
                        balls.iter().any(|b| {
                            let step = p.pow(b.level().min(n));
                            x % step == (b.center().value() % step).to_u64().unwrap()
                        })
                    })
                    .map(|x| g.attractor_of(x))
                    .collect();
                Box::new(move |x| targets.contains(&g.attractor_of(x)))
            }
        };
        for b in &basin.region {
            if b.level() > n {
                continue;
            }
            let step = p.pow(b.level());
            let mut x = (b.center().value() % step).to_u64().unwrap();
            while x < size {
                if !target(x) {
                    report.push(
                        "basin",
                        format!("{x} mod {p}^{n} does not reach its predicted attractor"),
                    );
                    break;
                }
                x += step;
            }
        }
    }
    report
}
