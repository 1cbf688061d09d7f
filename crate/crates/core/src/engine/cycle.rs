use std::collections::HashMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use super::EngineError;
use crate::ball::Ball;
use crate::padic::{IntPolynomial, Level, PolyMod, Prime, Residue};

/// Largest residue ring the engine enumerates exhaustively.
pub const TABLE_CAP: u64 = 100_000_000;

/// A cycle of `f mod p^level`, rotated so that its smallest residue comes first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cycle {
    prime: Prime,
    level: Level,
    points: Vec<BigUint>,
}

impl Cycle {
    /// Validates closure under `f` and distinctness, then canonicalises the rotation.
    pub fn new(
        f: &IntPolynomial,
        prime: Prime,
        level: Level,
        points: Vec<BigUint>,
    ) -> Result<Cycle, EngineError> {
        let modulus = prime.pow(level.get());
        if points.is_empty() || points.iter().any(|x| *x >= modulus) {
            return Err(EngineError::NotACycle);
        }
        let mut seen = points.clone();
        seen.sort();
        seen.dedup();
        if seen.len() != points.len() {
            return Err(EngineError::NotACycle);
        }
        let pm = PolyMod::new(f, prime, level.get());
        for (i, x) in points.iter().enumerate() {
            if pm.eval(x) != points[(i + 1) % points.len()] {
                return Err(EngineError::NotACycle);
            }
        }
        Ok(Cycle::from_points_unchecked(prime, level, points))
    }

    /// Canonicalises without checking closure; callers must already know the points cycle.
    pub fn from_points_unchecked(prime: Prime, level: Level, mut points: Vec<BigUint>) -> Cycle {
        let start = points
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.cmp(b.1))
            .map(|(i, _)| i)
            .unwrap_or(0);
        points.rotate_left(start);
        Cycle { prime, level, points }
    }

    pub fn prime(&self) -> Prime {
        self.prime
    }

    pub fn level(&self) -> Level {
        self.level
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Points in visiting order, smallest first.
    pub fn points(&self) -> &[BigUint] {
        &self.points
    }

    pub fn base_point(&self) -> &BigUint {
        &self.points[0]
    }

    pub fn residues(&self) -> Vec<Residue> {
        self.points
            .iter()
            .map(|x| Residue::from_biguint(self.prime, self.level, x.clone()))
            .collect()
    }

    /// The balls `x_i + p^level Z_p`, in visiting order.
    pub fn balls(&self) -> Vec<Ball> {
        self.residues().into_iter().map(Ball::new).collect()
    }
}

impl fmt::Display for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, x) in self.points.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "}} mod {}^{}", self.prime, self.level)
    }
}

/// Cycles of a functional graph, plus the cycle each tail node drains into.
pub(crate) struct Scan {
    pub cycles: Vec<Vec<usize>>,
    /// For every node, the index of the cycle its orbit enters.
    pub drains_to: Vec<usize>,
    pub on_cycle: Vec<bool>,
}

/// Path-walking cycle detection with three-colour marking over `0..n`.
pub(crate) fn scan(n: usize, succ: impl Fn(usize) -> usize) -> Scan {
    const NEW: u8 = 0;
    const ACTIVE: u8 = 1;
    const DONE: u8 = 2;
    let mut state = vec![NEW; n];
    let mut drains_to = vec![usize::MAX; n];
    let mut on_cycle = vec![false; n];
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    let mut path = Vec::new();
    for start in 0..n {
        if state[start] != NEW {
            continue;
        }
        path.clear();
        let mut x = start;
        while state[x] == NEW {
            state[x] = ACTIVE;
            path.push(x);
            x = succ(x);
        }
        let target = if state[x] == ACTIVE {
            let pos = path.iter().position(|&y| y == x).expect("active node on path");
            let id = cycles.len();
            let cyc: Vec<usize> = path[pos..].to_vec();
            for &y in &cyc {
                on_cycle[y] = true;
            }
            cycles.push(cyc);
            id
        } else {
            drains_to[x]
        };
        for &y in &path {
            state[y] = DONE;
            drains_to[y] = target;
        }
    }
    Scan { cycles, drains_to, on_cycle }
}

/// Every cycle of `f mod p^level`, sorted by smallest point.
pub fn find_cycles(f: &IntPolynomial, prime: Prime, level: Level) -> Result<Vec<Cycle>, EngineError> {
    Ok(find_cycles_with_tails(f, prime, level)?.0)
}

/// Cycles plus, for each residue not on a cycle, the index of the cycle it drains into.
pub fn find_cycles_with_tails(
    f: &IntPolynomial,
    prime: Prime,
    level: Level,
) -> Result<(Vec<Cycle>, Vec<(u64, usize)>), EngineError> {
    let size = prime
        .pow_u64(level.get())
        .filter(|&n| n <= TABLE_CAP)
        .ok_or(EngineError::TableTooLarge { prime: prime.get(), level: level.get() })?;
    let pm = PolyMod::new(f, prime, level.get());
    let table: Vec<u64> = (0..size).map(|x| pm.eval_small(x)).collect();
    let s = scan(size as usize, |x| table[x] as usize);

    let mut cycles: Vec<(Cycle, usize)> = s
        .cycles
        .iter()
        .enumerate()
        .map(|(id, c)| {
            let pts = c.iter().map(|&x| BigUint::from(x)).collect();
            (Cycle::from_points_unchecked(prime, level, pts), id)
        })
        .collect();
    cycles.sort_by(|a, b| a.0.base_point().cmp(b.0.base_point()));
    let mut remap = vec![0; cycles.len()];
    for (new, (_, old)) in cycles.iter().enumerate() {
        remap[*old] = new;
    }
    let tails = (0..size as usize)
        .filter(|&x| !s.on_cycle[x])
        .map(|x| (x as u64, remap[s.drains_to[x]]))
        .collect();
    Ok((cycles.into_iter().map(|(c, _)| c).collect(), tails))
}

/// The cycles of `f mod p^(level+1)` inside the balls of `sigma`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftSet {
    pub parent: Cycle,
    pub children: Vec<Cycle>,
}

pub fn lift(f: &IntPolynomial, sigma: &Cycle) -> LiftSet {
    let prime = sigma.prime;
    let level = sigma.level.next();
    let pm = PolyMod::new(f, prime, level.get());
    let step = prime.pow(sigma.level.get());
    let p = prime.get();

    let mut nodes: Vec<BigUint> = Vec::with_capacity(sigma.len() * p as usize);
    for x in &sigma.points {
        for t in 0..p {
            nodes.push(x + &step * t);
        }
    }
    let children = match pm.small_modulus() {
        Some(_) => {
            let small: Vec<u64> = nodes.iter().map(|x| x.to_u64().unwrap()).collect();
            let index: HashMap<u64, usize> = small.iter().enumerate().map(|(i, &x)| (x, i)).collect();
            let succ: Vec<usize> = small.iter().map(|&x| index[&pm.eval_small(x)]).collect();
            collect_children(prime, level, &nodes, scan(nodes.len(), |i| succ[i]))
        }
        None => {
            let index: HashMap<&BigUint, usize> = nodes.iter().enumerate().map(|(i, x)| (x, i)).collect();
            let succ: Vec<usize> = nodes.iter().map(|x| index[&pm.eval(x)]).collect();
            collect_children(prime, level, &nodes, scan(nodes.len(), |i| succ[i]))
        }
    };
    LiftSet { parent: sigma.clone(), children }
}

fn collect_children(prime: Prime, level: Level, nodes: &[BigUint], s: Scan) -> Vec<Cycle> {
    let mut children: Vec<Cycle> = s
        .cycles
        .iter()
        .map(|c| {
            let pts = c.iter().map(|&i| nodes[i].clone()).collect();
            Cycle::from_points_unchecked(prime, level, pts)
        })
        .collect();
    children.sort_by(|a, b| a.base_point().cmp(b.base_point()));
    children
}

/// All descendants of `sigma` at `target` level (must be at least `sigma`'s level).
pub fn lift_to(f: &IntPolynomial, sigma: &Cycle, target: Level) -> Vec<Cycle> {
    let mut current = vec![sigma.clone()];
    while current[0].level < target {
        current = current.iter().flat_map(|c| lift(f, c).children).collect();
    }
    current.sort_by(|a, b| a.base_point().cmp(b.base_point()));
    current
}
