//! Balls `c + p^n Z_p`, the clopen building blocks of every decomposition.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::padic::{Level, Prime, Residue};

/// The ball `center + p^level Z_p`; the center is a residue at that level.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ball {
    center: Residue,
}

impl Ball {
    pub fn new(center: Residue) -> Ball {
        Ball { center }
    }

    pub fn from_u64(prime: Prime, level: u32, center: u64) -> Ball {
        Ball::new(Residue::from_u64(prime, Level::new(level).expect("level >= 1"), center))
    }

    pub fn center(&self) -> &Residue {
        &self.center
    }

    pub fn level(&self) -> u32 {
        self.center.level().get()
    }

    pub fn prime(&self) -> Prime {
        self.center.prime()
    }

    /// Whether `other` lies inside `self`.
    pub fn contains(&self, other: &Ball) -> bool {
        other.level() >= self.level() && other.center.project(self.center.level()) == self.center
    }

    pub fn contains_value(&self, x: &BigUint) -> bool {
        x % self.center.modulus() == *self.center.value()
    }

    pub fn disjoint(&self, other: &Ball) -> bool {
        !self.contains(other) && !other.contains(self)
    }

    /// The `p` balls one level down.
    pub fn children(&self) -> Vec<Ball> {
        let prime = self.prime();
        let level = self.center.level().next();
        let step = self.center.modulus();
        (0..prime.get())
            .map(|t| Ball::new(Residue::from_biguint(prime, level, self.center.value() + &step * t)))
            .collect()
    }

    /// Number of residues mod `p^n` inside the ball, `None` when the ball is finer than `n`.
    pub fn residue_count(&self, n: u32) -> Option<u64> {
        if n < self.level() {
            return None;
        }
        self.prime().pow_u64(n - self.level())
    }

    /// The residues mod `p^n` inside the ball (requires `n >= level`).
    pub fn residues_at(&self, n: u32) -> impl Iterator<Item = u64> {
        assert!(n >= self.level(), "ball is finer than the requested level");
        let base = self.center.to_u64().expect("center fits in u64");
        let step = self.center.modulus().to_u64().expect("modulus fits in u64");
        let count = self.residue_count(n).expect("count fits in u64");
        (0..count).map(move |t| base + step * t)
    }

    fn key(&self) -> (u32, BigUint) {
        (self.level(), self.center.value().clone())
    }
}

impl Ord for Ball {
    fn cmp(&self, other: &Self) -> Ordering {
        self.center
            .value()
            .cmp(other.center.value())
            .then(self.level().cmp(&other.level()))
    }
}

impl PartialOrd for Ball {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Ball {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.prime();
        write!(f, "{} + {}^{} Z_{}", self.center.value(), p, self.level(), p)
    }
}

/// The balls of level 1 covering `Z_p`.
pub fn whole_space(prime: Prime) -> Vec<Ball> {
    (0..prime.get() as u64).map(|c| Ball::from_u64(prime, 1, c)).collect()
}

/// Maximal balls covering `universe` minus the union of `holes`, sorted.
///
/// `universe = None` stands for all of `Z_p`.
pub fn complement_within(prime: Prime, universe: Option<&[Ball]>, holes: &[Ball]) -> Vec<Ball> {
    let mut inside: HashSet<(u32, BigUint)> = HashSet::new();
    let mut prefixes: HashSet<(u32, BigUint)> = HashSet::new();
    for h in holes {
        inside.insert(h.key());
        for j in 1..=h.level() {
            let lj = Level::new(j).expect("j >= 1");
            prefixes.insert((j, h.center.project(lj).into_value()));
        }
    }
    let covered = |b: &Ball| -> bool {
        (1..=b.level()).any(|j| {
            let lj = Level::new(j).expect("j >= 1");
            inside.contains(&(j, b.center.project(lj).into_value()))
        })
    };
    let mut out = Vec::new();
    let mut stack: Vec<Ball> = match universe {
        Some(u) => u.to_vec(),
        None => whole_space(prime),
    };
    while let Some(b) = stack.pop() {
        if covered(&b) {
            continue;
        }
        if !prefixes.contains(&b.key()) {
            out.push(b);
            continue;
        }
        stack.extend(b.children());
    }
    // Universe balls may themselves overlap or be mergeable.
    if universe.is_some() {
        out = maximal(prime, out);
    }
    out.sort();
    out.dedup();
    out
}

fn maximal(prime: Prime, balls: Vec<Ball>) -> Vec<Ball> {
    let comp = complement_within(prime, None, &balls);
    complement_within(prime, None, &comp)
}

/// The canonical description of a union of balls: its maximal sub-balls, sorted.
pub fn canonical_cover(balls: &[Ball]) -> Vec<Ball> {
    match balls.first() {
        None => Vec::new(),
        Some(b) => maximal(b.prime(), balls.to_vec()),
    }
}

/// Whether the balls are pairwise disjoint.
pub fn pairwise_disjoint(balls: &[Ball]) -> bool {
    let mut digits: Vec<Vec<u32>> = balls.iter().map(|b| b.center.digits()).collect();
    digits.sort();
    // a prefix relation, if any, shows up between sorted neighbours
    digits.windows(2).all(|w| !w[1].starts_with(&w[0]))
}
