//! Level-by-level lifting from level 1 into periodic orbits, minimal components and basins.

mod types;

pub use types::{Attractor, BasinRecord, Certificate, Decomposition, MinimalComponent, PeriodicOrbit};

use std::collections::HashSet;


use crate::ball::{complement_within, Ball};
use crate::engine::{
    analyze, find_cycles_with_tails, lift, lift_to, Behavior, Cycle, CycleAnalysis, EngineError,
    Forecast, DEFAULT_HEADROOM,
};
use crate::padic::{IntPolynomial, Level, PolyMod, Prime};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DecomposeError {
    #[error("max level must be at least 2, got {0}")]
    LevelTooSmall(u32),
    #[error("cycle budget exhausted; {} unresolved balls remain", .0.unresolved.len())]
    BudgetExhausted(Box<Decomposition>),
    #[error("component is not minimal at level {0}")]
    NotMinimal(u32),
    #[error("minimality check to level {0} exceeds 64-bit residues")]
    CheckTooLarge(u32),
    #[error(transparent)]
    Engine(#[from] EngineError),
}

/// Knobs for [`decompose_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DecomposeOptions {
    /// Maximum number of cycles analyzed before giving up.
    pub max_cycles: usize,
    /// Extra digits of working precision beyond `max_level`.
    pub headroom: u32,
}

impl Default for DecomposeOptions {
    fn default() -> Self {
        DecomposeOptions { max_cycles: 2_000_000, headroom: DEFAULT_HEADROOM }
    }
}

pub fn decompose(f: &IntPolynomial, prime: Prime, max_level: u32) -> Result<Decomposition, DecomposeError> {
    decompose_with(f, prime, max_level, DecomposeOptions::default())
}

pub fn decompose_with(
    f: &IntPolynomial,
    prime: Prime,
    max_level: u32,
    opts: DecomposeOptions,
) -> Result<Decomposition, DecomposeError> {
    if max_level < 2 {
        return Err(DecomposeError::LevelTooSmall(max_level));
    }
    let first = Level::new(1).expect("1 is a level");
    let (cycles, tails) = find_cycles_with_tails(f, prime, first)?;
    let mut b = Builder {
        f,
        prime,
        max_level,
        working: max_level + opts.headroom,
        budget: opts.max_cycles,
        exhausted: false,
        orbits: Vec::new(),
        components: Vec::new(),
        basins: Vec::new(),
    };
    for (id, sigma) in cycles.iter().enumerate() {
        let tail_balls: Vec<Ball> = tails
            .iter()
            .filter(|&&(_, c)| c == id)
            .map(|&(x, _)| Ball::from_u64(prime, 1, x))
            .collect();
        let orbit = b.process(sigma, None)?;
        if tail_balls.is_empty() {
            continue;
        }
        let attractor = match orbit {
            Some(idx) => Attractor::Orbit(idx),
            None => Attractor::InvariantSet(sigma.balls()),
        };
        b.basins.push(BasinRecord { attractor, region: tail_balls });
    }
    let dec = Decomposition::from_parts(
        prime,
        f.clone(),
        max_level,
        b.orbits,
        b.components,
        b.basins,
    );
    if b.exhausted {
        return Err(DecomposeError::BudgetExhausted(Box::new(dec)));
    }
    Ok(dec)
}

struct Builder<'a> {
    f: &'a IntPolynomial,
    prime: Prime,
    max_level: u32,
    working: u32,
    budget: usize,
    exhausted: bool,
    orbits: Vec<PeriodicOrbit>,
    components: Vec<MinimalComponent>,
    basins: Vec<BasinRecord>,
}

impl Builder<'_> {
    /// Handles one cycle; returns the orbit index when `sigma` grows tails.
    fn process(&mut self, sigma: &Cycle, hint: Option<u32>) -> Result<Option<usize>, DecomposeError> {
        if self.budget == 0 {
            self.exhausted = true;
            return Ok(None);
        }
        self.budget -= 1;
        let level = sigma.level();
        let l = level.get();
        let an = analyze(self.f, sigma, self.working.max(l + 1))?;

        if an.behavior == Behavior::GrowsTails {
            let target = Level::new(self.max_level).expect("max_level >= 2");
            let orbit = attractor_refine(self.f, sigma, target);
            let region = complement_within(self.prime, Some(&sigma.balls()), &orbit.balls());
            let idx = self.orbits.len();
            self.orbits.push(orbit);
            if !region.is_empty() {
                self.basins.push(BasinRecord { attractor: Attractor::Orbit(idx), region });
            }
            return Ok(Some(idx));
        }

        if an.behavior.is_growing() && an.behavior.is_stable_at(level) {
            let certificate = if hint == Some(l) {
                Certificate::SplitForecast(l)
            } else if self.prime.get() == 2 {
                Certificate::TheoremBacked("strong-growth".into())
            } else {
                Certificate::Empirical(l)
            };
            let mut comp = MinimalComponent::new(sigma.balls(), certificate);
            if let Certificate::Empirical(_) = comp.certificate {
                let verified = minimality_check(self.f, &comp, self.max_level)?;
                comp = MinimalComponent::new(sigma.balls(), Certificate::Empirical(verified));
            }
            self.components.push(comp);
            return Ok(None);
        }

        if l >= self.max_level {
            if periodic_certifiable(&an, l) {
                self.orbits.push(PeriodicOrbit::new(sigma.residues()));
            }
            return Ok(None);
        }

        let mut hint = hint;
        if an.behavior.is_splitting() && self.prime.get() != 2 {
            match an.forecast {
                Some(Forecast::GrowsForeverAtLevel(n)) => {
                    if n > self.max_level {
                        return Ok(None);
                    }
                    let target = Level::new(n).expect("n >= 1");
                    for child in lift_to(self.f, sigma, target) {
                        self.process(&child, Some(n))?;
                    }
                    return Ok(None);
                }
                Some(Forecast::SelfSimilarPlusGrowers(n)) => hint = Some(n),
                _ => {}
            }
        }
        for child in lift(self.f, sigma).children {
            self.process(&child, hint)?;
        }
        Ok(None)
    }
}

/// Hensel's criterion for `f^k(x) - x`: a genuine `k`-periodic point lies in the cycle's balls
/// when `A` is exact, `A <= B` and `A < l`.
fn periodic_certifiable(an: &CycleAnalysis, l: u32) -> bool {
    let a = an.multiplier.big_a;
    let b = an.displacement.big_b;
    a.lt(l) == Some(true)
        && matches!(a.compare(b), Some(std::cmp::Ordering::Less | std::cmp::Ordering::Equal))
}

/// The attracting `k`-periodic orbit inside the balls of a tails-growing cycle, to `target` digits.
pub fn attractor_refine(f: &IntPolynomial, sigma: &Cycle, target: Level) -> PeriodicOrbit {
    let k = sigma.len();
    let mut current = sigma.clone();
    while current.level() < target {
        current = lift(f, &current)
            .children
            .into_iter()
            .find(|c| c.len() == k)
            .expect("a tails-growing cycle has exactly one child of its own length");
    }
    PeriodicOrbit::new(current.residues())
}

/// Largest `n <= up_to` such that `f` cycles transitively through the component mod `p^j`
/// for every `j` from the component's level to `n`.
pub fn minimality_check(f: &IntPolynomial, comp: &MinimalComponent, up_to: u32) -> Result<u32, DecomposeError> {
    let n0 = comp.level();
    if up_to < n0 {
        return Err(DecomposeError::LevelTooSmall(up_to));
    }
    let prime = comp.balls()[0].prime();
    let p = prime.get() as u64;
    let base_mod = prime.pow_u64(n0).ok_or(DecomposeError::CheckTooLarge(n0))?;
    let centers: HashSet<u64> = comp
        .balls()
        .iter()
        .map(|b| b.center().to_u64().expect("center below modulus"))
        .collect();
    let x0 = comp.balls()[0].center().to_u64().expect("center below modulus");
    for j in n0..=up_to {
        let modulus = prime
            .pow_u64(j)
            .filter(|&m| m < (1 << 63))
            .ok_or(DecomposeError::CheckTooLarge(j))?;
        let pm = PolyMod::new(f, prime, j);
        let expected = comp.len() as u64 * p.pow(j - n0);
        let mut x = x0 % modulus;
        for step in 1..=expected {
            x = pm.eval_small(x);
            if !centers.contains(&(x % base_mod)) {
                return Err(DecomposeError::NotMinimal(j));
            }
            if x == x0 && step < expected {
                return Err(DecomposeError::NotMinimal(j));
            }
        }
        if x != x0 {
            return Err(DecomposeError::NotMinimal(j));
        }
    }
    Ok(up_to)
}
