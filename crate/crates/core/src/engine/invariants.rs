use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::{Cycle, EngineError};
use crate::padic::{valuation, IntPolynomial, Level, PolyMod, Residue, Valuation};

/// `a = prod f'(f^j(x0))` around the cycle, with `A = nu_p(a - 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multiplier {
    pub a: Residue,
    pub big_a: Valuation,
}

/// `b = (f^k(x0) - x0) / p^l`, known modulo `p^(working - l)`, with `B = nu_p(b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Displacement {
    pub b: Residue,
    pub big_b: Valuation,
}

pub fn multiplier(f: &IntPolynomial, sigma: &Cycle, working: Level) -> Result<Multiplier, EngineError> {
    if working < sigma.level() {
        return Err(EngineError::InsufficientPrecision);
    }
    let prime = sigma.prime();
    let pm = PolyMod::new(f, prime, working.get());
    let dpm = PolyMod::new(&f.derivative(), prime, working.get());
    let mut x = sigma.base_point().clone();
    let mut a = BigUint::one() % pm.modulus();
    for _ in 0..sigma.len() {
        a = (a * dpm.eval(&x)) % pm.modulus();
        x = pm.eval(&x);
    }
    let a = Residue::from_biguint(prime, working, a);
    let big_a = valuation(&(&a - &Residue::one(prime, working)));
    Ok(Multiplier { a, big_a })
}

pub fn displacement(
    f: &IntPolynomial,
    sigma: &Cycle,
    working: Level,
) -> Result<Displacement, EngineError> {
    let l = sigma.level().get();
    if working.get() <= l {
        return Err(EngineError::InsufficientPrecision);
    }
    let prime = sigma.prime();
    let pm = PolyMod::new(f, prime, working.get());
    let x0 = sigma.base_point().clone();
    let mut x = x0.clone();
    for _ in 0..sigma.len() {
        x = pm.eval(&x);
    }
    let modulus = pm.modulus();
    let diff = (x + modulus - &x0) % modulus;
    let step = prime.pow(l);
    if !(&diff % &step).is_zero() {
        return Err(EngineError::NotClosed);
    }
    let rest = Level::new(working.get() - l).expect("working > level");
    let b = Residue::from_biguint(prime, rest, diff / step);
    let big_b = valuation(&b);
    Ok(Displacement { b, big_b })
}

/// How a cycle's lifts behave one level up.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Behavior {
    StronglyGrows,
    StronglySplits,
    WeaklyGrows,
    WeaklySplits,
    Grows,
    Splits,
    PartiallySplits { order: u32 },
    GrowsTails,
}

impl Behavior {
    pub fn is_growing(self) -> bool {
        matches!(self, Behavior::Grows | Behavior::StronglyGrows)
    }

    pub fn is_splitting(self) -> bool {
        matches!(self, Behavior::Splits | Behavior::StronglySplits)
    }

    /// Whether the lift laws for this tag hold at `level`.
    ///
    /// For `p = 2` nothing is stable at level 1, and a growing cycle for `p >= 3`
    /// only determines its lift from level 2 on. Tails are stable everywhere.
    pub fn is_stable_at(self, level: Level) -> bool {
        match self {
            Behavior::GrowsTails | Behavior::Splits | Behavior::PartiallySplits { .. } => true,
            _ => level.get() >= 2,
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            Behavior::StronglyGrows => "StronglyGrows",
            Behavior::StronglySplits => "StronglySplits",
            Behavior::WeaklyGrows => "WeaklyGrows",
            Behavior::WeaklySplits => "WeaklySplits",
            Behavior::Grows => "Grows",
            Behavior::Splits => "Splits",
            Behavior::PartiallySplits { .. } => "PartiallySplits",
            Behavior::GrowsTails => "GrowsTails",
        }
    }
}

impl fmt::Display for Behavior {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Behavior::PartiallySplits { order } => write!(f, "PartiallySplits({order})"),
            other => f.write_str(other.tag()),
        }
    }
}

pub fn classify(sigma: &Cycle, mult: &Multiplier, disp: &Displacement) -> Result<Behavior, EngineError> {
    let p = sigma.prime().get() as u64;
    let low = |r: &Residue, digits: u32| -> Result<u64, EngineError> {
        if r.level().get() < digits {
            return Err(EngineError::InsufficientPrecision);
        }
        Ok((r.value() % p.pow(digits)).to_u64().expect("small"))
    };
    if p == 2 {
        let a_mod2 = low(&mult.a, 1)?;
        if a_mod2 == 0 {
            return Ok(Behavior::GrowsTails);
        }
        let a_mod4 = low(&mult.a, 2)?;
        let b_mod2 = low(&disp.b, 1)?;
        return Ok(match (a_mod4, b_mod2) {
            (1, 1) => Behavior::StronglyGrows,
            (1, _) => Behavior::StronglySplits,
            (_, 1) => Behavior::WeaklyGrows,
            _ => Behavior::WeaklySplits,
        });
    }
    let a = low(&mult.a, 1)?;
    match a {
        0 => Ok(Behavior::GrowsTails),
        1 => {
            let b = low(&disp.b, 1)?;
            Ok(if b == 0 { Behavior::Splits } else { Behavior::Grows })
        }
        _ => Ok(Behavior::PartiallySplits { order: multiplicative_order(a, p) }),
    }
}

fn multiplicative_order(a: u64, p: u64) -> u32 {
    let mut x = a % p;
    let mut d = 1;
    while x != 1 {
        x = x * a % p;
        d += 1;
    }
    d
}

/// Outcome of the splitting trichotomy for a splitting cycle at level `l`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Forecast {
    /// Every lift keeps splitting, then all lifts at this level grow forever.
    GrowsForeverAtLevel(u32),
    /// One lift behaves like the parent; the others grow forever from this level.
    SelfSimilarPlusGrowers(u32),
    Undecided,
}

/// The trichotomy on `(A, B, l)`, using only comparisons the finite precision decides.
pub fn forecast_from_valuations(a: Valuation, b: Valuation, l: Level) -> Result<Forecast, EngineError> {
    let l = l.get();
    if a.ge(1) != Some(true) || b.ge(1) != Some(true) {
        return Err(EngineError::NotSplitting);
    }
    let a_lt = a.lt(l);
    let b_lt = b.lt(l);
    if a_lt == Some(false) && b_lt == Some(false) {
        return Ok(Forecast::Undecided);
    }
    if a_lt == Some(true) || b_lt == Some(true) {
        return match a.compare(b) {
            Some(Ordering::Greater) => {
                let b = b.get().expect("smaller side is exact");
                if b < l {
                    Ok(Forecast::GrowsForeverAtLevel(b + l))
                } else {
                    Err(EngineError::InsufficientPrecision)
                }
            }
            Some(_) => {
                let a = a.get().expect("smaller side is exact");
                if a < l {
                    Ok(Forecast::SelfSimilarPlusGrowers(a + l))
                } else {
                    Err(EngineError::InsufficientPrecision)
                }
            }
            None => Err(EngineError::InsufficientPrecision),
        };
    }
    Err(EngineError::InsufficientPrecision)
}

pub fn splitting_forecast(mult: &Multiplier, disp: &Displacement, l: Level) -> Result<Forecast, EngineError> {
    forecast_from_valuations(mult.big_a, disp.big_b, l)
}

/// Extra digits beyond the cycle's level used by default.
pub const DEFAULT_HEADROOM: u32 = 8;
/// Working precision is never raised past this.
pub const MAX_WORKING: u32 = 1024;

/// Invariants, behavior and (for splitting cycles) forecast of one cycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleAnalysis {
    pub multiplier: Multiplier,
    pub displacement: Displacement,
    pub behavior: Behavior,
    pub forecast: Option<Forecast>,
    pub working: Level,
}

/// Analyzes `sigma` starting at `working`, doubling the headroom while the forecast is undecidable.
pub fn analyze(f: &IntPolynomial, sigma: &Cycle, working: u32) -> Result<CycleAnalysis, EngineError> {
    let l = sigma.level().get();
    let mut headroom = working.saturating_sub(l).max(1);
    loop {
        let w = Level::new(l + headroom)?;
        let multiplier = multiplier(f, sigma, w)?;
        let displacement = displacement(f, sigma, w)?;
        let behavior = classify(sigma, &multiplier, &displacement)?;
        let forecast = if behavior.is_splitting() {
            match splitting_forecast(&multiplier, &displacement, sigma.level()) {
                Ok(fc) => Some(fc),
                Err(EngineError::InsufficientPrecision) if l + 2 * headroom <= MAX_WORKING => {
                    headroom *= 2;
                    continue;
                }
                Err(EngineError::InsufficientPrecision) => None,
                Err(e) => return Err(e),
            }
        } else {
            None
        };
        return Ok(CycleAnalysis { multiplier, displacement, behavior, forecast, working: w });
    }
}
