//! Cycles of `f mod p^l`, their invariants `a_l, b_l, A_l, B_l`, behavior tags and lifts.

mod cycle;
mod invariants;

pub use cycle::{find_cycles, find_cycles_with_tails, lift, lift_to, Cycle, LiftSet, TABLE_CAP};
pub use invariants::{
    analyze, classify, displacement, forecast_from_valuations, multiplier, splitting_forecast,
    Behavior, CycleAnalysis, Displacement, Forecast, Multiplier, DEFAULT_HEADROOM, MAX_WORKING,
};

use crate::padic::PadicError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EngineError {
    #[error("points do not form a cycle of f")]
    NotACycle,
    #[error("f^k(x) - x is not divisible by p^level")]
    NotClosed,
    #[error("working precision cannot decide the required congruences")]
    InsufficientPrecision,
    #[error("cycle does not split (needs A >= 1 and B >= 1)")]
    NotSplitting,
    #[error("{prime}^{level} residues exceed the enumeration cap")]
    TableTooLarge { prime: u32, level: u32 },
    #[error(transparent)]
    Padic(#[from] PadicError),
}
