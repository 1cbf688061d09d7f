//! Fixed-precision arithmetic in `Z/p^k Z`.
//!
//! Residues carry their prime and level; arithmetic between two residues happens at the
//! smaller of the two levels. Valuations are reported together with an exactness flag
//! because a zero residue only tells us the true valuation is at least the level.

mod poly;
mod residue;
mod valuation;

pub use poly::{hensel_lift, IntPolynomial};
pub(crate) use poly::PolyMod;
pub use residue::{mod_pow, unit_inverse, valuation, Level, Prime, Residue};
pub use valuation::Valuation;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PadicError {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("level must be at least 1")]
    ZeroLevel,
    #[error("level {level} exceeds the working-precision cap {cap}")]
    LevelAboveCap { level: u32, cap: u32 },
    #[error("{value} is not a unit modulo powers of {prime}")]
    NonUnit { value: String, prime: u32 },
    #[error("starting value is not a root modulo p")]
    NotARoot,
    #[error("root is not simple: derivative vanishes modulo p")]
    NotSimpleRoot,
}
