pub mod ball;
pub mod cli;
pub mod decompose;
pub mod dot;
pub mod engine;
pub mod json;
pub mod oracle;
pub mod padic;
pub mod theorems;

pub use ball::Ball;
pub use decompose::{decompose, Decomposition};
pub use engine::{Behavior, Cycle};
pub use padic::{IntPolynomial, Level, PadicError, Prime, Residue, Valuation};
