use std::collections::BTreeMap;

use super::{classify_case, growing_cycle_count, TheoremError};
use crate::engine::{analyze, find_cycles, Behavior, DEFAULT_HEADROOM};
use crate::padic::Level;

/// Observed versus predicted growing 4-cycles of `x^m` on `Z/5^n Z` for `m = +-2 mod 5`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjectureReport {
    pub m: u64,
    pub t: u32,
    pub cycle_length: usize,
    pub expected: u64,
    /// Level -> number of `Grows` cycles of length `cycle_length`.
    pub observed: BTreeMap<u32, u64>,
}

impl ConjectureReport {
    pub fn matches(&self) -> bool {
        self.observed.values().all(|&c| c == self.expected)
    }
}

/// Counts growing 4-cycles at every level in `[t + 1, max_level]` with the dynamics engine.
pub fn conjecture_check(m: u64, max_level: u32) -> Result<ConjectureReport, TheoremError> {
    let case = classify_case(5, m)?;
    if !case.conjectural {
        return Err(TheoremError::NoCount);
    }
    let t = case.t.expect("conjectural cases carry t");
    let (cycle_length, expected) = growing_cycle_count(&case)?[0];
    let f = case.polynomial();
    let mut observed = BTreeMap::new();
    for n in (t + 1)..=max_level {
        let level = Level::new(n).expect("n >= 2");
        let mut count = 0;
        for c in find_cycles(&f, case.prime, level)? {
            if c.len() != cycle_length {
                continue;
            }
            if analyze(&f, &c, n + DEFAULT_HEADROOM)?.behavior == Behavior::Grows {
                count += 1;
            }
        }
        observed.insert(n, count);
    }
    Ok(ConjectureReport { m, t, cycle_length, expected, observed })
}
