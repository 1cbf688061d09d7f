use std::cmp::Ordering;
use std::fmt;

/// A `p`-adic valuation observed at finite precision.
///
/// When `exact` is false the true valuation is only known to be `>= value`
/// (the measured residue was zero at its level).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Valuation {
    pub exact: bool,
    pub value: u32,
}

impl Valuation {
    pub fn exact(value: u32) -> Self {
        Valuation { exact: true, value }
    }

    pub fn at_least(value: u32) -> Self {
        Valuation { exact: false, value }
    }

    pub fn is_exact(self) -> bool {
        self.exact
    }

    /// The exact value, if known.
    pub fn get(self) -> Option<u32> {
        self.exact.then_some(self.value)
    }

    /// `Some(true)` / `Some(false)` when `self >= k` is decided, `None` otherwise.
    pub fn ge(self, k: u32) -> Option<bool> {
        if self.value >= k {
            Some(true)
        } else if self.exact {
            Some(false)
        } else {
            None
        }
    }

    /// Decided comparison `self < k`.
    pub fn lt(self, k: u32) -> Option<bool> {
        self.ge(k).map(|b| !b)
    }

    /// Decided comparison between two valuations, `None` when the bounds overlap.
    pub fn compare(self, other: Valuation) -> Option<Ordering> {
        match (self.exact, other.exact) {
            (true, true) => Some(self.value.cmp(&other.value)),
            (true, false) => (self.value < other.value).then_some(Ordering::Less),
            (false, true) => (self.value > other.value).then_some(Ordering::Greater),
            (false, false) => None,
        }
    }

    /// Valuation of a product: additive, exact only when both factors are.
    pub fn product(self, other: Valuation) -> Valuation {
        Valuation {
            exact: self.exact && other.exact,
            value: self.value + other.value,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exact {
            write!(f, "{}", self.value)
        } else {
            write!(f, ">= {}", self.value)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decided_comparisons() {
        assert_eq!(Valuation::exact(2).ge(2), Some(true));
        assert_eq!(Valuation::exact(1).ge(2), Some(false));
        assert_eq!(Valuation::at_least(3).ge(2), Some(true));
        assert_eq!(Valuation::at_least(1).ge(2), None);
        assert_eq!(Valuation::at_least(1).lt(2), None);
    }

    #[test]
    fn compare_bounds() {
        use Ordering::*;
        assert_eq!(Valuation::exact(1).compare(Valuation::exact(3)), Some(Less));
        assert_eq!(Valuation::exact(1).compare(Valuation::at_least(3)), Some(Less));
        assert_eq!(Valuation::exact(4).compare(Valuation::at_least(3)), None);
        assert_eq!(Valuation::at_least(4).compare(Valuation::exact(3)), Some(Greater));
        assert_eq!(Valuation::at_least(4).compare(Valuation::at_least(3)), None);
    }
}
