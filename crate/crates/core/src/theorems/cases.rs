use std::fmt;

use super::TheoremError;
use crate::padic::{hensel_lift, valuation, IntPolynomial, Level, Prime, Residue};

/// Congruence class of the exponent `m` that selects a closed-form decomposition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CaseClass {
    /// `p = 2`, `m` even.
    Even,
    /// `p = 2`, `m = 1 mod 4`.
    OneMod4,
    /// `p = 2`, `m = 3 mod 4`.
    ThreeMod4,
    /// `p = 3` or `p = 5`: `m = r mod q`.
    Mod { r: u32, q: u32 },
    /// `p = 5`, `m = 2, 8 mod 10` (conjectural).
    PlusMinusTwoMod10,
    /// `p = 5`, `m = 3, 7 mod 10` (conjectural).
    PlusMinusSevenMod10,
}

impl fmt::Display for CaseClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CaseClass::Even => write!(f, "m = 0 mod 2"),
            CaseClass::OneMod4 => write!(f, "m = 1 mod 4"),
            CaseClass::ThreeMod4 => write!(f, "m = 3 mod 4"),
            CaseClass::Mod { r, q } => write!(f, "m = {r} mod {q}"),
            CaseClass::PlusMinusTwoMod10 => write!(f, "m = +-2 mod 10"),
            CaseClass::PlusMinusSevenMod10 => write!(f, "m = +-7 mod 10"),
        }
    }
}

/// The theorem case of `x^m` over `Z_p`, with its valuation parameter `t`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CaseId {
    pub prime: Prime,
    pub m: u64,
    pub class: CaseClass,
    pub t: Option<u32>,
    pub conjectural: bool,
}

impl CaseId {
    pub fn label(&self) -> String {
        match self.t {
            Some(t) => format!("p={} {} t={}", self.prime, self.class, t),
            None => format!("p={} {}", self.prime, self.class),
        }
    }

    pub fn polynomial(&self) -> IntPolynomial {
        IntPolynomial::monomial(self.m as u32)
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())?;
        if self.conjectural {
            write!(f, " (conjectural)")?;
        }
        Ok(())
    }
}

fn nu(p: u64, mut n: u64) -> u32 {
    let mut v = 0;
    while n.is_multiple_of(p) {
        n /= p;
        v += 1;
    }
    v
}

/// The 5-adic square root of `-1` congruent to 2 mod 5, to `digits` digits.
pub fn five_adic_i(digits: u32) -> Residue {
    let p = Prime::new(5).expect("5 is prime");
    let one = Level::new(1).expect("level 1");
    let f = IntPolynomial::from_i64(&[1, 0, 1]);
    hensel_lift(&f, &Residue::from_u64(p, one, 2), Level::new(digits).expect("digits >= 1"))
        .expect("2 is a simple root of x^2 + 1 mod 5")
}

/// `nu_5(m - s*i)`, growing the precision of `i` until the valuation is exact.
fn nu5_minus_i(m: u64, sign: i64) -> u32 {
    let mut digits = 64;
    loop {
        let i = five_adic_i(digits);
        let level = i.level();
        let mi = if sign > 0 { i } else { -&i };
        let diff = &Residue::from_u64(mi.prime(), level, m) - &mi;
        let v = valuation(&diff);
        if v.is_exact() {
            return v.value;
        }
        digits *= 2;
    }
}

pub fn classify_case(p: u32, m: u64) -> Result<CaseId, TheoremError> {
    if m < 2 {
        return Err(TheoremError::ExponentTooSmall(m));
    }
    let prime = Prime::new(p).map_err(|_| TheoremError::UnsupportedPrime(p))?;
    let (class, t, conjectural) = match p {
        2 => match m % 4 {
            0 | 2 => (CaseClass::Even, None, false),
            1 => (CaseClass::OneMod4, Some(nu(2, m - 1)), false),
            _ => (CaseClass::ThreeMod4, Some(nu(2, m + 1)), false),
        },
        3 => {
            let r = (m % 6) as u32;
            let t = match r % 3 {
                0 => None,
                1 => Some(nu(3, m - 1)),
                _ => Some(nu(3, m + 1)),
            };
            (CaseClass::Mod { r, q: 6 }, t, false)
        }
        5 => match m % 5 {
            0 => {
                let class = if m.is_multiple_of(10) {
                    CaseClass::Mod { r: 0, q: 10 }
                } else {
                    CaseClass::Mod { r: (m % 20) as u32, q: 20 }
                };
                (class, None, false)
            }
            1 => {
                let class = match m % 20 {
                    1 => CaseClass::Mod { r: 1, q: 20 },
                    11 => CaseClass::Mod { r: 11, q: 20 },
                    _ => CaseClass::Mod { r: 6, q: 10 },
                };
                (class, Some(nu(5, m - 1)), false)
            }
            4 => {
                let class = match m % 20 {
                    9 => CaseClass::Mod { r: 9, q: 20 },
                    19 => CaseClass::Mod { r: 19, q: 20 },
                    _ => CaseClass::Mod { r: 4, q: 10 },
                };
                (class, Some(nu(5, m + 1)), false)
            }
            r => {
                let t = if r == 2 { nu5_minus_i(m, 1) } else { nu5_minus_i(m, -1) };
                let class = if m % 10 == 2 || m % 10 == 8 {
                    CaseClass::PlusMinusTwoMod10
                } else {
                    CaseClass::PlusMinusSevenMod10
                };
                (class, Some(t), true)
            }
        },
        _ => return Err(TheoremError::UnsupportedPrime(p)),
    };
    Ok(CaseId { prime, m, class, t, conjectural })
}

/// Predicted growing cycles `(length, count)` at every level `>= t + 1`.
pub fn growing_cycle_count(case: &CaseId) -> Result<Vec<(usize, u64)>, TheoremError> {
    let t = case.t.ok_or(TheoremError::NoCount)?;
    let p = case.prime.get() as u64;
    let unit = p.pow(t - 1);
    let counts = match (case.prime.get(), case.class) {
        (3, CaseClass::Mod { r: 1, .. }) => vec![(1, 4 * unit)],
        (3, CaseClass::Mod { r: 4, .. }) => vec![(1, 2 * unit)],
        (3, CaseClass::Mod { r: 2, .. }) => vec![(2, unit)],
        (3, CaseClass::Mod { r: 5, .. }) => vec![(2, 2 * unit)],
        (5, CaseClass::Mod { r: 1, q: 20 }) => vec![(1, 16 * unit)],
        (5, CaseClass::Mod { r: 6, q: 10 }) => vec![(1, 4 * unit)],
        (5, CaseClass::Mod { r: 11, q: 20 }) => vec![(1, 8 * unit), (2, 4 * unit)],
        (5, CaseClass::Mod { r: 4, q: 10 }) => vec![(2, 2 * unit)],
        (5, CaseClass::Mod { r: 9 | 19, q: 20 }) => vec![(2, 8 * unit)],
        (5, CaseClass::PlusMinusTwoMod10) => vec![(4, unit)],
        (5, CaseClass::PlusMinusSevenMod10) => vec![(4, 4 * unit)],
        _ => return Err(TheoremError::NoCount),
    };
    Ok(counts)
}
