use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::{PadicError, Valuation};

/// A prime `p`, checked at construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prime(u32);

impl Prime {
    pub fn new(p: u32) -> Result<Self, PadicError> {
        if is_prime(p) {
            Ok(Prime(p))
        } else {
            Err(PadicError::NotPrime(p))
        }
    }

    pub fn get(self) -> u32 {
        self.0
    }

    /// `p^n` as a big integer.
    pub fn pow(self, n: u32) -> BigUint {
        BigUint::from(self.0).pow(n)
    }

    /// `p^n` when it fits in a `u64`.
    pub fn pow_u64(self, n: u32) -> Option<u64> {
        (self.0 as u64).checked_pow(n)
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n as u64 {
        if (n as u64).is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Precision exponent `k` of the ring `Z/p^k Z`; always at least 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Level(u32);

impl Level {
    pub fn new(k: u32) -> Result<Self, PadicError> {
        if k == 0 {
            Err(PadicError::ZeroLevel)
        } else {
            Ok(Level(k))
        }
    }

    /// Like [`Level::new`] but also rejects levels above a working-precision cap.
    pub fn capped(k: u32, cap: u32) -> Result<Self, PadicError> {
        if k > cap {
            return Err(PadicError::LevelAboveCap { level: k, cap });
        }
        Level::new(k)
    }

    pub fn get(self) -> u32 {
        self.0
    }

    pub fn next(self) -> Level {
        Level(self.0 + 1)
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An element of `Z/p^level Z`, stored as its canonical representative in `[0, p^level)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Residue {
    value: BigUint,
    level: Level,
    prime: Prime,
}

impl Residue {
    /// Reduces an arbitrary (possibly negative) integer into `[0, p^level)`.
    pub fn new(prime: Prime, level: Level, value: &BigInt) -> Self {
        let modulus = BigInt::from(prime.pow(level.get()));
        let reduced = value.mod_floor(&modulus);
        Residue {
            value: reduced.to_biguint().expect("mod_floor is nonnegative"),
            level,
            prime,
        }
    }

    pub fn from_biguint(prime: Prime, level: Level, value: BigUint) -> Self {
        let modulus = prime.pow(level.get());
        let value = if value < modulus { value } else { value % modulus };
        Residue { value, level, prime }
    }

    pub fn from_i64(prime: Prime, level: Level, value: i64) -> Self {
        Residue::new(prime, level, &BigInt::from(value))
    }

    pub fn from_u64(prime: Prime, level: Level, value: u64) -> Self {
        Residue::from_biguint(prime, level, BigUint::from(value))
    }

    pub fn zero(prime: Prime, level: Level) -> Self {
        Residue { value: BigUint::zero(), level, prime }
    }

    pub fn one(prime: Prime, level: Level) -> Self {
        Residue::from_u64(prime, level, 1)
    }

    pub fn value(&self) -> &BigUint {
        &self.value
    }

    pub fn into_value(self) -> BigUint {
        self.value
    }

    pub fn level(&self) -> Level {
        self.level
    }

    pub fn prime(&self) -> Prime {
        self.prime
    }

    pub fn modulus(&self) -> BigUint {
        self.prime.pow(self.level.get())
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.value.to_u64()
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn is_unit(&self) -> bool {
        !(&self.value % self.prime.get()).is_zero()
    }

    /// Image under the canonical projection `Z/p^k -> Z/p^j`, `j <= k`.
    pub fn project(&self, level: Level) -> Residue {
        assert!(
            level <= self.level,
            "cannot project level {} residue up to level {}",
            self.level,
            level
        );
        Residue::from_biguint(self.prime, level, self.value.clone())
    }

    /// Same integer representative read at a (possibly higher) level.
    pub fn with_level(&self, level: Level) -> Residue {
        Residue::from_biguint(self.prime, level, self.value.clone())
    }

    pub fn valuation(&self) -> Valuation {
        valuation(self)
    }

    pub fn pow(&self, exp: &BigUint) -> Residue {
        mod_pow(self, exp)
    }

    pub fn pow_u64(&self, exp: u64) -> Residue {
        mod_pow(self, &BigUint::from(exp))
    }

    pub fn inverse(&self) -> Result<Residue, PadicError> {
        unit_inverse(self)
    }

    /// Base-`p` digits, least significant first, exactly `level` of them.
    pub fn digits(&self) -> Vec<u32> {
        let p = BigUint::from(self.prime.get());
        let mut rest = self.value.clone();
        let mut out = Vec::with_capacity(self.level.get() as usize);
        for _ in 0..self.level.get() {
            let (q, r) = rest.div_rem(&p);
            out.push(r.to_u32().expect("digit below p"));
            rest = q;
        }
        out
    }

    fn common(&self, other: &Residue) -> Level {
        assert_eq!(
            self.prime, other.prime,
            "residue arithmetic across different primes"
        );
        self.level.min(other.level)
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}^{}", self.value, self.prime, self.level)
    }
}

impl Add for &Residue {
    type Output = Residue;
    fn add(self, rhs: &Residue) -> Residue {
        let level = self.common(rhs);
        Residue::from_biguint(self.prime, level, &self.value + &rhs.value)
    }
}

impl Sub for &Residue {
    type Output = Residue;
    fn sub(self, rhs: &Residue) -> Residue {
        let level = self.common(rhs);
        let lhs = BigInt::from_biguint(Sign::Plus, self.value.clone());
        let rhs = BigInt::from_biguint(Sign::Plus, rhs.value.clone());
        Residue::new(self.prime, level, &(lhs - rhs))
    }
}

impl Mul for &Residue {
    type Output = Residue;
    fn mul(self, rhs: &Residue) -> Residue {
        let level = self.common(rhs);
        Residue::from_biguint(self.prime, level, &self.value * &rhs.value)
    }
}

impl Neg for &Residue {
    type Output = Residue;
    fn neg(self) -> Residue {
        let v = BigInt::from_biguint(Sign::Minus, self.value.clone());
        Residue::new(self.prime, self.level, &v)
    }
}

/// `p`-adic valuation of a residue. The zero residue reports the inexact bound `>= level`.
pub fn valuation(x: &Residue) -> Valuation {
    if x.value.is_zero() {
        return Valuation::at_least(x.level.get());
    }
    let p = BigUint::from(x.prime.get());
    let mut v = 0;
    let mut rest = x.value.clone();
    loop {
        let (q, r) = rest.div_rem(&p);
        if !r.is_zero() {
            break;
        }
        v += 1;
        rest = q;
    }
    Valuation::exact(v)
}

pub fn mod_pow(base: &Residue, exp: &BigUint) -> Residue {
    let modulus = base.modulus();
    Residue {
        value: base.value.modpow(exp, &modulus),
        level: base.level,
        prime: base.prime,
    }
}

/// Inverse of a unit of `Z/p^k Z` by the extended Euclidean algorithm.
pub fn unit_inverse(u: &Residue) -> Result<Residue, PadicError> {
    if !u.is_unit() {
        return Err(PadicError::NonUnit {
            value: u.value.to_string(),
            prime: u.prime.get(),
        });
    }
    let modulus = BigInt::from(u.modulus());
    let a = BigInt::from(u.value.clone());
    let egcd = a.extended_gcd(&modulus);
    debug_assert!(egcd.gcd.is_one());
    Ok(Residue::new(u.prime, u.level, &egcd.x))
}
