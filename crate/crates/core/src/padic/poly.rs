use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{Level, PadicError, Prime, Residue};

/// A polynomial with integer coefficients; `coefficients()[i]` multiplies `x^i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPolynomial::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `x^m`.
    pub fn monomial(m: u32) -> Self {
        let mut coeffs = vec![BigInt::zero(); m as usize + 1];
        coeffs[m as usize] = BigInt::one();
        IntPolynomial { coeffs }
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// The exponent `m` when the polynomial is exactly `x^m`.
    pub fn as_monomial(&self) -> Option<u32> {
        let (last, rest) = self.coeffs.split_last()?;
        (last.is_one() && rest.iter().all(Zero::is_zero)).then_some(rest.len() as u32)
    }

    pub fn derivative(&self) -> IntPolynomial {
        IntPolynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// Horner evaluation of `f(x)` modulo `p^level` of `x`.
    pub fn eval(&self, x: &Residue) -> Residue {
        let modulus = x.modulus();
        let value = horner(&self.reduced_coeffs(&modulus), x.value(), &modulus);
        Residue::from_biguint(x.prime(), x.level(), value)
    }

    /// Evaluation of the formal derivative `f'(x)`.
    pub fn eval_deriv(&self, x: &Residue) -> Residue {
        self.derivative().eval(x)
    }

    pub(crate) fn reduced_coeffs(&self, modulus: &BigUint) -> Vec<BigUint> {
        let m = BigInt::from(modulus.clone());
        self.coeffs
            .iter()
            .map(|c| c.mod_floor(&m).to_biguint().expect("nonnegative"))
            .collect()
    }
}

fn horner(coeffs: &[BigUint], x: &BigUint, modulus: &BigUint) -> BigUint {
    let mut acc = BigUint::zero();
    for c in coeffs.iter().rev() {
        acc = (acc * x + c) % modulus;
    }
    acc
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let mag = c.abs();
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{mag}x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "{mag}x^{i}")?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Polynomial reduced modulo a fixed `p^k`, with a `u128` fast path when the modulus fits in 63 bits.
#[derive(Clone, Debug)]
pub(crate) struct PolyMod {
    modulus: BigUint,
    coeffs: Vec<BigUint>,
    small: Option<(u64, Vec<u64>)>,
}

impl PolyMod {
    pub(crate) fn new(f: &IntPolynomial, prime: Prime, level: u32) -> Self {
        let modulus = prime.pow(level);
        let coeffs = f.reduced_coeffs(&modulus);
        let small = modulus
            .to_u64()
            .filter(|&m| m < (1 << 63))
            .map(|m| (m, coeffs.iter().map(|c| c.to_u64().unwrap()).collect()));
        PolyMod { modulus, coeffs, small }
    }

    pub(crate) fn modulus(&self) -> &BigUint {
        &self.modulus
    }

    pub(crate) fn small_modulus(&self) -> Option<u64> {
        self.small.as_ref().map(|(m, _)| *m)
    }

    pub(crate) fn eval(&self, x: &BigUint) -> BigUint {
        match (&self.small, x.to_u64()) {
            (Some(_), Some(xs)) => BigUint::from(self.eval_small(xs)),
            _ => horner(&self.coeffs, x, &self.modulus),
        }
    }

    /// Caller guarantees the small path exists and `x < modulus`.
    pub(crate) fn eval_small(&self, x: u64) -> u64 {
        let (m, coeffs) = self.small.as_ref().expect("modulus fits in u64");
        let m = *m as u128;
        let x = x as u128;
        let mut acc: u128 = 0;
        for &c in coeffs.iter().rev() {
            acc = (acc * x + c as u128) % m;
        }
        acc as u64
    }
}

/// Lifts a simple root of `f` modulo `p` to the unique root modulo `p^target` above it.
pub fn hensel_lift(f: &IntPolynomial, root: &Residue, target: Level) -> Result<Residue, PadicError> {
    let first = Level::new(1)?;
    let base = root.project(first);
    if !f.eval(&base).is_zero() {
        return Err(PadicError::NotARoot);
    }
    let deriv = f.derivative();
    if deriv.eval(&base).is_zero() {
        return Err(PadicError::NotSimpleRoot);
    }
    // Newton iteration doubles the number of correct digits each step.
    let mut r = base.with_level(target);
    let mut correct = 1u32;
    while correct < target.get() {
        correct = (2 * correct).min(target.get());
        let level = Level::new(correct)?;
        let x = r.with_level(level);
        let fx = f.eval(&x);
        let inv = deriv.eval(&x).inverse()?;
        r = (&x - &(&fx * &inv)).with_level(target);
    }
    debug_assert!(f.eval(&r).is_zero());
    Ok(r)
}
