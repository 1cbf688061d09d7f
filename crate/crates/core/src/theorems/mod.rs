//! Closed-form decompositions of `x^m` over `Z_2`, `Z_3` and `Z_5`, plus the conjectural
//! census for `m = +-2 mod 5` over `Z_5`.

mod cases;
mod conjecture;

pub use cases::{classify_case, five_adic_i, growing_cycle_count, CaseClass, CaseId};
pub use conjecture::{conjecture_check, ConjectureReport};

use num_bigint::BigUint;

use crate::ball::{complement_within, Ball};
use crate::decompose::{Attractor, BasinRecord, Certificate, Decomposition, MinimalComponent, PeriodicOrbit};
use crate::engine::EngineError;
use crate::padic::{Level, PadicError, Residue};

/// Upper bound on the number of components [`predict`] will spell out.
pub const MEMBER_CAP: u64 = 5_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TheoremError {
    #[error("no theorem covers p = {0} (supported: 2, 3, 5)")]
    UnsupportedPrime(u32),
    #[error("exponent must be at least 2, got {0}")]
    ExponentTooSmall(u64),
    #[error("case is conjectural; use the conjecture census instead")]
    Conjectural,
    #[error("no growing-cycle count is stated for this case")]
    NoCount,
    #[error("max level must be at least 2, got {0}")]
    LevelTooSmall(u32),
    #[error("prediction would list more than {MEMBER_CAP} components")]
    TooManyComponents,
    #[error(transparent)]
    Padic(#[from] PadicError),
    #[error(transparent)]
    Engine(#[from] EngineError),
}

/// How the second ball of a component is obtained from the first centre `x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Pairing {
    Single,
    /// `{x, -x}`
    Negate,
    /// `{x, c^(m+1) / x}` around the fixed point `c`
    Invert,
}

/// One family of components around a fixed point `c`, indexed by the digit `i` in `digits`.
struct Family {
    center: Residue,
    digits: Vec<u32>,
    pairing: Pairing,
}

/// One member of a component family together with its balls.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyMember {
    pub l: u32,
    pub a: u64,
    pub i: u32,
    pub j: usize,
    pub balls: Vec<Ball>,
}

/// What drains into what at level 1, plus the families of components.
struct Shape {
    /// Orbits in visiting order; `true` when the orbit attracts its level-1 balls.
    orbits: Vec<(Vec<Residue>, bool)>,
    /// Non-periodic level-1 residues and where they drain.
    tails: Vec<(u64, Attractor)>,
    families: Vec<Family>,
}

fn level(n: u32) -> Level {
    Level::new(n).expect("positive level")
}

fn shape(case: &CaseId, precision: u32) -> Shape {
    let p = case.prime;
    let lv = level(precision);
    let c = |v: i64| Residue::from_i64(p, lv, v);
    let ii = || if p.get() == 5 { cases::five_adic_i(precision) } else { c(0) };
    let zero = (vec![c(0)], true);
    let fixed = |r: Residue, attracting: bool| (vec![r], attracting);
    let family = |center: Residue, digits: Vec<u32>, pairing: Pairing| Family { center, digits, pairing };
    let all = |p: u32| (1..p).collect::<Vec<u32>>();
    let one_set = || Attractor::InvariantSet(vec![Ball::from_u64(p, 1, 1)]);

    let mut orbits = vec![zero];
    let mut tails = Vec::new();
    let mut families = Vec::new();
    match (p.get(), case.class) {
        (2, CaseClass::Even) => orbits.push(fixed(c(1), true)),
        (2, _) => {
            orbits.push(fixed(c(1), false));
            orbits.push(fixed(c(-1), false));
        }
        (3, CaseClass::Mod { r, .. }) => match r {
            0 => {
                orbits.push(fixed(c(1), true));
                tails.push((2, Attractor::Orbit(1)));
            }
            3 => {
                orbits.push(fixed(c(1), true));
                orbits.push(fixed(c(-1), true));
            }
            1 | 5 => {
                orbits.push(fixed(c(1), false));
                orbits.push(fixed(c(-1), false));
                let (digits, pairing) = if r == 1 { (all(3), Pairing::Single) } else { (vec![1], Pairing::Invert) };
                families.push(family(c(1), digits.clone(), pairing));
                families.push(family(c(-1), digits, pairing));
            }
            _ => {
                orbits.push(fixed(c(1), false));
                tails.push((2, one_set()));
                let (digits, pairing) = if r == 4 { (all(3), Pairing::Single) } else { (vec![1], Pairing::Invert) };
                families.push(family(c(1), digits, pairing));
            }
        },
        (5, CaseClass::Mod { r, q }) => {
            let i = ii();
            let mi = -&i;
            match (r, q) {
                (0, 10) => {
                    orbits.push(fixed(c(1), true));
                    for x in 2..5 {
                        tails.push((x, Attractor::Orbit(1)));
                    }
                }
                (5, 20) => {
                    for x in [c(1), c(-1), i, mi] {
                        orbits.push(fixed(x, true));
                    }
                }
                (15, 20) => {
                    orbits.push(fixed(c(1), true));
                    orbits.push(fixed(c(-1), true));
                    orbits.push((vec![i, mi], true));
                }
                (1, 20) | (9, 20) => {
                    let (digits, pairing) =
                        if r == 1 { (all(5), Pairing::Single) } else { (vec![1, 2], Pairing::Invert) };
                    for x in [c(1), c(-1), i, mi] {
                        orbits.push(fixed(x.clone(), false));
                        families.push(family(x, digits.clone(), pairing));
                    }
                }
                (6, 10) | (4, 10) => {
                    orbits.push(fixed(c(1), false));
                    for x in 2..5 {
                        tails.push((x, one_set()));
                    }
                    let (digits, pairing) =
                        if r == 6 { (all(5), Pairing::Single) } else { (vec![1, 2], Pairing::Invert) };
                    families.push(family(c(1), digits, pairing));
                }
                (11, 20) | (19, 20) => {
                    orbits.push(fixed(c(1), false));
                    orbits.push(fixed(c(-1), false));
                    orbits.push((vec![i.clone(), mi], false));
                    let (digits, pairing) =
                        if r == 11 { (all(5), Pairing::Single) } else { (vec![1, 2], Pairing::Invert) };
                    families.push(family(c(1), digits.clone(), pairing));
                    families.push(family(c(-1), digits, pairing));
                    let pairing = if r == 11 { Pairing::Negate } else { Pairing::Invert };
                    families.push(family(i, all(5), pairing));
                }
                _ => unreachable!("classify_case only yields the classes above"),
            }
        }
        _ => unreachable!("conjectural cases are rejected before shaping"),
    }
    Shape { orbits, tails, families }
}

/// The members of every component family whose balls have level at most `max_level`,
/// in lexicographic order of `(l, a, i, j)`.
pub fn component_families(case: &CaseId, max_level: u32) -> Result<Vec<FamilyMember>, TheoremError> {
    if case.conjectural {
        return Err(TheoremError::Conjectural);
    }
    let t = match case.t {
        Some(t) => t,
        None => return Ok(Vec::new()),
    };
    let p = case.prime;
    let precision = max_level + t + 2;
    let sh = shape(case, precision);
    // p = 2: levels t+l+2 (m = 1 mod 4) or t+l+3 (m = 3 mod 4); odd p: t+l+1
    let (offset, a_shift, a_count): (u32, u32, u32) = match case.class {
        CaseClass::OneMod4 => (2, 3, t - 1),
        CaseClass::ThreeMod4 => (3, 4, t - 1),
        _ => (1, 2, t - 1),
    };
    let a_total = p.pow_u64(a_count).ok_or(TheoremError::TooManyComponents)?;
    if max_level < t + offset {
        return Ok(Vec::new());
    }
    let layers = (max_level - t - offset + 1) as u64;
    let per_layer: u64 = if p.get() == 2 {
        2
    } else {
        sh.families.iter().map(|f| f.digits.len() as u64).sum()
    };
    if a_total.saturating_mul(per_layer).saturating_mul(layers) > MEMBER_CAP {
        return Err(TheoremError::TooManyComponents);
    }

    let lift = |v: &BigUint| Residue::from_biguint(p, level(precision), v.clone());
    let m_plus_one = BigUint::from(case.m) + 1u32;
    let mut out = Vec::new();
    for l in 0..layers as u32 {
        let n = t + l + offset;
        let ln = level(n);
        for a in 0..a_total {
            let a_term = lift(&(p.pow(l + a_shift) * a));
            if p.get() == 2 {
                for (j, c) in [1i64, -1].into_iter().enumerate() {
                    let x = &(&Residue::from_i64(p, level(precision), c) + &lift(&p.pow(l + 2))) + &a_term;
                    let x = x.project(ln);
                    let mut balls = vec![Ball::new(x.clone())];
                    if case.class == CaseClass::ThreeMod4 {
                        let y = &x.inverse()? + &Residue::from_biguint(p, ln, p.pow(t + l + 2));
                        balls.push(Ball::new(y));
                    }
                    out.push(FamilyMember { l, a, i: 1, j, balls });
                }
                continue;
            }
            let mut row: Vec<FamilyMember> = Vec::new();
            for (j, fam) in sh.families.iter().enumerate() {
                for &i in &fam.digits {
                    let x = &(&fam.center + &lift(&(p.pow(l + 1) * i))) + &a_term;
                    let x = x.project(ln);
                    let mut balls = vec![Ball::new(x.clone())];
                    match fam.pairing {
                        Pairing::Single => {}
                        Pairing::Negate => balls.push(Ball::new(-&x)),
                        Pairing::Invert => {
                            let scale = fam.center.project(ln).pow(&m_plus_one);
                            balls.push(Ball::new(&scale * &x.inverse()?));
                        }
                    }
                    row.push(FamilyMember { l, a, i, j, balls });
                }
            }
            row.sort_by_key(|m| (m.i, m.j));
            out.extend(row);
        }
    }
    Ok(out)
}

/// The decomposition stated by the theorem for `case`, truncated at `max_level` under the same
/// conventions as [`crate::decompose::decompose`].
pub fn predict(case: &CaseId, max_level: u32) -> Result<Decomposition, TheoremError> {
    if case.conjectural {
        return Err(TheoremError::Conjectural);
    }
    if max_level < 2 {
        return Err(TheoremError::LevelTooSmall(max_level));
    }
    let p = case.prime;
    let precision = max_level + case.t.unwrap_or(0) + 2;
    let sh = shape(case, precision);
    let top = level(max_level);

    let mut orbits = Vec::new();
    let mut basins = Vec::new();
    for (idx, (points, attracting)) in sh.orbits.iter().enumerate() {
        let orbit = PeriodicOrbit::new(points.iter().map(|x| x.project(top)).collect());
        if *attracting {
            let universe: Vec<Ball> = points.iter().map(|x| Ball::new(x.project(level(1)))).collect();
            let region = complement_within(p, Some(&universe), &orbit.balls());
            basins.push(BasinRecord { attractor: Attractor::Orbit(idx), region });
        }
        orbits.push(orbit);
    }
    for (x, attractor) in sh.tails {
        basins.push(BasinRecord { attractor, region: vec![Ball::from_u64(p, 1, x)] });
    }
    let label = case.label();
    let components = component_families(case, max_level)?
        .into_iter()
        .map(|m| MinimalComponent::new(m.balls, Certificate::TheoremBacked(label.clone())))
        .collect();
    Ok(Decomposition::from_parts(p, case.polynomial(), max_level, orbits, components, basins))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decompose::decompose;

    fn agree(p: u32, m: u64, n: u32) {
        let case = classify_case(p, m).unwrap();
        let predicted = predict(&case, n).unwrap();
        assert!(predicted.partition_holds(), "p={p} m={m}: prediction is not a partition");
        let computed = decompose(&case.polynomial(), case.prime, n).unwrap();
        let diff = predicted.differences(&computed);
        assert!(diff.is_empty(), "p={p} m={m} N={n}:\n{}", diff.join("\n"));
    }

    #[test]
    fn two_adic_cases_agree() {
        for m in [2, 3, 4, 5, 7, 9, 11, 15, 17] {
            agree(2, m, 9);
        }
    }

    #[test]
    fn three_adic_cases_agree() {
        for m in 2..=20 {
            agree(3, m, 6);
        }
    }

    #[test]
    fn five_adic_cases_agree() {
        for m in [4, 5, 6, 9, 10, 11, 14, 15, 16, 19, 21, 24, 26, 29, 31, 39] {
            agree(5, m, 4);
        }
    }

    #[test]
    fn conjectural_cases_are_rejected() {
        let case = classify_case(5, 7).unwrap();
        assert_eq!(predict(&case, 4), Err(TheoremError::Conjectural));
    }

    #[test]
    fn three_mod_four_example() {
        let case = classify_case(2, 3).unwrap();
        let fam = component_families(&case, 5).unwrap();
        let shown: Vec<Vec<u64>> = fam
            .iter()
            .map(|m| m.balls.iter().map(|b| b.center().to_u64().unwrap()).collect())
            .collect();
        assert_eq!(shown, vec![vec![5, 29], vec![3, 27], vec![21, 13], vec![19, 11]]);
    }
}
