use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::ball::{canonical_cover, complement_within, pairwise_disjoint, Ball};
use crate::padic::{IntPolynomial, Prime, Residue};

/// A genuine periodic orbit, known to `max_level` digits.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PeriodicOrbit {
    points: Vec<Residue>,
}

impl PeriodicOrbit {
    /// Points in visiting order; rotated so the smallest comes first.
    pub fn new(mut points: Vec<Residue>) -> PeriodicOrbit {
        assert!(!points.is_empty(), "empty orbit");
        let start = (0..points.len())
            .min_by(|&i, &j| points[i].value().cmp(points[j].value()))
            .unwrap_or(0);
        points.rotate_left(start);
        PeriodicOrbit { points }
    }

    pub fn points(&self) -> &[Residue] {
        &self.points
    }

    pub fn period(&self) -> usize {
        self.points.len()
    }

    pub fn balls(&self) -> Vec<Ball> {
        self.points.iter().cloned().map(Ball::new).collect()
    }

    fn sort_key(&self) -> Vec<BigUint> {
        let mut v: Vec<BigUint> = self.points.iter().map(|r| r.value().clone()).collect();
        v.sort();
        v
    }
}

/// The evidence behind a minimal component.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Certificate {
    /// Follows from a closed-form theorem or a proposition with no extra hypothesis.
    TheoremBacked(String),
    /// Growth forecast by the splitting trichotomy at this level.
    SplitForecast(u32),
    /// Transitivity checked up to this level only.
    Empirical(u32),
}

impl Certificate {
    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::TheoremBacked(_) => "TheoremBacked",
            Certificate::SplitForecast(_) => "SplitForecast",
            Certificate::Empirical(_) => "Empirical",
        }
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certificate::TheoremBacked(case) => write!(f, "theorem ({case})"),
            Certificate::SplitForecast(n) => write!(f, "split forecast at level {n}"),
            Certificate::Empirical(n) => write!(f, "empirical to level {n}"),
        }
    }
}

/// A finite union of balls of one level on which `f` acts minimally.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MinimalComponent {
    balls: Vec<Ball>,
    pub certificate: Certificate,
    pub verified_level: Option<u32>,
}

impl MinimalComponent {
    /// `balls` in visiting order (`f` maps ball `i` into ball `i + 1`), rotated smallest first.
    pub fn new(mut balls: Vec<Ball>, certificate: Certificate) -> MinimalComponent {
        assert!(!balls.is_empty(), "empty component");
        let level = balls[0].level();
        assert!(balls.iter().all(|b| b.level() == level), "component balls share a level");
        let start = (0..balls.len()).min_by(|&i, &j| balls[i].cmp(&balls[j])).unwrap_or(0);
        balls.rotate_left(start);
        let verified_level = match certificate {
            Certificate::Empirical(n) => Some(n),
            _ => None,
        };
        MinimalComponent { balls, certificate, verified_level }
    }

    pub fn balls(&self) -> &[Ball] {
        &self.balls
    }

    pub fn level(&self) -> u32 {
        self.balls[0].level()
    }

    pub fn len(&self) -> usize {
        self.balls.len()
    }

    pub fn is_empty(&self) -> bool {
        self.balls.is_empty()
    }

    fn sorted_balls(&self) -> Vec<Ball> {
        let mut b = self.balls.clone();
        b.sort();
        b
    }
}

/// What a basin drains into.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Attractor {
    /// Index into `Decomposition::periodic_orbits`.
    Orbit(usize),
    /// An invariant union of balls (typically one containing minimal components).
    InvariantSet(Vec<Ball>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BasinRecord {
    pub attractor: Attractor,
    pub region: Vec<Ball>,
}

/// Periodic orbits, minimal components, basins and unresolved balls of `f` on `Z_p`,
/// truncated at `max_level`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub prime: Prime,
    pub polynomial: IntPolynomial,
    pub max_level: u32,
    pub periodic_orbits: Vec<PeriodicOrbit>,
    pub components: Vec<MinimalComponent>,
    pub basins: Vec<BasinRecord>,
    pub unresolved: Vec<Ball>,
}

impl Decomposition {
    /// Sorts everything, merges basins sharing an attractor and recomputes `unresolved`
    /// as the complement of the rest.
    pub fn from_parts(
        prime: Prime,
        polynomial: IntPolynomial,
        max_level: u32,
        periodic_orbits: Vec<PeriodicOrbit>,
        mut components: Vec<MinimalComponent>,
        basins: Vec<BasinRecord>,
    ) -> Decomposition {
        let mut order: Vec<usize> = (0..periodic_orbits.len()).collect();
        order.sort_by_key(|&i| periodic_orbits[i].sort_key());
        let mut remap = vec![0; order.len()];
        for (new, &old) in order.iter().enumerate() {
            remap[old] = new;
        }
        let periodic_orbits: Vec<PeriodicOrbit> =
            order.iter().map(|&i| periodic_orbits[i].clone()).collect();

        let mut merged: BTreeMap<AttractorKey, Vec<Ball>> = BTreeMap::new();
        for b in basins {
            let key = match b.attractor {
                Attractor::Orbit(i) => AttractorKey::Orbit(remap[i]),
                Attractor::InvariantSet(balls) => AttractorKey::Set(canonical_cover(&balls)),
            };
            merged.entry(key).or_default().extend(b.region);
        }
        let mut basins: Vec<BasinRecord> = merged
            .into_iter()
            .map(|(k, region)| BasinRecord {
                attractor: match k {
                    AttractorKey::Orbit(i) => Attractor::Orbit(i),
                    AttractorKey::Set(balls) => Attractor::InvariantSet(balls),
                },
                region: canonical_cover(&region),
            })
            .filter(|b| !b.region.is_empty())
            .collect();
        basins.sort_by(|a, b| a.region.first().cmp(&b.region.first()));
        components.sort_by(|a, b| a.balls[0].cmp(&b.balls[0]));

        let mut dec = Decomposition {
            prime,
            polynomial,
            max_level,
            periodic_orbits,
            components,
            basins,
            unresolved: Vec::new(),
        };
        dec.unresolved = complement_within(prime, None, &dec.claimed_balls());
        dec
    }

    /// Every ball claimed by an orbit, component or basin.
    pub fn claimed_balls(&self) -> Vec<Ball> {
        let mut all: Vec<Ball> = Vec::new();
        for o in &self.periodic_orbits {
            all.extend(o.balls());
        }
        for c in &self.components {
            all.extend(c.balls().iter().cloned());
        }
        for b in &self.basins {
            all.extend(b.region.iter().cloned());
        }
        all
    }

    /// Whether orbit, component, basin and unresolved balls partition `Z_p`
    /// (equivalently, `Z/p^max_level Z`).
    pub fn partition_holds(&self) -> bool {
        let mut all = self.claimed_balls();
        all.extend(self.unresolved.iter().cloned());
        if all.iter().any(|b| b.level() > self.max_level) || !pairwise_disjoint(&all) {
            return false;
        }
        let total: BigUint = all
            .iter()
            .map(|b| self.prime.pow(self.max_level - b.level()))
            .fold(BigUint::zero(), |acc, x| acc + x);
        total == self.prime.pow(self.max_level)
    }

    pub fn is_fully_resolved(&self) -> bool {
        self.unresolved.is_empty()
    }

    /// Set-level differences with `other`, ignoring certificates; empty when equal.
    pub fn differences(&self, other: &Decomposition) -> Vec<String> {
        let mut out = Vec::new();
        if self.prime != other.prime || self.max_level != other.max_level {
            out.push(format!(
                "setup differs: p={} N={} vs p={} N={}",
                self.prime, self.max_level, other.prime, other.max_level
            ));
            return out;
        }
        let orbits = |d: &Decomposition| -> Vec<Vec<BigUint>> {
            let mut v: Vec<_> = d.periodic_orbits.iter().map(|o| o.sort_key()).collect();
            v.sort();
            v
        };
        diff_sets("periodic orbit", &orbits(self), &orbits(other), &mut out, |o| {
            o.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
        });
        let comps = |d: &Decomposition| -> Vec<Vec<Ball>> {
            let mut v: Vec<_> = d.components.iter().map(|c| c.sorted_balls()).collect();
            v.sort();
            v
        };
        diff_sets("component", &comps(self), &comps(other), &mut out, |c| {
            c.iter().map(|b| b.to_string()).collect::<Vec<_>>().join(" u ")
        });
        let basins = |d: &Decomposition| -> Vec<(String, Vec<Ball>)> {
            let mut v: Vec<_> = d
                .basins
                .iter()
                .map(|b| (d.attractor_label(&b.attractor), canonical_cover(&b.region)))
                .collect();
            v.sort();
            v
        };
        diff_sets("basin", &basins(self), &basins(other), &mut out, |(a, r)| {
            format!(
                "{} -> {}",
                r.iter().map(|b| b.to_string()).collect::<Vec<_>>().join(" u "),
                a
            )
        });
        let un = |d: &Decomposition| canonical_cover(&d.unresolved);
        diff_sets("unresolved ball", &un(self), &un(other), &mut out, |b| b.to_string());
        out
    }

    pub fn equivalent(&self, other: &Decomposition) -> bool {
        self.differences(other).is_empty()
    }

    /// Human-readable attractor description, independent of orbit indices.
    pub fn attractor_label(&self, a: &Attractor) -> String {
        match a {
            Attractor::Orbit(i) => match self.periodic_orbits.get(*i) {
                Some(o) => format!(
                    "orbit {{{}}}",
                    o.sort_key().iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
                ),
                None => format!("orbit #{i} (missing)"),
            },
            Attractor::InvariantSet(balls) => format!(
                "set {}",
                canonical_cover(balls).iter().map(|b| b.to_string()).collect::<Vec<_>>().join(" u ")
            ),
        }
    }

    /// Sum of residues mod `p^max_level` per category: orbits, components, basins, unresolved.
    pub fn residue_totals(&self) -> [BigUint; 4] {
        let count = |balls: &mut dyn Iterator<Item = &Ball>| -> BigUint {
            balls
                .map(|b| self.prime.pow(self.max_level - b.level().min(self.max_level)))
                .fold(BigUint::zero(), |a, x| a + x)
        };
        let orbit_balls: Vec<Ball> = self.periodic_orbits.iter().flat_map(|o| o.balls()).collect();
        [
            count(&mut orbit_balls.iter()),
            count(&mut self.components.iter().flat_map(|c| c.balls().iter())),
            count(&mut self.basins.iter().flat_map(|b| b.region.iter())),
            count(&mut self.unresolved.iter()),
        ]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum AttractorKey {
    Orbit(usize),
    Set(Vec<Ball>),
}

fn diff_sets<T: Ord + Clone>(
    what: &str,
    left: &[T],
    right: &[T],
    out: &mut Vec<String>,
    show: impl Fn(&T) -> String,
) {
    for x in left {
        if right.binary_search(x).is_err() {
            out.push(format!("{what} only on the left: {}", show(x)));
        }
    }
    for x in right {
        if left.binary_search(x).is_err() {
            out.push(format!("{what} only on the right: {}", show(x)));
        }
    }
}
