// Multiplier, displacement, behavior and splitting forecast of a few cycles.

use num_bigint::BigUint;
use padic_dynamics::engine::{analyze, Cycle};
use padic_dynamics::{IntPolynomial, Level, Prime};

fn run_example() -> Vec<String> {
    let cases = [(7u32, 3u32, 2u32, vec![4u32]), (3, 2, 3, vec![1]), (5, 3, 1, vec![1]), (7, 3, 2, vec![1]), (9, 3, 1, vec![2])];
    let mut tags = Vec::new();
    for (m, p, l, pts) in cases {
        let f = IntPolynomial::monomial(m);
        let prime = Prime::new(p).unwrap();
        let points: Vec<BigUint> = pts.into_iter().map(BigUint::from).collect();
        let sigma = Cycle::new(&f, prime, Level::new(l).unwrap(), points).expect("a cycle");
        let an = analyze(&f, &sigma, l + 6).expect("analysis");
        println!(
            "x^{m} mod {p}^{l}, cycle {sigma}: a = {} (A = {}), b = {} (B = {}), {}, forecast {:?}",
            an.multiplier.a.value(),
            an.multiplier.big_a,
            an.displacement.b.value(),
            an.displacement.big_b,
            an.behavior,
            an.forecast
        );
        tags.push(an.behavior.tag().to_string());
    }
    tags
}

fn main() {
    run_example();
}
