// Crosscheck a decomposition against the brute-force functional graph, then corrupt it.

use padic_dynamics::decompose::{Certificate, MinimalComponent};
use padic_dynamics::oracle::{build_graph, census, crosscheck};
use padic_dynamics::{decompose, Ball, IntPolynomial, Prime};

fn run_example() -> (usize, usize) {
    let f = IntPolynomial::monomial(5);
    let p = Prime::new(2).unwrap();
    let d = decompose(&f, p, 6).unwrap();
    let g = build_graph(&f, p, 6).unwrap();
    println!("census mod 2^6: {:?}", census(&g, &f, None).counts);
    let clean = crosscheck(&d, &g).violations.len();
    println!("clean decomposition: {clean} violations");

    let mut bad = d.clone();
    let first = bad.components[0].balls()[0].clone();
    let shifted = Ball::from_u64(p, first.level(), first.center().to_u64().unwrap() ^ 2);
    bad.components[0] = MinimalComponent::new(vec![shifted], Certificate::Empirical(6));
    let corrupted = crosscheck(&bad, &g).violations.len();
    println!("corrupted component center: {corrupted} violations");
    (clean, corrupted)
}

fn main() {
    run_example();
}
