// Print the lift tree of `x^3` on `Z_2` up to level 6 as Graphviz DOT.

use padic_dynamics::dot::{lift_tree, DEFAULT_DOT_NODES};
use padic_dynamics::{IntPolynomial, Prime};

fn run_example() -> String {
    let tree = lift_tree(&IntPolynomial::monomial(3), Prime::new(2).unwrap(), 6, DEFAULT_DOT_NODES).unwrap();
    let dot = tree.to_dot();
    print!("{dot}");
    dot
}

fn main() {
    run_example();
}
