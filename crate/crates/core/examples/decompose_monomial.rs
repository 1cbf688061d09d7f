// Decompose `x^5` on `Z_2` to level 8 and print the JSON document.

use padic_dynamics::{decompose, json, IntPolynomial, Prime};

fn run_example() -> padic_dynamics::Decomposition {
    let f = IntPolynomial::monomial(5);
    let d = decompose(&f, Prime::new(2).unwrap(), 8).expect("x^5 decomposes");
    println!("{} periodic orbits, {} minimal components, {} basins, {} unresolved balls",
        d.periodic_orbits.len(), d.components.len(), d.basins.len(), d.unresolved.len());
    for c in &d.components {
        let balls: Vec<String> = c.balls().iter().map(|b| b.to_string()).collect();
        println!("  component {}  ({})", balls.join(" u "), c.certificate);
    }
    print!("{}", json::to_string(&d));
    d
}

fn main() {
    run_example();
}
