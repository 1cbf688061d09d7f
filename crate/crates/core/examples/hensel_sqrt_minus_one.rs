// Hensel-lift a square root of -1 in `Z_5` and print its digits.

use padic_dynamics::padic::hensel_lift;
use padic_dynamics::{IntPolynomial, Level, Prime, Residue};

fn run_example() -> Residue {
    let p = Prime::new(5).unwrap();
    let f = IntPolynomial::from_i64(&[1, 0, 1]);
    let root = Residue::from_u64(p, Level::new(1).unwrap(), 2);
    let i = hensel_lift(&f, &root, Level::new(8).unwrap()).expect("2 is a simple root mod 5");
    let square = &i * &i;
    println!("i = {} mod 5^8, digits {:?}", i.value(), i.digits());
    println!("i^2 = {} = -1 mod 5^8", square.value());
    i
}

fn main() {
    run_example();
}
