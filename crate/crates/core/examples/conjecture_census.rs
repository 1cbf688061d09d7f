// Count growing 4-cycles of `x^m` on `Z/5^n Z` for `m = 2, 3, 7`.

use padic_dynamics::theorems::conjecture_check;

fn run_example() -> bool {
    let mut all = true;
    for m in [2, 3, 7] {
        let r = conjecture_check(m, 5).unwrap();
        println!("m = {m}: t = {}, expect {} growing 4-cycles per level, observed {:?}", r.t, r.expected, r.observed);
        all &= r.matches();
    }
    all
}

fn main() {
    run_example();
}
