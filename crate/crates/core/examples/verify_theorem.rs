// Compare the closed-form decomposition of `x^7` on `Z_3` with the decomposer and the oracle.

use padic_dynamics::oracle::{build_graph, crosscheck};
use padic_dynamics::theorems::{classify_case, predict};
use padic_dynamics::decompose;

fn run_example() -> bool {
    let case = classify_case(3, 7).unwrap();
    let n = 5;
    let predicted = predict(&case, n).unwrap();
    let computed = decompose(&case.polynomial(), case.prime, n).unwrap();
    let diff = predicted.differences(&computed);
    println!("{case}: {} predicted components, {} differences", predicted.components.len(), diff.len());
    let mut ok = diff.is_empty();
    for level in 1..=n {
        let g = build_graph(&case.polynomial(), case.prime, level).unwrap();
        let report = crosscheck(&predicted, &g);
        println!("  oracle at level {level}: {} violations", report.violations.len());
        ok &= report.passed();
    }
    println!("{}", if ok { "pass" } else { "mismatch" });
    ok
}

fn main() {
    run_example();
}
