//! Find every invariant Einstein metric on one space.
//!
//! Usage: `cargo run --example solve_space -- [l m n]` (defaults to 1 2 3).

use einstein_cspace::solver::{solve, SolveOptions};
use einstein_cspace::SpaceParams;

fn main() {
    let args: Vec<u32> = std::env::args()
        .skip(1)
        .map(|a| a.parse().expect("parameters must be positive integers"))
        .collect();
    let (l, m, n) = match args.as_slice() {
        [] => (1, 2, 3),
        [l, m, n] => (*l, *m, *n),
        _ => {
            eprintln!("usage: solve_space [l m n]");
            std::process::exit(2);
        }
    };

    let params = SpaceParams::new(l, m, n).expect("positive parameters");
    println!(
        "{params}: dimension {}, blocks of dimension {} / {} / {} plus a rank-2 fiber",
        params.dim(),
        params.d1,
        params.d2,
        params.d3
    );

    let report = solve(&params, &SolveOptions::default()).expect("solver");
    println!(
        "found {} Einstein metric(s) in {} isometry class(es)  [{} precision]",
        report.solutions.len(),
        report.isometry_classes.len(),
        report.precision
    );
    println!(
        "{:>12} {:>12} {:>4} {:>12} {:>12} {:>12} {:>12} {:>9}",
        "x1", "x2", "x3", "v4", "v5", "c", "lambda", "residual"
    );
    for sol in &report.solutions {
        let g = &sol.metric;
        println!(
            "{:>12.6} {:>12.6} {:>4} {:>12.6} {:>12.6} {:>12.6} {:>12.6} {:>9.1e}  ({:?})",
            g.x1, g.x2, g.x3, g.v4, g.v5, g.c, sol.lambda, sol.residual.norm, sol.method
        );
    }
    for (k, class) in report.isometry_classes.iter().enumerate() {
        println!("class {}: solutions {:?}", k + 1, class);
    }
    if !report.family_complete {
        println!("note: degenerate parameters; the six-parameter family is not exhaustive here");
    }
    for d in &report.diagnostics {
        println!("note: {d}");
    }
}
