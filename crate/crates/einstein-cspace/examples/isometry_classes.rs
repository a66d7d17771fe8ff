//! Isometry matching across permuted parameter orderings: the same
//! underlying manifold described six ways, with its solutions grouped by
//! normalized signatures and fiber eigenvalues.

use einstein_cspace::isometry::{isometry_classes, normalize, rho0_eigenvalues};
use einstein_cspace::solver::{solve, SolveOptions, SolveReport};
use einstein_cspace::SpaceParams;

fn main() {
    let base = SpaceParams::new(1, 2, 3).unwrap();
    let mut reports: Vec<SolveReport> = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for p in base.permutations() {
        if seen.insert((p.l, p.m, p.n)) {
            reports.push(solve(&p, &SolveOptions::default()).unwrap());
        }
    }
    for r in &reports {
        println!(
            "{}: {} solutions",
            r.params,
            r.solutions.len()
        );
    }

    let refs: Vec<&SolveReport> = reports.iter().collect();
    let classes = isometry_classes(&refs).unwrap();
    println!("\n{} isometry classes across all descriptions:", classes.len());
    for (k, class) in classes.iter().enumerate() {
        println!("class {}:", k + 1);
        for &(ri, si) in class {
            let r = &reports[ri];
            let sol = &r.solutions[si];
            let nsol = normalize(sol);
            let (e1, e2) = rho0_eigenvalues(nsol.v4, nsol.v5, nsol.c);
            println!(
                "  {} solution {}: normalized diag ({:.6}, {:.6}, {:.6}), fiber eigenvalues ({:.6}, {:.6})",
                r.params, si, nsol.x1, nsol.x2, nsol.x3, e1, e2
            );
        }
    }
}
