//! Mapping-degree certificates along the homotopy between base-space and
//! total-space Einstein equations, including the singular equal-parameter
//! case.

use einstein_cspace::flag::mapping_degree;
use einstein_cspace::SpaceParams;

fn main() {
    let box_ = (0.05, 10.0);
    for (l, m, n) in [(1u32, 2, 3), (3, 4, 5), (2, 2, 3)] {
        let p = SpaceParams::new(l, m, n).unwrap();
        println!("{p}:");
        for t in [0.0, 0.5, 1.0] {
            let cert = mapping_degree(&p, t, box_).unwrap();
            let signs: Vec<&str> = cert
                .roots
                .iter()
                .map(|r| match r.sign {
                    Some(1) => "+",
                    Some(_) => "-",
                    None => "0",
                })
                .collect();
            println!(
                "  t = {t:.2}: degree {:?} from {} root(s) [{}], boundary min |f| = {:.2e}",
                cert.degree,
                cert.roots.len(),
                signs.join(""),
                cert.boundary_min
            );
        }
    }

    // the equal-split space degenerates at the endpoint: one singular root,
    // degree unverifiable
    let p = SpaceParams::new(1, 1, 1).unwrap();
    let cert = mapping_degree(&p, 1.0, box_).unwrap();
    println!(
        "{p} at t = 1: {} root at ({:.4}, {:.4}), |J| = {:.1e} -> degree {:?}",
        cert.roots.len(),
        cert.roots[0].x1,
        cert.roots[0].x2,
        cert.roots[0].jacobian,
        cert.degree
    );
}
