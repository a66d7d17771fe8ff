//! The four closed-form Einstein metrics of the base flag manifold, with
//! their constants and the Jacobian data of the planar root map.

use einstein_cspace::flag::{flag_einstein_metrics, jacobian_sign};
use einstein_cspace::ricci::flag_ricci;
use einstein_cspace::SpaceParams;

fn main() {
    for (l, m, n) in [(1u32, 1, 1), (1, 2, 3), (3, 4, 5)] {
        let p = SpaceParams::new(l, m, n).unwrap();
        println!("base flag of {p}:");
        for fm in flag_einstein_metrics::<f64>(&p) {
            let lambda = fm.lambda.unwrap();
            let (r1, r2, r3) = flag_ricci(&p, (fm.x1, fm.x2, fm.x3));
            let residual = (r1 - lambda)
                .abs()
                .max((r2 - lambda).abs())
                .max((r3 - lambda).abs());
            let (jac, sign) = jacobian_sign(&p, 0.0, fm.x1, fm.x2).unwrap();
            println!(
                "  ({:>9.6}, {:>9.6}, 1)  lambda = {:.6}  Ricci residual {:.1e}  J = {:+.4e} ({})",
                fm.x1,
                fm.x2,
                lambda,
                residual,
                jac,
                if sign > 0 { "+" } else { "-" },
            );
        }
    }
}
