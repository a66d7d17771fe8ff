//! Ricci tensor of the six-parameter metric and the homogeneous Einstein
//! system.
//!
//! The Einstein condition `Ric = lambda g` reduces to six scalar equations:
//! five diagonal components equal to `lambda` plus the vanishing of the mixed
//! fiber component `r0`. The system is affine in `(v4, v5)`, which lets the
//! fiber eigenvalues be eliminated through [`v4_of`] / [`v5_of`], and `r0 = 0`
//! determines the shear `c` through [`crate::space::c_from_x`]. What remains
//! is a two-variable rational system in `(x1, x2)` after the `x3 = 1`
//! normalisation; [`t_polys`] gives the three expressions whose common value
//! at a solution is the Einstein constant.

use serde::{Deserialize, Serialize};

use crate::num::Real;
use crate::space::{metric_structure_constants, InvariantMetric, SpaceParams};

/// All Ricci components of an invariant metric: diagonal `r1..r5` plus the
/// mixed fiber term `r0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RicciComponents<R> {
    pub r1: R,
    pub r2: R,
    pub r3: R,
    pub r4: R,
    pub r5: R,
    pub r0: R,
}

/// Componentwise residual of the Einstein system at a given `lambda`.
/// `norm` is the max-abs over all six entries.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EinsteinResidual {
    pub e1: f64,
    pub e2: f64,
    pub e3: f64,
    pub e4: f64,
    pub e5: f64,
    pub e0: f64,
    pub norm: f64,
}

/// Fiber components `(r4, r5, r0)` for an arbitrary shear `c`.
pub fn ricci_abelian<R: Real>(p: &SpaceParams, g: &InvariantMetric<R>) -> (R, R, R) {
    let (l, m, n) = p.lmn::<R>();
    let nn = p.total_r::<R>();
    let quarter = R::of(0.25);
    let t = metric_structure_constants(p, g);
    let x2sq = g.x2 * g.x2;
    let x3sq = g.x3 * g.x3;
    let r4 = g.v4 * quarter * (t.get(4, 2, 2) / x2sq + t.get(4, 3, 3) / x3sq);
    let r5 = g.v5
        * quarter
        * (t.get(5, 1, 1) / (g.x1 * g.x1) + t.get(5, 2, 2) / x2sq + t.get(5, 3, 3) / x3sq);
    let root = (l * m * n / nn).sqrt();
    let lm = l + m;
    let r0 = (g.v4 * g.v5).sqrt()
        * quarter
        * ((l * g.c + root) / (x2sq * lm) + (m * g.c - root) / (x3sq * lm));
    (r4, r5, r0)
}

/// Diagonal components `(r1, r2, r3)` for an arbitrary shear `c`.
pub fn ricci_diagonal<R: Real>(p: &SpaceParams, g: &InvariantMetric<R>) -> (R, R, R) {
    let (l, m, n) = p.lmn::<R>();
    let nn = p.total_r::<R>();
    let lm = l + m;
    let half = R::of(0.5);
    let quarter = R::of(0.25);
    let two = R::of(2.0);
    let (x1, x2, x3) = (g.x1, g.x2, g.x3);
    let (s1, s2, s3) = (x1 * x1, x2 * x2, x3 * x3);
    let prod = x1 * x2 * x3;
    let root = (l * m * n).sqrt() * nn.sqrt();

    let r1 = half / x1 + quarter * n / nn * (s1 - s2 - s3) / prod
        - lm / (R::of(4.0) * l * m * nn) * g.v5 / s1;
    let r2 = half / x2 + quarter * m / nn * (s2 - s1 - s3) / prod
        - (l * nn * g.v4 + (g.c * g.c * l * nn + m * n + two * g.c * root) * g.v5)
            / (R::of(4.0) * l * n * nn * lm * s2);
    let r3 = half / x3 + quarter * l / nn * (s3 - s1 - s2) / prod
        - (m * nn * g.v4 + (g.c * g.c * m * nn + l * n - two * g.c * root) * g.v5)
            / (R::of(4.0) * m * n * nn * lm * s3);
    (r1, r2, r3)
}

pub fn ricci<R: Real>(p: &SpaceParams, g: &InvariantMetric<R>) -> RicciComponents<R> {
    let (r1, r2, r3) = ricci_diagonal(p, g);
    let (r4, r5, r0) = ricci_abelian(p, g);
    RicciComponents { r1, r2, r3, r4, r5, r0 }
}

/// Residual of the full six-equation system at `lambda`.
pub fn einstein_residual<R: Real>(
    p: &SpaceParams,
    g: &InvariantMetric<R>,
    lambda: R,
) -> EinsteinResidual {
    let r = ricci(p, g);
    let e = [
        (r.r1 - lambda).lo(),
        (r.r2 - lambda).lo(),
        (r.r3 - lambda).lo(),
        (r.r4 - lambda).lo(),
        (r.r5 - lambda).lo(),
        r.r0.lo(),
    ];
    let norm = e.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
    EinsteinResidual {
        e1: e[0],
        e2: e[1],
        e3: e[2],
        e4: e[3],
        e5: e[4],
        e0: e[5],
        norm,
    }
}

/// The fiber eigenvalue forced by `r4 = lambda`:
/// `v4 = 4 lambda (l+m) x2^2 x3^2 / (l x3^2 + m x2^2)`.
pub fn v4_of<R: Real>(p: &SpaceParams, x: (R, R, R), lambda: R) -> R {
    let (l, m, _) = p.lmn::<R>();
    let (_, x2, x3) = x;
    let (s2, s3) = (x2 * x2, x3 * x3);
    R::of(4.0) * lambda * (l + m) * s2 * s3 / (l * s3 + m * s2)
}

/// The fiber eigenvalue forced by `r5 = lambda`:
/// `v5 = 4 lambda N x1^2 (l x3^2 + m x2^2) / ((l+m)(n x1^2 + m x2^2 + l x3^2))`.
pub fn v5_of<R: Real>(p: &SpaceParams, x: (R, R, R), lambda: R) -> R {
    let (l, m, n) = p.lmn::<R>();
    let nn = p.total_r::<R>();
    let (x1, x2, x3) = x;
    let (s1, s2, s3) = (x1 * x1, x2 * x2, x3 * x3);
    R::of(4.0) * lambda * nn * s1 * (l * s3 + m * s2) / ((l + m) * (n * s1 + m * s2 + l * s3))
}

/// Ricci components of the diagonal base-space metric (the fiberless limit
/// `v4 = v5 = 0` of [`ricci_diagonal`]).
pub fn flag_ricci<R: Real>(p: &SpaceParams, x: (R, R, R)) -> (R, R, R) {
    let (l, m, n) = p.lmn::<R>();
    let nn = p.total_r::<R>();
    let half = R::of(0.5);
    let quarter = R::of(0.25);
    let (x1, x2, x3) = x;
    let (s1, s2, s3) = (x1 * x1, x2 * x2, x3 * x3);
    let prod = x1 * x2 * x3;
    (
        half / x1 + quarter * n / nn * (s1 - s2 - s3) / prod,
        half / x2 + quarter * m / nn * (s2 - s1 - s3) / prod,
        half / x3 + quarter * l / nn * (s3 - s1 - s2) / prod,
    )
}

/// Denominator corrections `(q1, q2, q3)` relating base-space and total-space
/// Ricci; each is strictly positive for positive `x`.
pub fn q_terms<R: Real>(p: &SpaceParams, x: (R, R, R)) -> (R, R, R) {
    let (l, m, n) = p.lmn::<R>();
    let (x1, x2, x3) = x;
    let (s1, s2, s3) = (x1 * x1, x2 * x2, x3 * x3);
    let s = n * s1 + m * s2 + l * s3;
    (
        (m * s2 + l * s3) / (l * m * s),
        (n * s1 + l * s3) / (l * n * s),
        (n * s1 + m * s2) / (m * n * s),
    )
}

/// The three rational expressions for the Einstein constant,
/// `t_i = flag_ricci_i / (1 + q_i)`; at an Einstein metric all three agree.
pub fn t_polys<R: Real>(p: &SpaceParams, x: (R, R, R)) -> (R, R, R) {
    let (r1, r2, r3) = flag_ricci(p, x);
    let (q1, q2, q3) = q_terms(p, x);
    let one = R::one();
    (r1 / (one + q1), r2 / (one + q2), r3 / (one + q3))
}

/// Complete a reduced-system point `(x1, x2)` (with `x3 = 1`) to a full
/// metric: `lambda` from the first `t`-expression, fiber eigenvalues from
/// the eliminations, shear from the mixed equation.
pub fn complete_metric<R: Real>(
    p: &SpaceParams,
    x1: R,
    x2: R,
) -> (InvariantMetric<R>, R) {
    let x = (x1, x2, R::one());
    let (t1, _, _) = t_polys(p, x);
    let lambda = t1;
    let v4 = v4_of(p, x, lambda);
    let v5 = v5_of(p, x, lambda);
    let c = crate::space::c_from_x(p, x2, R::one());
    (
        InvariantMetric { x1, x2, x3: R::one(), v4, v5, c },
        lambda,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::c_from_x;
    use rand::{Rng, SeedableRng};

    fn p(l: u32, m: u32, n: u32) -> SpaceParams {
        SpaceParams::new(l, m, n).unwrap()
    }

    fn ones(c: f64) -> InvariantMetric<f64> {
        InvariantMetric { x1: 1.0, x2: 1.0, x3: 1.0, v4: 1.0, v5: 1.0, c }
    }

    #[test]
    fn killing_metric_on_the_group_case() {
        // (1,1,1) with the all-ones metric is the bi-invariant metric: Ric = B/4.
        let s = p(1, 1, 1);
        let r = ricci(&s, &ones(0.0));
        for v in [r.r1, r.r2, r.r3, r.r4, r.r5] {
            assert!((v - 0.25).abs() < 1e-15);
        }
        assert!(r.r0.abs() < 1e-15);
        assert!(einstein_residual(&s, &ones(0.0), 0.25).norm < 1e-15);
    }

    #[test]
    fn equal_split_all_ones_fiber_components() {
        // For every (n,n,n) the all-ones metric keeps r4 = r5 = 1/4 and r0 = 0;
        // its diagonal components equal 1/4 only at n = 1.
        for n in 1..=6u32 {
            let s = p(n, n, n);
            let (r4, r5, r0) = ricci_abelian(&s, &ones(0.0));
            assert!((r4 - 0.25).abs() < 1e-15);
            assert!((r5 - 0.25).abs() < 1e-15);
            assert!(r0.abs() < 1e-15);
            let (r1, r2, r3) = ricci_diagonal(&s, &ones(0.0));
            let expect = 5.0 / 12.0 - 1.0 / (6.0 * n as f64 * n as f64);
            for v in [r1, r2, r3] {
                assert!((v - expect).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn abelian_at_123() {
        let s = p(1, 2, 3);
        let (r4, _, r0) = ricci_abelian(&s, &ones(0.0));
        // r4 = (1/4)(1/3 + 2/3), r0 = (1/4)[(0+1)/3 + (0-1)/3]
        assert!((r4 - 0.25).abs() < 1e-15);
        assert!(r0.abs() < 1e-15);
    }

    #[test]
    fn shear_elimination_kills_mixed_term() {
        // r0 vanishes up to rounding in the two cancelling bracket terms
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let s = p(2, 3, 5);
        let (l, m, n) = s.lmn::<f64>();
        let root = (l * m * n / s.total as f64).sqrt();
        for _ in 0..200 {
            let x2: f64 = rng.gen_range(0.1..10.0);
            let x3: f64 = rng.gen_range(0.1..10.0);
            let c = c_from_x(&s, x2, x3);
            let g = InvariantMetric {
                x1: rng.gen_range(0.1..10.0),
                x2,
                x3,
                v4: rng.gen_range(0.1..10.0),
                v5: rng.gen_range(0.1..10.0),
                c,
            };
            let (_, _, r0) = ricci_abelian(&s, &g);
            // bound by the rounding of every contribution, including the
            // sensitivity to the last ulp of c
            let scale = (g.v4 * g.v5).sqrt() / 4.0
                * ((l * c.abs() + root) / (x2 * x2 * (l + m))
                    + (m * c.abs() + root) / (x3 * x3 * (l + m)));
            assert!(r0.abs() <= 2e-14 * scale.max(1.0), "r0 = {r0}, scale = {scale}");
        }
    }

    #[test]
    fn residual_components_affine_in_fiber_eigenvalues() {
        // Second differences of e1..e5 in v4 and v5 vanish; r0 is excluded
        // since it scales like sqrt(v4 v5).
        let s = p(3, 4, 5);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let base = InvariantMetric {
                x1: rng.gen_range(0.2..5.0),
                x2: rng.gen_range(0.2..5.0),
                x3: rng.gen_range(0.2..5.0),
                v4: rng.gen_range(0.2..5.0),
                v5: rng.gen_range(0.2..5.0),
                c: rng.gen_range(-1.0..1.0),
            };
            let lambda = 0.4;
            let pick = |g: &InvariantMetric<f64>| {
                let r = einstein_residual(&s, g, lambda);
                [r.e1, r.e2, r.e3, r.e4, r.e5]
            };
            for dv in [0.25, 0.5] {
                let mut plus4 = base;
                plus4.v4 += dv;
                let mut minus4 = base;
                minus4.v4 -= dv * 0.5;
                // affine in v4: e(v4 + h) - e(v4) is linear in h
                let d1 = pick(&plus4);
                let d0 = pick(&base);
                let dm = pick(&minus4);
                for i in 0..5 {
                    let slope_a = (d1[i] - d0[i]) / dv;
                    let slope_b = (d0[i] - dm[i]) / (dv * 0.5);
                    assert!((slope_a - slope_b).abs() < 1e-12, "component {i}");
                }
                let mut plus5 = base;
                plus5.v5 += dv;
                let mut minus5 = base;
                minus5.v5 -= dv * 0.5;
                let d1 = pick(&plus5);
                let dm = pick(&minus5);
                for i in 0..5 {
                    let slope_a = (d1[i] - d0[i]) / dv;
                    let slope_b = (d0[i] - dm[i]) / (dv * 0.5);
                    assert!((slope_a - slope_b).abs() < 1e-12, "component {i}");
                }
            }
        }
    }

    #[test]
    fn diagonal_reduces_to_flag_ricci_without_fiber() {
        let s = p(2, 5, 3);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let x = (
                rng.gen_range(0.1..10.0),
                rng.gen_range(0.1..10.0),
                rng.gen_range(0.1..10.0),
            );
            let g = InvariantMetric {
                x1: x.0,
                x2: x.1,
                x3: x.2,
                // the closed forms are affine in (v4, v5); evaluate the limit
                // by plugging zero directly even though a metric needs v > 0
                v4: 0.0,
                v5: 0.0,
                c: rng.gen_range(-2.0..2.0),
            };
            let (r1, r2, r3) = ricci_diagonal(&s, &g);
            let (f1, f2, f3) = flag_ricci(&s, x);
            assert!((r1 - f1).abs() < 1e-12);
            assert!((r2 - f2).abs() < 1e-12);
            assert!((r3 - f3).abs() < 1e-12);
        }
    }

    #[test]
    fn table_row_solves_the_system() {
        // M(1,2,3): (0.472295, 1.19781, 1, 1.77808, 0.60798), lambda 0.399622
        let s = p(1, 2, 3);
        let c = c_from_x(&s, 1.19781, 1.0);
        let g = InvariantMetric {
            x1: 0.472295,
            x2: 1.19781,
            x3: 1.0,
            v4: 1.77808,
            v5: 0.60798,
            c,
        };
        let (r1, r2, r3) = ricci_diagonal(&s, &g);
        for v in [r1, r2, r3] {
            assert!((v - 0.399622).abs() < 1e-4, "{v}");
        }
        assert!(einstein_residual(&s, &g, 0.399622).norm < 1e-4);
    }

    #[test]
    fn residual_is_zero_at_its_own_component() {
        let s = p(2, 3, 4);
        let g = InvariantMetric {
            x1: 1.3,
            x2: 0.7,
            x3: 1.9,
            v4: 0.4,
            v5: 2.2,
            c: 0.3,
        };
        let (r1, _, _) = ricci_diagonal(&s, &g);
        let res = einstein_residual(&s, &g, r1);
        assert_eq!(res.e1, 0.0);
        assert!(res.norm >= res.e0.abs());
    }

    #[test]
    fn fiber_eliminations_at_simple_points() {
        let s = p(1, 1, 1);
        let x = (1.0, 1.0, 1.0);
        assert!((v4_of(&s, x, 0.25) - 1.0).abs() < 1e-15);
        assert!((v5_of(&s, x, 0.25) - 1.0).abs() < 1e-15);

        let s = p(1, 2, 3);
        let x = (0.472295, 1.19781, 1.0);
        assert!((v4_of(&s, x, 0.399622) - 1.77808).abs() < 1e-4);
        assert!((v5_of(&s, x, 0.399622) - 0.60798).abs() < 1e-4);
    }

    #[test]
    fn t_polys_values_and_homogeneity() {
        // equal split at the all-ones point: t = 5 n^2 / (12 n^2 + 8)
        for n in 1..=5u32 {
            let s = p(n, n, n);
            let (t1, t2, t3) = t_polys(&s, (1.0, 1.0, 1.0));
            let expect = 5.0 * (n * n) as f64 / (12.0 * (n * n) as f64 + 8.0);
            for v in [t1, t2, t3] {
                assert!((v - expect).abs() < 1e-14);
            }
        }

        let s = p(1, 2, 3);
        let (t1, t2, t3) = t_polys(&s, (0.472295, 1.19781, 1.0));
        for v in [t1, t2, t3] {
            assert!((v - 0.399622).abs() < 1e-4);
        }

        // degree -1 homogeneity: t(mu x) = t(x) / mu
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        for _ in 0..100 {
            let x = (
                rng.gen_range(0.1..10.0),
                rng.gen_range(0.1..10.0),
                rng.gen_range(0.1..10.0),
            );
            let mu = rng.gen_range(0.5..4.0);
            let (a1, a2, a3) = t_polys(&s, x);
            let (b1, b2, b3) = t_polys(&s, (mu * x.0, mu * x.1, mu * x.2));
            assert!((b1 - a1 / mu).abs() < 1e-12);
            assert!((b2 - a2 / mu).abs() < 1e-12);
            assert!((b3 - a3 / mu).abs() < 1e-12);
        }
    }

    #[test]
    fn q_terms_stay_positive() {
        let s = p(4, 1, 7);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..500 {
            let x = (
                rng.gen_range(1e-3..1e3),
                rng.gen_range(1e-3..1e3),
                rng.gen_range(1e-3..1e3),
            );
            let (q1, q2, q3) = q_terms(&s, x);
            assert!(q1 > 0.0 && q2 > 0.0 && q3 > 0.0);
        }
    }

    #[test]
    fn self_consistency_of_completion() {
        // If t1 = t2 = t3 at x, completing the metric yields a tiny residual.
        let s = p(1, 2, 3);
        let sol = crate::solver::refine(&s, (0.472295, 1.19781), crate::num::Precision::Double)
            .unwrap();
        let (g, lambda) = complete_metric(&s, sol.metric.x1, sol.metric.x2);
        let res = einstein_residual(&s, &g, lambda);
        assert!(res.norm < 1e-10, "norm = {}", res.norm);
    }

    #[test]
    fn scale_covariance() {
        // If g solves at lambda then mu g solves at lambda / mu.
        let s = p(1, 2, 3);
        let sol = crate::solver::refine(&s, (0.472295, 1.19781), crate::num::Precision::Double)
            .unwrap();
        let (g, lambda) = complete_metric(&s, sol.metric.x1, sol.metric.x2);
        let scaled = g.scaled(2.0);
        let res = einstein_residual(&s, &scaled, lambda / 2.0);
        assert!(res.norm < 1e-10, "norm = {}", res.norm);
    }
}
