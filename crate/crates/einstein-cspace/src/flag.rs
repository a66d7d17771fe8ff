//! The base flag manifold: closed-form Einstein metrics, the homotopy between
//! base and total space, and mapping-degree certificates.
//!
//! The three `t`-expressions of [`crate::ricci`] interpolate, via a parameter
//! `t` in `[0, 1]`, between the base-space Ricci components (`t = 0`) and the
//! total-space Einstein-constant expressions (`t = 1`). Normalising the triple
//! to the unit sphere and stereographically projecting away from the
//! diagonal direction turns "all three equal" into a planar root-finding
//! problem `f_t(x1, x2) = (0, 0)` whose Brouwer degree over a box is `-2`;
//! the degree is certified numerically by locating every root, checking its
//! Jacobian sign and sampling the box boundary.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::newton;
use crate::num::Real;
use crate::ricci::{flag_ricci, q_terms};
use crate::space::SpaceParams;

/// A diagonal metric on the base flag manifold, with its Einstein constant
/// when known.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FlagMetric<R> {
    pub x1: R,
    pub x2: R,
    pub x3: R,
    pub lambda: Option<R>,
}

/// The four Einstein metrics of the base space, normalised to `x3 = 1`.
///
/// The second and third share the Einstein constant `(m+n)/(2N)`; the fourth
/// has `(2l+m+n)/(2N)`; the first carries the long quadratic expression.
pub fn flag_einstein_metrics<R: Real>(p: &SpaceParams) -> [FlagMetric<R>; 4] {
    let (l, m, n) = p.lmn::<R>();
    let nn = p.total_r::<R>();
    let two = R::of(2.0);
    let lam1 = (m * l * l + n * l * l + m * m * l + n * n * l
        + R::of(4.0) * m * n * l
        + m * n * n
        + m * m * n)
        / (two * (l + m) * (l + n) * nn);
    let lam23 = (m + n) / (two * nn);
    let lam4 = (two * l + m + n) / (two * nn);
    let mn = m + n;
    [
        FlagMetric {
            x1: (l + m) / mn,
            x2: (l + n) / mn,
            x3: R::one(),
            lambda: Some(lam1),
        },
        FlagMetric {
            x1: (l + m) / mn,
            x2: (l + two * m + n) / mn,
            x3: R::one(),
            lambda: Some(lam23),
        },
        FlagMetric {
            x1: (l + m + two * n) / mn,
            x2: (l + n) / mn,
            x3: R::one(),
            lambda: Some(lam23),
        },
        FlagMetric {
            x1: (l + m) / (two * l + m + n),
            x2: (l + n) / (two * l + m + n),
            x3: R::one(),
            lambda: Some(lam4),
        },
    ]
}

/// The interpolated triple `T_i(t, x) = flag_ricci_i(x) / (1 + t q_i(x))`.
pub fn homotopy_t<R: Real>(p: &SpaceParams, t: R, x: (R, R, R)) -> (R, R, R) {
    let (r1, r2, r3) = flag_ricci(p, x);
    let (q1, q2, q3) = q_terms(p, x);
    let one = R::one();
    (
        r1 / (one + t * q1),
        r2 / (one + t * q2),
        r3 / (one + t * q3),
    )
}

/// Unit-sphere normalisation of the interpolated triple.
pub fn sphere_map<R: Real>(p: &SpaceParams, t: R, x: (R, R, R)) -> [R; 3] {
    let (t1, t2, t3) = homotopy_t(p, t, x);
    let norm = (t1 * t1 + t2 * t2 + t3 * t3).sqrt();
    [t1 / norm, t2 / norm, t3 / norm]
}

/// Rows of the rotation sending the diagonal direction `(1,1,1)/sqrt(3)` to
/// `(0, 0, 1)`; orthogonal with determinant one.
pub fn rotation_rows<R: Real>() -> [[R; 3]; 3] {
    let s2 = R::of(2.0).sqrt();
    let s3 = R::of(3.0).sqrt();
    let s6 = R::of(6.0).sqrt();
    let o = R::one();
    [
        [o / s2, -o / s2, R::zero()],
        [o / s6, o / s6, -R::of(2.0) / s6],
        [o / s3, o / s3, o / s3],
    ]
}

/// The planar map whose zeros are the Einstein metrics: rotate the sphere
/// image so the diagonal goes to the north pole, then project
/// stereographically from the south pole.
pub fn f_t_map<R: Real>(p: &SpaceParams, t: R, x1: R, x2: R) -> Result<(R, R), Error> {
    let f = sphere_map(p, t, (x1, x2, R::one()));
    let rot = rotation_rows::<R>();
    let mut y = [R::zero(); 3];
    for (i, row) in rot.iter().enumerate() {
        y[i] = row[0] * f[0] + row[1] * f[1] + row[2] * f[2];
    }
    let denom = R::one() + y[2];
    // The south pole is the antidiagonal -(1,1,1)/sqrt(3), which would force
    // all three interpolants negative; positive-Ricci inputs cannot reach it.
    if !(denom > R::of(1e-9)) {
        return Err(Error::ProjectionPole);
    }
    Ok((y[0] / denom, y[1] / denom))
}

/// Central-difference Jacobian determinant of `f_t` at `(x1, x2)` and its
/// sign. `Err(SingularRoot)` when the determinant is below `1e-9` in
/// magnitude, e.g. at the isolated singular root of the equal-parameter
/// space at `t = 1`.
pub fn jacobian_sign<R: Real>(
    p: &SpaceParams,
    t: R,
    x1: R,
    x2: R,
) -> Result<(f64, i8), Error> {
    let jac = jacobian_det(p, t, x1, x2)?;
    if jac.abs() < 1e-9 {
        return Err(Error::SingularRoot {
            x1: x1.lo(),
            x2: x2.lo(),
            jacobian: jac,
        });
    }
    Ok((jac, if jac > 0.0 { 1 } else { -1 }))
}

fn jacobian_det<R: Real>(p: &SpaceParams, t: R, x1: R, x2: R) -> Result<f64, Error> {
    let scale1 = x1.abs().maximum(R::one());
    let scale2 = x2.abs().maximum(R::one());
    // step 1e-6 * scale in double, narrower when the type has more digits
    let step = if R::eps() < 1e-20 { 1e-11 } else { 1e-6 };
    let h1 = R::of(step) * scale1;
    let h2 = R::of(step) * scale2;
    let fpp = f_t_map(p, t, x1 + h1, x2)?;
    let fpm = f_t_map(p, t, x1 - h1, x2)?;
    let fqp = f_t_map(p, t, x1, x2 + h2)?;
    let fqm = f_t_map(p, t, x1, x2 - h2)?;
    let two = R::of(2.0);
    let a = (fpp.0 - fpm.0) / (two * h1);
    let c = (fpp.1 - fpm.1) / (two * h1);
    let b = (fqp.0 - fqm.0) / (two * h2);
    let d = (fqp.1 - fqm.1) / (two * h2);
    Ok((a * d - b * c).lo())
}

/// A root of `f_t` inside a degree box, with its Jacobian data. `sign` is
/// absent when the root is singular.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DegreeRoot {
    pub x1: f64,
    pub x2: f64,
    pub jacobian: f64,
    pub sign: Option<i8>,
}

/// Numerical certificate for the mapping degree of `f_t` over a box.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DegreeCertificate {
    pub t: f64,
    pub box_eps: f64,
    pub box_l: f64,
    pub roots: Vec<DegreeRoot>,
    /// Sum of root signs; absent when a singular root leaves the degree
    /// unverified.
    pub degree: Option<i64>,
    /// Smallest boundary sample of `|f_t|`, witnessing that no root sits on
    /// the box edge.
    pub boundary_min: f64,
    pub expansions: u32,
}

/// Safety floor for the boundary samples of `|f_t|`.
const BOUNDARY_SAFETY: f64 = 1e-4;
/// Roots closer than this relative margin to a box edge trigger expansion.
const EDGE_MARGIN: f64 = 0.05;

/// Certify the mapping degree of `f_t` over `[eps, l]^2`.
///
/// The box auto-expands by a factor of two (up to four times) whenever a root
/// lands near the edge or a boundary sample of `|f_t|` dips below the safety
/// floor. Every located root must re-converge from eight surrounding
/// perturbations before it is counted.
pub fn mapping_degree(
    p: &SpaceParams,
    t: f64,
    box_: (f64, f64),
) -> Result<DegreeCertificate, Error> {
    let (mut eps, mut l) = box_;
    if !(eps > 0.0 && l > eps) {
        return Err(Error::InvalidMetric(format!(
            "degree box must satisfy 0 < eps < L, got ({eps}, {l})"
        )));
    }
    let mut expansions = 0u32;
    loop {
        match try_degree(p, t, eps, l, expansions) {
            Ok(cert) => return Ok(cert),
            Err(RetryOrFail::Retry) if expansions < 4 => {
                eps /= 2.0;
                l *= 2.0;
                expansions += 1;
            }
            Err(RetryOrFail::Retry) => {
                return Err(Error::BoundaryRootSuspected(boundary_min(p, t, eps, l)))
            }
            Err(RetryOrFail::Fail(e)) => return Err(e),
        }
    }
}

enum RetryOrFail {
    Retry,
    Fail(Error),
}

fn boundary_min(p: &SpaceParams, t: f64, eps: f64, l: f64) -> f64 {
    let samples = 400usize;
    let mut min = f64::INFINITY;
    for i in 0..=samples {
        // log-spaced sweep along each of the four sides
        let u = eps * (l / eps).powf(i as f64 / samples as f64);
        for (a, b) in [(eps, u), (l, u), (u, eps), (u, l)] {
            if let Ok((f1, f2)) = f_t_map(p, t, a, b) {
                min = min.min(f1.hypot(f2));
            }
        }
    }
    min
}

fn try_degree(
    p: &SpaceParams,
    t: f64,
    eps: f64,
    l: f64,
    expansions: u32,
) -> Result<DegreeCertificate, RetryOrFail> {
    let bmin = boundary_min(p, t, eps, l);
    if bmin < BOUNDARY_SAFETY {
        return Err(RetryOrFail::Retry);
    }

    let roots = crate::solver::roots_in_box(p, t, (eps, l), 40).map_err(RetryOrFail::Fail)?;
    for &(x1, x2) in &roots {
        let near_edge = x1 < eps * (1.0 + EDGE_MARGIN)
            || x2 < eps * (1.0 + EDGE_MARGIN)
            || x1 > l * (1.0 - EDGE_MARGIN)
            || x2 > l * (1.0 - EDGE_MARGIN);
        if near_edge {
            return Err(RetryOrFail::Retry);
        }
    }

    let mut out = Vec::with_capacity(roots.len());
    let mut verified = true;
    for &(x1, x2) in &roots {
        // basin check: eight perturbed starts must come back to this root.
        // Nearly singular roots are only pinned to ~sqrt of the Newton
        // tolerance, hence the loose radius.
        for k in 0..8 {
            let ang = k as f64 * std::f64::consts::FRAC_PI_4;
            let start = (x1 * (1.0 + 0.02 * ang.cos()), x2 * (1.0 + 0.02 * ang.sin()));
            let back = newton::newton2(
                |y: (f64, f64)| crate::solver::reduced_system_at(p, t, y.0, y.1),
                start,
                1e-12,
                200,
            )
            .map_err(RetryOrFail::Fail)?;
            let dist = ((back.0 .0 - x1) / x1).abs().max(((back.0 .1 - x2) / x2).abs());
            if dist > 1e-3 {
                return Err(RetryOrFail::Fail(Error::NoConvergence {
                    iters: 200,
                    residual: dist,
                }));
            }
        }
        match jacobian_sign(p, t, x1, x2) {
            Ok((jac, sign)) => out.push(DegreeRoot {
                x1,
                x2,
                jacobian: jac,
                sign: Some(sign),
            }),
            Err(Error::SingularRoot { jacobian, .. }) => {
                verified = false;
                out.push(DegreeRoot {
                    x1,
                    x2,
                    jacobian,
                    sign: None,
                });
            }
            Err(e) => return Err(RetryOrFail::Fail(e)),
        }
    }

    let degree = if verified {
        Some(out.iter().map(|r| r.sign.unwrap() as i64).sum())
    } else {
        None
    };
    Ok(DegreeCertificate {
        t,
        box_eps: eps,
        box_l: l,
        roots: out,
        degree,
        boundary_min: bmin,
        expansions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ricci::t_polys;
    use rand::{Rng, SeedableRng};

    fn p(l: u32, m: u32, n: u32) -> SpaceParams {
        SpaceParams::new(l, m, n).unwrap()
    }

    #[test]
    fn closed_forms_are_einstein() {
        for l in 1..=4u32 {
            for m in 1..=4u32 {
                for n in 1..=4u32 {
                    let s = p(l, m, n);
                    for fm in flag_einstein_metrics::<f64>(&s) {
                        let (r1, r2, r3) = flag_ricci(&s, (fm.x1, fm.x2, fm.x3));
                        let lam = fm.lambda.unwrap();
                        assert!((r1 - lam).abs() < 1e-13, "{s} {fm:?} r1={r1}");
                        assert!((r2 - lam).abs() < 1e-13);
                        assert!((r3 - lam).abs() < 1e-13);
                    }
                }
            }
        }
    }

    #[test]
    fn closed_forms_at_equal_split() {
        let mets = flag_einstein_metrics::<f64>(&p(1, 1, 1));
        let xs: Vec<(f64, f64)> = mets.iter().map(|f| (f.x1, f.x2)).collect();
        assert_eq!(xs, vec![(1.0, 1.0), (1.0, 2.0), (2.0, 1.0), (0.5, 0.5)]);
        // the second and third share lambda = (m+n)/(2N) = 1/3
        assert!((mets[1].lambda.unwrap() - 1.0 / 3.0).abs() < 1e-15);
        assert!((mets[2].lambda.unwrap() - 1.0 / 3.0).abs() < 1e-15);
        assert!((mets[3].lambda.unwrap() - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn homotopy_endpoints() {
        let s = p(1, 2, 3);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        for _ in 0..50 {
            let x = (
                rng.gen_range(0.1..10.0),
                rng.gen_range(0.1..10.0),
                rng.gen_range(0.1..10.0),
            );
            let (a1, a2, a3) = homotopy_t(&s, 0.0, x);
            let (f1, f2, f3) = flag_ricci(&s, x);
            assert!((a1 - f1).abs() < 1e-14 && (a2 - f2).abs() < 1e-14 && (a3 - f3).abs() < 1e-14);
            let (b1, b2, b3) = homotopy_t(&s, 1.0, x);
            let (t1, t2, t3) = t_polys(&s, x);
            assert!((b1 - t1).abs() < 1e-14 && (b2 - t2).abs() < 1e-14 && (b3 - t3).abs() < 1e-14);
            // never the zero vector
            assert!(a1.abs() + a2.abs() + a3.abs() > 0.0);
            let t = rng.gen_range(0.0..1.0);
            let (c1, c2, c3) = homotopy_t(&s, t, x);
            assert!(c1.abs() + c2.abs() + c3.abs() > 0.0);
        }
    }

    #[test]
    fn sphere_map_is_unit_and_rotation_orthogonal() {
        let s = p(2, 3, 4);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(29);
        for _ in 0..100 {
            let x = (
                rng.gen_range(0.1..10.0),
                rng.gen_range(0.1..10.0),
                rng.gen_range(0.1..10.0),
            );
            let t = rng.gen_range(0.0..1.0);
            let f = sphere_map(&s, t, x);
            let norm: f64 = f.iter().map(|v| v * v).sum();
            assert!((norm - 1.0).abs() < 1e-14);
        }
        let r = rotation_rows::<f64>();
        // R * R^T = I
        for i in 0..3 {
            for j in 0..3 {
                let dot: f64 = (0..3).map(|k| r[i][k] * r[j][k]).sum();
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((dot - expect).abs() < 1e-15);
            }
        }
        // det = +1
        let det = r[0][0] * (r[1][1] * r[2][2] - r[1][2] * r[2][1])
            - r[0][1] * (r[1][0] * r[2][2] - r[1][2] * r[2][0])
            + r[0][2] * (r[1][0] * r[2][1] - r[1][1] * r[2][0]);
        assert!((det - 1.0).abs() < 1e-15);
        // p0 goes to the north pole
        let inv3 = 1.0 / 3.0f64.sqrt();
        let image: Vec<f64> = (0..3)
            .map(|i| r[i][0] * inv3 + r[i][1] * inv3 + r[i][2] * inv3)
            .collect();
        assert!(image[0].abs() < 1e-15 && image[1].abs() < 1e-15 && (image[2] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn zeros_of_f_at_endpoints() {
        let s = p(1, 2, 3);
        for fm in flag_einstein_metrics::<f64>(&s) {
            let (u, v) = f_t_map(&s, 0.0, fm.x1, fm.x2).unwrap();
            assert!(u.abs() < 1e-12 && v.abs() < 1e-12);
        }
        // full symmetry pins the equal-split root at (1, 1) for t = 1
        let s = p(3, 3, 3);
        let (u, v) = f_t_map(&s, 1.0, 1.0, 1.0).unwrap();
        assert!(u.abs() < 1e-14 && v.abs() < 1e-14);
        // a non-Einstein point maps away from the origin
        let s = p(1, 2, 3);
        let (u, v) = f_t_map(&s, 0.0, 5.0, 0.2).unwrap();
        assert!(u.abs() + v.abs() > 1e-2);
    }

    #[test]
    fn jacobian_examples() {
        // equal split, first root: J = 8 / (600 sqrt(3)), positive
        let s = p(1, 1, 1);
        let (jac, sign) = jacobian_sign(&s, 0.0, 1.0, 1.0).unwrap();
        assert_eq!(sign, 1);
        assert!((jac - 8.0 / (600.0 * 3.0f64.sqrt())).abs() < 1e-9, "{jac}");

        // second closed form carries a negative sign
        for (l, m, n) in [(1, 1, 1), (1, 2, 3), (2, 2, 3)] {
            let s = p(l, m, n);
            let mets = flag_einstein_metrics::<f64>(&s);
            let (_, sign) = jacobian_sign(&s, 0.0, mets[1].x1, mets[1].x2).unwrap();
            assert_eq!(sign, -1);
            let signs: Vec<i8> = mets
                .iter()
                .map(|fm| jacobian_sign(&s, 0.0, fm.x1, fm.x2).unwrap().1)
                .collect();
            assert_eq!(signs, vec![1, -1, -1, -1]);
        }
    }

    #[test]
    fn singular_root_at_equal_split_t1() {
        let s = p(1, 1, 1);
        match jacobian_sign(&s, 1.0, 1.0, 1.0) {
            Err(Error::SingularRoot { .. }) => {}
            other => panic!("expected singular root, got {other:?}"),
        }
    }

    #[test]
    fn degree_certificates() {
        let s = p(1, 2, 3);
        let cert = mapping_degree(&s, 0.0, (0.05, 10.0)).unwrap();
        assert_eq!(cert.degree, Some(-2));
        assert_eq!(cert.roots.len(), 4);

        let cert = mapping_degree(&s, 1.0, (0.05, 10.0)).unwrap();
        assert_eq!(cert.degree, Some(-2));
        assert_eq!(cert.roots.len(), 2);
    }

    #[test]
    fn degree_invariance_along_homotopy() {
        let s = p(2, 2, 3);
        for t in [0.0, 0.25, 0.5, 0.75, 1.0] {
            let cert = mapping_degree(&s, t, (0.05, 10.0)).unwrap();
            assert_eq!(cert.degree, Some(-2), "t = {t}");
        }
    }

    #[test]
    fn degree_reports_singular_equal_split() {
        let s = p(1, 1, 1);
        let cert = mapping_degree(&s, 1.0, (0.05, 10.0)).unwrap();
        assert_eq!(cert.degree, None);
        assert_eq!(cert.roots.len(), 1);
        let r = &cert.roots[0];
        // the singular root cannot be pinned more tightly in double precision
        assert!((r.x1 - 1.0).abs() < 1e-3 && (r.x2 - 1.0).abs() < 1e-3);
        assert!(r.sign.is_none());
    }
}
