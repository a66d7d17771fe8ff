//! Damped Newton iteration for planar systems with finite-difference
//! Jacobians, shared by the solver and the degree certification.

use crate::error::Error;
use crate::num::Real;

/// Central-difference Jacobian of a planar map, using a relative step
/// suited to the scalar type.
pub(crate) fn fd_jacobian<R: Real, F>(f: &F, x: (R, R)) -> Result<[[R; 2]; 2], Error>
where
    F: Fn((R, R)) -> (R, R),
{
    let base = if R::eps() < 1e-20 { 3e-11 } else { 6e-6 };
    let h1 = R::of(base) * x.0.abs().maximum(R::one());
    let h2 = R::of(base) * x.1.abs().maximum(R::one());
    let two = R::of(2.0);
    let fp1 = f((x.0 + h1, x.1));
    let fm1 = f((x.0 - h1, x.1));
    let fp2 = f((x.0, x.1 + h2));
    let fm2 = f((x.0, x.1 - h2));
    let j = [
        [(fp1.0 - fm1.0) / (two * h1), (fp2.0 - fm2.0) / (two * h2)],
        [(fp1.1 - fm1.1) / (two * h1), (fp2.1 - fm2.1) / (two * h2)],
    ];
    for row in &j {
        for v in row {
            if !v.is_finite() {
                return Err(Error::NoConvergence {
                    iters: 0,
                    residual: f64::NAN,
                });
            }
        }
    }
    Ok(j)
}

pub(crate) fn det2<R: Real>(j: &[[R; 2]; 2]) -> R {
    j[0][0] * j[1][1] - j[0][1] * j[1][0]
}

/// Singular values of a 2x2 matrix, largest first, via the
/// cancellation-free split `s1,2 = (q1 +/- q2) / 2`.
pub(crate) fn singular_values2<R: Real>(j: &[[R; 2]; 2]) -> (f64, f64) {
    let a = j[0][0].lo();
    let b = j[0][1].lo();
    let c = j[1][0].lo();
    let d = j[1][1].lo();
    let q1 = (a + d).hypot(b - c);
    let q2 = (a - d).hypot(b + c);
    ((q1 + q2) / 2.0, (q1 - q2).abs() / 2.0)
}

/// Newton iteration on `f(x) = 0` constrained to the positive quadrant.
///
/// Returns the iterate together with the max-abs residual reached. Steps are
/// halved while they would leave the quadrant; the iteration fails with
/// [`Error::LeftPositiveOrthant`] once the damping underflows, and with
/// [`Error::NoConvergence`] when the budget runs out.
pub(crate) fn newton2<R: Real, F>(
    f: F,
    start: (R, R),
    tol: f64,
    max_iters: usize,
) -> Result<((R, R), f64), Error>
where
    F: Fn((R, R)) -> (R, R),
{
    let mut x = start;
    if !(x.0 > R::zero() && x.1 > R::zero()) {
        return Err(Error::LeftPositiveOrthant);
    }
    let mut residual = f64::INFINITY;
    for _ in 0..max_iters {
        let fx = f(x);
        residual = fx.0.abs().maximum(fx.1.abs()).lo();
        if !residual.is_finite() {
            return Err(Error::NoConvergence {
                iters: max_iters,
                residual,
            });
        }
        if residual < tol {
            return Ok((x, residual));
        }
        let j = fd_jacobian(&f, x)?;
        let det = det2(&j);
        if det.abs().lo() == 0.0 {
            return Err(Error::NoConvergence {
                iters: max_iters,
                residual,
            });
        }
        let dx0 = -(fx.0 * j[1][1] - fx.1 * j[0][1]) / det;
        let dx1 = -(fx.1 * j[0][0] - fx.0 * j[1][0]) / det;
        // damp the step until it stays strictly positive
        let mut lam = R::one();
        let mut next = (x.0 + dx0, x.1 + dx1);
        let mut halvings = 0;
        while !(next.0 > R::zero() && next.1 > R::zero()) {
            lam = lam * R::of(0.5);
            halvings += 1;
            if halvings > 60 {
                return Err(Error::LeftPositiveOrthant);
            }
            next = (x.0 + lam * dx0, x.1 + lam * dx1);
        }
        x = next;
    }
    // accept late convergence at the boundary of the budget
    let fx = f(x);
    let last = fx.0.abs().maximum(fx.1.abs()).lo();
    if last < tol {
        return Ok((x, last));
    }
    Err(Error::NoConvergence {
        iters: max_iters,
        residual: residual.min(last),
    })
}

/// Keep taking Newton steps past the residual tolerance until the residual
/// stops improving, returning the best iterate seen. At a degenerate root
/// the residual scales like a high power of the distance, so the plain
/// tolerance stop leaves the iterate far out; stagnation polishing recovers
/// most of the lost digits.
pub(crate) fn polish_to_stagnation<R: Real, F>(
    f: &F,
    start: (R, R),
    max_iters: usize,
) -> ((R, R), f64)
where
    F: Fn((R, R)) -> (R, R),
{
    let mut x = start;
    let eval = |y: (R, R)| {
        let fy = f(y);
        fy.0.abs().maximum(fy.1.abs()).lo()
    };
    let mut best = start;
    let mut best_res = eval(start);
    let mut stale = 0usize;
    for _ in 0..max_iters {
        let fx = f(x);
        let Ok(j) = fd_jacobian(&f, x) else { break };
        let det = det2(&j);
        if det.abs().lo() == 0.0 {
            break;
        }
        let dx0 = -(fx.0 * j[1][1] - fx.1 * j[0][1]) / det;
        let dx1 = -(fx.1 * j[0][0] - fx.0 * j[1][0]) / det;
        let next = (x.0 + dx0, x.1 + dx1);
        if !(next.0 > R::zero() && next.1 > R::zero()) {
            break;
        }
        x = next;
        let res = eval(x);
        if res < best_res {
            best = x;
            best_res = res;
            stale = 0;
        } else {
            stale += 1;
            if stale >= 4 {
                break;
            }
        }
    }
    (best, best_res)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solves_a_planar_system() {
        // x^2 + y^2 = 5, x y = 2 has the root (2, 1)
        let f = |(x, y): (f64, f64)| (x * x + y * y - 5.0, x * y - 2.0);
        let ((x, y), r) = newton2(f, (1.7, 1.3), 1e-13, 50).unwrap();
        assert!(r < 1e-13);
        assert!((x - 2.0).abs() < 1e-10 && (y - 1.0).abs() < 1e-10);
    }

    #[test]
    fn stays_positive() {
        // the root (-1, -1) is unreachable from the positive quadrant
        let f = |(x, y): (f64, f64)| (x + 1.0, y + 1.0);
        assert!(newton2(f, (0.5, 0.5), 1e-12, 50).is_err());
    }

    #[test]
    fn fixed_point_converges_immediately() {
        let f = |(x, y): (f64, f64)| (x - 2.0, y - 3.0);
        let ((x, y), r) = newton2(f, (2.0, 3.0), 1e-14, 5).unwrap();
        assert_eq!((x, y), (2.0, 3.0));
        assert_eq!(r, 0.0);
    }

    #[test]
    fn singular_values_of_diagonal_matrices() {
        let j = [[1.0, 0.0], [0.0, 1.0]];
        assert_eq!(singular_values2(&j), (1.0, 1.0));
        // no cancellation even across nine orders of magnitude
        let j = [[1000.0, 0.0], [0.0, 0.001]];
        let (s1, s2) = singular_values2(&j);
        assert!((s1 - 1000.0).abs() < 1e-9 && (s2 - 0.001).abs() < 1e-12);
    }
}
