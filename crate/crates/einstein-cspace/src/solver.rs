//! Finding every Einstein solution: homotopy continuation from the base-space
//! metrics, multistart Newton over a log-uniform grid, and the closed-form
//! polynomial branches available when parameters coincide.
//!
//! All routes reduce to the two-variable system `T1 = T2 = T3` at `x3 = 1`;
//! a located root is completed to a full metric through
//! [`crate::ricci::complete_metric`] and certified by back-substituting into
//! the six-equation system.

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::flag::flag_einstein_metrics;
use crate::isometry;
use crate::newton::{det2, fd_jacobian, newton2};
use crate::num::{Precision, Real};
use crate::ricci::{complete_metric, einstein_residual, EinsteinResidual};
use crate::space::{InvariantMetric, SpaceParams};

/// How a solution was found.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Continuation,
    Multistart,
    CubicClosedForm,
    PairClosedForm,
}

/// A verified Einstein metric in the `x3 = 1` normalisation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EinsteinSolution {
    pub metric: InvariantMetric<f64>,
    pub lambda: f64,
    pub residual: EinsteinResidual,
    pub method: Method,
    /// Spectral condition estimate of the reduced Jacobian at the root.
    pub condition: f64,
}

/// A continuation path that could not be tracked to `t = 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LostPath {
    pub start: (f64, f64),
    pub t: f64,
    pub reason: String,
}

#[derive(Debug, Clone, Default)]
pub struct ContinuationOutcome {
    pub solutions: Vec<EinsteinSolution>,
    pub lost: Vec<LostPath>,
    /// Endpoints whose reduced Jacobian is singular (kept out of
    /// `solutions`).
    pub singular_endpoints: Vec<(f64, f64)>,
}

/// Method selector for [`solve`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum MethodChoice {
    #[default]
    Auto,
    Continuation,
    Multistart,
    ClosedForm,
}

impl std::str::FromStr for MethodChoice {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "auto" => Ok(Self::Auto),
            "continuation" => Ok(Self::Continuation),
            "multistart" => Ok(Self::Multistart),
            "closed-form" => Ok(Self::ClosedForm),
            other => Err(format!(
                "unknown method `{other}` (auto|continuation|multistart|closed-form)"
            )),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SolveOptions {
    pub method: MethodChoice,
    /// Fixed precision; `None` selects automatically (extended for very
    /// large parameters or ill-conditioned roots).
    pub precision: Option<Precision>,
    /// Multistart box; `None` derives one from the closed-form base metrics.
    pub box_: Option<(f64, f64)>,
    /// Acceptance tolerance on the full residual; `None` uses the
    /// per-precision default.
    pub tol: Option<f64>,
    pub grid: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            method: MethodChoice::Auto,
            precision: None,
            box_: None,
            tol: None,
            grid: 40,
        }
    }
}

/// Full output of [`solve`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SolveReport {
    pub params: SpaceParams,
    pub precision: Precision,
    pub solutions: Vec<EinsteinSolution>,
    /// Partition of `solutions` (by index) into isometry classes.
    pub isometry_classes: Vec<Vec<usize>>,
    /// False for the degenerate parameter patterns (`lm`, `ln` or `mn`
    /// equal to one), where the six-parameter family is not the most
    /// general invariant metric.
    pub family_complete: bool,
    pub diagnostics: Vec<String>,
    pub wall_time_ms: u64,
}

fn newton_tol<R: Real>() -> f64 {
    if R::eps() < 1e-20 {
        1e-25
    } else {
        1e-12
    }
}

fn verify_tol<R: Real>() -> f64 {
    if R::eps() < 1e-20 {
        1e-20
    } else {
        1e-10
    }
}

/// Relative dedup tolerance on `(x1, x2)`, aligned with the precision of the
/// published tables.
const DEDUP_REL: f64 = 1e-6;

/// The two residuals `T1 - T2`, `T2 - T3` of the reduced system at `x3 = 1`.
pub fn reduced_system<R: Real>(p: &SpaceParams, x1: R, x2: R) -> (R, R) {
    reduced_system_at(p, 1.0, x1, x2)
}

/// Reduced system along the homotopy parameter `t`.
pub(crate) fn reduced_system_at<R: Real>(p: &SpaceParams, t: f64, x1: R, x2: R) -> (R, R) {
    let (t1, t2, t3) = crate::flag::homotopy_t(p, R::of(t), (x1, x2, R::one()));
    (t1 - t2, t2 - t3)
}

/// Condition estimate and singularity classification of the reduced
/// Jacobian at a root.
///
/// Singularity cannot be read off the spectral condition: at a degenerate
/// root the whole finite-difference Jacobian vanishes, so its singular-value
/// ratio stays O(1). Instead the smallest singular value is compared to the
/// natural derivative scale of the system (the Einstein-constant expressions
/// divided by the point's magnitude); measured values sit near 1e-11 at the
/// known singular root and above 1e-1 at every regular one.
fn reduced_quality<R: Real>(p: &SpaceParams, t: f64, x: (R, R)) -> (f64, bool) {
    let j = match fd_jacobian(&|y: (R, R)| reduced_system_at(p, t, y.0, y.1), x) {
        Ok(j) => j,
        Err(_) => return (f64::INFINITY, true),
    };
    let (s1, s2) = crate::newton::singular_values2(&j);
    let (t1, t2, t3) = crate::flag::homotopy_t(p, R::of(t), (x.0, x.1, R::one()));
    let scale = (t1.abs() + t2.abs() + t3.abs()).lo()
        / (x.0 * x.0 + x.1 * x.1 + R::one()).sqrt().lo();
    let singular = s2 < SINGULAR_SV_REL * scale;
    let cond = if singular || s2 == 0.0 {
        1e300
    } else {
        (s1 / s2).min(1e300)
    };
    (cond, singular)
}

/// Polish an approximate root and complete it to a verified solution.
pub fn refine(
    p: &SpaceParams,
    approx: (f64, f64),
    precision: Precision,
) -> Result<EinsteinSolution, Error> {
    match precision {
        Precision::Double => refine_in::<f64>(p, (approx.0, approx.1), Method::Multistart),
        Precision::Extended => refine_in::<crate::num::Dd>(
            p,
            (Real::of(approx.0), Real::of(approx.1)),
            Method::Multistart,
        ),
    }
}

fn refine_in<R: Real>(
    p: &SpaceParams,
    approx: (R, R),
    method: Method,
) -> Result<EinsteinSolution, Error> {
    let f = |y: (R, R)| reduced_system_at(p, 1.0, y.0, y.1);
    let (root, _) = newton2(f, approx, newton_tol::<R>(), 100)?;
    finish_root(p, root, method)
}

fn finish_root<R: Real>(
    p: &SpaceParams,
    root: (R, R),
    method: Method,
) -> Result<EinsteinSolution, Error> {
    let (metric, lambda) = complete_metric(p, root.0, root.1);
    metric.validate()?;
    let residual = einstein_residual(p, &metric, lambda);
    let (condition, _) = reduced_quality(p, 1.0, root);
    Ok(EinsteinSolution {
        metric: metric.to_f64(),
        lambda: lambda.lo(),
        residual,
        method,
        condition,
    })
}

fn same_root_within(a: (f64, f64), b: (f64, f64), rel_tol: f64) -> bool {
    let rel = |u: f64, v: f64| (u - v).abs() / u.abs().max(v.abs()).max(1e-300);
    rel(a.0, b.0) < rel_tol && rel(a.1, b.1) < rel_tol
}

fn same_root(a: (f64, f64), b: (f64, f64)) -> bool {
    same_root_within(a, b, DEDUP_REL)
}

/// Newton can only pin a nearly singular root to about the square root of
/// the residual tolerance, so those deduplicate under a wider radius.
const SINGULAR_COND: f64 = 1e10;
const SINGULAR_DEDUP_REL: f64 = 1e-3;
/// Roots whose smallest Jacobian singular value falls below this fraction of
/// the system's derivative scale count as singular (measured: ~1e-11 at the
/// known singular root, >1e-1 at regular ones).
const SINGULAR_SV_REL: f64 = 1e-4;

fn push_dedup(list: &mut Vec<EinsteinSolution>, sol: EinsteinSolution) {
    let key = (sol.metric.x1, sol.metric.x2);
    let dup = list.iter_mut().find(|s| {
        let radius = if s.condition.max(sol.condition) > SINGULAR_COND {
            SINGULAR_DEDUP_REL
        } else {
            DEDUP_REL
        };
        same_root_within((s.metric.x1, s.metric.x2), key, radius)
    });
    match dup {
        Some(existing) => {
            if sol.residual.norm < existing.residual.norm {
                *existing = sol;
            }
        }
        None => list.push(sol),
    }
}

fn sort_solutions(list: &mut [EinsteinSolution]) {
    list.sort_by(|a, b| {
        (a.metric.x1, a.metric.x2)
            .partial_cmp(&(b.metric.x1, b.metric.x2))
            .unwrap_or(std::cmp::Ordering::Equal)
    });
}

/// Track the four base-space Einstein metrics from `t = 0` to `t = 1` by a
/// tangent predictor with Newton correction and adaptive steps in
/// `[1e-4, 0.05]`. Lost paths are reported, never silently dropped.
pub fn continue_from_flag(p: &SpaceParams, precision: Precision) -> ContinuationOutcome {
    match precision {
        Precision::Double => continue_in::<f64>(p),
        Precision::Extended => continue_in::<crate::num::Dd>(p),
    }
}

const DT_MIN: f64 = 1e-4;
const DT_MAX: f64 = 0.05;

fn continue_in<R: Real>(p: &SpaceParams) -> ContinuationOutcome {
    let starts: Vec<(R, R)> = flag_einstein_metrics::<R>(p)
        .iter()
        .map(|fm| (fm.x1, fm.x2))
        .collect();

    let tracked: Vec<_> = starts
        .par_iter()
        .map(|&start| track_path(p, start))
        .collect();

    let mut out = ContinuationOutcome::default();
    for (start, result) in starts.iter().zip(tracked) {
        match result {
            Ok(root) => {
                let root = crate::newton::polish_to_stagnation(
                    &|y: (R, R)| reduced_system_at(p, 1.0, y.0, y.1),
                    root,
                    200,
                )
                .0;
                let (_, singular) = reduced_quality(p, 1.0, root);
                if singular {
                    out.singular_endpoints.push((root.0.lo(), root.1.lo()));
                    continue;
                }
                match finish_root(p, root, Method::Continuation) {
                    Ok(sol) => push_dedup(&mut out.solutions, sol),
                    Err(e) => out.lost.push(LostPath {
                        start: (start.0.lo(), start.1.lo()),
                        t: 1.0,
                        reason: e.to_string(),
                    }),
                }
            }
            Err((t, e)) => out.lost.push(LostPath {
                start: (start.0.lo(), start.1.lo()),
                t,
                reason: e.to_string(),
            }),
        }
    }
    sort_solutions(&mut out.solutions);
    out
}

fn track_path<R: Real>(p: &SpaceParams, start: (R, R)) -> Result<(R, R), (f64, Error)> {
    let mut x = start;
    let mut t = 0.0f64;
    let mut dt = 0.01f64;
    let tol = newton_tol::<R>().max(1e-13);
    while t < 1.0 {
        let step = dt.min(1.0 - t);
        let target = t + step;
        let predicted = predict(p, t, step, x).unwrap_or(x);
        let corrected = newton2(
            |y: (R, R)| reduced_system_at(p, target, y.0, y.1),
            predicted,
            tol,
            30,
        )
        .or_else(|_| {
            // retry without the predictor before shrinking the step
            newton2(
                |y: (R, R)| reduced_system_at(p, target, y.0, y.1),
                x,
                tol,
                30,
            )
        });
        match corrected {
            Ok((next, _)) => {
                x = next;
                t = target;
                dt = (dt * 1.5).min(DT_MAX);
            }
            Err(e) => {
                dt /= 2.0;
                if dt < DT_MIN {
                    return Err((t, e));
                }
            }
        }
    }
    Ok(x)
}

/// First-order tangent prediction of the path at `t`, from the implicit
/// function theorem: `dx/dt = -J_x^{-1} df/dt`.
fn predict<R: Real>(p: &SpaceParams, t: f64, dt: f64, x: (R, R)) -> Option<(R, R)> {
    let j = fd_jacobian(&|y: (R, R)| reduced_system_at(p, t, y.0, y.1), x).ok()?;
    let det = det2(&j);
    if det.abs().lo() == 0.0 {
        return None;
    }
    let ht = 1e-6f64.max(dt * 1e-3);
    let fp = reduced_system_at(p, (t + ht).min(1.0), x.0, x.1);
    let fm = reduced_system_at(p, (t - ht).max(0.0), x.0, x.1);
    let denom = R::of((t + ht).min(1.0) - (t - ht).max(0.0));
    let ft = ((fp.0 - fm.0) / denom, (fp.1 - fm.1) / denom);
    let dx0 = -(ft.0 * j[1][1] - ft.1 * j[0][1]) / det;
    let dx1 = -(ft.1 * j[0][0] - ft.0 * j[1][0]) / det;
    let step = R::of(dt);
    let cand = (x.0 + step * dx0, x.1 + step * dx1);
    (cand.0 > R::zero() && cand.1 > R::zero()).then_some(cand)
}

/// Newton from every point of a log-uniform grid over the box; deduplicated
/// and sorted. A safety net behind the structured routes.
pub fn multistart(
    p: &SpaceParams,
    box_: (f64, f64),
    grid: usize,
    precision: Precision,
) -> Vec<EinsteinSolution> {
    match precision {
        Precision::Double => multistart_in::<f64>(p, box_, grid),
        Precision::Extended => multistart_in::<crate::num::Dd>(p, box_, grid),
    }
}

fn multistart_in<R: Real>(p: &SpaceParams, box_: (f64, f64), grid: usize) -> Vec<EinsteinSolution> {
    let roots = grid_roots::<R>(p, 1.0, box_, grid);
    let mut out: Vec<EinsteinSolution> = Vec::new();
    for root in roots {
        if let Ok(sol) = finish_root(p, root, Method::Multistart) {
            if sol.residual.norm <= verify_tol::<R>() {
                push_dedup(&mut out, sol);
            }
        }
    }
    sort_solutions(&mut out);
    out
}

fn grid_roots<R: Real>(p: &SpaceParams, t: f64, box_: (f64, f64), grid: usize) -> Vec<(R, R)> {
    let (lo, hi) = box_;
    let grid = grid.max(2);
    let ratio = hi / lo;
    let starts: Vec<(f64, f64)> = (0..grid * grid)
        .map(|k| {
            let (i, j) = (k / grid, k % grid);
            (
                lo * ratio.powf(i as f64 / (grid - 1) as f64),
                lo * ratio.powf(j as f64 / (grid - 1) as f64),
            )
        })
        .collect();
    let found: Vec<Option<(f64, f64, R, R)>> = starts
        .par_iter()
        .map(|&(a, b)| {
            let r = newton2(
                |y: (R, R)| reduced_system_at(p, t, y.0, y.1),
                (R::of(a), R::of(b)),
                newton_tol::<R>(),
                80,
            )
            .ok()?;
            let (x, _) = r;
            // discard runaways far outside the search region
            if x.0.lo() < lo / 100.0 || x.0.lo() > hi * 100.0 || x.1.lo() < lo / 100.0
                || x.1.lo() > hi * 100.0
            {
                return None;
            }
            Some((x.0.lo(), x.1.lo(), x.0, x.1))
        })
        .collect();
    let mut roots: Vec<(R, R)> = Vec::new();
    for item in found.into_iter().flatten() {
        let key = (item.0, item.1);
        if !roots.iter().any(|r| same_root((r.0.lo(), r.1.lo()), key)) {
            roots.push((item.2, item.3));
        }
    }
    // a residual-based stop leaves nearly singular roots scattered; polish
    // every root to stagnation (regular ones stop immediately) and collapse
    // the clusters
    let mut merged: Vec<((R, R), bool)> = Vec::new();
    for root in roots {
        let root = crate::newton::polish_to_stagnation(
            &|y: (R, R)| reduced_system_at(p, t, y.0, y.1),
            root,
            200,
        )
        .0;
        let (_, singular) = reduced_quality(p, t, root);
        let key = (root.0.lo(), root.1.lo());
        let dup = merged.iter().any(|(r, s)| {
            let radius = if *s || singular {
                SINGULAR_DEDUP_REL
            } else {
                DEDUP_REL
            };
            same_root_within((r.0.lo(), r.1.lo()), key, radius)
        });
        if !dup {
            merged.push((root, singular));
        }
    }
    let mut roots: Vec<(R, R)> = merged.into_iter().map(|(r, _)| r).collect();
    roots.sort_by(|a, b| {
        (a.0.lo(), a.1.lo())
            .partial_cmp(&(b.0.lo(), b.1.lo()))
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    roots
}

/// Roots of `f_t` strictly inside the box, for degree certification.
pub(crate) fn roots_in_box(
    p: &SpaceParams,
    t: f64,
    box_: (f64, f64),
    grid: usize,
) -> Result<Vec<(f64, f64)>, Error> {
    let roots = grid_roots::<f64>(p, t, box_, grid);
    Ok(roots
        .into_iter()
        .filter(|&(a, b)| a > box_.0 && a < box_.1 && b > box_.0 && b < box_.1)
        .collect())
}

// ---------------------------------------------------------------------------
// closed-form branches for coinciding parameters

/// Cubic whose root in `(1, 2)` parametrises the non-trivial equal-split
/// solutions: `(2n^2+1)x^3 - (2n-1)(2n+1)x^2 + 4(n^2+2)x - 4(2n^2+1)`.
pub fn equal_split_cubic(n: u32, x: f64) -> f64 {
    let n = n as f64;
    let a = 2.0 * n * n + 1.0;
    a * x.powi(3) - (2.0 * n - 1.0) * (2.0 * n + 1.0) * x.powi(2) + 4.0 * (n * n + 2.0) * x
        - 4.0 * a
}

/// Mirror cubic vanishing at the reciprocal of the cubic's root; satisfies
/// `mirror(x) = -x^3 * cubic(1/x)`.
pub fn equal_split_cubic_mirror(n: u32, x: f64) -> f64 {
    let n = n as f64;
    let a = 2.0 * n * n + 1.0;
    4.0 * a * x.powi(3) - 4.0 * (n * n + 2.0) * x.powi(2) + (2.0 * n - 1.0) * (2.0 * n + 1.0) * x
        - a
}

/// All Einstein solutions of the equal-split space `(n, n, n)` in closed
/// form: the Killing-frame point plus three metrics built from the cubic
/// root `alpha` in `(1, 2)`. For `n = 1` only the bi-invariant metric
/// survives.
pub fn solve_equal_all(n: u32) -> Result<Vec<EinsteinSolution>, Error> {
    if n == 0 {
        return Err(Error::InvalidParams { l: 0, m: 0, n: 0 });
    }
    let p = SpaceParams::new(n, n, n)?;
    let nf = n as f64;
    let mut out = Vec::new();

    // (1, 1, 1): lambda = 5 n^2 / (12 n^2 + 8), v4 = v5 = 4 lambda, c = 0
    let lam0 = 5.0 * nf * nf / (12.0 * nf * nf + 8.0);
    out.push(closed_solution(
        &p,
        InvariantMetric {
            x1: 1.0,
            x2: 1.0,
            x3: 1.0,
            v4: 4.0 * lam0,
            v5: 4.0 * lam0,
            c: 0.0,
        },
        lam0,
        Method::CubicClosedForm,
    )?);

    if n == 1 {
        // the cubic factor degenerates; only the bi-invariant metric remains
        return Ok(out);
    }

    let alpha = bisect_root(|x| equal_split_cubic(n, x), 1.0, 2.0)
        .ok_or(Error::NoConvergence {
            iters: 0,
            residual: f64::NAN,
        })?;
    let a2 = alpha * alpha;
    let denom = 2.0 + 2.0 * nf * nf + a2 * nf * nf;
    let lam = (2.0 + a2) * (4.0 + a2) * nf * nf / (12.0 * alpha * denom);

    // (1, alpha, 1)
    out.push(closed_solution(
        &p,
        InvariantMetric {
            x1: 1.0,
            x2: alpha,
            x3: 1.0,
            v4: 2.0 * alpha * (2.0 + a2) * (4.0 + a2) * nf * nf / (3.0 * (1.0 + a2) * denom),
            v5: (1.0 + a2) * (4.0 + a2) * nf * nf / (2.0 * alpha * denom),
            c: (a2 - 1.0) / (3.0f64.sqrt() * (a2 + 1.0)),
        },
        lam,
        Method::CubicClosedForm,
    )?);

    // (alpha, 1, 1)
    out.push(closed_solution(
        &p,
        InvariantMetric {
            x1: alpha,
            x2: 1.0,
            x3: 1.0,
            v4: (2.0 + a2) * (4.0 + a2) * nf * nf / (3.0 * alpha * denom),
            v5: alpha * (4.0 + a2) * nf * nf / denom,
            c: 0.0,
        },
        lam,
        Method::CubicClosedForm,
    )?);

    // (1/alpha, 1/alpha, 1): the scaled image of (1, 1, alpha); the degree -1
    // homogeneity turns lambda into alpha * lam
    let (metric, lam_inv) = complete_metric(&p, 1.0 / alpha, 1.0 / alpha);
    debug_assert!((lam_inv - alpha * lam).abs() < 1e-10);
    out.push(closed_solution(&p, metric, lam_inv, Method::CubicClosedForm)?);

    sort_solutions(&mut out);
    Ok(out)
}

fn closed_solution(
    p: &SpaceParams,
    metric: InvariantMetric<f64>,
    lambda: f64,
    method: Method,
) -> Result<EinsteinSolution, Error> {
    metric.validate()?;
    let residual = einstein_residual(p, &metric, lambda);
    let (condition, _) = reduced_quality(p, 1.0, (metric.x1, metric.x2));
    Ok(EinsteinSolution {
        metric,
        lambda,
        residual,
        method,
        condition,
    })
}

/// Quartic controlling the `x2 = 1` branch of the equal-pair space
/// `(m, m, n)`.
pub fn equal_pair_quartic(m: u32, n: u32, x1: f64) -> f64 {
    let (m, n) = (m as f64, n as f64);
    -n * n * (m * m + m * n + 1.0) * x1.powi(4) + 2.0 * m * n * n * (2.0 * m + n) * x1.powi(3)
        - m * n * (2.0 * m * m + 6.0 * m * n + 7.0) * x1.powi(2)
        + 4.0 * (m * m + 1.0) * n * (2.0 * m + n) * x1
        - 4.0 * m * m * (2.0 * m * n + 1.0)
}

/// Degree-eight palindromic polynomial controlling the `x2 != 1` branch of
/// the equal-pair space; if `g` is a root so is `1/g`.
pub fn equal_pair_octic(m: u32, n: u32, x2: f64) -> f64 {
    let (m, n) = (m as f64, n as f64);
    let s = m * m + n * m + 1.0;
    let c8 = n * n * (m + n) * (3.0 * m + n) * s.powi(3) * (m * m + 13.0 * n * m + 4.0 * n * n);
    let c7 = -2.0
        * n
        * (m + n)
        * s.powi(2)
        * (2.0 * n * m.powi(5) + 38.0 * n.powi(2) * m.powi(4) + 2.0 * m.powi(4)
            + 42.0 * n.powi(3) * m.powi(3)
            + 29.0 * n * m.powi(3)
            + 22.0 * n.powi(4) * m.powi(2)
            - 15.0 * n.powi(2) * m.powi(2)
            + 4.0 * n.powi(5) * m
            - 14.0 * n.powi(3) * m
            - 2.0 * n.powi(4));
    let c6 = -s
        * (8.0 * n.powi(2) * m.powi(8) + 40.0 * n.powi(3) * m.powi(7)
            - 168.0 * n.powi(4) * m.powi(6)
            - 72.0 * n.powi(2) * m.powi(6)
            + 4.0 * m.powi(6)
            - 484.0 * n.powi(5) * m.powi(5)
            - 620.0 * n.powi(3) * m.powi(5)
            + 48.0 * n * m.powi(5)
            - 400.0 * n.powi(6) * m.powi(4)
            - 1352.0 * n.powi(4) * m.powi(4)
            + 77.0 * n.powi(2) * m.powi(4)
            - 132.0 * n.powi(7) * m.powi(3)
            - 1092.0 * n.powi(5) * m.powi(3)
            - 289.0 * n.powi(3) * m.powi(3)
            - 16.0 * n.powi(8) * m.powi(2)
            - 352.0 * n.powi(6) * m.powi(2)
            - 456.0 * n.powi(4) * m.powi(2)
            - 40.0 * n.powi(7) * m
            - 188.0 * n.powi(5) * m
            - 24.0 * n.powi(6));
    let c5 = -2.0
        * (6.0 * n.powi(2) * m.powi(10) + 132.0 * n.powi(3) * m.powi(9) - 2.0 * n * m.powi(9)
            + 558.0 * n.powi(4) * m.powi(8)
            - 7.0 * n.powi(2) * m.powi(8)
            + 8.0 * m.powi(8)
            + 956.0 * n.powi(5) * m.powi(7)
            + 442.0 * n.powi(3) * m.powi(7)
            + 140.0 * n * m.powi(7)
            + 838.0 * n.powi(6) * m.powi(6)
            + 1054.0 * n.powi(4) * m.powi(6)
            + 798.0 * n.powi(2) * m.powi(6)
            + 8.0 * m.powi(6)
            + 412.0 * n.powi(7) * m.powi(5)
            + 934.0 * n.powi(5) * m.powi(5)
            + 1320.0 * n.powi(3) * m.powi(5)
            + 230.0 * n * m.powi(5)
            + 110.0 * n.powi(8) * m.powi(4)
            + 449.0 * n.powi(6) * m.powi(4)
            + 706.0 * n.powi(4) * m.powi(4)
            + 579.0 * n.powi(2) * m.powi(4)
            + 12.0 * n.powi(9) * m.powi(3)
            + 136.0 * n.powi(7) * m.powi(3)
            + 66.0 * n.powi(5) * m.powi(3)
            + 366.0 * n.powi(3) * m.powi(3)
            + 18.0 * n.powi(8) * m.powi(2)
            - 14.0 * n.powi(6) * m.powi(2)
            - 3.0 * n.powi(4) * m.powi(2)
            - 40.0 * n.powi(5) * m
            - 6.0 * n.powi(6));
    let c4 = -2.0
        * (11.0 * n.powi(2) * m.powi(10)
            + 100.0 * n.powi(3) * m.powi(9)
            + 235.0 * n.powi(4) * m.powi(8)
            + 9.0 * n.powi(2) * m.powi(8)
            + 12.0 * m.powi(8)
            - 8.0 * n.powi(5) * m.powi(7)
            + 215.0 * n.powi(3) * m.powi(7)
            + 236.0 * n * m.powi(7)
            - 355.0 * n.powi(6) * m.powi(6)
            - 574.0 * n.powi(4) * m.powi(6)
            + 1176.0 * n.powi(2) * m.powi(6)
            + 12.0 * m.powi(6)
            - 304.0 * n.powi(7) * m.powi(5)
            - 1630.0 * n.powi(5) * m.powi(5)
            + 798.0 * n.powi(3) * m.powi(5)
            + 416.0 * n * m.powi(5)
            - 99.0 * n.powi(8) * m.powi(4)
            - 1259.0 * n.powi(6) * m.powi(4)
            - 931.0 * n.powi(4) * m.powi(4)
            + 634.0 * n.powi(2) * m.powi(4)
            - 12.0 * n.powi(9) * m.powi(3)
            - 389.0 * n.powi(7) * m.powi(3)
            - 1230.0 * n.powi(5) * m.powi(3)
            + 68.0 * n.powi(3) * m.powi(3)
            - 44.0 * n.powi(8) * m.powi(2)
            - 441.0 * n.powi(6) * m.powi(2)
            - 311.0 * n.powi(4) * m.powi(2)
            - 52.0 * n.powi(7) * m
            - 151.0 * n.powi(5) * m
            - 20.0 * n.powi(6));
    // palindromic: coefficients of x^k and x^(8-k) agree
    c8 * (x2.powi(8) + 1.0)
        + c7 * (x2.powi(7) + x2)
        + c6 * (x2.powi(6) + x2.powi(2))
        + c5 * (x2.powi(5) + x2.powi(3))
        + c4 * x2.powi(4)
}

/// Bivariate residual pair of the equal-pair space, used to pair an `x1`
/// with each octic root.
fn equal_pair_h1(m: f64, n: f64, x1: f64, x2: f64) -> f64 {
    let s = m * m + m * n + 1.0;
    -n * n * x1.powi(4) * s - n * x1.powi(2) * x2.powi(2) * (m - n) * s
        + 2.0 * (m * m + 1.0) * n * x1 * x2.powi(2) * (2.0 * m + n)
        + 2.0 * (m * m + 1.0) * n * x1 * (2.0 * m + n)
        + m * n * x2.powi(4) * s
        - 2.0 * m * m * n * x2.powi(3) * (2.0 * m + n)
        - m * m * n * (m - n)
        - n * x1.powi(2) * (m.powi(3) + 2.0 * m * m * n - m * n * n + 2.0 * m - n)
        + 2.0 * m * n * n * x1.powi(3) * (2.0 * m + n)
        - 2.0 * n * x1.powi(2) * x2 * (2.0 * m + n) * (m * n + 1.0)
        + m * n * x2.powi(2) * (2.0 * m * n + 1.0)
        - 2.0 * m * x2 * (2.0 * m + n) * (m * n + 1.0)
}

fn equal_pair_h2(m: f64, n: f64, x1: f64, x2: f64) -> f64 {
    -2.0 * m * m * n * x1 * x2.powi(2) * (2.0 * m + n) - 2.0 * m * m * n * x1 * (2.0 * m + n)
        + m * m * x2.powi(3) * (2.0 * m * n + 1.0)
        + m * m * x2.powi(2) * (2.0 * m * n + 1.0)
        + m * m * x2 * (2.0 * m * n + 1.0)
        + m * m * (2.0 * m * n + 1.0)
        + m * x1.powi(2) * x2 * (2.0 * m * n * n - m + 2.0 * n)
        + m * x1.powi(2) * (2.0 * m * n * n - m + 2.0 * n)
        - 2.0 * n * x1.powi(3) * (2.0 * m + n) * (m * n + 1.0)
        + 2.0 * m * x1 * x2 * (2.0 * m + n)
}

/// Closed-form solutions of the equal-pair space `(m, m, n)`, `m != n`:
/// the `x2 = 1` branch from the quartic plus the `x2 != 1` branch from the
/// octic, each verified against the reduced system.
pub fn solve_equal_pair(m: u32, n: u32) -> Result<Vec<EinsteinSolution>, Error> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidParams { l: m, m, n });
    }
    if m == n {
        return solve_equal_all(n);
    }
    let p = SpaceParams::new(m, m, n)?;
    let mut out: Vec<EinsteinSolution> = Vec::new();

    // x2 = 1: every positive quartic root solves the reduced system outright
    for x1 in scan_roots(|x| equal_pair_quartic(m, n, x), 1e-3, 1e3, 3000) {
        if let Ok(sol) = polish_candidate(&p, (x1, 1.0)) {
            push_dedup(&mut out, sol);
        }
    }

    // x2 = gamma != 1: pair each octic root with the x1 roots shared by the
    // two bivariate residuals
    for gamma in scan_roots(|x| equal_pair_octic(m, n, x), 1e-3, 1e3, 3000) {
        if (gamma - 1.0).abs() < 1e-9 {
            continue;
        }
        let (mf, nf) = (m as f64, n as f64);
        let h2_scale = equal_pair_h2(mf, nf, 1.0, gamma).abs().max(1.0);
        for x1 in scan_roots(|x| equal_pair_h1(mf, nf, x, gamma), 1e-3, 1e3, 3000) {
            if equal_pair_h2(mf, nf, x1, gamma).abs() > 1e-5 * h2_scale {
                continue;
            }
            if let Ok(sol) = polish_candidate(&p, (x1, gamma)) {
                push_dedup(&mut out, sol);
            }
        }
    }

    sort_solutions(&mut out);
    Ok(out)
}

fn polish_candidate(p: &SpaceParams, start: (f64, f64)) -> Result<EinsteinSolution, Error> {
    let f = |y: (f64, f64)| reduced_system_at(p, 1.0, y.0, y.1);
    // candidates must already be near-roots; a short polish guards against
    // accepting spurious scan artifacts
    let (pre1, pre2) = f(start);
    if pre1.abs().max(pre2.abs()) > 1e-4 {
        return Err(Error::NoConvergence {
            iters: 0,
            residual: pre1.abs().max(pre2.abs()),
        });
    }
    let (root, _) = newton2(f, start, newton_tol::<f64>(), 100)?;
    if !same_root((root.0, root.1), start) {
        return Err(Error::NoConvergence {
            iters: 100,
            residual: f64::NAN,
        });
    }
    let mut sol = finish_root(p, root, Method::PairClosedForm)?;
    if sol.residual.norm > verify_tol::<f64>() {
        return Err(Error::NoConvergence {
            iters: 100,
            residual: sol.residual.norm,
        });
    }
    sol.method = Method::PairClosedForm;
    Ok(sol)
}

fn bisect_root(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> Option<f64> {
    let (flo, fhi) = (f(lo), f(hi));
    if flo == 0.0 {
        return Some(lo);
    }
    if fhi == 0.0 {
        return Some(hi);
    }
    if flo.signum() == fhi.signum() {
        return None;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if fm == 0.0 {
            return Some(mid);
        }
        if fm.signum() == flo.signum() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(0.5 * (lo + hi))
}

/// Sign-change scan over a log grid followed by bisection; finds the simple
/// positive real roots of a univariate function.
fn scan_roots(f: impl Fn(f64) -> f64, lo: f64, hi: f64, grid: usize) -> Vec<f64> {
    let mut out = Vec::new();
    let ratio = hi / lo;
    let mut prev_x = lo;
    let mut prev_f = f(lo);
    for i in 1..=grid {
        let x = lo * ratio.powf(i as f64 / grid as f64);
        let fx = f(x);
        if prev_f == 0.0 {
            out.push(prev_x);
        } else if fx.is_finite() && prev_f.is_finite() && fx.signum() != prev_f.signum() {
            if let Some(r) = bisect_root(&f, prev_x, x) {
                out.push(r);
            }
        }
        prev_x = x;
        prev_f = fx;
    }
    out
}

// ---------------------------------------------------------------------------
// orchestration

/// Find every Einstein solution of the space: closed forms where the
/// parameters allow them, continuation from the base-space metrics, and a
/// multistart sweep; merged, verified, deduplicated and sorted.
pub fn solve(p: &SpaceParams, opts: &SolveOptions) -> Result<SolveReport, Error> {
    let started = Instant::now();
    let auto_extended = p.l.max(p.m).max(p.n) > 500;
    let mut precision = opts.precision.unwrap_or(if auto_extended {
        Precision::Extended
    } else {
        Precision::Double
    });

    let mut report = solve_at(p, opts, precision)?;
    // ill-conditioned roots promote the whole run to extended precision
    let closed = |m: Method| matches!(m, Method::CubicClosedForm | Method::PairClosedForm);
    if opts.precision.is_none()
        && precision == Precision::Double
        && report
            .solutions
            .iter()
            .any(|s| (!s.condition.is_finite() || s.condition > 1e10) && !closed(s.method))
    {
        precision = Precision::Extended;
        report = solve_at(p, opts, precision)?;
        report
            .diagnostics
            .push("promoted to extended precision: reduced Jacobian condition above 1e10".into());
    }
    report.wall_time_ms = started.elapsed().as_millis() as u64;
    Ok(report)
}

fn solve_at(p: &SpaceParams, opts: &SolveOptions, precision: Precision) -> Result<SolveReport, Error> {
    let mut diagnostics = Vec::new();
    let mut solutions: Vec<EinsteinSolution> = Vec::new();

    let closed_applicable = p.l == p.m || p.m == p.n || p.l == p.n;
    let run_closed = matches!(opts.method, MethodChoice::Auto | MethodChoice::ClosedForm);
    let run_continuation = matches!(opts.method, MethodChoice::Auto | MethodChoice::Continuation);
    let run_multistart = matches!(opts.method, MethodChoice::Auto | MethodChoice::Multistart);

    if matches!(opts.method, MethodChoice::ClosedForm) && !(p.l == p.m && p.m == p.n || p.l == p.m)
    {
        return Err(Error::InvalidMetric(format!(
            "closed-form method needs the first two parameters equal, got {p}"
        )));
    }

    if run_closed && closed_applicable {
        if p.l == p.m && p.m == p.n {
            for sol in solve_equal_all(p.n)? {
                push_dedup(&mut solutions, sol);
            }
        } else if p.l == p.m {
            for sol in solve_equal_pair(p.m, p.n)? {
                push_dedup(&mut solutions, sol);
            }
        }
        // other coincidence patterns are reached through the generic routes
    }

    let mut continuation_roots: Vec<(f64, f64)> = Vec::new();
    if run_continuation {
        let outcome = continue_from_flag(p, precision);
        for path in &outcome.lost {
            diagnostics.push(format!(
                "continuation path from ({:.6}, {:.6}) lost at t = {:.4}: {}",
                path.start.0, path.start.1, path.t, path.reason
            ));
        }
        for &(a, b) in &outcome.singular_endpoints {
            diagnostics.push(format!(
                "continuation endpoint ({a:.6}, {b:.6}) has a singular reduced Jacobian"
            ));
        }
        for sol in outcome.solutions {
            continuation_roots.push((sol.metric.x1, sol.metric.x2));
            push_dedup(&mut solutions, sol);
        }
    }

    if run_multistart {
        let box_ = opts.box_.unwrap_or_else(|| auto_box(p));
        let swept = multistart(p, box_, opts.grid, precision);
        for &(a, b) in &continuation_roots {
            if !swept
                .iter()
                .any(|s| same_root((s.metric.x1, s.metric.x2), (a, b)))
            {
                diagnostics.push(format!(
                    "multistart grid missed the continuation endpoint ({a:.6}, {b:.6})"
                ));
            }
        }
        for sol in swept {
            push_dedup(&mut solutions, sol);
        }
    }

    let tol = opts.tol.unwrap_or(match precision {
        Precision::Double => 1e-10,
        Precision::Extended => 1e-18,
    });
    let before = solutions.len();
    solutions.retain(|s| s.residual.norm <= tol);
    if solutions.len() != before {
        diagnostics.push(format!(
            "discarded {} candidate(s) above the residual tolerance {tol:.1e}",
            before - solutions.len()
        ));
    }

    sort_solutions(&mut solutions);
    let isometry_classes = isometry::partition_report_solutions(p, &solutions);
    if p.degenerate {
        diagnostics.push(
            "family-incomplete: degenerate case (one of lm, ln, mn equals 1; the \
             six-parameter family is not the most general invariant metric)"
                .into(),
        );
    }
    Ok(SolveReport {
        params: *p,
        precision,
        solutions,
        isometry_classes,
        family_complete: !p.degenerate,
        diagnostics,
        wall_time_ms: 0,
    })
}

/// Search box inferred from the base-space metrics: published roots stay
/// within a modest multiple of the flag coordinates even for extreme
/// parameters.
fn auto_box(p: &SpaceParams) -> (f64, f64) {
    let mets = flag_einstein_metrics::<f64>(p);
    let mut lo = f64::INFINITY;
    let mut hi: f64 = 0.0;
    for fm in &mets {
        lo = lo.min(fm.x1).min(fm.x2);
        hi = hi.max(fm.x1).max(fm.x2);
    }
    ((lo / 20.0).min(0.05), (hi * 20.0).max(10.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(l: u32, m: u32, n: u32) -> SpaceParams {
        SpaceParams::new(l, m, n).unwrap()
    }

    #[test]
    fn reduced_system_vanishes_at_known_roots() {
        let s = p(3, 3, 3);
        let (a, b) = reduced_system(&s, 1.0, 1.0);
        assert!(a.abs() < 1e-15 && b.abs() < 1e-15);

        let s = p(1, 2, 3);
        let (a, b) = reduced_system(&s, 0.472295, 1.19781);
        assert!(a.abs() < 1e-4 && b.abs() < 1e-4);

        let s = p(2, 2, 1);
        let (a, b) = reduced_system(&s, 1.586, 2.089);
        assert!(a.abs() < 1e-3 && b.abs() < 1e-3, "({a}, {b})");
    }

    #[test]
    fn refine_from_table_starts() {
        let s = p(1, 2, 3);
        let sol = refine(&s, (0.4723, 1.1978), Precision::Double).unwrap();
        assert!((sol.metric.x1 - 0.472295).abs() < 1e-4);
        assert!((sol.metric.x2 - 1.19781).abs() < 1e-4);
        assert!((sol.metric.v4 - 1.77808).abs() < 1e-4);
        assert!((sol.metric.v5 - 0.60798).abs() < 1e-4);
        assert!((sol.lambda - 0.399622).abs() < 1e-5);
        assert!(sol.residual.norm < 1e-12);
    }

    #[test]
    fn refine_rejects_garbage() {
        let s = p(1, 2, 3);
        assert!(refine(&s, (-1.0, 1.0), Precision::Double).is_err());
    }

    #[test]
    fn continuation_for_distinct_parameters() {
        let s = p(1, 2, 3);
        let out = continue_from_flag(&s, Precision::Double);
        assert_eq!(out.solutions.len(), 2, "lost: {:?}", out.lost);
        assert_eq!(out.solutions.len() + out.lost.len() + out.singular_endpoints.len(), 4);
        let xs: Vec<(f64, f64)> = out
            .solutions
            .iter()
            .map(|s| (s.metric.x1, s.metric.x2))
            .collect();
        assert!(xs
            .iter()
            .any(|&(a, b)| (a - 0.472295).abs() < 1e-4 && (b - 1.19781).abs() < 1e-4));
        assert!(xs
            .iter()
            .any(|&(a, b)| (a - 1.49887).abs() < 1e-4 && (b - 0.714536).abs() < 1e-4));

        let s = p(3, 4, 5);
        let out = continue_from_flag(&s, Precision::Double);
        assert_eq!(out.solutions.len(), 4, "lost: {:?}", out.lost);
    }

    #[test]
    fn continuation_flags_singular_equal_split() {
        let s = p(1, 1, 1);
        let out = continue_from_flag(&s, Precision::Double);
        // every surviving path ends at the singular bi-invariant point;
        // a singular endpoint is only pinned to ~sqrt of the Newton tolerance
        assert!(out.solutions.is_empty());
        assert!(!out.singular_endpoints.is_empty());
        for &(a, b) in &out.singular_endpoints {
            assert!((a - 1.0).abs() < 1e-3 && (b - 1.0).abs() < 1e-3, "({a}, {b})");
        }
    }

    #[test]
    fn multistart_equal_pair_inventory() {
        let s = p(2, 2, 3);
        let sols = multistart(&s, (0.05, 10.0), 40, Precision::Double);
        assert_eq!(sols.len(), 4);
        let expect = [
            (0.5547, 0.7405),
            (0.70564, 1.0),
            (0.7491, 1.3504),
            (1.7749, 1.0),
        ];
        for (sol, e) in sols.iter().zip(expect) {
            assert!(
                (sol.metric.x1 - e.0).abs() < 1e-3 && (sol.metric.x2 - e.1).abs() < 1e-3,
                "{:?} vs {:?}",
                (sol.metric.x1, sol.metric.x2),
                e
            );
        }

        let sols = multistart(&p(1, 1, 2), (0.05, 10.0), 40, Precision::Double);
        assert_eq!(sols.len(), 2);
        assert!((sols[0].metric.x1 - 0.387628).abs() < 1e-5);
        assert!((sols[1].metric.x1 - 1.61237).abs() < 1e-5);

        // the equal-split root is singular; the count is exact, the location
        // only sqrt-of-tolerance accurate in double precision
        let sols = multistart(&p(1, 1, 1), (0.05, 10.0), 25, Precision::Double);
        assert_eq!(sols.len(), 1);
        assert!((sols[0].metric.x1 - 1.0).abs() < 1e-3 && (sols[0].metric.x2 - 1.0).abs() < 1e-3);
    }

    #[test]
    fn equal_split_closed_forms() {
        let sols = solve_equal_all(1).unwrap();
        assert_eq!(sols.len(), 1);
        assert!((sols[0].lambda - 0.25).abs() < 1e-15);
        assert_eq!(
            (sols[0].metric.v4, sols[0].metric.v5, sols[0].metric.c),
            (1.0, 1.0, 0.0)
        );

        for n in 2..=5u32 {
            let sols = solve_equal_all(n).unwrap();
            assert_eq!(sols.len(), 4);
            let alpha = bisect_root(|x| equal_split_cubic(n, x), 1.0, 2.0).unwrap();
            assert!(alpha > 1.0 && alpha < 2.0);
            for sol in &sols {
                assert!(
                    sol.residual.norm < 1e-10,
                    "n = {n}: residual {}",
                    sol.residual.norm
                );
            }
            // x-parts: (1/a, 1/a), (1, 1), (1, a), (a, 1) after sorting
            let xs: Vec<(f64, f64)> = sols.iter().map(|s| (s.metric.x1, s.metric.x2)).collect();
            let inv = 1.0 / alpha;
            assert!((xs[0].0 - inv).abs() < 1e-12 && (xs[0].1 - inv).abs() < 1e-12);
            assert_eq!(xs[1], (1.0, 1.0));
            assert!((xs[2].1 - alpha).abs() < 1e-12);
            assert!((xs[3].0 - alpha).abs() < 1e-12);
        }

        // n = 2: the cubic specialises to 9a^3 - 15a^2 + 24a - 36
        let alpha = bisect_root(|x| equal_split_cubic(2, x), 1.0, 2.0).unwrap();
        let direct = 9.0 * alpha.powi(3) - 15.0 * alpha.powi(2) + 24.0 * alpha - 36.0;
        assert!(direct.abs() < 1e-10);
    }

    #[test]
    fn cubic_mirror_identity() {
        // mirror(x) = -x^3 cubic(1/x)
        for n in 2..=6u32 {
            for k in 1..=20 {
                let x = 0.3 + 0.12 * k as f64;
                let lhs = equal_split_cubic_mirror(n, x);
                let rhs = -x.powi(3) * equal_split_cubic(n, 1.0 / x);
                assert!((lhs - rhs).abs() < 1e-10 * lhs.abs().max(1.0));
            }
        }
    }

    #[test]
    fn equal_pair_quartic_sign_pattern() {
        for (m, n) in [(1u32, 2u32), (1, 3), (2, 3), (3, 4)] {
            assert!(equal_pair_quartic(m, n, 0.0) < 0.0);
            assert!(equal_pair_quartic(m, n, 2.0) < 0.0);
            if n > m {
                assert!(equal_pair_quartic(m, n, 1.0) > 0.0);
            }
        }
    }

    #[test]
    fn equal_pair_closed_forms() {
        // m < n: both solutions on the x2 = 1 branch
        let sols = solve_equal_pair(1, 2).unwrap();
        assert_eq!(sols.len(), 2);
        assert!((sols[0].metric.x1 - 0.387628).abs() < 1e-5);
        assert!((sols[1].metric.x1 - 1.61237).abs() < 1e-5);
        assert!((sols[0].metric.x2 - 1.0).abs() < 1e-9);

        // m > n: the pair comes from the octic branch
        let sols = solve_equal_pair(2, 1).unwrap();
        assert_eq!(sols.len(), 2);
        let gammas: Vec<f64> = sols.iter().map(|s| s.metric.x2).collect();
        assert!((gammas[0] - 1.0 / 2.0897559).abs() < 1e-4, "{gammas:?}");
        assert!((gammas[1] - 2.0897559).abs() < 1e-4);
        let x1s: Vec<f64> = sols.iter().map(|s| s.metric.x1).collect();
        assert!((x1s[0] - 0.7589).abs() < 1e-3);
        assert!((x1s[1] - 1.586).abs() < 1e-3);

        // m < n with the full four-solution inventory
        let sols = solve_equal_pair(2, 3).unwrap();
        assert_eq!(sols.len(), 4);
    }

    #[test]
    fn octic_roots_come_in_reciprocal_pairs() {
        let roots = scan_roots(|x| equal_pair_octic(4, 3, x), 1e-3, 1e3, 3000);
        for &r in &roots {
            assert!(
                roots.iter().any(|&s| (s - 1.0 / r).abs() < 1e-6),
                "no reciprocal for {r}"
            );
        }
    }

    #[test]
    fn solve_end_to_end_distinct() {
        let s = p(1, 2, 3);
        let report = solve(&s, &SolveOptions::default()).unwrap();
        assert_eq!(report.solutions.len(), 2);
        assert!(report.family_complete);
        assert_eq!(report.precision, Precision::Double);
        for sol in &report.solutions {
            assert!(sol.residual.norm < 1e-10);
            // the completed metric reproduces its own eliminations
            let x = (sol.metric.x1, sol.metric.x2, 1.0);
            let v4 = crate::ricci::v4_of(&s, x, sol.lambda);
            let v5 = crate::ricci::v5_of(&s, x, sol.lambda);
            let c = crate::space::c_from_x(&s, sol.metric.x2, 1.0);
            assert!((v4 - sol.metric.v4).abs() < 1e-10);
            assert!((v5 - sol.metric.v5).abs() < 1e-10);
            assert!((c - sol.metric.c).abs() < 1e-10);
        }
        // solutions arrive sorted
        assert!(report.solutions[0].metric.x1 < report.solutions[1].metric.x1);
    }

    #[test]
    fn solve_flags_degenerate_family() {
        let report = solve(&p(1, 1, 2), &SolveOptions::default()).unwrap();
        assert!(!report.family_complete);
        assert_eq!(report.solutions.len(), 2);
        assert!(report
            .diagnostics
            .iter()
            .any(|d| d.contains("family-incomplete")));
    }

    #[test]
    fn continuation_subset_of_multistart() {
        for (l, m, n) in [(1u32, 2, 3), (2, 3, 4), (2, 2, 3)] {
            let s = p(l, m, n);
            let cont = continue_from_flag(&s, Precision::Double);
            let multi = multistart(&s, auto_box(&s), 40, Precision::Double);
            for sol in &cont.solutions {
                assert!(
                    multi.iter().any(|ms| same_root(
                        (ms.metric.x1, ms.metric.x2),
                        (sol.metric.x1, sol.metric.x2)
                    )),
                    "continuation endpoint missing from multistart for {s}"
                );
            }
        }
    }

    #[test]
    fn closed_forms_agree_with_multistart() {
        // matched by distance: ordering can flip at ulp-level ties
        for n in 2..=4u32 {
            let s = p(n, n, n);
            let closed = solve_equal_all(n).unwrap();
            let multi = multistart(&s, (0.05, 10.0), 40, Precision::Double);
            assert_eq!(closed.len(), multi.len());
            for a in &closed {
                let nearest = multi
                    .iter()
                    .map(|b| {
                        (a.metric.x1 - b.metric.x1)
                            .abs()
                            .max((a.metric.x2 - b.metric.x2).abs())
                    })
                    .fold(f64::INFINITY, f64::min);
                assert!(nearest < 1e-8, "n = {n}: nearest match {nearest:.3e}");
            }
        }
    }
}

