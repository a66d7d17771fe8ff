//! Grouping Einstein solutions into isometry classes.
//!
//! Relabelings of `(l, m, n)` act by isometries: the diagonal coefficient
//! attached to the block of dimension `2ab` follows the unordered pair
//! `{a, b}`, while the fiber inner product transforms into one with the same
//! eigenvalues. Solutions are therefore compared after scaling the Einstein
//! constant to one, through the multiset of `(pair, coefficient)` entries
//! together with the sorted fiber Gram eigenvalues. Matching signatures are
//! necessary for an isometry and are the finest test the relabeling action
//! provides; classes are distinct up to that test.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::num::Real;
use crate::ricci::einstein_residual;
use crate::solver::{EinsteinSolution, SolveReport};
use crate::space::{fiber_gram_eigenvalues, InvariantMetric, SpaceParams};

/// A solution rescaled so its Einstein constant equals one.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormalizedSolution {
    pub x1: f64,
    pub x2: f64,
    pub x3: f64,
    pub v4: f64,
    pub v5: f64,
    pub c: f64,
    /// Eigenvalues of the scaled fiber Gram matrix, descending.
    pub rho0_eigs: (f64, f64),
}

/// Relabeling-invariant footprint of a normalized solution.
#[derive(Debug, Clone, PartialEq)]
pub struct IsometrySignature {
    /// `((a, b), coefficient)` entries sorted by pair then coefficient.
    pub diagonal: Vec<((u32, u32), f64)>,
    pub rho0_eigs: (f64, f64),
}

/// Scale all five metric coefficients by `lambda`; degree `-1` homogeneity
/// makes the new Einstein constant one. The shear is dimensionless and
/// unchanged. Idempotent once the constant is one.
pub fn normalize(sol: &EinsteinSolution) -> NormalizedSolution {
    let g = &sol.metric;
    let s = g.scaled(sol.lambda);
    NormalizedSolution {
        x1: s.x1,
        x2: s.x2,
        x3: s.x3,
        v4: s.v4,
        v5: s.v5,
        c: s.c,
        rho0_eigs: rho0_eigenvalues(s.v4, s.v5, s.c),
    }
}

/// Sorted (descending) eigenvalues of `[[v4 + c^2 v5, c v5], [c v5, v5]]`.
pub fn rho0_eigenvalues<R: Real>(v4: R, v5: R, c: R) -> (R, R) {
    fiber_gram_eigenvalues(v4, v5, c)
}

/// Residual of the normalized metric at Einstein constant one.
pub fn normalized_residual(p: &SpaceParams, sol: &EinsteinSolution) -> f64 {
    let n = normalize(sol);
    let g = InvariantMetric {
        x1: n.x1,
        x2: n.x2,
        x3: n.x3,
        v4: n.v4,
        v5: n.v5,
        c: n.c,
    };
    einstein_residual(p, &g, 1.0).norm
}

pub fn signature(p: &SpaceParams, sol: &EinsteinSolution) -> IsometrySignature {
    let n = normalize(sol);
    let mut diagonal = vec![
        (pair(p.l, p.m), n.x1),
        (pair(p.l, p.n), n.x2),
        (pair(p.m, p.n), n.x3),
    ];
    diagonal.sort_by(|a, b| {
        a.0.cmp(&b.0)
            .then(a.1.partial_cmp(&b.1).unwrap_or(std::cmp::Ordering::Equal))
    });
    IsometrySignature {
        diagonal,
        rho0_eigs: n.rho0_eigs,
    }
}

fn pair(a: u32, b: u32) -> (u32, u32) {
    (a.min(b), a.max(b))
}

/// Relative matching tolerance, aligned with the solver dedup tolerance.
const MATCH_REL: f64 = 1e-6;

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= MATCH_REL * a.abs().max(b.abs()).max(1e-12)
}

impl IsometrySignature {
    /// Tolerance match; identical pair labels are required entrywise, so
    /// solutions with different diagonal multisets never merge.
    pub fn matches(&self, other: &IsometrySignature) -> bool {
        if self.diagonal.len() != other.diagonal.len() {
            return false;
        }
        for ((pa, ca), (pb, cb)) in self.diagonal.iter().zip(&other.diagonal) {
            if pa != pb || !close(*ca, *cb) {
                return false;
            }
        }
        close(self.rho0_eigs.0, other.rho0_eigs.0) && close(self.rho0_eigs.1, other.rho0_eigs.1)
    }
}

/// Partition the solutions of several reports over permutations of one
/// parameter multiset into isometry classes. Entries are `(report index,
/// solution index)` pairs.
pub fn isometry_classes(reports: &[&SolveReport]) -> Result<Vec<Vec<(usize, usize)>>, Error> {
    if reports.is_empty() {
        return Ok(Vec::new());
    }
    let canon = |p: &SpaceParams| {
        let mut v = [p.l, p.m, p.n];
        v.sort_unstable();
        v
    };
    let base = canon(&reports[0].params);
    for r in reports {
        if canon(&r.params) != base {
            return Err(Error::InconsistentParams(format!(
                "{} is not a permutation of {}",
                r.params, reports[0].params
            )));
        }
    }

    let mut items: Vec<((usize, usize), IsometrySignature)> = Vec::new();
    for (ri, r) in reports.iter().enumerate() {
        for (si, sol) in r.solutions.iter().enumerate() {
            items.push(((ri, si), signature(&r.params, sol)));
        }
    }

    let mut classes: Vec<(IsometrySignature, Vec<(usize, usize)>)> = Vec::new();
    for (key, sig) in items {
        if let Some((_, members)) = classes.iter_mut().find(|(s, _)| s.matches(&sig)) {
            members.push(key);
        } else {
            classes.push((sig, vec![key]));
        }
    }
    Ok(classes.into_iter().map(|(_, members)| members).collect())
}

/// Partition the solutions of a single report, used when assembling it.
pub(crate) fn partition_report_solutions(
    p: &SpaceParams,
    solutions: &[EinsteinSolution],
) -> Vec<Vec<usize>> {
    let mut classes: Vec<(IsometrySignature, Vec<usize>)> = Vec::new();
    for (i, sol) in solutions.iter().enumerate() {
        let sig = signature(p, sol);
        if let Some((_, members)) = classes.iter_mut().find(|(s, _)| s.matches(&sig)) {
            members.push(i);
        } else {
            classes.push((sig, vec![i]));
        }
    }
    classes.into_iter().map(|(_, m)| m).collect()
}
