//! Parameters, module dimensions, the six-parameter invariant metric and the
//! structure constants of `SU(l+m+n)/SU(l)xSU(m)xSU(n)`.
//!
//! The tangent space splits into three off-diagonal blocks `f1, f2, f3` of
//! real dimensions `2lm, 2ln, 2mn` plus a two-dimensional fiber spanned by two
//! traceless diagonal directions `Z4, Z5`. An invariant metric is a positive
//! diagonal scaling `x1, x2, x3` of the Killing form on the blocks together
//! with a fiber inner product parametrised by `(v4, v5, c)` through a unit
//! lower-triangular congruence.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::num::Real;

/// The triple `(l, m, n)` with its derived quantities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceParams {
    pub l: u32,
    pub m: u32,
    pub n: u32,
    /// `l + m + n`.
    pub total: u32,
    /// Dimension of the block paired with `{l, m}`: `2lm`.
    pub d1: u64,
    /// Dimension of the block paired with `{l, n}`: `2ln`.
    pub d2: u64,
    /// Dimension of the block paired with `{m, n}`: `2mn`.
    pub d3: u64,
    /// True when `lm = 1`, `ln = 1` or `mn = 1`. In those cases the
    /// six-parameter family below is not the most general invariant metric
    /// and solve reports are marked family-incomplete.
    pub degenerate: bool,
}

impl SpaceParams {
    pub fn new(l: u32, m: u32, n: u32) -> Result<Self, Error> {
        if l == 0 || m == 0 || n == 0 {
            return Err(Error::InvalidParams { l, m, n });
        }
        let (l64, m64, n64) = (l as u64, m as u64, n as u64);
        Ok(SpaceParams {
            l,
            m,
            n,
            total: l + m + n,
            d1: 2 * l64 * m64,
            d2: 2 * l64 * n64,
            d3: 2 * m64 * n64,
            degenerate: l64 * m64 == 1 || l64 * n64 == 1 || m64 * n64 == 1,
        })
    }

    /// Real dimension of the total space: `d1 + d2 + d3 + 2`.
    pub fn dim(&self) -> u64 {
        self.d1 + self.d2 + self.d3 + 2
    }

    /// The parameters as exact scalars.
    pub fn lmn<R: Real>(&self) -> (R, R, R) {
        (
            R::of(self.l as f64),
            R::of(self.m as f64),
            R::of(self.n as f64),
        )
    }

    pub fn total_r<R: Real>(&self) -> R {
        R::of(self.total as f64)
    }

    /// All six orderings of `(l, m, n)`.
    pub fn permutations(&self) -> Vec<SpaceParams> {
        let (l, m, n) = (self.l, self.m, self.n);
        [
            (l, m, n),
            (l, n, m),
            (m, l, n),
            (m, n, l),
            (n, l, m),
            (n, m, l),
        ]
        .iter()
        .map(|&(a, b, c)| SpaceParams::new(a, b, c).expect("positive"))
        .collect()
    }
}

impl std::fmt::Display for SpaceParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "M({},{},{})", self.l, self.m, self.n)
    }
}

/// The six-parameter invariant metric `(x1, x2, x3, v4, v5, c)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InvariantMetric<R> {
    pub x1: R,
    pub x2: R,
    pub x3: R,
    pub v4: R,
    pub v5: R,
    /// Shear of the fiber inner product; any real value is admissible.
    pub c: R,
}

impl<R: Real> InvariantMetric<R> {
    pub fn new(x1: R, x2: R, x3: R, v4: R, v5: R, c: R) -> Result<Self, Error> {
        let g = InvariantMetric { x1, x2, x3, v4, v5, c };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<(), Error> {
        let pos = |v: R| v.is_finite() && v > R::zero();
        if !(pos(self.x1) && pos(self.x2) && pos(self.x3) && pos(self.v4) && pos(self.v5))
            || !self.c.is_finite()
        {
            return Err(Error::InvalidMetric(
                "metric coefficients x1,x2,x3,v4,v5 must be positive and finite".into(),
            ));
        }
        // v4, v5 > 0 already force the fiber Gram matrix positive definite
        // (trace and determinant are both positive); check it explicitly.
        let (e1, e2) = fiber_gram_eigenvalues(self.v4, self.v5, self.c);
        if !(e1 > R::zero() && e2 > R::zero()) {
            return Err(Error::InvalidMetric(
                "fiber Gram matrix must be positive definite".into(),
            ));
        }
        Ok(())
    }

    /// Fiber Gram matrix `[[v4 + c^2 v5, c v5], [c v5, v5]]`.
    pub fn fiber_gram(&self) -> [[R; 2]; 2] {
        let off = self.c * self.v5;
        [
            [self.v4 + self.c * self.c * self.v5, off],
            [off, self.v5],
        ]
    }

    /// Uniform scaling `mu * g`; `c` is dimensionless and unchanged.
    pub fn scaled(&self, mu: R) -> Self {
        InvariantMetric {
            x1: mu * self.x1,
            x2: mu * self.x2,
            x3: mu * self.x3,
            v4: mu * self.v4,
            v5: mu * self.v5,
            c: self.c,
        }
    }

    pub fn to_f64(&self) -> InvariantMetric<f64> {
        InvariantMetric {
            x1: self.x1.lo(),
            x2: self.x2.lo(),
            x3: self.x3.lo(),
            v4: self.v4.lo(),
            v5: self.v5.lo(),
            c: self.c.lo(),
        }
    }
}

/// Sorted (descending) eigenvalues of the symmetric 2x2 fiber Gram matrix.
pub fn fiber_gram_eigenvalues<R: Real>(v4: R, v5: R, c: R) -> (R, R) {
    let a = v4 + c * c * v5;
    let d = v5;
    let b = c * v5;
    let half = R::of(0.5);
    let mean = (a + d) * half;
    let disc = ((a - d) * (a - d) * R::of(0.25) + b * b).sqrt();
    (mean + disc, mean - disc)
}

/// Which orthonormal frame the structure constants refer to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StructureKind {
    /// Constants of the Killing-orthonormal frame; fully symmetric in
    /// `(k; i, j)`.
    Killing,
    /// Constants of the metric-adapted frame; symmetric only in the lower
    /// index pair.
    MetricAdapted,
}

/// Sparse table of the nonzero structure constants, indexed by `(k; i, j)`
/// with `i, j, k` in `1..=5`.
#[derive(Debug, Clone)]
pub struct StructureTable<R> {
    pub kind: StructureKind,
    entries: Vec<((u8, u8, u8), R)>,
}

impl<R: Real> StructureTable<R> {
    fn new(kind: StructureKind, entries: Vec<((u8, u8, u8), R)>) -> Self {
        StructureTable { kind, entries }
    }

    /// Look up `(k; i, j)`, applying the symmetries of the kind. Triples not
    /// stored are zero.
    pub fn get(&self, k: u8, i: u8, j: u8) -> R {
        let matches = |(sk, si, sj): (u8, u8, u8)| -> bool {
            let lower = (sk, si, sj) == (k, i, j) || (sk, sj, si) == (k, i, j);
            match self.kind {
                StructureKind::MetricAdapted => lower,
                StructureKind::Killing => {
                    // Fully symmetric: all permutations of the triple agree.
                    let mut a = [sk, si, sj];
                    let mut b = [k, i, j];
                    a.sort_unstable();
                    b.sort_unstable();
                    lower || a == b
                }
            }
        };
        for &(idx, v) in &self.entries {
            if matches(idx) {
                return v;
            }
        }
        R::zero()
    }

    pub fn nonzero(&self) -> impl Iterator<Item = ((u8, u8, u8), R)> + '_ {
        self.entries.iter().copied()
    }
}

/// Killing-frame structure constants of the space.
///
/// The seven possibly-nonzero triples and their closed forms:
/// `(3;1,2) = lmn/N`, `(4;1,1) = 0`, `(4;2,2) = l/(l+m)`, `(4;3,3) = m/(l+m)`,
/// `(5;1,1) = (l+m)/N`, `(5;2,2) = mn/(N(l+m))`, `(5;3,3) = ln/(N(l+m))`.
pub fn b_structure_constants<R: Real>(p: &SpaceParams) -> StructureTable<R> {
    let (l, m, n) = p.lmn::<R>();
    let nn = p.total_r::<R>();
    let lm = l + m;
    StructureTable::new(
        StructureKind::Killing,
        vec![
            ((3, 1, 2), l * m * n / nn),
            ((4, 1, 1), R::zero()),
            ((4, 2, 2), l / lm),
            ((4, 3, 3), m / lm),
            ((5, 1, 1), lm / nn),
            ((5, 2, 2), m * n / (nn * lm)),
            ((5, 3, 3), l * n / (nn * lm)),
        ],
    )
}

/// The shear that kills the mixed Ricci term for given `(x2, x3)`:
/// `c = sqrt(lmn/N) (x2^2 - x3^2) / (l x3^2 + m x2^2)`.
pub fn c_from_x<R: Real>(p: &SpaceParams, x2: R, x3: R) -> R {
    let (l, m, n) = p.lmn::<R>();
    let nn = p.total_r::<R>();
    (l * m * n / nn).sqrt() * (x2 * x2 - x3 * x3) / (l * x3 * x3 + m * x2 * x2)
}

/// Metric-adapted structure constants for an arbitrary shear `c`.
///
/// Only the `(5;2,2)` and `(5;3,3)` entries differ from the Killing table:
/// they pick up `c^2` and cross terms from the congruence of the fiber frame.
pub fn metric_structure_constants<R: Real>(
    p: &SpaceParams,
    g: &InvariantMetric<R>,
) -> StructureTable<R> {
    let (l, m, n) = p.lmn::<R>();
    let nn = p.total_r::<R>();
    let lm = l + m;
    let c = g.c;
    let cross = R::of(2.0) * c * (l * m * n).sqrt() / (lm * nn.sqrt());
    StructureTable::new(
        StructureKind::MetricAdapted,
        vec![
            ((3, 1, 2), l * m * n / nn),
            ((4, 1, 1), R::zero()),
            ((4, 2, 2), l / lm),
            ((4, 3, 3), m / lm),
            ((5, 1, 1), lm / nn),
            ((5, 2, 2), c * c * l / lm + m * n / (nn * lm) + cross),
            ((5, 3, 3), c * c * m / lm + l * n / (nn * lm) - cross),
        ],
    )
}

/// The `(5;2,2)` and `(5;3,3)` entries after eliminating `c` through
/// [`c_from_x`]; closed forms in `(x2, x3)` alone.
pub fn eliminated_fiber_constants<R: Real>(p: &SpaceParams, x2: R, x3: R) -> (R, R) {
    let (l, m, n) = p.lmn::<R>();
    let nn = p.total_r::<R>();
    let lm = l + m;
    let den = l * x3 * x3 + m * x2 * x2;
    let den2 = den * den;
    let c522 = m * lm * n * x2 * x2 * x2 * x2 / (nn * den2);
    let c533 = l * lm * n * x3 * x3 * x3 * x3 / (nn * den2);
    (c522, c533)
}

/// Normalisation constants of the two fiber generators:
/// `c4 = sqrt((l+m) n) / (N sqrt(2))`, `c5 = sqrt(lm) / (sqrt(2N) sqrt(l+m))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormConstants<R> {
    pub c4: R,
    pub c5: R,
}

pub fn norm_constants<R: Real>(p: &SpaceParams) -> NormConstants<R> {
    let (l, m, n) = p.lmn::<R>();
    let nn = p.total_r::<R>();
    let two = R::of(2.0);
    NormConstants {
        c4: ((l + m) * n).sqrt() / (nn * two.sqrt()),
        c5: (l * m).sqrt() / ((two * nn).sqrt() * (l + m).sqrt()),
    }
}
