//! Enumeration of the indecomposable non-Kähler C-spaces: the classical
//! families by partition conditions, and the exceptional catalog as
//! validated static data.
//!
//! Every record is an even-rank torus bundle over a flag manifold; the
//! second Betti number of the total space is the flag's minus the fiber
//! rank, and a semisimple stabilizer forces it to zero.

use serde::{Deserialize, Serialize};

use crate::error::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Group {
    /// `SU(rank + 1)`
    A(u32),
    /// `SO(2 rank + 1)`
    B(u32),
    /// `Sp(rank)`
    C(u32),
    /// `SO(2 rank)`
    D(u32),
    G2,
    F4,
    E6,
    E7,
    E8,
}

impl Group {
    pub fn rank(&self) -> u32 {
        match *self {
            Group::A(r) | Group::B(r) | Group::C(r) | Group::D(r) => r,
            Group::G2 => 2,
            Group::F4 => 4,
            Group::E6 => 6,
            Group::E7 => 7,
            Group::E8 => 8,
        }
    }
}

impl std::fmt::Display for Group {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match *self {
            Group::A(r) => write!(f, "SU({})", r + 1),
            Group::B(r) => write!(f, "SO({})", 2 * r + 1),
            Group::C(r) => write!(f, "Sp({r})"),
            Group::D(r) => write!(f, "SO({})", 2 * r),
            Group::G2 => write!(f, "G2"),
            Group::F4 => write!(f, "F4"),
            Group::E6 => write!(f, "E6"),
            Group::E7 => write!(f, "E7"),
            Group::E8 => write!(f, "E8"),
        }
    }
}

/// One simple (or classical block) factor of a stabilizer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Factor {
    /// `SU(k)`; `Su(1)` is the trivial group and legal in partition labels.
    Su(u32),
    /// `SO(2m + 1)`
    SoOdd(u32),
    /// `SO(2m)`
    SoEven(u32),
    /// `Sp(m)`
    Sp(u32),
    /// Series factor inside an exceptional group, e.g. `A(3)`, `D(4)`.
    Series(char, u32),
    /// Long-root realization of a series factor (distinct conjugacy class).
    SeriesLong(char, u32),
    /// Short-root realization.
    SeriesShort(char, u32),
    /// An `E6` subgroup (inside `E8`).
    ESix,
}

impl std::fmt::Display for Factor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match *self {
            Factor::Su(k) => write!(f, "SU({k})"),
            Factor::SoOdd(m) => write!(f, "SO({})", 2 * m + 1),
            Factor::SoEven(m) => write!(f, "SO({})", 2 * m),
            Factor::Sp(m) => write!(f, "Sp({m})"),
            Factor::Series(s, r) => write!(f, "{s}{r}"),
            Factor::SeriesLong(s, r) => write!(f, "{s}{r}l"),
            Factor::SeriesShort(s, r) => write!(f, "{s}{r}s"),
            Factor::ESix => write!(f, "E6"),
        }
    }
}

/// Stabilizer description: simple factors plus a central torus.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stabilizer {
    pub factors: Vec<Factor>,
    pub torus_rank: u32,
}

impl std::fmt::Display for Stabilizer {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.factors.is_empty() && self.torus_rank == 0 {
            return write!(f, "{{e}}");
        }
        let mut parts: Vec<String> = self.factors.iter().map(|x| x.to_string()).collect();
        if self.torus_rank > 0 {
            parts.push(format!("T{}", self.torus_rank));
        }
        write!(f, "{}", parts.join("x"))
    }
}

/// Stabilizer shape: semisimple, reductive with center, or a bare torus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CType {
    Semistrict,
    Strict,
    Abelian,
}

/// One classified homogeneous space.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CSpaceRecord {
    pub group: Group,
    pub stabilizer: Stabilizer,
    pub ctype: CType,
    /// Even rank of the torus fiber.
    pub fiber_rank: u32,
    pub b2_flag: u32,
    pub b2_space: u32,
    /// White simple roots of the base flag, for the exceptional catalog.
    pub flag_white_roots: Option<Vec<u8>>,
    /// Distinguishes inequivalent realizations sharing a label.
    pub realization: Option<char>,
}

impl CSpaceRecord {
    pub fn label(&self) -> String {
        format!("{}/{}", self.group, self.stabilizer)
    }

    fn validate(&self) -> Result<(), Error> {
        let fail = |msg: String| Err(Error::CatalogIntegrity(format!("{}: {msg}", self.label())));
        if self.fiber_rank < 2 || self.fiber_rank % 2 != 0 {
            return fail(format!("fiber rank {} must be even and >= 2", self.fiber_rank));
        }
        if self.b2_flag < self.fiber_rank || self.b2_space != self.b2_flag - self.fiber_rank {
            return fail(format!(
                "b2 mismatch: {} != {} - {}",
                self.b2_space, self.b2_flag, self.fiber_rank
            ));
        }
        match self.ctype {
            CType::Semistrict => {
                if self.stabilizer.torus_rank != 0 {
                    return fail("semistrict stabilizer carries a torus".into());
                }
                if self.b2_space != 0 {
                    return fail("semistrict total space must have trivial b2".into());
                }
            }
            CType::Strict => {
                if self.stabilizer.torus_rank == 0 || self.stabilizer.factors.is_empty() {
                    return fail("strict stabilizer needs both a torus and simple factors".into());
                }
            }
            CType::Abelian => {
                if !self.stabilizer.factors.is_empty() || self.stabilizer.torus_rank == 0 {
                    return fail("abelian stabilizer must be a nontrivial torus".into());
                }
            }
        }
        Ok(())
    }
}

/// Classical family selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ClassicalFamily {
    A,
    B,
    C,
    D,
}

impl std::str::FromStr for ClassicalFamily {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "A" | "a" => Ok(Self::A),
            "B" | "b" => Ok(Self::B),
            "C" | "c" => Ok(Self::C),
            "D" | "d" => Ok(Self::D),
            other => Err(format!("unknown family `{other}` (A|B|C|D)")),
        }
    }
}

/// Partitions of `total` into exactly `parts` weakly decreasing positive
/// summands.
fn partitions(total: u32, parts: u32) -> Vec<Vec<u32>> {
    fn rec(total: u32, parts: u32, max: u32, acc: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if parts == 0 {
            if total == 0 {
                out.push(acc.clone());
            }
            return;
        }
        // every remaining part is at least one
        let lo = total.saturating_sub((parts - 1) * max).max(1);
        let hi = (total + 1 - parts).min(max);
        for v in (lo..=hi).rev() {
            acc.push(v);
            rec(total - v, parts - 1, v, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    if parts == 0 || total < parts {
        return out;
    }
    rec(total, parts, total, &mut Vec::new(), &mut out);
    out
}

/// Enumerate the classical C-spaces of one family up to a group rank bound.
///
/// For `SU(l)` a partition into `p` blocks gives a semistrict space for
/// `p >= 3` odd, strict types for `p >= 4` with `0 < t < p - 1` and `p - t`
/// odd, and abelian types over the full flag for `l >= 4` with `l - t` odd.
/// The orthogonal and symplectic families work from `l = l_1 + .. + l_q + m`
/// with an `SO`/`Sp` tail and even parity conditions instead.
pub fn enumerate_classical(family: ClassicalFamily, rank_max: u32) -> Vec<CSpaceRecord> {
    let mut out = Vec::new();
    for rank in 2..=rank_max {
        match family {
            ClassicalFamily::A => enumerate_a(rank, &mut out),
            ClassicalFamily::B | ClassicalFamily::C | ClassicalFamily::D => {
                enumerate_bcd(family, rank, &mut out)
            }
        }
    }
    for r in &out {
        r.validate().expect("enumerated record violates invariants");
    }
    out
}

fn enumerate_a(rank: u32, out: &mut Vec<CSpaceRecord>) {
    let l = rank + 1; // SU(l)
    let group = Group::A(rank);
    for p in 3..=l {
        for part in partitions(l, p) {
            let factors: Vec<Factor> = part.iter().map(|&k| Factor::Su(k)).collect();
            let b2_flag = p - 1;
            // semistrict: all of the center removed, p odd keeps the fiber even
            if p % 2 == 1 {
                out.push(CSpaceRecord {
                    group,
                    stabilizer: Stabilizer {
                        factors: factors.clone(),
                        torus_rank: 0,
                    },
                    ctype: CType::Semistrict,
                    fiber_rank: p - 1,
                    b2_flag,
                    b2_space: 0,
                    flag_white_roots: None,
                    realization: None,
                });
            }
            // strict: a proper torus survives; the all-ones partition is the
            // abelian case handled below
            if p >= 4 && part.iter().any(|&k| k >= 2) {
                for t in 1..(p - 1) {
                    if (p - t) % 2 == 1 {
                        out.push(CSpaceRecord {
                            group,
                            stabilizer: Stabilizer {
                                factors: factors.clone(),
                                torus_rank: t,
                            },
                            ctype: CType::Strict,
                            fiber_rank: p - 1 - t,
                            b2_flag,
                            b2_space: t,
                            flag_white_roots: None,
                            realization: None,
                        });
                    }
                }
            }
        }
    }
    // abelian: a torus inside the full flag of SU(l)
    if l >= 4 {
        for t in 1..(l - 1) {
            if (l - t) % 2 == 1 {
                out.push(CSpaceRecord {
                    group,
                    stabilizer: Stabilizer {
                        factors: vec![],
                        torus_rank: t,
                    },
                    ctype: CType::Abelian,
                    fiber_rank: l - 1 - t,
                    b2_flag: l - 1,
                    b2_space: t,
                    flag_white_roots: None,
                    realization: None,
                });
            }
        }
    }
}

fn enumerate_bcd(family: ClassicalFamily, rank: u32, out: &mut Vec<CSpaceRecord>) {
    let group = match family {
        ClassicalFamily::B => Group::B(rank),
        ClassicalFamily::C => Group::C(rank),
        ClassicalFamily::D => Group::D(rank),
        ClassicalFamily::A => unreachable!(),
    };
    let tail = |m: u32| match family {
        ClassicalFamily::B => (m > 0).then_some(Factor::SoOdd(m)),
        ClassicalFamily::C => (m > 0).then_some(Factor::Sp(m)),
        ClassicalFamily::D => (m > 0).then_some(Factor::SoEven(m)),
        ClassicalFamily::A => unreachable!(),
    };
    // SO(2m) with m = 1 is a torus, not a semisimple tail
    let tail_ok = |m: u32| !(matches!(family, ClassicalFamily::D) && m == 1);

    for q in 2..=rank {
        for m in 0..=(rank - q) {
            if !tail_ok(m) {
                continue;
            }
            for part in partitions(rank - m, q) {
                let mut factors: Vec<Factor> = part.iter().map(|&k| Factor::Su(k)).collect();
                if let Some(t) = tail(m) {
                    factors.push(t);
                }
                let b2_flag = q;
                if q % 2 == 0 {
                    out.push(CSpaceRecord {
                        group,
                        stabilizer: Stabilizer {
                            factors: factors.clone(),
                            torus_rank: 0,
                        },
                        ctype: CType::Semistrict,
                        fiber_rank: q,
                        b2_flag,
                        b2_space: 0,
                        flag_white_roots: None,
                        realization: None,
                    });
                }
                let semisimple = part.iter().any(|&k| k >= 2) || m > 0;
                if q >= 3 && semisimple {
                    for t in 1..q {
                        if (q - t) % 2 == 0 {
                            out.push(CSpaceRecord {
                                group,
                                stabilizer: Stabilizer {
                                    factors: factors.clone(),
                                    torus_rank: t,
                                },
                                ctype: CType::Strict,
                                fiber_rank: q - t,
                                b2_flag,
                                b2_space: t,
                                flag_white_roots: None,
                                realization: None,
                            });
                        }
                    }
                }
            }
        }
    }
    // abelian over the full flag
    let min_rank = match family {
        ClassicalFamily::B | ClassicalFamily::C => 3,
        ClassicalFamily::D => 4,
        ClassicalFamily::A => unreachable!(),
    };
    if rank >= min_rank {
        for t in 1..rank {
            if (rank - t) % 2 == 0 {
                out.push(CSpaceRecord {
                    group,
                    stabilizer: Stabilizer {
                        factors: vec![],
                        torus_rank: t,
                    },
                    ctype: CType::Abelian,
                    fiber_rank: rank - t,
                    b2_flag: rank,
                    b2_space: t,
                    flag_white_roots: None,
                    realization: None,
                });
            }
        }
    }
}

// ---------------------------------------------------------------------------
// exceptional catalog

/// Compact encoding of a factor: series letter, rank, variant
/// (0 plain, 1 long, 2 short, 3 the E6 subgroup).
type RawFactor = (char, u32, u8);

struct Row {
    group: Group,
    factors: &'static [RawFactor],
    torus: u32,
    ctype: CType,
    white: &'static [u8],
    fiber: u32,
    b2_flag: u32,
    b2_space: u32,
    realization: Option<char>,
}

const fn row(
    group: Group,
    factors: &'static [RawFactor],
    torus: u32,
    ctype: CType,
    white: &'static [u8],
    fiber: u32,
    b2_flag: u32,
    b2_space: u32,
) -> Row {
    Row {
        group,
        factors,
        torus,
        ctype,
        white,
        fiber,
        b2_flag,
        b2_space,
        realization: None,
    }
}

const fn row_r(
    group: Group,
    factors: &'static [RawFactor],
    torus: u32,
    ctype: CType,
    white: &'static [u8],
    fiber: u32,
    b2_flag: u32,
    b2_space: u32,
    realization: char,
) -> Row {
    Row {
        group,
        factors,
        torus,
        ctype,
        white,
        fiber,
        b2_flag,
        b2_space,
        realization: Some(realization),
    }
}

use CType::{Abelian as AB, Semistrict as SS, Strict as ST};

#[rustfmt::skip]
const EXCEPTIONAL_ROWS: &[Row] = &[
    // G2
    row(Group::G2, &[], 0, SS, &[], 2, 2, 0),
    // F4
    row(Group::F4, &[], 0, SS, &[], 4, 4, 0),
    row(Group::F4, &[], 2, AB, &[], 2, 4, 2),
    row(Group::F4, &[('A',1,1)], 1, ST, &[1], 2, 3, 1),
    row(Group::F4, &[('A',1,2)], 1, ST, &[4], 2, 3, 1),
    row(Group::F4, &[('A',2,1)], 0, SS, &[1,2], 2, 2, 0),
    row(Group::F4, &[('A',2,2)], 0, SS, &[3,4], 2, 2, 0),
    row(Group::F4, &[('A',1,0),('A',1,0)], 0, SS, &[1,4], 2, 2, 0),
    row(Group::F4, &[('B',2,0)], 0, SS, &[2,3], 2, 2, 0),
    // E6
    row(Group::E6, &[], 0, SS, &[], 6, 6, 0),
    row(Group::E6, &[], 2, AB, &[], 4, 6, 2),
    row(Group::E6, &[], 4, AB, &[], 2, 6, 4),
    row(Group::E6, &[('A',1,0)], 1, ST, &[1], 4, 5, 1),
    row(Group::E6, &[('A',1,0)], 3, ST, &[1], 2, 5, 3),
    row(Group::E6, &[('A',1,0),('A',1,0)], 0, SS, &[3,5], 4, 4, 0),
    row(Group::E6, &[('A',1,0),('A',1,0)], 2, ST, &[3,5], 2, 4, 2),
    row(Group::E6, &[('A',2,0)], 0, SS, &[4,5], 4, 4, 0),
    row(Group::E6, &[('A',2,0)], 2, ST, &[4,5], 2, 4, 2),
    row(Group::E6, &[('A',1,0),('A',1,0),('A',1,0)], 1, ST, &[1,3,5], 2, 3, 1),
    row(Group::E6, &[('A',2,0),('A',1,0)], 1, ST, &[2,4,5], 2, 3, 1),
    row(Group::E6, &[('A',3,0)], 1, ST, &[3,4,5], 2, 3, 1),
    row(Group::E6, &[('A',4,0)], 0, SS, &[2,3,4,5], 2, 2, 0),
    row(Group::E6, &[('A',3,0),('A',1,0)], 0, SS, &[1,3,4,5], 2, 2, 0),
    row(Group::E6, &[('A',2,0),('A',2,0)], 0, SS, &[1,2,4,5], 2, 2, 0),
    row(Group::E6, &[('A',2,0),('A',1,0),('A',1,0)], 0, SS, &[2,4,5,6], 2, 2, 0),
    row(Group::E6, &[('D',4,0)], 0, SS, &[2,3,4,6], 2, 2, 0),
    // E7
    row(Group::E7, &[], 1, AB, &[], 6, 7, 1),
    row(Group::E7, &[], 3, AB, &[], 4, 7, 3),
    row(Group::E7, &[], 5, AB, &[], 2, 7, 5),
    row(Group::E7, &[('A',1,0)], 0, SS, &[1], 6, 6, 0),
    row(Group::E7, &[('A',1,0)], 2, ST, &[1], 4, 6, 2),
    row(Group::E7, &[('A',1,0)], 4, ST, &[1], 2, 6, 4),
    row(Group::E7, &[('A',1,0),('A',1,0)], 1, ST, &[4,6], 4, 5, 1),
    row(Group::E7, &[('A',1,0),('A',1,0)], 3, ST, &[4,6], 2, 5, 3),
    row(Group::E7, &[('A',2,0)], 1, ST, &[5,6], 4, 5, 1),
    row(Group::E7, &[('A',2,0)], 3, ST, &[5,6], 2, 5, 3),
    row_r(Group::E7, &[('A',1,0),('A',1,0),('A',1,0)], 0, SS, &[1,3,5], 4, 4, 0, 'A'),
    row_r(Group::E7, &[('A',1,0),('A',1,0),('A',1,0)], 2, ST, &[1,3,5], 2, 4, 2, 'A'),
    row_r(Group::E7, &[('A',1,0),('A',1,0),('A',1,0)], 0, SS, &[1,3,7], 4, 4, 0, 'B'),
    row_r(Group::E7, &[('A',1,0),('A',1,0),('A',1,0)], 2, ST, &[1,3,7], 2, 4, 2, 'B'),
    row(Group::E7, &[('A',2,0),('A',1,0)], 0, SS, &[3,5,6], 4, 4, 0),
    row(Group::E7, &[('A',2,0),('A',1,0)], 2, ST, &[3,5,6], 2, 4, 2),
    row(Group::E7, &[('A',3,0)], 0, SS, &[4,5,6], 4, 4, 0),
    row(Group::E7, &[('A',3,0)], 2, ST, &[4,5,6], 2, 4, 2),
    row(Group::E7, &[('A',4,0)], 1, ST, &[1,2,3,4], 2, 3, 1),
    row_r(Group::E7, &[('A',3,0),('A',1,0)], 1, ST, &[1,2,3,5], 2, 3, 1, 'A'),
    row_r(Group::E7, &[('A',3,0),('A',1,0)], 1, ST, &[1,2,3,7], 2, 3, 1, 'B'),
    row(Group::E7, &[('A',2,0),('A',2,0)], 1, ST, &[1,2,4,5], 2, 3, 1),
    row(Group::E7, &[('A',2,0),('A',1,0),('A',1,0)], 1, ST, &[1,2,4,6], 2, 3, 1),
    row(Group::E7, &[('A',1,0),('A',1,0),('A',1,0),('A',1,0)], 1, ST, &[1,3,5,7], 2, 3, 1),
    row(Group::E7, &[('D',4,0)], 1, ST, &[3,4,5,7], 2, 3, 1),
    row_r(Group::E7, &[('A',5,0)], 0, SS, &[1,2,3,4,5], 2, 2, 0, 'A'),
    row_r(Group::E7, &[('A',5,0)], 0, SS, &[1,2,3,4,7], 2, 2, 0, 'B'),
    row(Group::E7, &[('A',4,0),('A',1,0)], 0, SS, &[1,2,3,4,6], 2, 2, 0),
    row(Group::E7, &[('A',3,0),('A',2,0)], 0, SS, &[1,2,3,5,6], 2, 2, 0),
    row(Group::E7, &[('A',3,0),('A',1,0),('A',1,0)], 0, SS, &[1,2,3,5,7], 2, 2, 0),
    row(Group::E7, &[('D',4,0),('A',1,0)], 0, SS, &[1,3,4,5,7], 2, 2, 0),
    row(Group::E7, &[('A',2,0),('A',2,0),('A',1,0)], 0, SS, &[1,2,5,6,7], 2, 2, 0),
    row(Group::E7, &[('A',2,0),('A',1,0),('A',1,0),('A',1,0)], 0, SS, &[1,3,5,6,7], 2, 2, 0),
    row(Group::E7, &[('D',5,0)], 0, SS, &[3,4,5,6,7], 2, 2, 0),
    // E8
    row(Group::E8, &[], 0, SS, &[], 8, 8, 0),
    row(Group::E8, &[], 2, AB, &[], 6, 8, 2),
    row(Group::E8, &[], 4, AB, &[], 4, 8, 4),
    row(Group::E8, &[], 6, AB, &[], 2, 8, 6),
    row(Group::E8, &[('A',1,0)], 1, ST, &[1], 6, 7, 1),
    row(Group::E8, &[('A',1,0)], 3, ST, &[1], 4, 7, 3),
    row(Group::E8, &[('A',1,0)], 5, ST, &[1], 2, 7, 5),
    row(Group::E8, &[('A',2,0)], 0, SS, &[1,2], 6, 6, 0),
    row(Group::E8, &[('A',2,0)], 2, ST, &[1,2], 4, 6, 2),
    row(Group::E8, &[('A',2,0)], 4, ST, &[1,2], 2, 6, 4),
    row(Group::E8, &[('A',1,0),('A',1,0)], 0, SS, &[1,3], 6, 6, 0),
    row(Group::E8, &[('A',1,0),('A',1,0)], 2, ST, &[1,3], 4, 6, 2),
    row(Group::E8, &[('A',1,0),('A',1,0)], 4, ST, &[1,3], 2, 6, 4),
    row(Group::E8, &[('A',3,0)], 1, ST, &[1,2,3], 4, 5, 1),
    row(Group::E8, &[('A',3,0)], 3, ST, &[1,2,3], 2, 5, 3),
    row(Group::E8, &[('A',2,0),('A',1,0)], 1, ST, &[1,2,4], 4, 5, 1),
    row(Group::E8, &[('A',2,0),('A',1,0)], 3, ST, &[1,2,4], 2, 5, 3),
    row(Group::E8, &[('A',1,0),('A',1,0),('A',1,0)], 1, ST, &[1,3,5], 4, 5, 1),
    row(Group::E8, &[('A',1,0),('A',1,0),('A',1,0)], 3, ST, &[1,3,5], 2, 5, 3),
    row(Group::E8, &[('A',4,0)], 0, SS, &[1,2,3,4], 4, 4, 0),
    row(Group::E8, &[('A',4,0)], 2, ST, &[1,2,3,4], 2, 4, 2),
    row(Group::E8, &[('A',3,0),('A',1,0)], 0, SS, &[1,2,3,5], 4, 4, 0),
    row(Group::E8, &[('A',3,0),('A',1,0)], 2, ST, &[1,2,3,5], 2, 4, 2),
    row(Group::E8, &[('A',2,0),('A',2,0)], 0, SS, &[1,2,4,5], 4, 4, 0),
    row(Group::E8, &[('A',2,0),('A',2,0)], 2, ST, &[1,2,4,5], 2, 4, 2),
    row(Group::E8, &[('A',2,0),('A',1,0),('A',1,0)], 0, SS, &[1,2,4,6], 4, 4, 0),
    row(Group::E8, &[('A',2,0),('A',1,0),('A',1,0)], 2, ST, &[1,2,4,6], 2, 4, 2),
    row(Group::E8, &[('A',1,0),('A',1,0),('A',1,0),('A',1,0)], 0, SS, &[1,3,5,7], 4, 4, 0),
    row(Group::E8, &[('A',1,0),('A',1,0),('A',1,0),('A',1,0)], 2, ST, &[1,3,5,7], 2, 4, 2),
    row(Group::E8, &[('D',4,0)], 0, SS, &[4,5,6,8], 4, 4, 0),
    row(Group::E8, &[('D',4,0)], 2, ST, &[4,5,6,8], 2, 4, 2),
    row(Group::E8, &[('A',5,0)], 1, ST, &[1,2,3,4,5], 2, 3, 1),
    row(Group::E8, &[('A',4,0),('A',1,0)], 1, ST, &[1,2,3,4,6], 2, 3, 1),
    row(Group::E8, &[('A',3,0),('A',2,0)], 1, ST, &[1,2,3,5,6], 2, 3, 1),
    row(Group::E8, &[('A',3,0),('A',1,0),('A',1,0)], 1, ST, &[1,2,3,5,7], 2, 3, 1),
    row(Group::E8, &[('A',2,0),('A',2,0),('A',1,0)], 1, ST, &[1,2,4,5,7], 2, 3, 1),
    row(Group::E8, &[('A',2,0),('A',1,0),('A',1,0),('A',1,0)], 1, ST, &[1,2,4,6,8], 2, 3, 1),
    row(Group::E8, &[('D',4,0),('A',1,0)], 1, ST, &[1,4,5,6,8], 2, 3, 1),
    row(Group::E8, &[('D',5,0)], 1, ST, &[4,5,6,7,8], 2, 3, 1),
    row(Group::E8, &[('A',6,0)], 0, SS, &[1,2,3,4,5,6], 2, 2, 0),
    row(Group::E8, &[('A',5,0),('A',1,0)], 0, SS, &[1,2,3,4,5,7], 2, 2, 0),
    row(Group::E8, &[('A',4,0),('A',2,0)], 0, SS, &[1,2,3,4,6,7], 2, 2, 0),
    row(Group::E8, &[('A',3,0),('A',3,0)], 0, SS, &[1,2,3,5,6,7], 2, 2, 0),
    row(Group::E8, &[('A',4,0),('A',1,0),('A',1,0)], 0, SS, &[1,2,3,4,6,8], 2, 2, 0),
    row(Group::E8, &[('D',4,0),('A',2,0)], 0, SS, &[1,2,4,5,6,8], 2, 2, 0),
    row(Group::E8, &[('D',5,0),('A',1,0)], 0, SS, &[1,4,5,6,7,8], 2, 2, 0),
    row(Group::E8, &[('D',6,0)], 0, SS, &[2,3,4,5,6,8], 2, 2, 0),
    row(Group::E8, &[('A',3,0),('A',2,0),('A',1,0)], 0, SS, &[1,2,3,6,7,8], 2, 2, 0),
    row(Group::E8, &[('A',2,0),('A',2,0),('A',1,0),('A',1,0)], 0, SS, &[1,2,4,6,7,8], 2, 2, 0),
    row(Group::E8, &[('E',6,3)], 0, SS, &[3,4,5,6,7,8], 2, 2, 0),
];

fn decode_factor(raw: RawFactor) -> Factor {
    match raw {
        ('E', 6, 3) => Factor::ESix,
        (s, r, 0) => Factor::Series(s, r),
        (s, r, 1) => Factor::SeriesLong(s, r),
        (s, r, 2) => Factor::SeriesShort(s, r),
        other => unreachable!("bad factor encoding {other:?}"),
    }
}

/// The full catalog of exceptional indecomposable non-Kähler C-spaces,
/// validated against the structural invariants. Integrity failure aborts
/// with the offending row.
pub fn exceptional_catalog() -> Result<Vec<CSpaceRecord>, Error> {
    let records: Vec<CSpaceRecord> = EXCEPTIONAL_ROWS
        .iter()
        .map(|r| CSpaceRecord {
            group: r.group,
            stabilizer: Stabilizer {
                factors: r.factors.iter().map(|&f| decode_factor(f)).collect(),
                torus_rank: r.torus,
            },
            ctype: r.ctype,
            fiber_rank: r.fiber,
            b2_flag: r.b2_flag,
            b2_space: r.b2_space,
            flag_white_roots: Some(r.white.to_vec()),
            realization: r.realization,
        })
        .collect();
    for rec in &records {
        rec.validate()?;
    }
    validate_flag_groupings(&records)?;
    Ok(records)
}

/// Cross-row checks for the shared base flags: a flag with `b2 = 2` carries
/// exactly one associated space, of semistrict type; flags with a
/// nontrivial semisimple part and odd `b2 >= 3` carry only strict types,
/// while even `b2 >= 4` gives exactly one semistrict plus at least one
/// strict.
fn validate_flag_groupings(records: &[CSpaceRecord]) -> Result<(), Error> {
    use std::collections::BTreeMap;
    let mut by_flag: BTreeMap<(String, Vec<u8>, Option<char>), Vec<&CSpaceRecord>> =
        BTreeMap::new();
    for r in records {
        let key = (
            r.group.to_string(),
            r.flag_white_roots.clone().unwrap_or_default(),
            r.realization,
        );
        by_flag.entry(key).or_default().push(r);
    }
    for ((group, white, _), rows) in &by_flag {
        let b2 = rows[0].b2_flag;
        if rows.iter().any(|r| r.b2_flag != b2) {
            return Err(Error::CatalogIntegrity(format!(
                "{group}({white:?}): inconsistent flag b2"
            )));
        }
        if b2 == 2 {
            if rows.len() != 1 || rows[0].ctype != CType::Semistrict {
                return Err(Error::CatalogIntegrity(format!(
                    "{group}({white:?}): a b2 = 2 flag must carry exactly one semistrict space"
                )));
            }
            continue;
        }
        if white.is_empty() {
            // full flags carry the group itself and/or bare tori
            continue;
        }
        if b2 >= 3 && b2 % 2 == 1 {
            if rows.iter().any(|r| r.ctype != CType::Strict) {
                return Err(Error::CatalogIntegrity(format!(
                    "{group}({white:?}): odd b2 flags carry only strict types"
                )));
            }
        } else if b2 >= 4 {
            let ss = rows.iter().filter(|r| r.ctype == CType::Semistrict).count();
            let st = rows.iter().filter(|r| r.ctype == CType::Strict).count();
            if ss != 1 || st == 0 {
                return Err(Error::CatalogIntegrity(format!(
                    "{group}({white:?}): even b2 flags carry one semistrict and >= 1 strict"
                )));
            }
        }
    }
    Ok(())
}
