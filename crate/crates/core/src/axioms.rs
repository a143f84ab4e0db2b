//! Exhaustive checkers for the independence axioms and the rank properties.

use std::fmt;

use crate::error::{MatroidError, Result};
use crate::matroid::Matroid;
use crate::subset::Subset;
use crate::system::IndependenceOracle;

/// Cap on the ground set for axiom checks.
pub const AXIOM_CHECK_CAP: usize = 16;
/// Cap on the ground set for the all-pairs rank property check.
pub const RANK_CHECK_CAP: usize = 12;

/// Outcome of checking M1 (empty set), M2 (downward closure) and M3
/// (exchange) on a family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub m1: bool,
    /// `(missing, member)`: `missing ⊆ member`, `member` is in the family and
    /// `missing` is not.
    pub m2_witness: Option<(Subset, Subset)>,
    /// `(larger, smaller)`: both in the family, `|larger| > |smaller|`, and no
    /// element of `larger \ smaller` can be added to `smaller`.
    pub m3_witness: Option<(Subset, Subset)>,
}

impl AxiomReport {
    pub fn m2(&self) -> bool {
        self.m2_witness.is_none()
    }

    pub fn m3(&self) -> bool {
        self.m3_witness.is_none()
    }

    pub fn is_independence_system(&self) -> bool {
        self.m1 && self.m2()
    }

    pub fn is_matroid(&self) -> bool {
        self.m1 && self.m2() && self.m3()
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m1 = if self.m1 {
            "pass"
        } else {
            "violated (empty set missing)"
        };
        write!(f, "M1 {m1}; ")?;
        match self.m2_witness {
            None => write!(f, "M2 pass; ")?,
            Some((x, y)) => write!(f, "M2 violated ({x} missing, subset of {y}); ")?,
        }
        match self.m3_witness {
            None => write!(f, "M3 pass"),
            Some((x, y)) => write!(f, "M3 violated (X={x}, Y={y})"),
        }
    }
}

/// Checks the axioms for the family `{S ⊆ ground : member(S)}`.
///
/// Witnesses are the first failures in ascending mask order.
pub(crate) fn check_family<F>(ground: Subset, member: F) -> AxiomReport
where
    F: Fn(Subset) -> bool,
{
    let family: Vec<Subset> = ground.subsets().filter(|&s| member(s)).collect();
    let m1 = member(Subset::empty(ground.universe()));

    let m2_witness = family.iter().find_map(|&y| {
        y.iter()
            .map(|e| y.without(e))
            .find(|&x| !member(x))
            .map(|x| (x, y))
    });

    // elements that can be added to each member, keyed by position in `family`
    let augment: Vec<u32> = family
        .iter()
        .map(|&y| {
            ground
                .difference(y)
                .iter()
                .filter(|&e| member(y.with(e)))
                .fold(0u32, |acc, e| acc | (1 << e))
        })
        .collect();

    let mut m3_witness = None;
    'outer: for &x in &family {
        for (j, &y) in family.iter().enumerate() {
            if y.len() < x.len() && x.bits() & augment[j] == 0 {
                m3_witness = Some((x, y));
                break 'outer;
            }
        }
    }

    AxiomReport {
        m1,
        m2_witness,
        m3_witness,
    }
}

/// Checks M1, M2 and M3 for any independence oracle by full enumeration.
pub fn check_matroid_axioms<O: IndependenceOracle + ?Sized>(oracle: &O) -> Result<AxiomReport> {
    let ground = oracle.ground();
    if ground.len() > AXIOM_CHECK_CAP {
        return Err(MatroidError::TooLarge {
            what: "ground set for axiom check",
            size: ground.len() as u64,
            cap: AXIOM_CHECK_CAP as u64,
        });
    }
    Ok(check_family(ground, |s| oracle.independent(s)))
}

/// Checks an explicit list of sets, as given, before any validation.
pub fn check_explicit_family(ground: Subset, sets: &[Subset]) -> Result<AxiomReport> {
    if ground.len() > AXIOM_CHECK_CAP {
        return Err(MatroidError::TooLarge {
            what: "ground set for axiom check",
            size: ground.len() as u64,
            cap: AXIOM_CHECK_CAP as u64,
        });
    }
    let mut masks: Vec<u32> = sets.iter().map(Subset::bits).collect();
    masks.sort_unstable();
    if let Some(s) = sets.iter().find(|s| !s.is_subset_of(ground)) {
        return Err(MatroidError::GroundMismatch(format!(
            "{s} is not contained in {ground}"
        )));
    }
    Ok(check_family(ground, |s| {
        masks.binary_search(&s.bits()).is_ok()
    }))
}

/// First violations of R1 (`r(X) ≤ |X|`), R2 (monotone) and R3
/// (submodular) over all pairs of subsets.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RankReport {
    pub r1_violation: Option<Subset>,
    pub r2_violation: Option<(Subset, Subset)>,
    pub r3_violation: Option<(Subset, Subset)>,
}

impl RankReport {
    pub fn passed(&self) -> bool {
        self.r1_violation.is_none() && self.r2_violation.is_none() && self.r3_violation.is_none()
    }
}

impl fmt::Display for RankReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.r1_violation {
            None => write!(f, "R1 pass; ")?,
            Some(x) => write!(f, "R1 fail at {x}; ")?,
        }
        match self.r2_violation {
            None => write!(f, "R2 pass; ")?,
            Some((x, y)) => write!(f, "R2 fail at {x} ⊆ {y}; ")?,
        }
        match self.r3_violation {
            None => write!(f, "R3 pass"),
            Some((x, y)) => write!(f, "R3 fail at X={x}, Y={y}"),
        }
    }
}

/// Checks R1-R3 for an arbitrary set function on the subsets of `ground`.
pub fn check_rank_function<F>(ground: Subset, rank: F) -> Result<RankReport>
where
    F: Fn(Subset) -> usize,
{
    if ground.len() > RANK_CHECK_CAP {
        return Err(MatroidError::TooLarge {
            what: "ground set for rank property check",
            size: ground.len() as u64,
            cap: RANK_CHECK_CAP as u64,
        });
    }
    let sets: Vec<Subset> = ground.subsets().collect();
    let table: Vec<usize> = sets.iter().map(|&s| rank(s)).collect();
    // position of each set in `sets`, via its mask
    let index = |s: Subset| -> usize {
        sets.binary_search(&s)
            .expect("set algebra stays inside the ground set")
    };

    let mut report = RankReport {
        r1_violation: sets
            .iter()
            .zip(&table)
            .find(|(s, &r)| r > s.len())
            .map(|(s, _)| *s),
        ..RankReport::default()
    };
    for (i, &x) in sets.iter().enumerate() {
        for (j, &y) in sets.iter().enumerate() {
            if report.r2_violation.is_none() && x.is_subset_of(y) && table[i] > table[j] {
                report.r2_violation = Some((x, y));
            }
            if report.r3_violation.is_none() {
                let cup = table[index(x.union(y))];
                let cap = table[index(x.intersection(y))];
                if cup + cap > table[i] + table[j] {
                    report.r3_violation = Some((x, y));
                }
            }
            if report.r2_violation.is_some() && report.r3_violation.is_some() {
                return Ok(report);
            }
        }
    }
    Ok(report)
}

/// Checks R1-R3 for the rank oracle of a matroid.
pub fn check_rank_properties(m: &Matroid) -> Result<RankReport> {
    check_rank_function(m.ground(), |s| m.rank_of(s))
}
