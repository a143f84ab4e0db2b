//! Independence systems: downward-closed families that need not satisfy the
//! exchange axiom. Intersections of matroids and their duals live here.

use std::fmt;
use std::sync::Arc;

use crate::error::{MatroidError, Result};
use crate::matroid::{Matroid, ENUMERATION_CAP};
use crate::subset::Subset;

/// Anything with an independence oracle over a ground set.
pub trait IndependenceOracle {
    fn universe(&self) -> usize;

    fn ground(&self) -> Subset;

    /// Membership test; `s` must already be a subset of the ground set.
    fn independent(&self, s: Subset) -> bool;

    fn is_independent(&self, s: Subset) -> Result<bool> {
        if s.universe() != self.universe() || !s.is_subset_of(self.ground()) {
            return Err(MatroidError::GroundMismatch(format!(
                "{s} is not a subset of the ground set {}",
                self.ground()
            )));
        }
        Ok(self.independent(s))
    }
}

impl IndependenceOracle for Matroid {
    fn universe(&self) -> usize {
        Matroid::universe(self)
    }

    fn ground(&self) -> Subset {
        Matroid::ground(self)
    }

    fn independent(&self, s: Subset) -> bool {
        Matroid::independent(self, s)
    }

    fn is_independent(&self, s: Subset) -> Result<bool> {
        Matroid::is_independent(self, s)
    }
}

#[derive(Clone)]
enum SystemOracle {
    /// Conjunction of the member oracles.
    Members(Arc<[Matroid]>),
    /// Sorted masks.
    Family(Arc<[u32]>),
    /// Sets disjoint from at least one of the listed sets.
    AvoidsOneOf(Arc<[Subset]>),
}

/// A family containing the empty set and closed under taking subsets.
#[derive(Clone)]
pub struct IndependenceSystem {
    universe: usize,
    ground: Subset,
    oracle: SystemOracle,
    provenance: String,
}

impl IndependenceSystem {
    pub(crate) fn from_members(ground: Subset, members: Vec<Matroid>, provenance: String) -> Self {
        IndependenceSystem {
            universe: ground.universe(),
            ground,
            oracle: SystemOracle::Members(members.into()),
            provenance,
        }
    }

    /// Wraps an explicit list of sets, which must contain the empty set and
    /// be downward closed. The exchange axiom is not required.
    pub fn from_family(ground: Subset, sets: &[Subset]) -> Result<Self> {
        let report = crate::axioms::check_explicit_family(ground, sets)?;
        if !report.is_independence_system() {
            return Err(MatroidError::Invalid(format!(
                "family is not an independence system: {report}"
            )));
        }
        let mut masks: Vec<u32> = sets.iter().map(Subset::bits).collect();
        masks.sort_unstable();
        masks.dedup();
        Ok(IndependenceSystem {
            universe: ground.universe(),
            ground,
            oracle: SystemOracle::Family(masks.into()),
            provenance: format!("explicit family of {} sets", sets.len()),
        })
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    /// The matroids whose intersection this is, if it was built that way.
    pub fn members(&self) -> Option<&[Matroid]> {
        match &self.oracle {
            SystemOracle::Members(ms) => Some(ms),
            _ => None,
        }
    }

    fn check_enumerable(&self) -> Result<()> {
        if self.ground.len() > ENUMERATION_CAP {
            return Err(MatroidError::TooLarge {
                what: "independence system ground set",
                size: self.ground.len() as u64,
                cap: ENUMERATION_CAP as u64,
            });
        }
        Ok(())
    }

    /// Every independent set, ascending by mask.
    pub fn independent_sets(&self) -> Result<Vec<Subset>> {
        self.check_enumerable()?;
        Ok(self
            .ground
            .subsets()
            .filter(|&s| self.independent(s))
            .collect())
    }

    /// Largest independent subset size of `s`, by enumerating subsets of `s`.
    pub fn rank(&self, s: Subset) -> Result<usize> {
        if s.universe() != self.universe || !s.is_subset_of(self.ground) {
            return Err(MatroidError::GroundMismatch(format!(
                "{s} is not a subset of the ground set {}",
                self.ground
            )));
        }
        if s.len() > ENUMERATION_CAP {
            return Err(MatroidError::TooLarge {
                what: "set for brute-force rank",
                size: s.len() as u64,
                cap: ENUMERATION_CAP as u64,
            });
        }
        Ok(self.rank_of(s))
    }

    pub(crate) fn rank_of(&self, s: Subset) -> usize {
        s.subsets()
            .filter(|&t| self.independent(t))
            .map(|t| t.len())
            .max()
            .unwrap_or(0)
    }

    /// Inclusion-maximal independent sets of the ground set, ascending by mask.
    pub fn maximal_sets(&self) -> Result<Vec<Subset>> {
        let family = self.independent_sets()?;
        Ok(family
            .iter()
            .copied()
            .filter(|&s| {
                self.ground
                    .difference(s)
                    .iter()
                    .all(|e| !self.independent(s.with(e)))
            })
            .collect())
    }

    /// The dual system: sets disjoint from at least one maximal independent set.
    pub fn dual(&self) -> Result<IndependenceSystem> {
        let bases = self.maximal_sets()?;
        Ok(IndependenceSystem {
            universe: self.universe,
            ground: self.ground,
            oracle: SystemOracle::AvoidsOneOf(bases.into()),
            provenance: format!("dual of [{}]", self.provenance),
        })
    }

    /// Rank of `s` in the dual system: `max_B |s \ B|` over maximal sets `B`.
    pub fn dual_rank(&self, s: Subset) -> Result<usize> {
        let bases = self.maximal_sets()?;
        Ok(bases
            .iter()
            .map(|&b| s.difference(b).len())
            .max()
            .unwrap_or(0))
    }
}

impl IndependenceOracle for IndependenceSystem {
    fn universe(&self) -> usize {
        self.universe
    }

    fn ground(&self) -> Subset {
        self.ground
    }

    fn independent(&self, s: Subset) -> bool {
        match &self.oracle {
            SystemOracle::Members(ms) => ms.iter().all(|m| m.independent(s)),
            SystemOracle::Family(masks) => masks.binary_search(&s.bits()).is_ok(),
            SystemOracle::AvoidsOneOf(sets) => sets.iter().any(|&b| b.is_disjoint(s)),
        }
    }
}

impl fmt::Debug for IndependenceSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "IndependenceSystem({} on {})",
            self.provenance, self.ground
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(n: usize, xs: &[usize]) -> Subset {
        Subset::from_indices(n, xs.iter().copied()).unwrap()
    }

    #[test]
    fn explicit_non_matroid_system() {
        // maximal sets {0} and {1,2} have different sizes
        let fam = [
            Subset::empty(3),
            set(3, &[0]),
            set(3, &[1]),
            set(3, &[2]),
            set(3, &[1, 2]),
        ];
        let sys = IndependenceSystem::from_family(Subset::full(3), &fam).unwrap();
        assert_eq!(
            sys.maximal_sets().unwrap(),
            vec![set(3, &[0]), set(3, &[1, 2])]
        );
        assert_eq!(sys.rank(Subset::full(3)).unwrap(), 2);
        assert_eq!(sys.rank(set(3, &[0, 1])).unwrap(), 1);
        // dual: subsets of {1,2} or of {0}
        let dual = sys.dual().unwrap();
        assert!(dual.independent(set(3, &[1, 2])));
        assert!(!dual.independent(set(3, &[0, 1])));
        assert_eq!(sys.dual_rank(Subset::full(3)).unwrap(), 2);
    }

    #[test]
    fn non_downward_closed_family_rejected() {
        let fam = [Subset::empty(2), set(2, &[0, 1])];
        assert!(IndependenceSystem::from_family(Subset::full(2), &fam).is_err());
    }

    #[test]
    fn ground_checks() {
        let fam = [Subset::empty(2)];
        let sys = IndependenceSystem::from_family(Subset::full(2), &fam).unwrap();
        assert!(sys.is_independent(Subset::full(3)).is_err());
        assert!(sys.rank(Subset::full(3)).is_err());
    }
}
