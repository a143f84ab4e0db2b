//! Random search for instances where the dual of an intersection differs
//! from the union of the duals.

use std::ops::RangeInclusive;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bounds::{check_dual_containment, FamilyComparison};
use crate::error::{MatroidError, Result};
use crate::generate::{generate_random, Family};
use crate::matroid::Matroid;

pub const SEARCH_MAX_N: usize = 8;
pub const SEARCH_MAX_M: usize = 3;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub families: Vec<Family>,
    pub n: RangeInclusive<usize>,
    pub m: RangeInclusive<usize>,
    pub count: usize,
    /// Use `m` copies of a single generated matroid.
    pub identical: bool,
}

impl SearchConfig {
    fn validate(&self) -> Result<()> {
        if self.families.is_empty() {
            return Err(MatroidError::Invalid("no families to search".into()));
        }
        if self.n.is_empty() || *self.n.end() > SEARCH_MAX_N {
            return Err(MatroidError::Invalid(format!(
                "n range {:?} must be non-empty and at most {SEARCH_MAX_N}",
                self.n
            )));
        }
        if self.m.is_empty() || *self.m.start() == 0 || *self.m.end() > SEARCH_MAX_M {
            return Err(MatroidError::Invalid(format!(
                "m range {:?} must lie in 1..={SEARCH_MAX_M}",
                self.m
            )));
        }
        Ok(())
    }
}

/// Where one generated instance came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Draw {
    pub index: usize,
    pub family: Family,
    pub n: usize,
    pub m: usize,
    pub seed: u64,
}

impl Draw {
    pub fn matroids(&self, identical: bool) -> Result<Vec<Matroid>> {
        if identical {
            let one = generate_random(self.family, self.n, 1, self.seed)?;
            Ok(vec![one[0].clone(); self.m])
        } else {
            generate_random(self.family, self.n, self.m, self.seed)
        }
    }
}

/// An instance whose two families differ.
#[derive(Clone, Debug)]
pub struct Counterexample {
    pub draw: Draw,
    pub matroids: Vec<Matroid>,
    pub comparison: FamilyComparison,
}

impl Counterexample {
    /// Smallest set in the union of the duals but not in the dual of the
    /// intersection, when the containment is proper.
    pub fn witness(&self) -> Option<crate::subset::Subset> {
        self.comparison.right_only
    }
}

/// The draws made for `config` under `seed`, in order.
pub fn draws(config: &SearchConfig, seed: u64) -> Result<Vec<Draw>> {
    config.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..config.count)
        .map(|index| Draw {
            index,
            family: config.families[rng.gen_range(0..config.families.len())],
            n: rng.gen_range(config.n.clone()),
            m: rng.gen_range(config.m.clone()),
            seed: rng.gen(),
        })
        .collect())
}

/// Every drawn instance where the families differ, in draw order.
pub fn counterexample_search(config: &SearchConfig, seed: u64) -> Result<Vec<Counterexample>> {
    let draws = draws(config, seed)?;
    let found: Vec<Option<Counterexample>> = draws
        .par_iter()
        .map(|draw| {
            let matroids = draw.matroids(config.identical)?;
            let comparison = check_dual_containment(&matroids)?;
            Ok((!comparison.equal()).then_some(Counterexample {
                draw: *draw,
                matroids,
                comparison,
            }))
        })
        .collect::<Result<_>>()?;
    Ok(found.into_iter().flatten().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(families: Vec<Family>, m: RangeInclusive<usize>, identical: bool) -> SearchConfig {
        SearchConfig {
            families,
            n: 1..=5,
            m,
            count: 200,
            identical,
        }
    }

    #[test]
    fn single_matroid_never_differs() {
        let c = config(Family::ALL.to_vec(), 1..=1, false);
        assert!(counterexample_search(&c, 3).unwrap().is_empty());
    }

    #[test]
    fn deterministic() {
        let c = config(vec![Family::Partition], 2..=2, false);
        let a = counterexample_search(&c, 11).unwrap();
        let b = counterexample_search(&c, 11).unwrap();
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.draw, y.draw);
            assert_eq!(x.comparison, y.comparison);
        }
    }

    #[test]
    fn found_instances_are_strict() {
        let c = config(vec![Family::Partition, Family::Uniform], 2..=3, false);
        let found = counterexample_search(&c, 5).unwrap();
        assert!(!found.is_empty());
        for ce in &found {
            assert!(ce.comparison.strict(), "{:?}", ce.comparison);
            assert!(ce.witness().is_some());
        }
    }

    #[test]
    fn identical_copies_can_still_differ() {
        // (U(3,2), U(3,2)): the dual of the intersection is U(3,1) but the
        // union of the duals is U(3,2)
        let c = SearchConfig {
            families: vec![Family::Uniform],
            n: 3..=3,
            m: 2..=2,
            count: 50,
            identical: true,
        };
        let found = counterexample_search(&c, 0).unwrap();
        assert!(found.iter().any(|ce| ce.matroids[0].describe() == "U(3,2)"));
    }

    #[test]
    fn config_bounds() {
        let mut c = config(vec![Family::Uniform], 1..=2, false);
        c.n = 1..=9;
        assert!(draws(&c, 0).is_err());
        let mut c = config(vec![Family::Uniform], 0..=2, false);
        assert!(draws(&c, 0).is_err());
        c.m = 1..=4;
        assert!(draws(&c, 0).is_err());
        c.m = 1..=2;
        c.families.clear();
        assert!(draws(&c, 0).is_err());
    }
}
