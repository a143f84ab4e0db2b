//! Seeded random instances on a common ground set `0..n`.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{MatroidError, Result};
use crate::matroid::Matroid;
use crate::subset::MAX_ELEMENTS;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Uniform,
    Graphic,
    Linear,
    Partition,
    /// Each member drawn from one of the other four families.
    Mixed,
}

impl Family {
    pub const ALL: [Family; 5] = [
        Family::Uniform,
        Family::Graphic,
        Family::Linear,
        Family::Partition,
        Family::Mixed,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Family::Uniform => "uniform",
            Family::Graphic => "graphic",
            Family::Linear => "linear",
            Family::Partition => "partition",
            Family::Mixed => "mixed",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = MatroidError;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| {
                MatroidError::Invalid(format!(
                    "unknown family {s:?}; expected uniform, graphic, linear, partition or mixed"
                ))
            })
    }
}

/// `m` matroids on `0..n`, deterministic in all four arguments.
pub fn generate_random(family: Family, n: usize, m: usize, seed: u64) -> Result<Vec<Matroid>> {
    if n > MAX_ELEMENTS {
        return Err(MatroidError::TooLarge {
            what: "ground set",
            size: n as u64,
            cap: MAX_ELEMENTS as u64,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..m)
        .map(|_| random_matroid(family, n, &mut rng))
        .collect()
}

/// One matroid on `0..n` drawn from `family`.
pub fn random_matroid<R: Rng>(family: Family, n: usize, rng: &mut R) -> Result<Matroid> {
    match family {
        Family::Uniform => Matroid::uniform(n, rng.gen_range(0..=n)),
        Family::Graphic => {
            // multigraph; self-loops become matroid loops
            let vertices = rng.gen_range(1..=n + 1);
            let edges = (0..n)
                .map(|_| (rng.gen_range(0..vertices), rng.gen_range(0..vertices)))
                .collect();
            Matroid::graphic(vertices, edges)
        }
        Family::Linear => {
            let rows = rng.gen_range(1..=n.max(1));
            let columns = (0..n)
                .map(|_| (0..rows).map(|_| rng.gen_range(0..2)).collect())
                .collect();
            Matroid::linear(2, columns)
        }
        Family::Partition => {
            let count = rng.gen_range(1..=n.max(1));
            let mut blocks = vec![Vec::new(); count];
            for e in 0..n {
                blocks[rng.gen_range(0..count)].push(e);
            }
            blocks.retain(|b| !b.is_empty());
            let capacities = blocks.iter().map(|b| rng.gen_range(0..=b.len())).collect();
            Matroid::partition(blocks, capacities)
        }
        Family::Mixed => {
            let pick = [
                Family::Uniform,
                Family::Graphic,
                Family::Linear,
                Family::Partition,
            ][rng.gen_range(0..4)];
            random_matroid(pick, n, rng)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::Construction;

    #[test]
    fn deterministic_under_seed() {
        for family in Family::ALL {
            let a = generate_random(family, 6, 3, 42).unwrap();
            let b = generate_random(family, 6, 3, 42).unwrap();
            for (x, y) in a.iter().zip(&b) {
                assert_eq!(x.independent_sets().unwrap(), y.independent_sets().unwrap());
                assert_eq!(x.describe(), y.describe());
            }
        }
    }

    #[test]
    fn uniform_members() {
        let ms = generate_random(Family::Uniform, 5, 3, 7).unwrap();
        assert_eq!(ms.len(), 3);
        for m in &ms {
            assert_eq!(m.universe(), 5);
            match m.construction() {
                Construction::Uniform { k } => assert!(*k <= 5),
                _ => panic!("expected uniform"),
            }
        }
    }

    #[test]
    fn family_names_round_trip() {
        for f in Family::ALL {
            assert_eq!(f.name().parse::<Family>().unwrap(), f);
        }
        assert!("matching".parse::<Family>().is_err());
    }

    #[test]
    fn empty_ground_set() {
        for f in Family::ALL {
            let ms = generate_random(f, 0, 2, 1).unwrap();
            assert!(ms.iter().all(|m| m.universe() == 0 && m.full_rank() == 0));
        }
    }

    #[test]
    fn too_large_rejected() {
        assert!(generate_random(Family::Uniform, 25, 1, 0).is_err());
    }
}
