//! Intersections of matroids: exact optima and the min-max right-hand sides.

use std::collections::VecDeque;

use crate::axioms::check_matroid_axioms;
use crate::error::{MatroidError, Result};
use crate::matroid::{Matroid, ENUMERATION_CAP};
use crate::subset::Subset;
use crate::system::{IndependenceOracle, IndependenceSystem};

/// Cap on `m^|E|` for level-assignment enumerations.
pub const LEVEL_ENUMERATION_CAP: u64 = 10_000_000;
/// Cap on the ground set for [`is_matroid`].
pub const IS_MATROID_CAP: usize = 14;

/// A largest common independent set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Optimum {
    pub size: usize,
    pub witness: Subset,
}

/// Value of a minimization together with a minimizer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinMaxValue<W> {
    pub value: usize,
    pub argmin: W,
}

/// Nested sets `X ⊆ X_1 ⊆ .. ⊆ X_{m-2}`, implicitly followed by `E`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    pub levels: Vec<Subset>,
}

impl Chain {
    pub fn new(levels: Vec<Subset>) -> Result<Self> {
        for w in levels.windows(2) {
            if !w[0].is_subset_of(w[1]) {
                return Err(MatroidError::Invalid(format!(
                    "chain is not increasing: {} ⊄ {}",
                    w[0], w[1]
                )));
            }
        }
        Ok(Chain { levels })
    }

    /// Builds the chain whose successive differences are `layers[0..m-1]`.
    pub fn from_layers(layers: &[Subset]) -> Self {
        let mut levels = Vec::with_capacity(layers.len().saturating_sub(1));
        let mut acc = match layers.first() {
            Some(l) => Subset::empty(l.universe()),
            None => return Chain { levels },
        };
        for l in &layers[..layers.len() - 1] {
            acc = acc.union(*l);
            levels.push(acc);
        }
        Chain { levels }
    }

    /// The layers `X, X_1 \ X, .., E \ X_{m-2}`.
    pub fn layers(&self, ground: Subset) -> Vec<Subset> {
        let mut out = Vec::with_capacity(self.levels.len() + 1);
        let mut prev = Subset::empty(ground.universe());
        for &l in &self.levels {
            out.push(l.difference(prev));
            prev = l;
        }
        out.push(ground.difference(prev));
        out
    }

    /// `r_1(X) + r_2(X_1 \ X) + .. + r_m(E \ X_{m-2})`.
    pub fn value(&self, ms: &[Matroid]) -> Result<usize> {
        let ground = common_ground(ms)?;
        if self.levels.len() + 1 != ms.len() {
            return Err(MatroidError::Invalid(format!(
                "chain has {} levels, {} matroids need {}",
                self.levels.len(),
                ms.len(),
                ms.len().saturating_sub(1)
            )));
        }
        if let Some(l) = self.levels.iter().find(|l| !l.is_subset_of(ground)) {
            return Err(MatroidError::GroundMismatch(format!(
                "chain level {l} leaves the ground set {ground}"
            )));
        }
        Ok(self
            .layers(ground)
            .iter()
            .zip(ms)
            .map(|(l, m)| m.rank_of(*l))
            .sum())
    }
}

pub(crate) fn common_ground(ms: &[Matroid]) -> Result<Subset> {
    let first = ms
        .first()
        .ok_or_else(|| MatroidError::Invalid("empty list of matroids".into()))?;
    for (i, m) in ms.iter().enumerate().skip(1) {
        if m.universe() != first.universe() || m.ground() != first.ground() {
            return Err(MatroidError::GroundMismatch(format!(
                "matroid {i} is on {}, matroid 0 on {}",
                m.ground(),
                first.ground()
            )));
        }
    }
    Ok(first.ground())
}

pub(crate) fn check_enumeration(ground: Subset) -> Result<()> {
    if ground.len() > ENUMERATION_CAP {
        return Err(MatroidError::TooLarge {
            what: "ground set for subset enumeration",
            size: ground.len() as u64,
            cap: ENUMERATION_CAP as u64,
        });
    }
    Ok(())
}

/// The independence system whose members are the common independent sets.
pub fn intersect(ms: &[Matroid]) -> Result<IndependenceSystem> {
    let ground = common_ground(ms)?;
    let names: Vec<String> = ms.iter().map(Matroid::describe).collect();
    Ok(IndependenceSystem::from_members(
        ground,
        ms.to_vec(),
        format!("intersection of {}", names.join(", ")),
    ))
}

/// Scans every subset; ties go to the smallest mask.
pub fn max_common_independent_bruteforce(ms: &[Matroid]) -> Result<Optimum> {
    let ground = common_ground(ms)?;
    check_enumeration(ground)?;
    let mut best = Optimum {
        size: 0,
        witness: Subset::empty(ground.universe()),
    };
    for s in ground.subsets() {
        if s.len() > best.size && ms.iter().all(|m| m.independent(s)) {
            best = Optimum {
                size: s.len(),
                witness: s,
            };
        }
    }
    Ok(best)
}

/// Two-matroid intersection by shortest augmenting paths in the exchange
/// graph.
pub fn max_common_two_augmenting(m1: &Matroid, m2: &Matroid) -> Result<Optimum> {
    let ground = common_ground(&[m1.clone(), m2.clone()])?;
    let n = ground.universe();
    let mut current = Subset::empty(n);
    loop {
        let outside: Vec<usize> = ground.difference(current).iter().collect();
        let inside: Vec<usize> = current.iter().collect();
        let sources: Vec<usize> = outside
            .iter()
            .copied()
            .filter(|&x| m1.independent(current.with(x)))
            .collect();
        let is_sink: Vec<bool> = (0..n)
            .map(|x| ground.contains(x) && !current.contains(x) && m2.independent(current.with(x)))
            .collect();

        // adjacency lists in ascending index order
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &y in &inside {
            let base = current.without(y);
            for &x in &outside {
                let swapped = base.with(x);
                if m1.independent(swapped) {
                    adj[y].push(x);
                }
                if m2.independent(swapped) {
                    adj[x].push(y);
                }
            }
        }
        for list in adj.iter_mut() {
            list.sort_unstable();
        }

        let mut parent: Vec<Option<usize>> = vec![None; n];
        let mut seen = vec![false; n];
        let mut queue = VecDeque::new();
        for &s in &sources {
            seen[s] = true;
            queue.push_back(s);
        }
        let mut end = None;
        while let Some(v) = queue.pop_front() {
            if is_sink[v] {
                end = Some(v);
                break;
            }
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some(v);
                    queue.push_back(w);
                }
            }
        }

        let Some(mut v) = end else {
            break;
        };
        let mut path = Subset::empty(n).with(v);
        while let Some(p) = parent[v] {
            path = path.with(p);
            v = p;
        }
        current = Subset::from_bits_unchecked(n, current.bits() ^ path.bits());
        debug_assert!(m1.independent(current) && m2.independent(current));
    }
    Ok(Optimum {
        size: current.len(),
        witness: current,
    })
}

/// `min_Q r_1(Q) + r_2(E \ Q)`; the smallest-mask minimizer is returned.
pub fn edmonds_minmax_rhs(m1: &Matroid, m2: &Matroid) -> Result<MinMaxValue<Subset>> {
    let ground = common_ground(&[m1.clone(), m2.clone()])?;
    check_enumeration(ground)?;
    let mut best: Option<MinMaxValue<Subset>> = None;
    for q in ground.subsets() {
        let v = m1.rank_of(q) + m2.rank_of(ground.difference(q));
        if best.as_ref().is_none_or(|b| v < b.value) {
            best = Some(MinMaxValue {
                value: v,
                argmin: q,
            });
        }
    }
    Ok(best.expect("the empty set is always enumerated"))
}

/// Minimizes `Σ_i r_i(L_i)` over ordered partitions `E = L_1 ⊔ .. ⊔ L_m`,
/// enumerated by assigning each element a level in `0..m`. The first
/// assignment tried puts every element in `L_1`.
pub(crate) fn min_over_level_assignments(ms: &[Matroid]) -> Result<(usize, Vec<Subset>)> {
    let ground = common_ground(ms)?;
    let m = ms.len();
    let elems = ground.to_vec();
    let k = elems.len();
    let count = (m as u64).checked_pow(k as u32).unwrap_or(u64::MAX);
    if count > LEVEL_ENUMERATION_CAP || k > ENUMERATION_CAP {
        return Err(MatroidError::TooLarge {
            what: "level-assignment enumeration",
            size: count,
            cap: LEVEL_ENUMERATION_CAP,
        });
    }
    let n = ground.universe();
    // rank tables indexed by compressed masks over `elems`
    let expand = |c: u32| -> Subset {
        let mut s = Subset::empty(n);
        for (j, &e) in elems.iter().enumerate() {
            if c & (1 << j) != 0 {
                s = s.with(e);
            }
        }
        s
    };
    let tables: Vec<Vec<u32>> = ms
        .iter()
        .map(|mat| {
            (0..1u32 << k)
                .map(|c| mat.rank_of(expand(c)) as u32)
                .collect()
        })
        .collect();

    let full = if k == 0 { 0 } else { (1u32 << k) - 1 };
    let mut layers = vec![0u32; m];
    layers[0] = full;
    let mut digits = vec![0usize; k];
    let eval = |layers: &[u32]| -> u32 {
        layers
            .iter()
            .zip(&tables)
            .map(|(&l, t)| t[l as usize])
            .sum()
    };
    let mut best = eval(&layers);
    let mut best_layers = layers.clone();
    'odometer: loop {
        let mut j = 0;
        loop {
            if j == k {
                break 'odometer;
            }
            let bit = 1u32 << j;
            let d = digits[j];
            layers[d] &= !bit;
            if d + 1 < m {
                digits[j] = d + 1;
                layers[d + 1] |= bit;
                break;
            }
            digits[j] = 0;
            layers[0] |= bit;
            j += 1;
        }
        let v = eval(&layers);
        if v < best {
            best = v;
            best_layers.copy_from_slice(&layers);
        }
    }
    Ok((best as usize, best_layers.into_iter().map(expand).collect()))
}

/// `min r_1(X) + r_2(X_1 \ X) + .. + r_m(E \ X_{m-2})` over all chains.
pub fn filtration_minmax_rhs(ms: &[Matroid]) -> Result<MinMaxValue<Chain>> {
    if ms.len() < 2 {
        return Err(MatroidError::Invalid(
            "the filtration expression needs at least two matroids".into(),
        ));
    }
    let (value, layers) = min_over_level_assignments(ms)?;
    Ok(MinMaxValue {
        value,
        argmin: Chain::from_layers(&layers),
    })
}

/// Result of an exhaustive exchange-axiom check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MatroidCheck {
    pub holds: bool,
    /// `(X, Y)` with `|X| > |Y|` where no element of `X \ Y` extends `Y`.
    pub witness: Option<(Subset, Subset)>,
}

/// Whether an independence system satisfies the exchange axiom.
pub fn is_matroid<O: IndependenceOracle + ?Sized>(system: &O) -> Result<MatroidCheck> {
    let ground = system.ground();
    if ground.len() > IS_MATROID_CAP {
        return Err(MatroidError::TooLarge {
            what: "ground set for exchange check",
            size: ground.len() as u64,
            cap: IS_MATROID_CAP as u64,
        });
    }
    let report = check_matroid_axioms(system)?;
    Ok(MatroidCheck {
        holds: report.is_matroid(),
        witness: report.m3_witness,
    })
}

/// For `k = 2..=m`, whether the intersection of the first `k` matroids is a
/// matroid.
pub fn prefix_intersections_are_matroids(ms: &[Matroid]) -> Result<Vec<bool>> {
    (2..=ms.len())
        .map(|k| Ok(is_matroid(&intersect(&ms[..k])?)?.holds))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(n: usize, xs: &[usize]) -> Subset {
        Subset::from_indices(n, xs.iter().copied()).unwrap()
    }

    fn u(n: usize, k: usize) -> Matroid {
        Matroid::uniform(n, k).unwrap()
    }

    fn p3() -> Matroid {
        Matroid::partition(vec![vec![0, 1], vec![2]], vec![1, 1]).unwrap()
    }

    fn partition_pair() -> [Matroid; 2] {
        [
            Matroid::partition(vec![vec![0, 1], vec![2, 3]], vec![1, 1]).unwrap(),
            Matroid::partition(vec![vec![0, 2], vec![1, 3]], vec![1, 1]).unwrap(),
        ]
    }

    #[test]
    fn intersect_examples() {
        let s = intersect(&[u(3, 2), u(3, 2)]).unwrap();
        assert_eq!(
            s.independent_sets().unwrap(),
            u(3, 2).independent_sets().unwrap()
        );
        let pp = intersect(&partition_pair()).unwrap();
        assert!(pp.independent(set(4, &[0, 3])));
        assert!(!pp.independent(set(4, &[0, 2])));
        let tri = Matroid::graphic(3, vec![(0, 1), (1, 2), (2, 0)]).unwrap();
        let with_free = intersect(&[tri.clone(), Matroid::free(3).unwrap()]).unwrap();
        let without = intersect(&[tri]).unwrap();
        assert_eq!(
            with_free.independent_sets().unwrap(),
            without.independent_sets().unwrap()
        );
        assert!(intersect(&[u(3, 1), u(4, 1)]).is_err());
    }

    #[test]
    fn brute_force_examples() {
        let o = max_common_independent_bruteforce(&[u(3, 2), p3()]).unwrap();
        assert_eq!(
            o,
            Optimum {
                size: 2,
                witness: set(3, &[0, 2])
            }
        );
        let o = max_common_independent_bruteforce(&[u(2, 1), u(2, 1), u(2, 1)]).unwrap();
        assert_eq!(o.size, 1);
        let o = max_common_independent_bruteforce(&[u(4, 3), u(4, 0)]).unwrap();
        assert_eq!(
            o,
            Optimum {
                size: 0,
                witness: Subset::empty(4)
            }
        );
    }

    #[test]
    fn augmenting_examples() {
        assert_eq!(max_common_two_augmenting(&u(3, 2), &p3()).unwrap().size, 2);
        let free = Matroid::free(4).unwrap();
        let o = max_common_two_augmenting(&free, &free).unwrap();
        assert_eq!(
            o,
            Optimum {
                size: 4,
                witness: Subset::full(4)
            }
        );
        assert_eq!(
            max_common_two_augmenting(&u(4, 2), &u(4, 2)).unwrap().size,
            2
        );
    }

    #[test]
    fn augmenting_needs_exchanges() {
        // bipartite matching: edges a0-b0, a0-b1, a1-b0; greedy {0} blocks {1,2}
        let left = Matroid::partition(vec![vec![0, 1], vec![2]], vec![1, 1]).unwrap();
        let right = Matroid::partition(vec![vec![0, 2], vec![1]], vec![1, 1]).unwrap();
        let o = max_common_two_augmenting(&left, &right).unwrap();
        assert_eq!(o.size, 2);
        assert_eq!(o.witness, set(3, &[1, 2]));
    }

    #[test]
    fn edmonds_examples() {
        let r = edmonds_minmax_rhs(&u(3, 2), &p3()).unwrap();
        assert_eq!(
            r,
            MinMaxValue {
                value: 2,
                argmin: Subset::empty(3)
            }
        );
        let r = edmonds_minmax_rhs(&u(3, 0), &u(3, 2)).unwrap();
        assert_eq!(
            r,
            MinMaxValue {
                value: 0,
                argmin: Subset::full(3)
            }
        );
        let free = Matroid::free(4).unwrap();
        assert_eq!(edmonds_minmax_rhs(&free, &free).unwrap().value, 4);
    }

    #[test]
    fn filtration_examples() {
        let pair = [u(3, 2), p3()];
        assert_eq!(
            filtration_minmax_rhs(&pair).unwrap().value,
            edmonds_minmax_rhs(&pair[0], &pair[1]).unwrap().value
        );
        let r = filtration_minmax_rhs(&[u(3, 2), u(3, 2), u(3, 2)]).unwrap();
        assert_eq!(r.value, 2);
        assert_eq!(r.argmin.levels, vec![Subset::full(3), Subset::full(3)]);
        assert_eq!(r.argmin.value(&[u(3, 2), u(3, 2), u(3, 2)]).unwrap(), 2);
        let r = filtration_minmax_rhs(&[u(3, 2), u(3, 0), u(3, 3)]).unwrap();
        assert_eq!(r.value, 0);
        assert!(filtration_minmax_rhs(&[u(3, 2)]).is_err());
    }

    #[test]
    fn filtration_cap() {
        let big: Vec<Matroid> = (0..4).map(|_| u(12, 3)).collect();
        assert!(matches!(
            filtration_minmax_rhs(&big),
            Err(MatroidError::TooLarge { .. })
        ));
    }

    #[test]
    fn chain_layers_round_trip() {
        let g = Subset::full(4);
        let c = Chain::new(vec![set(4, &[0]), set(4, &[0, 2])]).unwrap();
        let layers = c.layers(g);
        assert_eq!(layers, vec![set(4, &[0]), set(4, &[2]), set(4, &[1, 3])]);
        assert_eq!(Chain::from_layers(&layers), c);
        assert!(Chain::new(vec![set(4, &[1]), set(4, &[0])]).is_err());
    }

    #[test]
    fn is_matroid_examples() {
        assert!(
            is_matroid(&intersect(&[u(3, 2), u(3, 2)]).unwrap())
                .unwrap()
                .holds
        );
        let r = is_matroid(&intersect(&partition_pair()).unwrap()).unwrap();
        assert!(!r.holds);
        assert_eq!(r.witness, Some((set(4, &[1, 2]), set(4, &[0]))));
        let tri = Matroid::graphic(3, vec![(0, 1), (1, 2), (2, 0)]).unwrap();
        assert!(
            is_matroid(&intersect(&[Matroid::free(3).unwrap(), tri]).unwrap())
                .unwrap()
                .holds
        );
        assert!(is_matroid(&u(15, 2)).is_err());
    }
}
