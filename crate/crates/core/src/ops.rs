//! Duality, minors, restriction and matroid union.
//!
//! All results are lazy [`Derived`] nodes that answer queries through the
//! operands' oracles. Minors keep element labels: deleting or contracting `X`
//! from a matroid on `E` gives a matroid whose ground set is `E \ X`.

use crate::error::{MatroidError, Result};
use crate::matroid::{Derived, Matroid, ENUMERATION_CAP};
use crate::subset::{Subset, MAX_ELEMENTS};

/// Cap on `|X|` for the assignment search in [`partition_witness`].
pub const ASSIGNMENT_CAP: usize = 16;

/// The dual matroid: `S` is independent iff `E \ S` still spans.
pub fn dual(m: &Matroid) -> Matroid {
    Matroid::derived(m.universe(), m.ground(), Derived::Dual(m.clone()))
}

/// `r*(F) = |F| + r(E \ F) - r(E)`.
pub fn dual_rank(m: &Matroid, f: Subset) -> Result<usize> {
    m.check_subset(f)?;
    Ok(f.len() + m.rank_of(m.ground().difference(f)) - m.full_rank())
}

/// `M \ X`, a matroid on `E \ X`.
pub fn delete(m: &Matroid, x: Subset) -> Result<Matroid> {
    m.check_subset(x)?;
    Ok(Matroid::derived(
        m.universe(),
        m.ground().difference(x),
        Derived::Delete {
            inner: m.clone(),
            removed: x,
        },
    ))
}

/// `M / X`, a matroid on `E \ X` with `r(A) = r_M(A ∪ X) - r_M(X)`.
///
/// The node also carries `(M* \ X)*`; debug builds compare the two ranks on
/// every query.
pub fn contract(m: &Matroid, x: Subset) -> Result<Matroid> {
    let definitional = dual(&delete(&dual(m), x)?);
    Ok(Matroid::derived(
        m.universe(),
        m.ground().difference(x),
        Derived::Contract {
            inner: m.clone(),
            contracted: x,
            definitional,
        },
    ))
}

/// `M|C`, the submatroid on `C`.
pub fn restrict(m: &Matroid, c: Subset) -> Result<Matroid> {
    m.check_subset(c)?;
    Ok(Matroid::derived(
        m.universe(),
        c,
        Derived::Restrict {
            inner: m.clone(),
            kept: c,
        },
    ))
}

fn check_common_ground(ms: &[Matroid]) -> Result<(usize, Subset)> {
    let first = ms
        .first()
        .ok_or_else(|| MatroidError::Invalid("empty list of matroids".into()))?;
    let (n, ground) = (first.universe(), first.ground());
    for (i, m) in ms.iter().enumerate().skip(1) {
        if m.universe() != n || m.ground() != ground {
            return Err(MatroidError::GroundMismatch(format!(
                "matroid {i} is on {} (universe {}), matroid 0 on {ground} (universe {n})",
                m.ground(),
                m.universe()
            )));
        }
    }
    Ok((n, ground))
}

/// Union (sum) of matroids on a common ground set. Its rank is
/// `r(X) = min_{A ⊆ X} |X \ A| + Σ r_i(A)`, minimized exhaustively.
pub fn union(ms: &[Matroid]) -> Result<Matroid> {
    let (n, ground) = check_common_ground(ms)?;
    if ground.len() > ENUMERATION_CAP {
        return Err(MatroidError::TooLarge {
            what: "union ground set",
            size: ground.len() as u64,
            cap: ENUMERATION_CAP as u64,
        });
    }
    Ok(Matroid::derived(n, ground, Derived::Union(ms.to_vec())))
}

/// Disjoint parts `parts[i]`, each independent in the `i`-th matroid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionWitness {
    pub parts: Vec<Subset>,
}

impl PartitionWitness {
    /// Union of the parts.
    pub fn covered(&self) -> Option<Subset> {
        let first = self.parts.first()?;
        Some(
            self.parts
                .iter()
                .fold(Subset::empty(first.universe()), |acc, p| acc.union(*p)),
        )
    }

    /// Checks disjointness, independence of every part and that the parts
    /// cover exactly `x`.
    pub fn is_valid_for(&self, ms: &[Matroid], x: Subset) -> bool {
        if self.parts.len() != ms.len() {
            return false;
        }
        let mut seen = Subset::empty(x.universe());
        for (p, m) in self.parts.iter().zip(ms) {
            if !p.is_disjoint(seen) || m.check_subset(*p).is_err() || !m.independent(*p) {
                return false;
            }
            seen = seen.union(*p);
        }
        seen == x
    }
}

/// Searches for a split of `x` into parts independent in the respective
/// matroids. Elements are assigned in ascending order, each to the lowest
/// part that keeps it independent; the first complete assignment wins.
pub fn partition_witness(ms: &[Matroid], x: Subset) -> Result<Option<PartitionWitness>> {
    check_common_ground(ms)?;
    ms[0].check_subset(x)?;
    if x.len() > ASSIGNMENT_CAP {
        return Err(MatroidError::TooLarge {
            what: "set for partition assignment search",
            size: x.len() as u64,
            cap: ASSIGNMENT_CAP as u64,
        });
    }
    let elements = x.to_vec();
    let mut parts = vec![Subset::empty(x.universe()); ms.len()];
    if assign(ms, &elements, &mut parts) {
        Ok(Some(PartitionWitness { parts }))
    } else {
        Ok(None)
    }
}

fn assign(ms: &[Matroid], rest: &[usize], parts: &mut [Subset]) -> bool {
    let Some((&e, tail)) = rest.split_first() else {
        return true;
    };
    for i in 0..ms.len() {
        let grown = parts[i].with(e);
        if ms[i].independent(grown) {
            let before = parts[i];
            parts[i] = grown;
            if assign(ms, tail, parts) {
                return true;
            }
            parts[i] = before;
        }
    }
    false
}

/// Turns a cover `X = ∪ cover[i]` with `cover[i]` independent in `ms[i]` into
/// a disjoint split by peeling: part `k` keeps what earlier parts missed.
pub fn partition_from_cover(ms: &[Matroid], cover: &[Subset]) -> Result<PartitionWitness> {
    check_common_ground(ms)?;
    if cover.len() != ms.len() {
        return Err(MatroidError::Invalid(format!(
            "{} cover sets for {} matroids",
            cover.len(),
            ms.len()
        )));
    }
    let mut taken = Subset::empty(ms[0].universe());
    let mut parts = Vec::with_capacity(cover.len());
    for (c, m) in cover.iter().zip(ms) {
        if !m.is_independent(*c)? {
            return Err(MatroidError::NotIndependent(c.to_string()));
        }
        // a subset of an independent set stays independent
        let part = c.difference(taken);
        taken = taken.union(part);
        parts.push(part);
    }
    Ok(PartitionWitness { parts })
}

/// Splits `x` using a cover when one is supplied, and by assignment search
/// otherwise.
pub fn partition_witness_with_cover(
    ms: &[Matroid],
    x: Subset,
    cover: Option<&[Subset]>,
) -> Result<Option<PartitionWitness>> {
    match cover {
        Some(c) => {
            let w = partition_from_cover(ms, c)?;
            if w.covered() != Some(x) {
                return Err(MatroidError::Invalid(format!(
                    "cover does not have union {x}"
                )));
            }
            Ok(Some(w))
        }
        None => partition_witness(ms, x),
    }
}

/// The same matroid on the larger ground set `ground`; added elements are
/// loops.
pub fn loop_extend(m: &Matroid, ground: Subset) -> Result<Matroid> {
    if ground.universe() != m.universe() || !m.ground().is_subset_of(ground) {
        return Err(MatroidError::GroundMismatch(format!(
            "{ground} does not contain the ground set {}",
            m.ground()
        )));
    }
    if ground == m.ground() {
        return Ok(m.clone());
    }
    Ok(Matroid::derived(
        m.universe(),
        ground,
        Derived::LoopExtend(m.clone()),
    ))
}

/// Relabels element `i` of `m` as `map[i]` inside a universe of size
/// `universe`. `map` must be injective on the ground set of `m`.
pub fn embed(m: &Matroid, map: Vec<usize>, universe: usize) -> Result<Matroid> {
    if universe > MAX_ELEMENTS {
        return Err(MatroidError::TooLarge {
            what: "universe",
            size: universe as u64,
            cap: MAX_ELEMENTS as u64,
        });
    }
    if map.len() != m.universe() {
        return Err(MatroidError::Invalid(format!(
            "embedding lists {} targets for {} elements",
            map.len(),
            m.universe()
        )));
    }
    let mut ground = Subset::empty(universe);
    for e in m.ground().iter() {
        let t = map[e];
        if t >= universe {
            return Err(MatroidError::ElementOutOfRange {
                element: t,
                n: universe,
            });
        }
        if ground.contains(t) {
            return Err(MatroidError::Invalid(format!(
                "embedding sends two elements to {t}"
            )));
        }
        ground = ground.with(t);
    }
    Ok(Matroid::derived(
        universe,
        ground,
        Derived::Embed {
            inner: m.clone(),
            map,
        },
    ))
}

/// Union of matroids whose ground sets are different subsets of one
/// universe: each is loop-extended to the union of the ground sets, then
/// the same-ground union applies.
pub fn general_union(ms: &[Matroid]) -> Result<Matroid> {
    let first = ms
        .first()
        .ok_or_else(|| MatroidError::Invalid("empty list of matroids".into()))?;
    let n = first.universe();
    if let Some(m) = ms.iter().find(|m| m.universe() != n) {
        return Err(MatroidError::GroundMismatch(format!(
            "universes {} and {n} differ; embed operands into a common universe first",
            m.universe()
        )));
    }
    let ground = ms
        .iter()
        .fold(Subset::empty(n), |acc, m| acc.union(m.ground()));
    let extended = ms
        .iter()
        .map(|m| loop_extend(m, ground))
        .collect::<Result<Vec<_>>>()?;
    union(&extended)
}
