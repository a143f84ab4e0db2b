//! Matroid constructions with independence and rank oracles.
//!
//! A [`Matroid`] lives on a universe `{0, .., n-1}` and has a ground set
//! `E ⊆ {0, .., n-1}`. Base constructions always use the whole universe;
//! minors keep the original element labels and shrink the ground set instead
//! of renumbering. Every query must be a subset of the ground set.

use std::fmt;
use std::sync::Arc;

use petgraph::unionfind::UnionFind;

use crate::axioms::check_family;
use crate::error::{MatroidError, Result};
use crate::linear::{is_prime, EchelonBasis, MAX_PRIME};
use crate::subset::{Subset, MAX_ELEMENTS};

/// Cap on the ground set for operations that enumerate every subset of it.
pub const ENUMERATION_CAP: usize = 20;

#[derive(Clone)]
pub struct Matroid {
    node: Arc<Node>,
}

struct Node {
    universe: usize,
    ground: Subset,
    full_rank: usize,
    construction: Construction,
}

/// How a matroid was built.
#[derive(Clone)]
pub enum Construction {
    /// Every set of at most `k` elements is independent.
    Uniform {
        k: usize,
    },
    /// Edge `i` of the graph is ground element `i`; forests are independent.
    Graphic {
        vertices: usize,
        edges: Vec<(usize, usize)>,
    },
    /// Column `i` is ground element `i`; linearly independent columns over
    /// GF(prime) are independent.
    Linear {
        prime: u32,
        columns: Vec<Vec<u32>>,
    },
    /// At most `capacities[j]` elements from `blocks[j]`.
    Partition {
        blocks: Vec<Subset>,
        capacities: Vec<usize>,
    },
    /// Sorted masks of every independent set.
    Explicit {
        family: Vec<u32>,
    },
    Derived(Derived),
}

/// Operation nodes; evaluated lazily through the operands' oracles.
#[derive(Clone)]
pub enum Derived {
    Dual(Matroid),
    Delete {
        inner: Matroid,
        removed: Subset,
    },
    /// `definitional` is `(M* \ X)*`, kept to cross-check the rank formula.
    Contract {
        inner: Matroid,
        contracted: Subset,
        definitional: Matroid,
    },
    Restrict {
        inner: Matroid,
        kept: Subset,
    },
    /// Matroid union over a common ground set.
    Union(Vec<Matroid>),
    /// Same matroid on a larger ground set; the added elements are loops.
    LoopExtend(Matroid),
    /// Relabels element `i` of `inner` as `map[i]` in a new universe.
    Embed {
        inner: Matroid,
        map: Vec<usize>,
    },
}

impl Matroid {
    fn build(universe: usize, ground: Subset, construction: Construction) -> Self {
        debug_assert_eq!(ground.universe(), universe);
        let mut node = Node {
            universe,
            ground,
            full_rank: 0,
            construction,
        };
        node.full_rank = node.rank_of(ground);
        Matroid {
            node: Arc::new(node),
        }
    }

    pub(crate) fn derived(universe: usize, ground: Subset, derived: Derived) -> Self {
        Matroid::build(universe, ground, Construction::Derived(derived))
    }

    fn check_universe(n: usize) -> Result<()> {
        if n > MAX_ELEMENTS {
            return Err(MatroidError::TooLarge {
                what: "ground set",
                size: n as u64,
                cap: MAX_ELEMENTS as u64,
            });
        }
        Ok(())
    }

    /// U(n, k).
    pub fn uniform(n: usize, k: usize) -> Result<Self> {
        Matroid::check_universe(n)?;
        if k > n {
            return Err(MatroidError::Invalid(format!(
                "uniform rank {k} exceeds ground set size {n}"
            )));
        }
        Ok(Matroid::build(
            n,
            Subset::full(n),
            Construction::Uniform { k },
        ))
    }

    /// The matroid in which every set is independent.
    pub fn free(n: usize) -> Result<Self> {
        Matroid::uniform(n, n)
    }

    /// The rank-0 matroid: only the empty set is independent.
    pub fn zero(n: usize) -> Result<Self> {
        Matroid::uniform(n, 0)
    }

    pub fn graphic(vertices: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let n = edges.len();
        Matroid::check_universe(n)?;
        if let Some(&(u, v)) = edges.iter().find(|&&(u, v)| u >= vertices || v >= vertices) {
            return Err(MatroidError::Invalid(format!(
                "edge ({u},{v}) has an endpoint outside 0..{vertices}"
            )));
        }
        Ok(Matroid::build(
            n,
            Subset::full(n),
            Construction::Graphic { vertices, edges },
        ))
    }

    pub fn linear(prime: u32, columns: Vec<Vec<u32>>) -> Result<Self> {
        let n = columns.len();
        Matroid::check_universe(n)?;
        if !is_prime(prime) || prime > MAX_PRIME {
            return Err(MatroidError::Invalid(format!(
                "field characteristic {prime} is not a prime in 2..={MAX_PRIME}"
            )));
        }
        if let Some(first) = columns.first() {
            if columns.iter().any(|c| c.len() != first.len()) {
                return Err(MatroidError::Invalid(
                    "linear matroid columns have unequal lengths".into(),
                ));
            }
        }
        let columns = columns
            .into_iter()
            .map(|c| c.into_iter().map(|x| x % prime).collect())
            .collect();
        Ok(Matroid::build(
            n,
            Subset::full(n),
            Construction::Linear { prime, columns },
        ))
    }

    /// Partition matroid; `blocks` must partition `0..n` where `n` is the total
    /// number of listed elements.
    pub fn partition(blocks: Vec<Vec<usize>>, capacities: Vec<usize>) -> Result<Self> {
        if blocks.len() != capacities.len() {
            return Err(MatroidError::Invalid(format!(
                "{} blocks but {} capacities",
                blocks.len(),
                capacities.len()
            )));
        }
        let n: usize = blocks.iter().map(Vec::len).sum();
        Matroid::check_universe(n)?;
        let mut seen = Subset::empty(n);
        let mut masks = Vec::with_capacity(blocks.len());
        for block in &blocks {
            let mut mask = Subset::empty(n);
            for &e in block {
                if e >= n {
                    return Err(MatroidError::Invalid(format!(
                        "block element {e} outside 0..{n}"
                    )));
                }
                if seen.contains(e) {
                    return Err(MatroidError::Invalid(format!(
                        "element {e} appears in more than one block"
                    )));
                }
                seen = seen.with(e);
                mask = mask.with(e);
            }
            masks.push(mask);
        }
        Ok(Matroid::build(
            n,
            Subset::full(n),
            Construction::Partition {
                blocks: masks,
                capacities,
            },
        ))
    }

    /// Explicit family on the whole universe `0..n`, validated against the
    /// matroid axioms.
    pub fn explicit(n: usize, sets: &[Subset]) -> Result<Self> {
        Matroid::check_universe(n)?;
        Matroid::explicit_on(Subset::full(n), sets)
    }

    /// Explicit family on a ground set that may be smaller than the universe.
    pub fn explicit_on(ground: Subset, sets: &[Subset]) -> Result<Self> {
        let n = ground.universe();
        if ground.len() > ENUMERATION_CAP {
            return Err(MatroidError::TooLarge {
                what: "explicit ground set",
                size: ground.len() as u64,
                cap: ENUMERATION_CAP as u64,
            });
        }
        let mut family = Vec::with_capacity(sets.len());
        for s in sets {
            if s.universe() != n || !s.is_subset_of(ground) {
                return Err(MatroidError::GroundMismatch(format!(
                    "listed set {s} is not a subset of the ground set {ground}"
                )));
            }
            family.push(s.bits());
        }
        family.sort_unstable();
        family.dedup();
        let report = check_family(ground, |s| family.binary_search(&s.bits()).is_ok());
        if !report.is_matroid() {
            return Err(MatroidError::AxiomViolation(Box::new(report)));
        }
        Ok(Matroid::build(n, ground, Construction::Explicit { family }))
    }

    pub fn universe(&self) -> usize {
        self.node.universe
    }

    pub fn ground(&self) -> Subset {
        self.node.ground
    }

    /// r(E).
    pub fn full_rank(&self) -> usize {
        self.node.full_rank
    }

    pub fn construction(&self) -> &Construction {
        &self.node.construction
    }

    /// Rejects subsets that do not live inside the ground set.
    pub fn check_subset(&self, s: Subset) -> Result<()> {
        if s.universe() != self.universe() {
            return Err(MatroidError::GroundMismatch(format!(
                "subset over {} elements, matroid over {}",
                s.universe(),
                self.universe()
            )));
        }
        if !s.is_subset_of(self.ground()) {
            return Err(MatroidError::GroundMismatch(format!(
                "{s} is not contained in the ground set {}",
                self.ground()
            )));
        }
        Ok(())
    }

    pub fn is_independent(&self, s: Subset) -> Result<bool> {
        self.check_subset(s)?;
        Ok(self.independent(s))
    }

    pub fn rank(&self, s: Subset) -> Result<usize> {
        self.check_subset(s)?;
        Ok(self.rank_of(s))
    }

    /// Independence test without the ground-set check.
    #[inline]
    pub(crate) fn independent(&self, s: Subset) -> bool {
        self.node.independent(s)
    }

    /// Rank without the ground-set check.
    #[inline]
    pub(crate) fn rank_of(&self, s: Subset) -> usize {
        self.node.rank_of(s)
    }

    /// Greedy maximal independent subset of `s`, scanning elements in
    /// ascending order.
    pub fn basis_of(&self, s: Subset) -> Result<Subset> {
        self.check_subset(s)?;
        Ok(self.greedy_extend(Subset::empty(self.universe()), s))
    }

    /// Extends the independent set `start` to a basis of `within` by greedy
    /// ascending augmentation.
    pub fn extend_to_basis(&self, start: Subset, within: Subset) -> Result<Subset> {
        self.check_subset(within)?;
        if !start.is_subset_of(within) {
            return Err(MatroidError::NotContained {
                inner: start.to_string(),
                outer: within.to_string(),
            });
        }
        if !self.independent(start) {
            return Err(MatroidError::NotIndependent(start.to_string()));
        }
        Ok(self.greedy_extend(start, within))
    }

    pub(crate) fn greedy_extend(&self, start: Subset, within: Subset) -> Subset {
        let mut current = start;
        for e in within.difference(start).iter() {
            let candidate = current.with(e);
            if self.independent(candidate) {
                current = candidate;
            }
        }
        current
    }

    fn check_enumerable(&self) -> Result<()> {
        if self.ground().len() > ENUMERATION_CAP {
            return Err(MatroidError::TooLarge {
                what: "ground set for enumeration",
                size: self.ground().len() as u64,
                cap: ENUMERATION_CAP as u64,
            });
        }
        Ok(())
    }

    /// Every independent set, ascending by mask.
    pub fn independent_sets(&self) -> Result<Vec<Subset>> {
        self.check_enumerable()?;
        Ok(self
            .ground()
            .subsets()
            .filter(|&s| self.independent(s))
            .collect())
    }

    /// Every basis, ascending by mask.
    pub fn bases(&self) -> Result<Vec<Subset>> {
        self.check_enumerable()?;
        let r = self.full_rank();
        Ok(self
            .ground()
            .subsets()
            .filter(|s| s.len() == r && self.independent(*s))
            .collect())
    }

    /// Short human-readable description of the construction tree.
    pub fn describe(&self) -> String {
        let n = self.universe();
        match self.construction() {
            Construction::Uniform { k } => format!("U({n},{k})"),
            Construction::Graphic { vertices, edges } => {
                format!("graphic({vertices}v,{}e)", edges.len())
            }
            Construction::Linear { prime, columns } => {
                let d = columns.first().map_or(0, Vec::len);
                format!("linear(GF({prime})^{d},{}c)", columns.len())
            }
            Construction::Partition { blocks, capacities } => {
                let parts: Vec<String> = blocks
                    .iter()
                    .zip(capacities)
                    .map(|(b, c)| format!("{b}:{c}"))
                    .collect();
                format!("partition({})", parts.join(" "))
            }
            Construction::Explicit { family } => {
                format!("explicit({} sets on {})", family.len(), self.ground())
            }
            Construction::Derived(d) => match d {
                Derived::Dual(m) => format!("dual({})", m.describe()),
                Derived::Delete { inner, removed } => {
                    format!("delete({},{removed})", inner.describe())
                }
                Derived::Contract {
                    inner, contracted, ..
                } => format!("contract({},{contracted})", inner.describe()),
                Derived::Restrict { inner, kept } => {
                    format!("restrict({},{kept})", inner.describe())
                }
                Derived::Union(ms) => {
                    let parts: Vec<String> = ms.iter().map(Matroid::describe).collect();
                    format!("union({})", parts.join(","))
                }
                Derived::LoopExtend(m) => format!("extend({},{})", m.describe(), self.ground()),
                Derived::Embed { inner, map } => format!("embed({},{map:?})", inner.describe()),
            },
        }
    }
}

impl fmt::Debug for Matroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

impl Node {
    fn independent(&self, s: Subset) -> bool {
        match &self.construction {
            Construction::Uniform { k } => s.len() <= *k,
            Construction::Graphic { vertices, edges } => {
                let mut uf = UnionFind::<usize>::new(*vertices);
                s.iter().all(|e| {
                    let (u, v) = edges[e];
                    uf.union(u, v)
                })
            }
            Construction::Linear { prime, columns } => {
                let mut basis = EchelonBasis::new(*prime);
                s.iter().all(|e| basis.insert(&columns[e]))
            }
            Construction::Partition { blocks, capacities } => blocks
                .iter()
                .zip(capacities)
                .all(|(b, &c)| s.intersection(*b).len() <= c),
            Construction::Explicit { family } => family.binary_search(&s.bits()).is_ok(),
            Construction::Derived(d) => match d {
                Derived::Dual(m) => m.rank_of(m.ground().difference(s)) == m.full_rank(),
                Derived::Delete { inner, .. } | Derived::Restrict { inner, .. } => {
                    inner.independent(s)
                }
                Derived::LoopExtend(inner) => {
                    s.is_subset_of(inner.ground()) && inner.independent(s)
                }
                Derived::Embed { inner, map } => {
                    // an embedding is injective, so no two elements collapse
                    inner.independent(preimage(inner, map, s))
                }
                Derived::Contract { .. } | Derived::Union(_) => self.rank_of(s) == s.len(),
            },
        }
    }

    fn rank_of(&self, s: Subset) -> usize {
        match &self.construction {
            Construction::Uniform { k } => s.len().min(*k),
            Construction::Graphic { vertices, edges } => {
                let mut uf = UnionFind::<usize>::new(*vertices);
                s.iter()
                    .filter(|&e| {
                        let (u, v) = edges[e];
                        uf.union(u, v)
                    })
                    .count()
            }
            Construction::Linear { prime, columns } => {
                let mut basis = EchelonBasis::new(*prime);
                for e in s.iter() {
                    basis.insert(&columns[e]);
                }
                basis.rank()
            }
            Construction::Partition { blocks, capacities } => blocks
                .iter()
                .zip(capacities)
                .map(|(b, &c)| s.intersection(*b).len().min(c))
                .sum(),
            Construction::Explicit { .. } => self.greedy_rank(s),
            Construction::Derived(d) => match d {
                Derived::Dual(m) => s.len() + m.rank_of(m.ground().difference(s)) - m.full_rank(),
                Derived::Delete { inner, .. } | Derived::Restrict { inner, .. } => inner.rank_of(s),
                Derived::Contract {
                    inner,
                    contracted,
                    definitional,
                } => {
                    let r = inner.rank_of(s.union(*contracted)) - inner.rank_of(*contracted);
                    debug_assert_eq!(
                        r,
                        definitional.rank_of(s),
                        "contraction rank formula disagrees with (M*\\X)* at {s}"
                    );
                    r
                }
                Derived::Union(ms) => union_rank(ms, s),
                Derived::LoopExtend(inner) => inner.rank_of(s.intersection(inner.ground())),
                Derived::Embed { inner, map } => inner.rank_of(preimage(inner, map, s)),
            },
        }
    }

    fn greedy_rank(&self, s: Subset) -> usize {
        let mut current = Subset::empty(self.universe);
        for e in s.iter() {
            let candidate = current.with(e);
            if self.independent(candidate) {
                current = candidate;
            }
        }
        current.len()
    }
}

fn preimage(inner: &Matroid, map: &[usize], s: Subset) -> Subset {
    let mut out = Subset::empty(inner.universe());
    for e in inner.ground().iter() {
        if s.contains(map[e]) {
            out = out.with(e);
        }
    }
    out
}

/// Rank of `x` in the union of `ms`: min over `A ⊆ x` of `|x \ A| + Σ r_i(A)`.
pub(crate) fn union_rank(ms: &[Matroid], x: Subset) -> usize {
    let mut best = x.len();
    for a in x.subsets() {
        let mut value = x.len() - a.len();
        for m in ms {
            value += m.rank_of(a);
            if value >= best {
                break;
            }
        }
        best = best.min(value);
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(n: usize, xs: &[usize]) -> Subset {
        Subset::from_indices(n, xs.iter().copied()).unwrap()
    }

    fn triangle() -> Matroid {
        Matroid::graphic(3, vec![(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    #[test]
    fn independence_examples() {
        let u = Matroid::uniform(3, 2).unwrap();
        assert!(u.is_independent(set(3, &[0, 1])).unwrap());
        assert!(!triangle().is_independent(set(3, &[0, 1, 2])).unwrap());
        let lin = Matroid::linear(2, vec![vec![1, 0], vec![0, 1], vec![1, 1]]).unwrap();
        assert!(lin.is_independent(set(3, &[0, 2])).unwrap());
        assert!(!lin.is_independent(set(3, &[0, 1, 2])).unwrap());
    }

    #[test]
    fn rank_examples() {
        let u = Matroid::uniform(3, 2).unwrap();
        assert_eq!(u.rank(Subset::full(3)).unwrap(), 2);
        let p = Matroid::partition(vec![vec![0, 1], vec![2]], vec![1, 1]).unwrap();
        assert_eq!(p.rank(Subset::full(3)).unwrap(), 2);
        assert_eq!(triangle().rank(Subset::full(3)).unwrap(), 2);
    }

    #[test]
    fn basis_examples() {
        let u = Matroid::uniform(3, 2).unwrap();
        assert_eq!(u.basis_of(Subset::full(3)).unwrap(), set(3, &[0, 1]));
        assert_eq!(u.basis_of(Subset::empty(3)).unwrap(), Subset::empty(3));
        let p = Matroid::partition(vec![vec![0, 1], vec![2]], vec![1, 1]).unwrap();
        assert_eq!(p.basis_of(Subset::full(3)).unwrap(), set(3, &[0, 2]));
    }

    #[test]
    fn extension_examples() {
        let u = Matroid::uniform(4, 2).unwrap();
        assert_eq!(
            u.extend_to_basis(set(4, &[3]), Subset::full(4)).unwrap(),
            set(4, &[0, 3])
        );
        let b = set(4, &[1, 2]);
        assert_eq!(u.extend_to_basis(b, Subset::full(4)).unwrap(), b);
        assert_eq!(
            triangle()
                .extend_to_basis(set(3, &[2]), Subset::full(3))
                .unwrap(),
            set(3, &[0, 2])
        );
    }

    #[test]
    fn extension_errors() {
        let u = Matroid::uniform(4, 1).unwrap();
        assert!(matches!(
            u.extend_to_basis(set(4, &[0, 1]), Subset::full(4)),
            Err(MatroidError::NotIndependent(_))
        ));
        assert!(matches!(
            u.extend_to_basis(set(4, &[3]), set(4, &[0, 1])),
            Err(MatroidError::NotContained { .. })
        ));
    }

    #[test]
    fn ground_mismatch_is_an_error() {
        let u = Matroid::uniform(3, 2).unwrap();
        assert!(matches!(
            u.rank(Subset::full(4)),
            Err(MatroidError::GroundMismatch(_))
        ));
        assert!(u.is_independent(Subset::empty(2)).is_err());
    }

    #[test]
    fn invalid_constructions() {
        assert!(Matroid::uniform(3, 4).is_err());
        assert!(Matroid::uniform(25, 1).is_err());
        assert!(Matroid::graphic(2, vec![(0, 2)]).is_err());
        assert!(Matroid::linear(4, vec![vec![1]]).is_err());
        assert!(Matroid::linear(101, vec![vec![1]]).is_err());
        assert!(Matroid::linear(3, vec![vec![1], vec![1, 0]]).is_err());
        assert!(Matroid::partition(vec![vec![0, 1], vec![1]], vec![1, 1]).is_err());
        assert!(Matroid::partition(vec![vec![0, 3]], vec![1]).is_err());
        assert!(Matroid::partition(vec![vec![0]], vec![]).is_err());
    }

    #[test]
    fn explicit_families_are_validated() {
        let ok = [Subset::empty(2), set(2, &[0]), set(2, &[1])];
        let m = Matroid::explicit(2, &ok).unwrap();
        assert_eq!(m.full_rank(), 1);
        let bad = [Subset::empty(2), set(2, &[0]), set(2, &[0, 1])];
        assert!(matches!(
            Matroid::explicit(2, &bad),
            Err(MatroidError::AxiomViolation(_))
        ));
    }

    #[test]
    fn graphic_self_loops_are_matroid_loops() {
        let g = Matroid::graphic(2, vec![(0, 0), (0, 1), (1, 0)]).unwrap();
        assert_eq!(g.rank(set(3, &[0])).unwrap(), 0);
        assert_eq!(g.rank(Subset::full(3)).unwrap(), 1);
        assert!(!g.is_independent(set(3, &[1, 2])).unwrap());
    }

    #[test]
    fn enumerations() {
        let u = Matroid::uniform(3, 2).unwrap();
        assert_eq!(u.independent_sets().unwrap().len(), 7);
        assert_eq!(u.bases().unwrap().len(), 3);
        assert_eq!(triangle().bases().unwrap().len(), 3);
    }
}
