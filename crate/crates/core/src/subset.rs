//! Bitmask subsets of a finite ground set.
//!
//! Elements are dense indices `0..n`. Every subset remembers the size of the
//! universe it lives in, so complements are well defined and a subset can never
//! carry a bit at or above `n`.

use std::fmt;

use crate::error::MatroidError;

/// Largest supported universe.
pub const MAX_ELEMENTS: usize = 24;

/// A finite ground set `{0, .., n-1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GroundSet {
    n: usize,
}

impl GroundSet {
    pub fn new(n: usize) -> Result<Self, MatroidError> {
        if n > MAX_ELEMENTS {
            return Err(MatroidError::TooLarge {
                what: "ground set",
                size: n as u64,
                cap: MAX_ELEMENTS as u64,
            });
        }
        Ok(GroundSet { n })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// The whole ground set as a subset.
    pub fn full(&self) -> Subset {
        Subset::full(self.n)
    }

    pub fn empty(&self) -> Subset {
        Subset::empty(self.n)
    }
}

/// A subset of `{0, .., n-1}` stored as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subset {
    bits: u32,
    n: u8,
}

#[inline]
fn mask_of(n: usize) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

impl Subset {
    pub fn empty(n: usize) -> Self {
        debug_assert!(n <= MAX_ELEMENTS);
        Subset {
            bits: 0,
            n: n as u8,
        }
    }

    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_ELEMENTS);
        Subset {
            bits: mask_of(n),
            n: n as u8,
        }
    }

    /// Builds a subset from a raw mask, rejecting bits at or above `n`.
    pub fn from_bits(n: usize, bits: u32) -> Result<Self, MatroidError> {
        if n > MAX_ELEMENTS {
            return Err(MatroidError::TooLarge {
                what: "ground set",
                size: n as u64,
                cap: MAX_ELEMENTS as u64,
            });
        }
        if bits & !mask_of(n) != 0 {
            return Err(MatroidError::ElementOutOfRange {
                element: 31 - bits.leading_zeros() as usize,
                n,
            });
        }
        Ok(Subset { bits, n: n as u8 })
    }

    /// Mask constructor for callers that already guarantee the range.
    #[inline]
    pub(crate) fn from_bits_unchecked(n: usize, bits: u32) -> Self {
        debug_assert_eq!(bits & !mask_of(n), 0);
        Subset { bits, n: n as u8 }
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(
        n: usize,
        indices: I,
    ) -> Result<Self, MatroidError> {
        let mut s = Subset::empty(n);
        for i in indices {
            if i >= n {
                return Err(MatroidError::ElementOutOfRange { element: i, n });
            }
            s.bits |= 1 << i;
        }
        Ok(s)
    }

    pub fn singleton(n: usize, i: usize) -> Self {
        debug_assert!(i < n);
        Subset {
            bits: 1 << i,
            n: n as u8,
        }
    }

    #[inline]
    pub fn bits(&self) -> u32 {
        self.bits
    }

    /// Size of the universe this subset belongs to.
    #[inline]
    pub fn universe(&self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        i < self.universe() && self.bits & (1 << i) != 0
    }

    #[inline]
    pub fn with(&self, i: usize) -> Self {
        debug_assert!(i < self.universe());
        Subset {
            bits: self.bits | (1 << i),
            n: self.n,
        }
    }

    #[inline]
    pub fn without(&self, i: usize) -> Self {
        Subset {
            bits: self.bits & !(1u32 << i),
            n: self.n,
        }
    }

    #[inline]
    pub fn union(&self, other: Subset) -> Self {
        debug_assert_eq!(self.n, other.n);
        Subset {
            bits: self.bits | other.bits,
            n: self.n,
        }
    }

    #[inline]
    pub fn intersection(&self, other: Subset) -> Self {
        debug_assert_eq!(self.n, other.n);
        Subset {
            bits: self.bits & other.bits,
            n: self.n,
        }
    }

    #[inline]
    pub fn difference(&self, other: Subset) -> Self {
        debug_assert_eq!(self.n, other.n);
        Subset {
            bits: self.bits & !other.bits,
            n: self.n,
        }
    }

    /// Complement with respect to the whole universe `{0, .., n-1}`.
    #[inline]
    pub fn complement(&self) -> Self {
        Subset {
            bits: !self.bits & mask_of(self.universe()),
            n: self.n,
        }
    }

    #[inline]
    pub fn is_subset_of(&self, other: Subset) -> bool {
        self.n == other.n && self.bits & !other.bits == 0
    }

    #[inline]
    pub fn is_disjoint(&self, other: Subset) -> bool {
        self.bits & other.bits == 0
    }

    /// Elements in ascending order.
    pub fn iter(&self) -> Elements {
        Elements { bits: self.bits }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Smallest element, if any.
    pub fn first(&self) -> Option<usize> {
        (self.bits != 0).then(|| self.bits.trailing_zeros() as usize)
    }

    /// All subsets of `self`, in ascending mask order (starting at the empty set).
    pub fn subsets(&self) -> Subsets {
        Subsets {
            outer: self.bits,
            next: Some(0),
            n: self.n,
        }
    }

    /// Re-homes the subset into a universe of a different size. Fails if an
    /// element would fall outside the new universe.
    pub fn resize(&self, n: usize) -> Result<Self, MatroidError> {
        Subset::from_bits(n, self.bits)
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}")?;
        }
        f.write_str("}")
    }
}

pub struct Elements {
    bits: u32,
}

impl Iterator for Elements {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.bits == 0 {
            return None;
        }
        let i = self.bits.trailing_zeros();
        self.bits &= self.bits - 1;
        Some(i as usize)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let c = self.bits.count_ones() as usize;
        (c, Some(c))
    }
}

impl ExactSizeIterator for Elements {}

/// Submask enumeration in ascending numeric order.
pub struct Subsets {
    outer: u32,
    next: Option<u32>,
    n: u8,
}

impl Iterator for Subsets {
    type Item = Subset;

    #[inline]
    fn next(&mut self) -> Option<Subset> {
        let cur = self.next?;
        // (cur - outer) & outer steps to the next larger submask.
        self.next = if cur == self.outer {
            None
        } else {
            Some(cur.wrapping_sub(self.outer) & self.outer)
        };
        Some(Subset {
            bits: cur,
            n: self.n,
        })
    }
}

/// Parses a comma-separated index list such as `0,2,5`. The empty string is
/// the empty set.
pub fn parse_index_list(n: usize, text: &str) -> Result<Subset, MatroidError> {
    let text = text.trim();
    let text = text
        .strip_prefix('{')
        .and_then(|t| t.strip_suffix('}'))
        .unwrap_or(text);
    if text.trim().is_empty() {
        return Ok(Subset::empty(n));
    }
    let mut indices = Vec::new();
    for part in text.split(',') {
        let part = part.trim();
        let i: usize = part
            .parse()
            .map_err(|_| MatroidError::Invalid(format!("not an element index: {part:?}")))?;
        indices.push(i);
    }
    Subset::from_indices(n, indices)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_algebra() {
        let a = Subset::from_indices(5, [0, 1, 3]).unwrap();
        let b = Subset::from_indices(5, [1, 2]).unwrap();
        assert_eq!(a.union(b).to_vec(), vec![0, 1, 2, 3]);
        assert_eq!(a.intersection(b).to_vec(), vec![1]);
        assert_eq!(a.difference(b).to_vec(), vec![0, 3]);
        assert_eq!(a.complement().to_vec(), vec![2, 4]);
        assert_eq!(a.len(), 3);
        assert!(Subset::from_indices(5, [1]).unwrap().is_subset_of(b));
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(Subset::from_indices(3, [3]).is_err());
        assert!(Subset::from_bits(3, 0b1000).is_err());
        assert!(GroundSet::new(25).is_err());
        assert!(GroundSet::new(24).is_ok());
    }

    #[test]
    fn submasks_ascending() {
        let s = Subset::from_indices(4, [1, 3]).unwrap();
        let all: Vec<u32> = s.subsets().map(|t| t.bits()).collect();
        assert_eq!(all, vec![0, 2, 8, 10]);
        assert_eq!(Subset::empty(3).subsets().count(), 1);
        assert_eq!(Subset::full(24).subsets().take(3).count(), 3);
    }

    #[test]
    fn parses_lists() {
        assert_eq!(parse_index_list(4, "0,2").unwrap().to_vec(), vec![0, 2]);
        assert!(parse_index_list(4, "").unwrap().is_empty());
        assert_eq!(parse_index_list(4, "{1, 3}").unwrap().to_vec(), vec![1, 3]);
        assert!(parse_index_list(4, "7").is_err());
        assert!(parse_index_list(4, "x").is_err());
    }

    #[test]
    fn display() {
        assert_eq!(
            Subset::from_indices(4, [0, 3]).unwrap().to_string(),
            "{0,3}"
        );
        assert_eq!(Subset::empty(2).to_string(), "{}");
    }
}
