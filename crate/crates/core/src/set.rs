//! Subsets of a ground set `{0, .., n-1}` packed into a single machine word.

use std::fmt;
use std::ops::{BitAnd, BitOr, BitXor, Not, Sub};

/// Largest ground set any [`crate::Matroid`] may have.
pub const MAX_ELEMENTS: usize = 31;

/// A set of ground elements stored as a bitmask. Bit `i` set means element `i` is present.
///
/// Iteration is always in ascending element order.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementSet(u32);

impl ElementSet {
    pub const EMPTY: ElementSet = ElementSet(0);

    #[inline]
    pub const fn from_bits(bits: u32) -> Self {
        ElementSet(bits)
    }

    #[inline]
    pub const fn bits(self) -> u32 {
        self.0
    }

    /// The full ground set `{0, .., n-1}`.
    #[inline]
    pub const fn full(n: usize) -> Self {
        if n >= 32 {
            ElementSet(u32::MAX)
        } else {
            ElementSet((1u32 << n) - 1)
        }
    }

    #[inline]
    pub const fn singleton(e: usize) -> Self {
        ElementSet(1 << e)
    }

    #[inline]
    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub const fn contains(self, e: usize) -> bool {
        e < 32 && self.0 & (1 << e) != 0
    }

    #[inline]
    pub const fn is_subset(self, other: ElementSet) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub const fn is_disjoint(self, other: ElementSet) -> bool {
        self.0 & other.0 == 0
    }

    #[inline]
    pub const fn with(self, e: usize) -> Self {
        ElementSet(self.0 | (1 << e))
    }

    #[inline]
    pub const fn without(self, e: usize) -> Self {
        ElementSet(self.0 & !(1 << e))
    }

    #[inline]
    pub fn insert(&mut self, e: usize) {
        self.0 |= 1 << e;
    }

    #[inline]
    pub fn remove(&mut self, e: usize) {
        self.0 &= !(1 << e);
    }

    /// Smallest element, if any.
    #[inline]
    pub const fn first(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    /// Largest element index plus one, i.e. the smallest `n` this set fits into.
    #[inline]
    pub const fn span(self) -> usize {
        32 - self.0.leading_zeros() as usize
    }

    pub fn iter(self) -> Elements {
        Elements(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// All subsets of `self`, in increasing mask order, starting with the empty set.
    pub fn subsets(self) -> Subsets {
        Subsets {
            universe: self.0,
            next: Some(0),
        }
    }

    /// All `k`-element subsets of `self`, in increasing mask order.
    pub fn subsets_of_size(self, k: usize) -> impl Iterator<Item = ElementSet> {
        self.subsets().filter(move |s| s.len() == k)
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

impl FromIterator<usize> for ElementSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = ElementSet::EMPTY;
        for e in iter {
            s.insert(e);
        }
        s
    }
}

impl<'a> FromIterator<&'a usize> for ElementSet {
    fn from_iter<I: IntoIterator<Item = &'a usize>>(iter: I) -> Self {
        iter.into_iter().copied().collect()
    }
}

impl IntoIterator for ElementSet {
    type Item = usize;
    type IntoIter = Elements;
    fn into_iter(self) -> Elements {
        self.iter()
    }
}

impl BitOr for ElementSet {
    type Output = ElementSet;
    #[inline]
    fn bitor(self, rhs: ElementSet) -> ElementSet {
        ElementSet(self.0 | rhs.0)
    }
}

impl BitAnd for ElementSet {
    type Output = ElementSet;
    #[inline]
    fn bitand(self, rhs: ElementSet) -> ElementSet {
        ElementSet(self.0 & rhs.0)
    }
}

impl BitXor for ElementSet {
    type Output = ElementSet;
    #[inline]
    fn bitxor(self, rhs: ElementSet) -> ElementSet {
        ElementSet(self.0 ^ rhs.0)
    }
}

impl Sub for ElementSet {
    type Output = ElementSet;
    #[inline]
    fn sub(self, rhs: ElementSet) -> ElementSet {
        ElementSet(self.0 & !rhs.0)
    }
}

/// Bitwise complement over all 32 bits; intersect with [`ElementSet::full`] to stay in range.
impl Not for ElementSet {
    type Output = ElementSet;
    #[inline]
    fn not(self) -> ElementSet {
        ElementSet(!self.0)
    }
}

#[derive(Clone, Debug)]
pub struct Elements(u32);

impl Iterator for Elements {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let e = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(e)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Elements {}

/// Carry-rippler enumeration of the submasks of a fixed universe.
#[derive(Clone, Debug)]
pub struct Subsets {
    universe: u32,
    next: Option<u32>,
}

impl Iterator for Subsets {
    type Item = ElementSet;

    fn next(&mut self) -> Option<ElementSet> {
        let cur = self.next?;
        let succ = cur.wrapping_sub(self.universe) & self.universe;
        self.next = if succ == 0 { None } else { Some(succ) };
        Some(ElementSet(cur))
    }
}

/// `k`-element subsets of `{0, .., n-1}` as index vectors, in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Combinations {
    Combinations {
        n,
        current: if k <= n { Some((0..k).collect()) } else { None },
    }
}

#[derive(Clone, Debug)]
pub struct Combinations {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let cur = self.current.take()?;
        let k = cur.len();
        let mut succ = cur.clone();
        let mut i = k;
        while i > 0 {
            i -= 1;
            if succ[i] < self.n - k + i {
                succ[i] += 1;
                for j in i + 1..k {
                    succ[j] = succ[j - 1] + 1;
                }
                self.current = Some(succ);
                return Some(cur);
            }
        }
        Some(cur)
    }
}

/// Binomial coefficient, saturating at `u64::MAX`.
pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}
