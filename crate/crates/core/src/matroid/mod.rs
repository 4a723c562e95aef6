//! Exact matroid engine over circuit families.
//!
//! A [`Matroid`] is stored as its canonical circuit list: duplicate-free, an antichain,
//! sorted by mask value. Rank, closure, flats and the dual are all derived from it.
//! For ground sets up to [`RANK_TABLE_MAX_N`] elements a full rank table over every
//! subset is built lazily on first use and shared between clones; above that, ranks are
//! computed greedily from the circuit list.

mod connectivity;
mod extension;
mod iso;
mod named;
mod ops;

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::report::AuditReport;
use crate::set::{ElementSet, MAX_ELEMENTS};

pub use connectivity::check_n_connected;
pub use extension::{DerivedKind, ModularCutSpec};
pub use iso::{are_isomorphic, ISOMORPHISM_MAX_N};
pub use named::NamedMatroid;
pub use ops::Minor;

/// Largest ground set for which a rank table over all `2^n` subsets is materialised,
/// and the limit for operations that scan every subset.
pub const RANK_TABLE_MAX_N: usize = 24;

pub struct Matroid {
    n: usize,
    circuits: Vec<ElementSet>,
    ranks: OnceLock<Arc<[u8]>>,
    flats: OnceLock<Arc<[ElementSet]>>,
}

impl Clone for Matroid {
    fn clone(&self) -> Self {
        Matroid {
            n: self.n,
            circuits: self.circuits.clone(),
            ranks: self.ranks.clone(),
            flats: self.flats.clone(),
        }
    }
}

impl PartialEq for Matroid {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.circuits == other.circuits
    }
}

impl Eq for Matroid {}

impl std::hash::Hash for Matroid {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.circuits.hash(state);
    }
}

impl fmt::Debug for Matroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Matroid")
            .field("n", &self.n)
            .field("circuits", &self.circuits)
            .finish()
    }
}

impl Matroid {
    /// Builds a matroid from element lists. Duplicates and non-minimal members are
    /// dropped; circuit elimination is not checked (see [`Matroid::validate_circuit_axioms`]).
    pub fn from_circuits<C, I>(n: usize, circuits: I) -> Result<Matroid>
    where
        I: IntoIterator<Item = C>,
        C: AsRef<[usize]>,
    {
        if n > MAX_ELEMENTS {
            return Err(Error::GroundSetTooLarge {
                n,
                max: MAX_ELEMENTS,
            });
        }
        let mut sets = Vec::new();
        for c in circuits {
            let c = c.as_ref();
            if c.is_empty() {
                return Err(Error::EmptyCircuit);
            }
            let mut s = ElementSet::EMPTY;
            for &e in c {
                if e >= n {
                    return Err(Error::ElementOutOfRange { element: e, n });
                }
                s.insert(e);
            }
            sets.push(s);
        }
        Self::from_sets(n, sets)
    }

    /// Like [`Matroid::from_circuits`] but over masks.
    pub fn from_sets(n: usize, sets: impl IntoIterator<Item = ElementSet>) -> Result<Matroid> {
        if n > MAX_ELEMENTS {
            return Err(Error::GroundSetTooLarge {
                n,
                max: MAX_ELEMENTS,
            });
        }
        let ground = ElementSet::full(n);
        let mut sets: Vec<ElementSet> = sets.into_iter().collect();
        for &s in &sets {
            if s.is_empty() {
                return Err(Error::EmptyCircuit);
            }
            if !s.is_subset(ground) {
                return Err(Error::ElementOutOfRange {
                    element: (s - ground).first().unwrap_or(n),
                    n,
                });
            }
        }
        sets.sort_unstable();
        sets.dedup();
        Ok(Self::from_canonical(n, antichain_reduce(sets)))
    }

    /// Trusted constructor: `circuits` must already be a sorted, duplicate-free antichain.
    pub(crate) fn from_canonical(n: usize, circuits: Vec<ElementSet>) -> Matroid {
        debug_assert!(circuits.windows(2).all(|w| w[0] < w[1]));
        Matroid {
            n,
            circuits,
            ranks: OnceLock::new(),
            flats: OnceLock::new(),
        }
    }

    /// The free matroid on `n` elements (no circuits). `n = 0` gives the empty matroid.
    pub fn free(n: usize) -> Result<Matroid> {
        Self::from_sets(n, [])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ground(&self) -> ElementSet {
        ElementSet::full(self.n)
    }

    /// Circuits in canonical order (ascending mask value).
    pub fn circuits(&self) -> &[ElementSet] {
        &self.circuits
    }

    pub fn is_circuit(&self, x: ElementSet) -> bool {
        self.circuits.binary_search(&x).is_ok()
    }

    /// Circuits as ascending element lists, themselves sorted lexicographically.
    pub fn circuit_lists(&self) -> Vec<Vec<usize>> {
        let mut lists: Vec<Vec<usize>> = self.circuits.iter().map(|c| c.to_vec()).collect();
        lists.sort();
        lists
    }

    /// Reports the first violation of circuit elimination: distinct circuits `C1`, `C2`
    /// sharing `e` with no circuit inside `(C1 ∪ C2) - e`.
    pub fn validate_circuit_axioms(&self) -> AuditReport {
        let mut report = AuditReport::new("circuit axioms");
        if self.circuits.iter().any(|c| c.is_empty()) {
            report.fail("non-empty", "empty circuit present", []);
            return report;
        }
        for (i, &a) in self.circuits.iter().enumerate() {
            for &b in &self.circuits[i + 1..] {
                if a.is_subset(b) || b.is_subset(a) {
                    report.fail("antichain", "one circuit contains another", [a, b]);
                    return report;
                }
            }
        }
        for (i, &a) in self.circuits.iter().enumerate() {
            for &b in &self.circuits[i + 1..] {
                for e in a & b {
                    let target = (a | b).without(e);
                    if !self.contains_circuit(target) {
                        report.fail(
                            "elimination",
                            format!("no circuit inside ({a} ∪ {b}) - {e}"),
                            [a, b, ElementSet::singleton(e)],
                        );
                        return report;
                    }
                }
            }
        }
        report.pass(
            "elimination",
            format!("{} circuits satisfy elimination", self.circuits.len()),
        );
        report
    }

    /// True if some circuit lies inside `x`, straight from the circuit list.
    pub fn contains_circuit(&self, x: ElementSet) -> bool {
        self.circuits.iter().any(|c| c.is_subset(x))
    }

    pub fn is_independent(&self, x: ElementSet) -> bool {
        match self.rank_table() {
            Some(t) => t[x.bits() as usize] as usize == x.len(),
            None => !self.contains_circuit(x),
        }
    }

    /// Rank of `x`.
    pub fn rank(&self, x: ElementSet) -> usize {
        match self.rank_table() {
            Some(t) => t[x.bits() as usize] as usize,
            None => self.greedy_basis(x).len(),
        }
    }

    /// Rank of the whole ground set.
    pub fn matroid_rank(&self) -> usize {
        self.rank(self.ground())
    }

    /// Rank of `x` in the dual: `|x| + r(E - x) - r(E)`.
    pub fn corank(&self, x: ElementSet) -> usize {
        x.len() + self.rank(self.ground() - x) - self.matroid_rank()
    }

    /// A maximal independent subset of `x`, grown in ascending element order using only
    /// the circuit list.
    pub fn greedy_basis(&self, x: ElementSet) -> ElementSet {
        let mut basis = ElementSet::EMPTY;
        for e in x {
            let cand = basis.with(e);
            if !self
                .circuits
                .iter()
                .any(|c| c.contains(e) && c.is_subset(cand))
            {
                basis = cand;
            }
        }
        basis
    }

    pub fn closure(&self, x: ElementSet) -> ElementSet {
        let r = self.rank(x);
        let mut cl = x;
        for e in self.ground() - x {
            if self.rank(x.with(e)) == r {
                cl.insert(e);
            }
        }
        cl
    }

    pub fn is_flat(&self, x: ElementSet) -> bool {
        let r = self.rank(x);
        (self.ground() - x).iter().all(|e| self.rank(x.with(e)) > r)
    }

    /// All flats in ascending mask order. Memoised.
    pub fn flats(&self) -> Result<Arc<[ElementSet]>> {
        self.ensure_scannable()?;
        Ok(self
            .flats
            .get_or_init(|| {
                self.ground()
                    .subsets()
                    .filter(|&x| self.is_flat(x))
                    .collect::<Vec<_>>()
                    .into()
            })
            .clone())
    }

    pub(crate) fn ensure_scannable(&self) -> Result<()> {
        if self.n > RANK_TABLE_MAX_N {
            Err(Error::GroundSetTooLargeForExhaustiveScan {
                n: self.n,
                max: RANK_TABLE_MAX_N,
            })
        } else {
            Ok(())
        }
    }

    fn rank_table(&self) -> Option<&[u8]> {
        if self.n > RANK_TABLE_MAX_N {
            return None;
        }
        Some(
            self.ranks
                .get_or_init(|| build_rank_table(self.n, &self.circuits)),
        )
    }
}

/// Rank of every subset of `{0, .., n-1}`, indexed by mask.
///
/// Dependence is the upward closure of the circuit indicator; rank is then the
/// downward max of `|X|` over independent `X`. Both are subset-sum style sweeps.
fn build_rank_table(n: usize, circuits: &[ElementSet]) -> Arc<[u8]> {
    let size = 1usize << n;
    let mut dep = vec![false; size];
    for c in circuits {
        dep[c.bits() as usize] = true;
    }
    for i in 0..n {
        let bit = 1usize << i;
        for base in (0..size).step_by(bit << 1) {
            for m in base + bit..base + (bit << 1) {
                dep[m] |= dep[m - bit];
            }
        }
    }
    let mut rank: Vec<u8> = (0..size)
        .map(|m| if dep[m] { 0 } else { m.count_ones() as u8 })
        .collect();
    for i in 0..n {
        let bit = 1usize << i;
        for base in (0..size).step_by(bit << 1) {
            for m in base + bit..base + (bit << 1) {
                rank[m] = rank[m].max(rank[m - bit]);
            }
        }
    }
    rank.into()
}

/// Keeps the inclusion-minimal members of a sorted, duplicate-free list.
fn antichain_reduce(sorted: Vec<ElementSet>) -> Vec<ElementSet> {
    let mut by_size = sorted.clone();
    by_size.sort_by_key(|s| (s.len(), s.bits()));
    let mut kept: Vec<ElementSet> = Vec::with_capacity(by_size.len());
    for s in by_size {
        if !kept.iter().any(|k| k.is_subset(s)) {
            kept.push(s);
        }
    }
    kept.sort_unstable();
    kept
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn u24() -> Matroid {
        Matroid::from_circuits(4, [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]).unwrap()
    }

    fn set(xs: &[usize]) -> ElementSet {
        xs.iter().collect()
    }

    #[test]
    fn from_circuits_examples() {
        let m = u24();
        assert_eq!(m.circuits().len(), 4);
        let u12 = Matroid::from_circuits(2, [[0, 1]]).unwrap();
        assert_eq!(u12.circuits(), &[set(&[0, 1])]);
        let reduced = Matroid::from_circuits(4, [vec![0, 1, 2], vec![0, 1, 2, 3]]).unwrap();
        assert_eq!(reduced.circuits(), &[set(&[0, 1, 2])]);
    }

    #[test]
    fn from_circuits_errors() {
        assert!(matches!(
            Matroid::from_circuits(3, [vec![0, 3]]),
            Err(Error::ElementOutOfRange { element: 3, n: 3 })
        ));
        assert!(matches!(
            Matroid::from_circuits(3, [Vec::<usize>::new()]),
            Err(Error::EmptyCircuit)
        ));
        assert!(matches!(
            Matroid::from_circuits(32, [[0, 1]]),
            Err(Error::GroundSetTooLarge { n: 32, .. })
        ));
    }

    #[test]
    fn canonical_form_ignores_input_order() {
        let a = Matroid::from_circuits(4, [[3, 2, 1], [0, 1, 2], [0, 3, 1], [2, 0, 3]]).unwrap();
        assert_eq!(a, u24());
        assert_eq!(a.circuits(), u24().circuits());
    }

    #[test]
    fn axioms() {
        assert!(u24().validate_circuit_axioms().passed());
        let broken = Matroid::from_circuits(4, [[0, 1, 2], [0, 1, 3]]).unwrap();
        let report = broken.validate_circuit_axioms();
        assert!(!report.passed());
        let f = report.first_failure().unwrap();
        assert_eq!(f.check, "elimination");
        assert_eq!(f.witness, vec![vec![0, 1, 2], vec![0, 1, 3], vec![0]]);
    }

    #[test]
    fn rank_and_closure_uniform() {
        let m = u24();
        assert_eq!(m.rank(m.ground()), 2);
        assert_eq!(m.rank(ElementSet::EMPTY), 0);
        assert_eq!(m.closure(set(&[0, 1])), m.ground());
        assert_eq!(m.closure(set(&[2])), set(&[2]));
        assert_eq!(m.closure(m.ground()), m.ground());
        assert_eq!(m.corank(m.ground()), 2);
    }

    #[test]
    fn rank_table_matches_greedy() {
        let m = u24();
        for x in m.ground().subsets() {
            assert_eq!(m.rank(x), m.greedy_basis(x).len());
        }
    }

    #[test]
    fn flats_of_uniform() {
        let m = u24();
        let flats = m.flats().unwrap();
        // empty set, four points, whole set
        assert_eq!(flats.len(), 6);
        assert!(flats.contains(&ElementSet::EMPTY));
        assert!(flats.contains(&m.ground()));
    }

    #[test]
    fn loops_are_in_every_closure() {
        let m = Matroid::from_circuits(3, [vec![0], vec![1, 2]]).unwrap();
        assert_eq!(m.closure(ElementSet::EMPTY), set(&[0]));
        assert_eq!(m.rank(m.ground()), 1);
        assert!(!m.is_flat(ElementSet::EMPTY));
    }
}
