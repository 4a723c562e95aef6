use crate::error::{Error, Result};
use crate::set::{ElementSet, MAX_ELEMENTS};

use super::{antichain_reduce, Matroid, RANK_TABLE_MAX_N};

/// Result of deletion/contraction. Element `i` of `matroid` is element `kept[i]` of the
/// original matroid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Minor {
    pub matroid: Matroid,
    pub kept: Vec<usize>,
}

impl Matroid {
    /// The dual matroid. Its circuits are the minimal transversals of the bases of
    /// `self`: minimal `X` such that `E - X` contains no basis.
    pub fn dual(&self) -> Matroid {
        let ground = self.ground();
        let full_rank = self.matroid_rank();
        let spans = |y: ElementSet| self.rank(y) == full_rank;
        let cocircuits = ground
            .subsets()
            .filter(|&x| {
                !x.is_empty() && !spans(ground - x) && x.iter().all(|e| spans((ground - x).with(e)))
            })
            .collect();
        Matroid::from_canonical(self.n, cocircuits)
    }

    /// Circuits of the dual.
    pub fn cocircuits(&self) -> Vec<ElementSet> {
        self.dual().circuits
    }

    /// `self \ delete / contract`, with surviving elements re-indexed ascending.
    pub fn minor(&self, delete: ElementSet, contract: ElementSet) -> Result<Minor> {
        let overlap = delete & contract;
        if !overlap.is_empty() {
            return Err(Error::OverlappingSets(overlap));
        }
        let ground = self.ground();
        for s in [delete, contract] {
            if !s.is_subset(ground) {
                return Err(Error::ElementOutOfRange {
                    element: (s - ground).first().unwrap_or(self.n),
                    n: self.n,
                });
            }
        }
        let rest = ground - delete - contract;
        let kept = rest.to_vec();

        let circuits_old: Vec<ElementSet> = if contract.is_empty() {
            self.circuits
                .iter()
                .copied()
                .filter(|c| c.is_disjoint(delete))
                .collect()
        } else if self.n <= RANK_TABLE_MAX_N {
            // r_{M/T}(X) = r(X ∪ T) - r(T), restricted to subsets of the survivors.
            let rt = self.rank(contract);
            rest.subsets()
                .filter(|&x| {
                    let k = x.len();
                    k > 0
                        && self.rank(x | contract) - rt + 1 == k
                        && x.iter()
                            .all(|e| self.rank(x.without(e) | contract) - rt + 1 == k)
                })
                .collect()
        } else {
            // Minimal non-empty members of { C - T : C a circuit avoiding D }.
            let mut cands: Vec<ElementSet> = self
                .circuits
                .iter()
                .filter(|c| c.is_disjoint(delete))
                .map(|&c| c - contract)
                .filter(|c| !c.is_empty())
                .collect();
            cands.sort_unstable();
            cands.dedup();
            antichain_reduce(cands)
        };

        let mut circuits: Vec<ElementSet> =
            circuits_old.into_iter().map(|c| repack(c, &kept)).collect();
        circuits.sort_unstable();
        Ok(Minor {
            matroid: Matroid::from_canonical(kept.len(), circuits),
            kept,
        })
    }

    pub fn delete(&self, x: ElementSet) -> Result<Minor> {
        self.minor(x, ElementSet::EMPTY)
    }

    pub fn contract(&self, x: ElementSet) -> Result<Minor> {
        self.minor(ElementSet::EMPTY, x)
    }

    /// Restriction to `x`, re-indexed.
    pub fn restrict(&self, x: ElementSet) -> Matroid {
        let kept = x.to_vec();
        let mut circuits: Vec<ElementSet> = self
            .circuits
            .iter()
            .filter(|c| c.is_subset(x))
            .map(|&c| repack(c, &kept))
            .collect();
        circuits.sort_unstable();
        Matroid::from_canonical(kept.len(), circuits)
    }

    /// Elements of `other` are shifted up by `self.n()`.
    pub fn direct_sum(&self, other: &Matroid) -> Result<Matroid> {
        let n = self.n + other.n;
        if n > MAX_ELEMENTS {
            return Err(Error::GroundSetTooLarge {
                n,
                max: MAX_ELEMENTS,
            });
        }
        let shift = self.n;
        let mut circuits = self.circuits.clone();
        circuits.extend(
            other
                .circuits
                .iter()
                .map(|c| ElementSet::from_bits(c.bits() << shift)),
        );
        Ok(Matroid::from_canonical(n, circuits))
    }
}

/// Maps a set over the original ground set to positions within `kept` (ascending).
fn repack(set: ElementSet, kept: &[usize]) -> ElementSet {
    kept.iter()
        .enumerate()
        .filter(|(_, &old)| set.contains(old))
        .map(|(new, _)| new)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::super::tests::u24;
    use super::*;

    fn uniform(r: usize, n: usize) -> Matroid {
        Matroid::from_sets(n, ElementSet::full(n).subsets_of_size(r + 1)).unwrap()
    }

    #[test]
    fn dual_examples() {
        assert_eq!(u24().dual(), u24());
        let u12 = Matroid::from_circuits(2, [[0, 1]]).unwrap();
        assert_eq!(u12.dual(), u12);
        assert_eq!(uniform(1, 4).dual(), uniform(3, 4));
    }

    #[test]
    fn dual_of_loop_is_coloop() {
        let m = Matroid::from_circuits(2, [[0]]).unwrap();
        let d = m.dual();
        assert_eq!(d.circuits(), &[ElementSet::singleton(1)]);
        assert_eq!(d.dual(), m);
    }

    #[test]
    fn minor_examples() {
        let m = u24();
        let del = m.delete(ElementSet::singleton(0)).unwrap();
        assert_eq!(del.matroid, uniform(2, 3));
        assert_eq!(del.kept, vec![1, 2, 3]);
        let con = m.contract(ElementSet::singleton(2)).unwrap();
        assert_eq!(con.matroid, uniform(1, 3));
        assert_eq!(con.kept, vec![0, 1, 3]);
        let id = m.minor(ElementSet::EMPTY, ElementSet::EMPTY).unwrap();
        assert_eq!(id.matroid, m);
        assert!(matches!(
            m.minor(ElementSet::singleton(1), ElementSet::singleton(1)),
            Err(Error::OverlappingSets(_))
        ));
    }

    #[test]
    fn contraction_routes_agree() {
        // rank-based route against the circuit-family formula
        let m = uniform(3, 7).direct_sum(&u24()).unwrap();
        let t: ElementSet = [1, 8].iter().collect();
        let d: ElementSet = [4].iter().collect();
        let by_rank = m.minor(d, t).unwrap().matroid;
        let mut cands: Vec<ElementSet> = m
            .circuits()
            .iter()
            .filter(|c| c.is_disjoint(d))
            .map(|&c| c - t)
            .filter(|c| !c.is_empty())
            .collect();
        cands.sort_unstable();
        cands.dedup();
        let kept = (m.ground() - d - t).to_vec();
        let by_family = Matroid::from_sets(
            kept.len(),
            antichain_reduce(cands)
                .into_iter()
                .map(|c| repack(c, &kept)),
        )
        .unwrap();
        assert_eq!(by_rank, by_family);
    }

    #[test]
    fn direct_sum_examples() {
        let u12 = Matroid::from_circuits(2, [[0, 1]]).unwrap();
        let two = u12.direct_sum(&u12).unwrap();
        assert_eq!(two.circuit_lists(), vec![vec![0, 1], vec![2, 3]]);
        let empty = Matroid::free(0).unwrap();
        assert_eq!(u24().direct_sum(&empty).unwrap(), u24());
        let mixed = u12.direct_sum(&uniform(2, 3)).unwrap();
        assert_eq!(mixed.n(), 5);
        assert_eq!(mixed.matroid_rank(), 3);
        assert_eq!(mixed.circuit_lists(), vec![vec![0, 1], vec![2, 3, 4]]);
        let big = uniform(1, 16);
        assert!(matches!(
            big.direct_sum(&big),
            Err(Error::GroundSetTooLarge { n: 32, .. })
        ));
    }
}
