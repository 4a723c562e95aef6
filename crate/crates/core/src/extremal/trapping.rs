use crate::error::{Error, Result};
use crate::matroid::Matroid;
use crate::set::ElementSet;
use crate::spike::has_property;

use super::sunflower::{sunflower_extract, SetFamily};

/// Finds a circuit inside `∪ C_i - J` for circuits `C_i` pairwise meeting in exactly `J`.
///
/// The family is sorted by mask and its first `2^k` members used, `2^k` the largest power
/// of two not exceeding its size; `|J| <= k` is required. Members are merged pairwise
/// up a binary tree; at level `j` the `j`-th smallest element of `J` is eliminated from
/// the two circuits carried up from below (smallest eliminating circuit by mask).
pub fn trapped_circuit(m: &Matroid, circuits: &SetFamily, core: ElementSet) -> Result<ElementSet> {
    if circuits.is_empty() {
        return Err(Error::PreconditionViolated("empty circuit family".into()));
    }
    for &c in circuits.members() {
        if !m.is_circuit(c) {
            return Err(Error::PreconditionViolated(format!("{c} is not a circuit")));
        }
    }
    let members = circuits.members();
    for (i, &a) in members.iter().enumerate() {
        for &b in &members[i + 1..] {
            if a & b != core {
                return Err(Error::PreconditionViolated(format!(
                    "{a} and {b} meet in {}, not {core}",
                    a & b
                )));
            }
        }
    }
    let k = members.len().ilog2() as usize;
    if core.len() > k {
        return Err(Error::PreconditionViolated(format!(
            "|J| = {} exceeds k = {k} for a family of {} circuits",
            core.len(),
            members.len()
        )));
    }
    let mut level: Vec<ElementSet> = {
        let mut sorted = members.to_vec();
        sorted.sort_unstable();
        sorted.truncate(1 << k);
        sorted
    };
    let union = level.iter().fold(ElementSet::EMPTY, |a, &b| a | b);
    let core_elems = core.to_vec();

    for j in 1..=k {
        let x = core_elems.get(j - 1).copied();
        level = level
            .chunks(2)
            .map(|pair| merge(m, pair[0], pair[1], x))
            .collect::<Result<_>>()?;
    }
    let found = level[0];
    if !m.is_circuit(found) || !found.is_subset(union) || !found.is_disjoint(core) {
        return Err(Error::VerificationFailed(format!(
            "trapped set {found} is not a circuit inside the union avoiding {core}"
        )));
    }
    Ok(found)
}

fn merge(m: &Matroid, a: ElementSet, b: ElementSet, x: Option<usize>) -> Result<ElementSet> {
    let Some(x) = x else { return Ok(a) };
    if !a.contains(x) {
        return Ok(a);
    }
    if !b.contains(x) {
        return Ok(b);
    }
    let target = (a | b).without(x);
    m.circuits()
        .iter()
        .copied()
        .find(|c| c.is_subset(target))
        .ok_or_else(|| {
            Error::PreconditionViolated(format!(
                "circuit elimination of {x} from {a} and {b} failed; input is not a matroid"
            ))
        })
}

/// `d` pairwise disjoint circuits of `m`.
///
/// Takes a sunflower of `2^(l-1) d` circuits of size `l`; with empty core its petals
/// already work, otherwise each block of `2^(l-1)` petals traps a circuit avoiding the
/// core. When no such sunflower exists (below the `g(l, d)` bound) a direct search over
/// all circuits, smallest first, is tried instead.
pub fn disjoint_circuits(m: &Matroid, l: usize, d: usize) -> Result<Vec<ElementSet>> {
    if l == 0 || d == 0 {
        return Err(Error::InvalidParameters("l and d must be positive".into()));
    }
    let sized = SetFamily::new(m.n(), m.circuits().iter().copied().filter(|c| c.len() == l))?;
    let block = 1usize.checked_shl(l as u32 - 1).unwrap_or(usize::MAX);
    if let Some(petals) = block.checked_mul(d) {
        if let Ok(flower) = sunflower_extract(&sized, petals) {
            let members = flower.petals.members();
            if flower.core.is_empty() {
                return Ok(members[..d].to_vec());
            }
            return members
                .chunks(block)
                .map(|chunk| {
                    let fam = SetFamily::new(m.n(), chunk.iter().copied())?;
                    trapped_circuit(m, &fam, flower.core)
                })
                .collect();
        }
    }
    let mut pool = m.circuits().to_vec();
    pool.sort_by_key(|c| (c.len(), c.bits()));
    let mut chosen = Vec::new();
    if pick_disjoint(&pool, 0, d, ElementSet::EMPTY, &mut chosen) {
        Ok(chosen)
    } else {
        Err(Error::Insufficient(format!(
            "no {d} pairwise disjoint circuits"
        )))
    }
}

fn pick_disjoint(
    pool: &[ElementSet],
    from: usize,
    d: usize,
    used: ElementSet,
    chosen: &mut Vec<ElementSet>,
) -> bool {
    if chosen.len() == d {
        return true;
    }
    for i in from..pool.len() {
        let c = pool[i];
        if c.is_disjoint(used) {
            chosen.push(c);
            if pick_disjoint(pool, i + 1, d, used | c, chosen) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

/// `d` pairwise disjoint `2t`-element cocircuits of a matroid with the `(t,2t)`-property.
///
/// Groups `t d` disjoint circuits into blocks of `t`; a `2t`-element cocircuit through one
/// element of each circuit in a block lies inside the block's union by orthogonality.
pub fn disjoint_cocircuits_2t(m: &Matroid, t: usize, d: usize) -> Result<Vec<ElementSet>> {
    if t == 0 || d == 0 {
        return Err(Error::InvalidParameters("t and d must be positive".into()));
    }
    let property = has_property(m, t, 2 * t, t, 2 * t)
        .map_err(|e| Error::PreconditionViolated(e.to_string()))?;
    if !property.passed() {
        return Err(Error::PreconditionViolated(property.summary()));
    }
    let circuits = disjoint_circuits(m, 2 * t, t * d)?;
    let cocircuits: Vec<ElementSet> = m
        .cocircuits()
        .into_iter()
        .filter(|c| c.len() == 2 * t)
        .collect();
    let mut out = Vec::with_capacity(d);
    for block in circuits.chunks(t) {
        let picks: ElementSet = block.iter().filter_map(|c| c.first()).collect();
        let union = block.iter().fold(ElementSet::EMPTY, |a, &b| a | b);
        let found = cocircuits
            .iter()
            .copied()
            .find(|c| picks.is_subset(*c))
            .ok_or_else(|| {
                Error::VerificationFailed(format!("no {}-cocircuit through {picks}", 2 * t))
            })?;
        if !found.is_subset(union) {
            return Err(Error::VerificationFailed(format!(
                "cocircuit {found} escapes {union}; orthogonality fails"
            )));
        }
        out.push(found);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::NamedMatroid;

    fn u(r: usize, n: usize) -> Matroid {
        NamedMatroid::Uniform { rank: r, size: n }.build().unwrap()
    }

    fn parallel_pairs(k: usize) -> Matroid {
        let u12 = u(1, 2);
        (1..k).fold(u12.clone(), |acc, _| acc.direct_sum(&u12).unwrap())
    }

    fn set(xs: &[usize]) -> ElementSet {
        xs.iter().collect()
    }

    #[test]
    fn trapped_in_u25() {
        let m = u(2, 5);
        let fam = SetFamily::new(5, [set(&[0, 1, 2]), set(&[0, 3, 4])]).unwrap();
        let c = trapped_circuit(&m, &fam, set(&[0])).unwrap();
        assert_eq!(c.len(), 3);
        assert!(c.is_subset(set(&[1, 2, 3, 4])));
        assert!(m.is_circuit(c));
    }

    #[test]
    fn trapped_single_member() {
        let m = u(2, 5);
        let fam = SetFamily::new(5, [set(&[1, 2, 4])]).unwrap();
        assert_eq!(
            trapped_circuit(&m, &fam, ElementSet::EMPTY).unwrap(),
            set(&[1, 2, 4])
        );
    }

    #[test]
    fn trapped_rejects_bad_pattern() {
        let m = u(2, 5);
        let fam = SetFamily::new(5, [set(&[0, 1, 2]), set(&[0, 3, 4]), set(&[1, 3, 4])]).unwrap();
        assert!(matches!(
            trapped_circuit(&m, &fam, set(&[0])),
            Err(Error::PreconditionViolated(_))
        ));
        let not_circuits = SetFamily::new(5, [set(&[0, 1])]).unwrap();
        assert!(trapped_circuit(&m, &not_circuits, ElementSet::EMPTY).is_err());
        // |J| = 2 but only 2 members, so k = 1
        let fam2 = SetFamily::new(5, [set(&[0, 1, 2]), set(&[0, 1, 3])]).unwrap();
        assert!(trapped_circuit(
            &u(3, 5),
            &SetFamily::new(5, [set(&[0, 1, 2, 3])]).unwrap(),
            ElementSet::EMPTY
        )
        .is_ok());
        assert!(trapped_circuit(&m, &fam2, set(&[0, 1])).is_err());
    }

    #[test]
    fn disjoint_circuit_examples() {
        let arms = disjoint_circuits(&parallel_pairs(4), 2, 4).unwrap();
        assert_eq!(
            arms,
            vec![set(&[0, 1]), set(&[2, 3]), set(&[4, 5]), set(&[6, 7])]
        );

        let m = u(2, 6);
        let two = disjoint_circuits(&m, 3, 2).unwrap();
        assert_eq!(two.len(), 2);
        assert!(two[0].is_disjoint(two[1]));
        assert!(two.iter().all(|&c| m.is_circuit(c)));

        assert!(matches!(
            disjoint_circuits(&u(2, 4), 3, 2),
            Err(Error::Insufficient(_))
        ));
    }

    #[test]
    fn disjoint_cocircuit_examples() {
        let m = parallel_pairs(4);
        let co = disjoint_cocircuits_2t(&m, 1, 2).unwrap();
        assert_eq!(co, vec![set(&[0, 1]), set(&[2, 3])]);
        assert!(matches!(
            disjoint_cocircuits_2t(&u(2, 4), 1, 1),
            Err(Error::PreconditionViolated(_))
        ));
    }
}
