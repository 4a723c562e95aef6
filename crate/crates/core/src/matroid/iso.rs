use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::set::ElementSet;

use super::Matroid;

pub const ISOMORPHISM_MAX_N: usize = 12;

/// Per-element invariant: how many circuits of each size contain the element.
fn degree_profile(m: &Matroid, e: usize) -> Vec<usize> {
    let mut prof = vec![0; m.n() + 1];
    for c in m.circuits().iter().filter(|c| c.contains(e)) {
        prof[c.len()] += 1;
    }
    prof
}

/// Backtracking search for a bijection carrying the circuits of `a` onto those of `b`.
pub fn are_isomorphic(a: &Matroid, b: &Matroid) -> Result<bool> {
    for m in [a, b] {
        if m.n() > ISOMORPHISM_MAX_N {
            return Err(Error::GroundSetTooLargeForIsomorphism {
                n: m.n(),
                max: ISOMORPHISM_MAX_N,
            });
        }
    }
    if a.n() != b.n() || a.circuits().len() != b.circuits().len() {
        return Ok(false);
    }
    let mut sizes_a: Vec<usize> = a.circuits().iter().map(|c| c.len()).collect();
    let mut sizes_b: Vec<usize> = b.circuits().iter().map(|c| c.len()).collect();
    sizes_a.sort_unstable();
    sizes_b.sort_unstable();
    if sizes_a != sizes_b {
        return Ok(false);
    }

    let n = a.n();
    let prof_a: Vec<Vec<usize>> = (0..n).map(|e| degree_profile(a, e)).collect();
    let prof_b: Vec<Vec<usize>> = (0..n).map(|e| degree_profile(b, e)).collect();
    let mut sorted_a = prof_a.clone();
    let mut sorted_b = prof_b.clone();
    sorted_a.sort();
    sorted_b.sort();
    if sorted_a != sorted_b {
        return Ok(false);
    }

    // Circuits of `a` grouped by their largest element: checked once that element is mapped.
    let mut closing: Vec<Vec<ElementSet>> = vec![Vec::new(); n];
    for &c in a.circuits() {
        if let Some(top) = c.iter().last() {
            closing[top].push(c);
        }
    }
    let target: HashSet<ElementSet> = b.circuits().iter().copied().collect();

    let mut search = Search {
        prof_a: &prof_a,
        prof_b: &prof_b,
        closing: &closing,
        target: &target,
        image: vec![usize::MAX; n],
        used: ElementSet::EMPTY,
    };
    Ok(search.extend(0))
}

struct Search<'a> {
    prof_a: &'a [Vec<usize>],
    prof_b: &'a [Vec<usize>],
    closing: &'a [Vec<ElementSet>],
    target: &'a HashSet<ElementSet>,
    image: Vec<usize>,
    used: ElementSet,
}

impl Search<'_> {
    fn extend(&mut self, e: usize) -> bool {
        if e == self.image.len() {
            return true;
        }
        for cand in 0..self.image.len() {
            if self.used.contains(cand) || self.prof_a[e] != self.prof_b[cand] {
                continue;
            }
            self.image[e] = cand;
            self.used.insert(cand);
            let consistent = self.closing[e].iter().all(|c| {
                let mapped: ElementSet = c.iter().map(|x| self.image[x]).collect();
                self.target.contains(&mapped)
            });
            if consistent && self.extend(e + 1) {
                return true;
            }
            self.used.remove(cand);
        }
        self.image[e] = usize::MAX;
        false
    }
}
