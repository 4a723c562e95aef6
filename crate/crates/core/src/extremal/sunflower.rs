use crate::error::{Error, Result};
use crate::set::{ElementSet, MAX_ELEMENTS};

use super::bounds::sunflower_bound;

/// Distinct subsets of `{0, .., universe-1}`, all of the same size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetFamily {
    universe: usize,
    member_size: usize,
    members: Vec<ElementSet>,
}

impl SetFamily {
    /// Repeated members are dropped, keeping the first occurrence. An empty family has
    /// member size 0.
    pub fn new(universe: usize, members: impl IntoIterator<Item = ElementSet>) -> Result<Self> {
        if universe > MAX_ELEMENTS {
            return Err(Error::GroundSetTooLarge {
                n: universe,
                max: MAX_ELEMENTS,
            });
        }
        let mut out: Vec<ElementSet> = Vec::new();
        let mut size = None;
        for s in members {
            if !s.is_subset(ElementSet::full(universe)) {
                return Err(Error::ElementOutOfRange {
                    element: s.span() - 1,
                    n: universe,
                });
            }
            match size {
                None => size = Some(s.len()),
                Some(k) if k != s.len() => {
                    return Err(Error::InvalidParameters(format!(
                        "member {s} has {} elements, expected {k}",
                        s.len()
                    )))
                }
                _ => {}
            }
            if !out.contains(&s) {
                out.push(s);
            }
        }
        Ok(SetFamily {
            universe,
            member_size: size.unwrap_or(0),
            members: out,
        })
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn member_size(&self) -> usize {
        self.member_size
    }

    pub fn members(&self) -> &[ElementSet] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sunflower {
    pub core: ElementSet,
    pub petals: SetFamily,
}

/// Finds `petals` members whose pairwise intersections all equal one core `J` with
/// `|J| < s`.
///
/// Takes a maximal pairwise-disjoint subfamily; if it is large enough the core is empty.
/// Otherwise every member meets its union, so some element lies in many members: recurse
/// on those members with that element removed, trying elements by decreasing frequency.
/// Always succeeds when the family has at least `f(s, petals)` members.
pub fn sunflower_extract(family: &SetFamily, petals: usize) -> Result<Sunflower> {
    if petals == 0 {
        return Err(Error::InvalidParameters(
            "petal count must be positive".into(),
        ));
    }
    let s = family.member_size();
    if family.is_empty() || s == 0 {
        return Err(Error::Insufficient(format!(
            "family of {} members of size {s} has no sunflower",
            family.len()
        )));
    }
    match extract(family.members(), petals) {
        Some((core, chosen)) => Ok(Sunflower {
            core,
            petals: SetFamily::new(family.universe(), chosen)?,
        }),
        None => {
            let bound = sunflower_bound(s, petals)
                .map_or_else(|| "more than usize::MAX".into(), |b| b.to_string());
            Err(Error::Insufficient(format!(
                "no sunflower with {petals} petals among {} sets of size {s} (bound f = {bound})",
                family.len()
            )))
        }
    }
}

fn extract(members: &[ElementSet], petals: usize) -> Option<(ElementSet, Vec<ElementSet>)> {
    if members.len() < petals {
        return None;
    }
    let mut disjoint: Vec<ElementSet> = Vec::new();
    let mut used = ElementSet::EMPTY;
    for &m in members {
        if m.is_disjoint(used) {
            disjoint.push(m);
            used = used | m;
        }
    }
    if disjoint.len() >= petals {
        disjoint.truncate(petals);
        return Some((ElementSet::EMPTY, disjoint));
    }
    // Members are non-empty here: an empty member would have been disjoint from all.
    let mut by_count: Vec<(usize, usize)> = used
        .iter()
        .map(|e| (members.iter().filter(|m| m.contains(e)).count(), e))
        .collect();
    by_count.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    for (count, e) in by_count {
        if count < petals {
            break;
        }
        let shrunk: Vec<ElementSet> = members
            .iter()
            .filter(|m| m.contains(e))
            .map(|m| m.without(e))
            .collect();
        if shrunk.iter().any(|m| m.is_empty()) {
            // Size-one members: they are distinct singletons {e}, only one of them.
            continue;
        }
        if let Some((core, chosen)) = extract(&shrunk, petals) {
            return Some((
                core.with(e),
                chosen.into_iter().map(|c| c.with(e)).collect(),
            ));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(n: usize, sets: &[&[usize]]) -> SetFamily {
        SetFamily::new(n, sets.iter().map(|s| s.iter().collect::<ElementSet>())).unwrap()
    }

    #[test]
    fn star_of_pairs() {
        let sets: Vec<ElementSet> = (1..=12).map(|k| ElementSet::singleton(0).with(k)).collect();
        let f = SetFamily::new(13, sets).unwrap();
        assert_eq!(f.len(), 12);
        let sf = sunflower_extract(&f, 3).unwrap();
        assert_eq!(sf.core, ElementSet::singleton(0));
        assert_eq!(sf.petals.len(), 3);
    }

    #[test]
    fn disjoint_family() {
        let f = fam(6, &[&[0, 1], &[2, 3], &[4, 5]]);
        let sf = sunflower_extract(&f, 3).unwrap();
        assert_eq!(sf.core, ElementSet::EMPTY);
        assert_eq!(sf.petals.members(), f.members());
    }

    #[test]
    fn single_singleton() {
        let f = fam(1, &[&[0]]);
        let sf = sunflower_extract(&f, 1).unwrap();
        assert_eq!(sf.core, ElementSet::EMPTY);
        assert_eq!(sf.petals.members(), &[ElementSet::singleton(0)]);
    }

    #[test]
    fn insufficient_below_bound() {
        // triangle edges: any two meet in different points
        let f = fam(3, &[&[0, 1], &[1, 2], &[0, 2]]);
        assert!(matches!(
            sunflower_extract(&f, 3),
            Err(Error::Insufficient(_))
        ));
        assert!(sunflower_extract(&f, 0).is_err());
    }

    #[test]
    fn family_validation() {
        assert!(SetFamily::new(
            4,
            [ElementSet::from_bits(0b11), ElementSet::from_bits(0b111)]
        )
        .is_err());
        assert!(SetFamily::new(2, [ElementSet::from_bits(0b100)]).is_err());
        let f = SetFamily::new(4, [ElementSet::from_bits(3), ElementSet::from_bits(3)]).unwrap();
        assert_eq!(f.len(), 1);
    }
}
