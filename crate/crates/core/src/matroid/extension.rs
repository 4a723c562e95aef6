//! Single-element extensions by modular cuts, and the quotients and lifts built from them.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::report::AuditReport;
use crate::set::{ElementSet, MAX_ELEMENTS};

use super::Matroid;

type FlatPredicate = dyn Fn(ElementSet) -> bool + Send + Sync;

/// A family of flats given by a membership predicate. Only the predicate's answers on
/// flats matter.
#[derive(Clone)]
pub struct ModularCutSpec {
    tag: String,
    predicate: Arc<FlatPredicate>,
}

impl fmt::Debug for ModularCutSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("ModularCutSpec").field(&self.tag).finish()
    }
}

impl ModularCutSpec {
    pub fn new(
        tag: impl Into<String>,
        predicate: impl Fn(ElementSet) -> bool + Send + Sync + 'static,
    ) -> Self {
        ModularCutSpec {
            tag: tag.into(),
            predicate: Arc::new(predicate),
        }
    }

    /// Flats containing `generator`.
    pub fn principal(generator: ElementSet) -> Self {
        Self::new(format!("principal cut of {generator}"), move |f| {
            generator.is_subset(f)
        })
    }

    /// Every flat.
    pub fn all_flats() -> Self {
        Self::new("all flats", |_| true)
    }

    /// The empty family; extending by it adds a coloop.
    pub fn empty() -> Self {
        Self::new("empty cut", |_| false)
    }

    pub fn tag(&self) -> &str {
        &self.tag
    }

    pub fn contains(&self, flat: ElementSet) -> bool {
        (self.predicate)(flat)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DerivedKind {
    FreeExtension,
    FreeCoextension,
    Truncation,
    Elongation,
}

impl Matroid {
    /// Checks that the selected flats are closed upwards and under intersection of
    /// modular pairs.
    pub fn is_modular_cut(&self, cut: &ModularCutSpec) -> Result<AuditReport> {
        let flats = self.flats()?;
        let (selected, unselected): (Vec<ElementSet>, Vec<ElementSet>) =
            flats.iter().partition(|&&f| cut.contains(f));
        let mut report = AuditReport::new(format!("modular cut ({})", cut.tag()));

        for &g in &unselected {
            if let Some(&f) = selected.iter().find(|f| f.is_subset(g)) {
                report.fail(
                    "upward-closed",
                    format!("flat {g} contains selected flat {f} but is not selected"),
                    [f, g],
                );
                return Ok(report);
            }
        }
        report.pass(
            "upward-closed",
            format!("{} of {} flats selected", selected.len(), flats.len()),
        );

        for (i, &a) in selected.iter().enumerate() {
            for &b in &selected[i + 1..] {
                let meet = a & b;
                let modular = self.rank(a) + self.rank(b) == self.rank(a | b) + self.rank(meet);
                if modular && !cut.contains(meet) {
                    report.fail(
                        "modular-pairs",
                        format!("modular pair {a}, {b} meets in unselected flat {meet}"),
                        [a, b, meet],
                    );
                    return Ok(report);
                }
            }
        }
        report.pass("modular-pairs", "every modular pair meets inside the cut");
        Ok(report)
    }

    /// The single-element extension by `cut`; the new element has index `n`.
    ///
    /// `r⁺(X ∪ e) = r(X)` when `cl(X)` is in the cut and `r(X) + 1` otherwise.
    pub fn extend_by_modular_cut(&self, cut: &ModularCutSpec) -> Result<Matroid> {
        if self.n + 1 > MAX_ELEMENTS {
            return Err(Error::GroundSetTooLarge {
                n: self.n + 1,
                max: MAX_ELEMENTS,
            });
        }
        let report = self.is_modular_cut(cut)?;
        if !report.passed() {
            return Err(Error::NotAModularCut(Box::new(report)));
        }
        let ground = self.ground();
        let size = 1usize << self.n;
        let mut spans_tip = vec![false; size];
        for x in ground.subsets() {
            spans_tip[x.bits() as usize] = cut.contains(self.closure(x));
        }
        let tip = self.n;
        let mut circuits = self.circuits.clone();
        // X ∪ e is a circuit iff X is independent, cl(X) is in the cut, and no cl(X - x) is.
        for x in ground.subsets() {
            if spans_tip[x.bits() as usize]
                && self.is_independent(x)
                && x.iter().all(|y| !spans_tip[x.without(y).bits() as usize])
            {
                circuits.push(x.with(tip));
            }
        }
        circuits.sort_unstable();
        Ok(Matroid::from_canonical(self.n + 1, circuits))
    }

    pub fn free_extension(&self) -> Result<Matroid> {
        self.extend_by_modular_cut(&ModularCutSpec::principal(self.ground()))
    }

    pub fn free_coextension(&self) -> Result<Matroid> {
        Ok(self.dual().free_extension()?.dual())
    }

    /// Free extension followed by contraction of the new element.
    pub fn truncation(&self) -> Result<Matroid> {
        if self.matroid_rank() == 0 {
            return Err(Error::RankZero);
        }
        let plus = self.free_extension()?;
        Ok(plus.contract(ElementSet::singleton(self.n))?.matroid)
    }

    /// Dual of the truncation of the dual.
    pub fn elongation(&self) -> Result<Matroid> {
        if self.matroid_rank() == self.n {
            return Err(Error::CorankZero);
        }
        Ok(self.dual().truncation()?.dual())
    }

    pub fn derived(&self, kind: DerivedKind) -> Result<Matroid> {
        match kind {
            DerivedKind::FreeExtension => self.free_extension(),
            DerivedKind::FreeCoextension => self.free_coextension(),
            DerivedKind::Truncation => self.truncation(),
            DerivedKind::Elongation => self.elongation(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::named::uniform;

    #[test]
    fn free_extension_of_uniform() {
        let m = uniform(2, 4).unwrap();
        assert_eq!(m.free_extension().unwrap(), uniform(2, 5).unwrap());
        let cut = ModularCutSpec::principal(m.ground());
        assert_eq!(
            m.extend_by_modular_cut(&cut).unwrap(),
            uniform(2, 5).unwrap()
        );
    }

    #[test]
    fn extension_restores_by_deletion() {
        let m = uniform(2, 4).unwrap();
        let plus = m
            .extend_by_modular_cut(&ModularCutSpec::all_flats())
            .unwrap();
        // every flat selected: the new element is a loop
        assert!(plus.is_circuit(ElementSet::singleton(4)));
        assert_eq!(plus.delete(ElementSet::singleton(4)).unwrap().matroid, m);
        let coloop = m.extend_by_modular_cut(&ModularCutSpec::empty()).unwrap();
        assert_eq!(coloop.matroid_rank(), 3);
        assert_eq!(coloop.delete(ElementSet::singleton(4)).unwrap().matroid, m);
    }

    #[test]
    fn non_upward_closed_family_rejected() {
        let m = uniform(2, 4).unwrap();
        let cut = ModularCutSpec::new("two points", |f| f.len() == 1 && f.bits() <= 2);
        let report = m.is_modular_cut(&cut).unwrap();
        assert!(!report.passed());
        assert_eq!(report.first_failure().unwrap().check, "upward-closed");
        assert!(matches!(
            m.extend_by_modular_cut(&cut),
            Err(Error::NotAModularCut(_))
        ));
    }

    #[test]
    fn modular_pair_violation_detected() {
        // Two points of U_{2,4} and everything above them: {0} and {1} form a modular
        // pair (1 + 1 = 2 + 0) whose meet, the empty flat, is not selected.
        let m = uniform(2, 4).unwrap();
        let cut = ModularCutSpec::new("points 0 and 1", |f| f.contains(0) || f.contains(1));
        let report = m.is_modular_cut(&cut).unwrap();
        let f = report.first_failure().unwrap();
        assert_eq!(f.check, "modular-pairs");
        assert_eq!(f.witness[2], Vec::<usize>::new());
    }

    #[test]
    fn truncation_and_elongation_of_uniform() {
        let m = uniform(2, 4).unwrap();
        assert_eq!(m.truncation().unwrap(), uniform(1, 4).unwrap());
        assert_eq!(m.elongation().unwrap(), uniform(3, 4).unwrap());
        assert!(matches!(
            uniform(0, 3).unwrap().truncation(),
            Err(Error::RankZero)
        ));
        assert!(matches!(
            uniform(3, 3).unwrap().elongation(),
            Err(Error::CorankZero)
        ));
        assert_eq!(
            m.derived(DerivedKind::FreeCoextension).unwrap(),
            uniform(3, 5).unwrap()
        );
    }
}
