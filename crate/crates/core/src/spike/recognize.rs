use crate::error::{Error, Result};
use crate::matroid::Matroid;
use crate::report::AuditReport;
use crate::set::{combinations, ElementSet};

use super::{ArmPartition, SpikeCertificate};

/// Largest ground set [`find_spike_partition`] will search.
pub const MAX_SEARCH_ELEMENTS: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// Unions of `t` arms are circuits.
    Primal,
    /// Unions of `t` arms are cocircuits.
    Dual,
}

#[derive(Clone, Debug)]
pub enum SpikeVerdict {
    Certified(SpikeCertificate),
    Rejected(AuditReport),
}

impl SpikeVerdict {
    pub fn certificate(self) -> Option<SpikeCertificate> {
        match self {
            SpikeVerdict::Certified(c) => Some(c),
            SpikeVerdict::Rejected(_) => None,
        }
    }

    pub fn is_certified(&self) -> bool {
        matches!(self, SpikeVerdict::Certified(_))
    }
}

/// First `t`-subset of `{0, .., n-1}` (lexicographic) not inside any member of `sets`.
fn first_uncovered(sets: &[ElementSet], n: usize, t: usize) -> Option<ElementSet> {
    combinations(n, t)
        .map(|c| c.iter().collect::<ElementSet>())
        .find(|x| !sets.iter().any(|s| x.is_subset(*s)))
}

/// Every `t1`-set lies in an `l1`-element circuit and every `t2`-set lies in an
/// `l2`-element cocircuit.
pub fn has_property(
    m: &Matroid,
    t1: usize,
    l1: usize,
    t2: usize,
    l2: usize,
) -> Result<AuditReport> {
    if t1 > l1 || t2 > l2 || t1 > m.n() || t2 > m.n() {
        return Err(Error::InvalidParameters(format!(
            "({t1},{l1},{t2},{l2})-property needs t1 <= l1, t2 <= l2, t1, t2 <= n = {}",
            m.n()
        )));
    }
    let mut report = AuditReport::new(format!("({t1},{l1},{t2},{l2})-property"));
    let sides = [
        ("circuit side", t1, l1, m.circuits().to_vec()),
        ("cocircuit side", t2, l2, m.cocircuits()),
    ];
    for (label, t, l, family) in sides {
        let sized: Vec<ElementSet> = family.into_iter().filter(|c| c.len() == l).collect();
        match first_uncovered(&sized, m.n(), t) {
            None => report.pass(
                label,
                format!(
                    "every {t}-set lies in one of {} {l}-element members",
                    sized.len()
                ),
            ),
            Some(x) => report.fail(
                label,
                format!("{t}-set {x} lies in no {l}-element member"),
                [x],
            ),
        }
    }
    Ok(report)
}

fn check_echidna_params(m: &Matroid, arms: &ArmPartition, t: usize) -> Result<()> {
    arms.check_within(m.n())?;
    if t == 0 {
        return Err(Error::InvalidParameters("t must be at least 1".into()));
    }
    if t > arms.order() {
        return Err(Error::InvalidParameters(format!(
            "t = {t} exceeds the order {} of the partition",
            arms.order()
        )));
    }
    Ok(())
}

/// Checks every union of `t` arms against the circuits of `m`. Returns the number checked
/// and, on failure, the first offending arm-index set.
fn scan_unions(m: &Matroid, arms: &ArmPartition, t: usize) -> (u64, Option<Vec<usize>>) {
    let mut verified = 0;
    for idx in combinations(arms.order(), t) {
        if !m.is_circuit(arms.union_of(idx.iter().copied())) {
            return (verified, Some(idx));
        }
        verified += 1;
    }
    (verified, None)
}

fn echidna_report(m: &Matroid, arms: &ArmPartition, t: usize) -> (AuditReport, u64) {
    let mut report = AuditReport::new(format!("{t}-echidna of order {}", arms.order()));
    let (verified, failure) = scan_unions(m, arms, t);
    match failure {
        None => report.pass(
            "arm unions",
            format!("all {verified} unions of {t} arms are circuits"),
        ),
        Some(idx) => {
            let u = arms.union_of(idx.iter().copied());
            let why = if m.is_independent(u) {
                "independent"
            } else {
                "dependent but not a circuit"
            };
            report.fail("arm unions", format!("union of arms {idx:?} is {why}"), [u]);
        }
    }
    (report, verified)
}

/// Tests whether `arms` is a `t`-echidna (`Primal`) or `t`-coechidna (`Dual`) of `m`.
/// The report depends only on the matroid actually tested, so the dual check on `m`
/// equals the primal check on `m.dual()`.
pub fn is_t_echidna(m: &Matroid, arms: &ArmPartition, t: usize, side: Side) -> Result<AuditReport> {
    check_echidna_params(m, arms, t)?;
    Ok(match side {
        Side::Primal => echidna_report(m, arms, t).0,
        Side::Dual => echidna_report(&m.dual(), arms, t).0,
    })
}

pub fn is_t_spike(m: &Matroid, arms: &ArmPartition, t: usize) -> Result<SpikeVerdict> {
    arms.check_within(m.n())?;
    if t == 0 {
        return Err(Error::InvalidParameters("t must be at least 1".into()));
    }
    if arms.union() != m.ground() {
        return Err(Error::PartitionDoesNotCoverGroundSet {
            covered: arms.union(),
            ground: m.ground(),
        });
    }
    let order = arms.order();
    if order < t {
        let mut report = AuditReport::new(format!("{t}-spike"));
        report.fail("order", format!("order {order} is below t = {t}"), []);
        return Ok(SpikeVerdict::Rejected(report));
    }
    let (primal, verified_circuit_unions) = echidna_report(m, arms, t);
    let (dual, verified_cocircuit_unions) = echidna_report(&m.dual(), arms, t);
    if primal.passed() && dual.passed() {
        return Ok(SpikeVerdict::Certified(SpikeCertificate {
            matroid: m.clone(),
            arms: arms.clone(),
            t,
            order,
            verified_circuit_unions,
            verified_cocircuit_unions,
        }));
    }
    let mut report = AuditReport::new(format!("{t}-spike of order {order}"));
    for (label, side) in [("echidna", primal), ("coechidna", dual)] {
        for mut f in side.findings {
            f.check = format!("{label}: {}", f.check);
            report.findings.push(f);
        }
    }
    Ok(SpikeVerdict::Rejected(report))
}

/// Lexicographically first pair partition of `E(M)` that makes `m` a `t`-spike: the
/// smallest unpaired element is matched with each candidate partner in ascending order.
pub fn find_spike_partition(m: &Matroid, t: usize) -> Result<Option<ArmPartition>> {
    if t == 0 {
        return Err(Error::InvalidParameters("t must be at least 1".into()));
    }
    if m.n() % 2 == 1 {
        return Err(Error::OddGroundSet(m.n()));
    }
    if m.n() > MAX_SEARCH_ELEMENTS {
        return Err(Error::GroundSetTooLargeForSearch {
            n: m.n(),
            max: MAX_SEARCH_ELEMENTS,
        });
    }
    if m.n() / 2 < t {
        return Ok(None);
    }
    let dual = m.dual();
    let mut search = PartitionSearch {
        primal: m,
        dual: &dual,
        t,
        arms: Vec::new(),
    };
    if !search.extend(m.ground()) {
        return Ok(None);
    }
    let arms = ArmPartition::new(search.arms)?;
    match is_t_spike(m, &arms, t)? {
        SpikeVerdict::Certified(_) => Ok(Some(arms)),
        SpikeVerdict::Rejected(r) => Err(Error::VerificationFailed(format!(
            "partition search produced a non-spike partition: {}",
            r.summary()
        ))),
    }
}

struct PartitionSearch<'a> {
    primal: &'a Matroid,
    dual: &'a Matroid,
    t: usize,
    arms: Vec<ElementSet>,
}

impl PartitionSearch<'_> {
    /// The newest arm is consistent with both echidna conditions: fewer than `t` arms
    /// span an independent, coindependent set; exactly `t` arms form a circuit and a
    /// cocircuit.
    fn newest_arm_ok(&self) -> bool {
        let k = self.arms.len();
        let newest = self.arms[k - 1];
        if k < self.t {
            let u = self.arms.iter().fold(ElementSet::EMPTY, |a, &b| a | b);
            return self.primal.is_independent(u) && self.dual.is_independent(u);
        }
        combinations(k - 1, self.t - 1).all(|idx| {
            let u = idx.iter().fold(newest, |acc, &i| acc | self.arms[i]);
            self.primal.is_circuit(u) && self.dual.is_circuit(u)
        })
    }

    fn extend(&mut self, remaining: ElementSet) -> bool {
        let Some(first) = remaining.first() else {
            return true;
        };
        for partner in remaining.without(first) {
            self.arms.push(ElementSet::singleton(first).with(partner));
            if self.newest_arm_ok() && self.extend(remaining.without(first).without(partner)) {
                return true;
            }
            self.arms.pop();
        }
        false
    }
}

/// Grows a `t`-echidna of a matroid with the `(t,2t)`-property into a spike partition of
/// the whole ground set. Each step takes the smallest uncovered `z` and the smallest `z'`
/// for which `{z, z'}` together with the first `t-1` spines is a circuit.
pub fn extend_echidna(m: &Matroid, partial: &ArmPartition, t: usize) -> Result<ArmPartition> {
    check_echidna_params(m, partial, t).map_err(|e| Error::PreconditionViolated(e.to_string()))?;
    let property = has_property(m, t, 2 * t, t, 2 * t)?;
    if !property.passed() {
        return Err(Error::PreconditionViolated(format!(
            "({t},{})-property: {}",
            2 * t,
            property.summary()
        )));
    }
    let echidna = is_t_echidna(m, partial, t, Side::Primal)?;
    if !echidna.passed() {
        return Err(Error::PreconditionViolated(format!(
            "partial partition is not a {t}-echidna: {}",
            echidna.summary()
        )));
    }
    if partial.order() < 4 * t - 3 {
        return Err(Error::PreconditionViolated(format!(
            "order {} is below 4t-3 = {}",
            partial.order(),
            4 * t - 3
        )));
    }

    let mut arms = partial.clone();
    let base = arms.union_of(0..t - 1);
    loop {
        let covered = arms.union();
        let Some(z) = (m.ground() - covered).first() else {
            break;
        };
        let partner = (m.ground() - base)
            .without(z)
            .iter()
            .find(|&w| m.is_circuit(base.with(z).with(w)));
        let Some(w) = partner else {
            return Err(Error::ExtensionFailed(format!(
                "no {}-element circuit through {z} and the first {} spines",
                2 * t,
                t - 1
            )));
        };
        if covered.contains(w) {
            return Err(Error::ExtensionFailed(format!(
                "partner {w} of {z} already lies on a spine"
            )));
        }
        arms.push(ElementSet::singleton(z).with(w))?;
    }

    match is_t_spike(m, &arms, t)? {
        SpikeVerdict::Certified(_) => Ok(arms),
        SpikeVerdict::Rejected(r) => Err(Error::ExtensionFailed(r.summary())),
    }
}
