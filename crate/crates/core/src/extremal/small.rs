use crate::error::{Error, Result};
use crate::matroid::Matroid;
use crate::report::AuditReport;
use crate::set::ElementSet;
use crate::spike::has_property;

/// Exhaustive scans in this module stop at this many elements.
pub const SMALL_STRUCTURE_MAX_N: usize = 16;

fn require_property(m: &Matroid, t: usize) -> Result<()> {
    if t == 0 {
        return Err(Error::InvalidParameters("t must be at least 1".into()));
    }
    let report = has_property(m, t, 2 * t, t, 2 * t)
        .map_err(|e| Error::PreconditionViolated(e.to_string()))?;
    if report.passed() {
        Ok(())
    } else {
        Err(Error::PreconditionViolated(report.summary()))
    }
}

/// Whether every `(t+1)`-subset of `x` is a circuit, i.e. `M|x` is `U_{t,|x|}` given that
/// smaller subsets are independent.
fn all_small_subsets_circuits(m: &Matroid, x: ElementSet, t: usize) -> Option<ElementSet> {
    x.subsets_of_size(t + 1).find(|&s| !m.is_circuit(s))
}

/// Low-rank structure forced by the `(t,2t)`-property: sets of rank below `t` are
/// independent, rank-`t` sets restrict to uniform matroids, and no `3t` elements restrict
/// to `U_{t,3t}`.
pub fn small_structure_audit(m: &Matroid, t: usize) -> Result<AuditReport> {
    if m.n() > SMALL_STRUCTURE_MAX_N {
        return Err(Error::GroundSetTooLargeForExhaustiveScan {
            n: m.n(),
            max: SMALL_STRUCTURE_MAX_N,
        });
    }
    require_property(m, t)?;
    Ok(structure_scan(m, t))
}

fn structure_scan(m: &Matroid, t: usize) -> AuditReport {
    let mut report = AuditReport::new(format!("rank-{t} structure"));

    let low = m
        .ground()
        .subsets()
        .find(|&x| m.rank(x) < t && !m.is_independent(x));
    match low {
        None => report.pass(
            "low-rank independent",
            format!("every set of rank < {t} is independent"),
        ),
        Some(x) => report.fail(
            "low-rank independent",
            format!("{x} has rank < {t} but is dependent"),
            [x],
        ),
    }

    let mut rank_t_sets = 0u64;
    let mut bad = None;
    for x in m.ground().subsets() {
        if m.rank(x) == t {
            rank_t_sets += 1;
            if let Some(s) = all_small_subsets_circuits(m, x, t) {
                bad = Some((x, s));
                break;
            }
        }
    }
    match bad {
        None => report.pass(
            "rank-t uniform",
            format!("all {rank_t_sets} rank-{t} sets restrict to uniform matroids"),
        ),
        Some((x, s)) => report.fail(
            "rank-t uniform",
            format!("{x} has rank {t} but its subset {s} is not a circuit"),
            [x, s],
        ),
    }

    let uniform_3t = m
        .ground()
        .subsets_of_size(3 * t)
        .find(|&x| m.rank(x) == t && all_small_subsets_circuits(m, x, t).is_none());
    match uniform_3t {
        None => report.pass(
            "no U(t,3t)",
            format!("no {}-set restricts to U_{{{t},{}}}", 3 * t, 3 * t),
        ),
        Some(x) => report.fail(
            "no U(t,3t)",
            format!("{x} restricts to U_{{{t},{}}}", 3 * t),
            [x],
        ),
    }
    report
}

/// A `2t`-element circuit through `y` with its intersection sizes against each of the
/// given cocircuits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProfileCircuit {
    pub circuit: ElementSet,
    pub profile: Vec<usize>,
    /// For a circuit meeting one cocircuit in three elements: the number of `w` outside
    /// the cocircuits with `(C - y) ∪ {w}` a circuit. Bounded by `3t - 1`.
    pub swaps: Option<usize>,
}

fn profile_matches(profile: &[usize]) -> bool {
    profile.iter().all(|&k| k == 2 || k == 3) && profile.iter().filter(|&&k| k == 3).count() <= 1
}

/// Searches `2t`-element circuits through `y` (ascending mask) for one meeting every given
/// cocircuit in two elements, or one of them in three and the rest in two.
pub fn profile_circuit_search(
    m: &Matroid,
    cocircuits: &[ElementSet],
    y: usize,
    t: usize,
) -> Result<ProfileCircuit> {
    if y >= m.n() {
        return Err(Error::ElementOutOfRange {
            element: y,
            n: m.n(),
        });
    }
    if cocircuits.len() + 1 != t.max(1) {
        return Err(Error::PreconditionViolated(format!(
            "expected t-1 = {} cocircuits, got {}",
            t.saturating_sub(1),
            cocircuits.len()
        )));
    }
    let all_co = m.cocircuits();
    let mut union = ElementSet::EMPTY;
    for &c in cocircuits {
        if !all_co.contains(&c) {
            return Err(Error::PreconditionViolated(format!(
                "{c} is not a cocircuit"
            )));
        }
        if !c.is_disjoint(union) {
            return Err(Error::PreconditionViolated(format!(
                "{c} overlaps another cocircuit"
            )));
        }
        union = union | c;
    }
    if union.contains(y) {
        return Err(Error::PreconditionViolated(format!(
            "{y} lies inside one of the cocircuits"
        )));
    }
    require_property(m, t)?;

    let outside = m.ground() - union;
    for &c in m.circuits() {
        if c.len() != 2 * t || !c.contains(y) {
            continue;
        }
        let profile: Vec<usize> = cocircuits.iter().map(|k| (c & *k).len()).collect();
        if !profile_matches(&profile) {
            continue;
        }
        let swaps = profile.contains(&3).then(|| {
            let rest = c.without(y);
            outside
                .iter()
                .filter(|&w| m.is_circuit(rest.with(w)))
                .count()
        });
        if let Some(w) = swaps {
            if w >= 3 * t {
                return Err(Error::StructureViolation(format!(
                    "{w} single-element swaps of {c} outside the cocircuits, expected < {}",
                    3 * t
                )));
            }
        }
        return Ok(ProfileCircuit {
            circuit: c,
            profile,
            swaps,
        });
    }
    Err(Error::NotFound(format!(
        "no {}-element circuit through {y} with the required profile",
        2 * t
    )))
}
