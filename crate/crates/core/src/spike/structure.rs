use crate::error::{Error, Result};
use crate::matroid::Matroid;
use crate::report::AuditReport;
use crate::set::ElementSet;

use super::recognize::{is_t_spike, SpikeVerdict};
use super::{ArmPartition, SpikeCertificate};

/// How a circuit of a t-spike sits relative to the arms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CircuitClass {
    /// Exactly the union of these `t` arms.
    ArmUnion(Vec<usize>),
    /// Meets `meet_count` arms and contains `contain_count` of them, with
    /// `meet_count >= r - (t - 2)` and `contain_count < t`.
    Broad {
        meet_count: usize,
        contain_count: usize,
    },
}

pub fn classify_circuit(cert: &SpikeCertificate, c: ElementSet) -> Result<CircuitClass> {
    if !cert.matroid.is_circuit(c) {
        return Err(Error::NotACircuit(c));
    }
    let arms = cert.arms.arms();
    let (r, t) = (cert.order, cert.t);
    let met: Vec<usize> = (0..r).filter(|&i| !arms[i].is_disjoint(c)).collect();
    let contained = arms.iter().filter(|a| a.is_subset(c)).count();
    if met.len() == t && contained == t {
        return Ok(CircuitClass::ArmUnion(met));
    }
    // meet >= r - (t - 2), written without underflow
    if met.len() + t >= r + 2 && contained < t {
        return Ok(CircuitClass::Broad {
            meet_count: met.len(),
            contain_count: contained,
        });
    }
    Err(Error::StructureViolation(format!(
        "circuit {c} meets {} arms and contains {contained}; order {r}, t = {t}",
        met.len()
    )))
}

/// `λ` of the union of the arms indexed by `j`.
pub fn arm_union_lambda(m: &Matroid, arms: &ArmPartition, j: &[usize]) -> usize {
    m.connectivity(arms.union_of(j.iter().copied()))
}

fn expected_lambda(size: usize, t: usize) -> usize {
    if size < t {
        2 * size
    } else {
        2 * t - 2
    }
}

/// Structural audit of a certified t-spike: order bound, rank and corank, the arm-union
/// connectivity profile, circuit classification, `(2t-1)`-connectivity when the order is
/// at least `4t-4`, and optionally the anemone property of a caller-supplied concatenation
/// of arms (`parts`, each a list of arm indices).
pub fn audit_spike(
    m: &Matroid,
    arms: &ArmPartition,
    t: usize,
    parts: Option<&[Vec<usize>]>,
) -> Result<AuditReport> {
    let cert = match is_t_spike(m, arms, t)? {
        SpikeVerdict::Certified(c) => c,
        SpikeVerdict::Rejected(r) => return Err(Error::NotASpike(Box::new(r))),
    };
    let r = cert.order;
    let mut report = AuditReport::new(format!("{t}-spike of order {r}"));

    if r + 1 >= 2 * t {
        report.pass("order-bound", format!("r = {r} >= 2t-1 = {}", 2 * t - 1));
    } else {
        report.fail("order-bound", format!("r = {r} < 2t-1 = {}", 2 * t - 1), []);
    }

    let (rank, corank) = (m.matroid_rank(), m.corank(m.ground()));
    if m.n() == 2 * r && rank == r && corank == r {
        report.pass("rank", format!("|E| = {}, r(M) = r*(M) = {r}", m.n()));
    } else {
        report.fail(
            "rank",
            format!(
                "|E| = {}, r(M) = {rank}, r*(M) = {corank}, order {r}",
                m.n()
            ),
            [],
        );
    }

    lambda_profile_finding(&mut report, m, arms, t);
    classification_finding(&mut report, &cert);

    if t < 2 || r + 4 < 4 * t {
        report.skip(
            "connectivity",
            format!("needs t >= 2 and r >= 4t-4 (t = {t}, r = {r})"),
        );
    } else {
        match m.is_n_connected(2 * t - 1) {
            Ok(conn) => {
                for mut f in conn.findings {
                    f.check = "connectivity".into();
                    f.detail = format!("{}-connected: {}", 2 * t - 1, f.detail);
                    report.findings.push(f);
                }
            }
            Err(Error::GroundSetTooLargeForExhaustiveScan { n, max }) => report.skip(
                "connectivity",
                format!("ground set of {n} exceeds scan limit {max}"),
            ),
            Err(e) => return Err(e),
        }
    }

    match parts {
        None => report.skip("anemone", "no concatenation supplied"),
        Some(parts) => anemone_finding(&mut report, m, arms, t, parts),
    }
    Ok(report)
}

fn lambda_profile_finding(report: &mut AuditReport, m: &Matroid, arms: &ArmPartition, t: usize) {
    let r = arms.order();
    let mut profile = vec![None; r / 2 + 1];
    let all = ElementSet::full(r);
    for j in all.subsets() {
        let size = j.len();
        if 2 * size > r {
            continue;
        }
        let lambda = m.connectivity(arms.union_of(j.iter()));
        let want = expected_lambda(size, t);
        if lambda != want {
            report.fail(
                "lambda-profile",
                format!("λ of arms {:?} is {lambda}, expected {want}", j.to_vec()),
                [arms.union_of(j.iter())],
            );
            return;
        }
        profile[size] = Some(lambda);
    }
    let shown: Vec<String> = profile
        .iter()
        .skip(1)
        .map(|v| v.map_or("-".into(), |l| l.to_string()))
        .collect();
    report.pass(
        "lambda-profile",
        format!(
            "λ by number of arms (1..={}): ({})",
            r / 2,
            shown.join(", ")
        ),
    );
}

fn classification_finding(report: &mut AuditReport, cert: &SpikeCertificate) {
    let (mut unions, mut broad) = (0, 0);
    for &c in cert.matroid.circuits() {
        match classify_circuit(cert, c) {
            Ok(CircuitClass::ArmUnion(_)) => unions += 1,
            Ok(CircuitClass::Broad { .. }) => broad += 1,
            Err(e) => {
                report.fail("circuit-classification", e.to_string(), [c]);
                return;
            }
        }
    }
    report.pass(
        "circuit-classification",
        format!("{unions} arm-union circuits, {broad} broad circuits"),
    );
}

fn anemone_finding(
    report: &mut AuditReport,
    m: &Matroid,
    arms: &ArmPartition,
    t: usize,
    parts: &[Vec<usize>],
) {
    let r = arms.order();
    let mut seen = vec![false; r];
    for part in parts {
        for &i in part {
            if i >= r || seen[i] {
                report.fail(
                    "anemone",
                    format!("parts do not partition the {r} arms (index {i})"),
                    [],
                );
                return;
            }
            seen[i] = true;
        }
        if 2 * part.len() + 2 < 2 * t {
            report.fail(
                "anemone",
                format!("part {part:?} has fewer than 2t-2 = {} elements", 2 * t - 2),
                [arms.union_of(part.iter().copied())],
            );
            return;
        }
    }
    if seen.iter().any(|s| !s) {
        report.fail("anemone", "parts do not cover every arm", []);
        return;
    }
    let unions: Vec<ElementSet> = parts
        .iter()
        .map(|p| arms.union_of(p.iter().copied()))
        .collect();
    let m_parts = unions.len();
    let mut checked = 0u64;
    for sel in ElementSet::full(m_parts).subsets() {
        if sel.is_empty() || sel.len() == m_parts {
            continue;
        }
        let x = sel.iter().fold(ElementSet::EMPTY, |acc, i| acc | unions[i]);
        let lambda = m.connectivity(x);
        if lambda != 2 * t - 2 {
            report.fail(
                "anemone",
                format!(
                    "union of parts {:?} has λ = {lambda}, expected {}",
                    sel.to_vec(),
                    2 * t - 2
                ),
                [x],
            );
            return;
        }
        checked += 1;
    }
    report.pass(
        "anemone",
        format!(
            "{checked} proper unions of {m_parts} parts all have λ = {}",
            2 * t - 2
        ),
    );
}
