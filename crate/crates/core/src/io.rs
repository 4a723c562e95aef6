//! JSON file formats.
//!
//! Matroid: `{"n": 4, "circuits": [[0,1,2], ...], "name": "..."}` with `name` optional.
//! Spike: the same plus `"arms": [[a,b], ...]` and `"t": k`, optionally a `"certificate"`
//! block. Writers emit compact canonical JSON (circuits and arms sorted, one trailing
//! newline); readers accept any order and validate everything.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matroid::Matroid;
use crate::set::MAX_ELEMENTS;
use crate::spike::{ArmPartition, CertificateSummary, SpikeCertificate};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Raw {
    n: usize,
    circuits: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    arms: Option<Vec<[usize; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    t: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    certificate: Option<CertificateSummary>,
}

/// A parsed matroid or spike file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Document {
    pub matroid: Matroid,
    pub name: Option<String>,
    /// Present together with `t` in spike files; stored in canonical order.
    pub arms: Option<ArmPartition>,
    pub t: Option<usize>,
    pub certificate: Option<CertificateSummary>,
}

impl Document {
    pub fn matroid(matroid: Matroid) -> Self {
        Document {
            matroid,
            name: None,
            arms: None,
            t: None,
            certificate: None,
        }
    }

    pub fn spike(cert: &SpikeCertificate) -> Self {
        Document {
            matroid: cert.matroid.clone(),
            name: None,
            arms: Some(cert.arms.canonical()),
            t: Some(cert.t),
            certificate: Some(cert.summary()),
        }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn is_spike(&self) -> bool {
        self.arms.is_some()
    }

    /// Arms and `t`, or a precondition error naming what is missing.
    pub fn spike_parts(&self) -> Result<(&ArmPartition, usize)> {
        match (&self.arms, self.t) {
            (Some(a), Some(t)) => Ok((a, t)),
            _ => Err(Error::PreconditionViolated(
                "input has no arms and t; a spike file is required".into(),
            )),
        }
    }

    /// Canonical JSON text, newline-terminated.
    pub fn to_json(&self) -> String {
        let raw = Raw {
            n: self.matroid.n(),
            circuits: self.matroid.circuit_lists(),
            name: self.name.clone(),
            arms: self.arms.as_ref().map(ArmPartition::canonical_pairs),
            t: self.t,
            certificate: self.certificate,
        };
        let mut s = serde_json::to_string(&raw).expect("plain data always serialises");
        s.push('\n');
        s
    }
}

/// Parses a matroid or spike file, refusing ground sets above `cap` (itself capped at 31).
pub fn parse_document(text: &str, cap: usize) -> Result<Document> {
    let raw: Raw = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let cap = cap.min(MAX_ELEMENTS);
    if raw.n > cap {
        return Err(Error::GroundSetTooLarge { n: raw.n, max: cap });
    }
    for c in &raw.circuits {
        let mut sorted = c.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Parse(format!("circuit {c:?} repeats an element")));
        }
    }
    let matroid = Matroid::from_circuits(raw.n, &raw.circuits)?;
    let arms = match (raw.arms, raw.t) {
        (None, None) => None,
        (Some(pairs), Some(t)) => {
            if t == 0 {
                return Err(Error::InvalidParameters("t must be at least 1".into()));
            }
            let arms = ArmPartition::from_pairs(pairs)?.canonical();
            arms.check_within(raw.n)?;
            if arms.union() != matroid.ground() {
                return Err(Error::PartitionDoesNotCoverGroundSet {
                    covered: arms.union(),
                    ground: matroid.ground(),
                });
            }
            Some(arms)
        }
        _ => {
            return Err(Error::Parse(
                "\"arms\" and \"t\" must appear together".into(),
            ))
        }
    };
    if raw.certificate.is_some() && arms.is_none() {
        return Err(Error::Parse("certificate without arms".into()));
    }
    Ok(Document {
        matroid,
        name: raw.name,
        arms,
        t: raw.t,
        certificate: raw.certificate,
    })
}

/// Parses a plain matroid file (spike fields are accepted and ignored).
pub fn parse_matroid(text: &str, cap: usize) -> Result<Matroid> {
    parse_document(text, cap).map(|d| d.matroid)
}

/// Parses a spike file; arms and `t` are required.
pub fn parse_spike(text: &str, cap: usize) -> Result<Document> {
    let doc = parse_document(text, cap)?;
    doc.spike_parts()?;
    Ok(doc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spike::make_spike;

    #[test]
    fn canonical_output() {
        let m = Matroid::from_circuits(4, [vec![3, 2, 1], vec![0, 1], vec![0, 1, 2]]).unwrap();
        let doc = Document::matroid(m).with_name("x");
        assert_eq!(
            doc.to_json(),
            "{\"n\":4,\"circuits\":[[0,1],[1,2,3]],\"name\":\"x\"}\n"
        );
    }

    #[test]
    fn round_trip_spike() {
        let cert = make_spike(2, 4).unwrap();
        let doc = Document::spike(&cert);
        let text = doc.to_json();
        let back = parse_spike(&text, 31).unwrap();
        assert_eq!(back, doc);
        assert_eq!(back.to_json(), text);
    }

    #[test]
    fn any_order_reads() {
        let a = parse_document(
            r#"{"t":1,"arms":[[3,2],[0,1]],"circuits":[[3,2],[1,0]],"n":4}"#,
            31,
        )
        .unwrap();
        assert_eq!(a.arms.unwrap().canonical_pairs(), vec![[0, 1], [2, 3]]);
        assert_eq!(a.matroid.circuit_lists(), vec![vec![0, 1], vec![2, 3]]);
    }

    #[test]
    fn rejects_bad_input() {
        for bad in [
            "",
            "{}",
            r#"{"n":3,"circuits":[[0,3]]}"#,
            r#"{"n":3,"circuits":[[]]}"#,
            r#"{"n":3,"circuits":[[0,0,1]]}"#,
            r#"{"n":40,"circuits":[]}"#,
            r#"{"n":4,"circuits":[],"arms":[[0,1],[2,3]]}"#,
            r#"{"n":4,"circuits":[],"arms":[[0,1]],"t":1}"#,
            r#"{"n":4,"circuits":[],"arms":[[0,1],[1,2]],"t":1}"#,
            r#"{"n":4,"circuits":[],"arms":[[0,1],[2,3]],"t":0}"#,
            r#"{"n":2,"circuits":[],"extra":1}"#,
        ] {
            assert!(parse_document(bad, 31).is_err(), "{bad}");
        }
        assert!(matches!(
            parse_matroid(r#"{"n":5,"circuits":[]}"#, 4),
            Err(Error::GroundSetTooLarge { n: 5, max: 4 })
        ));
        assert!(parse_spike(r#"{"n":2,"circuits":[]}"#, 31).is_err());
    }
}
