use crate::error::{Error, Result};
use crate::report::AuditReport;
use crate::set::ElementSet;

use super::Matroid;

impl Matroid {
    /// Connectivity function `λ(X) = r(X) + r(E - X) - r(M)`.
    pub fn connectivity(&self, x: ElementSet) -> usize {
        self.rank(x) + self.rank(self.ground() - x) - self.matroid_rank()
    }

    /// Exhaustive check that there is no `j`-separation for any `j < k`.
    pub fn is_n_connected(&self, k: usize) -> Result<AuditReport> {
        check_n_connected(self, k)
    }
}

/// A set `X` is a `j`-separation for some `j < k` exactly when
/// `λ(X) + 1 <= min(|X|, |E - X|, k - 1)`. The witness is the separation of least `λ`,
/// smallest mask first.
pub fn check_n_connected(m: &Matroid, k: usize) -> Result<AuditReport> {
    if k < 2 {
        return Err(Error::InvalidParameters(format!(
            "connectivity order must be at least 2, got {k}"
        )));
    }
    m.ensure_scannable()?;
    let ground = m.ground();
    let mut best: Option<(usize, ElementSet)> = None;
    for x in ground.subsets() {
        let small = x.len().min(m.n() - x.len()).min(k - 1);
        let lambda = m.connectivity(x);
        if lambda < small && best.is_none_or(|(l, _)| lambda < l) {
            best = Some((lambda, x));
        }
    }
    let mut report = AuditReport::new(format!("{k}-connectivity"));
    match best {
        None => report.pass(
            "separations",
            format!(
                "no j-separation for j < {k} among {} subsets",
                1u64 << m.n()
            ),
        ),
        Some((lambda, x)) => report.fail(
            "separations",
            format!("{}-separation with λ = {lambda}", lambda + 1),
            [x, ground - x],
        ),
    }
    Ok(report)
}
