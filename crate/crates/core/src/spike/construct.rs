use crate::error::{Error, Result};
use crate::matroid::{Matroid, ModularCutSpec};
use crate::set::{combinations, ElementSet, MAX_ELEMENTS};

use super::recognize::{is_t_echidna, is_t_spike, Side, SpikeVerdict};
use super::{ArmPartition, SpikeCertificate};

/// Largest ground set [`make_spike`] will build.
pub const MAX_GENERATED_ELEMENTS: usize = 20;

/// A single-element extension whose new element `tip` lies in `cl(X)` exactly when `X`
/// contains at least `t-1` spines.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TipExtension {
    pub matroid: Matroid,
    pub tip: usize,
}

/// Extends `m` by a tip over the `t`-echidna `arms`, using the modular cut of flats that
/// contain at least `t-1` spines, then re-checks the closure condition on every union of
/// `t-1` and of `t-2` spines.
pub fn tip_extension(m: &Matroid, arms: &ArmPartition, t: usize) -> Result<TipExtension> {
    let echidna = is_t_echidna(m, arms, t, Side::Primal)?;
    if !echidna.passed() {
        return Err(Error::NotAnEchidna(Box::new(echidna)));
    }
    let spines = arms.clone();
    let cut = ModularCutSpec::new(format!("flats containing >= {} spines", t - 1), move |f| {
        spines.arms_within(f) + 1 >= t
    });
    let plus = m.extend_by_modular_cut(&cut)?;
    let tip = m.n();

    let mut sizes = vec![t - 1];
    if t >= 2 {
        sizes.push(t - 2);
    }
    for k in sizes {
        for idx in combinations(arms.order(), k) {
            let x = arms.union_of(idx.iter().copied());
            let spans = plus.closure(x).contains(tip);
            if spans != (k + 1 >= t) {
                return Err(Error::VerificationFailed(format!(
                    "tip in cl({x}) is {spans} for a union of {k} spines"
                )));
            }
        }
    }
    Ok(TipExtension { matroid: plus, tip })
}

fn certify(m: &Matroid, arms: &ArmPartition, t: usize) -> Result<SpikeCertificate> {
    match is_t_spike(m, arms, t)? {
        SpikeVerdict::Certified(c) => Ok(c),
        SpikeVerdict::Rejected(r) => Err(Error::NotASpike(Box::new(r))),
    }
}

fn contract_tip(ext: &TipExtension) -> Result<Matroid> {
    Ok(ext
        .matroid
        .contract(ElementSet::singleton(ext.tip))?
        .matroid)
}

/// From a `t`-spike, a `(t-1)`-spike on the same arms: add a tip and contract it, dualise,
/// add a tip again and contract it, dualise back.
pub fn spike_down(
    m: &Matroid,
    arms: &ArmPartition,
    t: usize,
) -> Result<(Matroid, SpikeCertificate)> {
    if t < 2 {
        return Err(Error::PreconditionViolated(format!(
            "spike_down needs t >= 2, got {t}"
        )));
    }
    certify(m, arms, t)?;
    // arms: (t-1)-echidna and t-coechidna of the quotient
    let quotient = contract_tip(&tip_extension(m, arms, t)?)?;
    let n = quotient.dual();
    let lowered = contract_tip(&tip_extension(&n, arms, t)?)?.dual();
    match is_t_spike(&lowered, arms, t - 1)? {
        SpikeVerdict::Certified(c) => Ok((lowered, c)),
        SpikeVerdict::Rejected(r) => Err(Error::VerificationFailed(r.summary())),
    }
}

/// From a `t`-spike of order `r >= 2t+1`, a `(t+1)`-spike on the same arms: the
/// elongation of the truncation. The free extension inside the truncation blocks every
/// `2t`-element cocircuit; the elongation does the same for circuits in the dual.
pub fn spike_up(m: &Matroid, arms: &ArmPartition, t: usize) -> Result<(Matroid, SpikeCertificate)> {
    let cert = certify(m, arms, t)?;
    if cert.order < 2 * t + 1 {
        return Err(Error::OrderTooSmall {
            order: cert.order,
            required: 2 * t + 1,
        });
    }
    let raised = m.truncation()?.elongation()?;
    match is_t_spike(&raised, arms, t + 1)? {
        SpikeVerdict::Certified(c) => Ok((raised, c)),
        SpikeVerdict::Rejected(r) => Err(Error::VerificationFailed(r.summary())),
    }
}

/// A `t`-spike of order `r`: the direct sum of `r` copies of `U_{1,2}` raised `t-1` times
/// by [`spike_up`]. Arm `i` is `{2i, 2i+1}`.
pub fn make_spike(t: usize, r: usize) -> Result<SpikeCertificate> {
    if t == 0 {
        return Err(Error::InvalidParameters("t must be at least 1".into()));
    }
    if r + 1 < 2 * t {
        return Err(Error::OrderTooSmall {
            order: r,
            required: 2 * t - 1,
        });
    }
    if 2 * r > MAX_GENERATED_ELEMENTS.min(MAX_ELEMENTS) {
        return Err(Error::GroundSetTooLarge {
            n: 2 * r,
            max: MAX_GENERATED_ELEMENTS,
        });
    }
    let arms = ArmPartition::consecutive(r);
    let pair = ArmPartition::consecutive(1);
    let circuits = (0..r)
        .map(|i| pair.arm(0).bits() << (2 * i))
        .map(ElementSet::from_bits);
    let base = Matroid::from_sets(2 * r, circuits)?;
    let mut cert = certify(&base, &arms, 1)?;
    for k in 1..t {
        cert = spike_up(&cert.matroid, &arms, k)?.1;
    }
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::are_isomorphic;

    #[test]
    fn small_spikes() {
        let one = make_spike(1, 3).unwrap();
        assert_eq!(
            one.matroid.circuit_lists(),
            vec![vec![0, 1], vec![2, 3], vec![4, 5]]
        );
        let two = make_spike(2, 3).unwrap();
        assert_eq!(two.matroid.n(), 6);
        assert_eq!(two.matroid.matroid_rank(), 3);
        assert_eq!(two.verified_circuit_unions, 3);
        assert_eq!(two.verified_cocircuit_unions, 3);
    }

    #[test]
    fn order_limits() {
        assert!(matches!(
            make_spike(2, 2),
            Err(Error::OrderTooSmall {
                order: 2,
                required: 3
            })
        ));
        assert!(matches!(
            make_spike(1, 11),
            Err(Error::GroundSetTooLarge { .. })
        ));
        assert!(make_spike(0, 3).is_err());
    }

    #[test]
    fn spike_up_needs_order() {
        let s = make_spike(2, 4).unwrap();
        assert!(matches!(
            spike_up(&s.matroid, &s.arms, 2),
            Err(Error::OrderTooSmall {
                order: 4,
                required: 5
            })
        ));
    }

    #[test]
    fn tip_extension_on_two_spike() {
        let s = make_spike(2, 5).unwrap();
        let ext = tip_extension(&s.matroid, &s.arms, 2).unwrap();
        assert_eq!(ext.matroid.n(), 11);
        assert_eq!(ext.tip, 10);
        let a0 = s.arms.arm(0);
        let a01 = a0 | s.arms.arm(1);
        assert!(ext.matroid.closure(a0).contains(10));
        assert!(ext.matroid.closure(a01).contains(10));
        assert!(!ext.matroid.closure(ElementSet::singleton(0)).contains(10));
        assert!(!ext.matroid.closure(ElementSet::EMPTY).contains(10));
    }

    #[test]
    fn spike_down_to_parallel_pairs() {
        let s = make_spike(2, 5).unwrap();
        let (low, cert) = spike_down(&s.matroid, &s.arms, 2).unwrap();
        assert_eq!(cert.t, 1);
        let target = make_spike(1, 5).unwrap().matroid;
        assert!(are_isomorphic(&low, &target).unwrap());
        assert!(spike_down(
            &make_spike(1, 3).unwrap().matroid,
            &ArmPartition::consecutive(3),
            1
        )
        .is_err());
    }
}
