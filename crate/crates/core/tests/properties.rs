use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use proptest::prelude::*;
use proptest::test_runner::RngSeed;

use spikelab::extremal::{
    disjoint_circuits, sunflower_bound, sunflower_extract, trapped_circuit, SetFamily,
};
use spikelab::io::{parse_document, Document};
use spikelab::matroid::ModularCutSpec;
use spikelab::set::combinations;
use spikelab::spike::{
    arm_union_lambda, classify_circuit, is_t_echidna, is_t_spike, make_spike, spike_down, spike_up,
    tip_extension, CircuitClass, Side,
};
use spikelab::{ArmPartition, ElementSet, Matroid, NamedMatroid, SpikeCertificate};

fn catalog() -> &'static [Matroid] {
    static CATALOG: OnceLock<Vec<Matroid>> = OnceLock::new();
    CATALOG.get_or_init(|| {
        let mut out = Vec::new();
        for n in 1..=8 {
            for r in 0..=n {
                out.push(NamedMatroid::Uniform { rank: r, size: n }.build().unwrap());
            }
        }
        for r in 3..=5 {
            out.push(NamedMatroid::Wheel(r).build().unwrap());
            out.push(NamedMatroid::Whirl(r).build().unwrap());
        }
        for (t, r) in [(1, 4), (2, 3), (2, 4), (2, 5)] {
            out.push(make_spike(t, r).unwrap().matroid);
        }
        out
    })
}

fn spike(t: usize, r: usize) -> SpikeCertificate {
    static CACHE: OnceLock<Mutex<HashMap<(usize, usize), SpikeCertificate>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(c) = cache.lock().unwrap().get(&(t, r)) {
        return c.clone();
    }
    let c = make_spike(t, r).unwrap();
    cache.lock().unwrap().insert((t, r), c.clone());
    c
}

/// A catalog matroid, optionally a minor of it, optionally dualised.
fn matroid() -> impl Strategy<Value = Matroid> {
    (
        0..catalog().len(),
        any::<u32>(),
        any::<u32>(),
        any::<bool>(),
    )
        .prop_map(|(i, d, c, dual)| {
            let base = &catalog()[i];
            let g = base.ground().bits();
            // delete and contract roughly a quarter of the elements each
            let del = ElementSet::from_bits(g & d & (d >> 7));
            let con = ElementSet::from_bits(g & c & (c >> 11)) - del;
            let m = base.minor(del, con).unwrap().matroid;
            if dual {
                m.dual()
            } else {
                m
            }
        })
}

/// Rank as the largest independent subset, by scanning every subset.
fn brute_rank(m: &Matroid, x: ElementSet) -> usize {
    x.subsets()
        .filter(|s| !m.circuits().iter().any(|c| c.is_subset(*s)))
        .map(|s| s.len())
        .max()
        .unwrap_or(0)
}

/// Fixed seed so every run explores the same cases.
fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        rng_seed: RngSeed::Fixed(0),
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

fn spike_params() -> impl Strategy<Value = (usize, usize)> {
    (1usize..=3).prop_flat_map(|t| ((Just(t)), (2 * t - 1).max(2)..=8))
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn canonical_form_is_order_independent(m in matroid(), seed in any::<u64>()) {
        let mut lists = m.circuit_lists();
        // deterministic shuffle of circuits and of elements within circuits
        let mut state = seed | 1;
        let mut next = || { state ^= state << 13; state ^= state >> 7; state ^= state << 17; state };
        for i in (1..lists.len()).rev() {
            let j = (next() % (i as u64 + 1)) as usize;
            lists.swap(i, j);
        }
        for l in &mut lists {
            l.reverse();
        }
        let again = Matroid::from_circuits(m.n(), &lists).unwrap();
        prop_assert_eq!(&again, &m);
        prop_assert_eq!(Document::matroid(again).to_json(), Document::matroid(m).to_json());
    }

    #[test]
    fn dual_is_an_involution(m in matroid()) {
        let d = m.dual();
        prop_assert_eq!(d.dual(), m.clone());
        prop_assert_eq!(m.matroid_rank() + d.matroid_rank(), m.n());
    }

    #[test]
    fn lambda_symmetric_and_formulas_agree(m in matroid()) {
        let d = m.dual();
        let e = m.ground();
        for x in e.subsets() {
            let lam = m.connectivity(x);
            prop_assert_eq!(lam, m.connectivity(e - x));
            prop_assert_eq!(lam, m.rank(x) + d.rank(x) - x.len());
            prop_assert_eq!(lam, d.connectivity(x));
        }
    }

    #[test]
    fn greedy_rank_matches_brute_force(m in matroid()) {
        for x in m.ground().subsets() {
            let g = m.greedy_basis(x);
            prop_assert!(g.is_subset(x) && m.is_independent(g));
            prop_assert_eq!(g.len(), brute_rank(&m, x));
            prop_assert_eq!(m.rank(x), g.len());
        }
    }

    #[test]
    fn principal_extension_restores_on_deletion(m in matroid(), pick in any::<u32>()) {
        prop_assume!(m.n() < 12);
        let flats = m.flats().unwrap();
        let gen = flats[pick as usize % flats.len()];
        let cut = ModularCutSpec::principal(gen);
        prop_assert!(m.is_modular_cut(&cut).unwrap().passed());
        let plus = m.extend_by_modular_cut(&cut).unwrap();
        prop_assert_eq!(plus.n(), m.n() + 1);
        let back = plus.delete(ElementSet::singleton(m.n())).unwrap().matroid;
        prop_assert_eq!(back, m.clone());
        // the new element is spanned by exactly the flats in the cut
        let e = m.n();
        for &f in flats.iter() {
            prop_assert_eq!(plus.closure(f).contains(e), gen.is_subset(f));
        }
    }

    #[test]
    fn truncation_and_elongation(m in matroid()) {
        prop_assume!(m.n() < 12);
        let r = m.matroid_rank();
        if r > 0 {
            let t = m.truncation().unwrap();
            prop_assert_eq!(t.matroid_rank(), r - 1);
            for &c in m.circuits().iter().filter(|c| c.len() <= r) {
                prop_assert!(t.is_circuit(c));
            }
        }
        let corank = m.n() - r;
        if corank > 0 {
            let l = m.elongation().unwrap();
            prop_assert_eq!(l.matroid_rank(), r + 1);
            let co = l.cocircuits();
            for c in m.cocircuits().into_iter().filter(|c| c.len() <= corank) {
                prop_assert!(co.contains(&c));
            }
        }
    }

    #[test]
    fn echidna_reports_match_across_duality(m in matroid(), seed in any::<u64>(), t in 1usize..=3) {
        let k = m.n() / 2;
        prop_assume!(k >= 1 && t <= k);
        let mut elems: Vec<usize> = (0..m.n()).collect();
        let mut s = seed;
        for i in (1..elems.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            elems.swap(i, (s >> 33) as usize % (i + 1));
        }
        let arms = ArmPartition::from_pairs((0..k).map(|i| [elems[2 * i], elems[2 * i + 1]])).unwrap();
        let dual_side = is_t_echidna(&m, &arms, t, Side::Dual).unwrap();
        let primal_of_dual = is_t_echidna(&m.dual(), &arms, t, Side::Primal).unwrap();
        prop_assert_eq!(dual_side, primal_of_dual);
    }

    #[test]
    fn json_round_trip(m in matroid(), named in any::<bool>()) {
        let mut doc = Document::matroid(m);
        if named {
            doc = doc.with_name("minor");
        }
        let text = doc.to_json();
        let back = parse_document(&text, 31).unwrap();
        prop_assert_eq!(back.to_json(), text);
        prop_assert_eq!(back, doc);
    }

    #[test]
    fn parser_never_panics(text in ".{0,200}") {
        let _ = parse_document(&text, 31);
    }

    #[test]
    fn parser_never_panics_on_near_json(n in 0usize..40, cs in proptest::collection::vec(proptest::collection::vec(0usize..40, 0..5), 0..6)) {
        let text = format!("{{\"n\":{n},\"circuits\":{cs:?}}}");
        if let Ok(doc) = parse_document(&text, 31) {
            prop_assert!(doc.matroid.n() == n);
        }
    }
}

proptest! {
    #![proptest_config(config(24))]

    #[test]
    fn spike_rank_and_classification((t, r) in spike_params()) {
        let cert = spike(t, r);
        let m = &cert.matroid;
        prop_assert_eq!(m.n(), 2 * r);
        prop_assert_eq!(m.matroid_rank(), r);
        prop_assert_eq!(m.dual().matroid_rank(), r);
        for &c in m.circuits() {
            match classify_circuit(&cert, c).unwrap() {
                CircuitClass::ArmUnion(j) => prop_assert_eq!(j.len(), t),
                CircuitClass::Broad { meet_count, contain_count } => {
                    prop_assert!(meet_count + t >= r + 2);
                    prop_assert!(contain_count < t);
                }
            }
        }
    }

    #[test]
    fn spike_lambda_profile((t, r) in spike_params()) {
        let cert = spike(t, r);
        for size in 1..=r / 2 {
            let want = if size < t { 2 * size } else { 2 * t - 2 };
            for j in combinations(r, size) {
                prop_assert_eq!(arm_union_lambda(&cert.matroid, &cert.arms, &j), want);
            }
        }
    }

    #[test]
    fn tip_then_contract_lowers_the_echidna((t, r) in spike_params()) {
        prop_assume!(t >= 2);
        let cert = spike(t, r);
        let ext = tip_extension(&cert.matroid, &cert.arms, t).unwrap();
        let q = ext.matroid.contract(ElementSet::singleton(ext.tip)).unwrap().matroid;
        prop_assert!(is_t_echidna(&q, &cert.arms, t - 1, Side::Primal).unwrap().passed());
        prop_assert!(is_t_echidna(&q, &cert.arms, t, Side::Dual).unwrap().passed());
    }

    #[test]
    fn spike_up_then_down((t, r) in spike_params()) {
        prop_assume!(r > 2 * t && t < 3);
        let cert = spike(t, r);
        let (up, up_cert) = spike_up(&cert.matroid, &cert.arms, t).unwrap();
        prop_assert_eq!(up_cert.t, t + 1);
        let (down, down_cert) = spike_down(&up, &cert.arms, t + 1).unwrap();
        prop_assert_eq!(down_cert.t, t);
        prop_assert_eq!(down_cert.order, r);
        prop_assert!(is_t_spike(&down, &cert.arms, t).unwrap().is_certified());
    }
}

fn family_above_bound() -> impl Strategy<Value = (SetFamily, usize)> {
    prop_oneof![
        Just((1usize, 3usize)),
        Just((2, 2)),
        Just((2, 3)),
        Just((3, 2)),
        Just((2, 4))
    ]
    .prop_flat_map(|(s, petals)| {
        let bound = sunflower_bound(s, petals).unwrap();
        let sets = proptest::collection::btree_set(
            proptest::sample::subsequence((0..16).collect::<Vec<usize>>(), s),
            bound..bound + 6,
        );
        (sets, Just(petals))
    })
    .prop_map(|(sets, petals)| {
        let fam = SetFamily::new(16, sets.into_iter().map(|v| v.iter().collect())).unwrap();
        (fam, petals)
    })
}

proptest! {
    #![proptest_config(config(128))]

    #[test]
    fn sunflowers_above_the_bound((fam, petals) in family_above_bound()) {
        let flower = sunflower_extract(&fam, petals).unwrap();
        let p = flower.petals.members();
        prop_assert_eq!(p.len(), petals);
        prop_assert!(flower.core.len() < fam.member_size());
        for (i, &a) in p.iter().enumerate() {
            prop_assert!(fam.members().contains(&a));
            for &b in &p[i + 1..] {
                prop_assert_eq!(a & b, flower.core);
            }
        }
    }

    #[test]
    fn trapped_circuits_verify(m in matroid(), pick in any::<usize>(), k in 0usize..3) {
        let mut sizes: Vec<usize> = m.circuits().iter().map(|c| c.len()).collect();
        sizes.sort_unstable();
        sizes.dedup();
        if sizes.is_empty() {
            return Ok(());
        }
        let l = sizes[pick % sizes.len()];
        let pool: Vec<ElementSet> = m.circuits().iter().copied().filter(|c| c.len() == l).collect();
        let fam = SetFamily::new(m.n(), pool).unwrap();
        if let Ok(flower) = sunflower_extract(&fam, 1 << k) {
            if flower.core.len() <= k {
                let c = trapped_circuit(&m, &flower.petals, flower.core).unwrap();
                let union = flower.petals.members().iter().fold(ElementSet::EMPTY, |a, &b| a | b);
                prop_assert!(m.is_circuit(c) && c.is_subset(union) && c.is_disjoint(flower.core));
            }
        }
    }

    #[test]
    fn disjoint_circuits_are_disjoint_circuits(m in matroid(), l in 1usize..5, d in 1usize..4) {
        if let Ok(found) = disjoint_circuits(&m, l, d) {
            prop_assert_eq!(found.len(), d);
            for (i, &a) in found.iter().enumerate() {
                prop_assert!(m.is_circuit(a));
                for &b in &found[i + 1..] {
                    prop_assert!(a.is_disjoint(b));
                }
            }
        }
    }
}
