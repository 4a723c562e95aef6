use crate::error::{Error, Result};
use crate::set::{binomial, ElementSet, MAX_ELEMENTS};
use crate::spike::make_spike;

use super::Matroid;

/// Cap on the number of circuits a generated uniform matroid may have.
const MAX_GENERATED_CIRCUITS: u64 = 1 << 22;

/// Catalog constructors.
///
/// Wheels and whirls label the spoke from the hub to rim vertex `i` as element `2i` and the
/// rim edge from vertex `i` to vertex `i+1 (mod r)` as element `2i+1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NamedMatroid {
    Uniform { rank: usize, size: usize },
    Wheel(usize),
    Whirl(usize),
    FreeSpike { t: usize, order: usize },
}

impl NamedMatroid {
    pub fn build(self) -> Result<Matroid> {
        match self {
            NamedMatroid::Uniform { rank, size } => uniform(rank, size),
            NamedMatroid::Wheel(r) => wheel(r),
            NamedMatroid::Whirl(r) => whirl(r),
            NamedMatroid::FreeSpike { t, order } => Ok(make_spike(t, order)?.matroid),
        }
    }
}

/// `U_{rank,size}`: every `(rank+1)`-subset is a circuit.
pub fn uniform(rank: usize, size: usize) -> Result<Matroid> {
    if rank > size || size > MAX_ELEMENTS {
        return Err(Error::InvalidParameters(format!(
            "uniform matroid needs 0 <= t <= n <= {MAX_ELEMENTS}, got t={rank}, n={size}"
        )));
    }
    if binomial(size, rank + 1) > MAX_GENERATED_CIRCUITS {
        return Err(Error::InvalidParameters(format!(
            "U_{{{rank},{size}}} has too many circuits to list"
        )));
    }
    let circuits = ElementSet::full(size).subsets_of_size(rank + 1).collect();
    Ok(Matroid::from_canonical(size, circuits))
}

fn wheel_params(r: usize) -> Result<()> {
    if r < 3 || 2 * r > MAX_ELEMENTS {
        return Err(Error::InvalidParameters(format!(
            "wheel/whirl needs 3 <= r and 2r <= {MAX_ELEMENTS}, got r={r}"
        )));
    }
    Ok(())
}

fn spoke(i: usize) -> usize {
    2 * i
}

fn rim_edge(i: usize) -> usize {
    2 * i + 1
}

fn rim(r: usize) -> ElementSet {
    (0..r).map(rim_edge).collect()
}

/// Cycles of the wheel graph other than the rim: two spokes plus one of the two rim arcs
/// between their endpoints.
fn spoke_cycles(r: usize) -> Vec<ElementSet> {
    let mut cycles = Vec::with_capacity(r * (r - 1));
    for i in 0..r {
        for j in 0..r {
            if i == j {
                continue;
            }
            let mut c = ElementSet::singleton(spoke(i)).with(spoke(j));
            let mut k = i;
            while k != j {
                c.insert(rim_edge(k));
                k = (k + 1) % r;
            }
            cycles.push(c);
        }
    }
    cycles
}

/// Cycle matroid of the wheel with `r` spokes.
pub fn wheel(r: usize) -> Result<Matroid> {
    wheel_params(r)?;
    let mut circuits = spoke_cycles(r);
    circuits.push(rim(r));
    Matroid::from_sets(2 * r, circuits)
}

/// The rank-`r` whirl: the wheel with its rim circuit-hyperplane relaxed.
pub fn whirl(r: usize) -> Result<Matroid> {
    wheel_params(r)?;
    let rim = rim(r);
    let mut circuits = spoke_cycles(r);
    circuits.extend((0..r).map(|i| rim.with(spoke(i))));
    Matroid::from_sets(2 * r, circuits)
}
