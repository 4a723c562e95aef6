//! Sunflower extraction, exact bound functions, and disjoint-circuit machinery for
//! matroids with the `(t, 2t)`-property.

mod bounds;
mod small;
mod sunflower;
mod trapping;

pub use bounds::{sunflower_bound, BoundName, BoundTable};
pub use small::{
    profile_circuit_search, small_structure_audit, ProfileCircuit, SMALL_STRUCTURE_MAX_N,
};
pub use sunflower::{sunflower_extract, SetFamily, Sunflower};
pub use trapping::{disjoint_circuits, disjoint_cocircuits_2t, trapped_circuit};
