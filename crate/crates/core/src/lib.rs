//! Hoffman graphs: sums and their unique indecomposable decomposition,
//! canonical labeling, the family O and its closures, isomorph-free
//! enumeration of sums and their slim line graphs, and certification that
//! every connected slim line graph of a given order has a unique strict
//! cover.

pub mod canon;
pub mod cli;
pub mod enumerate;
pub mod error;
pub mod family;
pub mod graph;
pub mod io;
pub mod sum;
pub mod verify;

pub use canon::{
    automorphism_group, canonical_form, cover_equivalent, is_isomorphic, slim_fixing_automorphisms,
    AutomorphismGroup, CanonicalForm, Permutation,
};
pub use enumerate::{
    cover_from_parent, enumerate_sums, find_covers, find_covers_with_cap, slim_line_graphs, LineGraphFamily,
    LineGraphMember, SumFamily, SumMember,
};
pub use error::{Error, Result};
pub use family::{bar_closure, family_prefix, is_member_o, lower_bound, Catalog, FamilySpec};
pub use graph::{HoffmanGraph, Induced, SlimGraph, VertexId};
pub use sum::{
    compose_sum, decompose, is_indecomposable, restrict_sum, tilde, validate_sum, w_value, Decomposition,
    FatSlot, FatSlotAssignment, Restriction, Weight,
};
pub use verify::{
    check_unique_for_graph, search_nh, verify_order, AutMismatch, CounterexampleWitness, CoverUniqueness, NhSearch,
    OrderEvidence, Verdict, VerificationReport,
};
