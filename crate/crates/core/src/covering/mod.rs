//! Coset coverings: audits and exhaustive minimum-cover searches.

mod blocking;
mod invariants;
mod search;
mod system;

pub use blocking::{blocking_number, default_blocking_budget, BlockingOutcome};
pub use invariants::{
    default_budget, min_trivial_intersection_cover, phi, punctured_cover_construct,
    verify_coset_index_bound, verify_fedthm, CoverMode, FedthmCheck, IndexBoundCheck,
    InvariantOutcome, InvariantOutcomeWire, InvariantValue,
};
pub use search::{SearchBudget, SearchStatus};
pub use system::{audit, CosetSystem, CoverReport, CoverReportWire};

pub(crate) use search::{all_irredundant_covers, min_cover, CoverProblem};
