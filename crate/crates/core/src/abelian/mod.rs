//! Finite abelian groups, their subgroups, cosets and quotients.

pub mod arith;
mod group;
mod quotient;
mod subgroup;

pub use arith::{lambda_of, tau_of};
pub use group::{decompositions_up_to, FiniteAbelianGroup, GroupElement, DEFAULT_ELEMENT_LIMIT};
pub use quotient::{cyclic_prime_power_separator, quotient, QuotientMap};
pub use subgroup::{
    enumerate_subgroups, intersect_subgroups, subgroup_generated, Coset, CosetWire, Subgroup,
};
