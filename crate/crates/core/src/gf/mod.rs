//! Finite fields, linear algebra over them, and hyperplane coverings of
//! `GF(q)^n`.

mod affine_cover;
mod cover;
mod field;
mod hyperplane;
mod io;
pub mod linalg;
mod nowhere;

pub use affine_cover::{bases_to_affine_cover, AffineCoverInstance, RestrictedHyperplane};
pub use cover::{
    audit_hyperplanes, codim_ratio_check, default_hyperplane_budget, irredundant_affine_covers,
    min_hyperplane_cover, CodimCheck, HyperplaneAudit, HyperplaneCoverOutcome, HyperplaneCoverWire,
};
pub use field::Field;
pub use hyperplane::{all_affine_hyperplanes, all_hyperplanes, AffineHyperplane, AffineHyperplaneWire, Hyperplane};
pub use io::{format_matrix, matrix_to_json, parse_hyperplane_system, parse_matrix, parse_matrix_list};
pub use linalg::Matrix;
pub use nowhere::{nowhere_zero, nowhere_zero_combination, zero_one_representable};

pub(crate) use nowhere::gray_walk;
