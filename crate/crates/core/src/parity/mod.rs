//! Characteristic-2 group algebra of `(C_p)^n`, cube sets, and the covering
//! and AJT criteria built on them.

mod ajt;
mod algebra;
mod cube;

pub use ajt::{ajt_brute, ajt_cube, ajt_parity, rows_cover_nowhere_zero, two_family_cover_search, TwoFamilyCover};
pub use algebra::{cover_product_zero, ga_multiply, naive_uncovered, ElementaryGroup, F2GroupAlgebraElement};
pub use cube::{cube_set, parity_cover_check, parse_parity_bits, CombinatorialCube, CubeSet, CUBE_SET_LIMIT};
