//! Finite Coxeter groups of the small types needed here (A1 and products,
//! B2, D4): elements, conjugacy classes, exact character tables, parabolic
//! subgroups, relative Weyl groups, class fusion and Poincare data.
//!
//! Groups are immutable after construction and all queries are pure.

pub mod chartable;
pub mod group;
pub mod relative;

pub use chartable::{character_table, induced_character, inner_product, j_induction, CharTable};
pub use group::{
    coxeter_matrix_a1_product, coxeter_matrix_b2, coxeter_matrix_d4, CoxeterGroup, ElemId,
};
pub use relative::{fuse, relative_weyl, FClassFusion, RelativeWeylGroup};
