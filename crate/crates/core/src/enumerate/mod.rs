//! Combinatorial ground truth: ASMs, monotone triangles, middle matrices and
//! refined counts obtained by direct counting.

pub mod asm;
pub mod formulas;
pub mod partial;
pub mod tables;
pub mod triangle;

pub use asm::{enumerate_asms, Asm, AsmIter};
pub use formulas::{asm_top_row, asm_total};
pub use partial::{count_partial, generate_partial, PartialAsm, RefinementSpec};
pub use tables::{
    all_asms, partial_census, refined_table, CountTable, Family, ENUMERATION_HARD_MAX,
    ENUMERATION_MAX,
};
pub use triangle::{
    asm_to_mt, count_monotone_triangles, increasing_tuples, interleavings, mt_to_asm,
    MonotoneTriangle,
};
