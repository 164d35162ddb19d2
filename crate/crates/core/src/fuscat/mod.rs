//! Labels, closed-form fusion products, dimensions and Loewy data for the
//! simples `L_{r,s}` and their projective covers `P_{r,s}`.

mod fusion;
mod label;
mod structure;

pub use fusion::{tensor, tensor_decomp};
pub use label::{Decomp, Kind, ModuleLabel};
pub use structure::{
    cat_dim, composition_factors, decomp_dim, decomp_factors, loewy, monodromy_exponent_check,
    semisimplify, ss_tensor, LoewyData,
};
