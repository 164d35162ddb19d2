//! Verma modules of the Virasoro algebra: PBW monomials, the action of
//! `L_n`, contravariant Gram matrices, singular vectors and the submodule
//! chains of the modules `V_{r,s}`.

mod action;
mod gram;
mod partition;

pub use action::{act_l, h_weight, CentralData, VermaElement, VermaModule};
pub use gram::{embedding_chain, gram_det, gram_kernel, gram_matrix, normalize, singular_vectors};
pub use partition::{partitions, Partition};
