//! Conjugacy and flow-equivalence invariants: entropy, periodic-point
//! counts, Bowen-Franks groups.

mod bowen_franks;
mod entropy;
mod zeta;

pub use bowen_franks::{
    bowen_franks, determinant, franks_flow_equivalent, smith_normal_form, AbelianGroupInvariants,
    BowenFranks, FlowVerdict,
};
pub use entropy::{entropy, entropy_of, spectral_radius};
pub use zeta::{periodic_counts, periodic_counts_graph, periodic_counts_of};
