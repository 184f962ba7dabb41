//! State splitting and merging, symbolic splittings and expansions, strong
//! shift equivalence certificates and the completion of local automata.

mod builder;
mod expansion;
mod local;
mod split;
mod sse;
mod symbolic;

pub use expansion::{automaton_expansion, graph_expansion};
pub use local::{
    complete_local, is_complete, masking_step, standard_local_automaton, MaskingResult, EMPTY_WORD,
};
pub use split::{
    elementary_conjugacy_maps, graph_merge, graph_partition_split, graph_split, labeled_merge, labeled_split,
    partition_split, split_factorization, Morphism, Orientation, SplitSpec,
};
pub use sse::{
    graph_split_certificate, labeled_split_certificate, verify_sse, IntegerStep, SseCertificate,
    SseKind, SseVerdict, SymbolicStep,
};
pub use symbolic::{
    symbol_contraction, symbol_expansion, symbolic_in_split, symbolic_out_split, SymbolMap,
};
