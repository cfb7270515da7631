//! Symbolic machinery for polynomial endomorphisms of integral Leavitt path
//! algebras: exact normal-form arithmetic, coding graphs, the splitting
//! algorithm, the left-synchronization criterion for the diagonal
//! automorphism question, and the asynchronous transducers computing the
//! induced path-space dynamics.

pub mod algebra;
pub mod coding;
pub mod corpus;
pub mod dot;
pub mod error;
pub mod graph;
pub mod json;
pub mod splitting;
pub mod sync;
pub mod transducer;
pub mod unitary;

pub use algebra::{AlgebraElement, Monomial};
pub use coding::{Classification, CodingEdge, CodingGraph, CodingPath, CodingVertex, EdgeLabel};
pub use error::{Error, Result};
pub use graph::{Graph, Path, SharedGraph, ValidationReport};
pub use splitting::{
    final_negative_edges, run_splitting_algorithm, run_splitting_algorithm_with, split_at,
    FinalNegativeEdge, SplitOutcome, TieBreak, TraceRound, DEFAULT_SPLIT_FUEL,
};
pub use sync::{
    diagonal_onto_oracle, diagonal_verdict, diagonal_verdict_with, even_degree_obstruction,
    is_left_synchronizing, summand_in_image, DiagonalVerdict, EvenDegreeReport, OntoOracle,
    PairGraph, SyncDecision, VerdictOutcome,
};
pub use transducer::{
    compose, output_transducer, phi_map, psi_finite_check, psi_machine,
    sliding_block_transducer, EventuallyPeriodicWord, PhiTable, PsiMachine, Transducer,
};
pub use unitary::PairSet;

#[cfg(test)]
mod thread_safety {
    // Everything is immutable after construction; the compiler backs the
    // share-and-send contract.
    fn assert_send_sync<T: Send + Sync>() {}

    #[test]
    fn core_types_are_send_and_sync() {
        assert_send_sync::<crate::Graph>();
        assert_send_sync::<crate::Path>();
        assert_send_sync::<crate::AlgebraElement>();
        assert_send_sync::<crate::PairSet>();
        assert_send_sync::<crate::CodingGraph>();
        assert_send_sync::<crate::DiagonalVerdict>();
        assert_send_sync::<crate::Transducer>();
        assert_send_sync::<crate::PsiMachine>();
        assert_send_sync::<crate::EventuallyPeriodicWord>();
    }
}
