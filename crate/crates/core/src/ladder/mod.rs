//! Circular and Moebius ladders: shapes, switching classes, flows.

mod canon;
pub(crate) mod dp;
mod exceptional;
mod prover;
mod spec;
mod square;
mod tables;

pub use canon::{
    canonical_classes, ladder_canonical, ladder_min_negatives, switching_class_reps,
    CanonicalClass, LadderCanonical,
};
pub use dp::{dp_find_flow, dp_flow_number, dp_has_nzflow, MAX_DP_K};
pub use exceptional::{
    detect_exceptional, exceptional_flow, tiled_flow, ExceptionalKind, TiledFlow,
};
pub use prover::{constructive_5flow, ProofTrace, ProverOutcome, Step};
pub use spec::{ladder_automorphisms, LadderGroup, LadderKind, LadderSpec};
pub use square::{
    contract_square, extend_flow, extend_flow_with_frame, find_positive_square, ExtensionFrame,
    SquareRef,
};
pub use tables::{
    base_case, base_cases, cl4_exception, generate_base_cases, generate_cl4_exception, BaseCase,
    ExceptionCertificate, BASE_SHAPES,
};
