//! Finite automata with translucent letters.
//!
//! In every state the automaton is blind to a chosen set of letters: the
//! head skips over them and reads (and deletes) the first letter it can
//! see. Returning machines jump back to the left end of the tape after each
//! deletion; non-returning machines keep going from where they are and only
//! consult their end-marker action when the head falls off the right end.
//! This crate provides the data model, a textual interchange format, two
//! independent execution engines, the standard closure constructions, and
//! some bounded analysis helpers.

pub mod analysis;
pub mod constructions;
pub mod corpus;
pub mod fast;
pub mod format;
pub mod model;
pub mod naive;

pub use analysis::{
    bounded_emptiness, enumerate_accepted, equivalent_up_to, parikh_sample, to_diagram,
    AnalysisError, EmptinessOutcome, EnumerationResult, Equivalence, ParikhVector,
    DEFAULT_BUDGET,
};
pub use constructions::{
    complement_deterministic, complete_reading, disjoint_shuffle, eliminate_end_loops,
    embed_nfawtl, normalize, unary_to_nfa, union, ClassicalNfa, ConstructionError,
};
pub use fast::{run_fast, FastRun, PositionIndex, RunStats};
pub use format::{parse_tla, serialize_nfa, serialize_tla, ParseError, SerializeError};
pub use model::{
    Automaton, EndAction, Kind, Letter, ModelError, StateId, ValidationReport, Verdict,
    Violation, Word,
};
pub use naive::{
    accepts_naive, decompose, default_fuel, render_trace, trace_deterministic, EngineError,
    Step, StuckReason, SweepRecord, Trace, TraceOutcome,
};
