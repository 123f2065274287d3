//! Lambda-S: simple types with the `S` modality, type-directed beta, and
//! computational-basis measurement.

mod eval;
mod types;
mod typing;

pub use eval::{
    measure_distribution, realizes, realizes_with, run, run_with, typed_step, MeasureError, OutcomeDistribution,
    Realizability, RunError,
};
pub use types::{join, normalize_type, subtype, TypeExpr};
pub use typing::{occurrences, typecheck, TypeError, TypingContext};
