//! Constraint encoding and satisfiability checking.

pub mod ast;
pub mod backend;
pub mod encode;

pub use ast::{ConstraintTag, Formula, Model, Problem, Term, VarId};
pub use backend::{BackendError, BackendOutcome, CheckStatus, SmtBackend, Z3Backend};
pub use encode::{encode, overlap_in_time, rect_overlap, EncodeError, EncodeOptions, Encoding, RoutingPolicy};
