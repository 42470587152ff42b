//! Constraint-based compilation of gate-level quantum circuits onto 2-D
//! grid machines: qubit mapping, gate scheduling and CNOT routing are
//! solved together by an SMT backend, with a greedy two-phase heuristic
//! for larger instances, an independent validator, a brute-force optimal
//! oracle, and a reference state-vector simulator.

pub mod circuit;
pub mod geom;
pub mod machine;
pub mod qasm;
pub mod schedule;
pub mod smt;

pub use circuit::{Circuit, CircuitError, ConcurrencyInfo, Gate, GateId, GateKind, Qubit};
pub use machine::{Coord, GateDurations, MachineGrid, MachineError};
pub use qasm::{parse_qasm, parse_qasm_extended, ParseError};
pub use schedule::{CnotRoute, GateTiming, Mapping, Schedule, ScheduleError};
pub use smt::RoutingPolicy;
