//! Compilation results: the program-to-hardware qubit mapping and the
//! per-gate schedule with its CNOT routing decisions.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::circuit::{Circuit, GateId, GateKind, Qubit};
use crate::geom::Reservation;
use crate::machine::Coord;

/// Injective assignment of program qubits to hardware grid locations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mapping {
    coords: Vec<Coord>,
}

impl Mapping {
    pub fn new(coords: Vec<Coord>) -> Mapping {
        Mapping { coords }
    }

    pub fn get(&self, q: Qubit) -> Coord {
        self.coords[q.index()]
    }

    pub fn num_qubits(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Coord] {
        &self.coords
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = self.coords.clone();
        seen.sort();
        seen.windows(2).all(|w| w[0] != w[1])
    }
}

/// Start time and duration of one gate, in timeslots.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GateTiming {
    pub start: i64,
    pub duration: i64,
}

impl GateTiming {
    pub fn finish(&self) -> i64 {
        self.start + self.duration
    }
}

/// Routing decision for one CNOT. `bend` is the 1-bend junction; `None`
/// means rectangle reservation with the concrete path chosen at emission.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CnotRoute {
    pub gate: GateId,
    pub bend: Option<Coord>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScheduleError {
    #[error("schedule is empty")]
    EmptySchedule,
}

/// A complete schedule: timings indexed by gate id, plus the routing
/// decisions for every CNOT.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Schedule {
    times: Vec<GateTiming>,
    routes: Vec<CnotRoute>,
}

impl Schedule {
    pub fn new(times: Vec<GateTiming>, routes: Vec<CnotRoute>) -> Schedule {
        Schedule { times, routes }
    }

    pub fn timing(&self, id: GateId) -> GateTiming {
        self.times[id.index()]
    }

    pub fn times(&self) -> &[GateTiming] {
        &self.times
    }

    pub fn routes(&self) -> &[CnotRoute] {
        &self.routes
    }

    pub fn route(&self, id: GateId) -> Option<&CnotRoute> {
        self.routes.iter().find(|r| r.gate == id)
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// Finish time of the last gate minus start time of the first.
    pub fn makespan(&self) -> Result<i64, ScheduleError> {
        if self.times.is_empty() {
            return Err(ScheduleError::EmptySchedule);
        }
        let max_finish = self.times.iter().map(GateTiming::finish).max().unwrap();
        let min_start = self.times.iter().map(|t| t.start).min().unwrap();
        Ok(max_finish - min_start)
    }

    /// Makespan of a possibly empty schedule, zero when there are no gates.
    pub fn makespan_or_zero(&self) -> i64 {
        self.makespan().unwrap_or(0)
    }

    /// The grid region reserved by a CNOT under this schedule's routing
    /// decisions.
    pub fn reservation(&self, circuit: &Circuit, mapping: &Mapping, id: GateId) -> Reservation {
        debug_assert_eq!(circuit.gate(id).kind, GateKind::Cnot);
        let gate = circuit.gate(id);
        let control = mapping.get(gate.control());
        let target = mapping.get(gate.target());
        let bend = self.route(id).and_then(|r| r.bend);
        Reservation::new(control, target, bend)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn makespan_examples() {
        let s = Schedule::new(vec![GateTiming { start: 1, duration: 8 }], vec![]);
        assert_eq!(s.makespan().unwrap(), 8);
        let s = Schedule::new(
            vec![
                GateTiming { start: 1, duration: 1 },
                GateTiming { start: 2, duration: 8 },
            ],
            vec![],
        );
        assert_eq!(s.makespan().unwrap(), 9);
        let s = Schedule::new(vec![GateTiming { start: 5, duration: 0 }], vec![]);
        assert_eq!(s.makespan().unwrap(), 0);
        let empty = Schedule::new(vec![], vec![]);
        assert_eq!(empty.makespan().unwrap_err(), ScheduleError::EmptySchedule);
    }

    #[test]
    fn injectivity_check() {
        let m = Mapping::new(vec![Coord::new(1, 1), Coord::new(1, 2)]);
        assert!(m.is_injective());
        let m = Mapping::new(vec![Coord::new(1, 1), Coord::new(1, 1)]);
        assert!(!m.is_injective());
    }
}
