//! The target machine: an M×N grid of hardware qubits with nearest-neighbor
//! CNOT connectivity, per-gate durations in discrete timeslots, and a
//! coherence window that bounds every schedule.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::circuit::GateKind;

/// A hardware grid location. Rows `x` run in `[1, M]`, columns `y` in `[1, N]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Coord {
    pub x: i64,
    pub y: i64,
}

impl Coord {
    pub fn new(x: i64, y: i64) -> Coord {
        Coord { x, y }
    }
}

impl fmt::Display for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// Manhattan distance between two grid locations.
pub fn l1_distance(a: Coord, b: Coord) -> i64 {
    (a.x - b.x).abs() + (a.y - b.y).abs()
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MachineError {
    #[error("no standard grid for {0} qubits (supported: 8, 16, 32, 64, 128, 256)")]
    UnsupportedSize(u32),
    #[error("CNOT operands mapped to the same hardware qubit")]
    ZeroDistance,
    #[error("invalid machine config: {0}")]
    BadConfig(String),
}

/// Gate durations in timeslots, one entry per [`GateKind`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GateDurations {
    slots: [i64; GateKind::COUNT],
}

impl Default for GateDurations {
    fn default() -> GateDurations {
        let mut slots = [0i64; GateKind::COUNT];
        slots[GateKind::Cnot.index()] = 8;
        slots[GateKind::Measure.index()] = 5;
        slots[GateKind::X.index()] = 2;
        slots[GateKind::Y.index()] = 2;
        slots[GateKind::H.index()] = 1;
        // Z, S, Sdg, T, Tdg are virtual: zero duration.
        slots[GateKind::Swap.index()] = 24;
        GateDurations { slots }
    }
}

impl GateDurations {
    pub fn get(&self, kind: GateKind) -> i64 {
        self.slots[kind.index()]
    }

    pub fn set(&mut self, kind: GateKind, slots: i64) -> Result<(), MachineError> {
        if slots < 0 {
            return Err(MachineError::BadConfig(format!(
                "duration for {kind} must be non-negative"
            )));
        }
        self.slots[kind.index()] = slots;
        Ok(())
    }
}

/// Duration of a CNOT between qubits at Manhattan distance `dist`: the
/// forward swaps, the hardware CNOT, and the restoring swaps.
pub fn cnot_duration(dist: i64, durations: &GateDurations) -> Result<i64, MachineError> {
    if dist < 1 {
        return Err(MachineError::ZeroDistance);
    }
    Ok(2 * (dist - 1) * durations.get(GateKind::Swap) + durations.get(GateKind::Cnot))
}

/// Which control orientations a hardware edge supports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeAllow {
    AToB,
    BToA,
    Both,
    None,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MachineGrid {
    rows: i64,
    cols: i64,
    coherence: i64,
    durations: GateDurations,
    /// Direction policy per normalized edge (smaller endpoint first).
    /// Edges absent from the map allow both orientations.
    directed_edges: BTreeMap<(Coord, Coord), EdgeAllow>,
}

impl MachineGrid {
    pub fn new(rows: i64, cols: i64, coherence: i64) -> Result<MachineGrid, MachineError> {
        if rows < 1 || cols < 1 {
            return Err(MachineError::BadConfig("grid must be at least 1x1".into()));
        }
        if coherence < 1 {
            return Err(MachineError::BadConfig(
                "coherence window must be at least 1 timeslot".into(),
            ));
        }
        Ok(MachineGrid {
            rows,
            cols,
            coherence,
            durations: GateDurations::default(),
            directed_edges: BTreeMap::new(),
        })
    }

    /// Standard machine configurations, dimensioned by qubit count with the
    /// coherence window scaled 2x per machine-size doubling.
    pub fn standard(qubits: u32) -> Result<MachineGrid, MachineError> {
        let (rows, cols, coherence) = match qubits {
            8 => (2, 4, 625),
            16 => (2, 8, 1250),
            32 => (4, 8, 2500),
            64 => (8, 8, 5000),
            128 => (8, 16, 10000),
            256 => (16, 16, 20000),
            other => return Err(MachineError::UnsupportedSize(other)),
        };
        MachineGrid::new(rows, cols, coherence)
    }

    pub fn rows(&self) -> i64 {
        self.rows
    }

    pub fn cols(&self) -> i64 {
        self.cols
    }

    pub fn num_qubits(&self) -> i64 {
        self.rows * self.cols
    }

    /// Coherence window T in timeslots.
    pub fn coherence(&self) -> i64 {
        self.coherence
    }

    pub fn durations(&self) -> &GateDurations {
        &self.durations
    }

    pub fn durations_mut(&mut self) -> &mut GateDurations {
        &mut self.durations
    }

    pub fn contains(&self, c: Coord) -> bool {
        c.x >= 1 && c.x <= self.rows && c.y >= 1 && c.y <= self.cols
    }

    /// Grid coordinates in row-major order.
    pub fn all_coords(&self) -> impl Iterator<Item = Coord> + '_ {
        (1..=self.rows).flat_map(move |x| (1..=self.cols).map(move |y| Coord::new(x, y)))
    }

    pub fn neighbors(&self, c: Coord) -> impl Iterator<Item = Coord> + '_ {
        [
            Coord::new(c.x - 1, c.y),
            Coord::new(c.x + 1, c.y),
            Coord::new(c.x, c.y - 1),
            Coord::new(c.x, c.y + 1),
        ]
        .into_iter()
        .filter(|&n| self.contains(n))
    }

    pub fn adjacent(&self, a: Coord, b: Coord) -> bool {
        self.contains(a) && self.contains(b) && l1_distance(a, b) == 1
    }

    /// Row-major hardware index used for output qubit naming.
    pub fn hw_index(&self, c: Coord) -> i64 {
        (c.x - 1) * self.cols + (c.y - 1)
    }

    pub fn is_directed(&self) -> bool {
        !self.directed_edges.is_empty()
    }

    pub fn set_edge_allow(&mut self, a: Coord, b: Coord, allow: EdgeAllow) -> Result<(), MachineError> {
        if !self.adjacent(a, b) {
            return Err(MachineError::BadConfig(format!(
                "directed edge {a}-{b} does not connect adjacent grid qubits"
            )));
        }
        let (key, allow) = if a <= b {
            ((a, b), allow)
        } else {
            let flipped = match allow {
                EdgeAllow::AToB => EdgeAllow::BToA,
                EdgeAllow::BToA => EdgeAllow::AToB,
                other => other,
            };
            ((b, a), flipped)
        };
        self.directed_edges.insert(key, allow);
        Ok(())
    }

    /// Whether a hardware CNOT with the given control orientation is allowed
    /// on the edge `control`-`target`. Edges without an explicit policy allow
    /// both orientations.
    pub fn allows_control(&self, control: Coord, target: Coord) -> bool {
        let (key, forward) = if control <= target {
            ((control, target), true)
        } else {
            ((target, control), false)
        };
        match self.directed_edges.get(&key) {
            None | Some(EdgeAllow::Both) => true,
            Some(EdgeAllow::None) => false,
            Some(EdgeAllow::AToB) => forward,
            Some(EdgeAllow::BToA) => !forward,
        }
    }

    pub fn from_config_str(json: &str) -> Result<MachineGrid, MachineError> {
        let config: MachineConfig =
            serde_json::from_str(json).map_err(|e| MachineError::BadConfig(e.to_string()))?;
        config.into_grid()
    }

    pub fn from_config_file(path: &Path) -> Result<MachineGrid, MachineError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| MachineError::BadConfig(format!("{}: {e}", path.display())))?;
        MachineGrid::from_config_str(&text)
    }

    /// Resolves `--machine` arguments: a standard preset by qubit count
    /// (e.g. `16`) or a path to a JSON config file.
    pub fn resolve(spec: &str) -> Result<MachineGrid, MachineError> {
        if let Ok(qubits) = spec.parse::<u32>() {
            return MachineGrid::standard(qubits);
        }
        MachineGrid::from_config_file(Path::new(spec))
    }
}

/// JSON machine description accepted by `--machine <file>`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MachineConfig {
    pub rows: i64,
    pub cols: i64,
    pub coherence_timeslots: i64,
    /// Partial overrides keyed by gate mnemonic (`cx`, `h`, `swap`, ...).
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub durations: BTreeMap<String, i64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub directed_edges: Vec<DirectedEdgeConfig>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DirectedEdgeConfig {
    pub a: [i64; 2],
    pub b: [i64; 2],
    pub allow: EdgeAllow,
}

impl MachineConfig {
    pub fn into_grid(self) -> Result<MachineGrid, MachineError> {
        let mut grid = MachineGrid::new(self.rows, self.cols, self.coherence_timeslots)?;
        for (name, slots) in &self.durations {
            let kind = GateKind::from_name(name)
                .ok_or_else(|| MachineError::BadConfig(format!("unknown gate `{name}`")))?;
            grid.durations_mut().set(kind, *slots)?;
        }
        for edge in &self.directed_edges {
            grid.set_edge_allow(
                Coord::new(edge.a[0], edge.a[1]),
                Coord::new(edge.b[0], edge.b[1]),
                edge.allow,
            )?;
        }
        Ok(grid)
    }
}
