//! Gate-level circuit representation: the gate list, the dependency DAG built
//! by last-use chaining, and the transitive-closure concurrency information
//! that drives routing-constraint pruning.

use std::fmt;

use thiserror::Error;

/// The gate set handled by the compiler. `Swap` is produced during code
/// generation only; it never appears in parsed input circuits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GateKind {
    H,
    X,
    Y,
    Z,
    S,
    Sdg,
    T,
    Tdg,
    Cnot,
    Measure,
    Swap,
}

impl GateKind {
    pub const COUNT: usize = 11;

    pub const ALL: [GateKind; Self::COUNT] = [
        GateKind::H,
        GateKind::X,
        GateKind::Y,
        GateKind::Z,
        GateKind::S,
        GateKind::Sdg,
        GateKind::T,
        GateKind::Tdg,
        GateKind::Cnot,
        GateKind::Measure,
        GateKind::Swap,
    ];

    pub fn index(self) -> usize {
        Self::ALL.iter().position(|&k| k == self).expect("kind in ALL")
    }

    /// Zero-duration gates that hardware absorbs into later operations.
    pub fn is_virtual(self) -> bool {
        matches!(
            self,
            GateKind::Z | GateKind::S | GateKind::Sdg | GateKind::T | GateKind::Tdg
        )
    }

    pub fn is_two_qubit(self) -> bool {
        matches!(self, GateKind::Cnot | GateKind::Swap)
    }

    /// Lowercase mnemonic used in OpenQASM output and config files.
    pub fn name(self) -> &'static str {
        match self {
            GateKind::H => "h",
            GateKind::X => "x",
            GateKind::Y => "y",
            GateKind::Z => "z",
            GateKind::S => "s",
            GateKind::Sdg => "sdg",
            GateKind::T => "t",
            GateKind::Tdg => "tdg",
            GateKind::Cnot => "cx",
            GateKind::Measure => "measure",
            GateKind::Swap => "swap",
        }
    }

    pub fn from_name(name: &str) -> Option<GateKind> {
        Self::ALL.iter().copied().find(|k| k.name() == name)
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A program qubit, 0-based as in OpenQASM.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Qubit(pub u32);

impl Qubit {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for Qubit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q{}", self.0)
    }
}

/// A gate id, 1-based and dense within its circuit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GateId(pub u32);

impl GateId {
    /// Position of this gate in the circuit's gate list.
    pub fn index(self) -> usize {
        (self.0 - 1) as usize
    }
}

impl fmt::Display for GateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g{}", self.0)
    }
}

/// Operand qubits of a gate. Two-qubit operands are ordered: for a CNOT the
/// first entry is the control and the second the target.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Operands {
    Single(Qubit),
    Pair(Qubit, Qubit),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gate {
    pub id: GateId,
    pub kind: GateKind,
    pub operands: Operands,
    /// Classical bit written by a measurement.
    pub classical_target: Option<u32>,
}

impl Gate {
    pub fn qubits(&self) -> impl Iterator<Item = Qubit> {
        let (a, b) = match self.operands {
            Operands::Single(q) => (q, None),
            Operands::Pair(p, q) => (p, Some(q)),
        };
        std::iter::once(a).chain(b)
    }

    pub fn touches(&self, q: Qubit) -> bool {
        self.qubits().any(|p| p == q)
    }

    /// Control qubit of a two-qubit gate, or the sole operand otherwise.
    pub fn control(&self) -> Qubit {
        match self.operands {
            Operands::Single(q) | Operands::Pair(q, _) => q,
        }
    }

    /// Target qubit of a two-qubit gate. Panics on single-qubit gates.
    pub fn target(&self) -> Qubit {
        match self.operands {
            Operands::Pair(_, q) => q,
            Operands::Single(_) => panic!("target() on single-qubit gate {}", self.id),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CircuitError {
    #[error("gate {gate}: {kind} takes {expected} operand(s), got {got}")]
    ArityMismatch {
        gate: GateId,
        kind: GateKind,
        expected: usize,
        got: usize,
    },
    #[error("gate {gate}: qubit {qubit} out of range (circuit has {declared} qubits)")]
    UndeclaredQubit {
        gate: GateId,
        qubit: Qubit,
        declared: u32,
    },
    #[error("gate {gate}: two-qubit gate operands must be distinct")]
    DuplicateOperands { gate: GateId },
    #[error("gate {gate}: classical bit {bit} out of range (circuit has {declared} classical bits)")]
    UndeclaredClassicalBit { gate: GateId, bit: u32, declared: u32 },
    #[error("gate {gate}: measurement is missing a classical target")]
    MissingClassicalTarget { gate: GateId },
    #[error("gate {gate} acts on {qubit} after it was measured")]
    ReuseAfterMeasure { gate: GateId, qubit: Qubit },
    #[error("dependency edges contain a cycle")]
    CycleDetected,
}

/// A gate-level program: gates in issue order plus the dependency DAG over
/// gate ids. For every qubit the gates touching it are totally ordered by
/// the dependency edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Circuit {
    num_qubits: u32,
    num_clbits: u32,
    gates: Vec<Gate>,
    deps: Vec<(GateId, GateId)>,
}

impl Circuit {
    /// Validates the gate list and builds the last-use dependency edges.
    /// Gate ids are reassigned densely in list order, starting from 1.
    pub fn new(
        num_qubits: u32,
        num_clbits: u32,
        gates: Vec<(GateKind, Operands, Option<u32>)>,
    ) -> Result<Circuit, CircuitError> {
        let gates: Vec<Gate> = gates
            .into_iter()
            .enumerate()
            .map(|(i, (kind, operands, classical_target))| Gate {
                id: GateId(i as u32 + 1),
                kind,
                operands,
                classical_target,
            })
            .collect();
        validate_gates(&gates, num_qubits, num_clbits)?;
        let deps = build_deps(&gates, num_qubits)?;
        Ok(Circuit {
            num_qubits,
            num_clbits,
            gates,
            deps,
        })
    }

    pub fn empty(num_qubits: u32, num_clbits: u32) -> Circuit {
        Circuit {
            num_qubits,
            num_clbits,
            gates: Vec::new(),
            deps: Vec::new(),
        }
    }

    pub fn num_qubits(&self) -> u32 {
        self.num_qubits
    }

    pub fn num_clbits(&self) -> u32 {
        self.num_clbits
    }

    pub fn num_gates(&self) -> usize {
        self.gates.len()
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn gate(&self, id: GateId) -> &Gate {
        &self.gates[id.index()]
    }

    /// Dependency edge set: `(i, j)` means gate `j` starts after `i` finishes.
    pub fn deps(&self) -> &[(GateId, GateId)] {
        &self.deps
    }

    pub fn cnot_ids(&self) -> impl Iterator<Item = GateId> + '_ {
        self.gates
            .iter()
            .filter(|g| g.kind == GateKind::Cnot)
            .map(|g| g.id)
    }

    /// Direct predecessors per gate, indexed by `GateId::index`.
    pub fn predecessors(&self) -> Vec<Vec<GateId>> {
        let mut preds = vec![Vec::new(); self.gates.len()];
        for &(i, j) in &self.deps {
            preds[j.index()].push(i);
        }
        preds
    }

    /// Direct successors per gate, indexed by `GateId::index`.
    pub fn successors(&self) -> Vec<Vec<GateId>> {
        let mut succs = vec![Vec::new(); self.gates.len()];
        for &(i, j) in &self.deps {
            succs[i.index()].push(j);
        }
        succs
    }
}

fn validate_gates(gates: &[Gate], num_qubits: u32, num_clbits: u32) -> Result<(), CircuitError> {
    let mut measured = vec![false; num_qubits as usize];
    for gate in gates {
        let expected = if gate.kind.is_two_qubit() { 2 } else { 1 };
        let got = match gate.operands {
            Operands::Single(_) => 1,
            Operands::Pair(_, _) => 2,
        };
        if expected != got {
            return Err(CircuitError::ArityMismatch {
                gate: gate.id,
                kind: gate.kind,
                expected,
                got,
            });
        }
        if let Operands::Pair(a, b) = gate.operands {
            if a == b {
                return Err(CircuitError::DuplicateOperands { gate: gate.id });
            }
        }
        for q in gate.qubits() {
            if q.0 >= num_qubits {
                return Err(CircuitError::UndeclaredQubit {
                    gate: gate.id,
                    qubit: q,
                    declared: num_qubits,
                });
            }
            if measured[q.index()] {
                return Err(CircuitError::ReuseAfterMeasure {
                    gate: gate.id,
                    qubit: q,
                });
            }
        }
        if gate.kind == GateKind::Measure {
            match gate.classical_target {
                Some(bit) if bit >= num_clbits => {
                    return Err(CircuitError::UndeclaredClassicalBit {
                        gate: gate.id,
                        bit,
                        declared: num_clbits,
                    });
                }
                Some(_) => {}
                None => return Err(CircuitError::MissingClassicalTarget { gate: gate.id }),
            }
            measured[gate.control().index()] = true;
        }
    }
    Ok(())
}

/// Builds dependency edges by last-use chaining: each gate depends on the most
/// recent earlier gate touching each of its operand qubits. No transitive
/// edges are added. Duplicate edges (a CNOT following a CNOT on the same pair)
/// are emitted once.
pub fn build_deps(gates: &[Gate], num_qubits: u32) -> Result<Vec<(GateId, GateId)>, CircuitError> {
    let mut last_use: Vec<Option<GateId>> = vec![None; num_qubits as usize];
    let mut deps = Vec::new();
    for gate in gates {
        let mut prev_of_gate: Option<GateId> = None;
        for q in gate.qubits() {
            if let Some(prev) = last_use[q.index()] {
                // Both operands may share the same predecessor.
                if prev_of_gate != Some(prev) {
                    deps.push((prev, gate.id));
                    prev_of_gate = Some(prev);
                }
            }
        }
        for q in gate.qubits() {
            last_use[q.index()] = Some(gate.id);
        }
    }
    Ok(deps)
}

/// Square bit matrix used for gate-to-gate reachability.
#[derive(Debug, Clone)]
pub struct BitMatrix {
    n: usize,
    words_per_row: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    pub fn new(n: usize) -> BitMatrix {
        let words_per_row = n.div_ceil(64);
        BitMatrix {
            n,
            words_per_row,
            bits: vec![0; n * words_per_row],
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn set(&mut self, i: usize, j: usize) {
        self.bits[i * self.words_per_row + j / 64] |= 1 << (j % 64);
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.words_per_row + j / 64] & (1 << (j % 64)) != 0
    }

    fn or_row_into(&mut self, src: usize, dst: usize) {
        let (s, d) = (src * self.words_per_row, dst * self.words_per_row);
        for w in 0..self.words_per_row {
            let v = self.bits[s + w];
            self.bits[d + w] |= v;
        }
    }
}

/// Reachability over the dependency DAG plus the set of CNOT pairs that may
/// overlap in time. Only those pairs need routing constraints.
#[derive(Debug, Clone)]
pub struct ConcurrencyInfo {
    reach: BitMatrix,
    cnot_pairs: Vec<(GateId, GateId)>,
}

impl ConcurrencyInfo {
    /// True when gate `i` is an ancestor of gate `j`.
    pub fn reaches(&self, i: GateId, j: GateId) -> bool {
        self.reach.get(i.index(), j.index())
    }

    /// True when neither gate reaches the other, i.e. they may run concurrently.
    pub fn may_overlap(&self, i: GateId, j: GateId) -> bool {
        !self.reaches(i, j) && !self.reaches(j, i)
    }

    /// Unordered CNOT pairs `(i, j)` with `i < j` that may overlap in time.
    pub fn cnot_pairs(&self) -> &[(GateId, GateId)] {
        &self.cnot_pairs
    }
}

/// Computes the reflexive-free transitive closure of the dependency DAG with
/// the Floyd-Warshall algorithm over bit rows, then enumerates the CNOT pairs
/// with no ancestor/descendant relation in either direction.
pub fn transitive_closure(circuit: &Circuit) -> Result<ConcurrencyInfo, CircuitError> {
    let n = circuit.num_gates();
    let mut reach = BitMatrix::new(n);
    for &(i, j) in circuit.deps() {
        reach.set(i.index(), j.index());
    }
    for k in 0..n {
        for i in 0..n {
            if reach.get(i, k) {
                reach.or_row_into(k, i);
            }
        }
    }
    for i in 0..n {
        if reach.get(i, i) {
            return Err(CircuitError::CycleDetected);
        }
    }
    let cnots: Vec<GateId> = circuit.cnot_ids().collect();
    let mut cnot_pairs = Vec::new();
    for (a, &i) in cnots.iter().enumerate() {
        for &j in &cnots[a + 1..] {
            if !reach.get(i.index(), j.index()) && !reach.get(j.index(), i.index()) {
                cnot_pairs.push((i, j));
            }
        }
    }
    Ok(ConcurrencyInfo { reach, cnot_pairs })
}

/// A zero-duration gate removed by [`strip_virtual`], with its re-insertion
/// anchors expressed in the reduced circuit's gate ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VirtualGate {
    pub kind: GateKind,
    pub qubit: Qubit,
    /// Last real gate on the same qubit before this one, if any.
    pub prev_real: Option<GateId>,
    /// Next real gate on the same qubit after this one, if any.
    pub next_real: Option<GateId>,
    /// Position in the original gate list, for stable ordering of consecutive
    /// virtual gates.
    pub original_index: usize,
}

/// Removes zero-duration gates from the circuit and rebuilds dependencies so
/// the remaining gates chain directly. The removed gates carry enough anchor
/// information to be re-inserted during emission at their predecessor's
/// finish time.
pub fn strip_virtual(circuit: &Circuit) -> (Circuit, Vec<VirtualGate>) {
    let mut kept = Vec::new();
    let mut removed = Vec::new();
    // Reduced id each original gate will receive, in list order.
    let mut next_id = 1u32;
    let mut reduced_id = vec![None; circuit.num_gates()];
    for gate in circuit.gates() {
        if gate.kind.is_virtual() {
            continue;
        }
        reduced_id[gate.id.index()] = Some(GateId(next_id));
        next_id += 1;
        kept.push((gate.kind, gate.operands, gate.classical_target));
    }
    let mut last_real: Vec<Option<GateId>> = vec![None; circuit.num_qubits() as usize];
    let mut pending: Vec<Vec<usize>> = vec![Vec::new(); circuit.num_qubits() as usize];
    for (idx, gate) in circuit.gates().iter().enumerate() {
        if gate.kind.is_virtual() {
            let q = gate.control();
            removed.push(VirtualGate {
                kind: gate.kind,
                qubit: q,
                prev_real: last_real[q.index()],
                next_real: None,
                original_index: idx,
            });
            pending[q.index()].push(removed.len() - 1);
        } else {
            for q in gate.qubits() {
                let id = reduced_id[gate.id.index()].expect("kept gate has id");
                for &r in &pending[q.index()] {
                    removed[r].next_real = Some(id);
                }
                pending[q.index()].clear();
                last_real[q.index()] = Some(id);
            }
        }
    }
    let reduced = Circuit::new(circuit.num_qubits(), circuit.num_clbits(), kept)
        .expect("stripping preserves validity");
    (reduced, removed)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single(kind: GateKind, q: u32) -> (GateKind, Operands, Option<u32>) {
        (kind, Operands::Single(Qubit(q)), None)
    }

    fn cnot(c: u32, t: u32) -> (GateKind, Operands, Option<u32>) {
        (GateKind::Cnot, Operands::Pair(Qubit(c), Qubit(t)), None)
    }

    fn measure(q: u32, c: u32) -> (GateKind, Operands, Option<u32>) {
        (GateKind::Measure, Operands::Single(Qubit(q)), Some(c))
    }

    fn ids(edges: &[(GateId, GateId)]) -> Vec<(u32, u32)> {
        edges.iter().map(|&(a, b)| (a.0, b.0)).collect()
    }

    #[test]
    fn deps_same_qubit_chain() {
        let c = Circuit::new(
            1,
            0,
            vec![single(GateKind::H, 0), single(GateKind::X, 0), single(GateKind::H, 0)],
        )
        .unwrap();
        assert_eq!(ids(c.deps()), vec![(1, 2), (2, 3)]);
    }

    #[test]
    fn deps_disjoint_qubits() {
        let c = Circuit::new(2, 0, vec![single(GateKind::H, 0), single(GateKind::H, 1)]).unwrap();
        assert!(c.deps().is_empty());
    }

    #[test]
    fn deps_last_use_rule() {
        // H q0, H q1, CNOT q0 q1, X q0 -> {(1,3),(2,3),(3,4)}
        let c = Circuit::new(
            2,
            0,
            vec![
                single(GateKind::H, 0),
                single(GateKind::H, 1),
                cnot(0, 1),
                single(GateKind::X, 0),
            ],
        )
        .unwrap();
        assert_eq!(ids(c.deps()), vec![(1, 3), (2, 3), (3, 4)]);
    }

    #[test]
    fn deps_deduplicates_shared_predecessor() {
        let c = Circuit::new(2, 0, vec![cnot(0, 1), cnot(0, 1)]).unwrap();
        assert_eq!(ids(c.deps()), vec![(1, 2)]);
    }

    #[test]
    fn cnot_needs_distinct_operands() {
        let err = Circuit::new(2, 0, vec![(GateKind::Cnot, Operands::Pair(Qubit(1), Qubit(1)), None)])
            .unwrap_err();
        assert_eq!(err, CircuitError::DuplicateOperands { gate: GateId(1) });
    }

    #[test]
    fn out_of_range_operand_rejected() {
        let err = Circuit::new(1, 0, vec![cnot(0, 1)]).unwrap_err();
        assert!(matches!(err, CircuitError::UndeclaredQubit { qubit: Qubit(1), .. }));
    }

    #[test]
    fn reuse_after_measure_rejected() {
        let err = Circuit::new(1, 1, vec![measure(0, 0), single(GateKind::H, 0)]).unwrap_err();
        assert!(matches!(err, CircuitError::ReuseAfterMeasure { gate: GateId(2), .. }));
    }

    #[test]
    fn closure_sequential_chain_has_no_pairs() {
        // Three CNOTs all sharing qubit 0: totally ordered.
        let c = Circuit::new(4, 0, vec![cnot(0, 1), cnot(0, 2), cnot(0, 3)]).unwrap();
        let info = transitive_closure(&c).unwrap();
        assert!(info.cnot_pairs().is_empty());
        assert!(info.reaches(GateId(1), GateId(3)));
    }

    #[test]
    fn closure_diamond_has_one_pair() {
        // a: CNOT(0,2), b: CNOT(0,1), c: CNOT(2,3), d: CNOT(1,3)
        // a -> b (q0), a -> c (q2), b -> d (q1), c -> d (q3); b and c may overlap.
        let c = Circuit::new(4, 0, vec![cnot(0, 2), cnot(0, 1), cnot(2, 3), cnot(1, 3)]).unwrap();
        let info = transitive_closure(&c).unwrap();
        assert_eq!(info.cnot_pairs(), &[(GateId(2), GateId(3))]);
        assert!(info.reaches(GateId(1), GateId(4)));
        assert!(!info.may_overlap(GateId(1), GateId(4)));
    }

    #[test]
    fn closure_single_gate() {
        let c = Circuit::new(2, 0, vec![cnot(0, 1)]).unwrap();
        let info = transitive_closure(&c).unwrap();
        assert!(info.cnot_pairs().is_empty());
    }

    /// Independent reachability via BFS from every node, used as an oracle
    /// for the Floyd-Warshall closure.
    fn bfs_reach(circuit: &Circuit) -> BitMatrix {
        let n = circuit.num_gates();
        let succs = circuit.successors();
        let mut m = BitMatrix::new(n);
        for s in 0..n {
            let mut queue = vec![GateId(s as u32 + 1)];
            let mut seen = vec![false; n];
            while let Some(u) = queue.pop() {
                for &v in &succs[u.index()] {
                    if !seen[v.index()] {
                        seen[v.index()] = true;
                        m.set(s, v.index());
                        queue.push(v);
                    }
                }
            }
        }
        m
    }

    #[test]
    fn closure_matches_bfs_on_random_circuits() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let q = rng.gen_range(2..6u32);
            let n = rng.gen_range(0..50usize);
            let mut gates = Vec::new();
            for _ in 0..n {
                if rng.gen_bool(0.4) {
                    let c = rng.gen_range(0..q);
                    let mut t = rng.gen_range(0..q - 1);
                    if t >= c {
                        t += 1;
                    }
                    gates.push(cnot(c, t));
                } else {
                    gates.push(single(GateKind::H, rng.gen_range(0..q)));
                }
            }
            let circuit = Circuit::new(q, 0, gates).unwrap();
            let info = transitive_closure(&circuit).unwrap();
            let oracle = bfs_reach(&circuit);
            for i in 0..circuit.num_gates() {
                for j in 0..circuit.num_gates() {
                    assert_eq!(
                        info.reach.get(i, j),
                        oracle.get(i, j),
                        "closure mismatch at ({i},{j})"
                    );
                }
            }
        }
    }

    #[test]
    fn per_qubit_gates_totally_ordered_under_closure() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let q = rng.gen_range(2..5u32);
            let n = rng.gen_range(1..30usize);
            let mut gates = Vec::new();
            for _ in 0..n {
                if rng.gen_bool(0.3) {
                    let c = rng.gen_range(0..q);
                    let mut t = rng.gen_range(0..q - 1);
                    if t >= c {
                        t += 1;
                    }
                    gates.push(cnot(c, t));
                } else {
                    gates.push(single(GateKind::X, rng.gen_range(0..q)));
                }
            }
            let circuit = Circuit::new(q, 0, gates).unwrap();
            let info = transitive_closure(&circuit).unwrap();
            for qb in 0..q {
                let touching: Vec<GateId> = circuit
                    .gates()
                    .iter()
                    .filter(|g| g.touches(Qubit(qb)))
                    .map(|g| g.id)
                    .collect();
                for (a, &i) in touching.iter().enumerate() {
                    for &j in &touching[a + 1..] {
                        assert!(
                            info.reaches(i, j) || info.reaches(j, i),
                            "gates {i} and {j} on qubit {qb} not ordered"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn strip_virtual_reconnects_chain() {
        // H q0, Z q0, S q0, X q0, T q1
        let c = Circuit::new(
            2,
            0,
            vec![
                single(GateKind::H, 0),
                single(GateKind::Z, 0),
                single(GateKind::S, 0),
                single(GateKind::X, 0),
                single(GateKind::T, 1),
            ],
        )
        .unwrap();
        let (reduced, removed) = strip_virtual(&c);
        assert_eq!(reduced.num_gates(), 2);
        assert_eq!(ids(reduced.deps()), vec![(1, 2)]);
        assert_eq!(removed.len(), 3);
        assert_eq!(removed[0].kind, GateKind::Z);
        assert_eq!(removed[0].prev_real, Some(GateId(1)));
        assert_eq!(removed[0].next_real, Some(GateId(2)));
        assert_eq!(removed[1].kind, GateKind::S);
        assert_eq!(removed[1].prev_real, Some(GateId(1)));
        assert_eq!(removed[1].next_real, Some(GateId(2)));
        // T on q1 has no real neighbours at all.
        assert_eq!(removed[2].prev_real, None);
        assert_eq!(removed[2].next_real, None);
    }

    #[test]
    fn build_deps_deterministic() {
        let gates = vec![
            single(GateKind::H, 0),
            cnot(0, 1),
            single(GateKind::X, 1),
            cnot(1, 0),
        ];
        let a = Circuit::new(2, 0, gates.clone()).unwrap();
        let b = Circuit::new(2, 0, gates).unwrap();
        assert_eq!(a.deps(), b.deps());
    }
}
