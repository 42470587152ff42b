//! Translates a circuit, machine and routing policy into a constraint
//! problem: mapping bounds and distinctness, gate timing windows, CNOT
//! durations from mapped distances, dependency ordering, per-pair routing
//! non-overlap (pruned by transitive closure), reservation exclusivity for
//! single-qubit gates and measurements, and the completion dummy gate.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::circuit::{Circuit, ConcurrencyInfo, GateId, GateKind, Qubit};
use crate::machine::MachineGrid;
use crate::schedule::{CnotRoute, GateTiming, Mapping, Schedule};
use crate::smt::ast::{ConstraintTag, Formula, Model, Problem, Term, VarId};

/// How concurrent CNOTs are kept spatially apart.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RoutingPolicy {
    /// Reserve the full control-target bounding rectangle.
    RectangleReservation,
    /// Reserve one of the two paths along the bounding rectangle's edges.
    OneBendPaths,
}

impl RoutingPolicy {
    pub fn name(self) -> &'static str {
        match self {
            RoutingPolicy::RectangleReservation => "rr",
            RoutingPolicy::OneBendPaths => "1bp",
        }
    }

    pub fn from_name(s: &str) -> Option<RoutingPolicy> {
        match s {
            "rr" => Some(RoutingPolicy::RectangleReservation),
            "1bp" => Some(RoutingPolicy::OneBendPaths),
            _ => None,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EncodeError {
    #[error("{qubits} program qubits exceed machine capacity {capacity}")]
    TooManyQubits { qubits: u32, capacity: i64 },
    #[error("deadline {t_max} exceeds the machine coherence window {coherence}")]
    DeadlineBeyondCoherence { t_max: i64, coherence: i64 },
    #[error("gate {gate} has kind {kind} which cannot appear in solver input")]
    UnsupportedGate { gate: GateId, kind: GateKind },
}

#[derive(Debug, Clone)]
pub struct EncodeOptions<'a> {
    pub policy: RoutingPolicy,
    /// Every gate (and the dummy completion gate) must finish by this slot.
    pub t_max: i64,
    /// Hard-wires the mapping variables and omits the mapping constraints.
    pub fixed_mapping: Option<&'a Mapping>,
}

#[derive(Debug, Clone, Copy)]
struct RectVars {
    lx: VarId,
    ly: VarId,
    rx: VarId,
    ry: VarId,
}

#[derive(Debug, Clone, Copy)]
struct BendVars {
    bx: VarId,
    by: VarId,
    cb: RectVars,
    bt: RectVars,
}

/// Rectangle corners as terms, for building overlap predicates.
struct RectT {
    lx: Term,
    ly: Term,
    rx: Term,
    ry: Term,
}

impl RectT {
    fn of(vars: RectVars) -> RectT {
        RectT {
            lx: Term::var(vars.lx),
            ly: Term::var(vars.ly),
            rx: Term::var(vars.rx),
            ry: Term::var(vars.ry),
        }
    }
}

/// A circuit encoded against one deadline, ready for satisfiability checks.
#[derive(Debug, Clone)]
pub struct Encoding {
    problem: Problem,
    policy: RoutingPolicy,
    t_max: i64,
    qx: Vec<VarId>,
    qy: Vec<VarId>,
    t: Vec<VarId>,
    d: Vec<VarId>,
    rects: BTreeMap<GateId, RectVars>,
    bends: BTreeMap<GateId, BendVars>,
    t_dummy: VarId,
}

/// Temporal overlap predicate over gate interval terms: back-to-back
/// intervals count as overlapping.
pub fn overlap_in_time(ti: Term, di: Term, tj: Term, dj: Term) -> Formula {
    Formula::or(vec![
        ti.clone().gt(tj.clone().add(dj)),
        tj.gt(ti.add(di)),
    ])
    .not()
}

fn rect_overlap_terms(a: RectT, b: RectT) -> Formula {
    Formula::or(vec![
        a.lx.gt(b.rx),
        a.rx.lt(b.lx),
        a.ly.gt(b.ry),
        a.ry.lt(b.ly),
    ])
    .not()
}

/// Spatial overlap of two reserved rectangles, boundaries closed.
pub fn rect_overlap(
    a: (Term, Term, Term, Term),
    b: (Term, Term, Term, Term),
) -> Formula {
    rect_overlap_terms(
        RectT { lx: a.0, ly: a.1, rx: a.2, ry: a.3 },
        RectT { lx: b.0, ly: b.1, rx: b.2, ry: b.3 },
    )
}

pub fn encode(
    circuit: &Circuit,
    machine: &MachineGrid,
    concurrency: &ConcurrencyInfo,
    opts: &EncodeOptions,
) -> Result<Encoding, EncodeError> {
    if (circuit.num_qubits() as i64) > machine.num_qubits() {
        return Err(EncodeError::TooManyQubits {
            qubits: circuit.num_qubits(),
            capacity: machine.num_qubits(),
        });
    }
    if opts.t_max > machine.coherence() {
        return Err(EncodeError::DeadlineBeyondCoherence {
            t_max: opts.t_max,
            coherence: machine.coherence(),
        });
    }
    for gate in circuit.gates() {
        if gate.kind == GateKind::Swap {
            return Err(EncodeError::UnsupportedGate {
                gate: gate.id,
                kind: gate.kind,
            });
        }
    }

    let mut p = Problem::new();
    let rows = machine.rows();
    let cols = machine.cols();
    let coherence = machine.coherence();
    let tau = machine.durations();
    let tau_swap = tau.get(GateKind::Swap);
    let tau_cnot = tau.get(GateKind::Cnot);
    let max_dist = (rows - 1) + (cols - 1);
    let max_cnot_duration = 2 * (max_dist - 1).max(0) * tau_swap + tau_cnot;

    // Mapping variables. With a fixed mapping the domains collapse to the
    // given coordinates and the distinctness constraints are omitted.
    let nq = circuit.num_qubits() as usize;
    let mut qx = Vec::with_capacity(nq);
    let mut qy = Vec::with_capacity(nq);
    for i in 0..nq {
        match opts.fixed_mapping {
            Some(m) => {
                let c = m.get(Qubit(i as u32));
                qx.push(p.int_var(format!("qx_{i}"), c.x, c.x));
                qy.push(p.int_var(format!("qy_{i}"), c.y, c.y));
            }
            None => {
                qx.push(p.int_var(format!("qx_{i}"), 1, rows));
                qy.push(p.int_var(format!("qy_{i}"), 1, cols));
            }
        }
    }
    if opts.fixed_mapping.is_none() {
        for i in 0..nq {
            for j in i + 1..nq {
                p.assert(
                    ConstraintTag::MappingDistinct,
                    Formula::or(vec![
                        Term::var(qx[i]).ne(Term::var(qx[j])),
                        Term::var(qy[i]).ne(Term::var(qy[j])),
                    ]),
                );
            }
        }
    }

    // Gate timing variables and duration definitions.
    let ng = circuit.num_gates();
    let mut t = Vec::with_capacity(ng);
    let mut d = Vec::with_capacity(ng);
    for gate in circuit.gates() {
        let j = gate.id.0;
        t.push(p.int_var(format!("t_{j}"), 1, coherence));
        if gate.kind == GateKind::Cnot {
            d.push(p.int_var(format!("d_{j}"), tau_cnot, max_cnot_duration.max(tau_cnot)));
        } else {
            let slots = tau.get(gate.kind);
            d.push(p.int_var(format!("d_{j}"), slots, slots));
        }
    }
    for gate in circuit.gates() {
        let idx = gate.id.index();
        if gate.kind == GateKind::Cnot {
            let c = gate.control().index();
            let tq = gate.target().index();
            let dist = Term::var(qx[c])
                .sub(Term::var(qx[tq]))
                .abs()
                .add(Term::var(qy[c]).sub(Term::var(qy[tq])).abs());
            let duration = dist
                .sub(Term::con(1))
                .scale(2 * tau_swap)
                .add(Term::con(tau_cnot));
            p.assert(
                ConstraintTag::GateDuration,
                Term::var(d[idx]).eq(duration),
            );
        }
        p.assert(
            ConstraintTag::TimeWindow,
            Term::var(t[idx])
                .add(Term::var(d[idx]))
                .le(Term::con(opts.t_max)),
        );
    }

    // Dependency ordering.
    for &(i, j) in circuit.deps() {
        p.assert(
            ConstraintTag::Dependency,
            Term::var(t[j.index()]).ge(Term::var(t[i.index()]).add(Term::var(d[i.index()]))),
        );
    }

    // Reservation geometry per CNOT.
    let mut rects = BTreeMap::new();
    let mut bends = BTreeMap::new();
    for gate in circuit.gates() {
        if gate.kind != GateKind::Cnot {
            continue;
        }
        let j = gate.id.0;
        let c = gate.control().index();
        let tq = gate.target().index();
        match opts.policy {
            RoutingPolicy::RectangleReservation => {
                let rect = define_rect(
                    &mut p,
                    &format!("g{j}"),
                    Term::var(qx[c]),
                    Term::var(qy[c]),
                    Term::var(qx[tq]),
                    Term::var(qy[tq]),
                    rows,
                    cols,
                );
                rects.insert(gate.id, rect);
            }
            RoutingPolicy::OneBendPaths => {
                let bx = p.int_var(format!("bx_{j}"), 1, rows);
                let by = p.int_var(format!("by_{j}"), 1, cols);
                p.assert(
                    ConstraintTag::RouteGeometry,
                    Formula::or(vec![
                        Formula::and(vec![
                            Term::var(bx).eq(Term::var(qx[c])),
                            Term::var(by).eq(Term::var(qy[tq])),
                        ]),
                        Formula::and(vec![
                            Term::var(bx).eq(Term::var(qx[tq])),
                            Term::var(by).eq(Term::var(qy[c])),
                        ]),
                    ]),
                );
                let cb = define_rect(
                    &mut p,
                    &format!("cb{j}"),
                    Term::var(qx[c]),
                    Term::var(qy[c]),
                    Term::var(bx),
                    Term::var(by),
                    rows,
                    cols,
                );
                let bt = define_rect(
                    &mut p,
                    &format!("bt{j}"),
                    Term::var(bx),
                    Term::var(by),
                    Term::var(qx[tq]),
                    Term::var(qy[tq]),
                    rows,
                    cols,
                );
                bends.insert(gate.id, BendVars { bx, by, cb, bt });
            }
        }
    }

    // Routing non-overlap, one implication per concurrent CNOT pair.
    for &(i, j) in concurrency.cnot_pairs() {
        let in_time = overlap_in_time(
            Term::var(t[i.index()]),
            Term::var(d[i.index()]),
            Term::var(t[j.index()]),
            Term::var(d[j.index()]),
        );
        let in_space = match opts.policy {
            RoutingPolicy::RectangleReservation => {
                rect_overlap_terms(RectT::of(rects[&i]), RectT::of(rects[&j]))
            }
            RoutingPolicy::OneBendPaths => {
                let (a, b) = (bends[&i], bends[&j]);
                Formula::or(vec![
                    rect_overlap_terms(RectT::of(a.cb), RectT::of(b.cb)),
                    rect_overlap_terms(RectT::of(a.cb), RectT::of(b.bt)),
                    rect_overlap_terms(RectT::of(a.bt), RectT::of(b.cb)),
                    rect_overlap_terms(RectT::of(a.bt), RectT::of(b.bt)),
                ])
            }
        };
        p.assert(ConstraintTag::Routing, in_time.implies(in_space.not()));
    }

    // Reservation exclusivity: a single-qubit gate or measurement may not
    // run while a concurrent CNOT holds the region containing its qubit.
    // Without this, swap sequences could pass through a hardware qubit in
    // the middle of another gate and corrupt it.
    for gate in circuit.gates() {
        if gate.kind == GateKind::Cnot {
            continue;
        }
        let q = gate.control().index();
        for cnot in circuit.gates() {
            if cnot.kind != GateKind::Cnot || !concurrency.may_overlap(gate.id, cnot.id) {
                continue;
            }
            let in_time = overlap_in_time(
                Term::var(t[gate.id.index()]),
                Term::var(d[gate.id.index()]),
                Term::var(t[cnot.id.index()]),
                Term::var(d[cnot.id.index()]),
            );
            let inside = match opts.policy {
                RoutingPolicy::RectangleReservation => {
                    point_in_rect(Term::var(qx[q]), Term::var(qy[q]), rects[&cnot.id])
                }
                RoutingPolicy::OneBendPaths => {
                    let b = bends[&cnot.id];
                    Formula::or(vec![
                        point_in_rect(Term::var(qx[q]), Term::var(qy[q]), b.cb),
                        point_in_rect(Term::var(qx[q]), Term::var(qy[q]), b.bt),
                    ])
                }
            };
            p.assert(ConstraintTag::Occupancy, in_time.implies(inside.not()));
        }
    }

    // Completion dummy gate: starts after every gate finishes and by t_max.
    let t_dummy = p.int_var(format!("t_{}", ng + 1), 1, opts.t_max);
    for gate in circuit.gates() {
        let idx = gate.id.index();
        p.assert(
            ConstraintTag::Completion,
            Term::var(t_dummy).ge(Term::var(t[idx]).add(Term::var(d[idx]))),
        );
    }

    Ok(Encoding {
        problem: p,
        policy: opts.policy,
        t_max: opts.t_max,
        qx,
        qy,
        t,
        d,
        rects,
        bends,
        t_dummy,
    })
}

fn define_rect(
    p: &mut Problem,
    label: &str,
    ax: Term,
    ay: Term,
    bx: Term,
    by: Term,
    rows: i64,
    cols: i64,
) -> RectVars {
    let vars = RectVars {
        lx: p.int_var(format!("lx_{label}"), 1, rows),
        ly: p.int_var(format!("ly_{label}"), 1, cols),
        rx: p.int_var(format!("rx_{label}"), 1, rows),
        ry: p.int_var(format!("ry_{label}"), 1, cols),
    };
    p.assert(
        ConstraintTag::RouteGeometry,
        Term::var(vars.lx).eq(ax.clone().min(bx.clone())),
    );
    p.assert(
        ConstraintTag::RouteGeometry,
        Term::var(vars.rx).eq(ax.max(bx)),
    );
    p.assert(
        ConstraintTag::RouteGeometry,
        Term::var(vars.ly).eq(ay.clone().min(by.clone())),
    );
    p.assert(
        ConstraintTag::RouteGeometry,
        Term::var(vars.ry).eq(ay.max(by)),
    );
    vars
}

fn point_in_rect(px: Term, py: Term, rect: RectVars) -> Formula {
    Formula::and(vec![
        Term::var(rect.lx).le(px.clone()),
        px.le(Term::var(rect.rx)),
        Term::var(rect.ly).le(py.clone()),
        py.le(Term::var(rect.ry)),
    ])
}

impl Encoding {
    pub fn problem(&self) -> &Problem {
        &self.problem
    }

    pub fn policy(&self) -> RoutingPolicy {
        self.policy
    }

    pub fn t_max(&self) -> i64 {
        self.t_max
    }

    /// Number of per-pair routing implications emitted.
    pub fn routing_assertions(&self) -> usize {
        self.problem.count_tag(ConstraintTag::Routing)
    }

    pub fn dummy_start(&self, model: &Model) -> i64 {
        model.value(self.t_dummy)
    }

    /// Reads the mapping and schedule out of a satisfying model.
    pub fn extract_solution(&self, circuit: &Circuit, model: &Model) -> (Mapping, Schedule) {
        let coords = self
            .qx
            .iter()
            .zip(&self.qy)
            .map(|(&x, &y)| crate::machine::Coord::new(model.value(x), model.value(y)))
            .collect();
        let mapping = Mapping::new(coords);
        let times = circuit
            .gates()
            .iter()
            .map(|g| GateTiming {
                start: model.value(self.t[g.id.index()]),
                duration: model.value(self.d[g.id.index()]),
            })
            .collect();
        let routes = circuit
            .gates()
            .iter()
            .filter(|g| g.kind == GateKind::Cnot)
            .map(|g| CnotRoute {
                gate: g.id,
                bend: self.bends.get(&g.id).map(|b| {
                    crate::machine::Coord::new(model.value(b.bx), model.value(b.by))
                }),
            })
            .collect();
        (mapping, Schedule::new(times, routes))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{transitive_closure, Operands};
    use crate::smt::ast::Model;

    fn circuit(gates: Vec<(GateKind, Operands, Option<u32>)>, q: u32) -> Circuit {
        Circuit::new(q, 0, gates).unwrap()
    }

    fn h(q: u32) -> (GateKind, Operands, Option<u32>) {
        (GateKind::H, Operands::Single(Qubit(q)), None)
    }

    fn cx(c: u32, t: u32) -> (GateKind, Operands, Option<u32>) {
        (GateKind::Cnot, Operands::Pair(Qubit(c), Qubit(t)), None)
    }

    #[test]
    fn too_many_qubits_rejected() {
        let c = circuit(vec![h(0)], 9);
        let m = MachineGrid::standard(8).unwrap();
        let conc = transitive_closure(&c).unwrap();
        let err = encode(
            &c,
            &m,
            &conc,
            &EncodeOptions {
                policy: RoutingPolicy::RectangleReservation,
                t_max: 100,
                fixed_mapping: None,
            },
        )
        .unwrap_err();
        assert_eq!(
            err,
            EncodeError::TooManyQubits {
                qubits: 9,
                capacity: 8
            }
        );
    }

    #[test]
    fn overlap_in_time_matches_examples() {
        let f = |t1: i64, d1: i64, t2: i64, d2: i64| {
            overlap_in_time(
                Term::con(t1),
                Term::con(d1),
                Term::con(t2),
                Term::con(d2),
            )
            .eval(&Model::new(vec![]))
        };
        assert!(!f(1, 8, 20, 8));
        assert!(f(1, 8, 1, 8));
        assert!(f(1, 8, 9, 8), "back-to-back intervals overlap");
    }

    #[test]
    fn rect_overlap_matches_examples() {
        let rect = |lx: i64, ly: i64, rx: i64, ry: i64| {
            (Term::con(lx), Term::con(ly), Term::con(rx), Term::con(ry))
        };
        let f = |a, b| rect_overlap(a, b).eval(&Model::new(vec![]));
        assert!(!f(rect(1, 1, 2, 2), rect(3, 3, 4, 4)));
        assert!(f(rect(1, 1, 2, 2), rect(2, 2, 3, 3)), "shared corner overlaps");
        assert!(f(rect(1, 1, 2, 2), rect(1, 1, 2, 2)));
    }

    #[test]
    fn routing_assertion_count_follows_pruning() {
        let m = MachineGrid::standard(8).unwrap();
        // Sequential CNOT chain: zero routing assertions.
        let seq = circuit(vec![cx(0, 1), cx(1, 2), cx(2, 3)], 4);
        let conc = transitive_closure(&seq).unwrap();
        let enc = encode(
            &seq,
            &m,
            &conc,
            &EncodeOptions {
                policy: RoutingPolicy::RectangleReservation,
                t_max: 625,
                fixed_mapping: None,
            },
        )
        .unwrap();
        assert_eq!(enc.routing_assertions(), 0);

        // Two independent CNOTs: exactly one routing assertion.
        let par = circuit(vec![cx(0, 1), cx(2, 3)], 4);
        let conc = transitive_closure(&par).unwrap();
        for policy in [RoutingPolicy::RectangleReservation, RoutingPolicy::OneBendPaths] {
            let enc = encode(
                &par,
                &m,
                &conc,
                &EncodeOptions {
                    policy,
                    t_max: 625,
                    fixed_mapping: None,
                },
            )
            .unwrap();
            assert_eq!(enc.routing_assertions(), 1);
        }
    }

    #[test]
    fn encoding_is_deterministic() {
        let c = circuit(vec![h(0), cx(0, 1), cx(2, 3), h(3)], 4);
        let m = MachineGrid::standard(8).unwrap();
        let conc = transitive_closure(&c).unwrap();
        let opts = EncodeOptions {
            policy: RoutingPolicy::OneBendPaths,
            t_max: 625,
            fixed_mapping: None,
        };
        let a = encode(&c, &m, &conc, &opts).unwrap();
        let b = encode(&c, &m, &conc, &opts).unwrap();
        assert_eq!(a.problem().to_smtlib(), b.problem().to_smtlib());
    }

    #[test]
    fn smtlib_dump_names_are_canonical() {
        let c = circuit(vec![h(0), cx(0, 1)], 2);
        let m = MachineGrid::standard(8).unwrap();
        let conc = transitive_closure(&c).unwrap();
        let enc = encode(
            &c,
            &m,
            &conc,
            &EncodeOptions {
                policy: RoutingPolicy::RectangleReservation,
                t_max: 625,
                fixed_mapping: None,
            },
        )
        .unwrap();
        let text = enc.problem().to_smtlib();
        assert!(text.contains("(declare-const qx_0 Int)"));
        assert!(text.contains("(declare-const t_1 Int)"));
        assert!(text.contains("(declare-const d_2 Int)"));
        // Dummy gate is t_{G+1}.
        assert!(text.contains("(declare-const t_3 Int)"));
    }
}
