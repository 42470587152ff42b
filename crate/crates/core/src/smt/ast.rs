//! A small constraint language over bounded integer variables: linear terms
//! with if-then-else, boolean connectives, and comparison atoms. Problems
//! built from it are checked by an SMT backend and can be dumped as SMT-LIB 2
//! text for cross-solver debugging.

use std::fmt::Write as _;

/// Index into a problem's variable table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VarId(pub u32);

impl VarId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarDecl {
    pub name: String,
    pub lo: i64,
    pub hi: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CmpOp {
    Le,
    Lt,
    Ge,
    Gt,
    Eq,
    Ne,
}

impl CmpOp {
    fn smtlib(self) -> &'static str {
        match self {
            CmpOp::Le => "<=",
            CmpOp::Lt => "<",
            CmpOp::Ge => ">=",
            CmpOp::Gt => ">",
            CmpOp::Eq => "=",
            CmpOp::Ne => "distinct",
        }
    }

    pub fn eval(self, a: i64, b: i64) -> bool {
        match self {
            CmpOp::Le => a <= b,
            CmpOp::Lt => a < b,
            CmpOp::Ge => a >= b,
            CmpOp::Gt => a > b,
            CmpOp::Eq => a == b,
            CmpOp::Ne => a != b,
        }
    }
}

/// Integer-valued expression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Term {
    Const(i64),
    Var(VarId),
    Add(Box<Term>, Box<Term>),
    Sub(Box<Term>, Box<Term>),
    Mul(i64, Box<Term>),
    Ite(Box<Formula>, Box<Term>, Box<Term>),
}

impl Term {
    pub fn var(v: VarId) -> Term {
        Term::Var(v)
    }

    pub fn con(k: i64) -> Term {
        Term::Const(k)
    }

    pub fn add(self, other: Term) -> Term {
        Term::Add(Box::new(self), Box::new(other))
    }

    pub fn sub(self, other: Term) -> Term {
        Term::Sub(Box::new(self), Box::new(other))
    }

    pub fn scale(self, k: i64) -> Term {
        Term::Mul(k, Box::new(self))
    }

    /// `|self|` written with if-then-else.
    pub fn abs(self) -> Term {
        Term::Ite(
            Box::new(self.clone().ge(Term::con(0))),
            Box::new(self.clone()),
            Box::new(Term::con(0).sub(self)),
        )
    }

    /// `min(self, other)` written with if-then-else.
    pub fn min(self, other: Term) -> Term {
        Term::Ite(
            Box::new(self.clone().le(other.clone())),
            Box::new(self),
            Box::new(other),
        )
    }

    /// `max(self, other)` written with if-then-else.
    pub fn max(self, other: Term) -> Term {
        Term::Ite(
            Box::new(self.clone().ge(other.clone())),
            Box::new(self),
            Box::new(other),
        )
    }

    pub fn le(self, other: Term) -> Formula {
        Formula::Cmp(CmpOp::Le, self, other)
    }

    pub fn lt(self, other: Term) -> Formula {
        Formula::Cmp(CmpOp::Lt, self, other)
    }

    pub fn ge(self, other: Term) -> Formula {
        Formula::Cmp(CmpOp::Ge, self, other)
    }

    pub fn gt(self, other: Term) -> Formula {
        Formula::Cmp(CmpOp::Gt, self, other)
    }

    pub fn eq(self, other: Term) -> Formula {
        Formula::Cmp(CmpOp::Eq, self, other)
    }

    pub fn ne(self, other: Term) -> Formula {
        Formula::Cmp(CmpOp::Ne, self, other)
    }

    pub fn eval(&self, model: &Model) -> i64 {
        match self {
            Term::Const(k) => *k,
            Term::Var(v) => model.value(*v),
            Term::Add(a, b) => a.eval(model) + b.eval(model),
            Term::Sub(a, b) => a.eval(model) - b.eval(model),
            Term::Mul(k, t) => k * t.eval(model),
            Term::Ite(c, a, b) => {
                if c.eval(model) {
                    a.eval(model)
                } else {
                    b.eval(model)
                }
            }
        }
    }
}

/// Boolean combination of comparison atoms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Formula {
    Lit(bool),
    Cmp(CmpOp, Term, Term),
    Not(Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Implies(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn not(self) -> Formula {
        Formula::Not(Box::new(self))
    }

    pub fn and(parts: Vec<Formula>) -> Formula {
        Formula::And(parts)
    }

    pub fn or(parts: Vec<Formula>) -> Formula {
        Formula::Or(parts)
    }

    pub fn implies(self, conclusion: Formula) -> Formula {
        Formula::Implies(Box::new(self), Box::new(conclusion))
    }

    pub fn eval(&self, model: &Model) -> bool {
        match self {
            Formula::Lit(b) => *b,
            Formula::Cmp(op, a, b) => op.eval(a.eval(model), b.eval(model)),
            Formula::Not(f) => !f.eval(model),
            Formula::And(fs) => fs.iter().all(|f| f.eval(model)),
            Formula::Or(fs) => fs.iter().any(|f| f.eval(model)),
            Formula::Implies(p, q) => !p.eval(model) || q.eval(model),
        }
    }
}

/// Constraint groups, used for inspecting what the encoder emitted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConstraintTag {
    /// Pairwise mapping distinctness.
    MappingDistinct,
    /// Start/finish bounds against the deadline.
    TimeWindow,
    /// Gate duration definitions.
    GateDuration,
    /// Dependency ordering between gates.
    Dependency,
    /// Rectangle corner, junction and segment definitions.
    RouteGeometry,
    /// One non-overlap implication per concurrent CNOT pair.
    Routing,
    /// Reservation exclusivity for non-CNOT gates against CNOT regions.
    Occupancy,
    /// Dummy-gate completion constraints.
    Completion,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assertion {
    pub tag: ConstraintTag,
    pub formula: Formula,
}

/// A full constraint problem: declared bounded integer variables plus
/// tagged assertions, in deterministic emission order.
#[derive(Debug, Clone, Default)]
pub struct Problem {
    vars: Vec<VarDecl>,
    asserts: Vec<Assertion>,
}

impl Problem {
    pub fn new() -> Problem {
        Problem::default()
    }

    pub fn int_var(&mut self, name: impl Into<String>, lo: i64, hi: i64) -> VarId {
        let name = name.into();
        self.vars.push(VarDecl { name, lo, hi });
        VarId(self.vars.len() as u32 - 1)
    }

    pub fn assert(&mut self, tag: ConstraintTag, formula: Formula) {
        self.asserts.push(Assertion { tag, formula });
    }

    pub fn vars(&self) -> &[VarDecl] {
        &self.vars
    }

    pub fn asserts(&self) -> &[Assertion] {
        &self.asserts
    }

    pub fn count_tag(&self, tag: ConstraintTag) -> usize {
        self.asserts.iter().filter(|a| a.tag == tag).count()
    }

    /// Checks a complete assignment against every declared bound and
    /// assertion. Used in tests to cross-validate backend models.
    pub fn satisfied_by(&self, model: &Model) -> bool {
        self.vars.iter().enumerate().all(|(i, v)| {
            let x = model.value(VarId(i as u32));
            v.lo <= x && x <= v.hi
        }) && self.asserts.iter().all(|a| a.formula.eval(model))
    }

    /// Renders the problem as SMT-LIB 2 text.
    pub fn to_smtlib(&self) -> String {
        let mut out = String::new();
        out.push_str("(set-logic QF_LIA)\n");
        for v in &self.vars {
            let _ = writeln!(out, "(declare-const {} Int)", v.name);
            let _ = writeln!(out, "(assert (and (>= {} {}) (<= {} {})))", v.name, v.lo, v.name, v.hi);
        }
        for a in &self.asserts {
            let mut f = String::new();
            self.write_formula(&a.formula, &mut f);
            let _ = writeln!(out, "(assert {f})");
        }
        out.push_str("(check-sat)\n(get-model)\n");
        out
    }

    fn write_term(&self, t: &Term, out: &mut String) {
        match t {
            Term::Const(k) if *k < 0 => {
                let _ = write!(out, "(- {})", -k);
            }
            Term::Const(k) => {
                let _ = write!(out, "{k}");
            }
            Term::Var(v) => out.push_str(&self.vars[v.index()].name),
            Term::Add(a, b) => {
                out.push_str("(+ ");
                self.write_term(a, out);
                out.push(' ');
                self.write_term(b, out);
                out.push(')');
            }
            Term::Sub(a, b) => {
                out.push_str("(- ");
                self.write_term(a, out);
                out.push(' ');
                self.write_term(b, out);
                out.push(')');
            }
            Term::Mul(k, a) => {
                let _ = write!(out, "(* {k} ");
                self.write_term(a, out);
                out.push(')');
            }
            Term::Ite(c, a, b) => {
                out.push_str("(ite ");
                self.write_formula(c, out);
                out.push(' ');
                self.write_term(a, out);
                out.push(' ');
                self.write_term(b, out);
                out.push(')');
            }
        }
    }

    fn write_formula(&self, f: &Formula, out: &mut String) {
        match f {
            Formula::Lit(b) => out.push_str(if *b { "true" } else { "false" }),
            Formula::Cmp(op, a, b) => {
                let _ = write!(out, "({} ", op.smtlib());
                self.write_term(a, out);
                out.push(' ');
                self.write_term(b, out);
                out.push(')');
            }
            Formula::Not(inner) => {
                out.push_str("(not ");
                self.write_formula(inner, out);
                out.push(')');
            }
            Formula::And(fs) => self.write_nary("and", fs, out),
            Formula::Or(fs) => self.write_nary("or", fs, out),
            Formula::Implies(p, q) => {
                out.push_str("(=> ");
                self.write_formula(p, out);
                out.push(' ');
                self.write_formula(q, out);
                out.push(')');
            }
        }
    }

    fn write_nary(&self, op: &str, fs: &[Formula], out: &mut String) {
        match fs {
            [] => out.push_str(if op == "and" { "true" } else { "false" }),
            [only] => self.write_formula(only, out),
            _ => {
                let _ = write!(out, "({op}");
                for f in fs {
                    out.push(' ');
                    self.write_formula(f, out);
                }
                out.push(')');
            }
        }
    }
}

/// A complete integer assignment, indexed by [`VarId`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Model {
    values: Vec<i64>,
}

impl Model {
    pub fn new(values: Vec<i64>) -> Model {
        Model { values }
    }

    pub fn value(&self, v: VarId) -> i64 {
        self.values[v.index()]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}
