//! Satisfiability backend. Each check runs in a fresh Z3 context so probes
//! are independent and reproducible; no incremental state is carried between
//! binary-search steps.

use std::time::{Duration, Instant};

use thiserror::Error;
use z3::ast::{Ast, Bool, Int};
use z3::{Config, Context, SatResult, Solver};

use crate::smt::ast::{CmpOp, Formula, Model, Problem, Term};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BackendError {
    #[error("solver failure: {0}")]
    Failure(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CheckStatus {
    Sat(Model),
    Unsat,
    Timeout,
}

impl CheckStatus {
    pub fn is_sat(&self) -> bool {
        matches!(self, CheckStatus::Sat(_))
    }
}

/// Result of one satisfiability check.
#[derive(Debug, Clone)]
pub struct BackendOutcome {
    pub status: CheckStatus,
    pub elapsed: Duration,
}

pub trait SmtBackend {
    /// Checks the problem, returning within roughly `deadline` wall time.
    /// A zero deadline times out immediately.
    fn check(&self, problem: &Problem, deadline: Duration) -> Result<BackendOutcome, BackendError>;
}

/// The default backend, wrapping Z3's integer linear arithmetic.
#[derive(Debug, Clone)]
pub struct Z3Backend {
    pub random_seed: u32,
}

impl Default for Z3Backend {
    fn default() -> Z3Backend {
        Z3Backend { random_seed: 0 }
    }
}

impl SmtBackend for Z3Backend {
    fn check(&self, problem: &Problem, deadline: Duration) -> Result<BackendOutcome, BackendError> {
        let started = Instant::now();
        if deadline.is_zero() {
            return Ok(BackendOutcome {
                status: CheckStatus::Timeout,
                elapsed: started.elapsed(),
            });
        }
        let mut config = Config::new();
        config.set_timeout_msec(deadline.as_millis().min(u64::MAX as u128) as u64);
        let ctx = Context::new(&config);
        let solver = Solver::new(&ctx);
        let mut params = z3::Params::new(&ctx);
        params.set_u32("random_seed", self.random_seed);
        solver.set_params(&params);

        let consts: Vec<Int> = problem
            .vars()
            .iter()
            .map(|v| Int::new_const(&ctx, v.name.as_str()))
            .collect();
        for (var, decl) in consts.iter().zip(problem.vars()) {
            solver.assert(&var.ge(&Int::from_i64(&ctx, decl.lo)));
            solver.assert(&var.le(&Int::from_i64(&ctx, decl.hi)));
        }
        for assertion in problem.asserts() {
            solver.assert(&lower_formula(&ctx, &consts, &assertion.formula));
        }

        let status = match solver.check() {
            SatResult::Sat => {
                let model = solver
                    .get_model()
                    .ok_or_else(|| BackendError::Failure("sat result without model".into()))?;
                let mut values = Vec::with_capacity(consts.len());
                for var in &consts {
                    let value = model
                        .eval(var, true)
                        .and_then(|v| v.as_i64())
                        .ok_or_else(|| BackendError::Failure("model missing variable".into()))?;
                    values.push(value);
                }
                CheckStatus::Sat(Model::new(values))
            }
            SatResult::Unsat => CheckStatus::Unsat,
            SatResult::Unknown => CheckStatus::Timeout,
        };
        Ok(BackendOutcome {
            status,
            elapsed: started.elapsed(),
        })
    }
}

fn lower_term<'a>(ctx: &'a Context, consts: &[Int<'a>], term: &Term) -> Int<'a> {
    match term {
        Term::Const(k) => Int::from_i64(ctx, *k),
        Term::Var(v) => consts[v.index()].clone(),
        Term::Add(a, b) => Int::add(ctx, &[&lower_term(ctx, consts, a), &lower_term(ctx, consts, b)]),
        Term::Sub(a, b) => Int::sub(ctx, &[&lower_term(ctx, consts, a), &lower_term(ctx, consts, b)]),
        Term::Mul(k, t) => Int::mul(ctx, &[&Int::from_i64(ctx, *k), &lower_term(ctx, consts, t)]),
        Term::Ite(c, a, b) => lower_formula(ctx, consts, c).ite(
            &lower_term(ctx, consts, a),
            &lower_term(ctx, consts, b),
        ),
    }
}

fn lower_formula<'a>(ctx: &'a Context, consts: &[Int<'a>], formula: &Formula) -> Bool<'a> {
    match formula {
        Formula::Lit(b) => Bool::from_bool(ctx, *b),
        Formula::Cmp(op, a, b) => {
            let (a, b) = (lower_term(ctx, consts, a), lower_term(ctx, consts, b));
            match op {
                CmpOp::Le => a.le(&b),
                CmpOp::Lt => a.lt(&b),
                CmpOp::Ge => a.ge(&b),
                CmpOp::Gt => a.gt(&b),
                CmpOp::Eq => a._eq(&b),
                CmpOp::Ne => a._eq(&b).not(),
            }
        }
        Formula::Not(f) => lower_formula(ctx, consts, f).not(),
        Formula::And(fs) => {
            let parts: Vec<Bool> = fs.iter().map(|f| lower_formula(ctx, consts, f)).collect();
            let refs: Vec<&Bool> = parts.iter().collect();
            Bool::and(ctx, &refs)
        }
        Formula::Or(fs) => {
            let parts: Vec<Bool> = fs.iter().map(|f| lower_formula(ctx, consts, f)).collect();
            let refs: Vec<&Bool> = parts.iter().collect();
            Bool::or(ctx, &refs)
        }
        Formula::Implies(p, q) => {
            lower_formula(ctx, consts, p).implies(&lower_formula(ctx, consts, q))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::smt::ast::ConstraintTag;

    #[test]
    fn sat_with_model() {
        let mut p = Problem::new();
        let x = p.int_var("x", 1, 10);
        let y = p.int_var("y", 1, 10);
        p.assert(ConstraintTag::TimeWindow, Term::var(x).add(Term::var(y)).eq(Term::con(7)));
        p.assert(ConstraintTag::TimeWindow, Term::var(x).gt(Term::var(y)));
        let outcome = Z3Backend::default()
            .check(&p, Duration::from_secs(10))
            .unwrap();
        match outcome.status {
            CheckStatus::Sat(model) => {
                assert!(p.satisfied_by(&model));
                assert_eq!(model.value(x) + model.value(y), 7);
                assert!(model.value(x) > model.value(y));
            }
            other => panic!("expected sat, got {other:?}"),
        }
    }

    #[test]
    fn unsat_on_empty_domain() {
        let mut p = Problem::new();
        p.int_var("t", 1, 0);
        let outcome = Z3Backend::default()
            .check(&p, Duration::from_secs(10))
            .unwrap();
        assert_eq!(outcome.status, CheckStatus::Unsat);
    }

    #[test]
    fn zero_deadline_times_out() {
        let p = Problem::new();
        let outcome = Z3Backend::default().check(&p, Duration::ZERO).unwrap();
        assert_eq!(outcome.status, CheckStatus::Timeout);
    }

    #[test]
    fn ite_abs_lowering() {
        let mut p = Problem::new();
        let x = p.int_var("x", -10, 10);
        p.assert(
            ConstraintTag::GateDuration,
            Term::var(x).abs().eq(Term::con(4)),
        );
        p.assert(ConstraintTag::GateDuration, Term::var(x).lt(Term::con(0)));
        let outcome = Z3Backend::default()
            .check(&p, Duration::from_secs(10))
            .unwrap();
        match outcome.status {
            CheckStatus::Sat(model) => assert_eq!(model.value(x), -4),
            other => panic!("expected sat, got {other:?}"),
        }
    }
}
