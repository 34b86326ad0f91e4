//! Call-by-value evaluation with a nonce use ledger.
//!
//! Evaluation is strictly left to right. `nonce_get` and `encrypt` are the
//! consuming primitives; every time one receives a nonce the ledger entry for
//! that nonce goes up by one. A program that respects single use leaves every
//! entry at 0 or 1.

mod nonce;
mod value;

use std::rc::Rc;

use thiserror::Error;

pub use nonce::{fresh_nonce, NonceSource, NonceSourceKind};
pub use value::{Env, Value};

use crate::syntax::{PrimOp, Span, Term, TermKind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RuntimeError {
    #[error("{span}: cannot apply a {found} value")]
    NotAFunction { span: Span, found: &'static str },
    #[error("{span}: unbound variable `{name}`")]
    Unbound { span: Span, name: String },
    #[error("{span}: `{op}` expected {expected}, got a {found}")]
    BadOperand {
        span: Span,
        op: String,
        expected: &'static str,
        found: &'static str,
    },
    #[error("system entropy unavailable: {0}")]
    EntropyUnavailable(String),
}

/// Consumption count per nonce, indexed by creation ordinal.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct UseLedger {
    counts: Vec<u32>,
}

impl UseLedger {
    fn created(&mut self, id: u64) {
        debug_assert_eq!(id as usize, self.counts.len());
        self.counts.push(0);
    }

    fn consumed(&mut self, id: u64) {
        self.counts[id as usize] += 1;
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    pub fn count(&self, id: u64) -> Option<u32> {
        self.counts.get(id as usize).copied()
    }

    pub fn max_count(&self) -> u32 {
        self.counts.iter().copied().max().unwrap_or(0)
    }

    /// Ids of nonces consumed more than once.
    pub fn reused(&self) -> Vec<u64> {
        (0..self.counts.len() as u64)
            .filter(|&id| self.counts[id as usize] > 1)
            .collect()
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }
}

/// Evaluates a program. Callers are expected to have checked it first.
pub fn eval(term: &Term, source: NonceSource) -> Result<Value, RuntimeError> {
    eval_instrumented(term, source).map(|(value, _)| value)
}

/// Evaluates any parsed program, well-typed or not, and reports how often
/// each nonce was consumed.
pub fn eval_instrumented(term: &Term, source: NonceSource) -> Result<(Value, UseLedger), RuntimeError> {
    let mut evaluator = Evaluator {
        source,
        ledger: UseLedger::default(),
    };
    let value = evaluator.eval(&Env::default(), term)?;
    Ok((value, evaluator.ledger))
}

struct Evaluator {
    source: NonceSource,
    ledger: UseLedger,
}

impl Evaluator {
    fn eval(&mut self, env: &Env, term: &Term) -> Result<Value, RuntimeError> {
        match &term.kind {
            TermKind::Var(name) => env.lookup(name).cloned().ok_or_else(|| RuntimeError::Unbound {
                span: term.span,
                name: name.clone(),
            }),
            TermKind::UnitLit => Ok(Value::Unit),
            TermKind::BoolLit(b) => Ok(Value::Bool(*b)),
            TermKind::IntLit(n) => Ok(Value::Int(*n)),
            TermKind::Lambda { param, body, .. } => Ok(Value::Closure {
                param: param.clone(),
                body: Rc::new((**body).clone()),
                env: env.clone(),
            }),
            TermKind::App(func, arg) => {
                let f = self.eval(env, func)?;
                let a = self.eval(env, arg)?;
                match f {
                    Value::Closure {
                        param,
                        body,
                        env: closure_env,
                    } => self.eval(&closure_env.extend(&param, a), &body),
                    other => Err(RuntimeError::NotAFunction {
                        span: func.span,
                        found: other.kind_name(),
                    }),
                }
            }
            TermKind::Pair(a, b) => {
                let a = self.eval(env, a)?;
                let b = self.eval(env, b)?;
                Ok(Value::Pair(Box::new(a), Box::new(b)))
            }
            TermKind::Let { name, bound, body } => {
                let v = self.eval(env, bound)?;
                self.eval(&env.extend(name, v), body)
            }
            TermKind::LetPair {
                first,
                second,
                bound,
                body,
            } => match self.eval(env, bound)? {
                Value::Pair(a, b) => self.eval(&env.extend(first, *a).extend(second, *b), body),
                other => Err(RuntimeError::BadOperand {
                    span: bound.span,
                    op: "let".into(),
                    expected: "a pair",
                    found: other.kind_name(),
                }),
            },
            TermKind::If {
                cond,
                then_branch,
                else_branch,
            } => match self.eval(env, cond)? {
                Value::Bool(true) => self.eval(env, then_branch),
                Value::Bool(false) => self.eval(env, else_branch),
                other => Err(RuntimeError::BadOperand {
                    span: cond.span,
                    op: "if".into(),
                    expected: "a bool",
                    found: other.kind_name(),
                }),
            },
            TermKind::Seq(first, second) => {
                self.eval(env, first)?;
                self.eval(env, second)
            }
            TermKind::Prim(op, args) => {
                let values = args
                    .iter()
                    .map(|a| self.eval(env, a))
                    .collect::<Result<Vec<_>, _>>()?;
                self.prim(*op, term.span, values)
            }
        }
    }

    fn prim(&mut self, op: PrimOp, span: Span, args: Vec<Value>) -> Result<Value, RuntimeError> {
        let bad = |expected, found: &Value| RuntimeError::BadOperand {
            span,
            op: op.name().into(),
            expected,
            found: found.kind_name(),
        };
        match (op, args.as_slice()) {
            (PrimOp::NewNonce, [Value::Unit]) => {
                let nonce = fresh_nonce(&mut self.source)?;
                if let Value::Nonce { id, .. } = nonce {
                    self.ledger.created(id);
                }
                Ok(nonce)
            }
            (PrimOp::NonceGet, [Value::Nonce { id, payload }]) => {
                self.ledger.consumed(*id);
                Ok(Value::Int(low_bits(*payload)))
            }
            (PrimOp::Encrypt, [Value::Int(message), Value::Nonce { id, payload }]) => {
                self.ledger.consumed(*id);
                Ok(Value::Int(message ^ low_bits(*payload)))
            }
            (PrimOp::IntEq, [Value::Int(a), Value::Int(b)]) => Ok(Value::Bool(a == b)),
            (PrimOp::IntAdd, [Value::Int(a), Value::Int(b)]) => Ok(Value::Int(a.wrapping_add(*b))),
            (_, values) => {
                let (params, _) = op.signature();
                let expected = match params.len() {
                    1 => "1 operand of the right kind",
                    _ => "2 operands of the right kinds",
                };
                Err(bad(expected, values.first().unwrap_or(&Value::Unit)))
            }
        }
    }
}

/// Low 64 bits of a payload, reinterpreted as a signed integer.
fn low_bits(payload: u128) -> i64 {
    payload as u64 as i64
}
