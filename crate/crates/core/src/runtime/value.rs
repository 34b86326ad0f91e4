use std::fmt;
use std::rc::Rc;

use crate::syntax::Term;

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Unit,
    Bool(bool),
    Int(i64),
    /// `id` is the creation ordinal within the run.
    Nonce { id: u64, payload: u128 },
    Pair(Box<Value>, Box<Value>),
    Closure {
        param: String,
        body: Rc<Term>,
        env: Env,
    },
}

impl Value {
    pub fn kind_name(&self) -> &'static str {
        match self {
            Value::Unit => "unit",
            Value::Bool(_) => "bool",
            Value::Int(_) => "int",
            Value::Nonce { .. } => "nonce",
            Value::Pair(..) => "pair",
            Value::Closure { .. } => "closure",
        }
    }
}

/// Nonce payloads are never printed.
impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Unit => f.write_str("()"),
            Value::Bool(b) => write!(f, "{b}"),
            Value::Int(n) => write!(f, "{n}"),
            Value::Nonce { id, .. } => write!(f, "<nonce #{id}>"),
            Value::Pair(a, b) => write!(f, "({a}, {b})"),
            Value::Closure { .. } => f.write_str("<fun>"),
        }
    }
}

/// Persistent environment; closures share their defining environment.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Env(Option<Rc<EnvNode>>);

#[derive(Debug, PartialEq)]
struct EnvNode {
    name: String,
    value: Value,
    next: Env,
}

impl Env {
    pub fn extend(&self, name: &str, value: Value) -> Env {
        Env(Some(Rc::new(EnvNode {
            name: name.to_string(),
            value,
            next: self.clone(),
        })))
    }

    pub fn lookup(&self, name: &str) -> Option<&Value> {
        let mut cur = self.0.as_deref();
        while let Some(node) = cur {
            if node.name == name {
                return Some(&node.value);
            }
            cur = node.next.0.as_deref();
        }
        None
    }
}
