use std::fmt;

/// Source location of a token or AST node.
///
/// `line` and `column` are 1-based and counted in characters; `length` is the
/// number of characters covered, including any newlines inside the node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Span {
    pub line: u32,
    pub column: u32,
    pub length: u32,
}

impl Span {
    pub const fn new(line: u32, column: u32, length: u32) -> Self {
        Span {
            line,
            column,
            length,
        }
    }

    /// Placeholder span for nodes that were not produced by the parser.
    pub const fn synthetic() -> Self {
        Span::new(0, 0, 0)
    }

    pub fn is_synthetic(&self) -> bool {
        self.line == 0
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

/// Object-language types.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Type {
    Unit,
    Bool,
    Int,
    /// Opaque single-use random value. Only `new_nonce` introduces it.
    Nonce,
    Prod(Box<Type>, Box<Type>),
    Fn(Box<Type>, Box<Type>),
}

impl Type {
    pub fn prod(left: Type, right: Type) -> Type {
        Type::Prod(Box::new(left), Box::new(right))
    }

    pub fn func(arg: Type, ret: Type) -> Type {
        Type::Fn(Box::new(arg), Box::new(ret))
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, prec: u8) -> fmt::Result {
        // 0: arrow position, 1: product operand, 2: right operand of a product
        match self {
            Type::Unit => f.write_str("Unit"),
            Type::Bool => f.write_str("Bool"),
            Type::Int => f.write_str("Int"),
            Type::Nonce => f.write_str("Nonce"),
            Type::Prod(l, r) => {
                if prec >= 2 {
                    f.write_str("(")?;
                }
                l.fmt_prec(f, 1)?;
                f.write_str(" * ")?;
                r.fmt_prec(f, 2)?;
                if prec >= 2 {
                    f.write_str(")")?;
                }
                Ok(())
            }
            Type::Fn(a, r) => {
                if prec >= 1 {
                    f.write_str("(")?;
                }
                a.fmt_prec(f, 1)?;
                f.write_str(" -> ")?;
                r.fmt_prec(f, 0)?;
                if prec >= 1 {
                    f.write_str(")")?;
                }
                Ok(())
            }
        }
    }

    /// Renders the type so that it can appear as a lambda annotation, where
    /// a bare top-level arrow would be ambiguous with the lambda's own arrow.
    pub fn annotation(&self) -> String {
        struct Ann<'a>(&'a Type);
        impl fmt::Display for Ann<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                self.0.fmt_prec(f, 1)
            }
        }
        Ann(self).to_string()
    }
}

impl fmt::Display for Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}

/// Built-in operations. `NewNonce` is the only way to obtain a `Nonce`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PrimOp {
    NewNonce,
    NonceGet,
    Encrypt,
    IntEq,
    IntAdd,
}

impl PrimOp {
    pub const ALL: [PrimOp; 5] = [
        PrimOp::NewNonce,
        PrimOp::NonceGet,
        PrimOp::Encrypt,
        PrimOp::IntEq,
        PrimOp::IntAdd,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PrimOp::NewNonce => "new_nonce",
            PrimOp::NonceGet => "nonce_get",
            PrimOp::Encrypt => "encrypt",
            PrimOp::IntEq => "eq",
            PrimOp::IntAdd => "add",
        }
    }

    pub fn from_name(name: &str) -> Option<PrimOp> {
        PrimOp::ALL.into_iter().find(|p| p.name() == name)
    }

    /// Parameter types and result type.
    pub fn signature(self) -> (&'static [Type], Type) {
        match self {
            PrimOp::NewNonce => (&[Type::Unit], Type::Nonce),
            PrimOp::NonceGet => (&[Type::Nonce], Type::Int),
            PrimOp::Encrypt => (&[Type::Int, Type::Nonce], Type::Int),
            PrimOp::IntEq => (&[Type::Int, Type::Int], Type::Bool),
            PrimOp::IntAdd => (&[Type::Int, Type::Int], Type::Int),
        }
    }

    pub fn arity(self) -> usize {
        self.signature().0.len()
    }
}

impl fmt::Display for PrimOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub kind: TermKind,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TermKind {
    Var(String),
    UnitLit,
    BoolLit(bool),
    IntLit(i64),
    Lambda {
        param: String,
        annot: Type,
        body: Box<Term>,
    },
    App(Box<Term>, Box<Term>),
    Pair(Box<Term>, Box<Term>),
    LetPair {
        first: String,
        second: String,
        bound: Box<Term>,
        body: Box<Term>,
    },
    Let {
        name: String,
        bound: Box<Term>,
        body: Box<Term>,
    },
    If {
        cond: Box<Term>,
        then_branch: Box<Term>,
        else_branch: Box<Term>,
    },
    Seq(Box<Term>, Box<Term>),
    Prim(PrimOp, Vec<Term>),
}

impl Term {
    pub fn new(kind: TermKind, span: Span) -> Self {
        Term { kind, span }
    }

    pub fn synthetic(kind: TermKind) -> Self {
        Term::new(kind, Span::synthetic())
    }

    /// Direct subterms in left-to-right (evaluation) order.
    pub fn children(&self) -> Vec<&Term> {
        match &self.kind {
            TermKind::Var(_) | TermKind::UnitLit | TermKind::BoolLit(_) | TermKind::IntLit(_) => {
                Vec::new()
            }
            TermKind::Lambda { body, .. } => vec![body],
            TermKind::App(a, b) | TermKind::Pair(a, b) | TermKind::Seq(a, b) => vec![a, b],
            TermKind::LetPair { bound, body, .. } | TermKind::Let { bound, body, .. } => {
                vec![bound, body]
            }
            TermKind::If {
                cond,
                then_branch,
                else_branch,
            } => vec![cond, then_branch, else_branch],
            TermKind::Prim(_, args) => args.iter().collect(),
        }
    }

    /// Copy of the term with every span replaced by the synthetic span, so
    /// that two parses can be compared structurally.
    pub fn erase_spans(&self) -> Term {
        let kind = match &self.kind {
            TermKind::Lambda { param, annot, body } => TermKind::Lambda {
                param: param.clone(),
                annot: annot.clone(),
                body: Box::new(body.erase_spans()),
            },
            TermKind::App(a, b) => TermKind::App(Box::new(a.erase_spans()), Box::new(b.erase_spans())),
            TermKind::Pair(a, b) => {
                TermKind::Pair(Box::new(a.erase_spans()), Box::new(b.erase_spans()))
            }
            TermKind::Seq(a, b) => TermKind::Seq(Box::new(a.erase_spans()), Box::new(b.erase_spans())),
            TermKind::LetPair {
                first,
                second,
                bound,
                body,
            } => TermKind::LetPair {
                first: first.clone(),
                second: second.clone(),
                bound: Box::new(bound.erase_spans()),
                body: Box::new(body.erase_spans()),
            },
            TermKind::Let { name, bound, body } => TermKind::Let {
                name: name.clone(),
                bound: Box::new(bound.erase_spans()),
                body: Box::new(body.erase_spans()),
            },
            TermKind::If {
                cond,
                then_branch,
                else_branch,
            } => TermKind::If {
                cond: Box::new(cond.erase_spans()),
                then_branch: Box::new(then_branch.erase_spans()),
                else_branch: Box::new(else_branch.erase_spans()),
            },
            TermKind::Prim(op, args) => TermKind::Prim(*op, args.iter().map(Term::erase_spans).collect()),
            other => other.clone(),
        };
        Term::synthetic(kind)
    }

    /// Free variables in order of first textual occurrence.
    pub fn free_vars(&self) -> Vec<(String, Span)> {
        let mut out: Vec<(String, Span)> = Vec::new();
        let mut bound: Vec<&str> = Vec::new();
        collect_free(self, &mut bound, &mut out);
        out
    }

    /// Maximum nesting depth of the tree (a leaf has depth 1).
    pub fn depth(&self) -> usize {
        1 + self.children().into_iter().map(Term::depth).max().unwrap_or(0)
    }
}

fn collect_free<'a>(term: &'a Term, bound: &mut Vec<&'a str>, out: &mut Vec<(String, Span)>) {
    match &term.kind {
        TermKind::Var(name) => {
            if !bound.contains(&name.as_str()) && !out.iter().any(|(n, _)| n == name) {
                out.push((name.clone(), term.span));
            }
        }
        TermKind::Lambda { param, body, .. } => {
            bound.push(param);
            collect_free(body, bound, out);
            bound.pop();
        }
        TermKind::Let { name, bound: b, body } => {
            collect_free(b, bound, out);
            bound.push(name);
            collect_free(body, bound, out);
            bound.pop();
        }
        TermKind::LetPair {
            first,
            second,
            bound: b,
            body,
        } => {
            collect_free(b, bound, out);
            bound.push(first);
            bound.push(second);
            collect_free(body, bound, out);
            bound.pop();
            bound.pop();
        }
        _ => {
            for child in term.children() {
                collect_free(child, bound, out);
            }
        }
    }
}
