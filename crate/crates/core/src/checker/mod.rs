//! Mode-parameterised substructural type checking.
//!
//! The checker threads a single [`Context`] through the program in
//! evaluation order instead of splitting it nondeterministically between
//! subterms. Each binding records how often it has been used, and the mode's
//! [`StructuralRuleSet`] decides what is legal:
//!
//! * without contraction a use consumes the binding, and a second use is
//!   `UseAfterConsume`;
//! * without weakening a binding still unused at the end of its scope is
//!   `UnusedLinear` / `UnusedRelevant`;
//! * without exchange the used binding must be the oldest live one
//!   (`OutOfOrderUse`).
//!
//! A lambda consumes its free variables where it is created. Conditionals
//! must consume the same bindings in both arms unless weakening is admitted.

mod context;
mod diagnostic;
mod mode;

pub use context::{check_branches, exit_scope, use_variable, Binding, Context};
pub use diagnostic::{Diagnostic, DiagnosticCode, Note};
pub use mode::{rules_for, Mode, StructuralRuleSet, UnknownMode};

use crate::syntax::{PrimOp, Span, Term, TermKind, Type};
use context::{merge_branches, use_binding};

/// Full result of a checking run, including every binding as it looked when
/// its scope closed.
#[derive(Debug, Clone)]
pub struct CheckReport {
    pub outcome: Result<Type, Vec<Diagnostic>>,
    pub bindings: Vec<Binding>,
}

/// Checks a closed program under `mode`. On failure every diagnostic found is
/// returned, in the order encountered.
pub fn check_program(term: &Term, mode: Mode) -> Result<Type, Vec<Diagnostic>> {
    check_program_traced(term, mode).outcome
}

pub fn check_program_traced(term: &Term, mode: Mode) -> CheckReport {
    let mut checker = Checker {
        mode,
        next_index: 0,
        diagnostics: Vec::new(),
        exited: Vec::new(),
    };
    let mut ctx = Context::new();
    let ty = checker.check(&mut ctx, term);
    debug_assert!(ctx.is_empty());
    let outcome = match (ty, checker.diagnostics.is_empty()) {
        (Some(ty), true) => Ok(ty),
        (_, false) => Err(checker.diagnostics),
        (None, true) => unreachable!("a failed check always reports"),
    };
    CheckReport {
        outcome,
        bindings: checker.exited,
    }
}

/// Checks a lambda node in `ctx`: its free variables are consumed at the
/// creation site and its body is checked against a fresh context holding
/// those captures plus the parameter.
pub fn check_lambda_capture(ctx: &mut Context, lambda: &Term, mode: Mode) -> Result<Type, Vec<Diagnostic>> {
    let mut checker = Checker {
        mode,
        next_index: ctx.bindings().last().map_or(0, |b| b.intro_index + 1),
        diagnostics: Vec::new(),
        exited: Vec::new(),
    };
    let ty = checker.check(ctx, lambda);
    match (ty, checker.diagnostics.is_empty()) {
        (Some(ty), true) => Ok(ty),
        _ => Err(checker.diagnostics),
    }
}

struct Checker {
    mode: Mode,
    next_index: u32,
    diagnostics: Vec<Diagnostic>,
    exited: Vec<Binding>,
}

impl Checker {
    fn fresh_index(&mut self) -> u32 {
        let i = self.next_index;
        self.next_index += 1;
        i
    }

    fn report(&mut self, diag: Diagnostic) {
        self.diagnostics.push(diag);
    }

    fn mismatch(&mut self, span: Span, expected: &Type, found: &Type) {
        self.report(Diagnostic::new(
            DiagnosticCode::TypeMismatch,
            span,
            self.mode,
            format!("mismatched types: expected `{expected}`, found `{found}`"),
        ));
    }

    /// Reports a mismatch unless `found` is unknown or equal to `expected`.
    fn expect(&mut self, span: Span, expected: &Type, found: &Option<Type>) {
        if let Some(found) = found {
            if found != expected {
                self.mismatch(span, expected, found);
            }
        }
    }

    fn bind(&mut self, ctx: &mut Context, name: &str, ty: Option<Type>, span: Span) {
        let index = self.fresh_index();
        ctx.push(match ty {
            Some(ty) => Binding::new(name, ty, index, span),
            None => Binding::poisoned(name, index, span),
        });
    }

    fn unbind(&mut self, ctx: &mut Context, name: &str) {
        let binding = ctx.remove(name).expect("binding pushed by this scope");
        if let Err(diag) = exit_scope(&binding, self.mode) {
            self.report(diag);
        }
        self.exited.push(binding);
    }

    fn use_var(&mut self, ctx: &mut Context, name: &str, span: Span) -> Option<Type> {
        let outcome = use_binding(ctx, name, self.mode, span);
        if let Some(diag) = outcome.diagnostic {
            self.report(diag);
        }
        outcome.ty
    }

    /// Returns `None` when the term's type is unknown because of an error
    /// that has already been reported.
    fn check(&mut self, ctx: &mut Context, term: &Term) -> Option<Type> {
        match &term.kind {
            TermKind::Var(name) => self.use_var(ctx, name, term.span),
            TermKind::UnitLit => Some(Type::Unit),
            TermKind::BoolLit(_) => Some(Type::Bool),
            TermKind::IntLit(_) => Some(Type::Int),
            TermKind::Lambda { param, annot, body } => self.lambda(ctx, term, param, annot, body),
            TermKind::App(func, arg) => {
                let func_ty = self.check(ctx, func);
                let arg_ty = self.check(ctx, arg);
                match func_ty? {
                    Type::Fn(param, ret) => {
                        self.expect(arg.span, &param, &arg_ty);
                        Some(*ret)
                    }
                    other => {
                        self.report(Diagnostic::new(
                            DiagnosticCode::TypeMismatch,
                            func.span,
                            self.mode,
                            format!("expected a function, found `{other}`"),
                        ));
                        None
                    }
                }
            }
            TermKind::Pair(first, second) => {
                let a = self.check(ctx, first);
                let b = self.check(ctx, second);
                Some(Type::prod(a?, b?))
            }
            TermKind::Let { name, bound, body } => {
                let bound_ty = self.check(ctx, bound);
                self.bind(ctx, name, bound_ty, term.span);
                let body_ty = self.check(ctx, body);
                self.unbind(ctx, name);
                body_ty
            }
            TermKind::LetPair {
                first,
                second,
                bound,
                body,
            } => {
                let (first_ty, second_ty) = match self.check(ctx, bound) {
                    Some(Type::Prod(a, b)) => (Some(*a), Some(*b)),
                    Some(other) => {
                        self.report(Diagnostic::new(
                            DiagnosticCode::TypeMismatch,
                            bound.span,
                            self.mode,
                            format!("expected a pair, found `{other}`"),
                        ));
                        (None, None)
                    }
                    None => (None, None),
                };
                self.bind(ctx, first, first_ty, term.span);
                self.bind(ctx, second, second_ty, term.span);
                let body_ty = self.check(ctx, body);
                self.unbind(ctx, first);
                self.unbind(ctx, second);
                body_ty
            }
            TermKind::If {
                cond,
                then_branch,
                else_branch,
            } => {
                let cond_ty = self.check(ctx, cond);
                self.expect(cond.span, &Type::Bool, &cond_ty);
                let mut else_ctx = ctx.clone();
                let then_ty = self.check(ctx, then_branch);
                let else_ty = self.check(&mut else_ctx, else_branch);
                let then_ctx = std::mem::take(ctx);
                let (merged, diag) = merge_branches(then_ctx, else_ctx, self.mode, term.span);
                *ctx = merged;
                if let Some(diag) = diag {
                    self.report(diag);
                }
                match (then_ty, else_ty) {
                    (Some(t), Some(e)) if t != e => {
                        self.report(Diagnostic::new(
                            DiagnosticCode::TypeMismatch,
                            else_branch.span,
                            self.mode,
                            format!("`if` arms have different types: then-branch is `{t}`, else-branch is `{e}`"),
                        ));
                        Some(t)
                    }
                    (Some(t), Some(_)) => Some(t),
                    _ => None,
                }
            }
            TermKind::Seq(first, second) => {
                let first_ty = self.check(ctx, first);
                self.expect(first.span, &Type::Unit, &first_ty);
                self.check(ctx, second)
            }
            TermKind::Prim(op, args) => self.prim(ctx, term.span, *op, args),
        }
    }

    fn prim(&mut self, ctx: &mut Context, span: Span, op: PrimOp, args: &[Term]) -> Option<Type> {
        let arg_tys: Vec<Option<Type>> = args.iter().map(|a| self.check(ctx, a)).collect();
        let (params, ret) = op.signature();
        if params.len() != args.len() {
            let plural = if params.len() == 1 { "" } else { "s" };
            self.report(Diagnostic::new(
                DiagnosticCode::ArityError,
                span,
                self.mode,
                format!(
                    "`{op}` takes {} argument{plural} but {} {} supplied",
                    params.len(),
                    args.len(),
                    if args.len() == 1 { "was" } else { "were" }
                ),
            ));
            return Some(ret);
        }
        for ((arg, ty), param) in args.iter().zip(&arg_tys).zip(params) {
            self.expect(arg.span, param, ty);
        }
        Some(ret)
    }

    fn lambda(&mut self, ctx: &mut Context, term: &Term, param: &str, annot: &Type, body: &Term) -> Option<Type> {
        // Captures move out of the enclosing context all at once, oldest first.
        let mut captures: Vec<(String, Span, Option<u32>)> = term
            .free_vars()
            .into_iter()
            .map(|(name, span)| {
                let index = ctx.get(&name).map(|b| b.intro_index);
                (name, span, index)
            })
            .collect();
        captures.sort_by_key(|(_, _, index)| index.unwrap_or(u32::MAX));

        let mut inner = Context::new();
        let mut unbound = Vec::new();
        for (name, span, index) in &captures {
            let ty = self.use_var(ctx, name, *span);
            match (index, ty) {
                (Some(index), Some(ty)) => {
                    let outer = ctx.get(name).expect("resolved above");
                    inner.push(Binding::new(name.clone(), ty, *index, outer.span));
                }
                (Some(index), None) => inner.push(Binding::poisoned(name.clone(), *index, *span)),
                (None, _) => unbound.push((name.clone(), *span)),
            }
        }
        for (name, span) in unbound {
            let index = self.fresh_index();
            inner.push(Binding::poisoned(name, index, span));
        }

        self.bind(&mut inner, param, Some(annot.clone()), term.span);
        let body_ty = self.check(&mut inner, body);
        self.unbind(&mut inner, param);
        let names: Vec<String> = inner.bindings().iter().map(|b| b.name.clone()).collect();
        for name in names {
            self.unbind(&mut inner, &name);
        }
        Some(Type::func(annot.clone(), body_ty?))
    }
}
