use super::diagnostic::{Diagnostic, DiagnosticCode};
use super::mode::{rules_for, Mode};
use crate::syntax::{Span, Type};

/// One `x : T` entry of the typing context, with its usage so far.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Binding {
    pub name: String,
    pub ty: Type,
    /// Position in introduction order over the whole run.
    pub intro_index: u32,
    pub use_count: u32,
    /// Set on first use in modes without contraction.
    pub consumed: bool,
    /// Where the binding was introduced.
    pub span: Span,
    /// Where it was consumed, for "value moved here" notes.
    pub consumed_at: Option<Span>,
    /// The bound expression failed to check; uses are silently accepted so
    /// one error is not reported over and over.
    pub(crate) poisoned: bool,
}

impl Binding {
    pub fn new(name: impl Into<String>, ty: Type, intro_index: u32, span: Span) -> Self {
        Binding {
            name: name.into(),
            ty,
            intro_index,
            use_count: 0,
            consumed: false,
            span,
            consumed_at: None,
            poisoned: false,
        }
    }

    pub(crate) fn poisoned(name: impl Into<String>, intro_index: u32, span: Span) -> Self {
        Binding {
            poisoned: true,
            ..Binding::new(name, Type::Unit, intro_index, span)
        }
    }

    /// Unit values carry no information, so unit bindings may be dropped in
    /// every mode and do not take part in ordering.
    fn is_trivial(&self) -> bool {
        self.ty == Type::Unit
    }

    fn is_live(&self) -> bool {
        !self.consumed && !self.poisoned && !self.is_trivial()
    }
}

/// Ordered sequence of bindings; names are distinct and `intro_index`
/// strictly increases from left to right.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Context {
    bindings: Vec<Binding>,
}

impl Context {
    pub fn new() -> Self {
        Self::default()
    }

    /// Appends a binding. Panics if the name is already present or the
    /// introduction order would be violated; the parser rules out both.
    pub fn push(&mut self, binding: Binding) {
        assert!(
            self.get(&binding.name).is_none(),
            "duplicate binding `{}`",
            binding.name
        );
        if let Some(last) = self.bindings.last() {
            assert!(last.intro_index < binding.intro_index, "intro order violated");
        }
        self.bindings.push(binding);
    }

    pub fn get(&self, name: &str) -> Option<&Binding> {
        self.bindings.iter().find(|b| b.name == name)
    }

    fn get_mut(&mut self, name: &str) -> Option<&mut Binding> {
        self.bindings.iter_mut().find(|b| b.name == name)
    }

    pub fn remove(&mut self, name: &str) -> Option<Binding> {
        let idx = self.bindings.iter().position(|b| b.name == name)?;
        Some(self.bindings.remove(idx))
    }

    pub fn bindings(&self) -> &[Binding] {
        &self.bindings
    }

    pub fn len(&self) -> usize {
        self.bindings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bindings.is_empty()
    }
}

/// Result of a variable use inside the checker: the type is still known when
/// the use itself was illegal, so checking can continue.
#[derive(Debug)]
pub(crate) struct UseOutcome {
    pub ty: Option<Type>,
    pub diagnostic: Option<Diagnostic>,
}

pub(crate) fn use_binding(ctx: &mut Context, name: &str, mode: Mode, use_span: Span) -> UseOutcome {
    let rules = rules_for(mode);
    let Some(binding) = ctx.get(name) else {
        return UseOutcome {
            ty: None,
            diagnostic: Some(Diagnostic::new(
                DiagnosticCode::UnboundVariable,
                use_span,
                mode,
                format!("cannot find value `{name}` in this scope"),
            )),
        };
    };
    if binding.poisoned {
        return UseOutcome {
            ty: None,
            diagnostic: None,
        };
    }
    let ty = Some(binding.ty.clone());

    if !rules.contraction && binding.consumed {
        // Recovery: the binding is left as it was.
        let mut diag = Diagnostic::new(
            DiagnosticCode::UseAfterConsume,
            use_span,
            mode,
            format!("value used here after move: `{name}` was already consumed"),
        );
        if let Some(at) = binding.consumed_at {
            diag = diag.with_note(at, format!("`{name}` moved here"));
        }
        return UseOutcome {
            ty,
            diagnostic: Some(diag),
        };
    }

    let mut diagnostic = None;
    if !rules.exchange && !binding.is_trivial() {
        let index = binding.intro_index;
        if let Some(older) = ctx
            .bindings
            .iter()
            .find(|b| b.intro_index < index && b.is_live())
        {
            diagnostic = Some(
                Diagnostic::new(
                    DiagnosticCode::OutOfOrderUse,
                    use_span,
                    mode,
                    format!(
                        "`{name}` used before `{}`, which was introduced earlier and is still unused",
                        older.name
                    ),
                )
                .with_note(older.span, format!("`{}` introduced here", older.name)),
            );
        }
    }

    let binding = ctx.get_mut(name).expect("looked up above");
    binding.use_count += 1;
    if !rules.contraction {
        binding.consumed = true;
        binding.consumed_at = Some(use_span);
    }
    UseOutcome { ty, diagnostic }
}

/// Records one use of `name`.
///
/// With contraction the use count grows and the binding stays live. Without
/// it the binding is consumed and any later use is `UseAfterConsume`. When
/// exchange is withheld the used binding must also be the oldest live one.
pub fn use_variable(ctx: &mut Context, name: &str, mode: Mode, use_span: Span) -> Result<Type, Diagnostic> {
    let outcome = use_binding(ctx, name, mode, use_span);
    match (outcome.diagnostic, outcome.ty) {
        (Some(diag), _) => Err(diag),
        (None, Some(ty)) => Ok(ty),
        (None, None) => Err(Diagnostic::new(
            DiagnosticCode::TypeMismatch,
            use_span,
            mode,
            format!("`{name}` has no type because its definition failed to check"),
        )),
    }
}

/// Scope-exit discipline for a binding that has just gone out of scope.
pub fn exit_scope(binding: &Binding, mode: Mode) -> Result<(), Diagnostic> {
    let rules = rules_for(mode);
    if rules.weakening || binding.use_count > 0 || binding.poisoned || binding.is_trivial() {
        return Ok(());
    }
    let (code, requirement) = match mode {
        Mode::Relevant => (DiagnosticCode::UnusedRelevant, "at least once"),
        Mode::Ordered => (DiagnosticCode::UnusedLinear, "exactly once, in order"),
        _ => (DiagnosticCode::UnusedLinear, "exactly once"),
    };
    Err(Diagnostic::new(
        code,
        binding.span,
        mode,
        format!(
            "`{}` is never used; {mode} bindings must be used {requirement}",
            binding.name
        ),
    ))
}

/// Merges the contexts left by the two arms of a conditional. The merged
/// context is produced even when the arms disagree.
pub(crate) fn merge_branches(
    then_ctx: Context,
    else_ctx: Context,
    mode: Mode,
    span: Span,
) -> (Context, Option<Diagnostic>) {
    let rules = rules_for(mode);
    debug_assert_eq!(then_ctx.len(), else_ctx.len());
    let mut only_then = Vec::new();
    let mut only_else = Vec::new();
    let mut merged = Context::new();
    for (t, e) in then_ctx.bindings.into_iter().zip(else_ctx.bindings) {
        debug_assert_eq!(t.name, e.name);
        if t.consumed != e.consumed && !t.poisoned {
            if t.consumed {
                only_then.push(t.name.clone());
            } else {
                only_else.push(t.name.clone());
            }
        }
        merged.bindings.push(Binding {
            use_count: t.use_count.max(e.use_count),
            consumed: t.consumed || e.consumed,
            consumed_at: t.consumed_at.or(e.consumed_at),
            ..t
        });
    }

    if rules.weakening || (only_then.is_empty() && only_else.is_empty()) {
        return (merged, None);
    }
    let list = |names: &[String]| {
        names
            .iter()
            .map(|n| format!("`{n}`"))
            .collect::<Vec<_>>()
            .join(", ")
    };
    let mut parts = Vec::new();
    if !only_then.is_empty() {
        parts.push(format!("{} consumed only in the then-branch", list(&only_then)));
    }
    if !only_else.is_empty() {
        parts.push(format!("{} consumed only in the else-branch", list(&only_else)));
    }
    let diag = Diagnostic::new(
        DiagnosticCode::BranchUseMismatch,
        span,
        mode,
        format!("branches consume different bindings: {}", parts.join("; ")),
    );
    (merged, Some(diag))
}

/// Joins the contexts of a conditional's two arms, both descended from the
/// same pre-branch context. Without weakening the arms must consume exactly
/// the same bindings.
pub fn check_branches(
    then_ctx: Context,
    else_ctx: Context,
    mode: Mode,
    span: Span,
) -> Result<Context, Diagnostic> {
    match merge_branches(then_ctx, else_ctx, mode, span) {
        (ctx, None) => Ok(ctx),
        (_, Some(diag)) => Err(diag),
    }
}
