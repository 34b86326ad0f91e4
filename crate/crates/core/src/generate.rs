//! Random LinLang programs for property testing and benchmarking.
//!
//! Programs are generated type-directed, so most are well typed. Each program
//! draws its own sloppiness knobs: how often a leaf reuses a variable that was
//! already used, how often an unused binding is left unconsumed, and how often
//! a leaf is deliberately ill-typed or unbound. With all knobs at zero the
//! generator tries to use every binding exactly once, which gives the
//! stricter modes a useful share of accepted programs.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::syntax::{PrimOp, Term, TermKind, Type};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenConfig {
    /// Nesting budget for generated forms.
    pub max_depth: usize,
    /// Chance that a leaf reuses an already-used variable.
    pub reuse: f64,
    /// Chance that an unused binding is left unconsumed at scope exit.
    pub drop: f64,
    /// Chance that a leaf is ill-typed or names an unbound variable.
    pub ill_typed: f64,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            max_depth: 6,
            reuse: 0.0,
            drop: 0.0,
            ill_typed: 0.0,
        }
    }
}

impl GenConfig {
    /// Knobs drawn at random; about a third of programs are fully disciplined.
    pub fn sample(rng: &mut impl Rng, max_depth: usize) -> Self {
        let knob = |rng: &mut dyn rand::RngCore| match rng.gen_range(0..3) {
            0 => 0.0,
            1 => 0.1,
            _ => 0.4,
        };
        GenConfig {
            max_depth,
            reuse: knob(rng),
            drop: knob(rng),
            ill_typed: if rng.gen_bool(0.8) { 0.0 } else { 0.05 },
        }
    }
}

struct Var {
    name: String,
    ty: Type,
    uses: u32,
}

pub struct Generator {
    rng: StdRng,
    config: GenConfig,
    scope: Vec<Var>,
    next_name: u32,
}

/// One program of type `Int` from `seed` whose syntax tree is at least 3
/// and at most `max_depth` levels deep (`max_depth` must be at least 3).
/// Knobs are drawn from the seed.
pub fn generate_program(seed: u64, max_depth: usize) -> Term {
    assert!(max_depth >= 3, "max_depth must be at least 3");
    let mut rng = StdRng::seed_from_u64(seed);
    loop {
        let budget = rng.gen_range(2..=max_depth.min(5));
        let config = GenConfig::sample(&mut rng, budget);
        let inner = StdRng::seed_from_u64(rng.gen());
        let term = Generator::with_rng(inner, config).program();
        if (3..=max_depth).contains(&term.depth()) {
            return term;
        }
    }
}

/// A program of the shape `let x = e1 in let y = e2 in body` together with
/// the same program with the two bindings swapped. Neither bound expression
/// mentions `x` or `y`. `max_depth` bounds the syntax tree of both programs.
pub fn generate_exchange_pair(seed: u64, max_depth: usize) -> (Term, Term) {
    assert!(max_depth >= 4, "max_depth must be at least 4");
    let mut rng = StdRng::seed_from_u64(seed);
    loop {
        let budget = rng.gen_range(1..=max_depth.min(4));
        let config = GenConfig::sample(&mut rng, budget);
        let inner = StdRng::seed_from_u64(rng.gen());
        let (a, b) = Generator::with_rng(inner, config).exchange_pair();
        if a.depth() <= max_depth && b.depth() <= max_depth {
            return (a, b);
        }
    }
}

impl Generator {
    pub fn new(seed: u64, config: GenConfig) -> Self {
        Generator::with_rng(StdRng::seed_from_u64(seed), config)
    }

    fn with_rng(rng: StdRng, config: GenConfig) -> Self {
        Generator {
            rng,
            config,
            scope: Vec::new(),
            next_name: 0,
        }
    }

    pub fn program(&mut self) -> Term {
        self.expr(&Type::Int, self.config.max_depth)
    }

    pub fn exchange_pair(&mut self) -> (Term, Term) {
        let depth = self.config.max_depth;
        // Optional outer binding the two swapped expressions may share.
        let outer = if self.rng.gen_bool(0.3) {
            let ty = self.binding_type();
            let bound = self.expr(&ty, 1);
            let name = self.fresh();
            self.scope.push(Var {
                name: name.clone(),
                ty,
                uses: 0,
            });
            Some((name, bound))
        } else {
            None
        };

        let x_ty = self.binding_type();
        let y_ty = self.binding_type();
        let e1 = self.expr(&x_ty, depth);
        let e2 = self.expr(&y_ty, depth);
        let x = self.fresh();
        let y = self.fresh();
        self.scope.push(Var {
            name: x.clone(),
            ty: x_ty,
            uses: 0,
        });
        self.scope.push(Var {
            name: y.clone(),
            ty: y_ty,
            uses: 0,
        });
        let body = self.expr(&Type::Int, depth);
        let body = self.consume_unused(body, &Type::Int, 2);
        self.scope.pop();
        self.scope.pop();

        let let_ = |name: &str, bound: &Term, body: Term| {
            Term::synthetic(TermKind::Let {
                name: name.to_string(),
                bound: Box::new(bound.clone()),
                body: Box::new(body),
            })
        };
        let mut original = let_(&x, &e1, let_(&y, &e2, body.clone()));
        let mut swapped = let_(&y, &e2, let_(&x, &e1, body));
        if let Some((name, bound)) = outer {
            let var = self.scope.pop().expect("outer binding");
            let consumer = (var.uses == 0).then(|| {
                self.eliminate(Term::synthetic(TermKind::Var(name.clone())), &var.ty)
            });
            let wrap = |t: Term| {
                let t = match &consumer {
                    Some(c) => prim(PrimOp::IntAdd, vec![t, c.clone()]),
                    None => t,
                };
                let_(&name, &bound, t)
            };
            original = wrap(original);
            swapped = wrap(swapped);
        }
        (original, swapped)
    }

    fn fresh(&mut self) -> String {
        let n = self.next_name;
        self.next_name += 1;
        format!("v{n}")
    }

    fn binding_type(&mut self) -> Type {
        match self.rng.gen_range(0..10) {
            0 | 1 => Type::Int,
            2 => Type::Bool,
            3 | 4 => Type::Nonce,
            5 => Type::Unit,
            6 => Type::prod(Type::Int, Type::Nonce),
            7 => Type::func(Type::Int, Type::Int),
            8 => Type::func(Type::Unit, Type::Int),
            _ => Type::func(Type::Nonce, Type::Int),
        }
    }

    fn expr(&mut self, ty: &Type, depth: usize) -> Term {
        if depth == 0 || (depth < self.config.max_depth && self.rng.gen_bool(0.25)) {
            return self.leaf(ty);
        }
        let d = depth - 1;
        let scoped = matches!(ty, Type::Int | Type::Bool);
        match self.rng.gen_range(0..10) {
            0 | 1 if scoped => self.let_form(ty, d),
            2 if scoped => self.let_pair_form(ty, d),
            3 => {
                let cond = self.expr(&Type::Bool, d);
                let before: Vec<u32> = self.scope.iter().map(|v| v.uses).collect();
                let then_branch = self.expr(ty, d);
                let after_then: Vec<u32> = self.scope.iter().map(|v| v.uses).collect();
                for (v, u) in self.scope.iter_mut().zip(&before) {
                    v.uses = *u;
                }
                let else_branch = self.expr(ty, d);
                for (v, u) in self.scope.iter_mut().zip(&after_then) {
                    v.uses = v.uses.max(*u);
                }
                Term::synthetic(TermKind::If {
                    cond: Box::new(cond),
                    then_branch: Box::new(then_branch),
                    else_branch: Box::new(else_branch),
                })
            }
            4 if self.rng.gen_bool(0.3) => {
                let first = self.expr(&Type::Unit, d);
                let second = self.expr(ty, d);
                Term::synthetic(TermKind::Seq(Box::new(first), Box::new(second)))
            }
            5 => {
                // application of a freshly built or in-scope function
                let arg_ty = match self.rng.gen_range(0..3) {
                    0 => Type::Int,
                    1 => Type::Nonce,
                    _ => Type::Unit,
                };
                let func = self.expr(&Type::func(arg_ty.clone(), ty.clone()), d);
                let arg = self.expr(&arg_ty, d);
                Term::synthetic(TermKind::App(Box::new(func), Box::new(arg)))
            }
            _ => self.intro(ty, d),
        }
    }

    /// A form that builds a value of `ty` from smaller parts.
    fn intro(&mut self, ty: &Type, d: usize) -> Term {
        match ty {
            Type::Int => match self.rng.gen_range(0..3) {
                0 => {
                    let a = self.expr(&Type::Int, d);
                    let b = self.expr(&Type::Int, d);
                    prim(PrimOp::IntAdd, vec![a, b])
                }
                1 => {
                    let n = self.expr(&Type::Nonce, d);
                    prim(PrimOp::NonceGet, vec![n])
                }
                _ => {
                    let m = self.expr(&Type::Int, d);
                    let n = self.expr(&Type::Nonce, d);
                    prim(PrimOp::Encrypt, vec![m, n])
                }
            },
            Type::Bool => {
                let a = self.expr(&Type::Int, d);
                let b = self.expr(&Type::Int, d);
                prim(PrimOp::IntEq, vec![a, b])
            }
            Type::Nonce => prim(PrimOp::NewNonce, vec![Term::synthetic(TermKind::UnitLit)]),
            Type::Unit => Term::synthetic(TermKind::UnitLit),
            Type::Prod(a, b) => {
                let a = self.expr(a, d);
                let b = self.expr(b, d);
                Term::synthetic(TermKind::Pair(Box::new(a), Box::new(b)))
            }
            Type::Fn(arg, ret) => {
                let param = self.fresh();
                self.scope.push(Var {
                    name: param.clone(),
                    ty: (**arg).clone(),
                    uses: 0,
                });
                let body = self.expr(ret, d);
                let body = self.consume_unused(body, ret, 1);
                self.scope.pop();
                Term::synthetic(TermKind::Lambda {
                    param,
                    annot: (**arg).clone(),
                    body: Box::new(body),
                })
            }
        }
    }

    fn let_form(&mut self, ty: &Type, d: usize) -> Term {
        let bound_ty = self.binding_type();
        let bound = self.expr(&bound_ty, d);
        let name = self.fresh();
        self.scope.push(Var {
            name: name.clone(),
            ty: bound_ty.clone(),
            uses: 0,
        });
        let body = if *ty == Type::Int && self.rng.gen_bool(self.config.reuse) {
            // deliberate double use
            self.scope.last_mut().expect("just pushed").uses += 2;
            let var = Term::synthetic(TermKind::Var(name.clone()));
            let first = self.eliminate(var.clone(), &bound_ty);
            let second = self.eliminate(var, &bound_ty);
            prim(PrimOp::IntAdd, vec![first, second])
        } else {
            let body = self.expr(ty, d);
            self.consume_unused(body, ty, 1)
        };
        self.scope.pop();
        Term::synthetic(TermKind::Let {
            name,
            bound: Box::new(bound),
            body: Box::new(body),
        })
    }

    fn let_pair_form(&mut self, ty: &Type, d: usize) -> Term {
        let (a, b) = (self.binding_type(), self.binding_type());
        let bound = self.expr(&Type::prod(a.clone(), b.clone()), d);
        let first = self.fresh();
        let second = self.fresh();
        self.scope.push(Var {
            name: first.clone(),
            ty: a,
            uses: 0,
        });
        self.scope.push(Var {
            name: second.clone(),
            ty: b,
            uses: 0,
        });
        let body = self.expr(ty, d);
        let body = self.consume_unused(body, ty, 2);
        self.scope.pop();
        self.scope.pop();
        Term::synthetic(TermKind::LetPair {
            first,
            second,
            bound: Box::new(bound),
            body: Box::new(body),
        })
    }

    /// Wraps `body` so that still-unused variables among the innermost
    /// `count` scope entries get consumed, unless the drop knob fires.
    fn consume_unused(&mut self, mut body: Term, ty: &Type, count: usize) -> Term {
        if !matches!(ty, Type::Int | Type::Bool) {
            return body;
        }
        let start = self.scope.len() - count;
        for i in start..self.scope.len() {
            if self.scope[i].uses > 0 || self.rng.gen_bool(self.config.drop) {
                continue;
            }
            let var_ty = self.scope[i].ty.clone();
            if var_ty == Type::Unit && self.rng.gen_bool(0.5) {
                continue;
            }
            self.scope[i].uses += 1;
            let var = Term::synthetic(TermKind::Var(self.scope[i].name.clone()));
            let consumer = self.eliminate(var, &var_ty);
            body = match ty {
                Type::Int => prim(PrimOp::IntAdd, vec![consumer, body]),
                Type::Bool => prim(
                    PrimOp::IntEq,
                    vec![
                        consumer,
                        Term::synthetic(TermKind::If {
                            cond: Box::new(body),
                            then_branch: Box::new(int(1)),
                            else_branch: Box::new(int(0)),
                        }),
                    ],
                ),
                _ => unreachable!("scoped forms produce Int or Bool"),
            };
        }
        body
    }

    /// An `Int`-typed expression that consumes `term` exactly once.
    fn eliminate(&mut self, term: Term, ty: &Type) -> Term {
        match ty {
            Type::Int => term,
            Type::Bool => Term::synthetic(TermKind::If {
                cond: Box::new(term),
                then_branch: Box::new(int(1)),
                else_branch: Box::new(int(0)),
            }),
            Type::Nonce => prim(PrimOp::NonceGet, vec![term]),
            Type::Unit => Term::synthetic(TermKind::Seq(Box::new(term), Box::new(int(0)))),
            Type::Prod(a, b) => {
                let p = self.fresh();
                let q = self.fresh();
                let ea = self.eliminate(Term::synthetic(TermKind::Var(p.clone())), a);
                let eb = self.eliminate(Term::synthetic(TermKind::Var(q.clone())), b);
                Term::synthetic(TermKind::LetPair {
                    first: p,
                    second: q,
                    bound: Box::new(term),
                    body: Box::new(prim(PrimOp::IntAdd, vec![ea, eb])),
                })
            }
            Type::Fn(arg, ret) => {
                let arg = self.closed_value(arg);
                let applied = Term::synthetic(TermKind::App(Box::new(term), Box::new(arg)));
                self.eliminate(applied, ret)
            }
        }
    }

    fn closed_value(&mut self, ty: &Type) -> Term {
        match ty {
            Type::Int => int(self.rng.gen_range(-3..10)),
            Type::Bool => Term::synthetic(TermKind::BoolLit(self.rng.gen())),
            Type::Unit => Term::synthetic(TermKind::UnitLit),
            Type::Nonce => prim(PrimOp::NewNonce, vec![Term::synthetic(TermKind::UnitLit)]),
            Type::Prod(a, b) => {
                let a = self.closed_value(a);
                let b = self.closed_value(b);
                Term::synthetic(TermKind::Pair(Box::new(a), Box::new(b)))
            }
            Type::Fn(arg, ret) => {
                let param = self.fresh();
                let body = self.closed_value(ret);
                let var = Term::synthetic(TermKind::Var(param.clone()));
                let consumed = self.eliminate(var, arg);
                let body = match **ret {
                    Type::Int => prim(PrimOp::IntAdd, vec![consumed, body]),
                    // the parameter is dropped; only disciplined for Unit
                    _ => body,
                };
                Term::synthetic(TermKind::Lambda {
                    param,
                    annot: (**arg).clone(),
                    body: Box::new(body),
                })
            }
        }
    }

    fn leaf(&mut self, ty: &Type) -> Term {
        if self.config.ill_typed > 0.0 && self.rng.gen_bool(self.config.ill_typed) {
            return match self.rng.gen_range(0..3) {
                0 => Term::synthetic(TermKind::Var("unbound".into())),
                1 if *ty != Type::Int => int(0),
                _ => Term::synthetic(TermKind::BoolLit(true)),
            };
        }
        let candidates: Vec<usize> = (0..self.scope.len()).filter(|&i| self.scope[i].ty == *ty).collect();
        let unused: Vec<usize> = candidates.iter().copied().filter(|&i| self.scope[i].uses == 0).collect();
        let pick = if !unused.is_empty() && !self.rng.gen_bool(0.15) {
            Some(unused[self.rng.gen_range(0..unused.len())])
        } else if !candidates.is_empty() && self.rng.gen_bool(self.config.reuse) {
            Some(candidates[self.rng.gen_range(0..candidates.len())])
        } else {
            None
        };
        if let Some(i) = pick {
            self.scope[i].uses += 1;
            return Term::synthetic(TermKind::Var(self.scope[i].name.clone()));
        }
        // Consume a variable of another type where an Int is wanted; used
        // variables are only picked when the reuse knob fires.
        if *ty == Type::Int {
            let reuse = self.rng.gen_bool(self.config.reuse);
            let others: Vec<usize> = (0..self.scope.len())
                .filter(|&i| reuse || self.scope[i].uses == 0)
                .collect();
            if !others.is_empty() && self.rng.gen_bool(0.6) {
                let i = others[self.rng.gen_range(0..others.len())];
                self.scope[i].uses += 1;
                let var = Term::synthetic(TermKind::Var(self.scope[i].name.clone()));
                let var_ty = self.scope[i].ty.clone();
                return self.eliminate(var, &var_ty);
            }
        }
        self.closed_value(ty)
    }
}

fn prim(op: PrimOp, args: Vec<Term>) -> Term {
    Term::synthetic(TermKind::Prim(op, args))
}

fn int(n: i64) -> Term {
    Term::synthetic(TermKind::IntLit(n))
}
