//! Naive simply-typed checker used as an independent reference for the
//! unrestricted mode. It keeps a plain name -> type environment and never
//! looks at how often or in which order variables are used.

#![allow(dead_code)]

use std::collections::HashMap;

use slc_core::{PrimOp, Term, TermKind, Type};

pub fn simply_typed(term: &Term) -> Option<Type> {
    infer(&mut HashMap::new(), term)
}

fn infer(env: &mut HashMap<String, Type>, term: &Term) -> Option<Type> {
    match &term.kind {
        TermKind::Var(name) => env.get(name).cloned(),
        TermKind::UnitLit => Some(Type::Unit),
        TermKind::BoolLit(_) => Some(Type::Bool),
        TermKind::IntLit(_) => Some(Type::Int),
        TermKind::Lambda { param, annot, body } => {
            let ret = scoped(env, &[(param, annot.clone())], body)?;
            Some(Type::Fn(Box::new(annot.clone()), Box::new(ret)))
        }
        TermKind::App(f, a) => {
            let tf = infer(env, f);
            let ta = infer(env, a);
            match (tf?, ta?) {
                (Type::Fn(p, r), ta) if *p == ta => Some(*r),
                _ => None,
            }
        }
        TermKind::Pair(a, b) => {
            let ta = infer(env, a);
            let tb = infer(env, b);
            Some(Type::Prod(Box::new(ta?), Box::new(tb?)))
        }
        TermKind::Let { name, bound, body } => {
            let tb = infer(env, bound)?;
            scoped(env, &[(name, tb)], body)
        }
        TermKind::LetPair {
            first,
            second,
            bound,
            body,
        } => match infer(env, bound)? {
            Type::Prod(a, b) => scoped(env, &[(first, *a), (second, *b)], body),
            _ => None,
        },
        TermKind::If {
            cond,
            then_branch,
            else_branch,
        } => {
            let c = infer(env, cond)?;
            let t = infer(env, then_branch)?;
            let e = infer(env, else_branch)?;
            (c == Type::Bool && t == e).then_some(t)
        }
        TermKind::Seq(a, b) => {
            let ta = infer(env, a)?;
            let tb = infer(env, b)?;
            (ta == Type::Unit).then_some(tb)
        }
        TermKind::Prim(op, args) => {
            let tys: Option<Vec<Type>> = args.iter().map(|a| infer(env, a)).collect();
            let tys = tys?;
            let (params, ret) = match op {
                PrimOp::NewNonce => (vec![Type::Unit], Type::Nonce),
                PrimOp::NonceGet => (vec![Type::Nonce], Type::Int),
                PrimOp::Encrypt => (vec![Type::Int, Type::Nonce], Type::Int),
                PrimOp::IntEq => (vec![Type::Int, Type::Int], Type::Bool),
                PrimOp::IntAdd => (vec![Type::Int, Type::Int], Type::Int),
            };
            (tys == params).then_some(ret)
        }
    }
}

fn scoped(env: &mut HashMap<String, Type>, binds: &[(&String, Type)], body: &Term) -> Option<Type> {
    let saved: Vec<_> = binds.iter().map(|(n, _)| ((*n).clone(), env.get(*n).cloned())).collect();
    for (n, t) in binds {
        env.insert((*n).clone(), t.clone());
    }
    let result = infer(env, body);
    for (n, old) in saved {
        match old {
            Some(t) => env.insert(n, t),
            None => env.remove(&n),
        };
    }
    result
}
