use super::ast::{PrimOp, Span, Term, TermKind, Type};
use super::lexer::{Token, TokenKind};
use super::SyntaxError;

/// Nesting bound that keeps recursive descent (and every later recursive
/// pass over the tree) well inside the default thread stack.
pub const MAX_NESTING: usize = 200;

/// Parses a token sequence produced by [`tokenize`](super::tokenize).
pub fn parse(tokens: &[Token]) -> Result<Term, SyntaxError> {
    let mut parser = Parser {
        tokens,
        pos: 0,
        scope: Vec::new(),
        depth: 0,
    };
    let term = parser.expr()?;
    if let Some(tok) = parser.peek() {
        return Err(parser.unexpected(tok, &["end of input", "`;`"]));
    }
    Ok(term)
}

struct Parser<'a> {
    tokens: &'a [Token],
    pos: usize,
    /// Names bound by enclosing `let`, `let (..)` and `fun` forms.
    scope: Vec<String>,
    depth: usize,
}

/// Start and end (exclusive) of a node, in characters plus line/column.
#[derive(Clone, Copy)]
struct Mark {
    line: u32,
    column: u32,
    offset: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&'a Token> {
        self.tokens.get(self.pos)
    }

    fn peek_kind(&self) -> Option<&'a TokenKind> {
        self.peek().map(|t| &t.kind)
    }

    fn advance(&mut self) -> Option<&'a Token> {
        let tok = self.tokens.get(self.pos)?;
        self.pos += 1;
        Some(tok)
    }

    fn start(&self) -> Mark {
        match self.peek() {
            Some(tok) => Mark {
                line: tok.span.line,
                column: tok.span.column,
                offset: tok.offset,
            },
            None => self.eof_mark(),
        }
    }

    fn eof_mark(&self) -> Mark {
        match self.tokens.last() {
            Some(last) => Mark {
                line: last.span.line,
                column: last.span.column + last.span.length,
                offset: last.offset + last.span.length as usize,
            },
            None => Mark {
                line: 1,
                column: 1,
                offset: 0,
            },
        }
    }

    /// Span from `start` to the end of the most recently consumed token.
    fn span_from(&self, start: Mark) -> Span {
        let end = match self.pos.checked_sub(1).and_then(|i| self.tokens.get(i)) {
            Some(last) => last.offset + last.span.length as usize,
            None => start.offset + 1,
        };
        Span::new(start.line, start.column, (end - start.offset).max(1) as u32)
    }

    fn eof_span(&self) -> Span {
        let m = self.eof_mark();
        Span::new(m.line, m.column, 1)
    }

    fn unexpected(&self, tok: &Token, expected: &[&str]) -> SyntaxError {
        SyntaxError::Parse {
            span: tok.span,
            message: format!("expected {}, found {}", describe(expected), tok.kind),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        }
    }

    fn error_here(&self, expected: &[&str]) -> SyntaxError {
        match self.peek() {
            Some(tok) => self.unexpected(tok, expected),
            None => SyntaxError::Parse {
                span: self.eof_span(),
                message: format!("expected {}, found end of input", describe(expected)),
                expected: expected.iter().map(|s| s.to_string()).collect(),
            },
        }
    }

    fn expect(&mut self, kind: TokenKind, name: &str) -> Result<&'a Token, SyntaxError> {
        match self.peek() {
            Some(tok) if tok.kind == kind => {
                self.pos += 1;
                Ok(tok)
            }
            _ => Err(self.error_here(&[name])),
        }
    }

    fn enter(&mut self) -> Result<(), SyntaxError> {
        self.depth += 1;
        if self.depth > MAX_NESTING {
            let span = self.peek().map(|t| t.span).unwrap_or_else(|| self.eof_span());
            return Err(SyntaxError::Parse {
                span,
                message: format!("expression nests deeper than {MAX_NESTING} levels"),
                expected: Vec::new(),
            });
        }
        Ok(())
    }

    /// Reads a binder name, rejecting primitive names and shadowing.
    fn binder(&mut self) -> Result<(String, Span), SyntaxError> {
        let tok = match self.peek() {
            Some(tok @ Token {
                kind: TokenKind::Ident(_),
                ..
            }) => tok,
            _ => return Err(self.error_here(&["identifier"])),
        };
        self.pos += 1;
        let TokenKind::Ident(name) = &tok.kind else {
            unreachable!()
        };
        if PrimOp::from_name(name).is_some() {
            return Err(SyntaxError::Parse {
                span: tok.span,
                message: format!("`{name}` is a primitive and cannot be rebound"),
                expected: vec!["identifier".into()],
            });
        }
        if self.scope.iter().any(|n| n == name) {
            return Err(SyntaxError::Parse {
                span: tok.span,
                message: format!("shadowing not permitted: `{name}` is already bound"),
                expected: Vec::new(),
            });
        }
        Ok((name.clone(), tok.span))
    }

    fn expr(&mut self) -> Result<Term, SyntaxError> {
        self.enter()?;
        let result = self.expr_inner();
        self.depth -= 1;
        result
    }

    fn expr_inner(&mut self) -> Result<Term, SyntaxError> {
        let start = self.start();
        match self.peek_kind() {
            Some(TokenKind::Let) => {
                self.advance();
                if self.peek_kind() == Some(&TokenKind::LParen) {
                    return self.let_pair(start);
                }
                let (name, _) = self.binder()?;
                self.expect(TokenKind::Eq, "`=`")?;
                let bound = self.expr()?;
                self.expect(TokenKind::In, "`in`")?;
                self.scope.push(name.clone());
                let body = self.expr();
                self.scope.pop();
                let body = body?;
                Ok(Term::new(
                    TermKind::Let {
                        name,
                        bound: Box::new(bound),
                        body: Box::new(body),
                    },
                    self.span_from(start),
                ))
            }
            Some(TokenKind::Fun) => {
                self.advance();
                let (param, _) = self.binder()?;
                self.expect(TokenKind::Colon, "`:`")?;
                let annot = self.product_type()?;
                self.expect(TokenKind::Arrow, "`->`")?;
                self.scope.push(param.clone());
                let body = self.expr();
                self.scope.pop();
                let body = body?;
                Ok(Term::new(
                    TermKind::Lambda {
                        param,
                        annot,
                        body: Box::new(body),
                    },
                    self.span_from(start),
                ))
            }
            Some(TokenKind::If) => {
                self.advance();
                let cond = self.expr()?;
                self.expect(TokenKind::Then, "`then`")?;
                let then_branch = self.expr()?;
                self.expect(TokenKind::Else, "`else`")?;
                let else_branch = self.expr()?;
                Ok(Term::new(
                    TermKind::If {
                        cond: Box::new(cond),
                        then_branch: Box::new(then_branch),
                        else_branch: Box::new(else_branch),
                    },
                    self.span_from(start),
                ))
            }
            _ => self.seq(),
        }
    }

    fn let_pair(&mut self, start: Mark) -> Result<Term, SyntaxError> {
        self.expect(TokenKind::LParen, "`(`")?;
        let (first, _) = self.binder()?;
        self.expect(TokenKind::Comma, "`,`")?;
        let (second, second_span) = self.binder()?;
        if first == second {
            return Err(SyntaxError::Parse {
                span: second_span,
                message: format!("shadowing not permitted: `{second}` is bound twice in the same pattern"),
                expected: Vec::new(),
            });
        }
        self.expect(TokenKind::RParen, "`)`")?;
        self.expect(TokenKind::Eq, "`=`")?;
        let bound = self.expr()?;
        self.expect(TokenKind::In, "`in`")?;
        self.scope.push(first.clone());
        self.scope.push(second.clone());
        let body = self.expr();
        self.scope.truncate(self.scope.len() - 2);
        let body = body?;
        Ok(Term::new(
            TermKind::LetPair {
                first,
                second,
                bound: Box::new(bound),
                body: Box::new(body),
            },
            self.span_from(start),
        ))
    }

    fn seq(&mut self) -> Result<Term, SyntaxError> {
        let start = self.start();
        let saved = self.depth;
        let mut acc = self.app()?;
        while self.peek_kind() == Some(&TokenKind::Semi) {
            self.advance();
            self.enter()?;
            let next = self.app()?;
            acc = Term::new(TermKind::Seq(Box::new(acc), Box::new(next)), self.span_from(start));
        }
        self.depth = saved;
        Ok(acc)
    }

    fn starts_atom(&self) -> bool {
        matches!(
            self.peek_kind(),
            Some(
                TokenKind::Ident(_)
                    | TokenKind::Int(_)
                    | TokenKind::True
                    | TokenKind::False
                    | TokenKind::LParen
            )
        )
    }

    fn app(&mut self) -> Result<Term, SyntaxError> {
        let start = self.start();
        let saved = self.depth;
        let mut acc = self.atom()?;
        while self.starts_atom() {
            self.enter()?;
            let arg = self.atom()?;
            acc = Term::new(TermKind::App(Box::new(acc), Box::new(arg)), self.span_from(start));
        }
        self.depth = saved;
        Ok(acc)
    }

    fn atom(&mut self) -> Result<Term, SyntaxError> {
        self.enter()?;
        let result = self.atom_inner();
        self.depth -= 1;
        result
    }

    fn atom_inner(&mut self) -> Result<Term, SyntaxError> {
        let start = self.start();
        let Some(tok) = self.peek() else {
            return Err(self.error_here(&["expression"]));
        };
        match &tok.kind {
            TokenKind::Ident(name) => {
                self.advance();
                match PrimOp::from_name(name) {
                    Some(op) => self.prim_call(op, start),
                    None => Ok(Term::new(TermKind::Var(name.clone()), tok.span)),
                }
            }
            TokenKind::Int(value) => {
                self.advance();
                Ok(Term::new(TermKind::IntLit(*value), tok.span))
            }
            TokenKind::True | TokenKind::False => {
                self.advance();
                Ok(Term::new(
                    TermKind::BoolLit(tok.kind == TokenKind::True),
                    tok.span,
                ))
            }
            TokenKind::LParen => {
                self.advance();
                if self.peek_kind() == Some(&TokenKind::RParen) {
                    self.advance();
                    return Ok(Term::new(TermKind::UnitLit, self.span_from(start)));
                }
                let first = self.expr()?;
                match self.peek_kind() {
                    Some(TokenKind::Comma) => {
                        self.advance();
                        let second = self.expr()?;
                        self.expect(TokenKind::RParen, "`)`")?;
                        Ok(Term::new(
                            TermKind::Pair(Box::new(first), Box::new(second)),
                            self.span_from(start),
                        ))
                    }
                    Some(TokenKind::RParen) => {
                        self.advance();
                        Ok(first)
                    }
                    _ => Err(self.error_here(&["`,`", "`)`"])),
                }
            }
            _ => Err(self.unexpected(
                tok,
                &["identifier", "integer", "`true`", "`false`", "`(`", "`let`", "`fun`", "`if`"],
            )),
        }
    }

    fn prim_call(&mut self, op: PrimOp, start: Mark) -> Result<Term, SyntaxError> {
        let open = self.start();
        self.expect(TokenKind::LParen, "`(`")?;
        let mut args = Vec::new();
        if self.peek_kind() == Some(&TokenKind::RParen) {
            self.advance();
            // `new_nonce()` is sugar for `new_nonce(())`.
            if op == PrimOp::NewNonce {
                args.push(Term::new(TermKind::UnitLit, self.span_from(open)));
            }
        } else {
            loop {
                args.push(self.expr()?);
                match self.peek_kind() {
                    Some(TokenKind::Comma) => {
                        self.advance();
                    }
                    Some(TokenKind::RParen) => {
                        self.advance();
                        break;
                    }
                    _ => return Err(self.error_here(&["`,`", "`)`"])),
                }
            }
        }
        Ok(Term::new(TermKind::Prim(op, args), self.span_from(start)))
    }

    /// `type := prod ["->" type]`, arrows associating to the right.
    fn full_type(&mut self) -> Result<Type, SyntaxError> {
        self.enter()?;
        let result = (|| {
            let arg = self.product_type()?;
            if self.peek_kind() == Some(&TokenKind::Arrow) {
                self.advance();
                let ret = self.full_type()?;
                return Ok(Type::func(arg, ret));
            }
            Ok(arg)
        })();
        self.depth -= 1;
        result
    }

    /// `prod := base {"*" base}`, left-associative. Lambda annotations use
    /// this level so that the lambda's own `->` is never read as part of the
    /// parameter type; function-typed parameters need parentheses.
    fn product_type(&mut self) -> Result<Type, SyntaxError> {
        let saved = self.depth;
        let mut acc = self.base_type()?;
        while self.peek_kind() == Some(&TokenKind::Star) {
            self.advance();
            self.enter()?;
            let right = self.base_type()?;
            acc = Type::prod(acc, right);
        }
        self.depth = saved;
        Ok(acc)
    }

    fn base_type(&mut self) -> Result<Type, SyntaxError> {
        const EXPECTED: &[&str] = &["`Unit`", "`Bool`", "`Int`", "`Nonce`", "`(`"];
        let Some(tok) = self.peek() else {
            return Err(self.error_here(EXPECTED));
        };
        match &tok.kind {
            TokenKind::TypeName(name) => {
                let ty = match name.as_str() {
                    "Unit" => Type::Unit,
                    "Bool" => Type::Bool,
                    "Int" => Type::Int,
                    "Nonce" => Type::Nonce,
                    _ => {
                        return Err(SyntaxError::Parse {
                            span: tok.span,
                            message: format!("unknown type `{name}`"),
                            expected: EXPECTED.iter().map(|s| s.to_string()).collect(),
                        })
                    }
                };
                self.advance();
                Ok(ty)
            }
            TokenKind::LParen => {
                self.advance();
                let ty = self.full_type()?;
                self.expect(TokenKind::RParen, "`)`")?;
                Ok(ty)
            }
            _ => Err(self.unexpected(tok, EXPECTED)),
        }
    }
}

fn describe(expected: &[&str]) -> String {
    match expected {
        [] => "something else".into(),
        [one] => (*one).into(),
        many => format!("one of {}", many.join(", ")),
    }
}
