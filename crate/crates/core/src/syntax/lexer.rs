use std::fmt;

use super::ast::Span;
use super::SyntaxError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TokenKind {
    Let,
    In,
    If,
    Then,
    Else,
    Fun,
    True,
    False,
    /// Lower-case identifier. Primitive names are lexed as identifiers and
    /// recognised by the parser.
    Ident(String),
    /// Capitalised word; only the four base type names are meaningful.
    TypeName(String),
    Int(i64),
    LParen,
    RParen,
    Comma,
    Semi,
    Colon,
    Arrow,
    Star,
    Eq,
}

impl fmt::Display for TokenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TokenKind::Let => f.write_str("`let`"),
            TokenKind::In => f.write_str("`in`"),
            TokenKind::If => f.write_str("`if`"),
            TokenKind::Then => f.write_str("`then`"),
            TokenKind::Else => f.write_str("`else`"),
            TokenKind::Fun => f.write_str("`fun`"),
            TokenKind::True => f.write_str("`true`"),
            TokenKind::False => f.write_str("`false`"),
            TokenKind::Ident(name) => write!(f, "identifier `{name}`"),
            TokenKind::TypeName(name) => write!(f, "type `{name}`"),
            TokenKind::Int(value) => write!(f, "integer `{value}`"),
            TokenKind::LParen => f.write_str("`(`"),
            TokenKind::RParen => f.write_str("`)`"),
            TokenKind::Comma => f.write_str("`,`"),
            TokenKind::Semi => f.write_str("`;`"),
            TokenKind::Colon => f.write_str("`:`"),
            TokenKind::Arrow => f.write_str("`->`"),
            TokenKind::Star => f.write_str("`*`"),
            TokenKind::Eq => f.write_str("`=`"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub span: Span,
    /// Character offset of the first character.
    pub offset: usize,
}

fn keyword(word: &str) -> Option<TokenKind> {
    Some(match word {
        "let" => TokenKind::Let,
        "in" => TokenKind::In,
        "if" => TokenKind::If,
        "then" => TokenKind::Then,
        "else" => TokenKind::Else,
        "fun" => TokenKind::Fun,
        "true" => TokenKind::True,
        "false" => TokenKind::False,
        _ => return None,
    })
}

fn is_word_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

struct Cursor<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: u32,
    column: u32,
    offset: usize,
}

impl Cursor<'_> {
    fn peek(&mut self) -> Option<char> {
        self.chars.peek().copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        self.offset += 1;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn take_while(&mut self, pred: impl Fn(char) -> bool) -> String {
        let mut s = String::new();
        while let Some(c) = self.peek() {
            if !pred(c) {
                break;
            }
            s.push(c);
            self.bump();
        }
        s
    }
}

/// Splits LinLang source into tokens. `#` starts a comment running to the end
/// of the line.
pub fn tokenize(source: &str) -> Result<Vec<Token>, SyntaxError> {
    let mut cur = Cursor {
        chars: source.chars().peekable(),
        line: 1,
        column: 1,
        offset: 0,
    };
    let mut tokens = Vec::new();

    while let Some(c) = cur.peek() {
        let (line, column, offset) = (cur.line, cur.column, cur.offset);
        let single = |kind| Token {
            kind,
            span: Span::new(line, column, 1),
            offset,
        };
        match c {
            ' ' | '\t' | '\r' | '\n' => {
                cur.bump();
            }
            '#' => {
                cur.take_while(|c| c != '\n');
            }
            '(' | ')' | ',' | ';' | ':' | '*' | '=' => {
                cur.bump();
                tokens.push(single(match c {
                    '(' => TokenKind::LParen,
                    ')' => TokenKind::RParen,
                    ',' => TokenKind::Comma,
                    ';' => TokenKind::Semi,
                    ':' => TokenKind::Colon,
                    '*' => TokenKind::Star,
                    _ => TokenKind::Eq,
                }));
            }
            '-' => {
                cur.bump();
                match cur.peek() {
                    Some('>') => {
                        cur.bump();
                        tokens.push(Token {
                            kind: TokenKind::Arrow,
                            span: Span::new(line, column, 2),
                            offset,
                        });
                    }
                    Some(d) if d.is_ascii_digit() => {
                        let digits = cur.take_while(|c| c.is_ascii_digit());
                        tokens.push(int_token(&format!("-{digits}"), line, column, offset)?);
                    }
                    _ => {
                        return Err(SyntaxError::Lex {
                            span: Span::new(line, column, 1),
                            message: "unexpected character `-`".into(),
                        })
                    }
                }
            }
            '0'..='9' => {
                let digits = cur.take_while(|c| c.is_ascii_digit());
                tokens.push(int_token(&digits, line, column, offset)?);
            }
            'a'..='z' => {
                let word = cur.take_while(is_word_char);
                let span = Span::new(line, column, word.chars().count() as u32);
                let kind = keyword(&word).unwrap_or(TokenKind::Ident(word));
                tokens.push(Token { kind, span, offset });
            }
            'A'..='Z' => {
                let word = cur.take_while(is_word_char);
                let span = Span::new(line, column, word.chars().count() as u32);
                tokens.push(Token {
                    kind: TokenKind::TypeName(word),
                    span,
                    offset,
                });
            }
            other => {
                return Err(SyntaxError::Lex {
                    span: Span::new(line, column, 1),
                    message: format!("unexpected character `{}`", other.escape_debug()),
                })
            }
        }
    }
    Ok(tokens)
}

fn int_token(text: &str, line: u32, column: u32, offset: usize) -> Result<Token, SyntaxError> {
    let span = Span::new(line, column, text.chars().count() as u32);
    match text.parse::<i64>() {
        Ok(value) => Ok(Token {
            kind: TokenKind::Int(value),
            span,
            offset,
        }),
        Err(_) => Err(SyntaxError::Lex {
            span,
            message: format!("integer literal `{text}` does not fit in 64 bits"),
        }),
    }
}
