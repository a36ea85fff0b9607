//! Text format for pearl-necklace encoders.
//!
//! ```text
//! # Example: two commuting strings
//! qubits 3
//! CNOT(1,2)(1) CNOT(1,3)(D)
//! CNOT(2,3)(D^-2)
//! ```
//!
//! Tokens are separated by whitespace or newlines, `#` starts a line comment.
//! The optional `qubits` header sets the frame width; without it the width is
//! the largest qubit index used. A delay is `1` (degree 0), `D` (degree 1) or
//! `D^k` for any signed integer `k`.

use std::fmt;

use thiserror::Error;

use crate::encoder::{GateString, ModelError, PearlNecklace, Qubit};

/// Input text together with the label used in diagnostics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SourceText {
    pub content: String,
    pub name: String,
}

impl SourceText {
    pub fn new(name: impl Into<String>, content: impl Into<String>) -> Self {
        Self {
            content: content.into(),
            name: name.into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Position {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{name}:{pos}: syntax error: expected {expected}, found {found}")]
    Syntax {
        name: String,
        pos: Position,
        expected: &'static str,
        found: String,
    },
    #[error("{name}:{pos}: gate `{gate}` is not supported; see non-CSS extension")]
    Unsupported {
        name: String,
        pos: Position,
        gate: String,
    },
    #[error("{name}:{pos}: {source}")]
    Semantic {
        name: String,
        pos: Position,
        #[source]
        source: ModelError,
    },
}

impl ParseError {
    pub fn position(&self) -> Position {
        match self {
            ParseError::Syntax { pos, .. }
            | ParseError::Unsupported { pos, .. }
            | ParseError::Semantic { pos, .. } => *pos,
        }
    }
}

const RESERVED_GATES: &[&str] = &["H", "P", "CPHASE"];

#[derive(Debug, Clone, PartialEq, Eq)]
enum TokenKind {
    Word(String),
    Int(String),
    LParen,
    RParen,
    Comma,
    Caret,
    Unknown(char),
    Eof,
}

impl fmt::Display for TokenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TokenKind::Word(w) => write!(f, "`{w}`"),
            TokenKind::Int(i) => write!(f, "`{i}`"),
            TokenKind::LParen => f.write_str("`(`"),
            TokenKind::RParen => f.write_str("`)`"),
            TokenKind::Comma => f.write_str("`,`"),
            TokenKind::Caret => f.write_str("`^`"),
            TokenKind::Unknown(c) => write!(f, "`{c}`"),
            TokenKind::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Debug, Clone)]
struct Token {
    kind: TokenKind,
    pos: Position,
}

fn tokenize(content: &str) -> Vec<Token> {
    let mut tokens = Vec::new();
    let mut chars = content.chars().peekable();
    let (mut line, mut column) = (1, 1);

    while let Some(&c) = chars.peek() {
        let pos = Position { line, column };
        if c == '\n' {
            chars.next();
            line += 1;
            column = 1;
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            column += 1;
            continue;
        }
        if c == '#' {
            while let Some(&c) = chars.peek() {
                if c == '\n' {
                    break;
                }
                chars.next();
            }
            continue;
        }

        let kind = if c.is_ascii_alphabetic() || c == '_' {
            let mut word = String::new();
            while let Some(&c) = chars.peek() {
                if !(c.is_ascii_alphanumeric() || c == '_') {
                    break;
                }
                word.push(c);
                chars.next();
            }
            TokenKind::Word(word)
        } else if c.is_ascii_digit() || c == '-' || c == '+' {
            let mut num = String::new();
            num.push(c);
            chars.next();
            while let Some(&c) = chars.peek() {
                if !c.is_ascii_digit() {
                    break;
                }
                num.push(c);
                chars.next();
            }
            TokenKind::Int(num)
        } else {
            chars.next();
            match c {
                '(' => TokenKind::LParen,
                ')' => TokenKind::RParen,
                ',' => TokenKind::Comma,
                '^' => TokenKind::Caret,
                other => TokenKind::Unknown(other),
            }
        };
        let width = match &kind {
            TokenKind::Word(s) | TokenKind::Int(s) => s.chars().count(),
            _ => 1,
        };
        column += width;
        tokens.push(Token { kind, pos });
    }

    tokens.push(Token {
        kind: TokenKind::Eof,
        pos: Position { line, column },
    });
    tokens
}

struct Parser<'a> {
    name: &'a str,
    tokens: Vec<Token>,
    cursor: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Token {
        &self.tokens[self.cursor]
    }

    fn bump(&mut self) -> Token {
        let tok = self.tokens[self.cursor].clone();
        if tok.kind != TokenKind::Eof {
            self.cursor += 1;
        }
        tok
    }

    fn syntax(&self, tok: &Token, expected: &'static str) -> ParseError {
        ParseError::Syntax {
            name: self.name.to_string(),
            pos: tok.pos,
            expected,
            found: tok.kind.to_string(),
        }
    }

    fn expect(&mut self, kind: TokenKind, expected: &'static str) -> Result<(), ParseError> {
        let tok = self.bump();
        if tok.kind == kind {
            Ok(())
        } else {
            Err(self.syntax(&tok, expected))
        }
    }

    /// Parses an integer token with optional sign.
    fn signed(&mut self, expected: &'static str) -> Result<i64, ParseError> {
        let tok = self.bump();
        match &tok.kind {
            TokenKind::Int(text) => text.parse::<i64>().map_err(|_| self.syntax(&tok, expected)),
            _ => Err(self.syntax(&tok, expected)),
        }
    }

    fn unsigned(&mut self, expected: &'static str) -> Result<Qubit, ParseError> {
        let tok = self.bump();
        match &tok.kind {
            TokenKind::Int(text) if text.starts_with(|c: char| c.is_ascii_digit()) => text
                .parse::<Qubit>()
                .map_err(|_| self.syntax(&tok, expected)),
            _ => Err(self.syntax(&tok, expected)),
        }
    }

    fn delay(&mut self) -> Result<i64, ParseError> {
        let tok = self.bump();
        match &tok.kind {
            TokenKind::Int(text) if text == "1" => Ok(0),
            TokenKind::Word(w) if w == "D" => {
                if self.peek().kind == TokenKind::Caret {
                    self.bump();
                    self.signed("integer exponent after `D^`")
                } else {
                    Ok(1)
                }
            }
            _ => Err(self.syntax(&tok, "delay `1`, `D` or `D^k`")),
        }
    }

    fn semantic(&self, pos: Position, source: ModelError) -> ParseError {
        ParseError::Semantic {
            name: self.name.to_string(),
            pos,
            source,
        }
    }

    /// Parses the operands of a gate whose keyword sits at `start`.
    fn gate(&mut self, start: Position) -> Result<GateString, ParseError> {
        self.expect(TokenKind::LParen, "`(` after CNOT")?;
        let a = self.unsigned("source qubit index")?;
        self.expect(TokenKind::Comma, "`,` between qubit indices")?;
        let b = self.unsigned("target qubit index")?;
        self.expect(TokenKind::RParen, "`)` after qubit indices")?;
        self.expect(TokenKind::LParen, "`(` before delay")?;
        let l = self.delay()?;
        self.expect(TokenKind::RParen, "`)` after delay")?;
        GateString::new(a, b, l).map_err(|e| self.semantic(start, e))
    }

    fn necklace(&mut self) -> Result<PearlNecklace, ParseError> {
        let mut declared = None;
        if matches!(&self.peek().kind, TokenKind::Word(w) if w == "qubits") {
            self.bump();
            let n = self.unsigned("frame width after `qubits`")?;
            declared = Some(n);
        }

        let mut gates = Vec::new();
        loop {
            let tok = self.bump();
            match &tok.kind {
                TokenKind::Eof => break,
                TokenKind::Word(w) if w == "CNOT" => {
                    let g = self.gate(tok.pos)?;
                    gates.push((g, tok.pos));
                }
                TokenKind::Word(w) if RESERVED_GATES.contains(&w.as_str()) => {
                    return Err(ParseError::Unsupported {
                        name: self.name.to_string(),
                        pos: tok.pos,
                        gate: w.clone(),
                    });
                }
                _ => return Err(self.syntax(&tok, "`CNOT` or end of input")),
            }
        }

        match declared {
            Some(n) => {
                for (pos, (g, at)) in gates.iter().enumerate() {
                    let widest = g.source().max(g.target());
                    if widest > n {
                        return Err(self.semantic(
                            *at,
                            ModelError::QubitOutOfFrame {
                                index: pos + 1,
                                qubit: widest,
                                frame_width: n,
                            },
                        ));
                    }
                }
                let strings = gates.into_iter().map(|(g, _)| g).collect();
                Ok(PearlNecklace::new(strings, n).expect("qubit indices checked above"))
            }
            None => Ok(PearlNecklace::with_inferred_width(
                gates.into_iter().map(|(g, _)| g).collect(),
            )),
        }
    }
}

/// Parses encoder text; gate strings keep their textual order.
pub fn parse(src: &SourceText) -> Result<PearlNecklace, ParseError> {
    Parser {
        name: &src.name,
        tokens: tokenize(&src.content),
        cursor: 0,
    }
    .necklace()
}

/// Convenience wrapper around [`parse`] for in-memory text.
pub fn parse_str(content: &str) -> Result<PearlNecklace, ParseError> {
    parse(&SourceText::new("<input>", content))
}

/// Inverse of [`parse`]: a `qubits` header followed by one gate per line.
pub fn render(enc: &PearlNecklace) -> SourceText {
    let mut content = format!("qubits {}", enc.frame_width());
    for g in enc.strings() {
        content.push('\n');
        content.push_str(&g.to_string());
    }
    SourceText::new("<rendered>", content)
}
