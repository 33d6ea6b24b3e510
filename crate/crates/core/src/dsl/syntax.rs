//! Condition expressions: abstract syntax, recursive-descent parser, printer.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := base ('^' nat)?
//! base   := int | ident | '-' base | '(' expr ')'
//! ident  := [A-Za-z][A-Za-z0-9_]*
//! ```
//!
//! Products need an explicit `*`: `p_g` is one identifier, never `p·g`.

use std::fmt;

use num_bigint::BigUint;
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(BigUint),
    Sym(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{message} at position {position}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigUint),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        match c {
            c if c.is_whitespace() => {
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].1.is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().map(|(_, c)| c).collect();
                out.push((pos, Tok::Int(digits.parse().expect("ascii digits"))));
            }
            c if c.is_ascii_alphabetic() => {
                let start = i;
                while i < chars.len() && (chars[i].1.is_ascii_alphanumeric() || chars[i].1 == '_')
                {
                    i += 1;
                }
                let ident: String = chars[start..i].iter().map(|(_, c)| c).collect();
                out.push((pos, Tok::Ident(ident)));
            }
            _ => {
                let tok = match c {
                    '+' => Tok::Plus,
                    '-' => Tok::Minus,
                    '*' => Tok::Star,
                    '^' => Tok::Caret,
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    other => {
                        return Err(ParseError {
                            position: pos,
                            message: format!("unknown character `{other}`"),
                        })
                    }
                };
                out.push((pos, tok));
                i += 1;
            }
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            position: self.offset(),
            message: message.into(),
        })
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        while let Some(Tok::Star) = self.peek() {
            self.pos += 1;
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let base = self.base()?;
        if let Some(Tok::Caret) = self.peek() {
            self.pos += 1;
            match self.peek().cloned() {
                Some(Tok::Int(n)) => {
                    let Ok(e) = u32::try_from(n) else {
                        return self.error("exponent too large");
                    };
                    self.pos += 1;
                    return Ok(Expr::Pow(Box::new(base), e));
                }
                Some(Tok::Minus) => return self.error("negative exponent"),
                _ => return self.error("expected a non-negative integer exponent"),
            }
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<Expr, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(Expr::Int(n))
            }
            Some(Tok::Ident(s)) => {
                self.pos += 1;
                Ok(Expr::Sym(s))
            }
            Some(Tok::Minus) => {
                self.pos += 1;
                Ok(Expr::Neg(Box::new(self.base()?)))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return self.error("expected `)`");
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(tok) => self.error(format!("unexpected {}", describe(&tok))),
            None => self.error("unexpected end of input"),
        }
    }
}

fn describe(tok: &Tok) -> &'static str {
    match tok {
        Tok::Int(_) => "integer",
        Tok::Ident(_) => "identifier",
        Tok::Plus => "`+`",
        Tok::Minus => "`-`",
        Tok::Star => "`*`",
        Tok::Caret => "`^`",
        Tok::LParen => "`(`",
        Tok::RParen => "`)`",
    }
}

pub fn parse(text: &str) -> Result<Expr, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.len(),
    };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        let what = describe(&p.toks[p.pos].1);
        return p.error(format!("unexpected {what} after expression"));
    }
    Ok(e)
}

// Precedence levels used by the printer.
const EXPR: u8 = 0;
const TERM: u8 = 1;
const FACTOR: u8 = 2;
const BASE: u8 = 3;

impl Expr {
    fn level(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => EXPR,
            Expr::Mul(..) => TERM,
            Expr::Pow(..) => FACTOR,
            Expr::Int(_) | Expr::Sym(_) | Expr::Neg(_) => BASE,
        }
    }

    fn write_at(&self, min: u8, out: &mut String) {
        if self.level() < min {
            out.push('(');
            self.write_at(EXPR, out);
            out.push(')');
            return;
        }
        match self {
            Expr::Int(n) => out.push_str(&n.to_string()),
            Expr::Sym(s) => out.push_str(s),
            Expr::Neg(b) => {
                out.push('-');
                b.write_at(BASE, out);
            }
            Expr::Add(a, b) => {
                a.write_at(EXPR, out);
                out.push_str(" + ");
                b.write_at(TERM, out);
            }
            Expr::Sub(a, b) => {
                a.write_at(EXPR, out);
                out.push_str(" - ");
                b.write_at(TERM, out);
            }
            Expr::Mul(a, b) => {
                a.write_at(TERM, out);
                out.push('*');
                b.write_at(FACTOR, out);
            }
            Expr::Pow(b, e) => {
                b.write_at(BASE, out);
                out.push('^');
                out.push_str(&e.to_string());
            }
        }
    }

    /// Symbols referenced, in first-occurrence order.
    pub fn symbols(&self) -> Vec<&str> {
        fn go<'a>(e: &'a Expr, out: &mut Vec<&'a str>) {
            match e {
                Expr::Int(_) => {}
                Expr::Sym(s) => {
                    if !out.contains(&s.as_str()) {
                        out.push(s);
                    }
                }
                Expr::Neg(b) | Expr::Pow(b, _) => go(b, out),
                Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
                    go(a, out);
                    go(b, out);
                }
            }
        }
        let mut out = Vec::new();
        go(self, &mut out);
        out
    }
}

/// Canonical text with the fewest parentheses that parse back to the same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        self.write_at(EXPR, &mut out);
        f.write_str(&out)
    }
}
