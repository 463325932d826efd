//! Recursive-descent parser for the expression grammar:
//!
//! ```text
//! expr    := term (("+"|"-") term)* ;
//! term    := factor (("*"|"/") factor)* ;
//! factor  := "-" factor | power ;
//! power   := atom ("^" number)? ;
//! atom    := number | ident | ident "(" expr ")" | "(" expr ")" ;
//! ```

use super::ast::{Ast, BinaryOp, Node, UnaryOp};
use super::ExprError;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    offset: usize,
}

fn lex(text: &str) -> Result<Vec<Token>, ExprError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b',' => Tok::Comma,
            b'0'..=b'9' | b'.' => {
                i = scan_number(bytes, i);
                let lit = &text[start..i];
                let v: f64 = lit.parse().map_err(|_| ExprError::Syntax {
                    offset: start,
                    message: format!("malformed number '{lit}'"),
                })?;
                out.push(Token {
                    tok: Tok::Num(v),
                    offset: start,
                });
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push(Token {
                    tok: Tok::Ident(text[start..i].to_string()),
                    offset: start,
                });
                continue;
            }
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                return Err(ExprError::Syntax {
                    offset: start,
                    message: format!("unexpected character '{ch}'"),
                });
            }
        };
        i += 1;
        out.push(Token { tok, offset: start });
    }
    Ok(out)
}

fn scan_number(b: &[u8], mut i: usize) -> usize {
    while i < b.len() && b[i].is_ascii_digit() {
        i += 1;
    }
    if i < b.len() && b[i] == b'.' {
        i += 1;
        while i < b.len() && b[i].is_ascii_digit() {
            i += 1;
        }
    }
    if i < b.len() && (b[i] == b'e' || b[i] == b'E') {
        let mut j = i + 1;
        if j < b.len() && (b[j] == b'+' || b[j] == b'-') {
            j += 1;
        }
        if j < b.len() && b[j].is_ascii_digit() {
            while j < b.len() && b[j].is_ascii_digit() {
                j += 1;
            }
            i = j;
        }
    }
    i
}

struct Parser<'a> {
    toks: Vec<Token>,
    pos: usize,
    vars: &'a [&'a str],
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn offset(&self) -> usize {
        self.toks
            .get(self.pos)
            .map(|t| t.offset)
            .unwrap_or_else(|| {
                // end of input: point at the last token
                self.toks.last().map(|t| t.offset).unwrap_or(0)
            })
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|t| t.tok.clone());
        self.pos += 1;
        t
    }

    fn syntax<T>(&self, message: impl Into<String>) -> Result<T, ExprError> {
        Err(ExprError::Syntax {
            offset: self.offset(),
            message: message.into(),
        })
    }

    fn expr(&mut self) -> Result<Node, ExprError> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek() {
                Some(Tok::Plus) => BinaryOp::Add,
                Some(Tok::Minus) => BinaryOp::Sub,
                _ => return Ok(lhs),
            };
            self.pos += 1;
            let rhs = self.term()?;
            lhs = Node::Binary(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn term(&mut self) -> Result<Node, ExprError> {
        let mut lhs = self.factor()?;
        loop {
            let op = match self.peek() {
                Some(Tok::Star) => BinaryOp::Mul,
                Some(Tok::Slash) => BinaryOp::Div,
                _ => return Ok(lhs),
            };
            self.pos += 1;
            let rhs = self.factor()?;
            lhs = Node::Binary(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn factor(&mut self) -> Result<Node, ExprError> {
        if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            return Ok(Node::unary(UnaryOp::Neg, self.factor()?));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Node, ExprError> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        match self.peek() {
            Some(Tok::Num(p)) => {
                let p = *p;
                self.pos += 1;
                Ok(Node::Pow(Box::new(base), p))
            }
            Some(_) => self.syntax("exponent must be a number literal"),
            None => self.syntax("unexpected end of input after '^'"),
        }
    }

    fn atom(&mut self) -> Result<Node, ExprError> {
        let offset = self.offset();
        match self.next() {
            Some(Tok::Num(v)) => Ok(Node::Const(v)),
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                self.expect_rparen()?;
                Ok(inner)
            }
            Some(Tok::Ident(name)) => self.ident(name, offset),
            Some(_) => {
                self.pos -= 1;
                self.syntax("expected a number, identifier or '('")
            }
            None => self.syntax("unexpected end of input"),
        }
    }

    fn ident(&mut self, name: String, offset: usize) -> Result<Node, ExprError> {
        let called = self.peek() == Some(&Tok::LParen);
        if let Some(f) = UnaryOp::from_name(&name) {
            if !called {
                return Err(ExprError::Arity {
                    name,
                    offset,
                    message: "function requires one parenthesised argument".into(),
                });
            }
            self.pos += 1;
            let arg = self.expr()?;
            if self.peek() == Some(&Tok::Comma) {
                return Err(ExprError::Arity {
                    name,
                    offset,
                    message: "function takes exactly one argument".into(),
                });
            }
            self.expect_rparen()?;
            return Ok(Node::unary(f, arg));
        }
        let leaf = if let Some(i) = self.vars.iter().position(|v| *v == name) {
            Node::Var(i)
        } else if name == "pi" {
            Node::Const(std::f64::consts::PI)
        } else if name == "e" {
            Node::Const(std::f64::consts::E)
        } else {
            return Err(ExprError::UnknownIdentifier { name, offset });
        };
        if called {
            return Err(ExprError::Arity {
                name,
                offset,
                message: "not a function".into(),
            });
        }
        Ok(leaf)
    }

    fn expect_rparen(&mut self) -> Result<(), ExprError> {
        match self.peek() {
            Some(Tok::RParen) => {
                self.pos += 1;
                Ok(())
            }
            Some(_) => self.syntax("expected ')'"),
            None => self.syntax("unexpected end of input, expected ')'"),
        }
    }
}

/// Parses `text` with the given variable names in scope.
pub fn parse(text: &str, vars: &[&str]) -> Result<Ast, ExprError> {
    let toks = lex(text)?;
    if toks.is_empty() {
        return Err(ExprError::EmptyInput);
    }
    let mut p = Parser { toks, pos: 0, vars };
    let root = p.expr()?;
    if p.pos < p.toks.len() {
        return p.syntax("unexpected trailing input");
    }
    Ok(Ast::new(root, vars))
}
