// SPDX-License-Identifier: Apache-2.0

//! Line-oriented circuit text.
//!
//! ```text
//! BC1.1
//! a := AND(x, y);
//! k := CARD{1,2}(x, y, z);
//! t := T();
//! ASSIGN a, ~k;
//! ```
//!
//! The header line is optional on input and always written. Names used
//! before (or without) a definition are inputs. `//` starts a comment that
//! runs to the end of the line.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use thiserror::Error;

use crate::circuit::{Circuit, CircuitError, GateFunc, GateId};

pub const HEADER: &str = "BC1.1";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CircuitParseError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("gate `{0}` is defined twice")]
    DuplicateDefinition(String),
    #[error("line {line}: unknown function `{name}`")]
    UnknownFunction { line: usize, name: String },
    #[error("gate `{0}` has the wrong number of children")]
    Arity(String),
    #[error("cycle through gate `{0}`")]
    Cycle(String),
}

impl From<CircuitError> for CircuitParseError {
    fn from(e: CircuitError) -> Self {
        match e {
            CircuitError::Cycle(n) => CircuitParseError::Cycle(n),
            CircuitError::Arity(n) => CircuitParseError::Arity(n),
            CircuitError::DuplicateDefinition(n) => CircuitParseError::DuplicateDefinition(n),
            CircuitError::MissingChild(n) => CircuitParseError::Syntax {
                line: 0,
                msg: format!("dangling reference from `{n}`"),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Define,
    Open,
    Close,
    LBrace,
    RBrace,
    Comma,
    Semi,
    Tilde,
}

fn is_name_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || matches!(c, '_' | '.' | '$' | '[' | ']')
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>, CircuitParseError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split("//").next().unwrap_or("");
        let mut chars = body.char_indices().peekable();
        while let Some((start, ch)) = chars.next() {
            let tok = match ch {
                c if c.is_whitespace() => continue,
                '(' => Tok::Open,
                ')' => Tok::Close,
                '{' => Tok::LBrace,
                '}' => Tok::RBrace,
                ',' => Tok::Comma,
                ';' => Tok::Semi,
                '~' => Tok::Tilde,
                ':' if chars.peek().map(|&(_, c)| c) == Some('=') => {
                    chars.next();
                    Tok::Define
                }
                c if is_name_char(c) => {
                    let mut end = start + c.len_utf8();
                    while let Some(&(j, c)) = chars.peek() {
                        if !is_name_char(c) {
                            break;
                        }
                        end = j + c.len_utf8();
                        chars.next();
                    }
                    Tok::Ident(body[start..end].to_string())
                }
                c => {
                    return Err(CircuitParseError::Syntax {
                        line,
                        msg: format!("unexpected character `{c}`"),
                    })
                }
            };
            out.push((tok, line));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn line(&self) -> usize {
        self.toks
            .get(self.pos)
            .or_else(|| self.toks.last())
            .map_or(0, |&(_, l)| l)
    }

    fn err(&self, msg: impl Into<String>) -> CircuitParseError {
        CircuitParseError::Syntax {
            line: self.line(),
            msg: msg.into(),
        }
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        self.pos += 1;
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), CircuitParseError> {
        if self.peek() == Some(&want) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected {what}")))
        }
    }

    fn ident(&mut self, what: &str) -> Result<String, CircuitParseError> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => Err(self.err(format!("expected {what}"))),
        }
    }

    fn number(&mut self) -> Result<u32, CircuitParseError> {
        let s = self.ident("a number")?;
        s.parse().map_err(|_| self.err(format!("`{s}` is not a number")))
    }

    fn func(&mut self) -> Result<GateFunc, CircuitParseError> {
        let line = self.line();
        let name = self.ident("a function name")?;
        let func = match name.to_ascii_uppercase().as_str() {
            "T" => GateFunc::ConstTrue,
            "F" => GateFunc::ConstFalse,
            "NOT" => GateFunc::Not,
            "AND" => GateFunc::And,
            "OR" => GateFunc::Or,
            "XOR" => GateFunc::Xor,
            "EVEN" => GateFunc::Even,
            "EQUIV" => GateFunc::Equiv,
            "IMPLY" => GateFunc::Imply,
            "ITE" => GateFunc::Ite,
            "CARD" => {
                self.expect(Tok::LBrace, "`{` after CARD")?;
                let low = self.number()?;
                self.expect(Tok::Comma, "`,`")?;
                let high = self.number()?;
                self.expect(Tok::RBrace, "`}`")?;
                GateFunc::Card { low, high }
            }
            _ => return Err(CircuitParseError::UnknownFunction { line, name }),
        };
        Ok(func)
    }

    fn args(&mut self, c: &mut Circuit) -> Result<Vec<GateId>, CircuitParseError> {
        let mut out = Vec::new();
        if self.peek() != Some(&Tok::Open) {
            return Ok(out);
        }
        self.pos += 1;
        if self.peek() == Some(&Tok::Close) {
            self.pos += 1;
            return Ok(out);
        }
        loop {
            let name = self.ident("a gate name")?;
            out.push(c.input(&name));
            match self.next() {
                Some(Tok::Comma) => {}
                Some(Tok::Close) => return Ok(out),
                _ => {
                    self.pos -= 1;
                    return Err(self.err("expected `,` or `)`"));
                }
            }
        }
    }
}

pub fn parse_circuit(text: &str) -> Result<Circuit, CircuitParseError> {
    let mut p = Parser {
        toks: tokenize(text)?,
        pos: 0,
    };
    if p.peek() == Some(&Tok::Ident(HEADER.to_string())) {
        p.pos += 1;
    }
    let mut c = Circuit::new();
    let mut defined: BTreeSet<GateId> = BTreeSet::new();
    while p.peek().is_some() {
        let name = p.ident("a gate name or ASSIGN")?;
        if name == "ASSIGN" && p.peek() != Some(&Tok::Define) {
            loop {
                let positive = if p.peek() == Some(&Tok::Tilde) {
                    p.pos += 1;
                    false
                } else {
                    true
                };
                let target = p.ident("a gate name")?;
                let g = c.input(&target);
                c.constrain(g, positive);
                match p.next() {
                    Some(Tok::Comma) => {}
                    Some(Tok::Semi) => break,
                    _ => {
                        p.pos -= 1;
                        return Err(p.err("expected `,` or `;`"));
                    }
                }
            }
            continue;
        }
        p.expect(Tok::Define, "`:=`")?;
        let id = c.input(&name);
        if !defined.insert(id) {
            return Err(CircuitParseError::DuplicateDefinition(name));
        }
        let func = p.func()?;
        let children = p.args(&mut c)?;
        p.expect(Tok::Semi, "`;`")?;
        c.redefine(id, func, children);
    }
    c.validate()?;
    Ok(c)
}

fn func_text(func: GateFunc) -> String {
    match func {
        GateFunc::ConstTrue => "T".into(),
        GateFunc::ConstFalse => "F".into(),
        GateFunc::Input => unreachable!("inputs are not written"),
        GateFunc::Not => "NOT".into(),
        GateFunc::And => "AND".into(),
        GateFunc::Or => "OR".into(),
        GateFunc::Xor => "XOR".into(),
        GateFunc::Even => "EVEN".into(),
        GateFunc::Equiv => "EQUIV".into(),
        GateFunc::Imply => "IMPLY".into(),
        GateFunc::Ite => "ITE".into(),
        GateFunc::Card { low, high } => format!("CARD{{{low},{high}}}"),
    }
}

/// Canonical text: definitions of non-input gates in topological order,
/// then one ASSIGN line per constraint. Inputs that are neither referenced
/// nor constrained are not represented. Panics on an invalid circuit.
pub fn write_circuit(c: &Circuit) -> String {
    let order = c.validate().expect("valid circuit");
    let mut out = format!("{HEADER}\n");
    for id in order {
        let func = c.func(id);
        if func == GateFunc::Input {
            continue;
        }
        let args: Vec<&str> = c.children(id).iter().map(|&ch| c.name(ch)).collect();
        writeln!(out, "{} := {}({});", c.name(id), func_text(func), args.join(", ")).expect("write to string");
    }
    for &(g, value) in c.constraints() {
        let neg = if value { "" } else { "~" };
        writeln!(out, "ASSIGN {neg}{};", c.name(g)).expect("write to string");
    }
    out
}
