//! Recursive-descent parser for formulas and sequents.
//!
//! Grammar (whitespace insensitive):
//!
//! ```text
//! formula := impl
//! impl    := or ("->" impl)?
//! or      := and ("|" and)*
//! and     := unary ("&" unary)*
//! unary   := ("G" | "H" | "F" | "P" | "~") unary | atom
//! atom    := "top" | "bot" | ident | "(" formula ")"
//! ident   := [a-z][a-zA-Z0-9_]*
//! sequent := flist "=>" flist
//! flist   := (formula ("," formula)*)?
//! ```
//!
//! `->` and `~` are rejected under the base system; `~` reads as classical
//! or intuitionistic negation in those extensions and as the tilde in the
//! De Morgan one, where the surface operators F and P are expanded to
//! `~G~` and `~H~` while parsing.

use thiserror::Error;

use super::formula::{CalculusId, Formula, Sequent};

#[derive(Debug, Error, PartialEq, Eq)]
#[error("syntax error at byte {pos}: {msg}")]
pub struct SyntaxError {
    pub pos: usize,
    pub msg: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Top,
    Bot,
    OpG,
    OpH,
    OpF,
    OpP,
    Tilde,
    Amp,
    Pipe,
    Arrow,
    Comma,
    LParen,
    RParen,
    SeqArrow,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, SyntaxError> {
    let bytes = text.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '&' => {
                toks.push((i, Tok::Amp));
                i += 1;
            }
            '|' => {
                toks.push((i, Tok::Pipe));
                i += 1;
            }
            ',' => {
                toks.push((i, Tok::Comma));
                i += 1;
            }
            '(' => {
                toks.push((i, Tok::LParen));
                i += 1;
            }
            ')' => {
                toks.push((i, Tok::RParen));
                i += 1;
            }
            '~' => {
                toks.push((i, Tok::Tilde));
                i += 1;
            }
            '-' => {
                if bytes.get(i + 1) == Some(&b'>') {
                    toks.push((i, Tok::Arrow));
                    i += 2;
                } else {
                    return Err(SyntaxError {
                        pos: i,
                        msg: "expected '->'".into(),
                    });
                }
            }
            '=' => {
                if bytes.get(i + 1) == Some(&b'>') {
                    toks.push((i, Tok::SeqArrow));
                    i += 2;
                } else {
                    return Err(SyntaxError {
                        pos: i,
                        msg: "expected '=>'".into(),
                    });
                }
            }
            'G' => {
                toks.push((i, Tok::OpG));
                i += 1;
            }
            'H' => {
                toks.push((i, Tok::OpH));
                i += 1;
            }
            'F' => {
                toks.push((i, Tok::OpF));
                i += 1;
            }
            'P' => {
                toks.push((i, Tok::OpP));
                i += 1;
            }
            'a'..='z' => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                let word = &text[start..i];
                toks.push((
                    start,
                    match word {
                        "top" => Tok::Top,
                        "bot" => Tok::Bot,
                        _ => Tok::Ident(word.to_string()),
                    },
                ));
            }
            _ => {
                return Err(SyntaxError {
                    pos: i,
                    msg: format!("unexpected character '{c}'"),
                })
            }
        }
    }
    Ok(toks)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    calc: CalculusId,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|(_, t)| t.clone());
        if t.is_some() {
            self.at += 1;
        }
        t
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, SyntaxError> {
        Err(SyntaxError {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn formula(&mut self) -> Result<Formula, SyntaxError> {
        let lhs = self.or_level()?;
        if self.peek() == Some(&Tok::Arrow) {
            if !matches!(self.calc, CalculusId::LtC | CalculusId::LtI) {
                return self.err("'->' is not part of this system's language");
            }
            self.bump();
            let rhs = self.formula()?;
            return Ok(Formula::imp(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or_level(&mut self) -> Result<Formula, SyntaxError> {
        let mut acc = self.and_level()?;
        while self.peek() == Some(&Tok::Pipe) {
            self.bump();
            let rhs = self.and_level()?;
            acc = Formula::or(acc, rhs);
        }
        Ok(acc)
    }

    fn and_level(&mut self) -> Result<Formula, SyntaxError> {
        let mut acc = self.unary()?;
        while self.peek() == Some(&Tok::Amp) {
            self.bump();
            let rhs = self.unary()?;
            acc = Formula::and(acc, rhs);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Formula, SyntaxError> {
        match self.peek() {
            Some(Tok::OpG) => {
                self.bump();
                Ok(Formula::g(self.unary()?))
            }
            Some(Tok::OpH) => {
                self.bump();
                Ok(Formula::h(self.unary()?))
            }
            Some(Tok::OpF) => {
                self.bump();
                let sub = self.unary()?;
                Ok(if self.calc == CalculusId::LtDm {
                    // F is defined notation: ~G~.
                    Formula::tilde(Formula::g(Formula::tilde(sub)))
                } else {
                    Formula::f(sub)
                })
            }
            Some(Tok::OpP) => {
                self.bump();
                let sub = self.unary()?;
                Ok(if self.calc == CalculusId::LtDm {
                    Formula::tilde(Formula::h(Formula::tilde(sub)))
                } else {
                    Formula::p(sub)
                })
            }
            Some(Tok::Tilde) => {
                self.bump();
                let sub = self.unary()?;
                match self.calc {
                    CalculusId::Lt => {
                        self.err("'~' is not part of this system's language")
                    }
                    CalculusId::LtC | CalculusId::LtI => Ok(Formula::neg(sub)),
                    CalculusId::LtDm => Ok(Formula::tilde(sub)),
                }
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<Formula, SyntaxError> {
        match self.bump() {
            Some(Tok::Top) => Ok(Formula::Top),
            Some(Tok::Bot) => Ok(Formula::Bot),
            Some(Tok::Ident(v)) => Ok(Formula::Var(v)),
            Some(Tok::LParen) => {
                let f = self.formula()?;
                if self.bump() != Some(Tok::RParen) {
                    self.at -= 1;
                    return self.err("expected ')'");
                }
                Ok(f)
            }
            other => {
                if other.is_some() {
                    self.at -= 1;
                }
                self.err("expected a formula")
            }
        }
    }

    fn formula_list(&mut self) -> Result<Vec<Formula>, SyntaxError> {
        let mut out = Vec::new();
        if matches!(self.peek(), None | Some(Tok::SeqArrow)) {
            return Ok(out);
        }
        out.push(self.formula()?);
        while self.peek() == Some(&Tok::Comma) {
            self.bump();
            out.push(self.formula()?);
        }
        Ok(out)
    }
}

fn parser(text: &str, calc: CalculusId) -> Result<Parser, SyntaxError> {
    Ok(Parser {
        toks: lex(text)?,
        at: 0,
        calc,
        end: text.len(),
    })
}

pub fn parse_formula(text: &str, calc: CalculusId) -> Result<Formula, SyntaxError> {
    let mut p = parser(text, calc)?;
    let f = p.formula()?;
    if p.peek().is_some() {
        return p.err("trailing input after formula");
    }
    Ok(f)
}

pub fn parse_sequent(text: &str, calc: CalculusId) -> Result<Sequent, SyntaxError> {
    let mut p = parser(text, calc)?;
    let left = p.formula_list()?;
    if p.bump() != Some(Tok::SeqArrow) {
        p.at = p.at.saturating_sub(1);
        return p.err("expected '=>'");
    }
    let right = p.formula_list()?;
    if p.peek().is_some() {
        return p.err("trailing input after sequent");
    }
    Ok(Sequent::new(left, right))
}
