use super::Formula;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Atom(String),
    Meta(String),
    Top,
    Bot,
    Not,
    Box,
    Dia,
    And,
    Or,
    Rhd,
    Impl,
    LParen,
    RParen,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Atom(a) | Tok::Meta(a) => format!("`{a}`"),
            Tok::Top => "`top`".into(),
            Tok::Bot => "`bot`".into(),
            Tok::Not => "`~`".into(),
            Tok::Box => "`[]`".into(),
            Tok::Dia => "`<>`".into(),
            Tok::And => "`/\\`".into(),
            Tok::Or => "`\\/`".into(),
            Tok::Rhd => "`|>`".into(),
            Tok::Impl => "`->`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
        }
    }
}

fn syntax(pos: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        pos,
        message: message.into(),
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let two = bytes.get(i..i + 2);
        let fixed = match two {
            Some(b"[]") => Some(Tok::Box),
            Some(b"<>") => Some(Tok::Dia),
            Some(b"/\\") => Some(Tok::And),
            Some(b"\\/") => Some(Tok::Or),
            Some(b"|>") => Some(Tok::Rhd),
            Some(b"->") => Some(Tok::Impl),
            _ => None,
        };
        if let Some(t) = fixed {
            out.push((i, t));
            i += 2;
            continue;
        }
        match c {
            b'~' => out.push((i, Tok::Not)),
            b'(' => out.push((i, Tok::LParen)),
            b')' => out.push((i, Tok::RParen)),
            c if c.is_ascii_alphabetic() => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                let word = &text[start..i];
                let tok = match word {
                    "top" => Tok::Top,
                    "bot" => Tok::Bot,
                    w if c.is_ascii_lowercase() => Tok::Atom(w.to_owned()),
                    w => Tok::Meta(w.to_owned()),
                };
                out.push((start, tok));
                continue;
            }
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(syntax(i, format!("unexpected character `{ch}`")));
            }
        }
        i += 1;
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
        self.toks.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    // impl := rhd ( '->' impl )?
    fn implication(&mut self) -> Result<Formula> {
        let lhs = self.triangle()?;
        if self.peek() == Some(&Tok::Impl) {
            self.bump();
            let rhs = self.implication()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    // rhd := bool ( '|>' bool )?
    fn triangle(&mut self) -> Result<Formula> {
        let lhs = self.boolean()?;
        if self.peek() == Some(&Tok::Rhd) {
            self.bump();
            let rhs = self.boolean()?;
            if self.peek() == Some(&Tok::Rhd) {
                return Err(syntax(
                    self.offset(),
                    "`|>` is non-associative; parenthesise chained triangles",
                ));
            }
            return Ok(Formula::rhd(lhs, rhs));
        }
        Ok(lhs)
    }

    // bool := unary ( '/\' unary )* | unary ( '\/' unary )*
    fn boolean(&mut self) -> Result<Formula> {
        let mut acc = self.unary()?;
        let mut op: Option<Tok> = None;
        while let Some(t @ (Tok::And | Tok::Or)) = self.peek().cloned() {
            if let Some(prev) = &op {
                if *prev != t {
                    return Err(syntax(
                        self.offset(),
                        "mixing `/\\` and `\\/` requires parentheses",
                    ));
                }
            }
            self.bump();
            let rhs = self.unary()?;
            acc = match t {
                Tok::And => Formula::and(acc, rhs),
                _ => Formula::or(acc, rhs),
            };
            op = Some(t);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Formula> {
        let at = self.offset();
        match self.bump() {
            Some(Tok::Not) => Ok(Formula::neg(self.unary()?)),
            Some(Tok::Box) => Ok(Formula::boxed(self.unary()?)),
            Some(Tok::Dia) => Ok(Formula::dia(self.unary()?)),
            Some(Tok::Atom(a)) => Ok(Formula::Atom(a)),
            Some(Tok::Meta(m)) => Ok(Formula::Meta(m)),
            Some(Tok::Top) => Ok(Formula::Top),
            Some(Tok::Bot) => Ok(Formula::Bot),
            Some(Tok::LParen) => {
                let inner = self.implication()?;
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    Some(t) => Err(syntax(
                        self.toks[self.pos - 1].0,
                        format!("expected `)`, found {}", t.describe()),
                    )),
                    None => Err(syntax(self.end, "expected `)`, found end of input")),
                }
            }
            Some(t) => Err(syntax(
                at,
                format!("expected a formula, found {}", t.describe()),
            )),
            None => Err(syntax(at, "expected a formula, found end of input")),
        }
    }
}

/// Parses the ASCII grammar.
///
/// Precedence from strongest: `~ [] <>`, then `/\ \/`, then `|>`, then `->`.
/// `->` associates to the right, `|>` does not associate, and `/\`/`\/` may
/// not be mixed at one level without parentheses.
pub fn parse(text: &str) -> Result<Formula> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.len(),
    };
    let f = p.implication()?;
    if let Some(t) = p.peek() {
        return Err(syntax(
            p.offset(),
            format!("unexpected {} after complete formula", t.describe()),
        ));
    }
    Ok(f)
}
