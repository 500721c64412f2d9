//! Expression trees, the parser and the printer.

use std::fmt;

use num_bigint::BigInt;

use crate::coef::param_index;
use crate::error::{ChowError, Result};
use crate::symbol::{Idx, Lin, Name, Symbol, Top};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Expr {
    Num(BigInt),
    Param(String),
    Sym(Symbol),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn num(v: i64) -> Expr {
        Expr::Num(v.into())
    }

    pub fn param(p: &str) -> Expr {
        Expr::Param(p.to_string())
    }

    pub fn lin(l: Lin) -> Expr {
        Expr::Sym(Symbol::Lin(l))
    }

    pub fn top(t: Top) -> Expr {
        Expr::Sym(Symbol::Top(t))
    }

    pub fn d(name: &str) -> Expr {
        Expr::lin(Lin::D(Name::new(name)))
    }

    pub fn add(self, o: Expr) -> Expr {
        Expr::Add(Box::new(self), Box::new(o))
    }

    pub fn sub(self, o: Expr) -> Expr {
        Expr::Sub(Box::new(self), Box::new(o))
    }

    pub fn mul(self, o: Expr) -> Expr {
        Expr::Mul(Box::new(self), Box::new(o))
    }

    pub fn neg(self) -> Expr {
        Expr::Neg(Box::new(self))
    }

    pub fn scaled(self, k: i64) -> Expr {
        Expr::num(k).mul(self)
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) => 2,
            Expr::Neg(..) => 3,
            _ => 4,
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // left operands need parentheses only for lower precedence, right
        // operands also for equal precedence (all operators are left-associative)
        let wrap = |e: &Expr, min: u8, f: &mut fmt::Formatter<'_>| -> fmt::Result {
            if e.precedence() < min {
                write!(f, "({e})")
            } else {
                write!(f, "{e}")
            }
        };
        match self {
            Expr::Num(v) => write!(f, "{v}"),
            Expr::Param(p) => f.write_str(p),
            Expr::Sym(s) => write!(f, "{s}"),
            Expr::Neg(x) => {
                f.write_str("-")?;
                wrap(x, 3, f)
            }
            Expr::Add(a, b) => {
                wrap(a, 1, f)?;
                f.write_str(" + ")?;
                wrap(b, 2, f)
            }
            Expr::Sub(a, b) => {
                wrap(a, 1, f)?;
                f.write_str(" - ")?;
                wrap(b, 2, f)
            }
            Expr::Mul(a, b) => {
                wrap(a, 2, f)?;
                f.write_str("*")?;
                wrap(b, 3, f)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String, Option<String>),
    Plus,
    Minus,
    Star,
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
                continue;
            }
            '+' => out.push((start, Tok::Plus)),
            '-' => out.push((start, Tok::Minus)),
            '*' => out.push((start, Tok::Star)),
            '(' => out.push((start, Tok::LParen)),
            ')' => out.push((start, Tok::RParen)),
            '0'..='9' => {
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                out.push((start, Tok::Int(s.parse().unwrap())));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                let name: String = chars[start..i].iter().collect();
                let mut arg = None;
                if i < chars.len() && chars[i] == '[' {
                    let open = i;
                    i += 1;
                    let a0 = i;
                    while i < chars.len() && chars[i] != ']' {
                        i += 1;
                    }
                    if i == chars.len() {
                        return Err(ChowError::Syntax { pos: open, msg: "unclosed `[`".into() });
                    }
                    arg = Some(chars[a0..i].iter().collect::<String>().trim().to_string());
                    i += 1;
                }
                out.push((start, Tok::Ident(name, arg)));
                continue;
            }
            other => {
                return Err(ChowError::Syntax { pos: start, msg: format!("unexpected character `{other}`") });
            }
        }
        i += 1;
    }
    Ok(out)
}

fn valid_name(s: &str) -> bool {
    let mut it = s.chars();
    matches!(it.next(), Some(c) if c.is_ascii_alphabetic() || c == '_') && it.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn symbol(pos: usize, name: &str, arg: Option<&str>) -> Result<Expr> {
    let unknown = || ChowError::UnknownSymbol {
        pos,
        name: match arg {
            Some(a) => format!("{name}[{a}]"),
            None => name.to_string(),
        },
    };
    let named = |a: Option<&str>| -> Result<Name> {
        match a {
            Some(a) if valid_name(a) => Ok(Name::new(a)),
            _ => Err(unknown()),
        }
    };
    let index = |a: Option<&str>| -> Result<Idx> {
        match a {
            Some("*") => Ok(Idx::All),
            Some(a) => a.parse::<u32>().ok().filter(|&i| i >= 1).map(Idx::One).ok_or_else(unknown),
            None => Err(unknown()),
        }
    };
    Ok(match name {
        "D" => Expr::lin(Lin::D(named(arg)?)),
        "delta" => Expr::top(Top::Delta(named(arg)?)),
        "pair2" => Expr::top(Top::Pair2(named(arg)?)),
        "E" => Expr::lin(Lin::E(index(arg)?)),
        "F" => Expr::lin(Lin::F(index(arg)?)),
        _ if arg.is_some() => return Err(unknown()),
        "Delta0" => Expr::lin(Lin::Delta0),
        "xS" => Expr::Sym(Symbol::XiS),
        "A1xC2" => Expr::lin(Lin::A1xC2),
        "C1xA2" => Expr::lin(Lin::C1xA2),
        "K_C" => Expr::lin(Lin::D(Name::canonical())),
        "pt" => Expr::top(Top::Pt),
        p if param_index(p).is_some() => Expr::param(p),
        _ => return Err(unknown()),
    })
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.at += 1;
                    lhs = lhs.add(self.term()?);
                }
                Some(Tok::Minus) => {
                    self.at += 1;
                    lhs = lhs.sub(self.term()?);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        while let Some(Tok::Star) = self.peek() {
            self.at += 1;
            lhs = lhs.mul(self.unary()?);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr> {
        if let Some(Tok::Minus) = self.peek() {
            self.at += 1;
            return Ok(self.unary()?.neg());
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Expr> {
        let pos = self.pos();
        let Some(tok) = self.peek().cloned() else {
            return Err(ChowError::Syntax { pos, msg: "unexpected end of input".into() });
        };
        self.at += 1;
        match tok {
            Tok::Int(v) => Ok(Expr::Num(v)),
            Tok::Ident(name, arg) => symbol(pos, &name, arg.as_deref()),
            Tok::LParen => {
                let e = self.expr()?;
                match self.peek() {
                    Some(Tok::RParen) => {
                        self.at += 1;
                        Ok(e)
                    }
                    _ => Err(ChowError::Syntax { pos: self.pos(), msg: "expected `)`".into() }),
                }
            }
            _ => Err(ChowError::Syntax { pos, msg: "expected an operand".into() }),
        }
    }
}

/// Parses an expression; positions in errors are 0-based character offsets.
pub fn parse(text: &str) -> Result<Expr> {
    let toks = lex(text)?;
    let mut p = Parser { toks, at: 0, end: text.chars().count() };
    let e = p.expr()?;
    if p.at != p.toks.len() {
        return Err(ChowError::Syntax { pos: p.pos(), msg: "unexpected token".into() });
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence_and_printing() {
        let e = parse("2*D[a] - (Delta0 + -E[*])*F[3]").unwrap();
        assert_eq!(e.to_string(), "2*D[a] - (Delta0 + -E[*])*F[3]");
        assert_eq!(parse(&e.to_string()).unwrap(), e);
        let e = parse("a1").unwrap_err();
        assert!(matches!(e, ChowError::UnknownSymbol { pos: 0, .. }));
    }

    #[test]
    fn error_positions() {
        assert_eq!(
            parse("D[a] + ").unwrap_err(),
            ChowError::Syntax { pos: 7, msg: "unexpected end of input".into() }
        );
        assert!(matches!(parse("D[a] ) "), Err(ChowError::Syntax { pos: 5, .. })));
        assert!(matches!(parse("D[a] * foo"), Err(ChowError::UnknownSymbol { pos: 7, .. })));
        assert!(matches!(parse("E[0]"), Err(ChowError::UnknownSymbol { pos: 0, .. })));
    }
}
