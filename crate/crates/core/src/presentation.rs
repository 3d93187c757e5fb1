//! Group presentations and their text format.
//!
//! ```text
//! gens: x, y | rels: x^2*y^-3, [x,y]*x
//! ```
//!
//! Whitespace (including newlines) is insignificant and the relator list
//! may be empty. A factor is a generator with an optional integer power,
//! a bracket `[u,v]` or parenthesised word `(u)` with an optional power,
//! or `1`.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::word::{commutator, is_valid_name, Generator, Word};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    generators: Vec<Generator>,
    relators: Vec<Word>,
}

impl Presentation {
    pub fn new(generators: Vec<Generator>, relators: Vec<Word>) -> Result<Self> {
        let mut seen = HashMap::new();
        for (i, g) in generators.iter().enumerate() {
            if seen.insert(g.name().to_string(), i).is_some() {
                return Err(Error::InvalidArgument(format!("duplicate generator `{}`", g.name())));
            }
        }
        for r in &relators {
            if let Some(m) = r.max_gen() {
                if m >= generators.len() {
                    return Err(Error::InvalidArgument(format!("relator uses generator index {m} outside the alphabet")));
                }
            }
        }
        Ok(Presentation { generators, relators })
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name() == name)
    }

    pub fn render(&self) -> String {
        let gens: Vec<&str> = self.generators.iter().map(|g| g.name()).collect();
        let rels: Vec<String> = self.relators.iter().map(|r| r.render(&self.generators)).collect();
        if rels.is_empty() {
            format!("gens: {} | rels:", gens.join(", "))
        } else {
            format!("gens: {} | rels: {}", gens.join(", "), rels.join(", "))
        }
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(i64),
    Caret,
    Star,
    LBracket,
    RBracket,
    LParen,
    RParen,
    Comma,
    Bar,
    Colon,
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn tokenize(text: &str) -> Result<Vec<Spanned>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    while i < chars.len() {
        let c = chars[i];
        let (tl, tc) = (line, col);
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        let single = match c {
            '^' => Some(Tok::Caret),
            '*' => Some(Tok::Star),
            '[' => Some(Tok::LBracket),
            ']' => Some(Tok::RBracket),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            ',' => Some(Tok::Comma),
            '|' => Some(Tok::Bar),
            ':' => Some(Tok::Colon),
            _ => None,
        };
        if let Some(tok) = single {
            out.push(Spanned { tok, line: tl, col: tc });
            i += 1;
            col += 1;
            continue;
        }
        if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            col += i - start;
            out.push(Spanned { tok: Tok::Ident(s), line: tl, col: tc });
            continue;
        }
        if c.is_ascii_digit() || c == '-' || c == '+' {
            let start = i;
            i += 1;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            col += i - start;
            let v: i64 = s.parse().map_err(|_| Error::Syntax { line: tl, col: tc, msg: format!("bad integer `{s}`") })?;
            out.push(Spanned { tok: Tok::Int(v), line: tl, col: tc });
            continue;
        }
        return Err(Error::Syntax { line: tl, col: tc, msg: format!("unexpected character `{c}`") });
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Spanned>,
    pos: usize,
    end: (usize, usize),
    names: &'a HashMap<String, usize>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.toks.get(self.pos).map(|s| (s.line, s.col)).unwrap_or(self.end)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        let (line, col) = self.here();
        Err(Error::Syntax { line, col, msg: msg.into() })
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<()> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected {what}"))
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<()> {
        match self.peek() {
            Some(Tok::Ident(s)) if s == kw => {
                self.pos += 1;
                self.expect(Tok::Colon, "`:`")
            }
            _ => self.err(format!("expected `{kw}:`")),
        }
    }

    fn power(&mut self) -> Result<i64> {
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            match self.peek() {
                Some(Tok::Int(v)) => {
                    let v = *v;
                    self.pos += 1;
                    Ok(v)
                }
                _ => self.err("expected integer exponent after `^`"),
            }
        } else {
            Ok(1)
        }
    }

    fn factor(&mut self) -> Result<Word> {
        let (line, col) = self.here();
        match self.peek().cloned() {
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                let g = *self.names.get(&name).ok_or(Error::UnknownGenerator { name, line, col })?;
                let e = self.power()?;
                Ok(Word::power_of(g, e))
            }
            Some(Tok::Int(1)) => {
                self.pos += 1;
                Ok(Word::identity())
            }
            Some(Tok::LBracket) => {
                self.pos += 1;
                let a = self.word()?;
                self.expect(Tok::Comma, "`,` inside commutator")?;
                let b = self.word()?;
                self.expect(Tok::RBracket, "`]`")?;
                let e = self.power()?;
                Ok(commutator(&a, &b).pow(e))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let a = self.word()?;
                self.expect(Tok::RParen, "`)`")?;
                let e = self.power()?;
                Ok(a.pow(e))
            }
            _ => self.err("expected generator, `1`, `[` or `(`"),
        }
    }

    fn word(&mut self) -> Result<Word> {
        let mut w = self.factor()?;
        while self.peek() == Some(&Tok::Star) {
            self.pos += 1;
            w = w.mul(&self.factor()?);
        }
        Ok(w)
    }
}

fn end_position(text: &str) -> (usize, usize) {
    let line = text.matches('\n').count() + 1;
    let col = text.rsplit('\n').next().map(|l| l.chars().count()).unwrap_or(0) + 1;
    (line, col)
}

pub fn parse_presentation(text: &str) -> Result<Presentation> {
    let toks = tokenize(text)?;
    let empty = HashMap::new();
    let mut p = Parser { toks, pos: 0, end: end_position(text), names: &empty };
    p.keyword("gens")?;
    let mut generators = Vec::new();
    let mut names = HashMap::new();
    loop {
        let (line, col) = p.here();
        match p.peek().cloned() {
            Some(Tok::Ident(name)) => {
                p.pos += 1;
                if !is_valid_name(&name) {
                    return Err(Error::Syntax { line, col, msg: format!("invalid generator name `{name}`") });
                }
                if names.insert(name.clone(), generators.len()).is_some() {
                    return Err(Error::Syntax { line, col, msg: format!("duplicate generator `{name}`") });
                }
                generators.push(Generator::new(name)?);
            }
            _ => return p.err("expected generator name"),
        }
        if p.peek() == Some(&Tok::Comma) {
            p.pos += 1;
        } else {
            break;
        }
    }
    p.expect(Tok::Bar, "`|`")?;
    p.keyword("rels")?;
    let mut relators = Vec::new();
    let toks = std::mem::take(&mut p.toks);
    let mut q = Parser { toks, pos: p.pos, end: p.end, names: &names };
    if q.peek().is_some() {
        loop {
            relators.push(q.word()?);
            if q.peek() == Some(&Tok::Comma) {
                q.pos += 1;
            } else {
                break;
            }
        }
    }
    if q.peek().is_some() {
        return q.err("unexpected trailing input");
    }
    Presentation::new(generators, relators)
}

/// Parses a single word over a given alphabet.
pub fn parse_word(text: &str, alphabet: &[Generator]) -> Result<Word> {
    let names: HashMap<String, usize> = alphabet.iter().enumerate().map(|(i, g)| (g.name().to_string(), i)).collect();
    let mut p = Parser { toks: tokenize(text)?, pos: 0, end: end_position(text), names: &names };
    let w = p.word()?;
    if p.peek().is_some() {
        return p.err("unexpected trailing input");
    }
    Ok(w)
}
