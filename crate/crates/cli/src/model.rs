//! Model files: `sullivan` and `lie` blocks, `attach` declarations and an
//! optional `cap`.
//!
//! ```text
//! # the 6-sphere
//! cap 24;
//! sullivan S6 { gen x 6; gen y 11; d x = 0; d y = x*x; }
//! lie S2 { gen i 1; }
//! attach a: S2 cell 4 = -[i,i];
//! ```

use std::fmt::{self, Write as _};

use mapspace_core::invariants::MinimalModel;
use mapspace_core::lie::{BracketWord, FreeDgl, FreeLie, LieElement};
use mapspace_core::{fmt_rational, parse_rational, FreeCdga, GenId, Polynomial, Q};
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("{line}:{col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("{0}")]
    Semantic(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Word {
    Name(String),
    Bracket(Box<Word>, Box<Word>),
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Word::Name(n) => f.write_str(n),
            Word::Bracket(a, b) => write!(f, "[{a},{b}]"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    /// Coefficient times a product of generators.
    Poly(Vec<(Q, Vec<String>)>),
    /// Coefficient times a bracket word.
    Lie(Vec<(Q, Word)>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlockKind {
    Sullivan,
    Lie,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub kind: BlockKind,
    pub name: String,
    pub gens: Vec<(String, i32)>,
    pub diffs: Vec<(String, Expr)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Attach {
    pub name: String,
    pub lie: String,
    pub cell: i32,
    pub expr: Expr,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ModelFile {
    pub cap: Option<i32>,
    pub blocks: Vec<Block>,
    pub attaches: Vec<Attach>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Num(String),
    Sym(char),
}

struct Lexer {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
    end: (usize, usize),
}

fn lex(src: &str) -> Result<Lexer, ParseError> {
    let mut toks = Vec::new();
    let mut end = (1, 1);
    for (ln, line) in src.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("");
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let col = i + 1;
            if c.is_whitespace() {
                i += 1;
            } else if c.is_ascii_alphabetic() || c == '_' {
                let s = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || "_'.".contains(chars[i])) {
                    i += 1;
                }
                toks.push((Tok::Ident(chars[s..i].iter().collect()), ln + 1, col));
            } else if c.is_ascii_digit() {
                let s = i;
                while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '/') {
                    i += 1;
                }
                toks.push((Tok::Num(chars[s..i].iter().collect()), ln + 1, col));
            } else if "{}[],;:=+-*".contains(c) {
                toks.push((Tok::Sym(c), ln + 1, col));
                i += 1;
            } else {
                return Err(ParseError::Syntax { line: ln + 1, col, msg: format!("unexpected character '{c}'") });
            }
        }
        end = (ln + 1, chars.len() + 1);
    }
    Ok(Lexer { toks, pos: 0, end })
}

impl Lexer {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn here(&self) -> (usize, usize) {
        self.toks.get(self.pos).map_or(self.end, |t| (t.1, t.2))
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        let (line, col) = self.here();
        Err(ParseError::Syntax { line, col, msg: msg.into() })
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|t| t.0.clone());
        self.pos += 1;
        t
    }

    fn sym(&mut self, c: char) -> Result<(), ParseError> {
        match self.peek() {
            Some(Tok::Sym(d)) if *d == c => {
                self.pos += 1;
                Ok(())
            }
            _ => self.err(format!("expected '{c}'")),
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => self.err("expected a name"),
        }
    }

    fn keyword(&mut self, k: &str) -> Result<(), ParseError> {
        match self.peek() {
            Some(Tok::Ident(s)) if s == k => {
                self.pos += 1;
                Ok(())
            }
            _ => self.err(format!("expected '{k}'")),
        }
    }

    fn int(&mut self) -> Result<i32, ParseError> {
        let neg = self.eat('-');
        match self.peek() {
            Some(Tok::Num(s)) if !s.contains('/') => {
                let v: i32 = s.parse().or_else(|_| self.err("integer out of range"))?;
                self.pos += 1;
                Ok(if neg { -v } else { v })
            }
            _ => self.err("expected an integer"),
        }
    }

    fn rational(&mut self) -> Result<Option<Q>, ParseError> {
        match self.peek() {
            Some(Tok::Num(s)) => {
                let Some(q) = parse_rational(s) else { return self.err(format!("bad rational '{s}'")) };
                self.pos += 1;
                Ok(Some(q))
            }
            _ => Ok(None),
        }
    }

    /// `[+|-] [RATIONAL ["*"]]`, returning the coefficient and whether a
    /// factor must follow.
    fn coefficient(&mut self, first: bool) -> Result<(Q, bool), ParseError> {
        let mut c = Q::one();
        if self.eat('-') {
            c = -c;
        } else if !first {
            self.sym('+')?;
        } else {
            self.eat('+');
        }
        match self.rational()? {
            Some(q) => {
                let star = self.eat('*');
                let more = star || matches!(self.peek(), Some(Tok::Ident(_) | Tok::Sym('[')));
                Ok((c * q, more))
            }
            None => Ok((c, true)),
        }
    }

    fn at_expr_end(&self) -> bool {
        matches!(self.peek(), Some(Tok::Sym(';')) | None)
    }

    fn poly(&mut self) -> Result<Expr, ParseError> {
        let mut terms = Vec::new();
        let mut first = true;
        while first || !self.at_expr_end() {
            let (c, more) = self.coefficient(first)?;
            first = false;
            let mut names = Vec::new();
            if more {
                names.push(self.ident()?);
                while self.eat('*') {
                    names.push(self.ident()?);
                }
            } else if !c.is_zero() {
                return self.err("constant terms are not allowed");
            }
            if !c.is_zero() {
                terms.push((c, names));
            }
        }
        Ok(Expr::Poly(terms))
    }

    fn word(&mut self) -> Result<Word, ParseError> {
        if self.eat('[') {
            let a = self.word()?;
            self.sym(',')?;
            let b = self.word()?;
            self.sym(']')?;
            Ok(Word::Bracket(Box::new(a), Box::new(b)))
        } else {
            Ok(Word::Name(self.ident()?))
        }
    }

    fn lie_expr(&mut self) -> Result<Expr, ParseError> {
        let mut terms = Vec::new();
        let mut first = true;
        while first || !self.at_expr_end() {
            let (c, more) = self.coefficient(first)?;
            first = false;
            if more {
                let w = self.word()?;
                if !c.is_zero() {
                    terms.push((c, w));
                }
            } else if !c.is_zero() {
                return self.err("constant terms are not allowed");
            }
        }
        Ok(Expr::Lie(terms))
    }
}

pub fn parse(src: &str) -> Result<ModelFile, ParseError> {
    let mut lx = lex(src)?;
    let mut file = ModelFile::default();
    while let Some(t) = lx.peek().cloned() {
        let Tok::Ident(kw) = t else { return lx.err("expected a declaration") };
        match kw.as_str() {
            "cap" => {
                lx.next();
                file.cap = Some(lx.int()?);
                lx.sym(';')?;
            }
            "sullivan" | "lie" => {
                lx.next();
                let kind = if kw == "lie" { BlockKind::Lie } else { BlockKind::Sullivan };
                let name = lx.ident()?;
                lx.sym('{')?;
                let mut block = Block { kind, name, gens: vec![], diffs: vec![] };
                while !lx.eat('}') {
                    match lx.peek() {
                        Some(Tok::Ident(k)) if k == "gen" => {
                            lx.next();
                            let g = lx.ident()?;
                            let d = lx.int()?;
                            block.gens.push((g, d));
                        }
                        Some(Tok::Ident(k)) if k == "d" => {
                            lx.next();
                            let g = lx.ident()?;
                            lx.sym('=')?;
                            let e = if kind == BlockKind::Lie { lx.lie_expr()? } else { lx.poly()? };
                            block.diffs.push((g, e));
                        }
                        _ => return lx.err("expected 'gen', 'd' or '}'"),
                    }
                    lx.sym(';')?;
                }
                file.blocks.push(block);
            }
            "attach" => {
                lx.next();
                let name = lx.ident()?;
                lx.sym(':')?;
                let lie = lx.ident()?;
                lx.keyword("cell")?;
                let cell = lx.int()?;
                lx.sym('=')?;
                let expr = lx.lie_expr()?;
                lx.sym(';')?;
                file.attaches.push(Attach { name, lie, cell, expr });
            }
            _ => return lx.err(format!("unknown declaration '{kw}'")),
        }
    }
    file.check()?;
    Ok(file)
}

fn semantic<T>(msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError::Semantic(msg.into()))
}

fn coef_prefix(c: &Q, first: bool) -> String {
    let mut s = String::new();
    let neg = c.is_negative();
    if first {
        if neg {
            s.push('-');
        }
    } else {
        s.push_str(if neg { " - " } else { " + " });
    }
    let a = c.abs();
    if !a.is_one() {
        s.push_str(&fmt_rational(&a));
        s.push('*');
    }
    s
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        match self {
            Expr::Poly(t) if t.is_empty() => out.push('0'),
            Expr::Lie(t) if t.is_empty() => out.push('0'),
            Expr::Poly(terms) => {
                for (i, (c, names)) in terms.iter().enumerate() {
                    out.push_str(&coef_prefix(c, i == 0));
                    out.push_str(&names.join("*"));
                }
            }
            Expr::Lie(terms) => {
                for (i, (c, w)) in terms.iter().enumerate() {
                    out.push_str(&coef_prefix(c, i == 0));
                    let _ = write!(out, "{w}");
                }
            }
        }
        f.write_str(&out)
    }
}

impl fmt::Display for ModelFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(c) = self.cap {
            writeln!(f, "cap {c};")?;
        }
        for b in &self.blocks {
            let kw = if b.kind == BlockKind::Lie { "lie" } else { "sullivan" };
            writeln!(f, "{kw} {} {{", b.name)?;
            for (g, d) in &b.gens {
                writeln!(f, "  gen {g} {d};")?;
            }
            for (g, e) in &b.diffs {
                writeln!(f, "  d {g} = {e};")?;
            }
            writeln!(f, "}}")?;
        }
        for a in &self.attaches {
            writeln!(f, "attach {}: {} cell {} = {};", a.name, a.lie, a.cell, a.expr)?;
        }
        Ok(())
    }
}

impl ModelFile {
    pub fn block(&self, name: &str) -> Option<&Block> {
        self.blocks.iter().find(|b| b.name == name)
    }

    pub fn first(&self, kind: BlockKind) -> Option<&Block> {
        self.blocks.iter().find(|b| b.kind == kind)
    }

    pub fn attach(&self, name: &str) -> Option<&Attach> {
        self.attaches.iter().find(|a| a.name == name)
    }

    pub fn max_degree(&self) -> i32 {
        self.blocks.iter().flat_map(|b| b.gens.iter().map(|g| g.1)).max().unwrap_or(0)
    }

    /// Declared cap, or `2 × (largest degree) + 2`.
    pub fn cap_or_default(&self) -> i32 {
        self.cap.unwrap_or(2 * self.max_degree() + 2)
    }

    fn check(&self) -> Result<(), ParseError> {
        let mut seen = std::collections::BTreeSet::new();
        for b in &self.blocks {
            if !seen.insert(&b.name) {
                return semantic(format!("duplicate block {}", b.name));
            }
            let mut gens = std::collections::BTreeSet::new();
            for (g, d) in &b.gens {
                if *d < 1 {
                    return semantic(format!("{}: generator {g} needs a positive degree", b.name));
                }
                if !gens.insert(g) {
                    return semantic(format!("{}: duplicate generator {g}", b.name));
                }
            }
            for (g, e) in &b.diffs {
                if !gens.contains(g) {
                    return semantic(format!("{}: d of undeclared generator {g}", b.name));
                }
                self.check_expr(b, e, b.degree_of(g).unwrap() + if b.kind == BlockKind::Lie { -1 } else { 1 })?;
            }
        }
        for a in &self.attaches {
            let Some(b) = self.block(&a.lie).filter(|b| b.kind == BlockKind::Lie) else {
                return semantic(format!("attach {}: no lie block {}", a.name, a.lie));
            };
            self.check_expr(b, &a.expr, a.cell - 2)?;
        }
        Ok(())
    }

    fn check_expr(&self, b: &Block, e: &Expr, expected: i32) -> Result<(), ParseError> {
        let deg = |n: &str| b.degree_of(n).ok_or_else(|| ParseError::Semantic(format!("{}: undeclared name {n}", b.name)));
        let degrees: Vec<i32> = match e {
            Expr::Poly(t) => t.iter().map(|(_, ns)| ns.iter().map(|n| deg(n)).sum()).collect::<Result<_, _>>()?,
            Expr::Lie(t) => t.iter().map(|(_, w)| word_degree(w, &deg)).collect::<Result<_, _>>()?,
        };
        if let Some(d) = degrees.iter().find(|&&d| d != expected) {
            return semantic(format!("{}: expression '{e}' has degree {d}, expected {expected}", b.name));
        }
        Ok(())
    }
}

fn word_degree(w: &Word, deg: &dyn Fn(&str) -> Result<i32, ParseError>) -> Result<i32, ParseError> {
    match w {
        Word::Name(n) => deg(n),
        Word::Bracket(a, b) => Ok(word_degree(a, deg)? + word_degree(b, deg)?),
    }
}

impl Block {
    pub fn degree_of(&self, g: &str) -> Option<i32> {
        self.gens.iter().find(|x| x.0 == g).map(|x| x.1)
    }

    fn diff(&self, g: &str) -> Option<&Expr> {
        self.diffs.iter().find(|x| x.0 == g).map(|x| &x.1)
    }

    pub fn to_cdga(&self, cap: i32) -> mapspace_core::Result<FreeCdga> {
        let degs: Vec<i32> = self.gens.iter().map(|g| g.1).collect();
        let id = |n: &str| self.gens.iter().position(|g| g.0 == n).unwrap() as GenId;
        let mut d = Vec::new();
        for (g, _) in &self.gens {
            let mut p = Polynomial::zero();
            if let Some(Expr::Poly(terms)) = self.diff(g) {
                for (c, names) in terms {
                    let f: Vec<GenId> = names.iter().map(|n| id(n)).collect();
                    p = p.add(&Polynomial::product_of(c.clone(), &f, &degs));
                }
            }
            d.push(p);
        }
        FreeCdga::new(self.gens.iter().map(|g| g.0.clone()).collect(), degs, d, cap)
    }

    pub fn to_minimal(&self, cap: i32) -> mapspace_core::Result<MinimalModel> {
        MinimalModel::new(self.to_cdga(cap)?)
    }

    pub fn to_dgl(&self, cap: i32, scale: &Q) -> mapspace_core::Result<FreeDgl> {
        let lie = FreeLie::new(
            self.gens.iter().map(|g| g.0.clone()).collect(),
            self.gens.iter().map(|g| g.1).collect(),
            cap,
        )?;
        let mut d = Vec::new();
        for (g, deg) in &self.gens {
            d.push(match self.diff(g) {
                Some(e) => lie_element(&lie, e, deg - 1)?.scale(scale),
                None => LieElement::zero(deg - 1),
            });
        }
        FreeDgl::new(lie, d)
    }
}

fn to_bracket_word(lie: &FreeLie, w: &Word) -> BracketWord {
    match w {
        Word::Name(n) => BracketWord::Gen(lie.id_of(n).expect("checked name")),
        Word::Bracket(a, b) => BracketWord::bracket(to_bracket_word(lie, a), to_bracket_word(lie, b)),
    }
}

/// The element of `lie` described by a bracket expression of degree `degree`.
pub fn lie_element(lie: &FreeLie, e: &Expr, degree: i32) -> mapspace_core::Result<LieElement> {
    let Expr::Lie(terms) = e else { return Ok(LieElement::zero(degree)) };
    let t: Vec<(Q, BracketWord)> = terms.iter().map(|(c, w)| (c.clone(), to_bracket_word(lie, w))).collect();
    Ok(lie.normalize_expr(&t)?.unwrap_or_else(|| LieElement::zero(degree)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s6_example() {
        let f = parse("sullivan S6 { gen x 6; gen y 11; d x = 0; d y = x*x; }").unwrap();
        let m = f.blocks[0].to_minimal(24).unwrap();
        assert_eq!(m.cdga().display(m.cdga().dv(1)), "x*x");
    }

    #[test]
    fn malformed_bracket_reports_position() {
        let e = parse("lie L {\n gen i 1;\n d i = [i i];\n}").unwrap_err();
        assert_eq!(e, ParseError::Syntax { line: 3, col: 11, msg: "expected ','".into() });
    }

    #[test]
    fn degree_mismatch() {
        let e = parse("sullivan A { gen x 2; gen y 4; d y = x*x; }").unwrap_err();
        assert!(matches!(e, ParseError::Semantic(_)));
    }

    #[test]
    fn round_trip() {
        let src = "cap 20;\nlie L { gen i 1; gen w 3; d w = -1/2*[i,i]; }\nattach a: L cell 4 = 2[i,i];\n";
        let f = parse(src).unwrap();
        let printed = f.to_string();
        assert_eq!(parse(&printed).unwrap(), f);
        assert!(printed.contains("d w = -1/2*[i,i];"));
        assert!(printed.contains("= 2*[i,i];"));
    }
}
