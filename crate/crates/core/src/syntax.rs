//! Algebra definition files and the expression language.
//!
//! ```text
//! generators: A B C
//! degrees: A=1 B=1 C=1
//! params: alpha lambda
//! mode: permissive cap=10000
//! rel: [B,A] = lambda*A*B + C
//! ```

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write;

use num_bigint::BigInt;

use crate::coeff::{RatFunc, Rational, Sym};
use crate::error::{Error, Result};
use crate::freealg::{DegreeMap, NCPoly, Word};
use crate::relations::{Mode, RelationSet};

fn perr(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        col,
        msg: msg.into(),
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

/// Names visible to an expression.
pub struct Scope<'a> {
    pub generators: &'a [String],
    pub params: &'a [Sym],
    /// Accept `[X,Y]` and `{X,Y}` inside expressions.
    pub brackets: bool,
}

impl Scope<'_> {
    fn resolve(&self, name: &str) -> Option<NCPoly> {
        if let Some(i) = self.generators.iter().position(|g| g == name) {
            return Some(NCPoly::gen(i));
        }
        self.params
            .iter()
            .find(|s| s.name() == name)
            .map(|&s| NCPoly::constant(RatFunc::var(s)))
    }
}

struct Parser<'s> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    line: usize,
    col0: usize,
    end: usize,
    scope: &'s Scope<'s>,
}

fn tokenize(src: &str, line: usize, col0: usize) -> Result<(Vec<(Tok, usize)>, usize)> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        if c.is_whitespace() {
            k += 1;
        } else if c.is_ascii_digit() {
            let s = k;
            while k < chars.len() && chars[k].is_ascii_digit() {
                k += 1;
            }
            let text: String = chars[s..k].iter().collect();
            out.push((Tok::Num(text.parse().unwrap()), s));
        } else if c.is_alphabetic() || c == '_' {
            let s = k;
            while k < chars.len() && (chars[k].is_alphanumeric() || chars[k] == '_' || chars[k] == '\'') {
                k += 1;
            }
            out.push((Tok::Ident(chars[s..k].iter().collect()), s));
        } else if "+-*/^()[]{},=".contains(c) {
            out.push((Tok::Op(c), k));
            k += 1;
        } else {
            return Err(perr(line, col0 + k, format!("unexpected character '{c}'")));
        }
    }
    Ok((out, chars.len()))
}

impl<'s> Parser<'s> {
    fn new(src: &str, line: usize, col0: usize, scope: &'s Scope<'s>) -> Result<Self> {
        let (toks, end) = tokenize(src, line, col0)?;
        Ok(Parser {
            toks,
            pos: 0,
            line,
            col0,
            end,
            scope,
        })
    }

    fn col(&self) -> usize {
        self.col0 + self.toks.get(self.pos).map_or(self.end, |t| t.1)
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        perr(self.line, self.col(), msg)
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(format!("expected '{c}'")))
        }
    }

    fn finish(&self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(Tok::Op(c)) => Err(self.err(format!("unexpected '{c}'"))),
            Some(_) => Err(self.err("expected an operator")),
        }
    }

    fn expr(&mut self) -> Result<NCPoly> {
        let mut acc = if self.eat('-') {
            self.term()?.neg()
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<NCPoly> {
        let mut acc = self.factor()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.factor()?);
            } else if self.peek() == Some(&Tok::Op('/')) {
                self.pos += 1;
                let col = self.col();
                let d = self.factor()?;
                let scalar = scalar_of(&d).ok_or_else(|| perr(self.line, col, "division by a non-scalar expression"))?;
                let inv = scalar
                    .inv()
                    .map_err(|_| perr(self.line, col, "division by zero"))?;
                acc = acc.scale(&inv);
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<NCPoly> {
        if self.eat('-') {
            return Ok(self.factor()?.neg());
        }
        let base = self.atom()?;
        if self.eat('^') {
            match self.peek().cloned() {
                Some(Tok::Num(n)) if n > BigInt::from(0) && n <= BigInt::from(64) => {
                    self.pos += 1;
                    let e: u32 = n.try_into().unwrap();
                    Ok(base.pow(e))
                }
                _ => Err(self.err("exponent must be a positive integer")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<NCPoly> {
        let col = self.col();
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(NCPoly::constant(RatFunc::from_rational(Rational::from_integer(n))))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                self.scope
                    .resolve(&name)
                    .ok_or_else(|| perr(self.line, col, format!("unknown symbol {name}")))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(Tok::Op(open @ ('[' | '{'))) => {
                if !self.scope.brackets {
                    return Err(self.err(format!("'{open}' is not allowed here")));
                }
                self.pos += 1;
                let x = self.expr()?;
                self.expect(',')?;
                let y = self.expr()?;
                if open == '[' {
                    self.expect(']')?;
                    Ok(x.commutator(&y))
                } else {
                    self.expect('}')?;
                    Ok(x.anticommutator(&y))
                }
            }
            Some(Tok::Op(c)) => Err(self.err(format!("unexpected '{c}'"))),
            None => Err(self.err("unexpected end of expression")),
        }
    }
}

fn scalar_of(p: &NCPoly) -> Option<RatFunc> {
    if p.words().all(|w| w.is_empty()) {
        Some(p.coefficient(&Word::unit()))
    } else {
        None
    }
}

/// Parses an expression on a single line.
pub fn parse_expr(src: &str, scope: &Scope) -> Result<NCPoly> {
    parse_expr_at(src, 1, 1, scope)
}

/// Parses an expression whose first character sits at `line:col`.
pub fn parse_expr_at(src: &str, line: usize, col: usize, scope: &Scope) -> Result<NCPoly> {
    let mut p = Parser::new(src, line, col, scope)?;
    if p.peek().is_none() {
        return Err(p.err("empty expression"));
    }
    let e = p.expr()?;
    p.finish()?;
    Ok(e)
}

/// Splits `key: value`, returning the value and its 1-based column.
fn split_key<'a>(line: &'a str, key: &str) -> Option<(&'a str, usize)> {
    let rest = line.trim_start();
    let lead = line.len() - rest.len();
    let after = rest.strip_prefix(key)?.strip_prefix(':')?;
    let col = lead + key.len() + 2 + (after.len() - after.trim_start().len());
    Some((after.trim_start(), col))
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(k) => &line[..k],
        None => line,
    }
}

fn is_identifier(s: &str) -> bool {
    let mut c = s.chars();
    matches!(c.next(), Some(f) if f.is_alphabetic() || f == '_')
        && c.all(|ch| ch.is_alphanumeric() || ch == '_' || ch == '\'')
}

/// Whitespace-separated items of a header line with their columns.
fn items(value: &str, col: usize) -> Vec<(&str, usize)> {
    let mut out = Vec::new();
    let mut k = 0;
    for part in value.split_whitespace() {
        let at = value[k..].find(part).unwrap() + k;
        out.push((part, col + value[..at].chars().count()));
        k = at + part.len();
    }
    out
}

/// Parses an algebra definition file. Strict-mode inadmissible relations are
/// rejected with the position of their relation line.
pub fn parse_algebra(text: &str) -> Result<RelationSet> {
    let mut generators: Option<Vec<String>> = None;
    let mut params: Vec<Sym> = Vec::new();
    let mut degree_spec: Vec<(String, u32, usize, usize)> = Vec::new();
    let mut mode = Mode::Strict;
    let mut rels: Vec<(usize, &str, usize)> = Vec::new();

    for (ln, raw) in text.lines().enumerate() {
        let ln = ln + 1;
        let line = strip_comment(raw);
        if line.trim().is_empty() {
            continue;
        }
        if let Some((v, col)) = split_key(line, "generators") {
            if generators.is_some() {
                return Err(perr(ln, 1, "duplicate generators line"));
            }
            let mut g: Vec<String> = Vec::new();
            for (name, c) in items(v, col) {
                if !is_identifier(name) {
                    return Err(perr(ln, c, format!("invalid generator name {name}")));
                }
                if g.iter().any(|x| x == name) {
                    return Err(perr(ln, c, format!("duplicate generator {name}")));
                }
                g.push(name.to_string());
            }
            if g.is_empty() {
                return Err(perr(ln, col, "no generators given"));
            }
            generators = Some(g);
        } else if let Some((v, col)) = split_key(line, "degrees") {
            for (item, c) in items(v, col) {
                let (name, val) = item
                    .split_once('=')
                    .ok_or_else(|| perr(ln, c, "expected NAME=DEGREE"))?;
                let d: u32 = val
                    .parse()
                    .ok()
                    .filter(|&d| d >= 1)
                    .ok_or_else(|| perr(ln, c + name.len() + 1, "degree must be a positive integer"))?;
                degree_spec.push((name.to_string(), d, ln, c));
            }
        } else if let Some((v, col)) = split_key(line, "params") {
            for (name, c) in items(v, col) {
                if !is_identifier(name) {
                    return Err(perr(ln, c, format!("invalid parameter name {name}")));
                }
                let s = Sym::new(name);
                if params.contains(&s) {
                    return Err(perr(ln, c, format!("duplicate parameter {name}")));
                }
                params.push(s);
            }
        } else if let Some((v, col)) = split_key(line, "mode") {
            let it = items(v, col);
            mode = match it.as_slice() {
                [("strict", _)] => Mode::Strict,
                [("permissive", _)] => Mode::Permissive {
                    cap: crate::relations::DEFAULT_CAP,
                },
                [("permissive", _), (cap, c)] => {
                    let n = cap
                        .strip_prefix("cap=")
                        .and_then(|n| n.parse::<usize>().ok())
                        .filter(|&n| n > 0)
                        .ok_or_else(|| perr(ln, *c, "expected cap=N with N a positive integer"))?;
                    Mode::Permissive { cap: n }
                }
                _ => return Err(perr(ln, col, "expected 'strict' or 'permissive [cap=N]'")),
            };
        } else if let Some((v, col)) = split_key(line, "rel") {
            rels.push((ln, v, col));
        } else {
            let c = line.len() - line.trim_start().len() + 1;
            return Err(perr(ln, c, "expected generators:, degrees:, params:, mode: or rel:"));
        }
    }

    let generators = generators.ok_or_else(|| perr(1, 1, "missing generators line"))?;
    for s in &params {
        if generators.iter().any(|g| g == s.name()) {
            return Err(perr(1, 1, format!("{s} is both a generator and a parameter")));
        }
    }
    let mut degrees = vec![1u32; generators.len()];
    for (name, d, ln, c) in &degree_spec {
        let k = generators
            .iter()
            .position(|g| g == name)
            .ok_or_else(|| perr(*ln, *c, format!("unknown generator {name}")))?;
        degrees[k] = *d;
    }
    let degrees = DegreeMap::new(degrees).map_err(|e| {
        let (ln, c) = degree_spec.first().map_or((1, 1), |x| (x.2, x.3));
        perr(ln, c, e.to_string())
    })?;

    let scope = Scope {
        generators: &generators,
        params: &params,
        brackets: false,
    };
    let mut brackets: BTreeMap<(usize, usize), NCPoly> = BTreeMap::new();
    let mut lines: BTreeMap<(usize, usize), (usize, usize)> = BTreeMap::new();
    for (ln, v, col) in rels {
        let (lhs, rhs) = v.split_once('=').ok_or_else(|| perr(ln, col, "expected '[X,Y] = expression'"))?;
        let inner = lhs
            .trim()
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| perr(ln, col, "relation must start with a bracket [X,Y]"))?;
        let (x, y) = inner
            .split_once(',')
            .ok_or_else(|| perr(ln, col, "relation must start with a bracket [X,Y]"))?;
        let (x, y) = (x.trim(), y.trim());
        let find = |name: &str| {
            generators
                .iter()
                .position(|g| g == name)
                .ok_or_else(|| perr(ln, col + 1, format!("unknown generator {name}")))
        };
        let (j, i) = (find(x)?, find(y)?);
        if j == i {
            return Err(perr(ln, col, format!("bracket [{x},{y}] of a generator with itself")));
        }
        if j < i {
            return Err(perr(ln, col, format!("bracket must be written [{y},{x}]")));
        }
        if lines.contains_key(&(j, i)) {
            return Err(perr(ln, col, format!("duplicate relation [{x},{y}]")));
        }
        let rcol = col + lhs.chars().count() + 1 + (rhs.len() - rhs.trim_start().len());
        let p = parse_expr_at(rhs.trim_start(), ln, rcol, &scope)?;
        brackets.insert((j, i), p);
        lines.insert((j, i), (ln, col));
    }

    let r = RelationSet::from_brackets(generators, params, degrees, brackets, mode)?;
    if let Some(d) = r.validate().first() {
        let (ln, c) = lines.get(&d.rule).copied().unwrap_or((1, 1));
        return Err(perr(ln, c, d.message.clone()));
    }
    Ok(r)
}

/// Writes a relation set in the file grammar; [`parse_algebra`] reads it back
/// to an equal set.
pub fn print_algebra(r: &RelationSet) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "generators: {}", r.generators().join(" "));
    let degs: Vec<String> = r
        .generators()
        .iter()
        .zip(r.degrees().values())
        .map(|(g, d)| format!("{g}={d}"))
        .collect();
    let _ = writeln!(out, "degrees: {}", degs.join(" "));
    if !r.params().is_empty() {
        let ps: Vec<&str> = r.params().iter().map(|s| s.name()).collect();
        let _ = writeln!(out, "params: {}", ps.join(" "));
    }
    match r.mode() {
        Mode::Strict => {
            let _ = writeln!(out, "mode: strict");
        }
        Mode::Permissive { cap } => {
            let _ = writeln!(out, "mode: permissive cap={cap}");
        }
    }
    for ((j, i), p) in r.brackets() {
        let g = r.generators();
        let _ = writeln!(out, "rel: [{},{}] = {}", g[j], g[i], r.render(&p));
    }
    out
}

/// A parameter assignment `name=value,...` where values are rationals `p/q`.
pub fn parse_assignment(src: &str) -> Result<HashMap<Sym, Rational>> {
    let mut out = HashMap::new();
    let mut col = 1;
    for part in src.split(',') {
        let lead = part.len() - part.trim_start().len();
        let item = part.trim();
        if item.is_empty() {
            col += part.len() + 1;
            continue;
        }
        let (name, val) = item
            .split_once('=')
            .ok_or_else(|| perr(1, col + lead, "expected name=value"))?;
        let name = name.trim();
        if !is_identifier(name) {
            return Err(perr(1, col + lead, format!("invalid parameter name {name}")));
        }
        let val = val.trim();
        let q = parse_rational(val).ok_or_else(|| perr(1, col + lead + name.len() + 1, format!("invalid rational {val}")))?;
        out.insert(Sym::new(name), q);
        col += part.len() + 1;
    }
    Ok(out)
}

pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (neg, body) = match s.strip_prefix('-') {
        Some(b) => (true, b.trim()),
        None => (false, s),
    };
    let q = match body.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d == BigInt::from(0) || n.sign() == num_bigint::Sign::Minus || d.sign() == num_bigint::Sign::Minus {
                return None;
            }
            Rational::new(n, d)
        }
        None => {
            let n: BigInt = body.parse().ok()?;
            if n.sign() == num_bigint::Sign::Minus {
                return None;
            }
            Rational::from_integer(n)
        }
    };
    Some(if neg { -q } else { q })
}
