//! Session files: a ring declaration, named ideals, sequences and matrices,
//! and search options.
//!
//! ```text
//! # comments run to the end of the line
//! option seed = 7;
//! ring R = QQ[x, y, z];
//! ideal a = (x*y, x*z, y*z);
//! seq s = [x*y, z*(x + y)];
//! matrix A = [[z]];
//! ```
//!
//! Coefficient fields are `QQ`, `GF(p)`, or `K`, which reads the
//! characteristic from `RELCOH_CHAR` (unset or `0` means `QQ`).

use std::fmt;

use num_bigint::BigInt;
use relcoh_core::{Field, Ideal, MonomialOrder, Polynomial, Ring};

/// Environment variable consulted by the `K[...]` field syntax.
pub const CHAR_ENV: &str = "RELCOH_CHAR";

const MAX_EXPONENT: u32 = 10_000;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {col}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Ideal(Vec<Polynomial>),
    Seq(Vec<Polynomial>),
    Matrix(Vec<Vec<Polynomial>>),
}

impl Value {
    pub fn kind(&self) -> &'static str {
        match self {
            Value::Ideal(_) => "ideal",
            Value::Seq(_) => "seq",
            Value::Matrix(_) => "matrix",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Declaration {
    pub name: String,
    pub value: Value,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Options {
    pub order: Option<MonomialOrder>,
    pub seed: Option<u64>,
    pub delta_max: Option<u32>,
    pub degree_bound: Option<u32>,
    pub max_candidates: Option<usize>,
    pub samples: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Session {
    ring_name: String,
    ring: Ring,
    declarations: Vec<Declaration>,
    options: Options,
}

impl Session {
    pub fn parse(text: &str) -> Result<Session, ParseError> {
        Parser::new(text)?.session()
    }

    pub fn ring_name(&self) -> &str {
        &self.ring_name
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn options(&self) -> &Options {
        &self.options
    }

    pub fn declarations(&self) -> &[Declaration] {
        &self.declarations
    }

    pub fn get(&self, name: &str) -> Option<&Value> {
        self.declarations.iter().find(|d| d.name == name).map(|d| &d.value)
    }

    /// The ideal generated by an `ideal` or `seq` declaration.
    pub fn ideal(&self, name: &str) -> Option<Ideal> {
        match self.get(name)? {
            Value::Ideal(g) | Value::Seq(g) => Some(Ideal::new(&self.ring, g.clone())),
            Value::Matrix(_) => None,
        }
    }

    /// Elements of a `seq` or `ideal` declaration, in order.
    pub fn elements(&self, name: &str) -> Option<&[Polynomial]> {
        match self.get(name)? {
            Value::Ideal(g) | Value::Seq(g) => Some(g),
            Value::Matrix(_) => None,
        }
    }

    pub fn matrix(&self, name: &str) -> Option<&[Vec<Polynomial>]> {
        match self.get(name)? {
            Value::Matrix(m) => Some(m),
            _ => None,
        }
    }

    /// Parses a standalone expression over the session ring.
    pub fn parse_expr(&self, text: &str) -> Result<Polynomial, ParseError> {
        let mut p = Parser::new(text)?;
        p.ring = Some(self.ring.clone());
        let e = p.expr()?;
        p.expect_end()?;
        Ok(e)
    }
}

fn order_name(o: MonomialOrder) -> &'static str {
    match o {
        MonomialOrder::Lex => "lex",
        MonomialOrder::GrevLex => "grevlex",
        MonomialOrder::Elimination(_) => "elimination",
    }
}

impl fmt::Display for Session {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let o = &self.options;
        if let Some(order) = o.order {
            writeln!(f, "option order = {};", order_name(order))?;
        }
        let ints = [
            ("seed", o.seed),
            ("delta_max", o.delta_max.map(u64::from)),
            ("degree_bound", o.degree_bound.map(u64::from)),
            ("max_candidates", o.max_candidates.map(|v| v as u64)),
            ("samples", o.samples.map(|v| v as u64)),
        ];
        for (key, v) in ints {
            if let Some(v) = v {
                writeln!(f, "option {key} = {v};")?;
            }
        }
        writeln!(
            f,
            "ring {} = {}[{}];",
            self.ring_name,
            self.ring.field(),
            self.ring.names().join(", ")
        )?;
        let list = |ps: &[Polynomial]| ps.iter().map(|p| self.ring.format(p)).collect::<Vec<_>>().join(", ");
        for d in &self.declarations {
            match &d.value {
                Value::Ideal(g) if g.is_empty() => writeln!(f, "ideal {} = (0);", d.name)?,
                Value::Ideal(g) => writeln!(f, "ideal {} = ({});", d.name, list(g))?,
                Value::Seq(s) => writeln!(f, "seq {} = [{}];", d.name, list(s))?,
                Value::Matrix(m) => {
                    let rows: Vec<String> = m.iter().map(|r| format!("[{}]", list(r))).collect();
                    writeln!(f, "matrix {} = [{}];", d.name, rows.join(", "))?
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(String),
    Sym(char),
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(text: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let (mut line, mut col) = (1, 1);
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (l, k) = (line, col);
        if c == '\n' {
            chars.next();
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            col += 1;
            continue;
        }
        if c == '#' {
            while chars.peek().is_some_and(|&c| c != '\n') {
                chars.next();
            }
            continue;
        }
        let tok = if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&c) = chars.peek() {
                if c.is_ascii_alphanumeric() || c == '_' {
                    s.push(c);
                    chars.next();
                    col += 1;
                } else {
                    break;
                }
            }
            Tok::Ident(s)
        } else if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&c) = chars.peek() {
                if c.is_ascii_digit() {
                    s.push(c);
                    chars.next();
                    col += 1;
                } else {
                    break;
                }
            }
            Tok::Int(s)
        } else if "=;()[],+-*^/".contains(c) {
            chars.next();
            col += 1;
            Tok::Sym(c)
        } else {
            return Err(ParseError {
                line: l,
                col: k,
                message: format!("unexpected character '{c}'"),
            });
        };
        out.push(Token { tok, line: l, col: k });
    }
    out.push(Token {
        tok: Tok::End,
        line,
        col,
    });
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    ring: Option<Ring>,
}

impl Parser {
    fn new(text: &str) -> Result<Self, ParseError> {
        Ok(Parser {
            tokens: lex(text)?,
            pos: 0,
            ring: None,
        })
    }

    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn error_at(t: &Token, message: impl Into<String>) -> ParseError {
        ParseError {
            line: t.line,
            col: t.col,
            message: message.into(),
        }
    }

    fn describe(t: &Tok) -> String {
        match t {
            Tok::Ident(s) => format!("'{s}'"),
            Tok::Int(s) => format!("'{s}'"),
            Tok::Sym(c) => format!("'{c}'"),
            Tok::End => "end of input".into(),
        }
    }

    fn expect_sym(&mut self, c: char) -> Result<Token, ParseError> {
        let t = self.next();
        if t.tok == Tok::Sym(c) {
            Ok(t)
        } else {
            Err(Self::error_at(
                &t,
                format!("expected '{c}', found {}", Self::describe(&t.tok)),
            ))
        }
    }

    fn eat_sym(&mut self, c: char) -> bool {
        if self.peek().tok == Tok::Sym(c) {
            self.next();
            true
        } else {
            false
        }
    }

    fn ident(&mut self) -> Result<(String, Token), ParseError> {
        let t = self.next();
        match &t.tok {
            Tok::Ident(s) => Ok((s.clone(), t.clone())),
            other => Err(Self::error_at(
                &t,
                format!("expected a name, found {}", Self::describe(other)),
            )),
        }
    }

    fn integer<T: std::str::FromStr>(&mut self, what: &str) -> Result<T, ParseError> {
        let t = self.next();
        match &t.tok {
            Tok::Int(s) => s
                .parse()
                .map_err(|_| Self::error_at(&t, format!("{what} out of range"))),
            other => Err(Self::error_at(
                &t,
                format!("expected {what}, found {}", Self::describe(other)),
            )),
        }
    }

    fn expect_end(&mut self) -> Result<(), ParseError> {
        let t = self.peek().clone();
        if t.tok == Tok::End {
            Ok(())
        } else {
            Err(Self::error_at(&t, format!("unexpected {}", Self::describe(&t.tok))))
        }
    }

    fn session(mut self) -> Result<Session, ParseError> {
        let mut ring_name: Option<String> = None;
        let mut declarations: Vec<Declaration> = Vec::new();
        let mut options = Options::default();
        loop {
            let start = self.peek().clone();
            let keyword = match &start.tok {
                Tok::End => break,
                Tok::Ident(s) => s.clone(),
                other => {
                    return Err(Self::error_at(
                        &start,
                        format!("expected a statement, found {}", Self::describe(other)),
                    ))
                }
            };
            self.next();
            match keyword.as_str() {
                "option" => self.option(&mut options, ring_name.is_some())?,
                "ring" => {
                    if ring_name.is_some() {
                        return Err(Self::error_at(&start, "ring declared twice"));
                    }
                    let (name, _) = self.ident()?;
                    self.expect_sym('=')?;
                    let field = self.field()?;
                    let names = self.variables()?;
                    self.expect_sym(';')?;
                    let order = options.order.unwrap_or_default();
                    self.ring = Some(
                        Ring::new(&names, field, order)
                            .ok_or_else(|| Self::error_at(&start, "variable names must be distinct"))?,
                    );
                    ring_name = Some(name);
                }
                "ideal" | "seq" | "matrix" => {
                    if self.ring.is_none() {
                        return Err(Self::error_at(&start, "declare the ring first"));
                    }
                    let (name, tok) = self.ident()?;
                    if ring_name.as_deref() == Some(name.as_str()) || declarations.iter().any(|d| d.name == name) {
                        return Err(Self::error_at(&tok, format!("duplicate name '{name}'")));
                    }
                    self.expect_sym('=')?;
                    let value = match keyword.as_str() {
                        "ideal" => {
                            self.expect_sym('(')?;
                            let g = self.expr_list(')')?;
                            Value::Ideal(g.into_iter().filter(|p| !p.is_zero()).collect())
                        }
                        "seq" => {
                            self.expect_sym('[')?;
                            Value::Seq(self.expr_list(']')?)
                        }
                        _ => Value::Matrix(self.matrix_rows()?),
                    };
                    self.expect_sym(';')?;
                    declarations.push(Declaration { name, value });
                }
                other => {
                    return Err(Self::error_at(&start, format!("unknown statement '{other}'")));
                }
            }
        }
        let ring = self.ring.take().ok_or_else(|| {
            let t = self.peek().clone();
            Self::error_at(&t, "no ring declared")
        })?;
        Ok(Session {
            ring_name: ring_name.expect("set with ring"),
            ring,
            declarations,
            options,
        })
    }

    fn option(&mut self, options: &mut Options, ring_seen: bool) -> Result<(), ParseError> {
        let (key, tok) = self.ident()?;
        self.expect_sym('=')?;
        match key.as_str() {
            "order" => {
                if ring_seen {
                    return Err(Self::error_at(&tok, "the order must be set before the ring"));
                }
                let (v, vt) = self.ident()?;
                options.order = Some(match v.as_str() {
                    "lex" => MonomialOrder::Lex,
                    "grevlex" => MonomialOrder::GrevLex,
                    _ => return Err(Self::error_at(&vt, format!("unknown order '{v}'"))),
                });
            }
            "seed" => options.seed = Some(self.integer("an integer")?),
            "delta_max" => options.delta_max = Some(self.integer("an integer")?),
            "degree_bound" => options.degree_bound = Some(self.integer("an integer")?),
            "max_candidates" => options.max_candidates = Some(self.integer("an integer")?),
            "samples" => options.samples = Some(self.integer("an integer")?),
            _ => return Err(Self::error_at(&tok, format!("unknown option '{key}'"))),
        }
        self.expect_sym(';')?;
        Ok(())
    }

    fn field(&mut self) -> Result<Field, ParseError> {
        let (name, tok) = self.ident()?;
        match name.as_str() {
            "QQ" => Ok(Field::Rationals),
            "GF" => {
                self.expect_sym('(')?;
                let pt = self.peek().clone();
                let p: u64 = self.integer("a prime")?;
                self.expect_sym(')')?;
                Field::prime(p).ok_or_else(|| Self::error_at(&pt, format!("{p} is not a supported prime")))
            }
            "K" => {
                let ch = std::env::var(CHAR_ENV).unwrap_or_default();
                let p: u64 = if ch.trim().is_empty() {
                    0
                } else {
                    ch.trim()
                        .parse()
                        .map_err(|_| Self::error_at(&tok, format!("{CHAR_ENV}='{ch}' is not an integer")))?
                };
                if p == 0 {
                    Ok(Field::Rationals)
                } else {
                    Field::prime(p).ok_or_else(|| Self::error_at(&tok, format!("{CHAR_ENV}={p} is not prime")))
                }
            }
            _ => Err(Self::error_at(&tok, format!("unknown field '{name}'"))),
        }
    }

    fn variables(&mut self) -> Result<Vec<String>, ParseError> {
        self.expect_sym('[')?;
        let mut names = Vec::new();
        loop {
            let (n, _) = self.ident()?;
            names.push(n);
            if !self.eat_sym(',') {
                break;
            }
        }
        self.expect_sym(']')?;
        Ok(names)
    }

    fn expr_list(&mut self, close: char) -> Result<Vec<Polynomial>, ParseError> {
        let mut out = Vec::new();
        if self.eat_sym(close) {
            return Ok(out);
        }
        loop {
            out.push(self.expr()?);
            if !self.eat_sym(',') {
                break;
            }
        }
        self.expect_sym(close)?;
        Ok(out)
    }

    fn matrix_rows(&mut self) -> Result<Vec<Vec<Polynomial>>, ParseError> {
        let open = self.expect_sym('[')?;
        let mut rows: Vec<Vec<Polynomial>> = Vec::new();
        loop {
            let t = self.expect_sym('[')?;
            let row = self.expr_list(']')?;
            if rows.first().is_some_and(|r| r.len() != row.len()) {
                return Err(Self::error_at(&t, "matrix rows differ in length"));
            }
            rows.push(row);
            if !self.eat_sym(',') {
                break;
            }
        }
        self.expect_sym(']')?;
        if rows.iter().any(|r| r.is_empty()) {
            return Err(Self::error_at(&open, "empty matrix row"));
        }
        Ok(rows)
    }

    fn ring(&self) -> &Ring {
        self.ring.as_ref().expect("expressions are parsed after the ring")
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.term()?;
        loop {
            if self.eat_sym('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat_sym('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat_sym('*') {
                acc = acc.mul(&self.unary()?);
            } else if self.peek().tok == Tok::Sym('/') {
                let slash = self.next();
                let d = self.unary()?;
                if !d.is_constant() || d.is_zero() {
                    return Err(Self::error_at(&slash, "division is only by nonzero constants"));
                }
                let inv = d.terms()[0].1.inv();
                acc = acc.scale(&inv);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Polynomial, ParseError> {
        if self.eat_sym('-') {
            return Ok(self.unary()?.neg());
        }
        let base = self.atom()?;
        if self.peek().tok == Tok::Sym('^') {
            self.next();
            let t = self.peek().clone();
            let e: u32 = self.integer("an exponent")?;
            if e > MAX_EXPONENT {
                return Err(Self::error_at(&t, format!("exponent above {MAX_EXPONENT}")));
            }
            if e == 0 {
                return Ok(self.ring().one());
            }
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial, ParseError> {
        let t = self.next();
        match &t.tok {
            Tok::Int(s) => {
                let v: BigInt = s.parse().expect("lexed digits");
                Ok(self.ring().constant(self.ring().field().from_bigint(&v)))
            }
            Tok::Ident(name) => {
                let ring = self.ring();
                ring.var_index(name)
                    .map(|i| ring.var(i))
                    .ok_or_else(|| Self::error_at(&t, format!("unknown variable '{name}'")))
            }
            Tok::Sym('(') => {
                let e = self.expr()?;
                self.expect_sym(')')?;
                Ok(e)
            }
            other => Err(Self::error_at(
                &t,
                format!("expected an expression, found {}", Self::describe(other)),
            )),
        }
    }
}
