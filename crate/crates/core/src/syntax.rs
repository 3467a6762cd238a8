//! Concrete syntax: parsing sentences and printing them back.
//!
//! ```text
//! sentence := quant* formula
//! quant    := ("exists" | "forall") ident ("," ident)* "."
//! formula  := conj ("or" conj)*
//! conj     := atomf ("and" atomf)*
//! atomf    := "(" formula ")" | "not" atomf | "true" | "false"
//!           | term cmp term | "div" "(" int "," term ")"
//! cmp      := "<" | "<=" | "=" | "!=" | ">" | ">="
//! term     := linear combination of rationals, variables and sin(term)
//! ```
//!
//! Negations, non-strict and reversed comparisons are rewritten while
//! parsing, so the resulting matrix only contains the positive literal
//! kinds of [`Literal`].

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::arith::{Integer, Rational};
use crate::formula::{AffineForm, Formula, Literal};
use crate::term::{NormalTerm, RawTerm};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{col}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Quantifier {
    Exists,
    Forall,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sentence {
    pub prefix: Vec<(Quantifier, String)>,
    pub matrix: Formula,
}

impl Sentence {
    pub fn arity(&self) -> usize {
        self.prefix.len()
    }

    pub fn names(&self) -> Vec<String> {
        self.prefix.iter().map(|(_, n)| n.clone()).collect()
    }

    pub fn is_existential(&self) -> bool {
        self.prefix.iter().all(|(q, _)| *q == Quantifier::Exists)
    }
}

impl fmt::Display for Sentence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print(self))
    }
}

const KEYWORDS: &[&str] = &[
    "exists", "forall", "and", "or", "not", "sin", "div", "true", "false",
];

// ---------------------------------------------------------------------------
// Lexer

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(Integer),
    LParen,
    RParen,
    Comma,
    Dot,
    Plus,
    Minus,
    Star,
    Slash,
    Cmp(CmpOp),
    Eof,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum CmpOp {
    Lt,
    Le,
    Eq,
    Ne,
    Gt,
    Ge,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("'{s}'"),
        Tok::Int(i) => format!("'{i}'"),
        Tok::LParen => "'('".into(),
        Tok::RParen => "')'".into(),
        Tok::Comma => "','".into(),
        Tok::Dot => "'.'".into(),
        Tok::Plus => "'+'".into(),
        Tok::Minus => "'-'".into(),
        Tok::Star => "'*'".into(),
        Tok::Slash => "'/'".into(),
        Tok::Cmp(_) => "comparison".into(),
        Tok::Eof => "end of input".into(),
    }
}

fn lex(text: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut toks = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    let err = |line, col, message: String| ParseError { line, col, message };
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        let mut push = |tok, len: usize| {
            toks.push(Token {
                tok,
                line: l0,
                col: c0,
            });
            len
        };
        let len = match c {
            '\n' => {
                line += 1;
                col = 1;
                i += 1;
                continue;
            }
            c if c.is_whitespace() => 1,
            '#' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
                continue;
            }
            '(' => push(Tok::LParen, 1),
            ')' => push(Tok::RParen, 1),
            ',' => push(Tok::Comma, 1),
            '.' => push(Tok::Dot, 1),
            '+' => push(Tok::Plus, 1),
            '-' => push(Tok::Minus, 1),
            '*' => push(Tok::Star, 1),
            '/' => push(Tok::Slash, 1),
            '<' if chars.get(i + 1) == Some(&'=') => push(Tok::Cmp(CmpOp::Le), 2),
            '>' if chars.get(i + 1) == Some(&'=') => push(Tok::Cmp(CmpOp::Ge), 2),
            '!' if chars.get(i + 1) == Some(&'=') => push(Tok::Cmp(CmpOp::Ne), 2),
            '<' => push(Tok::Cmp(CmpOp::Lt), 1),
            '>' => push(Tok::Cmp(CmpOp::Gt), 1),
            '=' => push(Tok::Cmp(CmpOp::Eq), 1),
            c if c.is_ascii_digit() => {
                let s: String = chars[i..]
                    .iter()
                    .take_while(|c| c.is_ascii_digit())
                    .collect();
                let v: Integer = s.parse().expect("digits");
                push(Tok::Int(v), s.len())
            }
            c if c.is_alphabetic() || c == '_' => {
                let s: String = chars[i..]
                    .iter()
                    .take_while(|c| c.is_alphanumeric() || **c == '_' || **c == '\'')
                    .collect();
                let len = s.chars().count();
                push(Tok::Ident(s), len)
            }
            other => return Err(err(line, col, format!("unexpected character '{other}'"))),
        };
        i += len;
        col += len;
    }
    toks.push(Token {
        tok: Tok::Eof,
        line,
        col,
    });
    Ok(toks)
}

// ---------------------------------------------------------------------------
// Parser

enum Bool {
    And(Vec<Bool>),
    Or(Vec<Bool>),
    Not(Box<Bool>),
    Cmp(RawTerm, CmpOp, RawTerm),
    Div(Integer, AffineForm),
    Const(bool),
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    vars: HashMap<String, usize>,
}

type PResult<T> = Result<T, ParseError>;

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn error_here(&self, message: impl Into<String>) -> ParseError {
        let t = &self.toks[self.pos];
        ParseError {
            line: t.line,
            col: t.col,
            message: message.into(),
        }
    }

    fn unexpected(&self, wanted: &str) -> ParseError {
        self.error_here(format!(
            "expected {wanted}, found {}",
            describe(self.peek())
        ))
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == t {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: &Tok, wanted: &str) -> PResult<()> {
        if self.eat(t) {
            Ok(())
        } else {
            Err(self.unexpected(wanted))
        }
    }

    fn is_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    fn prefix(&mut self) -> PResult<Vec<(Quantifier, String)>> {
        let mut prefix = Vec::new();
        loop {
            let q = if self.is_keyword("exists") {
                Quantifier::Exists
            } else if self.is_keyword("forall") {
                Quantifier::Forall
            } else {
                return Ok(prefix);
            };
            self.bump();
            loop {
                let name = match self.peek() {
                    Tok::Ident(s) if !KEYWORDS.contains(&s.as_str()) => s.clone(),
                    _ => return Err(self.unexpected("a variable name")),
                };
                if self.vars.contains_key(&name) {
                    return Err(self.error_here(format!("variable '{name}' is bound twice")));
                }
                self.bump();
                self.vars.insert(name.clone(), prefix.len());
                prefix.push((q, name));
                if !self.eat(&Tok::Comma) {
                    break;
                }
            }
            self.expect(&Tok::Dot, "'.' after the quantified variables")?;
        }
    }

    fn formula(&mut self) -> PResult<Bool> {
        let mut parts = vec![self.conj()?];
        while self.is_keyword("or") {
            self.bump();
            parts.push(self.conj()?);
        }
        Ok(if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            Bool::Or(parts)
        })
    }

    fn conj(&mut self) -> PResult<Bool> {
        let mut parts = vec![self.atomf()?];
        while self.is_keyword("and") {
            self.bump();
            parts.push(self.atomf()?);
        }
        Ok(if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            Bool::And(parts)
        })
    }

    fn atomf(&mut self) -> PResult<Bool> {
        if self.is_keyword("not") {
            self.bump();
            return Ok(Bool::Not(Box::new(self.atomf()?)));
        }
        if self.is_keyword("true") {
            self.bump();
            return Ok(Bool::Const(true));
        }
        if self.is_keyword("false") {
            self.bump();
            return Ok(Bool::Const(false));
        }
        if self.is_keyword("div") {
            return self.divisibility();
        }
        if *self.peek() != Tok::LParen {
            return self.comparison();
        }
        // "(" opens either a term or a parenthesized formula
        let start = self.pos;
        let as_cmp = match self.comparison() {
            Ok(b) => return Ok(b),
            Err(e) => e,
        };
        self.pos = start;
        self.bump();
        let inner = self.formula().and_then(|f| {
            self.expect(&Tok::RParen, "')'")?;
            Ok(f)
        });
        inner.map_err(|e| {
            if (e.line, e.col) >= (as_cmp.line, as_cmp.col) {
                e
            } else {
                as_cmp
            }
        })
    }

    fn divisibility(&mut self) -> PResult<Bool> {
        self.bump();
        self.expect(&Tok::LParen, "'(' after div")?;
        let k = match self.bump() {
            Tok::Int(k) if k > 0 => k,
            Tok::Int(_) => {
                self.pos -= 1;
                return Err(self.error_here("divisibility modulus must be positive"));
            }
            _ => {
                self.pos -= 1;
                return Err(self.unexpected("an integer modulus"));
            }
        };
        self.expect(&Tok::Comma, "','")?;
        let (line, col) = (self.toks[self.pos].line, self.toks[self.pos].col);
        let raw = self.sum()?;
        self.expect(&Tok::RParen, "')'")?;
        let t = NormalTerm::normalize(&raw, self.vars.len()).expect("bound variables");
        if !t.is_affine() {
            return Err(ParseError {
                line,
                col,
                message: "non-affine argument to div".into(),
            });
        }
        Ok(Bool::Div(k, AffineForm(t.linear().to_vec())))
    }

    fn comparison(&mut self) -> PResult<Bool> {
        let lhs = self.sum()?;
        let op = match self.peek() {
            Tok::Cmp(op) => *op,
            _ => return Err(self.unexpected("a comparison")),
        };
        self.bump();
        let rhs = self.sum()?;
        Ok(Bool::Cmp(lhs, op, rhs))
    }

    fn sum(&mut self) -> PResult<RawTerm> {
        let mut parts = vec![self.product()?];
        loop {
            if self.eat(&Tok::Plus) {
                parts.push(self.product()?);
            } else if self.eat(&Tok::Minus) {
                parts.push(-self.product()?);
            } else {
                break;
            }
        }
        Ok(if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            RawTerm::Sum(parts)
        })
    }

    fn starts_operand(&self) -> bool {
        match self.peek() {
            Tok::Int(_) | Tok::LParen => true,
            Tok::Ident(s) => s == "sin" || !KEYWORDS.contains(&s.as_str()),
            _ => false,
        }
    }

    fn product(&mut self) -> PResult<RawTerm> {
        let mut acc = self.unary()?;
        loop {
            let at = self.pos;
            if self.eat(&Tok::Slash) {
                let rhs = self.unary()?;
                let d = match rhs.as_constant() {
                    Some(d) => d,
                    None => {
                        self.pos = at;
                        return Err(self.error_here("division by a non-constant term"));
                    }
                };
                if d == 0 {
                    self.pos = at;
                    return Err(self.error_here("malformed rational: zero denominator"));
                }
                acc = RawTerm::scale(d.recip(), acc);
                continue;
            }
            let explicit = self.eat(&Tok::Star);
            if !explicit && !self.starts_operand() {
                return Ok(acc);
            }
            let rhs = self.unary()?;
            acc = match (acc.as_constant(), rhs.as_constant()) {
                (Some(c), _) => RawTerm::scale(c, rhs),
                (_, Some(c)) => RawTerm::scale(c, acc),
                _ => {
                    self.pos = at;
                    return Err(self.error_here("non-linear product"));
                }
            };
        }
    }

    fn unary(&mut self) -> PResult<RawTerm> {
        if self.eat(&Tok::Minus) {
            return Ok(-self.unary()?);
        }
        if self.eat(&Tok::Plus) {
            return self.unary();
        }
        self.primary()
    }

    fn primary(&mut self) -> PResult<RawTerm> {
        match self.peek().clone() {
            Tok::Int(i) => {
                self.bump();
                Ok(RawTerm::Const(Rational::from(i)))
            }
            Tok::LParen => {
                self.bump();
                let t = self.sum()?;
                self.expect(&Tok::RParen, "')'")?;
                Ok(t)
            }
            Tok::Ident(s) if s == "sin" => {
                self.bump();
                self.expect(&Tok::LParen, "'(' after sin")?;
                let t = self.sum()?;
                self.expect(&Tok::RParen, "')'")?;
                Ok(RawTerm::sin(t))
            }
            Tok::Ident(s) if !KEYWORDS.contains(&s.as_str()) => match self.vars.get(&s) {
                Some(&i) => {
                    self.bump();
                    Ok(RawTerm::Var(i))
                }
                None => Err(self.error_here(format!("unbound identifier '{s}'"))),
            },
            _ => Err(self.unexpected("a term")),
        }
    }
}

fn lower(b: &Bool, negated: bool, n: usize) -> Formula {
    let norm = |t: &RawTerm| NormalTerm::normalize(t, n).expect("bound variables");
    match b {
        Bool::Const(v) => {
            if *v != negated {
                Formula::truth()
            } else {
                Formula::falsity()
            }
        }
        Bool::Not(inner) => lower(inner, !negated, n),
        Bool::And(v) if !negated => Formula::conj(v.iter().map(|c| lower(c, false, n))),
        Bool::And(v) => Formula::disj(v.iter().map(|c| lower(c, true, n))),
        Bool::Or(v) if !negated => Formula::disj(v.iter().map(|c| lower(c, false, n))),
        Bool::Or(v) => Formula::conj(v.iter().map(|c| lower(c, true, n))),
        Bool::Div(k, p) => {
            let f = match Literal::divides(k, &p.0) {
                Some(l) => Formula::Leaf(l),
                None => Formula::truth(),
            };
            if negated {
                f.complement()
            } else {
                f
            }
        }
        Bool::Cmp(l, op, r) => {
            let (a, b) = (norm(l), norm(r));
            let lt = |x: &NormalTerm, y: &NormalTerm| Formula::Leaf(Literal::lt(x, y));
            let eq = || Formula::Leaf(Literal::eq_zero(&a.sub(&b)));
            let ne = || Formula::Leaf(Literal::neq_zero(&a.sub(&b)));
            use CmpOp::*;
            match (op, negated) {
                (Lt, false) | (Ge, true) => lt(&a, &b),
                (Gt, false) | (Le, true) => lt(&b, &a),
                (Le, false) | (Gt, true) => Formula::Or(vec![lt(&a, &b), eq()]),
                (Ge, false) | (Lt, true) => Formula::Or(vec![lt(&b, &a), eq()]),
                (Eq, false) | (Ne, true) => eq(),
                (Ne, false) | (Eq, true) => ne(),
            }
        }
    }
}

pub fn parse(text: &str) -> Result<Sentence, ParseError> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
        vars: HashMap::new(),
    };
    let prefix = p.prefix()?;
    let body = p.formula()?;
    if *p.peek() != Tok::Eof {
        return Err(p.unexpected("'and', 'or' or end of input"));
    }
    Ok(Sentence {
        matrix: lower(&body, false, prefix.len()),
        prefix,
    })
}

// ---------------------------------------------------------------------------
// Printer

pub fn default_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("x{i}")).collect()
}

fn print_sum(monomials: Vec<(Rational, Option<String>)>) -> String {
    let mut out = String::new();
    for (c, body) in monomials.into_iter().filter(|(c, _)| *c != 0) {
        let neg = c < 0;
        let mag = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        match body {
            None => out.push_str(&mag.to_string()),
            Some(b) if mag == 1 => out.push_str(&b),
            Some(b) => out.push_str(&format!("{mag}*{b}")),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Print a vector over `(x, 1, t_1, …)` where the atoms are rendered
/// recursively.
fn print_vector(v: &[Rational], atoms: &[String], names: &[String]) -> String {
    let n = names.len();
    let mut mono = Vec::new();
    for (c, name) in v[..n].iter().zip(names) {
        mono.push((c.clone(), Some(name.clone())));
    }
    for (c, a) in v[n + 1..].iter().zip(atoms) {
        mono.push((c.clone(), Some(a.clone())));
    }
    mono.push((v[n].clone(), None));
    print_sum(mono)
}

pub fn print_term(t: &NormalTerm, names: &[String]) -> String {
    let mut atoms: Vec<String> = Vec::with_capacity(t.atoms().len());
    for a in t.atoms() {
        let s = format!("sin({})", print_vector(&a.coeffs, &atoms, names));
        atoms.push(s);
    }
    let mut mono = Vec::new();
    let n = names.len();
    for (c, name) in t.linear()[..n].iter().zip(names) {
        mono.push((c.clone(), Some(name.clone())));
    }
    for s in t.summands() {
        let body = format!("sin({})", print_vector(&s.arg, &atoms, names));
        mono.push((s.coeff.clone(), Some(body)));
    }
    mono.push((t.linear()[n].clone(), None));
    print_sum(mono)
}

fn print_affine(q: &AffineForm, names: &[String]) -> String {
    print_term(&q.to_term(), names)
}

pub fn print_literal(l: &Literal, names: &[String]) -> String {
    match l {
        Literal::LinSineLess { q, t } => {
            format!("{} < {}", print_affine(q, names), print_term(t, names))
        }
        Literal::OscLess { c, t } => format!("{c} < {}", print_term(t, names)),
        Literal::LinSineEq { .. } | Literal::LinEq(_) => {
            format!("{} = 0", print_term(&l.term(), names))
        }
        Literal::LinSineNeq { .. } | Literal::LinNeq(_) => {
            format!("{} != 0", print_term(&l.term(), names))
        }
        Literal::Div { k, p } => {
            let p = AffineForm(p.iter().map(|c| Rational::from(c.clone())).collect());
            format!("div({k}, {})", print_affine(&p, names))
        }
    }
}

pub fn print_formula(f: &Formula, names: &[String]) -> String {
    let child = |c: &Formula| match c {
        Formula::And(v) | Formula::Or(v) if !v.is_empty() => {
            format!("({})", print_formula(c, names))
        }
        _ => print_formula(c, names),
    };
    match f {
        Formula::Leaf(l) => print_literal(l, names),
        Formula::And(v) if v.is_empty() => "true".into(),
        Formula::Or(v) if v.is_empty() => "false".into(),
        Formula::And(v) => v.iter().map(child).collect::<Vec<_>>().join(" and "),
        Formula::Or(v) => v.iter().map(child).collect::<Vec<_>>().join(" or "),
    }
}

pub fn print(s: &Sentence) -> String {
    let mut out = String::new();
    let mut i = 0;
    while i < s.prefix.len() {
        let q = s.prefix[i].0;
        let mut j = i;
        while j < s.prefix.len() && s.prefix[j].0 == q {
            j += 1;
        }
        let kw = match q {
            Quantifier::Exists => "exists",
            Quantifier::Forall => "forall",
        };
        let names: Vec<&str> = s.prefix[i..j].iter().map(|(_, n)| n.as_str()).collect();
        out.push_str(&format!("{kw} {}. ", names.join(", ")));
        i = j;
    }
    out.push_str(&print_formula(&s.matrix, &s.names()));
    out
}
