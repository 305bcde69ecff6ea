//! Line-oriented presentation files and a recursive-descent expression
//! parser for the generator polynomials.
//!
//! ```text
//! file   := line*
//! line   := field | vars | lowey | gen | comment | blank
//! field  := "field" INT
//! vars   := "vars" IDENT+
//! lowey  := "lowey" INT
//! gen    := "gen" expr
//! expr   := term (("+"|"-") term)*
//! term   := factor ("*" factor)*
//! factor := RATIONAL | IDENT ("^" INT)? | "(" expr ")" | "-" factor
//! ```
//!
//! `lowey l` adjoins the ideal <X1..Xn>^l to the generators; `#` starts a
//! comment.

use solvcert::algebra::{AlgebraError, IdealPresentation};
use solvcert::field::{FieldError, FieldSpec};
use solvcert::poly::{Monomial, Polynomial};
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CliInputError {
    #[error("line {line}, column {col}: {message}")]
    Parse { line: usize, col: usize, message: String },
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

fn perr<T>(line: usize, col: usize, message: impl Into<String>) -> Result<T, CliInputError> {
    Err(CliInputError::Parse { line, col, message: message.into() })
}

/// Parsed presentation file, pre-validation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentationFile {
    pub field: FieldSpec,
    pub var_names: Vec<String>,
    pub lowey_cap: Option<u32>,
    pub generators: Vec<Polynomial>,
}

impl PresentationFile {
    pub fn parse(text: &str) -> Result<Self, CliInputError> {
        let mut field_ch: Option<(u64, usize)> = None;
        let mut var_names: Option<(Vec<String>, usize)> = None;
        let mut lowey_cap: Option<(u32, usize)> = None;
        let mut gen_lines: Vec<(usize, String)> = Vec::new();

        for (idx, raw) in text.lines().enumerate() {
            let lineno = idx + 1;
            let line = match raw.find('#') {
                Some(pos) => &raw[..pos],
                None => raw,
            };
            let trimmed = line.trim();
            if trimmed.is_empty() {
                continue;
            }
            let (keyword, rest) = match trimmed.split_once(char::is_whitespace) {
                Some((k, r)) => (k, r.trim()),
                None => (trimmed, ""),
            };
            match keyword {
                "field" => {
                    if field_ch.is_some() {
                        return perr(lineno, 1, "duplicate field line");
                    }
                    let ch: u64 = rest
                        .parse()
                        .map_err(|_| CliInputError::Parse {
                            line: lineno,
                            col: 7,
                            message: format!("expected a nonnegative integer, found {rest:?}"),
                        })?;
                    field_ch = Some((ch, lineno));
                }
                "vars" => {
                    if var_names.is_some() {
                        return perr(lineno, 1, "duplicate vars line");
                    }
                    let names: Vec<String> = rest.split_whitespace().map(String::from).collect();
                    if names.is_empty() {
                        return perr(lineno, 6, "vars line needs at least one name");
                    }
                    for name in &names {
                        if !is_identifier(name) {
                            return perr(lineno, 6, format!("invalid variable name {name:?}"));
                        }
                    }
                    let mut sorted = names.clone();
                    sorted.sort();
                    sorted.dedup();
                    if sorted.len() != names.len() {
                        return perr(lineno, 6, "duplicate variable name");
                    }
                    var_names = Some((names, lineno));
                }
                "lowey" => {
                    if lowey_cap.is_some() {
                        return perr(lineno, 1, "duplicate lowey line");
                    }
                    let l: u32 = rest.parse().map_err(|_| CliInputError::Parse {
                        line: lineno,
                        col: 7,
                        message: format!("expected a positive integer, found {rest:?}"),
                    })?;
                    lowey_cap = Some((l, lineno));
                }
                "gen" => gen_lines.push((lineno, rest.to_string())),
                other => {
                    return perr(lineno, 1, format!("unknown directive {other:?}"));
                }
            }
        }

        let Some((ch, _)) = field_ch else {
            return perr(1, 1, "missing field line");
        };
        let field = FieldSpec::of_characteristic(ch)?;
        let Some((var_names, _)) = var_names else {
            return perr(1, 1, "missing vars line");
        };
        if gen_lines.is_empty() {
            return perr(1, 1, "missing gen line");
        }
        let var_index: HashMap<&str, usize> =
            var_names.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
        let mut generators = Vec::with_capacity(gen_lines.len());
        for (lineno, src) in &gen_lines {
            let poly = ExprParser::new(field, var_names.len(), &var_index, *lineno, src).parse()?;
            generators.push(poly);
        }
        Ok(PresentationFile {
            field,
            var_names,
            lowey_cap: lowey_cap.map(|(l, _)| l),
            generators,
        })
    }

    pub fn to_ideal(&self) -> Result<IdealPresentation, CliInputError> {
        Ok(IdealPresentation::new(
            self.field,
            self.var_names.len(),
            self.generators.clone(),
            self.lowey_cap,
        )?)
    }

    /// Canonical text: fixed directive order, canonically printed generators.
    /// Reparsing yields an equal presentation.
    pub fn canonical_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("field {}\n", self.field.characteristic()));
        out.push_str(&format!("vars {}\n", self.var_names.join(" ")));
        if let Some(l) = self.lowey_cap {
            out.push_str(&format!("lowey {l}\n"));
        }
        for g in &self.generators {
            out.push_str(&format!("gen {}\n", g.canonical_string(&self.var_names)));
        }
        out
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Int(u64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
}

struct ExprParser<'a> {
    field: FieldSpec,
    n_vars: usize,
    vars: &'a HashMap<&'a str, usize>,
    line: usize,
    tokens: Vec<(usize, Token)>, // (column, token)
    pos: usize,
    end_col: usize,
}

impl<'a> ExprParser<'a> {
    fn new(
        field: FieldSpec,
        n_vars: usize,
        vars: &'a HashMap<&'a str, usize>,
        line: usize,
        src: &str,
    ) -> Self {
        let mut tokens = Vec::new();
        let mut chars = src.char_indices().peekable();
        while let Some(&(i, c)) = chars.peek() {
            let col = i + 1;
            match c {
                ' ' | '\t' => {
                    chars.next();
                }
                '+' => {
                    tokens.push((col, Token::Plus));
                    chars.next();
                }
                '-' => {
                    tokens.push((col, Token::Minus));
                    chars.next();
                }
                '*' => {
                    tokens.push((col, Token::Star));
                    chars.next();
                }
                '^' => {
                    tokens.push((col, Token::Caret));
                    chars.next();
                }
                '/' => {
                    tokens.push((col, Token::Slash));
                    chars.next();
                }
                '(' => {
                    tokens.push((col, Token::LParen));
                    chars.next();
                }
                ')' => {
                    tokens.push((col, Token::RParen));
                    chars.next();
                }
                c if c.is_ascii_digit() => {
                    let mut v: u64 = 0;
                    while let Some(&(_, d)) = chars.peek() {
                        if let Some(digit) = d.to_digit(10) {
                            v = v.saturating_mul(10).saturating_add(digit as u64);
                            chars.next();
                        } else {
                            break;
                        }
                    }
                    tokens.push((col, Token::Int(v)));
                }
                c if c.is_ascii_alphabetic() => {
                    let mut name = String::new();
                    while let Some(&(_, d)) = chars.peek() {
                        if d.is_ascii_alphanumeric() || d == '_' {
                            name.push(d);
                            chars.next();
                        } else {
                            break;
                        }
                    }
                    tokens.push((col, Token::Ident(name)));
                }
                other => {
                    // tokenizer error surfaces as an invalid token position
                    tokens.push((col, Token::Ident(format!("\u{0}{other}"))));
                    chars.next();
                }
            }
        }
        let end_col = src.len() + 1;
        ExprParser { field, n_vars, vars, line, tokens, pos: 0, end_col }
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn col(&self) -> usize {
        self.tokens.get(self.pos).map(|(c, _)| *c).unwrap_or(self.end_col)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn parse(mut self) -> Result<Polynomial, CliInputError> {
        let poly = self.expr()?;
        if self.pos != self.tokens.len() {
            return perr(self.line, self.col(), "trailing input after expression");
        }
        Ok(poly)
    }

    fn expr(&mut self) -> Result<Polynomial, CliInputError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Some(Token::Minus) => {
                    self.bump();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, CliInputError> {
        let mut acc = self.factor()?;
        while matches!(self.peek(), Some(Token::Star)) {
            self.bump();
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial, CliInputError> {
        let col = self.col();
        match self.bump() {
            Some(Token::Int(v)) => {
                // RATIONAL := INT ("/" INT)?
                if matches!(self.peek(), Some(Token::Slash)) {
                    self.bump();
                    let dcol = self.col();
                    match self.bump() {
                        Some(Token::Int(d)) if d != 0 => Ok(Polynomial::constant(
                            self.field,
                            self.n_vars,
                            self.field.from_ratio(v as i64, d as i64),
                        )),
                        _ => perr(self.line, dcol, "expected a nonzero integer denominator"),
                    }
                } else {
                    Ok(Polynomial::constant(self.field, self.n_vars, self.field.from_i64(v as i64)))
                }
            }
            Some(Token::Ident(name)) => {
                let Some(&i) = self.vars.get(name.as_str()) else {
                    return perr(self.line, col, format!("undeclared variable {name:?}"));
                };
                let exp = if matches!(self.peek(), Some(Token::Caret)) {
                    self.bump();
                    let ecol = self.col();
                    match self.bump() {
                        Some(Token::Int(e)) if e <= u16::MAX as u64 => e as u16,
                        _ => return perr(self.line, ecol, "expected a small nonnegative exponent"),
                    }
                } else {
                    1
                };
                let mut exps = vec![0u16; self.n_vars];
                exps[i] = exp;
                Ok(Polynomial::term(self.field, Monomial::from_exps(exps), self.field.one()))
            }
            Some(Token::LParen) => {
                let inner = self.expr()?;
                let ccol = self.col();
                match self.bump() {
                    Some(Token::RParen) => Ok(inner),
                    _ => perr(self.line, ccol, "expected ')'"),
                }
            }
            Some(Token::Minus) => Ok(self.factor()?.neg()),
            Some(tok) => perr(self.line, col, format!("unexpected token {tok:?}")),
            None => perr(self.line, col, "unexpected end of expression"),
        }
    }
}
