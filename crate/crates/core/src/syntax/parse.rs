//! Hand-written lexer and recursive-descent parser for `.lp` text.
//!
//! ```text
//! statement := '#atoms' atom (',' atom)* '.'
//!            | head? (':-' body)? '.'
//! head      := element ('|' element)*
//! body      := element (',' element)*
//! element   := 'not' element | atom | '#true' | '#false' | '(' formula ')'
//! formula   := element ( ('&' element)+ | ('|' element)+ | '->' element )?
//! ```
//!
//! Programs only admit atoms in heads and `a`, `not a`, `not not a` in
//! bodies. Theories admit any element; a statement made of a single
//! parenthesized element is a bare formula rather than a fact.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use super::{is_identifier, Atom, Formula, Program, Rule, Theory};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
struct Pos {
    line: usize,
    column: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Not,
    If,
    Comma,
    Bar,
    Amp,
    Arrow,
    Dot,
    LParen,
    RParen,
    True,
    False,
    AtomsDirective,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Not => f.write_str("`not`"),
            Tok::If => f.write_str("`:-`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Bar => f.write_str("`|`"),
            Tok::Amp => f.write_str("`&`"),
            Tok::Arrow => f.write_str("`->`"),
            Tok::Dot => f.write_str("`.`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::True => f.write_str("`#true`"),
            Tok::False => f.write_str("`#false`"),
            Tok::AtomsDirective => f.write_str("`#atoms`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

fn error(pos: Pos, message: impl Into<String>) -> ParseError {
    ParseError {
        line: pos.line,
        column: pos.column,
        message: message.into(),
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, Pos)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let mut pos = Pos { line: 1, column: 1 };
    let advance = |i: &mut usize, pos: &mut Pos, n: usize| {
        for _ in 0..n {
            if chars[*i] == '\n' {
                pos.line += 1;
                pos.column = 1;
            } else {
                pos.column += 1;
            }
            *i += 1;
        }
    };
    while i < chars.len() {
        let c = chars[i];
        let start = pos;
        if c.is_whitespace() {
            advance(&mut i, &mut pos, 1);
            continue;
        }
        if c == '%' {
            while i < chars.len() && chars[i] != '\n' {
                advance(&mut i, &mut pos, 1);
            }
            continue;
        }
        let peek = chars.get(i + 1).copied();
        let (tok, len) = match c {
            ':' if peek == Some('-') => (Tok::If, 2),
            '-' if peek == Some('>') => (Tok::Arrow, 2),
            ',' => (Tok::Comma, 1),
            '|' => (Tok::Bar, 1),
            '&' => (Tok::Amp, 1),
            '.' => (Tok::Dot, 1),
            '(' => (Tok::LParen, 1),
            ')' => (Tok::RParen, 1),
            '#' => {
                let word: String = chars[i + 1..]
                    .iter()
                    .take_while(|c| c.is_ascii_alphanumeric() || **c == '_')
                    .collect();
                let tok = match word.as_str() {
                    "atoms" => Tok::AtomsDirective,
                    "true" => Tok::True,
                    "false" => Tok::False,
                    _ => return Err(error(start, format!("unknown directive `#{word}`"))),
                };
                (tok, word.chars().count() + 1)
            }
            c if c.is_alphabetic() || c == '_' => {
                let word: String = chars[i..]
                    .iter()
                    .take_while(|c| c.is_alphanumeric() || **c == '_')
                    .collect();
                if word == "not" {
                    (Tok::Not, 3)
                } else if is_identifier(&word) {
                    let len = word.chars().count();
                    (Tok::Ident(word), len)
                } else {
                    return Err(error(
                        start,
                        format!("invalid atom name `{word}`: atoms start with a lowercase letter"),
                    ));
                }
            }
            _ => return Err(error(start, format!("unexpected character `{c}`"))),
        };
        out.push((tok, start));
        advance(&mut i, &mut pos, len);
    }
    out.push((Tok::Eof, pos));
    Ok(out)
}

/// A head or body element before it is lowered to rule or formula form.
struct Element {
    formula: Formula,
    pos: Pos,
    parenthesized: bool,
    /// `(number of leading nots, atom)` when the element is a plain literal.
    literal: Option<(usize, Atom)>,
}

enum Statement {
    Declare(Vec<Atom>, Pos),
    Clause {
        head: Vec<Element>,
        body: Vec<Element>,
        has_if: bool,
    },
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let tok = self.toks[self.at].0.clone();
        if tok != Tok::Eof {
            self.at += 1;
        }
        tok
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), ParseError> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            Err(error(
                self.pos(),
                format!("expected {what}, found {}", self.peek()),
            ))
        }
    }

    fn statements(&mut self) -> Result<Vec<Statement>, ParseError> {
        let mut out = Vec::new();
        while *self.peek() != Tok::Eof {
            out.push(self.statement()?);
        }
        Ok(out)
    }

    fn statement(&mut self) -> Result<Statement, ParseError> {
        let pos = self.pos();
        if *self.peek() == Tok::AtomsDirective {
            self.bump();
            let mut declared = Vec::new();
            if *self.peek() != Tok::Dot {
                declared.push(self.atom()?);
                while *self.peek() == Tok::Comma {
                    self.bump();
                    declared.push(self.atom()?);
                }
            }
            self.expect(Tok::Dot, "`,` or `.` in `#atoms` declaration")?;
            return Ok(Statement::Declare(declared, pos));
        }
        let mut head = Vec::new();
        if !matches!(self.peek(), Tok::If | Tok::Dot) {
            head.push(self.element()?);
            while *self.peek() == Tok::Bar {
                self.bump();
                head.push(self.element()?);
            }
        }
        let mut body = Vec::new();
        let has_if = *self.peek() == Tok::If;
        if has_if {
            self.bump();
            body.push(self.element()?);
            while *self.peek() == Tok::Comma {
                self.bump();
                body.push(self.element()?);
            }
        }
        let what = match (has_if, head.is_empty()) {
            (true, _) => "`,` or `.`",
            (false, true) => "a rule",
            (false, false) => "`|`, `:-` or `.`",
        };
        self.expect(Tok::Dot, what)?;
        if head.is_empty() && body.is_empty() {
            return Err(error(
                pos,
                "a rule needs a non-empty head or a non-empty body",
            ));
        }
        Ok(Statement::Clause { head, body, has_if })
    }

    fn atom(&mut self) -> Result<Atom, ParseError> {
        let pos = self.pos();
        match self.bump() {
            Tok::Ident(name) => Ok(Atom::new(&name).expect("lexer checks identifiers")),
            other => Err(error(pos, format!("expected an atom, found {other}"))),
        }
    }

    fn element(&mut self) -> Result<Element, ParseError> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Not => {
                self.bump();
                let inner = self.element()?;
                Ok(Element {
                    formula: Formula::implies(inner.formula, Formula::Falsum),
                    pos,
                    parenthesized: false,
                    literal: inner.literal.map(|(n, a)| (n + 1, a)),
                })
            }
            Tok::Ident(_) => {
                let a = self.atom()?;
                Ok(Element {
                    formula: Formula::Atom(a.clone()),
                    pos,
                    parenthesized: false,
                    literal: Some((0, a)),
                })
            }
            Tok::True | Tok::False => {
                let formula = if self.bump() == Tok::True {
                    Formula::verum()
                } else {
                    Formula::Falsum
                };
                Ok(Element {
                    formula,
                    pos,
                    parenthesized: false,
                    literal: None,
                })
            }
            Tok::LParen => {
                self.bump();
                let formula = self.formula()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(Element {
                    formula,
                    pos,
                    parenthesized: true,
                    literal: None,
                })
            }
            other => Err(error(
                pos,
                format!("expected an atom, `not`, `#true`, `#false` or `(`, found {other}"),
            )),
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        let first = self.element()?.formula;
        match self.peek().clone() {
            Tok::Amp | Tok::Bar => {
                let op = self.peek().clone();
                let mut items = vec![first];
                while *self.peek() == op {
                    self.bump();
                    items.push(self.element()?.formula);
                }
                if matches!(self.peek(), Tok::Amp | Tok::Bar | Tok::Arrow) {
                    return Err(error(
                        self.pos(),
                        "mixed connectives need explicit parentheses",
                    ));
                }
                Ok(if op == Tok::Amp {
                    Formula::And(items)
                } else {
                    Formula::Or(items)
                })
            }
            Tok::Arrow => {
                self.bump();
                let rhs = self.element()?.formula;
                if matches!(self.peek(), Tok::Amp | Tok::Bar | Tok::Arrow) {
                    return Err(error(
                        self.pos(),
                        "mixed connectives need explicit parentheses",
                    ));
                }
                Ok(Formula::implies(first, rhs))
            }
            _ => Ok(first),
        }
    }
}

fn statements(text: &str) -> Result<(Vec<Statement>, BTreeSet<Atom>), ParseError> {
    let mut parser = Parser {
        toks: lex(text)?,
        at: 0,
    };
    let stmts = parser.statements()?;
    let mut declared = BTreeSet::new();
    let mut seen_directive = false;
    for stmt in &stmts {
        if let Statement::Declare(list, pos) = stmt {
            if seen_directive {
                return Err(error(*pos, "duplicate `#atoms` declaration"));
            }
            seen_directive = true;
            declared.extend(list.iter().cloned());
        }
    }
    Ok((stmts, declared))
}

/// Parses program text; rules keep their source order.
pub fn parse_program(text: &str) -> Result<Program, ParseError> {
    let (stmts, declared) = statements(text)?;
    let mut rules = Vec::new();
    for stmt in stmts {
        let Statement::Clause { head, body, .. } = stmt else {
            continue;
        };
        let mut head_set = BTreeSet::new();
        for el in head {
            match el.literal {
                Some((0, a)) if !el.parenthesized => {
                    head_set.insert(a);
                }
                _ => return Err(error(el.pos, "expected an atom in a rule head")),
            }
        }
        let (mut pos, mut neg, mut negneg) = (BTreeSet::new(), BTreeSet::new(), BTreeSet::new());
        for el in body {
            match el.literal {
                Some((0, a)) => pos.insert(a),
                Some((1, a)) => neg.insert(a),
                Some((2, a)) => negneg.insert(a),
                _ => {
                    return Err(error(
                        el.pos,
                        "expected a body literal `a`, `not a` or `not not a`",
                    ))
                }
            };
        }
        // Both parts empty was rejected by the parser.
        rules.push(Rule::new(head_set, pos, neg, negneg).expect("non-empty rule"));
    }
    Ok(Program::with_signature(rules, declared))
}

/// Parses theory text: rules whose elements may be arbitrary formulas,
/// plus bare parenthesized formulas.
pub fn parse_theory(text: &str) -> Result<Theory, ParseError> {
    let (stmts, declared) = statements(text)?;
    let mut formulas = Vec::new();
    for stmt in stmts {
        let Statement::Clause {
            mut head,
            body,
            has_if,
            ..
        } = stmt
        else {
            continue;
        };
        if !has_if && head.len() == 1 && head[0].parenthesized {
            formulas.push(head.pop().unwrap().formula);
            continue;
        }
        let head = join(head, Formula::Falsum, Formula::Or);
        let body = join(body, Formula::verum(), Formula::And);
        formulas.push(Formula::implies(body, head));
    }
    Ok(Theory::with_signature(formulas, declared))
}

fn join(mut elements: Vec<Element>, empty: Formula, many: fn(Vec<Formula>) -> Formula) -> Formula {
    match elements.len() {
        0 => empty,
        1 => elements.pop().unwrap().formula,
        _ => many(elements.into_iter().map(|e| e.formula).collect()),
    }
}
