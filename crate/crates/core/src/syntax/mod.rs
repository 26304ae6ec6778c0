//! Abstract syntax of propositional extended logic programs.
//!
//! A [`Program`] is a list of [`Rule`]s whose heads are disjunctions of atoms
//! and whose bodies hold positive, negated and doubly negated atoms. A
//! [`Theory`] is a list of arbitrary [`Formula`]s; it is the output language
//! of the forgetting operator, whose rules may carry non-atomic subformulas.

mod formula;
mod parse;
mod render;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serde::{Serialize, Serializer};
use thiserror::Error;

pub use formula::Formula;
pub use parse::{parse_program, parse_theory, ParseError};
pub use render::{render_formula, render_program, render_theory};

/// A propositional symbol. Atoms compare by name.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom(Arc<str>);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AtomError {
    #[error("`{0}` is not a valid atom name")]
    InvalidName(String),
    #[error("`not` is reserved and cannot be used as an atom")]
    Reserved,
}

impl Atom {
    /// Builds an atom, checking the identifier grammar
    /// `[a-z][A-Za-z0-9_]*` and rejecting the keyword `not`.
    pub fn new(name: &str) -> Result<Atom, AtomError> {
        if !is_identifier(name) {
            return Err(AtomError::InvalidName(name.to_string()));
        }
        if name == "not" {
            return Err(AtomError::Reserved);
        }
        Ok(Atom(Arc::from(name)))
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

pub(crate) fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_lowercase() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl Serialize for Atom {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.0)
    }
}

/// Shorthand used all over the tests: panics on an invalid name.
pub fn atom(name: &str) -> Atom {
    Atom::new(name).unwrap_or_else(|e| panic!("{e}"))
}

/// Builds a set of atoms from names.
pub fn atoms<'a>(names: impl IntoIterator<Item = &'a str>) -> BTreeSet<Atom> {
    names.into_iter().map(atom).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("a rule needs a non-empty head or a non-empty body")]
pub struct EmptyRule;

/// `h1 | ... | hn :- p1, ..., not n1, ..., not not d1, ...`
///
/// All four parts are sets, so duplicates collapse and printing order is
/// always lexicographic.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rule {
    head: BTreeSet<Atom>,
    body_pos: BTreeSet<Atom>,
    body_neg: BTreeSet<Atom>,
    body_negneg: BTreeSet<Atom>,
}

impl Rule {
    pub fn new(
        head: BTreeSet<Atom>,
        body_pos: BTreeSet<Atom>,
        body_neg: BTreeSet<Atom>,
        body_negneg: BTreeSet<Atom>,
    ) -> Result<Rule, EmptyRule> {
        let rule = Rule {
            head,
            body_pos,
            body_neg,
            body_negneg,
        };
        if rule.head.is_empty() && rule.body_is_empty() {
            return Err(EmptyRule);
        }
        Ok(rule)
    }

    pub fn fact(head: BTreeSet<Atom>) -> Result<Rule, EmptyRule> {
        Rule::new(head, BTreeSet::new(), BTreeSet::new(), BTreeSet::new())
    }

    pub fn head(&self) -> &BTreeSet<Atom> {
        &self.head
    }

    pub fn body_pos(&self) -> &BTreeSet<Atom> {
        &self.body_pos
    }

    pub fn body_neg(&self) -> &BTreeSet<Atom> {
        &self.body_neg
    }

    pub fn body_negneg(&self) -> &BTreeSet<Atom> {
        &self.body_negneg
    }

    pub fn body_is_empty(&self) -> bool {
        self.body_pos.is_empty() && self.body_neg.is_empty() && self.body_negneg.is_empty()
    }

    pub fn is_constraint(&self) -> bool {
        self.head.is_empty()
    }

    /// Every atom mentioned anywhere in the rule.
    pub fn atoms(&self) -> impl Iterator<Item = &Atom> {
        self.head
            .iter()
            .chain(&self.body_pos)
            .chain(&self.body_neg)
            .chain(&self.body_negneg)
    }

    pub fn mentions(&self, a: &Atom) -> bool {
        self.head.contains(a)
            || self.body_pos.contains(a)
            || self.body_neg.contains(a)
            || self.body_negneg.contains(a)
    }

    /// Same rule with `a` dropped from the head, or `None` when that leaves
    /// an empty rule.
    pub fn without_head_atom(&self, a: &Atom) -> Option<Rule> {
        let mut head = self.head.clone();
        head.remove(a);
        Rule::new(
            head,
            self.body_pos.clone(),
            self.body_neg.clone(),
            self.body_negneg.clone(),
        )
        .ok()
    }

    /// The implication `body -> head`, reading `not` as `-> #false`.
    pub fn to_formula(&self) -> Formula {
        Formula::implies(
            self.body_formula(),
            Formula::or(self.head.iter().cloned().map(Formula::Atom)),
        )
    }

    /// Conjunction of the body literals: positive atoms, then `not b`, then
    /// `not not d`, each group in atom order.
    pub fn body_formula(&self) -> Formula {
        Formula::and(self.body_literals())
    }

    pub(crate) fn body_literals(&self) -> Vec<Formula> {
        self.body_pos
            .iter()
            .cloned()
            .map(Formula::Atom)
            .chain(
                self.body_neg
                    .iter()
                    .cloned()
                    .map(|b| Formula::not(Formula::Atom(b))),
            )
            .chain(
                self.body_negneg
                    .iter()
                    .cloned()
                    .map(|d| Formula::not(Formula::not(Formula::Atom(d)))),
            )
            .collect()
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        render::write_rule(f, self)
    }
}

/// An ordered list of rules plus the signature they live in.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Program {
    rules: Vec<Rule>,
    signature: BTreeSet<Atom>,
}

impl Program {
    pub fn new(rules: Vec<Rule>) -> Program {
        let signature = rules.iter().flat_map(Rule::atoms).cloned().collect();
        Program { rules, signature }
    }

    /// Builds a program whose signature is widened by `declared`.
    pub fn with_signature(rules: Vec<Rule>, declared: impl IntoIterator<Item = Atom>) -> Program {
        let mut program = Program::new(rules);
        program.signature.extend(declared);
        program
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn signature(&self) -> &BTreeSet<Atom> {
        &self.signature
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    /// Atoms in the signature that no rule mentions.
    pub fn declared_only(&self) -> BTreeSet<Atom> {
        let used: BTreeSet<&Atom> = self.rules.iter().flat_map(Rule::atoms).collect();
        self.signature
            .iter()
            .filter(|a| !used.contains(a))
            .cloned()
            .collect()
    }

    /// Reads every rule as an implication.
    pub fn to_theory(&self) -> Theory {
        Theory::with_signature(
            self.rules.iter().map(Rule::to_formula).collect(),
            self.signature.iter().cloned(),
        )
    }

    /// Appends the rules of `other`, joining signatures.
    pub fn extended(&self, other: impl IntoIterator<Item = Rule>) -> Program {
        let mut rules = self.rules.clone();
        rules.extend(other);
        Program::with_signature(rules, self.signature.iter().cloned())
    }
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_program(self))
    }
}

/// An ordered list of formulas plus their signature.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Theory {
    formulas: Vec<Formula>,
    signature: BTreeSet<Atom>,
}

impl Theory {
    pub fn new(formulas: Vec<Formula>) -> Theory {
        let mut signature = BTreeSet::new();
        for f in &formulas {
            f.collect_atoms(&mut signature);
        }
        Theory {
            formulas,
            signature,
        }
    }

    pub fn with_signature(
        formulas: Vec<Formula>,
        declared: impl IntoIterator<Item = Atom>,
    ) -> Theory {
        let mut theory = Theory::new(formulas);
        theory.signature.extend(declared);
        theory
    }

    pub fn formulas(&self) -> &[Formula] {
        &self.formulas
    }

    pub fn signature(&self) -> &BTreeSet<Atom> {
        &self.signature
    }

    pub fn is_empty(&self) -> bool {
        self.formulas.is_empty()
    }

    pub fn len(&self) -> usize {
        self.formulas.len()
    }

    /// Atoms occurring in some formula (the signature minus declarations).
    pub fn occurring_atoms(&self) -> BTreeSet<Atom> {
        let mut out = BTreeSet::new();
        for f in &self.formulas {
            f.collect_atoms(&mut out);
        }
        out
    }

    pub fn declared_only(&self) -> BTreeSet<Atom> {
        let used = self.occurring_atoms();
        self.signature.difference(&used).cloned().collect()
    }

    pub fn mentions(&self, a: &Atom) -> bool {
        self.formulas.iter().any(|f| f.mentions(a))
    }

    /// Conjoins two theories: formulas are concatenated, signatures joined.
    pub fn union(&self, other: &Theory) -> Theory {
        let mut formulas = self.formulas.clone();
        formulas.extend(other.formulas.iter().cloned());
        Theory::with_signature(
            formulas,
            self.signature.iter().chain(&other.signature).cloned(),
        )
    }

    /// Rebuilds every formula through the smart constructors.
    pub fn canonical(&self) -> Theory {
        Theory::with_signature(
            self.formulas.iter().map(Formula::canonical).collect(),
            self.signature.iter().cloned(),
        )
    }

    /// Applies the HT-preserving rewrites of [`Formula::simplify`]. Formulas
    /// that become `#true` are dropped; the others stay in rule shape
    /// `body -> head`.
    pub fn simplified(&self) -> Theory {
        let formulas = self
            .formulas
            .iter()
            .map(Formula::simplify)
            .filter(|f| !f.is_verum())
            .map(|f| match f {
                Formula::Implies(..) => f,
                other => Formula::implies(Formula::verum(), other),
            })
            .collect();
        Theory::with_signature(formulas, self.signature.iter().cloned())
    }
}

impl From<&Program> for Theory {
    fn from(p: &Program) -> Theory {
        p.to_theory()
    }
}

impl fmt::Display for Theory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_theory(self))
    }
}

/// Signature extraction shared by programs and theories.
pub trait Signed {
    fn signature_of(&self) -> &BTreeSet<Atom>;
}

impl Signed for Program {
    fn signature_of(&self) -> &BTreeSet<Atom> {
        self.signature()
    }
}

impl Signed for Theory {
    fn signature_of(&self) -> &BTreeSet<Atom> {
        self.signature()
    }
}

pub fn signature_of<S: Signed>(s: &S) -> &BTreeSet<Atom> {
    s.signature_of()
}
