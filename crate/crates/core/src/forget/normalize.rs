//! Turns theories back into programs, preserving HT models.
//!
//! Handles the fragment the forgetting operator produces and a bit more:
//! bodies built from atoms, conjunction, disjunction and negation of any
//! formula; heads built from atoms, conjunction, disjunction and negated
//! formulas; implications nested in heads at the top of a clause. The laws
//! used are all valid in Here-and-There:
//!
//! - `B -> (x -> y)` ≡ `B & x -> y`;
//! - `B -> not x | H` ≡ `B & not not x -> H`;
//! - `(B1 | B2) -> H` ≡ `(B1 -> H) & (B2 -> H)`;
//! - De Morgan for negated formulas, and `not (x -> y)` ≡ `not not x & not y`;
//! - `not not (x -> y)` ≡ `not x | not not y`, `not not not x` ≡ `not x`.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::syntax::{Atom, Formula, Program, Rule, Theory};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NormalizeError {
    #[error("cannot express `{0}` as program rules")]
    Unsupported(String),
    #[error("the theory is inconsistent and has no atom to write that down with")]
    InconsistentWithoutAtoms,
}

/// Literal conjunction: positive, negated, doubly negated atoms.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord)]
struct Conj {
    pos: BTreeSet<Atom>,
    neg: BTreeSet<Atom>,
    negneg: BTreeSet<Atom>,
}

impl Conj {
    fn merge(&self, other: &Conj) -> Conj {
        Conj {
            pos: self.pos.union(&other.pos).cloned().collect(),
            neg: self.neg.union(&other.neg).cloned().collect(),
            negneg: self.negneg.union(&other.negneg).cloned().collect(),
        }
    }

    /// `a & not a` and `not a & not not a` are both falsum.
    fn contradictory(&self) -> bool {
        !self.pos.is_disjoint(&self.neg) || !self.neg.is_disjoint(&self.negneg)
    }
}

type Dnf = Vec<Conj>;

fn truth() -> Dnf {
    vec![Conj::default()]
}

fn product(
    parts: impl IntoIterator<Item = Result<Dnf, NormalizeError>>,
) -> Result<Dnf, NormalizeError> {
    let mut acc = truth();
    for part in parts {
        let part = part?;
        let mut next = Vec::with_capacity(acc.len() * part.len());
        for x in &acc {
            for y in &part {
                let merged = x.merge(y);
                if !merged.contradictory() {
                    next.push(merged);
                }
            }
        }
        acc = next;
    }
    Ok(acc)
}

fn sum(
    parts: impl IntoIterator<Item = Result<Dnf, NormalizeError>>,
) -> Result<Dnf, NormalizeError> {
    let mut acc = Vec::new();
    for part in parts {
        acc.extend(part?);
    }
    Ok(acc)
}

fn literal(kind: fn(&mut Conj) -> &mut BTreeSet<Atom>, a: &Atom) -> Dnf {
    let mut c = Conj::default();
    kind(&mut c).insert(a.clone());
    vec![c]
}

fn body_dnf(f: &Formula) -> Result<Dnf, NormalizeError> {
    match f {
        Formula::Falsum => Ok(vec![]),
        Formula::Atom(a) => Ok(literal(|c| &mut c.pos, a)),
        Formula::And(items) => product(items.iter().map(body_dnf)),
        Formula::Or(items) => sum(items.iter().map(body_dnf)),
        Formula::Implies(x, y) if y.is_falsum() => negated_dnf(x),
        Formula::Implies(..) => Err(NormalizeError::Unsupported(f.to_string())),
    }
}

/// DNF of `not f`.
fn negated_dnf(f: &Formula) -> Result<Dnf, NormalizeError> {
    match f {
        Formula::Falsum => Ok(truth()),
        Formula::Atom(a) => Ok(literal(|c| &mut c.neg, a)),
        Formula::And(items) => sum(items.iter().map(negated_dnf)),
        Formula::Or(items) => product(items.iter().map(negated_dnf)),
        Formula::Implies(x, y) if y.is_falsum() => double_negated_dnf(x),
        Formula::Implies(x, y) => product([double_negated_dnf(x), negated_dnf(y)]),
    }
}

/// DNF of `not not f`.
fn double_negated_dnf(f: &Formula) -> Result<Dnf, NormalizeError> {
    match f {
        Formula::Falsum => Ok(vec![]),
        Formula::Atom(a) => Ok(literal(|c| &mut c.negneg, a)),
        Formula::And(items) => product(items.iter().map(double_negated_dnf)),
        Formula::Or(items) => sum(items.iter().map(double_negated_dnf)),
        Formula::Implies(x, y) if y.is_falsum() => negated_dnf(x),
        Formula::Implies(x, y) => sum([negated_dnf(x), double_negated_dnf(y)]),
    }
}

/// A head clause: atoms plus negated formulas, read as a disjunction.
#[derive(Debug, Clone, Default)]
struct HeadClause {
    atoms: BTreeSet<Atom>,
    negated: Vec<Formula>,
}

/// Conjunction of head clauses equivalent to `f` in a head position.
fn head_cnf(f: &Formula) -> Result<Vec<HeadClause>, NormalizeError> {
    match f {
        Formula::Falsum => Ok(vec![HeadClause::default()]),
        Formula::Atom(a) => Ok(vec![HeadClause {
            atoms: [a.clone()].into(),
            negated: vec![],
        }]),
        Formula::And(items) => {
            let mut out = Vec::new();
            for item in items {
                out.extend(head_cnf(item)?);
            }
            Ok(out)
        }
        Formula::Or(items) => {
            let mut acc = vec![HeadClause::default()];
            for item in items {
                let part = head_cnf(item)?;
                let mut next = Vec::with_capacity(acc.len() * part.len());
                for x in &acc {
                    for y in &part {
                        let mut merged = x.clone();
                        merged.atoms.extend(y.atoms.iter().cloned());
                        merged.negated.extend(y.negated.iter().cloned());
                        next.push(merged);
                    }
                }
                acc = next;
            }
            Ok(acc)
        }
        Formula::Implies(x, y) if y.is_falsum() => Ok(vec![HeadClause {
            atoms: BTreeSet::new(),
            negated: vec![(**x).clone()],
        }]),
        Formula::Implies(..) => Err(NormalizeError::Unsupported(f.to_string())),
    }
}

fn rules_for(
    body: Formula,
    head: &Formula,
    out: &mut Vec<Rule>,
    falsum: &mut bool,
) -> Result<(), NormalizeError> {
    if let Formula::Implies(x, y) = head {
        if !y.is_falsum() {
            let body = Formula::and([body, (**x).clone()]);
            return rules_for(body, y, out, falsum);
        }
    }
    for clause in head_cnf(head)? {
        // `B -> not x | H` becomes `B & not not x -> H`.
        let moved = clause
            .negated
            .iter()
            .map(|x| Formula::not(Formula::not(x.clone())));
        let full_body = Formula::and(std::iter::once(body.clone()).chain(moved));
        for conj in body_dnf(&full_body)? {
            let negneg = conj.negneg.difference(&conj.pos).cloned().collect();
            match Rule::new(clause.atoms.clone(), conj.pos, conj.neg, negneg) {
                Ok(rule) => {
                    if !out.contains(&rule) {
                        out.push(rule);
                    }
                }
                Err(_) => *falsum = true,
            }
        }
    }
    Ok(())
}

/// A program with the same HT models as `t` over the signature of `t`.
pub fn theory_to_program(t: &Theory) -> Result<Program, NormalizeError> {
    let mut rules = Vec::new();
    let mut falsum = false;
    for f in t.formulas() {
        match f {
            Formula::Implies(body, head) => {
                rules_for((**body).clone(), head, &mut rules, &mut falsum)?
            }
            other => rules_for(Formula::verum(), other, &mut rules, &mut falsum)?,
        }
    }
    if falsum {
        // `:- p.` and `:- not p.` together say `#false`.
        let p = t
            .signature()
            .first()
            .ok_or(NormalizeError::InconsistentWithoutAtoms)?;
        let single: BTreeSet<Atom> = [p.clone()].into();
        let none = BTreeSet::new;
        rules.push(Rule::new(none(), single.clone(), none(), none()).expect("non-empty body"));
        rules.push(Rule::new(none(), none(), single, none()).expect("non-empty body"));
    }
    Ok(Program::with_signature(
        rules,
        t.signature().iter().cloned(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semantics::{strongly_equivalent, SemanticsConfig};
    use crate::syntax::{parse_theory, render_program};

    fn normalize(text: &str) -> String {
        render_program(&theory_to_program(&parse_theory(text).unwrap()).unwrap())
    }

    fn check_equivalent(text: &str) {
        let t = parse_theory(text).unwrap();
        let p = theory_to_program(&t).unwrap();
        assert!(
            strongly_equivalent(&t, &p.to_theory(), &SemanticsConfig::default()).unwrap(),
            "{text} vs {}",
            render_program(&p)
        );
    }

    #[test]
    fn plain_rules_pass_through() {
        assert_eq!(
            normalize("a | b :- c, not d, not not e."),
            "a | b :- c, not d, not not e.\n"
        );
    }

    #[test]
    fn negated_heads_move_to_body() {
        assert_eq!(
            normalize("not not (c & not b) | b :- c."),
            "b :- c, not not b.\n"
        );
        check_equivalent("not not (c & not b) | b :- c.");
    }

    #[test]
    fn disjunctive_bodies_split() {
        assert_eq!(
            normalize("d :- ((e & not x) | (b & not c))."),
            "d :- e, not x.\nd :- b, not c.\n"
        );
        check_equivalent("d :- not ((e & not x) | (b & not c)).");
        check_equivalent("d :- not not ((e & not x) | (b & not c)).");
    }

    #[test]
    fn implications() {
        check_equivalent("(a -> (b -> c)).");
        check_equivalent("d :- not (a -> b).");
        check_equivalent("d :- not not (a -> b).");
        check_equivalent("(a & (b | not c)) :- d.");
        assert!(theory_to_program(&parse_theory("d :- (a -> b).").unwrap()).is_err());
    }

    #[test]
    fn falsum_statements() {
        check_equivalent(":- #true. #atoms a.");
        assert_eq!(
            theory_to_program(&parse_theory(":- #true.").unwrap()),
            Err(NormalizeError::InconsistentWithoutAtoms)
        );
        assert_eq!(normalize("c :- #false, d."), "#atoms c, d.\n");
    }
}
