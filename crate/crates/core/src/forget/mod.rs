//! Forgetting a single atom by external-support substitution.
//!
//! [`forget_atom`] works in three steps on a program `Π` and an atom `a`:
//!
//! 1. `behead`: drop tautological rules with `a` in head and positive body,
//!    and drop `a` from heads of rules whose negated body contains `a`;
//! 2. remove the remaining rules whose head is exactly `{a}`;
//! 3. in what is left, replace every body occurrence of `a` (including the
//!    ones under `not` and `not not`) by the external support `ES(a)` and
//!    every head occurrence by `not not ES(a)`.
//!
//! `ES(a)` is always computed from the input program. The result is a
//! [`Theory`]; when `ES(a)` mentions `a` the output still does, which is
//! reported through [`Forgetting::residual`] instead of an error.

mod normalize;

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::depgraph::{
    is_singleton_headed, is_stratified, subprogram_for, theorem2_edge_condition,
};
use crate::syntax::{Atom, Formula, Program, Rule, Theory};

pub use normalize::{theory_to_program, NormalizeError};

/// Removes rules with `a ∈ head ∩ body+` and removes `a` from the head of
/// rules with `a ∈ head ∩ body-`. Strongly equivalent to the input.
pub fn behead(p: &Program, a: &Atom) -> Program {
    let rules = p
        .rules()
        .iter()
        .filter(|r| !(r.head().contains(a) && r.body_pos().contains(a)))
        .map(|r| {
            if r.head().contains(a) && r.body_neg().contains(a) {
                r.without_head_atom(a)
                    .expect("negated body keeps the rule non-empty")
            } else {
                r.clone()
            }
        })
        .collect();
    Program::with_signature(rules, p.signature().iter().cloned())
}

/// `ES(a)`: the disjunction, over the rules that may support `a`, of the
/// rule body conjoined with the negation of the other head atoms.
pub fn external_support(p: &Program, a: &Atom) -> Formula {
    let support = subprogram_for(p, a);
    Formula::or(support.program.rules().iter().map(|r| {
        let others = Formula::or(r.head().iter().filter(|h| *h != a).map(Formula::atom));
        let mut conjuncts = r.body_literals();
        conjuncts.push(Formula::not(others));
        Formula::and(conjuncts)
    }))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Forgetting {
    pub atom: Atom,
    pub theory: Theory,
    pub external_support: Formula,
    /// The forgotten atom still occurs in `theory`. Only possible when it
    /// occurs in its own external support.
    pub residual: bool,
}

pub fn forget_atom(p: &Program, a: &Atom) -> Forgetting {
    let es = external_support(p, a);
    let in_body = |b: &Atom| if b == a { es.clone() } else { Formula::atom(b) };
    let formulas: Vec<Formula> = behead(p, a)
        .rules()
        .iter()
        .filter(|r| !(r.head().len() == 1 && r.head().contains(a)))
        .map(|r| substitute_rule(r, a, &es, &in_body))
        .collect();
    let theory =
        Theory::with_signature(formulas, p.signature().iter().filter(|b| *b != a).cloned());
    Forgetting {
        atom: a.clone(),
        residual: theory.mentions(a),
        theory,
        external_support: es,
    }
}

fn substitute_rule(
    r: &Rule,
    a: &Atom,
    es: &Formula,
    in_body: &impl Fn(&Atom) -> Formula,
) -> Formula {
    let body = r
        .body_pos()
        .iter()
        .map(in_body)
        .chain(r.body_neg().iter().map(|b| Formula::not(in_body(b))))
        .chain(
            r.body_negneg()
                .iter()
                .map(|b| Formula::not(Formula::not(in_body(b)))),
        );
    let head = r.head().iter().map(|h| {
        if h == a {
            Formula::not(Formula::not(es.clone()))
        } else {
            Formula::atom(h)
        }
    });
    Formula::implies(Formula::and(body), Formula::or(head))
}

/// Which sufficient condition for strong persistence the input meets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Guarantee {
    Theorem1,
    Corollary1,
    Theorem2,
    None,
}

impl fmt::Display for Guarantee {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Guarantee::Theorem1 => "Theorem1",
            Guarantee::Corollary1 => "Corollary1",
            Guarantee::Theorem2 => "Theorem2",
            Guarantee::None => "None",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ApplicabilityReport {
    pub atom: Atom,
    pub es_contains_atom: bool,
    pub singleton_headed: bool,
    pub stratified: bool,
    pub thm2_edge_ok: bool,
    pub guarantee: Guarantee,
    pub notes: Vec<String>,
}

impl ApplicabilityReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("reports serialize")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "atom: {}\nes_contains_atom: {}\nsingleton_headed: {}\nstratified: {}\nthm2_edge_ok: {}\nguarantee: {}\n",
            self.atom,
            self.es_contains_atom,
            self.singleton_headed,
            self.stratified,
            self.thm2_edge_ok,
            self.guarantee
        );
        for note in &self.notes {
            out.push_str("note: ");
            out.push_str(note);
            out.push('\n');
        }
        out
    }
}

/// Evaluates the side conditions. The guarantee is the first that holds of:
/// a stratified normal program, singleton heads with an `a`-free support,
/// the edge condition with an `a`-free support.
///
/// Stratification only counts for normal programs (at most one head atom
/// per rule). `{b | d. d :- b. c :- d.}` is stratified, yet forgetting `d`
/// changes the stable models under the context `b :- c.`.
pub fn applicability(p: &Program, a: &Atom) -> ApplicabilityReport {
    let es = external_support(p, a);
    let es_contains_atom = es.mentions(a);
    let singleton_headed = is_singleton_headed(p, a);
    let stratified = is_stratified(p).witness;
    let thm2_edge_ok = theorem2_edge_condition(p, a);
    let normal = p.rules().iter().all(|r| r.head().len() <= 1);

    let guarantee = if stratified && normal {
        Guarantee::Corollary1
    } else if singleton_headed && !es_contains_atom {
        Guarantee::Theorem1
    } else if thm2_edge_ok && !es_contains_atom {
        Guarantee::Theorem2
    } else {
        Guarantee::None
    };

    let mut notes = vec![format!("external support: {es}")];
    if !p.signature().contains(a) {
        notes.push(format!(
            "{a} does not occur in the program; forgetting it changes nothing"
        ));
    }
    if es_contains_atom {
        notes.push(format!(
            "{a} occurs in its own external support (choice pattern); the result keeps {a}"
        ));
    }
    if stratified && !normal {
        notes.push("the program is stratified but disjunctive; stratification alone guarantees nothing here".to_string());
    }
    notes.push(
        match guarantee {
            Guarantee::Corollary1 => "the program is normal and stratified (double negation counted as negation)",
            Guarantee::Theorem1 => "every rule with the atom in its head has a singleton head and the support is atom-free",
            Guarantee::Theorem2 => "no positive edges both into and out of the atom and the support is atom-free",
            Guarantee::None => "no sufficient condition holds; strong persistence is not guaranteed",
        }
        .to_string(),
    );

    ApplicabilityReport {
        atom: a.clone(),
        es_contains_atom,
        singleton_headed,
        stratified,
        thm2_edge_ok,
        guarantee,
        notes,
    }
}

/// One step of [`forget_atoms`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForgetStep {
    pub report: ApplicabilityReport,
    pub residual: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceForgetting {
    pub theory: Theory,
    pub steps: Vec<ForgetStep>,
}

impl SequenceForgetting {
    /// Every step met one of the sufficient conditions.
    pub fn fully_guaranteed(&self) -> bool {
        self.steps
            .iter()
            .all(|s| s.report.guarantee != Guarantee::None && !s.residual)
    }
}

/// Forgets `order` one atom at a time, left to right. Between steps the
/// intermediate theory is turned back into a program with
/// [`theory_to_program`]. Different orders may meet different conditions;
/// the per-step reports record which ones held.
pub fn forget_atoms(p: &Program, order: &[Atom]) -> Result<SequenceForgetting, NormalizeError> {
    let mut current = p.clone();
    let mut steps = Vec::with_capacity(order.len());
    let mut theory = p.to_theory();
    for (i, a) in order.iter().enumerate() {
        let report = applicability(&current, a);
        let out = forget_atom(&current, a);
        steps.push(ForgetStep {
            report,
            residual: out.residual,
        });
        theory = out.theory;
        if i + 1 < order.len() {
            current = theory_to_program(&theory)?;
        }
    }
    Ok(SequenceForgetting { theory, steps })
}

/// Atoms of `p` outside `keep`, in signature order.
pub fn auxiliary_atoms(p: &Program, keep: &BTreeSet<Atom>) -> Vec<Atom> {
    p.signature().difference(keep).cloned().collect()
}
