//! Empirical checks of strong and uniform persistence.
//!
//! A forgetting result `after` is compared with the original `before` by
//! adding a context program `Δ` over the public vocabulary `V` (the joint
//! signature minus the forgotten atoms) and comparing equilibrium models of
//! `before ∪ Δ`, projected on `V`, with those of `after ∪ Δ`.
//!
//! Fact contexts are finite, so [`check_uniform_persistence`] is complete.
//! [`check_strong_persistence`] walks a fixed, bounded family of contexts
//! and can only refute; a clean run ends in
//! [`Status::BudgetExhaustedPass`], never in [`Status::Pass`].

use std::collections::BTreeSet;
use std::fmt::Write;

use serde::Serialize;
use thiserror::Error;

use crate::exec;
use crate::semantics::{
    equilibrium_models_over, Interpretation, ModelSet, SemanticsConfig, SemanticsError,
};
use crate::syntax::{Atom, Program, Rule, Theory};

pub const DEFAULT_MAX_CONTEXTS: usize = 50_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("invalid context budget: {0}")]
    BudgetInvalid(&'static str),
    #[error("vocabulary of {0} atoms is too large to enumerate fact contexts")]
    VocabularyTooLarge(usize),
    #[error(transparent)]
    Semantics(#[from] SemanticsError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ContextBudget {
    /// Only the fact contexts.
    pub facts_only: bool,
    /// Total number of contexts, counted over all families.
    pub max_contexts: usize,
    /// Number of two-rule contexts; `None` means all of them.
    pub pair_cap: Option<usize>,
}

impl Default for ContextBudget {
    fn default() -> Self {
        ContextBudget {
            facts_only: false,
            max_contexts: DEFAULT_MAX_CONTEXTS,
            pair_cap: None,
        }
    }
}

impl ContextBudget {
    pub fn facts_only() -> Self {
        ContextBudget {
            facts_only: true,
            ..Self::default()
        }
    }

    fn validate(&self) -> Result<(), VerifyError> {
        if self.max_contexts == 0 {
            return Err(VerifyError::BudgetInvalid(
                "max_contexts must be at least 1",
            ));
        }
        if self.pair_cap == Some(0) {
            return Err(VerifyError::BudgetInvalid("pair cap must be at least 1"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ContextKind {
    Facts,
    Unary,
    Constraints,
    Mixed,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Context {
    pub rules: Vec<Rule>,
    pub kind: ContextKind,
}

impl Context {
    pub fn to_program(&self) -> Program {
        Program::new(self.rules.clone())
    }

    /// Rules on one line, space separated; the empty context is `""`.
    pub fn render(&self) -> String {
        self.rules
            .iter()
            .map(Rule::to_string)
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn mentions_any(&self, atoms: &BTreeSet<Atom>) -> bool {
        self.rules
            .iter()
            .flat_map(Rule::atoms)
            .any(|a| atoms.contains(a))
    }
}

fn set<'a>(atoms: impl IntoIterator<Item = &'a Atom>) -> BTreeSet<Atom> {
    atoms.into_iter().cloned().collect()
}

fn rule(head: BTreeSet<Atom>, pos: BTreeSet<Atom>, neg: BTreeSet<Atom>) -> Rule {
    Rule::new(head, pos, neg, BTreeSet::new()).expect("context rules are never empty")
}

/// The canonical context family over `v`, in this order:
///
/// 1. every set of facts, by increasing bitmask over the sorted vocabulary;
/// 2. every unary rule `p :- q.` then `p :- not q.` for `p ≠ q`, by `(p, q)`;
/// 3. every constraint `:- p.`, then every `:- p, q.` with `p < q`;
/// 4. every pair of items from 2 and 3, by index pairs `(i, j)` with `i < j`.
///
/// The whole sequence is cut at `budget.max_contexts`.
pub fn enumerate_contexts(
    v: &BTreeSet<Atom>,
    budget: &ContextBudget,
) -> Result<impl Iterator<Item = Context>, VerifyError> {
    budget.validate()?;
    let vocab: Vec<Atom> = v.iter().cloned().collect();
    if vocab.len() >= 64 {
        return Err(VerifyError::VocabularyTooLarge(vocab.len()));
    }
    let fact_vocab = vocab.clone();
    let facts = (0..1u64 << vocab.len()).map(move |mask| Context {
        rules: fact_vocab
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, a)| Rule::fact(set([a])).expect("fact has a head"))
            .collect(),
        kind: ContextKind::Facts,
    });

    let mut items: Vec<(Rule, ContextKind)> = Vec::new();
    if !budget.facts_only {
        for p in &vocab {
            for q in vocab.iter().filter(|q| *q != p) {
                items.push((
                    rule(set([p]), set([q]), BTreeSet::new()),
                    ContextKind::Unary,
                ));
                items.push((
                    rule(set([p]), BTreeSet::new(), set([q])),
                    ContextKind::Unary,
                ));
            }
        }
        for p in &vocab {
            items.push((
                rule(BTreeSet::new(), set([p]), BTreeSet::new()),
                ContextKind::Constraints,
            ));
        }
        for (i, p) in vocab.iter().enumerate() {
            for q in &vocab[i + 1..] {
                items.push((
                    rule(BTreeSet::new(), set([p, q]), BTreeSet::new()),
                    ContextKind::Constraints,
                ));
            }
        }
    }
    let singles: Vec<Context> = items
        .iter()
        .map(|(r, kind)| Context {
            rules: vec![r.clone()],
            kind: *kind,
        })
        .collect();
    let n = items.len();
    let pairs = (0..n)
        .flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
        .take(budget.pair_cap.unwrap_or(usize::MAX))
        .map(move |(i, j)| {
            let (ri, ki) = &items[i];
            let (rj, kj) = &items[j];
            Context {
                rules: vec![ri.clone(), rj.clone()],
                kind: if ki == kj { *ki } else { ContextKind::Mixed },
            }
        });
    Ok(facts.chain(singles).chain(pairs).take(budget.max_contexts))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    /// Complete check, no difference.
    Pass,
    Counterexample,
    /// The result still mentions a forgotten atom.
    ResidualAtom,
    /// Bounded check found no difference. Evidence, not proof.
    BudgetExhaustedPass,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Counterexample => "counterexample",
            Status::ResidualAtom => "residual_atom",
            Status::BudgetExhaustedPass => "budget_exhausted_pass",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub status: Status,
    pub witness: Option<Context>,
    pub models_before: Option<ModelSet<Interpretation>>,
    pub models_after: Option<ModelSet<Interpretation>>,
    pub contexts_checked: usize,
}

#[derive(Serialize)]
struct VerdictJson<'a> {
    status: Status,
    contexts_checked: usize,
    witness: Option<String>,
    models_before: Option<&'a BTreeSet<Interpretation>>,
    models_after: Option<&'a BTreeSet<Interpretation>>,
}

/// `{"status","contexts_checked","witness","models_before","models_after"}`;
/// the witness is the rendered context.
impl Serialize for Verdict {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        VerdictJson {
            status: self.status,
            contexts_checked: self.contexts_checked,
            witness: self.witness.as_ref().map(Context::render),
            models_before: self.models_before.as_ref().map(ModelSet::members),
            models_after: self.models_after.as_ref().map(ModelSet::members),
        }
        .serialize(serializer)
    }
}

impl Verdict {
    fn residual() -> Verdict {
        Verdict {
            status: Status::ResidualAtom,
            witness: None,
            models_before: None,
            models_after: None,
            contexts_checked: 0,
        }
    }

    pub fn is_counterexample(&self) -> bool {
        self.status == Status::Counterexample
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("verdicts serialize")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "status: {}\ncontexts_checked: {}\n",
            self.status.as_str(),
            self.contexts_checked
        );
        let note = match self.status {
            Status::Pass => "complete: every fact context over the public vocabulary was checked",
            Status::BudgetExhaustedPass => {
                "bounded: no difference within the context budget; evidence, not proof"
            }
            Status::Counterexample => {
                "the projected stable models differ under the witness context"
            }
            Status::ResidualAtom => "the result still mentions a forgotten atom",
        };
        let _ = writeln!(out, "note: {note}");
        if let Some(w) = &self.witness {
            let shown = if w.rules.is_empty() {
                "(empty context)".to_string()
            } else {
                w.render()
            };
            let _ = writeln!(out, "witness: {shown}");
        }
        for (label, models) in [
            ("models_before", &self.models_before),
            ("models_after", &self.models_after),
        ] {
            if let Some(m) = models {
                let listed: Vec<String> = m.iter().map(|i| i.to_string()).collect();
                let shown = if listed.is_empty() {
                    "(none)".to_string()
                } else {
                    listed.join(" ")
                };
                let _ = writeln!(out, "{label}: {shown}");
            }
        }
        out
    }
}

struct Comparison {
    before: Theory,
    after: Theory,
    vocabulary: BTreeSet<Atom>,
    signature: BTreeSet<Atom>,
    cfg: SemanticsConfig,
}

type Difference = (ModelSet<Interpretation>, ModelSet<Interpretation>);

impl Comparison {
    fn new(
        before: &Program,
        after: &Theory,
        forgotten: &BTreeSet<Atom>,
        cfg: &SemanticsConfig,
    ) -> Result<Self, VerifyError> {
        let signature: BTreeSet<Atom> = before
            .signature()
            .union(after.signature())
            .cloned()
            .collect();
        cfg.check(&signature)?;
        let vocabulary = signature.difference(forgotten).cloned().collect();
        Ok(Comparison {
            before: before.to_theory(),
            after: after.clone(),
            vocabulary,
            signature,
            // Contexts are spread over the pool; each one runs sequentially.
            cfg: SemanticsConfig {
                parallel: false,
                ..*cfg
            },
        })
    }

    /// Projected models under `ctx`, when they differ.
    fn differs(&self, ctx: &Context) -> Result<Option<Difference>, VerifyError> {
        let delta = ctx.to_program().to_theory();
        let before =
            equilibrium_models_over(&self.before.union(&delta), &self.signature, &self.cfg)?
                .project(&self.vocabulary);
        let after = equilibrium_models_over(&self.after.union(&delta), &self.signature, &self.cfg)?
            .project(&self.vocabulary);
        Ok((before.members() != after.members()).then_some((before, after)))
    }

    fn sweep(
        &self,
        contexts: Vec<Context>,
        parallel: bool,
        clean: Status,
    ) -> Result<Verdict, VerifyError> {
        let found = exec::find_first(&contexts, parallel, |ctx| match self.differs(ctx) {
            Ok(None) => None,
            Ok(Some(diff)) => Some(Ok(diff)),
            Err(e) => Some(Err(e)),
        });
        match found {
            None => Ok(Verdict {
                status: clean,
                witness: None,
                models_before: None,
                models_after: None,
                contexts_checked: contexts.len(),
            }),
            Some((_, Err(e))) => Err(e),
            Some((i, Ok((before, after)))) => Ok(Verdict {
                status: Status::Counterexample,
                witness: Some(contexts[i].clone()),
                models_before: Some(before),
                models_after: Some(after),
                contexts_checked: i + 1,
            }),
        }
    }
}

/// Complete check over all `2^|V|` fact contexts.
pub fn check_uniform_persistence(
    before: &Program,
    after: &Theory,
    forgotten: &BTreeSet<Atom>,
    cfg: &SemanticsConfig,
) -> Result<Verdict, VerifyError> {
    if forgotten.iter().any(|a| after.mentions(a)) {
        return Ok(Verdict::residual());
    }
    let cmp = Comparison::new(before, after, forgotten, cfg)?;
    let budget = ContextBudget {
        facts_only: true,
        max_contexts: usize::MAX,
        pair_cap: None,
    };
    let contexts: Vec<Context> = enumerate_contexts(&cmp.vocabulary, &budget)?.collect();
    cmp.sweep(contexts, cfg.parallel, Status::Pass)
}

/// Bounded falsification over the canonical context family. Reports the
/// first differing context in enumeration order.
pub fn check_strong_persistence(
    before: &Program,
    after: &Theory,
    forgotten: &BTreeSet<Atom>,
    budget: &ContextBudget,
    cfg: &SemanticsConfig,
) -> Result<Verdict, VerifyError> {
    budget.validate()?;
    if forgotten.iter().any(|a| after.mentions(a)) {
        return Ok(Verdict::residual());
    }
    let cmp = Comparison::new(before, after, forgotten, cfg)?;
    let contexts: Vec<Context> = enumerate_contexts(&cmp.vocabulary, budget)?.collect();
    cmp.sweep(contexts, cfg.parallel, Status::BudgetExhaustedPass)
}
