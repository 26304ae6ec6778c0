//! Stable models through the Gelfond-Lifschitz reduct, extended to double
//! negation. Shares nothing with the HT evaluator besides atom indexing, so
//! it serves as an oracle for [`super::equilibrium_models`].

use super::compiled::{submasks, AtomIndex};
use super::{Interpretation, ModelSet, SemanticsConfig, SemanticsError};
use crate::exec;
use crate::syntax::Program;

struct MaskRule {
    head: u64,
    pos: u64,
    neg: u64,
    negneg: u64,
}

/// Positive disjunctive rule left in a reduct.
struct Reduced {
    head: u64,
    pos: u64,
}

fn reduct(rules: &[MaskRule], candidate: u64) -> Vec<Reduced> {
    // `not b` kills the rule when b ∈ T; `not not d` kills it when d ∉ T.
    rules
        .iter()
        .filter(|r| r.neg & candidate == 0 && r.negneg & !candidate == 0)
        .map(|r| Reduced {
            head: r.head,
            pos: r.pos,
        })
        .collect()
}

fn is_model(rules: &[Reduced], m: u64) -> bool {
    rules.iter().all(|r| r.pos & !m != 0 || r.head & m != 0)
}

/// `T` is stable iff it is a minimal classical model of the reduct `p^T`.
pub fn stable_models_via_reduct(
    p: &Program,
    cfg: &SemanticsConfig,
) -> Result<ModelSet<Interpretation>, SemanticsError> {
    cfg.check(p.signature())?;
    let index = AtomIndex::new(p.signature());
    let mask = |set: &std::collections::BTreeSet<_>| set.iter().fold(0u64, |m, a| m | index.bit(a));
    let rules: Vec<MaskRule> = p
        .rules()
        .iter()
        .map(|r| MaskRule {
            head: mask(r.head()),
            pos: mask(r.body_pos()),
            neg: mask(r.body_neg()),
            negneg: mask(r.body_negneg()),
        })
        .collect();
    let hits = exec::map_indexed(1u64 << index.len(), cfg.parallel, |candidate| {
        let reduced = reduct(&rules, candidate);
        let minimal = is_model(&reduced, candidate)
            && submasks(candidate)
                .skip(1)
                .all(|smaller| !is_model(&reduced, smaller));
        minimal.then_some(candidate)
    });
    Ok(ModelSet::new(
        p.signature().clone(),
        hits.into_iter().flatten().map(|m| index.interpretation(m)),
    ))
}
