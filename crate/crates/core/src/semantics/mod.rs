//! Here-and-There semantics.
//!
//! An HT interpretation is a pair `⟨H,T⟩` of atom sets with `H ⊆ T`. A
//! formula is evaluated at the "here" world `H`, where an implication holds
//! when it holds classically at `T` and, at `H`, a true antecedent forces a
//! true consequent. Equilibrium models are total models `⟨T,T⟩` with no
//! model `⟨H,T⟩` for `H ⊊ T`; they coincide with stable models, which
//! [`stable_models_via_reduct`] computes independently.

mod compiled;
mod reduct;

use std::collections::BTreeSet;
use std::fmt;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::exec;
use crate::syntax::{Atom, Formula, Program, Rule, Theory};

pub use reduct::stable_models_via_reduct;

use compiled::{AtomIndex, Compiled};

/// Hard ceiling on the signature size: masks are 64 bits wide.
pub const MAX_ATOMS_LIMIT: usize = 63;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SemanticsConfig {
    /// Largest signature that may be enumerated. Clamped to
    /// [`MAX_ATOMS_LIMIT`].
    pub max_atoms: usize,
    /// Run enumeration loops on the rayon pool. Ignored without the
    /// `parallel` feature.
    pub parallel: bool,
}

impl Default for SemanticsConfig {
    fn default() -> Self {
        SemanticsConfig {
            max_atoms: 16,
            parallel: cfg!(feature = "parallel"),
        }
    }
}

impl SemanticsConfig {
    pub fn sequential() -> Self {
        SemanticsConfig {
            parallel: false,
            ..Self::default()
        }
    }

    pub(crate) fn check(&self, signature: &BTreeSet<Atom>) -> Result<(), SemanticsError> {
        let cap = self.max_atoms.min(MAX_ATOMS_LIMIT);
        if signature.len() > cap {
            return Err(SemanticsError::SignatureTooLarge {
                size: signature.len(),
                cap,
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemanticsError {
    #[error("signature has {size} atoms, enumeration is capped at {cap}")]
    SignatureTooLarge { size: usize, cap: usize },
}

/// The set of atoms assigned true.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Interpretation(BTreeSet<Atom>);

impl Interpretation {
    pub fn new(atoms: BTreeSet<Atom>) -> Interpretation {
        Interpretation(atoms)
    }

    pub fn atoms(&self) -> &BTreeSet<Atom> {
        &self.0
    }

    pub fn contains(&self, a: &Atom) -> bool {
        self.0.contains(a)
    }

    pub fn is_subset(&self, other: &Interpretation) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn project(&self, vocabulary: &BTreeSet<Atom>) -> Interpretation {
        Interpretation(self.0.intersection(vocabulary).cloned().collect())
    }
}

impl From<BTreeSet<Atom>> for Interpretation {
    fn from(atoms: BTreeSet<Atom>) -> Self {
        Interpretation(atoms)
    }
}

impl fmt::Display for Interpretation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str("}")
    }
}

impl Serialize for Interpretation {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(&self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("here world must be a subset of the there world")]
pub struct NotNested;

/// `⟨H,T⟩` with `H ⊆ T`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HtPair {
    here: Interpretation,
    there: Interpretation,
}

impl HtPair {
    pub fn new(here: Interpretation, there: Interpretation) -> Result<HtPair, NotNested> {
        if !here.is_subset(&there) {
            return Err(NotNested);
        }
        Ok(HtPair { here, there })
    }

    /// `⟨T,T⟩`.
    pub fn total(there: Interpretation) -> HtPair {
        HtPair {
            here: there.clone(),
            there,
        }
    }

    pub fn here(&self) -> &Interpretation {
        &self.here
    }

    pub fn there(&self) -> &Interpretation {
        &self.there
    }

    pub fn is_total(&self) -> bool {
        self.here == self.there
    }
}

impl fmt::Display for HtPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.here, self.there)
    }
}

impl Serialize for HtPair {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(2))?;
        seq.serialize_element(&self.here)?;
        seq.serialize_element(&self.there)?;
        seq.end()
    }
}

/// Models over a fixed signature, kept in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModelSet<M: Ord> {
    signature: BTreeSet<Atom>,
    #[serde(rename = "models")]
    members: BTreeSet<M>,
}

impl<M: Ord> ModelSet<M> {
    pub fn new(signature: BTreeSet<Atom>, members: impl IntoIterator<Item = M>) -> Self {
        ModelSet {
            signature,
            members: members.into_iter().collect(),
        }
    }

    pub fn signature(&self) -> &BTreeSet<Atom> {
        &self.signature
    }

    pub fn members(&self) -> &BTreeSet<M> {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &M> {
        self.members.iter()
    }

    pub fn contains(&self, m: &M) -> bool {
        self.members.contains(m)
    }
}

impl<M: Ord + fmt::Display> ModelSet<M> {
    /// One model per line.
    pub fn to_text(&self) -> String {
        self.members.iter().map(|m| format!("{m}\n")).collect()
    }
}

impl<M: Ord + Serialize> ModelSet<M> {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("model sets serialize")
    }
}

impl ModelSet<Interpretation> {
    /// Restricts every model to `vocabulary`, merging duplicates.
    pub fn project(&self, vocabulary: &BTreeSet<Atom>) -> ModelSet<Interpretation> {
        ModelSet::new(
            self.signature.intersection(vocabulary).cloned().collect(),
            self.members.iter().map(|m| m.project(vocabulary)),
        )
    }
}

/// Reads a rule as `body -> head`.
pub fn rule_to_formula(r: &Rule) -> Formula {
    r.to_formula()
}

/// Truth of `f` at the here-world of `m`.
pub fn ht_satisfies(m: &HtPair, f: &Formula) -> bool {
    let here = m.here.atoms();
    let there = m.there.atoms();
    match f {
        Formula::Falsum => false,
        Formula::Atom(a) => here.contains(a),
        Formula::And(items) => items.iter().all(|g| ht_satisfies(m, g)),
        Formula::Or(items) => items.iter().any(|g| ht_satisfies(m, g)),
        Formula::Implies(x, y) => {
            f.classically_true(there) && (!ht_satisfies(m, x) || ht_satisfies(m, y))
        }
    }
}

/// HT models of `t` over its own signature.
pub fn ht_models(t: &Theory, cfg: &SemanticsConfig) -> Result<ModelSet<HtPair>, SemanticsError> {
    ht_models_over(t, t.signature(), cfg)
}

/// HT models of `t` over `signature ∪ signature(t)`.
pub fn ht_models_over(
    t: &Theory,
    signature: &BTreeSet<Atom>,
    cfg: &SemanticsConfig,
) -> Result<ModelSet<HtPair>, SemanticsError> {
    let signature: BTreeSet<Atom> = signature.union(t.signature()).cloned().collect();
    cfg.check(&signature)?;
    let index = AtomIndex::new(&signature);
    let theory = Compiled::theory(t, &index);
    let per_there = exec::map_indexed(1u64 << index.len(), cfg.parallel, |there| {
        let mut found = Vec::new();
        if !theory.holds(there, there) {
            // Persistence: no ⟨H,T⟩ can be a model either.
            return found;
        }
        let total = index.interpretation(there);
        for here in compiled::submasks(there) {
            if theory.holds(here, there) {
                found.push(HtPair {
                    here: index.interpretation(here),
                    there: total.clone(),
                });
            }
        }
        found
    });
    Ok(ModelSet::new(signature, per_there.into_iter().flatten()))
}

/// Equilibrium (stable) models of `t` over its own signature.
pub fn equilibrium_models(
    t: &Theory,
    cfg: &SemanticsConfig,
) -> Result<ModelSet<Interpretation>, SemanticsError> {
    equilibrium_models_over(t, t.signature(), cfg)
}

pub fn equilibrium_models_over(
    t: &Theory,
    signature: &BTreeSet<Atom>,
    cfg: &SemanticsConfig,
) -> Result<ModelSet<Interpretation>, SemanticsError> {
    let signature: BTreeSet<Atom> = signature.union(t.signature()).cloned().collect();
    cfg.check(&signature)?;
    let index = AtomIndex::new(&signature);
    let theory = Compiled::theory(t, &index);
    let hits = exec::map_indexed(1u64 << index.len(), cfg.parallel, |there| {
        let stable = theory.holds(there, there)
            && compiled::submasks(there)
                .filter(|&here| here != there)
                .all(|here| !theory.holds(here, there));
        stable.then_some(there)
    });
    let members = hits.into_iter().flatten().map(|m| index.interpretation(m));
    Ok(ModelSet::new(signature, members))
}

/// Program convenience wrapper for [`equilibrium_models`].
pub fn program_models(
    p: &Program,
    cfg: &SemanticsConfig,
) -> Result<ModelSet<Interpretation>, SemanticsError> {
    equilibrium_models(&p.to_theory(), cfg)
}

/// `t1 ≡s t2`: equal HT models over the union of both signatures.
pub fn strongly_equivalent(
    t1: &Theory,
    t2: &Theory,
    cfg: &SemanticsConfig,
) -> Result<bool, SemanticsError> {
    let signature: BTreeSet<Atom> = t1.signature().union(t2.signature()).cloned().collect();
    cfg.check(&signature)?;
    let m1 = ht_models_over(t1, &signature, cfg)?;
    let m2 = ht_models_over(t2, &signature, cfg)?;
    Ok(m1 == m2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{atom, atoms, parse_program, parse_theory};

    fn interp(names: &[&str]) -> Interpretation {
        Interpretation::new(atoms(names.iter().copied()))
    }

    fn pair(h: &[&str], t: &[&str]) -> HtPair {
        HtPair::new(interp(h), interp(t)).unwrap()
    }

    fn a() -> Formula {
        Formula::Atom(atom("a"))
    }

    fn cfg() -> SemanticsConfig {
        SemanticsConfig::default()
    }

    fn models(text: &str) -> Vec<Interpretation> {
        let p = parse_program(text).unwrap();
        program_models(&p, &cfg())
            .unwrap()
            .iter()
            .cloned()
            .collect()
    }

    #[test]
    fn nesting_enforced() {
        assert_eq!(HtPair::new(interp(&["a"]), interp(&[])), Err(NotNested));
    }

    #[test]
    fn satisfaction_examples() {
        assert!(ht_satisfies(&pair(&[], &[]), &Formula::not(a())));
        assert!(!ht_satisfies(&pair(&[], &["a"]), &a()));
        assert!(ht_satisfies(
            &pair(&[], &["a"]),
            &Formula::not(Formula::not(a()))
        ));
        let a_to_b = Formula::implies(a(), Formula::Atom(atom("b")));
        assert!(!ht_satisfies(&pair(&["a"], &["a"]), &a_to_b));
        // Excluded middle fails in the non-total pair.
        let lem = Formula::Or(vec![a(), Formula::not(a())]);
        assert!(!ht_satisfies(&pair(&[], &["a"]), &lem));
    }

    #[test]
    fn ht_model_examples() {
        let empty = Theory::with_signature(vec![], atoms(["a"]));
        let all = ht_models(&empty, &cfg()).unwrap();
        assert_eq!(
            all.members().iter().cloned().collect::<Vec<_>>(),
            vec![pair(&[], &[]), pair(&[], &["a"]), pair(&["a"], &["a"])]
        );
        let fact = Theory::new(vec![a()]);
        assert_eq!(
            ht_models(&fact, &cfg())
                .unwrap()
                .members()
                .iter()
                .collect::<Vec<_>>(),
            vec![&pair(&["a"], &["a"])]
        );
        let neg = Theory::new(vec![Formula::not(a())]);
        assert_eq!(
            ht_models(&neg, &cfg())
                .unwrap()
                .members()
                .iter()
                .collect::<Vec<_>>(),
            vec![&pair(&[], &[])]
        );
    }

    #[test]
    fn equilibrium_examples() {
        assert_eq!(models("a."), vec![interp(&["a"])]);
        assert_eq!(models("a | b."), vec![interp(&["a"]), interp(&["b"])]);
        assert_eq!(models("a :- not not a."), vec![interp(&[]), interp(&["a"])]);
        assert_eq!(models("a :- not a."), vec![]);
        assert_eq!(models(""), vec![interp(&[])]);
    }

    #[test]
    fn strong_equivalence_examples() {
        let se = |x: &str, y: &str| {
            strongly_equivalent(&parse_theory(x).unwrap(), &parse_theory(y).unwrap(), &cfg())
                .unwrap()
        };
        assert!(se("a :- not b. c.", "a :- not b. c."));
        assert!(!se("a.", "a :- not b."));
        assert!(se("a | b :- a. c.", "c."));
        // Same stable models, not strongly equivalent.
        assert!(!se("a :- not b.", "a."));
        assert!(se("a :- not not a.", "a | not a."));
    }

    #[test]
    fn signature_cap() {
        let names: Vec<String> = (0..5).map(|i| format!("p{i}")).collect();
        let t = Theory::with_signature(vec![], names.iter().map(|n| atom(n)));
        let small = SemanticsConfig {
            max_atoms: 4,
            ..cfg()
        };
        assert_eq!(
            ht_models(&t, &small),
            Err(SemanticsError::SignatureTooLarge { size: 5, cap: 4 })
        );
        assert!(equilibrium_models(&t, &small).is_err());
        assert!(stable_models_via_reduct(
            &Program::with_signature(vec![], t.signature().iter().cloned()),
            &small
        )
        .is_err());
    }

    #[test]
    fn text_and_json_forms() {
        let p = parse_program("a | b. #atoms c.").unwrap();
        let m = program_models(&p, &cfg()).unwrap();
        assert_eq!(m.to_text(), "{a}\n{b}\n");
        assert_eq!(
            m.to_json(),
            r#"{"signature":["a","b","c"],"models":[["a"],["b"]]}"#
        );
        let empty = program_models(&Program::default(), &cfg()).unwrap();
        assert_eq!(empty.to_text(), "{}\n");
        let ht = ht_models(&Theory::new(vec![a()]), &cfg()).unwrap();
        assert_eq!(ht.to_text(), "{a} {a}\n");
        assert_eq!(
            ht.to_json(),
            r#"{"signature":["a"],"models":[[["a"],["a"]]]}"#
        );
    }

    #[test]
    fn parallel_and_sequential_agree() {
        let p = parse_program(
            "a | b :- not c. c :- not a. d :- a, not not b. :- d, c. e :- not not e.",
        )
        .unwrap();
        let t = p.to_theory();
        let seq = SemanticsConfig::sequential();
        assert_eq!(ht_models(&t, &seq).unwrap(), ht_models(&t, &cfg()).unwrap());
        assert_eq!(
            equilibrium_models(&t, &seq).unwrap(),
            equilibrium_models(&t, &cfg()).unwrap()
        );
    }
}
