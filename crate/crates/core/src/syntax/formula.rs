use std::collections::BTreeSet;
use std::fmt;

use super::Atom;

/// Propositional formula over falsum, atoms, conjunction, disjunction and
/// implication. Negation is `Implies(φ, Falsum)` and verum is `And([])`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Falsum,
    Atom(Atom),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Implies(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn verum() -> Formula {
        Formula::And(Vec::new())
    }

    pub fn atom(a: &Atom) -> Formula {
        Formula::Atom(a.clone())
    }

    pub fn is_verum(&self) -> bool {
        matches!(self, Formula::And(items) if items.is_empty())
    }

    pub fn is_falsum(&self) -> bool {
        matches!(self, Formula::Falsum)
    }

    /// Conjunction with verum conjuncts dropped; a single conjunct is
    /// returned as is and an empty one is verum.
    pub fn and(items: impl IntoIterator<Item = Formula>) -> Formula {
        let mut kept: Vec<Formula> = items.into_iter().filter(|f| !f.is_verum()).collect();
        if kept.len() == 1 {
            kept.pop().unwrap()
        } else {
            Formula::And(kept)
        }
    }

    /// Disjunction with falsum disjuncts dropped; empty is falsum.
    pub fn or(items: impl IntoIterator<Item = Formula>) -> Formula {
        let mut kept: Vec<Formula> = items.into_iter().filter(|f| !f.is_falsum()).collect();
        match kept.len() {
            0 => Formula::Falsum,
            1 => kept.pop().unwrap(),
            _ => Formula::Or(kept),
        }
    }

    pub fn implies(antecedent: Formula, consequent: Formula) -> Formula {
        Formula::Implies(Box::new(antecedent), Box::new(consequent))
    }

    /// `φ -> #false`, except that the negation of falsum is verum and the
    /// negation of verum is falsum.
    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        if f.is_falsum() {
            Formula::verum()
        } else if f.is_verum() {
            Formula::Falsum
        } else {
            Formula::implies(f, Formula::Falsum)
        }
    }

    /// The operand of a negation `φ -> #false`.
    pub fn negated(&self) -> Option<&Formula> {
        match self {
            Formula::Implies(a, b) if b.is_falsum() => Some(a),
            _ => None,
        }
    }

    pub fn mentions(&self, a: &Atom) -> bool {
        match self {
            Formula::Falsum => false,
            Formula::Atom(b) => a == b,
            Formula::And(items) | Formula::Or(items) => items.iter().any(|f| f.mentions(a)),
            Formula::Implies(x, y) => x.mentions(a) || y.mentions(a),
        }
    }

    pub fn atoms(&self) -> BTreeSet<Atom> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    pub(crate) fn collect_atoms(&self, out: &mut BTreeSet<Atom>) {
        match self {
            Formula::Falsum => {}
            Formula::Atom(a) => {
                out.insert(a.clone());
            }
            Formula::And(items) | Formula::Or(items) => {
                for f in items {
                    f.collect_atoms(out);
                }
            }
            Formula::Implies(x, y) => {
                x.collect_atoms(out);
                y.collect_atoms(out);
            }
        }
    }

    /// Replaces every occurrence of `a` by `replacement`.
    pub fn substitute(&self, a: &Atom, replacement: &Formula) -> Formula {
        match self {
            Formula::Atom(b) if b == a => replacement.clone(),
            Formula::Falsum | Formula::Atom(_) => self.clone(),
            Formula::And(items) => {
                Formula::And(items.iter().map(|f| f.substitute(a, replacement)).collect())
            }
            Formula::Or(items) => {
                Formula::Or(items.iter().map(|f| f.substitute(a, replacement)).collect())
            }
            Formula::Implies(x, y) => {
                Formula::implies(x.substitute(a, replacement), y.substitute(a, replacement))
            }
        }
    }

    /// Classical truth under the set of true atoms.
    pub fn classically_true(&self, model: &BTreeSet<Atom>) -> bool {
        match self {
            Formula::Falsum => false,
            Formula::Atom(a) => model.contains(a),
            Formula::And(items) => items.iter().all(|f| f.classically_true(model)),
            Formula::Or(items) => items.iter().any(|f| f.classically_true(model)),
            Formula::Implies(x, y) => !x.classically_true(model) || y.classically_true(model),
        }
    }

    /// Rebuilds the conjunctions and disjunctions through [`Formula::and`]
    /// and [`Formula::or`]; this is the normal form the printer round-trips.
    pub fn canonical(&self) -> Formula {
        match self {
            Formula::Falsum | Formula::Atom(_) => self.clone(),
            Formula::And(items) => Formula::and(items.iter().map(Formula::canonical)),
            Formula::Or(items) => Formula::or(items.iter().map(Formula::canonical)),
            Formula::Implies(x, y) => Formula::implies(x.canonical(), y.canonical()),
        }
    }

    /// Bottom-up rewriting with laws valid in Here-and-There: flattening,
    /// unit and zero elimination, duplicate removal, `#true -> φ ≡ φ`,
    /// `φ -> φ ≡ #true`, `#false -> φ ≡ #true`, `φ -> #true ≡ #true` and
    /// `not not not φ ≡ not φ`.
    pub fn simplify(&self) -> Formula {
        match self {
            Formula::Falsum | Formula::Atom(_) => self.clone(),
            Formula::And(items) => {
                let mut flat = Vec::new();
                for f in items.iter().map(Formula::simplify) {
                    match f {
                        Formula::Falsum => return Formula::Falsum,
                        Formula::And(inner) => flat.extend(inner),
                        other => flat.push(other),
                    }
                }
                Formula::and(dedup(flat))
            }
            Formula::Or(items) => {
                let mut flat = Vec::new();
                for f in items.iter().map(Formula::simplify) {
                    match f {
                        f if f.is_verum() => return Formula::verum(),
                        Formula::Or(inner) => flat.extend(inner),
                        other => flat.push(other),
                    }
                }
                Formula::or(dedup(flat))
            }
            Formula::Implies(x, y) => {
                let x = x.simplify();
                let y = y.simplify();
                if x.is_falsum() || y.is_verum() || x == y {
                    Formula::verum()
                } else if x.is_verum() {
                    y
                } else if y.is_falsum() {
                    match x.negated().and_then(Formula::negated) {
                        Some(inner) => Formula::not(inner.clone()),
                        None => Formula::not(x),
                    }
                } else {
                    Formula::implies(x, y)
                }
            }
        }
    }

    /// Number of nodes, used by generators and benches.
    pub fn size(&self) -> usize {
        match self {
            Formula::Falsum | Formula::Atom(_) => 1,
            Formula::And(items) | Formula::Or(items) => {
                1 + items.iter().map(Formula::size).sum::<usize>()
            }
            Formula::Implies(x, y) => 1 + x.size() + y.size(),
        }
    }
}

fn dedup(items: Vec<Formula>) -> Vec<Formula> {
    let mut seen = BTreeSet::new();
    items
        .into_iter()
        .filter(|f| seen.insert(f.clone()))
        .collect()
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::render_formula(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::atom;

    fn v(name: &str) -> Formula {
        Formula::Atom(atom(name))
    }

    #[test]
    fn smart_constructors() {
        assert_eq!(Formula::and([]), Formula::verum());
        assert_eq!(Formula::or([]), Formula::Falsum);
        assert_eq!(Formula::and([Formula::verum(), v("a")]), v("a"));
        assert_eq!(
            Formula::or([Formula::Falsum, v("a"), Formula::Falsum]),
            v("a")
        );
        assert_eq!(Formula::not(Formula::Falsum), Formula::verum());
        assert_eq!(Formula::not(Formula::verum()), Formula::Falsum);
        assert_eq!(
            Formula::not(v("a")),
            Formula::implies(v("a"), Formula::Falsum)
        );
    }

    #[test]
    fn simplify_triple_negation() {
        let f = Formula::not(Formula::not(Formula::not(v("a"))));
        assert_eq!(f.simplify(), Formula::not(v("a")));
        let g = Formula::not(Formula::not(v("a")));
        assert_eq!(g.simplify(), g);
    }

    #[test]
    fn simplify_units() {
        let f = Formula::And(vec![
            v("a"),
            Formula::And(vec![v("b"), v("a")]),
            Formula::verum(),
        ]);
        assert_eq!(f.simplify(), Formula::And(vec![v("a"), v("b")]));
        assert_eq!(
            Formula::And(vec![v("a"), Formula::Falsum]).simplify(),
            Formula::Falsum
        );
        assert_eq!(
            Formula::implies(Formula::verum(), v("b")).simplify(),
            v("b")
        );
        assert_eq!(
            Formula::implies(v("b"), v("b")).simplify(),
            Formula::verum()
        );
    }

    #[test]
    fn substitution_reaches_under_negation() {
        let f = Formula::not(Formula::not(v("a")));
        let g = f.substitute(&atom("a"), &v("b"));
        assert_eq!(g, Formula::not(Formula::not(v("b"))));
        assert!(!g.mentions(&atom("a")));
    }
}
