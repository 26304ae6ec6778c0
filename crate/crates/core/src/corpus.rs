//! Seeded generators for programs, formulas and exhaustive rule families.
//!
//! Everything here is deterministic given the RNG; tests, benches and the
//! acceptance suite seed a `ChaCha8Rng` and share these generators.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::syntax::{Atom, Formula, Program, Rule};

/// `a`, `b`, `c`, ... for the first `n` letters.
pub fn atom_pool(n: usize) -> Vec<Atom> {
    assert!(n <= 26, "at most 26 single-letter atoms");
    (b'a'..b'a' + n as u8)
        .map(|c| Atom::new(&(c as char).to_string()).expect("letters are atoms"))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Shape {
    pub atoms: usize,
    /// Rule count is drawn from `1..=max_rules`.
    pub max_rules: usize,
    pub disjunction: bool,
    pub double_negation: bool,
    pub constraints: bool,
}

impl Default for Shape {
    fn default() -> Self {
        Shape {
            atoms: 4,
            max_rules: 5,
            disjunction: true,
            double_negation: true,
            constraints: true,
        }
    }
}

impl Shape {
    pub fn normal() -> Shape {
        Shape {
            disjunction: false,
            double_negation: false,
            constraints: false,
            ..Shape::default()
        }
    }
}

pub fn random_rule<R: Rng>(rng: &mut R, pool: &[Atom], shape: &Shape) -> Rule {
    loop {
        let head: BTreeSet<Atom> = if shape.constraints && rng.gen_bool(0.1) {
            BTreeSet::new()
        } else if shape.disjunction && rng.gen_bool(0.3) {
            pool.choose_multiple(rng, 2.min(pool.len()))
                .cloned()
                .collect()
        } else {
            pool.choose(rng).into_iter().cloned().collect()
        };
        let (mut pos, mut neg, mut negneg) = (BTreeSet::new(), BTreeSet::new(), BTreeSet::new());
        for a in pool {
            let roll: f64 = rng.gen();
            if roll < 0.25 {
                pos.insert(a.clone());
            } else if roll < 0.42 {
                neg.insert(a.clone());
            } else if shape.double_negation && roll < 0.52 {
                negneg.insert(a.clone());
            }
        }
        if let Ok(rule) = Rule::new(head, pos, neg, negneg) {
            return rule;
        }
    }
}

/// Signature is the whole pool, so atoms that happen not to occur still
/// count.
pub fn random_program<R: Rng>(rng: &mut R, shape: &Shape) -> Program {
    let pool = atom_pool(shape.atoms);
    let n = rng.gen_range(1..=shape.max_rules.max(1));
    let rules = (0..n).map(|_| random_rule(rng, &pool, shape)).collect();
    Program::with_signature(rules, pool)
}

/// A program that is stratified by construction: atoms get random levels,
/// positive bodies stay at or below the lowest head level, negated and
/// doubly negated bodies strictly below it.
pub fn random_stratified_program<R: Rng>(rng: &mut R, shape: &Shape) -> Program {
    let pool = atom_pool(shape.atoms);
    let levels: Vec<usize> = pool
        .iter()
        .map(|_| rng.gen_range(0..shape.atoms.max(1)))
        .collect();
    let n = rng.gen_range(1..=shape.max_rules.max(1));
    let mut rules = Vec::with_capacity(n);
    while rules.len() < n {
        let mut head: BTreeSet<usize> = BTreeSet::new();
        // A constraint sits above every level.
        if !(shape.constraints && rng.gen_bool(0.1)) {
            head.insert(rng.gen_range(0..pool.len()));
            if shape.disjunction && rng.gen_bool(0.3) {
                head.insert(rng.gen_range(0..pool.len()));
            }
        }
        let floor = head.iter().map(|&i| levels[i]).min().unwrap_or(shape.atoms);
        let (mut pos, mut neg, mut negneg) = (BTreeSet::new(), BTreeSet::new(), BTreeSet::new());
        for (i, a) in pool.iter().enumerate() {
            let roll: f64 = rng.gen();
            if levels[i] <= floor && roll < 0.3 {
                pos.insert(a.clone());
            } else if levels[i] < floor && roll < 0.55 {
                neg.insert(a.clone());
            } else if shape.double_negation && levels[i] < floor && roll < 0.65 {
                negneg.insert(a.clone());
            }
        }
        let head = head.into_iter().map(|i| pool[i].clone()).collect();
        if let Ok(rule) = Rule::new(head, pos, neg, negneg) {
            rules.push(rule);
        }
    }
    Program::with_signature(rules, pool)
}

/// Every non-empty rule over `pool`: each atom independently in or out of
/// the head, the positive, negated and doubly negated body. `2^(4n) - 1`
/// rules, in bitmask order.
pub fn all_rules(pool: &[Atom]) -> Vec<Rule> {
    let n = pool.len();
    assert!(n <= 4, "the family has 2^(4n) members");
    let slot = |mask: u32, k: usize| -> BTreeSet<Atom> {
        pool.iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << (k * n + i)) != 0)
            .map(|(_, a)| a.clone())
            .collect()
    };
    (1..1u32 << (4 * n))
        .map(|m| {
            Rule::new(slot(m, 0), slot(m, 1), slot(m, 2), slot(m, 3)).expect("mask is non-zero")
        })
        .collect()
}

/// Programs with at most `max_rules` rules taken from `rules`, as sorted
/// index combinations without repetition, the empty program first.
pub fn all_programs(pool: &[Atom], rules: &[Rule], max_rules: usize) -> Vec<Program> {
    let mut out = vec![Program::with_signature(vec![], pool.iter().cloned())];
    let mut frontier: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..max_rules {
        let mut next = Vec::new();
        for combo in &frontier {
            let start = combo.last().map_or(0, |&l| l + 1);
            for i in start..rules.len() {
                let mut c = combo.clone();
                c.push(i);
                out.push(Program::with_signature(
                    c.iter().map(|&j| rules[j].clone()).collect(),
                    pool.iter().cloned(),
                ));
                next.push(c);
            }
        }
        frontier = next;
    }
    out
}

/// A formula of nesting depth at most `depth` over `pool`, with `#false`
/// among the leaves.
pub fn random_formula<R: Rng>(rng: &mut R, pool: &[Atom], depth: usize) -> Formula {
    if depth == 0 || rng.gen_bool(0.25) {
        return if rng.gen_bool(0.1) {
            Formula::Falsum
        } else {
            Formula::Atom(pool.choose(rng).expect("pool is non-empty").clone())
        };
    }
    let sub = |rng: &mut R| random_formula(rng, pool, depth - 1);
    match rng.gen_range(0..4) {
        0 => Formula::And(vec![sub(rng), sub(rng)]),
        1 => Formula::Or(vec![sub(rng), sub(rng)]),
        2 => Formula::Implies(Box::new(sub(rng)), Box::new(sub(rng))),
        _ => Formula::Implies(Box::new(sub(rng)), Box::new(Formula::Falsum)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::depgraph::is_stratified;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn exhaustive_family_sizes() {
        let pool = atom_pool(2);
        let rules = all_rules(&pool);
        assert_eq!(rules.len(), 255);
        assert_eq!(rules.iter().collect::<BTreeSet<_>>().len(), 255);
        assert_eq!(
            all_programs(&pool, &rules, 2).len(),
            1 + 255 + 255 * 254 / 2
        );
    }

    #[test]
    fn generators_are_seeded() {
        let gen = |seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..20)
                .map(|_| random_program(&mut rng, &Shape::default()))
                .collect::<Vec<_>>()
        };
        assert_eq!(gen(7), gen(7));
        assert_ne!(gen(7), gen(8));
    }

    #[test]
    fn stratified_generator_is_stratified() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..300 {
            let p = random_stratified_program(&mut rng, &Shape::default());
            let s = is_stratified(&p);
            assert!(s.witness && s.is_valid_for(&p));
        }
    }

    #[test]
    fn normal_shape() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..200 {
            let p = random_program(&mut rng, &Shape::normal());
            assert!(p
                .rules()
                .iter()
                .all(|r| r.head().len() == 1 && r.body_negneg().is_empty()));
        }
    }
}
