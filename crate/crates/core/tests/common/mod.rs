#![allow(dead_code)]

use std::collections::BTreeSet;

use esforget::corpus::atom_pool;
use esforget::{Atom, Formula, Program, Rule, SemanticsConfig};
use proptest::prelude::*;

pub const ATOMS: usize = 4;

pub fn cfg() -> SemanticsConfig {
    SemanticsConfig::sequential()
}

fn pick(mask: u8) -> BTreeSet<Atom> {
    atom_pool(ATOMS)
        .into_iter()
        .enumerate()
        .filter(|(i, _)| mask & (1 << i) != 0)
        .map(|(_, a)| a)
        .collect()
}

/// Slot masks over `a..d`; zero masks shrink towards simpler rules.
pub fn rule() -> impl Strategy<Value = Rule> {
    (0u8..16, 0u8..16, 0u8..16, 0u8..16)
        .prop_filter("non-empty rule", |(h, p, n, d)| h | p | n | d != 0)
        .prop_map(|(h, p, n, d)| Rule::new(pick(h), pick(p), pick(n), pick(d)).unwrap())
}

pub fn normal_rule() -> impl Strategy<Value = Rule> {
    (0usize..ATOMS, 0u8..16, 0u8..16)
        .prop_map(|(h, p, n)| Rule::new(pick(1 << h), pick(p), pick(n), BTreeSet::new()).unwrap())
}

pub fn program() -> impl Strategy<Value = Program> {
    prop::collection::vec(rule(), 0..=5)
        .prop_map(|rules| Program::with_signature(rules, atom_pool(ATOMS)))
}

pub fn normal_program() -> impl Strategy<Value = Program> {
    prop::collection::vec(normal_rule(), 0..=5)
        .prop_map(|rules| Program::with_signature(rules, atom_pool(ATOMS)))
}

pub fn some_atom() -> impl Strategy<Value = Atom> {
    (0..ATOMS).prop_map(|i| atom_pool(ATOMS)[i].clone())
}

pub fn formula(atoms: usize) -> impl Strategy<Value = Formula> {
    let pool = atom_pool(atoms);
    let leaf = prop_oneof![
        1 => Just(Formula::Falsum),
        6 => (0..atoms).prop_map(move |i| Formula::Atom(pool[i].clone())),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(x, y)| Formula::And(vec![x, y])),
            (inner.clone(), inner.clone()).prop_map(|(x, y)| Formula::Or(vec![x, y])),
            (inner.clone(), inner.clone())
                .prop_map(|(x, y)| Formula::Implies(Box::new(x), Box::new(y))),
            inner.prop_map(|x| Formula::Implies(Box::new(x), Box::new(Formula::Falsum))),
        ]
    })
}
