//! Bitmask evaluation of formulas over a fixed signature.

use std::collections::BTreeSet;

use super::Interpretation;
use crate::syntax::{Atom, Formula, Theory};

/// Bit `i` stands for the `i`-th atom of the sorted signature.
pub(crate) struct AtomIndex {
    atoms: Vec<Atom>,
}

impl AtomIndex {
    pub(crate) fn new(signature: &BTreeSet<Atom>) -> AtomIndex {
        AtomIndex {
            atoms: signature.iter().cloned().collect(),
        }
    }

    pub(crate) fn len(&self) -> usize {
        self.atoms.len()
    }

    pub(crate) fn bit(&self, a: &Atom) -> u64 {
        let i = self
            .atoms
            .binary_search(a)
            .expect("atom outside the enumeration signature");
        1 << i
    }

    pub(crate) fn interpretation(&self, mask: u64) -> Interpretation {
        Interpretation::new(
            self.atoms
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, a)| a.clone())
                .collect(),
        )
    }
}

enum Node {
    False,
    Atom(u64),
    And(Vec<Node>),
    Or(Vec<Node>),
    Implies(Box<Node>, Box<Node>),
}

impl Node {
    fn compile(f: &Formula, index: &AtomIndex) -> Node {
        match f {
            Formula::Falsum => Node::False,
            Formula::Atom(a) => Node::Atom(index.bit(a)),
            Formula::And(items) => {
                Node::And(items.iter().map(|g| Node::compile(g, index)).collect())
            }
            Formula::Or(items) => Node::Or(items.iter().map(|g| Node::compile(g, index)).collect()),
            Formula::Implies(x, y) => Node::Implies(
                Box::new(Node::compile(x, index)),
                Box::new(Node::compile(y, index)),
            ),
        }
    }

    /// Truth at the here world and at the there world.
    fn eval(&self, here: u64, there: u64) -> (bool, bool) {
        match self {
            Node::False => (false, false),
            Node::Atom(bit) => (here & bit != 0, there & bit != 0),
            Node::And(items) => {
                let (mut h, mut t) = (true, true);
                for item in items {
                    let (ih, it) = item.eval(here, there);
                    h &= ih;
                    t &= it;
                    if !t {
                        // h ⇒ t, so both are false now.
                        break;
                    }
                }
                (h, t)
            }
            Node::Or(items) => {
                let (mut h, mut t) = (false, false);
                for item in items {
                    let (ih, it) = item.eval(here, there);
                    h |= ih;
                    t |= it;
                    if h {
                        break;
                    }
                }
                (h, t)
            }
            Node::Implies(x, y) => {
                let (xh, xt) = x.eval(here, there);
                let (yh, yt) = y.eval(here, there);
                let t = !xt || yt;
                (t && (!xh || yh), t)
            }
        }
    }
}

pub(crate) struct Compiled {
    formulas: Vec<Node>,
}

impl Compiled {
    pub(crate) fn theory(t: &Theory, index: &AtomIndex) -> Compiled {
        Compiled {
            formulas: t
                .formulas()
                .iter()
                .map(|f| Node::compile(f, index))
                .collect(),
        }
    }

    pub(crate) fn holds(&self, here: u64, there: u64) -> bool {
        self.formulas.iter().all(|f| f.eval(here, there).0)
    }
}

/// All submasks of `mask`, from `mask` itself down to zero.
pub(crate) fn submasks(mask: u64) -> impl Iterator<Item = u64> {
    let mut next = Some(mask);
    std::iter::from_fn(move || {
        let current = next?;
        next = if current == 0 {
            None
        } else {
            Some((current - 1) & mask)
        };
        Some(current)
    })
}
