//! Dependency graph of a program and the structural checks built on it.
//!
//! Edges point from head atoms to body atoms: `(p, q, +)` when some rule has
//! `p` in its head and `q` in its positive body, `(p, q, -)` when `q` is in
//! its negated body. Doubly negated atoms add no edge to the graph; for
//! stratification they count as negative dependencies.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write;

use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};
use serde::Serialize;

use crate::syntax::{Atom, Program};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Positive,
    #[serde(rename = "-")]
    Negative,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Edge {
    pub from: Atom,
    pub to: Atom,
    pub sign: Sign,
}

impl Edge {
    pub fn new(from: &Atom, to: &Atom, sign: Sign) -> Edge {
        Edge {
            from: from.clone(),
            to: to.clone(),
            sign,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DepGraph {
    nodes: BTreeSet<Atom>,
    edges: BTreeSet<Edge>,
}

impl DepGraph {
    pub fn nodes(&self) -> &BTreeSet<Atom> {
        &self.nodes
    }

    pub fn edges(&self) -> &BTreeSet<Edge> {
        &self.edges
    }

    pub fn has_edge(&self, from: &Atom, to: &Atom, sign: Sign) -> bool {
        self.edges.contains(&Edge::new(from, to, sign))
    }

    /// `[{"from":..,"to":..,"sign":"+"|"-"}, ...]`
    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.edges).expect("edges serialize")
    }
}

pub fn dependency_graph(p: &Program) -> DepGraph {
    let mut edges = BTreeSet::new();
    for rule in p.rules() {
        for h in rule.head() {
            for b in rule.body_pos() {
                edges.insert(Edge::new(h, b, Sign::Positive));
            }
            for b in rule.body_neg() {
                edges.insert(Edge::new(h, b, Sign::Negative));
            }
        }
    }
    DepGraph {
        nodes: p.signature().clone(),
        edges,
    }
}

/// Deterministic DOT rendering: nodes then edges, both sorted; negative
/// edges are dashed.
pub fn to_dot(g: &DepGraph) -> String {
    let mut out = String::from("digraph G {\n");
    for node in &g.nodes {
        let _ = writeln!(out, "{node};");
    }
    for edge in &g.edges {
        let style = match edge.sign {
            Sign::Positive => "solid",
            Sign::Negative => "dashed",
        };
        let _ = writeln!(out, "{} -> {} [style={style}];", edge.from, edge.to);
    }
    out.push_str("}\n");
    out
}

/// Rules of `p` that may support `a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subprogram {
    pub program: Program,
    /// Set when `a` is not in the signature of the source program.
    pub atom_absent: bool,
}

/// The rules with `a` in the head and `a` neither in the positive nor in the
/// negated body. Rules where `a` is only doubly negated are kept.
pub fn subprogram_for(p: &Program, a: &Atom) -> Subprogram {
    let rules = p
        .rules()
        .iter()
        .filter(|r| r.head().contains(a) && !r.body_pos().contains(a) && !r.body_neg().contains(a))
        .cloned()
        .collect();
    Subprogram {
        program: Program::with_signature(rules, p.signature().iter().cloned()),
        atom_absent: !p.signature().contains(a),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Stratification {
    /// Empty when `witness` is false.
    pub level: BTreeMap<Atom, usize>,
    pub witness: bool,
}

impl Stratification {
    /// Checks the level map rule by rule: heads at least as high as their
    /// positive body, strictly higher than negated and doubly negated atoms.
    pub fn is_valid_for(&self, p: &Program) -> bool {
        let level = |a: &Atom| self.level.get(a).copied();
        p.rules().iter().all(|r| {
            r.head().iter().all(|h| {
                let Some(lh) = level(h) else { return false };
                r.body_pos()
                    .iter()
                    .all(|b| level(b).is_some_and(|lb| lh >= lb))
                    && r.body_neg()
                        .iter()
                        .chain(r.body_negneg())
                        .all(|b| level(b).is_some_and(|lb| lh > lb))
            })
        })
    }
}

/// Stratified iff no cycle of the graph, with doubly negated atoms read as
/// negative edges, goes through a negative edge.
pub fn is_stratified(p: &Program) -> Stratification {
    let mut graph: DiGraph<Atom, Sign> = DiGraph::new();
    let mut index: HashMap<Atom, NodeIndex> = HashMap::new();
    for a in p.signature() {
        index.insert(a.clone(), graph.add_node(a.clone()));
    }
    for rule in p.rules() {
        for h in rule.head() {
            for b in rule.body_pos() {
                graph.add_edge(index[h], index[b], Sign::Positive);
            }
            for b in rule.body_neg().iter().chain(rule.body_negneg()) {
                graph.add_edge(index[h], index[b], Sign::Negative);
            }
        }
    }

    // Components come out in reverse topological order: whatever a
    // component depends on has already been numbered.
    let components = tarjan_scc(&graph);
    let mut component_of = vec![0usize; graph.node_count()];
    for (c, members) in components.iter().enumerate() {
        for &n in members {
            component_of[n.index()] = c;
        }
    }
    let mut component_level = vec![0usize; components.len()];
    for (c, members) in components.iter().enumerate() {
        let mut lvl = 0;
        for &n in members {
            for edge in graph.edges(n) {
                use petgraph::visit::EdgeRef;
                let target = component_of[edge.target().index()];
                let negative = *edge.weight() == Sign::Negative;
                if target == c {
                    if negative {
                        return Stratification::default();
                    }
                    continue;
                }
                lvl = lvl.max(component_level[target] + usize::from(negative));
            }
        }
        component_level[c] = lvl;
    }
    let level = graph
        .node_indices()
        .map(|n| (graph[n].clone(), component_level[component_of[n.index()]]))
        .collect();
    Stratification {
        level,
        witness: true,
    }
}

/// Every rule with `a` in its head has exactly `{a}` as head. This is how
/// `{a}`-normal programs are read here.
pub fn is_singleton_headed(p: &Program, a: &Atom) -> bool {
    p.rules()
        .iter()
        .filter(|r| r.head().contains(a))
        .all(|r| r.head().len() == 1)
}

/// No pair of positive edges `(a, x)` and `(y, a)`.
pub fn theorem2_edge_condition(p: &Program, a: &Atom) -> bool {
    let g = dependency_graph(p);
    let positive = |e: &&Edge| e.sign == Sign::Positive;
    let outgoing = g.edges.iter().filter(positive).any(|e| &e.from == a);
    let incoming = g.edges.iter().filter(positive).any(|e| &e.to == a);
    !(outgoing && incoming)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{atom, parse_program};

    fn prog(text: &str) -> Program {
        parse_program(text).unwrap()
    }

    fn edges(text: &str) -> Vec<(String, String, Sign)> {
        dependency_graph(&prog(text))
            .edges()
            .iter()
            .map(|e| (e.from.to_string(), e.to.to_string(), e.sign))
            .collect()
    }

    fn e(from: &str, to: &str, sign: Sign) -> (String, String, Sign) {
        (from.into(), to.into(), sign)
    }

    #[test]
    fn graph_examples() {
        assert_eq!(
            edges("a :- b. c :- a."),
            vec![e("a", "b", Sign::Positive), e("c", "a", Sign::Positive)]
        );
        assert_eq!(edges("b :- not a."), vec![e("b", "a", Sign::Negative)]);
        assert!(edges("").is_empty());
        assert!(edges("b :- not not a.").is_empty());
        assert_eq!(
            edges("a | b :- c, not d."),
            vec![
                e("a", "c", Sign::Positive),
                e("a", "d", Sign::Negative),
                e("b", "c", Sign::Positive),
                e("b", "d", Sign::Negative)
            ]
        );
    }

    #[test]
    fn subprogram_examples() {
        let a = atom("a");
        assert_eq!(
            subprogram_for(&prog("a :- b. c :- a."), &a).program.rules(),
            prog("a :- b.").rules()
        );
        assert!(subprogram_for(&prog("a :- a."), &a).program.is_empty());
        assert_eq!(
            subprogram_for(&prog("a :- not not a."), &a).program.rules(),
            prog("a :- not not a.").rules()
        );
        assert!(subprogram_for(&prog("a | c :- not a."), &a)
            .program
            .is_empty());
        let absent = subprogram_for(&prog("b :- c."), &a);
        assert!(absent.atom_absent && absent.program.is_empty());
    }

    #[test]
    fn stratification_examples() {
        let p = prog("b :- not a.");
        let s = is_stratified(&p);
        assert!(s.witness);
        assert_eq!(s.level[&atom("a")], 0);
        assert_eq!(s.level[&atom("b")], 1);
        assert!(s.is_valid_for(&p));

        assert!(!is_stratified(&prog("a :- not a.")).witness);
        assert!(!is_stratified(&prog("a :- not not a.")).witness);
        assert!(!is_stratified(&prog("a :- not b. b :- c. c :- a.")).witness);
        assert!(is_stratified(&prog("")).witness);

        let p = prog("a :- b. b :- a. c :- not a. d :- c, not not b.");
        let s = is_stratified(&p);
        assert!(s.witness && s.is_valid_for(&p));
        assert_eq!(s.level[&atom("d")], 1);
    }

    #[test]
    fn singleton_heads() {
        let a = atom("a");
        assert!(is_singleton_headed(&prog("a :- b. c :- a."), &a));
        assert!(!is_singleton_headed(&prog("a | b :- c."), &a));
        assert!(is_singleton_headed(&prog("b :- c."), &a));
    }

    #[test]
    fn edge_condition_examples() {
        let a = atom("a");
        assert!(theorem2_edge_condition(&prog("a | b. c :- a."), &a));
        assert!(!theorem2_edge_condition(&prog("a :- b. c :- a."), &a));
        assert!(theorem2_edge_condition(&prog("b :- c."), &a));
        // A positive self-loop is both an outgoing and an incoming edge.
        assert!(!theorem2_edge_condition(&prog("a :- a, b."), &a));
    }

    #[test]
    fn dot_output() {
        assert_eq!(to_dot(&DepGraph::default()), "digraph G {\n}\n");
        let dot = to_dot(&dependency_graph(&prog("a :- b. b :- not c.")));
        assert_eq!(
            dot,
            "digraph G {\na;\nb;\nc;\na -> b [style=solid];\nb -> c [style=dashed];\n}\n"
        );
        assert!(to_dot(&dependency_graph(&prog("b :- not a.")))
            .lines()
            .any(|l| l == "b -> a [style=dashed];"));
    }

    #[test]
    fn json_edges() {
        let g = dependency_graph(&prog("a :- b, not c."));
        assert_eq!(
            g.to_json(),
            r#"[{"from":"a","to":"b","sign":"+"},{"from":"a","to":"c","sign":"-"}]"#
        );
    }
}
