//! Desk-scale semantics: finite pointed graphs, bisimulation, the graph
//! constructions, Mostowski collapse, reification, and the hereditarily
//! finite set oracle.

pub mod bisim;
pub mod collapse;
pub mod construct;
pub mod eval;
pub mod graph;
pub mod hfset;
pub mod node;

pub use bisim::{bisimilar, member, BisimWitness};
pub use collapse::{collapse, graph_of_set, largest_collapsible_subgraph, reify};
pub use construct::{
    compr_graph, omega_graph, pair_graph, pow_graph, successor_graph, tc_graph, union_graph,
};
pub use eval::{eval_graph_formula, eval_hf_formula, formula_predicate};
pub use graph::{parse_graph, parse_graphs, GraphPart, PointedGraph};
pub use hfset::{all_of_rank_le, parse_hf, v_level, HfSet};
pub use node::{node_id_from_str, NodeId};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("unknown node `{0}`")]
    UnknownNode(String),
    #[error("edge ({child}, {parent}) mentions a node outside the graph")]
    BadEdge { child: String, parent: String },
    #[error("graph text error at {line}:{col}: {msg}")]
    Parse { line: u32, col: u32, msg: String },
    #[error(transparent)]
    Lang(Box<crate::lang::LangError>),
    #[error("{0}")]
    Unsupported(String),
}

#[cfg(test)]
mod tests {
    use std::collections::{BTreeMap, BTreeSet};

    use super::*;
    use crate::lang::{parse_formula, Lang};

    fn g(text: &str) -> PointedGraph {
        parse_graph(text).unwrap()
    }

    fn figure() -> (PointedGraph, PointedGraph, PointedGraph, PointedGraph) {
        (
            g("graph g1 { nodes: 1; edges: ; root: 1 }"),
            g("graph g2 { nodes: 2, 3; edges: (3, 2); root: 2 }"),
            g("graph g4 { nodes: 4, 5, 6, 7; edges: (5, 4), (6, 4), (7, 6); root: 4 }"),
            g("graph g6 { nodes: 6, 7; edges: (7, 6); root: 6 }"),
        )
    }

    #[test]
    fn figure_graphs_bisimulate() {
        let (g1, g2, g4, g6) = figure();
        let w = bisimilar(&g2, &g6).expect("both represent the singleton of the empty set");
        assert!(w.verify(&g2, &g6));
        assert!(w.pairs.contains(&(NodeId::Num(2), NodeId::Num(6))));
        // reflexivity with the identity-style witness
        let w = bisimilar(&g4, &g4).unwrap();
        assert!(w.verify(&g4, &g4));
        // one node with no edges is not the singleton
        assert!(bisimilar(&g1, &g2).is_none());
    }

    #[test]
    fn membership_examples() {
        let (g1, g2, g4, _) = figure();
        assert!(member(&g1, &g2));
        for x in [&g1, &g2, &g4] {
            assert!(!member(x, &g1), "nothing is a member of the empty set");
        }
        assert!(member(&g2, &g4));
        assert!(member(&g1, &g4));
        assert!(!member(&g4, &g4));
    }

    #[test]
    fn reroot_laws() {
        let (_, _, g4, _) = figure();
        let x = NodeId::Num(6);
        let y = NodeId::Num(7);
        let a = g4.reroot(&x).unwrap().reroot(&y).unwrap();
        assert_eq!(a, g4.reroot(&y).unwrap());
        assert_eq!(g4.reroot(g4.root()).unwrap(), g4);
        assert_eq!(g4.reroot(&x).unwrap().root(), &x);
        assert!(g4.reroot(&NodeId::Num(99)).is_err());
        // lemma 6: a is bisimilar to a / root(a)
        assert!(bisimilar(&g4, &g4.reroot(g4.root()).unwrap()).is_some());
    }

    #[test]
    fn collapse_examples() {
        let (g1, g2, _, _) = figure();
        let phi = collapse(&g2).unwrap();
        assert_eq!(phi[&NodeId::Num(3)], HfSet::empty());
        assert_eq!(phi[&NodeId::Num(2)], HfSet::singleton(HfSet::empty()));
        // empty carrier: empty map
        assert!(collapse(&g1).unwrap().is_empty());
        // self-loop: no collapse
        let l = g("graph l { nodes: 1; edges: (1, 1); root: 1 }");
        assert!(collapse(&l).is_none());
        assert!(reify(&l).is_none());
    }

    #[test]
    fn largest_collapsible_subgraph_examples() {
        // acyclic: the whole graph
        let (_, _, g4, _) = figure();
        let part = largest_collapsible_subgraph(&g4);
        assert_eq!(&part.nodes, g4.nodes());
        assert_eq!(&part.edges, g4.edges());
        // self-loop plus a disjoint chain: only the chain survives
        let mixed = g("graph m { nodes: 1, 2, 3; edges: (1, 1), (3, 2); root: 2 }");
        let part = largest_collapsible_subgraph(&mixed);
        assert_eq!(part.nodes, BTreeSet::from([NodeId::Num(2), NodeId::Num(3)]));
        assert_eq!(part.edges, BTreeSet::from([(NodeId::Num(3), NodeId::Num(2))]));
        // a pure cycle: empty
        let cyc = g("graph c { nodes: 1, 2; edges: (1, 2), (2, 1); root: 1 }");
        let part = largest_collapsible_subgraph(&cyc);
        assert!(part.nodes.is_empty() && part.edges.is_empty());
        // a node above a cycle is lost too
        let above = g("graph a { nodes: 1, 2, 3; edges: (1, 1), (1, 2), (3, 2); root: 2 }");
        let part = largest_collapsible_subgraph(&above);
        assert_eq!(part.nodes, BTreeSet::from([NodeId::Num(3)]));
    }

    #[test]
    fn reify_examples() {
        let (g1, _, g4, _) = figure();
        assert_eq!(reify(&g1).unwrap(), HfSet::empty());
        let two = HfSet::from_members([HfSet::empty(), HfSet::singleton(HfSet::empty())]);
        assert_eq!(reify(&g4).unwrap(), two);
        // cycle unreachable from the root still blocks reification
        let side = g("graph s { nodes: 1, 2; edges: (2, 2); root: 1 }");
        assert!(reify(&side).is_none());
    }

    #[test]
    fn graph_of_set_examples() {
        let e = graph_of_set(&HfSet::empty());
        assert_eq!(e.nodes().len(), 1);
        assert!(e.edges().is_empty());
        let one = graph_of_set(&HfSet::singleton(HfSet::empty()));
        assert_eq!(one.nodes().len(), 2);
        assert_eq!(one.edges().len(), 1);
        for r in 0..=3 {
            for s in all_of_rank_le(r) {
                assert_eq!(reify(&graph_of_set(&s)), Some(s.clone()), "{}", s);
            }
        }
    }

    #[test]
    fn construction_spot_checks() {
        let (g1, g2, g4, _) = figure();
        // lemma 49: the empty set is in the truncated numeral graph
        assert!(member(&g1, &omega_graph(3)));
        // lemma 47: reify(Omega/i(0)) = {}
        let om = omega_graph(5);
        let z = om.reroot(&NodeId::i(NodeId::Num(0))).unwrap();
        assert_eq!(reify(&z).unwrap(), HfSet::empty());
        // lemma 43 instance: c in {a,b} iff c ~ a or c ~ b
        let p = pair_graph(&g2, &g4);
        assert!(member(&g2, &p) && member(&g4, &p) && !member(&g1, &p));
        // lemma 42 instance
        let u = union_graph(&g4);
        assert!(member(&g1, &u));
        assert!(!member(&g2, &u), "members of members of {{{{}},{{{{}}}}}} is {{{{}}}}");
        // lemma 44 instance: a in Pow(b) iff a subseteq b
        let pw = pow_graph(&g4);
        assert!(member(&g2, &pw) && member(&g4, &pw) && member(&g1, &pw));
        // lemma 52 instance
        let tc = tc_graph(&g4);
        assert!(member(&g2, &tc) && member(&g1, &tc));
        // successor: reify(S({})) = {{}}
        assert_eq!(
            reify(&successor_graph(&g1)).unwrap(),
            HfSet::singleton(HfSet::empty())
        );
    }

    #[test]
    fn compr_uses_the_formula_predicate() {
        let (_, _, g4, _) = figure();
        let f = parse_formula("~(x in x)", Lang::Zermod).unwrap();
        let params = BTreeMap::new();
        let mut pred = formula_predicate(&f, "x", &params);
        let c = compr_graph(&g4, &mut pred).unwrap();
        // nothing is a member of itself here, so the comprehension keeps both
        assert!(member(&g4.reroot(&NodeId::Num(5)).unwrap(), &c));
        // and a false predicate keeps nothing
        let f = parse_formula("x in x", Lang::Zermod).unwrap();
        let mut pred = formula_predicate(&f, "x", &params);
        let c = compr_graph(&g4, &mut pred).unwrap();
        assert!(c.root_children().is_empty());
    }

    #[test]
    fn graph_text_round_trips() {
        let (_, _, g4, _) = figure();
        let printed = g4.to_text("g4");
        let re = parse_graph(&printed).unwrap();
        assert_eq!(re, g4);
        // structured ids round trip
        let om = omega_graph(3);
        let re = parse_graph(&om.to_text("om")).unwrap();
        assert_eq!(re, om);
        let pw = pow_graph(&g4);
        let re = parse_graph(&pw.to_text("pw")).unwrap();
        assert_eq!(re, pw);
    }

    #[test]
    fn hf_literals_round_trip() {
        for text in ["{}", "{{}}", "{{},{{}}}", "{{},{{}},{{},{{}}}}"] {
            let s = parse_hf(text).unwrap();
            assert_eq!(s.to_string(), text);
            assert_eq!(parse_hf(&s.to_string()).unwrap(), s);
        }
        // duplicates collapse
        assert_eq!(parse_hf("{{},{}}").unwrap(), parse_hf("{{}}").unwrap());
    }

    #[test]
    fn hf_enumeration_counts() {
        assert_eq!(v_level(0).len(), 0);
        assert_eq!(v_level(1).len(), 1);
        assert_eq!(v_level(2).len(), 2);
        assert_eq!(v_level(3).len(), 4);
        assert_eq!(v_level(4).len(), 16);
        assert_eq!(all_of_rank_le(3).len(), 16);
        assert_eq!(all_of_rank_le(4).len(), 65536);
        for s in all_of_rank_le(2) {
            assert!(s.rank() <= 2);
        }
    }

    #[test]
    fn eval_graph_formula_examples() {
        let (g1, g2, _, _) = figure();
        let mut env = BTreeMap::new();
        env.insert("x".to_string(), g1.clone());
        env.insert("y".to_string(), g2.clone());
        let f = parse_formula("x in y", Lang::Zermod).unwrap();
        assert!(eval_graph_formula(&f, &env).unwrap());
        let f = parse_formula("x ~~ y", Lang::Zermod).unwrap();
        assert!(!eval_graph_formula(&f, &env).unwrap());
        let f = parse_formula("x in Pair(x, y)", Lang::Zermod).unwrap();
        assert!(eval_graph_formula(&f, &env).unwrap());
        let f = parse_formula("forall a:G. a ~~ a", Lang::Zermod).unwrap();
        assert!(eval_graph_formula(&f, &env).is_err());
    }

    #[test]
    fn hf_evaluator_examples() {
        let mut env = BTreeMap::new();
        env.insert("x".to_string(), HfSet::empty());
        env.insert("y".to_string(), HfSet::singleton(HfSet::empty()));
        let f = parse_formula("x in y", Lang::Zst).unwrap();
        assert!(eval_hf_formula(&f, &env).unwrap());
        let f = parse_formula("x = y", Lang::Zst).unwrap();
        assert!(!eval_hf_formula(&f, &env).unwrap());
        let f = parse_formula("x in y -> ~(y in x)", Lang::Zst).unwrap();
        assert!(eval_hf_formula(&f, &env).unwrap());
    }

    #[test]
    fn graph_validation_errors() {
        assert!(PointedGraph::new(
            BTreeSet::from([NodeId::Num(1)]),
            BTreeSet::from([(NodeId::Num(1), NodeId::Num(2))]),
            NodeId::Num(1),
        )
        .is_err());
        assert!(PointedGraph::new(
            BTreeSet::from([NodeId::Num(1)]),
            BTreeSet::new(),
            NodeId::Num(2),
        )
        .is_err());
    }
}
