//! Finite realizations of the set-theoretic graph constructions.  Nodes of
//! the argument graphs are relocated with the `i`/`j` tags; `o` is the
//! fresh root.

use std::collections::BTreeSet;

use super::bisim::member;
use super::graph::PointedGraph;
use super::node::NodeId;
use super::GraphError;

fn i_copy_nodes(a: &PointedGraph) -> BTreeSet<NodeId> {
    a.nodes().iter().map(|n| NodeId::i(n.clone())).collect()
}

fn i_copy_edges(a: &PointedGraph) -> BTreeSet<(NodeId, NodeId)> {
    a.edges()
        .iter()
        .map(|(c, p)| (NodeId::i(c.clone()), NodeId::i(p.clone())))
        .collect()
}

/// Union: the fresh root is connected to the grandchildren of `root(a)`.
pub fn union_graph(a: &PointedGraph) -> PointedGraph {
    let mut nodes = i_copy_nodes(a);
    nodes.insert(NodeId::Root);
    let mut edges = i_copy_edges(a);
    for z in a.root_children() {
        for y in a.children(z) {
            edges.insert((NodeId::i(y.clone()), NodeId::Root));
        }
    }
    PointedGraph::new(nodes, edges, NodeId::Root).expect("construction is well-formed")
}

/// Pair: both roots become children of the fresh root.
pub fn pair_graph(a: &PointedGraph, b: &PointedGraph) -> PointedGraph {
    let mut nodes: BTreeSet<NodeId> = i_copy_nodes(a);
    nodes.extend(b.nodes().iter().map(|n| NodeId::j(n.clone())));
    nodes.insert(NodeId::Root);
    let mut edges = i_copy_edges(a);
    edges.extend(
        b.edges()
            .iter()
            .map(|(c, p)| (NodeId::j(c.clone()), NodeId::j(p.clone()))),
    );
    edges.insert((NodeId::i(a.root().clone()), NodeId::Root));
    edges.insert((NodeId::j(b.root().clone()), NodeId::Root));
    PointedGraph::new(nodes, edges, NodeId::Root).expect("construction is well-formed")
}

/// Powerset: one `j`-tagged node per subset of the root's children, with
/// the subset's members (i-relocated) as children.
pub fn pow_graph(a: &PointedGraph) -> PointedGraph {
    let rc: Vec<&NodeId> = a.root_children().iter().collect();
    assert!(rc.len() < 30, "powerset construction too large");
    let mut nodes = i_copy_nodes(a);
    let mut edges = i_copy_edges(a);
    nodes.insert(NodeId::Root);
    for mask in 0u32..(1u32 << rc.len()) {
        let subset: BTreeSet<NodeId> = rc
            .iter()
            .enumerate()
            .filter(|(k, _)| mask & (1 << k) != 0)
            .map(|(_, n)| (*n).clone())
            .collect();
        let sn = NodeId::j(NodeId::Set(subset.clone()));
        nodes.insert(sn.clone());
        for y in subset {
            edges.insert((NodeId::i(y), sn.clone()));
        }
        edges.insert((sn, NodeId::Root));
    }
    PointedGraph::new(nodes, edges, NodeId::Root).expect("construction is well-formed")
}

/// Restricted comprehension: children of the fresh root are the children
/// `y` of `root(a)` whose shifted graph `a/y` satisfies the predicate.
pub fn compr_graph(
    a: &PointedGraph,
    pred: &mut dyn FnMut(&PointedGraph) -> Result<bool, GraphError>,
) -> Result<PointedGraph, GraphError> {
    let mut nodes = i_copy_nodes(a);
    nodes.insert(NodeId::Root);
    let mut edges = i_copy_edges(a);
    for y in a.root_children() {
        let shifted = a.reroot(y).expect("child is a node");
        if pred(&shifted)? {
            edges.insert((NodeId::i(y.clone()), NodeId::Root));
        }
    }
    Ok(PointedGraph::new(nodes, edges, NodeId::Root).expect("construction is well-formed"))
}

/// The graph of von Neumann numerals, truncated at `k` (the full graph is
/// infinite): nodes `i(0) .. i(k-1)`, an edge from `i(y')` up to `i(y)`
/// whenever `y < y'`... i.e. `(i(y), i(y'))` with `y < y'`, and every
/// numeral is a child of the fresh root.
pub fn omega_graph(k: u64) -> PointedGraph {
    let mut nodes: BTreeSet<NodeId> = (0..k).map(|m| NodeId::i(NodeId::Num(m))).collect();
    nodes.insert(NodeId::Root);
    let mut edges = BTreeSet::new();
    for y in 0..k {
        for y1 in (y + 1)..k {
            edges.insert((NodeId::i(NodeId::Num(y)), NodeId::i(NodeId::Num(y1))));
        }
        edges.insert((NodeId::i(NodeId::Num(y)), NodeId::Root));
    }
    PointedGraph::new(nodes, edges, NodeId::Root).expect("construction is well-formed")
}

/// Transitive closure: every strict descendant of `root(a)` becomes a child
/// of the fresh root.
pub fn tc_graph(a: &PointedGraph) -> PointedGraph {
    let mut nodes = i_copy_nodes(a);
    nodes.insert(NodeId::Root);
    let mut edges = i_copy_edges(a);
    // descendants of the root, one or more steps down
    let mut seen: BTreeSet<NodeId> = BTreeSet::new();
    let mut queue: Vec<NodeId> = a.root_children().to_vec();
    while let Some(y) = queue.pop() {
        if seen.insert(y.clone()) {
            queue.extend(a.children(&y).iter().cloned());
        }
    }
    for y in &seen {
        edges.insert((NodeId::i(y.clone()), NodeId::Root));
    }
    PointedGraph::new(nodes, edges, NodeId::Root).expect("construction is well-formed")
}

/// The successor set `union(pair(a, pair(a, a)))`, i.e. `a ∪ {a}`.
pub fn successor_graph(a: &PointedGraph) -> PointedGraph {
    union_graph(&pair_graph(a, &pair_graph(a, a)))
}

/// Convenience membership re-export used by the formula evaluator.
pub fn member_graphs(g: &PointedGraph, h: &PointedGraph) -> bool {
    member(g, h)
}
