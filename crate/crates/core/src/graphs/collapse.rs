//! Mostowski collapse, reification, the largest collapsible subgraph, and
//! the graph of a hereditarily finite set.

use std::collections::{BTreeMap, BTreeSet};

use super::graph::{GraphPart, PointedGraph};
use super::hfset::HfSet;
use super::node::NodeId;
use super::GraphError;

/// Carrier decoration by index: values in carrier order, or `None` on a
/// cycle.  Node ids are resolved to indices once, so the recursive set-coded
/// ids are not repeatedly compared.
fn collapse_indexed(g: &PointedGraph) -> Option<(Vec<NodeId>, Vec<HfSet>)> {
    let carrier: Vec<NodeId> = g.carrier().into_iter().collect();
    let k = carrier.len();
    let idx = |n: &NodeId| carrier.binary_search(n).expect("carrier node");
    let children: Vec<Vec<usize>> = carrier
        .iter()
        .map(|n| g.children(n).iter().map(idx).collect())
        .collect();
    // Kahn on the child dependencies, bottom-up
    let mut pending: Vec<usize> = children.iter().map(|c| c.len()).collect();
    let mut parents: Vec<Vec<usize>> = vec![Vec::new(); k];
    for (p, cs) in children.iter().enumerate() {
        for &c in cs {
            parents[c].push(p);
        }
    }
    let mut queue: Vec<usize> = (0..k).filter(|&i| pending[i] == 0).collect();
    let mut order = Vec::with_capacity(k);
    while let Some(i) = queue.pop() {
        order.push(i);
        for &p in &parents[i] {
            pending[p] -= 1;
            if pending[p] == 0 {
                queue.push(p);
            }
        }
    }
    if order.len() != k {
        return None;
    }
    let mut values: Vec<HfSet> = vec![HfSet::empty(); k];
    for i in order {
        values[i] = HfSet::from_members(children[i].iter().map(|&c| values[c].clone()));
    }
    Some((carrier, values))
}

/// The collapse decorates every carrier node with the set of decorations of
/// its children.  It exists iff the edge relation restricted to the carrier
/// is acyclic; it is then unique.
pub fn collapse(g: &PointedGraph) -> Option<BTreeMap<NodeId, HfSet>> {
    let (carrier, values) = collapse_indexed(g)?;
    Some(carrier.into_iter().zip(values).collect())
}

/// The set denoted by a pointed graph: the collapse decoration extended to
/// the root (the root need not be in the carrier).
pub fn reify(g: &PointedGraph) -> Option<HfSet> {
    let (carrier, values) = collapse_indexed(g)?;
    Some(HfSet::from_members(g.children(g.root()).iter().map(|c| {
        values[carrier.binary_search(c).expect("child in carrier")].clone()
    })))
}

/// Nodes of `g` that can reach a cycle walking downward (toward children),
/// including nodes on cycles.
fn cycle_tainted(g: &PointedGraph) -> BTreeSet<NodeId> {
    let nodes: Vec<&NodeId> = g.nodes().iter().collect();
    let idx = |n: &NodeId| nodes.binary_search(&n).expect("node in graph");
    let n = nodes.len();
    let ch: Vec<Vec<usize>> = nodes
        .iter()
        .map(|v| g.children(v).iter().map(idx).collect())
        .collect();
    // three-color DFS marks nodes on cycles
    let mut on_cycle = vec![false; n];
    let mut color = vec![0u8; n]; // 0 white, 1 gray, 2 black
    for start in 0..n {
        if color[start] != 0 {
            continue;
        }
        // iterative DFS with an explicit stack of (node, next child index)
        let mut stack: Vec<(usize, usize)> = vec![(start, 0)];
        color[start] = 1;
        while let Some((v, k)) = stack.pop() {
            if k < ch[v].len() {
                stack.push((v, k + 1));
                let w = ch[v][k];
                match color[w] {
                    0 => {
                        color[w] = 1;
                        stack.push((w, 0));
                    }
                    1 => {
                        on_cycle[w] = true;
                    }
                    _ => {}
                }
            } else {
                color[v] = 2;
            }
        }
    }
    // taint everything that reaches a cycle node downward
    let mut tainted = on_cycle;
    loop {
        let mut changed = false;
        for v in 0..n {
            if !tainted[v] && ch[v].iter().any(|&w| tainted[w]) {
                tainted[v] = true;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    nodes
        .into_iter()
        .enumerate()
        .filter(|(i, _)| tainted[*i])
        .map(|(_, v)| v.clone())
        .collect()
}

/// The subgraph induced by all nodes from which no cycle is reachable along
/// child edges.  It is an initial subgraph, it is collapsible, and it
/// contains every collapsible initial subgraph.
pub fn largest_collapsible_subgraph(g: &PointedGraph) -> GraphPart {
    let tainted = cycle_tainted(g);
    let nodes: BTreeSet<NodeId> = g
        .nodes()
        .iter()
        .filter(|n| !tainted.contains(n))
        .cloned()
        .collect();
    let edges: BTreeSet<(NodeId, NodeId)> = g
        .edges()
        .iter()
        .filter(|(c, p)| nodes.contains(c) && nodes.contains(p))
        .cloned()
        .collect();
    GraphPart { nodes, edges }
}

/// The canonical pointed graph of a hereditarily finite set: nodes are the
/// transitive closure plus the set itself, edges are membership, the root
/// is the set.
pub fn graph_of_set(x: &HfSet) -> PointedGraph {
    let mut sets: BTreeSet<HfSet> = x.transitive_members();
    sets.insert(x.clone());
    // encode each set once
    let coded: Vec<(&HfSet, NodeId)> = sets.iter().map(|s| (s, s.to_node())).collect();
    let nodes: BTreeSet<NodeId> = coded.iter().map(|(_, n)| n.clone()).collect();
    let mut edges: BTreeSet<(NodeId, NodeId)> = BTreeSet::new();
    for (u, un) in &coded {
        for (v, vn) in &coded {
            if v.contains(u) {
                edges.insert((un.clone(), vn.clone()));
            }
        }
    }
    let root = coded
        .iter()
        .find(|(s, _)| *s == x)
        .map(|(_, n)| n.clone())
        .expect("x is among its own closure");
    PointedGraph::new(nodes, edges, root).expect("well-formed by construction")
}

/// Convenience: parse error propagation for operations that need a node.
pub fn reroot(g: &PointedGraph, x: &NodeId) -> Result<PointedGraph, GraphError> {
    g.reroot(x)
}
