//! Bisimilarity as a greatest-fixed-point refinement, and membership as
//! shifted bisimilarity.

use std::collections::BTreeSet;

use super::graph::PointedGraph;
use super::node::NodeId;

/// A bisimulation relation between the nodes of two graphs, restricted to
/// the pairs reachable from the root pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BisimWitness {
    pub pairs: BTreeSet<(NodeId, NodeId)>,
}

impl BisimWitness {
    /// Check the defining conditions: contains the root pair and satisfies
    /// the forth and back closure conditions.
    pub fn verify(&self, g: &PointedGraph, h: &PointedGraph) -> bool {
        if !self
            .pairs
            .contains(&(g.root().clone(), h.root().clone()))
        {
            return false;
        }
        for (x, y) in &self.pairs {
            for x1 in g.children(x) {
                if !h
                    .children(y)
                    .iter()
                    .any(|y1| self.pairs.contains(&(x1.clone(), y1.clone())))
                {
                    return false;
                }
            }
            for y1 in h.children(y) {
                if !g
                    .children(x)
                    .iter()
                    .any(|x1| self.pairs.contains(&(x1.clone(), y1.clone())))
                {
                    return false;
                }
            }
        }
        true
    }
}

/// Greatest bisimulation between `g` and `h`, restricted to pairs reachable
/// from the root pair; `None` when the roots are not related.
pub fn bisimilar(g: &PointedGraph, h: &PointedGraph) -> Option<BisimWitness> {
    let gn: Vec<&NodeId> = g.nodes().iter().collect();
    let hn: Vec<&NodeId> = h.nodes().iter().collect();
    let gi = |n: &NodeId| gn.binary_search(&n).expect("node in graph");
    let hi = |n: &NodeId| hn.binary_search(&n).expect("node in graph");
    let (ng, nh) = (gn.len(), hn.len());

    let gch: Vec<Vec<usize>> = gn
        .iter()
        .map(|n| g.children(n).iter().map(gi).collect())
        .collect();
    let hch: Vec<Vec<usize>> = hn
        .iter()
        .map(|n| h.children(n).iter().map(hi).collect())
        .collect();

    // start from the full relation, refine to the greatest fixed point
    let mut rel = vec![true; ng * nh];
    loop {
        let mut changed = false;
        for a in 0..ng {
            for b in 0..nh {
                if !rel[a * nh + b] {
                    continue;
                }
                let forth = gch[a]
                    .iter()
                    .all(|&a1| hch[b].iter().any(|&b1| rel[a1 * nh + b1]));
                let back = hch[b]
                    .iter()
                    .all(|&b1| gch[a].iter().any(|&a1| rel[a1 * nh + b1]));
                if !(forth && back) {
                    rel[a * nh + b] = false;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }

    let (ra, rb) = (gi(g.root()), hi(h.root()));
    if !rel[ra * nh + rb] {
        return None;
    }

    // restrict to pairs reachable from the root pair through the relation
    let mut seen = vec![false; ng * nh];
    let mut queue = vec![(ra, rb)];
    seen[ra * nh + rb] = true;
    let mut pairs = BTreeSet::new();
    while let Some((a, b)) = queue.pop() {
        pairs.insert((gn[a].clone(), hn[b].clone()));
        for &a1 in &gch[a] {
            for &b1 in &hch[b] {
                if rel[a1 * nh + b1] && !seen[a1 * nh + b1] {
                    seen[a1 * nh + b1] = true;
                    queue.push((a1, b1));
                }
            }
        }
    }
    Some(BisimWitness { pairs })
}

/// Membership as shifted bisimilarity: some child `x` of `root(h)` has
/// `h/x` bisimilar to `g`.
pub fn member(g: &PointedGraph, h: &PointedGraph) -> bool {
    h.root_children().iter().any(|x| {
        let shifted = h.reroot(x).expect("child is a node");
        bisimilar(g, &shifted).is_some()
    })
}
