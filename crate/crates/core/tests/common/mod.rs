//! Independent oracles for the acceptance suite: exhaustive enumeration of
//! small graphs up to isomorphism, brute-force bisimulation search over all
//! relations, brute-force collapse enumeration over the rank-3 universe,
//! and the brute-force maximum over collapsible initial subgraphs.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use zermod::graphs::{HfSet, NodeId, PointedGraph};

/// All permutations of 0..n.
fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for rest in permutations(n - 1) {
        for k in 0..n {
            let mut p = rest.clone();
            p.insert(k, n - 1);
            out.push(p);
        }
    }
    out
}

fn is_acyclic(n: usize, edges: &[(usize, usize)]) -> bool {
    // DFS over the child relation: an edge (c, p) means p -> c downward
    let mut down: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (c, p) in edges {
        down[*p].push(*c);
    }
    let mut color = vec![0u8; n];
    fn dfs(v: usize, down: &[Vec<usize>], color: &mut [u8]) -> bool {
        color[v] = 1;
        for &w in &down[v] {
            match color[w] {
                0 => {
                    if !dfs(w, down, color) {
                        return false;
                    }
                }
                1 => return false,
                _ => {}
            }
        }
        color[v] = 2;
        true
    }
    (0..n).all(|v| color[v] != 0 || dfs(v, &down, &mut color))
}

fn graph_from(n: usize, edges: &[(usize, usize)], root: usize) -> PointedGraph {
    let nodes: BTreeSet<NodeId> = (0..n as u64).map(NodeId::Num).collect();
    let es: BTreeSet<(NodeId, NodeId)> = edges
        .iter()
        .map(|(c, p)| (NodeId::Num(*c as u64), NodeId::Num(*p as u64)))
        .collect();
    PointedGraph::new(nodes, es, NodeId::Num(root as u64)).expect("valid enumeration")
}

/// Pointed graphs with 1..=max_nodes nodes, one representative per
/// isomorphism class (isomorphisms permute nodes and must fix the root).
pub fn pointed_graphs_up_to_iso(max_nodes: usize, acyclic_only: bool) -> Vec<PointedGraph> {
    let mut out = Vec::new();
    let mut seen: HashSet<(usize, Vec<(usize, usize)>, usize)> = HashSet::new();
    for n in 1..=max_nodes {
        let perms = permutations(n);
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .collect();
        let m = pairs.len();
        for mask in 0u32..(1u32 << m) {
            let edges: Vec<(usize, usize)> = (0..m)
                .filter(|k| mask & (1 << k) != 0)
                .map(|k| pairs[k])
                .collect();
            if acyclic_only && !is_acyclic(n, &edges) {
                continue;
            }
            for root in 0..n {
                // canonical form: lexicographic minimum over permutations
                let canon = perms
                    .iter()
                    .map(|p| {
                        let mut es: Vec<(usize, usize)> =
                            edges.iter().map(|(c, q)| (p[*c], p[*q])).collect();
                        es.sort_unstable();
                        (n, es, p[root])
                    })
                    .min()
                    .expect("at least one permutation");
                if seen.insert(canon) {
                    out.push(graph_from(n, &edges, root));
                }
            }
        }
    }
    out
}

/// Unpointed edge structures up to isomorphism (for collapse checks, where
/// the root is irrelevant).
pub fn graphs_up_to_iso(max_nodes: usize) -> Vec<PointedGraph> {
    let mut out = Vec::new();
    let mut seen: HashSet<(usize, Vec<(usize, usize)>)> = HashSet::new();
    for n in 1..=max_nodes {
        let perms = permutations(n);
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .collect();
        let m = pairs.len();
        for mask in 0u32..(1u32 << m) {
            let edges: Vec<(usize, usize)> = (0..m)
                .filter(|k| mask & (1 << k) != 0)
                .map(|k| pairs[k])
                .collect();
            let canon = perms
                .iter()
                .map(|p| {
                    let mut es: Vec<(usize, usize)> =
                        edges.iter().map(|(c, q)| (p[*c], p[*q])).collect();
                    es.sort_unstable();
                    (n, es)
                })
                .min()
                .expect("at least one permutation");
            if seen.insert(canon) {
                out.push(graph_from(n, &edges, 0));
            }
        }
    }
    out
}

/// Brute-force bisimilarity: search every relation over node pairs that
/// contains the root pair for one satisfying the two closure conditions.
pub fn brute_bisimilar(g: &PointedGraph, h: &PointedGraph) -> bool {
    let gn: Vec<&NodeId> = g.nodes().iter().collect();
    let hn: Vec<&NodeId> = h.nodes().iter().collect();
    let (ng, nh) = (gn.len(), hn.len());
    let pairs = ng * nh;
    assert!(pairs <= 16, "brute force caps at 16 node pairs");
    let gi = |x: &NodeId| gn.iter().position(|n| *n == x).unwrap();
    let hi = |x: &NodeId| hn.iter().position(|n| *n == x).unwrap();
    let gch: Vec<Vec<usize>> = gn.iter().map(|n| g.children(n).iter().map(gi).collect()).collect();
    let hch: Vec<Vec<usize>> = hn.iter().map(|n| h.children(n).iter().map(hi).collect()).collect();
    let root_bit = 1u32 << (gi(g.root()) * nh + hi(h.root()));
    'rel: for mask in 0u32..(1u32 << pairs) {
        if mask & root_bit == 0 {
            continue;
        }
        let related = |a: usize, b: usize| mask & (1 << (a * nh + b)) != 0;
        for a in 0..ng {
            for b in 0..nh {
                if !related(a, b) {
                    continue;
                }
                // forth: every child of a is matched by some child of b
                for &a1 in &gch[a] {
                    if !hch[b].iter().any(|&b1| related(a1, b1)) {
                        continue 'rel;
                    }
                }
                // back
                for &b1 in &hch[b] {
                    if !gch[a].iter().any(|&a1| related(a1, b1)) {
                        continue 'rel;
                    }
                }
            }
        }
        return true;
    }
    false
}

/// Brute-force collapse enumeration: candidate decorations are drawn from
/// the rank-3 universe (complete for carriers of at most four nodes), coded
/// as bit masks over the sixteen rank-3 sets.
pub struct CollapseOracle {
    v4: Vec<HfSet>,
    /// v4[i] as a bit mask over v4 indices
    member_mask: Vec<u16>,
}

impl CollapseOracle {
    pub fn new() -> Self {
        let v4 = zermod::graphs::all_of_rank_le(3);
        assert_eq!(v4.len(), 16);
        let member_mask = v4
            .iter()
            .map(|s| {
                let mut m = 0u16;
                for x in s.members() {
                    let i = v4.iter().position(|y| y == x).expect("member has rank <= 2");
                    m |= 1 << i;
                }
                m
            })
            .collect();
        CollapseOracle { v4, member_mask }
    }

    /// Every decoration of the carrier satisfying the fixed-point equation.
    pub fn collapses(&self, g: &PointedGraph) -> Vec<BTreeMap<NodeId, HfSet>> {
        let carrier: Vec<NodeId> = g.carrier().into_iter().collect();
        let k = carrier.len();
        assert!(k <= 4, "oracle caps at four carrier nodes");
        let idx = |n: &NodeId| carrier.iter().position(|m| m == n).unwrap();
        let children: Vec<Vec<usize>> = carrier
            .iter()
            .map(|n| g.children(n).iter().map(idx).collect())
            .collect();
        let mut found = Vec::new();
        let total = 16usize.pow(k as u32);
        for code in 0..total {
            let val = |i: usize| (code >> (4 * i)) & 0xf;
            let ok = (0..k).all(|i| {
                let mut want = 0u16;
                for &c in &children[i] {
                    want |= 1 << val(c);
                }
                self.member_mask[val(i)] == want
            });
            if ok {
                found.push(
                    carrier
                        .iter()
                        .enumerate()
                        .map(|(i, n)| (n.clone(), self.v4[val(i)].clone()))
                        .collect(),
                );
            }
        }
        found
    }
}

/// Brute-force union of all collapsible initial subgraphs (edge sets).
pub fn brute_largest_collapsible(g: &PointedGraph) -> BTreeSet<(NodeId, NodeId)> {
    let edges: Vec<(NodeId, NodeId)> = g.edges().iter().cloned().collect();
    let m = edges.len();
    assert!(m <= 20, "brute force caps at 20 edges");
    let mut best: BTreeSet<(NodeId, NodeId)> = BTreeSet::new();
    for mask in 0u32..(1u32 << m) {
        let sub: Vec<(NodeId, NodeId)> = (0..m)
            .filter(|k| mask & (1 << k) != 0)
            .map(|k| edges[k].clone())
            .collect();
        // carrier of the subgraph
        let mut carrier: BTreeSet<&NodeId> = BTreeSet::new();
        for (c, p) in &sub {
            carrier.insert(c);
            carrier.insert(p);
        }
        // initial: every edge of g into a carrier node is present
        let initial = edges
            .iter()
            .all(|(c, p)| !carrier.contains(p) || sub.contains(&(c.clone(), p.clone())));
        if !initial {
            continue;
        }
        // collapsible: the edge relation is acyclic
        let nodes: Vec<&NodeId> = carrier.iter().cloned().collect();
        let n = nodes.len();
        let index = |x: &NodeId| nodes.iter().position(|y| *y == x).unwrap();
        let idx_edges: Vec<(usize, usize)> =
            sub.iter().map(|(c, p)| (index(c), index(p))).collect();
        if !is_acyclic(n, &idx_edges) {
            continue;
        }
        best.extend(sub);
    }
    best
}

/// Quotient a list of graphs by engine bisimilarity; returns one
/// representative per class.  Used to shrink quantifier spaces for the
/// construction lemmas (membership and bisimilarity are invariant under
/// bisimilarity, which the suite checks separately).
pub fn bisim_class_reps(graphs: &[PointedGraph]) -> Vec<PointedGraph> {
    let mut reps: Vec<PointedGraph> = Vec::new();
    for g in graphs {
        if !reps.iter().any(|r| zermod::graphs::bisimilar(g, r).is_some()) {
            reps.push(g.clone());
        }
    }
    reps
}
