//! Finite pointed graphs: explicit node/edge/root data.  An edge `(x, y)`
//! means `x eta y`: there is an edge from `y` down to `x`, i.e. `x` is a
//! child of `y`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::node::{NodeId, NodeParser};
use super::GraphError;
use crate::lang::parse::{lex, Tok};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PointedGraph {
    nodes: BTreeSet<NodeId>,
    edges: BTreeSet<(NodeId, NodeId)>,
    root: NodeId,
    children: BTreeMap<NodeId, Vec<NodeId>>,
}

impl PointedGraph {
    pub fn new(
        nodes: BTreeSet<NodeId>,
        edges: BTreeSet<(NodeId, NodeId)>,
        root: NodeId,
    ) -> Result<PointedGraph, GraphError> {
        for (c, p) in &edges {
            if !nodes.contains(c) || !nodes.contains(p) {
                return Err(GraphError::BadEdge {
                    child: c.to_string(),
                    parent: p.to_string(),
                });
            }
        }
        if !nodes.contains(&root) {
            return Err(GraphError::UnknownNode(root.to_string()));
        }
        let mut children: BTreeMap<NodeId, Vec<NodeId>> = BTreeMap::new();
        for (c, p) in &edges {
            children.entry(p.clone()).or_default().push(c.clone());
        }
        Ok(PointedGraph {
            nodes,
            edges,
            root,
            children,
        })
    }

    /// Single node, no edges: a representation of the empty set.
    pub fn empty_set() -> PointedGraph {
        PointedGraph::new(
            BTreeSet::from([NodeId::Root]),
            BTreeSet::new(),
            NodeId::Root,
        )
        .expect("valid")
    }

    pub fn nodes(&self) -> &BTreeSet<NodeId> {
        &self.nodes
    }

    pub fn edges(&self) -> &BTreeSet<(NodeId, NodeId)> {
        &self.edges
    }

    pub fn root(&self) -> &NodeId {
        &self.root
    }

    /// Children of `n`: all `c` with an edge from `n` down to `c`.
    pub fn children(&self, n: &NodeId) -> &[NodeId] {
        self.children.get(n).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn root_children(&self) -> &[NodeId] {
        self.children(&self.root)
    }

    /// Same graph, new root.
    pub fn reroot(&self, x: &NodeId) -> Result<PointedGraph, GraphError> {
        if !self.nodes.contains(x) {
            return Err(GraphError::UnknownNode(x.to_string()));
        }
        let mut g = self.clone();
        g.root = x.clone();
        Ok(g)
    }

    /// Endpoints of the edge relation (excludes isolated nodes and possibly
    /// the root).
    pub fn carrier(&self) -> BTreeSet<NodeId> {
        let mut c = BTreeSet::new();
        for (x, y) in &self.edges {
            c.insert(x.clone());
            c.insert(y.clone());
        }
        c
    }

    /// Render in the graph text format.
    pub fn to_text(&self, name: &str) -> String {
        let mut out = String::new();
        out.push_str("graph ");
        out.push_str(name);
        out.push_str(" { nodes: ");
        for (k, n) in self.nodes.iter().enumerate() {
            if k > 0 {
                out.push_str(", ");
            }
            out.push_str(&n.to_string());
        }
        out.push_str("; edges: ");
        for (k, (c, p)) in self.edges.iter().enumerate() {
            if k > 0 {
                out.push_str(", ");
            }
            out.push_str(&format!("({}, {})", c, p));
        }
        out.push_str("; root: ");
        out.push_str(&self.root.to_string());
        out.push_str(" }");
        out
    }
}

impl fmt::Display for PointedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text("g"))
    }
}

/// An unpointed edge structure, the result of the largest-collapsible-
/// subgraph computation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct GraphPart {
    pub nodes: BTreeSet<NodeId>,
    pub edges: BTreeSet<(NodeId, NodeId)>,
}

/// Parse `graph NAME { nodes: ...; edges: ...; root: ... }`.  Several graphs
/// may appear in one file.
pub fn parse_graphs(text: &str) -> Result<Vec<(String, PointedGraph)>, GraphError> {
    let toks = lex(text).map_err(|e| GraphError::Lang(Box::new(e)))?;
    let mut p = NodeParser::new(&toks);
    let mut out = Vec::new();
    while p.peek().is_some() {
        match p.peek() {
            Some(Tok::Ident(s)) if s == "graph" => p.pos += 1,
            _ => return Err(p.err("expected `graph`")),
        }
        let name = match p.peek().cloned() {
            Some(Tok::Ident(s)) if s != "nodes" => {
                p.pos += 1;
                s
            }
            Some(Tok::LBrace) => format!("g{}", out.len() + 1),
            _ => return Err(p.err("expected a graph name or `{`")),
        };
        p.eat(&Tok::LBrace)?;
        expect_kw(&mut p, "nodes")?;
        p.eat(&Tok::Colon)?;
        let mut nodes = BTreeSet::new();
        while p.peek() != Some(&Tok::Semi) {
            nodes.insert(p.node_id()?);
            if p.peek() == Some(&Tok::Comma) {
                p.pos += 1;
            }
        }
        p.eat(&Tok::Semi)?;
        expect_kw(&mut p, "edges")?;
        p.eat(&Tok::Colon)?;
        let mut edges = BTreeSet::new();
        while p.peek() != Some(&Tok::Semi) {
            p.eat(&Tok::LParen)?;
            let c = p.node_id()?;
            p.eat(&Tok::Comma)?;
            let q = p.node_id()?;
            p.eat(&Tok::RParen)?;
            edges.insert((c, q));
            if p.peek() == Some(&Tok::Comma) {
                p.pos += 1;
            }
        }
        p.eat(&Tok::Semi)?;
        expect_kw(&mut p, "root")?;
        p.eat(&Tok::Colon)?;
        let root = p.node_id()?;
        p.eat(&Tok::RBrace)?;
        out.push((name, PointedGraph::new(nodes, edges, root)?));
    }
    if out.is_empty() {
        return Err(GraphError::Parse {
            line: 1,
            col: 1,
            msg: "no graph found".into(),
        });
    }
    Ok(out)
}

fn expect_kw(p: &mut NodeParser<'_>, kw: &str) -> Result<(), GraphError> {
    match p.peek() {
        Some(Tok::Ident(s)) if s == kw => {
            p.pos += 1;
            Ok(())
        }
        _ => Err(p.err(format!("expected `{}`", kw))),
    }
}

/// Parse exactly one graph.
pub fn parse_graph(text: &str) -> Result<PointedGraph, GraphError> {
    let graphs = parse_graphs(text)?;
    Ok(graphs.into_iter().next().expect("nonempty").1)
}
