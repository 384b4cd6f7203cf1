//! Node identifiers.  Construction operators relocate nodes with the `i`/`j`
//! tags and a fresh root token `o`; powerset nodes are coded by subsets.

use std::collections::BTreeSet;
use std::fmt;

use super::GraphError;
use crate::lang::parse::{lex, Sp, Tok};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NodeId {
    Num(u64),
    Name(String),
    /// the fresh root token `o`
    Root,
    /// `i`-relocated node
    I(Box<NodeId>),
    /// `j`-relocated node
    J(Box<NodeId>),
    /// subset-coded node (powerset construction); doubles as the encoding
    /// of a hereditarily finite set
    Set(BTreeSet<NodeId>),
}

impl NodeId {
    pub fn num(n: u64) -> NodeId {
        NodeId::Num(n)
    }

    pub fn name(s: impl Into<String>) -> NodeId {
        NodeId::Name(s.into())
    }

    pub fn i(n: NodeId) -> NodeId {
        NodeId::I(Box::new(n))
    }

    pub fn j(n: NodeId) -> NodeId {
        NodeId::J(Box::new(n))
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NodeId::Num(n) => write!(f, "{}", n),
            NodeId::Name(s) => f.write_str(s),
            NodeId::Root => f.write_str("o"),
            NodeId::I(n) => write!(f, "i({})", n),
            NodeId::J(n) => write!(f, "j({})", n),
            NodeId::Set(s) => {
                f.write_str("{")?;
                for (k, n) in s.iter().enumerate() {
                    if k > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{}", n)?;
                }
                f.write_str("}")
            }
        }
    }
}

pub(crate) fn parse_node_id(p: &mut NodeParser<'_>) -> Result<NodeId, GraphError> {
    p.node_id()
}

pub(crate) struct NodeParser<'a> {
    pub toks: &'a [Sp],
    pub pos: usize,
}

impl<'a> NodeParser<'a> {
    pub fn new(toks: &'a [Sp]) -> Self {
        NodeParser { toks, pos: 0 }
    }

    pub fn err(&self, msg: impl Into<String>) -> GraphError {
        let (line, col) = self
            .toks
            .get(self.pos)
            .map(|s| (s.line, s.col))
            .unwrap_or((1, 1));
        GraphError::Parse {
            line,
            col,
            msg: msg.into(),
        }
    }

    pub fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    pub fn eat(&mut self, t: &Tok) -> Result<(), GraphError> {
        match self.peek() {
            Some(x) if x == t => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(self.err(format!("expected `{:?}`", t))),
        }
    }

    pub fn node_id(&mut self) -> Result<NodeId, GraphError> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(NodeId::Num(n))
            }
            Some(Tok::Ident(s)) if s == "o" => {
                self.pos += 1;
                Ok(NodeId::Root)
            }
            Some(Tok::Ident(s)) if s == "i" || s == "j" => {
                self.pos += 1;
                self.eat(&Tok::LParen)?;
                let inner = self.node_id()?;
                self.eat(&Tok::RParen)?;
                Ok(if s == "i" {
                    NodeId::i(inner)
                } else {
                    NodeId::j(inner)
                })
            }
            Some(Tok::Ident(s)) => {
                self.pos += 1;
                Ok(NodeId::Name(s))
            }
            Some(Tok::LBrace) => {
                self.pos += 1;
                let mut set = BTreeSet::new();
                if self.peek() == Some(&Tok::RBrace) {
                    self.pos += 1;
                    return Ok(NodeId::Set(set));
                }
                loop {
                    set.insert(self.node_id()?);
                    match self.peek() {
                        Some(Tok::Comma) => {
                            self.pos += 1;
                        }
                        Some(Tok::RBrace) => {
                            self.pos += 1;
                            break;
                        }
                        _ => return Err(self.err("expected `,` or `}` in set node")),
                    }
                }
                Ok(NodeId::Set(set))
            }
            _ => Err(self.err("expected a node id")),
        }
    }
}

/// Parse one node id from text (used for CLI arguments).
pub fn node_id_from_str(text: &str) -> Result<NodeId, GraphError> {
    let toks = lex(text).map_err(|e| GraphError::Lang(Box::new(e)))?;
    let mut p = NodeParser::new(&toks);
    let id = parse_node_id(&mut p)?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input after node id"));
    }
    Ok(id)
}
