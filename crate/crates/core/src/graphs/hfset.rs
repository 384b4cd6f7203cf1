//! Hereditarily finite sets: the independent oracle for reification and
//! membership.  Extensional equality is structural equality.

use std::collections::BTreeSet;
use std::fmt;

use super::node::NodeId;
use super::GraphError;
use crate::lang::parse::{lex, Tok};

#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HfSet(pub BTreeSet<HfSet>);

impl HfSet {
    pub fn empty() -> HfSet {
        HfSet(BTreeSet::new())
    }

    pub fn singleton(x: HfSet) -> HfSet {
        HfSet(BTreeSet::from([x]))
    }

    pub fn from_members(members: impl IntoIterator<Item = HfSet>) -> HfSet {
        HfSet(members.into_iter().collect())
    }

    pub fn members(&self) -> impl Iterator<Item = &HfSet> {
        self.0.iter()
    }

    pub fn contains(&self, x: &HfSet) -> bool {
        self.0.contains(x)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// 0 for the empty set, otherwise 1 + max member rank.
    pub fn rank(&self) -> u32 {
        self.0.iter().map(|m| m.rank() + 1).max().unwrap_or(0)
    }

    /// The von Neumann numeral n.
    pub fn numeral(n: u64) -> HfSet {
        let mut cur = HfSet::empty();
        for _ in 0..n {
            let mut next = cur.0.clone();
            next.insert(cur.clone());
            cur = HfSet(next);
        }
        cur
    }

    /// Encode as a set-coded node id.
    pub fn to_node(&self) -> NodeId {
        NodeId::Set(self.0.iter().map(|m| m.to_node()).collect())
    }

    /// All members of the transitive closure, this set excluded.
    pub fn transitive_members(&self) -> BTreeSet<HfSet> {
        let mut out = BTreeSet::new();
        fn walk(s: &HfSet, out: &mut BTreeSet<HfSet>) {
            for m in s.members() {
                if out.insert(m.clone()) {
                    walk(m, out);
                }
            }
        }
        walk(self, &mut out);
        out
    }
}

impl fmt::Display for HfSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, m) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", m)?;
        }
        f.write_str("}")
    }
}

/// The level `V_k` of the cumulative hierarchy; `V_{k+1}` is the powerset
/// of `V_k`.  All sets of rank <= r form `V_{r+1}`.
pub fn v_level(k: u32) -> Vec<HfSet> {
    let mut level: Vec<HfSet> = vec![];
    for _ in 0..k {
        let n = level.len();
        assert!(n < 30, "hierarchy level too large to enumerate");
        let mut next = Vec::with_capacity(1usize << n);
        for mask in 0u32..(1u32 << n) {
            let members = level
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, s)| s.clone());
            next.push(HfSet::from_members(members));
        }
        level = next;
    }
    if k == 0 {
        vec![]
    } else {
        level
    }
}

/// All hereditarily finite sets of rank <= r.
pub fn all_of_rank_le(r: u32) -> Vec<HfSet> {
    v_level(r + 1)
}

struct HfParser<'a> {
    toks: &'a [crate::lang::parse::Sp],
    pos: usize,
}

impl<'a> HfParser<'a> {
    fn err(&self, msg: &str) -> GraphError {
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

    fn set(&mut self) -> Result<HfSet, GraphError> {
        match self.toks.get(self.pos).map(|s| &s.tok) {
            Some(Tok::LBrace) => {
                self.pos += 1;
                let mut members = BTreeSet::new();
                if self.toks.get(self.pos).map(|s| &s.tok) == Some(&Tok::RBrace) {
                    self.pos += 1;
                    return Ok(HfSet(members));
                }
                loop {
                    members.insert(self.set()?);
                    match self.toks.get(self.pos).map(|s| &s.tok) {
                        Some(Tok::Comma) => self.pos += 1,
                        Some(Tok::RBrace) => {
                            self.pos += 1;
                            break;
                        }
                        _ => return Err(self.err("expected `,` or `}` in set literal")),
                    }
                }
                Ok(HfSet(members))
            }
            _ => Err(self.err("expected `{` to start a set literal")),
        }
    }
}

/// Parse a hereditarily-finite-set literal such as `{{},{{}}}`.
pub fn parse_hf(text: &str) -> Result<HfSet, GraphError> {
    let toks = lex(text).map_err(|e| GraphError::Lang(Box::new(e)))?;
    let mut p = HfParser { toks: &toks, pos: 0 };
    let s = p.set()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input after set literal"));
    }
    Ok(s)
}
