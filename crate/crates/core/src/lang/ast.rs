//! Abstract syntax shared by the four object languages.
//!
//! One `Term`/`Formula` pair covers Zst, Zclass, Zskol, Zermod and the two
//! demo languages; the per-language signature decides which symbols and
//! sorts are admissible (see [`crate::lang::sig`]).

use std::fmt;

/// Sorts of all object languages.  `G`/`N`/`C`/`R` belong to the graph
/// language, `Set`/`Class` to the set-theory side.  `Unknown` is a
/// parser-internal placeholder eliminated by sort inference; it is rejected
/// by `check_sorts`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sort {
    G,
    N,
    C,
    R,
    Set,
    Class,
    Unknown,
}

impl Sort {
    pub fn name(self) -> &'static str {
        match self {
            Sort::G => "G",
            Sort::N => "N",
            Sort::C => "C",
            Sort::R => "R",
            Sort::Set => "Set",
            Sort::Class => "Class",
            Sort::Unknown => "?",
        }
    }

    pub fn from_name(s: &str) -> Option<Sort> {
        Some(match s {
            "G" => Sort::G,
            "N" => Sort::N,
            "C" => Sort::C,
            "R" => Sort::R,
            "Set" => Sort::Set,
            "Class" => Sort::Class,
            _ => return None,
        })
    }
}

impl fmt::Display for Sort {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A sorted variable.  Bound occurrences take the sort of their binder;
/// free occurrences carry their sort inline.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var {
    pub name: String,
    pub sort: Sort,
}

impl Var {
    pub fn new(name: impl Into<String>, sort: Sort) -> Self {
        Var { name: name.into(), sort }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.name, self.sort)
    }
}

/// Fixed-rank function symbols of all languages.  Binder families are not
/// here; they are dedicated `Term` variants.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FunSym {
    // graph language
    Root,
    Slash,
    O,
    I,
    IInv,
    J,
    JInv,
    Zero,
    Succ,
    PredN,
    Rho,
    RhoInv,
    Union,
    Pair,
    Pow,
    Omega,
    Tc,
    // arithmetic demo
    Plus,
    Times,
    // set-theory core
    NatSet,
    // set-theory abbreviations (expandable, see translate::expand)
    EmptySet,
    Cup,
    Sing,
    OPair,
    Proj1,
    Proj2,
    Prod,
    ZeroSet,
    OneSet,
    FnApp,
    Restrict,
    Car,
    Clos,
    Lcs,
    CastR,
    Dom,
    Cod,
}

impl FunSym {
    /// Surface keyword used by the parser and printer.
    pub fn token(self) -> &'static str {
        match self {
            FunSym::Root => "root",
            FunSym::Slash => "/",
            FunSym::O => "o",
            FunSym::I => "i",
            FunSym::IInv => "i'",
            FunSym::J => "j",
            FunSym::JInv => "j'",
            FunSym::Zero => "0",
            FunSym::Succ => "S",
            FunSym::PredN => "Pred",
            FunSym::Rho => "rho",
            FunSym::RhoInv => "rho'",
            FunSym::Union => "Union",
            FunSym::Pair => "Pair",
            FunSym::Pow => "Pow",
            FunSym::Omega => "Omega",
            FunSym::Tc => "TC",
            FunSym::Plus => "+",
            FunSym::Times => "*",
            FunSym::NatSet => "NN",
            FunSym::EmptySet => "empty",
            FunSym::Cup => "cup",
            FunSym::Sing => "sing",
            FunSym::OPair => "opair",
            FunSym::Proj1 => "p1",
            FunSym::Proj2 => "p2",
            FunSym::Prod => "prod",
            FunSym::ZeroSet => "0",
            FunSym::OneSet => "1",
            FunSym::FnApp => "app",
            FunSym::Restrict => "restrict",
            FunSym::Car => "car",
            FunSym::Clos => "clos",
            FunSym::Lcs => "lcs",
            FunSym::CastR => "castR",
            FunSym::Dom => "dom",
            FunSym::Cod => "cod",
        }
    }
}

/// Predicate symbols.  The `*P` entries on the set-theory side are defined
/// notations with an expansion (see `translate::expand`), kept as atoms so
/// translations print the way the definitions are stated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PredSym {
    // graph language
    Eta,
    Eq,
    Mem,
    Rel,
    ImgI,
    ImgJ,
    Null,
    Nat,
    Lt,
    Approx,
    In,
    // set-theory macros
    Rgraph,
    GraphP,
    PgraphP,
    FunctionP,
    CollapseP,
    ISegP,
    ReifP,
    IndP,
    SuccP,
    EmptyP,
}

impl PredSym {
    pub fn token(self) -> &'static str {
        match self {
            PredSym::Eta => "eta",
            PredSym::Eq => "=",
            PredSym::Mem => "mem",
            PredSym::Rel => "rel",
            PredSym::ImgI => "I",
            PredSym::ImgJ => "J",
            PredSym::Null => "Null",
            PredSym::Nat => "Nat",
            PredSym::Lt => "<",
            PredSym::Approx => "~~",
            PredSym::In => "in",
            PredSym::Rgraph => "Rgraph",
            PredSym::GraphP => "Graph",
            PredSym::PgraphP => "Pgraph",
            PredSym::FunctionP => "Function",
            PredSym::CollapseP => "Collapse",
            PredSym::ISegP => "ISeg",
            PredSym::ReifP => "Reif",
            PredSym::IndP => "Ind",
            PredSym::SuccP => "Succ",
            PredSym::EmptyP => "Empty",
        }
    }
}

/// Comprehension-graph family `f`: bound variable of sort `G`, parameter
/// variables of sort `G`, an indexing formula over `{bound} ∪ params`, the
/// parameter terms and the source graph term.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ComprTerm {
    pub bound: Var,
    pub params: Vec<Var>,
    pub pred: Formula,
    pub args: Vec<Term>,
    pub source: Term,
}

/// Node-class family `g`: rank `N^n -> C`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeClassTerm {
    pub bound: Var,
    pub params: Vec<Var>,
    pub pred: Formula,
    pub args: Vec<Term>,
}

/// Node-relation family `g'`: rank `N^n -> R`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeRelTerm {
    pub bound: (Var, Var),
    pub params: Vec<Var>,
    pub pred: Formula,
    pub args: Vec<Term>,
}

/// Set comprehension `{ x in t | P }` (Zskol / naive language).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SetComprTerm {
    pub bound: Var,
    pub source: Term,
    pub pred: Formula,
}

/// Class comprehension `[ x | P ]` (Zskol).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClassComprTerm {
    pub bound: Var,
    pub pred: Formula,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Var(Var),
    App(FunSym, Vec<Term>),
    Compr(Box<ComprTerm>),
    NodeClass(Box<NodeClassTerm>),
    NodeRel(Box<NodeRelTerm>),
    SetCompr(Box<SetComprTerm>),
    ClassCompr(Box<ClassComprTerm>),
}

impl Term {
    pub fn var(name: impl Into<String>, sort: Sort) -> Term {
        Term::Var(Var::new(name, sort))
    }

    pub fn app(sym: FunSym, args: Vec<Term>) -> Term {
        Term::App(sym, args)
    }

    pub fn constant(sym: FunSym) -> Term {
        Term::App(sym, vec![])
    }

    /// Numeral `S^n(0)` at sort `N`.
    pub fn numeral(n: u64) -> Term {
        let mut t = Term::constant(FunSym::Zero);
        for _ in 0..n {
            t = Term::App(FunSym::Succ, vec![t]);
        }
        t
    }

    /// Inverse of [`Term::numeral`]: `Some(n)` iff the term is `S^n(0)`.
    pub fn as_numeral(&self) -> Option<u64> {
        let mut n = 0u64;
        let mut t = self;
        loop {
            match t {
                Term::App(FunSym::Succ, args) if args.len() == 1 => {
                    n += 1;
                    t = &args[0];
                }
                Term::App(FunSym::Zero, args) if args.is_empty() => return Some(n),
                _ => return None,
            }
        }
    }
}

/// A formula metavariable with an explicit pending substitution, e.g.
/// `?P[x <- a / y]`.  Only legal inside rewrite-rule templates.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MetaAtom {
    pub name: String,
    pub subst: Vec<(Var, Term)>,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Atom(PredSym, Vec<Term>),
    True,
    False,
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Imp(Box<Formula>, Box<Formula>),
    Forall(Var, Box<Formula>),
    Exists(Var, Box<Formula>),
    Meta(MetaAtom),
}

impl Formula {
    pub fn atom(p: PredSym, args: Vec<Term>) -> Formula {
        Formula::Atom(p, args)
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn imp(a: Formula, b: Formula) -> Formula {
        Formula::Imp(Box::new(a), Box::new(b))
    }

    pub fn neg(a: Formula) -> Formula {
        Formula::imp(a, Formula::False)
    }

    /// `(a -> b) /\ (b -> a)`; the languages have no primitive biconditional.
    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::and(Formula::imp(a.clone(), b.clone()), Formula::imp(b, a))
    }

    pub fn forall(v: Var, body: Formula) -> Formula {
        Formula::Forall(v, Box::new(body))
    }

    pub fn exists(v: Var, body: Formula) -> Formula {
        Formula::Exists(v, Box::new(body))
    }

    /// Left-associated conjunction of a non-empty list.
    pub fn and_all(mut parts: Vec<Formula>) -> Formula {
        assert!(!parts.is_empty());
        let mut acc = parts.remove(0);
        for p in parts {
            acc = Formula::and(acc, p);
        }
        acc
    }

    /// Left-associated disjunction of a non-empty list.
    pub fn or_all(mut parts: Vec<Formula>) -> Formula {
        assert!(!parts.is_empty());
        let mut acc = parts.remove(0);
        for p in parts {
            acc = Formula::or(acc, p);
        }
        acc
    }

    pub fn is_atomic(&self) -> bool {
        matches!(self, Formula::Atom(_, _))
    }
}

/// Result of parsing when the syntactic category is not known in advance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Parsed {
    Term(Term),
    Formula(Formula),
}
