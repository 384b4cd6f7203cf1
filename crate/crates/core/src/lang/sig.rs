//! Per-language signatures: which sorts, symbols and binder families are
//! admissible, and at which ranks.

use super::ast::{FunSym, PredSym, Sort};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Lang {
    Zst,
    Zclass,
    Zskol,
    Zermod,
    Arith,
    Naive,
}

impl Lang {
    pub fn name(self) -> &'static str {
        match self {
            Lang::Zst => "zst",
            Lang::Zclass => "zclass",
            Lang::Zskol => "zskol",
            Lang::Zermod => "zermod",
            Lang::Arith => "arith",
            Lang::Naive => "naive",
        }
    }

    pub fn from_name(s: &str) -> Option<Lang> {
        Some(match s {
            "zst" => Lang::Zst,
            "zclass" => Lang::Zclass,
            "zskol" => Lang::Zskol,
            "zermod" => Lang::Zermod,
            "arith" => Lang::Arith,
            "naive" => Lang::Naive,
            _ => return None,
        })
    }

    /// Sort given to free variables that no position constrains.
    pub fn default_sort(self) -> Sort {
        match self {
            Lang::Zermod => Sort::G,
            Lang::Arith => Sort::N,
            _ => Sort::Set,
        }
    }
}

/// A signature: the sort and rank tables of one language.
#[derive(Debug, Clone, Copy)]
pub struct Signature {
    pub lang: Lang,
}

impl Signature {
    pub fn for_lang(lang: Lang) -> Signature {
        Signature { lang }
    }

    pub fn sorts(&self) -> &'static [Sort] {
        match self.lang {
            Lang::Zst => &[Sort::Set],
            Lang::Zclass => &[Sort::Set, Sort::Class],
            Lang::Zskol => &[Sort::Set, Sort::Class],
            Lang::Zermod => &[Sort::G, Sort::N, Sort::C, Sort::R],
            Lang::Arith => &[Sort::N],
            Lang::Naive => &[Sort::Set],
        }
    }

    pub fn has_sort(&self, s: Sort) -> bool {
        self.sorts().contains(&s)
    }

    /// Rank of a function symbol: argument sorts and result sort.
    pub fn fun_rank(&self, f: FunSym) -> Option<(Vec<Sort>, Sort)> {
        use FunSym::*;
        use Sort::*;
        let graph = matches!(self.lang, Lang::Zermod);
        let skol = matches!(self.lang, Lang::Zskol);
        let arith = matches!(self.lang, Lang::Arith);
        let r = match f {
            Root if graph => (vec![G], N),
            Slash if graph => (vec![G, N], G),
            O if graph => (vec![], N),
            I | IInv | J | JInv if graph => (vec![N], N),
            Zero if graph || arith => (vec![], N),
            Succ | PredN if graph => (vec![N], N),
            Succ if arith => (vec![N], N),
            Rho if graph => (vec![G], N),
            RhoInv if graph => (vec![N], G),
            Union | Pow | Tc if graph => (vec![G], G),
            Pair if graph => (vec![G, G], G),
            Omega if graph => (vec![], G),
            Plus | Times if arith => (vec![N, N], N),
            Union | Pow | Tc if skol => (vec![Set], Set),
            Pair if skol => (vec![Set, Set], Set),
            NatSet | EmptySet | ZeroSet | OneSet if skol => (vec![], Set),
            Cup | OPair | Prod | FnApp | Restrict if skol => (vec![Set, Set], Set),
            Sing | Proj1 | Proj2 | Car | Clos | Lcs | CastR | Dom | Cod if skol => {
                (vec![Set], Set)
            }
            _ => return None,
        };
        Some(r)
    }

    /// Rank of a predicate symbol.  `Eq` is handled separately (it is
    /// admitted at any single sort of the language, see `eq_ok`).
    pub fn pred_rank(&self, p: PredSym) -> Option<Vec<Sort>> {
        use PredSym::*;
        use Sort::*;
        let r = match (self.lang, p) {
            (Lang::Zermod, Eta) => vec![G, N, N],
            (Lang::Zermod, Mem) => vec![N, C],
            (Lang::Zermod, Rel) => vec![N, N, R],
            (Lang::Zermod, ImgI | ImgJ | Null | Nat) => vec![N],
            (Lang::Zermod, Lt) => vec![N, N],
            (Lang::Zermod, Approx | In) => vec![G, G],
            (Lang::Zst | Lang::Naive, In) => vec![Set, Set],
            (Lang::Zclass | Lang::Zskol, In) => vec![Set, Set],
            (Lang::Zclass | Lang::Zskol, Mem) => vec![Set, Class],
            (Lang::Zskol, Approx) => vec![Set, Set],
            (Lang::Zclass | Lang::Zskol, Nat | IndP | EmptyP) => vec![Set],
            (Lang::Zclass | Lang::Zskol, SuccP) => vec![Set, Set],
            (Lang::Zskol, Rgraph | GraphP | PgraphP | FunctionP) => vec![Set],
            (Lang::Zskol, CollapseP | ISegP | ReifP) => vec![Set, Set],
            _ => return None,
        };
        Some(r)
    }

    /// `=` is admitted at every sort of the language over which terms are
    /// formed (both arguments at the same sort).
    pub fn eq_ok(&self, s: Sort) -> bool {
        match self.lang {
            Lang::Zermod => matches!(s, Sort::G | Sort::N),
            Lang::Arith => s == Sort::N,
            _ => s == Sort::Set,
        }
    }

    /// Whether the graph binder families `f`/`g`/`g'` exist.
    pub fn has_graph_families(&self) -> bool {
        self.lang == Lang::Zermod
    }

    /// Whether `{ x in t | P }` set comprehension exists.
    pub fn has_set_compr(&self) -> bool {
        matches!(self.lang, Lang::Zskol | Lang::Naive)
    }

    /// Whether `[ x | P ]` class comprehension exists.
    pub fn has_class_compr(&self) -> bool {
        self.lang == Lang::Zskol
    }
}
