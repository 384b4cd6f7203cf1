//! The three syntactic translations between the object theories:
//! dagger (set theory into the graph theory), star (graph theory into the
//! skolemized set theory), circle (skolemized set theory into the theory
//! with classes).

pub mod circle;
pub mod dagger;
pub mod expand;
pub mod star;
pub mod validate;

pub use circle::{circle_formula, circle_formula_traced, circ_in, circ_mem};
pub use dagger::dagger;
pub use expand::{expand_formula, expand_term};
pub use star::{relativization_predicate, star_formula, star_formula_traced, star_term, star_term_traced};
pub use validate::{check_zclass, check_zst};

use std::collections::BTreeSet;

use thiserror::Error;

use crate::lang::ast::{Formula, FunSym, PredSym, Sort, Term, Var};

#[derive(Debug, Error)]
pub enum TranslateError {
    #[error("not a Zst formula: {0}")]
    NotZst(String),
    #[error("not a Zclass formula: {0}")]
    NotZclass(String),
    #[error("{0}")]
    Unsupported(String),
    #[error(transparent)]
    Lang(Box<crate::lang::LangError>),
}

/// Deterministic fresh-variable supply seeded with every name already in use.
pub(crate) struct Fresh {
    taken: BTreeSet<String>,
}

impl Fresh {
    pub fn new() -> Fresh {
        Fresh { taken: BTreeSet::new() }
    }

    pub fn seed_formula(&mut self, f: &Formula) {
        collect_names_formula(f, &mut self.taken);
    }

    pub fn seed_term(&mut self, t: &Term) {
        collect_names_term(t, &mut self.taken);
    }

    pub fn var(&mut self, base: &str, sort: Sort) -> Var {
        let name = crate::lang::subst::fresh_name(base, &self.taken);
        self.taken.insert(name.clone());
        Var::new(name, sort)
    }
}

/// Every variable name occurring in a term (bound or free).
pub(crate) fn collect_names_term(t: &Term, out: &mut BTreeSet<String>) {
    match t {
        Term::Var(v) => {
            out.insert(v.name.clone());
        }
        Term::App(_, args) => args.iter().for_each(|a| collect_names_term(a, out)),
        Term::Compr(c) => {
            out.insert(c.bound.name.clone());
            c.params.iter().for_each(|p| {
                out.insert(p.name.clone());
            });
            collect_names_formula(&c.pred, out);
            c.args.iter().for_each(|a| collect_names_term(a, out));
            collect_names_term(&c.source, out);
        }
        Term::NodeClass(c) => {
            out.insert(c.bound.name.clone());
            c.params.iter().for_each(|p| {
                out.insert(p.name.clone());
            });
            collect_names_formula(&c.pred, out);
            c.args.iter().for_each(|a| collect_names_term(a, out));
        }
        Term::NodeRel(c) => {
            out.insert(c.bound.0.name.clone());
            out.insert(c.bound.1.name.clone());
            c.params.iter().for_each(|p| {
                out.insert(p.name.clone());
            });
            collect_names_formula(&c.pred, out);
            c.args.iter().for_each(|a| collect_names_term(a, out));
        }
        Term::SetCompr(c) => {
            out.insert(c.bound.name.clone());
            collect_names_term(&c.source, out);
            collect_names_formula(&c.pred, out);
        }
        Term::ClassCompr(c) => {
            out.insert(c.bound.name.clone());
            collect_names_formula(&c.pred, out);
        }
    }
}

pub(crate) fn collect_names_formula(f: &Formula, out: &mut BTreeSet<String>) {
    match f {
        Formula::Atom(_, args) => args.iter().for_each(|a| collect_names_term(a, out)),
        Formula::True | Formula::False => {}
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
            collect_names_formula(a, out);
            collect_names_formula(b, out);
        }
        Formula::Forall(v, b) | Formula::Exists(v, b) => {
            out.insert(v.name.clone());
            collect_names_formula(b, out);
        }
        Formula::Meta(m) => m.subst.iter().for_each(|(_, t)| collect_names_term(t, out)),
    }
}

// small constructors for the set-theory languages
pub(crate) fn tv(v: &Var) -> Term {
    Term::Var(v.clone())
}

pub(crate) fn app1(f: FunSym, a: Term) -> Term {
    Term::App(f, vec![a])
}

pub(crate) fn app2(f: FunSym, a: Term, b: Term) -> Term {
    Term::App(f, vec![a, b])
}

pub(crate) fn opair(a: Term, b: Term) -> Term {
    app2(FunSym::OPair, a, b)
}

pub(crate) fn proj1(a: Term) -> Term {
    app1(FunSym::Proj1, a)
}

pub(crate) fn proj2(a: Term) -> Term {
    app1(FunSym::Proj2, a)
}

pub(crate) fn sing(a: Term) -> Term {
    app1(FunSym::Sing, a)
}

pub(crate) fn cup(a: Term, b: Term) -> Term {
    app2(FunSym::Cup, a, b)
}

pub(crate) fn prod(a: Term, b: Term) -> Term {
    app2(FunSym::Prod, a, b)
}

pub(crate) fn car(a: Term) -> Term {
    app1(FunSym::Car, a)
}

pub(crate) fn zero_set() -> Term {
    Term::constant(FunSym::ZeroSet)
}

pub(crate) fn one_set() -> Term {
    Term::constant(FunSym::OneSet)
}

pub(crate) fn nat_set() -> Term {
    Term::constant(FunSym::NatSet)
}

pub(crate) fn eq(a: Term, b: Term) -> Formula {
    Formula::Atom(PredSym::Eq, vec![a, b])
}

pub(crate) fn inn(a: Term, b: Term) -> Formula {
    Formula::Atom(PredSym::In, vec![a, b])
}

pub(crate) fn memf(a: Term, b: Term) -> Formula {
    Formula::Atom(PredSym::Mem, vec![a, b])
}

pub(crate) fn set_compr(bound: Var, source: Term, pred: Formula) -> Term {
    Term::SetCompr(Box::new(crate::lang::ast::SetComprTerm { bound, source, pred }))
}

pub(crate) fn class_compr(bound: Var, pred: Formula) -> Term {
    Term::ClassCompr(Box::new(crate::lang::ast::ClassComprTerm { bound, pred }))
}
