//! Translation of the skolemized set theory back into the theory with
//! classes: each term former is eliminated through the membership
//! transformation `z in° t`.

use crate::lang::ast::{Formula, FunSym, PredSym, Sort, Term, Var};
use crate::lang::subst::{subst_formula, Binding};

use super::expand::{expand_formula, expand_term};
use super::{inn, memf, tv, Fresh, TranslateError};

struct Circle<'t> {
    fresh: Fresh,
    trace: Option<&'t mut Vec<String>>,
}

impl<'t> Circle<'t> {
    fn clause(&mut self, name: &str) {
        if let Some(tr) = self.trace.as_mut() {
            tr.push(name.to_string());
        }
    }

    /// `z in° t` for a variable `z` and a core term `t`.
    fn inc(&mut self, z: &Var, t: &Term) -> Result<Formula, TranslateError> {
        match t {
            Term::Var(x) => {
                self.clause("in:var");
                Ok(inn(tv(z), tv(x)))
            }
            Term::App(FunSym::Union, args) => {
                self.clause("in:union");
                let y = self.fresh.var("y", Sort::Set);
                let inner = self.inc(&y, &args[0])?;
                Ok(Formula::exists(
                    y.clone(),
                    Formula::and(inn(tv(z), tv(&y)), inner),
                ))
            }
            Term::App(FunSym::Pair, args) => {
                self.clause("in:pair");
                let l = self.eq_circ(&tv(z), &args[0])?;
                let r = self.eq_circ(&tv(z), &args[1])?;
                Ok(Formula::or(l, r))
            }
            Term::App(FunSym::Pow, args) => {
                self.clause("in:pow");
                let y = self.fresh.var("y", Sort::Set);
                let inner = self.inc(&y, &args[0])?;
                Ok(Formula::forall(
                    y.clone(),
                    Formula::imp(inn(tv(&y), tv(z)), inner),
                ))
            }
            Term::SetCompr(c) => {
                self.clause("in:compr");
                let src = self.inc(z, &c.source)?;
                let pred = self.formula(&c.pred)?;
                let mut b = Binding::new();
                b.insert(Var::new(c.bound.name.clone(), Sort::Set), tv(z));
                Ok(Formula::and(src, subst_formula(&pred, &b)))
            }
            Term::App(FunSym::NatSet, _) => {
                self.clause("in:nat");
                Ok(Formula::Atom(PredSym::Nat, vec![tv(z)]))
            }
            Term::App(FunSym::Tc, args) => {
                self.clause("in:tc");
                let x = self.fresh.var("x", Sort::Set);
                let y1 = self.fresh.var("y1", Sort::Set);
                let y2 = self.fresh.var("y2", Sort::Set);
                let y = self.fresh.var("y", Sort::Set);
                let closed = Formula::forall(
                    y1.clone(),
                    Formula::forall(
                        y2.clone(),
                        Formula::imp(
                            Formula::and(inn(tv(&y1), tv(&y2)), inn(tv(&y2), tv(&x))),
                            inn(tv(&y1), tv(&x)),
                        ),
                    ),
                );
                let incl_t = self.inc(&y, &args[0])?;
                let includes = Formula::forall(
                    y.clone(),
                    Formula::imp(incl_t, inn(tv(&y), tv(&x))),
                );
                Ok(Formula::forall(
                    x.clone(),
                    Formula::imp(Formula::and(closed, includes), inn(tv(z), tv(&x))),
                ))
            }
            other => Err(TranslateError::Unsupported(format!(
                "`{}` is not a core skolemized term",
                other
            ))),
        }
    }

    /// `mem°(z, T)` for a class term.
    fn memc(&mut self, z: &Var, t: &Term) -> Result<Formula, TranslateError> {
        match t {
            Term::Var(x) if x.sort == Sort::Class => {
                self.clause("mem:var");
                Ok(memf(tv(z), tv(x)))
            }
            Term::ClassCompr(c) => {
                self.clause("mem:compr");
                let pred = self.formula(&c.pred)?;
                let mut b = Binding::new();
                b.insert(Var::new(c.bound.name.clone(), Sort::Set), tv(z));
                Ok(subst_formula(&pred, &b))
            }
            other => Err(TranslateError::Unsupported(format!(
                "`{}` is not a class term",
                other
            ))),
        }
    }

    /// `(t = u)° = forall z (z in° t <-> z in° u)`.
    fn eq_circ(&mut self, t: &Term, u: &Term) -> Result<Formula, TranslateError> {
        self.clause("formula:eq");
        let z = self.fresh.var("z", Sort::Set);
        let l = self.inc(&z, t)?;
        let r = self.inc(&z, u)?;
        Ok(Formula::forall(z.clone(), Formula::iff(l, r)))
    }

    fn formula(&mut self, f: &Formula) -> Result<Formula, TranslateError> {
        match f {
            Formula::Atom(PredSym::Eq, args) => self.eq_circ(&args[0], &args[1]),
            Formula::Atom(PredSym::In, args) => {
                self.clause("formula:in");
                let x = self.fresh.var("x", Sort::Set);
                let l = self.eq_circ(&tv(&x), &args[0])?;
                let r = self.inc(&x, &args[1])?;
                Ok(Formula::exists(x.clone(), Formula::and(l, r)))
            }
            Formula::Atom(PredSym::Mem, args) => {
                self.clause("formula:mem");
                let x = self.fresh.var("x", Sort::Set);
                let l = self.eq_circ(&tv(&x), &args[0])?;
                let r = self.memc(&x, &args[1])?;
                Ok(Formula::exists(x.clone(), Formula::and(l, r)))
            }
            Formula::Atom(p, _) => Err(TranslateError::Unsupported(format!(
                "atom `{}` survived expansion",
                p.token()
            ))),
            Formula::True => {
                self.clause("formula:top");
                Ok(Formula::True)
            }
            Formula::False => {
                self.clause("formula:bot");
                Ok(Formula::False)
            }
            Formula::And(a, b) => {
                self.clause("formula:and");
                Ok(Formula::and(self.formula(a)?, self.formula(b)?))
            }
            Formula::Or(a, b) => {
                self.clause("formula:or");
                Ok(Formula::or(self.formula(a)?, self.formula(b)?))
            }
            Formula::Imp(a, b) => {
                self.clause("formula:imp");
                Ok(Formula::imp(self.formula(a)?, self.formula(b)?))
            }
            Formula::Forall(v, body) => {
                self.clause("formula:forall");
                Ok(Formula::forall(v.clone(), self.formula(body)?))
            }
            Formula::Exists(v, body) => {
                self.clause("formula:exists");
                Ok(Formula::exists(v.clone(), self.formula(body)?))
            }
            Formula::Meta(_) => Err(TranslateError::Unsupported(
                "metavariables have no translation".into(),
            )),
        }
    }
}

fn circle_of(f: &Formula, trace: Option<&mut Vec<String>>) -> Result<Formula, TranslateError> {
    let expanded = expand_formula(f)?;
    let mut fresh = Fresh::new();
    fresh.seed_formula(&expanded);
    Circle { fresh, trace }.formula(&expanded)
}

/// Translate a skolemized formula into the theory with classes.  Defined
/// notations are expanded to the core grammar first.
pub fn circle_formula(f: &Formula) -> Result<Formula, TranslateError> {
    circle_of(f, None)
}

pub fn circle_formula_traced(
    f: &Formula,
    trace: &mut Vec<String>,
) -> Result<Formula, TranslateError> {
    circle_of(f, Some(trace))
}

/// The membership transformation `z in° t` on a core term (abbreviations
/// are expanded first).
pub fn circ_in(z: &Var, t: &Term) -> Result<Formula, TranslateError> {
    let t = expand_term(t)?;
    let mut fresh = Fresh::new();
    fresh.seed_term(&t);
    fresh.taken.insert(z.name.clone());
    Circle { fresh, trace: None }.inc(z, &t)
}

/// The class-membership transformation `mem°(z, T)`.
pub fn circ_mem(z: &Var, t: &Term) -> Result<Formula, TranslateError> {
    let t = expand_term(t)?;
    let mut fresh = Fresh::new();
    fresh.seed_term(&t);
    fresh.taken.insert(z.name.clone());
    Circle { fresh, trace: None }.memc(z, &t)
}
