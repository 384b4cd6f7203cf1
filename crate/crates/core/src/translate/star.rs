//! Translation of graph-theory syntax into the skolemized set theory:
//! pointed graphs become pairs (edge set, root), relocated nodes become
//! tagged pairs, and quantifiers are relativized by sort.

use crate::lang::ast::{Formula, FunSym, PredSym, Sort, Term, Var};
use crate::lang::subst::{subst_formula, Binding};

use super::{
    car, class_compr, cup, eq, inn, memf, nat_set, opair, one_set, proj1, proj2, prod, set_compr,
    sing, tv, zero_set, Fresh, TranslateError,
};

/// Target sort of a graph-theory sort.
fn sort_star(s: Sort) -> Result<Sort, TranslateError> {
    match s {
        Sort::G | Sort::N => Ok(Sort::Set),
        Sort::C | Sort::R => Ok(Sort::Class),
        other => Err(TranslateError::Unsupported(format!(
            "sort {} is not a graph-theory sort",
            other
        ))),
    }
}

/// The relativization predicate of a sort, over its canonical variable.
pub fn relativization_predicate(sort: Sort) -> Result<Formula, TranslateError> {
    let x = Var::new("x", Sort::Set);
    match sort {
        Sort::G => Ok(Formula::Atom(PredSym::Rgraph, vec![tv(&x)])),
        Sort::N | Sort::C => Ok(Formula::True),
        Sort::R => {
            let c = Var::new("c", Sort::Class);
            Ok(relativize_r(&c))
        }
        other => Err(TranslateError::Unsupported(format!(
            "sort {} has no relativization predicate",
            other
        ))),
    }
}

fn relativize_r(c: &Var) -> Formula {
    let x = Var::new("x", Sort::Set);
    let y = Var::new("y", Sort::Set);
    let z = Var::new("z", Sort::Set);
    Formula::forall(
        x.clone(),
        Formula::imp(
            memf(tv(&x), tv(c)),
            Formula::exists(
                y.clone(),
                Formula::exists(z.clone(), eq(tv(&x), opair(tv(&y), tv(&z)))),
            ),
        ),
    )
}

/// Relativization guard for a translated bound variable.
fn guard(sort: Sort, v: &Var) -> Result<Formula, TranslateError> {
    match sort {
        Sort::G => Ok(Formula::Atom(PredSym::Rgraph, vec![tv(v)])),
        Sort::N | Sort::C => Ok(Formula::True),
        Sort::R => Ok(relativize_r(v)),
        other => Err(TranslateError::Unsupported(format!(
            "cannot relativize sort {}",
            other
        ))),
    }
}

struct Star<'t> {
    trace: Option<&'t mut Vec<String>>,
}

impl<'t> Star<'t> {
    fn clause(&mut self, name: &str) {
        if let Some(tr) = self.trace.as_mut() {
            tr.push(name.to_string());
        }
    }

    fn var(&self, v: &Var) -> Result<Var, TranslateError> {
        Ok(Var::new(v.name.clone(), sort_star(v.sort)?))
    }

    fn term(&mut self, t: &Term) -> Result<Term, TranslateError> {
        match t {
            Term::Var(v) => {
                self.clause("term:var");
                Ok(tv(&self.var(v)?))
            }
            Term::App(f, args) => self.app(*f, args),
            Term::NodeClass(c) => {
                self.clause("term:g_family");
                let bound = self.var(&c.bound)?;
                let pred = self.formula(&c.pred)?;
                let mut binding = Binding::new();
                for (p, b) in c.params.iter().zip(&c.args) {
                    binding.insert(self.var(p)?, self.term(b)?);
                }
                Ok(class_compr(bound, subst_formula(&pred, &binding)))
            }
            Term::NodeRel(c) => {
                self.clause("term:g'_family");
                let b0 = self.var(&c.bound.0)?;
                let b1 = self.var(&c.bound.1)?;
                let pred = self.formula(&c.pred)?;
                let mut binding = Binding::new();
                for (p, b) in c.params.iter().zip(&c.args) {
                    binding.insert(self.var(p)?, self.term(b)?);
                }
                let pred = subst_formula(&pred, &binding);
                let mut fr = Fresh::new();
                fr.seed_formula(&pred);
                fr.seed_term(&tv(&b0));
                fr.seed_term(&tv(&b1));
                let z = fr.var("z", Sort::Set);
                Ok(class_compr(
                    z.clone(),
                    Formula::exists(
                        b0.clone(),
                        Formula::exists(
                            b1.clone(),
                            Formula::and(eq(tv(&z), opair(tv(&b0), tv(&b1))), pred),
                        ),
                    ),
                ))
            }
            Term::Compr(c) => {
                self.clause("term:f_family");
                let a = self.term(&c.source)?;
                let bound = self.var(&c.bound)?;
                let pred = self.formula(&c.pred)?;
                let mut binding = Binding::new();
                for (p, b) in c.params.iter().zip(&c.args) {
                    binding.insert(self.var(p)?, self.term(b)?);
                }
                let pred = subst_formula(&pred, &binding);
                let mut fr = Fresh::new();
                fr.seed_term(&a);
                fr.seed_formula(&pred);
                let cv = fr.var("c", Sort::Set);
                let y = fr.var("y", Sort::Set);
                let y1 = fr.var("y'", Sort::Set);
                // P*(x <- <p1(a*), y>): y is bound just outside
                let mut inst = Binding::new();
                inst.insert(bound, opair(proj1(a.clone()), tv(&y)));
                let inst_pred = subst_formula(&pred, &inst);
                let x_cell = self.carrier_frame(&a);
                let d1 = self.edge_copy_disjunct(&a, &cv, &y, &y1);
                let d2 = Formula::exists(
                    y.clone(),
                    Formula::and_all(vec![
                        eq(tv(&cv), opair(opair(zero_set(), tv(&y)), zero_set())),
                        inn(opair(tv(&y), proj2(a.clone())), proj1(a.clone())),
                        inst_pred,
                    ]),
                );
                Ok(opair(
                    set_compr(cv, prod(x_cell.clone(), x_cell), Formula::or(d1, d2)),
                    zero_set(),
                ))
            }
            Term::SetCompr(_) | Term::ClassCompr(_) => Err(TranslateError::Unsupported(
                "set-theory comprehension is not graph-theory syntax".into(),
            )),
        }
    }

    /// `({0} x Car(a)) u {0}`
    fn carrier_frame(&self, a: &Term) -> Term {
        cup(prod(sing(zero_set()), car(a.clone())), sing(zero_set()))
    }

    /// `exists y exists y' (c = <<0,y'>,<0,y>> /\ <y',y> in p1(a))`
    fn edge_copy_disjunct(&self, a: &Term, c: &Var, y: &Var, y1: &Var) -> Formula {
        Formula::exists(
            y.clone(),
            Formula::exists(
                y1.clone(),
                Formula::and(
                    eq(
                        tv(c),
                        opair(
                            opair(zero_set(), tv(y1)),
                            opair(zero_set(), tv(y)),
                        ),
                    ),
                    inn(opair(tv(y1), tv(y)), proj1(a.clone())),
                ),
            ),
        )
    }

    fn app(&mut self, f: FunSym, args: &[Term]) -> Result<Term, TranslateError> {
        let t = |s: &mut Self, i: usize| s.term(&args[i]);
        match f {
            FunSym::Root => {
                self.clause("term:root");
                Ok(proj2(t(self, 0)?))
            }
            FunSym::Slash => {
                self.clause("term:slash");
                let a = t(self, 0)?;
                let b = t(self, 1)?;
                Ok(opair(proj1(a), b))
            }
            FunSym::O => {
                self.clause("term:o");
                Ok(zero_set())
            }
            FunSym::Zero => {
                self.clause("term:zero");
                Ok(zero_set())
            }
            FunSym::I => {
                self.clause("term:i");
                Ok(opair(zero_set(), t(self, 0)?))
            }
            FunSym::J => {
                self.clause("term:j");
                Ok(opair(one_set(), t(self, 0)?))
            }
            FunSym::IInv | FunSym::JInv => {
                self.clause("term:inj_inv");
                Ok(proj2(t(self, 0)?))
            }
            FunSym::Succ => {
                self.clause("term:succ");
                let x = t(self, 0)?;
                Ok(cup(x.clone(), sing(x)))
            }
            FunSym::PredN => {
                self.clause("term:pred");
                Ok(Term::App(FunSym::Union, vec![t(self, 0)?]))
            }
            FunSym::Rho => {
                self.clause("term:rho");
                t(self, 0)
            }
            FunSym::RhoInv => {
                self.clause("term:rho_inv");
                Ok(Term::App(FunSym::CastR, vec![t(self, 0)?]))
            }
            FunSym::Union => {
                self.clause("term:union");
                let a = t(self, 0)?;
                let mut fr = Fresh::new();
                fr.seed_term(&a);
                let cv = fr.var("c", Sort::Set);
                let y = fr.var("y", Sort::Set);
                let y1 = fr.var("y'", Sort::Set);
                let x_cell = self.carrier_frame(&a);
                let d1 = self.edge_copy_disjunct(&a, &cv, &y, &y1);
                // exists y' exists y (c = <<0,y'>,0> /\ <y',y> in p1(a) /\ <y,p2(a)> in p1(a))
                let d2 = Formula::exists(
                    y1.clone(),
                    Formula::exists(
                        y.clone(),
                        Formula::and_all(vec![
                            eq(tv(&cv), opair(opair(zero_set(), tv(&y1)), zero_set())),
                            inn(opair(tv(&y1), tv(&y)), proj1(a.clone())),
                            inn(opair(tv(&y), proj2(a.clone())), proj1(a.clone())),
                        ]),
                    ),
                );
                Ok(opair(
                    set_compr(cv, prod(x_cell.clone(), x_cell), Formula::or(d1, d2)),
                    zero_set(),
                ))
            }
            FunSym::Pair => {
                self.clause("term:pair");
                let a = t(self, 0)?;
                let b = t(self, 1)?;
                let mut fr = Fresh::new();
                fr.seed_term(&a);
                fr.seed_term(&b);
                let cv = fr.var("c", Sort::Set);
                let y = fr.var("y", Sort::Set);
                let y1 = fr.var("y'", Sort::Set);
                let x_cell = cup(
                    cup(
                        prod(sing(zero_set()), car(a.clone())),
                        prod(sing(one_set()), car(b.clone())),
                    ),
                    sing(zero_set()),
                );
                let d1 = self.edge_copy_disjunct(&a, &cv, &y, &y1);
                let d2 = Formula::exists(
                    y.clone(),
                    Formula::exists(
                        y1.clone(),
                        Formula::and(
                            eq(
                                tv(&cv),
                                opair(opair(one_set(), tv(&y1)), opair(one_set(), tv(&y))),
                            ),
                            inn(opair(tv(&y1), tv(&y)), proj1(b.clone())),
                        ),
                    ),
                );
                let d3 = eq(
                    tv(&cv),
                    opair(opair(zero_set(), proj2(a.clone())), zero_set()),
                );
                let d4 = eq(
                    tv(&cv),
                    opair(opair(one_set(), proj2(b.clone())), zero_set()),
                );
                Ok(opair(
                    set_compr(
                        cv,
                        prod(x_cell.clone(), x_cell),
                        Formula::or_all(vec![d1, d2, d3, d4]),
                    ),
                    zero_set(),
                ))
            }
            FunSym::Pow => {
                self.clause("term:pow");
                let a = t(self, 0)?;
                let mut fr = Fresh::new();
                fr.seed_term(&a);
                let cv = fr.var("c", Sort::Set);
                let y = fr.var("y", Sort::Set);
                let y1 = fr.var("y'", Sort::Set);
                let p = fr.var("p", Sort::Set);
                let x_cell = cup(
                    cup(
                        prod(sing(zero_set()), car(a.clone())),
                        prod(sing(one_set()), Term::App(FunSym::Pow, vec![car(a.clone())])),
                    ),
                    sing(zero_set()),
                );
                let d1 = self.edge_copy_disjunct(&a, &cv, &y, &y1);
                let d2 = Formula::exists(
                    y.clone(),
                    Formula::exists(
                        p.clone(),
                        Formula::and_all(vec![
                            eq(
                                tv(&cv),
                                opair(opair(zero_set(), tv(&y)), opair(one_set(), tv(&p))),
                            ),
                            inn(opair(tv(&y), proj2(a.clone())), proj1(a.clone())),
                            inn(tv(&y), tv(&p)),
                        ]),
                    ),
                );
                let d3 = Formula::exists(
                    p.clone(),
                    eq(tv(&cv), opair(opair(one_set(), tv(&p)), zero_set())),
                );
                Ok(opair(
                    set_compr(
                        cv,
                        prod(x_cell.clone(), x_cell),
                        Formula::or_all(vec![d1, d2, d3]),
                    ),
                    zero_set(),
                ))
            }
            FunSym::Omega => {
                self.clause("term:omega");
                let mut fr = Fresh::new();
                let cv = fr.var("c", Sort::Set);
                let y = fr.var("y", Sort::Set);
                let y1 = fr.var("y'", Sort::Set);
                let x_cell = cup(prod(sing(zero_set()), nat_set()), sing(zero_set()));
                let d1 = Formula::exists(
                    y.clone(),
                    Formula::exists(
                        y1.clone(),
                        Formula::and(
                            eq(
                                tv(&cv),
                                opair(opair(zero_set(), tv(&y1)), opair(zero_set(), tv(&y))),
                            ),
                            inn(tv(&y1), tv(&y)),
                        ),
                    ),
                );
                let d2 = Formula::exists(
                    y.clone(),
                    eq(tv(&cv), opair(opair(zero_set(), tv(&y)), zero_set())),
                );
                Ok(opair(
                    set_compr(cv, prod(x_cell.clone(), x_cell), Formula::or(d1, d2)),
                    zero_set(),
                ))
            }
            FunSym::Tc => {
                self.clause("term:tc");
                let a = t(self, 0)?;
                let mut fr = Fresh::new();
                fr.seed_term(&a);
                let cv = fr.var("c", Sort::Set);
                let y = fr.var("y", Sort::Set);
                let y1 = fr.var("y'", Sort::Set);
                let x_cell = self.carrier_frame(&a);
                let d1 = self.edge_copy_disjunct(&a, &cv, &y, &y1);
                let d2 = Formula::exists(
                    y.clone(),
                    Formula::and(
                        eq(tv(&cv), opair(opair(zero_set(), tv(&y)), zero_set())),
                        inn(
                            opair(tv(&y), proj2(a.clone())),
                            Term::App(FunSym::Clos, vec![proj1(a.clone())]),
                        ),
                    ),
                );
                Ok(opair(
                    set_compr(cv, prod(x_cell.clone(), x_cell), Formula::or(d1, d2)),
                    zero_set(),
                ))
            }
            other => Err(TranslateError::Unsupported(format!(
                "symbol {} is not graph-theory syntax",
                other.token()
            ))),
        }
    }

    fn formula(&mut self, f: &Formula) -> Result<Formula, TranslateError> {
        match f {
            Formula::Atom(p, args) => self.atom(*p, args),
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
                let nv = self.var(v)?;
                let g = guard(v.sort, &nv)?;
                Ok(Formula::forall(nv, Formula::imp(g, self.formula(body)?)))
            }
            Formula::Exists(v, body) => {
                self.clause("formula:exists");
                let nv = self.var(v)?;
                let g = guard(v.sort, &nv)?;
                Ok(Formula::exists(nv, Formula::and(g, self.formula(body)?)))
            }
            Formula::Meta(_) => Err(TranslateError::Unsupported(
                "metavariables have no translation".into(),
            )),
        }
    }

    fn atom(&mut self, p: PredSym, args: &[Term]) -> Result<Formula, TranslateError> {
        let t = |s: &mut Self, i: usize| s.term(&args[i]);
        match p {
            PredSym::Eta => {
                self.clause("formula:eta");
                // eta(a, t, u) is `t eta_a u`
                let a = t(self, 0)?;
                let x = t(self, 1)?;
                let y = t(self, 2)?;
                Ok(inn(opair(x, y), proj1(a)))
            }
            PredSym::Eq => {
                self.clause("formula:eq");
                Ok(eq(t(self, 0)?, t(self, 1)?))
            }
            PredSym::Mem => {
                self.clause("formula:mem");
                Ok(memf(t(self, 0)?, t(self, 1)?))
            }
            PredSym::Rel => {
                self.clause("formula:rel");
                let x = t(self, 0)?;
                let y = t(self, 1)?;
                let r = t(self, 2)?;
                Ok(memf(opair(x, y), r))
            }
            PredSym::ImgI | PredSym::ImgJ => {
                self.clause(if p == PredSym::ImgI {
                    "formula:img_i"
                } else {
                    "formula:img_j"
                });
                let x = t(self, 0)?;
                let mut fr = Fresh::new();
                fr.seed_term(&x);
                let y = fr.var("y", Sort::Set);
                let tag = if p == PredSym::ImgI { zero_set() } else { one_set() };
                Ok(Formula::exists(y.clone(), eq(x, opair(tag, tv(&y)))))
            }
            PredSym::Null => {
                self.clause("formula:null");
                Ok(eq(t(self, 0)?, zero_set()))
            }
            PredSym::Lt => {
                self.clause("formula:lt");
                let a = t(self, 0)?;
                let b = t(self, 1)?;
                Ok(Formula::and(inn(a, b.clone()), inn(b, nat_set())))
            }
            PredSym::Nat => {
                self.clause("formula:nat");
                Ok(inn(t(self, 0)?, nat_set()))
            }
            PredSym::Approx => {
                self.clause("formula:approx");
                Ok(Formula::Atom(
                    PredSym::Approx,
                    vec![t(self, 0)?, t(self, 1)?],
                ))
            }
            PredSym::In => {
                self.clause("formula:in");
                let a = t(self, 0)?;
                let b = t(self, 1)?;
                let mut fr = Fresh::new();
                fr.seed_term(&a);
                fr.seed_term(&b);
                let z = fr.var("z", Sort::Set);
                Ok(Formula::exists(
                    z.clone(),
                    Formula::and(
                        inn(opair(tv(&z), proj2(b.clone())), proj1(b.clone())),
                        Formula::Atom(
                            PredSym::Approx,
                            vec![a, opair(proj1(b), tv(&z))],
                        ),
                    ),
                ))
            }
            other => Err(TranslateError::Unsupported(format!(
                "predicate {} is not graph-theory syntax",
                other.token()
            ))),
        }
    }
}

/// Translate a graph-theory term.
pub fn star_term(t: &Term) -> Result<Term, TranslateError> {
    Star { trace: None }.term(t)
}

pub fn star_term_traced(t: &Term, trace: &mut Vec<String>) -> Result<Term, TranslateError> {
    Star { trace: Some(trace) }.term(t)
}

/// Translate a graph-theory formula, relativizing quantifiers by sort.
pub fn star_formula(f: &Formula) -> Result<Formula, TranslateError> {
    Star { trace: None }.formula(f)
}

pub fn star_formula_traced(f: &Formula, trace: &mut Vec<String>) -> Result<Formula, TranslateError> {
    Star { trace: Some(trace) }.formula(f)
}
