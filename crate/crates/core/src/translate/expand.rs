//! Expansion of the defined notations of the skolemized set theory into the
//! core grammar (variables, the five term formers, class comprehension, and
//! the atoms `=`, `in`, `mem`).

use crate::lang::ast::{Formula, FunSym, PredSym, Sort, Term, Var};

use super::{
    car, class_compr, cup, eq, inn, opair, proj1, proj2, prod, set_compr, sing, tv, Fresh,
    TranslateError,
};

fn sv(f: &mut Fresh, base: &str) -> Var {
    f.var(base, Sort::Set)
}

fn union1(a: Term) -> Term {
    Term::App(FunSym::Union, vec![a])
}

fn pow(a: Term) -> Term {
    Term::App(FunSym::Pow, vec![a])
}

fn pair2(a: Term, b: Term) -> Term {
    Term::App(FunSym::Pair, vec![a, b])
}

/// One expansion step of an abbreviation head; `None` when the head is core.
fn step_term(t: &Term, fr: &mut Fresh) -> Option<Term> {
    let out = match t {
        Term::App(FunSym::EmptySet, _) => {
            // {x in NN | false}
            let x = sv(fr, "x");
            set_compr(x, Term::constant(FunSym::NatSet), Formula::False)
        }
        Term::App(FunSym::Cup, args) => union1(pair2(args[0].clone(), args[1].clone())),
        Term::App(FunSym::Sing, args) => pair2(args[0].clone(), args[0].clone()),
        Term::App(FunSym::OPair, args) => pair2(
            pair2(args[0].clone(), args[0].clone()),
            pair2(args[0].clone(), args[1].clone()),
        ),
        Term::App(FunSym::Proj1, args) => {
            let x1 = sv(fr, "x1");
            let x2 = sv(fr, "x2");
            union1(set_compr(
                x1.clone(),
                union1(args[0].clone()),
                Formula::exists(
                    x2.clone(),
                    eq(args[0].clone(), opair(tv(&x1), tv(&x2))),
                ),
            ))
        }
        Term::App(FunSym::Proj2, args) => {
            let x2 = sv(fr, "x2");
            let x1 = sv(fr, "x1");
            union1(set_compr(
                x2.clone(),
                union1(args[0].clone()),
                Formula::exists(
                    x1.clone(),
                    eq(args[0].clone(), opair(tv(&x1), tv(&x2))),
                ),
            ))
        }
        Term::App(FunSym::Prod, args) => {
            let z = sv(fr, "z");
            let x = sv(fr, "x");
            let y = sv(fr, "y");
            set_compr(
                z.clone(),
                pow(pow(cup(args[0].clone(), args[1].clone()))),
                Formula::exists(
                    x.clone(),
                    Formula::exists(
                        y.clone(),
                        Formula::and_all(vec![
                            inn(tv(&x), args[0].clone()),
                            inn(tv(&y), args[1].clone()),
                            eq(tv(&z), opair(tv(&x), tv(&y))),
                        ]),
                    ),
                ),
            )
        }
        Term::App(FunSym::ZeroSet, _) => Term::constant(FunSym::EmptySet),
        Term::App(FunSym::OneSet, _) => sing(Term::constant(FunSym::EmptySet)),
        Term::App(FunSym::FnApp, args) => {
            let y = sv(fr, "y");
            union1(set_compr(
                y.clone(),
                union1(union1(args[0].clone())),
                inn(opair(args[1].clone(), tv(&y)), args[0].clone()),
            ))
        }
        Term::App(FunSym::Restrict, args) => {
            let c = sv(fr, "c");
            set_compr(
                c.clone(),
                args[0].clone(),
                inn(proj1(tv(&c)), args[1].clone()),
            )
        }
        Term::App(FunSym::Car, args) => {
            let x = sv(fr, "x");
            let y = sv(fr, "y");
            set_compr(
                x.clone(),
                union1(union1(args[0].clone())),
                Formula::exists(
                    y.clone(),
                    Formula::or(
                        inn(opair(tv(&x), tv(&y)), args[0].clone()),
                        inn(opair(tv(&y), tv(&x)), args[0].clone()),
                    ),
                ),
            )
        }
        Term::App(FunSym::Clos, args) => {
            let c = sv(fr, "c");
            let r1 = sv(fr, "r'");
            let x = sv(fr, "x");
            let y = sv(fr, "y");
            let z = sv(fr, "z");
            let subset = Formula::forall(
                x.clone(),
                Formula::imp(inn(tv(&x), args[0].clone()), inn(tv(&x), tv(&r1))),
            );
            let transitive = Formula::forall(
                x.clone(),
                Formula::forall(
                    y.clone(),
                    Formula::forall(
                        z.clone(),
                        Formula::imp(
                            Formula::and(
                                inn(opair(tv(&x), tv(&y)), tv(&r1)),
                                inn(opair(tv(&y), tv(&z)), tv(&r1)),
                            ),
                            inn(opair(tv(&x), tv(&z)), tv(&r1)),
                        ),
                    ),
                ),
            );
            set_compr(
                c.clone(),
                prod(car(args[0].clone()), car(args[0].clone())),
                Formula::forall(
                    r1.clone(),
                    Formula::imp(
                        Formula::and(subset, transitive),
                        inn(tv(&c), tv(&r1)),
                    ),
                ),
            )
        }
        Term::App(FunSym::Lcs, args) => {
            let g = sv(fr, "g");
            let psi = sv(fr, "psi");
            union1(set_compr(
                g.clone(),
                pow(args[0].clone()),
                Formula::and(
                    Formula::Atom(PredSym::ISegP, vec![tv(&g), args[0].clone()]),
                    Formula::exists(
                        psi.clone(),
                        Formula::Atom(PredSym::CollapseP, vec![tv(&g), tv(&psi)]),
                    ),
                ),
            ))
        }
        Term::App(FunSym::CastR, args) => opair(
            Term::App(FunSym::Lcs, vec![proj1(args[0].clone())]),
            proj2(args[0].clone()),
        ),
        Term::App(FunSym::Dom, args) => {
            let x = sv(fr, "x");
            let y = sv(fr, "y");
            set_compr(
                x.clone(),
                union1(union1(args[0].clone())),
                Formula::exists(y.clone(), inn(opair(tv(&x), tv(&y)), args[0].clone())),
            )
        }
        Term::App(FunSym::Cod, args) => {
            let y = sv(fr, "y");
            let x = sv(fr, "x");
            set_compr(
                y.clone(),
                union1(union1(args[0].clone())),
                Formula::exists(x.clone(), inn(opair(tv(&x), tv(&y)), args[0].clone())),
            )
        }
        _ => return None,
    };
    Some(out)
}

/// The extension of a collapse to the whole universe:
/// `{y in Cod(phi) | exists j ((j,i) in A /\ (j,y) in phi)}`.
pub(crate) fn hat_ext(a: Term, phi: Term, i: Term, fr: &mut Fresh) -> Term {
    let y = sv(fr, "y");
    let j = sv(fr, "j");
    set_compr(
        y.clone(),
        Term::App(FunSym::Cod, vec![phi.clone()]),
        Formula::exists(
            j.clone(),
            Formula::and(
                inn(opair(tv(&j), i), a),
                inn(opair(tv(&j), tv(&y)), phi),
            ),
        ),
    )
}

/// One expansion step of a macro predicate; `None` when the atom is core.
fn step_atom(p: PredSym, args: &[Term], fr: &mut Fresh) -> Option<Formula> {
    let out = match p {
        PredSym::GraphP => {
            let c = sv(fr, "c");
            let x = sv(fr, "x");
            let y = sv(fr, "y");
            Formula::forall(
                c.clone(),
                Formula::imp(
                    inn(tv(&c), args[0].clone()),
                    Formula::exists(
                        x.clone(),
                        Formula::exists(y.clone(), eq(tv(&c), opair(tv(&x), tv(&y)))),
                    ),
                ),
            )
        }
        PredSym::PgraphP => {
            let a = sv(fr, "A");
            let r = sv(fr, "a");
            Formula::exists(
                a.clone(),
                Formula::exists(
                    r.clone(),
                    Formula::and(
                        eq(args[0].clone(), opair(tv(&a), tv(&r))),
                        Formula::Atom(PredSym::GraphP, vec![tv(&a)]),
                    ),
                ),
            )
        }
        PredSym::FunctionP => {
            let z = sv(fr, "z");
            let x = sv(fr, "x");
            let y = sv(fr, "y");
            let y1 = sv(fr, "y'");
            Formula::and(
                Formula::forall(
                    z.clone(),
                    Formula::imp(
                        inn(tv(&z), args[0].clone()),
                        Formula::exists(
                            x.clone(),
                            Formula::exists(y.clone(), eq(tv(&z), opair(tv(&x), tv(&y)))),
                        ),
                    ),
                ),
                Formula::forall(
                    x.clone(),
                    Formula::forall(
                        y.clone(),
                        Formula::forall(
                            y1.clone(),
                            Formula::imp(
                                Formula::and(
                                    inn(opair(tv(&x), tv(&y)), args[0].clone()),
                                    inn(opair(tv(&x), tv(&y1)), args[0].clone()),
                                ),
                                eq(tv(&y), tv(&y1)),
                            ),
                        ),
                    ),
                ),
            )
        }
        PredSym::CollapseP => {
            let (a, phi) = (args[0].clone(), args[1].clone());
            let i = sv(fr, "i");
            let y1 = sv(fr, "y'");
            let y = sv(fr, "y");
            let i1 = sv(fr, "i'");
            Formula::and_all(vec![
                Formula::Atom(PredSym::GraphP, vec![a.clone()]),
                Formula::Atom(PredSym::FunctionP, vec![phi.clone()]),
                eq(Term::App(FunSym::Dom, vec![phi.clone()]), car(a.clone())),
                Formula::forall(
                    i.clone(),
                    Formula::forall(
                        y1.clone(),
                        Formula::forall(
                            y.clone(),
                            Formula::iff(
                                Formula::and(
                                    inn(tv(&y1), tv(&y)),
                                    inn(opair(tv(&i), tv(&y)), phi.clone()),
                                ),
                                Formula::exists(
                                    i1.clone(),
                                    Formula::and(
                                        inn(opair(tv(&i1), tv(&i)), a.clone()),
                                        inn(opair(tv(&i1), tv(&y1)), phi.clone()),
                                    ),
                                ),
                            ),
                        ),
                    ),
                ),
            ])
        }
        PredSym::ISegP => {
            let (g, a) = (args[0].clone(), args[1].clone());
            let x = sv(fr, "x");
            let y = sv(fr, "y");
            Formula::and(
                Formula::Atom(PredSym::GraphP, vec![g.clone()]),
                Formula::forall(
                    x.clone(),
                    Formula::forall(
                        y.clone(),
                        Formula::imp(
                            Formula::and(
                                inn(opair(tv(&x), tv(&y)), a),
                                inn(tv(&y), car(g.clone())),
                            ),
                            inn(opair(tv(&x), tv(&y)), g.clone()),
                        ),
                    ),
                ),
            )
        }
        PredSym::ReifP => {
            let (g, x) = (args[0].clone(), args[1].clone());
            let a = sv(fr, "A");
            let r = sv(fr, "a");
            let phi = sv(fr, "phi");
            let hat = hat_ext(tv(&a), tv(&phi), tv(&r), fr);
            Formula::exists(
                a.clone(),
                Formula::exists(
                    r.clone(),
                    Formula::exists(
                        phi.clone(),
                        Formula::and_all(vec![
                            eq(g, opair(tv(&a), tv(&r))),
                            Formula::Atom(PredSym::CollapseP, vec![tv(&a), tv(&phi)]),
                            eq(x, hat),
                        ]),
                    ),
                ),
            )
        }
        PredSym::Rgraph => {
            let x = sv(fr, "x");
            Formula::exists(
                x.clone(),
                Formula::Atom(PredSym::ReifP, vec![args[0].clone(), tv(&x)]),
            )
        }
        PredSym::Approx => {
            let (g, g1) = (args[0].clone(), args[1].clone());
            let a = sv(fr, "A");
            let av = sv(fr, "a");
            let b = sv(fr, "B");
            let bv = sv(fr, "b");
            let r = sv(fr, "r");
            let x = sv(fr, "x");
            let x1 = sv(fr, "x'");
            let y = sv(fr, "y");
            let y1 = sv(fr, "y'");
            let forth = Formula::forall(
                x.clone(),
                Formula::forall(
                    x1.clone(),
                    Formula::forall(
                        y.clone(),
                        Formula::imp(
                            Formula::and(
                                inn(opair(tv(&x1), tv(&x)), tv(&a)),
                                inn(opair(tv(&x), tv(&y)), tv(&r)),
                            ),
                            Formula::exists(
                                y1.clone(),
                                Formula::and(
                                    inn(opair(tv(&y1), tv(&y)), tv(&b)),
                                    inn(opair(tv(&x1), tv(&y1)), tv(&r)),
                                ),
                            ),
                        ),
                    ),
                ),
            );
            let back = Formula::forall(
                y.clone(),
                Formula::forall(
                    y1.clone(),
                    Formula::forall(
                        x.clone(),
                        Formula::imp(
                            Formula::and(
                                inn(opair(tv(&y1), tv(&y)), tv(&b)),
                                inn(opair(tv(&x), tv(&y)), tv(&r)),
                            ),
                            Formula::exists(
                                x1.clone(),
                                Formula::and(
                                    inn(opair(tv(&x1), tv(&x)), tv(&a)),
                                    inn(opair(tv(&x1), tv(&y1)), tv(&r)),
                                ),
                            ),
                        ),
                    ),
                ),
            );
            Formula::exists(
                a.clone(),
                Formula::exists(
                    av.clone(),
                    Formula::exists(
                        b.clone(),
                        Formula::exists(
                            bv.clone(),
                            Formula::exists(
                                r.clone(),
                                Formula::and_all(vec![
                                    Formula::Atom(PredSym::GraphP, vec![tv(&a)]),
                                    Formula::Atom(PredSym::GraphP, vec![tv(&b)]),
                                    eq(g, opair(tv(&a), tv(&av))),
                                    eq(g1, opair(tv(&b), tv(&bv))),
                                    inn(opair(tv(&av), tv(&bv)), tv(&r)),
                                    forth,
                                    back,
                                ]),
                            ),
                        ),
                    ),
                ),
            )
        }
        PredSym::EmptyP => {
            let x = sv(fr, "x");
            Formula::forall(
                x.clone(),
                Formula::neg(inn(tv(&x), args[0].clone())),
            )
        }
        PredSym::SuccP => {
            let x = sv(fr, "x");
            Formula::forall(
                x.clone(),
                Formula::iff(
                    inn(tv(&x), args[1].clone()),
                    Formula::or(inn(tv(&x), args[0].clone()), eq(tv(&x), args[0].clone())),
                ),
            )
        }
        PredSym::IndP => {
            let a = sv(fr, "a");
            let b = sv(fr, "b");
            Formula::and(
                Formula::forall(
                    a.clone(),
                    Formula::imp(
                        Formula::Atom(PredSym::EmptyP, vec![tv(&a)]),
                        inn(tv(&a), args[0].clone()),
                    ),
                ),
                Formula::forall(
                    a.clone(),
                    Formula::imp(
                        inn(tv(&a), args[0].clone()),
                        Formula::forall(
                            b.clone(),
                            Formula::imp(
                                Formula::Atom(PredSym::SuccP, vec![tv(&a), tv(&b)]),
                                inn(tv(&b), args[0].clone()),
                            ),
                        ),
                    ),
                ),
            )
        }
        PredSym::Nat => {
            let b = sv(fr, "b");
            Formula::forall(
                b.clone(),
                Formula::imp(
                    Formula::Atom(PredSym::IndP, vec![tv(&b)]),
                    inn(args[0].clone(), tv(&b)),
                ),
            )
        }
        _ => return None,
    };
    Some(out)
}

fn expand_term_inner(t: &Term, fr: &mut Fresh) -> Result<Term, TranslateError> {
    if let Some(stepped) = step_term(t, fr) {
        return expand_term_inner(&stepped, fr);
    }
    match t {
        Term::Var(_) => Ok(t.clone()),
        Term::App(f, args) => {
            let args = args
                .iter()
                .map(|a| expand_term_inner(a, fr))
                .collect::<Result<Vec<_>, _>>()?;
            match f {
                FunSym::Union | FunSym::Pair | FunSym::Pow | FunSym::Tc | FunSym::NatSet => {
                    Ok(Term::App(*f, args))
                }
                other => Err(TranslateError::Unsupported(format!(
                    "symbol {} is not part of the skolemized core grammar",
                    other.token()
                ))),
            }
        }
        Term::SetCompr(c) => Ok(set_compr(
            c.bound.clone(),
            expand_term_inner(&c.source, fr)?,
            expand_formula_inner(&c.pred, fr)?,
        )),
        Term::ClassCompr(c) => Ok(class_compr(
            c.bound.clone(),
            expand_formula_inner(&c.pred, fr)?,
        )),
        Term::Compr(_) | Term::NodeClass(_) | Term::NodeRel(_) => Err(
            TranslateError::Unsupported("graph binder families have no set-theory expansion".into()),
        ),
    }
}

fn expand_formula_inner(f: &Formula, fr: &mut Fresh) -> Result<Formula, TranslateError> {
    match f {
        Formula::Atom(p, args) => {
            let args = args
                .iter()
                .map(|a| expand_term_inner(a, fr))
                .collect::<Result<Vec<_>, _>>()?;
            match step_atom(*p, &args, fr) {
                Some(expanded) => expand_formula_inner(&expanded, fr),
                None => match p {
                    PredSym::Eq | PredSym::In | PredSym::Mem => Ok(Formula::Atom(*p, args)),
                    other => Err(TranslateError::Unsupported(format!(
                        "predicate {} is not part of the skolemized core grammar",
                        other.token()
                    ))),
                },
            }
        }
        Formula::True => Ok(Formula::True),
        Formula::False => Ok(Formula::False),
        Formula::And(a, b) => Ok(Formula::and(
            expand_formula_inner(a, fr)?,
            expand_formula_inner(b, fr)?,
        )),
        Formula::Or(a, b) => Ok(Formula::or(
            expand_formula_inner(a, fr)?,
            expand_formula_inner(b, fr)?,
        )),
        Formula::Imp(a, b) => Ok(Formula::imp(
            expand_formula_inner(a, fr)?,
            expand_formula_inner(b, fr)?,
        )),
        Formula::Forall(v, b) => Ok(Formula::forall(v.clone(), expand_formula_inner(b, fr)?)),
        Formula::Exists(v, b) => Ok(Formula::exists(v.clone(), expand_formula_inner(b, fr)?)),
        Formula::Meta(_) => Err(TranslateError::Unsupported(
            "metavariables have no expansion".into(),
        )),
    }
}

/// Fully expand the defined notations of a skolemized term.
pub fn expand_term(t: &Term) -> Result<Term, TranslateError> {
    let mut fr = Fresh::new();
    fr.seed_term(t);
    expand_term_inner(t, &mut fr)
}

/// Fully expand the defined notations of a skolemized formula.
pub fn expand_formula(f: &Formula) -> Result<Formula, TranslateError> {
    let mut fr = Fresh::new();
    fr.seed_formula(f);
    expand_formula_inner(f, &mut fr)
}
