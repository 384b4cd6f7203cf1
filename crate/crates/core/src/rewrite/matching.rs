//! First-order matching and rule application at the root of a term or atom.

use std::collections::BTreeMap;
use std::collections::BTreeSet;

use crate::lang::ast::{Formula, FunSym, PredSym, Term, Var};
use crate::lang::check::sort_of_opt;
use crate::lang::subst::{fresh_name, fv_formula, fv_term, subst_formula, subst_term, Binding};

use super::rule::{Rule, RuleBody, SchemaShape};

/// Pattern-variable bindings collected during matching.
#[derive(Debug, Default, Clone)]
pub struct Binds {
    map: BTreeMap<String, Term>,
}

impl Binds {
    fn bind(&mut self, v: &Var, t: &Term) -> bool {
        if let Some(s) = sort_of_opt(t) {
            if s != v.sort {
                return false;
            }
        }
        match self.map.get(&v.name) {
            Some(prev) => prev == t,
            None => {
                self.map.insert(v.name.clone(), t.clone());
                true
            }
        }
    }

    fn to_binding(&self, pattern_fv: &BTreeSet<Var>) -> Binding {
        let mut b = Binding::new();
        for v in pattern_fv {
            if let Some(t) = self.map.get(&v.name) {
                b.insert(v.clone(), t.clone());
            }
        }
        b
    }
}

fn match_term(pat: &Term, t: &Term, binds: &mut Binds) -> bool {
    match (pat, t) {
        (Term::Var(v), _) => binds.bind(v, t),
        (Term::App(f, xs), Term::App(g, ys)) => {
            f == g && xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| match_term(x, y, binds))
        }
        (Term::Compr(c), Term::Compr(d)) => {
            c.params.len() == d.params.len()
                && family_pred_eq(
                    &with_binders(&[c.bound.clone()], &c.params),
                    &c.pred,
                    &with_binders(&[d.bound.clone()], &d.params),
                    &d.pred,
                )
                && c.args.iter().zip(&d.args).all(|(x, y)| match_term(x, y, binds))
                && match_term(&c.source, &d.source, binds)
        }
        (Term::NodeClass(c), Term::NodeClass(d)) => {
            c.params.len() == d.params.len()
                && family_pred_eq(
                    &with_binders(&[c.bound.clone()], &c.params),
                    &c.pred,
                    &with_binders(&[d.bound.clone()], &d.params),
                    &d.pred,
                )
                && c.args.iter().zip(&d.args).all(|(x, y)| match_term(x, y, binds))
        }
        (Term::NodeRel(c), Term::NodeRel(d)) => {
            c.params.len() == d.params.len()
                && family_pred_eq(
                    &with_binders(&[c.bound.0.clone(), c.bound.1.clone()], &c.params),
                    &c.pred,
                    &with_binders(&[d.bound.0.clone(), d.bound.1.clone()], &d.params),
                    &d.pred,
                )
                && c.args.iter().zip(&d.args).all(|(x, y)| match_term(x, y, binds))
        }
        (Term::SetCompr(c), Term::SetCompr(d)) => {
            family_pred_eq(
                &[c.bound.clone()],
                &c.pred,
                &[d.bound.clone()],
                &d.pred,
            ) && match_term(&c.source, &d.source, binds)
        }
        (Term::ClassCompr(c), Term::ClassCompr(d)) => family_pred_eq(
            &[c.bound.clone()],
            &c.pred,
            &[d.bound.clone()],
            &d.pred,
        ),
        _ => false,
    }
}

fn with_binders(bound: &[Var], params: &[Var]) -> Vec<Var> {
    let mut v = bound.to_vec();
    v.extend(params.iter().cloned());
    v
}

/// Binder-family heads match only instances with alpha-equal indexing
/// formulas: rename the second family's binders to the first's and compare.
fn family_pred_eq(xs: &[Var], p: &Formula, ys: &[Var], q: &Formula) -> bool {
    if xs.len() != ys.len() {
        return false;
    }
    let renaming: Binding = ys
        .iter()
        .zip(xs)
        .filter(|(y, x)| y != x)
        .map(|(y, x)| (y.clone(), Term::Var(x.clone())))
        .collect();
    let q2 = subst_formula(q, &renaming);
    crate::lang::subst::alpha_eq(p, &q2)
}

fn match_atom(pat: &Formula, f: &Formula, binds: &mut Binds) -> bool {
    match (pat, f) {
        (Formula::Atom(p, xs), Formula::Atom(q, ys)) => {
            p == q && xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| match_term(x, y, binds))
        }
        _ => false,
    }
}

/// Apply one rule at the root of a term.  Returns the contractum.
pub fn apply_term_rule(rule: &Rule, t: &Term) -> Option<Term> {
    match &rule.body {
        RuleBody::Term { lhs, rhs } => {
            let mut binds = Binds::default();
            if !match_term(lhs, t, &mut binds) {
                return None;
            }
            let binding = binds.to_binding(&fv_term(lhs));
            Some(subst_term(rhs, &binding))
        }
        RuleBody::Schema(SchemaShape::RootCompr) => match t {
            Term::App(FunSym::Root, args) if matches!(args.first(), Some(Term::Compr(_))) => {
                Some(Term::constant(FunSym::O))
            }
            _ => None,
        },
        _ => None,
    }
}

/// Apply one rule at the root of an atomic formula.
pub fn apply_formula_rule(rule: &Rule, f: &Formula) -> Option<Formula> {
    match &rule.body {
        RuleBody::Formula { lhs, rhs } => {
            let mut binds = Binds::default();
            if !match_atom(lhs, f, &mut binds) {
                return None;
            }
            let binding = binds.to_binding(&fv_formula(lhs));
            Some(subst_formula(rhs, &binding))
        }
        RuleBody::Schema(shape) => apply_schema(*shape, f),
        RuleBody::Term { .. } => None,
    }
}

fn apply_schema(shape: SchemaShape, f: &Formula) -> Option<Formula> {
    match shape {
        SchemaShape::MemNodeClass => {
            let (t, c) = match f {
                Formula::Atom(PredSym::Mem, args) if args.len() == 2 => match &args[1] {
                    Term::NodeClass(c) => (&args[0], c),
                    _ => return None,
                },
                _ => return None,
            };
            let mut binding = Binding::new();
            binding.insert(c.bound.clone(), t.clone());
            for (p, a) in c.params.iter().zip(&c.args) {
                binding.insert(p.clone(), a.clone());
            }
            Some(subst_formula(&c.pred, &binding))
        }
        SchemaShape::RelNodeRel => {
            let (t, u, c) = match f {
                Formula::Atom(PredSym::Rel, args) if args.len() == 3 => match &args[2] {
                    Term::NodeRel(c) => (&args[0], &args[1], c),
                    _ => return None,
                },
                _ => return None,
            };
            let mut binding = Binding::new();
            binding.insert(c.bound.0.clone(), t.clone());
            binding.insert(c.bound.1.clone(), u.clone());
            for (p, a) in c.params.iter().zip(&c.args) {
                binding.insert(p.clone(), a.clone());
            }
            Some(subst_formula(&c.pred, &binding))
        }
        SchemaShape::EtaCompr => {
            let (c, t, t1) = match f {
                Formula::Atom(PredSym::Eta, args) if args.len() == 3 => match &args[0] {
                    Term::Compr(c) => (c, &args[1], &args[2]),
                    _ => return None,
                },
                _ => return None,
            };
            Some(eta_compr_contractum(c, t, t1))
        }
        SchemaShape::InSetCompr => {
            let (a, c) = match f {
                Formula::Atom(PredSym::In, args) if args.len() == 2 => match &args[1] {
                    Term::SetCompr(c) => (&args[0], c),
                    _ => return None,
                },
                _ => return None,
            };
            let mut binding = Binding::new();
            binding.insert(c.bound.clone(), a.clone());
            let inst = subst_formula(&c.pred, &binding);
            Some(Formula::and(
                Formula::Atom(PredSym::In, vec![a.clone(), c.source.clone()]),
                inst,
            ))
        }
        SchemaShape::RootCompr => None,
    }
}

/// Contractum of `t eta_{f(bs, a)} t'`:
/// `(exists y y' (t = i(y) /\ t' = i(y') /\ y eta_a y'))
///  \/ (exists y (t = i(y) /\ t' = o /\ y eta_a root(a) /\ P(x <- a/y)))`.
fn eta_compr_contractum(c: &crate::lang::ast::ComprTerm, t: &Term, t1: &Term) -> Formula {
    use crate::lang::ast::Sort;
    let mut taken: BTreeSet<String> = BTreeSet::new();
    for tv in fv_term(t).into_iter().chain(fv_term(t1)).chain(fv_term(&c.source)) {
        taken.insert(tv.name);
    }
    for a in &c.args {
        for tv in fv_term(a) {
            taken.insert(tv.name);
        }
    }
    let y = Var::new(fresh_name("y", &taken), Sort::N);
    taken.insert(y.name.clone());
    let y1 = Var::new(fresh_name("y'", &taken), Sort::N);

    let i_of = |v: &Var| Term::App(FunSym::I, vec![Term::Var(v.clone())]);
    let eq = |a: Term, b: Term| Formula::Atom(PredSym::Eq, vec![a, b]);
    let eta = |a: Term, x: Term, yv: Term| Formula::Atom(PredSym::Eta, vec![a, x, yv]);

    let d1 = Formula::exists(
        y.clone(),
        Formula::exists(
            y1.clone(),
            Formula::and_all(vec![
                eq(t.clone(), i_of(&y)),
                eq(t1.clone(), i_of(&y1)),
                eta(c.source.clone(), Term::Var(y.clone()), Term::Var(y1.clone())),
            ]),
        ),
    );

    // P(x <- a/y, ys <- bs): the y below is intentionally the freshly bound one
    let mut binding = Binding::new();
    binding.insert(
        c.bound.clone(),
        Term::App(FunSym::Slash, vec![c.source.clone(), Term::Var(y.clone())]),
    );
    for (p, a) in c.params.iter().zip(&c.args) {
        binding.insert(p.clone(), a.clone());
    }
    let inst = subst_formula(&c.pred, &binding);

    let d2 = Formula::exists(
        y.clone(),
        Formula::and_all(vec![
            eq(t.clone(), i_of(&y)),
            eq(t1.clone(), Term::constant(FunSym::O)),
            eta(
                c.source.clone(),
                Term::Var(y.clone()),
                Term::App(FunSym::Root, vec![c.source.clone()]),
            ),
            inst,
        ]),
    );

    Formula::or(d1, d2)
}
