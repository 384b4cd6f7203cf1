//! Rule-to-axiom conversion: `l --> r` becomes the universal closure of
//! `l = r` (term rules) or `l <-> r` (formula rules).  Schema rules stand
//! for axiom schemes, not single formulas, and are skipped.

use crate::lang::ast::{Formula, Term, Var};

use super::rule::{RewriteSystem, RuleBody};

fn ordered_vars_term(t: &Term, seen: &mut Vec<Var>) {
    match t {
        Term::Var(v) => {
            if !seen.contains(v) {
                seen.push(v.clone());
            }
        }
        Term::App(_, args) => {
            for a in args {
                ordered_vars_term(a, seen);
            }
        }
        Term::Compr(c) => {
            for a in &c.args {
                ordered_vars_term(a, seen);
            }
            ordered_vars_term(&c.source, seen);
        }
        Term::NodeClass(c) => {
            for a in &c.args {
                ordered_vars_term(a, seen);
            }
        }
        Term::NodeRel(c) => {
            for a in &c.args {
                ordered_vars_term(a, seen);
            }
        }
        Term::SetCompr(c) => ordered_vars_term(&c.source, seen),
        Term::ClassCompr(_) => {}
    }
}

fn ordered_vars_formula(f: &Formula, seen: &mut Vec<Var>) {
    match f {
        Formula::Atom(_, args) => {
            for a in args {
                ordered_vars_term(a, seen);
            }
        }
        Formula::True | Formula::False | Formula::Meta(_) => {}
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
            ordered_vars_formula(a, seen);
            ordered_vars_formula(b, seen);
        }
        Formula::Forall(_, b) | Formula::Exists(_, b) => ordered_vars_formula(b, seen),
    }
}

fn close(vars: Vec<Var>, body: Formula) -> Formula {
    vars.into_iter()
        .rev()
        .fold(body, |acc, v| Formula::forall(v, acc))
}

/// First-occurrence order from the left-hand side, then any free variables
/// only visible through binder predicates, in name order.
fn closure_vars(mut vars: Vec<Var>, body: &Formula) -> Vec<Var> {
    for v in crate::lang::subst::fv_formula(body) {
        if !vars.contains(&v) {
            vars.push(v);
        }
    }
    vars
}

/// The axioms equivalent to the pattern rules of a system, in rule order.
pub fn axiomatize(sys: &RewriteSystem) -> Vec<Formula> {
    let mut out = Vec::new();
    for rule in &sys.rules {
        match &rule.body {
            RuleBody::Term { lhs, rhs } => {
                let mut vars = Vec::new();
                ordered_vars_term(lhs, &mut vars);
                let body = Formula::Atom(
                    crate::lang::ast::PredSym::Eq,
                    vec![lhs.clone(), rhs.clone()],
                );
                let vars = closure_vars(vars, &body);
                out.push(close(vars, body));
            }
            RuleBody::Formula { lhs, rhs } => {
                let mut vars = Vec::new();
                ordered_vars_formula(lhs, &mut vars);
                let body = Formula::iff(lhs.clone(), rhs.clone());
                let vars = closure_vars(vars, &body);
                out.push(close(vars, body));
            }
            RuleBody::Schema(_) => {}
        }
    }
    out
}

/// Names of the schema rules skipped by [`axiomatize`] (axiom schemes).
pub fn schematic_rules(sys: &RewriteSystem) -> Vec<String> {
    sys.rules
        .iter()
        .filter(|r| matches!(r.body, RuleBody::Schema(_)))
        .map(|r| r.name.clone())
        .collect()
}
