//! Normalization: outermost-leftmost on terms, innermost-first on atoms
//! inside formulas, an explicit fuel budget, and a replayable trace.

use crate::lang::ast::{Formula, Term, Var};
use crate::lang::subst::alpha_eq;

use super::matching::{apply_formula_rule, apply_term_rule};
use super::rule::RewriteSystem;
use super::{NormalizationResult, Outcome, RewriteError, TraceStep};

/// One rewrite step at the leftmost-outermost redex of a term.
fn term_step(t: &Term, sys: &RewriteSystem) -> Option<(Term, String, Vec<usize>)> {
    for r in &sys.rules {
        if r.rewrites_terms() {
            if let Some(nt) = apply_term_rule(r, t) {
                return Some((nt, r.name.clone(), Vec::new()));
            }
        }
    }
    let descend = |args: &[Term], build: &dyn Fn(usize, Term) -> Term| {
        for (i, a) in args.iter().enumerate() {
            if let Some((na, rn, mut pos)) = term_step(a, sys) {
                pos.insert(0, i);
                return Some((build(i, na), rn, pos));
            }
        }
        None
    };
    match t {
        Term::Var(_) => None,
        Term::App(f, args) => descend(args, &|i, na| {
            let mut args = args.clone();
            args[i] = na;
            Term::App(*f, args)
        }),
        Term::Compr(c) => {
            // argument positions 0..n-1, source at n; the indexing formula is
            // part of the symbol and is not rewritten
            let mut all: Vec<Term> = c.args.clone();
            all.push(c.source.clone());
            descend(&all, &|i, na| {
                let mut c2 = (**c).clone();
                if i < c2.args.len() {
                    c2.args[i] = na;
                } else {
                    c2.source = na;
                }
                Term::Compr(Box::new(c2))
            })
        }
        Term::NodeClass(c) => descend(&c.args, &|i, na| {
            let mut c2 = (**c).clone();
            c2.args[i] = na;
            Term::NodeClass(Box::new(c2))
        }),
        Term::NodeRel(c) => descend(&c.args, &|i, na| {
            let mut c2 = (**c).clone();
            c2.args[i] = na;
            Term::NodeRel(Box::new(c2))
        }),
        Term::SetCompr(c) => descend(std::slice::from_ref(&c.source), &|_, na| {
            let mut c2 = (**c).clone();
            c2.source = na;
            Term::SetCompr(Box::new(c2))
        }),
        Term::ClassCompr(_) => None,
    }
}

/// One head-reduction step of an atomic formula.
fn head_step(atom: &Formula, sys: &RewriteSystem) -> Option<(Formula, String)> {
    for r in &sys.rules {
        if !r.rewrites_terms() {
            if let Some(nf) = apply_formula_rule(r, atom) {
                return Some((nf, r.name.clone()));
            }
        }
    }
    None
}

/// Outermost-leftmost term normalization under a fuel budget.
pub fn normalize_term(
    t: &Term,
    sys: &RewriteSystem,
    fuel: u64,
    want_trace: bool,
) -> NormalizationResult<Term> {
    let mut cur = t.clone();
    let mut steps = 0u64;
    let mut trace = if want_trace { Some(Vec::new()) } else { None };
    loop {
        match term_step(&cur, sys) {
            None => {
                return NormalizationResult {
                    outcome: Outcome::NormalForm(cur),
                    steps,
                    trace,
                }
            }
            Some((nt, rule, pos)) => {
                if steps >= fuel {
                    return NormalizationResult {
                        outcome: Outcome::FuelExhausted(cur),
                        steps,
                        trace,
                    };
                }
                steps += 1;
                if let Some(tr) = trace.as_mut() {
                    tr.push(TraceStep { rule, pos });
                }
                cur = nt;
            }
        }
    }
}

/// One formula-rule step at the head of an atom, or `None` when irreducible.
pub fn reduce_atom(atom: &Formula, sys: &RewriteSystem) -> Result<Option<Formula>, RewriteError> {
    if !atom.is_atomic() {
        return Err(RewriteError::NotAtomic);
    }
    Ok(head_step(atom, sys).map(|(f, _)| f))
}

enum Frame {
    AndL(Formula),
    AndR(Formula),
    OrL(Formula),
    OrR(Formula),
    ImpL(Formula),
    ImpR(Formula),
    All(Var),
    Ex(Var),
}

enum St {
    Enter(Formula),
    Ret(Formula),
}

/// Normalize a formula: terms first (within each atom, leftmost), then
/// repeated head reduction of atoms, descending into freshly created
/// subformulas before moving right.
pub fn normalize_formula(
    phi: &Formula,
    sys: &RewriteSystem,
    fuel: u64,
    want_trace: bool,
) -> NormalizationResult<Formula> {
    let mut frames: Vec<Frame> = Vec::new();
    let mut path: Vec<usize> = Vec::new();
    let mut steps = 0u64;
    let mut trace = if want_trace { Some(Vec::new()) } else { None };
    let mut exhausted = false;
    let mut st = St::Enter(phi.clone());
    loop {
        match st {
            St::Enter(f) => match f {
                Formula::And(a, b) => {
                    frames.push(Frame::AndL(*b));
                    path.push(0);
                    st = St::Enter(*a);
                }
                Formula::Or(a, b) => {
                    frames.push(Frame::OrL(*b));
                    path.push(0);
                    st = St::Enter(*a);
                }
                Formula::Imp(a, b) => {
                    frames.push(Frame::ImpL(*b));
                    path.push(0);
                    st = St::Enter(*a);
                }
                Formula::Forall(v, body) => {
                    frames.push(Frame::All(v));
                    path.push(0);
                    st = St::Enter(*body);
                }
                Formula::Exists(v, body) => {
                    frames.push(Frame::Ex(v));
                    path.push(0);
                    st = St::Enter(*body);
                }
                Formula::True | Formula::False | Formula::Meta(_) => st = St::Ret(f),
                Formula::Atom(p, mut args) => {
                    if exhausted {
                        st = St::Ret(Formula::Atom(p, args));
                        continue;
                    }
                    // term normalization, leftmost argument first
                    'terms: loop {
                        let mut stepped = false;
                        for (i, a) in args.iter_mut().enumerate() {
                            if let Some((na, rule, tpos)) = term_step(a, sys) {
                                if steps >= fuel {
                                    exhausted = true;
                                    break 'terms;
                                }
                                steps += 1;
                                if let Some(tr) = trace.as_mut() {
                                    let mut pos = path.clone();
                                    pos.push(i);
                                    pos.extend(tpos);
                                    tr.push(TraceStep { rule, pos });
                                }
                                *a = na;
                                stepped = true;
                                break;
                            }
                        }
                        if !stepped {
                            break;
                        }
                    }
                    let atom = Formula::Atom(p, args);
                    if exhausted {
                        st = St::Ret(atom);
                        continue;
                    }
                    match head_step(&atom, sys) {
                        Some((nf, rule)) => {
                            if steps >= fuel {
                                exhausted = true;
                                st = St::Ret(atom);
                            } else {
                                steps += 1;
                                if let Some(tr) = trace.as_mut() {
                                    tr.push(TraceStep { rule, pos: path.clone() });
                                }
                                st = St::Enter(nf);
                            }
                        }
                        None => st = St::Ret(atom),
                    }
                }
            },
            St::Ret(f) => match frames.pop() {
                None => {
                    let outcome = if exhausted {
                        Outcome::FuelExhausted(f)
                    } else {
                        Outcome::NormalForm(f)
                    };
                    return NormalizationResult { outcome, steps, trace };
                }
                Some(Frame::AndL(r)) => {
                    path.pop();
                    frames.push(Frame::AndR(f));
                    path.push(1);
                    st = St::Enter(r);
                }
                Some(Frame::AndR(l)) => {
                    path.pop();
                    st = St::Ret(Formula::and(l, f));
                }
                Some(Frame::OrL(r)) => {
                    path.pop();
                    frames.push(Frame::OrR(f));
                    path.push(1);
                    st = St::Enter(r);
                }
                Some(Frame::OrR(l)) => {
                    path.pop();
                    st = St::Ret(Formula::or(l, f));
                }
                Some(Frame::ImpL(r)) => {
                    path.pop();
                    frames.push(Frame::ImpR(f));
                    path.push(1);
                    st = St::Enter(r);
                }
                Some(Frame::ImpR(l)) => {
                    path.pop();
                    st = St::Ret(Formula::imp(l, f));
                }
                Some(Frame::All(v)) => {
                    path.pop();
                    st = St::Ret(Formula::forall(v, f));
                }
                Some(Frame::Ex(v)) => {
                    path.pop();
                    st = St::Ret(Formula::exists(v, f));
                }
            },
        }
    }
}

/// Congruence test: both sides normalize within `fuel` and the normal forms
/// are alpha-equal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Congruence {
    Congruent,
    Distinct,
    Undetermined,
}

pub fn congruent(a: &Formula, b: &Formula, sys: &RewriteSystem, fuel: u64) -> Congruence {
    let na = normalize_formula(a, sys, fuel, false);
    let nb = normalize_formula(b, sys, fuel, false);
    match (na.outcome, nb.outcome) {
        (Outcome::NormalForm(x), Outcome::NormalForm(y)) => {
            if alpha_eq(&x, &y) {
                Congruence::Congruent
            } else {
                Congruence::Distinct
            }
        }
        _ => Congruence::Undetermined,
    }
}

// ---------------------------------------------------------------------------
// independent single-step replay

#[derive(Debug, Clone)]
enum Loc {
    T(Term),
    F(Formula),
}

fn term_child(t: &Term, i: usize) -> Option<Term> {
    match t {
        Term::App(_, args) => args.get(i).cloned(),
        Term::Compr(c) => {
            if i < c.args.len() {
                Some(c.args[i].clone())
            } else if i == c.args.len() {
                Some(c.source.clone())
            } else {
                None
            }
        }
        Term::NodeClass(c) => c.args.get(i).cloned(),
        Term::NodeRel(c) => c.args.get(i).cloned(),
        Term::SetCompr(c) if i == 0 => Some(c.source.clone()),
        _ => None,
    }
}

fn term_with_child(t: &Term, i: usize, new: Term) -> Option<Term> {
    match t {
        Term::App(f, args) => {
            let mut args = args.clone();
            *args.get_mut(i)? = new;
            Some(Term::App(*f, args))
        }
        Term::Compr(c) => {
            let mut c2 = (**c).clone();
            if i < c2.args.len() {
                c2.args[i] = new;
            } else if i == c2.args.len() {
                c2.source = new;
            } else {
                return None;
            }
            Some(Term::Compr(Box::new(c2)))
        }
        Term::NodeClass(c) => {
            let mut c2 = (**c).clone();
            *c2.args.get_mut(i)? = new;
            Some(Term::NodeClass(Box::new(c2)))
        }
        Term::NodeRel(c) => {
            let mut c2 = (**c).clone();
            *c2.args.get_mut(i)? = new;
            Some(Term::NodeRel(Box::new(c2)))
        }
        Term::SetCompr(c) if i == 0 => {
            let mut c2 = (**c).clone();
            c2.source = new;
            Some(Term::SetCompr(Box::new(c2)))
        }
        _ => None,
    }
}

fn rewrite_term_at(t: &Term, pos: &[usize], step: impl FnOnce(&Term) -> Option<Term>) -> Option<Term> {
    match pos.split_first() {
        None => step(t),
        Some((i, rest)) => {
            let child = term_child(t, *i)?;
            let new = rewrite_term_at(&child, rest, step)?;
            term_with_child(t, *i, new)
        }
    }
}

fn rewrite_formula_at(
    f: &Formula,
    pos: &[usize],
    step: &dyn Fn(Loc) -> Option<Loc>,
) -> Option<Formula> {
    match pos.split_first() {
        None => match step(Loc::F(f.clone()))? {
            Loc::F(nf) => Some(nf),
            Loc::T(_) => None,
        },
        Some((i, rest)) => match f {
            Formula::Atom(p, args) => {
                let a = args.get(*i)?;
                let na = rewrite_term_at(a, rest, |t| match step(Loc::T(t.clone()))? {
                    Loc::T(nt) => Some(nt),
                    Loc::F(_) => None,
                })?;
                let mut args = args.clone();
                args[*i] = na;
                Some(Formula::Atom(*p, args))
            }
            Formula::And(a, b) => match i {
                0 => Some(Formula::and(rewrite_formula_at(a, rest, step)?, (**b).clone())),
                1 => Some(Formula::and((**a).clone(), rewrite_formula_at(b, rest, step)?)),
                _ => None,
            },
            Formula::Or(a, b) => match i {
                0 => Some(Formula::or(rewrite_formula_at(a, rest, step)?, (**b).clone())),
                1 => Some(Formula::or((**a).clone(), rewrite_formula_at(b, rest, step)?)),
                _ => None,
            },
            Formula::Imp(a, b) => match i {
                0 => Some(Formula::imp(rewrite_formula_at(a, rest, step)?, (**b).clone())),
                1 => Some(Formula::imp((**a).clone(), rewrite_formula_at(b, rest, step)?)),
                _ => None,
            },
            Formula::Forall(v, body) if *i == 0 => Some(Formula::forall(
                v.clone(),
                rewrite_formula_at(body, rest, step)?,
            )),
            Formula::Exists(v, body) if *i == 0 => Some(Formula::exists(
                v.clone(),
                rewrite_formula_at(body, rest, step)?,
            )),
            _ => None,
        },
    }
}

/// Re-apply a trace one step at a time: each step must be a legal instance
/// of the named rule at the recorded position.
pub fn replay_formula(
    start: &Formula,
    trace: &[TraceStep],
    sys: &RewriteSystem,
) -> Result<Formula, RewriteError> {
    let mut cur = start.clone();
    for (k, step) in trace.iter().enumerate() {
        let rule = sys
            .rule(&step.rule)
            .ok_or_else(|| RewriteError::UnknownRule(step.rule.clone()))?;
        let next = rewrite_formula_at(&cur, &step.pos, &|loc| match loc {
            Loc::T(t) => apply_term_rule(rule, &t).map(Loc::T),
            Loc::F(f) => apply_formula_rule(rule, &f).map(Loc::F),
        })
        .ok_or(RewriteError::ReplayMismatch {
            step: k,
            rule: step.rule.clone(),
        })?;
        cur = next;
    }
    Ok(cur)
}

pub fn replay_term(
    start: &Term,
    trace: &[TraceStep],
    sys: &RewriteSystem,
) -> Result<Term, RewriteError> {
    let mut cur = start.clone();
    for (k, step) in trace.iter().enumerate() {
        let rule = sys
            .rule(&step.rule)
            .ok_or_else(|| RewriteError::UnknownRule(step.rule.clone()))?;
        let next = rewrite_term_at(&cur, &step.pos, |t| apply_term_rule(rule, t)).ok_or(
            RewriteError::ReplayMismatch {
                step: k,
                rule: step.rule.clone(),
            },
        )?;
        cur = next;
    }
    Ok(cur)
}
