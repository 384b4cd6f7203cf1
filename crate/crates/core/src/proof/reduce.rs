//! Proof reduction (cut elimination): leftmost-outermost contraction of
//! intro/elim redexes, plus ascription erasure.

use crate::rewrite::{NormalizationResult, Outcome, TraceStep};

use super::term::{HeadTag, ProofTerm};
use super::ProofError;

/// Look through ascriptions on a principal premise: annotations vanish as
/// part of the contraction, keeping every reduct checkable.
fn strip_ascriptions(p: &ProofTerm) -> &ProofTerm {
    match p {
        ProofTerm::Ascribe { proof, .. } => strip_ascriptions(proof),
        other => other,
    }
}

/// Contract a redex at the root, if any.
fn root_step(p: &ProofTerm) -> Option<(ProofTerm, &'static str)> {
    match p {
        ProofTerm::Ascribe { proof, .. } => Some(((**proof).clone(), "ann")),
        ProofTerm::ImpElim { fun, arg } => match strip_ascriptions(fun) {
            ProofTerm::ImpIntro { hyp, body } => {
                Some((body.subst_hyp(hyp, arg), "beta_imp"))
            }
            _ => None,
        },
        ProofTerm::AllElim { proof, witness } => match strip_ascriptions(proof) {
            ProofTerm::AllIntro { var, body } => {
                Some((body.subst_obj(var, witness), "beta_all"))
            }
            _ => None,
        },
        ProofTerm::AndElim1(q) => match strip_ascriptions(q) {
            ProofTerm::AndIntro { left, .. } => Some(((**left).clone(), "proj_fst")),
            _ => None,
        },
        ProofTerm::AndElim2(q) => match strip_ascriptions(q) {
            ProofTerm::AndIntro { right, .. } => Some(((**right).clone(), "proj_snd")),
            _ => None,
        },
        ProofTerm::OrElim {
            scrutinee,
            left_hyp,
            left,
            right_hyp,
            right,
        } => match strip_ascriptions(scrutinee) {
            ProofTerm::OrIntro1(q) => Some((left.subst_hyp(left_hyp, q), "case_inl")),
            ProofTerm::OrIntro2(q) => Some((right.subst_hyp(right_hyp, q), "case_inr")),
            _ => None,
        },
        ProofTerm::ExElim {
            scrutinee,
            var,
            hyp,
            body,
        } => match strip_ascriptions(scrutinee) {
            ProofTerm::ExIntro { witness, proof } => {
                Some((body.subst_obj(var, witness).subst_hyp(hyp, proof), "open_ex"))
            }
            _ => None,
        },
        _ => None,
    }
}

fn children(p: &ProofTerm) -> Vec<&ProofTerm> {
    match p {
        ProofTerm::Hyp(_) | ProofTerm::TopIntro => vec![],
        ProofTerm::ImpIntro { body, .. } => vec![body],
        ProofTerm::ImpElim { fun, arg } => vec![fun, arg],
        ProofTerm::AndIntro { left, right } => vec![left, right],
        ProofTerm::AndElim1(q) | ProofTerm::AndElim2(q) => vec![q],
        ProofTerm::OrIntro1(q) | ProofTerm::OrIntro2(q) => vec![q],
        ProofTerm::OrElim {
            scrutinee,
            left,
            right,
            ..
        } => vec![scrutinee, left, right],
        ProofTerm::BotElim { proof, .. } => vec![proof],
        ProofTerm::AllIntro { body, .. } => vec![body],
        ProofTerm::AllElim { proof, .. } => vec![proof],
        ProofTerm::ExIntro { proof, .. } => vec![proof],
        ProofTerm::ExElim {
            scrutinee, body, ..
        } => vec![scrutinee, body],
        ProofTerm::Ascribe { proof, .. } => vec![proof],
    }
}

fn with_child(p: &ProofTerm, i: usize, new: ProofTerm) -> Option<ProofTerm> {
    let mut q = p.clone();
    match (&mut q, i) {
        (ProofTerm::ImpIntro { body, .. }, 0) => *body = Box::new(new),
        (ProofTerm::ImpElim { fun, .. }, 0) => *fun = Box::new(new),
        (ProofTerm::ImpElim { arg, .. }, 1) => *arg = Box::new(new),
        (ProofTerm::AndIntro { left, .. }, 0) => *left = Box::new(new),
        (ProofTerm::AndIntro { right, .. }, 1) => *right = Box::new(new),
        (ProofTerm::AndElim1(q1), 0) => *q1 = Box::new(new),
        (ProofTerm::AndElim2(q1), 0) => *q1 = Box::new(new),
        (ProofTerm::OrIntro1(q1), 0) => *q1 = Box::new(new),
        (ProofTerm::OrIntro2(q1), 0) => *q1 = Box::new(new),
        (ProofTerm::OrElim { scrutinee, .. }, 0) => *scrutinee = Box::new(new),
        (ProofTerm::OrElim { left, .. }, 1) => *left = Box::new(new),
        (ProofTerm::OrElim { right, .. }, 2) => *right = Box::new(new),
        (ProofTerm::BotElim { proof, .. }, 0) => *proof = Box::new(new),
        (ProofTerm::AllIntro { body, .. }, 0) => *body = Box::new(new),
        (ProofTerm::AllElim { proof, .. }, 0) => *proof = Box::new(new),
        (ProofTerm::ExIntro { proof, .. }, 0) => *proof = Box::new(new),
        (ProofTerm::ExElim { scrutinee, .. }, 0) => *scrutinee = Box::new(new),
        (ProofTerm::ExElim { body, .. }, 1) => *body = Box::new(new),
        (ProofTerm::Ascribe { proof, .. }, 0) => *proof = Box::new(new),
        _ => return None,
    }
    Some(q)
}

/// Leftmost-outermost step anywhere in the proof.
fn step(p: &ProofTerm) -> Option<(ProofTerm, &'static str, Vec<usize>)> {
    if let Some((q, rule)) = root_step(p) {
        return Some((q, rule, Vec::new()));
    }
    for (i, c) in children(p).into_iter().enumerate() {
        if let Some((nc, rule, mut pos)) = step(c) {
            pos.insert(0, i);
            return Some((with_child(p, i, nc).expect("child index valid"), rule, pos));
        }
    }
    None
}

/// No redex anywhere.
pub fn is_normal(p: &ProofTerm) -> bool {
    root_step(p).is_none() && children(p).into_iter().all(is_normal)
}

/// Reduce to normal form or fuel exhaustion.
pub fn reduce(p: &ProofTerm, fuel: u64, want_trace: bool) -> NormalizationResult<ProofTerm> {
    let mut cur = p.clone();
    let mut steps = 0u64;
    let mut trace = if want_trace { Some(Vec::new()) } else { None };
    loop {
        match step(&cur) {
            None => {
                return NormalizationResult {
                    outcome: Outcome::NormalForm(cur),
                    steps,
                    trace,
                }
            }
            Some((q, rule, pos)) => {
                if steps >= fuel {
                    return NormalizationResult {
                        outcome: Outcome::FuelExhausted(cur),
                        steps,
                        trace,
                    };
                }
                steps += 1;
                if let Some(tr) = trace.as_mut() {
                    tr.push(TraceStep {
                        rule: rule.to_string(),
                        pos,
                    });
                }
                cur = q;
            }
        }
    }
}

/// Independent single-step replay of a reduction trace: each step applies
/// the named contraction at the recorded position.
pub fn replay_proof(
    start: &ProofTerm,
    trace: &[TraceStep],
) -> Result<ProofTerm, ProofError> {
    fn at(
        p: &ProofTerm,
        pos: &[usize],
        rule: &str,
    ) -> Option<ProofTerm> {
        match pos.split_first() {
            None => match root_step(p) {
                Some((q, r)) if r == rule => Some(q),
                _ => None,
            },
            Some((i, rest)) => {
                let c = children(p).into_iter().nth(*i)?;
                let nc = at(c, rest, rule)?;
                with_child(p, *i, nc)
            }
        }
    }
    let mut cur = start.clone();
    for (k, s) in trace.iter().enumerate() {
        cur = at(&cur, &s.pos, &s.rule).ok_or(ProofError::ReplayMismatch {
            step: k,
            rule: s.rule.clone(),
        })?;
    }
    Ok(cur)
}

/// Top constructor of a normal closed proof.
pub fn head_of_normal(p: &ProofTerm) -> Result<HeadTag, ProofError> {
    if !is_normal(p) {
        return Err(ProofError::NotNormal);
    }
    if !p.is_closed() {
        return Err(ProofError::NotClosed);
    }
    Ok(p.head())
}
