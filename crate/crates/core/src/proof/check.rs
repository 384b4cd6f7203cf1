//! Type checking modulo the congruence: every premise/conclusion match is
//! up to joint normalization, with fuel exhaustion reported separately from
//! a definite mismatch.

use std::cell::RefCell;
use std::collections::{BTreeSet, HashMap};

use crate::lang::ast::{Formula, Sort, Term, Var};
use crate::lang::check::sort_of_opt;
use crate::lang::subst::{alpha_canonical, alpha_eq, fresh_name, fv_formula, substitute, Binding};
use crate::rewrite::{normalize_formula, Outcome, RewriteSystem};

use super::term::{Context, ProofTerm};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Status {
    Checked,
    Failed(String),
    Undetermined(String),
}

#[derive(Debug, Clone)]
pub struct Judgment {
    pub formula: Formula,
    pub status: Status,
}

impl Judgment {
    pub fn is_checked(&self) -> bool {
        matches!(self.status, Status::Checked)
    }
}

enum CkErr {
    Fail(String),
    Undet(String),
}

/// A checker with a normal-form cache keyed by alpha-canonical printing.
/// Results are identical with and without the cache: entries are reused
/// only when they were computed within the current fuel budget.
pub struct Checker<'a> {
    sys: &'a RewriteSystem,
    fuel: u64,
    cache: RefCell<HashMap<String, (Formula, u64)>>,
}

impl<'a> Checker<'a> {
    pub fn new(sys: &'a RewriteSystem, fuel: u64) -> Self {
        Checker {
            sys,
            fuel,
            cache: RefCell::new(HashMap::new()),
        }
    }

    fn nf(&self, f: &Formula, at: &str) -> Result<Formula, CkErr> {
        let key = alpha_canonical(f).to_string();
        if let Some((nf, steps)) = self.cache.borrow().get(&key) {
            if *steps <= self.fuel {
                return Ok(nf.clone());
            }
        }
        let res = normalize_formula(f, self.sys, self.fuel, false);
        match res.outcome {
            Outcome::NormalForm(nf) => {
                self.cache.borrow_mut().insert(key, (nf.clone(), res.steps));
                Ok(nf)
            }
            Outcome::FuelExhausted(_) => Err(CkErr::Undet(format!(
                "at {}: normalization of `{}` exhausted fuel {}",
                at, f, self.fuel
            ))),
        }
    }

    fn congr(&self, a: &Formula, b: &Formula, at: &str) -> Result<(), CkErr> {
        let na = self.nf(a, at)?;
        let nb = self.nf(b, at)?;
        if alpha_eq(&na, &nb) {
            Ok(())
        } else {
            Err(CkErr::Fail(format!(
                "at {}: `{}` is not congruent to `{}` (normal forms `{}` vs `{}`)",
                at, a, b, na, nb
            )))
        }
    }

    fn taken_names(env: &[(String, Formula)], extra: &[&Formula], p: &ProofTerm) -> BTreeSet<String> {
        let mut taken: BTreeSet<String> = BTreeSet::new();
        for (_, f) in env {
            taken.extend(fv_formula(f).into_iter().map(|v| v.name));
        }
        for f in extra {
            taken.extend(fv_formula(f).into_iter().map(|v| v.name));
        }
        taken.extend(p.free_obj_vars().into_iter().map(|v| v.name));
        taken
    }

    fn subst1(&self, f: &Formula, v: &Var, t: &Term, at: &str) -> Result<Formula, CkErr> {
        let mut b = Binding::new();
        b.insert(v.clone(), t.clone());
        substitute(f, &b).map_err(|e| CkErr::Fail(format!("at {}: {}", at, e)))
    }

    fn witness_sort_ok(&self, t: &Term, want: Sort, at: &str) -> Result<(), CkErr> {
        match sort_of_opt(t) {
            Some(s) if s == want => Ok(()),
            Some(s) => Err(CkErr::Fail(format!(
                "at {}: witness `{}` has sort {}, the quantifier binds sort {}",
                at, t, s, want
            ))),
            None => Err(CkErr::Fail(format!(
                "at {}: witness `{}` has no determined sort",
                at, t
            ))),
        }
    }

    fn check(
        &self,
        env: &mut Vec<(String, Formula)>,
        p: &ProofTerm,
        phi: &Formula,
        at: &str,
    ) -> Result<(), CkErr> {
        match p {
            ProofTerm::ImpIntro { hyp, body } => match self.nf(phi, at)? {
                Formula::Imp(a, b) => {
                    env.push((hyp.clone(), *a));
                    let r = self.check(env, body, &b, &format!("{}.body", at));
                    env.pop();
                    r
                }
                other => Err(CkErr::Fail(format!(
                    "at {}: implication-intro against `{}` (normal form `{}` is not an implication)",
                    at, phi, other
                ))),
            },
            ProofTerm::AndIntro { left, right } => match self.nf(phi, at)? {
                Formula::And(a, b) => {
                    self.check(env, left, &a, &format!("{}.left", at))?;
                    self.check(env, right, &b, &format!("{}.right", at))
                }
                other => Err(CkErr::Fail(format!(
                    "at {}: conjunction-intro against non-conjunction `{}`",
                    at, other
                ))),
            },
            ProofTerm::OrIntro1(q) => match self.nf(phi, at)? {
                Formula::Or(a, _) => self.check(env, q, &a, &format!("{}.left", at)),
                other => Err(CkErr::Fail(format!(
                    "at {}: disjunction-intro against non-disjunction `{}`",
                    at, other
                ))),
            },
            ProofTerm::OrIntro2(q) => match self.nf(phi, at)? {
                Formula::Or(_, b) => self.check(env, q, &b, &format!("{}.right", at)),
                other => Err(CkErr::Fail(format!(
                    "at {}: disjunction-intro against non-disjunction `{}`",
                    at, other
                ))),
            },
            ProofTerm::TopIntro => match self.nf(phi, at)? {
                Formula::True => Ok(()),
                other => Err(CkErr::Fail(format!(
                    "at {}: truth-intro against `{}`",
                    at, other
                ))),
            },
            ProofTerm::AllIntro { var, body } => match self.nf(phi, at)? {
                Formula::Forall(y, b) => {
                    if var.sort != y.sort {
                        return Err(CkErr::Fail(format!(
                            "at {}: universal-intro binds sort {}, the formula binds sort {}",
                            at, var.sort, y.sort
                        )));
                    }
                    // eigenvariable: rename to a name free nowhere in scope
                    let taken = Self::taken_names(env, &[&b], body);
                    let z = Var::new(fresh_name(&var.name, &taken), var.sort);
                    let body2 = body.subst_obj(var, &Term::Var(z.clone()));
                    let b2 = self.subst1(&b, &y, &Term::Var(z.clone()), at)?;
                    self.check(env, &body2, &b2, &format!("{}.body", at))
                }
                other => Err(CkErr::Fail(format!(
                    "at {}: universal-intro against non-universal `{}`",
                    at, other
                ))),
            },
            ProofTerm::ExIntro { witness, proof } => match self.nf(phi, at)? {
                Formula::Exists(y, b) => {
                    self.witness_sort_ok(witness, y.sort, at)?;
                    let b2 = self.subst1(&b, &y, witness, at)?;
                    self.check(env, proof, &b2, &format!("{}.body", at))
                }
                other => Err(CkErr::Fail(format!(
                    "at {}: existential-intro against non-existential `{}`",
                    at, other
                ))),
            },
            ProofTerm::OrElim {
                scrutinee,
                left_hyp,
                left,
                right_hyp,
                right,
            } => {
                let s = self.synth(env, scrutinee, &format!("{}.scrutinee", at))?;
                match self.nf(&s, at)? {
                    Formula::Or(a, b) => {
                        env.push((left_hyp.clone(), *a));
                        let r = self.check(env, left, phi, &format!("{}.left", at));
                        env.pop();
                        r?;
                        env.push((right_hyp.clone(), *b));
                        let r = self.check(env, right, phi, &format!("{}.right", at));
                        env.pop();
                        r
                    }
                    other => Err(CkErr::Fail(format!(
                        "at {}: case analysis on non-disjunction `{}`",
                        at, other
                    ))),
                }
            }
            ProofTerm::ExElim {
                scrutinee,
                var,
                hyp,
                body,
            } => {
                let s = self.synth(env, scrutinee, &format!("{}.scrutinee", at))?;
                match self.nf(&s, at)? {
                    Formula::Exists(y, a) => {
                        if var.sort != y.sort {
                            return Err(CkErr::Fail(format!(
                                "at {}: existential-elim binds sort {}, the scrutinee binds sort {}",
                                at, var.sort, y.sort
                            )));
                        }
                        let taken = Self::taken_names(env, &[&a, phi], body);
                        let z = Var::new(fresh_name(&var.name, &taken), var.sort);
                        let a2 = self.subst1(&a, &y, &Term::Var(z.clone()), at)?;
                        let body2 = body.subst_obj(var, &Term::Var(z.clone()));
                        env.push((hyp.clone(), a2));
                        let r = self.check(env, &body2, phi, &format!("{}.body", at));
                        env.pop();
                        r
                    }
                    other => Err(CkErr::Fail(format!(
                        "at {}: existential-elim on non-existential `{}`",
                        at, other
                    ))),
                }
            }
            ProofTerm::BotElim { proof, target } => {
                self.check(env, proof, &Formula::False, &format!("{}.proof", at))?;
                self.congr(target, phi, at)
            }
            // eliminations and ascriptions synthesize, then compare
            _ => {
                let s = self.synth(env, p, at)?;
                self.congr(&s, phi, at)
            }
        }
    }

    fn synth(&self, env: &mut Vec<(String, Formula)>, p: &ProofTerm, at: &str) -> Result<Formula, CkErr> {
        match p {
            ProofTerm::Hyp(h) => env
                .iter()
                .rev()
                .find(|(n, _)| n == h)
                .map(|(_, f)| f.clone())
                .ok_or_else(|| CkErr::Fail(format!("at {}: unknown hypothesis `{}`", at, h))),
            ProofTerm::ImpElim { fun, arg } => {
                let f = self.synth(env, fun, &format!("{}.fun", at))?;
                match self.nf(&f, at)? {
                    Formula::Imp(a, b) => {
                        self.check(env, arg, &a, &format!("{}.arg", at))?;
                        Ok(*b)
                    }
                    other => Err(CkErr::Fail(format!(
                        "at {}: applied a proof of `{}`, which is not an implication",
                        at, other
                    ))),
                }
            }
            ProofTerm::AndElim1(q) => {
                let f = self.synth(env, q, &format!("{}.pair", at))?;
                match self.nf(&f, at)? {
                    Formula::And(a, _) => Ok(*a),
                    other => Err(CkErr::Fail(format!(
                        "at {}: first projection of non-conjunction `{}`",
                        at, other
                    ))),
                }
            }
            ProofTerm::AndElim2(q) => {
                let f = self.synth(env, q, &format!("{}.pair", at))?;
                match self.nf(&f, at)? {
                    Formula::And(_, b) => Ok(*b),
                    other => Err(CkErr::Fail(format!(
                        "at {}: second projection of non-conjunction `{}`",
                        at, other
                    ))),
                }
            }
            ProofTerm::AllElim { proof, witness } => {
                let f = self.synth(env, proof, &format!("{}.fun", at))?;
                match self.nf(&f, at)? {
                    Formula::Forall(y, b) => {
                        self.witness_sort_ok(witness, y.sort, at)?;
                        self.subst1(&b, &y, witness, at)
                    }
                    other => Err(CkErr::Fail(format!(
                        "at {}: instantiated a proof of `{}`, which is not universal",
                        at, other
                    ))),
                }
            }
            ProofTerm::BotElim { proof, target } => {
                self.check(env, proof, &Formula::False, &format!("{}.proof", at))?;
                Ok(target.clone())
            }
            ProofTerm::Ascribe { proof, formula } => {
                self.check(env, proof, formula, &format!("{}.ascribed", at))?;
                Ok(formula.clone())
            }
            ProofTerm::ExElim {
                scrutinee,
                var,
                hyp,
                body,
            } => {
                let s = self.synth(env, scrutinee, &format!("{}.scrutinee", at))?;
                match self.nf(&s, at)? {
                    Formula::Exists(y, a) => {
                        let taken = Self::taken_names(env, &[&a], body);
                        let z = Var::new(fresh_name(&var.name, &taken), var.sort);
                        let a2 = self.subst1(&a, &y, &Term::Var(z.clone()), at)?;
                        let body2 = body.subst_obj(var, &Term::Var(z.clone()));
                        env.push((hyp.clone(), a2));
                        let r = self.synth(env, &body2, &format!("{}.body", at));
                        env.pop();
                        let c = r?;
                        if fv_formula(&c).iter().any(|v| v.name == z.name) {
                            return Err(CkErr::Fail(format!(
                                "at {}: the witness variable escapes through `{}`",
                                at, c
                            )));
                        }
                        Ok(c)
                    }
                    other => Err(CkErr::Fail(format!(
                        "at {}: existential-elim on non-existential `{}`",
                        at, other
                    ))),
                }
            }
            other => Err(CkErr::Fail(format!(
                "at {}: cannot infer a formula for a {} (ascribe it with `(p : F)`)",
                at,
                other.head().name()
            ))),
        }
    }
}

/// Check a proof term against a formula in a context, modulo the context's
/// rewrite system.
pub fn check(ctx: &Context<'_>, p: &ProofTerm, phi: &Formula, fuel: u64) -> Judgment {
    let ck = Checker::new(ctx.system, fuel);
    let mut env = ctx.hyps.clone();
    let status = match ck.check(&mut env, p, phi, "root") {
        Ok(()) => Status::Checked,
        Err(CkErr::Fail(m)) => Status::Failed(m),
        Err(CkErr::Undet(m)) => Status::Undetermined(m),
    };
    Judgment {
        formula: phi.clone(),
        status,
    }
}
