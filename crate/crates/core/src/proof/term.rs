//! Natural-deduction proof terms: a lambda calculus with pairs,
//! projections, injections, case analysis, and quantifier forms.

use std::collections::BTreeSet;
use std::fmt;

use crate::lang::ast::{Formula, Term, Var};
use crate::lang::subst::{fresh_name, fv_formula, fv_term, subst_formula, subst_term, Binding};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProofTerm {
    /// hypothesis variable
    Hyp(String),
    /// `fun h => p`
    ImpIntro { hyp: String, body: Box<ProofTerm> },
    /// `p q`
    ImpElim { fun: Box<ProofTerm>, arg: Box<ProofTerm> },
    /// `(p, q)`
    AndIntro { left: Box<ProofTerm>, right: Box<ProofTerm> },
    /// `fst p`
    AndElim1(Box<ProofTerm>),
    /// `snd p`
    AndElim2(Box<ProofTerm>),
    /// `inl p`
    OrIntro1(Box<ProofTerm>),
    /// `inr p`
    OrIntro2(Box<ProofTerm>),
    /// `case p of { inl h => a | inr k => b }`
    OrElim {
        scrutinee: Box<ProofTerm>,
        left_hyp: String,
        left: Box<ProofTerm>,
        right_hyp: String,
        right: Box<ProofTerm>,
    },
    /// `triv`
    TopIntro,
    /// `absurd[F] p`
    BotElim { proof: Box<ProofTerm>, target: Formula },
    /// `gen x:S => p`
    AllIntro { var: Var, body: Box<ProofTerm> },
    /// `p [t]`
    AllElim { proof: Box<ProofTerm>, witness: Term },
    /// `wit [t] p`
    ExIntro { witness: Term, proof: Box<ProofTerm> },
    /// `let [x:S, h] = p in b`
    ExElim {
        scrutinee: Box<ProofTerm>,
        var: Var,
        hyp: String,
        body: Box<ProofTerm>,
    },
    /// `(p : F)` — type ascription, erased by reduction
    Ascribe { proof: Box<ProofTerm>, formula: Formula },
}

/// Top constructor of a proof term.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HeadTag {
    Hyp,
    ImpIntro,
    ImpElim,
    AndIntro,
    AndElim1,
    AndElim2,
    OrIntro1,
    OrIntro2,
    OrElim,
    TopIntro,
    BotElim,
    AllIntro,
    AllElim,
    ExIntro,
    ExElim,
    Ascribe,
}

impl HeadTag {
    pub fn name(self) -> &'static str {
        match self {
            HeadTag::Hyp => "hypothesis",
            HeadTag::ImpIntro => "implication-intro",
            HeadTag::ImpElim => "implication-elim",
            HeadTag::AndIntro => "conjunction-intro",
            HeadTag::AndElim1 => "conjunction-elim-1",
            HeadTag::AndElim2 => "conjunction-elim-2",
            HeadTag::OrIntro1 => "disjunction-intro-1",
            HeadTag::OrIntro2 => "disjunction-intro-2",
            HeadTag::OrElim => "disjunction-elim",
            HeadTag::TopIntro => "truth-intro",
            HeadTag::BotElim => "absurdity-elim",
            HeadTag::AllIntro => "universal-intro",
            HeadTag::AllElim => "universal-elim",
            HeadTag::ExIntro => "existential-intro",
            HeadTag::ExElim => "existential-elim",
            HeadTag::Ascribe => "ascription",
        }
    }

    pub fn is_intro(self) -> bool {
        matches!(
            self,
            HeadTag::ImpIntro
                | HeadTag::AndIntro
                | HeadTag::OrIntro1
                | HeadTag::OrIntro2
                | HeadTag::TopIntro
                | HeadTag::AllIntro
                | HeadTag::ExIntro
        )
    }
}

impl ProofTerm {
    pub fn head(&self) -> HeadTag {
        match self {
            ProofTerm::Hyp(_) => HeadTag::Hyp,
            ProofTerm::ImpIntro { .. } => HeadTag::ImpIntro,
            ProofTerm::ImpElim { .. } => HeadTag::ImpElim,
            ProofTerm::AndIntro { .. } => HeadTag::AndIntro,
            ProofTerm::AndElim1(_) => HeadTag::AndElim1,
            ProofTerm::AndElim2(_) => HeadTag::AndElim2,
            ProofTerm::OrIntro1(_) => HeadTag::OrIntro1,
            ProofTerm::OrIntro2(_) => HeadTag::OrIntro2,
            ProofTerm::OrElim { .. } => HeadTag::OrElim,
            ProofTerm::TopIntro => HeadTag::TopIntro,
            ProofTerm::BotElim { .. } => HeadTag::BotElim,
            ProofTerm::AllIntro { .. } => HeadTag::AllIntro,
            ProofTerm::AllElim { .. } => HeadTag::AllElim,
            ProofTerm::ExIntro { .. } => HeadTag::ExIntro,
            ProofTerm::ExElim { .. } => HeadTag::ExElim,
            ProofTerm::Ascribe { .. } => HeadTag::Ascribe,
        }
    }

    /// Hypothesis variables not bound by `fun`, `case` or `let`.
    pub fn free_hyps(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.free_hyps_into(&mut Vec::new(), &mut out);
        out
    }

    fn free_hyps_into(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        match self {
            ProofTerm::Hyp(h) => {
                if !bound.iter().any(|b| b == h) {
                    out.insert(h.clone());
                }
            }
            ProofTerm::ImpIntro { hyp, body } => {
                bound.push(hyp.clone());
                body.free_hyps_into(bound, out);
                bound.pop();
            }
            ProofTerm::ImpElim { fun, arg } => {
                fun.free_hyps_into(bound, out);
                arg.free_hyps_into(bound, out);
            }
            ProofTerm::AndIntro { left, right } => {
                left.free_hyps_into(bound, out);
                right.free_hyps_into(bound, out);
            }
            ProofTerm::AndElim1(p) | ProofTerm::AndElim2(p) => p.free_hyps_into(bound, out),
            ProofTerm::OrIntro1(p) | ProofTerm::OrIntro2(p) => p.free_hyps_into(bound, out),
            ProofTerm::OrElim {
                scrutinee,
                left_hyp,
                left,
                right_hyp,
                right,
            } => {
                scrutinee.free_hyps_into(bound, out);
                bound.push(left_hyp.clone());
                left.free_hyps_into(bound, out);
                bound.pop();
                bound.push(right_hyp.clone());
                right.free_hyps_into(bound, out);
                bound.pop();
            }
            ProofTerm::TopIntro => {}
            ProofTerm::BotElim { proof, .. } => proof.free_hyps_into(bound, out),
            ProofTerm::AllIntro { body, .. } => body.free_hyps_into(bound, out),
            ProofTerm::AllElim { proof, .. } => proof.free_hyps_into(bound, out),
            ProofTerm::ExIntro { proof, .. } => proof.free_hyps_into(bound, out),
            ProofTerm::ExElim {
                scrutinee,
                hyp,
                body,
                ..
            } => {
                scrutinee.free_hyps_into(bound, out);
                bound.push(hyp.clone());
                body.free_hyps_into(bound, out);
                bound.pop();
            }
            ProofTerm::Ascribe { proof, .. } => proof.free_hyps_into(bound, out),
        }
    }

    pub fn is_closed(&self) -> bool {
        self.free_hyps().is_empty()
    }

    /// Object variables free in embedded witnesses and annotations.
    pub fn free_obj_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.free_obj_into(&mut Vec::new(), &mut out);
        out
    }

    fn free_obj_into(&self, bound: &mut Vec<Var>, out: &mut BTreeSet<Var>) {
        let add = |vars: BTreeSet<Var>, bound: &Vec<Var>, out: &mut BTreeSet<Var>| {
            for v in vars {
                if !bound.contains(&v) {
                    out.insert(v);
                }
            }
        };
        match self {
            ProofTerm::Hyp(_) | ProofTerm::TopIntro => {}
            ProofTerm::ImpIntro { body, .. } => body.free_obj_into(bound, out),
            ProofTerm::ImpElim { fun, arg } => {
                fun.free_obj_into(bound, out);
                arg.free_obj_into(bound, out);
            }
            ProofTerm::AndIntro { left, right } => {
                left.free_obj_into(bound, out);
                right.free_obj_into(bound, out);
            }
            ProofTerm::AndElim1(p)
            | ProofTerm::AndElim2(p)
            | ProofTerm::OrIntro1(p)
            | ProofTerm::OrIntro2(p) => p.free_obj_into(bound, out),
            ProofTerm::OrElim {
                scrutinee,
                left,
                right,
                ..
            } => {
                scrutinee.free_obj_into(bound, out);
                left.free_obj_into(bound, out);
                right.free_obj_into(bound, out);
            }
            ProofTerm::BotElim { proof, target } => {
                add(fv_formula(target), bound, out);
                proof.free_obj_into(bound, out);
            }
            ProofTerm::AllIntro { var, body } => {
                bound.push(var.clone());
                body.free_obj_into(bound, out);
                bound.pop();
            }
            ProofTerm::AllElim { proof, witness } => {
                add(fv_term(witness), bound, out);
                proof.free_obj_into(bound, out);
            }
            ProofTerm::ExIntro { witness, proof } => {
                add(fv_term(witness), bound, out);
                proof.free_obj_into(bound, out);
            }
            ProofTerm::ExElim {
                scrutinee,
                var,
                body,
                ..
            } => {
                scrutinee.free_obj_into(bound, out);
                bound.push(var.clone());
                body.free_obj_into(bound, out);
                bound.pop();
            }
            ProofTerm::Ascribe { proof, formula } => {
                add(fv_formula(formula), bound, out);
                proof.free_obj_into(bound, out);
            }
        }
    }

    /// Substitute a proof for a hypothesis variable, capture-avoiding.
    pub fn subst_hyp(&self, h: &str, q: &ProofTerm) -> ProofTerm {
        let qfree = q.free_hyps();
        self.subst_hyp_inner(h, q, &qfree)
    }

    fn subst_hyp_inner(&self, h: &str, q: &ProofTerm, qfree: &BTreeSet<String>) -> ProofTerm {
        let under =
            |binder: &str, body: &ProofTerm, rename_into: &dyn Fn(String, ProofTerm) -> ProofTerm| {
                if binder == h {
                    rename_into(binder.to_string(), body.clone())
                } else if qfree.contains(binder) {
                    let mut taken: BTreeSet<String> = qfree.clone();
                    taken.extend(body.free_hyps());
                    taken.insert(h.to_string());
                    let fresh = fresh_name(binder, &taken);
                    let renamed = body.subst_hyp_inner(binder, &ProofTerm::Hyp(fresh.clone()), &BTreeSet::new());
                    rename_into(fresh, renamed.subst_hyp_inner(h, q, qfree))
                } else {
                    rename_into(binder.to_string(), body.subst_hyp_inner(h, q, qfree))
                }
            };
        match self {
            ProofTerm::Hyp(name) => {
                if name == h {
                    q.clone()
                } else {
                    self.clone()
                }
            }
            ProofTerm::ImpIntro { hyp, body } => under(hyp, body, &|hyp, body| {
                ProofTerm::ImpIntro { hyp, body: Box::new(body) }
            }),
            ProofTerm::ImpElim { fun, arg } => ProofTerm::ImpElim {
                fun: Box::new(fun.subst_hyp_inner(h, q, qfree)),
                arg: Box::new(arg.subst_hyp_inner(h, q, qfree)),
            },
            ProofTerm::AndIntro { left, right } => ProofTerm::AndIntro {
                left: Box::new(left.subst_hyp_inner(h, q, qfree)),
                right: Box::new(right.subst_hyp_inner(h, q, qfree)),
            },
            ProofTerm::AndElim1(p) => ProofTerm::AndElim1(Box::new(p.subst_hyp_inner(h, q, qfree))),
            ProofTerm::AndElim2(p) => ProofTerm::AndElim2(Box::new(p.subst_hyp_inner(h, q, qfree))),
            ProofTerm::OrIntro1(p) => ProofTerm::OrIntro1(Box::new(p.subst_hyp_inner(h, q, qfree))),
            ProofTerm::OrIntro2(p) => ProofTerm::OrIntro2(Box::new(p.subst_hyp_inner(h, q, qfree))),
            ProofTerm::OrElim {
                scrutinee,
                left_hyp,
                left,
                right_hyp,
                right,
            } => {
                let scrutinee = Box::new(scrutinee.subst_hyp_inner(h, q, qfree));
                let (lh, lb) = match under(left_hyp, left, &|hyp, body| ProofTerm::ImpIntro {
                    hyp,
                    body: Box::new(body),
                }) {
                    ProofTerm::ImpIntro { hyp, body } => (hyp, *body),
                    _ => unreachable!(),
                };
                let (rh, rb) = match under(right_hyp, right, &|hyp, body| ProofTerm::ImpIntro {
                    hyp,
                    body: Box::new(body),
                }) {
                    ProofTerm::ImpIntro { hyp, body } => (hyp, *body),
                    _ => unreachable!(),
                };
                ProofTerm::OrElim {
                    scrutinee,
                    left_hyp: lh,
                    left: Box::new(lb),
                    right_hyp: rh,
                    right: Box::new(rb),
                }
            }
            ProofTerm::TopIntro => ProofTerm::TopIntro,
            ProofTerm::BotElim { proof, target } => ProofTerm::BotElim {
                proof: Box::new(proof.subst_hyp_inner(h, q, qfree)),
                target: target.clone(),
            },
            ProofTerm::AllIntro { var, body } => ProofTerm::AllIntro {
                var: var.clone(),
                body: Box::new(body.subst_hyp_inner(h, q, qfree)),
            },
            ProofTerm::AllElim { proof, witness } => ProofTerm::AllElim {
                proof: Box::new(proof.subst_hyp_inner(h, q, qfree)),
                witness: witness.clone(),
            },
            ProofTerm::ExIntro { witness, proof } => ProofTerm::ExIntro {
                witness: witness.clone(),
                proof: Box::new(proof.subst_hyp_inner(h, q, qfree)),
            },
            ProofTerm::ExElim {
                scrutinee,
                var,
                hyp,
                body,
            } => {
                let scrutinee = Box::new(scrutinee.subst_hyp_inner(h, q, qfree));
                let (nh, nb) = match under(hyp, body, &|hyp, body| ProofTerm::ImpIntro {
                    hyp,
                    body: Box::new(body),
                }) {
                    ProofTerm::ImpIntro { hyp, body } => (hyp, *body),
                    _ => unreachable!(),
                };
                ProofTerm::ExElim {
                    scrutinee,
                    var: var.clone(),
                    hyp: nh,
                    body: Box::new(nb),
                }
            }
            ProofTerm::Ascribe { proof, formula } => ProofTerm::Ascribe {
                proof: Box::new(proof.subst_hyp_inner(h, q, qfree)),
                formula: formula.clone(),
            },
        }
    }

    /// Substitute a term for an object variable in witnesses and
    /// annotations, renaming `gen`/`let` binders that would capture.
    pub fn subst_obj(&self, x: &Var, t: &Term) -> ProofTerm {
        let mut binding = Binding::new();
        binding.insert(x.clone(), t.clone());
        self.subst_obj_binding(&binding)
    }

    pub fn subst_obj_binding(&self, binding: &Binding) -> ProofTerm {
        if binding.is_empty() {
            return self.clone();
        }
        match self {
            ProofTerm::Hyp(_) | ProofTerm::TopIntro => self.clone(),
            ProofTerm::ImpIntro { hyp, body } => ProofTerm::ImpIntro {
                hyp: hyp.clone(),
                body: Box::new(body.subst_obj_binding(binding)),
            },
            ProofTerm::ImpElim { fun, arg } => ProofTerm::ImpElim {
                fun: Box::new(fun.subst_obj_binding(binding)),
                arg: Box::new(arg.subst_obj_binding(binding)),
            },
            ProofTerm::AndIntro { left, right } => ProofTerm::AndIntro {
                left: Box::new(left.subst_obj_binding(binding)),
                right: Box::new(right.subst_obj_binding(binding)),
            },
            ProofTerm::AndElim1(p) => ProofTerm::AndElim1(Box::new(p.subst_obj_binding(binding))),
            ProofTerm::AndElim2(p) => ProofTerm::AndElim2(Box::new(p.subst_obj_binding(binding))),
            ProofTerm::OrIntro1(p) => ProofTerm::OrIntro1(Box::new(p.subst_obj_binding(binding))),
            ProofTerm::OrIntro2(p) => ProofTerm::OrIntro2(Box::new(p.subst_obj_binding(binding))),
            ProofTerm::OrElim {
                scrutinee,
                left_hyp,
                left,
                right_hyp,
                right,
            } => ProofTerm::OrElim {
                scrutinee: Box::new(scrutinee.subst_obj_binding(binding)),
                left_hyp: left_hyp.clone(),
                left: Box::new(left.subst_obj_binding(binding)),
                right_hyp: right_hyp.clone(),
                right: Box::new(right.subst_obj_binding(binding)),
            },
            ProofTerm::BotElim { proof, target } => ProofTerm::BotElim {
                proof: Box::new(proof.subst_obj_binding(binding)),
                target: subst_formula(target, binding),
            },
            ProofTerm::AllIntro { var, body } => {
                let (var, inner) = self.rebind(var, body, binding);
                ProofTerm::AllIntro {
                    var,
                    body: Box::new(inner),
                }
            }
            ProofTerm::AllElim { proof, witness } => ProofTerm::AllElim {
                proof: Box::new(proof.subst_obj_binding(binding)),
                witness: subst_term(witness, binding),
            },
            ProofTerm::ExIntro { witness, proof } => ProofTerm::ExIntro {
                witness: subst_term(witness, binding),
                proof: Box::new(proof.subst_obj_binding(binding)),
            },
            ProofTerm::ExElim {
                scrutinee,
                var,
                hyp,
                body,
            } => {
                let scrutinee = Box::new(scrutinee.subst_obj_binding(binding));
                let (var, inner) = self.rebind(var, body, binding);
                ProofTerm::ExElim {
                    scrutinee,
                    var,
                    hyp: hyp.clone(),
                    body: Box::new(inner),
                }
            }
            ProofTerm::Ascribe { proof, formula } => ProofTerm::Ascribe {
                proof: Box::new(proof.subst_obj_binding(binding)),
                formula: subst_formula(formula, binding),
            },
        }
    }

    fn rebind(&self, var: &Var, body: &ProofTerm, binding: &Binding) -> (Var, ProofTerm) {
        let mut inner: Binding = binding
            .iter()
            .filter(|(k, _)| *k != var)
            .map(|(k, t)| (k.clone(), t.clone()))
            .collect();
        let range_names: BTreeSet<String> = inner
            .values()
            .flat_map(|t| fv_term(t).into_iter().map(|v| v.name))
            .collect();
        if range_names.contains(&var.name) {
            let mut taken = range_names;
            taken.extend(body.free_obj_vars().into_iter().map(|v| v.name));
            let nv = Var::new(fresh_name(&var.name, &taken), var.sort);
            inner.insert(var.clone(), Term::Var(nv.clone()));
            (nv, body.subst_obj_binding(&inner))
        } else {
            (var.clone(), body.subst_obj_binding(&inner))
        }
    }
}

// ---------------------------------------------------------------------------
// printing

fn is_prim(p: &ProofTerm) -> bool {
    matches!(
        p,
        ProofTerm::Hyp(_)
            | ProofTerm::TopIntro
            | ProofTerm::AndIntro { .. }
            | ProofTerm::AndElim1(_)
            | ProofTerm::AndElim2(_)
            | ProofTerm::OrIntro1(_)
            | ProofTerm::OrIntro2(_)
            | ProofTerm::BotElim { .. }
            | ProofTerm::Ascribe { .. }
    )
}

fn write_prim(out: &mut String, p: &ProofTerm) {
    match p {
        ProofTerm::Hyp(h) => out.push_str(h),
        ProofTerm::TopIntro => out.push_str("triv"),
        ProofTerm::AndIntro { left, right } => {
            out.push('(');
            write_proof(out, left);
            out.push_str(", ");
            write_proof(out, right);
            out.push(')');
        }
        ProofTerm::AndElim1(q) => {
            out.push_str("fst ");
            write_operand(out, q);
        }
        ProofTerm::AndElim2(q) => {
            out.push_str("snd ");
            write_operand(out, q);
        }
        ProofTerm::OrIntro1(q) => {
            out.push_str("inl ");
            write_operand(out, q);
        }
        ProofTerm::OrIntro2(q) => {
            out.push_str("inr ");
            write_operand(out, q);
        }
        ProofTerm::BotElim { proof, target } => {
            out.push_str("absurd[");
            out.push_str(&target.to_string());
            out.push_str("] ");
            write_operand(out, proof);
        }
        ProofTerm::Ascribe { proof, formula } => {
            out.push('(');
            write_proof(out, proof);
            out.push_str(" : ");
            out.push_str(&formula.to_string());
            out.push(')');
        }
        other => {
            out.push('(');
            write_proof(out, other);
            out.push(')');
        }
    }
}

fn write_operand(out: &mut String, p: &ProofTerm) {
    if matches!(
        p,
        ProofTerm::Hyp(_) | ProofTerm::TopIntro | ProofTerm::AndIntro { .. } | ProofTerm::Ascribe { .. }
    ) {
        write_prim(out, p);
    } else {
        out.push('(');
        write_proof(out, p);
        out.push(')');
    }
}

fn write_proof(out: &mut String, p: &ProofTerm) {
    match p {
        ProofTerm::ImpIntro { hyp, body } => {
            out.push_str("fun ");
            out.push_str(hyp);
            out.push_str(" => ");
            write_proof(out, body);
        }
        ProofTerm::AllIntro { var, body } => {
            out.push_str("gen ");
            out.push_str(&var.name);
            out.push(':');
            out.push_str(var.sort.name());
            out.push_str(" => ");
            write_proof(out, body);
        }
        ProofTerm::ExIntro { witness, proof } => {
            out.push_str("wit [");
            out.push_str(&witness.to_string());
            out.push_str("] ");
            write_proof(out, proof);
        }
        ProofTerm::OrElim {
            scrutinee,
            left_hyp,
            left,
            right_hyp,
            right,
        } => {
            out.push_str("case ");
            write_proof(out, scrutinee);
            out.push_str(" of { inl ");
            out.push_str(left_hyp);
            out.push_str(" => ");
            write_proof(out, left);
            out.push_str(" | inr ");
            out.push_str(right_hyp);
            out.push_str(" => ");
            write_proof(out, right);
            out.push_str(" }");
        }
        ProofTerm::ExElim {
            scrutinee,
            var,
            hyp,
            body,
        } => {
            out.push_str("let [");
            out.push_str(&var.name);
            out.push(':');
            out.push_str(var.sort.name());
            out.push_str(", ");
            out.push_str(hyp);
            out.push_str("] = ");
            write_proof(out, scrutinee);
            out.push_str(" in ");
            write_proof(out, body);
        }
        ProofTerm::ImpElim { fun, arg } => {
            match &**fun {
                f @ (ProofTerm::ImpElim { .. } | ProofTerm::AllElim { .. }) => write_proof(out, f),
                f => write_prim(out, f),
            }
            out.push(' ');
            write_prim(out, arg);
        }
        ProofTerm::AllElim { proof, witness } => {
            match &**proof {
                f @ (ProofTerm::ImpElim { .. } | ProofTerm::AllElim { .. }) => write_proof(out, f),
                f => write_prim(out, f),
            }
            out.push_str(" [");
            out.push_str(&witness.to_string());
            out.push(']');
        }
        other if is_prim(other) => write_prim(out, other),
        other => write_prim(out, other),
    }
}

impl fmt::Display for ProofTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        write_proof(&mut s, self);
        f.write_str(&s)
    }
}

/// An ordered hypothesis list with the ambient rewrite system.
#[derive(Debug, Clone)]
pub struct Context<'a> {
    pub hyps: Vec<(String, Formula)>,
    pub system: &'a crate::rewrite::RewriteSystem,
}

impl<'a> Context<'a> {
    pub fn new(system: &'a crate::rewrite::RewriteSystem) -> Self {
        Context {
            hyps: Vec::new(),
            system,
        }
    }

    pub fn with_hyps(
        system: &'a crate::rewrite::RewriteSystem,
        hyps: Vec<(String, Formula)>,
    ) -> Self {
        Context { hyps, system }
    }
}
