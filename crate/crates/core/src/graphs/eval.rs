//! Desk-scale evaluation of quantifier-free formulas: over the graph
//! semantics (atoms `in` / `~~` with graph-sorted terms) and over the
//! hereditarily-finite-set oracle (atoms `in` / `=`).

use std::collections::BTreeMap;

use crate::lang::ast::{Formula, FunSym, PredSym, Term};

use super::bisim::{bisimilar, member};
use super::construct::{pair_graph, pow_graph, tc_graph, union_graph};
use super::graph::PointedGraph;
use super::hfset::HfSet;
use super::GraphError;

fn eval_graph_term(
    t: &Term,
    env: &BTreeMap<String, PointedGraph>,
) -> Result<PointedGraph, GraphError> {
    match t {
        Term::Var(v) => env
            .get(&v.name)
            .cloned()
            .ok_or_else(|| GraphError::Unsupported(format!("unbound graph variable {}", v.name))),
        Term::App(FunSym::Union, args) => Ok(union_graph(&eval_graph_term(&args[0], env)?)),
        Term::App(FunSym::Pair, args) => Ok(pair_graph(
            &eval_graph_term(&args[0], env)?,
            &eval_graph_term(&args[1], env)?,
        )),
        Term::App(FunSym::Pow, args) => Ok(pow_graph(&eval_graph_term(&args[0], env)?)),
        Term::App(FunSym::Tc, args) => Ok(tc_graph(&eval_graph_term(&args[0], env)?)),
        _ => Err(GraphError::Unsupported(format!(
            "term `{}` has no finite graph evaluation",
            t
        ))),
    }
}

/// Evaluate a quantifier-free formula over `in`/`~~` atoms with graph
/// parameters (`in` as membership, `~~` as bisimilarity).
pub fn eval_graph_formula(
    f: &Formula,
    env: &BTreeMap<String, PointedGraph>,
) -> Result<bool, GraphError> {
    match f {
        Formula::True => Ok(true),
        Formula::False => Ok(false),
        Formula::And(a, b) => Ok(eval_graph_formula(a, env)? && eval_graph_formula(b, env)?),
        Formula::Or(a, b) => Ok(eval_graph_formula(a, env)? || eval_graph_formula(b, env)?),
        Formula::Imp(a, b) => Ok(!eval_graph_formula(a, env)? || eval_graph_formula(b, env)?),
        Formula::Atom(PredSym::In, args) => {
            let a = eval_graph_term(&args[0], env)?;
            let b = eval_graph_term(&args[1], env)?;
            Ok(member(&a, &b))
        }
        Formula::Atom(PredSym::Approx, args) => {
            let a = eval_graph_term(&args[0], env)?;
            let b = eval_graph_term(&args[1], env)?;
            Ok(bisimilar(&a, &b).is_some())
        }
        Formula::Atom(p, _) => Err(GraphError::Unsupported(format!(
            "atom `{}` has no graph evaluation",
            p.token()
        ))),
        Formula::Forall(_, _) | Formula::Exists(_, _) => Err(GraphError::Unsupported(
            "quantifiers range over an infinite domain".into(),
        )),
        Formula::Meta(_) => Err(GraphError::Unsupported("metavariable".into())),
    }
}

/// Build a comprehension predicate from a formula with one designated free
/// graph variable.
pub fn formula_predicate<'a>(
    f: &'a Formula,
    var: &'a str,
    params: &'a BTreeMap<String, PointedGraph>,
) -> impl FnMut(&PointedGraph) -> Result<bool, GraphError> + 'a {
    move |g: &PointedGraph| {
        let mut env = params.clone();
        env.insert(var.to_string(), g.clone());
        eval_graph_formula(f, &env)
    }
}

/// Evaluate a quantifier-free set-theory formula over `=`/`in` atoms in the
/// hereditarily-finite-set oracle.
pub fn eval_hf_formula(
    f: &Formula,
    env: &BTreeMap<String, HfSet>,
) -> Result<bool, GraphError> {
    let term = |t: &Term| -> Result<HfSet, GraphError> {
        match t {
            Term::Var(v) => env.get(&v.name).cloned().ok_or_else(|| {
                GraphError::Unsupported(format!("unbound set variable {}", v.name))
            }),
            _ => Err(GraphError::Unsupported(format!(
                "term `{}` has no oracle evaluation",
                t
            ))),
        }
    };
    match f {
        Formula::True => Ok(true),
        Formula::False => Ok(false),
        Formula::And(a, b) => Ok(eval_hf_formula(a, env)? && eval_hf_formula(b, env)?),
        Formula::Or(a, b) => Ok(eval_hf_formula(a, env)? || eval_hf_formula(b, env)?),
        Formula::Imp(a, b) => Ok(!eval_hf_formula(a, env)? || eval_hf_formula(b, env)?),
        Formula::Atom(PredSym::Eq, args) => Ok(term(&args[0])? == term(&args[1])?),
        Formula::Atom(PredSym::In, args) => Ok(term(&args[1])?.contains(&term(&args[0])?)),
        Formula::Atom(p, _) => Err(GraphError::Unsupported(format!(
            "atom `{}` has no oracle evaluation",
            p.token()
        ))),
        Formula::Forall(_, _) | Formula::Exists(_, _) => Err(GraphError::Unsupported(
            "quantifier-free formulas only".into(),
        )),
        Formula::Meta(_) => Err(GraphError::Unsupported("metavariable".into())),
    }
}
