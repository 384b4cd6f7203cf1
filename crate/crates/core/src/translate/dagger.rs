//! Translation of set-theory formulas into the graph theory: `=` becomes
//! bisimilarity, `in` stays membership, quantifiers move to the graph sort.

use crate::lang::ast::{Formula, PredSym, Sort, Term, Var};

use super::TranslateError;

fn var(v: &Var) -> Result<Var, TranslateError> {
    if v.sort != Sort::Set {
        return Err(TranslateError::NotZst(format!(
            "variable {} has sort {}",
            v.name, v.sort
        )));
    }
    Ok(Var::new(v.name.clone(), Sort::G))
}

fn term(t: &Term) -> Result<Term, TranslateError> {
    match t {
        Term::Var(v) => Ok(Term::Var(var(v)?)),
        other => Err(TranslateError::NotZst(format!(
            "`{}` is not a variable (the base set theory has no function symbols)",
            other
        ))),
    }
}

/// Structure-preserving translation of a Zst formula.
pub fn dagger(f: &Formula) -> Result<Formula, TranslateError> {
    match f {
        Formula::Atom(PredSym::Eq, args) if args.len() == 2 => Ok(Formula::Atom(
            PredSym::Approx,
            vec![term(&args[0])?, term(&args[1])?],
        )),
        Formula::Atom(PredSym::In, args) if args.len() == 2 => Ok(Formula::Atom(
            PredSym::In,
            vec![term(&args[0])?, term(&args[1])?],
        )),
        Formula::Atom(p, _) => Err(TranslateError::NotZst(format!(
            "atom `{}` is not in the base set-theory language",
            p.token()
        ))),
        Formula::True => Ok(Formula::True),
        Formula::False => Ok(Formula::False),
        Formula::And(a, b) => Ok(Formula::and(dagger(a)?, dagger(b)?)),
        Formula::Or(a, b) => Ok(Formula::or(dagger(a)?, dagger(b)?)),
        Formula::Imp(a, b) => Ok(Formula::imp(dagger(a)?, dagger(b)?)),
        Formula::Forall(v, body) => Ok(Formula::forall(var(v)?, dagger(body)?)),
        Formula::Exists(v, body) => Ok(Formula::exists(var(v)?, dagger(body)?)),
        Formula::Meta(_) => Err(TranslateError::NotZst("metavariable".into())),
    }
}
