//! Language membership checks for translation inputs and outputs.

use crate::lang::ast::{Formula, PredSym, Sort, Term};

use super::TranslateError;

/// The base set theory: atoms `=`/`in` over Set variables, quantifiers over
/// Set, no other syntax.
pub fn check_zst(f: &Formula) -> Result<(), TranslateError> {
    let term_ok = |t: &Term| -> Result<(), TranslateError> {
        match t {
            Term::Var(v) if v.sort == Sort::Set => Ok(()),
            other => Err(TranslateError::NotZst(format!("term `{}`", other))),
        }
    };
    match f {
        Formula::Atom(PredSym::Eq | PredSym::In, args) if args.len() == 2 => {
            term_ok(&args[0])?;
            term_ok(&args[1])
        }
        Formula::Atom(p, _) => Err(TranslateError::NotZst(format!("atom `{}`", p.token()))),
        Formula::True | Formula::False => Ok(()),
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
            check_zst(a)?;
            check_zst(b)
        }
        Formula::Forall(v, b) | Formula::Exists(v, b) => {
            if v.sort != Sort::Set {
                return Err(TranslateError::NotZst(format!(
                    "quantifier over sort {}",
                    v.sort
                )));
            }
            check_zst(b)
        }
        Formula::Meta(_) => Err(TranslateError::NotZst("metavariable".into())),
    }
}

/// The two-sorted theory with classes: atoms `=`/`in`/`mem` (plus the
/// arithmetic notations `Nat`/`Ind`/`Succ`/`Empty`) over variables only.
pub fn check_zclass(f: &Formula) -> Result<(), TranslateError> {
    let var_ok = |t: &Term, want: Sort| -> Result<(), TranslateError> {
        match t {
            Term::Var(v) if v.sort == want => Ok(()),
            other => Err(TranslateError::NotZclass(format!(
                "term `{}` (expected a {} variable)",
                other, want
            ))),
        }
    };
    match f {
        Formula::Atom(PredSym::Eq | PredSym::In, args) if args.len() == 2 => {
            var_ok(&args[0], Sort::Set)?;
            var_ok(&args[1], Sort::Set)
        }
        Formula::Atom(PredSym::Mem, args) if args.len() == 2 => {
            var_ok(&args[0], Sort::Set)?;
            var_ok(&args[1], Sort::Class)
        }
        Formula::Atom(PredSym::Nat | PredSym::IndP | PredSym::EmptyP, args) if args.len() == 1 => {
            var_ok(&args[0], Sort::Set)
        }
        Formula::Atom(PredSym::SuccP, args) if args.len() == 2 => {
            var_ok(&args[0], Sort::Set)?;
            var_ok(&args[1], Sort::Set)
        }
        Formula::Atom(p, _) => Err(TranslateError::NotZclass(format!("atom `{}`", p.token()))),
        Formula::True | Formula::False => Ok(()),
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
            check_zclass(a)?;
            check_zclass(b)
        }
        Formula::Forall(v, b) | Formula::Exists(v, b) => {
            if v.sort != Sort::Set && v.sort != Sort::Class {
                return Err(TranslateError::NotZclass(format!(
                    "quantifier over sort {}",
                    v.sort
                )));
            }
            check_zclass(b)
        }
        Formula::Meta(_) => Err(TranslateError::NotZclass("metavariable".into())),
    }
}
