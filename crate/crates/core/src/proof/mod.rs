//! Natural deduction modulo: proof terms, checking modulo the congruence,
//! proof reduction, and witness extraction from normal proofs.

pub mod check;
pub mod parse;
pub mod reduce;
pub mod term;

pub use check::{check, Checker, Judgment, Status};
pub use parse::{parse_proof_term, parse_proofs, ProofDecl};
pub use reduce::{head_of_normal, is_normal, reduce, replay_proof};
pub use term::{Context, HeadTag, ProofTerm};

use thiserror::Error;

use crate::lang::ast::{Formula, Term};
use crate::rewrite::{normalize_formula, Outcome};

#[derive(Debug, Error)]
pub enum ProofError {
    #[error(transparent)]
    Lang(Box<crate::lang::LangError>),
    #[error("{0}")]
    Syntax(String),
    #[error("unknown rule set `{0}` (proof files name a built-in rule set)")]
    UnknownRuleset(String),
    #[error("the proof term is not normal")]
    NotNormal,
    #[error("the proof term has free hypothesis variables")]
    NotClosed,
    #[error("reduction trace step {step}: `{rule}` does not apply at the recorded position")]
    ReplayMismatch { step: usize, rule: String },
    #[error("check failed: {0}")]
    CheckFailed(String),
    #[error("undetermined: {0}")]
    Undetermined(String),
    #[error("{0}")]
    WitnessShape(String),
}

/// Witness of a normal proof checked at an existential formula: the witness
/// term of the top existential-intro and the subproof, checkable at the
/// instantiated body.
pub fn extract_witness(
    ctx: &Context<'_>,
    p: &ProofTerm,
    phi: &Formula,
    fuel: u64,
) -> Result<(Term, ProofTerm), ProofError> {
    if !reduce::is_normal(p) {
        return Err(ProofError::NotNormal);
    }
    let nf = normalize_formula(phi, ctx.system, fuel, false);
    match nf.outcome {
        Outcome::NormalForm(Formula::Exists(_, _)) => {}
        Outcome::NormalForm(other) => {
            return Err(ProofError::WitnessShape(format!(
                "`{}` does not normalize to an existential (normal form `{}`)",
                phi, other
            )))
        }
        Outcome::FuelExhausted(_) => {
            return Err(ProofError::Undetermined(format!(
                "normalization of `{}` exhausted fuel {}",
                phi, fuel
            )))
        }
    }
    match check::check(ctx, p, phi, fuel).status {
        Status::Checked => {}
        Status::Failed(m) => return Err(ProofError::CheckFailed(m)),
        Status::Undetermined(m) => return Err(ProofError::Undetermined(m)),
    }
    match p {
        ProofTerm::ExIntro { witness, proof } => Ok((witness.clone(), (**proof).clone())),
        other => Err(ProofError::WitnessShape(format!(
            "normal proof has head {}, not an existential introduction",
            other.head().name()
        ))),
    }
}
