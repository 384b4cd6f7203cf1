//! Oriented rewriting on terms and atomic formulas, normalization under a
//! fuel budget, and the congruence of deduction modulo.

pub mod axioms;
pub mod builtin;
pub mod matching;
pub mod normalize;
pub mod rule;

pub use axioms::{axiomatize, schematic_rules};
pub use builtin::{arith_rules, naive_comprehension_rules, zermod_rules};
pub use normalize::{
    congruent, normalize_formula, normalize_term, reduce_atom, replay_formula, replay_term,
    Congruence,
};
pub use rule::{Rule, RuleBody, RewriteSystem, SchemaShape, DEFAULT_FUEL};

use thiserror::Error;

use crate::lang::LangError;

/// One recorded rewrite step: the rule that fired and the position (child
/// indices from the root; inside an atom the first index selects the
/// argument, the rest descend into the term).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub rule: String,
    pub pos: Vec<usize>,
}

impl std::fmt::Display for TraceStep {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let pos: Vec<String> = self.pos.iter().map(|p| p.to_string()).collect();
        write!(
            f,
            "{} @ {}",
            self.rule,
            if pos.is_empty() { "root".to_string() } else { pos.join(".") }
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome<T> {
    NormalForm(T),
    FuelExhausted(T),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalizationResult<T> {
    pub outcome: Outcome<T>,
    /// rewrite steps performed
    pub steps: u64,
    pub trace: Option<Vec<TraceStep>>,
}

impl<T> NormalizationResult<T> {
    pub fn value(&self) -> &T {
        match &self.outcome {
            Outcome::NormalForm(v) | Outcome::FuelExhausted(v) => v,
        }
    }

    pub fn into_value(self) -> T {
        match self.outcome {
            Outcome::NormalForm(v) | Outcome::FuelExhausted(v) => v,
        }
    }

    pub fn is_normal(&self) -> bool {
        matches!(self.outcome, Outcome::NormalForm(_))
    }
}

#[derive(Debug, Error)]
pub enum RewriteError {
    #[error("rule file line {line}: {source}")]
    RuleFile {
        line: usize,
        #[source]
        source: Box<LangError>,
    },
    #[error("reduce_atom requires an atomic formula")]
    NotAtomic,
    #[error("unknown rule `{0}`")]
    UnknownRule(String),
    #[error("trace step {step}: rule `{rule}` does not apply at the recorded position")]
    ReplayMismatch { step: usize, rule: String },
}
