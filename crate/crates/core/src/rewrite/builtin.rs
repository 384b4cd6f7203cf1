//! The three built-in rule sets, parsed once from the bundled fixture files.

use once_cell::sync::Lazy;

use crate::lang::sig::Lang;

use super::rule::RewriteSystem;

pub const ZERMOD_RULES_TEXT: &str = include_str!("../../fixtures/zermod.rules");
pub const ARITH_RULES_TEXT: &str = include_str!("../../fixtures/arith.rules");
pub const NAIVE_RULES_TEXT: &str = include_str!("../../fixtures/naive.rules");

static ZERMOD: Lazy<RewriteSystem> = Lazy::new(|| {
    RewriteSystem::parse("zermod", Lang::Zermod, ZERMOD_RULES_TEXT)
        .expect("bundled zermod rule set parses")
});

static ARITH: Lazy<RewriteSystem> = Lazy::new(|| {
    RewriteSystem::parse("arith", Lang::Arith, ARITH_RULES_TEXT)
        .expect("bundled arith rule set parses")
});

static NAIVE: Lazy<RewriteSystem> = Lazy::new(|| {
    RewriteSystem::parse("naive", Lang::Naive, NAIVE_RULES_TEXT)
        .expect("bundled naive rule set parses")
});

/// The graph-theory rule set.
pub fn zermod_rules() -> &'static RewriteSystem {
    &ZERMOD
}

/// The arithmetic demo rule set.
pub fn arith_rules() -> &'static RewriteSystem {
    &ARITH
}

/// The naive-comprehension demo rule set (non-terminating by design).
pub fn naive_comprehension_rules() -> &'static RewriteSystem {
    &NAIVE
}
