//! A deduction-modulo kernel for a pointed-graph presentation of Zermelo
//! set theory: multi-sorted first-order syntax, oriented rewriting and the
//! induced congruence, natural-deduction proof terms checked modulo that
//! congruence, finite pointed-graph semantics with a hereditarily-finite-set
//! oracle, and the syntactic translations between the object theories.

pub mod lang;
pub mod rewrite;
pub mod proof;
pub mod graphs;
pub mod translate;
