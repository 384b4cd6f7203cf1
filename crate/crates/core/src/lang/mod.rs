//! Abstract syntax, sorting, substitution, parsing and printing for the
//! object languages.

pub mod ast;
pub mod check;
pub mod parse;
pub mod print;
pub mod sig;
pub mod subst;

pub use ast::{
    ClassComprTerm, ComprTerm, Formula, FunSym, MetaAtom, NodeClassTerm, NodeRelTerm, Parsed,
    PredSym, SetComprTerm, Sort, Term, Var,
};
pub use check::{check_sorts, check_sorts_in_rule, sort_of_opt, SortReport};
pub use parse::{parse, parse_formula, parse_formula_with_pins, parse_term, parse_term_with_pins};
pub use print::{formula_to_string, term_to_string};
pub use sig::{Lang, Signature};
pub use subst::{alpha_eq, alpha_eq_term, fv_formula, fv_term, substitute, Binding};

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum LangError {
    #[error("parse error at {line}:{col}: {msg}")]
    Parse { line: u32, col: u32, msg: String },
    #[error("sort error at [{path}]: {msg}")]
    Sort { path: String, msg: String },
    #[error("variable {var} used at sort {found}, expected {expected}")]
    SortMismatch { var: String, expected: Sort, found: Sort },
    #[error("symbol {symbol} is not in the {} signature", lang.name())]
    UnknownSymbol { symbol: String, lang: Lang },
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::ast::*;
    use super::*;

    fn zf(text: &str) -> Formula {
        parse_formula(text, Lang::Zermod).unwrap()
    }

    fn zt(text: &str) -> Term {
        parse_term(text, Lang::Zermod).unwrap()
    }

    #[test]
    fn parse_root_slash_is_a_node_term() {
        match parse("root(a / x)", Lang::Zermod).unwrap() {
            Parsed::Term(t) => assert_eq!(sort_of_opt(&t), Some(Sort::N)),
            other => panic!("expected a term, got {:?}", other),
        }
    }

    #[test]
    fn parse_node_eq_rhs_has_one_universal() {
        let f = zf("forall p:C. (mem(y, p) -> mem(z, p))");
        match f {
            Formula::Forall(v, body) => {
                assert_eq!(v.sort, Sort::C);
                assert!(matches!(*body, Formula::Imp(_, _)));
            }
            other => panic!("expected a universal, got {}", other),
        }
    }

    #[test]
    fn parse_rejects_wrong_arity() {
        let err = parse("root(a, b)", Lang::Zermod).unwrap_err();
        assert!(err.to_string().contains("root"), "{}", err);
    }

    #[test]
    fn parse_infers_free_variable_sorts() {
        let f = zf("eta(a, x, y)");
        let fv = fv_formula(&f);
        let sort_of = |n: &str| fv.iter().find(|v| v.name == n).unwrap().sort;
        assert_eq!(sort_of("a"), Sort::G);
        assert_eq!(sort_of("x"), Sort::N);
        assert_eq!(sort_of("y"), Sort::N);
    }

    #[test]
    fn substitute_two_for_x() {
        let f = parse_formula("2 * x = 4", Lang::Arith).unwrap();
        let mut b = Binding::new();
        b.insert(Var::new("x", Sort::N), Term::numeral(2));
        let got = substitute(&f, &b).unwrap();
        assert_eq!(got, parse_formula("2 * 2 = 4", Lang::Arith).unwrap());
    }

    #[test]
    fn substitute_identity_is_alpha_equivalent() {
        let f = zf("exists y:N. mem(x, p) -> Null(y)");
        let mut b = Binding::new();
        b.insert(Var::new("x", Sort::N), Term::var("x", Sort::N));
        let got = substitute(&f, &b).unwrap();
        assert!(alpha_eq(&got, &f));
    }

    #[test]
    fn substitute_avoids_capture() {
        // (exists y. x = y)[x <- y] must rename the binder
        let f = zf("exists y:N. x = y");
        let mut b = Binding::new();
        b.insert(Var::new("x", Sort::N), Term::var("y", Sort::N));
        let got = substitute(&f, &b).unwrap();
        match &got {
            Formula::Exists(v, body) => {
                assert_ne!(v.name, "y", "binder must move out of the way");
                assert_eq!(
                    **body,
                    Formula::Atom(
                        PredSym::Eq,
                        vec![Term::var("y", Sort::N), Term::Var(v.clone())]
                    )
                );
            }
            other => panic!("unexpected {}", other),
        }
    }

    #[test]
    fn substitute_rejects_sort_mismatch() {
        let f = zf("Null(x)");
        let mut b = Binding::new();
        b.insert(Var::new("x", Sort::N), Term::var("g", Sort::G));
        assert!(substitute(&f, &b).is_err());
    }

    #[test]
    fn substitution_composes_when_free_vars_allow() {
        // substitute(substitute(P, x<-t), y<-u) = simultaneous when x not free in u
        let p = zf("eta(a, x, y)");
        let t = zt("i(y)");
        let u = zt("o");
        let (x, y) = (Var::new("x", Sort::N), Var::new("y", Sort::N));
        let mut b1 = Binding::new();
        b1.insert(x.clone(), t.clone());
        let mut b2 = Binding::new();
        b2.insert(y.clone(), u.clone());
        let sequential = substitute(&substitute(&p, &b1).unwrap(), &b2).unwrap();
        let mut sim = Binding::new();
        sim.insert(x, subst::subst_term(&t, &b2));
        sim.insert(y, u);
        let simultaneous = substitute(&p, &sim).unwrap();
        assert!(alpha_eq(&sequential, &simultaneous));
    }

    // An independent alpha-equivalence oracle: rename binders to numbered
    // names in traversal order and compare structurally.
    fn canon_oracle(f: &Formula) -> Formula {
        fn go_t(t: &Term, env: &mut Vec<(String, String)>) -> Term {
            match t {
                Term::Var(v) => {
                    let name = env
                        .iter()
                        .rev()
                        .find(|(n, _)| *n == v.name)
                        .map(|(_, c)| c.clone())
                        .unwrap_or_else(|| v.name.clone());
                    Term::Var(Var::new(name, v.sort))
                }
                Term::App(f, args) => {
                    Term::App(*f, args.iter().map(|a| go_t(a, env)).collect())
                }
                other => other.clone(), // binder families unused by these cases
            }
        }
        fn go(f: &Formula, env: &mut Vec<(String, String)>, k: &mut usize) -> Formula {
            match f {
                Formula::Atom(p, args) => {
                    Formula::Atom(*p, args.iter().map(|a| go_t(a, env)).collect())
                }
                Formula::True => Formula::True,
                Formula::False => Formula::False,
                Formula::And(a, b) => Formula::and(go(a, env, k), go(b, env, k)),
                Formula::Or(a, b) => Formula::or(go(a, env, k), go(b, env, k)),
                Formula::Imp(a, b) => Formula::imp(go(a, env, k), go(b, env, k)),
                Formula::Forall(v, b) => {
                    let c = format!("_{}", *k);
                    *k += 1;
                    env.push((v.name.clone(), c.clone()));
                    let body = go(b, env, k);
                    env.pop();
                    Formula::forall(Var::new(c, v.sort), body)
                }
                Formula::Exists(v, b) => {
                    let c = format!("_{}", *k);
                    *k += 1;
                    env.push((v.name.clone(), c.clone()));
                    let body = go(b, env, k);
                    env.pop();
                    Formula::exists(Var::new(c, v.sort), body)
                }
                Formula::Meta(_) => f.clone(),
            }
        }
        go(f, &mut Vec::new(), &mut 0)
    }

    #[test]
    fn alpha_examples_match_the_renaming_oracle() {
        let cases = [
            ("forall x:N. Null(x)", "forall y:N. Null(y)"),
            ("forall x:N. Null(x)", "exists x:N. Null(x)"),
            // swapped binder names, swapped argument order
            ("forall x:N. forall y:N. eta(a, x, y)", "forall y:N. forall x:N. eta(a, y, x)"),
            ("forall x:N. forall y:N. eta(a, x, y)", "forall y:N. forall x:N. eta(a, x, y)"),
        ];
        for (l, r) in cases {
            let (fl, fr) = (zf(l), zf(r));
            let expected = canon_oracle(&fl) == canon_oracle(&fr);
            assert_eq!(alpha_eq(&fl, &fr), expected, "{} vs {}", l, r);
        }
    }

    #[test]
    fn alpha_is_an_equivalence_on_samples() {
        let samples = [
            zf("forall x:N. Null(x)"),
            zf("forall y:N. Null(y)"),
            zf("exists r:R. rel(x, y, r)"),
            zf("mem(x, p)"),
        ];
        for a in &samples {
            assert!(alpha_eq(a, a));
            for b in &samples {
                assert_eq!(alpha_eq(a, b), alpha_eq(b, a));
                if alpha_eq(a, b) {
                    for c in &samples {
                        if alpha_eq(b, c) {
                            assert!(alpha_eq(a, c));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn check_sorts_accepts_eta_at_its_rank() {
        let f = zf("eta(a, x, y)");
        check_sorts(&Parsed::Formula(f), &Signature::for_lang(Lang::Zermod)).unwrap();
    }

    #[test]
    fn check_sorts_rejects_approx_on_nodes() {
        // ~~ ranks over (G, G); force x into N through eta
        let err = parse_formula("eta(a, x, y) /\\ x ~~ y", Lang::Zermod).unwrap_err();
        assert!(err.to_string().contains("x"), "{}", err);
    }

    #[test]
    fn check_sorts_rejects_node_family_inside_g_family() {
        let err = parse_term(
            "nclass[x | mem(x, nclass[z | Nat(z)]())]()",
            Lang::Zermod,
        )
        .unwrap_err();
        assert!(err.to_string().contains("g"), "{}", err);
    }

    #[test]
    fn check_sorts_restricts_f_family_indexing_formulas() {
        // predicates other than in/~~ are rejected inside compr
        assert!(parse_term("compr[x | Nat(root(x))](a)", Lang::Zermod).is_err());
        // quantifiers over N are rejected inside compr
        assert!(parse_term("compr[x | exists n:N. x ~~ x](a)", Lang::Zermod).is_err());
        // in/~~ with G quantifiers are fine
        parse_term("compr[x | exists y:G. x ~~ y /\\ x in y](a)", Lang::Zermod).unwrap();
    }

    #[test]
    fn check_sorts_accepts_every_builtin_rule_side() {
        use crate::rewrite::{self, RuleBody};
        for sys in [
            rewrite::zermod_rules(),
            rewrite::arith_rules(),
            rewrite::naive_comprehension_rules(),
        ] {
            let sig = Signature::for_lang(sys.lang);
            for rule in &sys.rules {
                match &rule.body {
                    RuleBody::Term { lhs, rhs } => {
                        check_sorts_in_rule(&Parsed::Term(lhs.clone()), &sig).unwrap();
                        check_sorts_in_rule(&Parsed::Term(rhs.clone()), &sig).unwrap();
                    }
                    RuleBody::Formula { lhs, rhs } => {
                        check_sorts_in_rule(&Parsed::Formula(lhs.clone()), &sig).unwrap();
                        check_sorts_in_rule(&Parsed::Formula(rhs.clone()), &sig).unwrap();
                    }
                    RuleBody::Schema(_) => {}
                }
            }
        }
    }

    #[test]
    fn print_parse_round_trips() {
        let samples = [
            "root(a / x)",
            "a / x / y",
            "compr[x; y | ~(x in y)](b, b)",
            "nclass[x; y1 | Nat(x) -> x = y1]( o )",
            "nrel[x, x' | x = x']()",
            "i'(i(o))",
            "Pred(S(0))",
        ];
        for s in samples {
            let t = zt(s);
            let printed = t.to_string();
            let t2 = parse_term(&printed, Lang::Zermod).unwrap();
            assert!(alpha_eq_term(&t, &t2), "{} vs {}", t, t2);
        }
        let fsamples = [
            "forall p:C. mem(y, p) -> mem(z, p)",
            "a ~~ b \\/ a in b /\\ true",
            "~(x = y)",
            "~mem(x, p)",
            "exists r:R. rel(root(a), root(b), r)",
            "x < S(S(0))",
        ];
        for s in fsamples {
            let f = zf(s);
            let printed = f.to_string();
            let f2 = parse_formula(&printed, Lang::Zermod).unwrap();
            assert!(alpha_eq(&f, &f2), "{} vs {}", f, f2);
        }
    }

    #[test]
    fn numerals_round_trip() {
        let t = parse_term("4", Lang::Arith).unwrap();
        assert_eq!(t, Term::numeral(4));
        assert_eq!(t.to_string(), "4");
        assert_eq!(zt("S(x)").to_string(), "S(x)");
    }

    #[test]
    fn pins_control_free_variable_sorts() {
        let mut pins = BTreeMap::new();
        pins.insert("x".to_string(), Sort::N);
        let t = parse_term_with_pins("x", Lang::Zermod, &pins).unwrap();
        assert_eq!(sort_of_opt(&t), Some(Sort::N));
    }
}
