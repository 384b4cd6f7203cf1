//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line.  Run with `cargo test --test acceptance -- --nocapture`.

mod common;

use std::collections::BTreeMap;
use std::time::Instant;

use common::{
    bisim_class_reps, brute_bisimilar, brute_largest_collapsible, graphs_up_to_iso,
    pointed_graphs_up_to_iso, CollapseOracle,
};
use zermod::graphs::{
    bisimilar, collapse, graph_of_set, largest_collapsible_subgraph, member, omega_graph,
    pair_graph, pow_graph, reify, successor_graph, tc_graph, union_graph, HfSet, NodeId,
    PointedGraph,
};
use zermod::lang::{alpha_eq, parse_formula, parse_term, Lang, Sort, Var};
use zermod::proof::{self, Context, ProofTerm};
use zermod::rewrite::{
    arith_rules, congruent, naive_comprehension_rules, normalize_formula, normalize_term,
    zermod_rules, Congruence,
};
use zermod::translate;

fn verdict(name: &str, started: Instant, failures: &[String]) {
    let status = if failures.is_empty() { "PASS" } else { "FAIL" };
    println!(
        "{}: {} ({} checks failed, {:.2?})",
        name,
        status,
        failures.len(),
        started.elapsed()
    );
    for f in failures.iter().take(10) {
        println!("  - {}", f);
    }
    assert!(failures.is_empty(), "{} failed", name);
}

#[test]
fn criterion_1_arithmetic_congruence_and_worked_proof() {
    let t0 = Instant::now();
    let mut failures = Vec::new();
    let arith = arith_rules();
    let lhs = parse_formula("2 * 2 = 4", Lang::Arith).unwrap();
    let rhs = parse_formula("4 = 4", Lang::Arith).unwrap();
    if congruent(&lhs, &rhs, arith, 10_000) != Congruence::Congruent {
        failures.push("2*2=4 is not congruent to 4=4".into());
    }
    let decls = proof::parse_proofs(include_str!("../fixtures/proofs/corpus.proof")).unwrap();
    let d = decls.iter().find(|d| d.name == "even4").expect("even4 in corpus");
    let ctx = Context::with_hyps(arith, d.assumes.clone());
    let j = proof::check(&ctx, &d.term, &d.formula, 10_000);
    if !j.is_checked() {
        failures.push(format!("worked derivation does not check: {:?}", j.status));
    }
    match proof::extract_witness(&ctx, &d.term, &d.formula, 10_000) {
        Ok((w, _)) if w == zermod::lang::ast::Term::numeral(2) => {}
        Ok((w, _)) => failures.push(format!("witness is {}, expected 2", w)),
        Err(e) => failures.push(format!("witness extraction failed: {}", e)),
    }
    verdict("criterion 1 (arithmetic congruence + worked proof)", t0, &failures);
}

#[test]
fn criterion_2_crabbe_divergence_vs_graph_termination() {
    let t0 = Instant::now();
    let mut failures = Vec::new();
    let naive = naive_comprehension_rules();
    let c = "{ x in A | ~ x in x }";
    let f = parse_formula(&format!("{} in {}", c, c), Lang::Naive).unwrap();
    let r = normalize_formula(&f, naive, 10_000, false);
    if r.is_normal() || r.steps != 10_000 {
        failures.push(format!(
            "naive C in C should exhaust fuel 10000, got normal={} steps={}",
            r.is_normal(),
            r.steps
        ));
    }
    let zer = zermod_rules();
    // A instantiated to a closed construction term of depth 2
    let cz = "compr[x | ~(x in x)](Union(Omega))";
    let fz = parse_formula(&format!("{} in {}", cz, cz), Lang::Zermod).unwrap();
    let rz = normalize_formula(&fz, zer, 10_000, true);
    if !rz.is_normal() {
        failures.push(format!("graph-theory C in C did not normalize in {} steps", rz.steps));
    } else {
        // one-step soundness of the recorded derivation
        let replayed = zermod::rewrite::replay_formula(&fz, rz.trace.as_ref().unwrap(), zer);
        match replayed {
            Ok(v) if &v == rz.value() => {}
            Ok(_) => failures.push("replayed normal form differs".into()),
            Err(e) => failures.push(format!("trace replay failed: {}", e)),
        }
    }
    verdict("criterion 2 (restricted-comprehension divergence vs termination)", t0, &failures);
}

struct GoldenRule {
    rule: &'static str,
    lhs: &'static str,
    rhs: &'static str,
    term_rule: bool,
}

const ZERMOD_GOLDEN: &[GoldenRule] = &[
    // general
    GoldenRule { rule: "eta_slash", lhs: "eta(a / z, x, y)", rhs: "eta(a, x, y)", term_rule: false },
    GoldenRule { rule: "root_slash", lhs: "root(a / x)", rhs: "x:N", term_rule: true },
    GoldenRule { rule: "node_eq", lhs: "y:N = z", rhs: "forall p:C. mem(y, p) -> mem(z, p)", term_rule: false },
    GoldenRule { rule: "slash_slash", lhs: "a / x / y", rhs: "a / y", term_rule: true },
    // sets and relations on nodes (schema instances)
    GoldenRule { rule: "mem_nclass", lhs: "mem(0, nclass[x; y | Nat(x) -> Null(y)](o))", rhs: "Nat(0) -> Null(o)", term_rule: false },
    GoldenRule { rule: "rel_nrel", lhs: "rel(0, S(0), nrel[x, x'; y | x = x' /\\ Nat(y)](o))", rhs: "0 = S(0) /\\ Nat(o)", term_rule: false },
    // relocations
    GoldenRule { rule: "i_inv", lhs: "i'(i(x))", rhs: "x:N", term_rule: true },
    GoldenRule { rule: "img_i_i", lhs: "I(i(x))", rhs: "true", term_rule: false },
    GoldenRule { rule: "img_i_j", lhs: "I(j(x))", rhs: "false", term_rule: false },
    GoldenRule { rule: "img_i_o", lhs: "I(o)", rhs: "false", term_rule: false },
    GoldenRule { rule: "j_inv", lhs: "j'(j(x))", rhs: "x:N", term_rule: true },
    GoldenRule { rule: "img_j_j", lhs: "J(j(x))", rhs: "true", term_rule: false },
    GoldenRule { rule: "img_j_i", lhs: "J(i(x))", rhs: "false", term_rule: false },
    GoldenRule { rule: "img_j_o", lhs: "J(o)", rhs: "false", term_rule: false },
    GoldenRule { rule: "pred_succ", lhs: "Pred(S(x))", rhs: "x:N", term_rule: true },
    GoldenRule { rule: "null_zero", lhs: "Null(0)", rhs: "true", term_rule: false },
    GoldenRule { rule: "null_succ", lhs: "Null(S(x))", rhs: "false", term_rule: false },
    GoldenRule { rule: "rho_inv", lhs: "rho'(rho(x))", rhs: "x:G", term_rule: true },
    GoldenRule { rule: "nat_zero", lhs: "Nat(0)", rhs: "true", term_rule: false },
    GoldenRule { rule: "nat_succ", lhs: "Nat(S(x))", rhs: "Nat(x)", term_rule: false },
    GoldenRule { rule: "lt_zero", lhs: "x < 0", rhs: "false", term_rule: false },
    GoldenRule { rule: "lt_succ", lhs: "x < S(y)", rhs: "x < y \\/ x = y", term_rule: false },
    // equality and membership
    GoldenRule {
        rule: "approx",
        lhs: "a ~~ b",
        rhs: "exists r:R. rel(root(a), root(b), r) /\\ (forall x:N. forall x':N. forall y:N. eta(a, x', x) /\\ rel(x, y, r) -> exists y':N. eta(b, y', y) /\\ rel(x', y', r)) /\\ (forall y:N. forall y':N. forall x:N. eta(b, y', y) /\\ rel(x, y, r) -> exists x':N. eta(a, x', x) /\\ rel(x', y', r))",
        term_rule: false,
    },
    GoldenRule { rule: "member", lhs: "a in b", rhs: "exists x:N. eta(b, x, root(b)) /\\ a ~~ b / x", term_rule: false },
    // constructions
    GoldenRule {
        rule: "eta_union",
        lhs: "eta(Union(a), x, x')",
        rhs: "(exists y:N. exists y':N. x = i(y) /\\ x' = i(y') /\\ eta(a, y, y')) \\/ (exists y:N. exists z:N. x = i(y) /\\ x' = o /\\ eta(a, y, z) /\\ eta(a, z, root(a)))",
        term_rule: false,
    },
    GoldenRule {
        rule: "eta_pair",
        lhs: "eta(Pair(a, b), x, x')",
        rhs: "(exists y:N. exists y':N. x = i(y) /\\ x' = i(y') /\\ eta(a, y, y')) \\/ (exists y:N. exists y':N. x = j(y) /\\ x' = j(y') /\\ eta(b, y, y')) \\/ x = i(root(a)) /\\ x' = o \\/ x = j(root(b)) /\\ x' = o",
        term_rule: false,
    },
    GoldenRule {
        rule: "eta_pow",
        lhs: "eta(Pow(a), x, x')",
        rhs: "(exists y:N. exists y':N. x = i(y) /\\ x' = i(y') /\\ eta(a, y, y')) \\/ (exists y:N. exists c:G. x = i(y) /\\ x' = j(rho(c)) /\\ eta(a, y, root(a)) /\\ a / y in c) \\/ (exists c:G. x = j(rho(c)) /\\ x' = o)",
        term_rule: false,
    },
    GoldenRule {
        rule: "eta_compr",
        lhs: "eta(compr[w; u | ~(w in u)](b, a), x, x')",
        rhs: "(exists y:N. exists y':N. x = i(y) /\\ x' = i(y') /\\ eta(a, y, y')) \\/ (exists y:N. x = i(y) /\\ x' = o /\\ eta(a, y, root(a)) /\\ ~(a / y in b))",
        term_rule: false,
    },
    GoldenRule {
        rule: "eta_omega",
        lhs: "eta(Omega, x, x')",
        rhs: "(exists y:N. exists y':N. x = i(y) /\\ x' = i(y') /\\ y < y') \\/ (exists y:N. x = i(y) /\\ x' = o /\\ Nat(y))",
        term_rule: false,
    },
    GoldenRule {
        rule: "eta_tc",
        lhs: "eta(TC(a), x, x')",
        rhs: "(exists y:N. exists y':N. x = i(y) /\\ x' = i(y') /\\ eta(a, y, y')) \\/ (exists y:N. x = i(y) /\\ x' = o /\\ (forall c:C. (forall z:N. eta(a, z, root(a)) -> mem(z, c)) /\\ (forall z:N. forall z':N. eta(a, z, z') /\\ mem(z', c) -> mem(z, c)) -> mem(y, c)))",
        term_rule: false,
    },
    GoldenRule { rule: "root_union", lhs: "root(Union(a))", rhs: "o", term_rule: true },
    GoldenRule { rule: "root_pair", lhs: "root(Pair(a, b))", rhs: "o", term_rule: true },
    GoldenRule { rule: "root_pow", lhs: "root(Pow(a))", rhs: "o", term_rule: true },
    GoldenRule { rule: "root_compr", lhs: "root(compr[w; u | ~(w in u)](b, a))", rhs: "o", term_rule: true },
    GoldenRule { rule: "root_omega", lhs: "root(Omega)", rhs: "o", term_rule: true },
    GoldenRule { rule: "root_tc", lhs: "root(TC(a))", rhs: "o", term_rule: true },
];

const ARITH_GOLDEN: &[GoldenRule] = &[
    GoldenRule { rule: "plus_zero", lhs: "0 + y", rhs: "y:N", term_rule: true },
    GoldenRule { rule: "plus_succ", lhs: "S(x) + y", rhs: "S(x + y)", term_rule: true },
    GoldenRule { rule: "times_zero", lhs: "0 * y", rhs: "0", term_rule: true },
    GoldenRule { rule: "times_succ", lhs: "S(x) * y", rhs: "x * y + y", term_rule: true },
];

const NAIVE_GOLDEN: &[GoldenRule] = &[GoldenRule {
    rule: "mem_compr",
    lhs: "a in { x in b | ~(x in x) }",
    rhs: "a in b /\\ ~(a in a)",
    term_rule: false,
}];

#[test]
fn criterion_3_rewrite_golden_suite() {
    let t0 = Instant::now();
    let mut failures = Vec::new();
    let suites = [
        (zermod_rules(), ZERMOD_GOLDEN),
        (arith_rules(), ARITH_GOLDEN),
        (naive_comprehension_rules(), NAIVE_GOLDEN),
    ];
    for (sys, golden) in suites {
        let mut fired = std::collections::BTreeSet::new();
        for g in golden {
            if g.term_rule {
                let lhs = parse_term(g.lhs, sys.lang).unwrap();
                let expected = parse_term(g.rhs, sys.lang).unwrap();
                let r = normalize_term(&lhs, sys, 1, true);
                let trace = r.trace.as_ref().unwrap();
                if trace.first().map(|s| s.rule.as_str()) != Some(g.rule) {
                    failures.push(format!("{}: fired {:?}", g.rule, trace.first()));
                    continue;
                }
                if !trace[0].pos.is_empty() {
                    failures.push(format!("{}: fired below the root", g.rule));
                }
                if !zermod::lang::alpha_eq_term(r.value(), &expected) {
                    failures.push(format!("{}: got {}", g.rule, r.value()));
                }
            } else {
                let lhs = parse_formula(g.lhs, sys.lang).unwrap();
                let expected = parse_formula(g.rhs, sys.lang).unwrap();
                let r = normalize_formula(&lhs, sys, 1, true);
                let trace = r.trace.as_ref().unwrap();
                if trace.first().map(|s| s.rule.as_str()) != Some(g.rule) {
                    failures.push(format!("{}: fired {:?}", g.rule, trace.first()));
                    continue;
                }
                if !alpha_eq(r.value(), &expected) {
                    failures.push(format!("{}: got {}", g.rule, r.value()));
                }
            }
            fired.insert(g.rule.to_string());
        }
        // 100% coverage of the rule set
        for rule in &sys.rules {
            if !fired.contains(&rule.name) {
                failures.push(format!("{}: rule {} has no golden fixture", sys.name, rule.name));
            }
        }
        if golden.len() != sys.rules.len() {
            failures.push(format!(
                "{}: {} fixtures for {} rules",
                sys.name,
                golden.len(),
                sys.rules.len()
            ));
        }
    }
    verdict("criterion 3 (rewrite golden suite, 100% rule coverage)", t0, &failures);
}

#[test]
fn criterion_4_bisimulation_oracle_equivalence() {
    let t0 = Instant::now();
    let mut failures = Vec::new();
    // part A: over acyclic graphs <= 4 nodes, bisimilarity iff equal sets
    let acyclic = pointed_graphs_up_to_iso(4, true);
    let reified: Vec<HfSet> = acyclic.iter().map(|g| reify(g).expect("acyclic")).collect();
    let mut checked = 0usize;
    for (i, g) in acyclic.iter().enumerate() {
        for (j, h) in acyclic.iter().enumerate() {
            let b = bisimilar(g, h);
            if let Some(w) = &b {
                if !w.verify(g, h) {
                    failures.push(format!("witness fails its own conditions ({}, {})", i, j));
                }
            }
            if b.is_some() != (reified[i] == reified[j]) {
                failures.push(format!(
                    "bisimilar={} but sets {} vs {}",
                    b.is_some(),
                    reified[i],
                    reified[j]
                ));
            }
            checked += 1;
        }
    }
    println!(
        "  part A: {} acyclic graphs up to iso, {} pairs",
        acyclic.len(),
        checked
    );
    // part B: over all graphs <= 3 nodes (cyclic included), the fixed point
    // agrees with brute-force search over all relations
    let small = pointed_graphs_up_to_iso(3, false);
    let mut checked_b = 0usize;
    for g in &small {
        for h in &small {
            let engine = bisimilar(g, h).is_some();
            let brute = brute_bisimilar(g, h);
            if engine != brute {
                failures.push(format!(
                    "fixed-point {} vs brute-force {} on {} / {}",
                    engine, brute, g, h
                ));
            }
            checked_b += 1;
        }
    }
    println!("  part B: {} graphs up to iso, {} pairs", small.len(), checked_b);
    verdict("criterion 4 (bisimulation oracle equivalence)", t0, &failures);
}

#[test]
fn criterion_5_collapse_uniqueness_and_largest_subgraph() {
    let t0 = Instant::now();
    let mut failures = Vec::new();
    let oracle = CollapseOracle::new();
    let graphs = graphs_up_to_iso(4);
    for g in &graphs {
        let brute = oracle.collapses(g);
        if brute.len() > 1 {
            failures.push(format!("{} collapses found for {}", brute.len(), g));
        }
        match (collapse(g), brute.first()) {
            (None, None) => {}
            (Some(phi), Some(expected)) => {
                if &phi != expected {
                    failures.push(format!("collapse disagrees with the oracle on {}", g));
                }
            }
            (engine, _) => failures.push(format!(
                "collapse existence disagrees (engine {:?}, oracle {}) on {}",
                engine.is_some(),
                brute.len(),
                g
            )),
        }
        let part = largest_collapsible_subgraph(g);
        let brute_edges = brute_largest_collapsible(g);
        if part.edges != brute_edges {
            failures.push(format!("largest collapsible subgraph differs on {}", g));
        }
        // isolated nodes have no descendants, so they always survive
        for n in g.nodes() {
            let isolated = g.edges().iter().all(|(c, p)| c != n && p != n);
            if isolated && !part.nodes.contains(n) {
                failures.push(format!("isolated node {} dropped on {}", n, g));
            }
        }
    }
    println!("  {} edge structures up to iso", graphs.len());
    verdict("criterion 5 (collapse uniqueness + largest-subgraph oracle)", t0, &failures);
}

#[test]
fn criterion_6_reification_round_trip() {
    let t0 = Instant::now();
    let mut failures = Vec::new();
    // exhaustive at rank <= 3, and in fact exhaustive at rank <= 4
    for r in [3u32, 4] {
        let sets = zermod::graphs::all_of_rank_le(r);
        for s in &sets {
            let g = graph_of_set(s);
            match reify(&g) {
                Some(back) if &back == s => {}
                other => failures.push(format!(
                    "round trip failed at rank {}: {} came back as {:?}",
                    r, s, other
                )),
            }
        }
        println!("  rank <= {}: {} sets", r, sets.len());
    }
    verdict("criterion 6 (reification round trip)", t0, &failures);
}

#[test]
fn criterion_7_semantic_lemma_suite() {
    let t0 = Instant::now();
    let mut failures = Vec::new();
    let all = pointed_graphs_up_to_iso(3, false);
    let n = all.len();
    // precomputed relation matrices
    let mut bis = vec![false; n * n];
    let mut mem = vec![false; n * n];
    for i in 0..n {
        for j in 0..n {
            bis[i * n + j] = bisimilar(&all[i], &all[j]).is_some();
            mem[i * n + j] = member(&all[i], &all[j]);
        }
    }
    // lemma 3: reflexivity
    for i in 0..n {
        if !bis[i * n + i] {
            failures.push(format!("lemma 3 fails on {}", all[i]));
        }
    }
    // lemma 4: symmetry
    for i in 0..n {
        for j in 0..n {
            if bis[i * n + j] != bis[j * n + i] {
                failures.push(format!("lemma 4 fails on ({}, {})", i, j));
            }
        }
    }
    // lemma 5: transitivity
    for i in 0..n {
        for j in 0..n {
            if !bis[i * n + j] {
                continue;
            }
            for k in 0..n {
                if bis[j * n + k] && !bis[i * n + k] {
                    failures.push(format!("lemma 5 fails on ({}, {}, {})", i, j, k));
                }
            }
        }
    }
    // lemma 6: a ~ a / root(a)
    for g in &all {
        if bisimilar(g, &g.reroot(g.root()).unwrap()).is_none() {
            failures.push(format!("lemma 6 fails on {}", g));
        }
    }
    // lemma 28: children of the root are members
    for g in &all {
        for x in g.root_children() {
            if !member(&g.reroot(x).unwrap(), g) {
                failures.push(format!("lemma 28 fails on {}", g));
            }
        }
    }
    // lemma 29: bisimilar roots match children up to bisimilarity
    for (i, a) in all.iter().enumerate() {
        for (j, b) in all.iter().enumerate() {
            if !bis[i * n + j] {
                continue;
            }
            for x in a.root_children() {
                let ax = a.reroot(x).unwrap();
                let matched = b
                    .root_children()
                    .iter()
                    .any(|y| bisimilar(&ax, &b.reroot(y).unwrap()).is_some());
                if !matched {
                    failures.push(format!("lemma 29 fails on ({}, {})", i, j));
                }
            }
        }
    }
    // lemmas 30 and 31: membership is a congruence for bisimilarity
    for i in 0..n {
        for j in 0..n {
            if !mem[i * n + j] {
                continue;
            }
            for k in 0..n {
                if bis[i * n + k] && !mem[k * n + j] {
                    failures.push(format!("lemma 30 fails on ({}, {}, {})", i, j, k));
                }
                if bis[j * n + k] && !mem[i * n + k] {
                    failures.push(format!("lemma 31 fails on ({}, {}, {})", i, j, k));
                }
            }
        }
    }
    // lemma 46: nothing is a member of the empty set
    let empty = PointedGraph::empty_set();
    for g in &all {
        if member(g, &empty) {
            failures.push(format!("lemma 46 fails on {}", g));
        }
    }

    // Construction lemmas quantify over one representative per bisimilarity
    // class; membership and bisimilarity only depend on classes, which
    // lemmas 30/31 above check on the full enumeration.
    let reps = bisim_class_reps(&all);
    println!("  {} graphs up to iso, {} bisimilarity classes", n, reps.len());
    // lemma 42: c in Union(a) iff c is a member of a member
    for c in &reps {
        for a in &reps {
            let lhs = member(c, &union_graph(a));
            let rhs = a
                .root_children()
                .iter()
                .any(|x| member(c, &a.reroot(x).unwrap()));
            if lhs != rhs {
                failures.push(format!("lemma 42 fails on ({}, {})", c, a));
            }
        }
    }
    // lemma 43: c in {a,b} iff c ~ a or c ~ b
    for c in &reps {
        for a in &reps {
            for b in &reps {
                let lhs = member(c, &pair_graph(a, b));
                let rhs = bisimilar(c, a).is_some() || bisimilar(c, b).is_some();
                if lhs != rhs {
                    failures.push(format!("lemma 43 fails on ({}, {}, {})", c, a, b));
                }
            }
        }
    }
    // lemma 44: a in Pow(b) iff every member of a is a member of b
    for a in &reps {
        for b in &reps {
            let lhs = member(a, &pow_graph(b));
            let rhs = a
                .root_children()
                .iter()
                .all(|x| member(&a.reroot(x).unwrap(), b));
            if lhs != rhs {
                failures.push(format!("lemma 44 fails on ({}, {})", a, b));
            }
        }
    }
    // infinity lemmas 47-50 at truncation k = 5
    let k = 5u64;
    let om = omega_graph(k);
    let at = |m: u64| om.reroot(&NodeId::i(NodeId::Num(m))).unwrap();
    if reify(&at(0)) != Some(HfSet::empty()) {
        failures.push("lemma 47 fails: Omega at i(0) is not the empty set".into());
    }
    for m in 0..k - 1 {
        if bisimilar(&successor_graph(&at(m)), &at(m + 1)).is_none() {
            failures.push(format!("lemma 48 fails at {}", m));
        }
    }
    if !member(&empty, &om) {
        failures.push("lemma 49 fails: the empty set is not in Omega".into());
    }
    for m in 0..k - 1 {
        if !member(&successor_graph(&at(m)), &om) {
            failures.push(format!("lemma 50 fails at {}", m));
        }
    }
    // transitive-closure lemmas 52 and 53
    for a in &reps {
        for c in &reps {
            let tc = tc_graph(c);
            if member(a, c) && !member(a, &tc) {
                failures.push(format!("lemma 52 fails on ({}, {})", a, c));
            }
            for b in &reps {
                if member(a, b) && member(b, &tc) && !member(a, &tc) {
                    failures.push(format!("lemma 53 fails on ({}, {}, {})", a, b, c));
                }
            }
        }
    }
    verdict("criterion 7 (semantic lemma suite)", t0, &failures);
}

#[test]
fn criterion_8_proof_engine() {
    let t0 = Instant::now();
    let mut failures = Vec::new();
    let decls = proof::parse_proofs(include_str!("../fixtures/proofs/corpus.proof")).unwrap();
    if decls.len() < 25 {
        failures.push(format!("corpus has only {} proofs", decls.len()));
    }
    for d in &decls {
        let sys = match d.ruleset.as_str() {
            "arith" => arith_rules(),
            "naive" => naive_comprehension_rules(),
            _ => zermod_rules(),
        };
        let ctx = Context::with_hyps(sys, d.assumes.clone());
        let j = proof::check(&ctx, &d.term, &d.formula, 10_000);
        if !j.is_checked() {
            failures.push(format!("{} does not check: {:?}", d.name, j.status));
            continue;
        }
        // normalization within fuel 10000, with a replayable trace
        let r = proof::reduce(&d.term, 10_000, true);
        if !r.is_normal() {
            failures.push(format!("{} does not normalize", d.name));
            continue;
        }
        let trace = r.trace.as_ref().unwrap();
        match proof::replay_proof(&d.term, trace) {
            Ok(v) if &v == r.value() => {}
            other => {
                failures.push(format!("{}: trace replay mismatch {:?}", d.name, other.is_ok()))
            }
        }
        // subject reduction at every intermediate step
        for k in 0..=trace.len() {
            let stage = proof::replay_proof(&d.term, &trace[..k]).unwrap();
            let jk = proof::check(&ctx, &stage, &d.formula, 10_000);
            if !jk.is_checked() {
                failures.push(format!(
                    "{}: subject reduction fails after {} steps: {:?}",
                    d.name, k, jk.status
                ));
                break;
            }
        }
        // introduction heads for closed normal proofs of existentials and
        // disjunctions (shape read off the formula's normal form)
        let nf = normalize_formula(&d.formula, sys, 10_000, false);
        if r.value().is_closed() && nf.is_normal() {
            let head = r.value().head();
            match nf.value() {
                zermod::lang::ast::Formula::Exists(_, _) => {
                    if head != proof::HeadTag::ExIntro {
                        failures.push(format!("{}: existential proof has head {}", d.name, head.name()));
                    }
                }
                zermod::lang::ast::Formula::Or(_, _) => {
                    if !matches!(head, proof::HeadTag::OrIntro1 | proof::HeadTag::OrIntro2) {
                        failures.push(format!("{}: disjunction proof has head {}", d.name, head.name()));
                    }
                }
                _ => {}
            }
            if !head.is_intro() && r.value().is_closed() {
                failures.push(format!("{}: closed normal proof ends with {}", d.name, head.name()));
            }
        }
    }
    verdict("criterion 8 (proof engine: subject reduction + normalization + witnesses)", t0, &failures);
}

#[test]
fn criterion_9_translation_checks() {
    let t0 = Instant::now();
    let mut failures = Vec::new();

    // star: every table clause, byte for byte after printing
    let star_terms = [
        ("x:G", "x"),
        ("root(a)", "p2(a)"),
        ("a / b", "opair(p1(a), b)"),
        ("o", "0"),
        ("0", "0"),
        ("i(a)", "opair(0, a)"),
        ("j(a)", "opair(1, a)"),
        ("i'(a)", "p2(a)"),
        ("j'(a)", "p2(a)"),
        ("S(x)", "cup(x, sing(x))"),
        ("Pred(x)", "Union(x)"),
        ("rho(a)", "a"),
        ("rho'(a)", "castR(a)"),
        ("nclass[x; y1 | x = y1](o)", "[ x | x = 0 ]"),
        (
            "nrel[x, x'; y1 | x = y1](o)",
            "[ z | exists x:Set. exists x':Set. z = opair(x, x') /\\ x = 0 ]",
        ),
        (
            "Union(a)",
            "opair({ c in prod(cup(prod(sing(0), car(a)), sing(0)), cup(prod(sing(0), car(a)), sing(0))) | (exists y:Set. exists y':Set. c = opair(opair(0, y'), opair(0, y)) /\\ opair(y', y) in p1(a)) \\/ (exists y':Set. exists y:Set. c = opair(opair(0, y'), 0) /\\ opair(y', y) in p1(a) /\\ opair(y, p2(a)) in p1(a)) }, 0)",
        ),
        (
            "Pair(a, b)",
            "opair({ c in prod(cup(cup(prod(sing(0), car(a)), prod(sing(1), car(b))), sing(0)), cup(cup(prod(sing(0), car(a)), prod(sing(1), car(b))), sing(0))) | (exists y:Set. exists y':Set. c = opair(opair(0, y'), opair(0, y)) /\\ opair(y', y) in p1(a)) \\/ (exists y:Set. exists y':Set. c = opair(opair(1, y'), opair(1, y)) /\\ opair(y', y) in p1(b)) \\/ c = opair(opair(0, p2(a)), 0) \\/ c = opair(opair(1, p2(b)), 0) }, 0)",
        ),
        (
            "Pow(a)",
            "opair({ c in prod(cup(cup(prod(sing(0), car(a)), prod(sing(1), Pow(car(a)))), sing(0)), cup(cup(prod(sing(0), car(a)), prod(sing(1), Pow(car(a)))), sing(0))) | (exists y:Set. exists y':Set. c = opair(opair(0, y'), opair(0, y)) /\\ opair(y', y) in p1(a)) \\/ (exists y:Set. exists p:Set. c = opair(opair(0, y), opair(1, p)) /\\ opair(y, p2(a)) in p1(a) /\\ y in p) \\/ (exists p:Set. c = opair(opair(1, p), 0)) }, 0)",
        ),
        (
            "compr[x; y1 | x in y1](b, a)",
            "opair({ c in prod(cup(prod(sing(0), car(a)), sing(0)), cup(prod(sing(0), car(a)), sing(0))) | (exists y:Set. exists y':Set. c = opair(opair(0, y'), opair(0, y)) /\\ opair(y', y) in p1(a)) \\/ (exists y:Set. c = opair(opair(0, y), 0) /\\ opair(y, p2(a)) in p1(a) /\\ (exists z:Set. opair(z, p2(b)) in p1(b) /\\ opair(p1(a), y) ~~ opair(p1(b), z))) }, 0)",
        ),
        (
            "Omega",
            "opair({ c in prod(cup(prod(sing(0), NN), sing(0)), cup(prod(sing(0), NN), sing(0))) | (exists y:Set. exists y':Set. c = opair(opair(0, y'), opair(0, y)) /\\ y' in y) \\/ (exists y:Set. c = opair(opair(0, y), 0)) }, 0)",
        ),
        (
            "TC(a)",
            "opair({ c in prod(cup(prod(sing(0), car(a)), sing(0)), cup(prod(sing(0), car(a)), sing(0))) | (exists y:Set. exists y':Set. c = opair(opair(0, y'), opair(0, y)) /\\ opair(y', y) in p1(a)) \\/ (exists y:Set. c = opair(opair(0, y), 0) /\\ opair(y, p2(a)) in clos(p1(a))) }, 0)",
        ),
    ];
    for (input, expected) in star_terms {
        let t = parse_term(input, Lang::Zermod).unwrap();
        match translate::star_term(&t) {
            Ok(s) => {
                if s.to_string() != expected {
                    failures.push(format!("star({}) printed {}", input, s));
                }
            }
            Err(e) => failures.push(format!("star({}) failed: {}", input, e)),
        }
    }
    let star_formulas = [
        ("eta(a, t, u)", "opair(t, u) in p1(a)"),
        ("t = u", "t = u"),
        ("mem(t, p)", "mem(t, p)"),
        ("rel(t, u, r)", "mem(opair(t, u), r)"),
        ("I(t)", "exists y:Set. t = opair(0, y)"),
        ("J(t)", "exists y:Set. t = opair(1, y)"),
        ("Null(t)", "t = 0"),
        ("t < u", "t in u /\\ u in NN"),
        ("Nat(t)", "t in NN"),
        ("t ~~ u", "t ~~ u"),
        ("t in u", "exists z:Set. opair(z, p2(u)) in p1(u) /\\ t ~~ opair(p1(u), z)"),
        ("true", "true"),
        ("false", "false"),
        ("Nat(t) -> Null(t)", "t in NN -> t = 0"),
        ("Nat(t) /\\ Null(t)", "t in NN /\\ t = 0"),
        ("Nat(t) \\/ Null(t)", "t in NN \\/ t = 0"),
        ("forall x:G. x ~~ x", "forall x:Set. Rgraph(x) -> x ~~ x"),
        ("exists x:N. Nat(x)", "exists x:Set. true /\\ x in NN"),
        ("forall p:C. mem(x, p)", "forall p:Class. true -> mem(x, p)"),
        // the relativization guard's bound x, y, z shadow the body's free
        // variables harmlessly
        (
            "exists r:R. rel(x, y, r)",
            "exists r:Class. (forall x:Set. mem(x, r) -> (exists y:Set. exists z:Set. x = opair(y, z))) /\\ mem(opair(x, y), r)",
        ),
    ];
    for (input, expected) in star_formulas {
        let f = parse_formula(input, Lang::Zermod).unwrap();
        match translate::star_formula(&f) {
            Ok(s) => {
                if s.to_string() != expected {
                    failures.push(format!("star({}) printed {}", input, s));
                }
            }
            Err(e) => failures.push(format!("star({}) failed: {}", input, e)),
        }
    }

    // circle: every clause of the membership transformation and the
    // formula transformation
    let z = Var::new("z", Sort::Set);
    let circ_in_cases = [
        ("x", "z in x"),
        ("Union(t)", "exists y:Set. z in y /\\ y in t"),
        (
            "Pair(t1, t2)",
            "(forall z':Set. (z' in z -> z' in t1) /\\ (z' in t1 -> z' in z)) \\/ (forall z1:Set. (z1 in z -> z1 in t2) /\\ (z1 in t2 -> z1 in z))",
        ),
        ("Pow(t)", "forall y:Set. y in z -> y in t"),
        (
            "{ x in t | x in w }",
            "z in t /\\ (exists x':Set. (forall z':Set. (z' in x' -> z' in z) /\\ (z' in z -> z' in x')) /\\ x' in w)",
        ),
        ("NN", "Nat(z)"),
        (
            "TC(t)",
            "forall x:Set. (forall y1:Set. forall y2:Set. y1 in y2 /\\ y2 in x -> y1 in x) /\\ (forall y:Set. y in t -> y in x) -> z in x",
        ),
    ];
    for (input, expected) in circ_in_cases {
        let t = parse_term(input, Lang::Zskol).unwrap();
        match translate::circ_in(&z, &t) {
            Ok(f) => {
                if f.to_string() != expected {
                    failures.push(format!("z inc {} printed {}", input, f));
                }
                if let Err(e) = translate::check_zclass(&f) {
                    failures.push(format!("z inc {} is not Zclass: {}", input, e));
                }
            }
            Err(e) => failures.push(format!("z inc {} failed: {}", input, e)),
        }
    }
    let circ_mem_cases = [
        ("X:Class", "mem(z, X)"),
        (
            "[ x | x in w ]",
            "exists x':Set. (forall z':Set. (z' in x' -> z' in z) /\\ (z' in z -> z' in x')) /\\ x' in w",
        ),
    ];
    for (input, expected) in circ_mem_cases {
        let t = parse_term(input, Lang::Zskol).unwrap();
        match translate::circ_mem(&z, &t) {
            Ok(f) => {
                if f.to_string() != expected {
                    failures.push(format!("memc(z, {}) printed {}", input, f));
                }
            }
            Err(e) => failures.push(format!("memc(z, {}) failed: {}", input, e)),
        }
    }
    let circle_cases = [
        (
            "t = u",
            "forall z:Set. (z in t -> z in u) /\\ (z in u -> z in t)",
        ),
        (
            "t in u",
            "exists x:Set. (forall z:Set. (z in x -> z in t) /\\ (z in t -> z in x)) /\\ x in u",
        ),
        (
            "mem(t, U)",
            "exists x:Set. (forall z:Set. (z in x -> z in t) /\\ (z in t -> z in x)) /\\ mem(x, U)",
        ),
        ("true", "true"),
        ("false", "false"),
        // one fresh supply serves the whole formula, so the second
        // conjunct picks primed names
        (
            "t in u /\\ u in t",
            "(exists x:Set. (forall z:Set. (z in x -> z in t) /\\ (z in t -> z in x)) /\\ x in u) /\\ (exists x':Set. (forall z':Set. (z' in x' -> z' in u) /\\ (z' in u -> z' in x')) /\\ x' in t)",
        ),
        (
            "forall v:Set. v in t",
            "forall v:Set. exists x:Set. (forall z:Set. (z in x -> z in v) /\\ (z in v -> z in x)) /\\ x in t",
        ),
    ];
    for (input, expected) in circle_cases {
        let f = parse_formula(input, Lang::Zskol).unwrap();
        match translate::circle_formula(&f) {
            Ok(c) => {
                if c.to_string() != expected {
                    failures.push(format!("circle({}) printed {}", input, c));
                }
            }
            Err(e) => failures.push(format!("circle({}) failed: {}", input, e)),
        }
    }

    // dagger semantic round trip: 20 quantifier-free formulas over the
    // hereditarily finite sets of rank <= 3
    let formulas = [
        "x = x",
        "x = y",
        "x in y",
        "~(x in x)",
        "x in y \\/ y in x",
        "x in y -> ~(y in x)",
        "x = y -> (x in z -> y in z)",
        "x in y /\\ y in z",
        "x in y /\\ y in z -> x in z",
        "~(x = y) \\/ x in z",
        "true",
        "false -> x in y",
        "x = y /\\ ~(x = y)",
        "(x in y -> y in x) -> x = y",
        "x in x \\/ ~(x in x)",
        "x = y \\/ x in y \\/ y in x",
        "x in z /\\ y in z -> (x = y \\/ ~(x = y))",
        "~(~(x in y)) -> x in y",
        "(x = y /\\ y = z) -> x = z",
        "x in y -> x in y /\\ true",
    ];
    assert_eq!(formulas.len(), 20);
    let universe = zermod::graphs::all_of_rank_le(3);
    let graphs: Vec<PointedGraph> = universe.iter().map(graph_of_set).collect();
    for text in formulas {
        let zst = parse_formula(text, Lang::Zst).unwrap();
        let zer = translate::dagger(&zst).unwrap();
        let vars: Vec<String> = zermod::lang::fv_formula(&zst)
            .into_iter()
            .map(|v| v.name)
            .collect();
        let mut idx = vec![0usize; vars.len()];
        loop {
            let mut hf_env = BTreeMap::new();
            let mut g_env = BTreeMap::new();
            for (vi, v) in vars.iter().enumerate() {
                hf_env.insert(v.clone(), universe[idx[vi]].clone());
                g_env.insert(v.clone(), graphs[idx[vi]].clone());
            }
            let oracle = zermod::graphs::eval_hf_formula(&zst, &hf_env).unwrap();
            let semantic = zermod::graphs::eval_graph_formula(&zer, &g_env).unwrap();
            if oracle != semantic {
                failures.push(format!(
                    "dagger round trip fails on {} at {:?}",
                    text, hf_env
                ));
                break;
            }
            // next assignment
            let mut carry = true;
            for slot in idx.iter_mut() {
                if carry {
                    *slot += 1;
                    if *slot == universe.len() {
                        *slot = 0;
                    } else {
                        carry = false;
                    }
                }
            }
            if carry {
                break;
            }
        }
    }
    verdict("criterion 9 (translation fixtures + semantic round trip)", t0, &failures);
}
