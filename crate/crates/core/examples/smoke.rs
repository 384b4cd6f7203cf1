use zermod::lang::{self, Lang};
use zermod::rewrite::{self, Congruence, Outcome};

fn main() {
    // parse/print round trips
    for (txt, lang) in [
        ("root(a / x)", Lang::Zermod),
        ("forall p:C. mem(y, p) -> mem(z, p)", Lang::Zermod),
        ("eta(Union(a), x, x')", Lang::Zermod),
        ("2 * x = 4", Lang::Arith),
        ("a in { x in b | ~ x in x }", Lang::Naive),
        ("compr[x; y | ~ x in y](b, b)", Lang::Zermod),
    ] {
        match lang::parse(txt, lang) {
            Ok(lang::Parsed::Term(t)) => println!("TERM  {:?} => {}", txt, t),
            Ok(lang::Parsed::Formula(f)) => println!("FORM  {:?} => {}", txt, f),
            Err(e) => println!("ERR   {:?} => {}", txt, e),
        }
    }
    // built-in systems load
    let z = rewrite::zermod_rules();
    println!("zermod rules: {}", z.rules.len());
    let a = rewrite::arith_rules();
    println!("arith rules: {}", a.rules.len());
    let n = rewrite::naive_comprehension_rules();
    println!("naive rules: {}", n.rules.len());

    // round-trip of the rule files
    let printed = z.to_file();
    let reparsed = rewrite::RewriteSystem::parse("zermod", Lang::Zermod, &printed).unwrap();
    println!("zermod file round-trip: {}", reparsed.rules == z.rules);

    // normalize 2*2=4 and compare with 4=4
    let f1 = lang::parse_formula("2 * 2 = 4", Lang::Arith).unwrap();
    let f2 = lang::parse_formula("4 = 4", Lang::Arith).unwrap();
    let r = rewrite::normalize_formula(&f1, a, 1000, true);
    println!("nf(2*2=4) = {} steps={}", r.value(), r.steps);
    println!("congruent: {:?}", rewrite::congruent(&f1, &f2, a, 1000));
    // replay
    let rep = rewrite::replay_formula(&f1, r.trace.as_ref().unwrap(), a).unwrap();
    println!("replay ok: {}", &rep == r.value());

    // term normalization root(Union(a)) -> o
    let t = lang::parse_term("root(Union(a))", Lang::Zermod).unwrap();
    let rt = rewrite::normalize_term(&t, z, 100, false);
    println!("root(Union(a)) => {}", rt.value());

    // naive divergence
    let c = "{ x in A | ~ x in x }";
    let f = lang::parse_formula(&format!("{} in {}", c, c), Lang::Naive).unwrap();
    let r = rewrite::normalize_formula(&f, n, 10_000, false);
    println!("naive C in C: normal={} steps={}", r.is_normal(), r.steps);

    // zermod C in C with A = Union(Omega)
    let cz = "compr[x | ~ x in x](Union(Omega))";
    let fz = lang::parse_formula(&format!("{} in {}", cz, cz), Lang::Zermod).unwrap();
    let r = rewrite::normalize_formula(&fz, z, 10_000, false);
    println!("zermod C in C: normal={} steps={}", r.is_normal(), r.steps);

    // axiomatize
    let axs = rewrite::axiomatize(a);
    for f in &axs { println!("axiom: {}", f); }
    match rewrite::congruent(
        &lang::parse_formula("0 + y = y", Lang::Arith).unwrap(),
        &lang::parse_formula("y = y", Lang::Arith).unwrap(),
        a, 1000) {
        Congruence::Congruent => println!("0+y=y ~ y=y ok"),
        x => println!("0+y=y: {:?}", x),
    }
    let fexh = rewrite::normalize_formula(&f1, a, 2, false);
    println!("tiny fuel outcome exhausted: {}", matches!(fexh.outcome, Outcome::FuelExhausted(_)));
    graphs_smoke();
}

#[allow(dead_code)]
fn graphs_smoke() {
    use zermod::graphs::*;
    // figure graphs
    let g2 = parse_graph("graph g2 { nodes: 2, 3; edges: (3, 2); root: 2 }").unwrap();
    let g6 = parse_graph("graph g6 { nodes: 6, 7; edges: (7, 6); root: 6 }").unwrap();
    let g4 = parse_graph("graph g4 { nodes: 4, 5, 6, 7; edges: (5, 4), (6, 4), (7, 6); root: 4 }").unwrap();
    let g1 = parse_graph("graph g1 { nodes: 1; edges: ; root: 1 }").unwrap();
    println!("bisim g2 g6: {:?}", bisimilar(&g2, &g6).map(|w| w.pairs.len()));
    println!("bisim g1 g2: {:?}", bisimilar(&g1, &g2).is_some());
    println!("member g1 g2: {}", member(&g1, &g2));
    println!("member g2 g4: {}", member(&g2, &g4));
    println!("member g1 empty: {}", member(&g1, &g1));
    println!("reify g4: {}", reify(&g4).unwrap());
    println!("reify g1: {}", reify(&g1).unwrap());
    let loopg = parse_graph("graph l { nodes: 1; edges: (1, 1); root: 1 }").unwrap();
    println!("collapse loop: {:?}", collapse(&loopg).is_none());
    let lcs = largest_collapsible_subgraph(&loopg);
    println!("lcs loop: nodes={} edges={}", lcs.nodes.len(), lcs.edges.len());
    // omega
    let om = omega_graph(4);
    println!("empty in Omega: {}", member(&g1, &om));
    let zero = om.reroot(&NodeId::i(NodeId::Num(0))).unwrap();
    println!("reify Omega/i(0): {}", reify(&zero).unwrap());
    // graph_of_set round trip
    let x = parse_hf("{{},{{}}}").unwrap();
    let gx = graph_of_set(&x);
    println!("reify(graph_of_set({})) = {}", x, reify(&gx).unwrap());
    // pow: member(a, Pow(b)) iff a subset b
    let pw = pow_graph(&g4);
    println!("g2 in Pow(g4): {}", member(&g2, &pw));
    println!("g4 in Pow(g4): {}", member(&g4, &pw));
    let pair = pair_graph(&g1, &g2);
    println!("reify pair(empty, {{0}}): {}", reify(&pair).unwrap());
    let succ = successor_graph(&g1);
    println!("reify succ(empty): {}", reify(&succ).unwrap());
    let tc = tc_graph(&g4);
    println!("reify TC(g4): {}", reify(&tc).unwrap());
}
