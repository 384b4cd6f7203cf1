use zermod::lang::{self, Lang};
use zermod::proof::{self, Context, Status};
use zermod::rewrite;

fn main() {
    let arith = rewrite::arith_rules();
    let zer = rewrite::zermod_rules();

    // the worked arithmetic derivation
    let text = r#"
proof even4 : exists x:N. 2 * x = 4 in arith {
  assume ax : forall x:N. x = x;
  wit [2] (ax [4])
}
"#;
    let decls = proof::parse_proofs(text).unwrap();
    let d = &decls[0];
    println!("parsed: {} : {} [{}]", d.name, d.formula, d.ruleset);
    println!("term: {}", d.term);
    let ctx = Context::with_hyps(arith, d.assumes.clone());
    let j = proof::check(&ctx, &d.term, &d.formula, 10_000);
    println!("check: {:?}", j.status);
    let (w, sub) = proof::extract_witness(&ctx, &d.term, &d.formula, 10_000).unwrap();
    println!("witness: {} subproof: {}", w, sub);

    // identity
    let t2 = "proof id : Null(o) -> Null(o) in zermod { fun h => h }";
    let d2 = &proof::parse_proofs(t2).unwrap()[0];
    let ctx2 = Context::new(zer);
    println!("id: {:?}", proof::check(&ctx2, &d2.term, &d2.formula, 1000).status);

    // failure case: identity at distinct atoms
    let t3 = "proof bad : Null(o) -> Nat(o) in zermod { fun h => h }";
    let d3 = &proof::parse_proofs(t3).unwrap()[0];
    match proof::check(&ctx2, &d3.term, &d3.formula, 1000).status {
        Status::Failed(m) => println!("bad failed as expected: {}", &m[..60.min(m.len())]),
        s => println!("UNEXPECTED {:?}", s),
    }

    // modulo: node equality reflexivity
    let t4 = "proof refl : forall y:N. y = y in zermod { gen y:N => gen p:C => fun h => h }";
    let d4 = &proof::parse_proofs(t4).unwrap()[0];
    println!("node_eq refl: {:?}", proof::check(&ctx2, &d4.term, &d4.formula, 1000).status);

    // modulo: Nat(2) is true
    let t5 = "proof nat2 : Nat(2) in zermod { triv }";
    let d5 = &proof::parse_proofs(t5).unwrap()[0];
    println!("Nat(2): {:?}", proof::check(&ctx2, &d5.term, &d5.formula, 1000).status);

    // modulo: 0 < 1
    let t6 = "proof lt01 : 0 < S(0) in zermod { inr (gen p:C => fun h => h) }";
    let d6 = &proof::parse_proofs(t6).unwrap()[0];
    println!("0<1: {:?}", proof::check(&ctx2, &d6.term, &d6.formula, 1000).status);

    // reduction + subject reduction
    let t7 = "proof sr : Null(o) -> Null(o) in zermod { (fun u => u : (Null(o) -> Null(o)) -> Null(o) -> Null(o)) (fun h => h) }";
    let d7 = &proof::parse_proofs(t7).unwrap()[0];
    println!("sr checks: {:?}", proof::check(&ctx2, &d7.term, &d7.formula, 1000).status);
    let red = proof::reduce(&d7.term, 100, true);
    println!("sr normal form: {} steps={}", red.value(), red.steps);
    let replayed = proof::replay_proof(&d7.term, red.trace.as_ref().unwrap()).unwrap();
    println!("replay matches: {}", &replayed == red.value());
    println!("head: {:?}", proof::head_of_normal(red.value()).map(|h| h.name()));

    // case reduction
    let t8 = "proof c : true \\/ false in zermod { inl triv }";
    let d8 = &proof::parse_proofs(t8).unwrap()[0];
    println!("disj: {:?} head {:?}", proof::check(&ctx2, &d8.term, &d8.formula, 1000).status,
             proof::head_of_normal(&d8.term).map(|h| h.name()));

    // mem through the class schema
    let t9 = "proof m : mem(0, nclass[x | Nat(x)]()) in zermod { triv }";
    let d9 = &proof::parse_proofs(t9).unwrap()[0];
    println!("mem class: {:?}", proof::check(&ctx2, &d9.term, &d9.formula, 1000).status);

    // print/reparse round trip of a structured proof
    let t10 = r#"proof rt : (Null(o) /\ Nat(o)) -> Nat(o) /\ Null(o) in zermod { fun h => (snd h, fst h) }"#;
    let d10 = &proof::parse_proofs(t10).unwrap()[0];
    let printed = format!("proof rt : {} in zermod {{ {} }}", d10.formula, d10.term);
    let d10b = &proof::parse_proofs(&printed).unwrap()[0];
    println!("proof round trip: {}", d10.term == d10b.term);
    println!("check rt: {:?}", proof::check(&ctx2, &d10.term, &d10.formula, 1000).status);

    let _ = lang::parse_formula("true", Lang::Zermod);
}
