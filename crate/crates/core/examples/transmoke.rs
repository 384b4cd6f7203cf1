use zermod::lang::{self, Lang, Sort, Var};
use zermod::translate as tr;

fn main() {
    // dagger
    let f = lang::parse_formula("x = y", Lang::Zst).unwrap();
    println!("dagger(x = y) = {}", tr::dagger(&f).unwrap());
    let f = lang::parse_formula("forall x:Set. ~(x in x)", Lang::Zst).unwrap();
    println!("dagger(forall) = {}", tr::dagger(&f).unwrap());
    let f = lang::parse_formula("x in y /\\ y = z", Lang::Zst).unwrap();
    println!("dagger(mixed) = {}", tr::dagger(&f).unwrap());

    // star, simple clauses
    for txt in [
        "i(a)", "j(a)", "i'(x)", "root(a)", "a / b", "o", "S(x)", "Pred(x)", "rho(a)", "rho'(x)",
    ] {
        let t = lang::parse_term(txt, Lang::Zermod).unwrap();
        println!("star({}) = {}", txt, tr::star_term(&t).unwrap());
    }
    for txt in [
        "eta(a, x, y)", "x = y", "mem(x, p)", "rel(x, y, r)", "I(t)", "J(t)", "Null(t)",
        "x < y", "Nat(t)", "a ~~ b", "a in b",
        "exists x:N. true", "forall a:G. a ~~ a",
    ] {
        let f = lang::parse_formula(txt, Lang::Zermod).unwrap();
        println!("star({}) = {}", txt, tr::star_formula(&f).unwrap());
    }
    // constructions
    for txt in ["Union(a)", "Omega"] {
        let t = lang::parse_term(txt, Lang::Zermod).unwrap();
        println!("star({}) = {}", txt, tr::star_term(&t).unwrap());
    }
    let t = lang::parse_term("nclass[x; y | mem(x, nclass[z | Nat(z)]()) ]( w )", Lang::Zermod);
    match t {
        Ok(t) => println!("g: {}", tr::star_term(&t).unwrap()),
        Err(e) => println!("g parse err: {}", e),
    }

    // circle
    let z = Var::new("z", Sort::Set);
    for txt in ["Pair(t1, t2)", "NN", "Union(t)", "Pow(t)", "{ x in t | x in w }", "TC(t)"] {
        let t = lang::parse_term(txt, Lang::Zskol).unwrap();
        println!("z inc {} = {}", txt, tr::circ_in(&z, &t).unwrap());
    }
    let f = lang::parse_formula("t1 = t2", Lang::Zskol).unwrap();
    println!("circle(t1 = t2) = {}", tr::circle_formula(&f).unwrap());
    let f = lang::parse_formula("mem(t, [ x | x in w ])", Lang::Zskol).unwrap();
    let c = tr::circle_formula(&f).unwrap();
    println!("circle(mem) = {}", c);
    tr::check_zclass(&c).unwrap();
    println!("zclass check ok");

    // relativization predicates
    for s in [Sort::G, Sort::N, Sort::C, Sort::R] {
        println!("rel {} = {}", s, tr::relativization_predicate(s).unwrap());
    }

    // star output is well-sorted zskol
    let f = lang::parse_formula("forall a:G. a in Pow(a)", Lang::Zermod).unwrap();
    let s = tr::star_formula(&f).unwrap();
    lang::check_sorts(&lang::Parsed::Formula(s.clone()), &lang::Signature::for_lang(Lang::Zskol)).unwrap();
    println!("star sort-check ok: {}", s);
    // and the star output round-trips through the zskol parser
    let printed = s.to_string();
    let re = lang::parse_formula(&printed, Lang::Zskol).unwrap();
    println!("star print/parse round trip: {}", lang::alpha_eq(&s, &re));
}
