use std::time::Instant;
use zermod::graphs::{all_of_rank_le, graph_of_set, reify};

fn main() {
    let sets = all_of_rank_le(4);
    let t0 = Instant::now();
    let mut build = std::time::Duration::ZERO;
    let mut check = std::time::Duration::ZERO;
    let mut ok = 0usize;
    for s in &sets {
        let t = Instant::now();
        let g = graph_of_set(s);
        build += t.elapsed();
        let t = Instant::now();
        if reify(&g).as_ref() == Some(s) {
            ok += 1;
        }
        check += t.elapsed();
    }
    println!("total: {:.2?}  build: {:.2?}  reify: {:.2?}  ok: {}", t0.elapsed(), build, check, ok);
}
