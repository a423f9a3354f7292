//! Replay the lifted combinator chains and the numeral translation.

use kamforce::arith::numeral;
use kamforce::balg::{application_case, check_chain, lifted_combinator_cases, run_j, translate};

fn main() {
    let mut cases = lifted_combinator_cases();
    cases.push(application_case());
    for case in &cases {
        match check_chain(case, 200_000) {
            Ok(r) => println!("{:<4} {} steps, ends under {}", case.name, r.steps, r.condition),
            Err(e) => println!("{:<4} FAILED: {e}", case.name),
        }
    }
    for n in 0..4 {
        let want = translate(&numeral(n)).unwrap().term;
        let ok = run_j(n, 200_000).as_ref() == Some(&want);
        println!("j {n}: {}", if ok { "matches the translated numeral" } else { "mismatch" });
    }
}
