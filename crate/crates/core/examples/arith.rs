//! Evaluate every arithmetic term in the catalog on a few inputs.

use kamforce::arith::{catalog, Outcome};

fn main() {
    for e in catalog() {
        let args: Vec<u64> = (0..e.numeral_arity() as u64).map(|i| 5 + 2 * i).collect();
        match e.evaluate(&args, 2_000_000) {
            Ok((Outcome::Value(n), steps)) => println!("{:<10} {args:?} = {n} ({steps} steps)", e.name),
            Ok((Outcome::Branch(b), steps)) => println!("{:<10} {args:?} picks {b} ({steps} steps)", e.name),
            Err(err) => println!("{:<10} {args:?} failed: {err}", e.name),
        }
    }
}
