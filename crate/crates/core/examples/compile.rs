//! Compile λ-terms to combinators and print both sides.

use kamforce::term::{compile, parse_lterm};

fn main() {
    for src in [r"\x x", r"\x \y x", r"\f \x (f) (f) x", r"\x (x) x", r"\k (k) cc"] {
        let t = parse_lterm(src).expect("valid λ-term");
        println!("{src:<20} => {}", compile(&t));
    }
}
