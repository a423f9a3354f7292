//! Check natural deduction derivations and print the compiled proof terms.

use kamforce::logic::{nd_check, Derivation, Formula};

fn main() {
    let a = |x: &str| Formula::atom(x, vec![]);
    let k = Derivation::lam("x", a("A"), Derivation::lam("y", a("B"), Derivation::hyp("x")));
    let peirce = Derivation::Peirce { a: a("A"), b: a("B") };
    let bad = Derivation::lam("x", a("A"), Derivation::hyp("y"));
    for d in [k, peirce, bad] {
        match nd_check(&[], &d) {
            Ok(j) => println!("{}  realized by  {}", j.conclusion, j.compiled()),
            Err(e) => println!("rejected: {e}"),
        }
    }
}
