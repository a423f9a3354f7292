//! Force a few formulas and synthesize the matching χ and δ terms.

use kamforce::logic::{force, parse_formula, parse_iterm, prop_structure, synth_chi, synth_delta};

fn main() {
    let p = parse_iterm("p").unwrap();
    for src in ["X -> Y", "forall x. (@R(x) -> X(x))", "((X -> Y) -> X) -> X"] {
        let f = parse_formula(src).unwrap();
        println!("{src}");
        println!("  p ⊩ F   {}", force(&p, &f).unwrap());
        println!("  shape   {}", prop_structure(&f));
        let (chi, chi_inv) = synth_chi(&f);
        println!("  χ       {chi}\n  χ⁻¹     {chi_inv}");
        match synth_delta(&f) {
            Ok((d, d_inv)) => println!("  δ       {d}\n  δ⁻¹     {d_inv}"),
            Err(e) => println!("  δ       not available: {e}"),
        }
    }
}
