//! Synthesize condition rearrangements and check them by replaying the chain.

use kamforce::wedge::{format_chain, gamma_table, parse_wedge, synth_extend, synth_project};

fn main() {
    let t = parse_wedge("p^(q^(r^s))").unwrap();
    for target in ["s^q", "(p^r)^q", "1^p"] {
        let u = parse_wedge(target).unwrap();
        let g = synth_project(&t, &u).unwrap();
        let chain = g.chain(&t).unwrap();
        println!("{t} ⇒ {u}: {} primitives", g.len_prims());
        println!("  {}", format_chain(&t, &chain));
    }
    let u = parse_wedge("q^p").unwrap();
    let ext = synth_extend(&t, &u).unwrap();
    println!("{t} ⇒ {}", ext.apply_to(&t).unwrap());

    println!("\ncatalog:");
    for g in gamma_table() {
        println!("  {:<4} {} ⇒ {}  ({} primitives)", g.name, g.from, g.to, g.expr.len_prims());
    }
}
