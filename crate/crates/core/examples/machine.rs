//! Run a few processes on the machine and print every step.

use kamforce::kam::{run, FirstSeenCodec, Process};
use kamforce::term::{compile, parse_cterm, parse_lterm, parse_stack};

fn show(p: Process) {
    let trace = run(p, 1_000, &mut FirstSeenCodec::new());
    for line in trace.lines() {
        println!("  {line}");
    }
    println!("  => {}\n", trace.status);
}

fn main() {
    let twice = compile(&parse_lterm(r"\f \x (f) (f) x").unwrap());
    println!("twice ⋆ g.a.π0");
    show(Process::with_args(twice, [parse_cterm("g").unwrap(), parse_cterm("a").unwrap()], "π0"));

    // cc saves the current stack; calling the continuation restores it.
    let head = parse_cterm("(cc) K").unwrap();
    println!("cc ⋆ K.a.b.π0");
    show(Process::new(head, parse_stack("a.b.π0").unwrap()));
}
