//! Replay the realizer corpus and print the report.

use kamforce::corpus::replay_all;

fn main() {
    let mut failed = 0;
    for r in replay_all(200_000) {
        if !r.passed() {
            failed += 1;
        }
        for line in r.lines() {
            println!("{line}");
        }
    }
    println!("{failed} entries failed");
}
