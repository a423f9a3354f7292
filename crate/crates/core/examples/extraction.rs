//! Build the program extraction example and run it against a stub.

use kamforce::corpus::{extraction_example, replay};

fn main() {
    let t = extraction_example();
    let text = t.to_string();
    println!("ζ has {} nodes: {}...\n", t.size(), &text[..text.char_indices().nth(100).map_or(text.len(), |c| c.0)]);
    for line in replay("extraction", 200_000).unwrap().lines() {
        println!("{line}");
    }
}
