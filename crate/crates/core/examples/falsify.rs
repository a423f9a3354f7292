//! Search a random finite universe for a counterexample to a realizer.

use kamforce::logic::parse_formula;
use kamforce::pole::{falsify, replay_counterexample, Env, Universe, UniverseConfig, Verdict};
use kamforce::term::{parse_cterm, Atom};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let f = parse_formula("forall2 X/0. forall2 Y/0. (((X -> Y) -> X) -> X)").unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for realizer in [Atom::Cc.into(), parse_cterm("K").unwrap()] {
        for seed in 0..50 {
            let u = Universe::generate(seed, &UniverseConfig::default());
            let v = falsify(&realizer, &f, &Env::default(), &u, 100, &mut rng).unwrap();
            if let Verdict::Counterexample { witness, path } = v {
                println!("{realizer}: counterexample in universe {seed}: {witness} ({path})");
                assert!(replay_counterexample(&u, &witness));
                break;
            }
            if seed == 49 {
                println!("{realizer}: no counterexample in 50 universes");
            }
        }
    }
}
