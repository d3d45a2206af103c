//! Scratch probe for sizing the <H,T> word database. Not part of the build.
use std::time::Instant;

use diagsynth::rz::{RzDatabase, RzSynthesizer};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let sides: Vec<usize> = if args.len() > 1 {
        args[1..].iter().map(|s| s.parse().unwrap()).collect()
    } else {
        vec![10, 14, 18, 22, 24, 26, 28]
    };
    for side in sides {
        let t0 = Instant::now();
        let db = RzDatabase::shared(side);
        let build = t0.elapsed().as_secs_f64();
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let synth = RzSynthesizer::searching(side * 2);
        let mut worst: f64 = 0.0;
        let mut sum = 0.0;
        let mut fails = 0;
        let samples = 80;
        let tq0 = Instant::now();
        for _ in 0..samples {
            let theta: f64 = rng.gen_range(-3.1..3.1);
            match synth.synth_rz(theta, 1.0) {
                Ok(r) => {
                    worst = worst.max(r.achieved_eps);
                    sum += r.achieved_eps;
                }
                Err(_) => fails += 1,
            }
        }
        let per_query = tq0.elapsed().as_secs_f64() / samples as f64;
        println!(
            "side {side:2}  states {:9}  build {build:7.2}s  mean_eps {:9.3e}  worst_eps {:9.3e}  fails {fails}  query {per_query:7.3}s",
            db.len(),
            sum / (samples - fails) as f64,
            worst
        );
    }
}
