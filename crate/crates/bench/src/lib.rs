//! Benchmark fixtures shared by the criterion targets in `benches/`.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stcga::algebra::Algebra;
use stcga::cga7::Event;
use stcga::Multivector;

/// Mixed-signature diagonal metric `(+, −, +, −, …)` of dimension `dim`.
pub fn alternating_algebra(dim: usize) -> Arc<Algebra> {
    let gram = (0..dim)
        .map(|i| (0..dim).map(|j| if i != j { 0.0 } else if i % 2 == 0 { 1.0 } else { -1.0 }).collect())
        .collect();
    Algebra::new(gram).expect("diagonal metric is valid")
}

/// Multivector with every blade present with probability `density`.
pub fn random_multivector(alg: &Arc<Algebra>, density: f64, seed: u64) -> Multivector {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut terms = Vec::new();
    for b in 0..alg.blade_count() as u32 {
        if rng.gen_bool(density) {
            terms.push((b, rng.gen_range(-1.0..1.0)));
        }
    }
    Multivector::from_terms(alg, terms)
}

/// Random vector (grade 1) of the algebra.
pub fn random_vector(alg: &Arc<Algebra>, seed: u64) -> Multivector {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coords: Vec<f64> = (0..alg.dim()).map(|_| rng.gen_range(-1.0..1.0)).collect();
    Multivector::vector(alg, &coords)
}

/// `n` events with coordinates uniform in `[-span, span)`.
pub fn random_events(n: usize, span: f64, seed: u64) -> Vec<Event> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| Event(std::array::from_fn(|_| rng.gen_range(-span..span)))).collect()
}
