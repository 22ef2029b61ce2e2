//! Seeded random arenas.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arena::{build_arena, Arc, Arena, Player, Weight};

/// Random arena with `vertices` vertices.
///
/// Each vertex gets between 1 and `min(max_out_degree, vertices)` distinct
/// successors, each arc a weight uniform in `[-max_weight, max_weight]`, and
/// an owner drawn by a fair coin. Identical arguments yield identical arenas.
///
/// # Panics
/// If `vertices == 0`, `max_out_degree == 0` or `max_weight < 0`.
pub fn generate_random(
    vertices: usize,
    max_out_degree: usize,
    max_weight: Weight,
    seed: u64,
) -> Arena {
    assert!(vertices >= 1, "need at least one vertex");
    assert!(max_out_degree >= 1, "need out-degree at least one");
    assert!(max_weight >= 0, "max weight must be non-negative");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let owners: Vec<Player> = (0..vertices)
        .map(|_| {
            if rng.gen_bool(0.5) {
                Player::Zero
            } else {
                Player::One
            }
        })
        .collect();
    let top = max_out_degree.min(vertices);
    let mut arcs = Vec::new();
    for source in 0..vertices {
        let degree = rng.gen_range(1..=top);
        let mut targets = sample(&mut rng, vertices, degree).into_vec();
        targets.sort_unstable();
        for target in targets {
            let weight = rng.gen_range(-max_weight..=max_weight);
            arcs.push(Arc::new(source, target, weight));
        }
    }
    build_arena(vertices, owners, arcs).expect("generated arenas are well formed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::write_instance;

    #[test]
    fn single_vertex() {
        let arena = generate_random(1, 1, 0, 7);
        assert_eq!(arena.vertex_count(), 1);
        assert_eq!(arena.successors(0), &[(0, 0)]);
    }

    #[test]
    fn deterministic() {
        let a = write_instance(&generate_random(12, 4, 9, 3));
        let b = write_instance(&generate_random(12, 4, 9, 3));
        assert_eq!(a, b);
        assert_ne!(a, write_instance(&generate_random(12, 4, 9, 4)));
    }

    #[test]
    fn respects_bounds() {
        let arena = generate_random(6, 3, 4, 42);
        assert_eq!(arena.vertex_count(), 6);
        assert!(arena.max_abs_weight() <= 4);
        for v in arena.vertices() {
            assert!((1..=3).contains(&arena.successors(v).len()));
        }
    }
}
