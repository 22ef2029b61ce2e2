//! Compares the solver with brute force on seeded random arenas.
//!
//! `cargo run --release --example oracle_check -- 500`

use mpg::oracle::brute_force_solve;
use mpg::{generate_random, solve_mpg, verify_strategy};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let count: u64 = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(200);
    let mut fractional = 0;
    for seed in 0..count {
        let vertices = 1 + (seed % 6) as usize;
        let arena = generate_random(vertices, 3, 4, seed);
        let solution = solve_mpg(&arena)?;
        let oracle = brute_force_solve(&arena)?;
        assert_eq!(solution.values(), &oracle[..], "seed {seed}");
        assert!(
            verify_strategy(&arena, solution.strategy(), &oracle),
            "seed {seed}"
        );
        fractional += oracle.iter().filter(|v| !v.is_integer()).count();
    }
    println!("{count} arenas agree with the oracle ({fractional} fractional values seen)");
    Ok(())
}
