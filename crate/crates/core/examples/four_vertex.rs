//! Solves the bundled four-vertex instance and cross-checks it against the oracle.
//!
//! Run with `cargo run --example four_vertex`.

use mpg::oracle::{brute_force_solve, min_mean_cycle};
use mpg::{parse_instance, solve_mpg, verify_strategy, Arc};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let arena = parse_instance(include_str!("data/four_vertex.mpg"))?;
    let solution = solve_mpg(&arena)?;
    let oracle = brute_force_solve(&arena)?;

    let names = ["A", "B", "C", "D"];
    for v in arena.vertices() {
        let choice = solution.strategy_at(v).map_or("-", |u| names[u]);
        println!(
            "{}: owner {}, value {}, oracle {}, strategy {}",
            names[v],
            arena.owner(v),
            solution.values()[v],
            oracle[v],
            choice
        );
    }
    assert_eq!(solution.values(), &oracle[..]);
    assert!(verify_strategy(&arena, solution.strategy(), &oracle));

    // The cycle C -> D -> C on its own.
    let cycle = [
        Arc::new(0, 1, arena.weight(2, 3).unwrap()),
        Arc::new(1, 0, arena.weight(3, 2).unwrap()),
    ];
    println!(
        "mean of C -> D -> C: {}",
        min_mean_cycle(2, &cycle).unwrap()
    );
    println!(
        "lifts: {}, phases: {}",
        solution.lift_total(),
        solution.phases()
    );
    Ok(())
}
