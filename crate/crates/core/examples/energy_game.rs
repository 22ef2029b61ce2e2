//! Energy games: least progress measures, minimum credits and winning regions.
//!
//! Reweights the bundled instance by a candidate value and solves the
//! resulting energy game with value iteration.
//! `cargo run --example energy_game -- 0 1 2` subtracts `0 + 1/2`.

use mpg::energy::{min_credit, value_iteration, EnergyLevels};
use mpg::{parse_instance, ReweightParams};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<i64> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let (shift, num, den) = match args[..] {
        [s, n, d] => (s, n, d),
        _ => (0, 0, 1),
    };
    let arena = parse_instance(include_str!("data/four_vertex.mpg"))?;
    let shifted = arena.reweight(ReweightParams::new(shift, num, den)?)?;
    let outcome = value_iteration(&shifted, EnergyLevels::zeros_for(&shifted)?);

    println!("threshold {shift} + {num}/{den}; {} lifts", outcome.lifts);
    for v in shifted.vertices() {
        let credit = min_credit(&outcome.levels, v);
        let side = if credit.is_top() {
            "Player 1"
        } else {
            "Player 0"
        };
        println!("vertex {v}: minimum credit {credit:?}, won by {side}");
    }
    assert!(outcome.levels.is_sepm(&shifted));
    Ok(())
}
