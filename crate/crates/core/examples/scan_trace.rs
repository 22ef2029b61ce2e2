//! Traces the value scan phase by phase with a [`ScanObserver`].
//!
//! Each line shows the candidate threshold, its scaled energy levels and the
//! vertices whose level turned infinite at that phase.

use mpg::solver::ScaledLevels;
use mpg::{parse_instance, solve_mpg_observed, Phase, ScanObserver};

struct Trace;

fn render(levels: &ScaledLevels) -> String {
    (0..levels.levels.len())
        .map(|v| levels.ratio(v).map_or("T".to_string(), |r| r.to_string()))
        .collect::<Vec<_>>()
        .join(" ")
}

impl ScanObserver for Trace {
    fn on_phase(&mut self, phase: &Phase) {
        let flipped: Vec<usize> = (0..phase.current.levels.len())
            .filter(|&v| !phase.previous.is_top(v) && phase.current.is_top(v))
            .collect();
        println!(
            "i={:>3} F={:<5} levels [{}] lifts {:>3} flipped {:?}",
            phase.index.i,
            phase.term.to_string(),
            render(phase.current),
            phase.lifts,
            flipped
        );
    }
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let arena =
        parse_instance("p mpg 3 4\nv 0 0\nv 1 1\nv 2 1\na 0 1 2\na 0 2 -1\na 1 0 -1\na 2 2 -1\n")?;
    let solution = solve_mpg_observed(&arena, &mut Trace)?;
    println!(
        "values {:?}",
        solution
            .values()
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
    );
    Ok(())
}
