//! Exact values and optimal positional strategies for mean payoff games.
//!
//! [`solve_mpg`] scans candidate values in Farey order and decides each one by
//! solving a reweighted energy game with value iteration. Values come back as
//! exact rationals; the strategy for Player 0 is optimal from every vertex.
//!
//! ```
//! use mpg::{parse_instance, solve_mpg, Rational64};
//!
//! // Player 0 at vertex 0 may take the two-cycle (mean 1/2) or fall into a -1 loop.
//! let arena = parse_instance(
//!     "p mpg 3 4\nv 0 0\nv 1 1\nv 2 1\na 0 1 2\na 0 2 -1\na 1 0 -1\na 2 2 -1\n",
//! )?;
//! let solution = solve_mpg(&arena)?;
//! assert_eq!(solution.values()[0], Rational64::new(1, 2));
//! assert_eq!(solution.values()[2], Rational64::from_integer(-1));
//! assert_eq!(solution.strategy_at(0), Some(1));
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```

pub mod arena;
pub mod bench;
pub mod energy;
pub mod farey;
pub mod gen;
pub mod io;
pub mod oracle;
pub mod solver;

pub use arena::{build_arena, Arc, Arena, ArenaError, Player, ReweightParams, VertexId, Weight};
pub use energy::{value_iteration, EnergyLevels, Level};
pub use farey::{farey_next, farey_sequence, farey_size, farey_start, FareyCursor, FareyTerm};
pub use gen::generate_random;
pub use io::{emit_dot, emit_result, parse_instance, write_instance, ParseError, ResultDocument};
pub use oracle::{brute_force_solve, min_mean_cycle, verify_strategy};
pub use solver::{solve_mpg, solve_mpg_observed, Phase, ScanObserver, Solution, SolveError};

pub use num_rational::Rational64;
