//! Generates an instance, round-trips it through the text format and prints the JSON result.
//!
//! `cargo run --example random_instances -- <vertices> <degree> <max-weight> <seed>`

use mpg::{emit_result, generate_random, parse_instance, solve_mpg, write_instance};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<u64> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let (n, d, w, seed) = match args[..] {
        [n, d, w, s] => (n as usize, d as usize, w as i64, s),
        _ => (6, 3, 4, 42),
    };
    let arena = generate_random(n, d, w, seed);
    let text = write_instance(&arena);
    assert_eq!(parse_instance(&text)?, arena);
    print!("{text}");
    print!("{}", emit_result(&solve_mpg(&arena)?, &arena, None));
    Ok(())
}
