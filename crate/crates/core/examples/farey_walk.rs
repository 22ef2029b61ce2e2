//! Prints the Farey sequence of a given order, one term at a time.
//!
//! `cargo run --example farey_walk -- 5`

use mpg::{farey_next, farey_size, farey_start};

fn main() {
    let n: usize = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(5);
    let mut cursor = farey_start(n);
    let mut terms = vec![cursor.previous(), cursor.current()];
    while let Some(term) = farey_next(&mut cursor) {
        terms.push(term);
    }
    let listing: Vec<String> = terms.iter().map(ToString::to_string).collect();
    println!("F_{n} ({} terms): {}", farey_size(n), listing.join(", "));
}
