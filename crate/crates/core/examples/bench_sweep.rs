//! Runs a timing sweep and fits wall time against `|V|^2 |E| W`.
//!
//! `cargo run --release --example bench_sweep`

use mpg::bench::{fit_bound, run_bench, to_csv, BenchConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let config = BenchConfig::default();
    let records = run_bench(&config)?;
    print!("{}", to_csv(&records));
    let fit = fit_bound(&records);
    println!("\nfitted c = {:.3e} ms", fit.c);
    for (n, w, ms, ratio) in &fit.points {
        println!("|V|={n:<3} W={w:<3} median {ms:>9.3} ms  time/(c*bound) {ratio:.2}");
    }
    println!("max ratio {:.2}", fit.max_ratio());
    Ok(())
}
