//! Timing sweeps over seeded random arenas.

use std::fmt::Write as _;
use std::time::Instant;

use crate::gen::generate_random;
use crate::solver::{solve_mpg, SolveError};

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub sizes: Vec<usize>,
    pub max_weights: Vec<i64>,
    pub degree: usize,
    pub repeats: usize,
    pub seed: u64,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            sizes: vec![10, 20, 40],
            max_weights: vec![8, 16, 32],
            degree: 3,
            repeats: 3,
            seed: 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRecord {
    pub vertices: usize,
    pub arcs: usize,
    pub max_weight: i64,
    pub repeat: usize,
    pub lift_total: u64,
    pub phases: u64,
    pub elapsed_ms: f64,
}

impl BenchRecord {
    /// `|V|^2 * |E| * W`, with `W` floored at 1.
    pub fn bound(&self) -> f64 {
        let n = self.vertices as f64;
        n * n * self.arcs as f64 * self.max_weight.max(1) as f64
    }
}

/// One arena per (size, weight) pair, solved `repeats` times.
pub fn run_bench(config: &BenchConfig) -> Result<Vec<BenchRecord>, SolveError> {
    let mut records = Vec::new();
    for (k, &n) in config.sizes.iter().enumerate() {
        for (l, &w) in config.max_weights.iter().enumerate() {
            let seed = config.seed ^ ((k as u64) << 32 | l as u64);
            let arena = generate_random(n, config.degree, w, seed);
            for repeat in 0..config.repeats {
                let start = Instant::now();
                let solution = solve_mpg(&arena)?;
                let elapsed = start.elapsed();
                records.push(BenchRecord {
                    vertices: n,
                    arcs: arena.arc_count(),
                    max_weight: arena.max_abs_weight(),
                    repeat,
                    lift_total: solution.lift_total(),
                    phases: solution.phases(),
                    elapsed_ms: elapsed.as_secs_f64() * 1e3,
                });
            }
        }
    }
    Ok(records)
}

pub fn to_csv(records: &[BenchRecord]) -> String {
    let mut out = String::from("vertices,arcs,max_weight,repeat,lift_total,phases,elapsed_ms\n");
    for r in records {
        writeln!(
            out,
            "{},{},{},{},{},{},{:.3}",
            r.vertices, r.arcs, r.max_weight, r.repeat, r.lift_total, r.phases, r.elapsed_ms
        )
        .unwrap();
    }
    out
}

/// Fit of median wall time against `c * |V|^2 * |E| * W`.
#[derive(Clone, Debug)]
pub struct BoundFit {
    /// Geometric mean of `time / bound` over all instances.
    pub c: f64,
    /// Per instance: (vertices, max_weight, median ms, median ms / (c * bound)).
    pub points: Vec<(usize, i64, f64, f64)>,
}

impl BoundFit {
    pub fn max_ratio(&self) -> f64 {
        self.points.iter().map(|p| p.3).fold(0.0, f64::max)
    }
}

/// Groups records by instance, takes the median time of each group and fits `c`.
pub fn fit_bound(records: &[BenchRecord]) -> BoundFit {
    let mut groups: Vec<(usize, i64, f64, Vec<f64>)> = Vec::new();
    for r in records {
        match groups
            .iter_mut()
            .find(|g| (g.0, g.1) == (r.vertices, r.max_weight))
        {
            Some(g) => g.3.push(r.elapsed_ms),
            None => groups.push((r.vertices, r.max_weight, r.bound(), vec![r.elapsed_ms])),
        }
    }
    let medians: Vec<(usize, i64, f64, f64)> = groups
        .into_iter()
        .map(|(n, w, bound, mut times)| {
            times.sort_by(f64::total_cmp);
            (n, w, bound, times[times.len() / 2].max(1e-6))
        })
        .collect();
    let log_c = medians.iter().map(|m| (m.3 / m.2).ln()).sum::<f64>() / medians.len().max(1) as f64;
    let c = log_c.exp();
    BoundFit {
        c,
        points: medians
            .iter()
            .map(|m| (m.0, m.1, m.3, m.3 / (c * m.2)))
            .collect(),
    }
}
