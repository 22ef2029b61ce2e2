#![allow(dead_code)]

use mpg::energy::{value_iteration, EnergyLevels, Level};
use mpg::{generate_random, Arena, Phase, Rational64, ReweightParams, ScanObserver, VertexId};

/// Seeded arena with 1..=max_vertices vertices, out-degree <= 3.
pub fn small_arena(seed: u64, max_vertices: usize, max_weight: i64) -> Arena {
    let n = 1 + (seed as usize * 7919) % max_vertices;
    generate_random(n, 3, max_weight, seed)
}

/// Same arena with every weight increased by `q`.
pub fn shifted(arena: &Arena, q: i64) -> Arena {
    arena
        .reweight(ReweightParams::new(-q, 0, 1).unwrap())
        .unwrap()
}

pub fn lift_bound(arena: &Arena) -> u64 {
    let n = arena.vertex_count() as u64;
    4 * n.pow(3) * (2 * arena.max_abs_weight() as u64 + 1)
}

/// Least SEPM by exhaustive search: the pointwise minimum over all SEPMs
/// with levels in `{0..=cap, Top}`.
pub fn least_sepm_by_search(arena: &Arena) -> EnergyLevels {
    let n = arena.vertex_count();
    let cap = EnergyLevels::zeros_for(arena).unwrap().cap();
    let choices: Vec<Level> = (0..=cap).map(Level::Finite).chain([Level::Top]).collect();
    let mut least = vec![Level::Top; n];
    let mut digits = vec![0usize; n];
    loop {
        let f = EnergyLevels::new(cap, digits.iter().map(|&d| choices[d]).collect());
        if f.is_sepm(arena) {
            for (v, slot) in least.iter_mut().enumerate() {
                *slot = (*slot).min(f.get(v));
            }
        }
        let mut k = 0;
        while k < n && digits[k] + 1 == choices.len() {
            digits[k] = 0;
            k += 1;
        }
        if k == n {
            break;
        }
        digits[k] += 1;
    }
    EnergyLevels::new(cap, least)
}

/// Full-scan observer checking the per-phase invariants of the value scan.
#[derive(Default)]
pub struct ScanAudit {
    pub phases: u64,
    /// Vertices whose scaled level decreased between consecutive phases.
    pub decreases: Vec<(VertexId, i64, usize)>,
    /// Phases whose warm start was not below the result.
    pub warm_start_above: u64,
    /// Phases whose result differs from value iteration started at zero.
    pub cold_mismatch: u64,
    pub transitions: Vec<u32>,
    pub recompute_cold: bool,
}

impl ScanAudit {
    pub fn with_cold_check() -> Self {
        ScanAudit {
            recompute_cold: true,
            ..Default::default()
        }
    }

    pub fn violations(&self) -> u64 {
        self.decreases.len() as u64 + self.warm_start_above + self.cold_mismatch
    }
}

fn ratio(level: Level, den: i64) -> Option<Rational64> {
    level.finite().map(|x| Rational64::new(x, den))
}

impl ScanObserver for ScanAudit {
    fn on_phase(&mut self, phase: &Phase) {
        let n = phase.current.levels.len();
        if self.transitions.is_empty() {
            self.transitions = vec![0; n];
        }
        self.phases += 1;
        for v in 0..n {
            let before = ratio(phase.previous.levels.get(v), phase.previous.den);
            let after = ratio(phase.current.levels.get(v), phase.current.den);
            // None is Top, the largest level.
            let decreased = match (before, after) {
                (None, Some(_)) => true,
                (Some(b), Some(a)) => a < b,
                _ => false,
            };
            if decreased {
                self.decreases.push((v, phase.index.i, phase.index.j));
            }
            if before.is_some() && after.is_none() {
                self.transitions[v] += 1;
            }
            if phase.warm_start.get(v) > phase.current.levels.get(v) {
                self.warm_start_above += 1;
            }
        }
        if self.recompute_cold {
            let cold = value_iteration(
                phase.reweighted,
                EnergyLevels::zeros_for(phase.reweighted).unwrap(),
            );
            if cold.levels != phase.current.levels {
                self.cold_mismatch += 1;
            }
        }
    }

    fn wants_full_scan(&self) -> bool {
        true
    }
}
