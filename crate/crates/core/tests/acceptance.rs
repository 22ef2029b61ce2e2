//! One PASS/FAIL line per acceptance criterion. Exits non-zero on any failure.

mod common;

use std::cell::Cell;
use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use common::{least_sepm_by_search, lift_bound, shifted, small_arena, ScanAudit};
use mpg::bench::{fit_bound, run_bench, BenchConfig};
use mpg::energy::{value_iteration, EnergyLevels};
use mpg::oracle::{brute_force_solve, exhaustive_arenas_up_to_relabelling, min_mean_cycle};
use mpg::{
    farey_next, farey_start, generate_random, parse_instance, solve_mpg, solve_mpg_observed,
    verify_strategy, write_instance, Arc, Arena, FareyTerm, Rational64, Solution,
};

const FOUR_VERTEX: &str = include_str!("../examples/data/four_vertex.mpg");

thread_local! {
    static LIFT_CHECKS: Cell<u64> = const { Cell::new(0) };
    static LIFT_VIOLATIONS: Cell<u64> = const { Cell::new(0) };
}

/// Solves and records whether the lift count stayed within `4 |V|^3 (2W + 1)`.
fn solve(arena: &Arena) -> Solution {
    let solution = solve_mpg(arena).unwrap();
    track_lifts(arena, &solution);
    solution
}

fn track_lifts(arena: &Arena, solution: &Solution) {
    LIFT_CHECKS.with(|c| c.set(c.get() + 1));
    if solution.lift_total() > lift_bound(arena) {
        LIFT_VIOLATIONS.with(|c| c.set(c.get() + 1));
    }
}

fn random_family() -> Vec<Arena> {
    (0..200).map(|seed| small_arena(seed, 6, 4)).collect()
}

fn sepm_family() -> Vec<Arena> {
    (0..60).map(|seed| small_arena(1000 + seed, 4, 2)).collect()
}

fn finite_set_matches_values(arena: &Arena, values: &[Rational64]) -> bool {
    let least = value_iteration(arena, EnergyLevels::zeros_for(arena).unwrap()).levels;
    arena
        .vertices()
        .all(|v| !least.get(v).is_top() == (values[v] >= Rational64::from_integer(0)))
}

type Criterion = (&'static str, fn() -> Verdict);

struct Verdict {
    ok: bool,
    detail: String,
    limit: Option<Duration>,
}

fn verdict(ok: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        ok,
        detail: detail.into(),
        limit: None,
    }
}

impl Verdict {
    fn within(mut self, limit: Duration) -> Self {
        self.limit = Some(limit);
        self
    }
}

fn criterion_1() -> Verdict {
    let start = Instant::now();
    let mut cursor = farey_start(5);
    let mut terms = vec![cursor.previous(), cursor.current()];
    while let Some(t) = farey_next(&mut cursor) {
        terms.push(t);
    }
    let elapsed = start.elapsed();
    let expected: Vec<FareyTerm> = [
        (0, 1),
        (1, 5),
        (1, 4),
        (1, 3),
        (2, 5),
        (1, 2),
        (3, 5),
        (2, 3),
        (3, 4),
        (4, 5),
        (1, 1),
    ]
    .iter()
    .map(|&(n, d)| FareyTerm::new(n, d))
    .collect();
    verdict(
        terms == expected && elapsed < Duration::from_millis(1),
        format!("{} terms in {elapsed:?}", terms.len()),
    )
}

fn criterion_2() -> Verdict {
    let arena = parse_instance(FOUR_VERTEX).unwrap();
    let solution = solve(&arena);
    let oracle = brute_force_solve(&arena).unwrap();
    let (c, d) = (2, 3);
    let cycle = [
        Arc::new(0, 1, arena.weight(c, d).unwrap()),
        Arc::new(1, 0, arena.weight(d, c).unwrap()),
    ];
    let mean = min_mean_cycle(2, &cycle).unwrap();
    let strategy_ok = verify_strategy(&arena, solution.strategy(), &oracle);
    let values: Vec<String> = solution.values().iter().map(ToString::to_string).collect();
    verdict(
        solution.values() == &oracle[..] && mean == Rational64::from_integer(0) && strategy_ok,
        format!("values {values:?}, C->D->C mean {mean}, strategy verified: {strategy_ok}"),
    )
    .within(Duration::from_secs(1))
}

fn criterion_3() -> Verdict {
    let (mut checked, mut failures) = (0u64, Vec::new());
    let exhaustive = exhaustive_arenas_up_to_relabelling(3, 2, -2..=2);
    for (k, arena) in exhaustive.chain(random_family()).enumerate() {
        let solution = solve(&arena);
        let oracle = brute_force_solve(&arena).unwrap();
        if solution.values() != &oracle[..]
            || !verify_strategy(&arena, solution.strategy(), &oracle)
        {
            failures.push(k);
        }
        checked += 1;
    }
    verdict(
        failures.is_empty(),
        format!(
            "{checked} arenas (exhaustive family up to relabelling + 200 seeded), {} failures {:?}",
            failures.len(),
            &failures[..failures.len().min(5)]
        ),
    )
    .within(Duration::from_secs(60))
}

fn criterion_4() -> Verdict {
    let family = sepm_family();
    let mismatches = family
        .iter()
        .filter(|arena| {
            let vi = value_iteration(arena, EnergyLevels::zeros_for(arena).unwrap()).levels;
            vi != least_sepm_by_search(arena)
        })
        .count();
    verdict(
        mismatches == 0,
        format!("{} arenas, {mismatches} mismatches", family.len()),
    )
    .within(Duration::from_secs(60))
}

fn criterion_5() -> Verdict {
    let mut checked = 0;
    let mut mismatches = 0;
    let exhaustive = exhaustive_arenas_up_to_relabelling(3, 2, -2..=2);
    for arena in exhaustive.chain(random_family()).chain(sepm_family()) {
        let oracle = brute_force_solve(&arena).unwrap();
        if !finite_set_matches_values(&arena, &oracle) {
            mismatches += 1;
        }
        checked += 1;
    }
    verdict(
        mismatches == 0,
        format!("{checked} arenas, {mismatches} set mismatches"),
    )
}

fn criterion_6() -> Verdict {
    let mut instances: Vec<Arena> = random_family();
    instances.extend(sepm_family());
    instances.push(parse_instance(FOUR_VERTEX).unwrap());
    let (mut count, mut phases, mut violations) = (0, 0, 0);
    for arena in instances
        .into_iter()
        .chain(exhaustive_arenas_up_to_relabelling(3, 2, -2..=2))
    {
        let mut audit = ScanAudit::default();
        let solution = solve_mpg_observed(&arena, &mut audit).unwrap();
        track_lifts(&arena, &solution);
        count += 1;
        phases += audit.phases;
        violations += audit.decreases.len() + audit.warm_start_above as usize;
    }
    verdict(
        violations == 0,
        format!("{count} instances, full scans, {phases} phases audited, {violations} violations"),
    )
}

fn criterion_7() -> Verdict {
    let mut mismatches = 0;
    let family = random_family();
    for arena in &family {
        let base = solve(arena);
        for q in -3..=3 {
            let moved_arena = shifted(arena, q);
            let moved = solve(&moved_arena);
            if arena
                .vertices()
                .any(|v| moved.values()[v] != base.values()[v] + q)
            {
                mismatches += 1;
            }
        }
    }
    verdict(
        mismatches == 0,
        format!(
            "{} arenas x 7 shifts, {mismatches} mismatches",
            family.len()
        ),
    )
}

fn criterion_8() -> Verdict {
    let config = BenchConfig {
        repeats: 5,
        ..BenchConfig::default()
    };
    let records = run_bench(&config).unwrap();
    let mut bound_ok = records.iter().all(|r| {
        let n = r.vertices as u64;
        r.lift_total <= 4 * n.pow(3) * (2 * r.max_weight as u64 + 1)
    });
    let checks = LIFT_CHECKS.with(Cell::get) + records.len() as u64;
    bound_ok &= LIFT_VIOLATIONS.with(Cell::get) == 0;
    let fit = fit_bound(&records);
    let band_ok = fit.max_ratio() <= 4.0;
    let worst = fit
        .points
        .iter()
        .max_by(|a, b| a.3.total_cmp(&b.3))
        .map(|p| format!("|V|={} W={}", p.0, p.1))
        .unwrap_or_default();
    verdict(
        bound_ok && band_ok,
        format!(
            "(a) lift bound held on {checks} solves: {bound_ok}; (b) c = {:.3e} ms, max time/(c*|V|^2|E|W) = {:.2} at {worst}",
            fit.c,
            fit.max_ratio()
        ),
    )
    .within(Duration::from_secs(300))
}

fn criterion_9() -> Verdict {
    let generated = write_instance(&generate_random(30, 4, 10, 9));
    let mut identical = true;
    for text in [FOUR_VERTEX, generated.as_str()] {
        let mut file = tempfile::NamedTempFile::new().unwrap();
        file.write_all(text.as_bytes()).unwrap();
        let run = || {
            Command::new(env!("CARGO_BIN_EXE_mpg"))
                .args(["solve", file.path().to_str().unwrap(), "--json"])
                .output()
                .unwrap()
        };
        let (a, b) = (run(), run());
        identical &= a.status.success()
            && b.status.success()
            && !a.stdout.is_empty()
            && a.stdout == b.stdout;
    }
    verdict(
        identical,
        "two `solve --json` runs per instance, byte-identical",
    )
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("farey ground truth", criterion_1),
        ("four-vertex example end to end", criterion_2),
        ("oracle equivalence sweep", criterion_3),
        ("least SEPM minimality", criterion_4),
        ("finite levels = non-negative values", criterion_5),
        ("scan monotonicity", criterion_6),
        ("integer shift of values", criterion_7),
        ("lift bound and bench growth", criterion_8),
        ("determinism", criterion_9),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check));
        let elapsed = start.elapsed();
        let (ok, detail) = match outcome {
            Ok(v) => {
                let in_time = v.limit.is_none_or(|limit| elapsed < limit);
                let detail = match v.limit {
                    Some(limit) if !in_time => format!("{}; exceeded {limit:?}", v.detail),
                    _ => v.detail,
                };
                (v.ok && in_time, detail)
            }
            Err(_) => (false, "panicked".to_string()),
        };
        failed += usize::from(!ok);
        println!(
            "criterion {} [{name}]: {} ({elapsed:.2?}) {detail}",
            k + 1,
            if ok { "PASS" } else { "FAIL" }
        );
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
