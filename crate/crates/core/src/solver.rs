//! The scan-phase solver for mean payoff games.
//!
//! Candidate values `z = i + F_j` (integer part `i` in `[-W, W]`, fractional
//! part a Farey term of order `|V|`) are visited in increasing order. For
//! each one the arena is reweighted to `D * (w - i) - N` and its least SEPM
//! is computed by value iteration, warm-started from the ceiling-scaled least
//! SEPM of the previous candidate. A vertex whose level jumps from finite to
//! `Top` between two consecutive candidates has the earlier candidate as its
//! value; for a Player 0 vertex, any out-arc compatible with the previous
//! least SEPM is an optimal positional move.

use num_rational::Rational64;
use thiserror::Error;

use crate::arena::{Arena, ArenaError, Player, ReweightParams, VertexId};
use crate::energy::{energy_cap, ominus, value_iteration, EnergyError, EnergyLevels, Level};
use crate::farey::{farey_size, FareyCursor, FareyTerm};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error(transparent)]
    Arena(#[from] ArenaError),
    #[error(transparent)]
    Energy(#[from] EnergyError),
    #[error("scaled energy level overflows 64-bit arithmetic")]
    Overflow,
    #[error("invariant violated: Player 0 vertex {0} has no compatible arc at its transition")]
    NoCompatibleArc(VertexId),
    #[error("invariant violated: vertex {0} transitioned twice")]
    DoubleTransition(VertexId),
    #[error("invariant violated: vertex {0} never transitioned")]
    Unassigned(VertexId),
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
}

/// Position `(i, j)` in the scan: integer shift `i` and Farey index `j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ScanIndex {
    pub i: i64,
    pub j: usize,
}

impl ScanIndex {
    pub fn new(i: i64, j: usize) -> Self {
        ScanIndex { i, j }
    }

    /// The phase preceding `self`, for an arena with max weight `w` and a
    /// Farey sequence of `s` terms. The first phase `(-w, 1)` maps to `(-w, 0)`.
    pub fn prev(self, w: i64, s: usize) -> ScanIndex {
        if self.j > 1 {
            ScanIndex::new(self.i, self.j - 1)
        } else if self.i > -w {
            ScanIndex::new(self.i - 1, s - 1)
        } else {
            ScanIndex::new(-w, 0)
        }
    }
}

/// Integer levels of a reweighted game together with its scale factor `den`;
/// the rational level of `v` is `levels[v] / den`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScaledLevels {
    pub den: i64,
    pub levels: EnergyLevels,
}

impl ScaledLevels {
    pub fn new(den: i64, levels: EnergyLevels) -> Self {
        assert!(den >= 1);
        ScaledLevels { den, levels }
    }

    /// Rational level at `v`, `None` for `Top`.
    pub fn ratio(&self, v: VertexId) -> Option<Rational64> {
        self.levels
            .get(v)
            .finite()
            .map(|x| Rational64::new(x, self.den))
    }

    pub fn is_top(&self, v: VertexId) -> bool {
        self.levels.get(v).is_top()
    }
}

/// `⌈den * prev(v)⌉` for every vertex, in exact integer arithmetic; values
/// beyond `cap` become `Top`.
pub fn ceil_scale(prev: &ScaledLevels, den: i64, cap: i64) -> Result<EnergyLevels, SolveError> {
    let levels = prev
        .levels
        .as_slice()
        .iter()
        .map(|&level| match level {
            Level::Top => Ok::<_, SolveError>(Level::Top),
            Level::Finite(x) => {
                let scaled = x.checked_mul(den).ok_or(SolveError::Overflow)?;
                Ok(Level::Finite(num_integer::Integer::div_ceil(
                    &scaled, &prev.den,
                )))
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(EnergyLevels::new(cap, levels))
}

/// Everything known about one scan phase, handed to a [`ScanObserver`].
#[derive(Debug)]
pub struct Phase<'a> {
    pub index: ScanIndex,
    /// The Farey term `F_j = N / D` of this phase.
    pub term: FareyTerm,
    pub params: ReweightParams,
    /// The arena reweighted to `D * (w - i) - N`.
    pub reweighted: &'a Arena,
    /// Least SEPM of the previous phase.
    pub previous: &'a ScaledLevels,
    /// Initial levels handed to value iteration.
    pub warm_start: &'a EnergyLevels,
    /// Least SEPM of this phase.
    pub current: &'a ScaledLevels,
    pub lifts: u64,
}

/// Hook into the scan loop, used for instrumentation.
pub trait ScanObserver {
    fn on_phase(&mut self, phase: &Phase<'_>);

    /// Keep scanning after every vertex has a value.
    fn wants_full_scan(&self) -> bool {
        false
    }
}

impl ScanObserver for () {
    fn on_phase(&mut self, _phase: &Phase<'_>) {}
}

/// Values, winning regions and an optimal positional strategy for Player 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    values: Vec<Rational64>,
    winning0: Vec<VertexId>,
    winning1: Vec<VertexId>,
    strategy: Vec<Option<VertexId>>,
    lift_total: u64,
    phases: u64,
}

impl Solution {
    pub fn values(&self) -> &[Rational64] {
        &self.values
    }

    pub fn value_of(&self, v: VertexId) -> Result<Rational64, SolveError> {
        self.values
            .get(v)
            .copied()
            .ok_or(SolveError::UnknownVertex(v))
    }

    /// Vertices with value `>= 0` for Player 0 and `< 0` for Player 1, ascending.
    pub fn winning_region(&self, player: Player) -> &[VertexId] {
        match player {
            Player::Zero => &self.winning0,
            Player::One => &self.winning1,
        }
    }

    pub fn winner(&self, v: VertexId) -> Result<Player, SolveError> {
        let value = self.value_of(v)?;
        Ok(if value >= Rational64::from_integer(0) {
            Player::Zero
        } else {
            Player::One
        })
    }

    /// Player 0's positional choice per vertex; `None` on Player 1 vertices.
    pub fn strategy(&self) -> &[Option<VertexId>] {
        &self.strategy
    }

    pub fn strategy_at(&self, v: VertexId) -> Option<VertexId> {
        self.strategy.get(v).copied().flatten()
    }

    /// Total number of lifting steps over all phases.
    pub fn lift_total(&self) -> u64 {
        self.lift_total
    }

    /// Number of scan phases executed.
    pub fn phases(&self) -> u64 {
        self.phases
    }
}

/// Solves `arena`: exact values, winning regions and an optimal strategy for Player 0.
pub fn solve_mpg(arena: &Arena) -> Result<Solution, SolveError> {
    solve_mpg_observed(arena, &mut ())
}

pub fn solve_mpg_observed<O: ScanObserver>(
    arena: &Arena,
    observer: &mut O,
) -> Result<Solution, SolveError> {
    let n = arena.vertex_count();
    let w = arena.max_abs_weight();
    let s = farey_size(n);
    let full_scan = observer.wants_full_scan();

    // Phase (-W, 0): weights w + W are non-negative, so the zero function is the least SEPM.
    let mut prev_params = ReweightParams::new(-w, 0, 1)?;
    let mut scratch = arena.reweight(prev_params)?;
    let mut prev_cap = energy_cap(&scratch)?;
    let mut current = ScaledLevels::new(1, EnergyLevels::zeros(n, prev_cap));

    let mut values: Vec<Option<Rational64>> = vec![None; n];
    let mut strategy: Vec<Option<VertexId>> = vec![None; n];
    let mut assigned = 0usize;
    let mut lift_total = 0u64;
    let mut phases = 0u64;

    'scan: for i in -w..=w {
        let mut cursor = FareyCursor::start(n);
        let mut prev_term = FareyTerm::ZERO;
        loop {
            let term = cursor.current();
            let index = ScanIndex::new(i, cursor.index());
            debug_assert!(index.j < s);

            let params = ReweightParams::new(i, term.num, term.den)?;
            scratch.assign_reweighted(arena, params)?;
            let cap = energy_cap(&scratch)?;
            let warm_start = ceil_scale(&current, term.den, cap)?;
            let outcome = value_iteration(&scratch, warm_start.clone());
            lift_total += outcome.lifts;
            phases += 1;
            let next = ScaledLevels::new(term.den, outcome.levels);

            observer.on_phase(&Phase {
                index,
                term,
                params,
                reweighted: &scratch,
                previous: &current,
                warm_start: &warm_start,
                current: &next,
                lifts: outcome.lifts,
            });

            for v in arena.vertices() {
                if current.is_top(v) || !next.is_top(v) {
                    continue;
                }
                if values[v].is_some() {
                    return Err(SolveError::DoubleTransition(v));
                }
                values[v] = Some(Rational64::new(
                    i * prev_term.den + prev_term.num,
                    prev_term.den,
                ));
                assigned += 1;
                if arena.owner(v) == Player::Zero {
                    let here = current.levels.get(v);
                    let choice = arena.successors(v).iter().find_map(|&(u, weight)| {
                        // Weights of the previous phase were already checked for overflow.
                        let prev_weight = prev_params.apply(weight)?;
                        (here >= ominus(current.levels.get(u), prev_weight, prev_cap)).then_some(u)
                    });
                    strategy[v] = Some(choice.ok_or(SolveError::NoCompatibleArc(v))?);
                }
            }

            current = next;
            prev_params = params;
            prev_cap = cap;
            prev_term = term;
            if assigned == n && !full_scan {
                break 'scan;
            }
            if cursor.advance().is_none() {
                break;
            }
        }
    }

    let values = values
        .into_iter()
        .enumerate()
        .map(|(v, value)| value.ok_or(SolveError::Unassigned(v)))
        .collect::<Result<Vec<_>, _>>()?;
    let zero = Rational64::from_integer(0);
    let (winning0, winning1): (Vec<_>, Vec<_>) = arena.vertices().partition(|&v| values[v] >= zero);

    Ok(Solution {
        values,
        winning0,
        winning1,
        strategy,
        lift_total,
        phases,
    })
}
