//! Energy games: truncated subtraction, small energy-progress measures and
//! the value-iteration (lifting) procedure computing the least one.
//!
//! Energy levels live in `{0, ..., cap} ∪ {Top}` where `cap = |V| * W` for
//! the game being measured. A function assigning a level to every vertex is
//! an SEPM when every Player 0 vertex has *some* compatible out-arc and every
//! Player 1 vertex has *all* out-arcs compatible, where `(v, u)` is compatible
//! with `f` iff `f(v) ⪰ f(u) ⊖ w(v, u)`. The least SEPM is finite exactly on
//! Player 0's winning region and its finite values are the minimum credits.

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

use crate::arena::{Arena, Player, VertexId, Weight};

/// An energy level. `Finite` values order below `Top`, which realises `⪯`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Level {
    Finite(i64),
    Top,
}

impl Level {
    pub const ZERO: Level = Level::Finite(0);

    pub fn is_top(self) -> bool {
        matches!(self, Level::Top)
    }

    pub fn finite(self) -> Option<i64> {
        match self {
            Level::Finite(x) => Some(x),
            Level::Top => None,
        }
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Level::Finite(x) => write!(f, "{x}"),
            Level::Top => f.write_str("⊤"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnergyError {
    #[error("({0}, {1}) is not an arc")]
    NotAnArc(VertexId, VertexId),
    #[error("energy cap |V| * W overflows")]
    Overflow,
}

/// `a ⊖ b`: `max(0, a - b)` when `a` is finite and `a - b <= cap`, `Top` otherwise.
pub fn ominus(a: Level, b: Weight, cap: i64) -> Level {
    match a {
        Level::Top => Level::Top,
        Level::Finite(a) => match a.checked_sub(b) {
            Some(d) if d <= cap => Level::Finite(d.max(0)),
            _ => Level::Top,
        },
    }
}

/// `|V| * W` for the arena.
pub fn energy_cap(arena: &Arena) -> Result<i64, EnergyError> {
    (arena.vertex_count() as i64)
        .checked_mul(arena.max_abs_weight())
        .ok_or(EnergyError::Overflow)
}

/// A candidate (or least) energy-progress measure.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EnergyLevels {
    cap: i64,
    levels: Vec<Level>,
}

impl EnergyLevels {
    /// Builds levels, mapping finite values above `cap` to `Top`.
    pub fn new(cap: i64, levels: Vec<Level>) -> Self {
        assert!(cap >= 0);
        let levels = levels
            .into_iter()
            .map(|l| match l {
                Level::Finite(x) if x > cap => Level::Top,
                Level::Finite(x) => {
                    assert!(x >= 0, "energy levels are non-negative");
                    l
                }
                Level::Top => l,
            })
            .collect();
        EnergyLevels { cap, levels }
    }

    pub fn zeros(vertex_count: usize, cap: i64) -> Self {
        EnergyLevels::new(cap, vec![Level::ZERO; vertex_count])
    }

    /// The all-zero function with the arena's own cap.
    pub fn zeros_for(arena: &Arena) -> Result<Self, EnergyError> {
        Ok(EnergyLevels::zeros(
            arena.vertex_count(),
            energy_cap(arena)?,
        ))
    }

    pub fn cap(&self) -> i64 {
        self.cap
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    pub fn get(&self, v: VertexId) -> Level {
        self.levels[v]
    }

    pub fn as_slice(&self) -> &[Level] {
        &self.levels
    }

    /// `V_f`, the vertices with a finite level, ascending.
    pub fn finite_vertices(&self) -> Vec<VertexId> {
        (0..self.levels.len())
            .filter(|&v| !self.levels[v].is_top())
            .collect()
    }

    /// Checks both SEPM conditions at every vertex.
    pub fn is_sepm(&self, arena: &Arena) -> bool {
        arena.vertices().all(|v| {
            let mut ok = arena
                .successors(v)
                .iter()
                .map(|&(u, w)| self.levels[v] >= ominus(self.levels[u], w, self.cap));
            match arena.owner(v) {
                Player::Zero => ok.any(|c| c),
                Player::One => ok.all(|c| c),
            }
        })
    }
}

/// Whether `f` violates the SEPM condition at `v`.
pub fn is_inconsistent(arena: &Arena, f: &EnergyLevels, v: VertexId) -> bool {
    let here = f.levels[v];
    let mut demands = arena
        .successors(v)
        .iter()
        .map(|&(u, w)| here < ominus(f.levels[u], w, f.cap));
    match arena.owner(v) {
        Player::Zero => demands.all(|d| d),
        Player::One => demands.any(|d| d),
    }
}

/// The lifting operator at `v`: min over successors of `f(u) ⊖ w` for
/// Player 0, max for Player 1.
pub fn lift(arena: &Arena, f: &EnergyLevels, v: VertexId) -> Level {
    let candidates = arena
        .successors(v)
        .iter()
        .map(|&(u, w)| ominus(f.levels[u], w, f.cap));
    let lifted = match arena.owner(v) {
        Player::Zero => candidates.min(),
        Player::One => candidates.max(),
    };
    lifted.expect("arenas have no sinks")
}

/// Whether the arc `(v, u)` is compatible with `f`.
pub fn is_compatible(
    arena: &Arena,
    f: &EnergyLevels,
    v: VertexId,
    u: VertexId,
) -> Result<bool, EnergyError> {
    let w = arena.weight(v, u).ok_or(EnergyError::NotAnArc(v, u))?;
    Ok(f.levels[v] >= ominus(f.levels[u], w, f.cap))
}

/// Minimum initial credit at `v` read off a least SEPM (`Top` when losing).
pub fn min_credit(f_star: &EnergyLevels, v: VertexId) -> Level {
    f_star.get(v)
}

/// Order in which pending inconsistent vertices are processed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum QueueOrder {
    #[default]
    Fifo,
    Lifo,
}

/// Work list of inconsistent vertices without duplicates.
#[derive(Clone, Debug)]
pub struct LiftQueue {
    order: QueueOrder,
    items: VecDeque<VertexId>,
    member: Vec<bool>,
}

impl LiftQueue {
    pub fn new(vertex_count: usize, order: QueueOrder) -> Self {
        LiftQueue {
            order,
            items: VecDeque::new(),
            member: vec![false; vertex_count],
        }
    }

    /// Adds `v` unless already present. Returns whether it was added.
    pub fn push(&mut self, v: VertexId) -> bool {
        if std::mem::replace(&mut self.member[v], true) {
            return false;
        }
        self.items.push_back(v);
        true
    }

    pub fn pop(&mut self) -> Option<VertexId> {
        let v = match self.order {
            QueueOrder::Fifo => self.items.pop_front(),
            QueueOrder::Lifo => self.items.pop_back(),
        }?;
        self.member[v] = false;
        Some(v)
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.member[v]
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    /// Pending vertices in processing order.
    pub fn to_vec(&self) -> Vec<VertexId> {
        match self.order {
            QueueOrder::Fifo => self.items.iter().copied().collect(),
            QueueOrder::Lifo => self.items.iter().rev().copied().collect(),
        }
    }
}

/// The inconsistent vertices of `f0`, enqueued in ascending id order.
pub fn initial_queue(arena: &Arena, f0: &EnergyLevels) -> LiftQueue {
    initial_queue_with(arena, f0, QueueOrder::Fifo)
}

pub fn initial_queue_with(arena: &Arena, f0: &EnergyLevels, order: QueueOrder) -> LiftQueue {
    let mut queue = LiftQueue::new(arena.vertex_count(), order);
    for v in arena.vertices() {
        if is_inconsistent(arena, f0, v) {
            queue.push(v);
        }
    }
    queue
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IterationOutcome {
    pub levels: EnergyLevels,
    /// Number of lifting steps applied; each raises exactly one level.
    pub lifts: u64,
}

/// Least SEPM of `arena`, starting from `f0`, which must lie pointwise below it.
pub fn value_iteration(arena: &Arena, f0: EnergyLevels) -> IterationOutcome {
    value_iteration_with(arena, f0, QueueOrder::Fifo)
}

pub fn value_iteration_with(
    arena: &Arena,
    f0: EnergyLevels,
    order: QueueOrder,
) -> IterationOutcome {
    assert_eq!(f0.len(), arena.vertex_count());
    let mut f = f0;
    let mut queue = initial_queue_with(arena, &f, order);
    let mut lifts = 0u64;
    while let Some(v) = queue.pop() {
        let lifted = lift(arena, &f, v);
        debug_assert!(lifted > f.levels[v], "queued vertex {v} was consistent");
        f.levels[v] = lifted;
        lifts += 1;
        for &(u, _) in arena.predecessors(v) {
            if !queue.contains(u) && is_inconsistent(arena, &f, u) {
                queue.push(u);
            }
        }
    }
    IterationOutcome { levels: f, lifts }
}
