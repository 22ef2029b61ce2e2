//! Brute-force ground truth for small arenas.
//!
//! Nothing here is used by the solver. Values come from a minimax over all
//! pairs of positional strategies; strategies are checked by computing the
//! minimum cycle mean reachable from each vertex in the projection graph.

use num_rational::Rational64;
use thiserror::Error;

use crate::arena::{build_arena, Arc, Arena, Player, VertexId, Weight};

/// Largest number of positional strategy profiles `brute_force_solve` enumerates.
pub const PROFILE_LIMIT: u128 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{profiles} strategy profiles exceed the enumeration limit of {PROFILE_LIMIT}")]
    TooLarge { profiles: u128 },
}

/// One successor per vertex. Entries on Player 0 vertices form Player 0's
/// positional strategy, entries on Player 1 vertices Player 1's.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrategyProfile {
    pub choices: Vec<VertexId>,
}

impl StrategyProfile {
    pub fn choice0(&self, arena: &Arena) -> Vec<(VertexId, VertexId)> {
        self.restricted(arena, Player::Zero)
    }

    pub fn choice1(&self, arena: &Arena) -> Vec<(VertexId, VertexId)> {
        self.restricted(arena, Player::One)
    }

    fn restricted(&self, arena: &Arena, player: Player) -> Vec<(VertexId, VertexId)> {
        arena
            .vertices_of(player)
            .map(|v| (v, self.choices[v]))
            .collect()
    }
}

/// The cycle eventually traversed from a start vertex under a full profile.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlayOutcome {
    /// Cycle vertices in traversal order, starting at the first one reached.
    pub cycle: Vec<VertexId>,
    pub mean: Rational64,
}

/// Follows `profile` from `start` until a vertex repeats.
pub fn play_outcome(arena: &Arena, profile: &StrategyProfile, start: VertexId) -> PlayOutcome {
    let mut seen = vec![usize::MAX; arena.vertex_count()];
    let mut path = Vec::new();
    let mut v = start;
    while seen[v] == usize::MAX {
        seen[v] = path.len();
        path.push(v);
        v = profile.choices[v];
    }
    let cycle = path.split_off(seen[v]);
    let total: Weight = cycle
        .iter()
        .enumerate()
        .map(|(k, &u)| {
            let next = cycle[(k + 1) % cycle.len()];
            arena.weight(u, next).expect("profile follows arcs")
        })
        .sum();
    PlayOutcome {
        mean: Rational64::new(total, cycle.len() as i64),
        cycle,
    }
}

/// Cycle mean reached from every vertex of the out-degree-one graph `choices`.
fn outcome_means(arena: &Arena, choices: &[VertexId], out: &mut [Rational64]) {
    const UNSEEN: u8 = 0;
    const ON_PATH: u8 = 1;
    const DONE: u8 = 2;
    let n = arena.vertex_count();
    let mut state = vec![UNSEEN; n];
    let mut path = Vec::with_capacity(n);
    for start in 0..n {
        if state[start] == DONE {
            continue;
        }
        path.clear();
        let mut v = start;
        while state[v] == UNSEEN {
            state[v] = ON_PATH;
            path.push(v);
            v = choices[v];
        }
        let mean = if state[v] == ON_PATH {
            let from = path.iter().position(|&u| u == v).unwrap();
            let cycle = &path[from..];
            let total: Weight = cycle
                .iter()
                .map(|&u| arena.weight(u, choices[u]).unwrap())
                .sum();
            Rational64::new(total, cycle.len() as i64)
        } else {
            out[v]
        };
        for &u in &path {
            out[u] = mean;
            state[u] = DONE;
        }
    }
}

/// Product of out-degrees of `player`'s vertices (all vertices when `None`).
fn profile_count(arena: &Arena, player: Option<Player>) -> u128 {
    arena
        .vertices()
        .filter(|&v| player.is_none_or(|p| arena.owner(v) == p))
        .map(|v| arena.successors(v).len() as u128)
        .product()
}

/// Mixed-radix enumeration of the positional strategies of `player`, written
/// into the matching entries of `choices`.
struct StrategyOdometer {
    owned: Vec<VertexId>,
    digits: Vec<usize>,
    started: bool,
}

impl StrategyOdometer {
    fn new(arena: &Arena, player: Player) -> Self {
        let owned: Vec<_> = arena.vertices_of(player).collect();
        let digits = vec![0; owned.len()];
        StrategyOdometer {
            owned,
            digits,
            started: false,
        }
    }

    fn next(&mut self, arena: &Arena, choices: &mut [VertexId]) -> bool {
        if !self.started {
            self.started = true;
        } else {
            let mut k = 0;
            loop {
                if k == self.owned.len() {
                    return false;
                }
                self.digits[k] += 1;
                if self.digits[k] < arena.successors(self.owned[k]).len() {
                    break;
                }
                self.digits[k] = 0;
                k += 1;
            }
        }
        for (&v, &d) in self.owned.iter().zip(&self.digits) {
            choices[v] = arena.successors(v)[d].0;
        }
        true
    }
}

/// Exact value of every vertex: max over Player 0's positional strategies of
/// the min over Player 1's of the mean of the cycle reached.
pub fn brute_force_solve(arena: &Arena) -> Result<Vec<Rational64>, OracleError> {
    let profiles = profile_count(arena, None);
    if profiles > PROFILE_LIMIT {
        return Err(OracleError::TooLarge { profiles });
    }
    let n = arena.vertex_count();
    let mut choices = vec![0; n];
    let mut best: Option<Vec<Rational64>> = None;
    let mut worst = vec![Rational64::from_integer(0); n];
    let mut means = vec![Rational64::from_integer(0); n];

    let mut odometer0 = StrategyOdometer::new(arena, Player::Zero);
    while odometer0.next(arena, &mut choices) {
        let mut first = true;
        let mut odometer1 = StrategyOdometer::new(arena, Player::One);
        while odometer1.next(arena, &mut choices) {
            outcome_means(arena, &choices, &mut means);
            for v in 0..n {
                if first || means[v] < worst[v] {
                    worst[v] = means[v];
                }
            }
            first = false;
        }
        match &mut best {
            None => best = Some(worst.clone()),
            Some(best) => {
                for v in 0..n {
                    if worst[v] > best[v] {
                        best[v] = worst[v];
                    }
                }
            }
        }
    }
    Ok(best.expect("at least one strategy profile exists"))
}

/// Minimum mean weight over all cycles of the graph on `0..vertex_count`,
/// or `None` when the graph is acyclic.
///
/// Karp's recurrence over walk lengths `0..=n` with every vertex as a source:
/// `d[k][v]` is the least weight of a `k`-arc walk ending in `v`, and the
/// answer is `min_v max_k (d[n][v] - d[k][v]) / (n - k)`.
pub fn min_mean_cycle(vertex_count: usize, arcs: &[Arc]) -> Option<Rational64> {
    let n = vertex_count;
    if n == 0 {
        return None;
    }
    let mut table: Vec<Vec<Option<i64>>> = Vec::with_capacity(n + 1);
    table.push(vec![Some(0); n]);
    for k in 1..=n {
        let prev = &table[k - 1];
        let mut row = vec![None; n];
        for a in arcs {
            if let Some(d) = prev[a.source] {
                let cand = d + a.weight;
                if row[a.target].is_none_or(|cur| cand < cur) {
                    row[a.target] = Some(cand);
                }
            }
        }
        table.push(row);
    }
    (0..n)
        .filter_map(|v| {
            let dn = table[n][v]?;
            (0..n)
                .filter_map(|k| table[k][v].map(|dk| Rational64::new(dn - dk, (n - k) as i64)))
                .max()
        })
        .min()
}

/// Whether, in the projection graph of Player 0's `strategy`, every cycle
/// reachable from each vertex `v` has mean at least `values[v]`.
pub fn verify_strategy(
    arena: &Arena,
    strategy: &[Option<VertexId>],
    values: &[Rational64],
) -> bool {
    let n = arena.vertex_count();
    if strategy.len() != n || values.len() != n {
        return false;
    }
    let mut projection: Vec<Vec<(VertexId, Weight)>> = Vec::with_capacity(n);
    for v in arena.vertices() {
        match arena.owner(v) {
            Player::Zero => {
                let Some(u) = strategy[v] else { return false };
                let Some(w) = arena.weight(v, u) else {
                    return false;
                };
                projection.push(vec![(u, w)]);
            }
            Player::One => projection.push(arena.successors(v).to_vec()),
        }
    }

    let mut local = vec![usize::MAX; n];
    for start in arena.vertices() {
        // Reachable set, then renumber it densely for the cycle-mean search.
        local.iter_mut().for_each(|x| *x = usize::MAX);
        let mut reach = vec![start];
        local[start] = 0;
        let mut k = 0;
        while k < reach.len() {
            let v = reach[k];
            for &(u, _) in &projection[v] {
                if local[u] == usize::MAX {
                    local[u] = reach.len();
                    reach.push(u);
                }
            }
            k += 1;
        }
        let arcs: Vec<Arc> = reach
            .iter()
            .flat_map(|&v| {
                let local = &local;
                projection[v]
                    .iter()
                    .map(move |&(u, w)| Arc::new(local[v], local[u], w))
            })
            .collect();
        match min_mean_cycle(reach.len(), &arcs) {
            Some(mean) if mean >= values[start] => {}
            _ => return false,
        }
    }
    true
}

/// Energy-game winner at `v` with threshold 0: Player 0 iff the value is `>= 0`.
pub fn eg_winner(arena: &Arena, v: VertexId) -> Result<Player, OracleError> {
    let values = brute_force_solve(arena)?;
    Ok(if values[v] >= Rational64::from_integer(0) {
        Player::Zero
    } else {
        Player::One
    })
}

/// Every arena with `1..=max_vertices` vertices, out-degree in
/// `1..=max_out_degree`, arc weights drawn from `weights` and every owner
/// assignment, in a fixed order.
pub fn exhaustive_arenas(
    max_vertices: usize,
    max_out_degree: usize,
    weights: std::ops::RangeInclusive<Weight>,
) -> impl Iterator<Item = Arena> {
    enumerate_arenas(max_vertices, max_out_degree, weights, false)
}

fn enumerate_arenas(
    max_vertices: usize,
    max_out_degree: usize,
    weights: std::ops::RangeInclusive<Weight>,
    sorted_owners_only: bool,
) -> impl Iterator<Item = Arena> {
    let weights: Vec<Weight> = weights.collect();
    (1..=max_vertices).flat_map(move |n| {
        let options = out_arc_options(n, max_out_degree, &weights);
        // Sorted owner vectors (Player 0 first) are masks whose set bits run up to bit n - 1.
        let full = (1u32 << n) - 1;
        let owner_masks =
            (0..=full).filter(move |&m| !sorted_owners_only || m == 0 || (m | (m - 1)) == full);
        let combos = options.len().pow(n as u32);
        owner_masks.flat_map(move |mask| {
            let options = options.clone();
            (0..combos).map(move |mut code| {
                let owners = (0..n)
                    .map(|v| {
                        if mask >> v & 1 == 0 {
                            Player::Zero
                        } else {
                            Player::One
                        }
                    })
                    .collect();
                let mut arcs = Vec::new();
                for v in 0..n {
                    let pick = &options[code % options.len()];
                    code /= options.len();
                    arcs.extend(pick.iter().map(|&(t, w)| Arc::new(v, t, w)));
                }
                build_arena(n, owners, arcs).expect("enumerated arenas are valid")
            })
        })
    })
}

/// [`exhaustive_arenas`] restricted to one representative per vertex relabelling.
pub fn exhaustive_arenas_up_to_relabelling(
    max_vertices: usize,
    max_out_degree: usize,
    weights: std::ops::RangeInclusive<Weight>,
) -> impl Iterator<Item = Arena> {
    enumerate_arenas(max_vertices, max_out_degree, weights, true).filter(is_canonical)
}

type Encoding = (Vec<u8>, Vec<(VertexId, VertexId, Weight)>);

fn encode(arena: &Arena, perm: &[VertexId]) -> Encoding {
    let mut owners = vec![0; arena.vertex_count()];
    for v in arena.vertices() {
        owners[perm[v]] = arena.owner(v).index();
    }
    let mut arcs: Vec<_> = arena
        .arcs()
        .map(|a| (perm[a.source], perm[a.target], a.weight))
        .collect();
    arcs.sort_unstable();
    (owners, arcs)
}

/// Whether no relabelling of the vertices yields a lexicographically smaller
/// (owners, sorted arcs) encoding.
pub fn is_canonical(arena: &Arena) -> bool {
    let n = arena.vertex_count();
    if arena.owners().windows(2).any(|p| p[0] > p[1]) {
        return false;
    }
    let mut perm: Vec<VertexId> = (0..n).collect();
    let own = encode(arena, &perm);
    // Heap's algorithm over all permutations.
    let mut c = vec![0usize; n];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            perm.swap(if i % 2 == 0 { 0 } else { c[i] }, i);
            let keeps_owners = arena
                .vertices()
                .all(|v| arena.owner(v) == arena.owner(perm[v]));
            if keeps_owners && encode(arena, &perm) < own {
                return false;
            }
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    true
}

/// All weighted target sets a single vertex can have among `n` vertices.
fn out_arc_options(
    n: usize,
    max_out_degree: usize,
    weights: &[Weight],
) -> Vec<Vec<(VertexId, Weight)>> {
    let mut out = Vec::new();
    for mask in 1u32..(1 << n) {
        let targets: Vec<VertexId> = (0..n).filter(|&t| mask >> t & 1 == 1).collect();
        if targets.len() > max_out_degree {
            continue;
        }
        let mut assignment = vec![Vec::new()];
        for &t in &targets {
            assignment = assignment
                .into_iter()
                .flat_map(|prefix: Vec<(VertexId, Weight)>| {
                    weights.iter().map(move |&w| {
                        let mut next = prefix.clone();
                        next.push((t, w));
                        next
                    })
                })
                .collect();
        }
        out.extend(assignment);
    }
    out
}
