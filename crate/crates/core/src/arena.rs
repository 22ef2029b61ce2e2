//! Game arenas: a weighted digraph without sinks plus the ownership partition.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Dense vertex identifier in `[0, vertex_count)`.
pub type VertexId = usize;

/// Integer arc weight.
pub type Weight = i64;

/// Inputs with `(|V| + 1) * (2W + 1)` at or above this bound are rejected so
/// that every scaled weight `D * (w - i) - N` with `D <= |V|` fits in an `i64`.
pub const WEIGHT_GUARD: i128 = 1 << 62;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Player {
    /// The maximizer.
    Zero,
    /// The minimizer.
    One,
}

impl Player {
    pub fn index(self) -> u8 {
        match self {
            Player::Zero => 0,
            Player::One => 1,
        }
    }

    pub fn from_index(index: u8) -> Option<Player> {
        match index {
            0 => Some(Player::Zero),
            1 => Some(Player::One),
            _ => None,
        }
    }

    pub fn opponent(self) -> Player {
        match self {
            Player::Zero => Player::One,
            Player::One => Player::Zero,
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Player{}", self.index())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Arc {
    pub source: VertexId,
    pub target: VertexId,
    pub weight: Weight,
}

impl Arc {
    pub fn new(source: VertexId, target: VertexId, weight: Weight) -> Self {
        Arc {
            source,
            target,
            weight,
        }
    }
}

impl From<(VertexId, VertexId, Weight)> for Arc {
    fn from((source, target, weight): (VertexId, VertexId, Weight)) -> Self {
        Arc {
            source,
            target,
            weight,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArenaError {
    #[error("arena must have at least one vertex")]
    Empty,
    #[error("expected {expected} owners, got {actual}")]
    OwnerCountMismatch { expected: usize, actual: usize },
    #[error("vertex {0} has no outgoing arc")]
    SinkVertex(VertexId),
    #[error("arc {tail} -> {head} references a vertex outside [0, {vertex_count})")]
    DanglingEndpoint {
        tail: VertexId,
        head: VertexId,
        vertex_count: usize,
    },
    #[error("duplicate arc {tail} -> {head}")]
    DuplicateArc { tail: VertexId, head: VertexId },
    #[error("weights too large for exact 64-bit reweighting")]
    Overflow,
    #[error("invalid reweighting parameters: {0}")]
    InvalidParams(&'static str),
}

/// Parameters of the integral reweighting `w' = den * (w - shift) - num`,
/// i.e. subtracting the rational `shift + num/den` and scaling by `den`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ReweightParams {
    shift: Weight,
    num: i64,
    den: i64,
}

impl ReweightParams {
    pub const IDENTITY: ReweightParams = ReweightParams {
        shift: 0,
        num: 0,
        den: 1,
    };

    pub fn new(shift: Weight, num: i64, den: i64) -> Result<Self, ArenaError> {
        if den < 1 {
            return Err(ArenaError::InvalidParams("den must be positive"));
        }
        if num < 0 || num > den {
            return Err(ArenaError::InvalidParams("num must lie in [0, den]"));
        }
        if num_integer::gcd(num, den) != 1 {
            return Err(ArenaError::InvalidParams("num/den must be reduced"));
        }
        Ok(ReweightParams { shift, num, den })
    }

    pub fn shift(&self) -> Weight {
        self.shift
    }

    pub fn num(&self) -> i64 {
        self.num
    }

    pub fn den(&self) -> i64 {
        self.den
    }

    /// Scaled weight of a single arc, `None` on overflow.
    pub fn apply(&self, weight: Weight) -> Option<Weight> {
        weight
            .checked_sub(self.shift)?
            .checked_mul(self.den)?
            .checked_sub(self.num)
    }
}

/// An immutable game arena with sorted adjacency in both directions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arena {
    owners: Vec<Player>,
    succ_offsets: Vec<usize>,
    succ: Vec<(VertexId, Weight)>,
    pred_offsets: Vec<usize>,
    pred: Vec<(VertexId, Weight)>,
    // Position of each `pred` entry's arc inside `succ`, for in-place reweighting.
    pred_to_succ: Vec<usize>,
    max_abs_weight: Weight,
}

impl Arena {
    pub fn build<A>(vertex_count: usize, owners: Vec<Player>, arcs: A) -> Result<Self, ArenaError>
    where
        A: IntoIterator,
        A::Item: Into<Arc>,
    {
        build_arena(vertex_count, owners, arcs)
    }

    pub fn vertex_count(&self) -> usize {
        self.owners.len()
    }

    pub fn arc_count(&self) -> usize {
        self.succ.len()
    }

    /// `W`, the maximum absolute arc weight.
    pub fn max_abs_weight(&self) -> Weight {
        self.max_abs_weight
    }

    pub fn owner(&self, v: VertexId) -> Player {
        self.owners[v]
    }

    pub fn owners(&self) -> &[Player] {
        &self.owners
    }

    pub fn vertices(&self) -> std::ops::Range<VertexId> {
        0..self.vertex_count()
    }

    pub fn vertices_of(&self, player: Player) -> impl Iterator<Item = VertexId> + '_ {
        self.vertices().filter(move |&v| self.owners[v] == player)
    }

    /// Out-arcs of `v` as `(target, weight)`, ascending by target.
    pub fn successors(&self, v: VertexId) -> &[(VertexId, Weight)] {
        &self.succ[self.succ_offsets[v]..self.succ_offsets[v + 1]]
    }

    /// In-arcs of `v` as `(source, weight)`, ascending by source.
    pub fn predecessors(&self, v: VertexId) -> &[(VertexId, Weight)] {
        &self.pred[self.pred_offsets[v]..self.pred_offsets[v + 1]]
    }

    pub fn weight(&self, source: VertexId, target: VertexId) -> Option<Weight> {
        let out = self.successors(source);
        out.binary_search_by_key(&target, |&(t, _)| t)
            .ok()
            .map(|k| out[k].1)
    }

    pub fn arcs(&self) -> impl Iterator<Item = Arc> + '_ {
        self.vertices().flat_map(move |v| {
            self.successors(v)
                .iter()
                .map(move |&(t, w)| Arc::new(v, t, w))
        })
    }

    /// The arena with every weight `w` replaced by `den * (w - shift) - num`.
    pub fn reweight(&self, params: ReweightParams) -> Result<Arena, ArenaError> {
        let mut out = self.clone();
        out.assign_reweighted(self, params)?;
        Ok(out)
    }

    /// Overwrites the weights of `self` with those of `base` reweighted by
    /// `params`. Both arenas must share the same arc structure.
    pub(crate) fn assign_reweighted(
        &mut self,
        base: &Arena,
        params: ReweightParams,
    ) -> Result<(), ArenaError> {
        debug_assert_eq!(self.succ_offsets, base.succ_offsets);
        let mut max_abs = 0;
        for (slot, &(target, weight)) in self.succ.iter_mut().zip(&base.succ) {
            let scaled = params.apply(weight).ok_or(ArenaError::Overflow)?;
            max_abs = max_abs.max(scaled.checked_abs().ok_or(ArenaError::Overflow)?);
            *slot = (target, scaled);
        }
        for (slot, &k) in self.pred.iter_mut().zip(&self.pred_to_succ) {
            slot.1 = self.succ[k].1;
        }
        self.max_abs_weight = max_abs;
        Ok(())
    }
}

/// Validates and builds an arena.
pub fn build_arena<A>(
    vertex_count: usize,
    owners: Vec<Player>,
    arcs: A,
) -> Result<Arena, ArenaError>
where
    A: IntoIterator,
    A::Item: Into<Arc>,
{
    if vertex_count == 0 {
        return Err(ArenaError::Empty);
    }
    if owners.len() != vertex_count {
        return Err(ArenaError::OwnerCountMismatch {
            expected: vertex_count,
            actual: owners.len(),
        });
    }
    let mut arcs: Vec<Arc> = arcs.into_iter().map(Into::into).collect();
    for a in &arcs {
        if a.source >= vertex_count || a.target >= vertex_count {
            return Err(ArenaError::DanglingEndpoint {
                tail: a.source,
                head: a.target,
                vertex_count,
            });
        }
    }
    arcs.sort_by_key(|a| (a.source, a.target));
    if let Some(pair) = arcs
        .windows(2)
        .find(|p| (p[0].source, p[0].target) == (p[1].source, p[1].target))
    {
        return Err(ArenaError::DuplicateArc {
            tail: pair[0].source,
            head: pair[0].target,
        });
    }

    let mut max_abs_weight: Weight = 0;
    for a in &arcs {
        max_abs_weight = max_abs_weight.max(a.weight.checked_abs().ok_or(ArenaError::Overflow)?);
    }
    let guard = (vertex_count as i128 + 1) * (2 * max_abs_weight as i128 + 1);
    if guard >= WEIGHT_GUARD {
        return Err(ArenaError::Overflow);
    }

    let mut succ_offsets = vec![0; vertex_count + 1];
    let mut pred_offsets = vec![0; vertex_count + 1];
    for a in &arcs {
        succ_offsets[a.source + 1] += 1;
        pred_offsets[a.target + 1] += 1;
    }
    for v in 0..vertex_count {
        succ_offsets[v + 1] += succ_offsets[v];
        pred_offsets[v + 1] += pred_offsets[v];
    }
    if let Some(v) = (0..vertex_count).find(|&v| succ_offsets[v] == succ_offsets[v + 1]) {
        return Err(ArenaError::SinkVertex(v));
    }

    let succ: Vec<_> = arcs.iter().map(|a| (a.target, a.weight)).collect();
    // Arcs are sorted by source, so filling in order keeps each in-list sorted by source.
    let mut pred = vec![(0, 0); arcs.len()];
    let mut pred_to_succ = vec![0; arcs.len()];
    let mut fill = pred_offsets.clone();
    for (k, a) in arcs.iter().enumerate() {
        let slot = fill[a.target];
        pred[slot] = (a.source, a.weight);
        pred_to_succ[slot] = k;
        fill[a.target] += 1;
    }

    Ok(Arena {
        owners,
        succ_offsets,
        succ,
        pred_offsets,
        pred,
        pred_to_succ,
        max_abs_weight,
    })
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use Player::{One, Zero};

    pub(crate) const A: usize = 0;
    pub(crate) const B: usize = 1;
    pub(crate) const C: usize = 2;
    pub(crate) const D: usize = 3;

    pub(crate) fn four_vertex() -> Arena {
        build_arena(
            4,
            vec![Zero, One, Zero, One],
            [
                (A, B, -1),
                (B, C, -2),
                (C, D, 1),
                (D, A, 2),
                (A, D, -1),
                (D, C, -1),
                (C, B, 1),
                (B, A, 2),
                (A, C, -9),
            ],
        )
        .unwrap()
    }

    #[test]
    fn four_vertex_shape() {
        let arena = four_vertex();
        assert_eq!(arena.vertex_count(), 4);
        assert_eq!(arena.arc_count(), 9);
        assert_eq!(arena.max_abs_weight(), 9);
        assert_eq!(arena.successors(A), &[(B, -1), (C, -9), (D, -1)]);
        assert_eq!(arena.successors(B), &[(A, 2), (C, -2)]);
        assert_eq!(arena.predecessors(A), &[(B, 2), (D, 2)]);
        assert_eq!(arena.predecessors(C), &[(A, -9), (B, -2), (D, -1)]);
    }

    #[test]
    fn single_self_loop() {
        let arena = build_arena(1, vec![Zero], [(0, 0, 0)]).unwrap();
        assert_eq!(arena.max_abs_weight(), 0);
        assert_eq!(arena.successors(0), &[(0, 0)]);
        assert_eq!(arena.predecessors(0), &[(0, 0)]);
    }

    #[test]
    fn rejects_sink() {
        let err = build_arena(2, vec![Zero, One], [(0, 1, 3)]).unwrap_err();
        assert_eq!(err, ArenaError::SinkVertex(1));
    }

    #[test]
    fn rejects_dangling_and_duplicates() {
        assert!(matches!(
            build_arena(1, vec![Zero], [(0, 1, 0)]),
            Err(ArenaError::DanglingEndpoint { .. })
        ));
        assert_eq!(
            build_arena(1, vec![Zero], [(0, 0, 1), (0, 0, 2)]).unwrap_err(),
            ArenaError::DuplicateArc { tail: 0, head: 0 }
        );
        assert!(matches!(
            build_arena(2, vec![Zero], [(0, 0, 1)]),
            Err(ArenaError::OwnerCountMismatch { .. })
        ));
        assert_eq!(
            build_arena(0, vec![], Vec::<Arc>::new()).unwrap_err(),
            ArenaError::Empty
        );
    }

    #[test]
    fn rejects_huge_weights() {
        let big = 1i64 << 61;
        assert_eq!(
            build_arena(1, vec![Zero], [(0, 0, big)]).unwrap_err(),
            ArenaError::Overflow
        );
        assert_eq!(
            build_arena(1, vec![Zero], [(0, 0, i64::MIN)]).unwrap_err(),
            ArenaError::Overflow
        );
    }

    #[test]
    fn reweight_examples() {
        let p = ReweightParams::new(1, 1, 2).unwrap();
        assert_eq!(p.apply(2), Some(1));
        let p = ReweightParams::new(-1, 1, 2).unwrap();
        assert_eq!(p.apply(-1), Some(-1));

        let arena = four_vertex();
        let same = arena.reweight(ReweightParams::IDENTITY).unwrap();
        assert_eq!(same, arena);

        let shifted = arena
            .reweight(ReweightParams::new(-1, 1, 2).unwrap())
            .unwrap();
        assert_eq!(shifted.weight(A, B), Some(-1));
        assert_eq!(shifted.weight(A, C), Some(-17));
        assert_eq!(shifted.max_abs_weight(), 17);
        assert_eq!(shifted.predecessors(C), &[(A, -17), (B, -3), (D, -1)]);
    }

    #[test]
    fn reweight_params_validation() {
        assert!(ReweightParams::new(0, 0, 0).is_err());
        assert!(ReweightParams::new(0, 3, 2).is_err());
        assert!(ReweightParams::new(0, 2, 4).is_err());
        assert!(ReweightParams::new(0, -1, 4).is_err());
        assert!(ReweightParams::new(5, 1, 1).is_ok());
    }

    #[test]
    fn reweight_overflow() {
        let arena = build_arena(1, vec![Zero], [(0, 0, 1 << 40)]).unwrap();
        let p = ReweightParams::new(-(1 << 40), 1, 1 << 30).unwrap();
        assert_eq!(arena.reweight(p).unwrap_err(), ArenaError::Overflow);
    }
}
