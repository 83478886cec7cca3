//! Solvers for instances whose network is a path.
//!
//! Everything here works in canonical position space: the path's objects are
//! relabeled 0..n-1 along the path (orientation: the endpoint with the
//! smaller object id comes first), and agents are relabeled by their starting
//! position. In that space the initial matching is the identity and three
//! facts drive all the algorithms:
//!
//! * An agent starting at position `p` can only ever occupy an interval of
//!   positions around `p`, namely those reachable while its preference
//!   strictly improves step by step ([`Bounds`]).
//! * A perfect matching is reachable iff it respects those intervals and, for
//!   each position-agent in order, assigns either the lowest unmatched
//!   position or some position above everything matched so far (the prefix
//!   shape checked by [`reachable_matching`](PathInstance::reachable_matching)).
//! * For a fixed committed prefix, extendability as a function of the new
//!   agent's position is a threshold: all low positions in range work, all
//!   high ones fail. [`rightmost_threshold`] finds the cutoff by bisecting
//!   with [`greedy_extend`] probes; [`rightmost_threshold_slack`] finds the
//!   same cutoff in one linear pass by tracking how far the running greedy
//!   execution could be shifted right before some agent's interval breaks.
//!
//! The generalized-star solver reuses the position-space machinery on
//! restricted subpaths, which is why [`Bounds`], [`PrefixState`] and the
//! search functions are public.

use crate::classify::{classify_graph, GraphClass};
use crate::instance::{Agent, Instance, Matching, Object};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum PathError {
    #[error("network is not a path")]
    NotAPath,
    #[error("agent {0} out of range")]
    AgentOutOfRange(usize),
    #[error("object {0} out of range")]
    ObjectOutOfRange(usize),
    #[error("target matching must be perfect")]
    TargetNotPerfect,
}

/// Per-position movement intervals: the agent starting at position `p` can
/// only ever sit in `left[p]..=right[p]`.
#[derive(Debug, Clone)]
pub struct Bounds {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

impl Bounds {
    pub fn len(&self) -> usize {
        self.left.len()
    }

    pub fn is_empty(&self) -> bool {
        self.left.is_empty()
    }
}

/// A committed prefix: position-agents `0..len()` each assigned a distinct
/// position, together with the bookkeeping the greedy loop needs.
#[derive(Debug, Clone)]
pub struct PrefixState {
    assigned: Vec<usize>,
    matched: Vec<bool>,
    max_matched: Option<usize>,
    min_unmatched: usize,
}

impl PrefixState {
    pub fn new(n: usize) -> Self {
        PrefixState { assigned: Vec::new(), matched: vec![false; n], max_matched: None, min_unmatched: 0 }
    }

    pub fn len(&self) -> usize {
        self.assigned.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assigned.is_empty()
    }

    pub fn assigned(&self) -> &[usize] {
        &self.assigned
    }

    pub fn max_matched(&self) -> Option<usize> {
        self.max_matched
    }

    pub fn min_unmatched(&self) -> usize {
        self.min_unmatched
    }

    pub fn is_matched(&self, pos: usize) -> bool {
        self.matched[pos]
    }

    /// Assigns the next position-agent to `pos`.
    pub fn push(&mut self, pos: usize) {
        assert!(!self.matched[pos], "position {pos} already matched");
        self.assigned.push(pos);
        self.matched[pos] = true;
        self.max_matched = Some(self.max_matched.map_or(pos, |m| m.max(pos)));
        while self.min_unmatched < self.matched.len() && self.matched[self.min_unmatched] {
            self.min_unmatched += 1;
        }
    }

    /// First position above everything matched so far.
    pub fn above(&self) -> usize {
        self.max_matched.map_or(0, |m| m + 1)
    }
}

/// Completes a committed prefix to a full assignment if possible.
///
/// Greedy rule for each remaining agent in order: take the lowest unmatched
/// position when the agent's interval reaches down to it, otherwise take the
/// position just above everything matched when the interval allows, otherwise
/// fail. The verdict is exact whenever the prefix itself respects the
/// intervals and the prefix shape.
pub fn greedy_complete(bounds: &Bounds, mu0: &PrefixState) -> Option<Vec<usize>> {
    let n = bounds.len();
    let mut state = mu0.clone();
    while state.len() < n {
        let a = state.len();
        if bounds.left[a] <= state.min_unmatched {
            let take = state.min_unmatched;
            debug_assert!(take <= bounds.right[a]);
            state.push(take);
        } else if state.above() <= bounds.right[a] {
            state.push(state.above());
        } else {
            return None;
        }
    }
    Some(state.assigned)
}

/// [`greedy_complete`] after first assigning the next agent to `b0`, which
/// must lie above `mu0`'s highest position and within the agent's interval.
pub fn greedy_extend(bounds: &Bounds, mu0: &PrefixState, b0: usize) -> Option<Vec<usize>> {
    debug_assert!(mu0.len() < bounds.len());
    debug_assert!(b0 >= mu0.above() && b0 <= bounds.right[mu0.len()]);
    let mut state = mu0.clone();
    state.push(b0);
    greedy_complete(bounds, &state)
}

/// Largest extendable position for the next agent within
/// `(mu0's highest, hi]`, found by bisection; `None` when even the lowest
/// position in that range fails. Extendability is monotone in the probed
/// position, which is what makes bisection sound.
pub fn rightmost_threshold(bounds: &Bounds, mu0: &PrefixState, hi: usize) -> Option<usize> {
    rightmost_threshold_counted(bounds, mu0, hi).0
}

/// Same as [`rightmost_threshold`], also reporting how many greedy probes ran
/// (the tests hold the probe budget to `ceil(log2 range)+1`).
pub fn rightmost_threshold_counted(
    bounds: &Bounds,
    mu0: &PrefixState,
    hi: usize,
) -> (Option<usize>, usize) {
    let mut lo = mu0.above();
    let mut hi = hi;
    let mut probes = 0;
    let mut best = None;
    while lo <= hi {
        let mid = lo + (hi - lo) / 2;
        probes += 1;
        if greedy_extend(bounds, mu0, mid).is_some() {
            best = Some(mid);
            lo = mid + 1;
        } else {
            if mid == 0 {
                break;
            }
            hi = mid - 1;
        }
    }
    (best, probes)
}

/// Single-pass equivalent of [`rightmost_threshold`].
///
/// Runs the greedy execution for the lowest candidate position while keeping
/// the would-be block of "high takers" (agents assigned above everything
/// matched) implicit. `slack` is how far that block can still shift right
/// before some member's interval breaks. Whenever the execution reaches a
/// state with no unmatched position below the block, the current candidate is
/// known to succeed; the block then shifts right by one (vacating one
/// position for later agents) to test the next candidate, until the slack
/// runs out.
pub fn rightmost_threshold_slack(bounds: &Bounds, mu0: &PrefixState, hi: usize) -> Option<usize> {
    let n = bounds.len();
    let lo = mu0.above();
    if lo > hi {
        return None;
    }
    let mut b0 = lo;
    let mut best = None;
    let mut slack = hi as i64 - b0 as i64;
    let mut blacks = 1usize; // the probed agent itself, at block offset 0
    let orig_holes: Vec<usize> = (0..lo).filter(|&p| !mu0.is_matched(p)).collect();
    let mut next_orig = 0usize;
    let mut next_vacated = lo; // vacated positions are [next_vacated, b0)
    let mut processed = mu0.len() + 1;
    loop {
        let min_hole = if next_orig < orig_holes.len() {
            Some(orig_holes[next_orig])
        } else if next_vacated < b0 {
            Some(next_vacated)
        } else {
            None
        };
        let Some(min_hole) = min_hole else {
            // No hole below the block: the execution for b0 succeeds.
            best = Some(b0);
            b0 += 1;
            slack -= 1;
            if slack < 0 {
                return best;
            }
            continue;
        };
        debug_assert!(processed < n, "a complete state cannot still have a hole below the block");
        let a = processed;
        if bounds.left[a] <= min_hole {
            if next_orig < orig_holes.len() {
                next_orig += 1;
            } else {
                next_vacated += 1;
            }
        } else {
            slack = slack.min(bounds.right[a] as i64 - (b0 + blacks) as i64);
            if slack < 0 {
                return best;
            }
            blacks += 1;
        }
        processed += 1;
    }
}

/// Which threshold implementation the staged solvers use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PeStrategy {
    #[default]
    Bisect,
    Slack,
}

/// The position the dictator at stage `mu0.len()` receives: the better (by
/// `prefer`) of the lowest unmatched position (when the dictator's interval
/// reaches it) and the rightmost extendable position. At least one candidate
/// always exists when `mu0` itself is extendable.
pub fn stage_best(
    bounds: &Bounds,
    mu0: &PrefixState,
    strategy: PeStrategy,
    mut prefer: impl FnMut(usize, usize) -> bool,
) -> usize {
    let k = mu0.len();
    let low = mu0.min_unmatched();
    debug_assert!(low <= bounds.right[k]);
    let left_cand = (bounds.left[k] <= low).then_some(low);
    let right_cand = match strategy {
        PeStrategy::Bisect => rightmost_threshold(bounds, mu0, bounds.right[k]),
        PeStrategy::Slack => rightmost_threshold_slack(bounds, mu0, bounds.right[k]),
    };
    match (left_cand, right_cand) {
        (Some(l), Some(r)) if l != r => {
            if prefer(l, r) {
                l
            } else {
                r
            }
        }
        (Some(l), _) => l,
        (None, Some(r)) => r,
        (None, None) => unreachable!("an extendable prefix always leaves the dictator a candidate"),
    }
}

/// A path instance in canonical position space, with the translation back to
/// the original labels.
pub struct PathInstance<'a> {
    inst: &'a Instance,
    /// Object at each position along the path.
    obj_of_pos: Vec<Object>,
    /// Agent starting at each position.
    agent_of_pos: Vec<Agent>,
    bounds: Bounds,
}

impl<'a> PathInstance<'a> {
    pub fn new(inst: &'a Instance) -> Result<Self, PathError> {
        match classify_graph(inst) {
            GraphClass::Path { order } => Ok(Self::with_order(inst, order)),
            _ => Err(PathError::NotAPath),
        }
    }

    /// Canonicalizes along the given vertex order (used for the mirrored
    /// orientation in object queries).
    fn with_order(inst: &'a Instance, order: Vec<Object>) -> Self {
        let init = inst.initial_matching();
        let agent_of_pos = order.iter().map(|&b| init.agent_at(b).unwrap()).collect();
        let mut view = PathInstance {
            inst,
            obj_of_pos: order,
            agent_of_pos,
            bounds: Bounds { left: Vec::new(), right: Vec::new() },
        };
        view.bounds = view.compute_bounds();
        view
    }

    /// Movement interval per position: walk outward from each start while the
    /// occupant's preference strictly increases.
    pub fn compute_bounds(&self) -> Bounds {
        let n = self.n();
        let mut left = Vec::with_capacity(n);
        let mut right = Vec::with_capacity(n);
        for p in 0..n {
            let a = self.agent_of_pos[p];
            let mut l = p;
            while l > 0 && self.inst.prefers(a, self.obj_of_pos[l - 1], self.obj_of_pos[l]) {
                l -= 1;
            }
            let mut r = p;
            while r + 1 < n && self.inst.prefers(a, self.obj_of_pos[r + 1], self.obj_of_pos[r]) {
                r += 1;
            }
            left.push(l);
            right.push(r);
        }
        Bounds { left, right }
    }

    pub fn n(&self) -> usize {
        self.obj_of_pos.len()
    }

    pub fn bounds(&self) -> &Bounds {
        &self.bounds
    }

    pub fn object_at(&self, pos: usize) -> Object {
        self.obj_of_pos[pos]
    }

    pub fn agent_at(&self, pos: usize) -> Agent {
        self.agent_of_pos[pos]
    }

    /// True iff the agent starting at position `k` prefers the object at
    /// position `p` to the one at position `q`.
    pub fn prefers_pos(&self, k: usize, p: usize, q: usize) -> bool {
        self.inst.prefers(self.agent_of_pos[k], self.obj_of_pos[p], self.obj_of_pos[q])
    }

    /// Best stage match in position space; see [`stage_best`].
    pub fn best_next_match(&self, mu0: &PrefixState, strategy: PeStrategy) -> usize {
        stage_best(&self.bounds, mu0, strategy, |p, q| self.prefers_pos(mu0.len(), p, q))
    }

    /// Translates a full position assignment back to original labels.
    fn to_matching(&self, assigned: &[usize]) -> Matching {
        let mut m = Matching::empty(self.inst.n());
        for (p, &q) in assigned.iter().enumerate() {
            m.assign(self.agent_of_pos[p], self.obj_of_pos[q]);
        }
        m
    }

    /// Decides whether `target` is reachable: interval check per agent plus
    /// the prefix shape (each position-agent in order takes the lowest
    /// unmatched position or one above everything matched so far).
    pub fn reachable_matching(&self, target: &Matching) -> Result<bool, PathError> {
        if !target.is_perfect() {
            return Err(PathError::TargetNotPerfect);
        }
        let n = self.n();
        let mut pos_of_obj = vec![0usize; n];
        for (p, &b) in self.obj_of_pos.iter().enumerate() {
            pos_of_obj[b] = p;
        }
        let mut state = PrefixState::new(n);
        for p in 0..n {
            let t = pos_of_obj[target.object_of(self.agent_of_pos[p]).unwrap()];
            if t < self.bounds.left[p] || t > self.bounds.right[p] {
                return Ok(false);
            }
            if t != state.min_unmatched() && t < state.above() {
                return Ok(false);
            }
            state.push(t);
        }
        Ok(true)
    }
}

/// Can `agent` ever hold `object`? Returns a reachable perfect matching
/// placing it there as the certificate, or `None`.
///
/// The query is normalized so the agent starts left of the target (mirroring
/// the path otherwise); then the interval check plus one greedy extension of
/// the identity prefix below the agent decides.
pub fn reachable_object_path(
    inst: &Instance,
    agent: Agent,
    object: Object,
) -> Result<Option<Matching>, PathError> {
    if agent >= inst.n() {
        return Err(PathError::AgentOutOfRange(agent + 1));
    }
    if object >= inst.n() {
        return Err(PathError::ObjectOutOfRange(object + 1));
    }
    let view = PathInstance::new(inst)?;
    let start = inst.endowment(agent);
    if start == object {
        return Ok(Some(inst.initial_matching()));
    }
    let pos = |b: Object| view.obj_of_pos.iter().position(|&x| x == b).unwrap();
    let view = if pos(start) < pos(object) {
        view
    } else {
        let mut order = view.obj_of_pos;
        order.reverse();
        PathInstance::with_order(inst, order)
    };
    let mut pos_of_obj = vec![0usize; inst.n()];
    for (p, &b) in view.obj_of_pos.iter().enumerate() {
        pos_of_obj[b] = p;
    }
    let (pa, pb) = (pos_of_obj[start], pos_of_obj[object]);
    debug_assert!(pa < pb);
    if pb > view.bounds.right[pa] {
        return Ok(None);
    }
    // Identity below the agent is trivially extendable, so the greedy verdict
    // on adding (agent, target) is exact.
    let mut mu0 = PrefixState::new(view.n());
    for p in 0..pa {
        mu0.push(p);
    }
    Ok(greedy_extend(&view.bounds, &mu0, pb).map(|assigned| view.to_matching(&assigned)))
}

/// See [`PathInstance::reachable_matching`].
pub fn path_reachable_matching(inst: &Instance, target: &Matching) -> Result<bool, PathError> {
    PathInstance::new(inst)?.reachable_matching(target)
}

/// Serial dictatorship in path order: stage `k` hands the agent starting at
/// position `k` the best position it can still reach given all earlier
/// commitments. The result is reachable and Pareto-efficient.
pub fn pareto_path(inst: &Instance) -> Result<Matching, PathError> {
    pareto_path_with(inst, PeStrategy::Bisect)
}

/// [`pareto_path`] with the linear-pass threshold search; byte-identical
/// output, better stage complexity.
pub fn pareto_path_slack(inst: &Instance) -> Result<Matching, PathError> {
    pareto_path_with(inst, PeStrategy::Slack)
}

pub fn pareto_path_with(inst: &Instance, strategy: PeStrategy) -> Result<Matching, PathError> {
    let view = PathInstance::new(inst)?;
    let n = view.n();
    let mut state = PrefixState::new(n);
    for _ in 0..n {
        let best = view.best_next_match(&state, strategy);
        state.push(best);
    }
    Ok(view.to_matching(state.assigned()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn i1_view(inst: &Instance) -> PathInstance<'_> {
        PathInstance::new(inst).unwrap()
    }

    #[test]
    fn bounds_of_i1() {
        let inst = fixtures::i1();
        let view = i1_view(&inst);
        assert_eq!(view.bounds().left, vec![0, 0, 1]);
        assert_eq!(view.bounds().right, vec![2, 1, 2]);
    }

    #[test]
    fn greedy_completes_from_both_starts() {
        let inst = fixtures::i1();
        let view = i1_view(&inst);
        let empty = PrefixState::new(3);
        assert_eq!(greedy_extend(view.bounds(), &empty, 2), Some(vec![2, 0, 1]));
        assert_eq!(greedy_extend(view.bounds(), &empty, 1), Some(vec![1, 0, 2]));
    }

    #[test]
    fn object_query_with_certificate() {
        let inst = fixtures::i1();
        let m = reachable_object_path(&inst, 0, 2).unwrap().expect("reachable");
        assert_eq!(m.object_of(0), Some(2));
        assert!(path_reachable_matching(&inst, &m).unwrap());
        // Agent 2 can never hold object 1: its interval is {2, 3}.
        assert!(reachable_object_path(&inst, 2, 0).unwrap().is_none());
    }

    #[test]
    fn mirrored_query_works() {
        // Agent 3 starts right of object 2 and prefers walking left.
        let inst = fixtures::i1();
        let m = reachable_object_path(&inst, 2, 1).unwrap().expect("reachable");
        assert_eq!(m.object_of(2), Some(1));
    }

    #[test]
    fn same_position_query_is_identity() {
        let inst = fixtures::i1();
        let m = reachable_object_path(&inst, 1, 1).unwrap().unwrap();
        assert_eq!(m.to_vec(), vec![0, 1, 2]);
    }

    #[test]
    fn matching_membership() {
        let inst = fixtures::i1();
        assert!(path_reachable_matching(&inst, &Matching::perfect(vec![2, 0, 1])).unwrap());
        assert!(!path_reachable_matching(&inst, &Matching::perfect(vec![1, 2, 0])).unwrap());
    }

    #[test]
    fn stage_candidates_of_i1() {
        let inst = fixtures::i1();
        let view = i1_view(&inst);
        let mut state = PrefixState::new(3);
        // Stage 1: leftmost candidate 0, rightmost 2; agent 0 prefers 2.
        assert_eq!(view.best_next_match(&state, PeStrategy::Bisect), 2);
        state.push(2);
        // Stage 2: no room above, leftmost only.
        assert_eq!(view.best_next_match(&state, PeStrategy::Bisect), 0);
    }

    #[test]
    fn pareto_path_matches_known_result() {
        let inst = fixtures::i1();
        assert_eq!(pareto_path(&inst).unwrap().to_vec(), vec![2, 0, 1]);
        assert_eq!(pareto_path_slack(&inst).unwrap().to_vec(), vec![2, 0, 1]);
    }

    #[test]
    fn non_path_is_rejected() {
        let star = Instance::new(
            4,
            (0..4).map(|_| (0..4).collect()).collect(),
            vec![(0, 1), (0, 2), (0, 3)],
            None,
        )
        .unwrap();
        assert!(matches!(pareto_path(&star), Err(PathError::NotAPath)));
    }

    #[test]
    fn threshold_and_slack_agree_on_i1_prefixes() {
        let inst = fixtures::i1();
        let view = i1_view(&inst);
        for prefix in [vec![], vec![2], vec![1], vec![2, 0]] {
            let mut state = PrefixState::new(3);
            for p in prefix {
                state.push(p);
            }
            let k = state.len();
            let hi = view.bounds().right[k];
            assert_eq!(
                rightmost_threshold(view.bounds(), &state, hi),
                rightmost_threshold_slack(view.bounds(), &state, hi),
            );
        }
    }
}
