//! Pareto efficiency on generalized stars: trees where removing one hub
//! vertex leaves disjoint paths (the branches).
//!
//! The solver is a serial dictatorship, but the dictator order is discovered
//! on the fly. The current hub holder is committed first; while its committed
//! destination lies in some branch, the agent just past that branch's
//! committed block becomes the next dictator. That agent either settles
//! deeper in its own branch, or walks to the hub (one swap per step, each
//! displaced agent moving one vertex outward toward its own destination) and
//! is committed to the best object it can reach from there, possibly the hub
//! itself, which ends the first phase. Afterwards no agent ever crosses the
//! hub again, so each branch finishes as an independent path instance using
//! the staged machinery from [`crate::path`].
//!
//! Feasibility questions inside the phases reduce to path prefix extensions:
//! agents occupy a branch in depth order, their committed destinations are
//! strictly increasing in depth, and an uncommitted agent has never moved,
//! so its movement interval comes from a preprocessing pass over the initial
//! matching. The structural facts this relies on are enforced with plain
//! asserts throughout.

use crate::classify::{branches_of, classify_graph, GraphClass};
use crate::instance::{apply_swap, swap_applicable, Agent, Instance, Matching, Object};
use crate::path::{
    greedy_complete, rightmost_threshold, stage_best, Bounds, PeStrategy, PrefixState,
};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GenStarError {
    #[error("network is not a generalized star")]
    NotAGeneralizedStar,
    #[error("network is a path, which has no unambiguous hub; use the path solver")]
    PathShaped,
    #[error("vertex does not split the tree into disjoint paths")]
    BadCenter,
}

/// A generalized star broken into hub and branches. Branch objects are
/// listed nearest-hub first; "depth" below is the 0-based index into that
/// list.
pub struct GenStarLayout {
    center: Object,
    branches: Vec<Vec<Object>>,
    /// Per object: which branch and depth; `None` for the hub.
    loc: Vec<Option<(usize, usize)>>,
}

impl GenStarLayout {
    pub fn new(inst: &Instance) -> Result<Self, GenStarError> {
        match classify_graph(inst) {
            GraphClass::GeneralizedStar { center, branches } => {
                Ok(Self::build(inst.n(), center, branches))
            }
            GraphClass::Star { center } => {
                let branches = inst.neighbors(center).iter().map(|&b| vec![b]).collect();
                Ok(Self::build(inst.n(), center, branches))
            }
            GraphClass::Path { .. } => Err(GenStarError::PathShaped),
            _ => Err(GenStarError::NotAGeneralizedStar),
        }
    }

    /// Treats `center` as the hub even when the shape alone does not force
    /// the choice (paths admit any inner vertex). The tree must fall apart
    /// into paths when `center` is removed.
    pub fn with_center(inst: &Instance, center: Object) -> Result<Self, GenStarError> {
        let n = inst.n();
        if center >= n {
            return Err(GenStarError::BadCenter);
        }
        if inst.edges().len() != n - 1 {
            return Err(GenStarError::NotAGeneralizedStar);
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(b) = stack.pop() {
            for &c in inst.neighbors(b) {
                if !seen[c] {
                    seen[c] = true;
                    count += 1;
                    stack.push(c);
                }
            }
        }
        if count != n {
            return Err(GenStarError::NotAGeneralizedStar);
        }
        if (0..n).any(|b| b != center && inst.degree(b) > 2) {
            return Err(GenStarError::BadCenter);
        }
        Ok(Self::build(n, center, branches_of(inst, center)))
    }

    fn build(n: usize, center: Object, branches: Vec<Vec<Object>>) -> Self {
        let mut loc = vec![None; n];
        for (i, branch) in branches.iter().enumerate() {
            for (d, &b) in branch.iter().enumerate() {
                loc[b] = Some((i, d));
            }
        }
        GenStarLayout { center, branches, loc }
    }

    pub fn center(&self) -> Object {
        self.center
    }

    pub fn branches(&self) -> &[Vec<Object>] {
        &self.branches
    }
}

/// Movement interval of a branch agent within its own branch, plus whether
/// its strictly improving inward walk continues onto the hub.
#[derive(Clone, Copy)]
struct Span {
    left: usize,
    right: usize,
    to_center: bool,
}

/// Recorded after a first-phase commitment: the physical matching and all
/// commitments so far, in commit order.
pub type Phase1Snapshot = (Matching, Vec<(Agent, Object)>);

/// Output of the solver: the matching plus the evidence the tests replay.
pub struct GenStarRun {
    pub matching: Matching,
    /// Dictator order actually used.
    pub sigma: Vec<Agent>,
    pub phase1: Vec<Phase1Snapshot>,
}

struct Solver<'a> {
    inst: &'a Instance,
    lay: &'a GenStarLayout,
    span: Vec<Option<Span>>,
    chi: Matching,
    tau: Vec<Option<Object>>,
    /// Per branch: committed destination depths, strictly increasing; the
    /// committed agents occupy exactly the depths below `dests[i].len()`.
    dests: Vec<Vec<usize>>,
    sigma: Vec<Agent>,
    commit_log: Vec<(Agent, Object)>,
    snapshots: Option<Vec<Phase1Snapshot>>,
}

impl<'a> Solver<'a> {
    fn new(inst: &'a Instance, lay: &'a GenStarLayout, traced: bool) -> Self {
        let init = inst.initial_matching();
        let mut span = vec![None; inst.n()];
        for branch in &lay.branches {
            for (d, &obj) in branch.iter().enumerate() {
                let a = init.agent_at(obj).unwrap();
                let mut li = d;
                while li > 0 && inst.prefers(a, branch[li - 1], branch[li]) {
                    li -= 1;
                }
                let to_center = li == 0 && inst.prefers(a, lay.center, branch[0]);
                let mut ri = d;
                while ri + 1 < branch.len() && inst.prefers(a, branch[ri + 1], branch[ri]) {
                    ri += 1;
                }
                span[a] = Some(Span { left: li, right: ri, to_center });
            }
        }
        Solver {
            inst,
            lay,
            span,
            chi: init,
            tau: vec![None; inst.n()],
            dests: vec![Vec::new(); lay.branches.len()],
            sigma: Vec::new(),
            commit_log: Vec::new(),
            snapshots: traced.then(Vec::new),
        }
    }

    fn occupant(&self, i: usize, d: usize) -> Agent {
        self.chi.agent_at(self.lay.branches[i][d]).unwrap()
    }

    fn span_of(&self, a: Agent) -> Span {
        self.span[a].expect("branch agents have a precomputed span")
    }

    fn commit(&mut self, a: Agent, b: Object) {
        assert!(self.tau[a].is_none(), "each agent is committed exactly once");
        self.tau[a] = Some(b);
        self.commit_log.push((a, b));
        if let Some(snaps) = &mut self.snapshots {
            snaps.push((self.chi.clone(), self.commit_log.clone()));
        }
    }

    /// Bounds array for branch `i` standing alone. Depths below `committed`
    /// hold placeholders; the searches only read depths from the first
    /// uncommitted agent onward, and uncommitted agents are still at their
    /// starting vertex so their preprocessed span applies.
    fn branch_bounds(&self, i: usize, committed: usize) -> Bounds {
        let len = self.lay.branches[i].len();
        let mut left = Vec::with_capacity(len);
        let mut right = Vec::with_capacity(len);
        for d in 0..len {
            if d < committed {
                left.push(d);
                right.push(d);
            } else {
                let a = self.occupant(i, d);
                debug_assert_eq!(self.inst.endowment(a), self.lay.branches[i][d]);
                let sp = self.span_of(a);
                left.push(sp.left);
                right.push(sp.right);
            }
        }
        Bounds { left, right }
    }

    /// With the hub frozen, can branch `i` still honor the commitments in
    /// `dests` while placing everyone else somewhere?
    fn branch_internally_feasible(&self, i: usize, dests: &[usize]) -> bool {
        let mut state = PrefixState::new(self.lay.branches[i].len());
        for &d in dests {
            state.push(d);
        }
        greedy_complete(&self.branch_bounds(i, dests.len()), &state).is_some()
    }

    /// Deepest destination in branch `i` still open to the agent just past
    /// the committed block. The hub holder is pinned to its pending
    /// destination at depth `j0`, so its entry displaces exactly one branch
    /// agent to the hub; the search therefore runs on the extended path hub +
    /// branch, with the hub position open only to agents whose improving walk
    /// reaches it. A branch-only search would overlook that displacement and
    /// report destinations no reachable matching can deliver.
    fn deepest_branch_match(&self, i: usize, j0: usize) -> Option<usize> {
        let s = self.dests[i].len();
        let a = self.occupant(i, s);
        let objs = &self.lay.branches[i];
        let mut left = vec![0];
        let mut right = vec![0];
        for (d, _) in objs.iter().enumerate() {
            if d < s {
                left.push(d + 1);
                right.push(d + 1);
            } else {
                let sp = self.span_of(self.occupant(i, d));
                left.push(if sp.to_center { 0 } else { sp.left + 1 });
                right.push(sp.right + 1);
            }
        }
        let bounds = Bounds { left, right };
        let mut state = PrefixState::new(bounds.len());
        state.push(j0 + 1);
        for &d in &self.dests[i] {
            state.push(d + 1);
        }
        rightmost_threshold(&bounds, &state, self.span_of(a).right + 1).map(|p| p - 1)
    }

    /// Deepest depth of branch `i` that hub holder `a` can enter and settle
    /// at, given the branch's committed destinations `dests`. Works on the
    /// extended path hub + branch: path position 0 is the hub, position
    /// `p >= 1` is depth `p - 1`.
    fn best_entry_depth(&self, a: Agent, i: usize, dests: &[usize]) -> Option<usize> {
        let objs = &self.lay.branches[i];
        // Strictly improving walk limit from the hub into the branch; the
        // holder may have moved before, so this is scanned directly.
        let mut reach = 0usize;
        let mut prev = self.lay.center;
        for &b in objs {
            if self.inst.prefers(a, b, prev) {
                reach += 1;
                prev = b;
            } else {
                break;
            }
        }
        // The holder cannot settle at or beyond the first committed
        // destination: that agent exits the hub-adjacent vertex first.
        let cap = dests.first().map_or(reach, |&d0| reach.min(d0));
        if cap == 0 {
            return None;
        }
        let mut left = vec![0];
        let mut right = vec![reach];
        for (d, _) in objs.iter().enumerate() {
            if d < dests.len() {
                left.push(d + 1);
                right.push(d + 1);
            } else {
                let sp = self.span_of(self.occupant(i, d));
                left.push(if sp.to_center { 0 } else { sp.left + 1 });
                right.push(sp.right + 1);
            }
        }
        let bounds = Bounds { left, right };
        let feasible = |depth: usize| {
            let mut state = PrefixState::new(bounds.len());
            state.push(depth + 1);
            for &j in dests {
                state.push(j + 1);
            }
            greedy_complete(&bounds, &state).is_some()
        };
        let (mut lo, mut hi) = (0usize, cap - 1);
        let mut best = None;
        while lo <= hi {
            let mid = lo + (hi - lo) / 2;
            if feasible(mid) {
                best = Some(mid);
                lo = mid + 1;
            } else {
                if mid == 0 {
                    break;
                }
                hi = mid - 1;
            }
        }
        best
    }

    /// Best object the hub holder `a` can still be matched to, with the
    /// committed destinations given per branch: the hub itself when every
    /// branch can settle internally, otherwise the best branch entry.
    fn best_center_match(&self, a: Agent, views: &[&[usize]]) -> Object {
        let m = self.lay.branches.len();
        let mut best: Option<Object> = None;
        let consider = |b: Object, best: &mut Option<Object>| {
            if best.is_none_or(|cur| self.inst.prefers(a, b, cur)) {
                *best = Some(b);
            }
        };
        if (0..m).all(|i| self.branch_internally_feasible(i, views[i])) {
            consider(self.lay.center, &mut best);
        }
        for (i, view) in views.iter().enumerate() {
            if let Some(d) = self.best_entry_depth(a, i, view) {
                consider(self.lay.branches[i][d], &mut best);
            }
        }
        best.expect("the hub holder always has a candidate")
    }

    /// Walks the dictator at depth `s` of branch `i` to the hub, one swap
    /// per step. Every displaced agent moves one vertex outward, a step its
    /// committed trajectory requires anyway, so each swap is rational.
    fn hop(&mut self, i: usize, s: usize) {
        for d in (0..=s).rev() {
            let inner = if d == 0 { self.lay.center } else { self.lay.branches[i][d - 1] };
            let outer = self.lay.branches[i][d];
            assert!(
                swap_applicable(self.inst, &self.chi, (inner, outer)).unwrap(),
                "hub walk swaps are rational"
            );
            self.chi = apply_swap(self.inst, &self.chi, (inner, outer)).unwrap();
        }
    }

    fn run(mut self) -> GenStarRun {
        let n = self.inst.n();
        let center = self.lay.center;
        let first = self.chi.agent_at(center).unwrap();
        self.sigma.push(first);
        let views: Vec<&[usize]> = self.dests.iter().map(|v| v.as_slice()).collect();
        let b = self.best_center_match(first, &views);
        self.commit(first, b);

        let mut iterations = 0usize;
        loop {
            let holder = self.chi.agent_at(center).unwrap();
            let dest = self.tau[holder].expect("the hub holder is always committed");
            if dest == center {
                break;
            }
            iterations += 1;
            assert!(iterations <= n, "each iteration commits one agent");
            let (i, j0) = self.lay.loc[dest].unwrap();
            let s = self.dests[i].len();
            assert!(
                s < self.lay.branches[i].len(),
                "committed destinations leave room past the block"
            );
            let a = self.occupant(i, s);
            assert!(self.tau[a].is_none());
            self.sigma.push(a);
            let k = self.deepest_branch_match(i, j0);
            let mut committed = false;
            if self.span_of(a).to_center {
                // The dictator can walk to the hub; weigh the best
                // cross-branch object against the in-branch best.
                let with_j0: Vec<usize> =
                    std::iter::once(j0).chain(self.dests[i].iter().copied()).collect();
                let views: Vec<&[usize]> = (0..self.lay.branches.len())
                    .map(|x| if x == i { with_j0.as_slice() } else { self.dests[x].as_slice() })
                    .collect();
                let b = self.best_center_match(a, &views);
                if k.is_none_or(|d| self.inst.prefers(a, b, self.lay.branches[i][d])) {
                    self.hop(i, s);
                    assert_eq!(self.chi.agent_at(center), Some(a));
                    self.dests[i].insert(0, j0);
                    self.commit(a, b);
                    committed = true;
                }
            }
            if !committed {
                let d = k.expect("an in-branch destination exists when the hub walk loses");
                self.commit(a, self.lay.branches[i][d]);
                self.dests[i].push(d);
            }
            assert!(
                self.dests[i].windows(2).all(|w| w[0] < w[1]),
                "committed destinations stay ordered outward"
            );
        }

        // Second phase: the hub never changes hands again, so each branch is
        // an independent path instance continued from its committed block.
        for i in 0..self.lay.branches.len() {
            let s = self.dests[i].len();
            let len = self.lay.branches[i].len();
            let bounds = self.branch_bounds(i, s);
            let mut state = PrefixState::new(len);
            for &d in &self.dests[i] {
                state.push(d);
            }
            for depth in s..len {
                let a = self.occupant(i, depth);
                assert!(self.tau[a].is_none());
                self.sigma.push(a);
                let best = stage_best(&bounds, &state, PeStrategy::Bisect, |p, q| {
                    self.inst.prefers(a, self.lay.branches[i][p], self.lay.branches[i][q])
                });
                self.commit(a, self.lay.branches[i][best]);
                state.push(best);
            }
        }

        let mut matching = Matching::empty(n);
        for a in 0..n {
            matching.assign(a, self.tau[a].expect("every agent ends up committed"));
        }
        assert!(matching.is_perfect());
        GenStarRun {
            matching,
            sigma: self.sigma,
            phase1: self.snapshots.unwrap_or_default(),
        }
    }
}

/// A Pareto-efficient reachable matching for a generalized star.
pub fn pareto_genstar(inst: &Instance) -> Result<Matching, GenStarError> {
    let lay = GenStarLayout::new(inst)?;
    Ok(pareto_genstar_with(inst, &lay, false).matching)
}

/// [`pareto_genstar`] keeping the dictator order and the first-phase
/// snapshots for external validation.
pub fn pareto_genstar_traced(inst: &Instance) -> Result<GenStarRun, GenStarError> {
    let lay = GenStarLayout::new(inst)?;
    Ok(pareto_genstar_with(inst, &lay, true))
}

/// Runs the solver on an explicit layout, e.g. one built by
/// [`GenStarLayout::with_center`].
pub fn pareto_genstar_with(inst: &Instance, lay: &GenStarLayout, traced: bool) -> GenStarRun {
    Solver::new(inst, lay, traced).run()
}
