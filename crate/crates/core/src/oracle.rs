//! Exhaustive ground truth: BFS over the swap step relation.
//!
//! The state space is the set of perfect matchings reachable from a start
//! matching. BFS with edges probed in sorted order makes enumeration order,
//! witness choice, and tie handling deterministic, and BFS parents give
//! shortest witnesses. The solvers in the other modules are checked against
//! this module on small instances; on hard classes (cliques, trees and up for
//! some questions) this module is also the production fallback.
//!
//! States are dense `n`-byte keys (object per agent), so the oracle refuses
//! instances with more than 255 objects; exhaustive search far beyond that is
//! hopeless anyway.

use crate::instance::{Agent, Edge, Instance, Matching, Object, SwapSequence};
use std::collections::hash_map::Entry;
use std::collections::HashMap;
use thiserror::Error;

/// Hard cap on stored states unless the caller picks their own.
pub const DEFAULT_STATE_LIMIT: usize = 2_000_000;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("instance has {n} objects; the exhaustive oracle handles at most 255")]
    TooLarge { n: usize },
    #[error("state limit {limit} hit after {found} states; answer would be unreliable")]
    Truncated { limit: usize, found: usize },
}

/// Answer of a reachability query. `Inconclusive` only occurs when the
/// enumeration was truncated by the state limit and the target was not among
/// the states seen: absence from a truncated enumeration is not a NO.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleAnswer {
    Yes(SwapSequence),
    No,
    Inconclusive,
}

impl OracleAnswer {
    pub fn is_yes(&self) -> bool {
        matches!(self, OracleAnswer::Yes(_))
    }
}

#[derive(Debug, Clone, Copy)]
pub enum OracleQuery<'a> {
    /// Can `agent` ever hold `object`?
    Object { agent: Agent, object: Object },
    /// Is this exact perfect matching reachable?
    Matching(&'a Matching),
}

/// The BFS-enumerated reachable set, with parent pointers for witnesses.
pub struct ReachSet {
    n: usize,
    states: Vec<Box<[u8]>>,
    index: HashMap<Box<[u8]>, u32>,
    /// Parent state index; the root points at itself.
    parent: Vec<u32>,
    parent_edge: Vec<Edge>,
    truncated: bool,
}

pub fn enumerate_reachable(inst: &Instance, limit: usize) -> Result<ReachSet, OracleError> {
    enumerate_reachable_from(inst, &inst.initial_matching(), limit)
}

pub fn enumerate_reachable_from(
    inst: &Instance,
    start: &Matching,
    limit: usize,
) -> Result<ReachSet, OracleError> {
    let n = inst.n();
    if n > u8::MAX as usize {
        return Err(OracleError::TooLarge { n });
    }
    let root: Box<[u8]> = start.to_vec().iter().map(|&b| b as u8).collect();
    let mut set = ReachSet {
        n,
        states: vec![root.clone()],
        index: HashMap::from([(root, 0u32)]),
        parent: vec![0],
        parent_edge: vec![(0, 0)],
        truncated: false,
    };
    let mut agent_at = vec![0u8; n];
    let mut head = 0usize;
    'bfs: while head < set.states.len() {
        let cur = set.states[head].clone();
        for (a, &b) in cur.iter().enumerate() {
            agent_at[b as usize] = a as u8;
        }
        for &(x, y) in inst.edges() {
            let ax = agent_at[x] as usize;
            let ay = agent_at[y] as usize;
            if inst.prefers(ax, y, x) && inst.prefers(ay, x, y) {
                let mut next = cur.clone();
                next[ax] = y as u8;
                next[ay] = x as u8;
                if let Entry::Vacant(e) = set.index.entry(next) {
                    if set.states.len() >= limit {
                        set.truncated = true;
                        break 'bfs;
                    }
                    let id = set.states.len() as u32;
                    set.states.push(e.key().clone());
                    set.parent.push(head as u32);
                    set.parent_edge.push((x, y));
                    e.insert(id);
                }
            }
        }
        head += 1;
    }
    Ok(set)
}

impl ReachSet {
    pub fn size(&self) -> usize {
        self.states.len()
    }

    pub fn truncated(&self) -> bool {
        self.truncated
    }

    pub fn contains(&self, m: &Matching) -> bool {
        self.index_of(m).is_some()
    }

    pub fn index_of(&self, m: &Matching) -> Option<usize> {
        let key: Box<[u8]> = m.to_vec().iter().map(|&b| b as u8).collect();
        self.index.get(&key).map(|&i| i as usize)
    }

    pub fn matching(&self, idx: usize) -> Matching {
        Matching::perfect(self.states[idx].iter().map(|&b| b as usize).collect())
    }

    pub fn iter(&self) -> impl Iterator<Item = Matching> + '_ {
        (0..self.size()).map(|i| self.matching(i))
    }

    /// First state in BFS order where `agent` holds `object`.
    pub fn find_holder(&self, agent: Agent, object: Object) -> Option<usize> {
        self.states.iter().position(|s| s[agent] as usize == object)
    }

    /// Swap sequence from the start matching to state `idx` (shortest, by
    /// BFS construction).
    pub fn witness(&self, idx: usize) -> SwapSequence {
        let mut swaps = Vec::new();
        let mut cur = idx as u32;
        while self.parent[cur as usize] != cur {
            swaps.push(self.parent_edge[cur as usize]);
            cur = self.parent[cur as usize];
        }
        swaps.reverse();
        swaps
    }

    /// Indices of the members no other member Pareto-dominates.
    pub fn pareto_front(&self, inst: &Instance) -> Vec<usize> {
        let dominates = |s1: &[u8], s2: &[u8]| -> bool {
            let mut strict = false;
            for a in 0..self.n {
                let r1 = inst.rank(a, s1[a] as usize);
                let r2 = inst.rank(a, s2[a] as usize);
                if r1 > r2 {
                    return false;
                }
                strict |= r1 < r2;
            }
            strict
        };
        (0..self.size())
            .filter(|&i| !self.states.iter().any(|other| dominates(other, &self.states[i])))
            .collect()
    }
}

pub fn oracle_decide(
    inst: &Instance,
    query: OracleQuery,
    limit: usize,
) -> Result<OracleAnswer, OracleError> {
    let set = enumerate_reachable(inst, limit)?;
    let hit = match query {
        OracleQuery::Object { agent, object } => set.find_holder(agent, object),
        OracleQuery::Matching(m) => set.index_of(m),
    };
    Ok(match hit {
        Some(idx) => OracleAnswer::Yes(set.witness(idx)),
        None if set.truncated() => OracleAnswer::Inconclusive,
        None => OracleAnswer::No,
    })
}

/// All Pareto-efficient reachable matchings. Errors out on truncation: a
/// partial front could label dominated matchings efficient.
pub fn oracle_pareto_front(inst: &Instance, limit: usize) -> Result<Vec<Matching>, OracleError> {
    let set = enumerate_reachable(inst, limit)?;
    if set.truncated() {
        return Err(OracleError::Truncated { limit, found: set.size() });
    }
    Ok(set.pareto_front(inst).into_iter().map(|i| set.matching(i)).collect())
}

/// Reference serial dictatorship: dictators take turns (in `order`) filtering
/// the reachable set down to the matchings where they do best. Strict
/// preferences leave exactly one survivor once every agent has dictated.
pub fn serial_dictatorship_reference(
    inst: &Instance,
    order: &[Agent],
    limit: usize,
) -> Result<Matching, OracleError> {
    assert_eq!(order.len(), inst.n(), "order must list every agent");
    let set = enumerate_reachable(inst, limit)?;
    if set.truncated() {
        return Err(OracleError::Truncated { limit, found: set.size() });
    }
    let mut survivors: Vec<usize> = (0..set.size()).collect();
    for &d in order {
        let best = survivors
            .iter()
            .map(|&i| inst.rank(d, set.matching(i).object_of(d).unwrap()))
            .min()
            .expect("survivor set never empties");
        survivors.retain(|&i| inst.rank(d, set.matching(i).object_of(d).unwrap()) == best);
    }
    assert_eq!(survivors.len(), 1, "strict preferences leave a unique survivor");
    Ok(set.matching(survivors[0]))
}
