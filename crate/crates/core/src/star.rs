//! Solvers for star networks: one hub object adjacent to every leaf.
//!
//! Every swap involves the current holder of the hub object, and because an
//! agent's objects strictly improve it never returns to the hub once it has
//! left. The hub holders therefore form a chain: the initial holder hands the
//! hub to some leaf agent, who hands it to another, and so on. Object queries
//! reduce to path search over the possible hand-offs; efficiency is a serial
//! dictatorship by the successive hub holders.

use crate::instance::{
    apply_swap, swap_applicable, Agent, Instance, Matching, Object, SwapSequence,
};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum StarError {
    #[error("network is not a star")]
    NotAStar,
    #[error("agent {0} out of range")]
    AgentOutOfRange(usize),
    #[error("object {0} out of range")]
    ObjectOutOfRange(usize),
}

/// The hub of a star-shaped network: the vertex adjacent to all others, in a
/// graph with no other edges. Accepts the degenerate sizes (n <= 2), where
/// the smallest qualifying vertex wins.
pub fn star_center(inst: &Instance) -> Option<Object> {
    let n = inst.n();
    if inst.edges().len() != n.saturating_sub(1) {
        return None;
    }
    (0..n).find(|&b| inst.degree(b) == n - 1)
}

/// Can `agent` ever hold `object`? Returns the swap sequence reaching it.
///
/// A leaf object, once accepted by a hub holder, is kept forever; so the
/// querying agent must work its way to the hub through a chain of hand-offs
/// that leaves the target's owner untouched, then trade with it directly.
/// Hand-off from holder `g` to leaf agent `h`: `g` must like `h`'s starting
/// object better than the hub, `h` must like the hub better.
pub fn reachable_object_star(
    inst: &Instance,
    agent: Agent,
    object: Object,
) -> Result<Option<SwapSequence>, StarError> {
    let n = inst.n();
    if agent >= n {
        return Err(StarError::AgentOutOfRange(agent + 1));
    }
    if object >= n {
        return Err(StarError::ObjectOutOfRange(object + 1));
    }
    let center = star_center(inst).ok_or(StarError::NotAStar)?;
    if inst.endowment(agent) == object {
        return Ok(Some(Vec::new()));
    }
    let init = inst.initial_matching();
    let start = init.agent_at(center).unwrap();
    // The target's starting owner must never join the chain (its object has
    // to still be in place for the final trade).
    let avoid = (object != center).then(|| init.agent_at(object).unwrap());
    let hand_off = |g: Agent, h: Agent| {
        let b = inst.endowment(h);
        b != center && inst.prefers(g, b, center) && inst.prefers(h, center, b)
    };
    let mut prev: Vec<Option<Agent>> = vec![None; n];
    let mut seen = vec![false; n];
    seen[start] = true;
    let mut queue = std::collections::VecDeque::from([start]);
    let mut found = agent == start;
    while let Some(g) = queue.pop_front() {
        if g == agent {
            found = true;
            break;
        }
        for h in 0..n {
            if !seen[h] && Some(h) != avoid && hand_off(g, h) {
                seen[h] = true;
                prev[h] = Some(g);
                queue.push_back(h);
            }
        }
    }
    if !found || (object != center && !hand_off(agent, avoid.unwrap())) {
        return Ok(None);
    }
    let mut chain = vec![agent];
    while let Some(g) = prev[*chain.last().unwrap()] {
        chain.push(g);
    }
    chain.reverse();
    let mut swaps: SwapSequence =
        chain[1..].iter().map(|&h| (center, inst.endowment(h))).collect();
    if object != center {
        swaps.push((center, object));
    }
    debug_assert_eq!(
        crate::instance::validate_sequence(inst, &init, &swaps).unwrap().object_of(agent),
        Some(object)
    );
    Ok(Some(swaps))
}

/// A Pareto-efficient reachable matching, with the swaps that reach it.
///
/// The current hub holder is the dictator: it picks its favorite among the
/// hub object and the starting objects of leaf agents still willing to
/// accept the hub. Picking a leaf settles the holder there for good and
/// makes the leaf's owner the next dictator.
pub fn pareto_star(inst: &Instance) -> Result<(Matching, SwapSequence), StarError> {
    let center = star_center(inst).ok_or(StarError::NotAStar)?;
    let mut cur = inst.initial_matching();
    let mut swaps = SwapSequence::new();
    // Leaf agents preferring their own object over the hub can never trade.
    let mut open: Vec<bool> = (0..inst.n())
        .map(|a| {
            let b = inst.endowment(a);
            b != center && inst.prefers(a, center, b)
        })
        .collect();
    loop {
        let holder = cur.agent_at(center).unwrap();
        let mut best = center;
        for (a, _) in open.iter().enumerate().filter(|&(_, &o)| o) {
            let b = inst.endowment(a);
            if inst.prefers(holder, b, best) {
                best = b;
            }
        }
        if best == center {
            break;
        }
        let owner = cur.agent_at(best).unwrap();
        debug_assert!(swap_applicable(inst, &cur, (center, best)).unwrap());
        cur = apply_swap(inst, &cur, (center, best)).unwrap();
        swaps.push((center, best));
        open[owner] = false;
    }
    Ok((cur, swaps))
}
