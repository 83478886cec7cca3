//! Reachability of a full target matching when the network is a tree.
//!
//! An agent's objects strictly improve along any swap sequence, so it never
//! revisits a vertex; in a tree that pins its whole trajectory to the unique
//! simple path from start to target, crossed one edge at a time in order.
//! A swap can therefore only happen on an edge whose two current occupants
//! both need to cross it next, in opposite directions; and such a swap is
//! forced, because neither occupant can move anywhere else first. If the
//! forced swap is not rational the target is unreachable; if it is, doing it
//! first loses nothing. The solver keeps a worklist of these edges, applies
//! them in any order, and succeeds exactly when every agent arrives, after
//! exactly half the summed path lengths many swaps.

use crate::instance::{
    apply_swap, swap_applicable, Edge, Instance, Matching, Object, SwapSequence,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::VecDeque;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum TreeError {
    #[error("network is not a tree")]
    NotATree,
    #[error("target matching must be perfect")]
    TargetNotPerfect,
}

/// Order in which pending edges are tried. The outcome (and the witness
/// length) is the same for every policy; only the swap order may differ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PopPolicy {
    #[default]
    Lifo,
    Fifo,
    Random(u64),
}

fn check_tree(inst: &Instance) -> Result<(), TreeError> {
    let n = inst.n();
    if inst.edges().len() != n - 1 {
        return Err(TreeError::NotATree);
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
    if count == n {
        Ok(())
    } else {
        Err(TreeError::NotATree)
    }
}

/// Vertex path from `from` to `to`, endpoints included.
fn tree_path(inst: &Instance, from: Object, to: Object) -> Vec<Object> {
    let mut prev: Vec<Option<Object>> = vec![None; inst.n()];
    let mut seen = vec![false; inst.n()];
    seen[from] = true;
    let mut queue = VecDeque::from([from]);
    while let Some(b) = queue.pop_front() {
        if b == to {
            break;
        }
        for &c in inst.neighbors(b) {
            if !seen[c] {
                seen[c] = true;
                prev[c] = Some(b);
                queue.push_back(c);
            }
        }
    }
    let mut path = vec![to];
    while let Some(b) = prev[*path.last().unwrap()] {
        path.push(b);
    }
    path.reverse();
    debug_assert_eq!(path[0], from);
    path
}

/// Sum over agents of the tree distance from start to target; a reachable
/// target is reached in exactly half this many swaps.
pub fn tree_distance_sum(inst: &Instance, target: &Matching) -> Result<usize, TreeError> {
    check_tree(inst)?;
    if !target.is_perfect() {
        return Err(TreeError::TargetNotPerfect);
    }
    Ok((0..inst.n())
        .map(|a| tree_path(inst, inst.endowment(a), target.object_of(a).unwrap()).len() - 1)
        .sum())
}

/// Decides whether `target` is reachable and returns the swap sequence.
pub fn reachable_matching_tree(
    inst: &Instance,
    target: &Matching,
    policy: PopPolicy,
) -> Result<Option<SwapSequence>, TreeError> {
    check_tree(inst)?;
    if !target.is_perfect() {
        return Err(TreeError::TargetNotPerfect);
    }
    let n = inst.n();
    let paths: Vec<Vec<Object>> =
        (0..n).map(|a| tree_path(inst, inst.endowment(a), target.object_of(a).unwrap())).collect();
    let mut step = vec![0usize; n];
    let next = |agent: usize, step: &[usize]| -> Option<Object> {
        paths[agent].get(step[agent] + 1).copied()
    };
    let mut cur = inst.initial_matching();
    let good = |u: Object, v: Object, cur: &Matching, step: &[usize]| -> bool {
        let a = cur.agent_at(u).unwrap();
        let b = cur.agent_at(v).unwrap();
        next(a, step) == Some(v) && next(b, step) == Some(u)
    };
    let mut pending: Vec<Edge> =
        inst.edges().iter().copied().filter(|&(u, v)| good(u, v, &cur, &step)).collect();
    let mut remaining = (0..n).filter(|&a| paths[a].len() > 1).count();
    let mut witness = SwapSequence::new();
    let mut rng = match policy {
        PopPolicy::Random(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        _ => None,
    };
    let mut fifo_at = 0usize; // front cursor; the Fifo variant never removes
    loop {
        let (u, v) = match policy {
            PopPolicy::Lifo => match pending.pop() {
                Some(e) => e,
                None => break,
            },
            PopPolicy::Fifo => {
                if fifo_at == pending.len() {
                    break;
                }
                fifo_at += 1;
                pending[fifo_at - 1]
            }
            PopPolicy::Random(_) => {
                if pending.is_empty() {
                    break;
                }
                let idx = rng.as_mut().unwrap().random_range(0..pending.len());
                pending.swap_remove(idx)
            }
        };
        // Entries can go stale: the same edge may be queued twice around one
        // of its swaps. Goodness is rechecked on the live occupants.
        if !good(u, v, &cur, &step) {
            continue;
        }
        if !swap_applicable(inst, &cur, (u, v)).unwrap() {
            // The pairing is forced and preferences are fixed, so this swap
            // will never become rational: the target is unreachable.
            return Ok(None);
        }
        let a = cur.agent_at(u).unwrap();
        let b = cur.agent_at(v).unwrap();
        cur = apply_swap(inst, &cur, (u, v)).unwrap();
        witness.push((u, v));
        for agent in [a, b] {
            step[agent] += 1;
            if step[agent] + 1 == paths[agent].len() {
                remaining -= 1;
            }
        }
        // Only edges touching the swapped pair can newly become good.
        for (vertex, agent) in [(v, a), (u, b)] {
            if let Some(w) = next(agent, &step) {
                if good(vertex, w, &cur, &step) {
                    pending.push((vertex.min(w), vertex.max(w)));
                }
            }
        }
    }
    if remaining == 0 {
        debug_assert_eq!(witness.len() * 2, tree_distance_sum(inst, target)?);
        Ok(Some(witness))
    } else {
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::instance::validate_sequence;

    #[test]
    fn path_instance_is_a_tree() {
        let inst = fixtures::i1();
        let target = Matching::perfect(vec![2, 0, 1]);
        let swaps = reachable_matching_tree(&inst, &target, PopPolicy::Lifo)
            .unwrap()
            .expect("reachable");
        assert_eq!(swaps.len() * 2, tree_distance_sum(&inst, &target).unwrap());
        let end = validate_sequence(&inst, &inst.initial_matching(), &swaps).unwrap();
        assert_eq!(end.to_vec(), vec![2, 0, 1]);
    }

    #[test]
    fn forced_irrational_swap_means_no() {
        // The rotation needs agent 2 to give up object 1 for 2: never rational.
        let inst = fixtures::i1();
        let target = Matching::perfect(vec![1, 2, 0]);
        assert_eq!(reachable_matching_tree(&inst, &target, PopPolicy::Lifo).unwrap(), None);
    }

    #[test]
    fn unwilling_pair_means_no() {
        let inst = fixtures::i2();
        let target = Matching::perfect(vec![1, 0]);
        assert_eq!(reachable_matching_tree(&inst, &target, PopPolicy::Lifo).unwrap(), None);
    }

    #[test]
    fn identity_target_needs_no_swaps() {
        let inst = fixtures::i1();
        let target = inst.initial_matching();
        assert_eq!(
            reachable_matching_tree(&inst, &target, PopPolicy::Fifo).unwrap(),
            Some(vec![])
        );
    }

    #[test]
    fn star_swap_via_tree_solver() {
        let inst = fixtures::i4();
        let target = Matching::perfect(vec![1, 0, 2]);
        let swaps =
            reachable_matching_tree(&inst, &target, PopPolicy::Lifo).unwrap().expect("reachable");
        assert_eq!(swaps, vec![(0, 1)]);
    }

    #[test]
    fn policies_agree_on_outcome_and_length() {
        // Two independent adjacent swaps; every policy must find both.
        let inst = Instance::new(
            4,
            vec![vec![1, 0, 2, 3], vec![0, 1, 2, 3], vec![3, 2, 0, 1], vec![2, 3, 0, 1]],
            vec![(0, 1), (1, 2), (2, 3)],
            None,
        )
        .unwrap();
        let target = Matching::perfect(vec![1, 0, 3, 2]);
        for policy in [PopPolicy::Lifo, PopPolicy::Fifo, PopPolicy::Random(7)] {
            let swaps = reachable_matching_tree(&inst, &target, policy).unwrap().unwrap();
            assert_eq!(swaps.len(), 2);
            let end = validate_sequence(&inst, &inst.initial_matching(), &swaps).unwrap();
            assert_eq!(end.to_vec(), vec![1, 0, 3, 2]);
        }
    }

    #[test]
    fn rejects_non_trees_and_partial_targets() {
        let triangle = Instance::new(
            3,
            (0..3).map(|_| (0..3).collect()).collect(),
            vec![(0, 1), (0, 2), (1, 2)],
            None,
        )
        .unwrap();
        let target = Matching::perfect(vec![0, 1, 2]);
        assert!(matches!(
            reachable_matching_tree(&triangle, &target, PopPolicy::Lifo),
            Err(TreeError::NotATree)
        ));
        let inst = fixtures::i1();
        let mut partial = Matching::empty(3);
        partial.assign(0, 1);
        assert!(matches!(
            reachable_matching_tree(&inst, &partial, PopPolicy::Lifo),
            Err(TreeError::TargetNotPerfect)
        ));
    }
}
