//! Reductions between satisfiability and reachability questions.
//!
//! Two encodings turn a 2P1N formula into a reachable-object question, one
//! on a complete graph and one on a generalized star. A third folds a
//! reachable-object question into a reachable-matching question by doubling
//! the instance. Each encoding is sound and complete: the source is a
//! yes-instance exactly when the produced instance is. The suite in
//! `tests/acceptance.rs` checks that equivalence against brute force on
//! small inputs.
//!
//! All encodings endow agent `i` with object `i`, so an agent is named by
//! the object it starts on.

use thiserror::Error;

use crate::cnf::Cnf2p1n;
use crate::instance::{Agent, Edge, Instance, Matching, Object};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ReductionError {
    #[error("query references an agent or object outside the instance")]
    QueryOutOfRange,
    #[error("the query agent already holds the target object")]
    TrivialQuery,
    #[error("clique mode requires a complete input graph")]
    NotAClique,
}

/// A reachable-object question: can `agent` ever hold `object`?
#[derive(Debug, Clone)]
pub struct RoInstance {
    pub instance: Instance,
    pub agent: Agent,
    pub object: Object,
}

/// A reachable-matching question: is `target` reachable from the start?
#[derive(Debug, Clone)]
pub struct RmInstance {
    pub instance: Instance,
    pub target: Matching,
}

/// `prefix`, then the endowment, then every remaining object ascending.
/// The improving set of the resulting list is exactly `prefix`.
fn ladder(prefix: &[Object], endowment: Object, n: usize) -> Vec<Object> {
    let mut list = prefix.to_vec();
    list.push(endowment);
    let mut seen = vec![false; n];
    for &b in &list {
        seen[b] = true;
    }
    list.extend((0..n).filter(|&b| !seen[b]));
    list
}

fn clique_edges(n: usize) -> Vec<Edge> {
    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect()
}

/// Encodes a 2P1N formula as a reachable-object question on a complete
/// graph. For a formula with `m` clauses and `v` variables the instance has
/// `3m + 2v` objects: a block `u_j, v_j, w_j` per clause `j` and a pair
/// `x1_i, x2_i` per variable `i`. The query asks whether the agent starting
/// on `w_m` can climb down to `u_1`; it can exactly when the formula is
/// satisfiable. The climb passes every clause block, and the handoff inside
/// block `j` needs some variable pair to have vacated `v_j` or `w_j`, which
/// a pair can do only in clauses consistent with one truth value.
pub fn sat_to_clique_ro(cnf: &Cnf2p1n) -> RoInstance {
    let m = cnf.num_clauses();
    let nv = cnf.num_vars();
    let n = 3 * m + 2 * nv;
    let u = |j: usize| j - 1;
    let vo = |j: usize| m + j - 1;
    let w = |j: usize| 2 * m + j - 1;
    let x1 = |i: usize| 3 * m + i - 1;
    let x2 = |i: usize| 3 * m + nv + i - 1;

    let mut prefs: Vec<Vec<Object>> = vec![Vec::new(); n];
    for j in 1..=m {
        prefs[u(j)] = ladder(&[vo(j)], u(j), n);
    }
    for j in 1..m {
        prefs[w(j)] = ladder(&[u(j + 1)], w(j), n);
    }
    // The querying agent walks the clause blocks in order, best block first.
    let mut climb = Vec::with_capacity(3 * m - 1);
    for j in 1..=m {
        climb.push(u(j));
        climb.push(vo(j));
        if j < m {
            climb.push(w(j));
        }
    }
    prefs[w(m)] = ladder(&climb, w(m), n);
    for j in 1..=m {
        // Variable agents willing to take v_j: first-position pairs whose
        // variable occurs in clause j positively (first slot) or negatively,
        // and second-position pairs for a second positive occurrence.
        let mut takers: Vec<Object> = Vec::new();
        for i in 1..=nv {
            let occ = cnf.occurrences(i);
            if occ.positive[0] + 1 == j || occ.negative + 1 == j {
                takers.push(x1(i));
            }
            if occ.positive[1] + 1 == j {
                takers.push(x2(i));
            }
        }
        takers.sort_unstable();
        prefs[vo(j)] = ladder(&takers, vo(j), n);
    }
    for i in 1..=nv {
        let occ = cnf.occurrences(i);
        let (p1, p2, ng) = (occ.positive[0] + 1, occ.positive[1] + 1, occ.negative + 1);
        prefs[x1(i)] = ladder(&[x2(i), w(p1), vo(p1)], x1(i), n);
        // The second pair serves its two clauses in index order; reaching
        // the later block means giving up on the earlier one.
        let second = if ng < p2 {
            [w(ng), vo(ng), w(p2), vo(p2), x1(i)]
        } else {
            [w(p2), vo(p2), w(ng), vo(ng), x1(i)]
        };
        prefs[x2(i)] = ladder(&second, x2(i), n);
    }

    let instance =
        Instance::new(n, prefs, clique_edges(n), None).expect("the encoding is a valid instance");
    RoInstance { instance, agent: w(m), object: u(1) }
}

/// Position of `object` on the clique-encoding query agent's improvement
/// ladder: `u_j` at `3j-2`, `v_j` at `3j-1`, `w_j` at `3j` (1-based), and 0
/// for the variable pairs, which sit below everything the agent ever holds.
pub fn clique_ladder_rank(num_clauses: usize, object: Object) -> usize {
    let m = num_clauses;
    match object {
        b if b < m => 3 * b + 1,
        b if b < 2 * m => 3 * (b - m) + 2,
        b if b < 3 * m => 3 * (b - 2 * m) + 3,
        _ => 0,
    }
}

/// Encodes a 2P1N formula as a reachable-object question on a generalized
/// star. For `m` clauses and `v` variables the instance has `2m + 5v + 1`
/// objects: a staircase branch `c2_0 .. c2_m` ending at the hub, a leaf
/// `c1_i` per clause, and per variable a four-object branch
/// `n_j - d_j - p1_j - p_j` plus a leaf `d1_j`. The agent starting at the
/// staircase's far end can reach the hub exactly when the formula is
/// satisfiable: each staircase step frees up only after some variable agent
/// parks on the matching clause leaf, and a variable's agents can serve
/// either its positive clauses or its negative one, never both.
pub fn sat_to_genstar_ro(cnf: &Cnf2p1n) -> RoInstance {
    let m = cnf.num_clauses();
    let nv = cnf.num_vars();
    let n = 2 * m + 5 * nv + 1;
    let c1 = |i: usize| i - 1;
    let c2 = |t: usize| m + t;
    let center = c2(m);
    let nn = |j: usize| 2 * m + 1 + 5 * (j - 1);
    let dd = |j: usize| nn(j) + 1;
    let p1 = |j: usize| nn(j) + 2;
    let pp = |j: usize| nn(j) + 3;
    let d1 = |j: usize| nn(j) + 4;

    let mut edges: Vec<Edge> = Vec::new();
    for t in 0..m {
        edges.push((c2(t), c2(t + 1)));
    }
    for i in 1..=m {
        edges.push((c1(i), center));
    }
    for j in 1..=nv {
        edges.push((nn(j), dd(j)));
        edges.push((dd(j), p1(j)));
        edges.push((p1(j), pp(j)));
        edges.push((pp(j), center));
        edges.push((d1(j), center));
    }

    let mut prefs: Vec<Vec<Object>> = vec![Vec::new(); n];
    // Clause agents hop onto the staircase and descend to step i-1.
    for i in 1..=m {
        let stair: Vec<Object> = (i - 1..=m).map(c2).collect();
        prefs[c1(i)] = ladder(&stair, c1(i), n);
    }
    // Staircase agents climb toward the hub and may exit into a variable
    // branch, clearing the way for the next clause agent.
    for t in 0..=m {
        let mut pre: Vec<Object> = Vec::with_capacity(2 * nv + m - t);
        for j in 1..=nv {
            pre.push(p1(j));
            pre.push(pp(j));
        }
        for s in ((t + 1)..=m).rev() {
            pre.push(c2(s));
        }
        prefs[c2(t)] = ladder(&pre, c2(t), n);
    }
    for j in 1..=nv {
        let occ = cnf.occurrences(j);
        let (cp1, cp2, cng) =
            (occ.positive[0] + 1, occ.positive[1] + 1, occ.negative + 1);
        prefs[nn(j)] = ladder(&[c1(cng), center, pp(j), p1(j), dd(j)], nn(j), n);
        prefs[dd(j)] = ladder(&[d1(j), center, pp(j), p1(j)], dd(j), n);
        prefs[p1(j)] = ladder(&[c1(cp2), center, pp(j), nn(j), dd(j)], p1(j), n);
        prefs[pp(j)] = ladder(&[c1(cp1), center, dd(j), p1(j)], pp(j), n);
        prefs[d1(j)] = ladder(&[pp(j), p1(j), center], d1(j), n);
    }

    let instance =
        Instance::new(n, prefs, edges, None).expect("the encoding is a valid instance");
    RoInstance { instance, agent: c2(0), object: center }
}

/// Folds a reachable-object question into a reachable-matching question by
/// doubling the instance. The original objects keep the input graph; a
/// mirror block gets a clique plus one rung per object (with `clique` set,
/// the output is instead complete and the input graph must be too). Mirror
/// agents each swap exactly once, and the preferences only let the whole
/// mirror cascade finish when the query agent has carried the target's
/// mirror partner, which it can pick up only while holding the target.
/// The produced target matching is reachable exactly when the query is a
/// yes-instance.
pub fn ro_to_rm(
    inst: &Instance,
    agent: Agent,
    object: Object,
    clique: bool,
) -> Result<RmInstance, ReductionError> {
    let n = inst.n();
    if agent >= n || object >= n {
        return Err(ReductionError::QueryOutOfRange);
    }
    if inst.endowment(agent) == object {
        return Err(ReductionError::TrivialQuery);
    }
    if clique && inst.edges().len() != n * (n - 1) / 2 {
        return Err(ReductionError::NotAClique);
    }

    // Relabel so the endowment is the identity, the query agent is 0, and
    // the target object is n-1. Everyone else keeps their relative order.
    let init = inst.initial_matching();
    let owner = init.agent_at(object).expect("the initial matching is perfect");
    let mut sigma = vec![usize::MAX; n];
    sigma[agent] = 0;
    sigma[owner] = n - 1;
    let mut next = 1;
    for slot in &mut sigma {
        if *slot == usize::MAX {
            *slot = next;
            next += 1;
        }
    }
    let mut rho = vec![usize::MAX; n];
    for a in 0..n {
        rho[inst.endowment(a)] = sigma[a];
    }
    let mut b_order: Vec<Vec<Object>> = vec![Vec::new(); n];
    for a in 0..n {
        b_order[sigma[a]] = inst.pref_list(a).iter().map(|&b| rho[b]).collect();
    }

    // Originals are 0..n, mirrors n..2n; the mirror of object i is n+i.
    let n2 = 2 * n;
    let mut prefs: Vec<Vec<Object>> = Vec::with_capacity(n2);
    for i in 0..n {
        let mut list: Vec<Object> = Vec::with_capacity(n2);
        if i == 0 {
            // The query agent wants the target's mirror above all.
            list.push(n2 - 1);
            list.extend(&b_order[0]);
            list.extend(n..n2 - 1);
        } else if i == n - 1 {
            list.extend(n..n2 - 1);
            list.extend(&b_order[i]);
            list.push(n2 - 1);
        } else {
            // Mirrors from the agent's own slot outward, then backward down
            // to the first; the target's mirror is last for everyone else.
            list.extend(n + i..n2 - 1);
            list.extend((n..n + i).rev());
            list.extend(&b_order[i]);
            list.push(n2 - 1);
        }
        prefs.push(list);
    }
    for i in 0..n {
        prefs.push(ladder(&[i], n + i, n2));
    }

    let edges = if clique {
        clique_edges(n2)
    } else {
        let mut edges: Vec<Edge> = inst.edges().iter().map(|&(x, y)| (rho[x], rho[y])).collect();
        for i in 0..n {
            edges.push((i, n + i));
        }
        for i in 0..n {
            for j in i + 1..n {
                edges.push((n + i, n + j));
            }
        }
        edges
    };

    // Every agent ends on its top choice: originals on their own mirrors,
    // mirrors on the originals, except the query agent takes the target's
    // mirror and the target's owner the first one.
    let mut target: Vec<usize> = (n..n2).chain(0..n).collect();
    target[0] = n2 - 1;
    target[n - 1] = n;

    let instance =
        Instance::new(n2, prefs, edges, None).expect("the doubled instance is valid");
    Ok(RmInstance { instance, target: Matching::perfect(target) })
}
