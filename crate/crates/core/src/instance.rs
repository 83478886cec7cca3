//! Core model: agents, objects, preference profiles, object networks, and
//! the rational-swap step relation.
//!
//! An instance has `n` agents and `n` objects. Objects are the vertices of an
//! undirected simple graph (the network). Every agent holds exactly one object
//! (a perfect matching), and two agents may trade iff their objects are
//! adjacent and both agents strictly prefer what they receive. All solver
//! modules build on the two primitives here: [`swap_applicable`] and
//! [`apply_swap`].
//!
//! Identifiers are 0-based everywhere in this crate. The JSON documents read
//! and written by [`Instance::from_json`] / [`Instance::to_json`] use 1-based
//! identifiers, matching the file formats accepted by the CLI.

use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

/// Index of an agent, `0..n`.
pub type Agent = usize;
/// Index of an object (network vertex), `0..n`.
pub type Object = usize;
/// An undirected network edge, stored with the smaller endpoint first.
pub type Edge = (Object, Object);
/// A sequence of swaps, each identified by the edge it happens across.
pub type SwapSequence = Vec<Edge>;

#[derive(Debug, Error)]
pub enum InstanceError {
    #[error("instance must have at least one agent")]
    Empty,
    #[error("expected {n} preference lists, got {got}")]
    PreferenceCount { n: usize, got: usize },
    #[error("agent {agent}: preference list is not a permutation of 1..={n}")]
    NotAPermutation { agent: usize, n: usize },
    #[error("edge ({a}, {b}): endpoint out of range 1..={n}")]
    EdgeOutOfRange { a: usize, b: usize, n: usize },
    #[error("edge ({a}, {a}) is a self-loop")]
    SelfLoop { a: usize },
    #[error("edge ({a}, {b}) listed twice")]
    DuplicateEdge { a: usize, b: usize },
    #[error("initial matching is not a bijection onto 1..={n}")]
    BadInitialMatching { n: usize },
    #[error("unknown graph class `{0}` (expected path, star, or clique)")]
    UnknownGraphClass(String),
    #[error("invalid instance document: {0}")]
    Json(#[from] serde_json::Error),
}

#[derive(Debug, Error)]
pub enum SwapError {
    #[error("edge ({a}, {b}) is not in the network")]
    NotAnEdge { a: usize, b: usize },
    #[error("matching leaves object {object} unowned; swaps need both endpoints owned")]
    UnownedEndpoint { object: usize },
    #[error("swap across ({a}, {b}) is not applicable (some participant does not improve)")]
    NotApplicable { a: usize, b: usize },
}

#[derive(Debug, Error)]
pub enum ReplayError {
    #[error("swap {index}: {source}")]
    Swap {
        index: usize,
        #[source]
        source: SwapError,
    },
    #[error("swap {index} across ({a}, {b}) is not applicable (some participant does not improve)")]
    NotApplicable { index: usize, a: usize, b: usize },
}

/// A problem instance: preference profile plus object network plus the
/// initial endowment.
#[derive(Clone)]
pub struct Instance {
    n: usize,
    /// `prefs[a][r]` is the object agent `a` ranks at position `r` (0 = best).
    prefs: Vec<Vec<Object>>,
    /// `rank[a][b]` is the rank agent `a` gives object `b`; lower is better.
    rank: Vec<Vec<usize>>,
    /// Sorted neighbour lists.
    adj: Vec<Vec<Object>>,
    /// Normalized `(lo, hi)` edges, sorted.
    edges: Vec<Edge>,
    /// `initial[a]` is the object agent `a` is endowed with.
    initial: Vec<Object>,
}

impl fmt::Debug for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Instance")
            .field("n", &self.n)
            .field("edges", &self.edges)
            .finish_non_exhaustive()
    }
}

impl Instance {
    /// Builds and validates an instance. `prefs` must hold one full
    /// permutation of `0..n` per agent (truncated lists are rejected),
    /// `edges` must be simple, and `initial`, if given, must be a bijection;
    /// it defaults to the identity endowment (agent `i` holds object `i`).
    pub fn new(
        n: usize,
        prefs: Vec<Vec<Object>>,
        edges: Vec<Edge>,
        initial: Option<Vec<Object>>,
    ) -> Result<Self, InstanceError> {
        if n == 0 {
            return Err(InstanceError::Empty);
        }
        if prefs.len() != n {
            return Err(InstanceError::PreferenceCount { n, got: prefs.len() });
        }
        let mut rank = vec![vec![usize::MAX; n]; n];
        for (a, list) in prefs.iter().enumerate() {
            if list.len() != n {
                return Err(InstanceError::NotAPermutation { agent: a + 1, n });
            }
            for (r, &b) in list.iter().enumerate() {
                if b >= n || rank[a][b] != usize::MAX {
                    return Err(InstanceError::NotAPermutation { agent: a + 1, n });
                }
                rank[a][b] = r;
            }
        }
        let mut norm: Vec<Edge> = Vec::with_capacity(edges.len());
        for &(a, b) in &edges {
            if a >= n || b >= n {
                return Err(InstanceError::EdgeOutOfRange { a: a + 1, b: b + 1, n });
            }
            if a == b {
                return Err(InstanceError::SelfLoop { a: a + 1 });
            }
            norm.push((a.min(b), a.max(b)));
        }
        norm.sort_unstable();
        if let Some(w) = norm.windows(2).find(|w| w[0] == w[1]) {
            return Err(InstanceError::DuplicateEdge { a: w[0].0 + 1, b: w[0].1 + 1 });
        }
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in &norm {
            adj[a].push(b);
            adj[b].push(a);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        let initial = match initial {
            Some(m) => {
                let mut seen = vec![false; n];
                if m.len() != n || m.iter().any(|&b| b >= n || std::mem::replace(&mut seen[b], true)) {
                    return Err(InstanceError::BadInitialMatching { n });
                }
                m
            }
            None => (0..n).collect(),
        };
        Ok(Instance { n, prefs, rank, adj, edges: norm, initial })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn neighbors(&self, b: Object) -> &[Object] {
        &self.adj[b]
    }

    pub fn has_edge(&self, a: Object, b: Object) -> bool {
        self.edges.binary_search(&(a.min(b), a.max(b))).is_ok()
    }

    pub fn degree(&self, b: Object) -> usize {
        self.adj[b].len()
    }

    /// Rank agent `a` gives object `b` (0 is most preferred).
    pub fn rank(&self, a: Agent, b: Object) -> usize {
        self.rank[a][b]
    }

    /// True iff agent `a` strictly prefers object `x` to object `y`.
    pub fn prefers(&self, a: Agent, x: Object, y: Object) -> bool {
        self.rank[a][x] < self.rank[a][y]
    }

    /// Agent `a`'s preference list, most preferred first.
    pub fn pref_list(&self, a: Agent) -> &[Object] {
        &self.prefs[a]
    }

    /// The initial endowment as a perfect matching.
    pub fn initial_matching(&self) -> Matching {
        Matching::perfect(self.initial.clone())
    }

    /// Object agent `a` is endowed with.
    pub fn endowment(&self, a: Agent) -> Object {
        self.initial[a]
    }

    pub fn from_json(text: &str) -> Result<Self, InstanceError> {
        let doc: InstanceDoc = serde_json::from_str(text)?;
        doc.try_into()
    }

    pub fn to_json(&self) -> String {
        let doc = InstanceDoc {
            n: self.n,
            graph: GraphDoc::Edges {
                edges: self.edges.iter().map(|&(a, b)| (a + 1, b + 1)).collect(),
            },
            preferences: self
                .prefs
                .iter()
                .map(|list| list.iter().map(|&b| b + 1).collect())
                .collect(),
            initial: Some(self.initial.iter().map(|&b| b + 1).collect()),
        };
        serde_json::to_string_pretty(&doc).expect("instance serialization cannot fail")
    }
}

/// Agent-object assignment; possibly partial. Solvers that only ever deal in
/// perfect matchings keep their own flat representations and convert at the
/// boundary.
#[derive(Clone, PartialEq, Eq)]
pub struct Matching {
    object_of: Vec<Option<Object>>,
    agent_of: Vec<Option<Agent>>,
}

impl fmt::Debug for Matching {
    /// Compact 1-based pair list: `{1->3, 2->1}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        let mut first = true;
        for (a, slot) in self.object_of.iter().enumerate() {
            if let Some(b) = slot {
                if !first {
                    write!(f, ", ")?;
                }
                first = false;
                write!(f, "{}->{}", a + 1, b + 1)?;
            }
        }
        write!(f, "}}")
    }
}

impl Matching {
    pub fn empty(n: usize) -> Self {
        Matching { object_of: vec![None; n], agent_of: vec![None; n] }
    }

    /// Wraps a full assignment `object_of[a] = b`. Panics if not a bijection.
    pub fn perfect(object_of: Vec<Object>) -> Self {
        let n = object_of.len();
        let mut agent_of = vec![None; n];
        for (a, &b) in object_of.iter().enumerate() {
            assert!(agent_of[b].is_none(), "object {b} assigned twice");
            agent_of[b] = Some(a);
        }
        Matching { object_of: object_of.into_iter().map(Some).collect(), agent_of }
    }

    pub fn len(&self) -> usize {
        self.object_of.iter().filter(|s| s.is_some()).count()
    }

    pub fn is_empty(&self) -> bool {
        self.object_of.iter().all(|s| s.is_none())
    }

    pub fn n(&self) -> usize {
        self.object_of.len()
    }

    pub fn is_perfect(&self) -> bool {
        self.object_of.iter().all(|s| s.is_some())
    }

    pub fn object_of(&self, a: Agent) -> Option<Object> {
        self.object_of[a]
    }

    pub fn agent_at(&self, b: Object) -> Option<Agent> {
        self.agent_of[b]
    }

    /// Adds the pair `(a, b)`. Panics if either side is already matched.
    pub fn assign(&mut self, a: Agent, b: Object) {
        assert!(self.object_of[a].is_none(), "agent {a} matched twice");
        assert!(self.agent_of[b].is_none(), "object {b} matched twice");
        self.object_of[a] = Some(b);
        self.agent_of[b] = Some(a);
    }

    /// True iff every pair of `self` also appears in `other`.
    pub fn contained_in(&self, other: &Matching) -> bool {
        self.object_of
            .iter()
            .enumerate()
            .all(|(a, slot)| slot.is_none() || other.object_of[a] == *slot)
    }

    /// Flat `object_of` view of a perfect matching. Panics when partial.
    pub fn to_vec(&self) -> Vec<Object> {
        self.object_of.iter().map(|s| s.expect("matching is partial")).collect()
    }

    pub fn pairs(&self) -> impl Iterator<Item = (Agent, Object)> + '_ {
        self.object_of
            .iter()
            .enumerate()
            .filter_map(|(a, slot)| slot.map(|b| (a, b)))
    }
}

/// Whether trading across `edge` improves both owners, i.e. whether the swap
/// may happen. Exactly the owners of the two endpoint objects participate.
pub fn swap_applicable(inst: &Instance, m: &Matching, edge: Edge) -> Result<bool, SwapError> {
    let (x, y) = edge;
    if !inst.has_edge(x, y) {
        return Err(SwapError::NotAnEdge { a: x + 1, b: y + 1 });
    }
    let ax = m.agent_at(x).ok_or(SwapError::UnownedEndpoint { object: x + 1 })?;
    let ay = m.agent_at(y).ok_or(SwapError::UnownedEndpoint { object: y + 1 })?;
    Ok(inst.prefers(ax, y, x) && inst.prefers(ay, x, y))
}

/// Performs the swap across `edge`, returning the successor matching.
pub fn apply_swap(inst: &Instance, m: &Matching, edge: Edge) -> Result<Matching, SwapError> {
    let (x, y) = edge;
    if !swap_applicable(inst, m, edge)? {
        return Err(SwapError::NotApplicable { a: x + 1, b: y + 1 });
    }
    Ok(apply_swap_unchecked(m, x, y))
}

fn apply_swap_unchecked(m: &Matching, x: Object, y: Object) -> Matching {
    let ax = m.agent_at(x).unwrap();
    let ay = m.agent_at(y).unwrap();
    let mut next = m.clone();
    next.object_of[ax] = Some(y);
    next.object_of[ay] = Some(x);
    next.agent_of[x] = Some(ay);
    next.agent_of[y] = Some(ax);
    next
}

/// Replays `swaps` from `start`, failing fast on the first non-applicable
/// step, and returns the final matching.
pub fn validate_sequence(
    inst: &Instance,
    start: &Matching,
    swaps: &[Edge],
) -> Result<Matching, ReplayError> {
    let mut m = start.clone();
    for (index, &(x, y)) in swaps.iter().enumerate() {
        match swap_applicable(inst, &m, (x, y)) {
            Ok(true) => m = apply_swap_unchecked(&m, x, y),
            Ok(false) => {
                return Err(ReplayError::NotApplicable { index, a: x + 1, b: y + 1 });
            }
            Err(source) => return Err(ReplayError::Swap { index, source }),
        }
    }
    Ok(m)
}

/// True iff `m1` Pareto-dominates `m2`: no agent worse off, someone better.
/// Both matchings must be perfect.
pub fn pareto_dominates(inst: &Instance, m1: &Matching, m2: &Matching) -> bool {
    let mut strict = false;
    for a in 0..inst.n() {
        let r1 = inst.rank(a, m1.object_of(a).expect("m1 must be perfect"));
        let r2 = inst.rank(a, m2.object_of(a).expect("m2 must be perfect"));
        if r1 > r2 {
            return false;
        }
        strict |= r1 < r2;
    }
    strict
}

/// Sum of ranks of everyone's current object. Every swap strictly improves
/// two agents, so this drops by at least 2 per step; it is the termination
/// potential for all swap processes.
pub fn potential(inst: &Instance, m: &Matching) -> u64 {
    (0..inst.n())
        .map(|a| inst.rank(a, m.object_of(a).expect("matching must be perfect")) as u64)
        .sum()
}

#[derive(Serialize, Deserialize)]
struct InstanceDoc {
    n: usize,
    graph: GraphDoc,
    preferences: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    initial: Option<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum GraphDoc {
    Class { class: String },
    Edges { edges: Vec<(usize, usize)> },
}

impl TryFrom<InstanceDoc> for Instance {
    type Error = InstanceError;

    fn try_from(doc: InstanceDoc) -> Result<Self, InstanceError> {
        let n = doc.n;
        let edges1: Vec<(usize, usize)> = match doc.graph {
            GraphDoc::Edges { edges } => edges,
            GraphDoc::Class { class } => canonical_edges(&class, n)?,
        };
        let shift = |v: Vec<usize>| -> Vec<usize> { v.into_iter().map(|x| x.wrapping_sub(1)).collect() };
        let prefs = doc.preferences.into_iter().map(shift).collect();
        let edges = edges1
            .into_iter()
            .map(|(a, b)| (a.wrapping_sub(1), b.wrapping_sub(1)))
            .collect();
        Instance::new(n, prefs, edges, doc.initial.map(shift))
    }
}

/// 1-based edge lists for the named canonical layouts: `path` is
/// 1-2-...-n, `star` has center 1, `clique` is complete.
fn canonical_edges(class: &str, n: usize) -> Result<Vec<(usize, usize)>, InstanceError> {
    match class {
        "path" => Ok((1..n).map(|i| (i, i + 1)).collect()),
        "star" => Ok((2..=n).map(|j| (1, j)).collect()),
        "clique" => Ok((1..n).flat_map(|i| ((i + 1)..=n).map(move |j| (i, j))).collect()),
        other => Err(InstanceError::UnknownGraphClass(other.to_string())),
    }
}

/// Parses the witness document `{"swaps": [[1,2],[2,3]]}` (1-based).
pub fn swaps_from_json(text: &str) -> Result<SwapSequence, serde_json::Error> {
    #[derive(Deserialize)]
    struct Doc {
        swaps: Vec<(usize, usize)>,
    }
    let doc: Doc = serde_json::from_str(text)?;
    Ok(doc
        .swaps
        .into_iter()
        .map(|(a, b)| (a.wrapping_sub(1), b.wrapping_sub(1)))
        .collect())
}

pub fn swaps_to_json(swaps: &[Edge]) -> String {
    let doc = serde_json::json!({
        "swaps": swaps.iter().map(|&(a, b)| vec![a + 1, b + 1]).collect::<Vec<_>>(),
    });
    serde_json::to_string_pretty(&doc).unwrap()
}

/// Parses the matching document `{"matching": [3,1,2]}` (1-based, entry `i`
/// is agent `i`'s object).
pub fn matching_from_json(text: &str, n: usize) -> Result<Matching, InstanceError> {
    #[derive(Deserialize)]
    struct Doc {
        matching: Vec<usize>,
    }
    let doc: Doc = serde_json::from_str(text)?;
    let v: Vec<usize> = doc.matching.into_iter().map(|x| x.wrapping_sub(1)).collect();
    let mut seen = vec![false; n];
    if v.len() != n || v.iter().any(|&b| b >= n || std::mem::replace(&mut seen[b], true)) {
        return Err(InstanceError::BadInitialMatching { n });
    }
    Ok(Matching::perfect(v))
}

pub fn matching_to_json(m: &Matching) -> String {
    let doc = serde_json::json!({
        "matching": m.to_vec().iter().map(|&b| b + 1).collect::<Vec<_>>(),
    });
    serde_json::to_string_pretty(&doc).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn rejects_truncated_preferences() {
        let err = Instance::new(3, vec![vec![0, 1], vec![0, 1, 2], vec![2, 1, 0]], vec![(0, 1)], None);
        assert!(matches!(err, Err(InstanceError::NotAPermutation { agent: 1, .. })));
    }

    #[test]
    fn rejects_repeated_preference_entry() {
        let doc = r#"{"n":3,"graph":{"class":"path"},"preferences":[[1,1,3],[1,2,3],[2,3,1]]}"#;
        assert!(matches!(
            Instance::from_json(doc),
            Err(InstanceError::NotAPermutation { agent: 1, .. })
        ));
    }

    #[test]
    fn missing_initial_defaults_to_identity() {
        let doc = r#"{"n":2,"graph":{"class":"path"},"preferences":[[2,1],[1,2]]}"#;
        let inst = Instance::from_json(doc).unwrap();
        assert_eq!(inst.initial_matching().to_vec(), vec![0, 1]);
    }

    #[test]
    fn opposed_owners_swap_once() {
        // Both prefer the other's object, so the lone swap fires and can
        // never fire again (preferences are strict).
        let inst = fixtures::i3();
        let m0 = inst.initial_matching();
        assert!(swap_applicable(&inst, &m0, (0, 1)).unwrap());
        let m1 = apply_swap(&inst, &m0, (0, 1)).unwrap();
        assert_eq!(m1.to_vec(), vec![1, 0]);
        assert!(!swap_applicable(&inst, &m1, (0, 1)).unwrap());
        assert!(potential(&inst, &m1) + 2 <= potential(&inst, &m0));
    }

    #[test]
    fn aligned_owners_never_swap() {
        let inst = fixtures::i2();
        assert!(!swap_applicable(&inst, &inst.initial_matching(), (0, 1)).unwrap());
    }

    #[test]
    fn swap_needs_a_network_edge() {
        let inst = fixtures::i1();
        let m = inst.initial_matching();
        assert!(matches!(
            swap_applicable(&inst, &m, (0, 2)),
            Err(SwapError::NotAnEdge { a: 1, b: 3 })
        ));
    }

    #[test]
    fn replay_reports_first_bad_step() {
        let inst = fixtures::i1();
        let start = inst.initial_matching();
        let good = validate_sequence(&inst, &start, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(good.to_vec(), vec![2, 0, 1]);
        let err = validate_sequence(&inst, &start, &[(1, 2)]).unwrap_err();
        assert!(matches!(err, ReplayError::NotApplicable { index: 0, a: 2, b: 3 }));
    }

    #[test]
    fn dominance_is_strict_somewhere() {
        let inst = fixtures::i1();
        let top = Matching::perfect(vec![2, 0, 1]);
        let id = inst.initial_matching();
        assert!(pareto_dominates(&inst, &top, &id));
        assert!(!pareto_dominates(&inst, &id, &top));
        assert!(!pareto_dominates(&inst, &id, &id));
    }

    #[test]
    fn json_round_trip() {
        let inst = fixtures::i1();
        let again = Instance::from_json(&inst.to_json()).unwrap();
        assert_eq!(again.edges(), inst.edges());
        assert_eq!(again.pref_list(2), inst.pref_list(2));
        assert_eq!(again.initial_matching().to_vec(), inst.initial_matching().to_vec());
    }
}
