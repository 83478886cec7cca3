//! Network shape detection. Solver dispatch keys on the most specific class:
//! a 3-vertex star is a path, a star is a generalized star, and every
//! generalized star is a tree, so the tests go path, star, generalized star,
//! tree, clique, general.

use crate::instance::{Edge, Instance, Object};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphClass {
    /// Connected, all degrees at most 2. `order` lists the vertices from the
    /// endpoint with the smaller id to the other end.
    Path { order: Vec<Object> },
    /// Every edge touches `center`; at least 3 leaves (smaller stars are
    /// paths).
    Star { center: Object },
    /// A tree with exactly one vertex of degree 3 or more. `branches` are the
    /// dangling paths, listed nearest-to-center first, ordered ascending by
    /// their smallest object id.
    GeneralizedStar { center: Object, branches: Vec<Vec<Object>> },
    /// Any other tree (at least two vertices of degree 3 or more).
    Tree,
    /// Complete graph on at least 3 vertices.
    Clique,
    /// Everything else, including disconnected networks.
    General,
}

impl GraphClass {
    pub fn name(&self) -> &'static str {
        match self {
            GraphClass::Path { .. } => "path",
            GraphClass::Star { .. } => "star",
            GraphClass::GeneralizedStar { .. } => "genstar",
            GraphClass::Tree => "tree",
            GraphClass::Clique => "clique",
            GraphClass::General => "general",
        }
    }
}

pub fn classify_graph(inst: &Instance) -> GraphClass {
    let n = inst.n();
    let m = inst.edges().len();
    if !connected(inst) {
        return GraphClass::General;
    }
    if m + 1 == n {
        return classify_tree(inst);
    }
    if n >= 3 && m == n * (n - 1) / 2 {
        return GraphClass::Clique;
    }
    GraphClass::General
}

fn classify_tree(inst: &Instance) -> GraphClass {
    let n = inst.n();
    let hubs: Vec<Object> = (0..n).filter(|&v| inst.degree(v) >= 3).collect();
    match hubs.len() {
        0 => GraphClass::Path { order: path_order(inst) },
        1 => {
            let center = hubs[0];
            if inst.degree(center) == n - 1 {
                GraphClass::Star { center }
            } else {
                GraphClass::GeneralizedStar { center, branches: branches_of(inst, center) }
            }
        }
        _ => GraphClass::Tree,
    }
}

fn connected(inst: &Instance) -> bool {
    let n = inst.n();
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    let mut count = 1;
    while let Some(v) = stack.pop() {
        for &w in inst.neighbors(v) {
            if !seen[w] {
                seen[w] = true;
                count += 1;
                stack.push(w);
            }
        }
    }
    count == n
}

/// Vertex order along a degree-<=2 tree, starting from the smaller endpoint.
fn path_order(inst: &Instance) -> Vec<Object> {
    let n = inst.n();
    if n == 1 {
        return vec![0];
    }
    let start = (0..n).find(|&v| inst.degree(v) == 1).expect("path has an endpoint");
    let mut order = Vec::with_capacity(n);
    let mut prev = usize::MAX;
    let mut cur = start;
    loop {
        order.push(cur);
        match inst.neighbors(cur).iter().find(|&&w| w != prev) {
            Some(&next) => {
                prev = cur;
                cur = next;
            }
            None => break,
        }
    }
    debug_assert_eq!(order.len(), n);
    order
}

/// The dangling paths hanging off `center`, each listed from the neighbour of
/// `center` outward, sorted ascending by smallest member id.
pub(crate) fn branches_of(inst: &Instance, center: Object) -> Vec<Vec<Object>> {
    let mut branches: Vec<Vec<Object>> = inst
        .neighbors(center)
        .iter()
        .map(|&first| {
            let mut branch = vec![first];
            let mut prev = center;
            let mut cur = first;
            while let Some(&next) = inst.neighbors(cur).iter().find(|&&w| w != prev) {
                branch.push(next);
                prev = cur;
                cur = next;
            }
            branch
        })
        .collect();
    branches.sort_by_key(|b| *b.iter().min().unwrap());
    branches
}

/// Expands a layout back into the edge set it describes. `Tree` and `General`
/// carry no layout, so those return `None`.
pub fn reconstruct_edges(class: &GraphClass, n: usize) -> Option<Vec<Edge>> {
    let mut edges: Vec<Edge> = match class {
        GraphClass::Path { order } => order.windows(2).map(|w| norm(w[0], w[1])).collect(),
        GraphClass::Star { center } => {
            (0..n).filter(|&v| v != *center).map(|v| norm(*center, v)).collect()
        }
        GraphClass::GeneralizedStar { center, branches } => {
            let mut e = Vec::with_capacity(n - 1);
            for branch in branches {
                e.push(norm(*center, branch[0]));
                e.extend(branch.windows(2).map(|w| norm(w[0], w[1])));
            }
            e
        }
        GraphClass::Clique => (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect(),
        GraphClass::Tree | GraphClass::General => return None,
    };
    edges.sort_unstable();
    Some(edges)
}

fn norm(a: Object, b: Object) -> Edge {
    (a.min(b), a.max(b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::instance::Instance;

    fn inst_with_edges(n: usize, edges: Vec<Edge>) -> Instance {
        let prefs = (0..n).map(|_| (0..n).collect()).collect();
        Instance::new(n, prefs, edges, None).unwrap()
    }

    #[test]
    fn named_shapes() {
        assert!(matches!(classify_graph(&fixtures::i1()), GraphClass::Path { .. }));
        // 0-based edges {(0,1),(1,2),(1,3),(3,4)}: center 1, branches [0], [2], [3,4].
        let g = inst_with_edges(5, vec![(0, 1), (1, 2), (1, 3), (3, 4)]);
        match classify_graph(&g) {
            GraphClass::GeneralizedStar { center, branches } => {
                assert_eq!(center, 1);
                assert_eq!(branches, vec![vec![0], vec![2], vec![3, 4]]);
            }
            other => panic!("expected generalized star, got {other:?}"),
        }
        let star = inst_with_edges(4, vec![(0, 1), (0, 2), (0, 3)]);
        assert_eq!(classify_graph(&star), GraphClass::Star { center: 0 });
    }

    #[test]
    fn three_vertex_star_is_a_path() {
        let g = inst_with_edges(3, vec![(0, 1), (0, 2)]);
        assert_eq!(classify_graph(&g), GraphClass::Path { order: vec![1, 0, 2] });
    }

    #[test]
    fn two_branch_vertices_make_a_plain_tree() {
        let g = inst_with_edges(6, vec![(0, 1), (0, 2), (0, 3), (3, 4), (3, 5)]);
        assert_eq!(classify_graph(&g), GraphClass::Tree);
    }

    #[test]
    fn triangle_is_a_clique_and_disconnected_is_general() {
        assert_eq!(classify_graph(&inst_with_edges(3, vec![(0, 1), (1, 2), (0, 2)])), GraphClass::Clique);
        assert_eq!(classify_graph(&inst_with_edges(4, vec![(0, 1), (2, 3)])), GraphClass::General);
        assert_eq!(classify_graph(&inst_with_edges(4, vec![(0, 1), (1, 2), (2, 3), (0, 2)])), GraphClass::General);
    }

    #[test]
    fn single_vertex_is_a_path() {
        assert_eq!(classify_graph(&inst_with_edges(1, vec![])), GraphClass::Path { order: vec![0] });
    }

    #[test]
    fn layouts_reconstruct_their_edge_sets() {
        for inst in [
            fixtures::i1(),
            inst_with_edges(5, vec![(0, 1), (1, 2), (1, 3), (3, 4)]),
            inst_with_edges(4, vec![(0, 1), (0, 2), (0, 3)]),
            inst_with_edges(4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]),
        ] {
            let class = classify_graph(&inst);
            assert_eq!(reconstruct_edges(&class, inst.n()).unwrap(), inst.edges());
        }
    }
}
