//! Seeded instance generators. Every function is deterministic in the seed
//! (or the caller's RNG state), so failing cases reproduce from the command
//! line.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::instance::{Edge, Instance, Matching, Object};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GenError {
    #[error("{class} instances need at least {min} objects, got {n}")]
    TooSmall { class: &'static str, min: usize, n: usize },
}

/// Shapes the generator can produce. The minimums keep each shape honest
/// under the most-specific classification: a 3-object star is a path, a
/// generalized star needs a degree-3 center plus one branch of length two,
/// and a tree with two junctions needs six vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenClass {
    Path,
    Star,
    GeneralizedStar,
    Tree,
    Clique,
}

impl GenClass {
    pub fn min_n(self) -> usize {
        match self {
            GenClass::Path => 2,
            GenClass::Star => 4,
            GenClass::GeneralizedStar => 5,
            GenClass::Tree => 6,
            GenClass::Clique => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GenClass::Path => "path",
            GenClass::Star => "star",
            GenClass::GeneralizedStar => "genstar",
            GenClass::Tree => "tree",
            GenClass::Clique => "clique",
        }
    }
}

/// The path 0-1-...-(n-1).
pub fn path_edges(n: usize) -> Vec<Edge> {
    (1..n).map(|i| (i - 1, i)).collect()
}

/// The star with center 0.
pub fn star_edges(n: usize) -> Vec<Edge> {
    (1..n).map(|i| (0, i)).collect()
}

pub fn clique_edges(n: usize) -> Vec<Edge> {
    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect()
}

/// A random generalized star with center 0: at least three branches, at
/// least one of length two or more. Branch vertices are numbered outward.
pub fn genstar_edges(n: usize, rng: &mut impl Rng) -> Vec<Edge> {
    assert!(n >= 5, "a generalized star needs 5 vertices");
    let k = rng.random_range(3..=n - 2);
    let mut lens = vec![1usize; k];
    // k <= n-2 leaves at least one spare vertex, so some branch grows past
    // length one and the shape stays a proper generalized star.
    for _ in 0..n - 1 - k {
        let i = rng.random_range(0..k);
        lens[i] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    let mut next = 1;
    for &len in &lens {
        edges.push((0, next));
        for v in next + 1..next + len {
            edges.push((v - 1, v));
        }
        next += len;
    }
    edges
}

/// A uniformly random labeled tree of any shape, decoded from a random
/// Prufer sequence.
pub fn prufer_tree_edges(n: usize, rng: &mut impl Rng) -> Vec<Edge> {
    assert!(n >= 2, "a tree needs 2 vertices");
    if n == 2 {
        return vec![(0, 1)];
    }
    let seq: Vec<usize> = (0..n - 2).map(|_| rng.random_range(0..n)).collect();
    let mut degree = vec![1usize; n];
    for &s in &seq {
        degree[s] += 1;
    }
    let mut leaves: BinaryHeap<Reverse<usize>> =
        (0..n).filter(|&v| degree[v] == 1).map(Reverse).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &s in &seq {
        let Reverse(leaf) = leaves.pop().expect("a tree always has a leaf");
        edges.push((leaf.min(s), leaf.max(s)));
        degree[leaf] -= 1;
        degree[s] -= 1;
        if degree[s] == 1 {
            leaves.push(Reverse(s));
        }
    }
    let Reverse(a) = leaves.pop().unwrap();
    let Reverse(b) = leaves.pop().unwrap();
    edges.push((a.min(b), a.max(b)));
    edges
}

/// A random tree with at least two junction vertices, so it classifies as a
/// plain tree rather than a path or (generalized) star. Rejection-samples
/// Prufer sequences; at n = 6 roughly 7% of labeled trees qualify, and the
/// fraction grows with n.
pub fn proper_tree_edges(n: usize, rng: &mut impl Rng) -> Vec<Edge> {
    assert!(n >= 6, "two junctions need 6 vertices");
    for _ in 0..10_000 {
        let edges = prufer_tree_edges(n, rng);
        let mut degree = vec![0usize; n];
        for &(a, b) in &edges {
            degree[a] += 1;
            degree[b] += 1;
        }
        if degree.iter().filter(|&&d| d >= 3).count() >= 2 {
            return edges;
        }
    }
    unreachable!("junction trees are a constant fraction of all trees")
}

/// One uniformly random full preference list per agent.
pub fn random_prefs(n: usize, rng: &mut impl Rng) -> Vec<Vec<Object>> {
    (0..n)
        .map(|_| {
            let mut list: Vec<Object> = (0..n).collect();
            list.shuffle(rng);
            list
        })
        .collect()
}

/// A uniformly random perfect matching.
pub fn random_matching(n: usize, rng: &mut impl Rng) -> Matching {
    let mut objects: Vec<Object> = (0..n).collect();
    objects.shuffle(rng);
    Matching::perfect(objects)
}

/// A random instance of the given shape with identity endowment, drawing
/// the graph first and the preferences second from the caller's RNG.
pub fn random_instance(
    class: GenClass,
    n: usize,
    rng: &mut impl Rng,
) -> Result<Instance, GenError> {
    if n < class.min_n() {
        return Err(GenError::TooSmall { class: class.name(), min: class.min_n(), n });
    }
    let edges = match class {
        GenClass::Path => path_edges(n),
        GenClass::Star => star_edges(n),
        GenClass::GeneralizedStar => genstar_edges(n, rng),
        GenClass::Tree => proper_tree_edges(n, rng),
        GenClass::Clique => clique_edges(n),
    };
    let prefs = random_prefs(n, rng);
    Ok(Instance::new(n, prefs, edges, None).expect("generated instances are valid"))
}

/// Seeded wrapper around [`random_instance`].
pub fn gen_instance(class: GenClass, n: usize, seed: u64) -> Result<Instance, GenError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_instance(class, n, &mut rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::{classify_graph, GraphClass};

    #[test]
    fn shapes_classify_as_requested() {
        for seed in 0..10 {
            let checks = [
                (GenClass::Path, 7),
                (GenClass::Star, 6),
                (GenClass::GeneralizedStar, 5 + seed as usize % 4),
                (GenClass::Tree, 6 + seed as usize % 3),
                (GenClass::Clique, 5),
            ];
            for (class, n) in checks {
                let inst = gen_instance(class, n, seed).unwrap();
                assert_eq!(classify_graph(&inst).name(), class.name(), "seed {seed}");
            }
        }
    }

    #[test]
    fn same_seed_same_instance() {
        for class in [GenClass::Path, GenClass::GeneralizedStar, GenClass::Tree] {
            let a = gen_instance(class, 8, 42).unwrap();
            let b = gen_instance(class, 8, 42).unwrap();
            assert_eq!(a.to_json(), b.to_json());
        }
    }

    #[test]
    fn undersized_requests_are_rejected() {
        assert_eq!(
            gen_instance(GenClass::Star, 3, 0).unwrap_err(),
            GenError::TooSmall { class: "star", min: 4, n: 3 }
        );
        assert_eq!(
            gen_instance(GenClass::GeneralizedStar, 4, 0).unwrap_err(),
            GenError::TooSmall { class: "genstar", min: 5, n: 4 }
        );
        assert_eq!(
            gen_instance(GenClass::Tree, 5, 0).unwrap_err(),
            GenError::TooSmall { class: "tree", min: 6, n: 5 }
        );
    }

    #[test]
    fn prufer_trees_are_trees() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 2..12 {
            for _ in 0..20 {
                let edges = prufer_tree_edges(n, &mut rng);
                assert_eq!(edges.len(), n - 1);
                let inst =
                    Instance::new(n, random_prefs(n, &mut rng), edges, None).unwrap();
                assert!(
                    !matches!(classify_graph(&inst), GraphClass::General | GraphClass::Clique),
                    "n={n}"
                );
            }
        }
    }

    #[test]
    fn random_matchings_are_perfect() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            assert!(random_matching(9, &mut rng).is_perfect());
        }
    }
}
