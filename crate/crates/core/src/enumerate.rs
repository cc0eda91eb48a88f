//! Exhaustive generation of the desk-scale search spaces: free trees by
//! canonical level sequences and labeled connected graphs by edge-subset
//! scan.
//!
//! Free trees use the constant-amortized-time successor on canonical
//! rooted level sequences, restricted to the sequences that are
//! centroid-canonical representations of free trees, so each isomorphism
//! class is produced exactly once. Graph enumeration stays labeled: the
//! searches that consume it maximize an isomorphism invariant, so
//! duplicate labelings never change an argmax.

use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnumerateError {
    #[error("{what} out of range: {got} not in {min}..={max}")]
    OutOfRange {
        what: &'static str,
        got: usize,
        min: usize,
        max: usize,
    },
}

/// Largest supported free-tree order.
pub const MAX_TREE_ORDER: usize = 20;
/// Default cap on labeled graph enumeration (2^21 edge subsets).
pub const DEFAULT_GRAPH_ORDER_CAP: usize = 7;
/// Absolute cap; raising to 8 means 2^28 subsets and is deliberate.
pub const HARD_GRAPH_ORDER_CAP: usize = 8;

/// Query over trees of a given order, optionally restricted to a pendant
/// count, with an optional safety cap on the yield.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct TreeClassQuery {
    pub n: usize,
    pub k: Option<usize>,
    pub cap: Option<usize>,
}

impl TreeClassQuery {
    pub fn new(n: usize, k: Option<usize>) -> Result<Self, EnumerateError> {
        if !(2..=MAX_TREE_ORDER).contains(&n) {
            return Err(EnumerateError::OutOfRange {
                what: "tree order",
                got: n,
                min: 2,
                max: MAX_TREE_ORDER,
            });
        }
        if let Some(k) = k {
            if !(2..=n - 1).contains(&k) {
                return Err(EnumerateError::OutOfRange {
                    what: "pendant count",
                    got: k,
                    min: 2,
                    max: n - 1,
                });
            }
        }
        Ok(TreeClassQuery { n, k, cap: None })
    }
}

/// Query over labeled connected graphs of order `n` with exactly `k`
/// pendant vertices. `max_order` defaults to 7 and may be raised to 8.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct GraphClassQuery {
    pub n: usize,
    pub k: usize,
    pub max_order: usize,
}

impl GraphClassQuery {
    pub fn new(n: usize, k: usize) -> Result<Self, EnumerateError> {
        Self::with_cap(n, k, DEFAULT_GRAPH_ORDER_CAP)
    }

    pub fn with_cap(n: usize, k: usize, max_order: usize) -> Result<Self, EnumerateError> {
        let cap = max_order.min(HARD_GRAPH_ORDER_CAP);
        if n < 1 || n > cap {
            return Err(EnumerateError::OutOfRange {
                what: "graph order",
                got: n,
                min: 1,
                max: cap,
            });
        }
        Ok(GraphClassQuery {
            n,
            k,
            max_order: cap,
        })
    }
}

/// One representative per isomorphism class of trees on `n` vertices,
/// `1 <= n <= 20`, in a deterministic order.
pub fn free_trees(n: usize) -> Result<FreeTrees, EnumerateError> {
    if !(1..=MAX_TREE_ORDER).contains(&n) {
        return Err(EnumerateError::OutOfRange {
            what: "tree order",
            got: n,
            min: 1,
            max: MAX_TREE_ORDER,
        });
    }
    Ok(FreeTrees {
        n,
        levels: Some((0..n).collect()),
    })
}

/// Iterator over free trees by canonical level sequences.
pub struct FreeTrees {
    n: usize,
    /// Depth of each vertex in preorder; root at depth 0. `None` once
    /// exhausted.
    levels: Option<Vec<usize>>,
}

impl FreeTrees {
    /// Successor in the decreasing-lexicographic order of canonical
    /// rooted level sequences: truncate at the last vertex deeper than 1
    /// and tile the tail with copies of the block starting at its parent.
    fn advance(levels: &mut Vec<usize>) -> bool {
        let n = levels.len();
        let Some(p) = (0..n).rev().find(|&i| levels[i] >= 2) else {
            return false;
        };
        let q = (0..p).rev().find(|&i| levels[i] == levels[p] - 1).unwrap();
        let period = p - q;
        for i in p..n {
            levels[i] = levels[i - period];
        }
        true
    }

    /// Keeps exactly the sequences whose root is the centroid; for
    /// bicentroidal trees (one root child subtree of size n/2), the
    /// rooting where the split-off half compares no greater than the
    /// remainder.
    fn centroid_canonical(levels: &[usize]) -> bool {
        let n = levels.len();
        if n <= 2 {
            return true;
        }
        let mut sizes = vec![1usize; n];
        let mut parent = vec![usize::MAX; n];
        let mut chain = vec![0usize; n]; // chain[d] = current vertex at depth d
        for i in 1..n {
            parent[i] = chain[levels[i] - 1];
            chain[levels[i]] = i;
        }
        for i in (1..n).rev() {
            sizes[parent[i]] += sizes[i];
        }
        let mut max_child = 0usize;
        let mut max_size = 0usize;
        for (i, &l) in levels.iter().enumerate().skip(1) {
            if l == 1 && sizes[i] > max_size {
                max_size = sizes[i];
                max_child = i;
            }
        }
        if 2 * max_size < n {
            return true;
        }
        if 2 * max_size > n {
            return false;
        }
        // Bicentroid: compare the half rooted at the other centroid with
        // the remainder rooted here, both as canonical sequences.
        let start = max_child;
        let end = start + max_size;
        let half: Vec<usize> = levels[start..end].iter().map(|&l| l - 1).collect();
        let rest: Vec<usize> = levels[..start]
            .iter()
            .chain(&levels[end..])
            .copied()
            .collect();
        half <= rest
    }

    fn graph_from_levels(levels: &[usize]) -> Graph {
        let n = levels.len();
        let mut chain = vec![0usize; n];
        let mut edges = Vec::with_capacity(n.saturating_sub(1));
        for i in 1..n {
            edges.push((chain[levels[i] - 1], i));
            chain[levels[i]] = i;
        }
        Graph::from_edge_list(n, &edges).expect("level sequence encodes a tree")
    }
}

impl Iterator for FreeTrees {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        loop {
            let levels = self.levels.as_mut()?;
            let keep = Self::centroid_canonical(levels);
            let graph = keep.then(|| Self::graph_from_levels(levels));
            if !Self::advance(levels) {
                self.levels = None;
            }
            if let Some(g) = graph {
                debug_assert_eq!(g.n(), self.n);
                return Some(g);
            }
        }
    }
}

/// Free trees filtered by pendant count, honoring the query's cap.
pub fn trees_with_k_leaves(
    q: &TreeClassQuery,
) -> Result<impl Iterator<Item = Graph>, EnumerateError> {
    let q = TreeClassQuery::new(q.n, q.k).map(|valid| TreeClassQuery { cap: q.cap, ..valid })?;
    let trees = free_trees(q.n)?;
    let filtered = trees.filter(move |g| match q.k {
        Some(k) => g.pendant_vertices().len() == k,
        None => true,
    });
    Ok(filtered.take(q.cap.unwrap_or(usize::MAX)))
}

/// All labeled connected graphs on `n` vertices, ascending by edge-subset
/// mask. `max_order` guards against runaway scans.
pub fn connected_graphs(n: usize, max_order: usize) -> Result<ConnectedGraphs, EnumerateError> {
    let cap = max_order.min(HARD_GRAPH_ORDER_CAP);
    if n < 1 || n > cap {
        return Err(EnumerateError::OutOfRange {
            what: "graph order",
            got: n,
            min: 1,
            max: cap,
        });
    }
    // Edge slots in graph6 column order: (0,1), (0,2), (1,2), (0,3), ...
    let mut slots = Vec::with_capacity(n * (n - 1) / 2);
    for j in 1..n {
        for i in 0..j {
            slots.push((i, j));
        }
    }
    Ok(ConnectedGraphs {
        n,
        slots,
        next_mask: 0,
        pendant_filter: None,
    })
}

/// Labeled connected graphs with exactly `k` pendant vertices.
pub fn connected_graphs_with_k_pendants(
    q: &GraphClassQuery,
) -> Result<ConnectedGraphs, EnumerateError> {
    let mut it = connected_graphs(q.n, q.max_order)?;
    it.pendant_filter = Some(q.k);
    Ok(it)
}

pub struct ConnectedGraphs {
    n: usize,
    slots: Vec<(usize, usize)>,
    next_mask: u64,
    pendant_filter: Option<usize>,
}

impl Iterator for ConnectedGraphs {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        let n = self.n;
        let end = 1u64 << self.slots.len();
        while self.next_mask < end {
            let mask = self.next_mask;
            self.next_mask += 1;
            // Adjacency bitsets per vertex.
            let mut nbr = [0u16; 8];
            let mut deg = [0u8; 8];
            for (b, &(i, j)) in self.slots.iter().enumerate() {
                if mask >> b & 1 == 1 {
                    nbr[i] |= 1 << j;
                    nbr[j] |= 1 << i;
                    deg[i] += 1;
                    deg[j] += 1;
                }
            }
            if let Some(k) = self.pendant_filter {
                if (0..n).filter(|&v| deg[v] == 1).count() != k {
                    continue;
                }
            }
            // Connectivity by frontier expansion.
            let all = (1u16 << n) - 1;
            let mut reach = 1u16;
            loop {
                let mut grown = reach;
                let mut bits = reach;
                while bits != 0 {
                    let v = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    grown |= nbr[v];
                }
                if grown == reach {
                    break;
                }
                reach = grown;
            }
            if reach != all {
                continue;
            }
            let edges: Vec<(usize, usize)> = self
                .slots
                .iter()
                .enumerate()
                .filter(|(b, _)| mask >> b & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            return Some(Graph::from_edge_list(n, &edges).expect("connectivity checked above"));
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn free_tree_counts_match_the_known_table() {
        let want = [1usize, 1, 1, 2, 3, 6, 11, 23, 47, 106];
        for (i, &w) in want.iter().enumerate() {
            let n = i + 1;
            assert_eq!(free_trees(n).unwrap().count(), w, "n = {n}");
        }
        assert!(free_trees(0).is_err());
        assert!(free_trees(21).is_err());
    }

    #[test]
    fn free_trees_are_pairwise_nonisomorphic() {
        for n in 1..=9 {
            let forms: Vec<String> = free_trees(n)
                .unwrap()
                .map(|g| g.tree_canonical_form().unwrap())
                .collect();
            let set: HashSet<&String> = forms.iter().collect();
            assert_eq!(set.len(), forms.len(), "duplicate class at n = {n}");
        }
    }

    #[test]
    fn leaf_classes_partition_the_trees() {
        for n in 3..=9usize {
            let total = free_trees(n).unwrap().count();
            let mut sum = 0;
            for k in 2..=(n - 1) {
                let q = TreeClassQuery::new(n, Some(k)).unwrap();
                sum += trees_with_k_leaves(&q).unwrap().count();
            }
            assert_eq!(sum, total, "n = {n}");
        }
    }

    #[test]
    fn tree_class_examples() {
        // (6,3): exactly the spiders (3,1,1) and (2,2,1).
        let q = TreeClassQuery::new(6, Some(3)).unwrap();
        let trees: Vec<Graph> = trees_with_k_leaves(&q).unwrap().collect();
        assert_eq!(trees.len(), 2);
        for t in &trees {
            assert_eq!(t.pendant_vertices().len(), 3);
        }
        // (5,4): only the star.
        let q = TreeClassQuery::new(5, Some(4)).unwrap();
        let trees: Vec<Graph> = trees_with_k_leaves(&q).unwrap().collect();
        assert_eq!(trees.len(), 1);
        assert_eq!(trees[0].degrees().iter().max(), Some(&4));
        // (6,2): only the path.
        let q = TreeClassQuery::new(6, Some(2)).unwrap();
        let trees: Vec<Graph> = trees_with_k_leaves(&q).unwrap().collect();
        assert_eq!(trees.len(), 1);
        assert_eq!(trees[0].degrees().iter().max(), Some(&2));
    }

    #[test]
    fn query_validation() {
        assert!(TreeClassQuery::new(1, None).is_err());
        assert!(TreeClassQuery::new(6, Some(1)).is_err());
        assert!(TreeClassQuery::new(6, Some(6)).is_err());
        assert!(GraphClassQuery::new(8, 2).is_err());
        assert!(GraphClassQuery::with_cap(8, 2, 8).is_ok());
        assert!(GraphClassQuery::with_cap(9, 2, 12).is_err());
    }

    #[test]
    fn yield_cap_is_honored() {
        let q = TreeClassQuery {
            cap: Some(3),
            ..TreeClassQuery::new(9, None).unwrap()
        };
        assert_eq!(trees_with_k_leaves(&q).unwrap().count(), 3);
    }

    #[test]
    fn connected_graph_classes() {
        // (3, 2): the three labeled copies of P_3.
        let q = GraphClassQuery::new(3, 2).unwrap();
        assert_eq!(connected_graphs_with_k_pendants(&q).unwrap().count(), 3);
        // (3, 3): impossible.
        let q = GraphClassQuery::new(3, 3).unwrap();
        assert_eq!(connected_graphs_with_k_pendants(&q).unwrap().count(), 0);
        // (4, 2): the twelve labeled copies of P_4 (the triangle with a
        // pendant edge has a single pendant vertex and lands in k = 1).
        let q = GraphClassQuery::new(4, 2).unwrap();
        let graphs: Vec<Graph> = connected_graphs_with_k_pendants(&q).unwrap().collect();
        assert_eq!(graphs.len(), 12);
        assert!(graphs.iter().all(|g| g.is_tree()));
        let q = GraphClassQuery::new(4, 1).unwrap();
        assert_eq!(connected_graphs_with_k_pendants(&q).unwrap().count(), 12);
    }

    #[test]
    fn labeled_connected_counts() {
        // 1, 1, 4, 38, 728, 26704 connected labeled graphs on 1..=6
        // vertices.
        let want = [1usize, 1, 4, 38, 728];
        for (i, &w) in want.iter().enumerate() {
            let n = i + 1;
            assert_eq!(connected_graphs(n, 7).unwrap().count(), w, "n = {n}");
        }
    }

    #[test]
    fn streams_are_deterministic() {
        let a: Vec<Vec<(usize, usize)>> =
            free_trees(7).unwrap().map(|g| g.edges()).collect();
        let b: Vec<Vec<(usize, usize)>> =
            free_trees(7).unwrap().map(|g| g.edges()).collect();
        assert_eq!(a, b);
        let a: Vec<Vec<(usize, usize)>> =
            connected_graphs(4, 7).unwrap().map(|g| g.edges()).collect();
        let b: Vec<Vec<(usize, usize)>> =
            connected_graphs(4, 7).unwrap().map(|g| g.edges()).collect();
        assert_eq!(a, b);
    }

    #[test]
    fn every_yielded_graph_is_validated() {
        for g in free_trees(8).unwrap() {
            assert!(g.is_tree());
            assert!(Graph::from_edge_list(g.n(), &g.edges()).is_ok());
        }
        for g in connected_graphs(5, 7).unwrap() {
            assert!(Graph::from_edge_list(g.n(), &g.edges()).is_ok());
        }
    }
}
