//! Simple connected undirected graphs with exact integer distance data.
//!
//! Distances are computed by BFS and kept as integers; nothing in this
//! module rounds. Matrices become floating point only when handed to the
//! eigensolvers.

use std::collections::VecDeque;

use thiserror::Error;

use crate::matrix::SymMatrix;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("loop edge at vertex {0}")]
    LoopEdge(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("vertex {vertex} out of range for order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("graph is not connected")]
    Disconnected,
    #[error("graph is not a tree")]
    NotATree,
    #[error("vector of length {got} does not match vertex count {want}")]
    DimensionMismatch { want: usize, got: usize },
}

/// A simple connected undirected graph on vertices `0..n`.
///
/// Connectivity is validated at construction; every operation below
/// assumes it. Neighbor lists are sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<usize>>,
    edge_count: usize,
}

impl Graph {
    /// Builds a graph from an explicit edge list, rejecting loops,
    /// duplicate edges, out-of-range endpoints, and disconnected input.
    pub fn from_edge_list(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::Disconnected);
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange {
                        vertex: w,
                        order: n,
                    });
                }
            }
            if u == v {
                return Err(GraphError::LoopEdge(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        for (u, list) in adj.iter().enumerate() {
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(GraphError::DuplicateEdge(u.min(w[0]), u.max(w[0])));
            }
        }
        let g = Graph {
            n,
            adj,
            edge_count: edges.len(),
        };
        if !g.is_connected() {
            return Err(GraphError::Disconnected);
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count);
        for u in 0..self.n {
            for &v in &self.adj[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn is_tree(&self) -> bool {
        self.edge_count == self.n - 1
    }

    pub fn is_complete(&self) -> bool {
        self.edge_count == self.n * (self.n - 1) / 2
    }

    fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::new();
        seen[0] = true;
        queue.push_back(0);
        let mut count = 1;
        while let Some(u) = queue.pop_front() {
            for &v in &self.adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    queue.push_back(v);
                }
            }
        }
        count == self.n
    }

    /// BFS from every vertex: exact distances, transmissions, and the
    /// maximum transmission.
    pub fn distance_data(&self) -> DistanceData {
        let n = self.n;
        let mut dist = vec![0u64; n * n];
        let mut queue = VecDeque::new();
        for s in 0..n {
            let row = &mut dist[s * n..(s + 1) * n];
            let mut seen = vec![false; n];
            seen[s] = true;
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                for &v in &self.adj[u] {
                    if !seen[v] {
                        seen[v] = true;
                        row[v] = row[u] + 1;
                        queue.push_back(v);
                    }
                }
            }
        }
        let trans: Vec<u64> = (0..n).map(|v| dist[v * n..(v + 1) * n].iter().sum()).collect();
        let tr_max = trans.iter().copied().max().unwrap_or(0);
        DistanceData {
            n,
            dist,
            trans,
            tr_max,
        }
    }

    /// Distance Laplacian `Tr(G) - D(G)`. Every row sums to exactly zero.
    pub fn distance_laplacian(&self) -> SymMatrix {
        let dd = self.distance_data();
        let n = self.n;
        let mut m = SymMatrix::zeros(n);
        for i in 0..n {
            m.set(i, i, dd.trans[i] as f64);
            for j in (i + 1)..n {
                m.set_sym(i, j, -(dd.dist(i, j) as f64));
            }
        }
        m
    }

    /// Distance signless Laplacian `Tr(G) + D(G)`. Entrywise nonnegative
    /// and irreducible for connected graphs.
    pub fn distance_signless_laplacian(&self) -> SymMatrix {
        let dd = self.distance_data();
        let n = self.n;
        let mut m = SymMatrix::zeros(n);
        for i in 0..n {
            m.set(i, i, dd.trans[i] as f64);
            for j in (i + 1)..n {
                m.set_sym(i, j, dd.dist(i, j) as f64);
            }
        }
        m
    }

    /// `sum_{u<v} d(u,v) (x_u - x_v)^2`, the Laplacian Rayleigh numerator.
    pub fn laplacian_quadratic_form(&self, x: &[f64]) -> Result<f64, GraphError> {
        self.quadratic_form(x, |a, b| (a - b) * (a - b))
    }

    /// `sum_{u<v} d(u,v) (x_u + x_v)^2`, the signless variant.
    pub fn signless_quadratic_form(&self, x: &[f64]) -> Result<f64, GraphError> {
        self.quadratic_form(x, |a, b| (a + b) * (a + b))
    }

    fn quadratic_form(&self, x: &[f64], term: impl Fn(f64, f64) -> f64) -> Result<f64, GraphError> {
        if x.len() != self.n {
            return Err(GraphError::DimensionMismatch {
                want: self.n,
                got: x.len(),
            });
        }
        let dd = self.distance_data();
        let mut sum = 0.0;
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                sum += dd.dist(u, v) as f64 * term(x[u], x[v]);
            }
        }
        Ok(sum)
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    /// Vertices of degree one, ascending.
    pub fn pendant_vertices(&self) -> Vec<usize> {
        (0..self.n).filter(|&v| self.degree(v) == 1).collect()
    }

    pub fn degrees_and_pendants(&self) -> (Vec<usize>, Vec<usize>) {
        (self.degrees(), self.pendant_vertices())
    }

    /// The 1 or 2 centroids of a tree: vertices minimizing the largest
    /// component of `T - v`.
    fn tree_centroids(&self) -> Vec<usize> {
        let n = self.n;
        if n == 1 {
            return vec![0];
        }
        // Subtree sizes from an iterative post-order rooted at 0.
        let mut parent = vec![usize::MAX; n];
        let mut order = Vec::with_capacity(n);
        let mut stack = vec![0usize];
        let mut seen = vec![false; n];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            order.push(u);
            for &v in &self.adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    parent[v] = u;
                    stack.push(v);
                }
            }
        }
        let mut size = vec![1usize; n];
        let mut max_comp = vec![0usize; n];
        for &u in order.iter().rev() {
            if parent[u] != usize::MAX {
                size[parent[u]] += size[u];
                max_comp[parent[u]] = max_comp[parent[u]].max(size[u]);
            }
        }
        let best = (0..n)
            .map(|v| max_comp[v].max(n - size[v]))
            .min()
            .unwrap();
        (0..n)
            .filter(|&v| max_comp[v].max(n - size[v]) == best)
            .collect()
    }

    /// AHU canonical encoding rooted at the centroid; for bicentroidal
    /// trees, the smaller of the two rootings. Two trees are isomorphic
    /// iff their strings are equal.
    pub fn tree_canonical_form(&self) -> Result<String, GraphError> {
        if !self.is_tree() {
            return Err(GraphError::NotATree);
        }
        let forms: Vec<String> = self
            .tree_centroids()
            .into_iter()
            .map(|root| self.rooted_canonical_form(root))
            .collect();
        Ok(forms.into_iter().min().unwrap())
    }

    fn rooted_canonical_form(&self, root: usize) -> String {
        fn encode(g: &Graph, v: usize, parent: usize) -> String {
            let mut children: Vec<String> = g
                .neighbors(v)
                .iter()
                .filter(|&&w| w != parent)
                .map(|&w| encode(g, w, v))
                .collect();
            children.sort_unstable();
            let mut s = String::with_capacity(2 + children.iter().map(String::len).sum::<usize>());
            s.push('(');
            for c in &children {
                s.push_str(c);
            }
            s.push(')');
            s
        }
        encode(self, root, usize::MAX)
    }
}

/// Exact all-pairs distances and transmissions of a connected graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceData {
    n: usize,
    dist: Vec<u64>,
    trans: Vec<u64>,
    tr_max: u64,
}

impl DistanceData {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dist(&self, u: usize, v: usize) -> u64 {
        self.dist[u * self.n + v]
    }

    /// Transmission `Tr(v)`: the sum of distances from `v` to all others.
    pub fn trans(&self, v: usize) -> u64 {
        self.trans[v]
    }

    pub fn transmissions(&self) -> &[u64] {
        &self.trans
    }

    pub fn tr_max(&self) -> u64 {
        self.tr_max
    }

    /// Half the sum of all transmissions.
    pub fn wiener_index(&self) -> u64 {
        let total: u64 = self.trans.iter().sum();
        debug_assert_eq!(total % 2, 0);
        total / 2
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize) -> Graph {
        let edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
        Graph::from_edge_list(n, &edges).unwrap()
    }

    fn star4() -> Graph {
        Graph::from_edge_list(4, &[(0, 1), (0, 2), (0, 3)]).unwrap()
    }

    fn k3() -> Graph {
        Graph::from_edge_list(3, &[(0, 1), (0, 2), (1, 2)]).unwrap()
    }

    #[test]
    fn from_edge_list_accepts_p2_and_stars() {
        let g = Graph::from_edge_list(2, &[(0, 1)]).unwrap();
        assert_eq!(g.n(), 2);
        assert_eq!(g.edge_count(), 1);
        let s = star4();
        assert_eq!(s.degrees(), vec![3, 1, 1, 1]);
    }

    #[test]
    fn from_edge_list_rejects_bad_input() {
        assert_eq!(
            Graph::from_edge_list(4, &[(0, 1), (2, 3)]),
            Err(GraphError::Disconnected)
        );
        assert_eq!(
            Graph::from_edge_list(2, &[(0, 0)]),
            Err(GraphError::LoopEdge(0))
        );
        assert_eq!(
            Graph::from_edge_list(2, &[(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge(0, 1))
        );
        assert_eq!(
            Graph::from_edge_list(2, &[(0, 2)]),
            Err(GraphError::VertexOutOfRange {
                vertex: 2,
                order: 2
            })
        );
        assert_eq!(Graph::from_edge_list(0, &[]), Err(GraphError::Disconnected));
    }

    #[test]
    fn single_vertex_is_accepted() {
        let g = Graph::from_edge_list(1, &[]).unwrap();
        let dd = g.distance_data();
        assert_eq!(dd.tr_max(), 0);
        assert_eq!(g.distance_laplacian().order(), 1);
        assert_eq!(g.distance_laplacian().get(0, 0), 0.0);
    }

    #[test]
    fn transmissions_of_small_graphs() {
        assert_eq!(p(3).distance_data().transmissions(), &[3, 2, 3]);
        assert_eq!(p(4).distance_data().transmissions(), &[6, 4, 4, 6]);
        assert_eq!(star4().distance_data().transmissions(), &[3, 5, 5, 5]);
        assert_eq!(p(3).distance_data().tr_max(), 3);
    }

    #[test]
    fn laplacian_of_p3_and_k3() {
        let l = p(3).distance_laplacian();
        let want = [[3.0, -1.0, -2.0], [-1.0, 2.0, -1.0], [-2.0, -1.0, 3.0]];
        for (i, row) in want.iter().enumerate() {
            for (j, &w) in row.iter().enumerate() {
                assert_eq!(l.get(i, j), w);
            }
        }
        let l2 = Graph::from_edge_list(2, &[(0, 1)]).unwrap().distance_laplacian();
        assert_eq!(l2.get(0, 0), 1.0);
        assert_eq!(l2.get(0, 1), -1.0);

        // K_3: 3I - J.
        let lk = k3().distance_laplacian();
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { 2.0 } else { -1.0 };
                assert_eq!(lk.get(i, j), want);
            }
        }
    }

    #[test]
    fn signless_laplacian_of_p3_and_k3() {
        let q = p(3).distance_signless_laplacian();
        let want = [[3.0, 1.0, 2.0], [1.0, 2.0, 1.0], [2.0, 1.0, 3.0]];
        for (i, row) in want.iter().enumerate() {
            for (j, &w) in row.iter().enumerate() {
                assert_eq!(q.get(i, j), w);
            }
        }
        // K_3: I + J.
        let qk = k3().distance_signless_laplacian();
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { 2.0 } else { 1.0 };
                assert_eq!(qk.get(i, j), want);
            }
        }
    }

    #[test]
    fn laplacian_rows_sum_to_exactly_zero() {
        for g in [p(2), p(3), p(4), star4(), k3()] {
            let l = g.distance_laplacian();
            for i in 0..g.n() {
                assert_eq!(l.row_sum(i), 0.0);
            }
        }
    }

    #[test]
    fn signless_row_sums_are_twice_transmissions() {
        for g in [p(3), p(4), star4()] {
            let q = g.distance_signless_laplacian();
            let dd = g.distance_data();
            for i in 0..g.n() {
                assert_eq!(q.row_sum(i), 2.0 * dd.trans(i) as f64);
            }
        }
    }

    #[test]
    fn quadratic_form_examples() {
        let g2 = Graph::from_edge_list(2, &[(0, 1)]).unwrap();
        assert_eq!(g2.laplacian_quadratic_form(&[1.0, 0.0]).unwrap(), 1.0);
        assert_eq!(p(3).laplacian_quadratic_form(&[1.0, 1.0, 1.0]).unwrap(), 0.0);
        // (P_3, (1,0,-1)): 1*1 + 1*1 + 2*4.
        assert_eq!(
            p(3).laplacian_quadratic_form(&[1.0, 0.0, -1.0]).unwrap(),
            10.0
        );
        assert_eq!(g2.signless_quadratic_form(&[1.0, -1.0]).unwrap(), 0.0);
        assert_eq!(g2.signless_quadratic_form(&[1.0, 1.0]).unwrap(), 4.0);
        assert_eq!(
            p(3).signless_quadratic_form(&[1.0, 1.0, 1.0]).unwrap(),
            16.0
        );
        assert_eq!(
            p(3).laplacian_quadratic_form(&[1.0, 0.0]),
            Err(GraphError::DimensionMismatch { want: 3, got: 2 })
        );
    }

    #[test]
    fn wiener_parity() {
        for g in [p(2), p(5), star4(), k3()] {
            let dd = g.distance_data();
            let total: u64 = dd.transmissions().iter().sum();
            assert_eq!(total % 2, 0);
            assert_eq!(dd.wiener_index() * 2, total);
        }
    }

    #[test]
    fn pendant_sets() {
        assert_eq!(p(4).pendant_vertices(), vec![0, 3]);
        assert_eq!(star4().pendant_vertices(), vec![1, 2, 3]);
        assert!(k3().pendant_vertices().is_empty());
        let (deg, pend) = p(4).degrees_and_pendants();
        assert_eq!(deg, vec![1, 2, 2, 1]);
        assert_eq!(pend, vec![0, 3]);
    }

    #[test]
    fn canonical_form_is_relabeling_invariant() {
        let a = p(4);
        // P_4 relabeled through the vertex order (2,0,3,1).
        let b = Graph::from_edge_list(4, &[(2, 0), (0, 3), (3, 1)]).unwrap();
        assert_eq!(
            a.tree_canonical_form().unwrap(),
            b.tree_canonical_form().unwrap()
        );
        assert_ne!(
            star4().tree_canonical_form().unwrap(),
            p(4).tree_canonical_form().unwrap()
        );
        assert_eq!(k3().tree_canonical_form(), Err(GraphError::NotATree));
    }
}
