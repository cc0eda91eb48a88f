//! Graft transformations: executable graph rewrites together with
//! evaluators for their eigenvector side conditions.

use std::collections::VecDeque;

use thiserror::Error;

use crate::eigen::eps_cmp;
use crate::graph::{Graph, GraphError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TransformError {
    #[error("invalid branch decomposition: {0}")]
    InvalidDecomposition(String),
    #[error("vector of length {got} does not match vertex count {want}")]
    DimensionMismatch { want: usize, got: usize },
    #[error("not a pendant path: {0}")]
    NotPendantPath(String),
    #[error("paths given in the wrong order: p = {p} must not exceed q = {q}")]
    WrongOrder { p: usize, q: usize },
    #[error("vertices {0} and {1} are already adjacent")]
    AlreadyAdjacent(usize, usize),
    #[error("loop edge at vertex {0}")]
    Loop(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A decomposition `G = G1 ∪ G2 ∪ G3` with pairwise intersection `{v0}`,
/// each part of size at least 2, and a target vertex `u` in
/// `G2 \ {v0}`. Part interiors must be unions of components of `G - v0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchDecomposition {
    v0: usize,
    parts: [Vec<usize>; 3],
    u: usize,
}

impl BranchDecomposition {
    /// Validates the decomposition against `g`. Parts are given with
    /// `v0` included, matching the set notation they come from.
    pub fn new(
        g: &Graph,
        v0: usize,
        g1: Vec<usize>,
        g2: Vec<usize>,
        g3: Vec<usize>,
        u: usize,
    ) -> Result<Self, TransformError> {
        let n = g.n();
        let bad = |m: String| Err(TransformError::InvalidDecomposition(m));
        if v0 >= n || u >= n {
            return bad(format!("vertex out of range ({v0} or {u})"));
        }
        let mut parts = [g1, g2, g3];
        let mut owner = vec![usize::MAX; n];
        for (idx, part) in parts.iter_mut().enumerate() {
            part.sort_unstable();
            part.dedup();
            if part.len() < 2 {
                return bad(format!("part {} has fewer than 2 vertices", idx + 1));
            }
            if part.binary_search(&v0).is_err() {
                return bad(format!("part {} does not contain v0 = {v0}", idx + 1));
            }
            for &v in part.iter() {
                if v >= n {
                    return bad(format!("vertex {v} out of range"));
                }
                if v != v0 {
                    if owner[v] != usize::MAX {
                        return bad(format!("vertex {v} appears in two parts"));
                    }
                    owner[v] = idx;
                }
            }
        }
        if owner.iter().enumerate().any(|(v, &o)| v != v0 && o == usize::MAX) {
            return bad("parts do not cover the vertex set".into());
        }
        if u == v0 || owner[u] != 1 {
            return bad(format!("u = {u} must lie in G2 \\ {{v0}}"));
        }
        // Removing v0 must disconnect the part interiors: each component
        // of g - v0 stays inside one part.
        let mut seen = vec![false; n];
        seen[v0] = true;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let comp_owner = owner[start];
            let mut queue = VecDeque::new();
            seen[start] = true;
            queue.push_back(start);
            while let Some(x) = queue.pop_front() {
                for &y in g.neighbors(x) {
                    if !seen[y] {
                        if owner[y] != comp_owner {
                            return bad(format!(
                                "vertices {start} and {y} are connected outside v0 but lie in different parts"
                            ));
                        }
                        seen[y] = true;
                        queue.push_back(y);
                    }
                }
            }
        }
        Ok(BranchDecomposition { v0, parts, u })
    }

    pub fn v0(&self) -> usize {
        self.v0
    }

    pub fn u(&self) -> usize {
        self.u
    }

    pub fn part(&self, idx: usize) -> &[usize] {
        &self.parts[idx]
    }

    /// Part interior (the part without `v0`).
    fn interior(&self, idx: usize) -> impl Iterator<Item = usize> + '_ {
        let v0 = self.v0;
        self.parts[idx].iter().copied().filter(move |&v| v != v0)
    }
}

/// Moves `G3` from `v0` to `u`: edges from `v0` into the interior of
/// `G3` are re-attached at `u`. Order, edge count, and connectivity are
/// preserved.
pub fn move_branch(g: &Graph, d: &BranchDecomposition) -> Graph {
    let in_g3: Vec<bool> = {
        let mut mark = vec![false; g.n()];
        for v in d.interior(2) {
            mark[v] = true;
        }
        mark
    };
    let edges: Vec<(usize, usize)> = g
        .edges()
        .into_iter()
        .map(|(a, b)| {
            if a == d.v0 && in_g3[b] {
                (d.u, b)
            } else if b == d.v0 && in_g3[a] {
                (a, d.u)
            } else {
                (a, b)
            }
        })
        .collect();
    Graph::from_edge_list(g.n(), &edges).expect("branch move preserves simplicity and connectivity")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraftVariant {
    /// Terms `(x_i - x_j)^2`, for the distance Laplacian condition.
    LaplacianMinus,
    /// Terms `(x_i + x_j)^2`, for the signless variant.
    SignlessPlus,
}

/// The two double sums of the branch-move side condition: `lhs` over
/// `(G3 \ {v0}) x G1`, `rhs` over `(G3 \ {v0}) x G2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GraftConditionReport {
    pub lhs: f64,
    pub rhs: f64,
    /// `lhs > rhs` beyond the comparison tolerance.
    pub strict: bool,
    pub variant: GraftVariant,
}

impl GraftConditionReport {
    /// Weak form of the condition: `lhs >= rhs` up to tolerance.
    pub fn holds_weak(&self) -> bool {
        self.lhs >= self.rhs - eps_cmp(self.lhs, self.rhs)
    }
}

pub fn graft_condition(
    g: &Graph,
    d: &BranchDecomposition,
    x: &[f64],
    variant: GraftVariant,
) -> Result<GraftConditionReport, TransformError> {
    if x.len() != g.n() {
        return Err(TransformError::DimensionMismatch {
            want: g.n(),
            got: x.len(),
        });
    }
    let term = |a: f64, b: f64| match variant {
        GraftVariant::LaplacianMinus => (a - b) * (a - b),
        GraftVariant::SignlessPlus => (a + b) * (a + b),
    };
    let mut lhs = 0.0;
    let mut rhs = 0.0;
    for vi in d.interior(2) {
        for &vj in d.part(0) {
            lhs += term(x[vi], x[vj]);
        }
        for &vj in d.part(1) {
            rhs += term(x[vi], x[vj]);
        }
    }
    Ok(GraftConditionReport {
        lhs,
        rhs,
        strict: lhs > rhs + eps_cmp(lhs, rhs),
        variant,
    })
}

/// Checks that `path` is a pendant path hanging at `u`: consecutive
/// vertices adjacent, interior degrees 2, terminal degree 1.
fn check_pendant_path(g: &Graph, u: usize, path: &[usize], name: &str) -> Result<(), TransformError> {
    let fail = |m: String| Err(TransformError::NotPendantPath(m));
    if path.is_empty() {
        return fail(format!("{name} is empty"));
    }
    if g.degree(u) < 3 {
        return fail(format!("anchor {u} has degree {} < 3", g.degree(u)));
    }
    let mut prev = u;
    for (idx, &v) in path.iter().enumerate() {
        if v >= g.n() || v == u {
            return fail(format!("{name} contains invalid vertex {v}"));
        }
        if !g.has_edge(prev, v) {
            return fail(format!("{name}: {prev} and {v} are not adjacent"));
        }
        let want_degree = if idx + 1 == path.len() { 1 } else { 2 };
        if g.degree(v) != want_degree {
            return fail(format!(
                "{name}: vertex {v} has degree {}, expected {want_degree}",
                g.degree(v)
            ));
        }
        prev = v;
    }
    Ok(())
}

/// `G_{p,q} -> G_{p-1,q+1}`: the last vertex of the `p`-path is
/// transplanted to extend the `q`-path. Requires `1 <= p <= q`.
pub fn shift_pendant_path(
    g: &Graph,
    u: usize,
    p_path: &[usize],
    q_path: &[usize],
) -> Result<Graph, TransformError> {
    if u >= g.n() {
        return Err(TransformError::Graph(GraphError::VertexOutOfRange {
            vertex: u,
            order: g.n(),
        }));
    }
    check_pendant_path(g, u, p_path, "p-path")?;
    check_pendant_path(g, u, q_path, "q-path")?;
    if p_path.iter().any(|v| q_path.contains(v)) {
        return Err(TransformError::NotPendantPath(
            "p-path and q-path share vertices".into(),
        ));
    }
    if p_path.len() > q_path.len() {
        return Err(TransformError::WrongOrder {
            p: p_path.len(),
            q: q_path.len(),
        });
    }
    let moved = *p_path.last().unwrap();
    let detach_from = if p_path.len() == 1 {
        u
    } else {
        p_path[p_path.len() - 2]
    };
    let attach_to = *q_path.last().unwrap();
    let edges: Vec<(usize, usize)> = g
        .edges()
        .into_iter()
        .map(|(a, b)| {
            if (a, b) == (detach_from.min(moved), detach_from.max(moved)) {
                (attach_to, moved)
            } else {
                (a, b)
            }
        })
        .collect();
    Ok(Graph::from_edge_list(g.n(), &edges).expect("path shift preserves the tree structure"))
}

/// `G + uv` for a non-adjacent pair.
pub fn add_edge(g: &Graph, u: usize, v: usize) -> Result<Graph, TransformError> {
    if u == v {
        return Err(TransformError::Loop(u));
    }
    for w in [u, v] {
        if w >= g.n() {
            return Err(TransformError::Graph(GraphError::VertexOutOfRange {
                vertex: w,
                order: g.n(),
            }));
        }
    }
    if g.has_edge(u, v) {
        return Err(TransformError::AlreadyAdjacent(u.min(v), u.max(v)));
    }
    let mut edges = g.edges();
    edges.push((u, v));
    Ok(Graph::from_edge_list(g.n(), &edges)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigen::{rho_l, rho_q};
    use crate::families::path;

    /// spider(1,1,2): center 0 with leaves 1, 2 and a two-edge leg 3-4.
    fn spider112() -> Graph {
        Graph::from_edge_list(5, &[(0, 1), (0, 2), (0, 3), (3, 4)]).unwrap()
    }

    #[test]
    fn move_leaf_to_leg_end_gives_p5() {
        let g = spider112();
        let d = BranchDecomposition::new(&g, 0, vec![0, 2], vec![0, 3, 4], vec![0, 1], 4).unwrap();
        let moved = move_branch(&g, &d);
        assert_eq!(moved.n(), g.n());
        assert_eq!(moved.edge_count(), g.edge_count());
        assert_eq!(
            moved.tree_canonical_form().unwrap(),
            path(5).unwrap().tree_canonical_form().unwrap()
        );
    }

    #[test]
    fn move_and_inverse_move_are_isomorphic() {
        let g = spider112();
        // Move leaf 1 from the center to its neighbor 3.
        let d = BranchDecomposition::new(&g, 0, vec![0, 2], vec![0, 3, 4], vec![0, 1], 3).unwrap();
        let moved = move_branch(&g, &d);
        // Inverse decomposition at 3 moves it back.
        let d_inv =
            BranchDecomposition::new(&moved, 3, vec![3, 4], vec![3, 0, 2], vec![3, 1], 0).unwrap();
        let back = move_branch(&moved, &d_inv);
        assert_eq!(
            back.tree_canonical_form().unwrap(),
            g.tree_canonical_form().unwrap()
        );
    }

    #[test]
    fn pendant_edge_slide_degree_bookkeeping() {
        let g = spider112();
        let d = BranchDecomposition::new(&g, 0, vec![0, 2], vec![0, 3, 4], vec![0, 1], 3).unwrap();
        let moved = move_branch(&g, &d);
        assert_eq!(moved.degree(0), g.degree(0) - 1);
        assert_eq!(moved.degree(3), g.degree(3) + 1);
    }

    #[test]
    fn decomposition_rejects_bad_shapes() {
        let g = spider112();
        // Part too small.
        assert!(BranchDecomposition::new(&g, 0, vec![0], vec![0, 3, 4, 2], vec![0, 1], 3).is_err());
        // u outside G2.
        assert!(
            BranchDecomposition::new(&g, 0, vec![0, 2], vec![0, 3, 4], vec![0, 1], 2).is_err()
        );
        // Component split across parts: 3 and 4 are connected in g - 0.
        assert!(
            BranchDecomposition::new(&g, 0, vec![0, 2, 3], vec![0, 4], vec![0, 1], 4).is_err()
        );
        // Missing coverage.
        assert!(BranchDecomposition::new(&g, 0, vec![0, 2], vec![0, 3], vec![0, 1], 3).is_err());
    }

    #[test]
    fn graft_condition_trivial_values() {
        let g = spider112();
        let d = BranchDecomposition::new(&g, 0, vec![0, 2], vec![0, 3, 4], vec![0, 1], 4).unwrap();
        let x = vec![1.0; 5];
        let rep = graft_condition(&g, &d, &x, GraftVariant::LaplacianMinus).unwrap();
        assert_eq!((rep.lhs, rep.rhs), (0.0, 0.0));
        assert!(!rep.strict);
        assert!(rep.holds_weak());

        // All-ones, signless: each term is 4.
        let rep = graft_condition(&g, &d, &x, GraftVariant::SignlessPlus).unwrap();
        assert_eq!(rep.lhs, 4.0 * 1.0 * 2.0); // |G3 \ {v0}| = 1, |G1| = 2
        assert_eq!(rep.rhs, 4.0 * 1.0 * 3.0); // |G2| = 3
        assert!(!rep.strict);

        assert!(matches!(
            graft_condition(&g, &d, &[1.0, 2.0], GraftVariant::LaplacianMinus),
            Err(TransformError::DimensionMismatch { want: 5, got: 2 })
        ));
    }

    #[test]
    fn graft_condition_matches_nested_loop_oracle() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        // Order-7 tree: center 0, branches {1}, {2,3}, {4,5,6}.
        let g = Graph::from_edge_list(
            7,
            &[(0, 1), (0, 2), (2, 3), (0, 4), (4, 5), (5, 6)],
        )
        .unwrap();
        let d = BranchDecomposition::new(
            &g,
            0,
            vec![0, 1],
            vec![0, 4, 5, 6],
            vec![0, 2, 3],
            5,
        )
        .unwrap();
        let mut rng = StdRng::seed_from_u64(42);
        for _ in 0..10 {
            let x: Vec<f64> = (0..7).map(|_| rng.gen_range(-2.0..2.0)).collect();
            for variant in [GraftVariant::LaplacianMinus, GraftVariant::SignlessPlus] {
                let rep = graft_condition(&g, &d, &x, variant).unwrap();
                // Independent nested loops over the explicit vertex sets.
                let term = |a: f64, b: f64| match variant {
                    GraftVariant::LaplacianMinus => (a - b) * (a - b),
                    GraftVariant::SignlessPlus => (a + b) * (a + b),
                };
                let mut lhs = 0.0;
                let mut rhs = 0.0;
                for &vi in &[2usize, 3] {
                    for &vj in &[0usize, 1] {
                        lhs += term(x[vi], x[vj]);
                    }
                    for &vj in &[0usize, 4, 5, 6] {
                        rhs += term(x[vi], x[vj]);
                    }
                }
                assert!((rep.lhs - lhs).abs() <= 1e-12 * lhs.abs().max(1.0));
                assert!((rep.rhs - rhs).abs() <= 1e-12 * rhs.abs().max(1.0));
            }
        }
    }

    #[test]
    fn shift_examples() {
        // S_4 with u = center, p = q = 1 becomes P_4.
        let s4 = Graph::from_edge_list(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let shifted = shift_pendant_path(&s4, 0, &[1], &[2]).unwrap();
        assert_eq!(
            shifted.tree_canonical_form().unwrap(),
            path(4).unwrap().tree_canonical_form().unwrap()
        );

        // spider(2,2,1): shifting the (2,2) pair gives spider(3,1,1).
        let spider221 =
            Graph::from_edge_list(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (2, 5)]).unwrap();
        let shifted = shift_pendant_path(&spider221, 2, &[1, 0], &[3, 4]).unwrap();
        let spider311 =
            Graph::from_edge_list(6, &[(2, 3), (3, 4), (4, 5), (0, 2), (1, 2)]).unwrap();
        assert_eq!(
            shifted.tree_canonical_form().unwrap(),
            spider311.tree_canonical_form().unwrap()
        );

        // Empty p-path: p >= 1 violated.
        assert!(matches!(
            shift_pendant_path(&s4, 0, &[], &[2]),
            Err(TransformError::NotPendantPath(_))
        ));
        // p > q.
        let spider211 = Graph::from_edge_list(5, &[(0, 1), (1, 2), (2, 3), (2, 4)]).unwrap();
        assert!(matches!(
            shift_pendant_path(&spider211, 2, &[1, 0], &[3]),
            Err(TransformError::WrongOrder { p: 2, q: 1 })
        ));
        // Not a pendant path (interior degree wrong).
        assert!(matches!(
            shift_pendant_path(&spider211, 2, &[1], &[3]),
            Err(TransformError::NotPendantPath(_))
        ));
    }

    #[test]
    fn add_edge_examples() {
        let p3 = path(3).unwrap();
        let k3 = add_edge(&p3, 0, 2).unwrap();
        assert!(k3.is_complete());
        // rho_L drops 5 -> 3, rho_Q drops (7+sqrt(17))/2 -> 4.
        let before = rho_l(&p3).unwrap().rho;
        let after = rho_l(&k3).unwrap().rho;
        assert!((before - 5.0).abs() < 1e-9 && (after - 3.0).abs() < 1e-9);
        let before = rho_q(&p3).unwrap().rho;
        let after = rho_q(&k3).unwrap().rho;
        assert!((before - (7.0 + 17.0_f64.sqrt()) / 2.0).abs() < 1e-9);
        assert!((after - 4.0).abs() < 1e-9);

        assert!(matches!(
            add_edge(&p3, 0, 1),
            Err(TransformError::AlreadyAdjacent(0, 1))
        ));
        assert!(matches!(add_edge(&p3, 1, 1), Err(TransformError::Loop(1))));
    }
}
