//! Constructors and recognizers for the named graph families: paths,
//! stars, double brooms `T(n,k; t1,t2)`, and the triple-star path used by
//! the star-relocation transformation.

use thiserror::Error;

use crate::graph::{Graph, GraphError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("family needs at least {need} vertices, got {got}")]
    TooSmall { need: usize, got: usize },
    #[error("bad family parameters: {0}")]
    BadParams(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Path `P_n` with vertex 0 an endpoint and consecutive labels.
pub fn path(n: usize) -> Result<Graph, FamilyError> {
    if n < 1 {
        return Err(FamilyError::TooSmall { need: 1, got: n });
    }
    let edges: Vec<_> = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
    Ok(Graph::from_edge_list(n, &edges)?)
}

/// Star `S_n` with vertex 0 the center.
pub fn star(n: usize) -> Result<Graph, FamilyError> {
    if n < 2 {
        return Err(FamilyError::TooSmall { need: 2, got: n });
    }
    let edges: Vec<_> = (1..n).map(|i| (0, i)).collect();
    Ok(Graph::from_edge_list(n, &edges)?)
}

/// Parameters of the double broom `T(n,k; t1,t2)`: a path of order
/// `ell = n - k` with `t1` pendant edges at one end and `t2` at the
/// other. Canonical orientation `t1 <= t2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct DoubleBroomParams {
    pub n: usize,
    pub k: usize,
    pub t1: usize,
    pub t2: usize,
    pub ell: usize,
}

impl DoubleBroomParams {
    /// Validates `t1, t2 >= 1`, `t1 + t2 = k`, `ell = n - k >= 2`, and
    /// normalizes to `t1 <= t2`.
    pub fn new(n: usize, k: usize, t1: usize, t2: usize) -> Result<Self, FamilyError> {
        if t1 < 1 || t2 < 1 {
            return Err(FamilyError::BadParams(format!(
                "broom sizes must be at least 1, got ({t1}, {t2})"
            )));
        }
        if t1 + t2 != k {
            return Err(FamilyError::BadParams(format!(
                "broom sizes ({t1}, {t2}) do not sum to k = {k}"
            )));
        }
        if n < k + 2 {
            return Err(FamilyError::BadParams(format!(
                "path order ell = n - k = {} must be at least 2",
                n as i64 - k as i64
            )));
        }
        let (t1, t2) = (t1.min(t2), t1.max(t2));
        Ok(DoubleBroomParams {
            n,
            k,
            t1,
            t2,
            ell: n - k,
        })
    }
}

/// Builds `T(n,k; t1,t2)`: path vertices `0..ell`, then `t1` leaves on
/// vertex `0` and `t2` leaves on vertex `ell - 1`.
pub fn double_broom(p: &DoubleBroomParams) -> Graph {
    let mut edges: Vec<(usize, usize)> = (0..p.ell - 1).map(|i| (i, i + 1)).collect();
    let mut next = p.ell;
    for _ in 0..p.t1 {
        edges.push((0, next));
        next += 1;
    }
    for _ in 0..p.t2 {
        edges.push((p.ell - 1, next));
        next += 1;
    }
    let g = Graph::from_edge_list(p.n, &edges).expect("validated params build a tree");
    debug_assert_eq!(g.pendant_vertices().len(), p.k);
    g
}

/// The graph `H`: a path `v_1 .. v_ell` with stars of `s1`, `si`, `sl`
/// leaves attached through their centers to `v_1`, `v_i`, and `v_ell`.
/// Positions are 1-based; the interior attachment satisfies
/// `2 <= i <= ell - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TripleStarPathParams {
    pub ell: usize,
    pub i: usize,
    pub s1: usize,
    pub si: usize,
    pub sl: usize,
}

impl TripleStarPathParams {
    pub fn new(
        ell: usize,
        i: usize,
        s1: usize,
        si: usize,
        sl: usize,
    ) -> Result<Self, FamilyError> {
        if ell < 2 {
            return Err(FamilyError::BadParams(format!(
                "path order ell must be at least 2, got {ell}"
            )));
        }
        if i < 2 || i + 1 > ell {
            return Err(FamilyError::BadParams(format!(
                "interior position must satisfy 2 <= i <= ell - 1, got i = {i}, ell = {ell}"
            )));
        }
        if s1 < 1 || si < 1 || sl < 1 {
            return Err(FamilyError::BadParams(format!(
                "star leaf counts must be at least 1, got ({s1}, {si}, {sl})"
            )));
        }
        Ok(TripleStarPathParams { ell, i, s1, si, sl })
    }

    /// `ell + s1 + si + sl + 3`: the three star centers are extra
    /// vertices.
    pub fn order(&self) -> usize {
        self.ell + self.s1 + self.si + self.sl + 3
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StarEnd {
    End1,
    EndL,
}

fn triple_star_edges(p: &TripleStarPathParams, attach_i_to: usize) -> (usize, Vec<(usize, usize)>) {
    let mut edges: Vec<(usize, usize)> = (0..p.ell - 1).map(|j| (j, j + 1)).collect();
    let mut next = p.ell;
    for (anchor, leaves) in [(0, p.s1), (attach_i_to, p.si), (p.ell - 1, p.sl)] {
        let center = next;
        next += 1;
        edges.push((anchor, center));
        for _ in 0..leaves {
            edges.push((center, next));
            next += 1;
        }
    }
    (next, edges)
}

/// Builds `H` with path vertices `0..ell` (so `v_j` is vertex `j - 1`).
pub fn triple_star_path(p: &TripleStarPathParams) -> Graph {
    let (n, edges) = triple_star_edges(p, p.i - 1);
    debug_assert_eq!(n, p.order());
    Graph::from_edge_list(n, &edges).expect("validated params build a tree")
}

/// `H_1` or `H_ell`: the interior star moved from `v_i` to an end.
pub fn relocate_star(p: &TripleStarPathParams, target: StarEnd) -> Graph {
    let anchor = match target {
        StarEnd::End1 => 0,
        StarEnd::EndL => p.ell - 1,
    };
    let (n, edges) = triple_star_edges(p, anchor);
    debug_assert_eq!(n, p.order());
    Graph::from_edge_list(n, &edges).expect("validated params build a tree")
}

/// `G_{p,q}`: two new pendant paths of `p` and `q` edges hung at `u`.
pub fn attach_pendant_paths(
    g: &Graph,
    u: usize,
    p: usize,
    q: usize,
) -> Result<Graph, FamilyError> {
    if g.n() < 2 {
        return Err(FamilyError::TooSmall { need: 2, got: g.n() });
    }
    if u >= g.n() {
        return Err(FamilyError::Graph(GraphError::VertexOutOfRange {
            vertex: u,
            order: g.n(),
        }));
    }
    let mut edges = g.edges();
    let mut next = g.n();
    for len in [p, q] {
        let mut prev = u;
        for _ in 0..len {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
    }
    Ok(Graph::from_edge_list(g.n() + p + q, &edges)?)
}

/// Structural membership test for the double-broom family: a tree whose
/// non-leaf vertices induce a path and whose leaves all attach to the two
/// ends of that path. Returns canonical parameters, `None` otherwise.
pub fn recognize_double_broom(g: &Graph) -> Option<DoubleBroomParams> {
    let n = g.n();
    if n < 4 || !g.is_tree() {
        return None;
    }
    let degrees = g.degrees();
    let internal: Vec<usize> = (0..n).filter(|&v| degrees[v] >= 2).collect();
    if internal.len() < 2 {
        return None;
    }
    // The non-leaf vertices of a tree always induce a subtree; it is a
    // path iff no internal vertex has three internal neighbors.
    let mut ends = Vec::new();
    for &v in &internal {
        let internal_degree = g.neighbors(v).iter().filter(|&&w| degrees[w] >= 2).count();
        match internal_degree {
            0 => return None, // |internal| >= 2, so an isolated internal vertex is impossible anyway
            1 => ends.push(v),
            2 => {
                // Interior of the induced path: must carry no leaves.
                if g.degree(v) != 2 {
                    return None;
                }
            }
            _ => return None,
        }
    }
    if ends.len() != 2 {
        return None;
    }
    let leaf_count = |end: usize| {
        g.neighbors(end)
            .iter()
            .filter(|&&w| degrees[w] == 1)
            .count()
    };
    let (a, b) = (leaf_count(ends[0]), leaf_count(ends[1]));
    let k = a + b;
    // Every leaf must sit on an end of the internal path.
    if internal.len() + k != n {
        return None;
    }
    debug_assert!(a >= 1 && b >= 1);
    Some(DoubleBroomParams {
        n,
        k,
        t1: a.min(b),
        t2: a.max(b),
        ell: internal.len(),
    })
}
