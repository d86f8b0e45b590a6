//! Small simple graphs: girth, isomorphism, and the Pauli link graph.

use std::collections::BTreeSet;

/// Undirected simple graph on vertices 0..n, stored as a sorted edge list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleGraph {
    n: usize,
    edges: Vec<(u32, u32)>,
}

impl SimpleGraph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (u32, u32)>) -> SimpleGraph {
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            assert!((a as usize) < n && (b as usize) < n, "vertex out of range");
            assert_ne!(a, b, "loops are not allowed");
            set.insert((a.min(b), a.max(b)));
        }
        SimpleGraph { n, edges: set.into_iter().collect() }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn adjacency(&self) -> Vec<Vec<u32>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(a, b) in &self.edges {
            adj[a as usize].push(b);
            adj[b as usize].push(a);
        }
        for l in &mut adj {
            l.sort_unstable();
        }
        adj
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency().iter().map(|l| l.len()).collect()
    }

    pub fn is_regular(&self, k: usize) -> bool {
        self.degrees().iter().all(|&d| d == k)
    }

    /// Whether the graph admits a proper 2-coloring.
    pub fn is_bipartite(&self) -> bool {
        let adj = self.adjacency();
        let mut color = vec![-1i8; self.n];
        for s in 0..self.n {
            if color[s] >= 0 {
                continue;
            }
            color[s] = 0;
            let mut queue = std::collections::VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &w in &adj[v] {
                    let w = w as usize;
                    if color[w] < 0 {
                        color[w] = 1 - color[v];
                        queue.push_back(w);
                    } else if color[w] == color[v] {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Distances from `start` by BFS; usize::MAX marks unreachable vertices.
    pub fn bfs_distances(&self, start: usize) -> Vec<usize> {
        let adj = self.adjacency();
        let mut dist = vec![usize::MAX; self.n];
        dist[start] = 0;
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                let w = w as usize;
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }
}

/// Length of the shortest cycle, or None when the graph is a forest.
///
/// BFS from every vertex; a non-tree edge seen at depths (d(u), d(w)) closes
/// a cycle of length d(u) + d(w) + 1 through the root, and the minimum over
/// all roots is exact.
pub fn girth(g: &SimpleGraph) -> Option<usize> {
    let adj = g.adjacency();
    let mut best = usize::MAX;
    for root in 0..g.vertex_count() {
        let mut dist = vec![usize::MAX; g.vertex_count()];
        let mut parent = vec![usize::MAX; g.vertex_count()];
        dist[root] = 0;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                let w = w as usize;
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    parent[w] = v;
                    queue.push_back(w);
                } else if parent[v] != w {
                    best = best.min(dist[v] + dist[w] + 1);
                }
            }
        }
    }
    (best < usize::MAX).then_some(best)
}

/// Cayley graph of the Pauli group with respect to {X, Y, Z}: 16 vertices
/// indexed by [`crate::pauli::PauliElement::index`], edges {g, g*M}.
pub fn cayley_link_graph() -> SimpleGraph {
    use crate::pauli::{pauli_mul, PauliElement};
    let mut edges = Vec::new();
    for g in PauliElement::all() {
        for m in PauliElement::generators() {
            let h = pauli_mul(g, m);
            edges.push((g.index() as u32, h.index() as u32));
        }
    }
    SimpleGraph::new(16, edges)
}

/// Generalized Petersen graph GP(n, k): outer n-cycle, inner n-cycle with
/// step k, and spokes.
pub fn generalized_petersen(n: u32, k: u32) -> SimpleGraph {
    let mut edges = Vec::new();
    for i in 0..n {
        edges.push((i, (i + 1) % n));
        edges.push((i, n + i));
        edges.push((n + i, n + (i + k) % n));
    }
    SimpleGraph::new(2 * n as usize, edges)
}

/// Exact isomorphism test by backtracking with degree and distance-profile
/// pruning; returns a vertex mapping a -> b when the graphs are isomorphic.
pub fn graph_isomorphic(a: &SimpleGraph, b: &SimpleGraph) -> Option<Vec<usize>> {
    assert!(a.vertex_count() <= 64 && b.vertex_count() <= 64, "graphs too large");
    if a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count() {
        return None;
    }
    let n = a.vertex_count();
    let adj_a = a.adjacency();
    let adj_b = b.adjacency();

    // Signature: (degree, sorted multiset of BFS distances).
    let signature = |g: &SimpleGraph| -> Vec<(usize, Vec<usize>)> {
        (0..g.vertex_count())
            .map(|v| {
                let mut d = g.bfs_distances(v);
                d.sort_unstable();
                (g.adjacency()[v].len(), d)
            })
            .collect()
    };
    let sig_a = signature(a);
    let sig_b = signature(b);
    {
        let mut sa = sig_a.clone();
        let mut sb = sig_b.clone();
        sa.sort();
        sb.sort();
        if sa != sb {
            return None;
        }
    }

    // Order a-vertices to keep the partial map connected where possible.
    let mut order = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    while order.len() < n {
        let next = (0..n)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| adj_a[v].iter().filter(|&&w| placed[w as usize]).count())
            .unwrap();
        placed[next] = true;
        order.push(next);
    }

    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];

    struct Ctx<'a> {
        order: &'a [usize],
        adj_a: &'a [Vec<u32>],
        adj_b: &'a [Vec<u32>],
        sig_a: &'a [(usize, Vec<usize>)],
        sig_b: &'a [(usize, Vec<usize>)],
    }

    fn backtrack(ctx: &Ctx, pos: usize, map: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        let Ctx { order, adj_a, adj_b, sig_a, sig_b } = *ctx;
        if pos == order.len() {
            return true;
        }
        let v = order[pos];
        'candidates: for w in 0..adj_b.len() {
            if used[w] || sig_a[v] != sig_b[w] {
                continue;
            }
            // Every already-mapped neighbor of v must map to a neighbor of w.
            for &u in &adj_a[v] {
                let mu = map[u as usize];
                if mu != usize::MAX && !adj_b[w].contains(&(mu as u32)) {
                    continue 'candidates;
                }
            }
            // And non-edges must stay non-edges.
            for (u, &mu) in map.iter().enumerate() {
                if mu != usize::MAX && !adj_a[v].contains(&(u as u32)) && adj_b[w].contains(&(mu as u32)) {
                    continue 'candidates;
                }
            }
            map[v] = w;
            used[w] = true;
            if backtrack(ctx, pos + 1, map, used) {
                return true;
            }
            map[v] = usize::MAX;
            used[w] = false;
        }
        false
    }

    let ctx = Ctx { order: &order, adj_a: &adj_a, adj_b: &adj_b, sig_a: &sig_a, sig_b: &sig_b };
    if backtrack(&ctx, 0, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}
