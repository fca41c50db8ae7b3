//! Graphs, rotation-system embeddings, faces and colorings.
//!
//! Vertices are dense ids `0..n`. Adjacency lists are kept sorted so that
//! every search over neighbors visits them in increasing id order, which is
//! what makes the solver and the generator reproducible.

use std::collections::{BTreeSet, VecDeque};

use thiserror::Error;

/// Maximum degree accepted by the solver.
pub const MAX_DEGREE: usize = 4;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("parallel edge {0}-{1}")]
    ParallelEdge(usize, usize),
    #[error("adjacency is not symmetric: {0} lists {1} but not conversely")]
    AsymmetricAdjacency(usize, usize),
    #[error("vertex {0} has degree {1}, exceeding the maximum of {MAX_DEGREE}")]
    DegreeExceeded(usize, usize),
    #[error("vertex id {0} out of range for a graph on {1} vertices")]
    VertexOutOfRange(usize, usize),
    #[error("rotation at vertex {0} is not a permutation of its neighbors")]
    RotationMismatch(usize),
    #[error("embedding fails Euler's formula: V - E + F = {0}")]
    NonPlanarEmbedding(i64),
    #[error("graph is not connected")]
    Disconnected,
}

/// Simple undirected graph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n] }
    }

    /// Builds a graph from an edge list, rejecting loops, repeated edges
    /// and out-of-range endpoints.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n {
                return Err(GraphError::VertexOutOfRange(u, n));
            }
            if v >= n {
                return Err(GraphError::VertexOutOfRange(v, n));
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(GraphError::ParallelEdge(u.min(w[0]), u.max(w[0])));
            }
        }
        Ok(Graph { adj })
    }

    /// Wraps raw adjacency lists without checking them; see [`validate`].
    pub fn from_adjacency(mut adj: Vec<Vec<usize>>) -> Self {
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph { adj }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (u, list) in self.adj.iter().enumerate() {
            out.extend(list.iter().filter(|&&v| u < v).map(|&v| (u, v)));
        }
        out
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> bool {
        if u == v || self.has_edge(u, v) {
            return false;
        }
        let pos = self.adj[u].binary_search(&v).unwrap_err();
        self.adj[u].insert(pos, v);
        let pos = self.adj[v].binary_search(&u).unwrap_err();
        self.adj[v].insert(pos, u);
        true
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> bool {
        match self.adj[u].binary_search(&v) {
            Ok(i) => {
                self.adj[u].remove(i);
                let j = self.adj[v].binary_search(&u).expect("symmetric adjacency");
                self.adj[v].remove(j);
                true
            }
            Err(_) => false,
        }
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut comps = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Subgraph induced by `vertices`; vertex `i` of the result is
    /// `vertices[i]`.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let adj = vertices
            .iter()
            .map(|&v| {
                let mut list: Vec<usize> = self.adj[v]
                    .iter()
                    .filter_map(|&w| (index[w] != usize::MAX).then_some(index[w]))
                    .collect();
                list.sort_unstable();
                list
            })
            .collect();
        Graph { adj }
    }

    /// BFS distances from `s`; unreachable vertices get `usize::MAX`.
    pub fn distances_from(&self, s: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n()];
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &w in &self.adj[v] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }
}

/// Checks simplicity, symmetry and, if asked, the degree bound.
pub fn validate(g: &Graph, require_max4: bool) -> Result<(), GraphError> {
    let n = g.n();
    for v in 0..n {
        let list = g.neighbors(v);
        for (i, &w) in list.iter().enumerate() {
            if w >= n {
                return Err(GraphError::VertexOutOfRange(w, n));
            }
            if w == v {
                return Err(GraphError::SelfLoop(v));
            }
            if i > 0 && list[i - 1] == w {
                return Err(GraphError::ParallelEdge(v.min(w), v.max(w)));
            }
            if !g.neighbors(w).contains(&v) {
                return Err(GraphError::AsymmetricAdjacency(v, w));
            }
        }
        if require_max4 && list.len() > MAX_DEGREE {
            return Err(GraphError::DegreeExceeded(v, list.len()));
        }
    }
    Ok(())
}

/// `g` plus an edge between every pair of vertices at distance two.
pub fn square(g: &Graph) -> Graph {
    let n = g.n();
    let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    for v in 0..n {
        for &u in g.neighbors(v) {
            adj[v].insert(u);
            for &w in g.neighbors(u) {
                if w != v {
                    adj[v].insert(w);
                }
            }
        }
    }
    Graph {
        adj: adj.into_iter().map(|s| s.into_iter().collect()).collect(),
    }
}

/// Combinatorial embedding: the clockwise cyclic order of neighbors at
/// every vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding {
    rotations: Vec<Vec<usize>>,
}

impl Embedding {
    pub fn new(rotations: Vec<Vec<usize>>) -> Self {
        Embedding { rotations }
    }

    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rotations[v]
    }

    pub fn rotations(&self) -> &[Vec<usize>] {
        &self.rotations
    }

    pub fn rotations_mut(&mut self) -> &mut Vec<Vec<usize>> {
        &mut self.rotations
    }

    /// The neighbor following `u` in the rotation at `v`.
    pub fn next_after(&self, v: usize, u: usize) -> usize {
        let rot = &self.rotations[v];
        let i = rot.iter().position(|&w| w == u).expect("u in rotation of v");
        rot[(i + 1) % rot.len()]
    }

    /// Checks that every rotation is a permutation of the adjacency list.
    pub fn check_against(&self, g: &Graph) -> Result<(), GraphError> {
        if self.rotations.len() != g.n() {
            return Err(GraphError::RotationMismatch(self.rotations.len().min(g.n())));
        }
        for v in 0..g.n() {
            let mut rot = self.rotations[v].clone();
            rot.sort_unstable();
            if rot != g.neighbors(v) {
                return Err(GraphError::RotationMismatch(v));
            }
        }
        Ok(())
    }
}

/// A face given by its boundary walk of directed edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub boundary: Vec<(usize, usize)>,
}

impl Face {
    /// Number of edge-sides on the boundary walk; a bridge counts twice.
    pub fn len(&self) -> usize {
        self.boundary.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boundary.is_empty()
    }

    /// Vertices in walk order, one entry per corner.
    pub fn corners(&self) -> impl Iterator<Item = usize> + '_ {
        self.boundary.iter().map(|&(v, _)| v)
    }
}

/// Traces all faces of a connected embedded graph and checks Euler's formula.
pub fn faces_of(g: &Graph, emb: &Embedding) -> Result<Vec<Face>, GraphError> {
    emb.check_against(g)?;
    if !g.is_connected() || g.n() == 0 {
        return Err(GraphError::Disconnected);
    }
    let faces = trace_faces(g, emb);
    let euler = g.n() as i64 - g.edge_count() as i64 + faces.len() as i64;
    if euler != 2 {
        return Err(GraphError::NonPlanarEmbedding(euler));
    }
    Ok(faces)
}

/// Face tracing without any planarity check. The successor of the dart
/// `(v, u)` is `(u, w)` where `w` follows `v` in the rotation at `u`.
pub(crate) fn trace_faces(g: &Graph, emb: &Embedding) -> Vec<Face> {
    if g.edge_count() == 0 {
        // an isolated vertex sits in one face with an empty boundary
        return (0..g.n().min(1)).map(|_| Face { boundary: Vec::new() }).collect();
    }
    let mut used: Vec<Vec<bool>> = (0..g.n()).map(|v| vec![false; g.degree(v)]).collect();
    let slot = |v: usize, u: usize| g.neighbors(v).binary_search(&u).expect("dart exists");
    let mut faces = Vec::new();
    for v in 0..g.n() {
        for &u in g.neighbors(v) {
            if used[v][slot(v, u)] {
                continue;
            }
            let mut boundary = Vec::new();
            let (mut a, mut b) = (v, u);
            while !used[a][slot(a, b)] {
                used[a][slot(a, b)] = true;
                boundary.push((a, b));
                let c = emb.next_after(b, a);
                a = b;
                b = c;
            }
            faces.push(Face { boundary });
        }
    }
    faces
}

pub type Color = u8;

/// Total or partial assignment of palette colors `1..=k` to vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Coloring {
    colors: Vec<Option<Color>>,
    k: Color,
}

impl Coloring {
    pub fn uncolored(n: usize, k: Color) -> Self {
        Coloring { colors: vec![None; n], k }
    }

    pub fn from_colors(colors: Vec<Color>, k: Color) -> Self {
        Coloring {
            colors: colors.into_iter().map(Some).collect(),
            k,
        }
    }

    pub fn from_partial(colors: Vec<Option<Color>>, k: Color) -> Self {
        Coloring { colors, k }
    }

    pub fn k(&self) -> Color {
        self.k
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn get(&self, v: usize) -> Option<Color> {
        self.colors[v]
    }

    pub fn set(&mut self, v: usize, c: Color) {
        self.colors[v] = Some(c);
    }

    pub fn clear(&mut self, v: usize) {
        self.colors[v] = None;
    }

    pub fn as_slice(&self) -> &[Option<Color>] {
        &self.colors
    }

    pub fn is_total(&self) -> bool {
        self.colors.iter().all(Option::is_some)
    }

    /// Number of distinct colors actually used.
    pub fn colors_used(&self) -> usize {
        self.colors.iter().flatten().collect::<BTreeSet<_>>().len()
    }

    pub fn max_color(&self) -> Color {
        self.colors.iter().flatten().copied().max().unwrap_or(0)
    }

    /// Colors of the assigned vertices among `vertices`.
    pub fn colors_of<'a>(&self, vertices: impl IntoIterator<Item = &'a usize>) -> BTreeSet<Color> {
        vertices.into_iter().filter_map(|&v| self.colors[v]).collect()
    }

    /// True when every edge with both ends assigned is bichromatic.
    pub fn is_proper(&self, g: &Graph) -> bool {
        g.edges().iter().all(|&(u, v)| match (self.colors[u], self.colors[v]) {
            (Some(a), Some(b)) => a != b,
            _ => true,
        })
    }

    pub fn to_vec(&self) -> Vec<Option<Color>> {
        self.colors.clone()
    }
}
