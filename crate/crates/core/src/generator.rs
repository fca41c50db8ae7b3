//! Named test graphs and seeded random planar graphs of maximum degree 4.
//!
//! Every planar graph produced here carries a rotation system obtained by
//! construction, never by planarity testing: corpus graphs come from a
//! straight-line drawing, random graphs grow an embedded tree and only ever
//! add chords inside a face.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{faces_of, trace_faces, validate, Embedding, Graph, MAX_DEGREE};

/// Identifier of the RNG recorded in generated documents.
pub const RNG_ALGORITHM: &str = "chacha8";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenError {
    #[error("unknown corpus graph {0:?}")]
    UnknownName(String),
    #[error("invalid generator parameter: {0}")]
    BadParameter(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CorpusName {
    K4,
    C5,
    Cube,
    Dodecahedron,
    Grid(usize, usize),
    Prism(usize),
    Ladder(usize),
    Petersen,
}

impl CorpusName {
    /// The planar entries of the corpus at their default sizes.
    pub fn planar_defaults() -> Vec<CorpusName> {
        use CorpusName::*;
        vec![
            K4,
            C5,
            Cube,
            Dodecahedron,
            Grid(3, 3),
            Grid(4, 4),
            Grid(5, 5),
            Grid(10, 10),
            Prism(3),
            Prism(5),
            Prism(8),
            Ladder(4),
            Ladder(12),
        ]
    }

    pub fn is_planar(&self) -> bool {
        !matches!(self, CorpusName::Petersen)
    }
}

impl fmt::Display for CorpusName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CorpusName::K4 => write!(f, "k4"),
            CorpusName::C5 => write!(f, "c5"),
            CorpusName::Cube => write!(f, "cube"),
            CorpusName::Dodecahedron => write!(f, "dodecahedron"),
            CorpusName::Grid(w, h) => write!(f, "grid({w},{h})"),
            CorpusName::Prism(k) => write!(f, "prism({k})"),
            CorpusName::Ladder(k) => write!(f, "ladder({k})"),
            CorpusName::Petersen => write!(f, "petersen"),
        }
    }
}

impl FromStr for CorpusName {
    type Err = GenError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let name = s.trim().to_ascii_lowercase().replace([' ', '_', '-'], "");
        let unknown = || GenError::UnknownName(s.to_string());
        let args = |prefix: &str| -> Option<Vec<usize>> {
            let inner = name.strip_prefix(prefix)?.strip_prefix('(')?.strip_suffix(')')?;
            inner.split(',').map(|t| t.trim().parse().ok()).collect()
        };
        Ok(match name.as_str() {
            "k4" | "tetrahedron" => CorpusName::K4,
            "c5" => CorpusName::C5,
            "cube" | "q3" => CorpusName::Cube,
            "dodecahedron" => CorpusName::Dodecahedron,
            "petersen" => CorpusName::Petersen,
            "c4ladder" | "ladder" => CorpusName::Ladder(4),
            _ => {
                if let Some(a) = args("grid") {
                    match a[..] {
                        [w, h] if w >= 1 && h >= 1 => CorpusName::Grid(w, h),
                        _ => return Err(unknown()),
                    }
                } else if let Some(a) = args("prism") {
                    match a[..] {
                        [k] if k >= 3 => CorpusName::Prism(k),
                        _ => return Err(unknown()),
                    }
                } else if let Some(a) = args("ladder").or_else(|| args("c4ladder")) {
                    match a[..] {
                        [k] if k >= 2 => CorpusName::Ladder(k),
                        _ => return Err(unknown()),
                    }
                } else {
                    return Err(unknown());
                }
            }
        })
    }
}

/// Rotation system of a straight-line drawing: neighbors sorted clockwise.
fn rotations_from_drawing(g: &Graph, pos: &[(f64, f64)]) -> Embedding {
    let rotations = (0..g.n())
        .map(|v| {
            let mut nbrs: Vec<(f64, usize)> = g
                .neighbors(v)
                .iter()
                .map(|&w| ((pos[w].1 - pos[v].1).atan2(pos[w].0 - pos[v].0), w))
                .collect();
            // decreasing angle is clockwise
            nbrs.sort_by(|a, b| b.0.total_cmp(&a.0));
            nbrs.into_iter().map(|(_, w)| w).collect()
        })
        .collect();
    Embedding::new(rotations)
}

fn polar(r: f64, deg: f64) -> (f64, f64) {
    let t = deg * PI / 180.0;
    (r * t.cos(), r * t.sin())
}

fn ring(offset: usize, k: usize, edges: &mut Vec<(usize, usize)>) {
    for i in 0..k {
        edges.push((offset + i, offset + (i + 1) % k));
    }
}

fn grid(w: usize, h: usize) -> (Graph, Vec<(f64, f64)>) {
    let id = |x: usize, y: usize| y * w + x;
    let mut edges = Vec::new();
    let mut pos = Vec::new();
    for y in 0..h {
        for x in 0..w {
            pos.push((x as f64, -(y as f64)));
            if x + 1 < w {
                edges.push((id(x, y), id(x + 1, y)));
            }
            if y + 1 < h {
                edges.push((id(x, y), id(x, y + 1)));
            }
        }
    }
    (Graph::from_edges(w * h, &edges).expect("grid is simple"), pos)
}

/// Returns a named graph with an embedding for the planar entries.
pub fn corpus(name: &CorpusName) -> Result<(Graph, Option<Embedding>), GenError> {
    let mut edges = Vec::new();
    let (g, pos) = match *name {
        CorpusName::K4 => {
            ring(0, 3, &mut edges);
            edges.extend([(3, 0), (3, 1), (3, 2)]);
            let pos = vec![polar(2.0, 90.0), polar(2.0, 210.0), polar(2.0, 330.0), (0.0, 0.0)];
            (Graph::from_edges(4, &edges), pos)
        }
        CorpusName::C5 => {
            ring(0, 5, &mut edges);
            let pos = (0..5).map(|i| polar(1.0, 72.0 * i as f64)).collect();
            (Graph::from_edges(5, &edges), pos)
        }
        CorpusName::Cube => return corpus(&CorpusName::Prism(4)),
        CorpusName::Prism(k) => {
            if k < 3 {
                return Err(GenError::BadParameter(format!("prism({k})")));
            }
            ring(0, k, &mut edges);
            ring(k, k, &mut edges);
            edges.extend((0..k).map(|i| (i, k + i)));
            let step = 360.0 / k as f64;
            let pos = (0..2 * k)
                .map(|i| polar(if i < k { 2.0 } else { 1.0 }, step * (i % k) as f64))
                .collect();
            (Graph::from_edges(2 * k, &edges), pos)
        }
        CorpusName::Dodecahedron => {
            // outer 5-ring a, middle 10-ring b, inner 5-ring c
            let (a, b, c) = (0, 5, 15);
            ring(a, 5, &mut edges);
            ring(b, 10, &mut edges);
            ring(c, 5, &mut edges);
            for i in 0..5 {
                edges.push((a + i, b + 2 * i));
                edges.push((b + 2 * i + 1, c + i));
            }
            let mut pos = Vec::new();
            pos.extend((0..5).map(|i| polar(4.0, 72.0 * i as f64)));
            pos.extend((0..10).map(|j| polar(3.0, 36.0 * j as f64)));
            pos.extend((0..5).map(|i| polar(2.0, 72.0 * i as f64 + 36.0)));
            (Graph::from_edges(20, &edges), pos)
        }
        CorpusName::Grid(w, h) => {
            if w == 0 || h == 0 {
                return Err(GenError::BadParameter(format!("grid({w},{h})")));
            }
            let (g, pos) = grid(w, h);
            (Ok(g), pos)
        }
        CorpusName::Ladder(k) => {
            if k < 2 {
                return Err(GenError::BadParameter(format!("ladder({k})")));
            }
            let (g, pos) = grid(k, 2);
            (Ok(g), pos)
        }
        CorpusName::Petersen => {
            ring(0, 5, &mut edges);
            for i in 0..5 {
                edges.push((i, 5 + i));
                edges.push((5 + i, 5 + (i + 2) % 5));
            }
            return Ok((Graph::from_edges(10, &edges).expect("simple"), None));
        }
    };
    let g = g.expect("corpus graphs are simple");
    let emb = rotations_from_drawing(&g, &pos);
    debug_assert!(faces_of(&g, &emb).is_ok(), "{name} drawing is not planar");
    Ok((g, Some(emb)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GenMode {
    TreePlusEdges,
    GridPerturb,
}

impl fmt::Display for GenMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GenMode::TreePlusEdges => "tree-plus-edges",
            GenMode::GridPerturb => "grid-perturb",
        })
    }
}

impl FromStr for GenMode {
    type Err = GenError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "tree-plus-edges" | "tree" => Ok(GenMode::TreePlusEdges),
            "grid-perturb" | "grid" => Ok(GenMode::GridPerturb),
            _ => Err(GenError::BadParameter(format!("mode {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenSpec {
    pub seed: u64,
    pub n: usize,
    pub mode: GenMode,
}

impl GenSpec {
    pub fn new(seed: u64, n: usize) -> Self {
        GenSpec { seed, n, mode: GenMode::TreePlusEdges }
    }

    pub fn with_mode(mut self, mode: GenMode) -> Self {
        self.mode = mode;
        self
    }

    /// Metadata block written next to generated graphs.
    pub fn meta(&self) -> serde_json::Value {
        serde_json::json!({
            "seed": self.seed,
            "n": self.n,
            "mode": self.mode.to_string(),
            "rng": RNG_ALGORITHM,
        })
    }
}

/// Connected simple planar graph with maximum degree 4 and its embedding.
pub fn generate(spec: &GenSpec) -> Result<(Graph, Embedding), GenError> {
    if spec.n == 0 {
        return Err(GenError::BadParameter("n must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let (g, emb) = match spec.mode {
        GenMode::TreePlusEdges => tree_plus_edges(spec.n, &mut rng),
        GenMode::GridPerturb => grid_perturb(spec.n, &mut rng),
    };
    debug_assert!(validate(&g, true).is_ok());
    faces_of(&g, &emb).expect("generated embedding is planar by construction");
    Ok((g, emb))
}

/// Adjacency plus rotations, kept in step while the graph grows.
struct EmbeddedBuilder {
    rot: Vec<Vec<usize>>,
}

impl EmbeddedBuilder {
    fn graph(&self) -> Graph {
        Graph::from_adjacency(self.rot.clone())
    }

    fn embedding(&self) -> Embedding {
        Embedding::new(self.rot.clone())
    }

    fn adjacent(&self, u: usize, v: usize) -> bool {
        self.rot[u].contains(&v)
    }

    /// Inserts `w` into the rotation at `v` immediately after `after`.
    fn insert_after(&mut self, v: usize, after: usize, w: usize) {
        let i = self.rot[v].iter().position(|&x| x == after).expect("after in rotation");
        self.rot[v].insert(i + 1, w);
    }
}

fn tree_plus_edges(n: usize, rng: &mut ChaCha8Rng) -> (Graph, Embedding) {
    let mut b = EmbeddedBuilder { rot: vec![Vec::new(); n] };
    for v in 1..n {
        let parent = loop {
            let p = rng.gen_range(0..v);
            if b.rot[p].len() < MAX_DEGREE {
                break p;
            }
        };
        let len = b.rot[parent].len();
        let at = rng.gen_range(0..=len);
        b.rot[parent].insert(at, v);
        b.rot[v].push(parent);
    }
    // chords are inserted inside faces; how many is itself random so the
    // output ranges from sparse trees to nearly 4-regular graphs
    let density: f64 = rng.gen_range(0.3..1.0);
    let target = (density * n as f64 * 1.2) as usize;
    let mut added = 0;
    let mut failures = 0;
    while added < target && failures < 50 {
        if add_chord(&mut b, rng) {
            added += 1;
            failures = 0;
        } else {
            failures += 1;
        }
    }
    (b.graph(), b.embedding())
}

/// Picks a random face and joins two of its corners, if a legal pair exists.
fn add_chord(b: &mut EmbeddedBuilder, rng: &mut ChaCha8Rng) -> bool {
    let g = b.graph();
    let emb = b.embedding();
    let faces = trace_faces(&g, &emb);
    let Some(face) = faces.choose(rng) else { return false };
    let walk = &face.boundary;
    let len = walk.len();
    // corner i sits at walk[i].0 between darts walk[i-1] and walk[i]
    let mut pairs = Vec::new();
    for i in 0..len {
        for j in i + 1..len {
            let (a, c) = (walk[i].0, walk[j].0);
            if a != c
                && b.rot[a].len() < MAX_DEGREE
                && b.rot[c].len() < MAX_DEGREE
                && !b.adjacent(a, c)
            {
                pairs.push((i, j));
            }
        }
    }
    let Some(&(i, j)) = pairs.choose(rng) else { return false };
    let (a, c) = (walk[i].0, walk[j].0);
    let a_prev = walk[(i + len - 1) % len].0;
    let c_prev = walk[(j + len - 1) % len].0;
    b.insert_after(a, a_prev, c);
    b.insert_after(c, c_prev, a);
    true
}

/// Repeatedly deletes vertices of degree at most 2 and one edge of every
/// triangle, then keeps the largest component. The result has minimum
/// degree 3 and no triangles, or is `None` when nothing survives.
/// Deletions keep the rotation system planar.
pub fn triangle_free_core(g: &Graph, emb: &Embedding) -> Option<(Graph, Embedding)> {
    let mut rot: Vec<Vec<usize>> = emb.rotations().to_vec();
    let mut alive = vec![true; g.n()];
    let drop_edge = |rot: &mut Vec<Vec<usize>>, a: usize, b: usize| {
        rot[a].retain(|&x| x != b);
        rot[b].retain(|&x| x != a);
    };
    loop {
        let mut changed = false;
        for v in 0..g.n() {
            if alive[v] && rot[v].len() <= 2 {
                for w in std::mem::take(&mut rot[v]) {
                    rot[w].retain(|&x| x != v);
                }
                alive[v] = false;
                changed = true;
            }
        }
        'tri: for a in (0..g.n()).filter(|&a| alive[a]) {
            for &b in &rot[a] {
                if let Some(&c) = rot[b].iter().find(|&&c| c != a && rot[a].contains(&c)) {
                    drop_edge(&mut rot, b, c);
                    changed = true;
                    break 'tri;
                }
            }
        }
        if !changed {
            break;
        }
    }
    let current = Graph::from_adjacency(rot.clone());
    let comp = current
        .components()
        .into_iter()
        .filter(|c| c.iter().all(|&v| alive[v]))
        .max_by_key(|c| c.len())?;
    let mut index = vec![usize::MAX; g.n()];
    for (i, &v) in comp.iter().enumerate() {
        index[v] = i;
    }
    let rot: Vec<Vec<usize>> = comp.iter().map(|&v| rot[v].iter().map(|&w| index[w]).collect()).collect();
    Some((Graph::from_adjacency(rot.clone()), Embedding::new(rot)))
}

fn grid_perturb(n: usize, rng: &mut ChaCha8Rng) -> (Graph, Embedding) {
    let w = (n as f64).sqrt().ceil() as usize;
    let h = n.div_ceil(w);
    let (full, pos) = grid(w, h);
    // the first n vertices in row-major order induce a connected subgrid
    let keep: Vec<usize> = (0..n).collect();
    let g = full.induced(&keep);
    let mut rot = rotations_from_drawing(&g, &pos[..n]).rotations().to_vec();
    let mut g = g;
    let mut edges = g.edges();
    edges.shuffle(rng);
    let drop_fraction: f64 = rng.gen_range(0.0..0.25);
    let mut to_drop = (drop_fraction * edges.len() as f64) as usize;
    for (u, v) in edges {
        if to_drop == 0 {
            break;
        }
        g.remove_edge(u, v);
        if g.is_connected() {
            rot[u].retain(|&x| x != v);
            rot[v].retain(|&x| x != u);
            to_drop -= 1;
        } else {
            g.add_edge(u, v);
        }
    }
    (g, Embedding::new(rot))
}
