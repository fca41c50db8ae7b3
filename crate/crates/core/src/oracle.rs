//! Exact backtracking search for h-PCF k-colorings.
//!
//! Vertices are colored in reverse degeneracy order. A partial coloring is
//! abandoned as soon as an edge is monochromatic or some vertex can no
//! longer reach `min(h, d(v))` unique colors: colors already seen twice
//! never become unique, and each uncolored neighbor adds at most one.
//! Colors are tried in increasing order and a vertex may open at most one
//! new color, so the first witness found is the lexicographically smallest
//! valid coloring in the search order.

use std::time::{Duration, Instant};

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Color, Coloring, Graph};

pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("search exceeded the budget of {budget} nodes")]
    InstanceTooLarge { budget: u64 },
    #[error("palette size must be between 1 and {}", Color::MAX)]
    BadPalette,
    #[error("graph has no vertices")]
    EmptyGraph,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub backtracks: u64,
    #[serde(skip)]
    pub elapsed: Duration,
}

#[derive(Debug, Clone, Copy)]
pub struct OracleOptions {
    /// Node limit; with `jobs > 1` each root branch has its own.
    pub budget: u64,
    pub jobs: usize,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions { budget: DEFAULT_NODE_BUDGET, jobs: 1 }
    }
}

/// Removes a minimum-degree vertex until none remain (ties by id) and
/// returns the reverse of the removal order.
pub fn degeneracy_order(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !removed[v])
            .min_by_key(|&v| (deg[v], v))
            .expect("vertex left");
        removed[v] = true;
        order.push(v);
        for &w in g.neighbors(v) {
            if !removed[w] {
                deg[w] -= 1;
            }
        }
    }
    order.reverse();
    order
}

struct Search<'a> {
    g: &'a Graph,
    h: usize,
    k: Color,
    order: &'a [usize],
    colors: Vec<Option<Color>>,
    budget: u64,
    nodes: u64,
    backtracks: u64,
}

impl Search<'_> {
    fn feasible_at(&self, w: usize) -> bool {
        let need = self.h.min(self.g.degree(w));
        if need == 0 {
            return true;
        }
        let mut counts = [0u8; 256];
        let mut uncolored = 0;
        for &x in self.g.neighbors(w) {
            match self.colors[x] {
                Some(c) => counts[c as usize] += 1,
                None => uncolored += 1,
            }
        }
        let unique = counts.iter().filter(|&&m| m == 1).count();
        unique + uncolored >= need
    }

    fn consistent(&self, v: usize, c: Color) -> bool {
        if self.g.neighbors(v).iter().any(|&w| self.colors[w] == Some(c)) {
            return false;
        }
        self.g.neighbors(v).iter().all(|&w| self.feasible_at(w))
    }

    fn run(&mut self, depth: usize, max_used: Color) -> Result<bool, OracleError> {
        if depth == self.order.len() {
            return Ok(true);
        }
        let v = self.order[depth];
        let top = (max_used + 1).min(self.k);
        for c in 1..=top {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(OracleError::InstanceTooLarge { budget: self.budget });
            }
            self.colors[v] = Some(c);
            if self.consistent(v, c) && self.run(depth + 1, max_used.max(c))? {
                return Ok(true);
            }
            self.colors[v] = None;
            self.backtracks += 1;
        }
        Ok(false)
    }
}

/// Finds an h-PCF k-coloring if one exists.
pub fn exists_h_pcf_k(
    g: &Graph,
    h: usize,
    k: usize,
    opts: &OracleOptions,
) -> Result<(Option<Coloring>, SearchStats), OracleError> {
    if k == 0 || k > Color::MAX as usize {
        return Err(OracleError::BadPalette);
    }
    let start = Instant::now();
    let k = k as Color;
    let order = degeneracy_order(g);
    let mut stats = SearchStats::default();
    if g.n() == 0 {
        return Ok((Some(Coloring::from_colors(Vec::new(), k)), stats));
    }

    let new_search = || Search {
        g,
        h,
        k,
        order: &order,
        colors: vec![None; g.n()],
        budget: opts.budget,
        nodes: 0,
        backtracks: 0,
    };

    let found = if opts.jobs <= 1 || g.n() < 2 {
        let mut s = new_search();
        let ok = s.run(0, 0)?;
        stats.nodes = s.nodes;
        stats.backtracks = s.backtracks;
        ok.then_some(s.colors)
    } else {
        // the first vertex is always color 1; split on the second vertex
        let first = order[0];
        let branches: Vec<Color> = (1..=2.min(k)).collect();
        // (found, colors, nodes, backtracks) per branch
        type Branch = Result<(bool, Vec<Option<Color>>, u64, u64), OracleError>;
        let results: Vec<Branch> =
            std::thread::scope(|scope| {
                let handles: Vec<_> = branches
                    .iter()
                    .map(|&c| {
                        let mut s = new_search();
                        scope.spawn(move || {
                            s.colors[first] = Some(1);
                            if !s.consistent(first, 1) {
                                return Ok((false, s.colors, 0, 0));
                            }
                            let second = s.order[1];
                            s.colors[second] = Some(c);
                            s.nodes += 2;
                            let ok = s.consistent(second, c) && s.run(2, c.max(1))?;
                            Ok((ok, s.colors, s.nodes, s.backtracks))
                        })
                    })
                    .collect();
                handles.into_iter().map(|h| h.join().expect("worker")).collect()
            });
        // each branch has its own budget, so the outcome does not depend
        // on scheduling; the lowest successful branch wins and a lower
        // branch over budget is an error
        let mut found = None;
        for r in results {
            let (ok, colors, nodes, backtracks) = r?;
            stats.nodes += nodes;
            stats.backtracks += backtracks;
            if ok {
                found = Some(colors);
                break;
            }
        }
        found
    };
    stats.elapsed = start.elapsed();
    let coloring = found.map(|c| Coloring::from_partial(c, k));
    Ok((coloring, stats))
}

/// Smallest palette admitting an h-PCF coloring.
pub fn min_k(g: &Graph, h: usize, opts: &OracleOptions) -> Result<(usize, Coloring, SearchStats), OracleError> {
    if g.n() == 0 {
        return Err(OracleError::EmptyGraph);
    }
    let mut total = SearchStats::default();
    // n colors always suffice: every neighborhood is then rainbow
    for k in 1..=g.n().min(Color::MAX as usize) {
        let (found, stats) = exists_h_pcf_k(g, h, k, opts)?;
        total.nodes += stats.nodes;
        total.backtracks += stats.backtracks;
        total.elapsed += stats.elapsed;
        if let Some(c) = found {
            return Ok((k, c, total));
        }
    }
    Err(OracleError::BadPalette)
}

/// Chromatic number by plain proper-coloring backtracking.
pub fn chromatic_number(g: &Graph) -> usize {
    fn colorable(g: &Graph, order: &[usize], colors: &mut [usize], depth: usize, k: usize, used: usize) -> bool {
        if depth == order.len() {
            return true;
        }
        let v = order[depth];
        for c in 1..=(used + 1).min(k) {
            if g.neighbors(v).iter().all(|&w| colors[w] != c) {
                colors[v] = c;
                if colorable(g, order, colors, depth + 1, k, used.max(c)) {
                    return true;
                }
                colors[v] = 0;
            }
        }
        false
    }
    if g.n() == 0 {
        return 0;
    }
    let order = degeneracy_order(g);
    (1..=g.n())
        .find(|&k| colorable(g, &order, &mut vec![0; g.n()], 0, k, 0))
        .expect("n colors always suffice")
}
