use super::{ConfigMatch, ReductionError, ReductionPlan};
use crate::graph::Graph;

/// Result of deleting a vertex set and joining outside vertices.
pub(crate) struct Reduced {
    pub graph: Graph,
    pub kept: Vec<usize>,
    pub added: Vec<(usize, usize)>,
}

fn relabel(g: &Graph, removed: &[usize], extra: &[(usize, usize)]) -> Reduced {
    let kept: Vec<usize> = (0..g.n()).filter(|v| !removed.contains(v)).collect();
    let mut graph = g.induced(&kept);
    let mut index = vec![usize::MAX; g.n()];
    for (i, &v) in kept.iter().enumerate() {
        index[v] = i;
    }
    let mut added = Vec::new();
    for &(a, b) in extra {
        if graph.add_edge(index[a], index[b]) {
            added.push((a.min(b), a.max(b)));
        }
    }
    added.sort_unstable();
    Reduced { graph, kept, added }
}

/// `G*S`: delete `S` and join every two outside vertices with a common
/// neighbor in `S`. Each vertex of `S` may have at most two outside
/// neighbors.
pub fn s_reduced_graph(g: &Graph, s: &[usize]) -> Result<(Graph, Vec<usize>, Vec<(usize, usize)>), ReductionError> {
    let r = s_reduce(g, s)?;
    Ok((r.graph, r.kept, r.added))
}

pub(crate) fn s_reduce(g: &Graph, s: &[usize]) -> Result<Reduced, ReductionError> {
    let mut joins = Vec::new();
    for &t in s {
        let outside: Vec<usize> = g.neighbors(t).iter().copied().filter(|w| !s.contains(w)).collect();
        match outside[..] {
            [] | [_] => {}
            [a, b] => joins.push((a, b)),
            _ => {
                return Err(ReductionError::SReductionPrecondition { vertex: t, outside: outside.len() });
            }
        }
    }
    Ok(relabel(g, s, &joins))
}

/// Builds the reduced graph prescribed by a configuration.
pub fn reduce(g: &Graph, m: &ConfigMatch) -> Result<ReductionPlan, ReductionError> {
    let s = m.removed_set();
    let r = match *m {
        ConfigMatch::K7 { v, x, u, .. } => relabel(g, &[v], &[(x, u)]),
        _ => s_reduce(g, &s)?,
    };
    Ok(ReductionPlan {
        matched: m.clone(),
        s,
        reduced: r.graph,
        kept: r.kept,
        added_edges: r.added,
    })
}
