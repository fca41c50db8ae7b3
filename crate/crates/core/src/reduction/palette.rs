//! Forbidden color sets for vertices of `S`.
//!
//! For an outside vertex `u` next to `S`, `boundary_palette` is the set of
//! colors a vertex of `S` adjacent to `u` must avoid so that `u` keeps two
//! unique colors and properness holds. `forbidden_base` unions it over the
//! outside neighbors of a vertex of `S`.

use std::collections::BTreeSet;

use super::ReductionError;
use crate::graph::{Color, Coloring, Graph};
use crate::pcf::color_counts;

fn in_set(s: &[usize], v: usize) -> bool {
    s.contains(&v)
}

/// Neighbors of `u` in the S-reduced graph, computed from `g` and `S`.
pub fn reduced_neighbors(g: &Graph, s: &[usize], u: usize) -> Vec<usize> {
    let mut out: BTreeSet<usize> = g.neighbors(u).iter().copied().filter(|&w| !in_set(s, w)).collect();
    for &t in g.neighbors(u).iter().filter(|&&t| in_set(s, t)) {
        out.extend(g.neighbors(t).iter().copied().filter(|&w| w != u && !in_set(s, w)));
    }
    out.into_iter().collect()
}

/// `B_S(u)` under the coloring `phi` of the reduced graph (lifted to the
/// ids of `g`; vertices of `S` are ignored).
///
/// When the outside neighbors of `u` carry distinct colors the set is
/// `{phi(u)}` plus two unique colors of `u` in the reduced graph. Unique
/// colors that also occur on `N_G(u) - S` are taken first: those are the
/// ones that survive once the neighbors of `u` in `S` are colored.
pub fn boundary_palette(
    g: &Graph,
    s: &[usize],
    phi: &Coloring,
    u: usize,
) -> Result<BTreeSet<Color>, ReductionError> {
    if in_set(s, u) || !g.neighbors(u).iter().any(|&w| in_set(s, w)) {
        return Err(ReductionError::NotOnBoundary(u));
    }
    let outside: Vec<usize> = g.neighbors(u).iter().copied().filter(|&w| !in_set(s, w)).collect();
    let outside_colors = color_counts(phi, &outside);
    let distinct = outside_colors.values().all(|&m| m == 1);

    let mut palette = BTreeSet::new();
    palette.extend(phi.get(u));
    if distinct {
        let reduced = reduced_neighbors(g, s, u);
        let unique: Vec<Color> = color_counts(phi, &reduced)
            .into_iter()
            .filter_map(|(c, m)| (m == 1).then_some(c))
            .collect();
        let (near, far): (Vec<Color>, Vec<Color>) =
            unique.into_iter().partition(|c| outside_colors.contains_key(c));
        palette.extend(near.into_iter().chain(far).take(2));
    } else {
        palette.extend(outside_colors.keys());
    }
    Ok(palette)
}

/// `C(v)`: union of `boundary_palette` over the outside neighbors of `v`.
pub fn forbidden_base(g: &Graph, s: &[usize], phi: &Coloring, v: usize) -> BTreeSet<Color> {
    let mut out = BTreeSet::new();
    for &u in g.neighbors(v).iter().filter(|&&u| !in_set(s, u)) {
        out.extend(boundary_palette(g, s, phi, u).expect("u is adjacent to v in S"));
    }
    out
}
