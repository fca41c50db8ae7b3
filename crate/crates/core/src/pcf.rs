//! Verification of h-PCF colorings.
//!
//! A proper coloring is h-PCF when every vertex `v` sees at least
//! `min(h, d(v))` colors that occur exactly once on its neighborhood.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Color, Coloring, Graph};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PcfError {
    #[error("neighbor {neighbor} of vertex {vertex} is not colored")]
    UnassignedNeighbor { vertex: usize, neighbor: usize },
    #[error("coloring leaves vertex {0} unassigned")]
    PartialColoring(usize),
    #[error("coloring has {got} entries for a graph on {want} vertices")]
    LengthMismatch { got: usize, want: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ViolationKind {
    ImproperEdge,
    TooFewUnique,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub vertex: usize,
    pub kind: ViolationKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub neighbor: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unique: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub required: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PcfReport {
    pub valid: bool,
    pub violations: Vec<Violation>,
}

/// Multiplicity of each color over the assigned vertices of `vertices`.
pub(crate) fn color_counts<'a>(
    phi: &Coloring,
    vertices: impl IntoIterator<Item = &'a usize>,
) -> BTreeMap<Color, usize> {
    let mut counts = BTreeMap::new();
    for &w in vertices {
        if let Some(c) = phi.get(w) {
            *counts.entry(c).or_insert(0) += 1;
        }
    }
    counts
}

/// Colors that appear on exactly one neighbor of `v`.
pub fn unique_colors(g: &Graph, phi: &Coloring, v: usize) -> Result<BTreeSet<Color>, PcfError> {
    if let Some(&w) = g.neighbors(v).iter().find(|&&w| phi.get(w).is_none()) {
        return Err(PcfError::UnassignedNeighbor { vertex: v, neighbor: w });
    }
    Ok(color_counts(phi, g.neighbors(v))
        .into_iter()
        .filter_map(|(c, m)| (m == 1).then_some(c))
        .collect())
}

/// Checks properness and the unique-color requirement at every vertex,
/// listing every failure.
pub fn is_h_pcf(g: &Graph, phi: &Coloring, h: usize) -> Result<PcfReport, PcfError> {
    if phi.len() != g.n() {
        return Err(PcfError::LengthMismatch { got: phi.len(), want: g.n() });
    }
    if let Some(v) = (0..g.n()).find(|&v| phi.get(v).is_none()) {
        return Err(PcfError::PartialColoring(v));
    }
    let mut violations = Vec::new();
    for (u, v) in g.edges() {
        if phi.get(u) == phi.get(v) {
            violations.push(Violation {
                vertex: u,
                kind: ViolationKind::ImproperEdge,
                neighbor: Some(v),
                unique: None,
                required: None,
            });
        }
    }
    for v in 0..g.n() {
        let required = h.min(g.degree(v));
        let unique = unique_colors(g, phi, v)?.len();
        if unique < required {
            violations.push(Violation {
                vertex: v,
                kind: ViolationKind::TooFewUnique,
                neighbor: None,
                unique: Some(unique),
                required: Some(required),
            });
        }
    }
    Ok(PcfReport { valid: violations.is_empty(), violations })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generator::{corpus, CorpusName};
    use crate::graph::square;
    use proptest::prelude::*;

    fn c5() -> Graph {
        corpus(&CorpusName::C5).unwrap().0
    }

    #[test]
    fn unique_color_examples() {
        let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let phi = Coloring::from_colors(vec![1, 3, 2], 3);
        assert_eq!(unique_colors(&p3, &phi, 1).unwrap(), BTreeSet::from([1, 2]));

        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let phi = Coloring::from_colors(vec![1, 2, 2, 3], 3);
        assert_eq!(unique_colors(&star, &phi, 0).unwrap(), BTreeSet::from([3]));

        let phi = Coloring::from_colors(vec![1, 2, 1, 2, 3], 3);
        // vertex 1 has neighbors 0 and 2, both colored 1
        assert!(unique_colors(&c5(), &phi, 1).unwrap().is_empty());
    }

    #[test]
    fn unassigned_neighbor() {
        let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let phi = Coloring::from_partial(vec![Some(1), None, Some(2)], 3);
        assert_eq!(
            unique_colors(&p3, &phi, 0),
            Err(PcfError::UnassignedNeighbor { vertex: 0, neighbor: 1 })
        );
        assert_eq!(is_h_pcf(&p3, &phi, 2), Err(PcfError::PartialColoring(1)));
    }

    #[test]
    fn report_examples() {
        let k3 = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(is_h_pcf(&k3, &Coloring::from_colors(vec![1, 2, 3], 3), 2).unwrap().valid);

        let report = is_h_pcf(&c5(), &Coloring::from_colors(vec![1, 2, 1, 2, 3], 3), 2).unwrap();
        assert!(!report.valid);
        assert!(report.violations.iter().any(|v| v.vertex == 1
            && v.kind == ViolationKind::TooFewUnique
            && v.unique == Some(0)
            && v.required == Some(2)));
    }

    #[test]
    fn improper_edges_all_listed() {
        let k3 = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let report = is_h_pcf(&k3, &Coloring::from_colors(vec![1, 1, 1], 1), 0).unwrap();
        let improper = report
            .violations
            .iter()
            .filter(|v| v.kind == ViolationKind::ImproperEdge)
            .count();
        assert_eq!(improper, 3);
        let json = serde_json::to_string(&report.violations[0]).unwrap();
        assert_eq!(json, r#"{"vertex":0,"kind":"ImproperEdge","neighbor":1}"#);
    }

    fn arb_graph_coloring(max_n: usize) -> impl Strategy<Value = (Graph, Coloring)> {
        (1..=max_n).prop_flat_map(|n| {
            let pairs = n * (n - 1) / 2;
            (
                proptest::collection::vec(any::<bool>(), pairs),
                proptest::collection::vec(1u8..=5, n),
            )
                .prop_map(move |(mask, colors)| {
                    let mut edges = Vec::new();
                    let mut i = 0;
                    for u in 0..n {
                        for v in u + 1..n {
                            if mask[i] {
                                edges.push((u, v));
                            }
                            i += 1;
                        }
                    }
                    let g = Graph::from_edges(n, &edges).unwrap();
                    (g, Coloring::from_colors(colors, 5))
                })
        })
    }

    proptest! {
        #[test]
        fn h0_is_properness((g, phi) in arb_graph_coloring(7)) {
            prop_assert_eq!(is_h_pcf(&g, &phi, 0).unwrap().valid, phi.is_proper(&g));
        }

        #[test]
        fn monotone_in_h((g, phi) in arb_graph_coloring(7), h in 1usize..5) {
            if is_h_pcf(&g, &phi, h).unwrap().valid {
                prop_assert!(is_h_pcf(&g, &phi, h - 1).unwrap().valid);
            }
        }

        #[test]
        fn three_pcf_is_square_coloring((g, phi) in arb_graph_coloring(7)) {
            prop_assume!(g.max_degree() <= 4);
            prop_assert_eq!(is_h_pcf(&g, &phi, 3).unwrap().valid, phi.is_proper(&square(&g)));
        }
    }
}
