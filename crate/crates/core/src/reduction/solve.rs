use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use super::{extend, find_all, is_clean, reduce, ConfigKind, ConfigMatch, ReductionError, PALETTE};
use crate::graph::{validate, Coloring, Graph};
use crate::oracle::{exists_h_pcf_k, OracleOptions};

#[derive(Debug, Clone, Copy)]
pub struct SolveOptions {
    /// Largest graph handed to the oracle when no configuration is found
    /// or every match fails to extend.
    pub fallback_max_n: usize,
    pub oracle: OracleOptions,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { fallback_max_n: 16, oracle: OracleOptions::default() }
    }
}

/// One reduction step, in the ids of the input graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceEntry {
    pub kind: ConfigKind,
    #[serde(rename = "S")]
    pub s: Vec<usize>,
    pub added_edges: Vec<(usize, usize)>,
    pub roles: BTreeMap<&'static str, usize>,
    /// Index of the step whose reduced graph this step was applied to.
    #[serde(skip)]
    pub parent: Option<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    pub coloring: Coloring,
    /// Reduction steps in the order they were applied (pre-order). Steps
    /// abandoned after a failed extension are not listed.
    pub trace: Vec<TraceEntry>,
    /// Number of subgraphs colored by the oracle instead of a reduction.
    pub oracle_fallbacks: usize,
}

/// 2-PCF 9-coloring of a graph with maximum degree at most 4.
pub fn solve(g: &Graph) -> Result<Solution, ReductionError> {
    solve_with(g, &SolveOptions::default())
}

pub fn solve_with(g: &Graph, opts: &SolveOptions) -> Result<Solution, ReductionError> {
    validate(g, true)?;
    // recursion depth grows linearly with n
    let stack = (8 << 20) + g.n() * (16 << 10);
    std::thread::scope(|scope| {
        std::thread::Builder::new()
            .stack_size(stack)
            .spawn_scoped(scope, || {
                let mut st = State { opts, trace: Vec::new(), fallbacks: 0 };
                let ids: Vec<usize> = (0..g.n()).collect();
                let coloring = st.solve_any(g, &ids, None)?;
                Ok(Solution { coloring, trace: st.trace, oracle_fallbacks: st.fallbacks })
            })
            .expect("spawn solver thread")
            .join()
            .expect("solver thread panicked")
    })
}

struct State<'a> {
    opts: &'a SolveOptions,
    trace: Vec<TraceEntry>,
    fallbacks: usize,
}

impl State<'_> {
    /// `ids[i]` is the input-graph id of vertex `i` of `g`.
    fn solve_any(&mut self, g: &Graph, ids: &[usize], parent: Option<usize>) -> Result<Coloring, ReductionError> {
        let comps = g.components();
        if comps.len() <= 1 {
            return self.solve_connected(g, ids, parent);
        }
        let mut phi = Coloring::uncolored(g.n(), PALETTE);
        for comp in comps {
            let sub = g.induced(&comp);
            let sub_ids: Vec<usize> = comp.iter().map(|&v| ids[v]).collect();
            let part = self.solve_connected(&sub, &sub_ids, parent)?;
            for (i, &v) in comp.iter().enumerate() {
                phi.set(v, part.get(i).expect("total coloring"));
            }
        }
        Ok(phi)
    }

    fn solve_connected(&mut self, g: &Graph, ids: &[usize], parent: Option<usize>) -> Result<Coloring, ReductionError> {
        let n = g.n();
        if n <= PALETTE as usize {
            return Ok(Coloring::from_colors((1..=n as u8).collect(), PALETTE));
        }
        let mut last_err = ReductionError::NoConfigurationFound(n);
        for m in find_all(g) {
            match self.reduce_and_extend(g, ids, parent, &m) {
                // a script may fail only on a match that differs from its
                // drawing; the next kind's match is tried instead
                Err(e @ (ReductionError::ExtensionUnsound { .. } | ReductionError::ScriptExhausted { .. }))
                    if !is_clean(g, &m) =>
                {
                    last_err = e;
                }
                other => return other,
            }
        }
        if n > self.opts.fallback_max_n {
            return Err(last_err);
        }
        let (found, _) = exists_h_pcf_k(g, 2, PALETTE as usize, &self.opts.oracle)?;
        self.fallbacks += 1;
        found.ok_or(last_err)
    }

    fn reduce_and_extend(
        &mut self,
        g: &Graph,
        ids: &[usize],
        parent: Option<usize>,
        m: &ConfigMatch,
    ) -> Result<Coloring, ReductionError> {
        let plan = reduce(g, m)?;
        let here = self.trace.len();
        let fallbacks = self.fallbacks;
        self.trace.push(TraceEntry {
            kind: m.kind(),
            s: plan.s.iter().map(|&v| ids[v]).collect(),
            added_edges: plan.added_edges.iter().map(|&(a, b)| (ids[a], ids[b])).collect(),
            roles: m.role_list().into_iter().map(|(r, v)| (r, ids[v])).collect(),
            parent,
        });
        let sub_ids: Vec<usize> = plan.kept.iter().map(|&v| ids[v]).collect();
        let result = self
            .solve_any(&plan.reduced, &sub_ids, Some(here))
            .and_then(|phi_h| extend(g, &plan, &phi_h));
        if result.is_err() {
            self.trace.truncate(here);
            self.fallbacks = fallbacks;
        }
        result
    }
}

/// DOT forest of reduction steps; an edge points from a step to the steps
/// applied to its reduced graph.
pub fn trace_to_dot(trace: &[TraceEntry]) -> String {
    let mut out = String::from("digraph reductions {\n  node [shape=box];\n");
    for (i, t) in trace.iter().enumerate() {
        let s: Vec<String> = t.s.iter().map(|v| v.to_string()).collect();
        let _ = writeln!(out, "  t{i} [label=\"{i}: {} S={{{}}}\"];", t.kind, s.join(","));
    }
    for (i, t) in trace.iter().enumerate() {
        if let Some(p) = t.parent {
            let _ = writeln!(out, "  t{p} -> t{i};");
        }
    }
    out.push_str("}\n");
    out
}
