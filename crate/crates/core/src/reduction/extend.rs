//! Coloring the removed set back in, one script per configuration.
//!
//! A script colors the vertices of `S` in a fixed order. At each step it
//! builds the forbidden set named by the argument for that configuration
//! and takes the smallest color outside it. Alongside the set it tracks
//! the bound the counting argument gives for its size; both are logged so
//! tests can confirm that no step ever needs more than eight forbidden
//! colors.

use std::collections::BTreeSet;

use serde::Serialize;

use super::palette::forbidden_base;
use super::{BadCase, ConfigKind, ConfigMatch, PendantDegree, ReductionError, ReductionPlan, PALETTE};
use crate::graph::{Color, Coloring, Graph};
use crate::pcf::{color_counts, is_h_pcf};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StepRecord {
    pub vertex: usize,
    pub color: Color,
    /// Size of the forbidden set actually met.
    pub forbidden: usize,
    /// Bound on that size from the counting argument.
    pub bound: usize,
    /// The step overwrote a color already present.
    pub recolor: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtensionLog {
    pub kind: ConfigKind,
    pub steps: Vec<StepRecord>,
}

/// A forbidden color set plus its counting bound.
struct Forbid {
    set: BTreeSet<Color>,
    bound: usize,
}

struct Script<'a> {
    g: &'a Graph,
    s: &'a [usize],
    /// Reduced-graph coloring lifted to `g`; `S` is uncolored.
    base: Coloring,
    phi: Coloring,
    kind: ConfigKind,
    steps: Vec<StepRecord>,
}

impl<'a> Script<'a> {
    fn forbid(&self) -> Forbid {
        Forbid { set: BTreeSet::new(), bound: 0 }
    }

    fn outside(&self, v: usize) -> Vec<usize> {
        self.g.neighbors(v).iter().copied().filter(|w| !self.s.contains(w)).collect()
    }

    fn col(&self, v: usize) -> Option<Color> {
        self.phi.get(v)
    }

    /// `C(v)`, bounded by three colors per outside neighbor.
    fn base(&self, f: &mut Forbid, v: usize) {
        f.set.extend(forbidden_base(self.g, self.s, &self.base, v));
        f.bound += 3 * self.outside(v).len();
    }

    /// Current colors of the listed vertices.
    fn verts(&self, f: &mut Forbid, vs: &[usize]) {
        let mut distinct: Vec<usize> = vs.to_vec();
        distinct.sort_unstable();
        distinct.dedup();
        f.set.extend(distinct.iter().filter_map(|&v| self.col(v)));
        f.bound += distinct.len();
    }

    /// Colors on the outside neighbors of the listed vertices.
    fn outside_of(&self, f: &mut Forbid, vs: &[usize]) {
        let mut all: Vec<usize> = vs.iter().flat_map(|&v| self.outside(v)).collect();
        all.sort_unstable();
        all.dedup();
        f.set.extend(all.iter().filter_map(|&w| self.col(w)));
        f.bound += all.len();
    }

    fn colors(&self, f: &mut Forbid, cs: &[Color]) {
        f.set.extend(cs.iter().copied());
        f.bound += cs.len();
    }

    fn exhausted(&self, vertex: usize) -> ReductionError {
        ReductionError::ScriptExhausted { kind: self.kind.tag(), vertex }
    }

    fn record(&mut self, vertex: usize, color: Color, forbidden: usize, bound: usize) {
        let recolor = self.phi.get(vertex).is_some();
        self.phi.set(vertex, color);
        self.steps.push(StepRecord { vertex, color, forbidden, bound, recolor });
    }

    /// Colors `v` with the smallest color outside `f`.
    fn avoid(&mut self, v: usize, f: Forbid) -> Result<Color, ReductionError> {
        let c = (1..=PALETTE).find(|c| !f.set.contains(c)).ok_or_else(|| self.exhausted(v))?;
        self.record(v, c, f.set.len(), f.bound);
        Ok(c)
    }

    /// Like `avoid`, but with the size guaranteed by an explicit case test
    /// rather than by counting.
    fn avoid_guarded(&mut self, v: usize, f: Forbid) -> Result<Color, ReductionError> {
        self.avoid(v, Forbid { bound: 8, ..f })
    }

    /// Colors `v` with the smallest color of `allowed` outside `f`.
    fn pick_from(&mut self, v: usize, allowed: &BTreeSet<Color>, f: Forbid) -> Result<Color, ReductionError> {
        let c = allowed.iter().copied().find(|c| !f.set.contains(c)).ok_or_else(|| self.exhausted(v))?;
        let available = allowed.iter().filter(|c| !f.set.contains(c)).count();
        self.record(v, c, PALETTE as usize - available, 8);
        Ok(c)
    }

    /// Fixed assignment prescribed by the argument.
    fn assign(&mut self, v: usize, c: Color) {
        self.record(v, c, 0, 0);
    }

    /// Colors seen exactly once among the colored neighbors of `v`.
    fn unique_around(&self, v: usize) -> Vec<Color> {
        color_counts(&self.phi, self.g.neighbors(v))
            .into_iter()
            .filter_map(|(c, m)| (m == 1).then_some(c))
            .collect()
    }

    /// Up to two smallest distinct colors among the colored `vs`.
    fn two_colors(&self, vs: impl IntoIterator<Item = usize>) -> Vec<Color> {
        let set: BTreeSet<Color> = vs.into_iter().filter_map(|v| self.col(v)).collect();
        set.into_iter().take(2).collect()
    }
}

/// Extends a 2-PCF 9-coloring of `plan.reduced` to `g`.
pub fn extend(g: &Graph, plan: &ReductionPlan, phi_h: &Coloring) -> Result<Coloring, ReductionError> {
    extend_logged(g, plan, phi_h).map(|(c, _)| c)
}

/// [`extend`], also returning the per-step forbidden-set sizes.
pub fn extend_logged(
    g: &Graph,
    plan: &ReductionPlan,
    phi_h: &Coloring,
) -> Result<(Coloring, ExtensionLog), ReductionError> {
    if phi_h.len() != plan.reduced.n() || plan.kept.len() != plan.reduced.n() {
        return Err(ReductionError::ColoringMismatch);
    }
    let mut base = Coloring::uncolored(g.n(), PALETTE);
    for (i, &v) in plan.kept.iter().enumerate() {
        match phi_h.get(i) {
            Some(c) if c <= PALETTE => base.set(v, c),
            _ => return Err(ReductionError::ColoringMismatch),
        }
    }
    let mut sc = Script {
        g,
        s: &plan.s,
        phi: base.clone(),
        base,
        kind: plan.kind(),
        steps: Vec::new(),
    };
    run_script(&mut sc, &plan.matched)?;

    let tag = sc.kind.tag();
    let report = is_h_pcf(g, &sc.phi, 2).map_err(|_| ReductionError::ScriptExhausted { kind: tag, vertex: 0 })?;
    if !report.valid || sc.phi.max_color() > PALETTE {
        return Err(ReductionError::ExtensionUnsound { kind: tag, report });
    }
    Ok((sc.phi, ExtensionLog { kind: sc.kind, steps: sc.steps }))
}

fn run_script(sc: &mut Script<'_>, m: &ConfigMatch) -> Result<(), ReductionError> {
    match *m {
        ConfigMatch::K1 { v } => {
            let mut f = sc.forbid();
            sc.base(&mut f, v);
            sc.avoid(v, f)?;
        }

        ConfigMatch::K2 { case: PendantDegree::Three, x, y, z, x1, y1, z1, .. } => {
            let mut f = sc.forbid();
            sc.base(&mut f, x1);
            sc.verts(&mut f, &[y, z]);
            sc.avoid(x1, f)?;

            // the two unique colors of x1 sit on its outside neighbors
            let unique = sc.unique_around(x1);
            let mut f = sc.forbid();
            sc.verts(&mut f, &[x1]);
            sc.colors(&mut f, &unique[..unique.len().min(2)]);
            sc.verts(&mut f, &[y, z, y1, z1]);
            sc.avoid(x, f)?;
        }

        ConfigMatch::K2 { case: PendantDegree::Four, x, y, z, x1, y1, z1, y2, z2 } => {
            // symmetry: a 3-vertex among y, z is called y
            let (y, z, y1, z1, y2, z2) = if sc.g.degree(y) == 4 && sc.g.degree(z) == 3 {
                (z, y, z1, y1, z2, y2)
            } else {
                (y, z, y1, z1, y2, z2)
            };
            if sc.g.degree(y) == 3 {
                let mut f = sc.forbid();
                sc.base(&mut f, z);
                sc.verts(&mut f, &[x1, y1]);
                sc.avoid(z, f)?;

                let mut f = sc.forbid();
                sc.base(&mut f, y);
                sc.outside_of(&mut f, &[z]);
                sc.verts(&mut f, &[x1, z]);
                sc.avoid(y, f)?;

                let mut f = sc.forbid();
                sc.verts(&mut f, &[x1, y, z, y1]);
                sc.outside_of(&mut f, &[z]);
                sc.avoid(x, f)?;
            } else {
                let mut f = sc.forbid();
                sc.base(&mut f, y);
                sc.verts(&mut f, &[x1]);
                sc.avoid(y, f)?;

                let mut f = sc.forbid();
                sc.base(&mut f, z);
                sc.verts(&mut f, &[y, x1]);
                sc.avoid(z, f)?;

                let mut vs = vec![x1, y, y1, z, z1];
                vs.extend(y2);
                vs.extend(z2);
                let mut f = sc.forbid();
                sc.verts(&mut f, &vs);
                sc.avoid(x, f)?;
            }
        }

        ConfigMatch::K3 { x, y, z, x1, x2, y1, y2, z1, z2 } => k3_script(sc, [x, y, z, x1, x2, y1, y2, z1, z2])?,

        ConfigMatch::K4 { x, y, z, y1 } => {
            let mut f = sc.forbid();
            sc.base(&mut f, x);
            sc.verts(&mut f, &[y1]);
            sc.avoid(x, f)?;

            let mut f = sc.forbid();
            sc.base(&mut f, z);
            sc.verts(&mut f, &[x, y1]);
            sc.avoid(z, f)?;

            let mut f = sc.forbid();
            sc.outside_of(&mut f, &[x, z]);
            sc.verts(&mut f, &[x, y1, z]);
            sc.avoid(y, f)?;
        }

        ConfigMatch::K5 { x, y, z, w, y1, z1 } => {
            let mut l = sc.forbid();
            sc.base(&mut l, x);
            sc.verts(&mut l, &[y1]);

            let mut f = sc.forbid();
            sc.base(&mut f, y);
            sc.outside_of(&mut f, &[x]);
            sc.verts(&mut f, &[z1]);
            if l.set.len() == 7 {
                // reuse a color x already has to avoid
                sc.pick_from(y, &l.set, f)?;
            } else {
                sc.avoid(y, f)?;
            }

            let mut f = sc.forbid();
            sc.base(&mut f, w);
            sc.verts(&mut f, &[y, z1]);
            sc.avoid(w, f)?;

            let mut f = sc.forbid();
            sc.base(&mut f, z);
            sc.outside_of(&mut f, &[w]);
            sc.verts(&mut f, &[y, y1, w]);
            sc.avoid(z, f)?;

            // |C(x) + {y, y1}| <= 7 after the choice of y
            let mut f = sc.forbid();
            sc.base(&mut f, x);
            sc.verts(&mut f, &[y, y1, z]);
            sc.avoid_guarded(x, f)?;
        }

        ConfigMatch::K6 { x, y, z, w, x1, y1, z1, z2, w1, .. } => {
            let mut f = sc.forbid();
            sc.base(&mut f, z);
            sc.verts(&mut f, &[y1, w1]);
            sc.avoid(z, f)?;

            let mut f = sc.forbid();
            sc.base(&mut f, w);
            sc.verts(&mut f, &[z, x1]);
            sc.avoid(w, f)?;

            let mut f = sc.forbid();
            sc.base(&mut f, y);
            sc.verts(&mut f, &[x1, w, z, z1, z2]);
            sc.avoid(y, f)?;

            let mut f = sc.forbid();
            sc.base(&mut f, x);
            sc.verts(&mut f, &[y, y1, z, w, w1]);
            sc.avoid(x, f)?;
        }

        ConfigMatch::K7 { v, x, y, z, u, w, z1 } => k7_script(sc, [v, x, y, z, u, w, z1])?,

        ConfigMatch::K8 { x, y, z, u, v, y1, u1, .. } => {
            let mut f = sc.forbid();
            sc.base(&mut f, v);
            sc.verts(&mut f, &[u1]);
            sc.avoid(v, f)?;

            let mut f = sc.forbid();
            sc.base(&mut f, x);
            sc.verts(&mut f, &[v, y1]);
            sc.avoid(x, f)?;

            let mut f = sc.forbid();
            sc.base(&mut f, z);
            sc.verts(&mut f, &[u1, v, y1, x]);
            sc.avoid(z, f)?;

            let mut f = sc.forbid();
            sc.base(&mut f, y);
            sc.outside_of(&mut f, &[x, z]);
            sc.verts(&mut f, &[z, x]);
            sc.avoid(y, f)?;

            // u1 keeps three distinct colors in the reduced graph
            let mut f = sc.forbid();
            sc.outside_of(&mut f, &[v, z]);
            sc.verts(&mut f, &[y, z, v, u1]);
            sc.avoid(u, f)?;
        }

        ConfigMatch::K9 { x, y, z, u, v, x1, z1, v1 } => {
            let mut f = sc.forbid();
            sc.base(&mut f, y);
            sc.verts(&mut f, &[x1]);
            sc.avoid(y, f)?;

            let mut f = sc.forbid();
            sc.base(&mut f, u);
            sc.verts(&mut f, &[y, v1]);
            sc.avoid(u, f)?;

            let mut f = sc.forbid();
            sc.base(&mut f, z1);
            sc.verts(&mut f, &[y, u]);
            sc.avoid(z1, f)?;

            let mut f = sc.forbid();
            sc.outside_of(&mut f, &[z1]);
            sc.verts(&mut f, &[y, u, z1]);
            sc.avoid(z, f)?;

            let mut f = sc.forbid();
            sc.outside_of(&mut f, &[y]);
            sc.verts(&mut f, &[y, u, v1, x1]);
            sc.avoid(x, f)?;

            let mut f = sc.forbid();
            sc.outside_of(&mut f, &[u]);
            sc.verts(&mut f, &[u, v1, x, x1, y]);
            sc.avoid(v, f)?;
        }

        ConfigMatch::K10 { case: BadCase::Middle, x, y, z, u, v, x1, z1, v1, u1 } => {
            let mut f = sc.forbid();
            sc.base(&mut f, z1);
            sc.outside_of(&mut f, &[u1]);
            sc.avoid(z1, f)?;

            let mut f = sc.forbid();
            sc.base(&mut f, y);
            sc.verts(&mut f, &[x1, z1]);
            sc.avoid(y, f)?;

            let mut f = sc.forbid();
            sc.base(&mut f, u);
            sc.outside_of(&mut f, &[u1]);
            sc.verts(&mut f, &[v1, y, z1]);
            sc.avoid(u, f)?;

            let mut f = sc.forbid();
            sc.base(&mut f, u1);
            sc.verts(&mut f, &[z1, u]);
            sc.avoid(u1, f)?;

            let mut f = sc.forbid();
            sc.outside_of(&mut f, &[z1]);
            sc.verts(&mut f, &[z1, u, y, u1]);
            sc.avoid(z, f)?;

            let mut f = sc.forbid();
            sc.outside_of(&mut f, &[y]);
            sc.verts(&mut f, &[y, x1, u1, z, v1, u]);
            sc.avoid(x, f)?;

            let mut f = sc.forbid();
            sc.verts(&mut f, &[x, x1, y, u, u1, z, v1]);
            sc.avoid(v, f)?;
        }

        ConfigMatch::K10 { case: BadCase::Side, x, y, z, u, v, x1, z1, v1, u1 } => {
            let mut f = sc.forbid();
            sc.base(&mut f, y);
            sc.verts(&mut f, &[z1, x1]);
            sc.avoid(y, f)?;

            let mut f = sc.forbid();
            sc.base(&mut f, v1);
            sc.outside_of(&mut f, &[u1]);
            sc.avoid(v1, f)?;

            let mut f = sc.forbid();
            sc.base(&mut f, u);
            sc.outside_of(&mut f, &[u1]);
            sc.verts(&mut f, &[y, z1, v1]);
            sc.avoid(u, f)?;

            let mut f = sc.forbid();
            sc.base(&mut f, u1);
            sc.verts(&mut f, &[u, v1]);
            sc.avoid(u1, f)?;

            let mut f = sc.forbid();
            sc.outside_of(&mut f, &[v1]);
            sc.verts(&mut f, &[v1, u1, u, x1, y]);
            sc.avoid(v, f)?;

            let mut f = sc.forbid();
            sc.base(&mut f, x);
            sc.verts(&mut f, &[v, v1, u, y]);
            sc.avoid(x, f)?;

            let mut f = sc.forbid();
            sc.outside_of(&mut f, &[y]);
            sc.verts(&mut f, &[y, z1, u, u1, v]);
            sc.avoid(z, f)?;
        }
    }
    Ok(())
}

fn k3_script(sc: &mut Script<'_>, roles: [usize; 9]) -> Result<(), ReductionError> {
    let [x, y, z, x1, x2, mut y1, mut y2, z1, z2] = roles;
    let mut c_prime = sc.forbid();
    sc.base(&mut c_prime, x);
    sc.verts(&mut c_prime, &[y1, y2, z1, z2]);

    if c_prime.set.len() <= 8 {
        sc.avoid_guarded(x, c_prime)?;

        let mut fy = sc.forbid();
        sc.base(&mut fy, y);
        sc.verts(&mut fy, &[x, x1, x2]);
        let mut fz = sc.forbid();
        sc.base(&mut fz, z);
        sc.verts(&mut fz, &[x, x1, x2]);

        if fy.set.len() <= 8 {
            sc.avoid_guarded(y, fy)?;
            let mut f = sc.forbid();
            sc.base(&mut f, z);
            sc.verts(&mut f, &[x, y]);
            sc.avoid(z, f)?;
        } else if fz.set.len() <= 8 {
            sc.avoid_guarded(z, fz)?;
            let mut f = sc.forbid();
            sc.base(&mut f, y);
            sc.verts(&mut f, &[x, z]);
            sc.avoid(y, f)?;
        } else {
            // both full: C(y) = C(z) is the complement of {x, x1, x2};
            // move x's color to y, x1's color to z, recolor x
            let old_x = sc.col(x).expect("x colored");
            let c_x1 = sc.col(x1).expect("x1 outside S");
            sc.assign(y, old_x);
            sc.assign(z, c_x1);
            let mut f = sc.forbid();
            sc.base(&mut f, x);
            sc.verts(&mut f, &[y, z]);
            sc.avoid(x, f)?;
        }
        return Ok(());
    }

    // |C'| = 9: one of y1, y2 has a color seen once around the triangle
    let mut around: Vec<usize> = [x1, x2, x, y, z]
        .iter()
        .flat_map(|&a| sc.g.neighbors(a).iter().copied())
        .filter(|w| !sc.s.contains(w))
        .collect();
    around.sort_unstable();
    around.dedup();
    let counts = color_counts(&sc.phi, &around);
    let once = |v: usize| sc.col(v).is_some_and(|c| counts.get(&c) == Some(&1));
    if !once(y1) {
        if once(y2) {
            std::mem::swap(&mut y1, &mut y2);
        } else {
            return Err(sc.exhausted(x));
        }
    }
    let c_y1 = sc.col(y1).expect("y1 outside S");
    sc.assign(x, c_y1);

    let mut f = sc.forbid();
    sc.base(&mut f, z);
    sc.verts(&mut f, &[y1, y2]);
    sc.avoid(z, f)?;

    let mut f = sc.forbid();
    sc.base(&mut f, y);
    if sc.col(z) != sc.col(x1) && sc.col(z) != sc.col(x2) {
        sc.verts(&mut f, &[z]);
    } else {
        sc.verts(&mut f, &[x1, x2]);
    }
    sc.avoid(y, f)?;
    Ok(())
}

fn k7_script(sc: &mut Script<'_>, roles: [usize; 7]) -> Result<(), ReductionError> {
    let [v, mut x, mut y, z, mut u, mut w, z1] = roles;
    let pair_near = |sc: &Script<'_>, a: usize| sc.two_colors(sc.g.neighbors(a).iter().copied().filter(|&b| b != v));

    let (cx, cz, cu) = (sc.col(x), sc.col(z), sc.col(u));
    if cx != cz && cz != cu && cx != cu {
        let mut f = sc.forbid();
        sc.verts(&mut f, &[x, z, u]);
        let (ab, gd) = (pair_near(sc, x), pair_near(sc, u));
        sc.colors(&mut f, &ab);
        sc.colors(&mut f, &gd);
        sc.avoid(v, f)?;
        return Ok(());
    }

    // two colors on N(v); by symmetry x shares its color with z
    if cx != cz {
        std::mem::swap(&mut x, &mut u);
        std::mem::swap(&mut y, &mut w);
    }
    let ab = pair_near(sc, x);
    let gd = pair_near(sc, u);

    let around_w: BTreeSet<Color> = sc.phi.colors_of(sc.g.neighbors(w));
    let a: Vec<Color> = around_w
        .iter()
        .copied()
        .filter(|&c| Some(c) != sc.col(u) && Some(c) != sc.col(z))
        .take(1)
        .collect();
    let bc = sc.two_colors(sc.g.neighbors(z1).iter().copied().filter(|&b| b != z));

    let mut f = sc.forbid();
    sc.verts(&mut f, &[x, u, y, z1, w]);
    sc.colors(&mut f, &bc);
    sc.colors(&mut f, &a);
    sc.avoid(z, f)?;

    let mut f = sc.forbid();
    sc.verts(&mut f, &[x, z, u]);
    sc.colors(&mut f, &ab);
    sc.colors(&mut f, &gd);
    sc.avoid(v, f)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generator::{corpus, CorpusName};
    use crate::oracle::{exists_h_pcf_k, OracleOptions};
    use crate::reduction::{find_configuration, reduce};

    #[test]
    fn c5_vertex_extension() {
        let (g, _) = corpus(&CorpusName::C5).unwrap();
        let m = find_configuration(&g).unwrap();
        let plan = reduce(&g, &m).unwrap();
        // every 2-PCF coloring of C4 found with 4 colors, relabelled
        let (phi_h, _) = exists_h_pcf_k(&plan.reduced, 2, 4, &OracleOptions::default()).unwrap();
        let (phi, log) = extend_logged(&g, &plan, &phi_h.unwrap()).unwrap();
        assert!(is_h_pcf(&g, &phi, 2).unwrap().valid);
        assert_eq!(log.steps.len(), 1);
        assert!(log.steps[0].forbidden <= 6 && log.steps[0].bound == 6);
    }

    #[test]
    fn cube_k5_extension() {
        let (g, _) = corpus(&CorpusName::Cube).unwrap();
        let m = find_configuration(&g).unwrap();
        let plan = reduce(&g, &m).unwrap();
        assert_eq!(plan.reduced.n(), 4);
        let (phi_h, _) = exists_h_pcf_k(&plan.reduced, 2, 9, &OracleOptions::default()).unwrap();
        let phi_h = phi_h.unwrap();
        let (phi, log) = extend_logged(&g, &plan, &phi_h).unwrap();
        assert!(is_h_pcf(&g, &phi, 2).unwrap().valid);
        assert!(phi.max_color() <= 9);
        for (i, &v) in plan.kept.iter().enumerate() {
            assert_eq!(phi.get(v), phi_h.get(i));
        }
        assert!(log.steps.iter().all(|s| s.forbidden <= s.bound && s.bound <= 8));
    }

    #[test]
    fn wrong_length_rejected() {
        let (g, _) = corpus(&CorpusName::C5).unwrap();
        let plan = reduce(&g, &find_configuration(&g).unwrap()).unwrap();
        assert_eq!(
            extend(&g, &plan, &Coloring::from_colors(vec![1, 2], 9)),
            Err(ReductionError::ColoringMismatch)
        );
    }
}
