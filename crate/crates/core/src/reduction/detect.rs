//! Locating reducible configurations.
//!
//! Each finder enumerates every role assignment of its shape and keeps the
//! smallest role tuple, so results do not depend on adjacency iteration
//! order. Finders check the degree pattern each script relies on, even
//! where earlier configurations being absent would already imply it.

use super::reduce::s_reduce;
use super::{BadCase, ConfigKind, ConfigMatch, PendantDegree};
use crate::graph::Graph;

/// First configuration in priority order `K1 < K2 < ... < K10`.
pub fn find_configuration(g: &Graph) -> Option<ConfigMatch> {
    ConfigKind::ALL.iter().find_map(|&k| find_kind(g, k))
}

/// The preferred match of every kind present in `g`, ignoring priority.
pub fn find_all(g: &Graph) -> Vec<ConfigMatch> {
    ConfigKind::ALL.iter().filter_map(|&k| find_kind(g, k)).collect()
}

/// The preferred match of one kind: the smallest role tuple among clean
/// matches, or among all matches when none is clean.
pub fn find_kind(g: &Graph, kind: ConfigKind) -> Option<ConfigMatch> {
    let mut best: Option<((bool, Vec<usize>), ConfigMatch)> = None;
    let mut offer = |m: ConfigMatch| {
        let key = (!is_clean(g, &m), sort_key(&m));
        if best.as_ref().is_none_or(|(k, _)| key < *k) {
            best = Some((key, m));
        }
    };
    match kind {
        ConfigKind::K1 => {
            if let Some(v) = (0..g.n()).find(|&v| g.degree(v) <= 2) {
                offer(ConfigMatch::K1 { v });
            }
        }
        ConfigKind::K2 => triangles_with_three(g, &mut offer),
        ConfigKind::K3 => triangles_of_fours(g, &mut offer),
        ConfigKind::K4 => three_paths(g, &mut offer),
        ConfigKind::K5 => four_paths(g, &mut offer),
        ConfigKind::K6 => squares_with_adjacent_threes(g, &mut offer),
        ConfigKind::K7 => double_squares(g, &mut offer),
        ConfigKind::K8 | ConfigKind::K9 | ConfigKind::K10 => pentagons(g, kind, &mut offer),
    }
    best.map(|(_, m)| m)
}

fn sort_key(m: &ConfigMatch) -> Vec<usize> {
    let mut key = Vec::with_capacity(10);
    if let ConfigMatch::K10 { case, .. } = m {
        key.push(*case as usize);
    }
    key.extend(m.role_list().into_iter().map(|(_, v)| v));
    key
}

/// Edges inside the removed set as drawn for each configuration.
fn drawn_edges(m: &ConfigMatch) -> usize {
    match m {
        ConfigMatch::K1 { .. } | ConfigMatch::K7 { .. } => 0,
        ConfigMatch::K2 { case: PendantDegree::Three, .. } => 1,
        ConfigMatch::K2 { .. } | ConfigMatch::K3 { .. } | ConfigMatch::K5 { .. } => 3,
        ConfigMatch::K4 { .. } => 2,
        ConfigMatch::K6 { .. } => 4,
        ConfigMatch::K8 { .. } => 5,
        ConfigMatch::K9 { .. } => 6,
        ConfigMatch::K10 { .. } => 8,
    }
}

/// A match looks exactly like its drawing: the removed set spans no
/// extra edges and no outside vertex sees two removed vertices.
pub fn is_clean(g: &Graph, m: &ConfigMatch) -> bool {
    let s = m.removed_set();
    let inner = s.iter().map(|&a| g.neighbors(a).iter().filter(|b| s.contains(b)).count()).sum::<usize>() / 2;
    if inner != drawn_edges(m) {
        return false;
    }
    let mut seen = Vec::new();
    for &a in &s {
        for &b in g.neighbors(a).iter().filter(|b| !s.contains(b)) {
            if seen.contains(&b) {
                return false;
            }
            seen.push(b);
        }
    }
    true
}

fn others(g: &Graph, v: usize, exclude: &[usize]) -> Vec<usize> {
    g.neighbors(v).iter().copied().filter(|w| !exclude.contains(w)).collect()
}

fn distinct(vs: &[usize]) -> bool {
    vs.iter().enumerate().all(|(i, a)| !vs[i + 1..].contains(a))
}

fn s_condition_holds(g: &Graph, m: &ConfigMatch) -> bool {
    s_reduce(g, &m.removed_set()).is_ok()
}

fn triangles_with_three(g: &Graph, offer: &mut impl FnMut(ConfigMatch)) {
    for x in (0..g.n()).filter(|&x| g.degree(x) == 3) {
        for &y in g.neighbors(x) {
            for &z in g.neighbors(x) {
                if y == z || !g.has_edge(y, z) || g.degree(y) < 3 || g.degree(z) < 3 {
                    continue;
                }
                let x1 = others(g, x, &[y, z])[0];
                let case = match g.degree(x1) {
                    3 => PendantDegree::Three,
                    4 => PendantDegree::Four,
                    _ => continue,
                };
                let ys = others(g, y, &[x, z]);
                let zs = others(g, z, &[x, y]);
                offer(ConfigMatch::K2 {
                    case,
                    x,
                    y,
                    z,
                    x1,
                    y1: ys[0],
                    z1: zs[0],
                    y2: ys.get(1).copied(),
                    z2: zs.get(1).copied(),
                });
            }
        }
    }
}

fn triangles_of_fours(g: &Graph, offer: &mut impl FnMut(ConfigMatch)) {
    let four = |v: usize| g.degree(v) == 4;
    for x in (0..g.n()).filter(|&x| four(x)) {
        for &y in g.neighbors(x).iter().filter(|&&y| four(y)) {
            for &z in g.neighbors(x).iter().filter(|&&z| z != y && four(z) && g.has_edge(y, z)) {
                let (xs, ys, zs) = (others(g, x, &[y, z]), others(g, y, &[x, z]), others(g, z, &[x, y]));
                offer(ConfigMatch::K3 {
                    x,
                    y,
                    z,
                    x1: xs[0],
                    x2: xs[1],
                    y1: ys[0],
                    y2: ys[1],
                    z1: zs[0],
                    z2: zs[1],
                });
            }
        }
    }
}

fn three_paths(g: &Graph, offer: &mut impl FnMut(ConfigMatch)) {
    let three = |v: usize| g.degree(v) == 3;
    for y in (0..g.n()).filter(|&y| three(y)) {
        let nb = g.neighbors(y);
        for &x in nb.iter().filter(|&&x| three(x)) {
            for &z in nb.iter().filter(|&&z| z != x && three(z)) {
                let y1 = others(g, y, &[x, z])[0];
                if g.degree(y1) == 4 {
                    offer(ConfigMatch::K4 { x, y, z, y1 });
                }
            }
        }
    }
}

fn four_paths(g: &Graph, offer: &mut impl FnMut(ConfigMatch)) {
    let three = |v: usize| g.degree(v) == 3;
    for y in (0..g.n()).filter(|&y| three(y)) {
        for &z in g.neighbors(y).iter().filter(|&&z| three(z)) {
            for &x in g.neighbors(y).iter().filter(|&&x| x != z && three(x)) {
                for &w in g.neighbors(z).iter().filter(|&&w| three(w)) {
                    if !distinct(&[x, y, z, w]) {
                        continue;
                    }
                    let y1 = others(g, y, &[x, z])[0];
                    let z1 = others(g, z, &[y, w])[0];
                    offer(ConfigMatch::K5 { x, y, z, w, y1, z1 });
                }
            }
        }
    }
}

fn squares_with_adjacent_threes(g: &Graph, offer: &mut impl FnMut(ConfigMatch)) {
    for x in (0..g.n()).filter(|&x| g.degree(x) == 3) {
        for &y in g.neighbors(x).iter().filter(|&&y| g.degree(y) == 3) {
            for &z in g.neighbors(y).iter().filter(|&&z| z != x && g.degree(z) == 4) {
                for &w in g.neighbors(z).iter().filter(|&&w| w != y && w != x && g.has_edge(w, x)) {
                    if g.has_edge(x, z) || g.has_edge(y, w) || g.degree(w) < 3 {
                        continue;
                    }
                    let zs = others(g, z, &[y, w]);
                    let ws = others(g, w, &[z, x]);
                    let m = ConfigMatch::K6 {
                        x,
                        y,
                        z,
                        w,
                        x1: others(g, x, &[y, w])[0],
                        y1: others(g, y, &[x, z])[0],
                        z1: zs[0],
                        z2: zs[1],
                        w1: ws[0],
                        w2: ws.get(1).copied(),
                    };
                    if s_condition_holds(g, &m) {
                        offer(m);
                    }
                }
            }
        }
    }
}

fn double_squares(g: &Graph, offer: &mut impl FnMut(ConfigMatch)) {
    let four = |v: usize| g.degree(v) == 4;
    for v in (0..g.n()).filter(|&v| g.degree(v) == 3) {
        let nb = g.neighbors(v);
        for &z in nb.iter().filter(|&&z| four(z)) {
            for &x in nb.iter().filter(|&&x| x != z && four(x)) {
                let u = others(g, v, &[z, x])[0];
                if !four(u) {
                    continue;
                }
                for &y in g.neighbors(x).iter().filter(|&&y| y != v && g.has_edge(y, z)) {
                    for &w in g.neighbors(u).iter().filter(|&&w| w != v && g.has_edge(w, z)) {
                        if !distinct(&[v, x, y, z, u, w]) {
                            continue;
                        }
                        let z1 = others(g, z, &[y, v, w])[0];
                        offer(ConfigMatch::K7 { v, x, y, z, u, w, z1 });
                    }
                }
            }
        }
    }
}

/// 5-cycles `x y z u v` enumerated with `z` fixed at the middle position.
fn pentagons(g: &Graph, kind: ConfigKind, offer: &mut impl FnMut(ConfigMatch)) {
    let deg = |v: usize| g.degree(v);
    for z in (0..g.n()).filter(|&z| deg(z) == 3) {
        for &y in g.neighbors(z) {
            for &u in g.neighbors(z).iter().filter(|&&u| u != y) {
                for &x in g.neighbors(y).iter().filter(|&&x| x != z && x != u) {
                    for &v in g.neighbors(u).iter().filter(|&&v| v != z && v != y && v != x) {
                        if !g.has_edge(x, v) {
                            continue;
                        }
                        // chordless
                        if g.has_edge(x, z) || g.has_edge(x, u) || g.has_edge(y, u) || g.has_edge(y, v) || g.has_edge(z, v)
                        {
                            continue;
                        }
                        pentagon_match(g, kind, [x, y, z, u, v], offer);
                    }
                }
            }
        }
    }
}

fn pentagon_match(g: &Graph, kind: ConfigKind, cycle: [usize; 5], offer: &mut impl FnMut(ConfigMatch)) {
    let [x, y, z, u, v] = cycle;
    let deg = |v: usize| g.degree(v);
    let off = |a: usize, p: usize, q: usize| others(g, a, &[p, q]);
    match kind {
        ConfigKind::K8 => {
            if [y, z, u].iter().all(|&a| deg(a) == 3) && deg(x) == 4 && deg(v) == 4 {
                let (y1, z1, u1) = (off(y, x, z)[0], off(z, y, u)[0], off(u, z, v)[0]);
                if deg(y1) == 4 && deg(u1) == 4 {
                    let m = ConfigMatch::K8 { x, y, z, u, v, y1, z1, u1 };
                    if s_condition_holds(g, &m) {
                        offer(m);
                    }
                }
            }
        }
        ConfigKind::K9 | ConfigKind::K10 => {
            if ![x, z, v].iter().all(|&a| deg(a) == 3) || deg(y) != 4 || deg(u) != 4 {
                return;
            }
            let (x1, z1, v1) = (off(x, y, v)[0], off(z, y, u)[0], off(v, u, x)[0]);
            if deg(x1) != 4 || deg(v1) != 4 {
                return;
            }
            if kind == ConfigKind::K9 {
                if deg(z1) == 3 {
                    let m = ConfigMatch::K9 { x, y, z, u, v, x1, z1, v1 };
                    if s_condition_holds(g, &m) {
                        offer(m);
                    }
                }
                return;
            }
            if deg(z1) != 4 {
                return;
            }
            for u1 in off(u, z, v) {
                for (case, partner) in [(BadCase::Middle, z1), (BadCase::Side, v1)] {
                    if u1 != partner && g.has_edge(u1, partner) {
                        let m = ConfigMatch::K10 { case, x, y, z, u, v, x1, z1, v1, u1 };
                        if s_condition_holds(g, &m) {
                            offer(m);
                        }
                    }
                }
            }
        }
        _ => unreachable!("not a pentagon kind"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generator::{corpus, CorpusName};

    #[test]
    fn c5_is_k1() {
        let (g, _) = corpus(&CorpusName::C5).unwrap();
        assert_eq!(find_configuration(&g), Some(ConfigMatch::K1 { v: 0 }));
    }

    #[test]
    fn k4_is_k2() {
        let (g, _) = corpus(&CorpusName::K4).unwrap();
        let m = find_configuration(&g).unwrap();
        assert_eq!(m.kind(), ConfigKind::K2);
        assert_eq!(m.removed_set(), vec![0, 3]);
    }

    #[test]
    fn cube_is_k5() {
        let (g, _) = corpus(&CorpusName::Cube).unwrap();
        let m = find_configuration(&g).unwrap();
        assert_eq!(m.kind(), ConfigKind::K5);
        let r = m.roles();
        for (a, b) in [("x", "y"), ("y", "z"), ("z", "w")] {
            assert!(g.has_edge(r[a], r[b]));
        }
    }

    #[test]
    fn dodecahedron_has_no_short_configs() {
        // 3-regular, girth 5: every path of four vertices is a K5
        let (g, _) = corpus(&CorpusName::Dodecahedron).unwrap();
        assert_eq!(find_configuration(&g).unwrap().kind(), ConfigKind::K5);
        assert!(find_kind(&g, ConfigKind::K6).is_none());
        assert!(find_kind(&g, ConfigKind::K2).is_none());
    }

    #[test]
    fn grid_corner_square() {
        // 4x4 grid: corners are 2-vertices, so K1 first; the K6 finder
        // still sees a corner 4-cycle with two 3-vertices
        let (g, _) = corpus(&CorpusName::Grid(4, 4)).unwrap();
        assert_eq!(find_configuration(&g).unwrap().kind(), ConfigKind::K1);
    }

    #[test]
    fn k10_prefers_middle_case() {
        let m1 = ConfigMatch::K10 { case: BadCase::Side, x: 0, y: 1, z: 2, u: 3, v: 4, x1: 5, z1: 6, v1: 7, u1: 8 };
        let m2 = ConfigMatch::K10 { case: BadCase::Middle, x: 9, y: 1, z: 2, u: 3, v: 4, x1: 5, z1: 6, v1: 7, u1: 8 };
        assert!(sort_key(&m2) < sort_key(&m1));
    }
}
