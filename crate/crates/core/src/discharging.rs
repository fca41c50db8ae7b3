//! Charge bookkeeping for plane graphs with maximum degree 4.
//!
//! Every vertex and face `z` starts with charge `d(z) - 4`; by Euler's
//! formula the total is `-8` on a connected plane graph. Faces of length
//! five or more then send charge to incident 3-vertices. The audit lists
//! the local structures whose absence would make every final charge
//! nonnegative, and re-checks each per-element bound that should hold.

use std::collections::BTreeSet;
use std::fmt::{self, Write as _};

use num_rational::Ratio;
use num_traits::{Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::graph::{faces_of, Embedding, Face, Graph, GraphError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DischargeError {
    #[error("vertex {0} does not have degree 3")]
    NotA3Vertex(usize),
    #[error("embedding is not planar (V - E + F = {0})")]
    NonPlanarEmbedding(i64),
    #[error("graph is not connected")]
    Disconnected,
    #[error(transparent)]
    InvalidEmbedding(GraphError),
}

impl From<GraphError> for DischargeError {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::NonPlanarEmbedding(chi) => DischargeError::NonPlanarEmbedding(chi),
            GraphError::Disconnected => DischargeError::Disconnected,
            other => DischargeError::InvalidEmbedding(other),
        }
    }
}

/// Exact charge, serialized as `{"num": .., "den": ..}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Charge(pub Ratio<i64>);

impl Charge {
    pub fn new(num: i64, den: i64) -> Self {
        Charge(Ratio::new(num, den))
    }

    pub fn int(v: i64) -> Self {
        Charge(Ratio::from_integer(v))
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }
}

impl fmt::Display for Charge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Serialize for Charge {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Charge", 2)?;
        st.serialize_field("num", self.0.numer())?;
        st.serialize_field("den", self.0.denom())?;
        st.end()
    }
}

impl std::iter::Sum for Charge {
    fn sum<I: Iterator<Item = Charge>>(iter: I) -> Self {
        Charge(iter.fold(Ratio::zero(), |a, c| a + c.0))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Element {
    Vertex(usize),
    Face(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Phase {
    Initial,
    Final,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChargeLedger {
    pub phase: Phase,
    pub vertices: Vec<Charge>,
    pub faces: Vec<Charge>,
}

impl ChargeLedger {
    pub fn total(&self) -> Charge {
        self.vertices.iter().chain(&self.faces).copied().sum()
    }

    pub fn get(&self, e: Element) -> Charge {
        match e {
            Element::Vertex(v) => self.vertices[v],
            Element::Face(f) => self.faces[f],
        }
    }

    fn elements(&self) -> impl Iterator<Item = (Element, Charge)> + '_ {
        let vs = self.vertices.iter().enumerate().map(|(v, &c)| (Element::Vertex(v), c));
        let fs = self.faces.iter().enumerate().map(|(f, &c)| (Element::Face(f), c));
        vs.chain(fs)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ThreeVertexClass {
    Good,
    Bad,
}

/// A 3-vertex is bad when it lies on a 4-cycle (not necessarily a face).
pub fn classify_3vertex(g: &Graph, v: usize) -> Result<ThreeVertexClass, DischargeError> {
    if v >= g.n() || g.degree(v) != 3 {
        return Err(DischargeError::NotA3Vertex(v));
    }
    Ok(if on_4cycle(g, v) { ThreeVertexClass::Bad } else { ThreeVertexClass::Good })
}

fn on_4cycle(g: &Graph, v: usize) -> bool {
    let nv = g.neighbors(v);
    nv.iter().enumerate().any(|(i, &a)| {
        nv[i + 1..]
            .iter()
            .any(|&b| g.neighbors(a).iter().any(|&q| q != v && g.has_edge(q, b)))
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Rule {
    R1,
    R2,
    R3,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RuleFlow {
    pub face: usize,
    pub vertex: usize,
    pub amount: Charge,
    pub rule: Rule,
}

/// `d(z) - 4` on every vertex and face.
pub fn initial_charges(g: &Graph, emb: &Embedding) -> Result<ChargeLedger, DischargeError> {
    let faces = faces_of(g, emb)?;
    Ok(initial_from(g, &faces))
}

fn initial_from(g: &Graph, faces: &[Face]) -> ChargeLedger {
    ChargeLedger {
        phase: Phase::Initial,
        vertices: (0..g.n()).map(|v| Charge::int(g.degree(v) as i64 - 4)).collect(),
        faces: faces.iter().map(|f| Charge::int(f.len() as i64 - 4)).collect(),
    }
}

/// Applies the three face-to-vertex rules. A vertex met twice on a face's
/// boundary walk is paid twice.
pub fn apply_rules(
    g: &Graph,
    emb: &Embedding,
    ledger: &ChargeLedger,
) -> Result<(ChargeLedger, Vec<RuleFlow>), DischargeError> {
    let faces = faces_of(g, emb)?;
    Ok(apply_on(g, &faces, ledger))
}

fn apply_on(g: &Graph, faces: &[Face], ledger: &ChargeLedger) -> (ChargeLedger, Vec<RuleFlow>) {
    let mut out = ledger.clone();
    out.phase = Phase::Final;
    let mut flows = Vec::new();
    for (fi, face) in faces.iter().enumerate() {
        let d = face.len();
        if d < 5 {
            continue;
        }
        for v in face.corners().filter(|&v| g.degree(v) == 3) {
            let (amount, rule) = match (d, on_4cycle(g, v)) {
                (5, false) => (Charge::new(1, 3), Rule::R1),
                (5, true) => (Charge::new(1, 2), Rule::R2),
                _ => (Charge::new(1, 2), Rule::R3),
            };
            out.faces[fi].0 -= amount.0;
            out.vertices[v].0 += amount.0;
            flows.push(RuleFlow { face: fi, vertex: v, amount, rule });
        }
    }
    (out, flows)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Witness {
    Vertex(usize),
    Face(usize),
    Triangle([usize; 3]),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaViolation {
    pub item: u8,
    pub witness: Witness,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NegativeElement {
    pub element: Element,
    pub charge: Charge,
}

/// An element meeting the hypotheses of a per-element bound but ending
/// with the wrong final charge.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConditionFailure {
    pub condition: char,
    pub element: Element,
    pub charge: Charge,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub total: Charge,
    pub final_total: Charge,
    pub initial: ChargeLedger,
    #[serde(rename = "final")]
    pub final_charges: ChargeLedger,
    pub lemma_violations: Vec<LemmaViolation>,
    pub negative_elements: Vec<NegativeElement>,
    pub rule_flows: Vec<RuleFlow>,
    /// Number of elements whose per-element bound was checked.
    pub conditions_checked: usize,
    pub condition_failures: Vec<ConditionFailure>,
    /// Some face boundary walk passes a vertex more than once.
    pub repeated_incidence: bool,
}

/// Per-face counts used by the lemma items and the bounds.
struct FaceInfo {
    len: usize,
    threes: usize,
    bad_threes: usize,
}

pub fn audit(g: &Graph, emb: &Embedding) -> Result<AuditReport, DischargeError> {
    let faces = faces_of(g, emb)?;
    let initial = initial_from(g, &faces);
    let (fin, rule_flows) = apply_on(g, &faces, &initial);
    let bad: Vec<bool> = (0..g.n()).map(|v| g.degree(v) == 3 && on_4cycle(g, v)).collect();

    let info: Vec<FaceInfo> = faces
        .iter()
        .map(|f| {
            let threes: Vec<usize> = f.corners().filter(|&v| g.degree(v) == 3).collect();
            FaceInfo { len: f.len(), threes: threes.len(), bad_threes: threes.iter().filter(|&&v| bad[v]).count() }
        })
        .collect();
    // faces at each corner of each vertex, with multiplicity
    let mut corner_faces: Vec<Vec<usize>> = vec![Vec::new(); g.n()];
    for (fi, f) in faces.iter().enumerate() {
        for v in f.corners() {
            corner_faces[v].push(fi);
        }
    }
    let repeated_incidence = faces.iter().any(|f| {
        let mut seen = BTreeSet::new();
        !f.corners().all(|v| seen.insert(v))
    });

    let mut lemma_violations = Vec::new();
    for v in 0..g.n() {
        if g.degree(v) <= 2 {
            lemma_violations.push(LemmaViolation { item: 1, witness: Witness::Vertex(v) });
        }
    }
    for (a, b) in g.edges() {
        for &c in g.neighbors(b) {
            if c > b && g.has_edge(a, c) {
                lemma_violations.push(LemmaViolation { item: 2, witness: Witness::Triangle([a, b, c]) });
            }
        }
    }
    for v in (0..g.n()).filter(|&v| g.degree(v) == 3) {
        if corner_faces[v].iter().filter(|&&f| info[f].len == 4).count() >= 2 {
            lemma_violations.push(LemmaViolation { item: 3, witness: Witness::Vertex(v) });
        }
    }
    for (fi, fc) in info.iter().enumerate() {
        if fc.len == 5 && fc.threes == 3 && fc.bad_threes >= 1 {
            lemma_violations.push(LemmaViolation { item: 4, witness: Witness::Face(fi) });
        }
    }
    for (fi, fc) in info.iter().enumerate() {
        if fc.len >= 5 && fc.threes > 3 * fc.len / 4 {
            lemma_violations.push(LemmaViolation { item: 5, witness: Witness::Face(fi) });
        }
    }

    let negative_elements = fin
        .elements()
        .filter(|(_, c)| c.is_negative())
        .map(|(element, charge)| NegativeElement { element, charge })
        .collect();

    let mut conditions_checked = 0;
    let mut condition_failures = Vec::new();
    let mut check = |condition: char, element: Element, ok: fn(Charge) -> bool| {
        conditions_checked += 1;
        let charge = fin.get(element);
        if !ok(charge) {
            condition_failures.push(ConditionFailure { condition, element, charge });
        }
    };
    let nonneg: fn(Charge) -> bool = |c| !c.is_negative();
    let zero: fn(Charge) -> bool = |c| c.0.is_zero();
    for v in 0..g.n() {
        let big = corner_faces[v].iter().filter(|&&f| info[f].len >= 5).count();
        match (g.degree(v), bad[v]) {
            (3, false) if big == corner_faces[v].len() => check('a', Element::Vertex(v), nonneg),
            (3, true) if big >= 2 => check('b', Element::Vertex(v), nonneg),
            (4, _) => check('c', Element::Vertex(v), zero),
            _ => {}
        }
    }
    for (fi, fc) in info.iter().enumerate() {
        let f = Element::Face(fi);
        match fc.len {
            4 => check('c', f, zero),
            5 if fc.bad_threes >= 1 && fc.threes <= 2 => check('d', f, nonneg),
            5 if fc.bad_threes == 0 && fc.threes <= 3 => check('e', f, nonneg),
            d if d >= 6 && fc.threes <= 3 * d / 4 => check('f', f, nonneg),
            _ => {}
        }
    }

    Ok(AuditReport {
        total: initial.total(),
        final_total: fin.total(),
        initial,
        final_charges: fin,
        lemma_violations,
        negative_elements,
        rule_flows,
        conditions_checked,
        condition_failures,
        repeated_incidence,
    })
}

/// Plain-text table of final charges and the audit summary.
pub fn render_table(r: &AuditReport) -> String {
    let mut s = String::from("element    initial  final\n");
    for (e, c) in r.final_charges.elements() {
        let name = match e {
            Element::Vertex(v) => format!("v{v}"),
            Element::Face(f) => format!("f{f}"),
        };
        let _ = writeln!(s, "{name:<10} {:>7}  {c:>5}", r.initial.get(e).to_string());
    }
    let _ = writeln!(s, "total {} -> {}", r.total, r.final_total);
    let _ = writeln!(
        s,
        "lemma violations {}, negative elements {}, failed bounds {}/{}",
        r.lemma_violations.len(),
        r.negative_elements.len(),
        r.condition_failures.len(),
        r.conditions_checked
    );
    s
}
