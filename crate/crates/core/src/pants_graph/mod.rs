//! Pants decompositions of closed surfaces, encoded as trivalent multigraphs.
//!
//! Each vertex is a pair of pants with three leg slots. A fixed-point-free
//! involution on the legs pairs them up; every orbit is one curve of the
//! decomposition. Self-loops and parallel edges are allowed, so the encoding
//! covers every pants decomposition up to the choice of marking.

mod canon;
mod enumerate;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use canon::{CanonicalForm, Isomorphism};
pub use enumerate::enumerate_pants_graphs;

/// Stable, opaque identifier of a curve (and, in a model, of a link component).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CurveId(pub u32);

impl fmt::Display for CurveId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "c{}", self.0)
    }
}

/// One of the three cuff slots of a pair of pants.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "(u32, u8)", into = "(u32, u8)")]
pub struct Leg {
    pub vertex: u32,
    pub slot: u8,
}

impl Leg {
    pub fn new(vertex: u32, slot: u8) -> Self {
        Leg { vertex, slot }
    }

    pub(crate) fn index(self) -> usize {
        3 * self.vertex as usize + self.slot as usize
    }

    pub(crate) fn from_index(i: usize) -> Self {
        Leg { vertex: (i / 3) as u32, slot: (i % 3) as u8 }
    }
}

impl From<(u32, u8)> for Leg {
    fn from((vertex, slot): (u32, u8)) -> Self {
        Leg { vertex, slot }
    }
}

impl From<Leg> for (u32, u8) {
    fn from(l: Leg) -> Self {
        (l.vertex, l.slot)
    }
}

/// Shape of the subsurface `F_ℓ` filled by a curve and its adjacent pants.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CurveKind {
    /// Both legs on one pants: `F_ℓ` is a once-punctured torus.
    SelfLoop,
    /// Legs on distinct pants: `F_ℓ` is a four-punctured sphere.
    NonLoop,
}

/// A validated pants decomposition of a closed surface of genus at least two.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PantsGraph {
    vertex_count: usize,
    pub(crate) partner: Vec<usize>,
    pub(crate) leg_curve: Vec<CurveId>,
    curves: BTreeMap<CurveId, (Leg, Leg)>,
}

impl PantsGraph {
    /// Builds a graph with fresh curve ids `0..3g-3` in matching order.
    pub fn new(vertex_count: usize, matching: &[(Leg, Leg)]) -> Result<Self> {
        let ids: Vec<CurveId> = (0..matching.len() as u32).map(CurveId).collect();
        Self::with_curve_ids(vertex_count, matching, &ids)
    }

    pub fn with_curve_ids(vertex_count: usize, matching: &[(Leg, Leg)], curve_ids: &[CurveId]) -> Result<Self> {
        if vertex_count == 0 {
            return Err(Error::GenusBelowTwo);
        }
        if vertex_count % 2 == 1 {
            return Err(Error::OddVertexCount(vertex_count));
        }
        if matching.len() != curve_ids.len() {
            return Err(Error::NotPerfectMatching(format!(
                "{} leg pairs but {} curve ids",
                matching.len(),
                curve_ids.len()
            )));
        }
        let legs = 3 * vertex_count;
        let mut partner = vec![usize::MAX; legs];
        let mut leg_curve = vec![CurveId(u32::MAX); legs];
        let mut curves = BTreeMap::new();
        for (&(a, b), &id) in matching.iter().zip(curve_ids) {
            for l in [a, b] {
                if l.vertex as usize >= vertex_count || l.slot > 2 {
                    return Err(Error::NotPerfectMatching(format!("leg ({}, {}) out of range", l.vertex, l.slot)));
                }
            }
            if a == b {
                return Err(Error::NotPerfectMatching(format!("leg ({}, {}) paired with itself", a.vertex, a.slot)));
            }
            for l in [a, b] {
                if partner[l.index()] != usize::MAX {
                    return Err(Error::NotPerfectMatching(format!("leg ({}, {}) covered twice", l.vertex, l.slot)));
                }
            }
            partner[a.index()] = b.index();
            partner[b.index()] = a.index();
            leg_curve[a.index()] = id;
            leg_curve[b.index()] = id;
            let pair = if a <= b { (a, b) } else { (b, a) };
            if curves.insert(id, pair).is_some() {
                return Err(Error::DuplicateCurveId(id));
            }
        }
        if let Some(free) = partner.iter().position(|&p| p == usize::MAX) {
            let l = Leg::from_index(free);
            return Err(Error::NotPerfectMatching(format!("leg ({}, {}) unmatched", l.vertex, l.slot)));
        }
        let g = PantsGraph { vertex_count, partner, leg_curve, curves };
        if !g.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(g)
    }

    /// Assembles a graph from raw leg data already known to be valid.
    pub(crate) fn from_raw(vertex_count: usize, partner: Vec<usize>, leg_curve: Vec<CurveId>) -> Self {
        let mut curves = BTreeMap::new();
        for (i, &p) in partner.iter().enumerate() {
            if i < p {
                curves.insert(leg_curve[i], (Leg::from_index(i), Leg::from_index(p)));
            }
        }
        PantsGraph { vertex_count, partner, leg_curve, curves }
    }

    /// Theta graph: two pants joined along all three cuffs.
    pub fn theta() -> Self {
        let m = [(Leg::new(0, 0), Leg::new(1, 0)), (Leg::new(0, 1), Leg::new(1, 1)), (Leg::new(0, 2), Leg::new(1, 2))];
        Self::new(2, &m).expect("theta is valid")
    }

    /// Dumbbell graph: two once-punctured tori joined along one curve.
    pub fn dumbbell() -> Self {
        let m = [(Leg::new(0, 0), Leg::new(0, 1)), (Leg::new(1, 0), Leg::new(1, 1)), (Leg::new(0, 2), Leg::new(1, 2))];
        Self::new(2, &m).expect("dumbbell is valid")
    }

    /// A chain decomposition of genus `genus`: loops at both ends, doubled
    /// edges in between.
    pub fn chain(genus: u32) -> Result<Self> {
        if genus < 2 {
            return Err(Error::GenusBelowTwo);
        }
        let n = 2 * genus - 2;
        let mut m = vec![(Leg::new(0, 0), Leg::new(0, 1)), (Leg::new(n - 1, 0), Leg::new(n - 1, 1))];
        // spine of the chain: slot 2 of v meets slot 1 (or 0 at the ends) of v+1
        for v in 0..n - 1 {
            let next_slot = if v + 1 == n - 1 { 2 } else { 0 };
            let this_slot = if v == 0 { 2 } else { 1 };
            m.push((Leg::new(v, this_slot), Leg::new(v + 1, next_slot)));
        }
        for v in (1..n - 1).step_by(2) {
            m.push((Leg::new(v, 2), Leg::new(v + 1, 2)));
        }
        Self::new(n as usize, &m)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn curve_count(&self) -> usize {
        self.curves.len()
    }

    pub fn genus(&self) -> u32 {
        (self.vertex_count as u32 + 2) / 2
    }

    pub fn curve_ids(&self) -> impl Iterator<Item = CurveId> + '_ {
        self.curves.keys().copied()
    }

    pub fn contains_curve(&self, c: CurveId) -> bool {
        self.curves.contains_key(&c)
    }

    pub fn legs_of(&self, c: CurveId) -> Result<(Leg, Leg)> {
        self.curves.get(&c).copied().ok_or(Error::UnknownCurve(c))
    }

    pub fn curve_at(&self, leg: Leg) -> CurveId {
        self.leg_curve[leg.index()]
    }

    pub fn partner(&self, leg: Leg) -> Leg {
        Leg::from_index(self.partner[leg.index()])
    }

    pub fn max_curve_id(&self) -> CurveId {
        *self.curves.keys().next_back().expect("graphs have curves")
    }

    /// Matching in curve-id order, paired with the ids.
    pub fn matching(&self) -> Vec<(CurveId, Leg, Leg)> {
        self.curves.iter().map(|(&c, &(a, b))| (c, a, b)).collect()
    }

    pub fn curve_kind(&self, c: CurveId) -> Result<CurveKind> {
        let (a, b) = self.legs_of(c)?;
        Ok(if a.vertex == b.vertex { CurveKind::SelfLoop } else { CurveKind::NonLoop })
    }

    /// Curves in `self` that also appear (by id) in `other`.
    pub fn shared_curves(&self, other: &PantsGraph) -> BTreeSet<CurveId> {
        self.curve_ids().filter(|c| other.contains_curve(*c)).collect()
    }

    /// Multiplicity matrix: loops on the diagonal counted once per loop.
    pub(crate) fn multiplicities(&self) -> Vec<Vec<u8>> {
        let n = self.vertex_count;
        let mut m = vec![vec![0u8; n]; n];
        for &(a, b) in self.curves.values() {
            let (u, v) = (a.vertex as usize, b.vertex as usize);
            m[u][v] += 1;
            if u != v {
                m[v][u] += 1;
            }
        }
        m
    }

    /// Returns a copy with curve ids renamed through `f`.
    pub fn relabel_curves(&self, f: impl Fn(CurveId) -> CurveId) -> Result<Self> {
        let matching: Vec<(Leg, Leg)> = self.curves.values().copied().collect();
        let ids: Vec<CurveId> = self.curves.keys().map(|&c| f(c)).collect();
        Self::with_curve_ids(self.vertex_count, &matching, &ids)
    }

    /// Returns a copy with vertices permuted by `perm` (old -> new) and the
    /// slots of each vertex rotated by `slot_shift[old]`.
    pub fn permuted(&self, perm: &[usize], slot_shift: &[u8]) -> Self {
        let map = |l: Leg| Leg::new(perm[l.vertex as usize] as u32, (l.slot + slot_shift[l.vertex as usize]) % 3);
        let matching: Vec<(Leg, Leg)> = self.curves.values().map(|&(a, b)| (map(a), map(b))).collect();
        let ids: Vec<CurveId> = self.curves.keys().copied().collect();
        Self::with_curve_ids(self.vertex_count, &matching, &ids).expect("permutation preserves validity")
    }

    fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.vertex_count];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for s in 0..3 {
                let w = self.partner[3 * v + s] / 3;
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// DOT rendering: pants as nodes, curves as edges.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph pants {\n");
        for v in 0..self.vertex_count {
            out.push_str(&format!("  p{v};\n"));
        }
        for (c, (a, b)) in &self.curves {
            out.push_str(&format!("  p{} -- p{} [label=\"{}\"];\n", a.vertex, b.vertex, c));
        }
        out.push_str("}\n");
        out
    }
}

/// Free-function form of [`PantsGraph::new`].
pub fn new_pants_graph(vertex_count: usize, matching: &[(Leg, Leg)]) -> Result<PantsGraph> {
    PantsGraph::new(vertex_count, matching)
}

pub fn curve_kind(g: &PantsGraph, c: CurveId) -> Result<CurveKind> {
    g.curve_kind(c)
}

pub fn canonical_form(g: &PantsGraph) -> CanonicalForm {
    g.canonical_form()
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphRepr {
    curve_ids: Vec<CurveId>,
    matching: Vec<(Leg, Leg)>,
    vertices: usize,
}

impl Serialize for PantsGraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let (curve_ids, matching) = self.curves.iter().map(|(&c, &p)| (c, p)).unzip();
        GraphRepr { curve_ids, matching, vertices: self.vertex_count }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for PantsGraph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = GraphRepr::deserialize(d)?;
        PantsGraph::with_curve_ids(r.vertices, &r.matching, &r.curve_ids).map_err(serde::de::Error::custom)
    }
}
