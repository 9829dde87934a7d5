//! The cell-level model decomposition: a link, pants faces with two sides,
//! and pants blocks glued to face sides.

mod layering;
mod validate;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::moves::MovePath;
use crate::pants_graph::{CurveId, PantsGraph};

pub use validate::{validate_complex, ComplexReport, Violation, ViolationKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LinkId(pub u32);

impl fmt::Display for LinkId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L{}", self.0)
    }
}

impl From<CurveId> for LinkId {
    fn from(c: CurveId) -> Self {
        LinkId(c.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FaceId(pub u32);

impl fmt::Display for FaceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "f{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Lower,
    Upper,
}

impl Side {
    pub const BOTH: [Side; 2] = [Side::Lower, Side::Upper];

    pub fn opposite(self) -> Side {
        match self {
            Side::Lower => Side::Upper,
            Side::Upper => Side::Lower,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FaceSide {
    pub face: FaceId,
    pub side: Side,
}

impl FaceSide {
    pub fn new(face: FaceId, side: Side) -> Self {
        FaceSide { face, side }
    }
}

impl fmt::Display for FaceSide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.side {
            Side::Lower => "lower",
            Side::Upper => "upper",
        };
        write!(f, "{}/{}", self.face, s)
    }
}

/// Whether a sheet's upper side faces forward in the rotation around its link.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    /// Side of the sheet facing the next sector in rotation order.
    pub fn forward_side(self) -> Side {
        match self {
            Sign::Plus => Side::Upper,
            Sign::Minus => Side::Lower,
        }
    }
}

/// A local sheet of a face along a link circle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Germ {
    pub cuff: u8,
    pub face: FaceId,
    pub sign: Sign,
}

/// One link component: the curve ids it absorbs and its lifetime in stages.
/// `retired == None` means the link survives to the end.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Link {
    pub created: usize,
    pub curves: Vec<CurveId>,
    /// Cyclic order of sheets around the link; only spine links carry germs.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub germs: Vec<Germ>,
    pub id: LinkId,
    pub retired: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Face {
    pub created: usize,
    pub cuffs: [LinkId; 3],
    pub id: FaceId,
    /// For faces of a product spine: the side facing the negative boundary.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub minus_side: Option<Side>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BlockKind {
    /// Once-punctured torus times an interval.
    S,
    /// Four-punctured sphere times an interval.
    A,
}

impl BlockKind {
    pub fn euler_characteristic(self) -> i64 {
        match self {
            BlockKind::S => -1,
            BlockKind::A => -2,
        }
    }

    /// Bottom faces, top faces, vertical loops.
    pub fn shape(self) -> (usize, usize, usize) {
        match self {
            BlockKind::S => (1, 1, 1),
            BlockKind::A => (2, 2, 4),
        }
    }

    pub fn marked_loops(self) -> usize {
        let (_, _, v) = self.shape();
        v + 2
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PantsBlock {
    pub bottom: Vec<FaceSide>,
    pub bottom_link: LinkId,
    pub kind: BlockKind,
    /// Stage produced by this block.
    pub stage: usize,
    pub top: Vec<FaceSide>,
    pub top_link: LinkId,
    pub twist: i64,
    pub vertical: Vec<LinkId>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BlockRole {
    Bottom,
    Top,
}

/// Exposed surface after a given number of blocks: vertex `i` of `graph` is
/// the pants `faces[i]`, and each curve sits on the link `curve_links[c]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Stage {
    pub curve_links: BTreeMap<CurveId, LinkId>,
    pub faces: Vec<FaceSide>,
    pub graph: PantsGraph,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelOrigin {
    Product,
    Spine,
    Layered,
    Assembled,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelComplex {
    pub blocks: Vec<PantsBlock>,
    pub closed: bool,
    pub faces: Vec<Face>,
    pub genus: u32,
    pub links: Vec<Link>,
    pub origin: ModelOrigin,
    pub stages: Vec<Stage>,
}

impl ModelComplex {
    pub fn link(&self, id: LinkId) -> Option<&Link> {
        self.links.binary_search_by_key(&id, |l| l.id).ok().map(|i| &self.links[i])
    }

    pub(crate) fn link_mut(&mut self, id: LinkId) -> Option<&mut Link> {
        match self.links.binary_search_by_key(&id, |l| l.id) {
            Ok(i) => Some(&mut self.links[i]),
            Err(_) => None,
        }
    }

    pub(crate) fn insert_link(&mut self, link: Link) -> Result<()> {
        match self.links.binary_search_by_key(&link.id, |l| l.id) {
            Ok(_) => Err(Error::CurveIdInUse(CurveId(link.id.0))),
            Err(i) => {
                self.links.insert(i, link);
                Ok(())
            }
        }
    }

    pub fn face(&self, id: FaceId) -> Option<&Face> {
        self.faces.get(id.0 as usize).filter(|f| f.id == id)
    }

    /// Block slots covering each face side.
    pub fn coverage(&self) -> BTreeMap<FaceSide, Vec<(usize, BlockRole)>> {
        let mut cov: BTreeMap<FaceSide, Vec<(usize, BlockRole)>> = BTreeMap::new();
        for (i, b) in self.blocks.iter().enumerate() {
            for &fs in &b.bottom {
                cov.entry(fs).or_default().push((i, BlockRole::Bottom));
            }
            for &fs in &b.top {
                cov.entry(fs).or_default().push((i, BlockRole::Top));
            }
        }
        cov
    }

    /// Number of block-covered sides of each face.
    pub fn covered_sides(&self) -> Vec<usize> {
        let cov = self.coverage();
        self.faces
            .iter()
            .map(|f| Side::BOTH.iter().filter(|&&s| cov.contains_key(&FaceSide::new(f.id, s))).count())
            .collect()
    }

    /// Faces with both sides covered by blocks.
    pub fn internal_face_count(&self) -> usize {
        self.covered_sides().into_iter().filter(|&c| c == 2).count()
    }

    pub fn block_counts(&self) -> (usize, usize) {
        let s = self.blocks.iter().filter(|b| b.kind == BlockKind::S).count();
        (s, self.blocks.len() - s)
    }

    /// Number of blocks; for layered models these all lie outside the spine.
    pub fn layer_count(&self) -> usize {
        self.blocks.len()
    }

    /// Exposed decomposition after `stage` blocks.
    pub fn exposed_decomposition(&self, stage: usize) -> Result<PantsGraph> {
        self.stages
            .get(stage)
            .map(|s| s.graph.clone())
            .ok_or(Error::StageOutOfRange { stage, max: self.stages.len().saturating_sub(1) })
    }

    /// `Σχ(blocks) + Σ_faces (covered sides − 1)`: a face glued between two
    /// blocks is counted back once, a face on one block's boundary adds
    /// nothing, and a loose face contributes its own `χ = −1`. Circles
    /// contribute zero throughout.
    pub fn euler_characteristic(&self) -> Result<i64> {
        let report = validate_complex(self);
        if !report.valid {
            return Err(Error::NotValidated(report.summary()));
        }
        Ok(self.euler_characteristic_unchecked())
    }

    pub(crate) fn euler_characteristic_unchecked(&self) -> i64 {
        let blocks: i64 = self.blocks.iter().map(|b| b.kind.euler_characteristic()).sum();
        let faces: i64 = self.covered_sides().into_iter().map(|c| c as i64 - 1).sum();
        blocks + faces
    }

    /// DOT rendering of the face–block incidence graph.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph model {\n");
        for f in &self.faces {
            let cuffs: Vec<String> = f.cuffs.iter().map(|l| l.to_string()).collect();
            out.push_str(&format!("  {} [shape=box,label=\"{} {}\"];\n", f.id, f.id, cuffs.join(" ")));
        }
        for (i, b) in self.blocks.iter().enumerate() {
            out.push_str(&format!("  b{i} [shape=ellipse,label=\"{:?}{i}\"];\n", b.kind));
            for fs in &b.bottom {
                out.push_str(&format!("  b{i} -- {} [label=\"bottom {:?}\"];\n", fs.face, fs.side));
            }
            for fs in &b.top {
                out.push_str(&format!("  b{i} -- {} [label=\"top {:?}\"];\n", fs.face, fs.side));
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Product model of `S × [0,1]`: one pants block per move of `path`.
pub fn build_product_model(path: &MovePath) -> Result<ModelComplex> {
    let report = crate::moves::validate_path(path);
    if let Some(v) = report.first_invalid {
        return Err(Error::InvalidPath(format!("step {}: {}", v.step, v.reason)));
    }
    let base = &path.base;
    let mut m = ModelComplex {
        blocks: vec![],
        closed: false,
        faces: vec![],
        genus: base.genus(),
        links: vec![],
        origin: ModelOrigin::Product,
        stages: vec![],
    };
    for c in base.curve_ids() {
        m.insert_link(Link { created: 0, curves: vec![c], germs: vec![], id: c.into(), retired: None })?;
    }
    let mut faces = Vec::with_capacity(base.vertex_count());
    for v in 0..base.vertex_count() {
        let id = FaceId(v as u32);
        let cuffs = [0u8, 1, 2].map(|s| LinkId::from(base.curve_at(crate::pants_graph::Leg::new(v as u32, s))));
        m.faces.push(Face { created: 0, cuffs, id, minus_side: None });
        faces.push(FaceSide::new(id, Side::Upper));
    }
    let curve_links = base.curve_ids().map(|c| (c, c.into())).collect();
    m.stages.push(Stage { curve_links, faces, graph: base.clone() });
    for mv in &path.moves {
        m.push_move(mv)?;
    }
    Ok(m)
}

pub fn euler_characteristic(m: &ModelComplex) -> Result<i64> {
    m.euler_characteristic()
}

pub fn exposed_decomposition(m: &ModelComplex, stage: usize) -> Result<PantsGraph> {
    m.exposed_decomposition(stage)
}
