use super::{BlockKind, Face, FaceId, FaceSide, Link, LinkId, ModelComplex, PantsBlock, Side, Stage};
use crate::error::{Error, Result};
use crate::moves::{apply_move_traced, Move, MoveKind};
use crate::pants_graph::Leg;

impl ModelComplex {
    /// Glue one pants block on top of the current exposed surface.
    pub fn layer_move(&mut self, mv: &Move) -> Result<()> {
        if self.closed {
            return Err(Error::MoveNotApplicable("complex is closed".into()));
        }
        self.push_move(mv)
    }

    pub(crate) fn push_move(&mut self, mv: &Move) -> Result<()> {
        let stage = self.stages.last().ok_or_else(|| Error::InvalidPath("complex has no stages".into()))?;
        let k = self.stages.len();
        let outcome = apply_move_traced(&stage.graph, mv)?;
        // the new link takes the curve's id unless a spine link already has it
        let new_link = match LinkId(mv.new_curve.0) {
            l if self.link(l).is_none() => l,
            _ => LinkId(self.links.last().map_or(0, |l| l.id.0 + 1)),
        };
        let bottom_link = stage.curve_links[&mv.target];
        let bottom: Vec<FaceSide> = outcome.consumed.iter().map(|&v| stage.faces[v]).collect();
        let vertical: Vec<LinkId> = outcome.outer.iter().map(|c| stage.curve_links[c]).collect();
        let mut curve_links = stage.curve_links.clone();
        curve_links.remove(&mv.target);
        curve_links.insert(mv.new_curve, new_link);
        let mut faces = stage.faces.clone();
        let mut top = Vec::with_capacity(outcome.created.len());
        let mut new_faces = Vec::with_capacity(outcome.created.len());
        for &v in &outcome.created {
            let id = FaceId((self.faces.len() + new_faces.len()) as u32);
            let cuffs = [0u8, 1, 2].map(|s| curve_links[&outcome.graph.curve_at(Leg::new(v as u32, s))]);
            new_faces.push(Face { created: k, cuffs, id, minus_side: None });
            faces[v] = FaceSide::new(id, Side::Upper);
            top.push(FaceSide::new(id, Side::Lower));
        }
        let kind = match mv.kind {
            MoveKind::S => BlockKind::S,
            MoveKind::A => BlockKind::A,
        };
        let retire = !curve_links.values().any(|&l| l == bottom_link);
        self.faces.extend(new_faces);
        self.insert_link(Link { created: k, curves: vec![mv.new_curve], germs: vec![], id: new_link, retired: None })?;
        if retire {
            if let Some(l) = self.link_mut(bottom_link) {
                l.retired = Some(k);
            }
        }
        self.blocks.push(PantsBlock {
            bottom,
            bottom_link,
            kind,
            stage: k,
            top,
            top_link: new_link,
            twist: mv.twist,
            vertical,
        });
        self.stages.push(Stage { curve_links, faces, graph: outcome.graph });
        Ok(())
    }

    /// The complex with its most recent block (and the faces and link it
    /// created) removed.
    pub fn without_last_block(&self) -> Result<ModelComplex> {
        let mut m = self.clone();
        let b = m.blocks.pop().ok_or_else(|| Error::InvalidPath("no block to remove".into()))?;
        m.stages.pop();
        m.faces.retain(|f| f.created < b.stage);
        m.links.retain(|l| l.id != b.top_link);
        if let Some(l) = m.link_mut(b.bottom_link) {
            if l.retired == Some(b.stage) {
                l.retired = None;
            }
        }
        m.closed = false;
        Ok(m)
    }
}
