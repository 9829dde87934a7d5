use super::induced::{boundary_stage, BoundaryKind};
use super::{Attach, Leaf, SpineTree};
use crate::error::{Error, Result};
use crate::model::{Face, FaceId, Germ, Link, LinkId, ModelComplex, ModelOrigin, Side, Sign};
use crate::pants_graph::PantsGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct PieceFace {
    pub cuffs: [usize; 3],
    pub minus: Option<Side>,
}

/// Spine data with face and link indices local to one subtree.
#[derive(Debug, Clone)]
pub(crate) struct Piece {
    pub faces: Vec<PieceFace>,
    pub links: Vec<Vec<Germ>>,
    pub genus: u32,
    pub components: usize,
}

impl Piece {
    /// The side bounding sector `i` of `link` from its start.
    pub fn sector_side(&self, link: usize, sector: usize) -> (usize, Side) {
        let g = self.links[link][sector];
        (g.face.0 as usize, g.sign.forward_side())
    }

    pub fn is_plus_sector(&self, link: usize, sector: usize) -> bool {
        let (f, side) = self.sector_side(link, sector);
        self.faces[f].minus != Some(side)
    }

    fn shifted(mut self, face_offset: usize, link_offset: usize) -> Piece {
        for f in &mut self.faces {
            for c in &mut f.cuffs {
                *c += link_offset;
            }
        }
        for germs in &mut self.links {
            for g in germs {
                g.face = FaceId(g.face.0 + face_offset as u32);
            }
        }
        self
    }
}

pub(crate) fn build_piece(t: &SpineTree) -> Result<Piece> {
    match t {
        SpineTree::Leaf(Leaf::GenusTwo) => {
            let germ = |cuff, sign| Germ { cuff, face: FaceId(0), sign };
            Ok(Piece {
                faces: vec![PieceFace { cuffs: [0, 0, 1], minus: None }],
                links: vec![vec![germ(0, Sign::Plus), germ(1, Sign::Minus)], vec![germ(2, Sign::Plus)]],
                genus: 2,
                components: 1,
            })
        }
        SpineTree::Leaf(Leaf::Product { genera }) => {
            if genera.is_empty() {
                return Err(Error::MalformedTree("product leaf without components".into()));
            }
            let mut piece = Piece { faces: vec![], links: vec![], genus: genera.iter().sum(), components: 0 };
            for &h in genera {
                if h < 2 {
                    return Err(Error::MalformedTree(format!("product component of genus {h}")));
                }
                let one = product_piece(&PantsGraph::chain(h)?);
                let (fo, lo) = (piece.faces.len(), piece.links.len());
                let one = one.shifted(fo, lo);
                piece.faces.extend(one.faces);
                piece.links.extend(one.links);
                piece.components += 1;
            }
            Ok(piece)
        }
        SpineTree::Attach(a) => attach(a),
    }
}

/// `S × {1/2}` decomposed by `g`: the lower side of every face looks at `S × {0}`.
fn product_piece(g: &PantsGraph) -> Piece {
    let mut faces = vec![PieceFace { cuffs: [0; 3], minus: Some(Side::Lower) }; g.vertex_count()];
    let mut links = Vec::with_capacity(g.curve_count());
    for (i, (_, a, b)) in g.matching().into_iter().enumerate() {
        faces[a.vertex as usize].cuffs[a.slot as usize] = i;
        faces[b.vertex as usize].cuffs[b.slot as usize] = i;
        links.push(vec![
            Germ { cuff: a.slot, face: FaceId(a.vertex), sign: Sign::Plus },
            Germ { cuff: b.slot, face: FaceId(b.vertex), sign: Sign::Minus },
        ]);
    }
    Piece { faces, links, genus: g.genus(), components: 1 }
}

fn attach(a: &Attach) -> Result<Piece> {
    let want = if a.separating { 2 } else { 1 };
    if a.children.len() != want {
        return Err(Error::MalformedTree(format!(
            "{} attach needs {want} children, got {}",
            if a.separating { "separating" } else { "non-separating" },
            a.children.len()
        )));
    }
    if a.cuffs.len() != 2 {
        return Err(Error::MalformedTree(format!("connecting pants attaches 2 cuffs, got {}", a.cuffs.len())));
    }
    if a.separating && (a.cuffs[0].child == a.cuffs[1].child) {
        return Err(Error::MalformedTree("separating attach must meet both children".into()));
    }
    let mut pieces = Vec::with_capacity(want);
    for c in &a.children {
        let p = build_piece(c)?;
        if p.components != 1 {
            return Err(Error::MalformedTree("attach child must be a single body".into()));
        }
        pieces.push(p);
    }
    // resolve each cuff to a global link index and validate its sector
    let mut link_offsets = vec![0; want];
    let mut face_offsets = vec![0; want];
    let (mut fo, mut lo) = (0, 0);
    for (i, p) in pieces.iter().enumerate() {
        face_offsets[i] = fo;
        link_offsets[i] = lo;
        fo += p.faces.len();
        lo += p.links.len();
    }
    let mut targets = Vec::with_capacity(2);
    for c in &a.cuffs {
        let p = pieces
            .get(c.child)
            .ok_or_else(|| Error::MalformedTree(format!("cuff targets missing child {}", c.child)))?;
        let ok = c.link < p.links.len() && c.sector < p.links[c.link].len() && p.is_plus_sector(c.link, c.sector);
        if !ok {
            return Err(Error::AttachmentTargetNotBoundaryLoop(format!(
                "child {} link {} sector {}",
                c.child, c.link, c.sector
            )));
        }
        targets.push((link_offsets[c.child] + c.link, c.sector, c.sign));
    }
    let genus = if a.separating { pieces.iter().map(|p| p.genus).sum() } else { pieces[0].genus + 1 };
    let mut merged = Piece { faces: vec![], links: vec![], genus, components: 1 };
    for (i, p) in pieces.into_iter().enumerate() {
        let p = p.shifted(face_offsets[i], link_offsets[i]);
        merged.faces.extend(p.faces);
        merged.links.extend(p.links);
    }
    let f = merged.faces.len();
    let free = merged.links.len();
    merged.faces.push(PieceFace { cuffs: [targets[0].0, targets[1].0, free], minus: None });
    // insert the new germs after their sector's starting germ; two cuffs in
    // one sector go in cuff order
    let mut touched: Vec<usize> = targets.iter().map(|t| t.0).collect();
    touched.dedup();
    for link in touched {
        let old = std::mem::take(&mut merged.links[link]);
        let mut germs = Vec::with_capacity(old.len() + 2);
        for (s, g) in old.into_iter().enumerate() {
            germs.push(g);
            for (cuff, t) in targets.iter().enumerate() {
                if t.0 == link && t.1 == s {
                    germs.push(Germ { cuff: cuff as u8, face: FaceId(f as u32), sign: t.2 });
                }
            }
        }
        merged.links[link] = germs;
    }
    merged.links.push(vec![Germ { cuff: 2, face: FaceId(f as u32), sign: Sign::Plus }]);
    Ok(merged)
}

pub(crate) fn piece_to_complex(p: &Piece) -> ModelComplex {
    let faces = p
        .faces
        .iter()
        .enumerate()
        .map(|(i, f)| Face {
            created: 0,
            cuffs: f.cuffs.map(|l| LinkId(l as u32)),
            id: FaceId(i as u32),
            minus_side: f.minus,
        })
        .collect();
    let links = p
        .links
        .iter()
        .enumerate()
        .map(|(i, germs)| Link {
            created: 0,
            curves: vec![],
            germs: germs.clone(),
            id: LinkId(i as u32),
            retired: None,
        })
        .collect();
    let mut m = ModelComplex {
        blocks: vec![],
        closed: false,
        faces,
        genus: p.genus,
        links,
        origin: ModelOrigin::Spine,
        stages: vec![],
    };
    if p.components == 1 {
        if let Ok(stage) = boundary_stage(&m, BoundaryKind::Positive) {
            for l in &mut m.links {
                l.curves = stage.curve_links.iter().filter(|(_, &li)| li == l.id).map(|(&c, _)| c).collect();
            }
            m.stages.push(stage);
        }
    }
    m
}

/// Blockless model of the body described by `t`: loose faces on a link,
/// with germ order recorded at every link.
pub fn build_fat_spine(t: &SpineTree) -> Result<ModelComplex> {
    let p = build_piece(t)?;
    Ok(piece_to_complex(&p))
}
