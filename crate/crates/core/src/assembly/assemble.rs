use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};

use super::annulus::{check_bijection, AnnulusGraph, AnnulusNode};
use super::{check_shared_loops, validate_splitting, SplittingDescriptor};
use crate::error::{Error, Result};
use crate::model::{
    build_product_model, validate_complex, Face, FaceId, FaceSide, Link, LinkId, ModelComplex, ModelOrigin, PantsBlock,
    Side,
};
use crate::moves::MovePath;
use crate::pants_graph::{CurveId, PantsGraph};
use crate::spines::{negative_boundary, positive_boundary};

/// Pairs `(curve of ∂₊H⁻ᵢ, curve of ∂₊H⁺ᵢ)` across one thick surface.
pub type ThickMatching = Vec<(CurveId, CurveId)>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assembly {
    /// The annulus graph after crushing; one tree per assembled link.
    pub annulus: AnnulusGraph,
    pub model: ModelComplex,
    pub thin_path_lengths: Vec<usize>,
    pub tori_crushed: usize,
}

pub fn assemble_model(
    s: &SplittingDescriptor,
    models: &[ModelComplex],
    thick: &[ThickMatching],
    thin: &[MovePath],
) -> Result<ModelComplex> {
    assemble_model_detailed(s, models, thick, thin).map(|a| a.model)
}

/// Side-aware union-find over faces: `flip` records whether a face's sides
/// are swapped relative to its parent.
struct FaceClasses {
    parent: Vec<usize>,
    flip: Vec<bool>,
}

impl FaceClasses {
    fn new(n: usize) -> Self {
        FaceClasses { parent: (0..n).collect(), flip: vec![false; n] }
    }

    fn find(&mut self, x: usize) -> (usize, bool) {
        let p = self.parent[x];
        if p == x {
            return (x, false);
        }
        let (r, pf) = self.find(p);
        self.parent[x] = r;
        self.flip[x] ^= pf;
        (r, self.flip[x])
    }

    /// Glue free side `a` of face `x` to free side `b` of face `y`.
    fn glue(&mut self, x: usize, a: Side, y: usize, b: Side) -> Result<()> {
        let (rx, px) = self.find(x);
        let (ry, py) = self.find(y);
        // facing sides swap orientation when both carry the same name
        let rel = px ^ py ^ (a == b);
        if rx == ry {
            if rel {
                return Err(Error::ValidationFailure("face glued to itself with a twist".into()));
            }
            return Ok(());
        }
        let (hi, lo) = if rx > ry { (rx, ry) } else { (ry, rx) };
        self.parent[hi] = lo;
        self.flip[hi] = rel;
        Ok(())
    }
}

fn map_side(s: Side, flip: bool) -> Side {
    if flip {
        s.opposite()
    } else {
        s
    }
}

struct Builder<'a> {
    pieces: Vec<&'a ModelComplex>,
    offsets: Vec<usize>,
    glue: Vec<(usize, Side, usize, Side)>,
    nodes: Vec<AnnulusNode>,
    index: BTreeMap<AnnulusNode, usize>,
    edges: Vec<(usize, usize)>,
    surfaces: usize,
}

impl<'a> Builder<'a> {
    fn node(&mut self, n: AnnulusNode) -> usize {
        if let Some(&i) = self.index.get(&n) {
            return i;
        }
        self.nodes.push(n);
        self.index.insert(n, self.nodes.len() - 1);
        self.nodes.len() - 1
    }

    fn face(&self, piece: usize, fs: FaceSide) -> usize {
        self.offsets[piece] + fs.face.0 as usize
    }

    /// Records the annuli of one gluing surface: curve `c` joins loop
    /// `left_links[c]` of `lp` and loop `right_links[pair(c)]` of `rp`.
    fn annuli(
        &mut self,
        lp: usize,
        left: &BTreeMap<CurveId, LinkId>,
        rp: usize,
        right: &BTreeMap<CurveId, LinkId>,
        pairs: &[(CurveId, CurveId)],
    ) {
        let surface = self.surfaces;
        self.surfaces += 1;
        for &(a, b) in pairs {
            let c = self.node(AnnulusNode::Curve { curve: a, surface });
            let la = self.node(AnnulusNode::Loop { body: lp, link: left[&a] });
            let lb = self.node(AnnulusNode::Loop { body: rp, link: right[&b] });
            self.edges.push((c, la));
            self.edges.push((c, lb));
        }
    }
}

/// Vertex correspondence induced by a curve bijection, if it is an
/// isomorphism of pants graphs.
fn vertex_map(l: &PantsGraph, r: &PantsGraph, m: &BTreeMap<CurveId, CurveId>) -> Result<Vec<usize>> {
    let cuffs = |g: &PantsGraph, v: usize, f: &dyn Fn(CurveId) -> CurveId| {
        let mut k = [0u8, 1, 2].map(|s| f(g.curve_at(crate::pants_graph::Leg::new(v as u32, s))));
        k.sort();
        k
    };
    let mut by_cuffs: BTreeMap<[CurveId; 3], VecDeque<usize>> = BTreeMap::new();
    for v in 0..r.vertex_count() {
        by_cuffs.entry(cuffs(r, v, &|c| c)).or_default().push_back(v);
    }
    let mut phi = Vec::with_capacity(l.vertex_count());
    for v in 0..l.vertex_count() {
        let key = cuffs(l, v, &|c| m[&c]);
        let w = by_cuffs
            .get_mut(&key)
            .and_then(|q| q.pop_front())
            .ok_or_else(|| Error::MatchingMismatch(format!("pants {v} has no partner")))?;
        phi.push(w);
    }
    for (c, a, b) in l.matching() {
        let (x, y) = r.legs_of(m[&c])?;
        let mut want = [phi[a.vertex as usize], phi[b.vertex as usize]];
        let mut got = [x.vertex as usize, y.vertex as usize];
        want.sort();
        got.sort();
        if want != got {
            return Err(Error::MatchingMismatch(format!("curve {c} does not map to a corresponding curve")));
        }
    }
    Ok(phi)
}

/// Glue the body models along the thick matchings, fill each thin surface
/// with the product model of its path, merge links along the crushed
/// annulus graph, and check the result is a closed complex with `χ = 0`.
pub fn assemble_model_detailed(
    s: &SplittingDescriptor,
    models: &[ModelComplex],
    thick: &[ThickMatching],
    thin: &[MovePath],
) -> Result<Assembly> {
    let report = validate_splitting(s);
    if !report.valid {
        return Err(Error::ValidationFailure(report.violations.join("; ")));
    }
    if models.len() != s.bodies.len() {
        return Err(Error::ValidationFailure(format!("{} models for {} bodies", models.len(), s.bodies.len())));
    }
    if thick.len() != s.k() {
        return Err(Error::MatchingMismatch(format!("{} thick matchings for {} thick surfaces", thick.len(), s.k())));
    }
    let mut plus = Vec::with_capacity(models.len());
    let mut minus = Vec::with_capacity(models.len());
    for (i, (m, b)) in models.iter().zip(&s.bodies).enumerate() {
        let p = positive_boundary(m)?;
        if p.graph.genus() != b.plus {
            return Err(Error::ValidationFailure(format!("model {i} has positive genus {}", p.graph.genus())));
        }
        let n = negative_boundary(m)?;
        let mut got: Vec<u32> = n.iter().map(|st| st.graph.genus()).collect();
        let mut want = b.minus.clone();
        got.sort_unstable();
        want.sort_unstable();
        if got != want {
            return Err(Error::ValidationFailure(format!("model {i} has negative genera {got:?}, expected {want:?}")));
        }
        plus.push(p);
        minus.push(n);
    }
    // product models filling the thin surfaces, paired component by component
    let mut thin_models = Vec::new();
    let mut thin_pairs = Vec::new();
    let mut next_path = 0;
    for i in 0..s.k().saturating_sub(1) {
        let (lb, rb) = (2 * i + 1, 2 * i + 2);
        let mut used = vec![false; minus[rb].len()];
        for (lc, l) in minus[lb].iter().enumerate() {
            let rc = (0..minus[rb].len())
                .find(|&j| !used[j] && minus[rb][j].graph.genus() == l.graph.genus())
                .ok_or_else(|| Error::MatchingMismatch(format!("thin surface {} component {lc} unpaired", i + 1)))?;
            used[rc] = true;
            let path = thin
                .get(next_path)
                .ok_or_else(|| Error::ValidationFailure(format!("missing thin path {next_path}")))?;
            next_path += 1;
            let r = check_shared_loops(&l.graph, &minus[rb][rc].graph, path).map_err(|e| match e {
                Error::EndpointMismatch(m) => Error::MatchingMismatch(m),
                e => e,
            })?;
            if !r.clean {
                return Err(Error::SharedLoopViolation(r.violations));
            }
            thin_models.push(build_product_model(path)?);
            thin_pairs.push((lb, lc, rb, rc));
        }
    }
    if next_path != thin.len() {
        return Err(Error::ValidationFailure(format!("{} thin paths given, {next_path} used", thin.len())));
    }

    let mut pieces: Vec<&ModelComplex> = models.iter().collect();
    pieces.extend(thin_models.iter());
    let mut offsets = Vec::with_capacity(pieces.len());
    let mut total = 0;
    for p in &pieces {
        offsets.push(total);
        total += p.faces.len();
    }
    let mut b =
        Builder { pieces, offsets, glue: vec![], nodes: vec![], index: BTreeMap::new(), edges: vec![], surfaces: 0 };
    for p in 0..b.pieces.len() {
        for l in &b.pieces[p].links {
            b.node(AnnulusNode::Loop { body: p, link: l.id });
        }
    }
    for (i, m) in thick.iter().enumerate() {
        let (lp, rp) = (2 * i, 2 * i + 1);
        let (ls, rs) = (&plus[lp], &plus[rp]);
        check_bijection(&ls.curve_links.keys().copied().collect(), &rs.curve_links.keys().copied().collect(), m)
            .map_err(|e| Error::MatchingMismatch(format!("thick surface {}: {e}", i + 1)))?;
        let map: BTreeMap<CurveId, CurveId> = m.iter().copied().collect();
        let phi = vertex_map(&ls.graph, &rs.graph, &map)?;
        for (v, &w) in phi.iter().enumerate() {
            let (x, y) = (ls.faces[v], rs.faces[w]);
            b.glue.push((b.face(lp, x), x.side, b.face(rp, y), y.side));
        }
        b.annuli(lp, &ls.curve_links, rp, &rs.curve_links, m);
    }
    let mut thin_path_lengths = Vec::new();
    for (t, &(lb, lc, rb, rc)) in thin_pairs.iter().enumerate() {
        let tp = models.len() + t;
        let pm = &thin_models[t];
        thin_path_lengths.push(pm.blocks.len());
        let (first, last) = (&pm.stages[0], pm.stages.last().expect("product model has stages"));
        let (l, r) = (&minus[lb][lc], &minus[rb][rc]);
        // bottom of the product: its base faces are exposed on the side the
        // first blocks will cover, so the free side is the other one
        let iso = l.graph.isomorphism_to(&first.graph).ok_or(Error::BaseMismatch)?;
        for v in 0..l.faces.len() {
            let (x, y) = (l.faces[v], first.faces[iso.vertices[v]]);
            b.glue.push((b.face(lb, x), x.side, b.face(tp, y), y.side.opposite()));
        }
        let pairs: Vec<(CurveId, CurveId)> = iso.curves.iter().map(|(&a, &c)| (a, c)).collect();
        b.annuli(lb, &l.curve_links, tp, &first.curve_links, &pairs);
        let iso = r.graph.isomorphism_to(&last.graph).ok_or(Error::BaseMismatch)?;
        for v in 0..r.faces.len() {
            let (x, y) = (r.faces[v], last.faces[iso.vertices[v]]);
            b.glue.push((b.face(rb, x), x.side, b.face(tp, y), y.side));
        }
        let pairs: Vec<(CurveId, CurveId)> = iso.curves.iter().map(|(&a, &c)| (a, c)).collect();
        b.annuli(rb, &r.curve_links, tp, &last.curve_links, &pairs);
    }

    // links: one per tree of the crushed annulus graph
    let graph = AnnulusGraph::new(b.nodes.clone(), b.edges.clone());
    let tori_crushed = graph.tori().len();
    let crushed = graph.crush();
    let mut link_of: BTreeMap<(usize, LinkId), LinkId> = BTreeMap::new();
    for (i, comp) in crushed.components().iter().enumerate() {
        for &v in comp {
            for n in &crushed.nodes[v] {
                if let AnnulusNode::Loop { body, link } = *n {
                    link_of.insert((body, link), LinkId(i as u32));
                }
            }
        }
    }
    let link_count = crushed.components().len();

    // faces: one per glued class
    let mut classes = FaceClasses::new(total);
    for &(x, a, y, bs) in &b.glue {
        classes.glue(x, a, y, bs)?;
    }
    let mut piece_of = Vec::with_capacity(total);
    for (p, m) in b.pieces.iter().enumerate() {
        for f in &m.faces {
            piece_of.push((p, f.id));
        }
    }
    let mut new_id: BTreeMap<usize, FaceId> = BTreeMap::new();
    let mut faces: Vec<Face> = Vec::new();
    let mut place = Vec::with_capacity(total);
    for (g, &(p, fid)) in piece_of.iter().enumerate() {
        let (root, flip) = classes.find(g);
        let f = &b.pieces[p].faces[fid.0 as usize];
        let cuffs = f.cuffs.map(|l| link_of[&(p, l)]);
        let id = *new_id.entry(root).or_insert_with(|| {
            faces.push(Face { created: 0, cuffs, id: FaceId(faces.len() as u32), minus_side: None });
            FaceId(faces.len() as u32 - 1)
        });
        let mut mine = cuffs;
        let mut theirs = faces[id.0 as usize].cuffs;
        mine.sort();
        theirs.sort();
        if mine != theirs {
            return Err(Error::ValidationFailure(format!("glued faces disagree on cuffs at {id}")));
        }
        place.push((id, flip));
    }
    let map_fs = |p: usize, fs: FaceSide, offsets: &[usize]| {
        let (id, flip) = place[offsets[p] + fs.face.0 as usize];
        FaceSide::new(id, map_side(fs.side, flip))
    };
    let mut blocks = Vec::new();
    for (p, m) in b.pieces.iter().enumerate() {
        for blk in &m.blocks {
            blocks.push(PantsBlock {
                bottom: blk.bottom.iter().map(|&fs| map_fs(p, fs, &b.offsets)).collect(),
                bottom_link: link_of[&(p, blk.bottom_link)],
                kind: blk.kind,
                stage: blocks.len() + 1,
                top: blk.top.iter().map(|&fs| map_fs(p, fs, &b.offsets)).collect(),
                top_link: link_of[&(p, blk.top_link)],
                twist: blk.twist,
                vertical: blk.vertical.iter().map(|&l| link_of[&(p, l)]).collect(),
            });
        }
    }
    let links = (0..link_count as u32)
        .map(|i| Link { created: 0, curves: vec![], germs: vec![], id: LinkId(i), retired: None })
        .collect();
    let model = ModelComplex {
        blocks,
        closed: true,
        faces,
        genus: s.bodies[0].plus,
        links,
        origin: ModelOrigin::Assembled,
        stages: vec![],
    };
    let r = validate_complex(&model);
    if !r.valid {
        return Err(Error::ValidationFailure(r.summary()));
    }
    let chi = model.euler_characteristic_unchecked();
    if chi != 0 {
        return Err(Error::ValidationFailure(format!("assembled complex has χ = {chi}")));
    }
    Ok(Assembly { annulus: crushed, model, thin_path_lengths, tori_crushed })
}
