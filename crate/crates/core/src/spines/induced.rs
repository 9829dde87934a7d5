use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::model::{FaceSide, ModelComplex, ModelOrigin, Side, Stage};
use crate::pants_graph::{CurveId, Leg, PantsGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundaryKind {
    Positive,
    Negative,
}

impl BoundaryKind {
    fn admits(self, minus_side: Option<Side>, side: Side) -> bool {
        match self {
            BoundaryKind::Positive => minus_side != Some(side),
            BoundaryKind::Negative => minus_side == Some(side),
        }
    }
}

/// The decomposition a blockless region induces on one boundary: one pants
/// per free face side of that boundary, one curve per sector. Split into
/// connected components, ordered by their first face side.
pub(crate) fn boundary_parts(m: &ModelComplex, kind: BoundaryKind) -> Result<Vec<Stage>> {
    let cov = m.coverage();
    let mut faces = Vec::new();
    let mut vertex: BTreeMap<FaceSide, usize> = BTreeMap::new();
    for f in &m.faces {
        for side in Side::BOTH {
            let fs = FaceSide::new(f.id, side);
            if kind.admits(f.minus_side, side) && !cov.contains_key(&fs) {
                vertex.insert(fs, faces.len());
                faces.push(fs);
            }
        }
    }
    // (start vertex, start slot, end vertex, end slot, link)
    let mut sectors = Vec::new();
    for l in &m.links {
        let k = l.germs.len();
        for i in 0..k {
            let (g, h) = (l.germs[i], l.germs[(i + 1) % k]);
            let start = FaceSide::new(g.face, g.sign.forward_side());
            let end = FaceSide::new(h.face, h.sign.forward_side().opposite());
            let minus_of = |fs: FaceSide| m.face(fs.face).and_then(|f| f.minus_side);
            let (a, b) = (kind.admits(minus_of(start), start.side), kind.admits(minus_of(end), end.side));
            if a != b {
                return Err(Error::NotSingleBody(format!("sector {i} of {} joins both boundaries", l.id)));
            }
            if !a {
                continue;
            }
            let (Some(&va), Some(&vb)) = (vertex.get(&start), vertex.get(&end)) else {
                return Err(Error::NotSingleBody(format!("sector {i} of {} meets a covered side", l.id)));
            };
            sectors.push((va, g.cuff, vb, h.cuff, l.id));
        }
    }
    if faces.is_empty() {
        return match kind {
            BoundaryKind::Negative => Ok(vec![]),
            BoundaryKind::Positive => Err(Error::NotSingleBody("boundary is empty".into())),
        };
    }
    let mut comp: Vec<usize> = (0..faces.len()).collect();
    fn root(c: &mut [usize], mut x: usize) -> usize {
        while c[x] != x {
            c[x] = c[c[x]];
            x = c[x];
        }
        x
    }
    for &(a, _, b, _, _) in &sectors {
        let (ra, rb) = (root(&mut comp, a), root(&mut comp, b));
        comp[ra.max(rb)] = ra.min(rb);
    }
    let roots: Vec<usize> = (0..faces.len()).map(|v| root(&mut comp, v)).collect();
    let mut order: Vec<usize> = roots.clone();
    order.sort();
    order.dedup();
    let mut parts = Vec::with_capacity(order.len());
    for r in order {
        let members: Vec<usize> = (0..faces.len()).filter(|&v| roots[v] == r).collect();
        let local: BTreeMap<usize, u32> = members.iter().enumerate().map(|(i, &v)| (v, i as u32)).collect();
        let mut matching = Vec::new();
        let mut ids = Vec::new();
        let mut curve_links = BTreeMap::new();
        for &(a, sa, b, sb, link) in sectors.iter().filter(|s| roots[s.0] == r) {
            let c = CurveId(ids.len() as u32);
            matching.push((Leg::new(local[&a], sa), Leg::new(local[&b], sb)));
            ids.push(c);
            curve_links.insert(c, link);
        }
        let graph = PantsGraph::with_curve_ids(members.len(), &matching, &ids)
            .map_err(|e| Error::NotSingleBody(format!("boundary component is not a closed surface: {e}")))?;
        parts.push(Stage { curve_links, faces: members.iter().map(|&v| faces[v]).collect(), graph });
    }
    Ok(parts)
}

pub(crate) fn boundary_stage(m: &ModelComplex, kind: BoundaryKind) -> Result<Stage> {
    let mut parts = boundary_parts(m, kind)?;
    if parts.len() != 1 {
        return Err(Error::NotSingleBody(format!("boundary has {} components", parts.len())));
    }
    Ok(parts.remove(0))
}

/// Exposed positive boundary with its face and link bookkeeping.
pub fn positive_boundary(m: &ModelComplex) -> Result<Stage> {
    if m.origin == ModelOrigin::Assembled || m.closed {
        return Err(Error::NotSingleBody("closed complex has no boundary".into()));
    }
    match m.stages.last() {
        Some(s) => Ok(s.clone()),
        None if m.blocks.is_empty() => boundary_stage(m, BoundaryKind::Positive),
        None => Err(Error::NotSingleBody("blocks without stage records".into())),
    }
}

/// Components of the negative boundary of a compression-body model, read
/// off its product faces.
pub fn negative_boundary(m: &ModelComplex) -> Result<Vec<Stage>> {
    if m.origin == ModelOrigin::Assembled || m.closed {
        return Err(Error::NotSingleBody("closed complex has no boundary".into()));
    }
    boundary_parts(m, BoundaryKind::Negative)
}

pub fn induced_boundary_decomposition(m: &ModelComplex) -> Result<PantsGraph> {
    positive_boundary(m).map(|s| s.graph)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Sign;
    use crate::spines::{build_fat_spine, SpineTree};

    #[test]
    fn genus_two_spine_induces_dumbbell() {
        let m = build_fat_spine(&SpineTree::genus_two()).unwrap();
        let g = induced_boundary_decomposition(&m).unwrap();
        assert!(g.is_isomorphic(&PantsGraph::dumbbell()));
        let lifts: Vec<usize> = m.links.iter().map(|l| l.curves.len()).collect();
        assert_eq!(lifts, vec![2, 1]);
    }

    #[test]
    fn genus_three_spine_has_six_lifts() {
        let t = SpineTree::nonseparating(SpineTree::genus_two(), (1, 0, Sign::Plus), (1, 0, Sign::Plus));
        let m = build_fat_spine(&t).unwrap();
        let g = induced_boundary_decomposition(&m).unwrap();
        assert_eq!(g.curve_count(), 6);
        assert_eq!(g.vertex_count(), 4);
        let lifts: Vec<usize> = m.links.iter().map(|l| l.curves.len()).collect();
        assert_eq!(lifts, vec![2, 3, 1]);
    }

    #[test]
    fn product_spine_sees_both_boundaries() {
        let m = build_fat_spine(&SpineTree::product(vec![3])).unwrap();
        let plus = positive_boundary(&m).unwrap().graph;
        let minus = negative_boundary(&m).unwrap().remove(0).graph;
        let chain = PantsGraph::chain(3).unwrap();
        assert!(plus.is_isomorphic(&chain));
        assert!(minus.is_isomorphic(&chain));
    }

    #[test]
    fn two_component_product_is_not_one_body() {
        let m = build_fat_spine(&SpineTree::product(vec![2, 3])).unwrap();
        let minus = negative_boundary(&m).unwrap();
        assert_eq!(minus.iter().map(|s| s.graph.genus()).collect::<Vec<_>>(), vec![2, 3]);
        assert!(m.stages.is_empty());
        assert!(matches!(induced_boundary_decomposition(&m), Err(Error::NotSingleBody(_))));
    }

    #[test]
    fn handlebody_has_no_negative_boundary() {
        let m = build_fat_spine(&SpineTree::genus_two()).unwrap();
        assert_eq!(negative_boundary(&m), Ok(vec![]));
    }
}
