use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::model::{LinkId, ModelComplex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LoopClass {
    Interior,
    Boundary,
}

/// A link is interior when every face with a cuff on it has both sides
/// covered by blocks and no exposed curve of the last stage lies on it.
pub fn classify_loops(m: &ModelComplex) -> BTreeMap<LinkId, LoopClass> {
    let covered = m.covered_sides();
    let exposed: BTreeSet<LinkId> =
        m.stages.last().map(|s| s.curve_links.values().copied().collect()).unwrap_or_default();
    let mut enclosed: BTreeMap<LinkId, bool> = m.links.iter().map(|l| (l.id, true)).collect();
    for (f, &c) in m.faces.iter().zip(&covered) {
        if c < 2 {
            for l in f.cuffs {
                enclosed.insert(l, false);
            }
        }
    }
    enclosed
        .into_iter()
        .map(|(l, e)| (l, if e && !exposed.contains(&l) { LoopClass::Interior } else { LoopClass::Boundary }))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::build_product_model;
    use crate::moves::{Move, MovePath, Repairing};
    use crate::pants_graph::{CurveId, PantsGraph};
    use crate::spines::{build_fat_spine, SpineTree};

    #[test]
    fn bare_spine_is_all_boundary() {
        let m = build_fat_spine(&SpineTree::genus_two()).unwrap();
        assert!(classify_loops(&m).values().all(|&c| c == LoopClass::Boundary));
    }

    #[test]
    fn enclosed_product_curve_is_interior() {
        // curve 3 is created at stage 1 and retired at stage 2
        let moves = vec![
            Move::a(CurveId(0), Repairing::Cross2, 0, CurveId(3)),
            Move::a(CurveId(3), Repairing::Cross2, 0, CurveId(4)),
            Move::a(CurveId(4), Repairing::Cross2, 0, CurveId(5)),
        ];
        let m = build_product_model(&MovePath::new(PantsGraph::theta(), moves)).unwrap();
        let c = classify_loops(&m);
        assert_eq!(c[&LinkId(3)], LoopClass::Interior);
        assert_eq!(c[&LinkId(5)], LoopClass::Boundary);
        assert_eq!(c[&LinkId(0)], LoopClass::Boundary);
    }
}
