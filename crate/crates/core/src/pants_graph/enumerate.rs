//! Exhaustive enumeration of pants graphs up to isomorphism.
//!
//! Every connected trivalent multigraph on `n + 2` vertices arises from one on
//! `n` vertices by one of two augmentations:
//!
//! * subdivide two curves (or one curve twice) and join the new vertices, or
//! * subdivide one curve and hang a new vertex carrying a self-loop off it.
//!
//! If the graph has a cycle through distinct vertices, deleting a cycle edge
//! and smoothing its endpoints inverts the first operation. Otherwise the graph
//! is a tree with loops at its leaves and deleting a leaf inverts the second.

use std::collections::BTreeMap;

use super::{CanonicalForm, CurveId, Leg, PantsGraph};
use crate::error::{Error, Result};

/// One representative per isomorphism class, sorted by canonical form, with
/// curve ids `0..3g-3`.
pub fn enumerate_pants_graphs(genus: u32) -> Result<Vec<PantsGraph>> {
    if genus < 2 {
        return Err(Error::GenusBelowTwo);
    }
    let mut level: BTreeMap<CanonicalForm, PantsGraph> =
        [PantsGraph::theta(), PantsGraph::dumbbell()].into_iter().map(|g| (g.canonical_form(), g)).collect();
    for _ in 2..genus {
        let mut next = BTreeMap::new();
        for g in level.values() {
            for h in augmentations(g) {
                next.entry(h.canonical_form()).or_insert(h);
            }
        }
        level = next;
    }
    Ok(level.into_values().map(renumber).collect())
}

fn renumber(g: PantsGraph) -> PantsGraph {
    let pairs: Vec<(Leg, Leg)> = g.matching().into_iter().map(|(_, a, b)| (a, b)).collect();
    PantsGraph::new(g.vertex_count(), &pairs).expect("augmentation preserves validity")
}

fn build(n: usize, partner: Vec<usize>) -> PantsGraph {
    let mut leg_curve = vec![CurveId(0); partner.len()];
    let mut next = 0;
    for i in 0..partner.len() {
        if i < partner[i] {
            leg_curve[i] = CurveId(next);
            leg_curve[partner[i]] = CurveId(next);
            next += 1;
        }
    }
    PantsGraph::from_raw(n, partner, leg_curve)
}

fn link(p: &mut [usize], a: usize, b: usize) {
    p[a] = b;
    p[b] = a;
}

/// All one-step augmentations of `g` (with repetitions up to isomorphism).
pub(crate) fn augmentations(g: &PantsGraph) -> Vec<PantsGraph> {
    let n = g.vertex_count();
    let curves: Vec<(usize, usize)> = g.matching().iter().map(|&(_, a, b)| (a.index(), b.index())).collect();
    let base: Vec<usize> = (0..3 * n).map(|i| g.partner[i]).collect();
    let (x, y) = (3 * n, 3 * n + 3);
    let mut out = Vec::new();
    let fresh = || {
        let mut p = base.clone();
        p.extend(std::iter::repeat_n(usize::MAX, 6));
        p
    };
    for (i, &(a, b)) in curves.iter().enumerate() {
        // same curve subdivided twice: a - x - y - b, plus x = y
        let mut p = fresh();
        link(&mut p, a, x);
        link(&mut p, x + 1, y);
        link(&mut p, y + 1, b);
        link(&mut p, x + 2, y + 2);
        out.push(build(n + 2, p));
        // pendant loop vertex y hanging off a subdivision point x of a-b
        let mut p = fresh();
        link(&mut p, a, x);
        link(&mut p, x + 1, b);
        link(&mut p, x + 2, y);
        link(&mut p, y + 1, y + 2);
        out.push(build(n + 2, p));
        for &(c, d) in &curves[i + 1..] {
            let mut p = fresh();
            link(&mut p, a, x);
            link(&mut p, x + 1, b);
            link(&mut p, c, y);
            link(&mut p, y + 1, d);
            link(&mut p, x + 2, y + 2);
            out.push(build(n + 2, p));
        }
    }
    out
}
