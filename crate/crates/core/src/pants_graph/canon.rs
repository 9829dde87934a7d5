//! Canonical labeling by individualization and refinement.
//!
//! The search explores every leaf of the refinement tree and keeps the
//! lexicographically smallest relabeled multiplicity matrix. No automorphism
//! pruning is done; at the sizes used here (at most a dozen pants) the tree is
//! small.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{CurveId, Leg, PantsGraph};

/// Isomorphism-invariant encoding of a pants graph.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CanonicalForm(pub String);

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl CanonicalForm {
    pub fn as_bytes(&self) -> &[u8] {
        self.0.as_bytes()
    }
}

/// Vertex and curve correspondence between two isomorphic graphs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Isomorphism {
    pub vertices: Vec<usize>,
    pub curves: BTreeMap<CurveId, CurveId>,
}

struct Best {
    code: Vec<u8>,
    perm: Vec<usize>,
}

fn refine(m: &[Vec<u8>], mut cells: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    let n = m.len();
    loop {
        let mut cell_of = vec![0usize; n];
        for (i, c) in cells.iter().enumerate() {
            for &v in c {
                cell_of[v] = i;
            }
        }
        let k = cells.len();
        let mut next = Vec::with_capacity(k);
        for cell in &cells {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut groups: BTreeMap<Vec<u8>, Vec<usize>> = BTreeMap::new();
            for &v in cell {
                let mut sig = vec![0u8; k];
                for (u, &mult) in m[v].iter().enumerate() {
                    sig[cell_of[u]] += mult;
                }
                groups.entry(sig).or_default().push(v);
            }
            next.extend(groups.into_values());
        }
        if next.len() == k {
            return next;
        }
        cells = next;
    }
}

fn encode(m: &[Vec<u8>], order: &[usize]) -> Vec<u8> {
    let n = order.len();
    let mut code = Vec::with_capacity(n * (n + 1) / 2);
    for i in 0..n {
        for j in i..n {
            code.push(m[order[i]][order[j]]);
        }
    }
    code
}

fn search(m: &[Vec<u8>], cells: Vec<Vec<usize>>, best: &mut Option<Best>) {
    let cells = refine(m, cells);
    if cells.iter().all(|c| c.len() == 1) {
        let order: Vec<usize> = cells.iter().map(|c| c[0]).collect();
        let code = encode(m, &order);
        // lexicographic order, larger codes put heavy multiplicities first
        let better = match best {
            None => true,
            Some(b) => code > b.code,
        };
        if better {
            let mut perm = vec![0; order.len()];
            for (new, &old) in order.iter().enumerate() {
                perm[old] = new;
            }
            *best = Some(Best { code, perm });
        }
        return;
    }
    let (target, _) = cells
        .iter()
        .enumerate()
        .filter(|(_, c)| c.len() > 1)
        .min_by_key(|(i, c)| (c.len(), *i))
        .expect("non-discrete partition has a splittable cell");
    for &v in &cells[target] {
        let mut next = Vec::with_capacity(cells.len() + 1);
        next.extend_from_slice(&cells[..target]);
        next.push(vec![v]);
        next.push(cells[target].iter().copied().filter(|&u| u != v).collect());
        next.extend_from_slice(&cells[target + 1..]);
        search(m, next, best);
    }
}

impl PantsGraph {
    /// Canonical labeling: `perm[old] = new` together with the code it yields.
    fn canonical_labeling(&self) -> (Vec<u8>, Vec<usize>) {
        let m = self.multiplicities();
        let mut best = None;
        search(&m, vec![(0..self.vertex_count()).collect()], &mut best);
        let b = best.expect("search reaches at least one leaf");
        (b.code, b.perm)
    }

    /// Encoding that is equal for two graphs iff they are isomorphic as
    /// multigraphs, with curve ids, vertex ids and slot order forgotten.
    pub fn canonical_form(&self) -> CanonicalForm {
        let (code, _) = self.canonical_labeling();
        let n = self.vertex_count();
        let mut s = format!("g{}:", self.genus());
        let mut idx = 0;
        let mut first = true;
        for i in 0..n {
            for j in i..n {
                let k = code[idx];
                idx += 1;
                if k > 0 {
                    if !first {
                        s.push(',');
                    }
                    first = false;
                    s.push_str(&format!("{i}-{j}"));
                    if k > 1 {
                        s.push_str(&format!("x{k}"));
                    }
                }
            }
        }
        CanonicalForm(s)
    }

    pub fn is_isomorphic(&self, other: &PantsGraph) -> bool {
        self.vertex_count() == other.vertex_count() && self.canonical_form() == other.canonical_form()
    }

    /// An explicit isomorphism `self -> other`, if one exists.
    pub fn isomorphism_to(&self, other: &PantsGraph) -> Option<Isomorphism> {
        if self.vertex_count() != other.vertex_count() {
            return None;
        }
        let (ca, pa) = self.canonical_labeling();
        let (cb, pb) = other.canonical_labeling();
        if ca != cb {
            return None;
        }
        let mut inv_b = vec![0; pb.len()];
        for (old, &new) in pb.iter().enumerate() {
            inv_b[new] = old;
        }
        let vertices: Vec<usize> = pa.iter().map(|&new| inv_b[new]).collect();
        // pair curves between corresponding vertex pairs; parallel curves in
        // any order
        let mut pool: BTreeMap<(usize, usize), Vec<CurveId>> = BTreeMap::new();
        for (c, a, b) in other.matching() {
            let key = ordered(a.vertex as usize, b.vertex as usize);
            pool.entry(key).or_default().push(c);
        }
        let mut curves = BTreeMap::new();
        for (c, a, b) in self.matching() {
            let key = ordered(vertices[a.vertex as usize], vertices[b.vertex as usize]);
            let target = pool.get_mut(&key)?.pop()?;
            curves.insert(c, target);
        }
        Some(Isomorphism { vertices, curves })
    }
}

fn ordered(a: usize, b: usize) -> (usize, usize) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

impl Isomorphism {
    /// Image of a leg: a leg of the target vertex carrying the image curve.
    /// For a self-loop the two legs are distinguished by `which`.
    pub fn map_leg(&self, source: &PantsGraph, target: &PantsGraph, leg: Leg) -> Leg {
        let c = source.curve_at(leg);
        let tc = self.curves[&c];
        let (a, b) = target.legs_of(tc).expect("image curve exists");
        let v = self.vertices[leg.vertex as usize] as u32;
        if a.vertex == b.vertex {
            let (sa, _) = source.legs_of(c).expect("source curve exists");
            if sa == leg {
                a
            } else {
                b
            }
        } else if a.vertex == v {
            a
        } else {
            b
        }
    }
}
