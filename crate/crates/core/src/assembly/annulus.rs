use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{LinkId, ModelComplex};
use crate::pants_graph::CurveId;
use crate::spines::positive_boundary;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum AnnulusNode {
    /// A link component of one of the glued pieces.
    Loop { body: usize, link: LinkId },
    /// A decomposition curve of a gluing surface; its vertical annulus joins
    /// the loops on either side.
    Curve { curve: CurveId, surface: usize },
}

/// Incidence of loops and gluing curves. Each node is a set of original
/// nodes so that crushing can merge them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnnulusGraph {
    pub edges: Vec<(usize, usize)>,
    pub nodes: Vec<Vec<AnnulusNode>>,
}

impl AnnulusGraph {
    pub fn new(nodes: Vec<AnnulusNode>, edges: Vec<(usize, usize)>) -> Self {
        AnnulusGraph { edges, nodes: nodes.into_iter().map(|n| vec![n]).collect() }
    }

    /// Connected components as sorted node-index lists, ordered by first index.
    pub fn components(&self) -> Vec<Vec<usize>> {
        components_without(self.nodes.len(), &self.edges, &BTreeSet::new())
    }

    /// Independent cycles: `E − V + C`.
    pub fn cycle_rank(&self) -> usize {
        self.edges.len() + self.components().len() - self.nodes.len()
    }

    pub fn is_forest(&self) -> bool {
        self.cycle_rank() == 0
    }

    fn bridges(&self) -> BTreeSet<usize> {
        let n = self.nodes.len();
        let mut adj: Vec<Vec<(usize, usize)>> = vec![vec![]; n];
        for (e, &(a, b)) in self.edges.iter().enumerate() {
            adj[a].push((b, e));
            adj[b].push((a, e));
        }
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0; n];
        let mut bridges = BTreeSet::new();
        let mut time = 0;
        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            // explicit stack of (vertex, edge used to enter, next adjacency index)
            let mut stack = vec![(root, usize::MAX, 0usize)];
            disc[root] = time;
            low[root] = time;
            time += 1;
            while let Some(top) = stack.last_mut() {
                let (v, via) = (top.0, top.1);
                if top.2 < adj[v].len() {
                    let (w, e) = adj[v][top.2];
                    top.2 += 1;
                    if e == via {
                        continue;
                    }
                    if disc[w] == usize::MAX {
                        disc[w] = time;
                        low[w] = time;
                        time += 1;
                        stack.push((w, e, 0));
                    } else {
                        low[v] = low[v].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if let Some(&(parent, _, _)) = stack.last() {
                        low[parent] = low[parent].min(low[v]);
                        if low[v] > disc[parent] {
                            bridges.insert(via);
                        }
                    }
                }
            }
        }
        bridges
    }

    /// Node sets of the tori: two-edge-connected pieces carrying a cycle.
    pub fn tori(&self) -> Vec<Vec<AnnulusNode>> {
        let bridges = self.bridges();
        let non_bridge: BTreeSet<usize> = (0..self.edges.len()).filter(|e| !bridges.contains(e)).collect();
        let cyc_nodes: BTreeSet<usize> = non_bridge.iter().flat_map(|&e| [self.edges[e].0, self.edges[e].1]).collect();
        components_without(self.nodes.len(), &self.edges, &bridges)
            .into_iter()
            .filter(|c| c.iter().any(|v| cyc_nodes.contains(v)))
            .map(|c| self.merged(&c))
            .collect()
    }

    fn merged(&self, members: &[usize]) -> Vec<AnnulusNode> {
        let mut set: Vec<AnnulusNode> = members.iter().flat_map(|&v| self.nodes[v].iter().copied()).collect();
        set.sort();
        set.dedup();
        set
    }

    /// Contract every torus to a single node. The result is a forest whose
    /// nodes are ordered by their least member; crushing it again changes
    /// nothing.
    pub fn crush(&self) -> AnnulusGraph {
        let bridges = self.bridges();
        let comps = components_without(self.nodes.len(), &self.edges, &bridges);
        let mut merged: Vec<(Vec<AnnulusNode>, Vec<usize>)> =
            comps.iter().map(|c| (self.merged(c), c.clone())).collect();
        merged.sort();
        let mut index = vec![0; self.nodes.len()];
        for (i, (_, members)) in merged.iter().enumerate() {
            for &v in members {
                index[v] = i;
            }
        }
        let mut edges: Vec<(usize, usize)> = bridges
            .iter()
            .map(|&e| {
                let (a, b) = (index[self.edges[e].0], index[self.edges[e].1]);
                (a.min(b), a.max(b))
            })
            .collect();
        edges.sort();
        AnnulusGraph { edges, nodes: merged.into_iter().map(|(n, _)| n).collect() }
    }
}

fn components_without(n: usize, edges: &[(usize, usize)], skip: &BTreeSet<usize>) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn root(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for (e, &(a, b)) in edges.iter().enumerate() {
        if skip.contains(&e) {
            continue;
        }
        let (ra, rb) = (root(&mut parent, a), root(&mut parent, b));
        parent[ra.max(rb)] = ra.min(rb);
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for v in 0..n {
        let r = root(&mut parent, v);
        groups.entry(r).or_default().push(v);
    }
    groups.into_values().collect()
}

/// Annulus graph across the positive boundaries of two facing models;
/// `matching` pairs each left curve with one right curve.
pub fn annulus_forest(
    left: &ModelComplex,
    right: &ModelComplex,
    matching: &[(CurveId, CurveId)],
) -> Result<AnnulusGraph> {
    let l = positive_boundary(left)?;
    let r = positive_boundary(right)?;
    check_bijection(&l.curve_links.keys().copied().collect(), &r.curve_links.keys().copied().collect(), matching)?;
    let mut nodes = Vec::new();
    let mut index = BTreeMap::new();
    let mut node = |n: AnnulusNode, nodes: &mut Vec<AnnulusNode>| {
        *index.entry(n).or_insert_with(|| {
            nodes.push(n);
            nodes.len() - 1
        })
    };
    let mut edges = Vec::new();
    for &(a, b) in matching {
        let c = node(AnnulusNode::Curve { curve: a, surface: 0 }, &mut nodes);
        let la = node(AnnulusNode::Loop { body: 0, link: l.curve_links[&a] }, &mut nodes);
        let lb = node(AnnulusNode::Loop { body: 1, link: r.curve_links[&b] }, &mut nodes);
        edges.push((c, la));
        edges.push((c, lb));
    }
    Ok(AnnulusGraph::new(nodes, edges))
}

pub(crate) fn check_bijection(
    left: &BTreeSet<CurveId>,
    right: &BTreeSet<CurveId>,
    matching: &[(CurveId, CurveId)],
) -> Result<()> {
    let a: BTreeSet<CurveId> = matching.iter().map(|p| p.0).collect();
    let b: BTreeSet<CurveId> = matching.iter().map(|p| p.1).collect();
    if a.len() != matching.len() || b.len() != matching.len() {
        return Err(Error::NotAMatching("a curve is paired twice".into()));
    }
    if &a != left {
        return Err(Error::NotAMatching("left side does not list every left curve exactly once".into()));
    }
    if &b != right {
        return Err(Error::NotAMatching("right side does not list every right curve exactly once".into()));
    }
    Ok(())
}
