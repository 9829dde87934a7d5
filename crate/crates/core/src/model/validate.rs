use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{BlockRole, FaceSide, ModelComplex, Side};
use crate::pants_graph::Leg;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    BadFaceId,
    DuplicateLink,
    MissingLink,
    MissingFace,
    IncompleteMarkedLoops,
    BlockNotOnLink,
    InteriorsNotDisjoint,
    StageInconsistent,
    GermInconsistent,
    ClosedWithFreeSide,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub detail: String,
    pub kind: ViolationKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexReport {
    pub valid: bool,
    pub violations: Vec<Violation>,
}

impl ComplexReport {
    pub fn summary(&self) -> String {
        match self.violations.first() {
            None => "valid".into(),
            Some(v) if self.violations.len() == 1 => v.detail.clone(),
            Some(v) => format!("{} (and {} more)", v.detail, self.violations.len() - 1),
        }
    }
}

struct Collector(Vec<Violation>);

impl Collector {
    fn push(&mut self, kind: ViolationKind, detail: String) {
        self.0.push(Violation { detail, kind });
    }
}

pub fn validate_complex(m: &ModelComplex) -> ComplexReport {
    let mut out = Collector(vec![]);
    check_ids(m, &mut out);
    check_blocks(m, &mut out);
    check_coverage(m, &mut out);
    check_stages(m, &mut out);
    check_germs(m, &mut out);
    ComplexReport { valid: out.0.is_empty(), violations: out.0 }
}

fn check_ids(m: &ModelComplex, out: &mut Collector) {
    for (i, f) in m.faces.iter().enumerate() {
        if f.id.0 as usize != i {
            out.push(ViolationKind::BadFaceId, format!("face at position {i} has id {}", f.id));
        }
        for l in f.cuffs {
            if m.link(l).is_none() {
                out.push(ViolationKind::MissingLink, format!("face {} has cuff on unknown link {l}", f.id));
            }
        }
    }
    for w in m.links.windows(2) {
        if w[0].id >= w[1].id {
            out.push(ViolationKind::DuplicateLink, format!("links not strictly ordered at {}", w[1].id));
        }
    }
}

fn check_blocks(m: &ModelComplex, out: &mut Collector) {
    for (i, b) in m.blocks.iter().enumerate() {
        let (nb, nt, nv) = b.kind.shape();
        if b.bottom.len() != nb || b.top.len() != nt || b.vertical.len() != nv {
            out.push(
                ViolationKind::IncompleteMarkedLoops,
                format!(
                    "block {i} ({:?}) has {}+{} faces and {} vertical loops",
                    b.kind,
                    b.bottom.len(),
                    b.top.len(),
                    b.vertical.len()
                ),
            );
        }
        for l in [b.bottom_link, b.top_link].iter().chain(&b.vertical) {
            if m.link(*l).is_none() {
                out.push(ViolationKind::MissingLink, format!("block {i} references unknown link {l}"));
            }
        }
        for (fs, core) in b.bottom.iter().map(|f| (f, b.bottom_link)).chain(b.top.iter().map(|f| (f, b.top_link))) {
            match m.face(fs.face) {
                None => out.push(ViolationKind::MissingFace, format!("block {i} references unknown face {}", fs.face)),
                Some(f) if !f.cuffs.contains(&core) => out
                    .push(ViolationKind::BlockNotOnLink, format!("block {i}: face {} has no cuff on {core}", fs.face)),
                Some(_) => {}
            }
        }
        for v in &b.vertical {
            let on = |faces: &[FaceSide]| faces.iter().any(|fs| m.face(fs.face).is_some_and(|f| f.cuffs.contains(v)));
            if !on(&b.bottom) || !on(&b.top) {
                out.push(ViolationKind::BlockNotOnLink, format!("block {i}: vertical loop {v} misses a face"));
            }
        }
    }
}

fn check_coverage(m: &ModelComplex, out: &mut Collector) {
    let cov = m.coverage();
    for (fs, slots) in &cov {
        if slots.len() > 1 {
            let who: Vec<String> = slots
                .iter()
                .map(|(b, r)| format!("block {b} {}", if *r == BlockRole::Bottom { "bottom" } else { "top" }))
                .collect();
            out.push(ViolationKind::InteriorsNotDisjoint, format!("{fs} covered by {}", who.join(", ")));
        }
    }
    if m.closed {
        for f in &m.faces {
            for s in Side::BOTH {
                let fs = FaceSide::new(f.id, s);
                if !cov.contains_key(&fs) {
                    out.push(ViolationKind::ClosedWithFreeSide, format!("{fs} is free in a closed complex"));
                }
            }
        }
    }
}

fn check_stages(m: &ModelComplex, out: &mut Collector) {
    if m.stages.is_empty() {
        return;
    }
    if m.stages.len() != m.blocks.len() + 1 {
        out.push(ViolationKind::StageInconsistent, format!("{} stages for {} blocks", m.stages.len(), m.blocks.len()));
        return;
    }
    for (k, st) in m.stages.iter().enumerate() {
        let bad = |d: String| Some((ViolationKind::StageInconsistent, format!("stage {k}: {d}")));
        let mut issue = None;
        if st.graph.genus() != m.genus {
            issue = bad(format!("genus {} differs from {}", st.graph.genus(), m.genus));
        } else if st.faces.len() != st.graph.vertex_count() {
            issue = bad("face count differs from vertex count".into());
        } else if st.curve_links.keys().copied().collect::<BTreeSet<_>>() != st.graph.curve_ids().collect() {
            issue = bad("curve map does not match the graph".into());
        } else if st.faces.iter().collect::<BTreeSet<_>>().len() != st.faces.len() {
            issue = bad("a face side is exposed twice".into());
        } else {
            for (v, fs) in st.faces.iter().enumerate() {
                let Some(f) = m.face(fs.face) else {
                    issue = bad(format!("unknown face {}", fs.face));
                    break;
                };
                if f.created > k {
                    issue = bad(format!("face {} exposed before it exists", f.id));
                    break;
                }
                let covered_early = m.blocks[..k].iter().any(|b| b.bottom.contains(fs) || b.top.contains(fs));
                if covered_early {
                    issue = bad(format!("{fs} exposed after an earlier block covers it"));
                    break;
                }
                // slot order may differ from cuff order when a path is layered
                // onto a spine, so compare the cuff links as multisets
                let mut seen = [0u8, 1, 2].map(|s| st.curve_links[&st.graph.curve_at(Leg::new(v as u32, s))]);
                let mut want = f.cuffs;
                seen.sort();
                want.sort();
                let cuffs_agree = seen == want;
                if !cuffs_agree {
                    issue = bad(format!("cuffs of face {} disagree with vertex {v}", f.id));
                    break;
                }
            }
        }
        if let Some((kind, d)) = issue {
            out.push(kind, d);
        }
    }
}

fn check_germs(m: &ModelComplex, out: &mut Collector) {
    for l in &m.links {
        for g in &l.germs {
            let ok = g.cuff < 3 && m.face(g.face).is_some_and(|f| f.cuffs[g.cuff as usize] == l.id);
            if !ok {
                out.push(
                    ViolationKind::GermInconsistent,
                    format!("link {} germ at {} cuff {} does not lie on it", l.id, g.face, g.cuff),
                );
            }
        }
    }
}
