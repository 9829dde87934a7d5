#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;

use layered_model::assembly::{CompressionBodyDescriptor, SplittingDescriptor, ThickMatching};
use layered_model::disk_oracle::CurveWordMarking;
use layered_model::model::{LinkId, ModelComplex};
use layered_model::moves::{Move, MoveKind, MovePath, Repairing};
use layered_model::pants_graph::{CurveId, PantsGraph};
use layered_model::spines::{build_fat_spine, layer_model, positive_boundary, SpineTree};

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

/// Number of isomorphism classes of connected trivalent multigraphs on
/// `2g - 2` vertices: every perfect matching of the `6g - 6` half-edges,
/// compared through adjacency matrices under all vertex permutations.
pub fn brute_force_class_count(genus: u32) -> usize {
    let n = 2 * genus as usize - 2;
    let mut seen: BTreeSet<Vec<u8>> = BTreeSet::new();
    let mut pairs = Vec::new();
    let mut used = vec![false; 3 * n];
    matchings(&mut used, &mut pairs, &mut |pairs| {
        let mut adj = vec![0u8; n * n];
        for &(a, b) in pairs {
            let (u, v) = (a / 3, b / 3);
            adj[u * n + v] += 1;
            if u != v {
                adj[v * n + u] += 1;
            }
        }
        if connected(n, &adj) {
            seen.insert(min_relabeling(n, &adj));
        }
    });
    seen.len()
}

type Pairs = [(usize, usize)];

fn matchings(used: &mut [bool], pairs: &mut Vec<(usize, usize)>, f: &mut dyn FnMut(&Pairs)) {
    let Some(a) = used.iter().position(|&u| !u) else {
        f(pairs);
        return;
    };
    used[a] = true;
    for b in a + 1..used.len() {
        if !used[b] {
            used[b] = true;
            pairs.push((a, b));
            matchings(used, pairs, f);
            pairs.pop();
            used[b] = false;
        }
    }
    used[a] = false;
}

fn connected(n: usize, adj: &[u8]) -> bool {
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for w in 0..n {
            if !seen[w] && (adj[v * n + w] > 0 || adj[w * n + v] > 0) {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

fn min_relabeling(n: usize, adj: &[u8]) -> Vec<u8> {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best: Option<Vec<u8>> = None;
    permute(&mut perm, 0, &mut |p| {
        let mut m = vec![0u8; n * n];
        for u in 0..n {
            for v in 0..n {
                // keep loops on the diagonal, sum parallel edges symmetrically
                let x = if u == v { adj[u * n + u] } else { adj[u * n + v].max(adj[v * n + u]) };
                m[p[u] * n + p[v]] = x;
            }
        }
        if best.as_ref().is_none_or(|b| m < *b) {
            best = Some(m);
        }
    });
    best.expect("at least one permutation")
}

fn permute(p: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, f);
        p.swap(k, i);
    }
}

/// Two S-moves on the loops of the dumbbell, then two A-moves; it returns
/// to the dumbbell class with every base curve retired.
pub fn q_path() -> MovePath {
    MovePath::new(
        PantsGraph::dumbbell(),
        vec![
            Move::s(CurveId(0), 0, CurveId(3)),
            Move::s(CurveId(1), 0, CurveId(4)),
            Move::a(CurveId(2), Repairing::Cross2, 0, CurveId(5)),
            Move::a(CurveId(3), Repairing::Cross1, 0, CurveId(6)),
        ],
    )
}

pub fn layered(tree: &SpineTree, path: &MovePath) -> ModelComplex {
    layer_model(&build_fat_spine(tree).unwrap(), path).unwrap()
}

pub fn identity_matching(m: &ModelComplex) -> ThickMatching {
    positive_boundary(m).unwrap().curve_links.keys().map(|&c| (c, c)).collect()
}

pub fn genus_two_double() -> (SplittingDescriptor, Vec<ModelComplex>, Vec<ThickMatching>) {
    let h = layered(&SpineTree::genus_two(), &q_path());
    let s = SplittingDescriptor {
        bodies: vec![CompressionBodyDescriptor::handlebody(2), CompressionBodyDescriptor::handlebody(2)],
        strongly_irreducible: true,
    };
    let m = identity_matching(&h);
    (s, vec![h.clone(), h], vec![m])
}

pub fn two_thick() -> (SplittingDescriptor, Vec<ModelComplex>, Vec<ThickMatching>) {
    let s = SplittingDescriptor {
        bodies: vec![
            CompressionBodyDescriptor::handlebody(2),
            CompressionBodyDescriptor::compression_body(2, vec![2]),
            CompressionBodyDescriptor::compression_body(2, vec![2]),
            CompressionBodyDescriptor::handlebody(2),
        ],
        strongly_irreducible: false,
    };
    let h = layered(&SpineTree::genus_two(), &q_path());
    let c = layered(&SpineTree::product(vec![2]), &q_path());
    let thick = vec![identity_matching(&h), identity_matching(&c)];
    (s, vec![h.clone(), c.clone(), c, h], thick)
}

/// Words for the genus-2 spine: the interior loop `L0` is a core curve and
/// the boundary loop `L1` carries `boundary_word`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WordFamily {
    /// `L1` is the commutator; an A-move across it with twist `k` gives its
    /// `k`-th power.
    Commutator,
    /// `L1` is null-homotopic; an A-move across it gives `x2 x1^k`.
    Trivial,
}

fn power(letter: &str, inverse: &str, k: i64) -> String {
    let l = if k >= 0 { letter } else { inverse };
    std::iter::repeat_n(l, k.unsigned_abs() as usize).collect::<Vec<_>>().join(" ")
}

fn join(parts: &[String]) -> String {
    parts.iter().filter(|p| !p.is_empty()).cloned().collect::<Vec<_>>().join(" ")
}

/// Word carried by the curve a move creates.
pub fn transported_word(family: WordFamily, m: &Move) -> String {
    let twisted = join(&["x2".into(), power("x1", "X1", m.twist)]);
    match (m.kind, family) {
        (MoveKind::S, _) => twisted,
        (MoveKind::A, WordFamily::Commutator) => power("x1 x2 X1 X2", "x2 x1 X2 X1", m.twist),
        (MoveKind::A, WordFamily::Trivial) => twisted,
    }
}

/// A layered genus-2 model with its word marking.
pub struct MarkedFixture {
    pub family: WordFamily,
    pub marking: CurveWordMarking,
    pub model: ModelComplex,
    pub path: MovePath,
}

/// Genus-2 spines layered by every path of length at most one from the
/// dumbbell, twists in `-1..=1`, under both word families.
pub fn marked_corpus() -> Vec<MarkedFixture> {
    let d = PantsGraph::dumbbell();
    let mut paths = vec![MovePath::empty(d.clone())];
    for k in -1..=1 {
        paths.push(MovePath::new(d.clone(), vec![Move::s(CurveId(0), k, CurveId(3))]));
        paths.push(MovePath::new(d.clone(), vec![Move::s(CurveId(1), k, CurveId(3))]));
        for r in Repairing::ALL {
            paths.push(MovePath::new(d.clone(), vec![Move::a(CurveId(2), r, k, CurveId(3))]));
        }
    }
    let mut out = Vec::new();
    for family in [WordFamily::Commutator, WordFamily::Trivial] {
        for path in &paths {
            let model = layered(&SpineTree::genus_two(), path);
            let boundary = match family {
                WordFamily::Commutator => "x1 x2 X1 X2",
                WordFamily::Trivial => "x1 X1",
            };
            let mut marking = CurveWordMarking::new(2).with(LinkId(0), "x1").with(LinkId(1), boundary);
            for mv in &path.moves {
                let link = model.stages.last().unwrap().curve_links[&mv.new_curve];
                marking = marking.with(link, &transported_word(family, mv));
            }
            out.push(MarkedFixture { family, marking, model, path: path.clone() });
        }
    }
    out
}
